#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "ddverify/errors.hpp"
#include "ddverify/models.hpp"
#include "generators.hpp"

using namespace ddv;

namespace {

// Z_a x Z_b with index i = x * b + y.
FiniteGroupTable cyclic_product(int a, int b) {
  std::vector<std::vector<int>> rows(static_cast<std::size_t>(a * b));
  for (int i = 0; i < a * b; ++i) {
    for (int j = 0; j < a * b; ++j) rows[static_cast<std::size_t>(i)].push_back(((i / b + j / b) % a) * b + (i % b + j % b) % b);
  }
  return FiniteGroupTable::from_rows(rows);
}

// Independent oracle: odometer over all normalized b : G -> Z_n.
bool brute_force_coboundary(const GroupCochain2& c, const FiniteGroupTable& g) {
  std::vector<int> b(static_cast<std::size_t>(g.order), 0);
  for (;;) {
    bool match = true;
    for (int x = 0; x < g.order && match; ++x) {
      for (int y = 0; y < g.order && match; ++y) {
        const int v = b[static_cast<std::size_t>(y)] - b[static_cast<std::size_t>(g.mul(x, y))] + b[static_cast<std::size_t>(x)];
        match = ((v % c.modulus) + c.modulus) % c.modulus == c(x, y);
      }
    }
    if (match) return true;
    std::size_t k = 0;
    for (; k < b.size(); ++k) {
      if (static_cast<int>(k) == g.identity) continue;
      if (++b[k] < c.modulus) break;
      b[k] = 0;
    }
    if (k == b.size()) return false;
  }
}

GroupCochain2 random_coboundary(gen::Gen& g, const FiniteGroupTable& G, int n) {
  std::vector<int> b(static_cast<std::size_t>(G.order));
  for (auto& v : b) v = g.integer(0, n - 1);
  b[static_cast<std::size_t>(G.identity)] = 0;
  return coboundary(b, G, n);
}

}  // namespace

TEST_CASE("shipped tables satisfy the group and extension axioms") {
  for (const char* name : {"z4_over_z2", "q8_over_v4", "split_v4"}) {
    CAPTURE(name);
    const auto ext = build_finite_extension(name);
    CHECK_FALSE(ext.violation().has_value());
    CHECK(verify_tables(ext).pass);
    CHECK_FALSE(cocycle_violation(section_cocycle(ext), ext.g).has_value());
  }
}

TEST_CASE("fixture files match the in-code tables") {
  for (const char* name : {"z4_over_z2", "q8_over_v4", "split_v4"}) {
    CAPTURE(name);
    const auto a = build_finite_extension(name);
    const auto b = build_finite_extension(name, DDVERIFY_FIXTURES);
    CHECK(a.ghat.table == b.ghat.table);
    CHECK(a.g.table == b.g.table);
    CHECK(a.rho == b.rho);
    CHECK(a.section == b.section);
    CHECK(a.kernel_order == b.kernel_order);
    CHECK(a.kernel_generator == b.kernel_generator);
  }
}

TEST_CASE("section cocycles: nontrivial for Z4 and Q8, trivial for the split extension") {
  const std::vector<std::pair<std::string, bool>> expected = {
      {"z4_over_z2", false}, {"q8_over_v4", false}, {"split_v4", true}};
  for (const auto& [name, trivial] : expected) {
    CAPTURE(name);
    const auto ext = build_finite_extension(name);
    const auto c = section_cocycle(ext);
    CHECK(brute_force_coboundary(c, ext.g) == trivial);
    const auto res = is_coboundary(c, ext.g);
    CHECK(res.trivial == trivial);
    CHECK(res.method == "exhaustive");
    CHECK(coboundary_by_elimination(c, ext.g).trivial == trivial);
    if (trivial) CHECK(coboundary(res.witness, ext.g, c.modulus).values == c.values);
  }
}

TEST_CASE("the class does not depend on the chosen section") {
  for (const char* name : {"z4_over_z2", "q8_over_v4", "split_v4"}) {
    CAPTURE(name);
    const auto base = build_finite_extension(name);
    const bool trivial = is_coboundary(section_cocycle(base), base.g).trivial;
    gen::for_all(10, 41, [&](gen::Gen& g, int i) {
      CAPTURE(i);
      auto ext = base;
      for (int x = 0; x < ext.g.order; ++x) {
        if (x == ext.g.identity) continue;
        // Multiply the section by a random kernel element.
        int k = ext.ghat.identity;
        for (int j = g.integer(0, ext.kernel_order - 1); j > 0; --j) k = ext.ghat.mul(k, ext.kernel_generator);
        ext.section[static_cast<std::size_t>(x)] = ext.ghat.mul(ext.section[static_cast<std::size_t>(x)], k);
      }
      CHECK(is_coboundary(section_cocycle(ext), ext.g).trivial == trivial);
    });
  }
}

TEST_CASE("elimination agrees with search on random coboundaries and perturbations") {
  for (const auto& [a, b, n] : {std::tuple{2, 2, 2}, std::tuple{2, 4, 4}, std::tuple{3, 3, 3}, std::tuple{2, 2, 4}}) {
    const FiniteGroupTable G = cyclic_product(a, b);
    CAPTURE(G.order);
    CAPTURE(n);
    gen::for_all(5, 42, [&](gen::Gen& g, int i) {
      CAPTURE(i);
      const GroupCochain2 c = random_coboundary(g, G, n);
      const auto elim = coboundary_by_elimination(c, G);
      CHECK(elim.trivial);
      CHECK(coboundary(elim.witness, G, n).values == c.values);
      if (G.order <= 8) CHECK(coboundary_by_search(c, G).trivial);
    });
  }
}

TEST_CASE("elimination decides the class on groups too large for search") {
  // Z_2 x Z_6 (order 12) with the pulled-back Z4 -> Z2 cocycle on the first factor:
  // the extension class of Z4 x Z6 -> Z2 x Z6 is nontrivial.
  const FiniteGroupTable G = cyclic_product(2, 6);
  GroupCochain2 c{G.order, 2, {}};
  for (int x = 0; x < G.order; ++x) {
    for (int y = 0; y < G.order; ++y) c.values.push_back((x / 6 == 1 && y / 6 == 1) ? 1 : 0);
  }
  CHECK_FALSE(cocycle_violation(c, G).has_value());
  const auto res = is_coboundary(c, G);
  CHECK(res.method == "elimination");
  CHECK_FALSE(res.trivial);
  gen::Gen g(43);
  const GroupCochain2 t = random_coboundary(g, G, 2);
  const auto ok = is_coboundary(t, G);
  CHECK(ok.trivial);
  CHECK(coboundary(ok.witness, G, 2).values == t.values);
}

TEST_CASE("non-cocycles are rejected before solving") {
  const FiniteGroupTable G = cyclic_product(2, 2);
  GroupCochain2 c{4, 2, std::vector<int>(16, 0)};
  c.values[1 * 4 + 2] = 1;
  CHECK(cocycle_violation(c, G).has_value());
  CHECK_THROWS_AS(is_coboundary(c, G), PreconditionError);
}

TEST_CASE("real witness is exact on all shipped extensions") {
  for (const char* name : {"z4_over_z2", "q8_over_v4", "split_v4"}) {
    CAPTURE(name);
    const auto ext = build_finite_extension(name);
    const auto c = section_cocycle(ext);
    const RealWitness r = real_witness(c, ext.g);
    CHECK(is_real_witness(r, c, ext.g));
    CHECK(real_vanishing(ext).pass);
    CHECK(real_vanishing(ext).exact);
    if (std::string(name) == "split_v4") {
      for (const auto& v : r.b) CHECK(v.num == 0);
    }
  }
}

TEST_CASE("a tampered witness is rejected") {
  const auto ext = build_finite_extension("z4_over_z2");
  const auto c = section_cocycle(ext);
  RealWitness r = real_witness(c, ext.g);
  r.b[1].num += 1;
  CHECK_FALSE(is_real_witness(r, c, ext.g));
}

TEST_CASE("torsion report: class over Z_n next to the vanishing real class") {
  CHECK(torsion_report(build_finite_extension("q8_over_v4")).pass);
  const auto rep = torsion_report(build_finite_extension("z4_over_z2"));
  CHECK(rep.pass);
  CHECK(rep.exact);
  REQUIRE(rep.breakdown.size() >= 1);
  CHECK(rep.breakdown[0].detail.find("nontrivial") != std::string::npos);
}

TEST_CASE("group table text format roundtrip and malformed input") {
  const auto dir = std::filesystem::temp_directory_path() / "ddverify_test_discrete";
  std::filesystem::create_directories(dir);
  const FiniteGroupTable G = cyclic_product(2, 3);
  const std::string path = (dir / "z6.tbl").string();
  write_group_table(G, path);
  CHECK(read_group_table(path).table == G.table);

  std::ofstream(dir / "short.tbl") << "3\n0 1 2\n1 2\n";
  CHECK_THROWS_AS(read_group_table((dir / "short.tbl").string()), PreconditionError);
  CHECK_THROWS_AS(FiniteGroupTable::from_rows({{1, 0}, {1, 0}}), PreconditionError);
  // Identity and inverses, but (1 1) 2 = 2 while 1 (1 2) = 1.
  CHECK(FiniteGroupTable::from_rows({{0, 1, 2}, {1, 0, 0}, {2, 0, 0}}).violation().has_value());
  CHECK_THROWS_AS(read_group_table((dir / "missing.tbl").string()), Error);
  std::ofstream(dir / "bad.ext") << "ghat z6.tbl\ng z6.tbl\nkernel 2 3\nbogus 1\n";
  CHECK_THROWS_AS(read_extension((dir / "bad.ext").string()), PreconditionError);
  std::filesystem::remove_all(dir);
}

TEST_CASE("extension built from fixtures has the file stem as its name") {
  const auto ext = read_extension(std::string(DDVERIFY_FIXTURES) + "/q8_over_v4.ext");
  CHECK(ext.name == "q8_over_v4");
  CHECK(ext.ghat.order == 8);
  CHECK(ext.kernel_exponent[static_cast<std::size_t>(ext.kernel_generator)] == 1);
}
