#include "ddverify/discrete.hpp"

#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>

#include <boost/rational.hpp>

#include "ddverify/errors.hpp"
#include "ddverify/models.hpp"

namespace ddv {

namespace {

using Q = boost::rational<std::int64_t>;

int mod(long long x, int n) {
  const long long r = x % n;
  return static_cast<int>(r < 0 ? r + n : r);
}

std::string triple(int a, int b, int c) {
  return "(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")";
}

Q to_q(const Rational& r) { return Q(r.num, r.den); }
Rational from_q(const Q& q) { return Rational{q.numerator(), q.denominator()}; }

}  // namespace

FiniteGroupTable FiniteGroupTable::from_rows(const std::vector<std::vector<int>>& rows) {
  FiniteGroupTable g;
  g.order = static_cast<int>(rows.size());
  if (g.order == 0) throw PreconditionError("group table: empty");
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != rows.size())
      throw PreconditionError("group table: row " + std::to_string(r) + " has wrong length");
    for (int v : rows[r]) {
      if (v < 0 || v >= g.order) throw PreconditionError("group table: index out of range in row " + std::to_string(r));
      g.table.push_back(v);
    }
  }
  g.identity = -1;
  for (int e = 0; e < g.order && g.identity < 0; ++e) {
    bool ok = true;
    for (int a = 0; a < g.order && ok; ++a) ok = g.mul(e, a) == a && g.mul(a, e) == a;
    if (ok) g.identity = e;
  }
  if (g.identity < 0) throw PreconditionError("group table: no identity element");
  g.inverse.assign(static_cast<std::size_t>(g.order), -1);
  for (int a = 0; a < g.order; ++a) {
    for (int b = 0; b < g.order; ++b) {
      if (g.mul(a, b) == g.identity) {
        g.inverse[static_cast<std::size_t>(a)] = b;
        break;
      }
    }
    if (g.inverse[static_cast<std::size_t>(a)] < 0)
      throw PreconditionError("group table: element " + std::to_string(a) + " has no inverse");
  }
  return g;
}

std::optional<std::string> FiniteGroupTable::violation() const {
  if (order <= 0 || table.size() != static_cast<std::size_t>(order * order)) return "table has wrong size";
  for (int a = 0; a < order; ++a) {
    if (mul(identity, a) != a || mul(a, identity) != a) return "identity law fails at " + std::to_string(a);
    if (mul(a, inv(a)) != identity || mul(inv(a), a) != identity)
      return "inverse law fails at " + std::to_string(a);
  }
  for (int a = 0; a < order; ++a) {
    for (int b = 0; b < order; ++b) {
      for (int c = 0; c < order; ++c) {
        if (mul(mul(a, b), c) != mul(a, mul(b, c))) return "associativity fails at " + triple(a, b, c);
      }
    }
  }
  return std::nullopt;
}

FiniteGroupTable read_group_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open group table " + path);
  int n = 0;
  if (!(in >> n) || n <= 0) throw PreconditionError(path + ": expected the group order on the first line");
  std::vector<std::vector<int>> rows(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n)));
  for (auto& row : rows) {
    for (auto& v : row) {
      if (!(in >> v)) throw PreconditionError(path + ": truncated table");
    }
  }
  return FiniteGroupTable::from_rows(rows);
}

void write_group_table(const FiniteGroupTable& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write group table " + path);
  out << g.order << '\n';
  for (int a = 0; a < g.order; ++a) {
    for (int b = 0; b < g.order; ++b) out << (b ? " " : "") << g.mul(a, b);
    out << '\n';
  }
}

int FiniteCentralExtension::exponent_of(int element) const {
  const int k = kernel_exponent.at(static_cast<std::size_t>(element));
  if (k < 0) throw ModelInconsistency(name + ": element " + std::to_string(element) + " is not in the kernel");
  return k;
}

FiniteCentralExtension make_extension(std::string name, FiniteGroupTable ghat, FiniteGroupTable g,
                                      std::vector<int> rho, std::vector<int> section, int kernel_order,
                                      int kernel_generator) {
  FiniteCentralExtension ext;
  ext.name = std::move(name);
  ext.ghat = std::move(ghat);
  ext.g = std::move(g);
  ext.rho = std::move(rho);
  ext.section = std::move(section);
  ext.kernel_order = kernel_order;
  ext.kernel_generator = kernel_generator;
  if (kernel_order < 1) throw PreconditionError(ext.name + ": kernel order must be positive");
  if (kernel_generator < 0 || kernel_generator >= ext.ghat.order)
    throw PreconditionError(ext.name + ": kernel generator out of range");
  ext.kernel_exponent.assign(static_cast<std::size_t>(ext.ghat.order), -1);
  int x = ext.ghat.identity;
  for (int k = 0; k < kernel_order; ++k) {
    if (ext.kernel_exponent[static_cast<std::size_t>(x)] >= 0)
      throw PreconditionError(ext.name + ": kernel generator has order below " + std::to_string(kernel_order));
    ext.kernel_exponent[static_cast<std::size_t>(x)] = k;
    x = ext.ghat.mul(x, kernel_generator);
  }
  if (x != ext.ghat.identity) throw PreconditionError(ext.name + ": kernel generator has the wrong order");
  return ext;
}

std::optional<std::string> FiniteCentralExtension::violation() const {
  if (auto v = ghat.violation()) return "Ghat: " + *v;
  if (auto v = g.violation()) return "G: " + *v;
  if (rho.size() != static_cast<std::size_t>(ghat.order)) return "rho has wrong length";
  if (section.size() != static_cast<std::size_t>(g.order)) return "section has wrong length";
  if (ghat.order != kernel_order * g.order) return "|Ghat| != n |G|";
  for (int v : rho) {
    if (v < 0 || v >= g.order) return "rho value out of range";
  }
  for (int v : section) {
    if (v < 0 || v >= ghat.order) return "section value out of range";
  }
  std::vector<bool> hit(static_cast<std::size_t>(g.order), false);
  for (int a = 0; a < ghat.order; ++a) {
    hit[static_cast<std::size_t>(rho[static_cast<std::size_t>(a)])] = true;
    const bool in_kernel = rho[static_cast<std::size_t>(a)] == g.identity;
    if (in_kernel != (kernel_exponent[static_cast<std::size_t>(a)] >= 0))
      return "kernel of rho differs from the cyclic kernel at " + std::to_string(a);
    for (int b = 0; b < ghat.order; ++b) {
      const auto ra = rho[static_cast<std::size_t>(a)];
      const auto rb = rho[static_cast<std::size_t>(b)];
      if (rho[static_cast<std::size_t>(ghat.mul(a, b))] != g.mul(ra, rb))
        return "rho is not a homomorphism at (" + std::to_string(a) + "," + std::to_string(b) + ")";
      if (in_kernel && ghat.mul(a, b) != ghat.mul(b, a))
        return "kernel element " + std::to_string(a) + " is not central (fails against " + std::to_string(b) + ")";
    }
  }
  for (std::size_t k = 0; k < hit.size(); ++k) {
    if (!hit[k]) return "rho misses " + std::to_string(k);
  }
  for (int a = 0; a < g.order; ++a) {
    if (rho[static_cast<std::size_t>(section[static_cast<std::size_t>(a)])] != a)
      return "rho(section) != id at " + std::to_string(a);
  }
  if (section[static_cast<std::size_t>(g.identity)] != ghat.identity) return "section(identity) != identity";
  return std::nullopt;
}

FiniteCentralExtension read_extension(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open extension file " + path);
  const std::filesystem::path dir = std::filesystem::path(path).parent_path();
  std::optional<FiniteGroupTable> ghat;
  std::optional<FiniteGroupTable> g;
  std::vector<int> rho;
  std::vector<int> section;
  int n = 0;
  int gen = -1;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key) || key[0] == '#') continue;
    if (key == "ghat" || key == "g") {
      std::string rel;
      ls >> rel;
      auto table = read_group_table((dir / rel).string());
      (key == "ghat" ? ghat : g) = std::move(table);
    } else if (key == "kernel") {
      ls >> n >> gen;
    } else if (key == "rho" || key == "section") {
      auto& dst = key == "rho" ? rho : section;
      int v = 0;
      while (ls >> v) dst.push_back(v);
    } else {
      throw PreconditionError(path + ": unknown key '" + key + "'");
    }
  }
  if (!ghat || !g || n < 1) throw PreconditionError(path + ": missing ghat, g or kernel line");
  return make_extension(std::filesystem::path(path).stem().string(), std::move(*ghat), std::move(*g), std::move(rho),
                        std::move(section), n, gen);
}

GroupCochain2 section_cocycle(const FiniteCentralExtension& ext) {
  const auto& G = ext.g;
  const auto& H = ext.ghat;
  GroupCochain2 c{G.order, ext.kernel_order, {}};
  c.values.reserve(static_cast<std::size_t>(G.order * G.order));
  for (int a = 0; a < G.order; ++a) {
    for (int b = 0; b < G.order; ++b) {
      const int sa = ext.section[static_cast<std::size_t>(a)];
      const int sb = ext.section[static_cast<std::size_t>(b)];
      const int sab = ext.section[static_cast<std::size_t>(G.mul(a, b))];
      c.values.push_back(ext.exponent_of(H.mul(H.mul(sa, sb), H.inv(sab))));
    }
  }
  return c;
}

GroupCochain2 coboundary(const std::vector<int>& b, const FiniteGroupTable& g, int modulus) {
  GroupCochain2 c{g.order, modulus, {}};
  for (int x = 0; x < g.order; ++x) {
    for (int y = 0; y < g.order; ++y) {
      c.values.push_back(mod(static_cast<long long>(b[static_cast<std::size_t>(y)]) -
                                 b[static_cast<std::size_t>(g.mul(x, y))] + b[static_cast<std::size_t>(x)],
                             modulus));
    }
  }
  return c;
}

std::optional<std::array<int, 3>> cocycle_violation(const GroupCochain2& c, const FiniteGroupTable& g) {
  for (int a = 0; a < g.order; ++a) {
    for (int b = 0; b < g.order; ++b) {
      for (int d = 0; d < g.order; ++d) {
        const long long v = static_cast<long long>(c(b, d)) - c(g.mul(a, b), d) + c(a, g.mul(b, d)) - c(a, b);
        if (mod(v, c.modulus) != 0) return std::array<int, 3>{a, b, d};
      }
    }
  }
  return std::nullopt;
}

namespace {

void require_cocycle(const GroupCochain2& c, const FiniteGroupTable& g) {
  if (c.order != g.order || c.values.size() != static_cast<std::size_t>(g.order * g.order))
    throw PreconditionError("cochain does not match the group order");
  if (auto t = cocycle_violation(c, g))
    throw PreconditionError("not a 2-cocycle: delta c != 0 at " + triple((*t)[0], (*t)[1], (*t)[2]));
}

bool matches(const GroupCochain2& c, const std::vector<int>& b, const FiniteGroupTable& g) {
  return coboundary(b, g, c.modulus).values == c.values;
}

// Extended gcd: s a + t b = g >= 0.
long long ext_gcd(long long a, long long b, long long& s, long long& t) {
  long long s0 = 1, s1 = 0, t0 = 0, t1 = 1;
  while (b != 0) {
    const long long q = a / b;
    std::tie(a, b) = std::make_pair(b, a - q * b);
    std::tie(s0, s1) = std::make_pair(s1, s0 - q * s1);
    std::tie(t0, t1) = std::make_pair(t1, t0 - q * t1);
  }
  if (a < 0) {
    a = -a;
    s0 = -s0;
    t0 = -t0;
  }
  s = s0;
  t = t0;
  return a;
}

// Unimodular step clearing b against the pivot a. Plain subtraction when a
// divides b, so the pivot never trades places with an equal entry (which can
// make the row and column sweeps cycle without shrinking the pivot).
long long pivot_step(long long a, long long b, long long& s, long long& u) {
  if (b % a == 0) {
    s = 1;
    u = 0;
    return a;
  }
  return ext_gcd(a, b, s, u);
}

}  // namespace

CoboundaryResult coboundary_by_search(const GroupCochain2& c, const FiniteGroupTable& g) {
  require_cocycle(c, g);
  CoboundaryResult r;
  r.method = "exhaustive";
  const int n = c.modulus;
  std::vector<int> b(static_cast<std::size_t>(g.order), 0);
  std::vector<int> free;
  for (int x = 0; x < g.order; ++x) {
    if (x != g.identity) free.push_back(x);
  }
  while (true) {
    if (matches(c, b, g)) {
      r.trivial = true;
      r.witness = b;
      return r;
    }
    std::size_t k = 0;
    for (; k < free.size(); ++k) {
      auto& v = b[static_cast<std::size_t>(free[k])];
      if (++v < n) break;
      v = 0;
    }
    if (k == free.size()) return r;
  }
}

CoboundaryResult coboundary_by_elimination(const GroupCochain2& c, const FiniteGroupTable& g) {
  require_cocycle(c, g);
  CoboundaryResult r;
  r.method = "elimination";
  const long long n = c.modulus;
  const int N = g.order;
  const int rows = N * N;
  const int cols = N;
  // A b = c with A[(x,y)] = e_x + e_y - e_{xy}; the identity column is dropped
  // below by forcing b(identity) = 0 through an extra equation.
  std::vector<std::vector<long long>> A(static_cast<std::size_t>(rows + 1),
                                        std::vector<long long>(static_cast<std::size_t>(cols), 0));
  std::vector<long long> rhs(static_cast<std::size_t>(rows + 1), 0);
  for (int x = 0; x < N; ++x) {
    for (int y = 0; y < N; ++y) {
      auto& row = A[static_cast<std::size_t>(x * N + y)];
      row[static_cast<std::size_t>(x)] += 1;
      row[static_cast<std::size_t>(y)] += 1;
      row[static_cast<std::size_t>(g.mul(x, y))] -= 1;
      for (auto& v : row) v = mod(v, static_cast<int>(n));
      rhs[static_cast<std::size_t>(x * N + y)] = c(x, y);
    }
  }
  A[static_cast<std::size_t>(rows)][static_cast<std::size_t>(g.identity)] = 1;
  const int R = rows + 1;
  // Column operations are recorded in Qm so that b = Qm y.
  std::vector<std::vector<long long>> Qm(static_cast<std::size_t>(cols), std::vector<long long>(static_cast<std::size_t>(cols), 0));
  for (int i = 0; i < cols; ++i) Qm[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;
  auto at = [&](int i, int j) -> long long& { return A[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; };
  auto md = [n](long long v) { return static_cast<long long>(mod(v, static_cast<int>(n))); };

  int rank = 0;
  for (int t = 0; t < cols && t < R; ++t) {
    // Pick any nonzero pivot in the remaining block.
    int pi = -1, pj = -1;
    for (int i = t; i < R && pi < 0; ++i) {
      for (int j = t; j < cols; ++j) {
        if (at(i, j) != 0) {
          pi = i;
          pj = j;
          break;
        }
      }
    }
    if (pi < 0) break;
    std::swap(A[static_cast<std::size_t>(t)], A[static_cast<std::size_t>(pi)]);
    std::swap(rhs[static_cast<std::size_t>(t)], rhs[static_cast<std::size_t>(pi)]);
    for (int i = 0; i < R; ++i) std::swap(at(i, t), at(i, pj));
    for (int i = 0; i < cols; ++i) std::swap(Qm[static_cast<std::size_t>(i)][static_cast<std::size_t>(t)], Qm[static_cast<std::size_t>(i)][static_cast<std::size_t>(pj)]);
    bool dirty = true;
    for (int guard = 0; dirty && guard < 64; ++guard) {
      dirty = false;
      for (int i = t + 1; i < R; ++i) {
        if (at(i, t) == 0) continue;
        long long s = 0, u = 0;
        const long long a = at(t, t), b = at(i, t);
        const long long d = pivot_step(a, b, s, u);
        const long long a1 = a / d, b1 = b / d;
        for (int j = t; j < cols; ++j) {
          const long long top = at(t, j), bot = at(i, j);
          at(t, j) = md(s * top + u * bot);
          at(i, j) = md(-b1 * top + a1 * bot);
        }
        const long long top = rhs[static_cast<std::size_t>(t)], bot = rhs[static_cast<std::size_t>(i)];
        rhs[static_cast<std::size_t>(t)] = md(s * top + u * bot);
        rhs[static_cast<std::size_t>(i)] = md(-b1 * top + a1 * bot);
      }
      for (int j = t + 1; j < cols; ++j) {
        if (at(t, j) == 0) continue;
        long long s = 0, u = 0;
        const long long a = at(t, t), b = at(t, j);
        const long long d = pivot_step(a, b, s, u);
        const long long a1 = a / d, b1 = b / d;
        for (int i = t; i < R; ++i) {
          const long long left = at(i, t), right = at(i, j);
          at(i, t) = md(s * left + u * right);
          at(i, j) = md(-b1 * left + a1 * right);
        }
        for (int i = 0; i < cols; ++i) {
          auto& left = Qm[static_cast<std::size_t>(i)][static_cast<std::size_t>(t)];
          auto& right = Qm[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
          const long long l = left, rr = right;
          left = md(s * l + u * rr);
          right = md(-b1 * l + a1 * rr);
        }
        dirty = true;
      }
      for (int i = t + 1; i < R && !dirty; ++i) dirty = at(i, t) != 0;
    }
    if (dirty) throw Error("coboundary elimination did not converge at pivot " + std::to_string(t));
    ++rank;
  }
  // Diagonal system d_t y_t = rhs_t; rows past the rank need rhs = 0.
  std::vector<long long> y(static_cast<std::size_t>(cols), 0);
  for (int t = 0; t < R; ++t) {
    const long long rt = rhs[static_cast<std::size_t>(t)];
    if (t >= rank) {
      if (rt != 0) return r;
      continue;
    }
    const long long d = at(t, t);
    long long s = 0, u = 0;
    const long long gd = ext_gcd(d, n, s, u);
    if (rt % gd != 0) return r;
    y[static_cast<std::size_t>(t)] = md((rt / gd) * s);
  }
  std::vector<int> b(static_cast<std::size_t>(cols), 0);
  for (int i = 0; i < cols; ++i) {
    long long v = 0;
    for (int j = 0; j < cols; ++j) v = md(v + Qm[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] * y[static_cast<std::size_t>(j)]);
    b[static_cast<std::size_t>(i)] = static_cast<int>(v);
  }
  if (!matches(c, b, g) || b[static_cast<std::size_t>(g.identity)] != 0)
    throw Error("coboundary elimination produced an invalid witness");
  r.trivial = true;
  r.witness = std::move(b);
  return r;
}

CoboundaryResult is_coboundary(const GroupCochain2& c, const FiniteGroupTable& g) {
  return g.order <= 8 ? coboundary_by_search(c, g) : coboundary_by_elimination(c, g);
}

RealWitness real_witness(const GroupCochain2& c, const FiniteGroupTable& g) {
  const int N = g.order;
  const auto n = static_cast<std::int64_t>(c.modulus);
  RealWitness r;
  std::vector<Q> b(static_cast<std::size_t>(N));
  for (int x = 0; x < N; ++x) {
    std::int64_t sum = 0;
    for (int h = 0; h < N; ++h) sum += c(x, h);
    b[static_cast<std::size_t>(x)] = Q(sum, n * N);
    r.b.push_back(from_q(b[static_cast<std::size_t>(x)]));
  }
  for (int x = 0; x < N; ++x) {
    for (int y = 0; y < N; ++y) {
      const Q db = b[static_cast<std::size_t>(y)] - b[static_cast<std::size_t>(g.mul(x, y))] + b[static_cast<std::size_t>(x)];
      r.beta.push_back(from_q(Q(c(x, y), n) - db));
    }
  }
  for (int x = 0; x < N; ++x) {
    for (int y = 0; y < N; ++y) {
      for (int z = 0; z < N; ++z) {
        const long long v = static_cast<long long>(c(y, z)) - c(g.mul(x, y), z) + c(x, g.mul(y, z)) - c(x, y);
        if (v % n != 0) throw PreconditionError("real_witness: input is not a cocycle mod n");
        r.w.push_back(static_cast<int>(v / n));
      }
    }
  }
  return r;
}

bool is_real_witness(const RealWitness& r, const GroupCochain2& c, const FiniteGroupTable& g) {
  const int N = g.order;
  const auto n = static_cast<std::int64_t>(c.modulus);
  if (r.b.size() != static_cast<std::size_t>(N) || r.beta.size() != static_cast<std::size_t>(N * N) ||
      r.w.size() != static_cast<std::size_t>(N * N * N))
    return false;
  auto beta = [&](int x, int y) { return to_q(r.beta[static_cast<std::size_t>(x * N + y)]); };
  auto b = [&](int x) { return to_q(r.b[static_cast<std::size_t>(x)]); };
  for (int x = 0; x < N; ++x) {
    for (int y = 0; y < N; ++y) {
      if (beta(x, y) != Q(c(x, y), n) - (b(y) - b(g.mul(x, y)) + b(x))) return false;
      for (int z = 0; z < N; ++z) {
        const Q d = beta(y, z) - beta(g.mul(x, y), z) + beta(x, g.mul(y, z)) - beta(x, y);
        if (d != Q(r.w[static_cast<std::size_t>((x * N + y) * N + z)])) return false;
      }
    }
  }
  return true;
}

VerificationReport verify_tables(const FiniteCentralExtension& ext) {
  IdentityResult item;
  item.name = "group and extension axioms";
  item.samples = 1;
  const auto v = ext.violation();
  item.pass = !v.has_value();
  item.max_residual = item.pass ? 0.0 : 1.0;
  item.mean_residual = item.max_residual;
  item.detail = v.value_or("ok");
  IdentityResult cocycle;
  cocycle.name = "delta(section cocycle) = 0";
  cocycle.samples = ext.g.order * ext.g.order * ext.g.order;
  if (item.pass) {
    const auto t = cocycle_violation(section_cocycle(ext), ext.g);
    cocycle.pass = !t.has_value();
    cocycle.detail = t ? "fails at " + triple((*t)[0], (*t)[1], (*t)[2]) : "exhaustive";
  } else {
    cocycle.pass = false;
    cocycle.detail = "skipped: invalid tables";
  }
  cocycle.max_residual = cocycle.mean_residual = cocycle.pass ? 0.0 : 1.0;
  return assemble_report("tables", ext.name, VerifyOptions{}, {item, cocycle}, true);
}

namespace {

IdentityResult exact_item(std::string name, bool ok, std::string detail) {
  IdentityResult r;
  r.name = std::move(name);
  r.samples = 1;
  r.pass = ok;
  r.max_residual = r.mean_residual = ok ? 0.0 : 1.0;
  r.detail = std::move(detail);
  return r;
}

std::string join(const std::vector<Rational>& xs) {
  std::string s;
  for (const auto& x : xs) {
    s += (s.empty() ? "" : " ") + std::to_string(x.num);
    if (x.den != 1) s += "/" + std::to_string(x.den);
  }
  return s;
}

}  // namespace

VerificationReport real_vanishing(const FiniteCentralExtension& ext) {
  std::vector<IdentityResult> items;
  const CentralExtensionModel model = discrete_model(ext);
  const BigradedCochain dd = dd_cochain(model, model.theta);
  bool zero = true;
  std::string which;
  for (const auto& [key, form] : dd.components) {
    zero = zero && form.is_zero();
    which += (which.empty() ? "" : ",") + std::to_string(key.first) + std::to_string(key.second);
  }
  items.push_back(exact_item("de Rham components identically zero", zero, "components " + which));
  const BigradedCochain d = total_D(dd);
  bool d_zero = true;
  for (const auto& [key, form] : d.components) d_zero = d_zero && form.is_zero();
  items.push_back(exact_item("D(dd_cochain) identically zero", d_zero, "exact"));

  const GroupCochain2 c = section_cocycle(ext);
  const RealWitness w = real_witness(c, ext.g);
  bool w_zero = true;
  for (int v : w.w) w_zero = w_zero && v == 0;
  items.push_back(exact_item("real primitive of the integral class", is_real_witness(w, c, ext.g),
                             w_zero ? "integer lift is a Z-cocycle; b = " + join(w.b)
                                    : "integral 3-cocycle delta(c~)/n != 0; beta = c~/n - delta(b), b = " + join(w.b)));
  return assemble_report("cocycle", ext.name, VerifyOptions{}, std::move(items), true);
}

VerificationReport torsion_report(const FiniteCentralExtension& ext) {
  const GroupCochain2 c = section_cocycle(ext);
  const CoboundaryResult z = is_coboundary(c, ext.g);
  const RealWitness w = real_witness(c, ext.g);
  std::vector<IdentityResult> items;
  std::string witness;
  for (int v : z.witness) witness += (witness.empty() ? "" : " ") + std::to_string(v);
  items.push_back(exact_item("class over Z_" + std::to_string(c.modulus) + " computed", true,
                             std::string(z.trivial ? "trivial, witness b = " + witness : "nontrivial") + " (" +
                                 z.method + ")"));
  items.push_back(exact_item("class over R vanishes", is_real_witness(w, c, ext.g), "b = " + join(w.b)));
  return assemble_report("torsion", ext.name, VerifyOptions{}, std::move(items), true);
}

}  // namespace ddv
