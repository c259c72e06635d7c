#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ddverify/report.hpp"

namespace ddv {

/// A finite group given by its multiplication table on indices 0..N-1.
struct FiniteGroupTable {
  int order = 0;
  std::vector<int> table;  // row-major, table[a * order + b] = ab
  int identity = 0;
  std::vector<int> inverse;

  int mul(int a, int b) const { return table[static_cast<std::size_t>(a * order + b)]; }
  int inv(int a) const { return inverse[static_cast<std::size_t>(a)]; }

  /// Builds from rows, deriving identity and inverses. Throws PreconditionError
  /// for a malformed table (wrong shape, index out of range, no identity).
  static FiniteGroupTable from_rows(const std::vector<std::vector<int>>& rows);

  /// First violated group axiom, if any, with the offending indices.
  std::optional<std::string> violation() const;
};

/// Plain-text table: first line N, then N rows of N space-separated indices.
FiniteGroupTable read_group_table(const std::string& path);
void write_group_table(const FiniteGroupTable& g, const std::string& path);

/// Central extension of finite groups with cyclic kernel of order n.
struct FiniteCentralExtension {
  std::string name;
  FiniteGroupTable ghat;
  FiniteGroupTable g;
  std::vector<int> rho;      // Ghat -> G
  std::vector<int> section;  // G -> Ghat
  int kernel_order = 1;
  int kernel_generator = 0;  // element of Ghat standing for e^{2 pi i / n}
  std::vector<int> kernel_exponent;  // Ghat index -> k with gen^k, or -1 off the kernel

  /// Exponent k of a kernel element; throws ModelInconsistency off the kernel.
  int exponent_of(int element) const;
  std::optional<std::string> violation() const;
};

FiniteCentralExtension make_extension(std::string name, FiniteGroupTable ghat, FiniteGroupTable g,
                                      std::vector<int> rho, std::vector<int> section, int kernel_order,
                                      int kernel_generator);

/// Extension file: lines `ghat <table>`, `g <table>`, `kernel <n> <generator>`,
/// `rho <indices>`, `section <indices>`; table paths are relative to the file.
FiniteCentralExtension read_extension(const std::string& path);

/// A normalized 2-cochain G x G -> Z_n.
struct GroupCochain2 {
  int order = 0;
  int modulus = 1;
  std::vector<int> values;

  int operator()(int a, int b) const { return values[static_cast<std::size_t>(a * order + b)]; }
};

/// c(g1, g2) = exponent of s(g1) s(g2) s(g1 g2)^{-1}.
GroupCochain2 section_cocycle(const FiniteCentralExtension& ext);

/// (delta b)(g1, g2) = b(g2) - b(g1 g2) + b(g1) mod n.
GroupCochain2 coboundary(const std::vector<int>& b, const FiniteGroupTable& g, int modulus);

/// First triple with (delta c)(g1, g2, g3) != 0, if any.
std::optional<std::array<int, 3>> cocycle_violation(const GroupCochain2& c, const FiniteGroupTable& g);

struct CoboundaryResult {
  bool trivial = false;
  std::vector<int> witness;  // b with delta b = c, b(identity) = 0
  std::string method;        // "exhaustive" or "elimination"
};

/// Decides c = delta b over Z_n. Exhaustive for |G| <= 8, otherwise gcd-aware
/// elimination over Z_n. Throws PreconditionError if c is not a cocycle.
CoboundaryResult is_coboundary(const GroupCochain2& c, const FiniteGroupTable& g);

/// Exhaustive search over normalized 1-cochains (n^(|G|-1) candidates).
CoboundaryResult coboundary_by_search(const GroupCochain2& c, const FiniteGroupTable& g);
/// Diagonalization over Z_n with extended-gcd row and column operations.
CoboundaryResult coboundary_by_elimination(const GroupCochain2& c, const FiniteGroupTable& g);

struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;
};

/// Real data of the integer lift c~ of c (values in [0, n)):
/// w = delta(c~)/n is an integral 3-cocycle (the discrete Dixmier-Douady
/// class) and beta = c~/n - delta(b) is an exact real primitive of it, where
/// b(g) = (1 / (n |G|)) sum_h c~(g, h). When c~ is already a Z-cocycle, w = 0,
/// beta = 0 and b is a real witness for c/n itself.
struct RealWitness {
  std::vector<Rational> b;     // |G| entries
  std::vector<Rational> beta;  // |G|^2 entries
  std::vector<int> w;          // |G|^3 entries
};

RealWitness real_witness(const GroupCochain2& c, const FiniteGroupTable& g);
/// Exact rational check of delta(beta) = w and beta = c~/n - delta(b).
bool is_real_witness(const RealWitness& r, const GroupCochain2& c, const FiniteGroupTable& g);

VerificationReport verify_tables(const FiniteCentralExtension& ext);
/// Zero de Rham components of the discrete model plus an exact real witness.
VerificationReport real_vanishing(const FiniteCentralExtension& ext);
/// Class over Z_n (expected nontrivial unless split) next to the real class.
VerificationReport torsion_report(const FiniteCentralExtension& ext);

}  // namespace ddv
