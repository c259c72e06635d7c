#pragma once

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "ddverify/forms.hpp"
#include "ddverify/group.hpp"
#include "ddverify/report.hpp"

namespace ddv {

enum class NerveKind { NG, NbarG };

/// The nerve NG (level p = G^p) or its universal-bundle analogue N̄G
/// (level p = G^{p+1}) with face maps. Levels 0..kMaxLevel are built eagerly,
/// so all accessors are const and thread-safe.
class SimplicialSpace {
 public:
  static constexpr int kMaxLevel = 5;

  SimplicialSpace(GroupPtr group, NerveKind kind);

  NerveKind kind() const { return kind_; }
  const GroupPtr& group() const { return group_; }
  int factor_count(int level) const { return kind_ == NerveKind::NG ? level : level + 1; }

  const SpacePtr& level(int p) const;
  /// ε_i : X_p -> X_{p-1}, 0 <= i <= p.
  const SmoothMap& face(int p, int i) const;

 private:
  GroupPtr group_;
  NerveKind kind_;
  std::vector<SpacePtr> levels_;
  std::vector<std::vector<SmoothMap>> faces_;
};

using SimplicialPtr = std::shared_ptr<const SimplicialSpace>;

SimplicialPtr build_NG(GroupPtr group);
SimplicialPtr build_NbarG(GroupPtr group);

/// γ(h1..h_{p+1}) = (h1 h2^{-1}, ..., h_p h_{p+1}^{-1}) : N̄G(p) -> NG(p).
SmoothMap gamma_map(const SimplicialSpace& nbar, const SimplicialSpace& ng, int p);

/// d' c = Σ_{i=0}^{p+1} (-1)^i ε_i^* c for c on level p.
FormField d_prime(const SimplicialSpace& space, int p, const FormField& form);

/// Finite family of forms indexed by bidegree (p, q); absent entries are zero.
struct BigradedCochain {
  SimplicialPtr space;
  int total_degree = 0;
  std::map<std::pair<int, int>, FormField> components;

  void set(int p, int q, FormField form);
  const FormField* get(int p, int q) const;
};

/// D = d' + d'' with d'' = (-1)^p d on level p.
BigradedCochain total_D(const BigradedCochain& cochain, DiffOptions opts = {});

/// Componentwise pullback along γ: N̄G(p) -> NG(p).
BigradedCochain pullback_gamma(const BigradedCochain& ng_cochain, const SimplicialPtr& nbar);

BigradedCochain scale(const BigradedCochain& c, double s);
BigradedCochain difference(const BigradedCochain& a, const BigradedCochain& b);

/// One breakdown entry per component of D(c): max |D(c)_{p,q}| at sampled frames.
VerificationReport verify_cocycle(const BigradedCochain& cochain, const VerifyOptions& opts,
                                  std::string check = "cocycle", std::string model = {});

/// One entry per bidegree in either cochain: max |a - b| at sampled frames.
std::vector<IdentityResult> compare_cochains(const BigradedCochain& a, const BigradedCochain& b,
                                             const VerifyOptions& opts, const std::string& prefix);

/// Max residual of ε_i ε_j = ε_{j-1} ε_i (i < j) on level p at sampled points.
double simplicial_identity_residual(const SimplicialSpace& space, int p, int samples, std::uint64_t seed);

}  // namespace ddv
