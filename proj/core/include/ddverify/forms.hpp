#pragma once

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ddverify/manifold.hpp"

namespace ddv {

using Frame = std::span<const Eigen::VectorXd>;
using FormEval = std::function<double(const Point&, Frame)>;

/// A degree-q differential form: an alternating multilinear evaluator on
/// tangent vectors given in the chart coordinates of the query point.
class FormField {
 public:
  FormField(SpacePtr base, int degree, FormEval eval, std::string label = {});

  static FormField zero(SpacePtr base, int degree);

  double operator()(const Point& p, Frame frame) const;

  int degree() const { return degree_; }
  const SpacePtr& base() const { return base_; }
  const std::string& label() const { return label_; }
  bool is_zero() const { return !eval_; }

  /// Attaches an analytic exterior derivative used by ext_derivative.
  FormField& with_derivative(FormField d);
  const FormField* analytic_derivative() const { return derivative_.get(); }

 private:
  SpacePtr base_;
  int degree_ = 0;
  FormEval eval_;  // empty for the zero form
  std::string label_;
  std::shared_ptr<const FormField> derivative_;
};

struct DiffOptions {
  double step = 1e-4;
  bool richardson = true;
};

/// dω(v0..vq) = Σ (-1)^i ∂_{v_i} ω(v0..v̂i..vq) with constant coordinate fields.
/// Uses the attached analytic derivative when present, otherwise central
/// differences with one Richardson level. Stencils closer than 2h to the
/// chart boundary raise BoundaryError.
FormField ext_derivative(const FormField& form, DiffOptions opts = {});

/// (F*ω)(p; v...) = ω(F(p); J_F(p) v...).
FormField pullback(const SmoothMap& map, const FormField& form);

/// Alternating shuffle-sum wedge product.
FormField wedge(const FormField& a, const FormField& b);

FormField linear_combine(std::span<const double> coeffs, std::span<const FormField> forms);
FormField operator+(const FormField& a, const FormField& b);
FormField operator-(const FormField& a, const FormField& b);
FormField operator*(double s, const FormField& a);

using AmbientScalar = std::function<Dual(std::span<const Dual> ambient)>;

/// The 0-form f.
FormField function_form(SpacePtr space, AmbientScalar f, std::string label = {});
/// The 1-form f dg, with f and g written on ambient vectors.
FormField f_dg_form(SpacePtr space, AmbientScalar f, AmbientScalar g, std::string label = {});
/// dx_{i0} ∧ ... in chart coordinates of a single-chart space (determinant form).
FormField coordinate_form(SpacePtr space, std::vector<int> indices, std::string label = {});

struct IntegrationResult {
  double value = 0.0;
  double refined_value = 0.0;
  bool converged = true;  // false = warning: the two node counts disagree
};

/// ∫_{[0,1]^q} σ*ω by tensor Gauss-Legendre with `nodes` per axis; the
/// result is compared against 2*nodes to flag non-convergence.
IntegrationResult integrate_cube(const FormField& form, const SmoothMap& cube_map, int nodes = 16,
                                 double convergence_tol = 1e-9);

/// Max |ω(..v_i..v_j..) + ω(..v_j..v_i..)| over sampled frames.
double antisymmetry_residual(const FormField& form, int samples, std::uint64_t seed);
/// Max |ω(.., a u + b w, ..) - a ω(..u..) - b ω(..w..)| over sampled frames.
double multilinearity_residual(const FormField& form, int samples, std::uint64_t seed);

}  // namespace ddv
