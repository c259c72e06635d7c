#pragma once

#include <string>
#include <vector>

#include "ddverify/cech.hpp"
#include "ddverify/discrete.hpp"
#include "ddverify/extension.hpp"

namespace ddv {

/// R^n under addition.
GroupPtr vector_group(int n);
/// SO(3) as unit quaternions modulo sign, four charts {q_k > 0}.
GroupPtr so3_group();
/// U(2) as pairs (q, t) ~ (-q, t + pi), standing for e^{it} q.
GroupPtr u2_group();

/// Rotation matrix entries of a unit quaternion (w, x, y, z), 0-based.
Dual rotation_entry(std::span<const Dual> q, int row, int col);

/// Septic smoothstep: 0 for u <= 0, 1 for u >= 1, C^3 at both ends.
Dual smoothstep7(Dual u);

/// G = R^2, Ghat = U(1) x R^2 with (phi, x, y)(phi', x', y') = (phi + phi' - x y', x + x', y + y');
/// one global section eta(x, y) = (0, x, y); theta = d phi + x dy.
CentralExtensionModel build_heisenberg();

/// G = SO(3), Ghat = U(2); sections eta_k lift into {q_k > 0} with a smooth
/// nonconstant angle tau_k; theta = dt + rho^*(R_12 dR_13).
CentralExtensionModel build_u2_so3();

/// theta1 = theta0 + rho^* beta for a shipped nonzero 1-form beta on G.
struct ConnectionPair {
  FormField theta0;
  FormField theta1;
  FormField beta;  // on G
};

/// Heisenberg: beta = y dx. U(2)/SO(3): beta = chi(q0^2) R_12 dR_23, supported in patch 0.
ConnectionPair build_connection_pair(const CentralExtensionModel& model);

enum class CobasedGroup { SO3, Heisenberg };

/// SO(3)-based coboundary bundle g_ab = h_a h_b^{-1} with lifts hhat_a hhat_b^{-1},
/// valued in U(2)/SO(3) or in the Heisenberg extension.
CoboundaryBundle build_so3_coboundary_bundle(CobasedGroup group = CobasedGroup::SO3);

/// Shipped finite extensions, loaded from `fixture_dir` or built in code when empty.
FiniteCentralExtension build_finite_extension(const std::string& name, const std::string& fixture_dir = {});

/// The discrete extension as a 0-dimensional smooth model.
CentralExtensionModel discrete_model(const FiniteCentralExtension& ext);

/// Catalog names, in a fixed order.
const std::vector<std::string>& model_names();
bool is_finite_model(const std::string& name);

}  // namespace ddv
