#pragma once

#include "lrlab/hamiltonian.hpp"

namespace lrlab {

inline constexpr double kDerivativeFloor = 1e-6;

struct DerivativeCheck {
  double finite_difference_norm = 0.0;
  double analytic_norm = 0.0;
  /// ||FD - analytic|| / max(||analytic||, kDerivativeFloor ||H|| ||Phi_a^i|| ||Phi_b^j||).
  /// The floor keeps roundoff in the finite difference from dominating when
  /// the derivative itself vanishes.
  double relative_error = 0.0;
};

/// Compares a central finite difference of K(t) = [Phi_a^i(t), Phi_b^j]
/// against the closed-form derivative
///   [K(t), -i H_Z(t)] - i h_{a+1} sum_{k in Z_i} [Phi_a^i(t), [Phi_{a+1}^k(t), Phi_b^j]],
/// where H_Z = h_{a+1} sum_{k in Z_i} Phi_{a+1}^k. Works on the full Hilbert
/// space. `step` must lie in (0, 0.1].
DerivativeCheck derivative_identity_check(const TwoFamilyHamiltonian& h, TermId first,
                                          TermId second, double t, double step = 1e-4);

/// Dense matrix of the full Hamiltonian (couplings included).
Matrix full_hamiltonian(const TwoFamilyHamiltonian& h);

}  // namespace lrlab
