#pragma once

#include <optional>
#include <string>

#include "lrlab/hamiltonian.hpp"

namespace lrlab {

/// Parameters of a built-in model. All built-ins use open boundaries.
///
///  - "tfim": Phi_0^i = X_i X_{i+1} (i < length-1), Phi_1^i = Z_i.
///  - "commuting_ising": the bond family only.
///  - "dicke_chain": spins on sites 0..L-1, modes on sites L..2L-1, and
///    h_n = Z_n (x_n + p_{n+1}) with x = b + b^dagger, p = i(b^dagger - b);
///    the last term h_{L-1} = Z_{L-1} x_{L-1} has no right neighbour.
///    Even n form family 0 and odd n family 1.
struct ModelParams {
  std::string name;
  int length = 0;
  double h0 = 1.0;
  double h1 = 1.0;
  int truncation = 4;
  /// Defaults to `interior` for dicke_chain and `full` otherwise.
  std::optional<CommutatorNorm> norm_mode;
};

TwoFamilyHamiltonian build_model(const ModelParams& params);

/// The Dicke chain rewritten as commuting terms
/// h~_n = b_n (Z_n - i Z_{n-1}) + h.c. = Z_n x_n + Z_{n-1} p_n, with
/// h~_0 = Z_0 x_0. All terms form family 0 with coupling h0.
TwoFamilyHamiltonian dicke_commuting_form(int length, int truncation, double h = 1.0);

/// Site ids of the Dicke chain.
inline int dicke_spin_site(int n) { return n; }
inline int dicke_mode_site(int length, int n) { return length + n; }

/// Single-site observable by name. Spin sites accept "X", "Y", "Z"; mode sites
/// accept "x" (b + b^dagger), "p" (i(b^dagger - b)) and "n" (b^dagger b).
LocalOperator site_observable(const TwoFamilyHamiltonian& h, const std::string& op, int site);

/// A Hamiltonian term used as an observable.
LocalOperator term_observable(const TwoFamilyHamiltonian& h, TermId id);

}  // namespace lrlab
