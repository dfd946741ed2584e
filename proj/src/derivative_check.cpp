#include "lrlab/derivative_check.hpp"

#include <algorithm>

#include <cmath>

namespace lrlab {

Matrix full_hamiltonian(const TwoFamilyHamiltonian& h) { return Matrix(sparse_hamiltonian(h)); }

DerivativeCheck derivative_identity_check(const TwoFamilyHamiltonian& h, TermId first,
                                          TermId second, double t, double step) {
  if (!(step > 0.0 && step <= 0.1)) {
    throw Error("derivative_identity_check: step must lie in (0, 0.1]");
  }
  const auto& dims = h.site_dims();
  const int i = h.flat_id(first);
  const int j = h.flat_id(second);
  const auto& terms = h.terms();
  const NoncommutingAdjacency adjacency = noncommuting_adjacency(h);

  const Matrix hamiltonian = full_hamiltonian(h);
  const SpectralDecomposition decomp = decompose(hamiltonian);
  const HeisenbergFrame phi_a(decomp, embed(terms[static_cast<std::size_t>(i)].op, dims));
  const Matrix phi_b = embed(terms[static_cast<std::size_t>(j)].op, dims);

  auto k_at = [&](double s) { return commutator(phi_a.at(s), phi_b); };
  const Matrix finite_difference = (k_at(t + step) - k_at(t - step)) / (2.0 * step);

  const double h_next = h.coupling(1 - first.family);
  const Complex minus_i{0.0, -1.0};
  const Matrix phi_a_t = phi_a.at(t);
  const Matrix k_t = commutator(phi_a_t, phi_b);
  const long dim = static_cast<long>(h.hilbert_dim());
  Matrix h_z = Matrix::Zero(dim, dim);
  Matrix nested = Matrix::Zero(dim, dim);
  for (int k : adjacency.neighbours(i)) {
    const Matrix phi_k_t = heisenberg_evolve(embed(terms[static_cast<std::size_t>(k)].op, dims),
                                             decomp, t);
    h_z += h_next * phi_k_t;
    nested += commutator(phi_a_t, commutator(phi_k_t, phi_b));
  }
  const Matrix analytic = commutator(k_t, minus_i * h_z) + (minus_i * h_next) * nested;

  DerivativeCheck out;
  out.finite_difference_norm = spectral_norm(finite_difference);
  out.analytic_norm = spectral_norm(analytic);
  const double diff = spectral_norm(finite_difference - analytic);
  const double scale = spectral_norm(hamiltonian) *
                       spectral_norm(terms[static_cast<std::size_t>(i)].op.payload) *
                       spectral_norm(terms[static_cast<std::size_t>(j)].op.payload);
  const double denominator = std::max(out.analytic_norm, kDerivativeFloor * scale);
  out.relative_error = denominator > 0.0 ? diff / denominator : diff;
  return out;
}

}  // namespace lrlab
