#pragma once

#include <span>
#include <string>
#include <vector>

#include <Eigen/SparseCore>

#include "lrlab/graph.hpp"
#include "lrlab/types.hpp"

namespace lrlab {

using SparseMatrix = Eigen::SparseMatrix<Complex>;

// Tensor-product convention used everywhere in the library: within any
// register (the whole system or a subset of its sites) sites are ordered by
// id and the lowest id is the least-significant factor. For two qubits the
// basis index is s_0 + 2 s_1, so sigma^z on site 0 is diag(1, -1, 1, -1) and
// sigma^z on site 1 is diag(1, 1, -1, -1).

/// An operator acting nontrivially on `support`. The payload is written in
/// the register formed by the support sites, following the convention above.
struct LocalOperator {
  std::string label;
  SupportRegion support;
  Matrix payload;
};

/// Product of the per-site dimensions of `sites`.
long register_dim(std::span<const int> sites, std::span<const int> site_dims);

/// payload (x) identity on every other site of the register. `register_sites`
/// must be sorted and contain the operator's support; `site_dims` is indexed
/// by global site id.
Matrix embed(const LocalOperator& op, std::span<const int> register_sites,
             std::span<const int> site_dims);

/// Embedding into the register of all sites 0..n-1.
Matrix embed(const LocalOperator& op, std::span<const int> site_dims);

SparseMatrix embed_sparse(const LocalOperator& op, std::span<const int> register_sites,
                          std::span<const int> site_dims);

/// AB - BA. Throws Error on a dimension mismatch.
Matrix commutator(const Matrix& a, const Matrix& b);

/// Largest singular value. Hermitian and anti-Hermitian inputs go through a
/// Hermitian eigensolver, everything else through an SVD.
double spectral_norm(const Matrix& a);

/// Largest absolute entry of A - A^dagger.
double hermiticity_defect(const Matrix& a);

struct SpectralDecomposition {
  RealVector eigenvalues;
  Matrix eigenvectors;
};

/// Full eigendecomposition of a Hermitian matrix. Throws Error when the
/// input deviates from Hermitian by more than 1e-10 entrywise.
SpectralDecomposition decompose(const Matrix& hamiltonian);

/// e^{iHt} A e^{-iHt}.
Matrix heisenberg_evolve(const Matrix& a, const SpectralDecomposition& decomp, double t);

/// Caches V^dagger A V so that A(t) costs two matrix products per time.
class HeisenbergFrame {
 public:
  HeisenbergFrame(const SpectralDecomposition& decomp, const Matrix& a);

  Matrix at(double t) const;

 private:
  const SpectralDecomposition* decomp_;
  Matrix rotated_;
};

}  // namespace lrlab
