#include "lrlab/local_ops.hpp"

#include <cmath>

namespace lrlab::local {

namespace {

constexpr Complex kI{0.0, 1.0};

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

}  // namespace

Matrix identity(int dim) { return Matrix::Identity(dim, dim); }

Matrix pauli_x() {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 1) = 1.0;
  m(1, 0) = 1.0;
  return m;
}

Matrix pauli_y() {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 1) = -kI;
  m(1, 0) = kI;
  return m;
}

// Basis |0> = spin up, so sigma^z = diag(1, -1).
Matrix pauli_z() {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = 1.0;
  m(1, 1) = -1.0;
  return m;
}

Matrix annihilation(int levels) {
  Matrix b = Matrix::Zero(levels, levels);
  for (int k = 1; k < levels; ++k) b(k - 1, k) = std::sqrt(static_cast<double>(k));
  return b;
}

Matrix creation(int levels) { return annihilation(levels).adjoint(); }

Matrix position(int levels) {
  const Matrix b = annihilation(levels);
  return b + b.adjoint();
}

Matrix momentum(int levels) {
  const Matrix b = annihilation(levels);
  return kI * (b.adjoint() - b);
}

Matrix number(int levels) {
  Matrix n = Matrix::Zero(levels, levels);
  for (int k = 0; k < levels; ++k) n(k, k) = static_cast<double>(k);
  return n;
}

Matrix interior_projector(int levels) {
  Matrix p = identity(levels);
  p(levels - 1, levels - 1) = 0.0;
  return p;
}

Matrix site_product(std::span<const Matrix> factors_in_site_order) {
  Matrix out = Matrix::Identity(1, 1);
  for (const Matrix& f : factors_in_site_order) out = kron(f, out);
  return out;
}

}  // namespace lrlab::local
