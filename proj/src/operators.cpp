#include "lrlab/operators.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace lrlab {

namespace {

// Index bookkeeping for placing a local payload inside a larger register.
struct Placement {
  long register_dim = 1;
  std::vector<long> strides;   // register stride of each support site
  std::vector<long> dims;      // local dimension of each support site
  std::vector<long> offsets;   // register offset of every payload basis index
};

Placement place(const LocalOperator& op, std::span<const int> register_sites,
                std::span<const int> site_dims) {
  Placement p;
  std::vector<long> register_strides(register_sites.size());
  for (std::size_t k = 0; k < register_sites.size(); ++k) {
    const int site = register_sites[k];
    if (site < 0 || static_cast<std::size_t>(site) >= site_dims.size()) {
      throw Error("embed: register site " + std::to_string(site) + " has no dimension");
    }
    register_strides[k] = p.register_dim;
    p.register_dim *= site_dims[static_cast<std::size_t>(site)];
  }
  long local_dim = 1;
  for (int site : op.support.sites()) {
    auto it = std::find(register_sites.begin(), register_sites.end(), site);
    if (it == register_sites.end()) {
      throw Error("embed: support site " + std::to_string(site) + " of '" + op.label +
                  "' is not in the register");
    }
    p.strides.push_back(register_strides[static_cast<std::size_t>(it - register_sites.begin())]);
    p.dims.push_back(site_dims[static_cast<std::size_t>(site)]);
    local_dim *= p.dims.back();
  }
  if (op.payload.rows() != local_dim || op.payload.cols() != local_dim) {
    throw Error("embed: payload of '" + op.label + "' is " + std::to_string(op.payload.rows()) +
                "x" + std::to_string(op.payload.cols()) + " but its support has dimension " +
                std::to_string(local_dim));
  }
  p.offsets.resize(static_cast<std::size_t>(local_dim));
  for (long r = 0; r < local_dim; ++r) {
    long rest = r;
    long offset = 0;
    for (std::size_t k = 0; k < p.dims.size(); ++k) {
      offset += (rest % p.dims[k]) * p.strides[k];
      rest /= p.dims[k];
    }
    p.offsets[static_cast<std::size_t>(r)] = offset;
  }
  return p;
}

// Splits a register index into (payload index, register index with the
// support digits zeroed).
std::pair<long, long> split(const Placement& p, long index) {
  long local = 0;
  long local_stride = 1;
  long base = index;
  for (std::size_t k = 0; k < p.dims.size(); ++k) {
    const long digit = (index / p.strides[k]) % p.dims[k];
    local += digit * local_stride;
    local_stride *= p.dims[k];
    base -= digit * p.strides[k];
  }
  return {local, base};
}

template <typename Sink>
void for_each_entry(const LocalOperator& op, const Placement& p, Sink&& sink) {
  const long local_dim = static_cast<long>(p.offsets.size());
  for (long col = 0; col < p.register_dim; ++col) {
    const auto [local_col, base] = split(p, col);
    for (long r = 0; r < local_dim; ++r) {
      const Complex v = op.payload(r, local_col);
      if (v != Complex{}) sink(base + p.offsets[static_cast<std::size_t>(r)], col, v);
    }
  }
}

}  // namespace

long register_dim(std::span<const int> sites, std::span<const int> site_dims) {
  long dim = 1;
  for (int s : sites) dim *= site_dims[static_cast<std::size_t>(s)];
  return dim;
}

Matrix embed(const LocalOperator& op, std::span<const int> register_sites,
             std::span<const int> site_dims) {
  const Placement p = place(op, register_sites, site_dims);
  Matrix out = Matrix::Zero(p.register_dim, p.register_dim);
  for_each_entry(op, p, [&](long row, long col, Complex v) { out(row, col) = v; });
  return out;
}

Matrix embed(const LocalOperator& op, std::span<const int> site_dims) {
  std::vector<int> all(site_dims.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
  return embed(op, all, site_dims);
}

SparseMatrix embed_sparse(const LocalOperator& op, std::span<const int> register_sites,
                          std::span<const int> site_dims) {
  const Placement p = place(op, register_sites, site_dims);
  std::vector<Eigen::Triplet<Complex>> entries;
  for_each_entry(op, p, [&](long row, long col, Complex v) { entries.emplace_back(row, col, v); });
  SparseMatrix out(p.register_dim, p.register_dim);
  out.setFromTriplets(entries.begin(), entries.end());
  return out;
}

Matrix commutator(const Matrix& a, const Matrix& b) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows()) {
    throw Error("commutator: dimension mismatch");
  }
  const Matrix ab = a * b;
  const Matrix ba = b * a;
  return ab - ba;
}

double hermiticity_defect(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

double spectral_norm(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  const double scale = a.cwiseAbs().maxCoeff();
  if (scale == 0.0) return 0.0;
  const double tol = 1e-13 * scale;

  auto hermitian_norm = [](const Matrix& h) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().maxCoeff();
  };
  if (a.rows() == a.cols()) {
    if ((a - a.adjoint()).cwiseAbs().maxCoeff() <= tol) {
      return hermitian_norm(0.5 * (a + a.adjoint()));
    }
    if ((a + a.adjoint()).cwiseAbs().maxCoeff() <= tol) {
      return hermitian_norm(Complex{0.0, 0.5} * (a - a.adjoint()));
    }
  }
  Eigen::BDCSVD<Matrix> svd(a);
  return svd.singularValues()(0);
}

SpectralDecomposition decompose(const Matrix& hamiltonian) {
  if (hamiltonian.rows() != hamiltonian.cols()) {
    throw Error("decompose: matrix is not square");
  }
  if (hermiticity_defect(hamiltonian) > 1e-10) {
    throw Error("decompose: matrix is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(hamiltonian);
  if (es.info() != Eigen::Success) {
    throw Error("decompose: eigensolver did not converge");
  }
  return {es.eigenvalues(), es.eigenvectors()};
}

HeisenbergFrame::HeisenbergFrame(const SpectralDecomposition& decomp, const Matrix& a)
    : decomp_(&decomp) {
  if (a.rows() != decomp.eigenvectors.rows() || a.cols() != decomp.eigenvectors.cols()) {
    throw Error("heisenberg_evolve: dimension mismatch");
  }
  rotated_ = decomp.eigenvectors.adjoint() * a * decomp.eigenvectors;
}

Matrix HeisenbergFrame::at(double t) const {
  const RealVector& e = decomp_->eigenvalues;
  const Eigen::Index n = e.size();
  Eigen::VectorXcd phase(n);
  for (Eigen::Index k = 0; k < n; ++k) phase(k) = std::polar(1.0, e(k) * t);
  // (e^{i Lambda t} A~ e^{-i Lambda t})_{kl} = e^{i(l_k - l_l)t} A~_{kl}
  const Matrix evolved = phase.asDiagonal() * rotated_ * phase.conjugate().asDiagonal();
  Matrix half(n, n);
  half.noalias() = decomp_->eigenvectors * evolved;
  Matrix out(n, n);
  out.noalias() = half * decomp_->eigenvectors.adjoint();
  return out;
}

Matrix heisenberg_evolve(const Matrix& a, const SpectralDecomposition& decomp, double t) {
  return HeisenbergFrame(decomp, a).at(t);
}

}  // namespace lrlab
