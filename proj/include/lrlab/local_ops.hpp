#pragma once

#include <span>

#include "lrlab/types.hpp"

namespace lrlab::local {

Matrix identity(int dim);
Matrix pauli_x();
Matrix pauli_y();
Matrix pauli_z();

/// Truncated bosonic annihilation operator on levels |0>..|m-1>:
/// b|k> = sqrt(k)|k-1>.
Matrix annihilation(int levels);
Matrix creation(int levels);
/// b + b^dagger
Matrix position(int levels);
/// i(b^dagger - b)
Matrix momentum(int levels);
Matrix number(int levels);

/// Projector removing the top Fock level |m-1><m-1|.
Matrix interior_projector(int levels);

/// Tensor product of per-site factors listed in increasing site order. The
/// first factor is the least-significant index: the result acts on the basis
/// index s_0 + d_0 * (s_1 + d_1 * (...)).
Matrix site_product(std::span<const Matrix> factors_in_site_order);

}  // namespace lrlab::local
