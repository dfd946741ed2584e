#pragma once

#include <span>
#include <vector>

#include "lrlab/operators.hpp"

namespace lrlab {

/// Partition of the computational basis into blocks that no operator in a
/// given set connects. Each block lists its basis indices in increasing order.
struct SectorDecomposition {
  long dim = 0;
  std::vector<std::vector<long>> blocks;
  /// For every basis index: its block and its position inside the block.
  std::vector<int> block_of;
  std::vector<long> position;
};

/// Connected components of the graph whose edges are the exactly nonzero
/// entries of the operators. Blocks are ordered by their smallest index.
SectorDecomposition find_sectors(long dim, std::span<const SparseMatrix> ops);

/// Dense restriction of `op` to one block (rows and columns in block order).
Matrix restrict_dense(const SparseMatrix& op, const SectorDecomposition& sectors, int block);
SparseMatrix restrict_sparse(const SparseMatrix& op, const SectorDecomposition& sectors,
                             int block);

}  // namespace lrlab
