#include "lrlab/sectors.hpp"

#include <numeric>
#include <vector>

namespace lrlab {

namespace {

struct DisjointSets {
  std::vector<long> parent;

  explicit DisjointSets(long n) : parent(static_cast<std::size_t>(n)) {
    std::iota(parent.begin(), parent.end(), 0L);
  }

  long find(long x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      auto& p = parent[static_cast<std::size_t>(x)];
      p = parent[static_cast<std::size_t>(p)];
      x = p;
    }
    return x;
  }

  void unite(long a, long b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent[static_cast<std::size_t>(b)] = a;
  }
};

}  // namespace

SectorDecomposition find_sectors(long dim, std::span<const SparseMatrix> ops) {
  if (dim <= 0) throw Error("find_sectors: dimension must be positive");
  DisjointSets sets(dim);
  for (const SparseMatrix& op : ops) {
    if (op.rows() != dim || op.cols() != dim) throw Error("find_sectors: dimension mismatch");
    for (int k = 0; k < op.outerSize(); ++k) {
      for (SparseMatrix::InnerIterator it(op, k); it; ++it) {
        if (it.value() != Complex(0.0, 0.0)) sets.unite(it.row(), it.col());
      }
    }
  }
  SectorDecomposition out;
  out.dim = dim;
  out.block_of.assign(static_cast<std::size_t>(dim), -1);
  out.position.assign(static_cast<std::size_t>(dim), -1);
  std::vector<int> root_block(static_cast<std::size_t>(dim), -1);
  for (long i = 0; i < dim; ++i) {
    const long root = sets.find(i);
    int& b = root_block[static_cast<std::size_t>(root)];
    if (b < 0) {
      b = static_cast<int>(out.blocks.size());
      out.blocks.emplace_back();
    }
    out.block_of[static_cast<std::size_t>(i)] = b;
    out.position[static_cast<std::size_t>(i)] = static_cast<long>(out.blocks[static_cast<std::size_t>(b)].size());
    out.blocks[static_cast<std::size_t>(b)].push_back(i);
  }
  return out;
}

namespace {

std::vector<Eigen::Triplet<Complex>> block_entries(const SparseMatrix& op,
                                                   const SectorDecomposition& sectors, int block) {
  if (op.rows() != sectors.dim || op.cols() != sectors.dim) {
    throw Error("restrict: dimension mismatch");
  }
  std::vector<Eigen::Triplet<Complex>> entries;
  for (long col : sectors.blocks.at(static_cast<std::size_t>(block))) {
    for (SparseMatrix::InnerIterator it(op, col); it; ++it) {
      const auto row = static_cast<std::size_t>(it.row());
      if (sectors.block_of[row] != block) {
        throw Error("restrict: operator couples different sectors");
      }
      entries.emplace_back(sectors.position[row], sectors.position[static_cast<std::size_t>(col)],
                           it.value());
    }
  }
  return entries;
}

}  // namespace

SparseMatrix restrict_sparse(const SparseMatrix& op, const SectorDecomposition& sectors,
                             int block) {
  const auto entries = block_entries(op, sectors, block);
  const auto n = static_cast<long>(sectors.blocks.at(static_cast<std::size_t>(block)).size());
  SparseMatrix out(n, n);
  out.setFromTriplets(entries.begin(), entries.end());
  return out;
}

Matrix restrict_dense(const SparseMatrix& op, const SectorDecomposition& sectors, int block) {
  return Matrix(restrict_sparse(op, sectors, block));
}

}  // namespace lrlab
