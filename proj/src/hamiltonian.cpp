#include "lrlab/hamiltonian.hpp"

#include <algorithm>
#include <iterator>
#include <numeric>

#include "lrlab/local_ops.hpp"
#include "lrlab/sectors.hpp"

namespace lrlab {

std::string to_string(CommutatorNorm mode) {
  return mode == CommutatorNorm::full ? "full" : "interior";
}

TwoFamilyHamiltonian::TwoFamilyHamiltonian(InteractionGraph graph, std::vector<int> site_dims,
                                           std::vector<SiteKind> site_kinds,
                                           std::vector<LocalTerm> family0,
                                           std::vector<LocalTerm> family1, double h0, double h1,
                                           CommutatorNorm norm_mode, std::string notes)
    : graph_(std::move(graph)),
      site_dims_(std::move(site_dims)),
      site_kinds_(std::move(site_kinds)),
      family0_count_(static_cast<int>(family0.size())),
      couplings_{h0, h1},
      norm_mode_(norm_mode),
      notes_(std::move(notes)) {
  const auto n = static_cast<std::size_t>(graph_.site_count());
  if (site_dims_.size() != n || site_kinds_.size() != n) {
    throw ConfigError("hamiltonian: need one dimension and one kind per site");
  }
  for (int d : site_dims_) {
    if (d < 1) throw ConfigError("hamiltonian: site dimensions must be positive");
  }
  if (!(h0 >= 0.0) || !(h1 >= 0.0)) {
    throw ConfigError("hamiltonian: couplings must be nonnegative");
  }
  terms_.reserve(family0.size() + family1.size());
  auto append = [&](std::vector<LocalTerm>& fam, int label) {
    for (std::size_t i = 0; i < fam.size(); ++i) {
      LocalTerm& t = fam[i];
      if (t.family != label || t.index != static_cast<int>(i)) {
        throw ConfigError("hamiltonian: term '" + t.op.label + "' has inconsistent family/index");
      }
      const long dim = register_dim(t.op.support.sites(), site_dims_);
      if (t.op.payload.rows() != dim || t.op.payload.cols() != dim) {
        throw ConfigError("hamiltonian: payload of '" + t.op.label +
                          "' does not match its support dimension " + std::to_string(dim));
      }
      terms_.push_back(std::move(t));
    }
  };
  append(family0, 0);
  append(family1, 1);
}

std::span<const LocalTerm> TwoFamilyHamiltonian::family(int a) const {
  if (a == 0) return std::span(terms_).first(static_cast<std::size_t>(family0_count_));
  if (a == 1) return std::span(terms_).subspan(static_cast<std::size_t>(family0_count_));
  throw Error("family label must be 0 or 1");
}

int TwoFamilyHamiltonian::flat_id(TermId id) const {
  const auto fam = family(id.family);
  if (id.index < 0 || id.index >= static_cast<int>(fam.size())) {
    throw Error("unknown term (" + std::to_string(id.family) + "," + std::to_string(id.index) +
                ")");
  }
  return (id.family == 0 ? 0 : family0_count_) + id.index;
}

double TwoFamilyHamiltonian::coupling(int family) const {
  if (family != 0 && family != 1) throw Error("family label must be 0 or 1");
  return couplings_[static_cast<std::size_t>(family)];
}

std::uint64_t TwoFamilyHamiltonian::hilbert_dim() const {
  std::uint64_t dim = 1;
  for (int d : site_dims_) dim *= static_cast<std::uint64_t>(d);
  return dim;
}

int TwoFamilyHamiltonian::locality_radius() const {
  int diameter = 0;
  for (const LocalTerm& t : terms_) diameter = std::max(diameter, t.op.support.diameter());
  return diameter + 1;
}

TwoFamilyHamiltonian TwoFamilyHamiltonian::with_norm_mode(CommutatorNorm mode) const {
  TwoFamilyHamiltonian copy = *this;
  copy.norm_mode_ = mode;
  return copy;
}

TwoFamilyHamiltonian TwoFamilyHamiltonian::with_couplings(double h0, double h1) const {
  if (!(h0 >= 0.0) || !(h1 >= 0.0)) {
    throw ConfigError("hamiltonian: couplings must be nonnegative");
  }
  TwoFamilyHamiltonian copy = *this;
  copy.couplings_ = {h0, h1};
  return copy;
}

LocalAlgebra::LocalAlgebra(const TwoFamilyHamiltonian& h, CommutatorNorm mode)
    : h_(&h), mode_(mode) {}

std::vector<int> LocalAlgebra::union_sites(std::initializer_list<const LocalOperator*> ops) const {
  std::vector<int> sites;
  for (const LocalOperator* op : ops) {
    sites.insert(sites.end(), op->support.sites().begin(), op->support.sites().end());
  }
  std::sort(sites.begin(), sites.end());
  sites.erase(std::unique(sites.begin(), sites.end()), sites.end());
  return sites;
}

namespace {

SparseMatrix sparse_commutator(const SparseMatrix& a, const SparseMatrix& b) {
  const SparseMatrix ab = a * b;
  const SparseMatrix ba = b * a;
  SparseMatrix c = ab - ba;
  c.prune(Complex(0.0, 0.0), 0.0);
  return c;
}

/// Spectral norm of a sparse matrix: the largest norm among the dense blocks
/// of the connected components of its nonzero pattern.
double block_spectral_norm(const SparseMatrix& m) {
  if (m.nonZeros() == 0) return 0.0;
  const SectorDecomposition sectors = find_sectors(m.rows(), std::span<const SparseMatrix>(&m, 1));
  double out = 0.0;
  for (std::size_t b = 0; b < sectors.blocks.size(); ++b) {
    out = std::max(out, spectral_norm(restrict_dense(m, sectors, static_cast<int>(b))));
  }
  return out;
}

}  // namespace

double LocalAlgebra::projected_norm(SparseMatrix m, std::span<const int> register_sites) const {
  const auto& kinds = h_->site_kinds();
  const auto& dims = h_->site_dims();
  const bool any_mode = std::any_of(register_sites.begin(), register_sites.end(), [&](int s) {
    return kinds[static_cast<std::size_t>(s)] == SiteKind::mode;
  });
  if (mode_ == CommutatorNorm::interior && any_mode) {
    // Keep rows and columns whose every mode digit lies below the top level.
    std::vector<char> keep(static_cast<std::size_t>(m.rows()), 1);
    for (long index = 0; index < m.rows(); ++index) {
      long rest = index;
      for (int s : register_sites) {
        const int dim = dims[static_cast<std::size_t>(s)];
        const long digit = rest % dim;
        rest /= dim;
        if (kinds[static_cast<std::size_t>(s)] == SiteKind::mode && digit == dim - 1) {
          keep[static_cast<std::size_t>(index)] = 0;
        }
      }
    }
    m.prune([&](Eigen::Index row, Eigen::Index col, const Complex&) {
      return keep[static_cast<std::size_t>(row)] && keep[static_cast<std::size_t>(col)];
    });
  }
  return block_spectral_norm(m);
}

double LocalAlgebra::commutator_norm(const LocalOperator& a, const LocalOperator& b) const {
  if (!overlaps(a.support, b.support)) return 0.0;
  const auto sites = union_sites({&a, &b});
  const auto& dims = h_->site_dims();
  return projected_norm(sparse_commutator(embed_sparse(a, sites, dims), embed_sparse(b, sites, dims)),
                        sites);
}

double LocalAlgebra::nested_commutator_norm(const LocalOperator& a, const LocalOperator& b,
                                            const LocalOperator& c) const {
  if (!overlaps(a.support, b.support)) return 0.0;
  if (!overlaps(c.support, a.support) && !overlaps(c.support, b.support)) return 0.0;
  const auto sites = union_sites({&a, &b, &c});
  const auto& dims = h_->site_dims();
  const SparseMatrix inner =
      sparse_commutator(embed_sparse(a, sites, dims), embed_sparse(b, sites, dims));
  return projected_norm(sparse_commutator(inner, embed_sparse(c, sites, dims)), sites);
}

double LocalAlgebra::norm(const LocalOperator& a) const { return spectral_norm(a.payload); }

ValidationReport validate_two_family(const TwoFamilyHamiltonian& h) {
  ValidationReport report;
  report.locality_radius = h.locality_radius();
  const LocalAlgebra algebra(h, CommutatorNorm::full);
  const auto& terms = h.terms();

  for (const LocalTerm& t : terms) {
    const double defect = hermiticity_defect(t.op.payload);
    if (defect > kValidationTolerance) {
      report.violations.push_back({"non_hermitian",
                                   {{t.family, t.index}},
                                   defect,
                                   "payload of '" + t.op.label + "' is not Hermitian"});
    }
    if (t.op.support.diameter() >= report.locality_radius) {
      report.violations.push_back({"support_diameter",
                                   {{t.family, t.index}},
                                   static_cast<double>(t.op.support.diameter()),
                                   "support of '" + t.op.label + "' reaches the locality radius"});
    }
  }
  for (std::size_t i = 0; i < terms.size(); ++i) {
    for (std::size_t j = i + 1; j < terms.size(); ++j) {
      if (terms[i].family != terms[j].family) continue;
      const double norm = algebra.commutator_norm(terms[i].op, terms[j].op);
      if (norm > kValidationTolerance) {
        report.violations.push_back(
            {"noncommuting_pair",
             {{terms[i].family, terms[i].index}, {terms[j].family, terms[j].index}},
             norm,
             "'" + terms[i].op.label + "' and '" + terms[j].op.label + "' do not commute"});
      }
    }
  }
  report.passed = report.violations.empty();
  return report;
}

NoncommutingAdjacency::NoncommutingAdjacency(std::vector<std::vector<int>> zmap,
                                             std::vector<SupportRegion> supports,
                                             std::vector<int> families)
    : zmap_(std::move(zmap)), supports_(std::move(supports)), families_(std::move(families)) {
  const int n = static_cast<int>(zmap_.size());
  if (supports_.size() != zmap_.size() || families_.size() != zmap_.size()) {
    throw Error("adjacency: zmap, supports and families must have equal length");
  }
  for (int i = 0; i < n; ++i) {
    auto& row = zmap_[static_cast<std::size_t>(i)];
    std::sort(row.begin(), row.end());
    row.erase(std::unique(row.begin(), row.end()), row.end());
    for (int j : row) {
      if (j < 0 || j >= n) throw Error("adjacency: neighbour id out of range");
      const auto& back = zmap_[static_cast<std::size_t>(j)];
      if (std::find(back.begin(), back.end(), i) == back.end()) {
        throw Error("adjacency: relation is not symmetric");
      }
      if (families_[static_cast<std::size_t>(i)] == families_[static_cast<std::size_t>(j)]) {
        throw Error("adjacency: Z sets must only contain opposite-family terms");
      }
      if (!overlaps(supports_[static_cast<std::size_t>(i)], supports_[static_cast<std::size_t>(j)])) {
        throw Error("adjacency: Z sets must only contain overlapping terms");
      }
    }
  }
}

std::span<const int> NoncommutingAdjacency::neighbours(int id) const {
  if (id < 0 || id >= size()) throw Error("adjacency: unknown term id " + std::to_string(id));
  return zmap_[static_cast<std::size_t>(id)];
}

const SupportRegion& NoncommutingAdjacency::support(int id) const {
  if (id < 0 || id >= size()) throw Error("adjacency: unknown term id " + std::to_string(id));
  return supports_[static_cast<std::size_t>(id)];
}

int NoncommutingAdjacency::family(int id) const {
  if (id < 0 || id >= size()) throw Error("adjacency: unknown term id " + std::to_string(id));
  return families_[static_cast<std::size_t>(id)];
}

int NoncommutingAdjacency::nu() const {
  std::size_t best = 0;
  for (const auto& row : zmap_) best = std::max(best, row.size());
  return static_cast<int>(best);
}

NoncommutingAdjacency noncommuting_adjacency(const TwoFamilyHamiltonian& h) {
  const LocalAlgebra algebra(h);
  const auto& terms = h.terms();
  const int n = h.term_count();
  std::vector<std::vector<int>> zmap(static_cast<std::size_t>(n));
  std::vector<SupportRegion> supports;
  std::vector<int> families;
  supports.reserve(terms.size());
  for (const LocalTerm& t : terms) {
    supports.push_back(t.op.support);
    families.push_back(t.family);
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const auto& a = terms[static_cast<std::size_t>(i)];
      const auto& b = terms[static_cast<std::size_t>(j)];
      if (a.family == b.family) continue;
      if (algebra.commutator_norm(a.op, b.op) > kNonzeroCommutator) {
        zmap[static_cast<std::size_t>(i)].push_back(j);
        zmap[static_cast<std::size_t>(j)].push_back(i);
      }
    }
  }
  return NoncommutingAdjacency(std::move(zmap), std::move(supports), std::move(families));
}

SparseMatrix sparse_hamiltonian(const TwoFamilyHamiltonian& h) {
  const auto& dims = h.site_dims();
  std::vector<int> all(dims.size());
  std::iota(all.begin(), all.end(), 0);
  const auto dim = static_cast<Eigen::Index>(h.hilbert_dim());
  SparseMatrix ham(dim, dim);
  for (const LocalTerm& term : h.terms()) {
    ham += SparseMatrix(h.coupling(term.family) * embed_sparse(term.op, all, dims));
  }
  ham.prune(Complex(0.0, 0.0), 0.0);
  return ham;
}

}  // namespace lrlab
