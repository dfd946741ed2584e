#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "lrlab/graph.hpp"
#include "lrlab/operators.hpp"

namespace lrlab {

enum class SiteKind { spin, mode };

/// How commutator norms entering the bound constants are measured.
/// `interior` sandwiches every commutator between projectors that remove the
/// top Fock level of each bosonic mode in the register; this isolates the
/// truncation artifact [b, b^dagger] = 1 - m|m-1><m-1|.
enum class CommutatorNorm { full, interior };

std::string to_string(CommutatorNorm mode);

/// Nonzero threshold for commutator spectral norms (adjacency and n_P).
inline constexpr double kNonzeroCommutator = 1e-12;
/// Tolerance for intra-family commutation and Hermiticity checks.
inline constexpr double kValidationTolerance = 1e-10;

struct TermId {
  int family = 0;
  int index = 0;
  friend bool operator==(const TermId&, const TermId&) = default;
};

/// One Phi_a^i. The payload is the bare operator; the family coupling is
/// kept on the Hamiltonian.
struct LocalTerm {
  int family = 0;
  int index = 0;
  LocalOperator op;
};

/// H = h0 sum_i Phi_0^i + h1 sum_j Phi_1^j on a graph of sites.
///
/// Terms are also addressed by a flat id: family 0 first, in index order,
/// then family 1.
class TwoFamilyHamiltonian {
 public:
  TwoFamilyHamiltonian(InteractionGraph graph, std::vector<int> site_dims,
                       std::vector<SiteKind> site_kinds, std::vector<LocalTerm> family0,
                       std::vector<LocalTerm> family1, double h0, double h1,
                       CommutatorNorm norm_mode = CommutatorNorm::full, std::string notes = {});

  const InteractionGraph& graph() const noexcept { return graph_; }
  const std::vector<int>& site_dims() const noexcept { return site_dims_; }
  const std::vector<SiteKind>& site_kinds() const noexcept { return site_kinds_; }
  std::span<const LocalTerm> family(int a) const;
  const std::vector<LocalTerm>& terms() const noexcept { return terms_; }
  int term_count() const noexcept { return static_cast<int>(terms_.size()); }
  int flat_id(TermId id) const;
  double coupling(int family) const;
  double h0() const noexcept { return couplings_[0]; }
  double h1() const noexcept { return couplings_[1]; }
  CommutatorNorm norm_mode() const noexcept { return norm_mode_; }
  const std::string& notes() const noexcept { return notes_; }
  /// Product of all site dimensions.
  std::uint64_t hilbert_dim() const;
  /// 1 + largest support diameter.
  int locality_radius() const;

  TwoFamilyHamiltonian with_norm_mode(CommutatorNorm mode) const;
  TwoFamilyHamiltonian with_couplings(double h0, double h1) const;

 private:
  InteractionGraph graph_;
  std::vector<int> site_dims_;
  std::vector<SiteKind> site_kinds_;
  std::vector<LocalTerm> terms_;
  int family0_count_ = 0;
  std::array<double, 2> couplings_{};
  CommutatorNorm norm_mode_;
  std::string notes_;
};

/// Commutator norms of local operators, evaluated on the union of their
/// supports (the norm of X (x) 1 equals the norm of X).
class LocalAlgebra {
 public:
  LocalAlgebra(const TwoFamilyHamiltonian& h, CommutatorNorm mode);
  explicit LocalAlgebra(const TwoFamilyHamiltonian& h) : LocalAlgebra(h, h.norm_mode()) {}

  /// ||[a, b]||
  double commutator_norm(const LocalOperator& a, const LocalOperator& b) const;
  /// ||[[a, b], c]||
  double nested_commutator_norm(const LocalOperator& a, const LocalOperator& b,
                                const LocalOperator& c) const;
  /// ||a||, unprojected.
  double norm(const LocalOperator& a) const;

 private:
  double projected_norm(SparseMatrix m, std::span<const int> register_sites) const;
  std::vector<int> union_sites(std::initializer_list<const LocalOperator*> ops) const;

  const TwoFamilyHamiltonian* h_;
  CommutatorNorm mode_;
};

struct Violation {
  std::string kind;  // "noncommuting_pair" | "non_hermitian" | "support_diameter"
  std::vector<TermId> terms;
  double value = 0.0;
  std::string message;
};

struct ValidationReport {
  bool passed = true;
  int locality_radius = 0;
  std::vector<Violation> violations;
};

/// Checks intra-family commutation, Hermiticity of every payload and the
/// support-diameter bound. Lists every violation; never throws on a failed
/// check.
ValidationReport validate_two_family(const TwoFamilyHamiltonian& h);

/// Z_i for every term, by flat id: the opposite-family terms whose commutator
/// with term i has spectral norm above kNonzeroCommutator.
class NoncommutingAdjacency {
 public:
  NoncommutingAdjacency(std::vector<std::vector<int>> zmap, std::vector<SupportRegion> supports,
                        std::vector<int> families);

  int size() const noexcept { return static_cast<int>(zmap_.size()); }
  std::span<const int> neighbours(int id) const;
  const SupportRegion& support(int id) const;
  int family(int id) const;
  /// max_i |Z_i|
  int nu() const;
  const std::vector<std::vector<int>>& zmap() const noexcept { return zmap_; }

 private:
  std::vector<std::vector<int>> zmap_;
  std::vector<SupportRegion> supports_;
  std::vector<int> families_;
};

NoncommutingAdjacency noncommuting_adjacency(const TwoFamilyHamiltonian& h);

/// The full Hamiltonian (couplings included) on the whole register, with
/// exact zeros removed.
SparseMatrix sparse_hamiltonian(const TwoFamilyHamiltonian& h);

}  // namespace lrlab
