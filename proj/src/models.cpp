#include "lrlab/models.hpp"

#include <array>

#include "lrlab/local_ops.hpp"

namespace lrlab {

namespace {

LocalTerm make_term(const InteractionGraph& g, int family, int index, std::string label,
                    std::vector<int> sites, Matrix payload) {
  return LocalTerm{family, index, LocalOperator{std::move(label), SupportRegion(g, std::move(sites)),
                                                std::move(payload)}};
}

TwoFamilyHamiltonian ising_family(const ModelParams& p, bool transverse) {
  if (p.length < 2) throw ConfigError("model.length must be >= 2");
  const int n = p.length;
  const InteractionGraph g = path_graph(n);
  const Matrix x = local::pauli_x();
  const Matrix z = local::pauli_z();
  const std::array<Matrix, 2> xx{x, x};
  std::vector<LocalTerm> bonds, fields;
  for (int i = 0; i + 1 < n; ++i) {
    bonds.push_back(make_term(g, 0, i, "X" + std::to_string(i) + "X" + std::to_string(i + 1),
                              {i, i + 1}, local::site_product(xx)));
  }
  if (transverse) {
    for (int i = 0; i < n; ++i) {
      fields.push_back(make_term(g, 1, i, "Z" + std::to_string(i), {i}, z));
    }
  }
  return TwoFamilyHamiltonian(g, std::vector<int>(static_cast<std::size_t>(n), 2),
                              std::vector<SiteKind>(static_cast<std::size_t>(n), SiteKind::spin),
                              std::move(bonds), std::move(fields), p.h0, p.h1,
                              p.norm_mode.value_or(CommutatorNorm::full),
                              "open chain; sites 0.." + std::to_string(n - 1));
}

InteractionGraph dicke_graph(int n) {
  std::vector<Edge> edges;
  for (int k = 0; k + 1 < n; ++k) {
    edges.emplace_back(dicke_mode_site(n, k), dicke_mode_site(n, k + 1));
    edges.emplace_back(dicke_spin_site(k), dicke_mode_site(n, k + 1));
  }
  for (int k = 0; k < n; ++k) edges.emplace_back(dicke_spin_site(k), dicke_mode_site(n, k));
  return InteractionGraph(2 * n, edges);
}

std::vector<int> dicke_dims(int n, int m) {
  std::vector<int> dims(static_cast<std::size_t>(2 * n), 2);
  for (int k = 0; k < n; ++k) dims[static_cast<std::size_t>(dicke_mode_site(n, k))] = m;
  return dims;
}

std::vector<SiteKind> dicke_kinds(int n) {
  std::vector<SiteKind> kinds(static_cast<std::size_t>(2 * n), SiteKind::spin);
  for (int k = 0; k < n; ++k) kinds[static_cast<std::size_t>(dicke_mode_site(n, k))] = SiteKind::mode;
  return kinds;
}

void check_dicke(int length, int truncation) {
  if (length < 2) throw ConfigError("model.length must be >= 2");
  if (truncation < 2) throw ConfigError("model.truncation: truncation must be ≥ 2");
}

TwoFamilyHamiltonian dicke_chain(const ModelParams& p) {
  check_dicke(p.length, p.truncation);
  const int n = p.length;
  const int m = p.truncation;
  const InteractionGraph g = dicke_graph(n);
  const Matrix z = local::pauli_z();
  const Matrix x = local::position(m);
  const Matrix mom = local::momentum(m);
  const Matrix id = local::identity(m);

  std::array<std::vector<LocalTerm>, 2> families;
  for (int k = 0; k < n; ++k) {
    const int a = k % 2;
    const int index = static_cast<int>(families[static_cast<std::size_t>(a)].size());
    const std::string label = "h" + std::to_string(k);
    if (k + 1 < n) {
      // sites: spin k < mode k < mode k+1
      const std::array<Matrix, 3> left{z, x, id};
      const std::array<Matrix, 3> right{z, id, mom};
      families[static_cast<std::size_t>(a)].push_back(
          make_term(g, a, index, label,
                    {dicke_spin_site(k), dicke_mode_site(n, k), dicke_mode_site(n, k + 1)},
                    local::site_product(left) + local::site_product(right)));
    } else {
      const std::array<Matrix, 2> last{z, x};
      families[static_cast<std::size_t>(a)].push_back(make_term(
          g, a, index, label, {dicke_spin_site(k), dicke_mode_site(n, k)}, local::site_product(last)));
    }
  }
  return TwoFamilyHamiltonian(
      g, dicke_dims(n, m), dicke_kinds(n), std::move(families[0]), std::move(families[1]), p.h0,
      p.h1, p.norm_mode.value_or(CommutatorNorm::interior),
      "spins on sites 0.." + std::to_string(n - 1) + ", modes on sites " + std::to_string(n) + ".." +
          std::to_string(2 * n - 1) + "; open boundary: h_" + std::to_string(n - 1) +
          " = Z x without the right-neighbour momentum; truncation m=" + std::to_string(m));
}

}  // namespace

TwoFamilyHamiltonian build_model(const ModelParams& params) {
  if (!(params.h0 >= 0.0)) throw ConfigError("model.h0 must be nonnegative");
  if (!(params.h1 >= 0.0)) throw ConfigError("model.h1 must be nonnegative");
  if (params.name == "tfim") return ising_family(params, true);
  if (params.name == "commuting_ising") return ising_family(params, false);
  if (params.name == "dicke_chain") return dicke_chain(params);
  throw ConfigError("model.name: unknown model '" + params.name + "'");
}

TwoFamilyHamiltonian dicke_commuting_form(int length, int truncation, double h) {
  check_dicke(length, truncation);
  const int n = length;
  const int m = truncation;
  const InteractionGraph g = dicke_graph(n);
  const Matrix z = local::pauli_z();
  const Matrix id2 = local::identity(2);
  const Matrix x = local::position(m);
  const Matrix mom = local::momentum(m);

  std::vector<LocalTerm> terms;
  for (int k = 0; k < n; ++k) {
    const std::string label = "h~" + std::to_string(k);
    if (k == 0) {
      const std::array<Matrix, 2> f{z, x};
      terms.push_back(make_term(g, 0, k, label, {dicke_spin_site(0), dicke_mode_site(n, 0)},
                                local::site_product(f)));
    } else {
      // sites: spin k-1 < spin k < mode k
      const std::array<Matrix, 3> own{id2, z, x};
      const std::array<Matrix, 3> left{z, id2, mom};
      terms.push_back(make_term(g, 0, k, label,
                                {dicke_spin_site(k - 1), dicke_spin_site(k), dicke_mode_site(n, k)},
                                local::site_product(own) + local::site_product(left)));
    }
  }
  return TwoFamilyHamiltonian(g, dicke_dims(n, m), dicke_kinds(n), std::move(terms), {}, h, h,
                              CommutatorNorm::interior, "commuting rewriting of the Dicke chain");
}

LocalOperator site_observable(const TwoFamilyHamiltonian& h, const std::string& op, int site) {
  if (!h.graph().contains(site)) {
    throw ConfigError("observable site " + std::to_string(site) + " is outside the graph");
  }
  const auto idx = static_cast<std::size_t>(site);
  const int dim = h.site_dims()[idx];
  Matrix payload;
  if (h.site_kinds()[idx] == SiteKind::spin) {
    if (op == "X") {
      payload = local::pauli_x();
    } else if (op == "Y") {
      payload = local::pauli_y();
    } else if (op == "Z") {
      payload = local::pauli_z();
    } else {
      throw ConfigError("observable '" + op + "' is not defined on spin site " + std::to_string(site));
    }
  } else {
    if (op == "x") {
      payload = local::position(dim);
    } else if (op == "p") {
      payload = local::momentum(dim);
    } else if (op == "n") {
      payload = local::number(dim);
    } else {
      throw ConfigError("observable '" + op + "' is not defined on mode site " + std::to_string(site));
    }
  }
  return LocalOperator{op + std::to_string(site), SupportRegion(h.graph(), {site}), payload};
}

LocalOperator term_observable(const TwoFamilyHamiltonian& h, TermId id) {
  return h.terms()[static_cast<std::size_t>(h.flat_id(id))].op;
}

}  // namespace lrlab
