// Acceptance runner: prints one [PASS]/[FAIL] line per criterion and exits
// nonzero when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include <sys/wait.h>
#include <unistd.h>

#include "lrlab/bounds.hpp"
#include "lrlab/chains.hpp"
#include "lrlab/derivative_check.hpp"
#include "lrlab/dynamics.hpp"
#include "lrlab/models.hpp"
#include "oracles.hpp"

using namespace lrlab;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool passed = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::vector<double> grid(double lo, double hi, int count) {
  std::vector<double> t(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) t[static_cast<std::size_t>(k)] = lo + (hi - lo) * k / (count - 1);
  return t;
}

TwoFamilyHamiltonian model(const std::string& name, int length, int truncation = 4) {
  ModelParams p;
  p.name = name;
  p.length = length;
  p.truncation = truncation;
  return build_model(p);
}

std::string fmt(const char* format, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, format, a, b, c);
  return buf;
}

Outcome zero_propagation() {
  const auto start = std::chrono::steady_clock::now();
  const auto h = model("commuting_ising", 10);
  const auto s = commutator_norm_sweep(h, site_observable(h, "Z", 1), {site_observable(h, "Z", 6)},
                                       grid(0.0, 10.0, 101));
  double worst = 0.0;
  for (double v : s.norms[0]) worst = std::max(worst, v);
  const double elapsed = seconds_since(start);
  return {worst <= 1e-10 && elapsed < 30.0,
          fmt("max norm %.3g over 101 points, %.2f s", worst, elapsed)};
}

struct TfimRun {
  SimulationSweep sweep;
  BoundConstants consts;
  std::vector<VerificationReport> reports;
  double seconds = 0.0;
};

const TfimRun& tfim_run() {
  static const TfimRun run = [] {
    TfimRun r;
    const auto start = std::chrono::steady_clock::now();
    const auto h = model("tfim", 10);
    const auto adj = noncommuting_adjacency(h);
    r.consts = compute_bound_constants(h, adj);
    const LocalOperator p = site_observable(h, "Z", 1);
    std::vector<LocalOperator> qs;
    for (int site = 4; site <= 9; ++site) qs.push_back(site_observable(h, "Z", site));
    const auto t = grid(0.0, 3.0, 61);
    r.sweep = commutator_norm_sweep(h, p, qs, t);
    std::vector<ObservableBounds> bounds;
    for (const auto& q : qs) bounds.emplace_back(h, adj, r.consts, p, q, 3.0, 1e-10);
    for (BoundMethod m : {BoundMethod::closed_form, BoundMethod::series_exact_cn}) {
      r.reports.push_back(verify_bound(r.sweep, m, r.consts.R, [&](std::size_t q, double time) {
        return bounds[q].evaluate(m, time);
      }));
    }
    r.seconds = seconds_since(start);
    return r;
  }();
  return run;
}

Outcome main_bound() {
  const TfimRun& r = tfim_run();
  bool ok = r.seconds < 300.0 && r.sweep.d.front() == 3 && r.sweep.d.back() == 8;
  std::string detail;
  for (const auto& rep : r.reports) {
    ok = ok && rep.passed && rep.excluded_d.empty();
    detail += to_string(rep.method) + fmt(" min margin %.3g; ", rep.min_margin);
  }
  return {ok, detail + fmt("d in [%g, %g], %.1f s", r.sweep.d.front(), r.sweep.d.back(), r.seconds)};
}

Outcome velocity_ordering() {
  const TfimRun& r = tfim_run();
  const double v_lr = lr_velocity(r.consts);
  try {
    const VelocityEstimate v = extract_velocity(r.sweep, 1e-3);
    return {v.v_emp <= v_lr, fmt("v_emp = %.6g (empirical fit), v_LR = %.6g", v.v_emp, v_lr)};
  } catch (const Error& e) {
    return {false, std::string("velocity extraction failed: ") + e.what()};
  }
}

Outcome truncation_independence() {
  bool ok = true;
  std::string detail;
  double previous_reference = 0.0;
  double observable_value = -1.0;
  for (int m = 2; m <= 5; ++m) {
    const auto interior = model("dicke_chain", 4, m);
    const auto full = interior.with_norm_mode(CommutatorNorm::full);
    const LocalAlgebra a_in(interior), a_full(full);
    for (int n = 0; n + 1 < 4; ++n) {
      const auto& hn = term_observable(interior, {n % 2, n / 2});
      const auto& hm = term_observable(interior, {(n + 1) % 2, (n + 1) / 2});
      const double ni = a_in.commutator_norm(hn, hm);
      const double nf = a_full.commutator_norm(hn, hm);
      ok = ok && std::abs(ni - 2.0) <= 1e-9 && std::abs(nf - 2.0 * (m - 1)) <= 1e-9;
      if (n == 0) detail += fmt("m=%g: interior %.9f, full %.9f; ", m, ni, nf);
    }
    const auto adj = noncommuting_adjacency(interior);
    const auto consts = compute_bound_constants(interior, adj);
    const ObservableBounds b(interior, adj, consts, site_observable(interior, "p", dicke_mode_site(4, 0)),
                             site_observable(interior, "x", dicke_mode_site(4, 3)), 1.0, 1e-10);
    const double obs = b.evaluate(BoundMethod::observable, 1.0);
    const double ref = b.evaluate(BoundMethod::bounded_reference, 1.0);
    if (observable_value < 0.0) observable_value = obs;
    ok = ok && std::abs(obs - observable_value) <= 1e-12 * observable_value && ref > previous_reference;
    previous_reference = ref;
    detail += fmt("observable %.12g, reference %.6g; ", obs, ref);
  }
  return {ok, detail};
}

Outcome commuting_rewrite() {
  bool ok = true;
  double worst_sum = 0.0, worst_pair = 0.0;
  for (int m = 2; m <= 5; ++m) {
    const auto original = model("dicke_chain", 4, m);
    const auto rewritten = dicke_commuting_form(4, m);
    // Frobenius norms of sparse matrices; they bound the spectral norms from above.
    const SparseMatrix diff = sparse_hamiltonian(original) - sparse_hamiltonian(rewritten);
    worst_sum = std::max(worst_sum, diff.norm());
    const std::vector<int> all{0, 1, 2, 3, 4, 5, 6, 7};
    std::vector<SparseMatrix> terms;
    for (const auto& t : rewritten.terms()) terms.push_back(embed_sparse(t.op, all, rewritten.site_dims()));
    for (std::size_t i = 0; i < terms.size(); ++i)
      for (std::size_t j = i + 1; j < terms.size(); ++j) {
        const SparseMatrix c = SparseMatrix(terms[i] * terms[j]) - SparseMatrix(terms[j] * terms[i]);
        worst_pair = std::max(worst_pair, c.norm());
      }
  }
  ok = worst_sum <= 1e-12 && worst_pair <= 1e-12;
  return {ok, fmt("max ||sum difference|| %.3g, max ||[h~_n, h~_j]|| %.3g", worst_sum, worst_pair)};
}

/// Two-family bonds on a path: family 0 on even bonds, family 1 on odd bonds.
NoncommutingAdjacency bond_ladder(const InteractionGraph& g, int bonds) {
  std::vector<SupportRegion> supports;
  std::vector<int> families;
  std::vector<std::vector<int>> z(static_cast<std::size_t>(bonds));
  for (int i = 0; i < bonds; ++i) {
    supports.emplace_back(g, std::vector<int>{i, i + 1});
    families.push_back(i % 2);
    if (i > 0) {
      z[static_cast<std::size_t>(i)].push_back(i - 1);
      z[static_cast<std::size_t>(i - 1)].push_back(i);
    }
  }
  return NoncommutingAdjacency(z, supports, families);
}

Outcome chain_oracle() {
  const auto start = std::chrono::steady_clock::now();
  long instances = 0;
  bool ok = true;
  auto check = [&](const InteractionGraph& g, const NoncommutingAdjacency& adj, int R) {
    const double root2nu = std::sqrt(2.0) * adj.nu();
    for (int s = 0; s < adj.size(); ++s) {
      for (int site = 0; site < g.site_count(); ++site) {
        const SupportRegion target(g, {site});
        const auto dp = count_chains_dp(g, adj, s, target, 8);
        const auto bf = count_chains_bruteforce(g, adj, s, target, 8);
        ok = ok && dp.counts == bf.counts && dp.weighted == bf.weighted;
        for (int n = 0; n <= 8; ++n) {
          const BigInt& c = dp.counts[static_cast<std::size_t>(n)];
          if (R * n < dp.d) ok = ok && c == 0;
          ok = ok && c.convert_to<double>() <= std::pow(root2nu, n) * (1 + 1e-12);
        }
        ++instances;
      }
    }
  };
  for (int n = 2; n <= 6; ++n) {
    const auto h = model("tfim", n);
    check(h.graph(), noncommuting_adjacency(h), h.locality_radius());
  }
  for (int n = 2; n <= 12; ++n) {
    const auto h = model("dicke_chain", n, 2);
    check(h.graph(), noncommuting_adjacency(h), h.locality_radius());
  }
  for (int bonds = 2; bonds <= 12; ++bonds) {
    const InteractionGraph g = path_graph(bonds + 1);
    check(g, bond_ladder(g, bonds), 2);
  }
  const double elapsed = seconds_since(start);
  return {ok && elapsed < 60.0, fmt("%g (start, target) instances, n <= 8, %.2f s",
                                    static_cast<double>(instances), elapsed)};
}

Outcome lambda_optimality() {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(0.1, 10.0);
  double worst = 0.0;
  for (int k = 0; k < 20; ++k) {
    BoundConstants c;
    c.gamma = u(rng);
    c.xi = u(rng);
    c.K = 2.0;
    c.h0 = c.h1 = 1.0;
    worst = std::max(worst, std::abs(optimize_lambda(c).lambda_star / c.xi - 1.0));
  }
  return {worst <= 1e-6, fmt("max relative deviation of lambda* from xi: %.3g over 20 draws", worst)};
}

/// Random two-family term set on a path: family 0 on even bonds, family 1 on
/// odd bonds or on every site. Terms inside a family have disjoint supports.
TwoFamilyHamiltonian random_two_family(std::mt19937& rng) {
  std::uniform_int_distribution<int> sites_dist(3, 6), dim_dist(2, 4), coin(0, 1);
  std::uniform_real_distribution<double> coupling(0.2, 2.0), scale(0.3, 1.5);
  const int n = sites_dist(rng);
  InteractionGraph g = path_graph(n);
  std::vector<int> dims(static_cast<std::size_t>(n));
  for (int& d : dims) d = dim_dist(rng);
  auto bond = [&](int family, int index, int i) {
    const int dim = dims[static_cast<std::size_t>(i)] * dims[static_cast<std::size_t>(i + 1)];
    return LocalTerm{family, index,
                     LocalOperator{"bond", SupportRegion(g, {i, i + 1}),
                                   oracle::random_hermitian(dim, rng, scale(rng))}};
  };
  std::vector<LocalTerm> f0, f1;
  for (int i = 0; i + 1 < n; i += 2) f0.push_back(bond(0, static_cast<int>(f0.size()), i));
  if (coin(rng)) {
    for (int i = 1; i + 1 < n; i += 2) f1.push_back(bond(1, static_cast<int>(f1.size()), i));
  } else {
    for (int i = 0; i < n; ++i) {
      const int dim = dims[static_cast<std::size_t>(i)];
      f1.push_back(LocalTerm{1, i,
                             LocalOperator{"field", SupportRegion(g, {i}),
                                           oracle::random_hermitian(dim, rng, scale(rng))}});
    }
  }
  return TwoFamilyHamiltonian(g, dims, std::vector<SiteKind>(dims.size(), SiteKind::spin), f0, f1,
                              coupling(rng), coupling(rng));
}

Outcome bounded_implies_commutator_bounded() {
  const auto tfim = model("tfim", 6);
  const auto r = bounded_implies_cb_check(tfim, compute_bound_constants(tfim));
  bool ok = r.passed && std::abs(r.K - r.K_limit) <= 1e-9 && std::abs(r.Q - r.Q_limit) <= 1e-9;
  std::string detail = fmt("TFIM K=%.6g/%.6g Q=%.6g", r.K, r.K_limit, r.Q) + fmt("/%.6g; ", r.Q_limit);
  std::mt19937 rng(8);
  int passed = 0;
  double tightest = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 50; ++k) {
    const auto h = random_two_family(rng);
    const bool valid = validate_two_family(h).passed;
    const auto rep = bounded_implies_cb_check(h, compute_bound_constants(h));
    if (valid && rep.passed) ++passed;
    tightest = std::min({tightest, rep.K_margin / rep.K_limit, rep.Q_margin / rep.Q_limit});
  }
  ok = ok && passed == 50;
  return {ok, detail + fmt("random sets passing %g/50, smallest relative margin %.3g", passed, tightest)};
}

Outcome derivative_identity() {
  const auto h = model("tfim", 6);
  std::mt19937 rng(9);
  std::uniform_int_distribution<int> fam(0, 1);
  std::uniform_real_distribution<double> time(-1.5, 1.5);
  double worst = 0.0;
  for (int k = 0; k < 5; ++k) {
    const int a = fam(rng), b = fam(rng);
    const int na = static_cast<int>(h.family(a).size()), nb = static_cast<int>(h.family(b).size());
    const TermId first{a, std::uniform_int_distribution<int>(0, na - 1)(rng)};
    const TermId second{b, std::uniform_int_distribution<int>(0, nb - 1)(rng)};
    worst = std::max(worst, derivative_identity_check(h, first, second, time(rng), 1e-4).relative_error);
  }
  return {worst <= 1e-6, fmt("max relative error %.3g over 5 tuples", worst)};
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome determinism() {
  const fs::path root = fs::temp_directory_path() / ("lrlab_accept_" + std::to_string(::getpid()));
  fs::remove_all(root);
  fs::create_directories(root);
  const fs::path cfg = root / "config.json";
  std::ofstream(cfg) << R"({"model": {"name": "tfim", "length": 8},
 "time_grid": {"start": 0, "stop": 2, "points": 21},
 "output": {"dir": ")" << (root / "unused").string() << "\"}}\n";
  bool ok = true;
  for (const char* run : {"a", "b"}) {
    const std::string cmd = std::string(LRLAB_BINARY) + " verify --config " + cfg.string() +
                            " --out " + (root / run).string() + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    ok = ok && WIFEXITED(status) && WEXITSTATUS(status) == 0;
  }
  std::string detail;
  for (const char* file : {"verify.json", "margins.csv"}) {
    const std::string a = read_file(root / "a" / file), b = read_file(root / "b" / file);
    const bool same = !a.empty() && a == b;
    ok = ok && same;
    detail += std::string(file) + (same ? " identical" : " differs") + fmt(" (%g bytes); ", a.size());
  }
  fs::remove_all(root);
  return {ok, detail + "both runs exited 0"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"zero propagation for the commuting Ising chain", zero_propagation},
      {"main bound holds on TFIM N=10 (closed_form, series_exact_cn)", main_bound},
      {"empirical velocity below the Lieb-Robinson velocity", velocity_ordering},
      {"Dicke commutator constant independent of truncation", truncation_independence},
      {"commuting rewrite of the Dicke chain", commuting_rewrite},
      {"chain-count DP equals brute force", chain_oracle},
      {"lambda optimum equals xi", lambda_optimality},
      {"bounded implies commutator-bounded", bounded_implies_commutator_bounded},
      {"derivative identity by central differences", derivative_identity},
      {"repeated verify runs are byte-identical", determinism}};
  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.passed;
    std::cout << (o.passed ? "[PASS]" : "[FAIL]") << " criterion " << (k + 1) << ": "
              << criteria[k].first << " -- " << o.detail << std::endl;
  }
  std::cout << (criteria.size() - static_cast<std::size_t>(failures)) << "/" << criteria.size()
            << " criteria passed" << std::endl;
  return failures == 0 ? 0 : 1;
}
