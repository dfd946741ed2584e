#include "lrlab/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/tools/minima.hpp>

namespace lrlab {

std::string to_string(BoundMethod method) {
  switch (method) {
    case BoundMethod::series_exact_cn: return "series_exact_cn";
    case BoundMethod::closed_form: return "closed_form";
    case BoundMethod::observable: return "observable";
    case BoundMethod::bounded_reference: return "bounded_reference";
  }
  return "unknown";
}

BoundMethod parse_bound_method(const std::string& name) {
  for (BoundMethod m : {BoundMethod::series_exact_cn, BoundMethod::closed_form,
                        BoundMethod::observable, BoundMethod::bounded_reference}) {
    if (to_string(m) == name) return m;
  }
  throw ConfigError("unknown bound method \"" + name + "\"");
}

double series_rate(const BoundConstants& consts) {
  return std::sqrt(2.0 * consts.h0 * consts.h1 * consts.K);
}

namespace {

double series_argument(const BoundConstants& consts, double t) {
  return std::sqrt(2.0) * consts.nu * series_rate(consts) * std::abs(t);
}

int cutoff_order(int d, int R) { return (d + R - 1) / R; }

}  // namespace

double series_tail_bound(const BoundConstants& consts, double t, int from) {
  if (from < 0) throw Error("series_tail_bound: order must be nonnegative");
  const double x = series_argument(consts, t);
  if (x == 0.0) return from == 0 ? consts.M : 0.0;
  if (x >= from + 1.0) return std::numeric_limits<double>::infinity();
  const double first = std::exp(from * std::log(x) - std::lgamma(from + 1.0));
  return consts.M * first / (1.0 - x / (from + 1.0));
}

int required_series_order(const BoundConstants& consts, double t, int d, double tol) {
  if (!(tol > 0.0)) throw Error("series tolerance must be positive");
  const int cutoff = cutoff_order(d, consts.R);
  constexpr int kMaxOrder = 100000;
  for (int n = 0; n <= kMaxOrder; ++n) {
    if (series_tail_bound(consts, t, std::max(n + 1, cutoff)) < tol) return n;
  }
  throw CapacityError("series order above " + std::to_string(kMaxOrder) + " required");
}

double series_bound(const BoundConstants& consts, const ChainCountTable& counts, double t,
                    double tol) {
  if (t < 0.0) throw Error("series_bound: t must be nonnegative");
  const int n_max = counts.n_max();
  const double tail = series_tail_bound(consts, t, std::max(n_max + 1, cutoff_order(counts.d, consts.R)));
  if (!(tail < tol)) {
    throw Error("series_bound: chain table order " + std::to_string(n_max) +
                " is too short; required n = " +
                std::to_string(required_series_order(consts, t, counts.d, tol)));
  }
  const double x = series_rate(consts) * t;
  double power = 1.0;  // x^n / n!
  double sum = 0.0;
  for (int n = 0; n <= n_max; ++n) {
    if (n > 0) power *= x / n;
    const BigInt& c = counts.counts[static_cast<std::size_t>(n)];
    if (c != 0) sum += power * c.convert_to<double>();
  }
  return consts.M * sum + tail;
}

double closed_form_bound(const BoundConstants& consts, double t, int d) {
  const double rate = 2.0 * std::sqrt(consts.h0 * consts.h1 * consts.K) * consts.gamma *
                      std::exp(consts.lambda / consts.xi);
  return consts.Mtildetilde * std::exp(rate * t - consts.lambda * d);
}

double lr_velocity(const BoundConstants& consts) {
  if (consts.zero_velocity) return 0.0;
  return 2.0 * consts.gamma * std::exp(1.0) * std::sqrt(consts.h0 * consts.h1 * consts.K) /
         consts.xi;
}

double cone_velocity(const BoundConstants& consts) {
  return 2.0 * std::sqrt(consts.h0 * consts.h1 * consts.K) * consts.gamma *
         std::exp(consts.lambda / consts.xi) / consts.lambda;
}

LambdaOptimum optimize_lambda(const BoundConstants& consts) {
  if (!(consts.xi > 0.0)) throw Error("optimize_lambda: xi must be positive");
  const double xi = consts.xi;
  // log(e^{lambda/xi} / lambda) as a function of u = log(lambda).
  auto objective = [xi](double u) { return std::exp(u) / xi - u; };
  const auto [u_star, value] = boost::math::tools::brent_find_minima(
      objective, std::log(1e-6), std::log(1e6), std::numeric_limits<double>::digits);
  (void)value;
  LambdaOptimum out;
  out.lambda_star = std::exp(u_star);
  out.v_min = cone_velocity(with_lambda(consts, out.lambda_star));
  return out;
}

double observable_bound(const BoundConstants& consts, const ObservableConditions& obs, double t,
                        int d) {
  if (d <= consts.R) {
    throw ConditionError("condition (i) violated: d = " + std::to_string(d) +
                         " is not greater than R = " + std::to_string(consts.R));
  }
  if (obs.n_P == 0) return 0.0;
  return obs.F_P * obs.F_Q * obs.n_P * (obs.n_P + 1.0) * closed_form_bound(consts, t, d);
}

double observable_series_bound(const BoundConstants& consts, const ObservableConditions& obs,
                               const ChainCountTable& counts, double t, double tol) {
  if (obs.n_P == 0) return 0.0;
  return obs.F_P * obs.F_Q * obs.n_P * (obs.n_P + 1.0) * series_bound(consts, counts, t, tol);
}

double bounded_reference_bound(double norm_p, double norm_q, const BoundConstants& consts,
                               int n_P, double t, int d) {
  const double rate = 2.0 * std::sqrt(consts.h0 * consts.h1) * consts.gamma *
                      std::exp(consts.lambda / consts.xi);
  return norm_p * norm_q * n_P * consts.Mtildetilde * std::exp(rate * t - consts.lambda * d);
}

BoundednessReport bounded_implies_cb_check(const TwoFamilyHamiltonian& h,
                                           const BoundConstants& consts) {
  const LocalAlgebra algebra(h, CommutatorNorm::full);
  BoundednessReport r;
  for (const LocalTerm& t : h.terms()) {
    r.K_tilde = std::max(r.K_tilde, h.coupling(t.family) * algebra.norm(t.op));
  }
  r.K = consts.K;
  r.Q = consts.Q;
  r.K_limit = 2.0 * r.K_tilde * r.K_tilde;
  r.Q_limit = 4.0 * r.K_tilde * r.K_tilde * r.K_tilde;
  r.K_margin = r.K_limit - r.K;
  r.Q_margin = r.Q_limit - r.Q;
  constexpr double kRel = 1e-12;
  r.passed = r.K <= r.K_limit * (1.0 + kRel) + kRel && r.Q <= r.Q_limit * (1.0 + kRel) + kRel;
  return r;
}

ObservableBounds::ObservableBounds(const TwoFamilyHamiltonian& h,
                                   const NoncommutingAdjacency& adjacency,
                                   const BoundConstants& consts, const LocalOperator& o_p,
                                   const LocalOperator& o_q, double t_max, double tol,
                                   std::optional<int> chain_order)
    : consts_(consts), chains_{-1, o_q.support, 0, {BigInt(0)}, {BigInt(0)}}, tol_(tol) {
  const LocalAlgebra algebra(h);
  norm_p_ = algebra.norm(o_p);
  norm_q_ = algebra.norm(o_q);
  if (consts.zero_velocity) {
    obs_.d = region_distance(h.graph(), o_p.support, o_q.support);
    if (obs_.d <= consts.R) {
      throw ConditionError("condition (i) violated: d = " + std::to_string(obs_.d) +
                           " is not greater than R = " + std::to_string(consts.R));
    }
    for (int i = 0; i < h.term_count(); ++i) {
      if (algebra.commutator_norm(o_p, h.terms()[static_cast<std::size_t>(i)].op) >
          kNonzeroCommutator) {
        obs_.z_p.push_back(i);
      }
    }
    obs_.n_P = static_cast<int>(obs_.z_p.size());
  } else {
    obs_ = observable_constants(h, adjacency, consts, o_p, o_q);
  }

  chains_.d = obs_.d;
  if (obs_.z_p.empty() || consts.zero_velocity) return;

  int d_min = std::numeric_limits<int>::max();
  for (int k : obs_.z_p) {
    d_min = std::min(d_min, region_distance(h.graph(), adjacency.support(k), o_q.support));
  }
  const int order = chain_order ? *chain_order : required_series_order(consts, t_max, d_min, tol);
  std::vector<ChainCountTable> tables;
  tables.reserve(obs_.z_p.size());
  for (int k : obs_.z_p) {
    tables.push_back(count_chains_dp(h.graph(), adjacency, k, o_q.support, order));
  }
  chains_ = max_over_starts(tables);
}

double ObservableBounds::evaluate(BoundMethod method, double t) const {
  const int d = obs_.d;
  t = std::abs(t);
  if (consts_.zero_velocity) {
    switch (method) {
      case BoundMethod::series_exact_cn: return 0.0;
      case BoundMethod::closed_form:
      case BoundMethod::observable: return closed_form_bound(consts_, t, d);
      case BoundMethod::bounded_reference:
        return bounded_reference_bound(norm_p_, norm_q_, consts_, obs_.n_P, t, d);
    }
  }
  switch (method) {
    case BoundMethod::series_exact_cn:
      return observable_series_bound(consts_, obs_, chains_, t, tol_);
    case BoundMethod::closed_form:
    case BoundMethod::observable: return observable_bound(consts_, obs_, t, d);
    case BoundMethod::bounded_reference:
      return bounded_reference_bound(norm_p_, norm_q_, consts_, obs_.n_P, t, d);
  }
  throw Error("unknown bound method");
}

BoundCurve ObservableBounds::curve(BoundMethod method, const std::vector<double>& times) const {
  BoundCurve c;
  c.d = obs_.d;
  c.method = method;
  c.samples.reserve(times.size());
  for (double t : times) c.samples.emplace_back(t, evaluate(method, t));
  return c;
}

}  // namespace lrlab
