#pragma once

#include <string>
#include <utility>
#include <vector>

#include "lrlab/chains.hpp"
#include "lrlab/constants.hpp"

namespace lrlab {

enum class BoundMethod { series_exact_cn, closed_form, observable, bounded_reference };

std::string to_string(BoundMethod method);
/// Throws ConfigError for an unknown name.
BoundMethod parse_bound_method(const std::string& name);

/// Bound values B(t, d) at a fixed separation.
struct BoundCurve {
  int d = 0;
  BoundMethod method = BoundMethod::closed_form;
  std::vector<std::pair<double, double>> samples;  // (t, B)
};

/// sqrt(2 h0 h1 K): the per-order growth of the series.
double series_rate(const BoundConstants& consts);

/// M sum_{n >= from} (sqrt(2) nu sqrt(2 h0 h1 K) t)^n / n!, bounded above by
/// a geometric majorant. Returns +inf when from + 1 <= the series argument,
/// where that majorant is unavailable.
double series_tail_bound(const BoundConstants& consts, double t, int from);

/// Smallest N such that the certified tail beyond N, for a target at
/// distance d, is below tol.
int required_series_order(const BoundConstants& consts, double t, int d, double tol);

/// M sum_{n <= N} sqrt(2 h0 h1 K)^n t^n / n! c_n plus the certified tail,
/// where N is the table order. Throws Error naming the required order when
/// the table is too short for `tol`.
double series_bound(const BoundConstants& consts, const ChainCountTable& counts, double t,
                    double tol);

/// Mtildetilde exp(2 sqrt(h0 h1 K) gamma e^{lambda/xi} t - lambda d).
double closed_form_bound(const BoundConstants& consts, double t, int d);

/// 2 gamma e sqrt(h0 h1 K) / xi; 0 when K = 0.
double lr_velocity(const BoundConstants& consts);

/// Cone slope 2 sqrt(h0 h1 K) gamma e^{lambda/xi} / lambda at the constants'
/// own lambda.
double cone_velocity(const BoundConstants& consts);

struct LambdaOptimum {
  double lambda_star = 0.0;
  double v_min = 0.0;
};

/// Minimises e^{lambda/xi} / lambda over lambda in [1e-6, 1e6] with Brent's
/// method on log(lambda).
LambdaOptimum optimize_lambda(const BoundConstants& consts);

/// F_P F_Q n_P (n_P + 1) closed_form_bound(t, d). Throws ConditionError when
/// d <= R. Returns 0 when n_P = 0.
double observable_bound(const BoundConstants& consts, const ObservableConditions& obs, double t,
                        int d);

/// The same prefactor applied to series_bound over chains that start at a
/// term of Z_P (max over starts) and end on the support of O_Q.
double observable_series_bound(const BoundConstants& consts, const ObservableConditions& obs,
                               const ChainCountTable& counts, double t, double tol);

/// ||O_P|| ||O_Q|| n_P Mtildetilde exp(2 sqrt(h0 h1) gamma e^{lambda/xi} t - lambda d).
double bounded_reference_bound(double norm_p, double norm_q, const BoundConstants& consts,
                               int n_P, double t, int d);

struct BoundednessReport {
  /// max over terms of h_a ||Phi_a^i||
  double K_tilde = 0.0;
  double K = 0.0;
  double Q = 0.0;
  double K_limit = 0.0;  // 2 K~^2
  double Q_limit = 0.0;  // 4 K~^3
  double K_margin = 0.0;
  double Q_margin = 0.0;
  bool passed = true;
};

/// Checks K <= 2 K~^2 and Q <= 4 K~^3 for measured constants, with a
/// relative roundoff allowance of 1e-12.
BoundednessReport bounded_implies_cb_check(const TwoFamilyHamiltonian& h,
                                           const BoundConstants& consts);

/// Every bound available for one observable pair, with the chain table and
/// observable conditions computed once.
class ObservableBounds {
 public:
  /// Chain tables are computed up to the order needed for `t_max` at `tol`
  /// unless `chain_order` is given. Throws ConditionError when the pair
  /// violates the observable conditions.
  ObservableBounds(const TwoFamilyHamiltonian& h, const NoncommutingAdjacency& adjacency,
                   const BoundConstants& consts, const LocalOperator& o_p,
                   const LocalOperator& o_q, double t_max, double tol,
                   std::optional<int> chain_order = std::nullopt);

  /// B(|t|, d); every bound is even in t.
  double evaluate(BoundMethod method, double t) const;
  BoundCurve curve(BoundMethod method, const std::vector<double>& times) const;

  const ObservableConditions& conditions() const noexcept { return obs_; }
  const ChainCountTable& chains() const noexcept { return chains_; }
  int d() const noexcept { return obs_.d; }

 private:
  BoundConstants consts_;
  ObservableConditions obs_;
  ChainCountTable chains_;
  double norm_p_ = 0.0;
  double norm_q_ = 0.0;
  double tol_ = 0.0;
};

}  // namespace lrlab
