#pragma once

#include <span>
#include <string>
#include <vector>

#include "irbox/error.hpp"

namespace irbox {

/// Two-date economy. The risky return is uniform on [r - z, r + z], so its
/// per-unit variance is z^2 / 3.
struct EconomyParams {
  double r = 1.0;         ///< expected unit return, > 0
  double z = 0.5;         ///< fundamental risk half-width, > 0
  double tau = 1.0;       ///< risk tolerance, > 0
  double p = 0.0;         ///< market price of one risky unit
  double pi_store = 0.0;  ///< fraction of d + e placed in risky assets, in [0, 1]

  /// Throws Error(InvalidParameters).
  void validate() const;
  [[nodiscard]] double return_variance() const { return z * z / 3.0; }
};

struct FirmChoice {
  double x = 0;  ///< investment per risky unit
  double y = 0;  ///< number of risky units
  double d = 0;
  double e = 0;

  [[nodiscard]] double risky_assets() const { return x * y; }
  /// x y + (1 - pi)(d + e).
  [[nodiscard]] double assets(double pi_store) const;
  /// (r - z) y <= d: debt is repaid in the worst return state.
  [[nodiscard]] bool debt_risk_free(const EconomyParams& params) const;
};

inline constexpr double kDefaultBudgetTolerance = 1e-9;

/// x y r + (1 - pi)(d + e) + [p y - (d + e)]. Throws Error(BudgetViolation)
/// unless x y = pi (d + e) within tolerance (equivalently a = d + e).
double expected_payoff(const FirmChoice& choice, const EconomyParams& params,
                       double tol_rel = kDefaultBudgetTolerance);

/// Expected payoff less the mean-variance penalty z^2 y^2 / (3 tau).
double utility(const FirmChoice& choice, const EconomyParams& params,
               double tol_rel = kDefaultBudgetTolerance);

/// The firm's objective as a function of y alone with x, d, e and the
/// funding fraction held at their given values. No budget check.
double objective(double y, double x, double d, double e, const EconomyParams& params);

/// Stationary point of the objective in y: 3 tau (x r + p) / (2 z^2).
double unconstrained_maximizer(double x, const EconomyParams& params);

struct FirmOutcome {
  std::string id;
  FirmChoice choice;
  /// Funding fraction x y / (d + e) that makes a = d + e hold for this choice.
  double funding_fraction = 0;
  /// Objective at the choice, with params.pi_store in the safe-asset term.
  double utility = 0;
  double y_upper = 0;  ///< upper end of the feasible y interval
  bool debt_risk_free = false;
};

/// Maximizes the concave objective over y in [0, y_upper] where
/// y_upper = min(d / (r - z), (d + e) / x) (the second bound only when x > 0).
/// Throws Error(UnboundedProgram) when r <= z, since debt then no longer caps y.
FirmOutcome optimize_firm(double d, double e, double x, const EconomyParams& params);

/// Scores a fixed choice; its funding fraction must equal params.pi_store.
FirmOutcome evaluate_choice(const FirmChoice& choice, const EconomyParams& params,
                            double tol_rel = kDefaultBudgetTolerance);

struct WelfareReport {
  double p1 = 0;  ///< sum of firm utilities
  /// Balance term at equilibrium: sum(a - pi a) = sum(e - d).
  double p2 = 0;
  /// Same sum evaluated at the policy fraction params.pi_store instead.
  double p2_at_policy = 0;
  double w = 0;            ///< p1 + p2
  double w_at_policy = 0;  ///< p1 + p2_at_policy
  double equilibrium_pi = 0;  ///< 1 - sum(e - d) / sum(a)
  double aggregate_assets = 0;
};

/// Throws Error(ZeroAggregateAssets) when sum(a) == 0.
WelfareReport welfare(std::span<const FirmOutcome> firms, const EconomyParams& params);

}  // namespace irbox
