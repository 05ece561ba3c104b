#include "irbox/economy_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "accurate_sum.hpp"

namespace irbox {

void EconomyParams::validate() const {
  auto bad = [](const std::string& what) { return Error(ErrorCode::InvalidParameters, what); };
  if (!(r > 0.0)) throw bad("r must be positive");
  if (!(z > 0.0)) throw bad("z must be positive");
  if (!(tau > 0.0)) throw bad("tau must be positive");
  if (!std::isfinite(p)) throw bad("p must be finite");
  if (!(pi_store >= 0.0 && pi_store <= 1.0)) throw bad("pi_store must lie in [0, 1]");
}

double FirmChoice::assets(double pi_store) const { return x * y + (1.0 - pi_store) * (d + e); }

bool FirmChoice::debt_risk_free(const EconomyParams& params) const {
  return (params.r - params.z) * y <= d;
}

namespace {

void check_budget(const FirmChoice& choice, const EconomyParams& params, double tol_rel) {
  const double funding = choice.d + choice.e;
  const double gap = std::fabs(choice.risky_assets() - params.pi_store * funding);
  if (gap > tol_rel * std::max(1.0, std::fabs(funding))) {
    throw Error(ErrorCode::BudgetViolation,
                "x*y = " + std::to_string(choice.risky_assets()) + " but pi*(d+e) = " +
                    std::to_string(params.pi_store * funding));
  }
}

}  // namespace

double objective(double y, double x, double d, double e, const EconomyParams& params) {
  const double funding = d + e;
  return x * y * params.r + (1.0 - params.pi_store) * funding + (params.p * y - funding) -
         params.z * params.z * y * y / (3.0 * params.tau);
}

double expected_payoff(const FirmChoice& choice, const EconomyParams& params, double tol_rel) {
  check_budget(choice, params, tol_rel);
  const double funding = choice.d + choice.e;
  return choice.x * choice.y * params.r + (1.0 - params.pi_store) * funding +
         (params.p * choice.y - funding);
}

double utility(const FirmChoice& choice, const EconomyParams& params, double tol_rel) {
  const double penalty =
      params.z * params.z * choice.y * choice.y / (3.0 * params.tau);
  return expected_payoff(choice, params, tol_rel) - penalty;
}

double unconstrained_maximizer(double x, const EconomyParams& params) {
  return 3.0 * params.tau * (x * params.r + params.p) / (2.0 * params.z * params.z);
}

FirmOutcome optimize_firm(double d, double e, double x, const EconomyParams& params) {
  params.validate();
  if (!(d >= 0.0 && e >= 0.0 && d + e > 0.0)) {
    throw Error(ErrorCode::InvalidParameters, "need d, e >= 0 and d + e > 0");
  }
  if (!(x >= 0.0)) throw Error(ErrorCode::InvalidParameters, "x must be non-negative");
  if (!(params.r > params.z)) {
    throw Error(ErrorCode::UnboundedProgram,
                "r <= z: the risk-free debt condition no longer bounds y from above");
  }
  const double margin = params.r - params.z;
  double upper = d / margin;
  if (x > 0.0) upper = std::min(upper, (d + e) / x);
  // The quotients may round up; step down until both constraints hold as
  // evaluated, so a clipped choice never reports risky debt or pi > 1.
  while (upper > 0.0 && (margin * upper > d || x * upper > d + e)) {
    upper = std::nextafter(upper, 0.0);
  }

  FirmOutcome out;
  const double stationary = unconstrained_maximizer(x, params);
  const double y = std::clamp(stationary, 0.0, upper);
  out.choice = {x, y, d, e};
  out.y_upper = upper;
  out.funding_fraction = x * y / (d + e);
  out.utility = objective(y, x, d, e, params);
  out.debt_risk_free = out.choice.debt_risk_free(params);
  return out;
}

FirmOutcome evaluate_choice(const FirmChoice& choice, const EconomyParams& params,
                            double tol_rel) {
  FirmOutcome out;
  out.choice = choice;
  out.utility = utility(choice, params, tol_rel);
  out.funding_fraction = params.pi_store;
  out.y_upper = params.r > params.z ? choice.d / (params.r - params.z)
                                    : std::numeric_limits<double>::infinity();
  out.debt_risk_free = choice.debt_risk_free(params);
  return out;
}

WelfareReport welfare(std::span<const FirmOutcome> firms, const EconomyParams& params) {
  detail::AccurateSum p1, assets, balance, at_risk;
  for (const auto& f : firms) {
    const double a = f.choice.d + f.choice.e;
    p1.add(f.utility);
    assets.add(a);
    balance.add(f.choice.e);
    balance.add(-f.choice.d);
    // Same term order as pi_fraction(a, d, e) so a single firm matches it bit for bit.
    at_risk.add(a);
    at_risk.add(-f.choice.e);
    at_risk.add(f.choice.d);
  }
  WelfareReport report;
  report.aggregate_assets = assets.value();
  if (report.aggregate_assets == 0.0) {
    throw Error(ErrorCode::ZeroAggregateAssets, "aggregate assets are zero");
  }
  report.p1 = p1.value();
  report.p2 = balance.value();
  report.p2_at_policy = (1.0 - params.pi_store) * report.aggregate_assets;
  report.w = report.p1 + report.p2;
  report.w_at_policy = report.p1 + report.p2_at_policy;
  // 1 - sum(e - d)/sum(a), written as (sum(a) - sum(e - d)) / sum(a).
  report.equilibrium_pi = at_risk.value() / report.aggregate_assets;
  return report;
}

}  // namespace irbox
