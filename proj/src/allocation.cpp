#include "fairsim/allocation.hpp"

namespace fairsim {

void OpportunityContext::validate() const {
  const auto n = static_cast<Eigen::Index>(agents.size());
  if (fairness.size() != n || compatibility.size() != n) {
    throw ConfigError("opportunity context arrays must cover all agents");
  }
  if (n > 0) {
    if ((fairness < 0.0).any() || (fairness > 1.0).any()) {
      throw ConfigError("fairness values must lie in [0, 1]");
    }
    if ((compatibility < 0.0).any() || (compatibility > 1.0).any()) {
      throw ConfigError("compatibility values must lie in [0, 1]");
    }
  }
}

AllocationResult allocate_least_fair(const OpportunityContext& ctx) {
  ctx.validate();
  if (ctx.agents.empty()) throw ConfigError("least_fair allocation requires at least one agent");
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < ctx.fairness.size(); ++i) {
    if (ctx.fairness[i] < ctx.fairness[best]) best = i;  // ties keep the earlier agent
  }
  AllocationResult out;
  out.agents = ctx.agents;
  out.weights = Eigen::ArrayXd::Zero(ctx.fairness.size());
  out.weights[best] = 1.0;
  return out;
}

Eigen::ArrayXd lottery_weights(const OpportunityContext& ctx, double compatibility_exponent) {
  ctx.validate();
  const Eigen::ArrayXd raw =
      (1.0 - ctx.fairness) * ctx.compatibility.pow(compatibility_exponent);
  const double total = raw.sum();
  if (total <= 0.0) return Eigen::ArrayXd();  // no agent allocatable
  return raw / total;
}

AllocationResult allocate_lottery(const OpportunityContext& ctx, Rng& rng,
                                  double compatibility_exponent) {
  const Eigen::ArrayXd dist = lottery_weights(ctx, compatibility_exponent);
  AllocationResult out;
  out.agents = ctx.agents;
  out.weights = Eigen::ArrayXd::Zero(static_cast<Eigen::Index>(ctx.agents.size()));
  if (dist.size() == 0) return out;

  const double u = rng.uniform01();
  double cumulative = 0.0;
  Eigen::Index drawn = dist.size() - 1;  // guards against rounding at the top end
  for (Eigen::Index i = 0; i < dist.size(); ++i) {
    cumulative += dist[i];
    if (u < cumulative) {
      drawn = i;
      break;
    }
  }
  out.weights[drawn] = 1.0;
  return out;
}

AllocationResult allocate_weighted(const OpportunityContext& ctx, double compatibility_exponent) {
  ctx.validate();
  if (ctx.agents.empty()) throw ConfigError("weighted allocation requires at least one agent");
  AllocationResult out;
  out.agents = ctx.agents;
  out.weights = (1.0 - ctx.fairness) * ctx.compatibility.pow(compatibility_exponent);
  return out;
}

}  // namespace fairsim
