#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <utility>

#include "tsloss/distributions.hpp"
#include "tsloss/model.hpp"

namespace tsloss {

struct MomentPair {
    double mean = 0.0;
    double variance = 0.0;

    double sd() const { return std::sqrt(variance); }
};

/// Raised when a closed form does not cover the requested parameters
/// (scenarios 3 and 4 on random graphs, or an empty origin set).
class UnsupportedAnalytic : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Mean and variance of the number of contracts reached from the root when
/// each contract has offspring with moments (mu_plus, sigma2_plus), every
/// contract edge is open with probability p, and the tree stops `radius`
/// generations below the root.
///
/// Closed form of the thinned Galton-Watson partial sum. The closed form
/// loses precision like eps / |1 - mu_plus p|^3 near criticality, so inside
/// kCriticalBand the exact recursion is used instead.
MomentPair branching_moments(double mu_plus, double sigma2_plus, double p, int radius);

inline constexpr double kCriticalBand = 1e-2;

/// Generation-by-generation recursion T_0 = 1, T_r = 1 + sum of m copies of
/// T_{r-1}: E T_r = 1 + m E T_{r-1}, Var T_r = m Var T_{r-1} + v (E T_{r-1})^2,
/// with thinned offspring mean m = mu_plus p and variance
/// v = p(1-p) mu_plus + p^2 sigma2_plus. Exact for every m, including m = 1.
MomentPair branching_moments_recursive(double mu_plus, double sigma2_plus, double p, int radius);

/// Loss of a compromised contract plus its users reached over open user edges.
MomentPair star_cost_moments(double q, double mu_minus, double sigma2_minus,
                             const CostSpec& cost_contract, const CostSpec& cost_user);

MomentPair scenario1_moments(const ModelParams& params);
/// Requires a user pmf with no mass at 0, so the root always has a user to start from.
MomentPair scenario2_moments(const ModelParams& params);

struct RootHitProbability {
    double from_contract;  // P+(A): origin uniform over non-root contracts
    double from_user;      // P-(A) = q P+(A)
};

/// Probability that a contagion started outside the root star reaches the
/// root on a regular graph with branching d_plus and radius >= 1.
RootHitProbability root_hit_probability(int d_plus, int radius, double p, double q);

/// Scenarios 3 and 4; require point-mass offspring and user pmfs with at
/// least one non-root contract (and, for scenario 4, at least one user each).
MomentPair scenario3_moments(const ModelParams& params);
MomentPair scenario4_moments(const ModelParams& params);
std::pair<MomentPair, MomentPair> scenario34_moments(const ModelParams& params);

/// Per-scenario moments where a closed form exists; empty otherwise.
std::array<std::optional<MomentPair>, 4> scenario_moments(const ModelParams& params);

/// Compound Poisson aggregate: E = sum lambda t Q_j mu_j,
/// Var = sum lambda t Q_j (sigma_j^2 + mu_j^2).
/// Throws std::invalid_argument if a scenario with positive weight has no moments.
MomentPair aggregate_moments(double lambda, double t, const ScenarioWeights& weights,
                             const std::array<std::optional<MomentPair>, 4>& per_scenario);

double premium(const MomentPair& moments, double delta, PremiumPrinciple principle);

}  // namespace tsloss
