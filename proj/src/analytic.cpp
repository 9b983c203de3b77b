#include "tsloss/analytic.hpp"

#include <string>

namespace tsloss {

namespace {

// sum_{r=0}^{n-1} a^r, summed directly so a = 1 needs no special case.
double geometric_sum(double a, int n)
{
    double sum = 0.0, term = 1.0;
    for (int r = 0; r < n; ++r) {
        sum += term;
        term *= a;
    }
    return sum;
}

void check_branching_inputs(double mu_plus, double sigma2_plus, double p, int radius)
{
    if (radius < 0) throw std::invalid_argument("radius must be >= 0");
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must lie in [0, 1]");
    if (!(mu_plus >= 0.0) || !(sigma2_plus >= 0.0))
        throw std::invalid_argument("offspring moments must be non-negative");
}

struct RegularDegrees {
    int d_plus;
    int d_minus;
};

RegularDegrees require_regular(const ModelParams& params)
{
    if (!params.offspring.is_point_mass() || !params.users.is_point_mass())
        throw UnsupportedAnalytic(
            "scenarios 3 and 4 have closed forms only for point-mass offspring and user pmfs");
    return {params.offspring.point_value(), params.users.point_value()};
}

MomentPair regular_star_moments(const ModelParams& params, int d_minus)
{
    return star_cost_moments(params.q, d_minus, 0.0, params.cost_contract, params.cost_user);
}

MomentPair hit_mixture(double hit, const MomentPair& star)
{
    return {hit * star.mean, hit * ((1.0 - hit) * star.mean * star.mean + star.variance)};
}

}  // namespace

MomentPair branching_moments_recursive(double mu_plus, double sigma2_plus, double p, int radius)
{
    check_branching_inputs(mu_plus, sigma2_plus, p, radius);
    const double m = mu_plus * p;
    const double v = p * (1.0 - p) * mu_plus + p * p * sigma2_plus;
    MomentPair t{1.0, 0.0};
    for (int r = 1; r <= radius; ++r) {
        t = {1.0 + m * t.mean, m * t.variance + v * t.mean * t.mean};
    }
    return t;
}

MomentPair branching_moments(double mu_plus, double sigma2_plus, double p, int radius)
{
    check_branching_inputs(mu_plus, sigma2_plus, p, radius);
    const double a = mu_plus * p;
    if (std::abs(1.0 - a) < kCriticalBand)
        return branching_moments_recursive(mu_plus, sigma2_plus, p, radius);

    const double one_minus_a = 1.0 - a;
    const double mean = (1.0 - std::pow(a, radius + 1)) / one_minus_a;
    const double v = p * (1.0 - p) * mu_plus + p * p * sigma2_plus;
    const double bracket =
        (1.0 - std::pow(a, 2 * radius + 1)) / one_minus_a - (2.0 * radius + 1.0) * std::pow(a, radius);
    return {mean, v / (one_minus_a * one_minus_a) * bracket};
}

MomentPair star_cost_moments(double q, double mu_minus, double sigma2_minus,
                             const CostSpec& cost_contract, const CostSpec& cost_user)
{
    const double reach = q * cost_user.mean;
    return {cost_contract.mean + q * mu_minus * cost_user.mean,
            cost_contract.variance() + (sigma2_minus - mu_minus) * reach * reach +
                q * mu_minus * cost_user.second_moment()};
}

MomentPair scenario1_moments(const ModelParams& params)
{
    const MomentPair size = branching_moments(pmf_mean(params.offspring),
                                              pmf_variance(params.offspring), params.p,
                                              params.radius);
    const MomentPair star = star_cost_moments(params.q, pmf_mean(params.users),
                                              pmf_variance(params.users), params.cost_contract,
                                              params.cost_user);
    return {size.mean * star.mean,
            size.mean * star.variance + size.variance * star.mean * star.mean};
}

MomentPair scenario2_moments(const ModelParams& params)
{
    // Condition on the origin's edge to the root. When it is open the loss is
    // the root-started loss minus the origin's own term, which is independent
    // of everything else and has variance q E(C-^2) - (q E(C-))^2.
    if (params.users[0] > 0.0)
        throw UnsupportedAnalytic("scenario 2 needs at least one user at the root (user pmf has mass at 0)");
    const MomentPair s1 = scenario1_moments(params);
    const double q = params.q;
    const double reach = q * params.cost_user.mean;
    const double own_term_var = q * params.cost_user.second_moment() - reach * reach;
    const double open_mean = s1.mean - reach;
    const double open_var = s1.variance - own_term_var;
    return {q * open_mean, q * open_var + q * (1.0 - q) * open_mean * open_mean};
}

RootHitProbability root_hit_probability(int d_plus, int radius, double p, double q)
{
    if (d_plus < 1 || radius < 1)
        throw UnsupportedAnalytic("no contract outside the root star (d+ = " +
                                  std::to_string(d_plus) + ", radius = " + std::to_string(radius) +
                                  ")");
    if (!(p >= 0.0 && p <= 1.0) || !(q >= 0.0 && q <= 1.0))
        throw std::invalid_argument("edge probabilities must lie in [0, 1]");
    const double d = d_plus;
    const double from_contract = p * geometric_sum(d * p, radius) / geometric_sum(d, radius);
    return {from_contract, q * from_contract};
}

MomentPair scenario3_moments(const ModelParams& params)
{
    const auto deg = require_regular(params);
    const auto hit = root_hit_probability(deg.d_plus, params.radius, params.p, params.q);
    return hit_mixture(hit.from_contract, regular_star_moments(params, deg.d_minus));
}

MomentPair scenario4_moments(const ModelParams& params)
{
    const auto deg = require_regular(params);
    if (deg.d_minus < 1) throw UnsupportedAnalytic("no user outside the root star (d- = 0)");
    const auto hit = root_hit_probability(deg.d_plus, params.radius, params.p, params.q);
    return hit_mixture(hit.from_user, regular_star_moments(params, deg.d_minus));
}

std::pair<MomentPair, MomentPair> scenario34_moments(const ModelParams& params)
{
    return {scenario3_moments(params), scenario4_moments(params)};
}

std::array<std::optional<MomentPair>, 4> scenario_moments(const ModelParams& params)
{
    std::array<std::optional<MomentPair>, 4> out;
    out[0] = scenario1_moments(params);
    try {
        out[1] = scenario2_moments(params);
    } catch (const UnsupportedAnalytic&) {
    }
    try {
        out[2] = scenario3_moments(params);
    } catch (const UnsupportedAnalytic&) {
    }
    try {
        out[3] = scenario4_moments(params);
    } catch (const UnsupportedAnalytic&) {
    }
    return out;
}

MomentPair aggregate_moments(double lambda, double t, const ScenarioWeights& weights,
                             const std::array<std::optional<MomentPair>, 4>& per_scenario)
{
    const double rate = lambda * t;
    MomentPair total;
    for (ScenarioId s : kAllScenarios) {
        if (weights[s] <= 0.0) continue;
        const auto& m = per_scenario[s.index()];
        if (!m)
            throw std::invalid_argument("scenario " + std::to_string(s.value()) +
                                        " has positive weight but no moments");
        total.mean += rate * weights[s] * m->mean;
        total.variance += rate * weights[s] * (m->variance + m->mean * m->mean);
    }
    return total;
}

double premium(const MomentPair& moments, double delta, PremiumPrinciple principle)
{
    if (!(delta >= 0.0)) throw std::invalid_argument("loading delta must be >= 0");
    switch (principle) {
    case PremiumPrinciple::expectation:
        return (1.0 + delta) * moments.mean;
    case PremiumPrinciple::standard_deviation:
        return moments.mean + delta * moments.sd();
    }
    return moments.mean;
}

}  // namespace tsloss
