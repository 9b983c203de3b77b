#include "tsloss/distributions.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace tsloss {

namespace {
constexpr double kPmfSumTolerance = 1e-12;
}

Pmf::Pmf(std::vector<double> probs) : probs_(std::move(probs))
{
    if (probs_.empty()) throw std::invalid_argument("pmf must have at least one entry");
    double sum = 0.0;
    for (double p : probs_) {
        if (!std::isfinite(p) || p < 0.0)
            throw std::invalid_argument("pmf entries must be finite and non-negative");
        sum += p;
    }
    if (std::abs(sum - 1.0) > kPmfSumTolerance)
        throw std::invalid_argument("pmf entries sum to " + std::to_string(sum) + ", expected 1");
    // Entries are kept as given (no renormalisation) so a pmf rebuilt from its
    // own probabilities compares equal.

    cdf_.resize(probs_.size());
    double acc = 0.0;
    for (std::size_t k = 0; k < probs_.size(); ++k) {
        acc += probs_[k];
        cdf_[k] = acc;
        if (probs_[k] == 1.0) point_ = static_cast<int>(k);
    }
    cdf_.back() = 1.0;
}

Pmf Pmf::point(std::size_t k)
{
    std::vector<double> probs(k + 1, 0.0);
    probs[k] = 1.0;
    return Pmf(std::move(probs));
}

double pmf_mean(const Pmf& pmf)
{
    double mean = 0.0;
    for (std::size_t k = 0; k < pmf.size(); ++k) mean += static_cast<double>(k) * pmf[k];
    return mean;
}

double pmf_variance(const Pmf& pmf)
{
    // Central form; avoids the E[X^2] - E[X]^2 cancellation.
    const double mean = pmf_mean(pmf);
    double var = 0.0;
    for (std::size_t k = 0; k < pmf.size(); ++k) {
        const double d = static_cast<double>(k) - mean;
        var += d * d * pmf[k];
    }
    return var;
}

int pmf_sample(const Pmf& pmf, Rng& rng)
{
    if (pmf.point_ >= 0) return pmf.point_;
    const double u = uniform01(rng);
    const auto& cdf = pmf.cdf_;
    std::size_t k = 0;
    while (k + 1 < cdf.size() && u >= cdf[k]) ++k;
    return static_cast<int>(k);
}

std::string_view to_string(CostFamily family)
{
    switch (family) {
    case CostFamily::lognormal:
        return "lognormal";
    case CostFamily::point:
        return "point";
    }
    return "unknown";
}

CostFamily cost_family_from_string(std::string_view name)
{
    if (name == "lognormal") return CostFamily::lognormal;
    if (name == "point") return CostFamily::point;
    throw std::invalid_argument("unknown cost family '" + std::string(name) + "'");
}

void validate(const CostSpec& spec)
{
    if (!std::isfinite(spec.mean) || !std::isfinite(spec.sd))
        throw std::invalid_argument("cost mean and sd must be finite");
    if (spec.mean < 0.0 || spec.sd < 0.0)
        throw std::invalid_argument("cost mean and sd must be non-negative");
    if (spec.family == CostFamily::point && spec.sd != 0.0)
        throw std::invalid_argument("point cost must have sd 0");
    if (spec.family == CostFamily::lognormal && spec.mean <= 0.0)
        throw std::invalid_argument("lognormal cost requires mean > 0");
}

LognormalParams lognormal_params(double mean, double sd)
{
    if (!(mean > 0.0)) throw std::invalid_argument("lognormal mean must be > 0");
    if (!(sd >= 0.0)) throw std::invalid_argument("lognormal sd must be >= 0");
    const double cv = sd / mean;
    const double s2 = std::log1p(cv * cv);
    return {std::log(mean) - 0.5 * s2, std::sqrt(s2)};
}

CostSampler::CostSampler(const CostSpec& spec) : spec_(spec)
{
    validate(spec_);
    degenerate_ = spec_.is_degenerate();
    if (!degenerate_) params_ = lognormal_params(spec_.mean, spec_.sd);
}

double CostSampler::operator()(Rng& rng) const
{
    if (degenerate_) return spec_.mean;
    return std::exp(params_.log_mean + params_.log_sd * standard_normal(rng));
}

double cost_sample(const CostSpec& spec, Rng& rng)
{
    return CostSampler(spec)(rng);
}

double standard_normal(Rng& rng)
{
    const double u1 = 1.0 - uniform01(rng);  // (0, 1]
    const double u2 = uniform01(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace tsloss
