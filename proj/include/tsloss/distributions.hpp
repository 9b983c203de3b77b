#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tsloss/random.hpp"

namespace tsloss {

/// Finite-support probability mass function on {0, 1, ..., size()-1}.
///
/// Entries must be non-negative and sum to one within 1e-12; such inputs are
/// renormalized exactly on construction. Anything further off throws
/// std::invalid_argument.
class Pmf {
public:
    explicit Pmf(std::vector<double> probs);
    Pmf(std::initializer_list<double> probs) : Pmf(std::vector<double>(probs)) {}

    static Pmf point(std::size_t k);

    std::span<const double> probs() const noexcept { return probs_; }
    std::size_t size() const noexcept { return probs_.size(); }
    double operator[](std::size_t k) const noexcept { return probs_[k]; }

    /// Support value carrying all the mass, or -1 when the pmf is not a point mass.
    int point_value() const noexcept { return point_; }
    bool is_point_mass() const noexcept { return point_ >= 0; }

    friend bool operator==(const Pmf& a, const Pmf& b) { return a.probs_ == b.probs_; }

private:
    std::vector<double> probs_;
    std::vector<double> cdf_;
    int point_ = -1;

    friend int pmf_sample(const Pmf& pmf, Rng& rng);
};

double pmf_mean(const Pmf& pmf);
double pmf_variance(const Pmf& pmf);

/// Inverse-CDF draw. A point mass returns its support value without
/// consuming randomness.
int pmf_sample(const Pmf& pmf, Rng& rng);

enum class CostFamily { lognormal, point };

std::string_view to_string(CostFamily family);
CostFamily cost_family_from_string(std::string_view name);

/// Distribution of the monetary loss of one compromised vertex.
struct CostSpec {
    CostFamily family = CostFamily::point;
    double mean = 0.0;
    double sd = 0.0;

    static CostSpec point(double value) { return {CostFamily::point, value, 0.0}; }
    static CostSpec lognormal(double mean, double sd) { return {CostFamily::lognormal, mean, sd}; }

    double variance() const noexcept { return sd * sd; }
    double second_moment() const noexcept { return mean * mean + sd * sd; }

    /// True when every draw equals `mean` (point family, or zero sd).
    bool is_degenerate() const noexcept { return family == CostFamily::point || sd == 0.0; }

    friend bool operator==(const CostSpec&, const CostSpec&) = default;
};

/// Throws std::invalid_argument when the spec is unusable.
void validate(const CostSpec& spec);

struct LognormalParams {
    double log_mean;
    double log_sd;
};

/// Moment-matched log-scale parameters for a lognormal with the given mean and sd.
LognormalParams lognormal_params(double mean, double sd);

/// Sampler bound to one CostSpec; precomputes the log-scale parameters.
class CostSampler {
public:
    explicit CostSampler(const CostSpec& spec);

    double operator()(Rng& rng) const;

    const CostSpec& spec() const noexcept { return spec_; }

private:
    CostSpec spec_;
    LognormalParams params_{};
    bool degenerate_ = true;
};

double cost_sample(const CostSpec& spec, Rng& rng);

/// Standard normal draw by Box-Muller, using two uniforms per call and
/// keeping no state between calls.
double standard_normal(Rng& rng);

}  // namespace tsloss
