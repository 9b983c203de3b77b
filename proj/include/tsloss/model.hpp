#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>

#include "tsloss/distributions.hpp"

namespace tsloss {

/// One of the four contagion scenarios, numbered 1..4.
///
/// 1: origin is the root contract, loss over every vertex.
/// 2: origin is a uniform user of the root, loss over every vertex but the origin.
/// 3: origin is a uniform non-root contract, loss over the root star.
/// 4: origin is a uniform user of a non-root contract, loss over the root star.
class ScenarioId {
public:
    constexpr ScenarioId(int value) : value_(value)  // NOLINT(google-explicit-constructor)
    {
        if (value < 1 || value > 4) throw std::invalid_argument("scenario must be 1, 2, 3 or 4");
    }
    constexpr int value() const noexcept { return value_; }
    constexpr std::size_t index() const noexcept { return static_cast<std::size_t>(value_ - 1); }

    friend constexpr bool operator==(ScenarioId, ScenarioId) = default;

private:
    int value_;
};

inline constexpr std::array<ScenarioId, 4> kAllScenarios{1, 2, 3, 4};

/// Per-event probabilities of the four scenarios.
class ScenarioWeights {
public:
    ScenarioWeights() : q_{1.0, 0.0, 0.0, 0.0} {}
    explicit ScenarioWeights(std::array<double, 4> q);

    double operator[](ScenarioId s) const noexcept { return q_[s.index()]; }
    const std::array<double, 4>& values() const noexcept { return q_; }

    friend bool operator==(const ScenarioWeights&, const ScenarioWeights&) = default;

private:
    std::array<double, 4> q_;
};

enum class PremiumPrinciple { expectation, standard_deviation };

struct ModelParams {
    Pmf offspring{0.0, 0.0, 1.0};
    Pmf users{0.0, 0.0, 0.0, 0.0, 1.0};
    int radius = 2;  // offspring generations below the root
    double p = 0.8;
    double q = 0.8;
    CostSpec cost_contract = CostSpec::point(10000.0);
    CostSpec cost_user = CostSpec::point(1000.0);
    ScenarioWeights weights;
    double lambda = 1.0;
    double t = 1.0;
    double loading_delta = 0.1;

    friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

/// Throws std::invalid_argument naming the offending field.
void validate(const ModelParams& params);

}  // namespace tsloss
