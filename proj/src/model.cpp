#include "tsloss/model.hpp"

#include <cmath>
#include <string>

namespace tsloss {

namespace {
constexpr double kWeightSumTolerance = 1e-12;

void require(bool ok, const std::string& field, const std::string& what)
{
    if (!ok) throw std::invalid_argument(field + ": " + what);
}
}  // namespace

ScenarioWeights::ScenarioWeights(std::array<double, 4> q) : q_(q)
{
    double sum = 0.0;
    for (double w : q_) {
        if (!std::isfinite(w) || w < 0.0)
            throw std::invalid_argument("scenario weights must be finite and non-negative");
        sum += w;
    }
    if (std::abs(sum - 1.0) > kWeightSumTolerance)
        throw std::invalid_argument("scenario weights sum to " + std::to_string(sum) +
                                    ", expected 1");
}

void validate(const ModelParams& params)
{
    require(params.radius >= 0, "radius", "must be >= 0");
    require(params.p >= 0.0 && params.p <= 1.0, "p", "must lie in [0, 1]");
    require(params.q >= 0.0 && params.q <= 1.0, "q", "must lie in [0, 1]");
    require(std::isfinite(params.lambda) && params.lambda >= 0.0, "lambda", "must be >= 0");
    require(std::isfinite(params.t) && params.t >= 0.0, "t", "must be >= 0");
    require(std::isfinite(params.loading_delta) && params.loading_delta >= 0.0, "loading_delta",
            "must be >= 0");
    try {
        validate(params.cost_contract);
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(std::string("cost_contract: ") + e.what());
    }
    try {
        validate(params.cost_user);
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(std::string("cost_user: ") + e.what());
    }
}

}  // namespace tsloss
