#include "ftdiff/diffcore.hpp"

#include "ftdiff/errors.hpp"

namespace ftdiff {

StateDerivative ftd_rhs(const DiffState& state, double measurement, const DiffParams& params) {
    const double e = state.x1 - measurement;
    const double a = params.alpha;
    return {state.x2 - params.k1 * sig_pow(e, (a + 1.0) / 2.0), -params.k2 * sig_pow(e, a)};
}

StateDerivative levant_rhs(const DiffState& state, double measurement, const DiffParams& params) {
    const double e = state.x1 - measurement;
    return {state.x2 - params.k1 * sig_pow(e, 0.5), -params.k2 * sgn(e)};
}

StateDerivative spt_rhs(const DiffState& state, double measurement, const DiffParams& params) {
    const double eps = params.epsilon;
    const double e = state.x1 - measurement;
    const double ex2 = eps * state.x2;
    const double inner = e + 0.6 * sig_pow(ex2, 5.0 / 3.0);
    return {state.x2, -(sig_pow(inner, 0.2) + sig_pow(ex2, 1.0 / 3.0)) / (eps * eps)};
}

StateDerivative rhs(const DiffState& state, double measurement, const DiffParams& params) {
    switch (params.algorithm) {
        case Algorithm::ContinuousFtd: return ftd_rhs(state, measurement, params);
        case Algorithm::Levant: return levant_rhs(state, measurement, params);
        case Algorithm::SingularPerturbation: return spt_rhs(state, measurement, params);
    }
    return {};
}

void validate(const DiffParams& params) {
    if (params.algorithm == Algorithm::SingularPerturbation) {
        if (!(params.epsilon > 0.0) || !std::isfinite(params.epsilon))
            throw ConfigInvalid("/differentiator/epsilon", "must be > 0");
        return;
    }
    if (!(params.k1 > 0.0) || !std::isfinite(params.k1))
        throw ConfigInvalid("/differentiator/k1", "must be > 0");
    if (!(params.k2 > 0.0) || !std::isfinite(params.k2))
        throw ConfigInvalid("/differentiator/k2", "must be > 0");
    if (params.algorithm == Algorithm::ContinuousFtd && !(params.alpha >= 0.0 && params.alpha < 1.0))
        throw ConfigInvalid("/differentiator/alpha", "must lie in [0, 1)");
}

const char* to_string(Algorithm a) noexcept {
    switch (a) {
        case Algorithm::ContinuousFtd: return "continuous-ftd";
        case Algorithm::Levant: return "levant";
        case Algorithm::SingularPerturbation: return "singular-perturbation";
    }
    return "?";
}

}  // namespace ftdiff
