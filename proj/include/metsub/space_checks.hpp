#pragma once

#include <algorithm>
#include <span>
#include <utility>
#include <vector>

#include "metsub/sequence.hpp"

namespace metsub {

// Worst observed violation of each binary-average axiom over the supplied
// element pairs and weights. Violations are reported, never thrown.
struct AxiomReport {
    double endpoint0 = 0.0;    // d(A_0(x,y), x)
    double endpoint1 = 0.0;    // d(A_1(x,y), y)
    double diagonal = 0.0;     // d(A_w(x,x), x)
    double symmetry = 0.0;     // d(A_w(x,y), A_{1-w}(y,x))
    double boundedness = 0.0;  // max(d(x,A_w), d(y,A_w)) - d(x,y), positive part
    // empirical continuity in w: largest step response and the grid step used
    double continuity_modulus = 0.0;
    double continuity_step = 0.0;

    double max_violation() const {
        return std::max({endpoint0, endpoint1, diagonal, symmetry, boundedness});
    }
};

template <SpaceBackend S>
AxiomReport check_average_axioms(
    const S& space,
    std::span<const std::pair<typename S::element_type, typename S::element_type>> pairs,
    std::span<const double> omegas, std::size_t continuity_grid = 64) {
    AxiomReport rep;
    rep.continuity_step = 1.0 / static_cast<double>(continuity_grid);
    for (const auto& [x, y] : pairs) {
        rep.endpoint0 = std::max(rep.endpoint0, space.distance(space.average(0.0, x, y), x));
        rep.endpoint1 = std::max(rep.endpoint1, space.distance(space.average(1.0, x, y), y));
        const double dxy = space.distance(x, y);
        for (double w : omegas) {
            rep.diagonal = std::max(rep.diagonal, space.distance(space.average(w, x, x), x));
            const auto axy = space.average(w, x, y);
            rep.symmetry = std::max(
                rep.symmetry, space.distance(axy, space.average(1.0 - w, y, x)));
            const double spread =
                std::max(space.distance(x, axy), space.distance(y, axy));
            rep.boundedness = std::max(rep.boundedness, spread - dxy);
        }
        auto prev = space.average(0.0, x, y);
        for (std::size_t i = 1; i <= continuity_grid; ++i) {
            auto cur = space.average(rep.continuity_step * static_cast<double>(i), x, y);
            rep.continuity_modulus =
                std::max(rep.continuity_modulus, space.distance(prev, cur));
            prev = std::move(cur);
        }
    }
    return rep;
}

// Worst relative violation of the metric property d(x, A_w(x,y)) = w d(x,y)
// and of the intermediate-value identity it implies. Only intrinsic spaces
// accept this check.
struct MetricPropertyReport {
    double metric_residual = 0.0;
    double intermediate_residual = 0.0;

    double max_violation() const {
        return std::max(metric_residual, intermediate_residual);
    }
};

template <SpaceBackend S>
MetricPropertyReport check_metric_property(
    const S& space,
    std::span<const std::pair<typename S::element_type, typename S::element_type>> pairs,
    std::span<const double> omegas, double tau = kTol) {
    if (!space.intrinsic())
        throw contract_error(
            "check_metric_property: space does not claim an intrinsic average");
    MetricPropertyReport rep;
    for (const auto& [x, y] : pairs) {
        const double dxy = space.distance(x, y);
        const double denom = std::max(dxy, tau);
        for (double w : omegas) {
            const auto a = space.average(w, x, y);
            const double dxa = space.distance(x, a);
            const double day = space.distance(a, y);
            rep.metric_residual =
                std::max(rep.metric_residual, std::abs(dxa - w * dxy) / denom);
            rep.intermediate_residual = std::max(
                rep.intermediate_residual, std::abs(dxa + day - dxy) / denom);
        }
    }
    return rep;
}

}  // namespace metsub
