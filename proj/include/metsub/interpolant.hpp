#pragma once

#include <algorithm>
#include <cmath>
#include <functional>

#include "metsub/param_grid.hpp"
#include "metsub/sequence.hpp"

namespace metsub {

// Points attached to parameters: the pairs Q^k = {(t_j, p_j)}.
template <class E>
struct LabeledSequence {
    ParamGrid grid;
    ElementSequence<E> points;

    void validate() const {
        if (grid.knots.size() != points.size())
            throw invalid_input("LabeledSequence: knot/point count mismatch");
    }
};

// The piecewise average interpolant: A_w(p_j, p_{j+1}) with w the local
// coordinate of t in its bracketing knot interval. Closed sequences extend
// periodically (period = n * spacing); open sequences reject t outside the
// knot range.
template <SpaceBackend S>
typename S::element_type piecewise_average(
    const LabeledSequence<typename S::element_type>& q, const S& space, double t) {
    q.validate();
    const auto& knots = q.grid.knots;
    const auto& pts = q.points.elems;
    const std::size_t n = pts.size();
    if (n == 0) throw invalid_input("piecewise_average: empty sequence");
    if (n == 1) return pts[0];

    if (q.points.closed()) {
        const double h = q.grid.spacing();
        const double period = h * static_cast<double>(n);
        double local = std::fmod(t - knots.front(), period);
        if (local < 0.0) local += period;
        const auto j = static_cast<std::size_t>(
            std::min(static_cast<double>(n - 1), std::floor(local / h)));
        const double w = std::clamp((local - h * static_cast<double>(j)) / h, 0.0, 1.0);
        if (w <= 0.0) return pts[j];
        if (w >= 1.0) return pts[(j + 1) % n];
        return space.average(w, pts[j], pts[(j + 1) % n]);
    }

    if (t < knots.front() - 1e-12 || t > knots.back() + 1e-12)
        throw invalid_input("piecewise_average: parameter outside knot range");
    const double tc = std::clamp(t, knots.front(), knots.back());
    auto it = std::upper_bound(knots.begin(), knots.end(), tc);
    std::size_t j = static_cast<std::size_t>(it - knots.begin());
    j = (j == 0) ? 0 : j - 1;
    if (j >= n - 1) j = n - 2;
    const double w = (tc - knots[j]) / (knots[j + 1] - knots[j]);
    if (w <= 0.0) return pts[j];
    if (w >= 1.0) return pts[j + 1];
    return space.average(w, pts[j], pts[j + 1]);
}

// An evaluable curve with its parameter interval.
template <class E>
struct SampledCurve {
    std::function<E(double)> eval;
    double t0 = 0.0;
    double t1 = 1.0;
};

template <class E>
SampledCurve<E> interpolant_curve(const LabeledSequence<E>& q,
                                  const SpaceBackend auto& space) {
    SampledCurve<E> c;
    c.t0 = q.grid.front();
    const std::size_t n = q.points.size();
    c.t1 = q.points.closed()
               ? q.grid.front() + q.grid.spacing() * static_cast<double>(n)
               : q.grid.back();
    c.eval = [q, &space](double t) { return piecewise_average(q, space, t); };
    return c;
}

// Sampled sup metric between two curves on the overlap of their intervals.
// Monotone nondecreasing in the sample count when grids are nested.
template <SpaceBackend S>
double sup_distance(const SampledCurve<typename S::element_type>& f,
                    const SampledCurve<typename S::element_type>& g, const S& space,
                    std::size_t samples) {
    if (samples < 2) throw invalid_input("sup_distance: need >= 2 samples");
    const double a = std::max(f.t0, g.t0);
    const double b = std::min(f.t1, g.t1);
    if (!(a < b)) throw invalid_input("sup_distance: curve domains do not overlap");
    double best = 0.0;
    for (std::size_t i = 0; i < samples; ++i) {
        const double t =
            a + (b - a) * static_cast<double>(i) / static_cast<double>(samples - 1);
        best = std::max(best, space.distance(f.eval(t), g.eval(t)));
    }
    return best;
}

}  // namespace metsub
