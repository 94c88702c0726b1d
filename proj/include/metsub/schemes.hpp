#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "metsub/interpolant.hpp"
#include "metsub/param_grid.hpp"
#include "metsub/sequence.hpp"
#include "metsub/spaces/hermite.hpp"

namespace metsub {

namespace detail {

template <class F>
auto with_index_context(const char* op, std::size_t j, F&& f) {
    try {
        return f();
    } catch (const numerical_error& e) {
        throw numerical_error(std::string(op) + " at index " + std::to_string(j) +
                              ": " + e.what());
    }
}

template <class E>
void require_refinable(const ElementSequence<E>& p, const char* op) {
    if (p.size() < 2)
        throw invalid_input(std::string(op) + ": need >= 2 points");
}

}  // namespace detail

// Elementary scheme: keep every point, insert the half-average between
// neighbors. Interpolatory, locality range 1, primal parameters.
template <SpaceBackend S>
ElementSequence<typename S::element_type> elementary_refine(
    const ElementSequence<typename S::element_type>& p, const S& space) {
    detail::require_refinable(p, "elementary_refine");
    ElementSequence<typename S::element_type> out;
    out.boundary = p.boundary;
    const std::size_t n = p.size();
    const std::size_t chunks = p.closed() ? n : n - 1;
    out.elems.reserve(2 * chunks + (p.closed() ? 0 : 1));
    for (std::size_t j = 0; j < chunks; ++j) {
        out.elems.push_back(p.elems[j]);
        out.elems.push_back(detail::with_index_context("elementary_refine", j, [&] {
            return space.average(0.5, p.elems[j], p.elems[(j + 1) % n]);
        }));
    }
    if (!p.closed()) out.elems.push_back(p.elems[n - 1]);
    return out;
}

// Corner cutting: the elementary midpoints followed by one round of
// w-averaging. With w = 1/2 in Euclidean space this is Chaikin's scheme.
template <SpaceBackend S>
ElementSequence<typename S::element_type> averaged_refine(
    const ElementSequence<typename S::element_type>& p, const S& space, double w) {
    if (!(w > 0.0 && w < 1.0))
        throw invalid_input("averaged_refine: omega must be in (0,1)");
    detail::require_refinable(p, "averaged_refine");
    ElementSequence<typename S::element_type> out;
    out.boundary = p.boundary;
    const std::size_t n = p.size();
    const std::size_t chunks = p.closed() ? n : n - 1;
    out.elems.reserve(2 * chunks);
    for (std::size_t j = 0; j < chunks; ++j) {
        detail::with_index_context("averaged_refine", j, [&] {
            const auto& a = p.elems[j];
            const auto& b = p.elems[(j + 1) % n];
            const auto mid = space.average(0.5, a, b);
            out.elems.push_back(space.average(w, a, mid));
            out.elems.push_back(space.average(w, mid, b));
            return 0;
        });
    }
    return out;
}

// Elementary step plus n midpoint-smoothing rounds. In Euclidean space
// n = 1 reproduces the Chaikin masks and n = 2 the cubic B-spline masks.
// Smoothing rounds alternate direction so the stencils stay centered.
template <SpaceBackend S>
ElementSequence<typename S::element_type> lane_riesenfeld_refine(
    const ElementSequence<typename S::element_type>& p, const S& space, int rounds) {
    if (rounds < 0) throw invalid_input("lane_riesenfeld_refine: rounds must be >= 0");
    auto cur = elementary_refine(p, space);
    for (int r = 0; r < rounds; ++r) {
        const std::size_t m = cur.size();
        if (!cur.closed() && m < 2)
            throw invalid_input("lane_riesenfeld_refine: sequence exhausted by smoothing");
        ElementSequence<typename S::element_type> next;
        next.boundary = cur.boundary;
        const bool forward = (r % 2 == 0);
        const std::size_t count = cur.closed() ? m : m - 1;
        next.elems.reserve(count);
        for (std::size_t j = 0; j < count; ++j) {
            // open sequences drop one end per round instead of wrapping
            const std::size_t a = cur.closed() && !forward ? (j + m - 1) % m : j;
            const std::size_t b = cur.closed() && !forward ? j : (j + 1) % m;
            next.elems.push_back(detail::with_index_context(
                "lane_riesenfeld_refine", j,
                [&] { return space.average(0.5, cur.elems[a], cur.elems[b]); }));
        }
        cur = std::move(next);
    }
    return cur;
}

// Naive Hermite elementary scheme: points and tangents refined separately
// (arithmetic midpoint, slerp midpoint). Intrinsic for the mixed l2 metric.
inline ElementSequence<HermitePair> hermite_naive_refine(
    const ElementSequence<HermitePair>& p) {
    detail::require_refinable(p, "hermite_naive_refine");
    ElementSequence<HermitePair> out;
    out.boundary = p.boundary;
    const std::size_t n = p.size();
    const std::size_t chunks = p.closed() ? n : n - 1;
    out.elems.reserve(2 * chunks + (p.closed() ? 0 : 1));
    for (std::size_t j = 0; j < chunks; ++j) {
        const auto& a = p.elems[j];
        const auto& b = p.elems[(j + 1) % n];
        out.elems.push_back(a);
        out.elems.push_back(detail::with_index_context("hermite_naive_refine", j, [&] {
            return HermitePair{lerp(0.5, a.p, b.p), sphere_average(0.5, a.v, b.v)};
        }));
    }
    if (!p.closed()) out.elems.push_back(p.elems[n - 1]);
    return out;
}

// Circle-preserving Hermite scheme: the odd point is the chord midpoint
// corrected along the tangent difference,
//   (p_i + p_{i+1})/2 - (alpha_i/8)(v_{i+1} - v_i),
// which equals the Bezier average at w = 1/2 with c = alpha_i/3.
inline ElementSequence<HermitePair> hermite_bezier_refine(
    const ElementSequence<HermitePair>& p) {
    detail::require_refinable(p, "hermite_bezier_refine");
    ElementSequence<HermitePair> out;
    out.boundary = p.boundary;
    const std::size_t n = p.size();
    const std::size_t chunks = p.closed() ? n : n - 1;
    out.elems.reserve(2 * chunks + (p.closed() ? 0 : 1));
    for (std::size_t j = 0; j < chunks; ++j) {
        const auto& a = p.elems[j];
        const auto& b = p.elems[(j + 1) % n];
        out.elems.push_back(a);
        out.elems.push_back(detail::with_index_context("hermite_bezier_refine", j, [&] {
            const double alpha = hermite_alpha(a, b);
            const Vec point =
                sub(lerp(0.5, a.p, b.p), scale(alpha / 8.0, sub(b.v, a.v)));
            return HermitePair{point, sphere_average(0.5, a.v, b.v)};
        }));
    }
    if (!p.closed()) out.elems.push_back(p.elems[n - 1]);
    return out;
}

// A refinement operator bundled with its structural metadata.
template <class E>
struct Scheme {
    std::string name;
    int locality = 1;  // M_S
    ParamRule rule = ParamRule::primal;
    bool interpolatory = true;
    std::function<ElementSequence<E>(const ElementSequence<E>&)> refine;
    std::function<ParamGrid(const ParamGrid&, Boundary)> refine_grid;
};

namespace detail {

inline ParamGrid primal_grid_rule(const ParamGrid& g, Boundary b) {
    ParamGrid gg = g;
    gg.rule = ParamRule::primal;
    return refine_parameters(gg, b);
}

// Knots of the corner-cutting scheme: new point A_w(p_j, m_j) sits at the
// matching average of parameters, t_j + w h/2, and its sibling at
// t_j + (1+w) h/2. For w = 1/2 this is the dual rule.
inline ParamGrid averaged_grid_rule(const ParamGrid& g, Boundary b, double w) {
    validate_grid(g);
    ParamGrid out;
    out.level = g.level + 1;
    out.rule = ParamRule::dual;
    out.zeta = g.zeta;
    const auto& t = g.knots;
    const std::size_t chunks = (b == Boundary::closed) ? t.size() : t.size() - 1;
    for (std::size_t j = 0; j < chunks; ++j) {
        const double h = (j + 1 < t.size()) ? t[j + 1] - t[j] : g.spacing();
        out.knots.push_back(t[j] + 0.5 * w * h);
        out.knots.push_back(t[j] + 0.5 * (1.0 + w) * h);
    }
    return out;
}

inline ParamGrid lane_riesenfeld_grid_rule(const ParamGrid& g, Boundary b, int rounds) {
    ParamGrid cur = primal_grid_rule(g, b);
    for (int r = 0; r < rounds; ++r) {
        const bool forward = (r % 2 == 0);
        std::vector<double> next;
        const std::size_t m = cur.knots.size();
        if (b == Boundary::closed) {
            const double h = cur.spacing();
            next.resize(m);
            for (std::size_t j = 0; j < m; ++j)
                next[j] = cur.knots[j] + (forward ? 0.5 * h : -0.5 * h);
        } else {
            next.reserve(m - 1);
            for (std::size_t j = 0; j + 1 < m; ++j)
                next.push_back(0.5 * (cur.knots[j] + cur.knots[j + 1]));
        }
        cur.knots = std::move(next);
    }
    return cur;
}

}  // namespace detail

template <SpaceBackend S>
Scheme<typename S::element_type> make_elementary(S space) {
    Scheme<typename S::element_type> s;
    s.name = "elementary";
    s.locality = 1;
    s.rule = ParamRule::primal;
    s.interpolatory = true;
    s.refine = [space](const auto& p) { return elementary_refine(p, space); };
    s.refine_grid = detail::primal_grid_rule;
    return s;
}

template <SpaceBackend S>
Scheme<typename S::element_type> make_averaged(S space, double w) {
    if (!(w > 0.0 && w < 1.0))
        throw invalid_input("make_averaged: omega must be in (0,1)");
    Scheme<typename S::element_type> s;
    s.name = "averaged";
    s.locality = 1;
    s.rule = ParamRule::dual;
    s.interpolatory = false;
    s.refine = [space, w](const auto& p) { return averaged_refine(p, space, w); };
    s.refine_grid = [w](const ParamGrid& g, Boundary b) {
        return detail::averaged_grid_rule(g, b, w);
    };
    return s;
}

template <SpaceBackend S>
Scheme<typename S::element_type> make_lane_riesenfeld(S space, int rounds) {
    if (rounds < 0) throw invalid_input("make_lane_riesenfeld: rounds must be >= 0");
    Scheme<typename S::element_type> s;
    s.name = "lane_riesenfeld";
    s.locality = std::max(1, (rounds + 1) / 2);
    s.rule = (rounds % 2 == 1) ? ParamRule::dual : ParamRule::primal;
    s.interpolatory = (rounds == 0);
    s.refine = [space, rounds](const auto& p) {
        return lane_riesenfeld_refine(p, space, rounds);
    };
    s.refine_grid = [rounds](const ParamGrid& g, Boundary b) {
        return detail::lane_riesenfeld_grid_rule(g, b, rounds);
    };
    return s;
}

inline Scheme<HermitePair> make_hermite_naive() {
    Scheme<HermitePair> s;
    s.name = "hermite_naive";
    s.locality = 1;
    s.rule = ParamRule::primal;
    s.interpolatory = true;
    s.refine = [](const auto& p) { return hermite_naive_refine(p); };
    s.refine_grid = detail::primal_grid_rule;
    return s;
}

inline Scheme<HermitePair> make_hermite_bezier() {
    Scheme<HermitePair> s;
    s.name = "hermite_bezier";
    s.locality = 1;
    s.rule = ParamRule::primal;
    s.interpolatory = true;
    s.refine = [](const auto& p) { return hermite_bezier_refine(p); };
    s.refine_grid = detail::primal_grid_rule;
    return s;
}

// The levels Q^0 ... Q^K produced by repeated refinement.
template <class E>
struct SubdivisionRun {
    std::vector<LabeledSequence<E>> levels;
    Scheme<E> scheme;
};

template <class E>
SubdivisionRun<E> subdivide(const ElementSequence<E>& p0, const ParamGrid& t0,
                            const Scheme<E>& scheme, int levels_k) {
    if (levels_k < 0) throw invalid_input("subdivide: K must be >= 0");
    if (p0.size() != t0.knots.size())
        throw invalid_input("subdivide: knot/point count mismatch");
    SubdivisionRun<E> run;
    run.scheme = scheme;
    run.levels.push_back({t0, p0});
    for (int k = 0; k < levels_k; ++k) {
        const auto& prev = run.levels.back();
        if (prev.points.size() < 2)
            throw invalid_input("subdivide: insufficient data at level " +
                                std::to_string(k) + " after trimming");
        LabeledSequence<E> next;
        next.points = scheme.refine(prev.points);
        next.grid = scheme.refine_grid(prev.grid, prev.points.boundary);
        next.validate();
        run.levels.push_back(std::move(next));
    }
    return run;
}

}  // namespace metsub
