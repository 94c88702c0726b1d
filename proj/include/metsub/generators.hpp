#pragma once

#include <cmath>
#include <numbers>

#include "metsub/common.hpp"
#include "metsub/sequence.hpp"
#include "metsub/spaces/compact_set.hpp"
#include "metsub/spaces/hermite.hpp"
#include "metsub/spaces/sphere.hpp"
#include "metsub/spaces/wasserstein.hpp"

namespace metsub {

// ----- single random elements, used to build test pairs -----

inline Vec random_vec(Rng& rng, std::size_t dim, double spread = 1.0) {
    Vec v(dim);
    for (auto& c : v) c = spread * (2.0 * rng.uniform() - 1.0);
    return v;
}

inline FiniteSet random_set(Rng& rng, std::size_t max_points, std::size_t dim,
                            double spread = 1.0) {
    const auto n = static_cast<std::size_t>(rng.uniform_int(1, static_cast<int>(max_points)));
    std::vector<Vec> pts;
    pts.reserve(n);
    for (std::size_t i = 0; i < n; ++i) pts.push_back(random_vec(rng, dim, spread));
    return make_set(std::move(pts));
}

inline Measure1D random_measure(Rng& rng, std::size_t max_atoms, double spread = 1.0) {
    const auto n = static_cast<std::size_t>(rng.uniform_int(1, static_cast<int>(max_atoms)));
    std::vector<Atom> atoms;
    atoms.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        atoms.push_back({spread * (2.0 * rng.uniform() - 1.0), 0.1 + rng.uniform()});
    return make_measure_normalized(std::move(atoms));
}

inline HermitePair random_hermite_pair(Rng& rng, double spread = 1.0) {
    const double a = 2.0 * std::numbers::pi * rng.uniform();
    return {random_vec(rng, 2, spread), {std::cos(a), std::sin(a)}};
}

// ----- curve-like sequences -----

// n equally spaced samples of the unit circle with exact unit tangents.
inline ElementSequence<HermitePair> circle_hermite(std::size_t n, bool closed = true) {
    if (n < 2) throw invalid_input("circle_hermite: need >= 2 samples");
    ElementSequence<HermitePair> seq;
    seq.boundary = closed ? Boundary::closed : Boundary::open;
    for (std::size_t j = 0; j < n; ++j) {
        const double a = 2.0 * std::numbers::pi * static_cast<double>(j) /
                         static_cast<double>(closed ? n : n - 1);
        seq.elems.push_back({{std::cos(a), std::sin(a)}, {-std::sin(a), std::cos(a)}});
    }
    return seq;
}

// Planar Hermite data with controlled scale: consecutive point gaps of size
// about `gap` and tangent rotations of size about `angle`. The tangent leads
// the walk so the data looks like samples of a curve.
inline ElementSequence<HermitePair> random_hermite_walk(Rng& rng, std::size_t n,
                                                        double gap, double angle) {
    if (n < 2) throw invalid_input("random_hermite_walk: need >= 2 samples");
    ElementSequence<HermitePair> seq;
    seq.boundary = Boundary::open;
    double heading = 2.0 * std::numbers::pi * rng.uniform();
    Vec p{0.0, 0.0};
    for (std::size_t j = 0; j < n; ++j) {
        seq.elems.push_back({p, {std::cos(heading), std::sin(heading)}});
        const double step = gap * (0.3 + 0.7 * rng.uniform());
        const double turn = angle * (0.3 + 0.7 * rng.uniform()) *
                            (rng.uniform() < 0.5 ? -1.0 : 1.0);
        p = add(p, scale(step, Vec{std::cos(heading), std::sin(heading)}));
        heading += turn;
    }
    return seq;
}

// Open random polygon in R^dim with consecutive gaps of size about `step`.
inline ElementSequence<Vec> random_walk(Rng& rng, std::size_t n, std::size_t dim,
                                        double step) {
    if (n < 2) throw invalid_input("random_walk: need >= 2 samples");
    ElementSequence<Vec> seq;
    seq.boundary = Boundary::open;
    Vec p(dim, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        seq.elems.push_back(p);
        p = add(p, scale(step, rng.unit_vec(dim)));
    }
    return seq;
}

// Open walk on S^2: each step rotates the point by `step_angle` toward the
// current tangent, then drifts the tangent. Halving step_angle with the
// same seed halves every great-circle gap.
inline ElementSequence<Vec> sphere_walk(Rng& rng, std::size_t n, double step_angle) {
    if (n < 2) throw invalid_input("sphere_walk: need >= 2 samples");
    ElementSequence<Vec> seq;
    seq.boundary = Boundary::open;
    Vec p = rng.unit_vec(3);
    Vec t = rng.unit_vec(3);
    t = normalized(sub(t, scale(dot(t, p), p)));
    for (std::size_t j = 0; j < n; ++j) {
        seq.elems.push_back(p);
        const double a = step_angle * (0.5 + 0.5 * rng.uniform());
        const Vec np = add(scale(std::cos(a), p), scale(std::sin(a), t));
        Vec nt = sub(scale(-std::sin(a), p), scale(-std::cos(a), t));
        // drift the tangent within the tangent plane at np
        const Vec bi{p[1] * t[2] - p[2] * t[1], p[2] * t[0] - p[0] * t[2],
                     p[0] * t[1] - p[1] * t[0]};
        const double drift = 0.6 * (2.0 * rng.uniform() - 1.0);
        nt = normalized(add(nt, scale(drift, bi)));
        nt = normalized(sub(nt, scale(dot(nt, np), np)));
        p = normalized(np);
        t = nt;
    }
    return seq;
}

// Closed arc-length samples of the equator great circle of S^2 with gap h.
inline ElementSequence<Vec> great_circle_samples(double h) {
    const auto n = static_cast<std::size_t>(std::llround(2.0 * std::numbers::pi / h));
    if (n < 3) throw invalid_input("great_circle_samples: h too coarse");
    ElementSequence<Vec> seq;
    seq.boundary = Boundary::closed;
    for (std::size_t j = 0; j < n; ++j) {
        const double a =
            2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n);
        seq.elems.push_back({std::cos(a), std::sin(a), 0.0});
    }
    return seq;
}

// Open tube of finite sets: a fixed point cloud carried along a random walk
// with per-level jitter much smaller than the walk step.
inline ElementSequence<FiniteSet> set_tube(Rng& rng, std::size_t n,
                                           std::size_t set_size, std::size_t dim,
                                           double step) {
    if (n < 2) throw invalid_input("set_tube: need >= 2 samples");
    std::vector<Vec> offsets;
    for (std::size_t i = 0; i < set_size; ++i)
        offsets.push_back(random_vec(rng, dim, 4.0 * step));
    ElementSequence<FiniteSet> seq;
    seq.boundary = Boundary::open;
    Vec c(dim, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<Vec> pts;
        for (const auto& o : offsets)
            pts.push_back(add(add(c, o), random_vec(rng, dim, 0.02 * step)));
        seq.elems.push_back(make_set(std::move(pts)));
        c = add(c, scale(step, rng.unit_vec(dim)));
    }
    return seq;
}

// Open path of measures: a Gaussian-mixture quantization whose atoms drift
// by about `step` per level while the weights stay fixed, so consecutive
// couplings stay monotone atom-to-atom.
inline ElementSequence<Measure1D> measure_walk(Rng& rng, std::size_t n,
                                               std::size_t atoms, double step) {
    if (n < 2) throw invalid_input("measure_walk: need >= 2 samples");
    if (atoms < 1) throw invalid_input("measure_walk: need >= 1 atom");
    std::vector<double> locs;
    std::vector<double> weights;
    for (std::size_t i = 0; i < atoms; ++i) {
        // two-component mixture quantization
        const double center = (rng.uniform() < 0.5) ? -1.0 : 1.0;
        locs.push_back(center + 0.3 * rng.normal());
        weights.push_back(0.1 + rng.uniform());
    }
    ElementSequence<Measure1D> seq;
    seq.boundary = Boundary::open;
    double drift = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<Atom> as;
        for (std::size_t i = 0; i < atoms; ++i)
            as.push_back({locs[i] + drift, weights[i]});
        seq.elems.push_back(make_measure_normalized(std::move(as)));
        drift += step * (0.5 + 0.5 * rng.uniform());
    }
    return seq;
}

}  // namespace metsub
