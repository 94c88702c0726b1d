#pragma once

#include <cmath>

#include "metsub/common.hpp"
#include "metsub/spaces/sphere.hpp"

namespace metsub {

// A point in R^n with a unit tangent direction.
struct HermitePair {
    Vec p;  // position
    Vec v;  // unit tangent

    static HermitePair make(Vec p, Vec v) { return {std::move(p), normalized(std::move(v))}; }
};

// Mixed l2 metric: sqrt(|p-q|^2 + d_S(v,w)^2).
inline double hermite_distance(const HermitePair& a, const HermitePair& b) {
    require_same_dim(a.p, b.p, "hermite_distance");
    const double dp = euclid_dist(a.p, b.p);
    const double dv = sphere_angle(a.v, b.v);
    return std::sqrt(dp * dp + dv * dv);
}

// alpha_i = |p1 - p0| / cos^2(theta/4), the chord length corrected by the
// tangent opening angle.
inline double hermite_alpha(const HermitePair& a, const HermitePair& b) {
    const double theta = sphere_angle(a.v, b.v);
    const double c = std::cos(0.25 * theta);
    return euclid_dist(a.p, b.p) / (c * c);
}

// Value and normalized tangent at t = w of the cubic Bezier through the
// control points p0, p0 + c v0, p1 - c v1, p1. Identical pairs are their
// own average.
inline HermitePair hermite_average(double w, const HermitePair& a, const HermitePair& b,
                                   double c) {
    require_same_dim(a.p, b.p, "hermite_average");
    if (hermite_distance(a, b) <= kTol) return a;
    if (!(c > 0.0)) throw invalid_input("hermite_average: c must be positive");

    const Vec P0 = a.p;
    const Vec P1 = add(a.p, scale(c, a.v));
    const Vec P2 = sub(b.p, scale(c, b.v));
    const Vec P3 = b.p;

    const double s = 1.0 - w;
    Vec point(P0.size(), 0.0);
    Vec deriv(P0.size(), 0.0);
    const double b0 = s * s * s, b1 = 3.0 * s * s * w, b2 = 3.0 * s * w * w,
                 b3 = w * w * w;
    const double d0 = 3.0 * s * s, d1 = 3.0 * w * w;
    for (std::size_t i = 0; i < P0.size(); ++i) {
        point[i] = b0 * P0[i] + b1 * P1[i] + b2 * P2[i] + b3 * P3[i];
        deriv[i] = d0 * (P1[i] - P0[i]) + 6.0 * s * w * (P2[i] - P1[i]) +
                   d1 * (P3[i] - P2[i]);
    }
    if (norm(deriv) < 1e-12)
        throw numerical_error("hermite_average: vanishing Bezier derivative");
    return {std::move(point), normalized(deriv)};
}

// The geometric Hermite backend on R^n x S^{n-1}. By default the Bezier
// parameter is data-driven, c = alpha/3, matching the circle-preserving
// refinement rule; a fixed c > 0 may be supplied instead. No metric is
// known that makes this average intrinsic, so the backend rejects
// metric-property checks.
struct HermiteSpace {
    using element_type = HermitePair;

    double fixed_c = -1.0;  // <= 0 means c = alpha/3

    double distance(const HermitePair& a, const HermitePair& b) const {
        return hermite_distance(a, b);
    }

    HermitePair average(double w, const HermitePair& a, const HermitePair& b) const {
        if (hermite_distance(a, b) <= kTol) return a;
        const double c = fixed_c > 0.0 ? fixed_c : hermite_alpha(a, b) / 3.0;
        return hermite_average(w, a, b, c);
    }

    bool intrinsic() const { return false; }
    double tolerance() const { return kTol; }
};

}  // namespace metsub
