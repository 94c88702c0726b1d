#pragma once

#include <cmath>

#include "metsub/common.hpp"

namespace metsub {

inline Vec normalized(const Vec& v) {
    double n = norm(v);
    if (n < 1e-12) throw invalid_input("normalized: zero vector");
    return scale(1.0 / n, v);
}

// Great-circle angle via atan2 of the orthogonal component against the dot
// product; stable near 0 and pi, works in any dimension.
inline double sphere_angle(const Vec& v, const Vec& u) {
    require_same_dim(v, u, "sphere_angle");
    if (v == u) return 0.0;  // exact zero for identical directions
    const double c = dot(v, u);
    const Vec orth = sub(u, scale(c, v));
    return std::atan2(norm(orth), c);
}

// Geodesic (slerp) average on the unit sphere:
//   s_w(v,u) = sin((1-w)theta)/sin(theta) v + sin(w theta)/sin(theta) u.
// Antipodal inputs have no unique geodesic and are rejected.
inline Vec sphere_average(double w, const Vec& v, const Vec& u) {
    const double theta = sphere_angle(v, u);
    constexpr double kPi = 3.14159265358979323846;
    if (theta > kPi - kAntipodalTol)
        throw numerical_error("sphere_average: antipodal inputs, geodesic not unique");
    if (theta < 1e-12) return normalized(lerp(w, v, u));
    const double s = std::sin(theta);
    return normalized(add(scale(std::sin((1.0 - w) * theta) / s, v),
                          scale(std::sin(w * theta) / s, u)));
}

// The unit sphere S^{n-1} with the great-circle metric and slerp average.
struct SphereSpace {
    using element_type = Vec;

    double distance(const Vec& v, const Vec& u) const { return sphere_angle(v, u); }

    Vec average(double w, const Vec& v, const Vec& u) const {
        return sphere_average(w, v, u);
    }

    bool intrinsic() const { return true; }
    double tolerance() const { return kTol; }
};

}  // namespace metsub
