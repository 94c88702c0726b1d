#pragma once

#include "metsub/common.hpp"

namespace metsub {

// R^n with the Euclidean metric and the arithmetic average
// A_w(x,y) = (1-w)x + wy.
struct EuclideanSpace {
    using element_type = Vec;

    double distance(const Vec& a, const Vec& b) const {
        require_same_dim(a, b, "euclid_distance");
        return euclid_dist(a, b);
    }

    Vec average(double w, const Vec& a, const Vec& b) const {
        require_same_dim(a, b, "euclid_average");
        return lerp(w, a, b);
    }

    bool intrinsic() const { return true; }
    double tolerance() const { return kTol; }
};

}  // namespace metsub
