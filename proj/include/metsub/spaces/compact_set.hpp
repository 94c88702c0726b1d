#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "metsub/common.hpp"

namespace metsub {

// A nonempty finite subset of R^n, canonically sorted and deduplicated so
// that set equality is positional equality.
struct FiniteSet {
    std::vector<Vec> points;
};

inline FiniteSet make_set(std::vector<Vec> pts) {
    if (pts.empty()) throw invalid_input("FiniteSet: empty set");
    for (const auto& p : pts) require_same_dim(p, pts.front(), "FiniteSet");
    std::sort(pts.begin(), pts.end());
    std::vector<Vec> out;
    out.reserve(pts.size());
    for (auto& p : pts) {
        if (!out.empty() && euclid_dist(out.back(), p) <= kMergeTol) continue;
        out.push_back(std::move(p));
    }
    return {std::move(out)};
}

inline double dist_point_set(const Vec& a, const FiniteSet& B) {
    double best = euclid_dist(a, B.points.front());
    for (std::size_t i = 1; i < B.points.size(); ++i)
        best = std::min(best, euclid_dist(a, B.points[i]));
    return best;
}

// All pairs (a,b) with b a nearest neighbor of a in B, union all pairs with
// a a nearest neighbor of b in A. Ties within relative tolerance 1e-12 are
// all included; dropping them would break the metric property.
inline std::vector<std::pair<Vec, Vec>> set_metric_pairs(const FiniteSet& A,
                                                         const FiniteSet& B) {
    std::vector<std::pair<Vec, Vec>> pairs;
    auto tie_ok = [](double d, double best) {
        return d <= best + 1e-12 * std::max(1.0, best);
    };
    for (const auto& a : A.points) {
        const double best = dist_point_set(a, B);
        for (const auto& b : B.points)
            if (tie_ok(euclid_dist(a, b), best)) pairs.emplace_back(a, b);
    }
    for (const auto& b : B.points) {
        const double best = dist_point_set(b, A);
        for (const auto& a : A.points) {
            if (!tie_ok(euclid_dist(a, b), best)) continue;
            bool seen = false;
            for (const auto& q : pairs)
                if (q.first == a && q.second == b) { seen = true; break; }
            if (!seen) pairs.emplace_back(a, b);
        }
    }
    return pairs;
}

// d_H(A,B) as the largest distance realized by a metric pair.
inline double hausdorff_distance(const FiniteSet& A, const FiniteSet& B) {
    double d = 0.0;
    for (const auto& [a, b] : set_metric_pairs(A, B))
        d = std::max(d, euclid_dist(a, b));
    return d;
}

// Metric average: convex combinations over the metric pairs, oriented so
// that A_0(A,B) = A.
inline FiniteSet set_metric_average(double w, const FiniteSet& A, const FiniteSet& B) {
    std::vector<Vec> pts;
    for (const auto& [a, b] : set_metric_pairs(A, B)) pts.push_back(lerp(w, a, b));
    return make_set(std::move(pts));
}

// Nonempty finite subsets of R^n under the Hausdorff metric with the metric
// average, which is intrinsic there.
struct CompactSetSpace {
    using element_type = FiniteSet;

    double distance(const FiniteSet& A, const FiniteSet& B) const {
        return hausdorff_distance(A, B);
    }

    FiniteSet average(double w, const FiniteSet& A, const FiniteSet& B) const {
        return set_metric_average(w, A, B);
    }

    bool intrinsic() const { return true; }
    double tolerance() const { return kTol; }
};

}  // namespace metsub
