#pragma once

#include <algorithm>
#include <vector>

#include "metsub/common.hpp"
#include "metsub/sequence.hpp"

namespace metsub {

enum class ParamRule { primal, dual };

// The parameter sequence T^k. Knots are strictly increasing; closed grids
// are assumed uniform, with an implicit wrap interval of the same spacing.
struct ParamGrid {
    std::vector<double> knots;
    int level = 0;
    ParamRule rule = ParamRule::primal;
    double zeta = 0.5;

    double spacing() const {
        if (knots.size() < 2) throw invalid_input("ParamGrid: need >= 2 knots");
        return knots[1] - knots[0];
    }

    double front() const { return knots.front(); }
    double back() const { return knots.back(); }
};

inline ParamGrid uniform_grid(std::size_t n, double t0, double h,
                              ParamRule rule = ParamRule::primal) {
    ParamGrid g;
    g.rule = rule;
    g.knots.resize(n);
    for (std::size_t j = 0; j < n; ++j) g.knots[j] = t0 + h * static_cast<double>(j);
    return g;
}

inline void validate_grid(const ParamGrid& g) {
    if (g.knots.size() < 2) throw invalid_input("ParamGrid: need >= 2 knots");
    for (std::size_t j = 0; j + 1 < g.knots.size(); ++j)
        if (!(g.knots[j] < g.knots[j + 1]))
            throw invalid_input("ParamGrid: knots not strictly increasing");
}

// One application of the predetermined knot rule R. Primal keeps the knots
// and inserts interval midpoints; dual replaces each interval [t_j, t_{j+1})
// by its quarter points t_j + h/4, t_j + 3h/4 (the map T -> (T + 1/2)/2 on
// uniform grids). Closed grids stay uniform with the wrap interval refined
// the same way.
inline ParamGrid refine_parameters(const ParamGrid& grid,
                                   Boundary boundary = Boundary::open) {
    validate_grid(grid);
    ParamGrid out;
    out.level = grid.level + 1;
    out.rule = grid.rule;
    out.zeta = grid.zeta;
    const auto& t = grid.knots;
    const std::size_t n = t.size();
    if (boundary == Boundary::closed) {
        const double h = grid.spacing();
        out.knots.reserve(2 * n);
        for (std::size_t j = 0; j < n; ++j) {
            if (grid.rule == ParamRule::primal) {
                out.knots.push_back(t[j]);
                out.knots.push_back(t[j] + 0.5 * h);
            } else {
                out.knots.push_back(t[j] + 0.25 * h);
                out.knots.push_back(t[j] + 0.75 * h);
            }
        }
    } else {
        if (grid.rule == ParamRule::primal) {
            out.knots.reserve(2 * n - 1);
            for (std::size_t j = 0; j + 1 < n; ++j) {
                out.knots.push_back(t[j]);
                out.knots.push_back(0.5 * (t[j] + t[j + 1]));
            }
            out.knots.push_back(t[n - 1]);
        } else {
            out.knots.reserve(2 * (n - 1));
            for (std::size_t j = 0; j + 1 < n; ++j) {
                out.knots.push_back(t[j] + 0.25 * (t[j + 1] - t[j]));
                out.knots.push_back(t[j] + 0.75 * (t[j + 1] - t[j]));
            }
        }
    }
    return out;
}

inline double mesh_size(const ParamGrid& g) {
    double m = 0.0;
    for (std::size_t j = 0; j + 1 < g.knots.size(); ++j)
        m = std::max(m, g.knots[j + 1] - g.knots[j]);
    return m;
}

// Nesting per the refinement-operator definition: both children of the
// parent interval [t_j, t_{j+1}) land inside it.
inline bool check_refinement_nesting(const ParamGrid& parent, const ParamGrid& child,
                                     Boundary boundary = Boundary::open) {
    const auto& t = parent.knots;
    const auto& r = child.knots;
    const std::size_t chunks =
        boundary == Boundary::closed ? t.size() : t.size() - 1;
    std::size_t offset = 0;
    if (boundary == Boundary::open && parent.rule == ParamRule::primal) {
        // open primal keeps the final knot as an unpaired child
        if (r.size() != 2 * chunks + 1) return false;
    } else if (r.size() != 2 * chunks) {
        return false;
    }
    for (std::size_t j = 0; j < chunks; ++j) {
        const double lo = t[j];
        const double hi = (j + 1 < t.size()) ? t[j + 1] : t[j] + parent.spacing();
        const double a = r[offset + 2 * j];
        const double b = r[offset + 2 * j + 1];
        if (a < lo || a >= hi || b < lo || b >= hi) return false;
    }
    return true;
}

}  // namespace metsub
