#pragma once

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "metsub/common.hpp"

namespace metsub {

struct Atom {
    double x;  // location
    double w;  // positive mass
};

// A finitely supported probability measure on R. Canonical form: atoms
// sorted by location, locations closer than the merge tolerance combined
// with summed mass, total mass 1 within 1e-12.
struct Measure1D {
    std::vector<Atom> atoms;

    double total_mass() const {
        double s = 0.0;
        for (const auto& a : atoms) s += a.w;
        return s;
    }
};

inline Measure1D make_measure(std::vector<Atom> atoms) {
    if (atoms.empty()) throw invalid_input("Measure1D: no atoms");
    for (const auto& a : atoms)
        if (!(a.w > 0.0)) throw invalid_input("Measure1D: nonpositive mass");
    std::sort(atoms.begin(), atoms.end(),
              [](const Atom& a, const Atom& b) { return a.x < b.x; });
    std::vector<Atom> out;
    for (const auto& a : atoms) {
        if (!out.empty() && a.x - out.back().x <= kMergeTol)
            out.back().w += a.w;
        else
            out.push_back(a);
    }
    Measure1D m{std::move(out)};
    if (std::abs(m.total_mass() - 1.0) > 1e-12)
        throw invalid_input("Measure1D: masses must sum to 1");
    return m;
}

// Normalizes arbitrary positive weights, then canonicalizes.
inline Measure1D make_measure_normalized(std::vector<Atom> atoms) {
    double s = 0.0;
    for (const auto& a : atoms) s += a.w;
    if (!(s > 0.0)) throw invalid_input("Measure1D: zero total mass");
    for (auto& a : atoms) a.w /= s;
    // compensate rounding so the canonical form sums to 1 exactly enough
    double s2 = 0.0;
    for (const auto& a : atoms) s2 += a.w;
    atoms.back().w += 1.0 - s2;
    return make_measure(std::move(atoms));
}

struct CouplingChunk {
    double x;     // source location
    double y;     // target location
    double mass;  // positive
};

// The monotone (quantile) coupling: mass is matched in CDF order, which is
// the optimal transport plan on R for any convex cost. Implemented by
// merging the two cumulative-mass breakpoint lists so the marginals are
// reproduced exactly up to floating rounding.
inline std::vector<CouplingChunk> quantile_coupling(const Measure1D& mu,
                                                    const Measure1D& nu) {
    if (std::abs(mu.total_mass() - 1.0) > 1e-12 ||
        std::abs(nu.total_mass() - 1.0) > 1e-12)
        throw invalid_input("quantile_coupling: measures must be normalized");

    std::vector<CouplingChunk> chunks;
    std::size_t i = 0, j = 0;
    double rem_i = mu.atoms[0].w;
    double rem_j = nu.atoms[0].w;
    const std::size_t n = mu.atoms.size(), m = nu.atoms.size();
    while (true) {
        const double mass = std::min(rem_i, rem_j);
        if (mass > 0.0) chunks.push_back({mu.atoms[i].x, nu.atoms[j].x, mass});
        rem_i -= mass;
        rem_j -= mass;
        const bool last_i = (i + 1 == n), last_j = (j + 1 == m);
        if (rem_i <= 1e-15 && !last_i) rem_i = mu.atoms[++i].w;
        if (rem_j <= 1e-15 && !last_j) rem_j = nu.atoms[++j].w;
        if ((last_i && rem_i <= 1e-15) || (last_j && rem_j <= 1e-15)) break;
    }
    return chunks;
}

// W_p as the p-th root of the monotone-coupling cost.
inline double wasserstein_distance(const Measure1D& mu, const Measure1D& nu,
                                   double p = 2.0) {
    if (p < 1.0) throw invalid_input("wasserstein_distance: p must be >= 1");
    double cost = 0.0;
    for (const auto& ch : quantile_coupling(mu, nu))
        cost += ch.mass * std::pow(std::abs(ch.x - ch.y), p);
    return std::pow(cost, 1.0 / p);
}

// Displacement interpolation: pushforward of the monotone coupling through
// (x,y) -> (1-w)x + wy.
inline Measure1D wasserstein_average(double w, const Measure1D& mu,
                                     const Measure1D& nu) {
    std::vector<Atom> atoms;
    for (const auto& ch : quantile_coupling(mu, nu))
        atoms.push_back({(1.0 - w) * ch.x + w * ch.y, ch.mass});
    return make_measure(std::move(atoms));
}

// Discrete probability measures on R under W_p with the displacement
// (geodesic) average, which is intrinsic.
struct WassersteinSpace {
    using element_type = Measure1D;

    double p = 2.0;

    double distance(const Measure1D& mu, const Measure1D& nu) const {
        return wasserstein_distance(mu, nu, p);
    }

    Measure1D average(double w, const Measure1D& mu, const Measure1D& nu) const {
        return wasserstein_average(w, mu, nu);
    }

    bool intrinsic() const { return true; }
    // transport merging is less exact than plain arithmetic
    double tolerance() const { return 1e-7; }
};

}  // namespace metsub
