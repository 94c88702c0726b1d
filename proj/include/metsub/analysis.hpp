#pragma once

#include <cmath>
#include <cstdlib>
#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "metsub/interpolant.hpp"
#include "metsub/schemes.hpp"
#include "metsub/spaces/euclidean.hpp"

namespace metsub {

namespace detail {

struct LogLogFit {
    double slope = 0.0;
    double intercept = 0.0;  // log of the constant
    double max_residual = 0.0;
    std::size_t used = 0;
};

inline LogLogFit loglog_fit(std::span<const double> xs, std::span<const double> ys,
                            double tau) {
    LogLogFit fit;
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (xs[i] > tau && ys[i] > tau) {
            lx.push_back(std::log(xs[i]));
            ly.push_back(std::log(ys[i]));
        }
    }
    fit.used = lx.size();
    if (fit.used < 2) return fit;
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < fit.used; ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= static_cast<double>(fit.used);
    my /= static_cast<double>(fit.used);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < fit.used; ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
    }
    if (sxx <= 0.0) return fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    for (std::size_t i = 0; i < fit.used; ++i)
        fit.max_residual = std::max(
            fit.max_residual, std::abs(ly[i] - (fit.intercept + fit.slope * lx[i])));
    return fit;
}

}  // namespace detail

// mu[L-1] holds the contraction factor estimate over L refinement steps,
//   mu_hat(L) = max_k delta(P^{L(k+1)}) / delta(P^{Lk}),
// taken over levels with denominator above tau. The best L minimizes the
// per-step rate mu_hat(L)^{1/L}.
struct ContractivityReport {
    std::vector<double> delta_trace;
    std::vector<double> mu;
    int best_l = 0;
    double best_mu = std::numeric_limits<double>::quiet_NaN();
    double c_p = 0.0;  // max of delta over the first best_l levels
    bool degenerate = false;

    double best_rate() const {
        return best_l > 0 ? std::pow(best_mu, 1.0 / best_l)
                          : std::numeric_limits<double>::quiet_NaN();
    }
};

inline ContractivityReport contractivity_from_trace(std::vector<double> deltas,
                                                    int l_max, double tau) {
    ContractivityReport rep;
    rep.delta_trace = std::move(deltas);
    if (rep.delta_trace.empty() || rep.delta_trace.front() <= tau) {
        rep.degenerate = true;
        return rep;
    }
    double best_rate = std::numeric_limits<double>::infinity();
    for (int l = 1; l <= l_max; ++l) {
        double worst = 0.0;
        bool any = false;
        for (std::size_t k = 0; k + l < rep.delta_trace.size(); k += l) {
            const double den = rep.delta_trace[k];
            if (den <= tau) continue;
            worst = std::max(worst, rep.delta_trace[k + l] / den);
            any = true;
        }
        rep.mu.push_back(any ? worst : std::numeric_limits<double>::quiet_NaN());
        if (any) {
            const double rate = std::pow(worst, 1.0 / l);
            // a larger L wins only if it beats the per-step rate by more
            // than rounding noise; ties go to the smaller L
            if (rate < best_rate * (1.0 - 1e-12)) {
                best_rate = rate;
                rep.best_l = l;
                rep.best_mu = worst;
            }
        }
    }
    for (int k = 0; k < rep.best_l && k < static_cast<int>(rep.delta_trace.size()); ++k)
        rep.c_p = std::max(rep.c_p, rep.delta_trace[k]);
    return rep;
}

template <class E, SpaceBackend S>
ContractivityReport estimate_contractivity(const Scheme<E>& scheme, const S& space,
                                           const ElementSequence<E>& p,
                                           const ParamGrid& grid, int l_max,
                                           int levels_k, double tau = kTol) {
    if (l_max < 1) throw invalid_input("estimate_contractivity: L_max must be >= 1");
    if (levels_k < 2 * l_max)
        throw invalid_input("estimate_contractivity: need K >= 2*L_max levels");
    const auto run = subdivide(p, grid, scheme, levels_k);
    std::vector<double> deltas;
    deltas.reserve(run.levels.size());
    for (const auto& lvl : run.levels) deltas.push_back(delta(lvl.points, space));
    return contractivity_from_trace(std::move(deltas), l_max, tau);
}

// C_S estimate for the bound d(S(P)_{2j}, P_j) <= C_S delta(P): worst ratio
// of even-index displacement to the coarse-level delta. Zero for
// interpolatory schemes.
struct DisplacementReport {
    std::vector<double> per_level;
    double c_s = 0.0;
};

template <class E, SpaceBackend S>
DisplacementReport estimate_displacement(const Scheme<E>& scheme, const S& space,
                                         const ElementSequence<E>& p,
                                         const ParamGrid& grid, int levels_k,
                                         double tau = kTol) {
    const auto run = subdivide(p, grid, scheme, levels_k);
    DisplacementReport rep;
    for (std::size_t k = 0; k + 1 < run.levels.size(); ++k) {
        const auto& coarse = run.levels[k].points;
        const auto& fine = run.levels[k + 1].points;
        const double d0 = delta(coarse, space);
        double worst = 0.0;
        for (std::size_t j = 0; j < coarse.size() && 2 * j < fine.size(); ++j)
            worst = std::max(worst, space.distance(fine.elems[2 * j], coarse.elems[j]));
        rep.per_level.push_back(worst);
        if (d0 > tau) rep.c_s = std::max(rep.c_s, worst / d0);
    }
    return rep;
}

template <class E>
using RefineFn = std::function<ElementSequence<E>(const ElementSequence<E>&)>;
template <class E>
using DistFn = std::function<double(const E&, const E&)>;

// One-step proximity sweep: sup_j d(S1(P)_j, S2(P)_j) against delta(P) over
// a family of data at decreasing scales, with a log-log least-squares fit
// sup ~ C delta^{1+eps}.
struct ProximityType1Report {
    std::vector<double> deltas;
    std::vector<double> sups;
    double exponent = 0.0;  // fitted 1 + eps
    double constant = 0.0;  // fitted C
    double residual = 0.0;  // max log-space misfit
    double mu_w = 0.0;
    // largest delta(P^0) admitted by the convergence theorem,
    // ((1 - mu) / (2 C))^(1/eps)
    double admissible_delta = std::numeric_limits<double>::quiet_NaN();
    bool identical = false;
};

template <class E>
ProximityType1Report check_proximity_type1(
    const RefineFn<E>& s1, const RefineFn<E>& s2, const DistFn<E>& dist,
    const std::function<double(const ElementSequence<E>&)>& seq_delta,
    const std::function<ElementSequence<E>(double)>& family,
    std::span<const double> scales, double mu_w = 0.5, double tau = kTol) {
    if (scales.size() < 4)
        throw invalid_input("check_proximity_type1: need >= 4 scales");
    ProximityType1Report rep;
    rep.mu_w = mu_w;
    for (double s : scales) {
        const auto p = family(s);
        const auto q1 = s1(p);
        const auto q2 = s2(p);
        if (q1.size() != q2.size())
            throw contract_error("check_proximity_type1: refinement sizes differ");
        double sup = 0.0;
        for (std::size_t j = 0; j < q1.size(); ++j)
            sup = std::max(sup, dist(q1.elems[j], q2.elems[j]));
        rep.deltas.push_back(seq_delta(p));
        rep.sups.push_back(sup);
    }
    bool all_zero = true;
    for (double s : rep.sups)
        if (s > tau) all_zero = false;
    if (all_zero) {
        rep.identical = true;
        return rep;
    }
    const auto fit = detail::loglog_fit(rep.deltas, rep.sups, tau);
    rep.exponent = fit.slope;
    rep.constant = std::exp(fit.intercept);
    rep.residual = fit.max_residual;
    const double eps = rep.exponent - 1.0;
    if (eps > 0.0 && rep.constant > 0.0 && mu_w < 1.0)
        rep.admissible_delta = std::pow((1.0 - mu_w) / (2.0 * rep.constant), 1.0 / eps);
    return rep;
}

// Scheme front end; refuses schemes with different parameter rules since
// the pointwise comparison is only meaningful on matching grids.
template <class E, SpaceBackend S>
ProximityType1Report check_proximity_type1(
    const Scheme<E>& s1, const Scheme<E>& s2, const S& space,
    const std::function<ElementSequence<E>(double)>& family,
    std::span<const double> scales, double mu_w = 0.5) {
    if (s1.rule != s2.rule)
        throw contract_error("check_proximity_type1: parameter rules differ");
    RefineFn<E> r1 = s1.refine;
    RefineFn<E> r2 = s2.refine;
    DistFn<E> dist = [&space](const E& a, const E& b) { return space.distance(a, b); };
    std::function<double(const ElementSequence<E>&)> sd =
        [&space](const ElementSequence<E>& p) { return delta(p, space); };
    double tau = kTol;
    if constexpr (requires { space.tolerance(); }) tau = space.tolerance();
    return check_proximity_type1<E>(r1, r2, dist, sd, family, scales, mu_w, tau);
}

// Iterated proximity trace: e_j = sup_i d(S1^L(P^j)_i, S2^L(P^j)_i) with
// P^j = S1^{jL}(P). The decay rate eta_hat is the geometric mean of
// consecutive ratios past the burn-in, and m_hat = floor(-log2 eta - tau)
// is the largest order consistent with it.
struct ProximityType2Report {
    std::vector<double> e;
    std::vector<double> ratios;
    double eta_hat = std::numeric_limits<double>::quiet_NaN();
    int m_hat = 0;
    double e_cap = 0.0;  // smallest E with e_j <= E eta^{j+1} past burn-in
    int burn_in = 0;
    bool identical = false;
};

template <class E>
ProximityType2Report check_proximity_type2(const RefineFn<E>& s1, const RefineFn<E>& s2,
                                           const DistFn<E>& dist, ElementSequence<E> p,
                                           int l_steps, int levels_j, int burn_in = 2,
                                           double tau = kTol, double order_slack = 1e-6) {
    if (l_steps < 1) throw invalid_input("check_proximity_type2: L must be >= 1");
    if (levels_j < burn_in + 2)
        throw invalid_input("check_proximity_type2: need >= burn_in + 2 trace entries");
    ProximityType2Report rep;
    rep.burn_in = burn_in;
    auto iterate = [&](const RefineFn<E>& s, ElementSequence<E> q) {
        for (int i = 0; i < l_steps; ++i) q = s(q);
        return q;
    };
    for (int j = 0; j < levels_j; ++j) {
        const auto q1 = iterate(s1, p);
        const auto q2 = iterate(s2, p);
        if (q1.size() != q2.size())
            throw contract_error("check_proximity_type2: refinement sizes differ");
        double sup = 0.0;
        for (std::size_t i = 0; i < q1.size(); ++i)
            sup = std::max(sup, dist(q1.elems[i], q2.elems[i]));
        rep.e.push_back(sup);
        p = q1;
    }
    bool all_zero = true;
    for (double ej : rep.e)
        if (ej > tau) all_zero = false;
    if (all_zero) {
        rep.identical = true;
        return rep;
    }
    double log_sum = 0.0;
    std::size_t used = 0;
    for (std::size_t j = 0; j + 1 < rep.e.size(); ++j) {
        if (rep.e[j] <= tau) continue;
        const double r = rep.e[j + 1] / rep.e[j];
        rep.ratios.push_back(r);
        if (static_cast<int>(j) >= burn_in && r > 0.0) {
            log_sum += std::log(r);
            ++used;
        }
    }
    if (used > 0) {
        rep.eta_hat = std::exp(log_sum / static_cast<double>(used));
        if (rep.eta_hat < 1.0)
            rep.m_hat = static_cast<int>(
                std::floor(-std::log2(rep.eta_hat) - order_slack));
        for (std::size_t j = static_cast<std::size_t>(burn_in); j < rep.e.size(); ++j)
            rep.e_cap = std::max(
                rep.e_cap,
                rep.e[j] / std::pow(rep.eta_hat, static_cast<double>(j + 1)));
    }
    return rep;
}

// First-order divided differences Delta(P^k)/h_k of a vector-valued run,
// one fewer element per level than points, with the delta of each level and
// the sampled sup gap between consecutive levels' difference interpolants.
struct DividedDiffTrace {
    std::vector<std::vector<Vec>> diffs;
    std::vector<double> deltas;
    std::vector<double> interpolant_gaps;
};

inline DividedDiffTrace divided_differences(const SubdivisionRun<Vec>& run,
                                            std::size_t samples = 257) {
    DividedDiffTrace tr;
    const EuclideanSpace eu;
    std::vector<SampledCurve<Vec>> curves;
    for (const auto& lvl : run.levels) {
        const std::size_t n = lvl.points.size();
        if (n < 2) throw invalid_input("divided_differences: level with < 2 points");
        const double h = lvl.grid.spacing();
        std::vector<Vec> dd;
        dd.reserve(n - 1);
        for (std::size_t j = 0; j + 1 < n; ++j)
            dd.push_back(scale(1.0 / h, sub(lvl.points.elems[j + 1], lvl.points.elems[j])));
        LabeledSequence<Vec> labeled;
        labeled.points = {std::move(dd), Boundary::open};
        // attach each difference to the midpoint of its knot interval
        for (std::size_t j = 0; j + 1 < n; ++j)
            labeled.grid.knots.push_back(0.5 * (lvl.grid.knots[j] + lvl.grid.knots[j + 1]));
        labeled.grid.level = lvl.grid.level;
        labeled.grid.rule = lvl.grid.rule;
        tr.deltas.push_back(delta(labeled.points, eu));
        tr.diffs.push_back(labeled.points.elems);
        curves.push_back(interpolant_curve(labeled, eu));
    }
    for (std::size_t k = 0; k + 1 < curves.size(); ++k)
        tr.interpolant_gaps.push_back(sup_distance(curves[k], curves[k + 1], eu, samples));
    return tr;
}

// Contractivity table of the divided differences (the first-order factor).
inline ContractivityReport c1_diagnostic(const SubdivisionRun<Vec>& run, int l_max = 4,
                                         double tau = kTol) {
    const auto tr = divided_differences(run);
    return contractivity_from_trace(tr.deltas, l_max, tau);
}

// Sampled sup distance between consecutive level interpolants, the d_k
// quantities whose summability makes the refinements a Cauchy sequence.
struct CauchyTrace {
    std::vector<double> d;
    double fitted_ratio = 0.0;
    double fitted_base = 0.0;
};

template <class E, SpaceBackend S>
CauchyTrace cauchy_trace(const SubdivisionRun<E>& run, const S& space,
                         std::size_t samples = 257, double tau = kTol) {
    if (run.levels.size() < 2) throw invalid_input("cauchy_trace: need >= 2 levels");
    CauchyTrace tr;
    std::vector<SampledCurve<E>> curves;
    for (const auto& lvl : run.levels) curves.push_back(interpolant_curve(lvl, space));
    for (std::size_t k = 0; k + 1 < curves.size(); ++k)
        tr.d.push_back(sup_distance(curves[k], curves[k + 1], space, samples));
    std::vector<double> ks, ds;
    for (std::size_t k = 0; k < tr.d.size(); ++k) {
        if (tr.d[k] > tau) {
            ks.push_back(static_cast<double>(k));
            ds.push_back(tr.d[k]);
        }
    }
    if (ks.size() >= 2) {
        // geometric fit: log d_k against k
        double mx = 0.0, my = 0.0;
        for (std::size_t i = 0; i < ks.size(); ++i) {
            mx += ks[i];
            my += std::log(ds[i]);
        }
        mx /= static_cast<double>(ks.size());
        my /= static_cast<double>(ks.size());
        double sxx = 0.0, sxy = 0.0;
        for (std::size_t i = 0; i < ks.size(); ++i) {
            sxx += (ks[i] - mx) * (ks[i] - mx);
            sxy += (ks[i] - mx) * (std::log(ds[i]) - my);
        }
        if (sxx > 0.0) {
            tr.fitted_ratio = std::exp(sxy / sxx);
            tr.fitted_base = std::exp(my - (sxy / sxx) * mx);
        }
    }
    return tr;
}

// A parametric curve with a Lipschitz constant, used as ground truth for
// the approximation experiment. The constant is accepted on trust.
template <class E>
struct CurveSampler {
    std::function<E(double)> eval;
    double t0 = 0.0;
    double t1 = 1.0;
    double lipschitz = 1.0;
    bool closed = false;
    bool lipschitz_verified = false;
};

struct ApproxOrderReport {
    struct Row {
        double h;
        double error;
        double bound;  // 2 * L_Gamma * h
        bool within;
    };
    std::vector<Row> rows;
    double fitted_slope = 0.0;
    bool lipschitz_verified = false;
};

template <class E, SpaceBackend S>
ApproxOrderReport approximation_experiment(const CurveSampler<E>& gamma, const S& space,
                                           const Scheme<E>& scheme,
                                           std::span<const double> hs, int levels_k,
                                           std::size_t samples = 513,
                                           double tau = kTol) {
    ApproxOrderReport rep;
    rep.lipschitz_verified = gamma.lipschitz_verified;
    const double span_len = gamma.t1 - gamma.t0;
    if (!(span_len > 0.0))
        throw invalid_input("approximation_experiment: empty parameter interval");
    for (double h : hs) {
        const auto n = static_cast<std::size_t>(std::llround(span_len / h));
        if (n < 2) throw invalid_input("approximation_experiment: h too coarse");
        const double hh = span_len / static_cast<double>(n);
        ElementSequence<E> p;
        p.boundary = gamma.closed ? Boundary::closed : Boundary::open;
        ParamGrid grid;
        grid.rule = ParamRule::primal;
        const std::size_t count = gamma.closed ? n : n + 1;
        for (std::size_t j = 0; j < count; ++j) {
            const double t = gamma.t0 + hh * static_cast<double>(j);
            grid.knots.push_back(t);
            p.elems.push_back(gamma.eval(t));
        }
        const auto run = subdivide(p, grid, scheme, levels_k);
        const auto proxy = interpolant_curve(run.levels.back(), space);
        SampledCurve<E> truth{gamma.eval, gamma.t0, gamma.t1};
        const double err = sup_distance(truth, proxy, space, samples);
        const double bound = 2.0 * gamma.lipschitz * hh;
        rep.rows.push_back({hh, err, bound, err <= bound + tau});
    }
    std::vector<double> xs, ys;
    for (const auto& r : rep.rows) {
        xs.push_back(r.h);
        ys.push_back(r.error);
    }
    rep.fitted_slope = detail::loglog_fit(xs, ys, tau).slope;
    return rep;
}

// Perturb one control point and measure, at level K, how far (in coarse
// cells, via floor(i / 2^K)) the affected outputs spread from it.
struct LocalityReport {
    int spread = 0;         // max |floor(i / 2^K) - j| over differing indices
    int bound = 0;          // 2 * M_S
    std::size_t differing = 0;
    bool within = true;
};

template <class E, SpaceBackend S>
LocalityReport locality_check(const Scheme<E>& scheme, const S& space,
                              const ElementSequence<E>& p, const ParamGrid& grid,
                              std::size_t j, const E& perturbed, int levels_k,
                              double tau = kTol) {
    if (j >= p.size()) throw invalid_input("locality_check: index out of range");
    auto q = p;
    q.elems[j] = perturbed;
    const auto run_a = subdivide(p, grid, scheme, levels_k);
    const auto run_b = subdivide(q, grid, scheme, levels_k);
    const auto& fa = run_a.levels.back().points;
    const auto& fb = run_b.levels.back().points;
    LocalityReport rep;
    rep.bound = 2 * scheme.locality;
    const auto n0 = static_cast<long>(p.size());
    const double scale = std::pow(2.0, levels_k);
    for (std::size_t i = 0; i < fa.size(); ++i) {
        if (space.distance(fa.elems[i], fb.elems[i]) <= tau) continue;
        ++rep.differing;
        long cell = static_cast<long>(std::floor(static_cast<double>(i) / scale));
        long dist_cells = std::labs(cell - static_cast<long>(j));
        if (p.closed()) dist_cells = std::min(dist_cells, n0 - dist_cells);
        rep.spread = std::max(rep.spread, static_cast<int>(dist_cells));
    }
    rep.within = rep.spread <= rep.bound;
    return rep;
}

}  // namespace metsub
