// End-to-end acceptance checks. Each criterion prints one PASS/FAIL line;
// the process exits nonzero if any criterion fails.

#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>
#include <vector>

#include "metsub/analysis.hpp"
#include "metsub/generators.hpp"
#include "metsub/io.hpp"
#include "metsub/masks.hpp"
#include "metsub/space_checks.hpp"
#include "metsub/spaces/euclidean.hpp"
#include "metsub/spaces/sphere.hpp"
#include "oracles.hpp"

using namespace metsub;

namespace {

int g_failures = 0;

void report(int num, const std::string& desc, bool ok, const std::string& note = "") {
    std::printf("%s  criterion %2d: %s%s%s\n", ok ? "PASS" : "FAIL", num, desc.c_str(),
                note.empty() ? "" : " -- ", note.c_str());
    if (!ok) ++g_failures;
}

const std::vector<double> kOmegas{0.0, 0.1, 0.25, 0.5, 0.75, 0.9, 1.0};

template <class S, class PairGen>
double axiom_residual(const S& space, PairGen gen, int count, std::size_t cgrid = 8) {
    std::vector<std::pair<typename S::element_type, typename S::element_type>> pairs;
    pairs.reserve(count);
    for (int i = 0; i < count; ++i) pairs.push_back(gen());
    return check_average_axioms<S>(space, pairs, kOmegas, cgrid).max_violation();
}

template <class S, class PairGen>
double metric_residual(const S& space, PairGen gen, int count) {
    std::vector<std::pair<typename S::element_type, typename S::element_type>> pairs;
    pairs.reserve(count);
    for (int i = 0; i < count; ++i) pairs.push_back(gen());
    return check_metric_property<S>(space, pairs, kOmegas).max_violation();
}

// --- criterion 1: average axioms on all five backends ----------------------
void criterion_1() {
    const int n = 10000;
    Rng rng(101);

    const double eu = axiom_residual(EuclideanSpace{}, [&] {
        return std::make_pair(rng.gaussian_vec(3), rng.gaussian_vec(3));
    }, n);

    Rng rs(102);
    const double sp = axiom_residual(SphereSpace{}, [&]() {
        for (;;) {
            Vec u = rs.unit_vec(3), v = rs.unit_vec(3);
            if (sphere_angle(u, v) < std::numbers::pi - 1e-3)
                return std::make_pair(u, v);
        }
    }, n);

    Rng rh(103);
    const AxiomReport hrep = [&] {
        std::vector<std::pair<HermitePair, HermitePair>> pairs;
        for (int i = 0; i < n; ++i)
            pairs.emplace_back(random_hermite_pair(rh), random_hermite_pair(rh));
        return check_average_axioms<HermiteSpace>(HermiteSpace{}, pairs, kOmegas, 8);
    }();
    const double he = hrep.max_violation();

    Rng rc(104);
    const double cs = axiom_residual(CompactSetSpace{}, [&] {
        return std::make_pair(random_set(rc, 4, 2), random_set(rc, 4, 2));
    }, 2000);

    Rng rw(105);
    const double ws = axiom_residual(WassersteinSpace{}, [&] {
        return std::make_pair(random_measure(rw, 4), random_measure(rw, 4));
    }, n);

    const bool ok = eu <= 1e-9 && sp <= 1e-9 && he <= 1e-9 && cs <= 1e-9 && ws <= 1e-7;
    char note[256];
    std::snprintf(note, sizeof note,
                  "residuals euclid=%.2e sphere=%.2e hermite=%.2e "
                  "(sym=%.2e bound=%.2e, a known defect of the bezier average) "
                  "sets=%.2e wass=%.2e",
                  eu, sp, he, hrep.symmetry, hrep.boundedness, cs, ws);
    report(1, "average axioms on all five backends", ok, note);
}

// --- criterion 2: metric property on the intrinsic backends ----------------
void criterion_2() {
    Rng r1(111), r2(112), r3(113), r4(114);
    const double eu = metric_residual(EuclideanSpace{}, [&] {
        return std::make_pair(r1.gaussian_vec(3), r1.gaussian_vec(3));
    }, 2000);
    const double sp = metric_residual(SphereSpace{}, [&]() {
        for (;;) {
            Vec u = r2.unit_vec(3), v = r2.unit_vec(3);
            if (sphere_angle(u, v) < std::numbers::pi - 1e-3)
                return std::make_pair(u, v);
        }
    }, 2000);
    const double cs = metric_residual(CompactSetSpace{}, [&] {
        return std::make_pair(random_set(r3, 4, 2), random_set(r3, 4, 2));
    }, 1000);
    const double ws = metric_residual(WassersteinSpace{}, [&] {
        return std::make_pair(random_measure(r4, 4), random_measure(r4, 4));
    }, 2000);
    const bool ok = eu <= 1e-8 && sp <= 1e-8 && cs <= 1e-8 && ws <= 1e-8;
    char note[256];
    std::snprintf(note, sizeof note,
                  "residuals euclid=%.2e sphere=%.2e sets=%.2e wass=%.2e", eu, sp, cs,
                  ws);
    report(2, "metric property on intrinsic backends", ok, note);
}

// --- criterion 3: brute-force oracle for sets ------------------------------
void criterion_3() {
    Rng rng(121);
    bool ok = true;
    for (int i = 0; i < 500 && ok; ++i) {
        auto A = random_set(rng, 8, 2);
        auto B = random_set(rng, 8, 2);
        if (hausdorff_distance(A, B) != oracles::brute_hausdorff(A, B)) ok = false;
        auto got = set_metric_pairs(A, B);
        auto want = oracles::brute_metric_pairs(A, B);
        if (got.size() != want.size()) ok = false;
        for (const auto& p : want) {
            bool found = false;
            for (const auto& q : got)
                if (q.first == p.first && q.second == p.second) found = true;
            if (!found) ok = false;
        }
    }
    report(3, "set metric pairs and hausdorff match brute force exactly", ok);
}

// --- criterion 4: transport oracle -----------------------------------------
void criterion_4() {
    Rng rng(131);
    double worst_lp = 0.0, worst_geo = 0.0;
    for (int i = 0; i < 500; ++i) {
        const std::size_t n = static_cast<std::size_t>(rng.uniform_int(2, 6));
        std::vector<double> xs, ys;
        std::vector<Atom> ax, ay;
        for (std::size_t k = 0; k < n; ++k) {
            xs.push_back(2.0 * rng.uniform() - 1.0);
            ys.push_back(2.0 * rng.uniform() - 1.0);
            ax.push_back({xs.back(), 1.0 / static_cast<double>(n)});
            ay.push_back({ys.back(), 1.0 / static_cast<double>(n)});
        }
        auto mu = make_measure_normalized(ax);
        auto nu = make_measure_normalized(ay);
        worst_lp = std::max(worst_lp, std::abs(wasserstein_distance(mu, nu) -
                                               oracles::brute_w2_equal_mass(xs, ys)));
        const double d = wasserstein_distance(mu, nu);
        if (d > 1e-9) {
            for (double w : {0.25, 0.5, 0.75}) {
                auto mid = wasserstein_average(w, mu, nu);
                worst_geo = std::max(
                    worst_geo, std::abs(wasserstein_distance(mu, mid) - w * d) / d);
            }
        }
    }
    const bool ok = worst_lp <= 1e-9 && worst_geo <= 1e-8;
    char note[128];
    std::snprintf(note, sizeof note, "lp gap=%.2e geodesic rel=%.2e", worst_lp,
                  worst_geo);
    report(4, "w2 matches permutation oracle; averages are geodesic", ok, note);
}

// --- criterion 5: elementary contractivity one half ------------------------
void criterion_5() {
    double worst = 0.0;
    for (int s = 0; s < 100; ++s) {
        Rng rng(1000 + s);
        {
            EuclideanSpace eu;
            auto p = random_walk(rng, 8, 3, 1.0);
            auto g = uniform_grid(p.size(), 0.0, 1.0);
            auto rep = estimate_contractivity(make_elementary(eu), eu, p, g, 1, 2);
            worst = std::max(worst, std::abs(rep.mu[0] - 0.5));
        }
        {
            SphereSpace sp;
            auto p = sphere_walk(rng, 8, 0.4);
            auto g = uniform_grid(p.size(), 0.0, 1.0);
            auto rep = estimate_contractivity(make_elementary(sp), sp, p, g, 1, 2);
            worst = std::max(worst, std::abs(rep.mu[0] - 0.5));
        }
        {
            CompactSetSpace cs;
            auto p = set_tube(rng, 6, 3, 2, 0.5);
            auto g = uniform_grid(p.size(), 0.0, 1.0);
            auto rep = estimate_contractivity(make_elementary(cs), cs, p, g, 1, 2);
            worst = std::max(worst, std::abs(rep.mu[0] - 0.5));
        }
        {
            WassersteinSpace ws;
            auto p = measure_walk(rng, 6, 4, 0.3);
            auto g = uniform_grid(p.size(), 0.0, 1.0);
            auto rep = estimate_contractivity(make_elementary(ws), ws, p, g, 1, 2);
            worst = std::max(worst, std::abs(rep.mu[0] - 0.5));
        }
    }
    char note[64];
    std::snprintf(note, sizeof note, "max |mu - 1/2| = %.2e", worst);
    report(5, "elementary contractivity is one half on intrinsic backends",
           worst <= 1e-12, note);
}

// --- criterion 6: golden masks ---------------------------------------------
void criterion_6() {
    EuclideanSpace eu;
    const auto elem = export_masks(make_elementary(eu));
    const auto chaikin = export_masks(make_averaged(eu, 0.5));
    const auto lr2 = export_masks(make_lane_riesenfeld(eu, 2));
    const bool ok = elem.even == std::vector<double>{1.0} &&
                    elem.odd == std::vector<double>{0.5, 0.5} &&
                    chaikin.even == std::vector<double>{0.25, 0.75} &&
                    chaikin.odd == std::vector<double>{0.75, 0.25} &&
                    lr2.even == std::vector<double>{0.125, 0.75, 0.125} &&
                    lr2.odd == std::vector<double>{0.5, 0.5};
    report(6, "exported masks equal the classical stencils exactly", ok);
}

// --- criterion 7: locality -------------------------------------------------
void criterion_7() {
    EuclideanSpace eu;
    Rng rng(141);
    auto p = random_walk(rng, 8, 2, 1.0);
    p.boundary = Boundary::closed;
    auto g = uniform_grid(p.size(), 0.0, 1.0);
    const Vec bumped = add(p.elems[3], Vec{0.5, 0.0});
    auto elem = locality_check(make_elementary(eu), eu, p, g, 3, bumped, 4);
    auto chaikin = locality_check(make_averaged(eu, 0.5), eu, p, g, 3, bumped, 4);
    const bool ok = elem.within && chaikin.within && chaikin.spread == 2;
    char note[96];
    std::snprintf(note, sizeof note, "spreads elementary=%d chaikin=%d (bound 2)",
                  elem.spread, chaikin.spread);
    report(7, "perturbations stay within the locality range", ok, note);
}

// --- criterion 8: hermite proximity bound ----------------------------------
void criterion_8() {
    const double bound_c = 1.0 / (8.0 * std::cos(0.25) * std::cos(0.25));
    bool pointwise = true;
    std::vector<double> all_d, all_s;
    int idx = 0;
    for (double target : {0.2, 0.1, 0.05}) {
        for (int i = 0; i < 1000; ++i) {
            Rng rng(2000 + idx++);
            auto p = random_hermite_walk(rng, 8, 0.6 * target, 0.6 * target);
            HermiteSpace hs;
            const double d = delta(p, hs);
            auto naive = hermite_naive_refine(p);
            auto bez = hermite_bezier_refine(p);
            double sup = 0.0;
            for (std::size_t j = 0; j < naive.size(); ++j)
                sup = std::max(sup, hermite_distance(naive.elems[j], bez.elems[j]));
            if (sup > bound_c * d * d) pointwise = false;
            all_d.push_back(d);
            all_s.push_back(sup);
        }
    }
    const auto fit = detail::loglog_fit(all_d, all_s, 1e-15);
    const bool ok = pointwise && fit.slope >= 1.9;
    char note[96];
    std::snprintf(note, sizeof note, "pointwise=%s exponent=%.3f",
                  pointwise ? "yes" : "no", fit.slope);
    report(8, "naive vs bezier hermite proximity is quadratic with the lemma constant",
           ok, note);
}

// --- criterion 9: circle preservation --------------------------------------
void criterion_9() {
    auto seq = circle_hermite(8);
    double worst_r = 0.0;
    for (int k = 0; k < 5; ++k) {
        seq = hermite_bezier_refine(seq);
        for (const auto& e : seq.elems)
            worst_r = std::max(worst_r, std::abs(norm(e.p) - 1.0));
    }
    auto p = circle_hermite(8);
    auto q = hermite_bezier_refine(p);
    double worst_odd = 0.0;
    for (std::size_t j = 0; j < p.size(); ++j) {
        const auto& a = p.elems[j];
        const auto& b = p.elems[(j + 1) % p.size()];
        const auto avg = hermite_average(0.5, a, b, hermite_alpha(a, b) / 3.0);
        worst_odd = std::max(worst_odd, euclid_dist(q.elems[2 * j + 1].p, avg.p));
        worst_odd = std::max(worst_odd, euclid_dist(q.elems[2 * j + 1].v, avg.v));
    }
    const bool ok = worst_r <= 1e-9 && worst_odd <= 1e-12;
    char note[96];
    std::snprintf(note, sizeof note, "radius drift=%.2e odd-rule gap=%.2e", worst_r,
                  worst_odd);
    report(9, "bezier refinement preserves the circle and the half-average rule", ok,
           note);
}

// --- criterion 10: domain closure ------------------------------------------
void criterion_10() {
    bool ok = true;
    for (int i = 0; i < 1000; ++i) {
        Rng rng(3000 + i);
        auto p = random_hermite_walk(rng, 8, 0.9, 0.9);
        auto gaps = [](const ElementSequence<HermitePair>& s) {
            double gp = 0.0, ga = 0.0;
            for (std::size_t j = 0; j + 1 < s.size(); ++j) {
                gp = std::max(gp, euclid_dist(s.elems[j].p, s.elems[j + 1].p));
                ga = std::max(ga, sphere_angle(s.elems[j].v, s.elems[j + 1].v));
            }
            return std::make_pair(gp, ga);
        };
        auto [gp0, ga0] = gaps(p);
        if (gp0 >= 1.0 || ga0 >= 1.0) continue;  // generator keeps both below 1
        auto [gp1, ga1] = gaps(hermite_bezier_refine(p));
        if (gp1 >= 1.0 || ga1 >= 1.0) ok = false;
    }
    report(10, "one bezier step preserves gaps below one", ok);
}

// --- criterion 11: second-type proximity on the sphere ---------------------
void criterion_11() {
    SphereSpace sp;
    EuclideanSpace eu;
    RefineFn<Vec> r1 = [&sp](const ElementSequence<Vec>& p) {
        return averaged_refine(p, sp, 0.5);
    };
    RefineFn<Vec> r2 = [&eu](const ElementSequence<Vec>& p) {
        return averaged_refine(p, eu, 0.5);
    };
    DistFn<Vec> d = [](const Vec& a, const Vec& b) { return euclid_dist(a, b); };
    Rng rng(151);
    auto p = sphere_walk(rng, 10, 0.4);
    auto rep = check_proximity_type2<Vec>(r1, r2, d, p, 1, 8, 2);

    Rng rng_half(151);
    auto p_half = sphere_walk(rng_half, 10, 0.2);
    auto rep_half = check_proximity_type2<Vec>(r1, r2, d, p_half, 1, 8, 2);
    const double ratio = rep_half.e[0] / rep.e[0];

    const bool ok = rep.eta_hat <= 0.30 && rep.m_hat >= 1 && ratio >= 0.25 * 0.8 &&
                    ratio <= 0.25 * 1.2;
    char note[96];
    std::snprintf(note, sizeof note, "eta=%.3f m=%d e0 ratio=%.3f", rep.eta_hat,
                  rep.m_hat, ratio);
    report(11, "geodesic vs linear corner cutting has second-type proximity", ok, note);
}

// --- criterion 12: first-order diagnostic ----------------------------------
void criterion_12() {
    SphereSpace sp;
    Rng rng(161);
    auto ps = sphere_walk(rng, 10, 0.4);
    auto gs = uniform_grid(ps.size(), 0.0, 1.0);
    auto run = subdivide(ps, gs, make_averaged(sp, 0.5), 7);
    auto tr = divided_differences(run);
    double worst = 0.0;
    for (std::size_t k = 2; k + 1 < tr.deltas.size(); ++k)
        worst = std::max(worst, tr.deltas[k + 1] / tr.deltas[k]);

    EuclideanSpace eu;
    ElementSequence<Vec> impulse;
    impulse.boundary = Boundary::closed;
    impulse.elems = {{0.0}, {1.0}, {0.0}, {0.0}, {1.0}, {0.0}};
    auto ge = uniform_grid(impulse.size(), 0.0, 1.0);
    auto erun = subdivide(impulse, ge, make_elementary(eu), 6);
    auto ec1 = c1_diagnostic(erun, 1);

    const bool ok = worst <= 0.75 && std::abs(ec1.mu[0] - 1.0) <= 1e-12;
    char note[96];
    std::snprintf(note, sizeof note, "sphere mu_delta=%.3f elementary mu_delta=%.3f",
                  worst, ec1.mu[0]);
    report(12, "divided differences contract for corner cutting but not elementary",
           ok, note);
}

// --- criterion 13: approximation bound -------------------------------------
void criterion_13() {
    SphereSpace sp;
    CurveSampler<Vec> gamma;
    gamma.eval = [](double t) { return Vec{std::cos(t), std::sin(t), 0.0}; };
    gamma.t0 = 0.0;
    gamma.t1 = 2.0 * std::numbers::pi;
    gamma.lipschitz = 1.0;
    gamma.closed = true;
    gamma.lipschitz_verified = true;
    const std::vector<double> hs{std::numbers::pi / 8, std::numbers::pi / 16,
                                 std::numbers::pi / 32};
    auto rep = approximation_experiment(gamma, sp, make_elementary(sp), hs, 8, 513);
    bool within = true, all_tiny = true;
    for (const auto& row : rep.rows) {
        if (!row.within) within = false;
        if (row.error > 1e-12) all_tiny = false;
    }
    bool ratios_ok = true;
    for (std::size_t i = 0; i + 1 < rep.rows.size(); ++i)
        if (!(rep.rows[i + 1].error <= 0.6 * rep.rows[i].error)) ratios_ok = false;
    // the scheme reproduces great circles, so all errors sit at rounding
    // level and the ratio clause is vacuous
    const bool ok = within && (ratios_ok || all_tiny);
    char note[96];
    std::snprintf(note, sizeof note, "max error=%.2e (bounds 2h)",
                  rep.rows.empty() ? 0.0 : rep.rows.front().error);
    report(13, "elementary sphere scheme meets the 2*L*h approximation bound", ok,
           note);
}

// --- criterion 14: cauchy decay --------------------------------------------
void criterion_14() {
    bool ok = true;
    std::string detail;

    auto check_decay = [&](const char* name, auto space, auto scheme, auto p,
                           int levels, std::size_t samples) {
        auto g = uniform_grid(p.size(), 0.0, 1.0);
        auto run = subdivide(p, g, scheme, levels);
        auto crep = estimate_contractivity(scheme, space, p, g, 1, 2);
        const double limit = crep.mu[0] + 0.1;
        auto tr = cauchy_trace(run, space, samples);
        for (std::size_t k = 2; k + 1 < tr.d.size(); ++k) {
            if (tr.d[k] <= 1e-13) continue;
            if (tr.d[k + 1] / tr.d[k] > limit) {
                ok = false;
                detail += std::string(name) + " ";
            }
        }
    };

    {
        EuclideanSpace eu;
        Rng rng(171);
        check_decay("chaikin", eu, make_averaged(eu, 0.5), random_walk(rng, 8, 2, 1.0),
                    6, 257);
    }
    {
        SphereSpace sp;
        Rng rng(172);
        check_decay("sphere", sp, make_elementary(sp), sphere_walk(rng, 8, 0.5), 6,
                    257);
    }
    {
        WassersteinSpace ws;
        Rng rng(173);
        check_decay("wasserstein", ws, make_elementary(ws), measure_walk(rng, 6, 3, 0.3),
                    5, 65);
    }
    {
        CompactSetSpace cs;
        Rng rng(174);
        check_decay("sets", cs, make_elementary(cs), set_tube(rng, 5, 2, 2, 0.5), 4,
                    33);
    }

    // piecewise-linear refinement of integer data on a dyadic grid is exact
    EuclideanSpace eu;
    ElementSequence<Vec> p;
    p.boundary = Boundary::closed;
    p.elems = {{0.0}, {1.0}, {0.0}, {2.0}, {1.0}, {3.0}, {0.0}, {1.0}};
    auto g = uniform_grid(p.size(), 0.0, 1.0);
    auto run = subdivide(p, g, make_elementary(eu), 4);
    auto tr = cauchy_trace(run, eu, 1025);
    bool zeros = true;
    for (double d : tr.d)
        if (d != 0.0) zeros = false;
    if (!zeros) {
        ok = false;
        detail += "piecewise-linear ";
    }
    report(14, "interpolant gaps decay at the contractivity rate", ok, detail);
}

// --- criterion 15: determinism ---------------------------------------------
void criterion_15() {
    auto run_once = []() {
        json out;
        Rng rng(181);
        EuclideanSpace eu;
        auto p = random_walk(rng, 8, 2, 1.0);
        auto g = uniform_grid(p.size(), 0.0, 1.0);
        out["contractivity"] =
            to_json(estimate_contractivity(make_averaged(eu, 0.5), eu, p, g, 2, 4));
        SphereSpace sp;
        Rng rs(182);
        auto ps = sphere_walk(rs, 8, 0.4);
        auto gs = uniform_grid(ps.size(), 0.0, 1.0);
        auto run = subdivide(ps, gs, make_elementary(sp), 4);
        out["cauchy"] = to_json(cauchy_trace(run, sp, 65));
        WassersteinSpace ws;
        Rng rw(183);
        auto pm = measure_walk(rw, 6, 3, 0.2);
        out["measures"] = to_json(MeasuresDoc{pm});
        return dump_canonical(out);
    };
    const std::string a = run_once();
    const std::string b = run_once();
    report(15, "seeded runs serialize byte-identically", a == b);
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    criterion_11();
    criterion_12();
    criterion_13();
    criterion_14();
    criterion_15();
    if (g_failures > 0) {
        std::printf("%d criterion(s) failed\n", g_failures);
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}
