// Experiment runner: loads declarative JSON configs, runs subdivision and
// analyses over the selected space backend, and emits machine-readable
// result bundles, data files, mask tables, and schemas.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "metsub/generators.hpp"
#include "metsub/io.hpp"
#include "metsub/space_checks.hpp"
#include "metsub/spaces/euclidean.hpp"
#include "metsub/spaces/sphere.hpp"

namespace {

using namespace metsub;

constexpr int kArtifactVersion = 1;

struct Overrides {
    std::optional<std::uint64_t> seed;
    std::optional<int> levels;
    std::optional<int> samples;
};

std::uint64_t require_seed(const json& cfg, const Overrides& ov) {
    if (ov.seed) return *ov.seed;
    if (cfg.contains("seed")) return cfg["seed"].get<std::uint64_t>();
    throw invalid_input("config: generators require a seed");
}

// ---- scheme construction --------------------------------------------------

template <SpaceBackend S>
Scheme<typename S::element_type> build_scheme(const S& space, const json& scfg) {
    const std::string id = scfg.at("id").get<std::string>();
    if (id == "elementary") return make_elementary(space);
    if (id == "averaged") return make_averaged(space, scfg.value("omega", 0.5));
    if (id == "lane_riesenfeld")
        return make_lane_riesenfeld(space, scfg.value("rounds", 1));
    if constexpr (std::is_same_v<typename S::element_type, HermitePair>) {
        if (id == "hermite_naive") return make_hermite_naive();
        if (id == "hermite_bezier") return make_hermite_bezier();
    }
    throw invalid_input("config: unknown scheme id: " + id);
}

// ---- generator dispatch (scale multiplies the step-like parameter) --------

ElementSequence<Vec> generate_vec(const json& g, std::uint64_t seed, double scl) {
    Rng rng(seed);
    const std::string id = g.at("id").get<std::string>();
    if (id == "random_walk")
        return random_walk(rng, g.value("count", std::size_t{10}),
                           g.value("dim", std::size_t{2}),
                           scl * g.value("step", 1.0));
    if (id == "sphere_walk")
        return sphere_walk(rng, g.value("count", std::size_t{10}),
                           scl * g.value("step", 0.3));
    if (id == "great_circle") return great_circle_samples(scl * g.value("h", 0.4));
    throw invalid_input("config: unknown point generator: " + id);
}

ElementSequence<HermitePair> generate_hermite(const json& g, std::uint64_t seed,
                                              double scl) {
    Rng rng(seed);
    const std::string id = g.at("id").get<std::string>();
    if (id == "circle")
        return circle_hermite(g.value("count", std::size_t{8}), g.value("closed", true));
    if (id == "hermite_walk")
        return random_hermite_walk(rng, g.value("count", std::size_t{10}),
                                   scl * g.value("gap", 0.1),
                                   scl * g.value("angle", 0.1));
    throw invalid_input("config: unknown hermite generator: " + id);
}

ElementSequence<FiniteSet> generate_sets(const json& g, std::uint64_t seed,
                                         double scl) {
    Rng rng(seed);
    const std::string id = g.at("id").get<std::string>();
    if (id == "set_tube")
        return set_tube(rng, g.value("count", std::size_t{8}),
                        g.value("set_size", std::size_t{3}),
                        g.value("dim", std::size_t{2}), scl * g.value("step", 0.5));
    throw invalid_input("config: unknown set generator: " + id);
}

ElementSequence<Measure1D> generate_measures(const json& g, std::uint64_t seed,
                                             double scl) {
    Rng rng(seed);
    const std::string id = g.at("id").get<std::string>();
    if (id == "measure_walk")
        return measure_walk(rng, g.value("count", std::size_t{8}),
                            g.value("atoms", std::size_t{4}),
                            scl * g.value("step", 0.2));
    throw invalid_input("config: unknown measure generator: " + id);
}

// ---- data loading ---------------------------------------------------------

template <class E>
struct DataTraits;

template <>
struct DataTraits<Vec> {
    static ElementSequence<Vec> from_doc(const json& doc) {
        return points_from_json(doc).seq;
    }
    static json to_doc(const ElementSequence<Vec>& seq, const std::string& space_id) {
        PointsDoc d{space_id, seq.size() ? seq.elems.front().size() : 0, seq};
        return to_json(d);
    }
    static ElementSequence<Vec> generate(const json& g, std::uint64_t seed, double s) {
        return generate_vec(g, seed, s);
    }
};

template <>
struct DataTraits<HermitePair> {
    static ElementSequence<HermitePair> from_doc(const json& doc) {
        return hermite_from_json(doc).seq;
    }
    static json to_doc(const ElementSequence<HermitePair>& seq, const std::string&) {
        return to_json(HermiteDoc{seq});
    }
    static ElementSequence<HermitePair> generate(const json& g, std::uint64_t seed,
                                                 double s) {
        return generate_hermite(g, seed, s);
    }
};

template <>
struct DataTraits<FiniteSet> {
    static ElementSequence<FiniteSet> from_doc(const json& doc) {
        return sets_from_json(doc).seq;
    }
    static json to_doc(const ElementSequence<FiniteSet>& seq, const std::string&) {
        return to_json(SetsDoc{seq});
    }
    static ElementSequence<FiniteSet> generate(const json& g, std::uint64_t seed,
                                               double s) {
        return generate_sets(g, seed, s);
    }
};

template <>
struct DataTraits<Measure1D> {
    static ElementSequence<Measure1D> from_doc(const json& doc) {
        return measures_from_json(doc).seq;
    }
    static json to_doc(const ElementSequence<Measure1D>& seq, const std::string&) {
        return to_json(MeasuresDoc{seq});
    }
    static ElementSequence<Measure1D> generate(const json& g, std::uint64_t seed,
                                               double s) {
        return generate_measures(g, seed, s);
    }
};

template <class E>
ElementSequence<E> load_data(const json& cfg, const Overrides& ov, double scale = 1.0) {
    const json& data = cfg.at("data");
    if (data.contains("inline")) return DataTraits<E>::from_doc(data["inline"]);
    if (data.contains("file"))
        return DataTraits<E>::from_doc(parse_json_text(
            read_text_file(data["file"].get<std::string>()), "data file"));
    if (data.contains("generator"))
        return DataTraits<E>::generate(data["generator"], require_seed(cfg, ov), scale);
    throw invalid_input("config: data must be inline, file, or generator");
}

// ---- analyses -------------------------------------------------------------

template <SpaceBackend S>
json run_one_analysis(const S& space, const json& cfg, const json& acfg,
                      const Overrides& ov) {
    using E = typename S::element_type;
    const std::string kind = acfg.at("kind").get<std::string>();
    const auto scheme = build_scheme(space, cfg.at("scheme"));
    const auto p = load_data<E>(cfg, ov);
    const int levels = ov.levels ? *ov.levels : cfg.value("levels", 4);
    const int samples = ov.samples ? *ov.samples : acfg.value("samples", 257);
    const json gridcfg = cfg.value("grid", json::object());
    const auto grid = uniform_grid(p.size(), gridcfg.value("t0", 0.0),
                                   gridcfg.value("h", 1.0), scheme.rule);

    if (kind == "contractivity") {
        const int l_max = acfg.value("L_max", 4);
        const int k = std::max(levels, 2 * l_max);
        return to_json(estimate_contractivity(scheme, space, p, grid, l_max, k));
    }
    if (kind == "displacement")
        return to_json(estimate_displacement(scheme, space, p, grid, levels));
    if (kind == "cauchy") {
        const auto run = subdivide(p, grid, scheme, levels);
        return to_json(cauchy_trace(run, space, static_cast<std::size_t>(samples)));
    }
    if (kind == "divided_diff" || kind == "c1") {
        if constexpr (std::is_same_v<E, Vec>) {
            const auto run = subdivide(p, grid, scheme, levels);
            if (kind == "divided_diff")
                return to_json(
                    divided_differences(run, static_cast<std::size_t>(samples)));
            return to_json(c1_diagnostic(run, acfg.value("L_max", 4)));
        } else {
            throw invalid_input(
                "analysis " + kind + ": requires a Euclidean-embedded backend");
        }
    }
    if (kind == "locality") {
        const std::size_t j = acfg.value("index", p.size() / 2);
        if (j >= p.size()) throw invalid_input("locality: index out of range");
        // perturb toward the next element; large enough to propagate
        const E perturbed =
            space.average(0.25, p.elems[j], p.elems[(j + 1) % p.size()]);
        return to_json(locality_check(scheme, space, p, grid, j, perturbed, levels));
    }
    if (kind == "proximity1") {
        const auto other = build_scheme(space, acfg.at("other"));
        if (!cfg.at("data").contains("generator"))
            throw invalid_input("proximity1: needs a generator data source to scale");
        const std::vector<double> scales =
            acfg.value("scales", std::vector<double>{1.0, 0.5, 0.25, 0.125});
        std::function<ElementSequence<E>(double)> family = [&](double s) {
            return load_data<E>(cfg, ov, s);
        };
        return to_json(check_proximity_type1(scheme, other, space, family, scales,
                                             acfg.value("mu", 0.5)));
    }
    if (kind == "proximity2") {
        RefineFn<E> r1 = scheme.refine;
        RefineFn<E> r2;
        DistFn<E> dist = [&space](const E& a, const E& b) {
            return space.distance(a, b);
        };
        if (acfg.contains("other")) {
            r2 = build_scheme(space, acfg["other"]).refine;
        } else if (acfg.contains("other_space")) {
            if constexpr (std::is_same_v<E, Vec>) {
                const std::string oid = acfg["other_space"].get<std::string>();
                if (oid != "euclidean")
                    throw invalid_input("proximity2: other_space must be euclidean");
                EuclideanSpace eu;
                r2 = build_scheme(eu, cfg.at("scheme")).refine;
                dist = [](const Vec& a, const Vec& b) { return euclid_dist(a, b); };
            } else {
                throw invalid_input("proximity2: other_space needs point data");
            }
        } else {
            throw invalid_input("proximity2: needs other or other_space");
        }
        return to_json(check_proximity_type2<E>(r1, r2, dist, p,
                                                acfg.value("L", 1), levels,
                                                acfg.value("burn_in", 2)));
    }
    if (kind == "approx_order") {
        const std::vector<double> hs = acfg.at("hs").get<std::vector<double>>();
        const int k = acfg.value("K", 8);
        if constexpr (std::is_same_v<E, Vec>) {
            const json& g = cfg.at("data").at("generator");
            if (g.at("id").get<std::string>() == "great_circle") {
                CurveSampler<Vec> gamma;
                gamma.eval = [](double t) {
                    return Vec{std::cos(t), std::sin(t), 0.0};
                };
                gamma.t0 = 0.0;
                gamma.t1 = 2.0 * std::numbers::pi;
                gamma.lipschitz = 1.0;
                gamma.closed = true;
                gamma.lipschitz_verified = true;
                return to_json(approximation_experiment(
                    gamma, space, scheme, hs, k, static_cast<std::size_t>(samples)));
            }
            throw invalid_input("approx_order: unsupported curve generator");
        } else {
            throw invalid_input("approx_order: requires point data");
        }
    }
    throw invalid_input("config: unknown analysis kind: " + kind);
}

template <SpaceBackend S>
json run_bundle(const S& space, const std::string& space_id, const json& cfg,
                const std::string& raw, const Overrides& ov, bool dump_levels) {
    using E = typename S::element_type;
    json bundle;
    bundle["artifact_version"] = kArtifactVersion;
    bundle["config_echo"] = raw;
    const auto scheme = build_scheme(space, cfg.at("scheme"));
    const auto p = load_data<E>(cfg, ov);
    const int levels = ov.levels ? *ov.levels : cfg.value("levels", 3);
    const json gridcfg = cfg.value("grid", json::object());
    const auto grid = uniform_grid(p.size(), gridcfg.value("t0", 0.0),
                                   gridcfg.value("h", 1.0), scheme.rule);
    if (dump_levels || cfg.value("dump_levels", false)) {
        const auto run = subdivide(p, grid, scheme, levels);
        json lvls = json::array();
        for (const auto& lvl : run.levels)
            lvls.push_back({{"knots", lvl.grid.knots},
                            {"points", DataTraits<E>::to_doc(lvl.points, space_id)}});
        bundle["levels"] = lvls;
    }
    json reports = json::object();
    for (const auto& acfg : cfg.value("analyses", json::array())) {
        const std::string kind = acfg.at("kind").get<std::string>();
        reports[kind] = run_one_analysis(space, cfg, acfg, ov);
    }
    bundle["reports"] = reports;
    return bundle;
}

json dispatch_space(const json& cfg, const std::string& raw, const Overrides& ov,
                    bool dump_levels) {
    const json& sp = cfg.at("space");
    const std::string id = sp.at("id").get<std::string>();
    if (id == "euclidean") return run_bundle(EuclideanSpace{}, id, cfg, raw, ov, dump_levels);
    if (id == "sphere") return run_bundle(SphereSpace{}, id, cfg, raw, ov, dump_levels);
    if (id == "hermite") {
        HermiteSpace hs;
        hs.fixed_c = sp.value("c", -1.0);
        return run_bundle(hs, id, cfg, raw, ov, dump_levels);
    }
    if (id == "set") return run_bundle(CompactSetSpace{}, id, cfg, raw, ov, dump_levels);
    if (id == "measure") {
        WassersteinSpace ws;
        ws.p = sp.value("p", 2.0);
        return run_bundle(ws, id, cfg, raw, ov, dump_levels);
    }
    throw invalid_input("config: unknown space id: " + id);
}

void write_csv_traces(const json& bundle, const std::filesystem::path& dir) {
    const auto& reports = bundle["reports"];
    auto grab = [](const json& arr) {
        return arr.get<std::vector<double>>();
    };
    if (reports.contains("contractivity"))
        write_text_file((dir / "delta_trace.csv").string(),
                        csv_trace("delta", grab(reports["contractivity"]["delta_trace"])));
    if (reports.contains("proximity2"))
        write_text_file((dir / "e_trace.csv").string(),
                        csv_trace("e", grab(reports["proximity2"]["e"])));
    if (reports.contains("cauchy"))
        write_text_file((dir / "cauchy_d.csv").string(),
                        csv_trace("d", grab(reports["cauchy"]["d"])));
}

void emit_bundle(const json& bundle, const std::string& output) {
    if (output.empty()) {
        std::cout << dump_canonical(bundle);
        return;
    }
    std::filesystem::create_directories(output);
    const std::filesystem::path dir(output);
    write_text_file((dir / "bundle.json").string(), dump_canonical(bundle));
    write_csv_traces(bundle, dir);
}

json generate_data_doc(const std::string& id, std::uint64_t seed, const json& params) {
    json g = params;
    g["id"] = id;
    if (id == "random_walk" || id == "sphere_walk" || id == "great_circle") {
        const auto seq = generate_vec(g, seed, 1.0);
        const std::string space = (id == "random_walk") ? "euclidean" : "sphere";
        json doc = DataTraits<Vec>::to_doc(seq, space);
        if (id == "great_circle") doc["meta"] = {{"lipschitz", 1.0}};
        return doc;
    }
    if (id == "circle" || id == "hermite_walk") {
        json doc = DataTraits<HermitePair>::to_doc(generate_hermite(g, seed, 1.0), "");
        if (id == "circle") doc["meta"] = {{"lipschitz", std::sqrt(2.0)}};
        return doc;
    }
    if (id == "set_tube")
        return DataTraits<FiniteSet>::to_doc(generate_sets(g, seed, 1.0), "");
    if (id == "measure_walk")
        return DataTraits<Measure1D>::to_doc(generate_measures(g, seed, 1.0), "");
    throw invalid_input("generate: unknown generator id: " + id);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"subdivision schemes over metric spaces"};
    app.require_subcommand(1);

    std::string config_path, output, analysis_kind, generator_id, scheme_id, schema_name;
    Overrides ov;
    std::uint64_t seed_flag = 0;
    int levels_flag = 0, samples_flag = 0;
    double omega = 0.5, gen_step = 0.0, gen_h = 0.0, gen_gap = 0.0, gen_angle = 0.0;
    int rounds = 1;
    std::size_t impulse_len = 32, gen_count = 0, gen_dim = 0, gen_atoms = 0,
                gen_set_size = 0;
    bool gen_closed = false;

    auto add_common = [&](CLI::App* cmd, bool config_required) {
        auto* c = cmd->add_option("--config", config_path, "config file (JSON)");
        if (config_required) c->required();
        cmd->add_option("--output", output, "output directory");
        cmd->add_option("--seed", seed_flag, "seed override")
            ->each([&](const std::string&) { ov.seed = seed_flag; });
        cmd->add_option("--levels", levels_flag, "refinement levels override")
            ->each([&](const std::string&) { ov.levels = levels_flag; });
        cmd->add_option("--samples", samples_flag, "sampling density override")
            ->each([&](const std::string&) { ov.samples = samples_flag; });
    };

    auto* cmd_subdivide = app.add_subcommand("subdivide", "run refinement levels");
    add_common(cmd_subdivide, true);

    auto* cmd_analyze = app.add_subcommand("analyze", "run one analysis");
    cmd_analyze
        ->add_option("kind", analysis_kind,
                     "contractivity|displacement|proximity1|proximity2|cauchy|"
                     "divided-diff|approx-order|locality")
        ->required();
    add_common(cmd_analyze, true);

    auto* cmd_generate = app.add_subcommand("generate", "write a data file");
    cmd_generate->add_option("id", generator_id, "generator id")->required();
    cmd_generate->add_option("--seed", seed_flag, "seed")->required();
    cmd_generate->add_option("--output", output, "output file path");
    cmd_generate->add_option("--count", gen_count, "sequence length");
    cmd_generate->add_option("--dim", gen_dim, "ambient dimension");
    cmd_generate->add_option("--step", gen_step, "step size");
    cmd_generate->add_option("--spacing", gen_h, "arc-length sampling gap");
    cmd_generate->add_option("--gap", gen_gap, "point gap scale");
    cmd_generate->add_option("--angle", gen_angle, "tangent turn scale");
    cmd_generate->add_option("--atoms", gen_atoms, "atoms per measure");
    cmd_generate->add_option("--set-size", gen_set_size, "points per set");
    cmd_generate->add_flag("--closed", gen_closed, "closed sequence");

    auto* cmd_masks = app.add_subcommand("masks", "print even/odd stencils");
    cmd_masks->add_option("scheme", scheme_id, "elementary|averaged|lane_riesenfeld")
        ->required();
    cmd_masks->add_option("--omega", omega, "corner-cutting weight");
    cmd_masks->add_option("--rounds", rounds, "smoothing rounds");
    cmd_masks->add_option("--length", impulse_len, "impulse length");
    cmd_masks->add_option("--output", output, "output file path");

    auto* cmd_schema = app.add_subcommand("schema", "print JSON schemas");
    cmd_schema->add_option("name", schema_name, "specific schema name");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (cmd_subdivide->parsed() || cmd_analyze->parsed()) {
            const std::string raw = read_text_file(config_path);
            json cfg = parse_json_text(raw, "config");
            if (cmd_analyze->parsed()) {
                std::string kind = analysis_kind;
                for (auto& ch : kind)
                    if (ch == '-') ch = '_';
                if (kind == "divided_diff" || kind == "approx_order" ||
                    kind == "contractivity" || kind == "displacement" ||
                    kind == "proximity1" || kind == "proximity2" ||
                    kind == "cauchy" || kind == "locality" || kind == "c1") {
                    json selected = json::array();
                    for (const auto& a : cfg.value("analyses", json::array()))
                        if (a.at("kind").get<std::string>() == kind) selected.push_back(a);
                    if (selected.empty()) selected.push_back({{"kind", kind}});
                    cfg["analyses"] = selected;
                } else {
                    throw invalid_input("analyze: unknown kind: " + analysis_kind);
                }
                emit_bundle(dispatch_space(cfg, raw, ov, false), output);
            } else {
                emit_bundle(dispatch_space(cfg, raw, ov, true), output);
            }
        } else if (cmd_generate->parsed()) {
            json params = json::object();
            if (gen_count) params["count"] = gen_count;
            if (gen_dim) params["dim"] = gen_dim;
            if (gen_step > 0.0) params["step"] = gen_step;
            if (gen_h > 0.0) params["h"] = gen_h;
            if (gen_gap > 0.0) params["gap"] = gen_gap;
            if (gen_angle > 0.0) params["angle"] = gen_angle;
            if (gen_atoms) params["atoms"] = gen_atoms;
            if (gen_set_size) params["set_size"] = gen_set_size;
            if (cmd_generate->count("--closed")) params["closed"] = gen_closed;
            const json doc = generate_data_doc(generator_id, seed_flag, params);
            if (output.empty())
                std::cout << dump_canonical(doc);
            else
                write_text_file(output, dump_canonical(doc));
        } else if (cmd_masks->parsed()) {
            EuclideanSpace eu;
            Scheme<Vec> s;
            if (scheme_id == "elementary")
                s = make_elementary(eu);
            else if (scheme_id == "averaged")
                s = make_averaged(eu, omega);
            else if (scheme_id == "lane_riesenfeld")
                s = make_lane_riesenfeld(eu, rounds);
            else
                throw invalid_input("masks: unknown scheme id: " + scheme_id);
            const json table = to_json(export_masks(s, impulse_len));
            if (output.empty())
                std::cout << dump_canonical(table);
            else
                write_text_file(output, dump_canonical(table));
        } else if (cmd_schema->parsed()) {
            json all = {{"data", data_schemas()}, {"reports", report_schemas()}};
            if (!schema_name.empty()) {
                if (all["data"].contains(schema_name))
                    std::cout << dump_canonical(all["data"][schema_name]);
                else if (all["reports"].contains(schema_name))
                    std::cout << dump_canonical(all["reports"][schema_name]);
                else
                    throw invalid_input("schema: unknown name: " + schema_name);
            } else {
                std::cout << dump_canonical(all);
            }
        }
    } catch (const numerical_error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const invalid_input& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const contract_error& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const json::exception& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
