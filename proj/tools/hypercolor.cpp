#include <hypercolor/experiment.hpp>
#include <hypercolor/finisher.hpp>
#include <hypercolor/generators.hpp>
#include <hypercolor/json_io.hpp>
#include <hypercolor/nibble.hpp>
#include <hypercolor/params.hpp>
#include <hypercolor/reduction.hpp>
#include <hypercolor/triangles.hpp>
#include <hypercolor/verify.hpp>

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numeric>
#include <set>
#include <sstream>

using namespace hypercolor;

namespace
{
    struct PracticalFlag
    {
        std::size_t colors = 0;
        std::size_t iterations = 0;
        double theta = 0;
        double p_hat = 0;
    };

    auto parse_practical(const std::string & text) -> PracticalFlag
    {
        PracticalFlag f;
        std::istringstream in(text);
        char c1 = 0, c2 = 0, c3 = 0;
        if (! (in >> f.colors >> c1 >> f.iterations >> c2 >> f.theta >> c3 >> f.p_hat) || c1 != ',' || c2 != ',' || c3 != ','
                || ! (in >> std::ws).eof())
            throw InputError("--practical expects C,T,theta,phat");
        return f;
    }

    auto write_text(const std::string & path, const std::string & text) -> void
    {
        std::ofstream out(path);
        if (! out)
            throw InputError("cannot write " + path);
        out << text;
    }

    auto emit(const json & j) -> void
    {
        std::cout << j.dump(2) << '\n';
    }

    auto load_lists(const std::string & path, std::size_t palette, std::size_t n) -> std::optional<ListAssignment>
    {
        if (! path.empty()) {
            auto lists = parse_lists(read_text_file(path));
            if (lists.vertex_count() != n)
                throw InputError("list file covers " + std::to_string(lists.vertex_count()) + " vertices, hypergraph has "
                    + std::to_string(n));
            return lists;
        }
        if (palette)
            return ListAssignment::uniform(n, palette);
        return std::nullopt;
    }

    struct GenArgs
    {
        std::string kind;
        std::size_t n = 0, edges3 = 0, delta = 0, edges2 = 0, max_stall = 0;
        std::uint64_t seed = 0;
        std::string out;
        bool json = false;
    };

    auto cmd_gen(const GenArgs & a) -> int
    {
        GeneratorSpec spec{parse_generator_kind(a.kind), a.n, a.edges3, a.delta, a.edges2, a.seed, a.max_stall};
        auto h = generate(spec);
        if (! a.out.empty())
            write_hypergraph_file(h, a.out);
        if (a.json)
            emit(json{{"kind", a.kind}, {"n", h.vertex_count()}, {"edges2", h.edges2().size()},
                {"edges3", h.edges3().size()}, {"profile", h.profile()}, {"seed", a.seed},
                {"out", a.out.empty() ? json(nullptr) : json(a.out)}});
        else if (a.out.empty())
            std::cout << serialize_hypergraph(h);
        else
            std::cerr << "wrote " << a.out << ": n=" << h.vertex_count() << " m2=" << h.edges2().size()
                      << " m3=" << h.edges3().size() << " delta=" << h.profile().delta3 << '\n';
        return 0;
    }

    struct ColorArgs
    {
        std::string file, lists, q_mode = "exact", practical, trace, finisher = "mt", out;
        std::size_t palette = 0, budget = 1'000'000, exact_limit = 20, mc_samples = 100000;
        std::uint64_t seed = 0;
        double k = PracticalChoice{}.k;
        unsigned workers = default_workers();
        bool debug = false, unsafe = false, json = false;
    };

    auto cmd_color(const ColorArgs & a) -> int
    {
        auto h = read_hypergraph_file(a.file);
        auto n = h.vertex_count();
        auto profile = h.profile();
        auto lists = load_lists(a.lists, a.palette, n);

        PracticalChoice choice;
        choice.k = a.k;
        if (! a.practical.empty()) {
            auto f = parse_practical(a.practical);
            choice.colors = f.colors;
            choice.iterations = f.iterations;
            choice.theta = f.theta;
            choice.p_hat = f.p_hat;
        }
        if (lists) {
            auto size = lists->uniform_size();
            if (n > 0 && size == 0)
                throw InputError("lists must all have the same size");
            if (choice.colors && n > 0 && choice.colors != size)
                throw InputError("--practical C disagrees with the list size " + std::to_string(size));
            if (n > 0)
                choice.colors = size;
        }
        auto params = practical_parameters(choice, profile);
        auto np = NibbleParams::from(params);
        if (! lists)
            lists = ListAssignment::uniform(n, np.colors);

        EngineOptions options;
        options.q_mode = parse_survival_mode(a.q_mode);
        options.exact_component_limit = a.exact_limit;
        options.mc_samples = a.mc_samples;
        options.workers = a.workers;
        options.debug_invariants = a.debug;
        options.require_triangle_free = ! a.unsafe;

        auto result = run(h, *lists, np, options, a.seed);
        if (! a.trace.empty())
            write_text(a.trace, trace_json(result.trace).dump() + "\n");

        FinishOptions fo;
        fo.mode = parse_finisher_mode(a.finisher);
        fo.budget = a.budget;
        auto fin = finish(result.state, a.seed, fo);

        auto verdict = fo.mode == FinisherMode::report_only ? verify_partial_coloring(h, *lists, fin.coloring)
                                                            : verify_coloring(h, *lists, fin.coloring);
        bool invariants_ok = std::all_of(result.trace.begin(), result.trace.end(),
                [] (const IterationStats & s) { return s.proper && s.violations.empty(); });
        bool ok = verdict.ok() && invariants_ok;

        auto colored = n - result.state.uncolored.size();
        json out{{"verdict", verdict}, {"ok", ok}, {"colors", np.colors}, {"iterations", np.iterations},
            {"theta", np.theta}, {"p_hat", np.p_hat}, {"rounds_run", result.trace.size()},
            {"colored_by_nibble", colored}, {"finisher", fin}, {"coloring", coloring_json(fin.coloring)}};
        if (! a.out.empty())
            write_text(a.out, json{{"coloring", coloring_json(fin.coloring)}}.dump() + "\n");
        if (a.json)
            emit(out);
        else {
            std::cout << "colors C=" << np.colors << "  T=" << np.iterations << "  theta=" << np.theta << "  p_hat=" << np.p_hat
                      << '\n'
                      << "nibble colored " << colored << "/" << n << " in " << result.trace.size() << " rounds\n"
                      << "finisher " << to_string(fin.status) << (fin.used_fallback ? " (greedy fallback)" : "")
                      << ", resamples " << fin.resamples << ", local lemma conditions "
                      << (fin.report.satisfied() ? "hold" : "fail") << '\n'
                      << "verdict: " << verdict.describe() << '\n';
            if (! invariants_ok)
                std::cout << "invariant violations recorded in the trace\n";
        }
        return ok ? 0 : 1;
    }

    auto cmd_reduce(const std::string & file, std::size_t delta, const std::string & out, const std::string & report, bool as_json)
        -> int
    {
        auto h = read_hypergraph_file(file);
        if (delta == 0)
            delta = h.profile().delta3;
        auto r = codegree_reduce(h, delta);
        if (! out.empty())
            write_hypergraph_file(r.reduced, out);
        if (! report.empty())
            write_text(report, json(r.report).dump(2) + "\n");
        if (as_json)
            emit(json{{"report", r.report}, {"out", out.empty() ? json(nullptr) : json(out)}});
        else if (out.empty())
            std::cout << serialize_hypergraph(r.reduced);
        else
            std::cerr << "threshold " << r.report.threshold << ", replaced " << r.report.pairs_replaced.size()
                      << " pairs, removed " << r.report.edges3_removed << " triples\n";
        return 0;
    }

    auto cmd_detect(const std::string & file, std::size_t limit, bool as_json) -> int
    {
        auto h = read_hypergraph_file(file);
        auto found = find_triangles(h, limit);
        if (as_json)
            emit(json{{"triangle_free", found.empty()}, {"witnesses", found}});
        else if (found.empty())
            std::cout << "triangle-free\n";
        else
            for (auto & t : found) {
                std::cout << to_string(t.kind) << "  vertices " << t.vertices[0] << ' ' << t.vertices[1] << ' ' << t.vertices[2]
                          << "  edges";
                for (auto & e : t.edges) {
                    std::cout << " {";
                    for (std::size_t i = 0 ; i < e.arity ; ++i)
                        std::cout << (i ? " " : "") << e.v[i];
                    std::cout << '}';
                }
                std::cout << '\n';
            }
        return found.empty() ? 0 : 1;
    }

    struct ParamsArgs
    {
        std::string regime = "derived", practical;
        double delta = 0, delta2 = 0, codegree = 0, log10_delta = 0;
        bool json = false;
    };

    auto cmd_params(const ParamsArgs & a) -> int
    {
        if ((a.delta > 0) == (a.log10_delta > 0))
            throw InputError("give exactly one of --delta and --log10-delta");
        long double log_delta = a.delta > 0 ? std::log(static_cast<long double>(a.delta))
                                            : static_cast<long double>(a.log10_delta) * std::log(10.0L);
        Parameters p;
        if (a.regime == "derived") {
            std::optional<long double> l2;
            if (a.delta2 > 0)
                l2 = std::log(static_cast<long double>(a.delta2));
            p = derived_assignment_log(log_delta, l2);
        }
        else if (a.regime == "sufficient")
            p = sufficient_assignment_log(log_delta);
        else if (a.regime == "practical") {
            if (a.practical.empty())
                throw InputError("the practical regime needs --practical C,T,theta,phat");
            if (a.delta <= 0)
                throw InputError("the practical regime needs --delta");
            auto f = parse_practical(a.practical);
            auto codegree = a.codegree > 0 ? a.codegree : std::pow(a.delta, 0.6);
            p = practical_assignment(a.delta, a.delta2, codegree, f.colors, f.iterations, f.theta, f.p_hat);
        }
        else
            throw InputError("unknown regime '" + a.regime + "'");

        auto report = check_constraints(p);
        bool ok = report.all_constraints_satisfied();
        if (a.json)
            emit(json{{"parameters", p}, {"report", report}, {"ok", ok}});
        else {
            auto show = [] (const std::vector<ConstraintCheck> & group) {
                for (auto & c : group)
                    std::cout << std::left << std::setw(16) << c.name << std::setw(12)
                              << (! c.evaluable ? "n/a" : c.satisfied ? "ok" : "VIOLATED") << "slack " << std::setw(14)
                              << static_cast<double>(c.slack) << c.statement << '\n';
            };
            std::cout << "regime " << to_string(p.regime) << "  ln(delta)=" << static_cast<double>(p.log_delta)
                      << "  omega=" << static_cast<double>(p.omega) << "  theta=" << static_cast<double>(p.theta) << "\n\n";
            show(report.constraints);
            std::cout << "\nsufficient conditions\n";
            show(report.sufficient_conditions);
            std::cout << "\ndomain\n";
            show(report.domain);
        }
        return ok ? 0 : 1;
    }

    auto cmd_verify(const std::string & file, const std::string & coloring_file, const std::string & lists_path,
            std::size_t palette, bool as_json) -> int
    {
        auto h = read_hypergraph_file(file);
        auto text = read_text_file(coloring_file);
        std::vector<Color> coloring;
        auto first = text.find_first_not_of(" \t\r\n");
        if (first != std::string::npos && (text[first] == '{' || text[first] == '['))
            coloring = coloring_from_json(json::parse(text));
        else {
            std::istringstream in(text);
            long long v;
            while (in >> v) {
                if (v < -1)
                    throw InputError("coloring entries must be >= -1");
                coloring.push_back(v == -1 ? uncolored : static_cast<Color>(v));
            }
            if (! in.eof())
                throw InputError("coloring file holds a non-integer token");
        }

        auto lists = load_lists(lists_path, palette, h.vertex_count());
        if (! lists) {
            Color top = 0;
            for (auto c : coloring)
                if (c != uncolored)
                    top = std::max(top, c + 1);
            lists = ListAssignment::uniform(h.vertex_count(), std::max<Color>(top, 1));
        }
        auto verdict = verify_coloring(h, *lists, coloring);
        if (as_json)
            emit(json{{"verdict", verdict}});
        else
            std::cout << verdict.describe() << '\n';
        return verdict.ok() ? 0 : 1;
    }

    struct ExperimentArgs
    {
        std::string kind = "partial_steiner", q_mode = "exact", finisher = "mt", csv;
        std::size_t n = 0, edges3 = 0, delta = 0, edges2 = 0, seeds = 10, colors = 0, budget = 1'000'000;
        std::uint64_t seed_start = 1;
        PracticalChoice choice;
        unsigned workers = default_workers();
        bool reduce = false, unsafe = false, json = false;
    };

    auto cmd_experiment(const ExperimentArgs & a) -> int
    {
        ExperimentConfig config;
        config.generator = GeneratorSpec{parse_generator_kind(a.kind), a.n, a.edges3, a.delta, a.edges2, 0, 0};
        config.reduce = a.reduce;
        config.choice = a.choice;
        config.choice.colors = a.colors;
        config.engine.q_mode = parse_survival_mode(a.q_mode);
        config.engine.workers = 1;
        config.engine.require_triangle_free = ! a.unsafe;
        config.finisher.mode = parse_finisher_mode(a.finisher);
        config.finisher.budget = a.budget;
        config.seed_workers = a.workers;
        config.seeds.resize(a.seeds);
        std::iota(config.seeds.begin(), config.seeds.end(), a.seed_start);

        auto results = run_experiment(config);
        auto summary = summarize(results);
        if (! a.csv.empty())
            write_text(a.csv, results_csv(results));
        if (a.json)
            emit(json{{"summary", summary}, {"results", results}});
        else {
            for (auto & r : results)
                std::cout << "seed " << std::setw(4) << r.seed << "  delta " << std::setw(4) << r.profile.delta3 << "  C "
                          << std::setw(4) << r.colors << "  colored " << std::fixed << std::setprecision(3)
                          << r.colored_fraction << std::defaultfloat << "  " << std::setw(15) << to_string(r.finisher)
                          << (r.verified ? "  ok" : "  FAIL") << (r.error.empty() ? "" : "  " + r.error) << '\n';
            std::cout << "success " << summary.successes << "/" << summary.runs << "  mean colored "
                      << summary.mean_colored_fraction << "  mean colors used " << summary.mean_colors_used << "  ratio "
                      << summary.ratio << '\n';
        }
        return summary.successes == summary.runs ? 0 : 1;
    }
}

int main(int argc, char ** argv)
{
    CLI::App app{"List coloring of triangle-free rank-3 hypergraphs"};
    app.require_subcommand(1);

    GenArgs gen;
    auto * g = app.add_subcommand("gen", "generate an instance");
    g->add_option("kind", gen.kind, "partial_steiner | random3 | random_rank3 | triangle_free_filtered")->required();
    g->add_option("--n", gen.n, "vertex count")->required();
    g->add_option("--edges3", gen.edges3, "exact number of triples");
    g->add_option("--delta", gen.delta, "cap on the 3-degree");
    g->add_option("--edges2", gen.edges2, "number of 2-edges");
    g->add_option("--max-stall", gen.max_stall, "rejections in a row before giving up");
    g->add_option("--seed", gen.seed);
    g->add_option("--out", gen.out, "write the instance here instead of stdout");
    g->add_flag("--json", gen.json);

    ColorArgs col;
    auto * c = app.add_subcommand("color", "run the nibble and the finisher");
    c->add_option("file", col.file)->required()->check(CLI::ExistingFile);
    c->add_option("--lists", col.lists, "list file")->check(CLI::ExistingFile);
    c->add_option("--palette", col.palette, "uniform lists {0..C-1}");
    c->add_option("--seed", col.seed);
    c->add_option("--q-mode", col.q_mode, "exact | bound | mc");
    c->add_option("--exact-limit", col.exact_limit, "largest link component solved exactly");
    c->add_option("--mc-samples", col.mc_samples);
    c->add_option("--practical", col.practical, "C,T,theta,phat");
    c->add_option("--k", col.k, "C = ceil(k sqrt(delta / ln delta)) when C is not given");
    c->add_option("--trace", col.trace, "write per-round statistics as JSON");
    c->add_flag("--debug-invariants", col.debug);
    c->add_option("--finisher", col.finisher, "mt | greedy | report-only");
    c->add_option("--mt-budget", col.budget);
    c->add_flag("--unsafe", col.unsafe, "skip the triangle check");
    c->add_option("--workers", col.workers);
    c->add_option("--out", col.out, "write the coloring as JSON");
    c->add_flag("--json", col.json);

    std::string red_file, red_out, red_report;
    std::size_t red_delta = 0;
    bool red_json = false;
    auto * r = app.add_subcommand("reduce", "replace high-codegree pairs by 2-edges");
    r->add_option("file", red_file)->required()->check(CLI::ExistingFile);
    r->add_option("--delta", red_delta, "degree bound (defaults to the actual maximum 3-degree)");
    r->add_option("--out", red_out);
    r->add_option("--report", red_report, "write the reduction report as JSON");
    r->add_flag("--json", red_json);

    std::string det_file;
    std::size_t det_limit = unlimited;
    bool det_json = false;
    auto * d = app.add_subcommand("detect-triangles", "list triangles");
    d->add_option("file", det_file)->required()->check(CLI::ExistingFile);
    d->add_option("--limit", det_limit);
    d->add_flag("--json", det_json);

    ParamsArgs par;
    auto * p = app.add_subcommand("params-check", "evaluate the parameter constraints");
    p->add_option("--delta", par.delta);
    p->add_option("--log10-delta", par.log10_delta);
    p->add_option("--delta2", par.delta2);
    p->add_option("--codegree", par.codegree);
    p->add_option("--regime", par.regime, "derived | sufficient | practical");
    p->add_option("--practical", par.practical, "C,T,theta,phat");
    p->add_flag("--json", par.json);

    std::string ver_file, ver_coloring, ver_lists;
    std::size_t ver_palette = 0;
    bool ver_json = false;
    auto * v = app.add_subcommand("verify", "check a coloring");
    v->add_option("file", ver_file)->required()->check(CLI::ExistingFile);
    v->add_option("coloring", ver_coloring)->required()->check(CLI::ExistingFile);
    v->add_option("--lists", ver_lists)->check(CLI::ExistingFile);
    v->add_option("--palette", ver_palette);
    v->add_flag("--json", ver_json);

    ExperimentArgs ex;
    auto * e = app.add_subcommand("experiment", "generate, color and verify over many seeds");
    e->add_option("--kind", ex.kind);
    e->add_option("--n", ex.n)->required();
    e->add_option("--edges3", ex.edges3);
    e->add_option("--delta", ex.delta);
    e->add_option("--edges2", ex.edges2);
    e->add_option("--seeds", ex.seeds);
    e->add_option("--seed-start", ex.seed_start);
    e->add_flag("--reduce", ex.reduce);
    e->add_option("--k", ex.choice.k);
    e->add_option("--colors", ex.colors);
    e->add_option("--iterations", ex.choice.iterations);
    e->add_option("--theta", ex.choice.theta);
    e->add_option("--phat", ex.choice.p_hat);
    e->add_option("--phat-factor", ex.choice.p_hat_factor);
    e->add_option("--q-mode", ex.q_mode);
    e->add_option("--finisher", ex.finisher);
    e->add_option("--mt-budget", ex.budget);
    e->add_flag("--unsafe", ex.unsafe);
    e->add_option("--workers", ex.workers);
    e->add_option("--csv", ex.csv);
    e->add_flag("--json", ex.json);

    CLI11_PARSE(app, argc, argv);

    try {
        if (g->parsed())
            return cmd_gen(gen);
        if (c->parsed())
            return cmd_color(col);
        if (r->parsed())
            return cmd_reduce(red_file, red_delta, red_out, red_report, red_json);
        if (d->parsed())
            return cmd_detect(det_file, det_limit, det_json);
        if (p->parsed())
            return cmd_params(par);
        if (v->parsed())
            return cmd_verify(ver_file, ver_coloring, ver_lists, ver_palette, ver_json);
        if (e->parsed())
            return cmd_experiment(ex);
    }
    catch (const std::exception & err) {
        std::cerr << "error: " << err.what() << '\n';
        return 2;
    }
    return 2;
}
