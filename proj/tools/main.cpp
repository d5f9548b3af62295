#include "config.hpp"

#include "bh/acceptance.hpp"
#include "bh/carleson.hpp"
#include "bh/decomposition.hpp"
#include "bh/errors.hpp"
#include "bh/hankel.hpp"
#include "bh/kernels.hpp"
#include "bh/semigroup.hpp"
#include "bh/spaces.hpp"
#include "bh/testfuncs.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#ifndef BH_SOURCE_DIR
#define BH_SOURCE_DIR "."
#endif

namespace fs = std::filesystem;
using namespace bh;
using cli::ExperimentConfig;

namespace {

enum Exit { ok = 0, acceptance_failed = 1, config_error = 2, numerical_error = 3 };

struct Common {
    std::string config_path = BH_SOURCE_DIR "/config/default.ini";
    std::string output_dir;
    std::string golden_dir = BH_SOURCE_DIR "/golden";
    std::string function;
    std::vector<double> lambda;  // empty: use the config value
    bool bless = false;
    std::string note;
};

struct Ctx {
    ExperimentConfig cfg;
    const Common& common;
    std::string command;

    SampledFunction function() const { return testfn::by_name(cfg.function, cfg.lambda); }

    std::string header() const {
        return "bh " + command + " config_hash=" + cfg.hash_hex() + " lambda=" + g(cfg.lambda) +
               " function=" + cfg.function + " seed=" + std::to_string(cfg.seed);
    }

    static std::string g(double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.10g", v);
        return buf;
    }

    // Writes an artifact under output_dir and, with --bless, into the golden directory.
    void emit(const std::string& name, const std::string& body) const {
        fs::create_directories(cfg.output_dir);
        const fs::path out = cfg.output_dir / name;
        std::ofstream(out) << body;
        std::cout << "wrote " << out.string() << '\n';
        if (!common.bless) return;
        const fs::path gdir = common.golden_dir;
        fs::create_directories(gdir);
        std::ofstream(gdir / name) << body;
        const fs::path log = gdir / "CHANGELOG.md";
        const bool fresh = !fs::exists(log);
        std::ofstream cl(log, std::ios::app);
        if (fresh) cl << "# Golden file changelog\n\n";
        cl << "- `" << name << "` from `" << command << "`, config_hash " << cfg.hash_hex();
        if (!common.note.empty()) cl << ": " << common.note;
        cl << '\n';
        std::cout << "blessed " << (gdir / name).string() << '\n';
    }
};

std::string csv_line(std::initializer_list<double> vals) {
    std::string s;
    char buf[32];
    for (double v : vals) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        if (!s.empty()) s += ',';
        s += buf;
    }
    return s + '\n';
}

DiscreteMeasure read_measure(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open measure file " + path);
    return DiscreteMeasure::read_csv(in);
}

DiscreteMeasure random_measure(const ExperimentConfig& c) {
    std::mt19937_64 rng(c.seed);
    std::uniform_real_distribution<double> uy(0.1, 2), ut(0.05, 1), uw(0, 1);
    DiscreteMeasure mu;
    for (std::size_t i = 0; i < c.random_atoms; ++i) mu.add({uy(rng), ut(rng), uw(rng)});
    return mu;
}

SampledFunction input_function(const Ctx& ctx, const std::string& path) {
    if (path.empty()) return ctx.function();
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open function file " + path);
    return SampledFunction::read_csv(in);
}

GenerationTree make_tree(const Ctx& ctx, NodeValues& values) {
    const double A = ctx.cfg.A > 0 ? ctx.cfg.A : calibrate_A(values, ctx.cfg.max_level).A;
    return build_generations(values, A, ctx.cfg.max_level);
}

// ---- commands ----

int kernel_eval(const Ctx& ctx, double x, double y, double t, const std::string& kernel, const std::string& method) {
    const KernelPoint p{ctx.cfg.lambda, x, y, t};
    double v;
    if (kernel == "poisson") {
        v = poisson_kernel(p, ctx.cfg.quadrature,
                           method == "spectral" ? PoissonMethod::spectral : PoissonMethod::theta_integral);
    } else if (kernel == "heat") {
        v = heat_kernel(p, ctx.cfg.quadrature);
    } else if (kernel == "subordination") {
        const auto [lhs, rhs] = subordination_check(p, ctx.cfg.quadrature);
        std::printf("poisson %.12g\n", lhs);
        v = rhs;
    } else {
        v = classical_poisson(t, x - y);
    }
    std::printf("%.12g\n", v);
    if (ctx.common.bless) {
        std::ostringstream os;
        os << "# " << ctx.header() << " kernel=" << kernel << " method=" << method << "\nx,y,t,value\n"
           << csv_line({x, y, t, v});
        ctx.emit(kernel == "poisson" ? "kernel-eval.csv" : "kernel-eval-" + kernel + ".csv", os.str());
    }
    return ok;
}

int verify_bounds(const Ctx& ctx) {
    const std::vector<double> g = ctx.cfg.grid("kernel").values();
    std::vector<KernelPoint> pts;
    for (double x : g)
        for (double y : g)
            for (double t : g) pts.push_back({ctx.cfg.lambda, x, y, t});
    const BoundReport r = verify_kernel_bounds(ctx.cfg.lambda, pts, ctx.cfg.quadrature);
    std::printf("max r2 %.10g\nmax r3 %.10g\nmax r4 %.10g\nfailed points %zu\n", r.max_r2, r.max_r3, r.max_r4,
                r.failed.size());
    std::ostringstream os;
    os << "# " << ctx.header() << '\n';
    r.write_csv(os);
    ctx.emit("verify-bounds.csv", os.str());
    return r.failed.empty() ? ok : numerical_error;
}

int hankel(const Ctx& ctx, const std::string& input, bool check) {
    const SampledFunction f = input_function(ctx, input);
    const std::vector<double> out = ctx.cfg.grid("hankel").values();
    const SampledFunction h = hankel_transform(ctx.cfg.lambda, f, out, ctx.cfg.quadrature);
    std::ostringstream os;
    h.write_csv(os, ctx.header());
    ctx.emit("hankel.csv", os.str());
    if (check) {
        const SampledFunction hh = hankel_transform(ctx.cfg.lambda, h, f.grid(), ctx.cfg.quadrature);
        const double n = l2_norm(f, ctx.cfg.quadrature);
        std::printf("involution rel L2 error %.6e\nisometry rel error %.6e\n", l2_distance(hh, f, ctx.cfg.quadrature) / n,
                    std::fabs(l2_norm(h, ctx.cfg.quadrature) / n - 1));
    }
    return ok;
}

int semigroup(const Ctx& ctx, double t, const std::string& kind, const std::string& input,
              const std::vector<double>& square_at, double cone_cap) {
    const SampledFunction f = input_function(ctx, input);
    const std::vector<double> xs = ctx.cfg.grid("x").values();
    SampledFunction u = kind == "heat" ? apply_heat(ctx.cfg.lambda, t, f, xs, ctx.cfg.quadrature)
                        : kind == "dt"
                            ? apply_poisson(ctx.cfg.lambda, t, f, xs, ctx.cfg.quadrature, PoissonVariant::dt)
                        : kind == "dlam_x"
                            ? apply_poisson(ctx.cfg.lambda, t, f, xs, ctx.cfg.quadrature, PoissonVariant::dlam_x)
                            : apply_poisson(ctx.cfg.lambda, t, f, xs, ctx.cfg.quadrature);
    std::ostringstream os;
    u.write_csv(os, ctx.header() + " kind=" + kind + " t=" + Ctx::g(t));
    ctx.emit("semigroup-" + kind + ".csv", os.str());
    if (!square_at.empty()) {
        std::ostringstream sq;
        sq << "# " << ctx.header() << " cone_cap=" << Ctx::g(cone_cap) << "\nx,g_lambda\n";
        for (double x : square_at) {
            const double v = square_function_g(ctx.cfg.lambda, f, x, cone_cap, ctx.cfg.quadrature);
            std::printf("g_lambda(%g) = %.10g\n", x, v);
            sq << csv_line({x, v});
        }
        ctx.emit("square-function.csv", sq.str());
    }
    return ok;
}

int bmo_norm(const Ctx& ctx, const std::string& input, double extent, double step) {
    const SampledFunction f = input_function(ctx, input);
    const IntervalFamily fam = uniform_family(extent, step);
    const BmoParts p = bmo_o_parts(f, fam);
    const double pl = bmo_plambda_norm(ctx.cfg.lambda, f, fam, ctx.cfg.quadrature);
    const std::vector<double> g = ctx.cfg.grid("gradient").values();
    std::vector<std::pair<double, double>> xt;
    for (double x : g)
        for (double t : g) xt.emplace_back(x, t);
    const GradientBoundReport gb = gradient_bound_check(ctx.cfg.lambda, f, xt, ctx.cfg.quadrature);
    std::printf("bmo_o %.10g (oscillation %.10g, prefix %.10g)\nbmo_plambda %.10g\ngradient bound %.10g (ratio %.6f)\n",
                p.norm(), p.oscillation, p.prefix, pl, gb.max, gb.max / p.norm());
    std::ostringstream os;
    os << "# " << ctx.header() << " extent=" << Ctx::g(extent) << " step=" << Ctx::g(step)
       << "\noscillation,prefix,bmo_o,bmo_plambda,gradient_bound\n"
       << csv_line({p.oscillation, p.prefix, p.norm(), pl, gb.max});
    ctx.emit("bmo-norm.csv", os.str());
    return gb.failed.empty() ? ok : numerical_error;
}

int carleson(const Ctx& ctx, const std::string& path) {
    const DiscreteMeasure mu = read_measure(path);
    const double c = carleson_norm(mu);
    std::printf("%.12g\n", c);
    if (ctx.common.bless) {
        std::ostringstream os;
        os << "# " << ctx.header() << " measure=" << fs::path(path).filename().string() << "\natoms,carleson_norm\n"
           << mu.size() << ',' << csv_line({c});
        ctx.emit("carleson-norm.csv", os.str());
    }
    return ok;
}

int balayage(const Ctx& ctx, const std::string& path) {
    const DiscreteMeasure mu = path.empty() ? random_measure(ctx.cfg) : read_measure(path);
    const std::vector<double> xs = ctx.cfg.grid("x").values();
    std::ostringstream os;
    os << "# " << ctx.header() << " atoms=" << mu.size() << "\nx,poisson,heat\n";
    for (double x : xs)
        os << csv_line({x, balayage_poisson(ctx.cfg.lambda, mu, x, ctx.cfg.quadrature),
                        balayage_heat(ctx.cfg.lambda, mu, x, ctx.cfg.quadrature)});
    ctx.emit("balayage.csv", os.str());
    const BalayageBmo b = check_balayage_bmo(ctx.cfg.lambda, mu, ctx.cfg.quadrature);
    std::printf("bmo_est %.10g\ncarleson_norm %.10g\nratio %.10g\n", b.bmo_est, b.cnorm, b.ratio);
    return ok;
}

int theorem_a(const Ctx& ctx, std::size_t cells) {
    const std::vector<double> edges = linspace(0, 2, cells + 1);
    const IntervalFamily fam = uniform_family(4, 1e-2);
    std::vector<NormRow> rows;
    for (const std::string name : {"indicator", "triangle", "log"}) {
        const SampledFunction f = testfn::by_name(name, ctx.cfg.lambda);
        const double c = carleson_norm(theorem_a_measure(ctx.cfg.lambda, f, edges, edges, ctx.cfg.quadrature));
        rows.push_back({name, bmo_o_norm(f, fam), bmo_plambda_norm(ctx.cfg.lambda, f, fam, ctx.cfg.quadrature),
                        std::sqrt(c)});
        std::printf("%-10s bmo_o %.6f bmo_plambda %.6f sqrt_carleson %.6f\n", name.c_str(), rows.back().bmo_o,
                    rows.back().bmo_plambda, rows.back().sqrt_carleson_mu_f);
    }
    std::ostringstream os;
    write_norm_report(os, rows, ctx.header() + " cells=" + std::to_string(cells));
    ctx.emit("theorem-a.csv", os.str());
    return ok;
}

int decompose(const Ctx& ctx, bool green) {
    NodeValues values(ctx.cfg.lambda, ctx.function(), ctx.cfg.quadrature);
    const GenerationTree tree = make_tree(ctx, values);
    const PackingReport p = packing_check(tree);
    std::size_t members = 0;
    for (const auto& g : tree.generations) members += g.size();
    std::printf("A %.10g\ngenerations %zu\nmembers %zu\nmax packing ratio %.6f (%s)\ndisjoint %s\n", tree.A,
                tree.generations.size(), members, p.max_ratio, p.passed ? "pass" : "VIOLATED",
                disjointness_check(tree) ? "yes" : "no");
    std::ostringstream ts;
    ts << "# " << ctx.header() << '\n';
    tree.write(ts);
    ctx.emit("decompose-tree.txt", ts.str());

    std::ostringstream ps;
    ps << "# " << ctx.header() << "\ngeneration,level,index,child_length,ratio\n";
    for (const PackingRow& r : p.rows)
        ps << r.generation << ',' << r.Q.level << ',' << r.Q.index << ',' << csv_line({r.child_length, r.ratio});
    ctx.emit("decompose-packing.csv", ps.str());

    const double bmo = bmo_o_norm(tree.f, uniform_family(4, 1e-2));
    const OscillationReport o = oscillation_check(tree, ctx.cfg.oscillation_samples, bmo, ctx.cfg.quadrature);
    std::printf("oscillation max ratio %.6f over %zu samples (Q %s, x %.6f, t %.6f)\n", o.max_ratio, o.samples,
                to_string(o.argmax_Q).c_str(), o.argmax_x, o.argmax_t);
    std::ostringstream os;
    os << "# " << ctx.header() << " samples_per_tile=" << ctx.cfg.oscillation_samples << " bmo_o=" << Ctx::g(bmo)
       << "\nmax_ratio,samples,level,index,x,t\n"
       << Ctx::g(o.max_ratio) << ',' << o.samples << ',' << o.argmax_Q.level << ',' << o.argmax_Q.index << ','
       << csv_line({o.argmax_x, o.argmax_t});
    ctx.emit("decompose-oscillation.csv", os.str());

    if (green) {
        const Rect r{0.25, 1.5, 0.1, 0.8};
        const double c0 = tree.c_of(DyadicInterval{0, 0});
        const GreenResult gr = green_identity_check(ctx.cfg.lambda, tree.f, r, 0.9, c0, ctx.cfg.quadrature);
        std::printf("green interior %.12g boundary %.12g\n", gr.interior, gr.boundary);
        std::ostringstream gs;
        gs << "# " << ctx.header() << " rect=[0.25,1.5]x[0.1,0.8] x=0.9 alpha=c_Q0\nalpha,interior,boundary\n"
           << csv_line({c0, gr.interior, gr.boundary});
        ctx.emit("decompose-green.csv", gs.str());
    }
    return ok;
}

int reconstruct_cmd(const Ctx& ctx) {
    NodeValues values(ctx.cfg.lambda, ctx.function(), ctx.cfg.quadrature);
    const GenerationTree tree = make_tree(ctx, values);
    const std::vector<double> xs = ctx.cfg.grid("x").values();
    const Reconstruction r = reconstruct(tree, ctx.cfg.n, ctx.cfg.quadrature, xs, ctx.cfg.nodes);
    std::printf("A %.10g\nn %d\nresidual %.8f\n|g|_inf %.8f\ncarleson_norm(mu) %.8f\natoms %zu\n", tree.A,
                ctx.cfg.n, r.residual, r.g_sup, r.mu_norm, r.mu.size());
    const std::string h = ctx.header() + " n=" + std::to_string(ctx.cfg.n) + " A=" + Ctx::g(tree.A) +
                          " residual=" + Ctx::g(r.residual);
    std::ostringstream os;
    r.write_csv(os, h);
    ctx.emit("reconstruct-n" + std::to_string(ctx.cfg.n) + ".csv", os.str());
    std::ostringstream ms;
    r.mu.write_csv(ms, h);
    ctx.emit("reconstruct-n" + std::to_string(ctx.cfg.n) + "-mu.csv", ms.str());
    return ok;
}

int acceptance_cmd(const Ctx& ctx, const std::vector<int>& only) {
    acceptance::Options opt;
    opt.q = ctx.cfg.quadrature;
    opt.seed = ctx.cfg.seed;
    bool all = true;
    std::ostringstream log;
    log << "# " << ctx.header() << '\n';
    acceptance::run_all(opt, only, [&](const acceptance::Result& r) {
        const std::string line = acceptance::format(r);
        std::printf("%s\n", line.c_str());
        std::fflush(stdout);
        log << line << '\n';
        all = all && r.pass;
    });
    fs::create_directories(ctx.cfg.output_dir);
    std::ofstream(ctx.cfg.output_dir / "acceptance.txt") << log.str();
    std::printf("%s\n", all ? "ALL PASS" : "SOME CRITERIA FAILED");
    return all ? ok : acceptance_failed;
}

void print_error(int code, const std::string& message, const std::string& location) {
    nlohmann::json j{{"code", code}, {"message", message}, {"location", location}};
    std::cerr << j.dump() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bessel operator harmonic analysis experiments"};
    app.require_subcommand(1);
    Common common;
    app.add_option("--config", common.config_path, "INI configuration file")->capture_default_str();
    app.add_option("--output-dir", common.output_dir, "Overrides run.output_dir");
    app.add_option("--golden-dir", common.golden_dir, "Where --bless writes")->capture_default_str();
    app.add_option("--function", common.function, "Overrides run.function");
    app.add_option("--lambda", common.lambda, "Overrides run.lambda")->expected(1);
    app.add_flag("--bless", common.bless, "Also write the artifacts into the golden directory");
    app.add_option("--note", common.note, "Changelog note for --bless");

    double x = 1, y = 1, t = 1;
    std::string kernel = "poisson", method = "theta";
    auto* ke = app.add_subcommand("kernel-eval", "Evaluate one kernel value");
    ke->add_option("--x", x)->required();
    ke->add_option("--y", y)->required();
    ke->add_option("--t", t)->required();
    ke->add_option("--kernel", kernel)->check(CLI::IsMember({"poisson", "heat", "classical", "subordination"}));
    ke->add_option("--method", method)->check(CLI::IsMember({"theta", "spectral"}));

    auto* vb = app.add_subcommand("verify-bounds", "Kernel inequality ratios on grid.kernel");

    std::string input;
    bool check = false;
    auto* hk = app.add_subcommand("hankel", "Hankel transform onto grid.hankel");
    hk->add_option("--input", input, "CSV (grid,value) instead of run.function");
    hk->add_flag("--check", check, "Report involution and isometry errors");

    std::string kind = "poisson";
    std::vector<double> square_at;
    double cone_cap = 8;
    double st = 1;
    auto* sg = app.add_subcommand("semigroup", "Apply a semigroup on grid.x");
    sg->add_option("--t", st)->capture_default_str();
    sg->add_option("--kind", kind)->check(CLI::IsMember({"poisson", "heat", "dt", "dlam_x"}));
    sg->add_option("--input", input);
    sg->add_option("--square-at", square_at, "Also evaluate g_lambda at these x");
    sg->add_option("--cone-cap", cone_cap)->capture_default_str();

    double extent = 4, step = 1e-2;
    auto* bn = app.add_subcommand("bmo-norm", "BMO_o and BMO(P^lambda) estimates, gradient bound on grid.gradient");
    bn->add_option("--input", input);
    bn->add_option("--extent", extent)->capture_default_str();
    bn->add_option("--step", step)->capture_default_str();

    std::string measure;
    auto* cn = app.add_subcommand("carleson-norm", "Exact Carleson norm of a measure CSV (y,t,w)");
    cn->add_option("--measure", measure)->required();

    auto* bl = app.add_subcommand("balayage", "Poisson and heat balayage on grid.x");
    bl->add_option("--measure", measure, "Measure CSV; a seeded random measure when omitted");

    std::size_t cells = 40;
    auto* ta = app.add_subcommand("theorem-a", "Norm report for the indicator, triangle and log functions");
    ta->add_option("--cells", cells)->capture_default_str();

    bool green = false;
    auto* dc = app.add_subcommand("decompose", "Stopping-time generations, packing and oscillation");
    dc->add_flag("--green", green, "Also run the Green identity check on [0.25,1.5]x[0.1,0.8]");

    int n_override = 0;
    auto* rc = app.add_subcommand("reconstruct", "Boundary-term reconstruction f_n");
    rc->add_option("--n", n_override, "Overrides decomposition.n");

    std::vector<int> only;
    auto* ac = app.add_subcommand("acceptance", "Run the acceptance criteria");
    ac->add_option("--only", only, "Criterion ids")->check(CLI::Range(1, acceptance::kCount));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        print_error(config_error, e.what(), "command line");
        return config_error;
    }

    CLI::App* sub = app.get_subcommands().front();
    const std::string command = sub->get_name();
    try {
        Ctx ctx{cli::load_config(common.config_path), common, command};
        if (!common.function.empty()) ctx.cfg.function = common.function;
        if (!common.lambda.empty()) ctx.cfg.lambda = common.lambda.front();
        if (!common.output_dir.empty()) ctx.cfg.output_dir = common.output_dir;
        if (n_override) ctx.cfg.n = n_override;
        ctx.cfg.validate();

        if (sub == ke) return kernel_eval(ctx, x, y, t, kernel, method);
        if (sub == vb) return verify_bounds(ctx);
        if (sub == hk) return hankel(ctx, input, check);
        if (sub == sg) return semigroup(ctx, st, kind, input, square_at, cone_cap);
        if (sub == bn) return bmo_norm(ctx, input, extent, step);
        if (sub == cn) return carleson(ctx, measure);
        if (sub == bl) return balayage(ctx, measure);
        if (sub == ta) return theorem_a(ctx, cells);
        if (sub == dc) return decompose(ctx, green);
        if (sub == rc) return reconstruct_cmd(ctx);
        if (sub == ac) return acceptance_cmd(ctx, only);
    } catch (const ConvergenceError& e) {
        print_error(numerical_error, e.what(), e.location().empty() ? command : command + ": " + e.location());
        return numerical_error;
    } catch (const CalibrationError& e) {
        print_error(numerical_error, e.what(), command);
        return numerical_error;
    } catch (const RangeError& e) {
        print_error(numerical_error, e.what(), command);
        return numerical_error;
    } catch (const std::exception& e) {
        print_error(config_error, e.what(), command);
        return config_error;
    }
    return ok;
}
