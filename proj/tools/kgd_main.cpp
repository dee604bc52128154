// Command-line front end: solve, bench, profile, cycle-demo.

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "kgd/bench/emit.hpp"
#include "kgd/bench/profile.hpp"
#include "kgd/bench/run.hpp"
#include "kgd/problems/cycle.hpp"
#include "kgd/problems/suite.hpp"
#include "kgd/solvers.hpp"
#include "kgd/stepsize.hpp"
#include "kgd/text.hpp"

namespace {

using namespace kgd;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;     // bad specs, parse errors, malformed files
constexpr int kExitNotSolved = 2; // ran fine but did not converge / demo failed

struct CommonOptions {
    double eta = 1e-4;
    int memory = 20;
    double tol = 1e-6;
    long max_iter = 100000;
    int max_shrinks = 100;
    double c = 1.0;  // bb1stab cap scale
    std::optional<double> alpha0;
    std::uint64_t seed = 42;

    SolverConfig to_config() const {
        SolverConfig cfg;
        cfg.eta = eta;
        cfg.memory = memory;
        cfg.tol = tol;
        cfg.max_iter = max_iter;
        cfg.max_inner_shrinks = max_shrinks;
        cfg.alpha0 = alpha0;
        cfg.rule = StepRule::bb1_stabilized(c);  // carries c; per-id rule set later
        return cfg;
    }
};

void add_common_flags(CLI::App* cmd, CommonOptions& opt) {
    cmd->add_option("--eta", opt.eta, "sufficient-decrease parameter in (0, 1/3)")
        ->capture_default_str();
    cmd->add_option("--memory,-M", opt.memory, "nonmonotone window M")->capture_default_str();
    cmd->add_option("--tol", opt.tol, "relative gradient tolerance")->capture_default_str();
    cmd->add_option("--max-iter", opt.max_iter, "outer iteration budget")->capture_default_str();
    cmd->add_option("--max-shrinks", opt.max_shrinks, "per-iterate inner shrink cap")
        ->capture_default_str();
    cmd->add_option("--c", opt.c, "bb1stab cap scale")->capture_default_str();
    cmd->add_option("--alpha0", opt.alpha0, "initial step (default 1/||g0||)");
    cmd->add_option("--seed", opt.seed, "default seed for seeded constructors")
        ->envname("KGD_SEED")
        ->capture_default_str();
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    return out;
}

void print_summary(const std::string& problem, const std::string& solver, const Trace& t) {
    std::cout << "problem=" << problem << " solver=" << solver
              << " termination=" << to_string(t.termination) << " iters=" << t.iterations
              << " gevals=" << t.grad_evals << " shrinks=" << t.inner_shrinks
              << " seconds=" << format_double(t.seconds)
              << " rel_gnorm=" << format_double(t.relative_g_norm());
    if (!t.message.empty()) std::cout << " detail=\"" << t.message << "\"";
    std::cout << "\n";
}

int cmd_solve(const CommonOptions& opt, const std::string& problem_spec,
              const std::string& solver_id, const std::string& output) {
    ProblemInstance inst = make_instance(problem_spec, opt.seed);
    bench::SolverSpec solver = bench::make_solver(solver_id, opt.to_config());
    Trace trace = bench::run_solver(solver, inst);

    if (!output.empty()) {
        auto out = open_output(output);
        bench::write_trace_csv(trace, out);
    }
    print_summary(inst.name, solver_id, trace);
    return trace.converged() ? kExitOk : kExitNotSolved;
}

int cmd_bench(const CommonOptions& opt, const std::string& suite, const std::string& manifest,
              const std::string& solvers_csv, const std::string& output,
              const std::string& format, int jobs) {
    std::vector<ProblemInstance> problems;
    if (!manifest.empty()) {
        problems = load_manifest(manifest, opt.seed);
    } else if (suite == "smoke") {
        problems = smoke_suite(opt.seed);
    } else {
        throw InvalidConfig("unknown suite '" + suite + "' (available: smoke)");
    }
    if (problems.empty()) throw InvalidConfig("no problems to run");

    std::vector<std::string> ids;
    if (solvers_csv.empty()) {
        ids = {"kgdadp-long", "kgdadp-short", "kgdadp-bb1", "kgdadp-bb2"};
    } else {
        std::stringstream ss(solvers_csv);
        std::string tok;
        while (std::getline(ss, tok, ',')) ids.push_back(tok);
    }
    std::vector<bench::SolverSpec> solvers;
    solvers.reserve(ids.size());
    for (const auto& id : ids) solvers.push_back(bench::make_solver(id, opt.to_config()));

    auto records = bench::run_matrix(solvers, problems, jobs);

    auto out = open_output(output);
    if (bench::format_from_string(format) == bench::EmitFormat::Csv) {
        bench::write_records_csv(records, out);
    } else {
        bench::write_records_jsonl(records, out);
    }
    long successes = 0;
    for (const auto& r : records) successes += r.outcome == bench::Outcome::Success;
    std::cout << "ran " << records.size() << " (solver, problem) pairs, " << successes
              << " successes; records written to " << output << "\n";
    return kExitOk;
}

int cmd_profile(const std::string& records_path, const std::string& metric_name,
                const std::string& output, const std::string& format,
                const std::string& plot_path) {
    auto records = bench::read_records_file(records_path);
    auto profile = bench::performance_profile(records, bench::metric_from_string(metric_name));

    auto out = open_output(output);
    if (bench::format_from_string(format) == bench::EmitFormat::Csv) {
        bench::write_profile_csv(profile, out);
    } else {
        bench::write_profile_jsonl(profile, out);
    }
    if (!plot_path.empty()) {
        auto plot = open_output(plot_path);
        bench::write_gnuplot_script(profile, output, plot);
    }
    std::cout << "profile over " << profile.n_problems << " problems, " << profile.curves.size()
              << " solvers; written to " << output << "\n";
    return kExitOk;
}

int cmd_cycle_demo(const CommonOptions& opt, double b, int print_iters) {
    CyclePtr cycle = make_cycle_problem(b);
    const double a = cycle->a();
    std::cout << "cycle problem: b=" << format_double(b) << " a=" << format_double(a)
              << " t=a/b=" << format_double(cycle->ratio()) << "\n"
              << "middle piece:  c1=" << format_double(cycle->c1())
              << " c2=" << format_double(cycle->c2()) << " c3=" << format_double(cycle->c3())
              << "\n";

    // step-size after the first move is 1/2 under all four rules
    const double alpha0 = cycle->cycle_alpha0();
    Vector x0 = cycle->cycle_start();
    Vector x1(1);
    x1[0] = -a;
    StepPair first{cycle->value(x0), cycle->value(x1), cycle->gradient(x0), cycle->gradient(x1),
                   alpha0};
    const double alpha1 = kgd1_long(first).alpha;
    std::cout << "alpha0=" << format_double(alpha0) << " alpha1(long)=" << format_double(alpha1)
              << " alpha1(short)=" << format_double(kgd1_short(first).alpha)
              << " alpha1(bb1)=" << format_double(
                     bb1(first.displacement(), first.gradient_change()).alpha)
              << " alpha1(bb2)=" << format_double(
                     bb2(first.displacement(), first.gradient_change()).alpha)
              << "\n";
    const bool alpha1_ok = std::abs(alpha1 - 0.5) <= 1e-12;

    // print the first iterates of the unsafeguarded long-step run
    SolverConfig pure_cfg;
    pure_cfg.tol = opt.tol;
    pure_cfg.max_iter = print_iters;
    pure_cfg.detect_cycles = false;
    Trace shown = pure_iterate(*cycle, x0, alpha0, StepRule::kgd_long(), pure_cfg);
    std::cout << "pure long-step iterates:\n";
    for (const auto& s : shown.states) {
        std::cout << "  k=" << s.k << " x=" << format_double(s.x[0])
                  << " f=" << format_double(s.f) << " alpha=" << format_double(s.alpha) << "\n";
    }

    // verify 50 full periods with small relative drift
    const int periods = 50;
    pure_cfg.max_iter = 4 * (periods + 1);
    Trace long_run = pure_iterate(*cycle, x0, alpha0, StepRule::kgd_long(), pure_cfg);
    bool cycles = long_run.states.size() >= static_cast<std::size_t>(4 * periods + 4);
    double max_drift = 0.0;
    if (cycles) {
        for (int p = 1; p <= periods && cycles; ++p) {
            for (int j = 0; j < 4; ++j) {
                const double ref = long_run.states[j].x[0];
                const double cur = long_run.states[4 * p + j].x[0];
                const double drift = std::abs(cur - ref) / (1.0 + std::abs(ref));
                max_drift = std::max(max_drift, drift);
                if (drift > 1e-8) {
                    cycles = false;
                    break;
                }
            }
        }
    }
    std::cout << "cycle check over " << periods
              << " periods: " << (cycles ? "holds" : "broken")
              << " (max relative drift " << format_double(max_drift) << ")\n";

    // the detector flags the same run
    SolverConfig detect_cfg;
    detect_cfg.tol = opt.tol;
    detect_cfg.max_iter = opt.max_iter;
    Trace detected = pure_iterate(*cycle, x0, alpha0, StepRule::kgd_long(), detect_cfg);
    std::cout << "pure long-step run terminates: " << to_string(detected.termination) << " after "
              << detected.iterations << " iterations\n";

    // the adaptive run converges to the stationary point
    SolverConfig adp_cfg = opt.to_config();
    adp_cfg.rule = StepRule::kgd_long();
    adp_cfg.alpha0 = alpha0;
    Trace adaptive = kgdadp(*cycle, x0, adp_cfg);
    const double final_x = adaptive.final_x[0];
    const bool adaptive_ok = adaptive.converged() && std::abs(final_x) <= 1e-4;
    std::cout << "adaptive long-step run: " << to_string(adaptive.termination)
              << " iters=" << adaptive.iterations << " shrinks=" << adaptive.inner_shrinks
              << " final x=" << format_double(final_x) << "\n";

    if (alpha1_ok && cycles && adaptive_ok) {
        std::cout << "cycle-demo: OK (pure long-step cycles, adaptive run converges)\n";
        return kExitOk;
    }
    std::cout << "cycle-demo: FAILED";
    if (!alpha1_ok) std::cout << " [alpha1 != 1/2]";
    if (!cycles) std::cout << " [no 4-cycle]";
    if (!adaptive_ok) std::cout << " [adaptive run did not converge to 0]";
    std::cout << "\n";
    return kExitNotSolved;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Gradient-descent solvers with iterated automatic step-size control"};
    app.require_subcommand(1);

    CommonOptions opt;

    // solve
    auto* solve = app.add_subcommand("solve", "run one solver on one problem");
    std::string problem_spec;
    std::string solver_id;
    std::string solve_output;
    solve->add_option("--problem", problem_spec,
                      "problem spec, name:key=val,... (quadratic, raydan, cycle, "
                      "synth-logistic, logistic)")
        ->required();
    solve->add_option("--solver", solver_id,
                      "one of: kgdadp-long kgdadp-short kgdadp-bb1 kgdadp-bb2 pure-kgd-long "
                      "pure-kgd-short pure-bb1 pure-bb2 bb1stab")
        ->required();
    solve->add_option("--output,-o", solve_output, "write per-iterate trace CSV here");
    add_common_flags(solve, opt);

    // bench
    auto* benchc = app.add_subcommand("bench", "run a solver x problem matrix");
    std::string suite = "smoke";
    std::string manifest;
    std::string solvers_csv;
    std::string bench_output = "records.csv";
    std::string bench_format = "csv";
    int jobs = 1;
    benchc->add_option("--suite", suite, "builtin suite name")->capture_default_str();
    benchc->add_option("--manifest", manifest, "problem manifest (text lines or .json)");
    benchc->add_option("--solvers", solvers_csv,
                       "comma-separated solver ids (default: the four kgdadp variants)");
    benchc->add_option("--output,-o", bench_output, "records file")->capture_default_str();
    benchc->add_option("--format", bench_format, "csv | jsonl")->capture_default_str();
    benchc->add_option("--jobs,-j", jobs, "parallel (solver, problem) runs")
        ->capture_default_str();
    add_common_flags(benchc, opt);

    // profile
    auto* profile = app.add_subcommand("profile", "performance profile from a records file");
    std::string records_path;
    std::string metric = "iters";
    std::string profile_output = "profile.csv";
    std::string profile_format = "csv";
    std::string plot_path;
    profile->add_option("--records", records_path, "records CSV/JSONL from bench")->required();
    profile->add_option("--metric", metric, "iters | gevals | seconds")->capture_default_str();
    profile->add_option("--output,-o", profile_output, "profile file")->capture_default_str();
    profile->add_option("--format", profile_format, "csv | jsonl")->capture_default_str();
    profile->add_option("--plot", plot_path, "also write a gnuplot script here");

    // cycle-demo
    auto* demo = app.add_subcommand(
        "cycle-demo", "build the four-point cycle problem; show divergence and the adaptive fix");
    double b = 1.0;
    int print_iters = 40;
    demo->add_option("--b", b, "outer parabola offset (> 0); a is derived")
        ->capture_default_str();
    demo->add_option("--iters", print_iters, "iterates to print")->capture_default_str();
    add_common_flags(demo, opt);

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve->parsed()) return cmd_solve(opt, problem_spec, solver_id, solve_output);
        if (benchc->parsed()) {
            return cmd_bench(opt, suite, manifest, solvers_csv, bench_output, bench_format, jobs);
        }
        if (profile->parsed()) {
            return cmd_profile(records_path, metric, profile_output, profile_format, plot_path);
        }
        if (demo->parsed()) return cmd_cycle_demo(opt, b, print_iters);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
