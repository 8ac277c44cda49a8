// Command-line front end for the riskmdp shared library: generate seeded
// instances, run a single solver, or sweep a benchmark grid. Talks to the
// solver exclusively through the C API in riskmdp/riskmdp.h.

#include "riskmdp/riskmdp.h"

#include <CLI11.hpp>

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitUsage = 2;

const std::vector<std::string> kAlgorithmNames = {"vi",        "snm1", "snm2",
                                                  "snm2-warm", "snm3", "opi"};

struct MdpDeleter {
    void operator()(rmdp_mdp* m) const { rmdp_mdp_free(m); }
};
struct ReportDeleter {
    void operator()(rmdp_report* r) const { rmdp_report_free(r); }
};
using MdpHandle = std::unique_ptr<rmdp_mdp, MdpDeleter>;
using ReportHandle = std::unique_ptr<rmdp_report, ReportDeleter>;

/// Usage-level failures (bad flags, unreadable inputs, invalid data) exit 2;
/// anything else is an internal error and exits 1.
int exit_code_for(rmdp_status status) {
    switch (status) {
    case RMDP_OK:
        return kExitOk;
    case RMDP_ERR_INVALID_ARGUMENT:
    case RMDP_ERR_IO:
    case RMDP_ERR_PARSE:
    case RMDP_ERR_VALIDATION:
        return kExitUsage;
    default:
        return kExitInternal;
    }
}

int report_failure(const char* context, rmdp_status status) {
    std::cerr << "error: " << context << ": " << rmdp_last_error() << "\n";
    return exit_code_for(status);
}

std::string fmt_real(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

rmdp_algorithm algorithm_id(const std::string& name) {
    if (name == "vi")
        return RMDP_ALGO_VI;
    if (name == "snm1")
        return RMDP_ALGO_SNM1;
    if (name == "snm2")
        return RMDP_ALGO_SNM2;
    if (name == "snm2-warm")
        return RMDP_ALGO_SNM2_WARM;
    if (name == "snm3")
        return RMDP_ALGO_SNM3;
    return RMDP_ALGO_OPI;
}

struct GenerateArgs {
    std::int64_t n = 0;
    std::int64_t m = 0;
    double gamma = 0.0;
    std::uint64_t seed = 0;
    std::string out;
};

struct SolveArgs {
    std::string algo;
    double zeta = 1.0;
    double tol = 1e-6;
    double inner_tol = 1e-6;
    std::int64_t max_iter = 100000;
    std::int64_t max_inner = 10000;
    std::int64_t w = 20;
    std::string in;
    std::string out;
    // generation fallback when --in is not given
    std::int64_t n = 0;
    std::int64_t m = 0;
    double gamma = 0.0;
    std::uint64_t seed = 0;
};

struct BenchArgs {
    std::string sizes = "50x5x0.9,50x30x0.9,50x5x0.1,50x30x0.1,"
                        "100x5x0.9,100x20x0.9,100x5x0.1,100x20x0.1";
    std::string algos = "vi,snm1,snm2,snm2-warm,snm3,opi";
    std::string seeds = "1";
    double zeta = 0.3;
    double tol = 1e-6;
    double inner_tol = 1e-6;
    std::int64_t max_iter = 100000;
    std::int64_t max_inner = 10000;
    std::int64_t w = 20; // sweeps for bare "opi" entries
    std::string out;
};

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::string item;
    std::istringstream stream(text);
    while (std::getline(stream, item, sep))
        if (!item.empty())
            parts.push_back(item);
    return parts;
}

int cmd_generate(const GenerateArgs& args) {
    rmdp_mdp* raw = nullptr;
    if (rmdp_status s = rmdp_mdp_random(args.n, args.m, args.gamma, args.seed, &raw);
        s != RMDP_OK)
        return report_failure("generate", s);
    MdpHandle mdp(raw);
    if (rmdp_status s = rmdp_mdp_save_file(mdp.get(), args.out.c_str()); s != RMDP_OK)
        return report_failure("generate", s);
    std::cout << args.out << "\n";
    return kExitOk;
}

int load_or_generate(const SolveArgs& args, MdpHandle& mdp) {
    rmdp_mdp* raw = nullptr;
    if (!args.in.empty()) {
        if (rmdp_status s = rmdp_mdp_load_file(args.in.c_str(), &raw); s != RMDP_OK)
            return report_failure("solve", s);
    } else {
        if (args.n == 0 || args.m == 0 || args.gamma == 0.0) {
            std::cerr << "error: solve needs --in, or --n/--m/--gamma to generate an "
                         "instance\n";
            return kExitUsage;
        }
        if (rmdp_status s = rmdp_mdp_random(args.n, args.m, args.gamma, args.seed, &raw);
            s != RMDP_OK)
            return report_failure("solve", s);
    }
    mdp.reset(raw);
    return kExitOk;
}

int write_residual_csv(const rmdp_report* report, const std::string& path) {
    const std::int64_t count = rmdp_report_residual_history(report, nullptr, 0);
    std::vector<double> history(static_cast<std::size_t>(count));
    rmdp_report_residual_history(report, history.data(), count);

    std::ofstream out(path, std::ios::binary);
    if (!out) {
        std::cerr << "error: cannot open \"" << path << "\" for writing\n";
        return kExitUsage;
    }
    out << "iter,residual_inf\n";
    for (std::int64_t k = 0; k < count; ++k)
        out << k << "," << fmt_real(history[static_cast<std::size_t>(k)]) << "\n";
    return kExitOk;
}

int cmd_solve(const SolveArgs& args) {
    MdpHandle mdp;
    if (int rc = load_or_generate(args, mdp); rc != kExitOk)
        return rc;

    rmdp_solve_options opts;
    rmdp_solve_options_init(&opts);
    opts.algorithm = algorithm_id(args.algo);
    opts.zeta = args.zeta;
    opts.tol = args.tol;
    opts.inner_tol = args.inner_tol;
    opts.max_outer = args.max_iter;
    opts.max_inner = args.max_inner;
    opts.opi_sweeps = args.w;

    rmdp_report* raw = nullptr;
    if (rmdp_status s = rmdp_solve(mdp.get(), &opts, &raw); s != RMDP_OK)
        return report_failure("solve", s);
    ReportHandle report(raw);

    std::cout << "algo=" << args.algo
              << " outer_iters=" << rmdp_report_outer_iters(report.get())
              << " inner_iters=" << rmdp_report_inner_iters(report.get())
              << " final_residual=" << fmt_real(rmdp_report_final_residual(report.get()))
              << " wall_seconds=" << rmdp_report_wall_seconds(report.get())
              << " converged=" << (rmdp_report_converged(report.get()) ? "true" : "false")
              << "\n";

    if (!args.out.empty())
        return write_residual_csv(report.get(), args.out);
    return kExitOk;
}

struct BenchAlgo {
    std::string name;   // solver name, e.g. "opi"
    std::int64_t w = 0; // sweep count, opi only
};

int parse_bench_algos(const std::string& text, std::int64_t default_w,
                      std::vector<BenchAlgo>& out) {
    for (const std::string& entry : split(text, ',')) {
        BenchAlgo algo;
        const auto colon = entry.find(':');
        algo.name = entry.substr(0, colon);
        bool known = false;
        for (const auto& candidate : kAlgorithmNames)
            known = known || candidate == algo.name;
        if (!known) {
            std::cerr << "error: unknown algorithm \"" << algo.name << "\"; valid names:";
            for (const auto& candidate : kAlgorithmNames)
                std::cerr << " " << candidate;
            std::cerr << "\n";
            return kExitUsage;
        }
        if (colon != std::string::npos) {
            if (algo.name != "opi") {
                std::cerr << "error: only opi takes a sweep suffix (\"" << entry << "\")\n";
                return kExitUsage;
            }
            try {
                algo.w = std::stoll(entry.substr(colon + 1));
            } catch (const std::exception&) {
                algo.w = 0;
            }
            if (algo.w < 1) {
                std::cerr << "error: bad sweep count in \"" << entry << "\"\n";
                return kExitUsage;
            }
        } else if (algo.name == "opi") {
            algo.w = default_w;
        }
        out.push_back(std::move(algo));
    }
    if (out.empty()) {
        std::cerr << "error: --algos is empty\n";
        return kExitUsage;
    }
    return kExitOk;
}

std::string csv_safe(std::string text) {
    for (char& c : text)
        if (c == ',' || c == '\n' || c == '\r')
            c = ';';
    return text;
}

int cmd_bench(const BenchArgs& args) {
    struct Size {
        std::int64_t n, m;
        double gamma;
    };
    std::vector<Size> sizes;
    for (const std::string& entry : split(args.sizes, ',')) {
        const auto parts = split(entry, 'x');
        if (parts.size() != 3) {
            std::cerr << "error: size \"" << entry << "\" is not of the form NxMxGAMMA\n";
            return kExitUsage;
        }
        try {
            sizes.push_back({std::stoll(parts[0]), std::stoll(parts[1]),
                             std::stod(parts[2])});
        } catch (const std::exception&) {
            std::cerr << "error: cannot parse size \"" << entry << "\"\n";
            return kExitUsage;
        }
    }
    if (sizes.empty()) {
        std::cerr << "error: --sizes is empty\n";
        return kExitUsage;
    }

    std::vector<std::uint64_t> seeds;
    for (const std::string& entry : split(args.seeds, ',')) {
        try {
            seeds.push_back(std::stoull(entry));
        } catch (const std::exception&) {
            std::cerr << "error: cannot parse seed \"" << entry << "\"\n";
            return kExitUsage;
        }
    }
    if (seeds.empty()) {
        std::cerr << "error: --seeds is empty\n";
        return kExitUsage;
    }

    if (args.w < 1) {
        std::cerr << "error: --w must be >= 1\n";
        return kExitUsage;
    }
    std::vector<BenchAlgo> algos;
    if (int rc = parse_bench_algos(args.algos, args.w, algos); rc != kExitOk)
        return rc;

    std::ostringstream csv;
    csv << "n,m,gamma,zeta,seed,algo,w,outer_iters,inner_iters,final_residual,"
           "wall_seconds,converged,status\n";

    // deterministic order: sizes outer, seeds middle, algorithms inner
    for (const Size& size : sizes) {
        for (std::uint64_t seed : seeds) {
            rmdp_mdp* raw_mdp = nullptr;
            const rmdp_status gen =
                rmdp_mdp_random(size.n, size.m, size.gamma, seed, &raw_mdp);
            MdpHandle mdp(raw_mdp);
            for (const BenchAlgo& algo : algos) {
                csv << size.n << "," << size.m << "," << fmt_real(size.gamma) << ","
                    << fmt_real(args.zeta) << "," << seed << "," << algo.name << ","
                    << (algo.w > 0 ? std::to_string(algo.w) : std::string()) << ",";
                if (gen != RMDP_OK) {
                    csv << ",,,,," << csv_safe(std::string("error: ") + rmdp_last_error())
                        << "\n";
                    continue;
                }
                rmdp_solve_options opts;
                rmdp_solve_options_init(&opts);
                opts.algorithm = algorithm_id(algo.name);
                opts.zeta = args.zeta;
                opts.tol = args.tol;
                opts.inner_tol = args.inner_tol;
                opts.max_outer = args.max_iter;
                opts.max_inner = args.max_inner;
                if (algo.w > 0)
                    opts.opi_sweeps = algo.w;

                rmdp_report* raw_report = nullptr;
                const rmdp_status s = rmdp_solve(mdp.get(), &opts, &raw_report);
                ReportHandle report(raw_report);
                if (s != RMDP_OK) {
                    csv << ",,,,," << csv_safe(std::string("error: ") + rmdp_last_error())
                        << "\n";
                    continue;
                }
                csv << rmdp_report_outer_iters(report.get()) << ","
                    << rmdp_report_inner_iters(report.get()) << ","
                    << fmt_real(rmdp_report_final_residual(report.get())) << ","
                    << rmdp_report_wall_seconds(report.get()) << ","
                    << (rmdp_report_converged(report.get()) ? "true" : "false")
                    << ",ok\n";
            }
        }
    }

    if (args.out.empty()) {
        std::cout << csv.str();
        return kExitOk;
    }
    std::ofstream out(args.out, std::ios::binary);
    if (!out) {
        std::cerr << "error: cannot open \"" << args.out << "\" for writing\n";
        return kExitUsage;
    }
    out << csv.str();
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"risk-averse MDP solvers and benchmark harness"};
    app.require_subcommand(1);

    GenerateArgs gen_args;
    CLI::App* gen = app.add_subcommand("generate", "write a seeded random instance");
    gen->add_option("--n", gen_args.n, "number of states")->required();
    gen->add_option("--m", gen_args.m, "number of actions")->required();
    gen->add_option("--gamma", gen_args.gamma, "discount factor in (0,1)")->required();
    gen->add_option("--seed", gen_args.seed, "generator seed")->default_val(0);
    gen->add_option("--out", gen_args.out, "output path")->required();

    SolveArgs solve_args;
    CLI::App* solve = app.add_subcommand("solve", "run one solver on an instance");
    solve->add_option("--algo", solve_args.algo, "solver name")
        ->required()
        ->check(CLI::IsMember(kAlgorithmNames));
    solve->add_option("--zeta", solve_args.zeta, "CVaR confidence level in (0,1]")
        ->default_val(1.0);
    solve->add_option("--tol", solve_args.tol, "outer residual tolerance")
        ->default_val(1e-6);
    solve->add_option("--inner-tol", solve_args.inner_tol, "inner tolerance")
        ->default_val(1e-6);
    solve->add_option("--max-iter", solve_args.max_iter, "outer iteration cap")
        ->default_val(100000);
    solve->add_option("--max-inner", solve_args.max_inner, "inner iteration cap")
        ->default_val(10000);
    solve->add_option("--w", solve_args.w, "OPI sweeps per outer step")->default_val(20);
    solve->add_option("--in", solve_args.in, "instance file");
    solve->add_option("--out", solve_args.out, "residual history CSV path");
    solve->add_option("--n", solve_args.n, "states (generate when --in absent)");
    solve->add_option("--m", solve_args.m, "actions (generate when --in absent)");
    solve->add_option("--gamma", solve_args.gamma, "discount (generate when --in absent)");
    solve->add_option("--seed", solve_args.seed, "seed (generate when --in absent)")
        ->default_val(0);

    BenchArgs bench_args;
    CLI::App* bench = app.add_subcommand("bench", "sweep a grid and emit a CSV table");
    bench->add_option("--sizes", bench_args.sizes,
                      "comma list of NxMxGAMMA triples (default: benchmark grid)");
    bench->add_option("--algos", bench_args.algos,
                      "comma list of solvers, opi accepts a sweep suffix like opi:20");
    bench->add_option("--seeds", bench_args.seeds, "comma list of seeds");
    bench->add_option("--zeta", bench_args.zeta, "CVaR confidence level")
        ->default_val(0.3);
    bench->add_option("--tol", bench_args.tol, "outer residual tolerance")
        ->default_val(1e-6);
    bench->add_option("--inner-tol", bench_args.inner_tol, "inner tolerance")
        ->default_val(1e-6);
    bench->add_option("--max-iter", bench_args.max_iter, "outer iteration cap")
        ->default_val(100000);
    bench->add_option("--max-inner", bench_args.max_inner, "inner iteration cap")
        ->default_val(10000);
    bench->add_option("--w", bench_args.w, "sweeps for opi entries without a suffix")
        ->default_val(20);
    bench->add_option("--out", bench_args.out, "CSV output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (gen->parsed())
            return cmd_generate(gen_args);
        if (solve->parsed())
            return cmd_solve(solve_args);
        if (bench->parsed())
            return cmd_bench(bench_args);
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitUsage;
}
