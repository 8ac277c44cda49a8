#include "riskmdp/solvers.hpp"

#include "riskmdp/errors.hpp"
#include "riskmdp/linear.hpp"
#include "riskmdp/numeric.hpp"

#include <chrono>
#include <stdexcept>
#include <utility>

namespace riskmdp {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

void check_config(const SolverConfig& cfg) {
    if (!(cfg.tol > 0.0))
        throw std::invalid_argument("tol must be positive");
    if (!(cfg.inner_tol > 0.0))
        throw std::invalid_argument("inner_tol must be positive");
    if (cfg.max_outer < 0)
        throw std::invalid_argument("max_outer must be non-negative");
    if (cfg.max_inner < 1)
        throw std::invalid_argument("max_inner must be >= 1");
    if (cfg.opi_sweeps.empty())
        throw std::invalid_argument("the OPI sweep schedule must not be empty");
    for (int w : cfg.opi_sweeps)
        if (w < 1)
            throw std::invalid_argument("OPI sweep counts must be >= 1");
}

ValueVector initial_iterate(const Mdp& mdp, const SolverConfig& cfg) {
    if (cfg.v0.empty())
        return ValueVector(mdp.n, 0.0);
    if (cfg.v0.size() != static_cast<std::size_t>(mdp.n))
        throw std::invalid_argument("v0 length does not match the state count");
    return cfg.v0;
}

int sweeps_for(const SolverConfig& cfg, int k) {
    const auto idx = std::min<std::size_t>(k, cfg.opi_sweeps.size() - 1);
    return cfg.opi_sweeps[idx];
}

// Shared outer loop. step(v, greedy_at_v) -> v_{k+1} is the only
// solver-specific piece; the residual is evaluated once per outer iteration
// at v_k (one application of D) before the update, and its cost is included
// in the wall time.
template <typename Step>
SolveReport outer_loop(const Mdp& mdp, const RiskMeasure& measure,
                       const SolverConfig& cfg, Step step) {
    check_config(cfg);
    const auto start = Clock::now();
    const std::uint64_t lp_per_apply_d = mdp.total_allowed();

    SolveReport rep;
    ValueVector v = initial_iterate(mdp, cfg);
    Policy greedy;
    for (int k = 0;; ++k) {
        BellmanResult bell = apply_D(mdp, measure, v);
        rep.lp_evals += lp_per_apply_d;
        greedy = std::move(bell.greedy);

        const double res = inf_distance(v, bell.values);
        rep.residual_history.push_back(res);
        if (cfg.record_iterates)
            rep.iterates.push_back(v);

        if (res <= cfg.tol) {
            rep.converged = true;
            rep.outer_iters = k;
            break;
        }
        if (k >= cfg.max_outer) {
            rep.converged = false;
            rep.outer_iters = k;
            break;
        }
        v = step(std::move(v), greedy, std::move(bell.values), k, rep);
    }
    rep.v_final = std::move(v);
    rep.policy_final = std::move(greedy);
    rep.wall_time_seconds = seconds_since(start);
    return rep;
}

} // namespace

SolveReport solve_vi(const Mdp& mdp, const RiskMeasure& measure, const SolverConfig& cfg) {
    return outer_loop(mdp, measure, cfg,
                      [](ValueVector, const Policy&, ValueVector d_values, int,
                         SolveReport&) { return d_values; });
}

SolveReport solve_opi(const Mdp& mdp, const RiskMeasure& measure, const SolverConfig& cfg) {
    return outer_loop(
        mdp, measure, cfg,
        [&](ValueVector, const Policy& pi, ValueVector d_values, int k, SolveReport& rep) {
            // d_values already equals the first sweep: D_pi v_k = D v_k for
            // the greedy policy.
            const int w = sweeps_for(cfg, k);
            ValueVector u = std::move(d_values);
            for (int j = 1; j < w; ++j) {
                u = apply_D_pi(mdp, measure, pi, u);
                rep.lp_evals += static_cast<std::uint64_t>(mdp.n);
            }
            rep.inner_iters_total += w;
            return u;
        });
}

SolveReport solve_snm2(const Mdp& mdp, const RiskMeasure& measure, const SolverConfig& cfg) {
    return outer_loop(
        mdp, measure, cfg,
        [&](ValueVector v, const Policy& pi, ValueVector, int, SolveReport& rep) {
            // Solve v = D_pi v: rebuild pi's worst-case rows at the inner
            // iterate, then one linear solve, until the fixed-policy residual
            // falls below inner_tol.
            ValueVector vt =
                cfg.warm_start ? std::move(v) : ValueVector(mdp.n, 0.0);
            bool inner_converged = false;
            for (int i = 0;; ++i) {
                PolicyFreeze frozen = freeze_policy(mdp, measure, pi, vt);
                rep.lp_evals += static_cast<std::uint64_t>(mdp.n);
                if (inf_distance(vt, frozen.d_pi) <= cfg.inner_tol) {
                    inner_converged = true;
                    break;
                }
                if (i >= cfg.max_inner)
                    break; // keep the last iterate and let the outer loop continue
                vt = policy_eval_linear(policy_system(mdp, pi, frozen.rows));
                rep.inner_iters_total += 1;
            }
            if (!inner_converged)
                rep.inner_failures += 1;
            return vt;
        });
}

SolveReport solve_snm3(const Mdp& mdp, const RiskMeasure& measure, const SolverConfig& cfg) {
    return outer_loop(
        mdp, measure, cfg,
        [&](ValueVector v, const Policy& pi, ValueVector, int, SolveReport& rep) {
            // one linear solve on rows frozen at v_k
            PolicyFreeze frozen = freeze_policy(mdp, measure, pi, v);
            rep.lp_evals += static_cast<std::uint64_t>(mdp.n);
            rep.inner_iters_total += 1;
            return policy_eval_linear(policy_system(mdp, pi, frozen.rows));
        });
}

SolveReport solve_snm1(const Mdp& mdp, const RiskMeasure& measure, const SolverConfig& cfg) {
    check_config(cfg);
    const auto start = Clock::now();
    const std::uint64_t lp_per_build = mdp.total_allowed();

    SolveReport rep;
    ValueVector v = initial_iterate(mdp, cfg);
    Policy greedy;
    for (int k = 0;; ++k) {
        // The kernel built for the update also evaluates the residual:
        // T^{v_k} v_k = D v_k by construction.
        const PerturbedKernel kernel = build_perturbed_kernel(mdp, measure, v);
        rep.lp_evals += lp_per_build;
        BellmanResult bell = apply_T(mdp, kernel, v);
        greedy = std::move(bell.greedy);

        const double res = inf_distance(v, bell.values);
        rep.residual_history.push_back(res);
        if (cfg.record_iterates)
            rep.iterates.push_back(v);

        if (res <= cfg.tol) {
            rep.converged = true;
            rep.outer_iters = k;
            break;
        }
        if (k >= cfg.max_outer) {
            rep.converged = false;
            rep.outer_iters = k;
            break;
        }
        PolicyIterationResult inner =
            risk_neutral_policy_iteration(mdp, kernel, cfg.inner_tol, cfg.max_inner);
        rep.inner_iters_total += inner.iters;
        v = std::move(inner.v);
    }
    rep.v_final = std::move(v);
    rep.policy_final = std::move(greedy);
    rep.wall_time_seconds = seconds_since(start);
    return rep;
}

SolveReport solve(Algorithm algo, const Mdp& mdp, const RiskMeasure& measure,
                  const SolverConfig& cfg) {
    switch (algo) {
    case Algorithm::vi:
        return solve_vi(mdp, measure, cfg);
    case Algorithm::snm1:
        return solve_snm1(mdp, measure, cfg);
    case Algorithm::snm2:
        return solve_snm2(mdp, measure, cfg);
    case Algorithm::snm2_warm: {
        SolverConfig warm = cfg;
        warm.warm_start = true;
        return solve_snm2(mdp, measure, warm);
    }
    case Algorithm::snm3:
        return solve_snm3(mdp, measure, cfg);
    case Algorithm::opi:
        return solve_opi(mdp, measure, cfg);
    }
    throw std::invalid_argument("unknown algorithm");
}

const char* algorithm_name(Algorithm algo) {
    switch (algo) {
    case Algorithm::vi:
        return "vi";
    case Algorithm::snm1:
        return "snm1";
    case Algorithm::snm2:
        return "snm2";
    case Algorithm::snm2_warm:
        return "snm2-warm";
    case Algorithm::snm3:
        return "snm3";
    case Algorithm::opi:
        return "opi";
    }
    return "unknown";
}

std::optional<Algorithm> algorithm_from_name(std::string_view name) {
    if (name == "vi")
        return Algorithm::vi;
    if (name == "snm1")
        return Algorithm::snm1;
    if (name == "snm2")
        return Algorithm::snm2;
    if (name == "snm2-warm")
        return Algorithm::snm2_warm;
    if (name == "snm3")
        return Algorithm::snm3;
    if (name == "opi")
        return Algorithm::opi;
    return std::nullopt;
}

} // namespace riskmdp
