#pragma once

#include "riskmdp/bellman.hpp"

#include <cstdint>
#include <optional>
#include <string_view>

namespace riskmdp {

enum class Algorithm { vi, snm1, snm2, snm2_warm, snm3, opi };

const char* algorithm_name(Algorithm algo);
std::optional<Algorithm> algorithm_from_name(std::string_view name);

struct SolverConfig {
    double tol = 1e-6;       // outer stop: ||v - Dv||_inf <= tol
    double inner_tol = 1e-6; // SNM I / SNM II inner tolerance
    int max_outer = 100000;
    int max_inner = 10000;
    bool warm_start = false;            // SNM II inner start: v_k instead of 0
    std::vector<int> opi_sweeps = {20}; // w_k schedule; the last entry repeats
    ValueVector v0;                     // empty = all zeros
    bool record_iterates = false;       // keep the whole iterate sequence
};

struct SolveReport {
    ValueVector v_final;
    Policy policy_final;                   // greedy at v_final
    std::vector<double> residual_history;  // outer_iters + 1 entries, k = 0 first
    int outer_iters = 0;
    std::int64_t inner_iters_total = 0;
    int inner_failures = 0;                // SNM II inner loops that hit max_inner
    std::uint64_t lp_evals = 0;            // envelope maximizations performed
    double wall_time_seconds = 0.0;
    bool converged = false;
    std::vector<ValueVector> iterates;     // v_0..v_final when record_iterates
};

/// Picard-Banach iteration v <- Dv (risk-averse value iteration).
SolveReport solve_vi(const Mdp& mdp, const RiskMeasure& measure, const SolverConfig& cfg);

/// Each outer step freezes the kernel at v_k and solves the induced
/// risk-neutral MDP exactly via policy iteration. The iterate sequence is
/// monotone non-decreasing from k = 1 on.
SolveReport solve_snm1(const Mdp& mdp, const RiskMeasure& measure, const SolverConfig& cfg);

/// Risk-averse policy iteration: greedy improvement followed by an exact
/// policy evaluation, itself solved by an inner Newton iteration (rebuild the
/// policy's worst-case rows at the inner iterate, one linear solve per step).
/// An inner loop that hits max_inner is flagged on the report and the outer
/// loop carries on with the last inner iterate.
SolveReport solve_snm2(const Mdp& mdp, const RiskMeasure& measure, const SolverConfig& cfg);

/// Greedy improvement plus a single linear solve on rows frozen at v_k.
SolveReport solve_snm3(const Mdp& mdp, const RiskMeasure& measure, const SolverConfig& cfg);

/// Optimistic policy iteration: w_k full risk-averse sweeps of the greedy
/// policy operator per outer step. w = 1 reproduces solve_vi exactly.
SolveReport solve_opi(const Mdp& mdp, const RiskMeasure& measure, const SolverConfig& cfg);

SolveReport solve(Algorithm algo, const Mdp& mdp, const RiskMeasure& measure,
                  const SolverConfig& cfg);

} // namespace riskmdp
