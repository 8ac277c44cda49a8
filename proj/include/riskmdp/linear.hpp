#pragma once

#include "riskmdp/bellman.hpp"
#include "riskmdp/mdp.hpp"

namespace riskmdp {

/// Policy-evaluation system (I - gamma*P) v = g on a frozen kernel. P is
/// row-stochastic, so I - gamma*P is nonsingular for any gamma in (0,1).
struct LinearSystem {
    int n = 0;
    std::vector<double> P; // n*n, row-major
    std::vector<double> g; // n
    double gamma = 0.0;
};

/// Assembles the system for one policy from per-state frozen rows.
LinearSystem policy_system(const Mdp& mdp, const Policy& pi,
                           const std::vector<WorstCaseRow>& rows);

/**
 * Dense LU solve with partial pivoting. The result v satisfies
 * ||(I - gamma*P) v - g||_inf <= 1e-10 * (1 + ||g||_inf) for valid inputs.
 * Throws SolverError when a pivot falls below 1e-14, which cannot happen for
 * a row-stochastic P and signals corrupted data upstream.
 */
ValueVector policy_eval_linear(const LinearSystem& sys);

struct PolicyIterationResult {
    ValueVector v;
    Policy policy;
    int iters = 0; // policy evaluations (linear solves) performed
};

/**
 * Classical policy iteration on the risk-neutral MDP induced by the frozen
 * kernel: evaluate the current policy exactly, improve greedily under the
 * frozen optimality operator (lowest action index on ties), stop when the
 * greedy policy repeats or ||v - Tv||_inf <= tol. Returns the fixed point of
 * the frozen optimality operator. max_iters <= 0 selects the default cap of
 * 10*n*m; exceeding the cap throws SolverError since finite termination is
 * guaranteed in exact arithmetic.
 */
PolicyIterationResult risk_neutral_policy_iteration(const Mdp& mdp,
                                                    const PerturbedKernel& kernel,
                                                    double tol, int max_iters = 0);

} // namespace riskmdp
