#pragma once

#include "riskmdp/mdp.hpp"
#include "riskmdp/risk.hpp"

namespace riskmdp {

/// Worst-case rows for every admissible (state, action) pair, frozen at one
/// anchor vector. Rows maximize <., anchor> over the risk envelope; each
/// stored chi equals <anchor, row>.
struct PerturbedKernel {
    ValueVector anchor;
    int n = 0;
    int m = 0;
    std::vector<WorstCaseRow> rows; // n*m entries; only admissible pairs filled

    const WorstCaseRow& at(int state, int action) const {
        return rows[static_cast<std::size_t>(state) * m + action];
    }
};

struct BellmanResult {
    ValueVector values;
    Policy greedy; // minimizing action per state, lowest index on ties
};

struct Residual {
    ValueVector values; // v - Dv
    double norm = 0.0;  // infinity norm
};

/// Worst-case rows for a fixed policy at v, plus the induced one-step values
/// d_pi(i) = g(i, pi(i)) + gamma * rows[i].chi (which equal apply_D_pi(v)).
struct PolicyFreeze {
    std::vector<WorstCaseRow> rows; // one row per state
    ValueVector d_pi;
};

PerturbedKernel build_perturbed_kernel(const Mdp& mdp, const RiskMeasure& measure,
                                       const ValueVector& anchor);

/// Risk-averse optimality operator: values(i) = min over admissible a of
/// g(i,a) + gamma * chi(v, P(i,a)). Worst-case rows are recomputed from v on
/// every call; freezing them at an earlier iterate would silently change the
/// algorithm.
BellmanResult apply_D(const Mdp& mdp, const RiskMeasure& measure, const ValueVector& v);

/// Fixed-policy risk-averse operator (throws on an inadmissible policy).
ValueVector apply_D_pi(const Mdp& mdp, const RiskMeasure& measure, const Policy& pi,
                       const ValueVector& v);

PolicyFreeze freeze_policy(const Mdp& mdp, const RiskMeasure& measure, const Policy& pi,
                           const ValueVector& v);

/// r(v) = v - Dv and its infinity norm (the stopping criterion).
Residual bellman_residual(const Mdp& mdp, const RiskMeasure& measure,
                          const ValueVector& v);

/// Risk-neutral optimality operator on the frozen rows: values(i) = min over
/// a of g(i,a) + gamma * <rows(i,a), v>. No envelope maximization happens
/// here; at v = kernel.anchor this coincides with apply_D(anchor) exactly.
BellmanResult apply_T(const Mdp& mdp, const PerturbedKernel& kernel,
                      const ValueVector& v);

/// Affine fixed-policy operator g_pi + gamma * P_pi v on the frozen rows.
ValueVector apply_T_pi(const Mdp& mdp, const PerturbedKernel& kernel, const Policy& pi,
                       const ValueVector& v);

} // namespace riskmdp
