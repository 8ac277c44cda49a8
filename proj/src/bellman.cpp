#include "riskmdp/bellman.hpp"

#include "riskmdp/numeric.hpp"

#include <limits>
#include <stdexcept>

namespace riskmdp {

namespace {

// One shared expression for every operator, so that D, D_pi, T and T_pi
// produce bitwise identical values whenever they agree mathematically.
double action_value(const Mdp& mdp, int state, int action, double chi) {
    return mdp.stage_cost(state, action) + mdp.gamma * chi;
}

void check_iterate(const Mdp& mdp, const ValueVector& v) {
    if (v.size() != static_cast<std::size_t>(mdp.n))
        throw std::invalid_argument("value vector length does not match the state count");
}

void check_policy(const Mdp& mdp, const Policy& pi) {
    if (!is_admissible(mdp, pi))
        throw std::invalid_argument("policy is not admissible for this instance");
}

} // namespace

PerturbedKernel build_perturbed_kernel(const Mdp& mdp, const RiskMeasure& measure,
                                       const ValueVector& anchor) {
    check_iterate(mdp, anchor);
    PerturbedKernel kernel;
    kernel.anchor = anchor;
    kernel.n = mdp.n;
    kernel.m = mdp.m;
    kernel.rows.resize(static_cast<std::size_t>(mdp.n) * mdp.m);
    // n*m independent programs; evaluated sequentially for determinism
    for (int i = 0; i < mdp.n; ++i)
        for (int a : mdp.allowed[i])
            kernel.rows[static_cast<std::size_t>(i) * mdp.m + a] =
                worst_case_row(measure, anchor, mdp.row(i, a));
    return kernel;
}

BellmanResult apply_D(const Mdp& mdp, const RiskMeasure& measure, const ValueVector& v) {
    check_iterate(mdp, v);
    BellmanResult out;
    out.values.resize(mdp.n);
    out.greedy.resize(mdp.n);
    for (int i = 0; i < mdp.n; ++i) {
        double best = std::numeric_limits<double>::infinity();
        int best_action = -1;
        for (int a : mdp.allowed[i]) {
            const WorstCaseRow wcr = worst_case_row(measure, v, mdp.row(i, a));
            const double value = action_value(mdp, i, a, wcr.chi);
            if (value < best) { // strict comparison keeps the lowest index on ties
                best = value;
                best_action = a;
            }
        }
        out.values[i] = best;
        out.greedy[i] = best_action;
    }
    return out;
}

PolicyFreeze freeze_policy(const Mdp& mdp, const RiskMeasure& measure, const Policy& pi,
                           const ValueVector& v) {
    check_iterate(mdp, v);
    check_policy(mdp, pi);
    PolicyFreeze out;
    out.rows.resize(mdp.n);
    out.d_pi.resize(mdp.n);
    for (int i = 0; i < mdp.n; ++i) {
        out.rows[i] = worst_case_row(measure, v, mdp.row(i, pi[i]));
        out.d_pi[i] = action_value(mdp, i, pi[i], out.rows[i].chi);
    }
    return out;
}

ValueVector apply_D_pi(const Mdp& mdp, const RiskMeasure& measure, const Policy& pi,
                       const ValueVector& v) {
    return freeze_policy(mdp, measure, pi, v).d_pi;
}

Residual bellman_residual(const Mdp& mdp, const RiskMeasure& measure,
                          const ValueVector& v) {
    const BellmanResult bell = apply_D(mdp, measure, v);
    Residual res;
    res.values.resize(mdp.n);
    for (int i = 0; i < mdp.n; ++i)
        res.values[i] = v[i] - bell.values[i];
    res.norm = inf_norm(res.values);
    return res;
}

BellmanResult apply_T(const Mdp& mdp, const PerturbedKernel& kernel,
                      const ValueVector& v) {
    check_iterate(mdp, v);
    if (kernel.n != mdp.n || kernel.m != mdp.m)
        throw std::invalid_argument("perturbed kernel was built for another instance");
    BellmanResult out;
    out.values.resize(mdp.n);
    out.greedy.resize(mdp.n);
    for (int i = 0; i < mdp.n; ++i) {
        double best = std::numeric_limits<double>::infinity();
        int best_action = -1;
        for (int a : mdp.allowed[i]) {
            const double value = action_value(mdp, i, a, dot(kernel.at(i, a).row, v));
            if (value < best) {
                best = value;
                best_action = a;
            }
        }
        out.values[i] = best;
        out.greedy[i] = best_action;
    }
    return out;
}

ValueVector apply_T_pi(const Mdp& mdp, const PerturbedKernel& kernel, const Policy& pi,
                       const ValueVector& v) {
    check_iterate(mdp, v);
    check_policy(mdp, pi);
    if (kernel.n != mdp.n || kernel.m != mdp.m)
        throw std::invalid_argument("perturbed kernel was built for another instance");
    ValueVector out(mdp.n);
    for (int i = 0; i < mdp.n; ++i)
        out[i] = action_value(mdp, i, pi[i], dot(kernel.at(i, pi[i]).row, v));
    return out;
}

} // namespace riskmdp
