#include "riskmdp/linear.hpp"

#include "riskmdp/errors.hpp"
#include "riskmdp/numeric.hpp"

#include <Eigen/Dense>

#include <stdexcept>

namespace riskmdp {

LinearSystem policy_system(const Mdp& mdp, const Policy& pi,
                           const std::vector<WorstCaseRow>& rows) {
    if (rows.size() != static_cast<std::size_t>(mdp.n))
        throw std::invalid_argument("expected one frozen row per state");
    LinearSystem sys;
    sys.n = mdp.n;
    sys.gamma = mdp.gamma;
    sys.P.resize(static_cast<std::size_t>(mdp.n) * mdp.n);
    sys.g.resize(mdp.n);
    for (int i = 0; i < mdp.n; ++i) {
        const auto& row = rows[i].row;
        for (int j = 0; j < mdp.n; ++j)
            sys.P[static_cast<std::size_t>(i) * mdp.n + j] = row[j];
        sys.g[i] = mdp.stage_cost(i, pi[i]);
    }
    return sys;
}

ValueVector policy_eval_linear(const LinearSystem& sys) {
    const int n = sys.n;
    if (n < 1 || sys.P.size() != static_cast<std::size_t>(n) * n ||
        sys.g.size() != static_cast<std::size_t>(n))
        throw std::invalid_argument("linear system has inconsistent dimensions");
    if (!(sys.gamma > 0.0 && sys.gamma < 1.0))
        throw std::invalid_argument("discount factor must lie in (0, 1)");

    Eigen::MatrixXd A = Eigen::MatrixXd::Identity(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            A(i, j) -= sys.gamma * sys.P[static_cast<std::size_t>(i) * n + j];

    Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);
    // I - gamma*P is strictly row diagonally dominant, so a tiny pivot can
    // only mean the input was not row-stochastic to begin with.
    const double min_pivot = lu.matrixLU().diagonal().cwiseAbs().minCoeff();
    if (min_pivot < 1e-14)
        throw SolverError("factorization pivot below 1e-14: coefficient matrix is not a "
                          "valid policy-evaluation system");

    const Eigen::Map<const Eigen::VectorXd> g(sys.g.data(), n);
    const Eigen::VectorXd x = lu.solve(g);
    return ValueVector(x.data(), x.data() + n);
}

PolicyIterationResult risk_neutral_policy_iteration(const Mdp& mdp,
                                                    const PerturbedKernel& kernel,
                                                    double tol, int max_iters) {
    if (!(tol > 0.0))
        throw std::invalid_argument("tolerance must be positive");
    if (kernel.n != mdp.n || kernel.m != mdp.m)
        throw std::invalid_argument("perturbed kernel was built for another instance");
    if (max_iters <= 0)
        max_iters = 10 * mdp.n * mdp.m;

    // start from the lowest admissible action in every state
    Policy pi(mdp.n);
    for (int i = 0; i < mdp.n; ++i)
        pi[i] = mdp.allowed[i].front();

    std::vector<WorstCaseRow> rows(mdp.n);
    PolicyIterationResult out;
    for (int iter = 1;; ++iter) {
        if (iter > max_iters)
            throw SolverError("policy iteration exceeded its iteration cap: greedy "
                              "selection is cycling");
        for (int i = 0; i < mdp.n; ++i)
            rows[i] = kernel.at(i, pi[i]);
        out.v = policy_eval_linear(policy_system(mdp, pi, rows));
        out.iters = iter;

        const BellmanResult t = apply_T(mdp, kernel, out.v);
        if (inf_distance(out.v, t.values) <= tol || t.greedy == pi) {
            out.policy = std::move(pi);
            break;
        }
        pi = t.greedy;
    }
    return out;
}

} // namespace riskmdp
