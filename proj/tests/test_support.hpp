#pragma once

#include "riskmdp/mdp.hpp"
#include "riskmdp/prng.hpp"

#include <cmath>
#include <cstdint>
#include <vector>

namespace testsup {

/// Two-state, one-action fixture used throughout: kernel rows [0.5, 0.5] and
/// [0, 1], costs [1, 0], gamma 0.5. With CVaR at zeta = 0.5 the optimal cost
/// is [2, 0].
inline riskmdp::Mdp two_state() {
    riskmdp::Mdp mdp;
    mdp.n = 2;
    mdp.m = 1;
    mdp.gamma = 0.5;
    mdp.cost_bound = 1.0;
    mdp.allowed = {{0}, {0}};
    mdp.cost = {1.0, 0.0};
    mdp.kernel = {0.5, 0.5, 0.0, 1.0};
    return mdp;
}

struct Rng {
    riskmdp::SplitMix64 gen;
    explicit Rng(std::uint64_t seed) : gen(seed) {}

    double uniform(double lo, double hi) { return lo + (hi - lo) * gen.next_double(); }
    int uniform_int(int lo, int hi) { // inclusive bounds
        return lo + static_cast<int>(gen.next() % static_cast<std::uint64_t>(hi - lo + 1));
    }
    std::vector<double> vector(int n, double lo, double hi) {
        std::vector<double> v(n);
        for (double& x : v)
            x = uniform(lo, hi);
        return v;
    }
    /// Probability row; zero_share of the coordinates are forced to exact 0.
    std::vector<double> probability_row(int n, double zero_share = 0.0) {
        std::vector<double> p(n);
        double sum = 0.0;
        for (double& x : p) {
            x = gen.next_double();
            if (zero_share > 0.0 && gen.next_double() < zero_share)
                x = 0.0;
            sum += x;
        }
        if (sum == 0.0) { // all zeroed out; fall back to a point mass
            p[0] = 1.0;
            sum = 1.0;
        }
        for (double& x : p)
            x /= sum;
        return p;
    }
};

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

struct InstanceSpec {
    int n, m;
    double gamma, zeta;
    std::uint64_t seed;
};

/// 20 instances spanning n in {10,50}, m in {2,5}, gamma in {0.1,0.9} and
/// zeta in {0.3,0.7}: the 16 combinations plus 4 repeats under fresh seeds.
inline std::vector<InstanceSpec> agreement_grid() {
    std::vector<InstanceSpec> specs;
    std::uint64_t seed = 1000;
    for (int n : {10, 50})
        for (int m : {2, 5})
            for (double gamma : {0.1, 0.9})
                for (double zeta : {0.3, 0.7})
                    specs.push_back({n, m, gamma, zeta, seed++});
    specs.push_back({50, 5, 0.9, 0.3, 2000});
    specs.push_back({50, 2, 0.9, 0.7, 2001});
    specs.push_back({10, 5, 0.9, 0.3, 2002});
    specs.push_back({50, 5, 0.1, 0.7, 2003});
    return specs;
}

} // namespace testsup
