#include "riskmdp/risk.hpp"

#include "riskmdp/mdp.hpp"
#include "riskmdp/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace riskmdp {

namespace {

void check_probability_row(std::span<const double> p) {
    double sum = 0.0;
    for (double x : p) {
        if (!(x >= 0.0)) // catches negatives and NaN
            throw std::invalid_argument("probability row has a negative or NaN entry");
        sum += x;
    }
    if (std::abs(sum - 1.0) > kRowSumTol)
        throw std::invalid_argument("probability row does not sum to 1");
}

void check_zeta(double zeta) {
    if (!(zeta > 0.0) || zeta > 1.0)
        throw std::invalid_argument("confidence level zeta must lie in (0, 1]");
}

} // namespace

WorstCaseRow worst_case_row(const RiskMeasure& measure, std::span<const double> v,
                            std::span<const double> p, TieBreak tie_break) {
    if (v.size() != p.size())
        throw std::invalid_argument("value vector and probability row differ in length");
    check_probability_row(p);
    const double zeta = measure.effective_zeta();
    check_zeta(zeta);

    const int n = static_cast<int>(p.size());
    WorstCaseRow out;

    if (zeta == 1.0) {
        // caps equal p, so p is the only feasible point
        out.row.assign(p.begin(), p.end());
        out.chi = dot(out.row, v);
        return out;
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    if (tie_break == TieBreak::ascending_index) {
        std::sort(order.begin(), order.end(),
                  [&v](int a, int b) { return v[a] != v[b] ? v[a] > v[b] : a < b; });
    } else {
        std::sort(order.begin(), order.end(),
                  [&v](int a, int b) { return v[a] != v[b] ? v[a] > v[b] : a > b; });
    }

    out.row.assign(p.size(), 0.0);
    double remaining = 1.0;
    for (int j : order) {
        const double cap = p[j] / zeta;
        const double take = std::min(cap, remaining);
        out.row[j] = take;
        remaining -= take;
        if (remaining <= 0.0)
            break;
    }
    out.chi = dot(out.row, v);
    return out;
}

double cvar_primal_value(std::span<const double> v, std::span<const double> p,
                         double zeta) {
    if (v.size() != p.size())
        throw std::invalid_argument("value vector and probability row differ in length");
    check_probability_row(p);
    check_zeta(zeta);

    double best = std::numeric_limits<double>::infinity();
    for (double z : v) {
        double tail = 0.0;
        for (std::size_t j = 0; j < p.size(); ++j)
            tail += p[j] * std::max(v[j] - z, 0.0);
        best = std::min(best, z + tail / zeta);
    }
    return best;
}

double brute_force_worst_case_chi(std::span<const double> v, std::span<const double> p,
                                  double zeta) {
    constexpr int kMaxStates = 12;
    constexpr double kFeasEps = 1e-12;

    if (v.size() != p.size())
        throw std::invalid_argument("value vector and probability row differ in length");
    check_probability_row(p);
    check_zeta(zeta);
    const int n = static_cast<int>(p.size());
    if (n > kMaxStates)
        throw std::invalid_argument("vertex enumeration is limited to n <= 12 states");

    std::vector<double> cap(n);
    for (int j = 0; j < n; ++j)
        cap[j] = p[j] / zeta;

    double best = -std::numeric_limits<double>::infinity();
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        double cap_sum = 0.0;
        double cap_value = 0.0;
        for (int j = 0; j < n; ++j) {
            if (mask & (1u << j)) {
                cap_sum += cap[j];
                cap_value += cap[j] * v[j];
            }
        }
        const double rem = 1.0 - cap_sum;
        if (rem < -kFeasEps)
            continue;
        for (int f = 0; f < n; ++f) {
            if (mask & (1u << f))
                continue;
            if (rem > cap[f] + kFeasEps)
                continue;
            const double mass = std::clamp(rem, 0.0, cap[f]);
            best = std::max(best, cap_value + mass * v[f]);
        }
    }
    return best;
}

} // namespace riskmdp
