#pragma once

#include <span>
#include <vector>

namespace riskmdp {

enum class RiskKind { expectation, cvar };

/// Which maximizer to return when several coordinates of v tie inside the
/// envelope maximization. The maximizer set is generally not a singleton; a
/// fixed rule keeps every solver run reproducible. All solvers use
/// ascending_index.
enum class TieBreak { ascending_index, descending_index };

struct RiskMeasure {
    RiskKind kind = RiskKind::cvar;
    double zeta = 1.0; // confidence level in (0, 1]; ignored for expectation

    static RiskMeasure expectation() { return {RiskKind::expectation, 1.0}; }
    static RiskMeasure cvar(double zeta) { return {RiskKind::cvar, zeta}; }

    /// Expectation behaves exactly like CVaR at level 1.
    double effective_zeta() const { return kind == RiskKind::expectation ? 1.0 : zeta; }
};

/// A maximizing distribution over next states together with the attained
/// value chi = <v, row>.
struct WorstCaseRow {
    std::vector<double> row;
    double chi = 0.0;
};

/**
 * Exact maximizer of <v, q> over the capped simplex
 *
 *     { q : 0 <= q <= p / zeta, sum(q) = 1 }.
 *
 * The program is a continuous knapsack, solved greedily: visit coordinates
 * by descending v (ties by the requested index rule), fill each to its cap
 * until total mass 1 is placed, give the pivot coordinate the remainder,
 * zeros elsewhere. At zeta = 1 the envelope collapses to {p} and p itself is
 * returned. Throws std::invalid_argument on an invalid probability row or a
 * confidence level outside (0, 1].
 */
WorstCaseRow worst_case_row(const RiskMeasure& measure, std::span<const double> v,
                            std::span<const double> p,
                            TieBreak tie_break = TieBreak::ascending_index);

/**
 * Value of min_z { z + (1/zeta) <max(v - z, 0), p> }. The objective is
 * piecewise affine in z with breakpoints at the entries of v, so scanning
 * the breakpoints is exact. Independent primal route to worst_case_row().chi.
 */
double cvar_primal_value(std::span<const double> v, std::span<const double> p,
                         double zeta);

/**
 * Worst-case value by enumerating the vertices of the capped simplex: every
 * vertex has all coordinates at a bound except at most one, so it suffices
 * to enumerate the saturated set and the fractional coordinate. Exponential;
 * restricted to n <= 12 and meant as a cross-check for worst_case_row.
 */
double brute_force_worst_case_chi(std::span<const double> v, std::span<const double> p,
                                  double zeta);

} // namespace riskmdp
