#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace riskmdp {

using ValueVector = std::vector<double>; // one entry per state
using Policy = std::vector<int>;         // chosen action index per state

/// Absolute tolerance on |sum(row) - 1| for probability rows.
inline constexpr double kRowSumTol = 1e-12;

/**
 * Finite discounted MDP with dense transition kernel.
 *
 * Storage is flat and row-major: cost(i, a) lives at index i*m + a and the
 * kernel row for (i, a) occupies the n entries starting at (i*m + a)*n.
 * States and actions are 0-based everywhere, including serialized files and
 * diagnostic messages.
 *
 * Instances are immutable after construction and safe to share across
 * threads; all free functions below are pure.
 */
struct Mdp {
    int n = 0;
    int m = 0;
    double gamma = 0.0;
    double cost_bound = 1.0; // declared bound R on |cost(i, a)|
    std::string prng = "splitmix64";
    std::optional<std::uint64_t> seed;
    std::vector<std::vector<int>> allowed; // admissible actions per state, ascending
    std::vector<double> cost;              // n*m entries
    std::vector<double> kernel;            // n*m*n entries

    std::span<const double> row(int state, int action) const {
        return {kernel.data() + (static_cast<std::size_t>(state) * m + action) * n,
                static_cast<std::size_t>(n)};
    }
    double stage_cost(int state, int action) const {
        return cost[static_cast<std::size_t>(state) * m + action];
    }
    bool is_allowed(int state, int action) const;

    /// Number of admissible (state, action) pairs.
    std::size_t total_allowed() const;

    bool operator==(const Mdp&) const = default;
};

struct ValidationReport {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

/// Checks every model invariant; violations carry state/action coordinates.
ValidationReport validate_mdp(const Mdp& mdp);

bool is_admissible(const Mdp& mdp, const Policy& pi);

/**
 * Seeded random instance: every kernel row is n uniform(0,1) draws normalized
 * by their sum, stage costs are uniform(0,1), all actions admissible. Draw
 * order is fixed (all kernel rows in (state, action) order, then all costs)
 * so a seed identifies the instance exactly.
 *
 * Throws std::invalid_argument when n < 1, m < 1 or gamma is outside (0,1).
 */
Mdp random_mdp(int n, int m, double gamma, std::uint64_t seed);

/// Writes the JSON document described in the README; reals are emitted with
/// 17 significant digits so that loading reproduces identical doubles.
/// Returns the number of bytes written.
std::size_t save_mdp(const Mdp& mdp, std::ostream& out);
std::size_t save_mdp_file(const Mdp& mdp, const std::string& path);

/// Parses and validates an instance document. Throws ParseError naming the
/// offending field for schema problems and ValidationError (with
/// coordinates) when the data breaks a model invariant.
Mdp load_mdp(std::istream& in);
Mdp load_mdp_file(const std::string& path);

} // namespace riskmdp
