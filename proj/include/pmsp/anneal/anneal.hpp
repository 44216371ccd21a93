#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "json.hpp"
#include "pmsp/core/instance.hpp"
#include "pmsp/core/rng.hpp"
#include "pmsp/core/solution.hpp"

namespace pmsp {

struct SAParams {
    double t_init = 600.0;
    double t_min = 0.001;
    std::chrono::duration<double> time_limit{300.0};  // per chain
    std::uint64_t seed = 0;
    std::size_t runs = 12;
    /// Replaces the wall-clock limit with a fixed iteration count per chain.
    /// Runs are then bit-for-bit reproducible.
    std::optional<std::uint64_t> iteration_budget;
    /// Run chains on separate threads.
    bool parallel = true;
};

/// Shift of one job to another position in the global order and/or another
/// machine. `new_position` indexes the order after the move.
struct Move {
    std::size_t job = 0;
    std::size_t new_position = 0;
    std::size_t new_machine = 0;

    friend bool operator==(const Move&, const Move&) = default;
};

/// Draws moves uniformly from all precedence- and eligibility-preserving
/// shifts of the current representation, excluding the no-op.
class MoveSampler {
public:
    explicit MoveSampler(const Instance& instance);

    /// Positions the job may take after the move: (last predecessor, first successor).
    std::pair<std::size_t, std::size_t> window(const SolutionRepr& repr, std::size_t job) const;

    /// Number of distinct non-identity moves.
    std::size_t neighbourhood_size(const SolutionRepr& repr) const;

    /// nullopt when the neighbourhood is empty.
    std::optional<Move> sample(const SolutionRepr& repr, Rng& rng) const;

private:
    void refresh_positions(const SolutionRepr& repr) const;

    const Instance& instance_;
    std::vector<std::vector<std::size_t>> succ_;
    mutable std::vector<std::size_t> pos_;
    mutable std::vector<std::size_t> weight_;
};

std::optional<Move> sample_move(const Instance& instance, const SolutionRepr& repr, Rng& rng);

/// Removes the job from its slot and reinserts it at `new_position` on the new
/// machine. Throws std::invalid_argument for no-ops, ineligible machines and
/// shifts that would break the precedence order.
SolutionRepr apply_move(const Instance& instance, const SolutionRepr& repr, const Move& move);

/// Geometric factor that reaches t_min after `steps_left` more multiplications.
double cooling_rate(double t_current, double t_min, double steps_left);

/// Metropolis test for a worsening move (delta > 0).
bool accept(double delta, double t_current, Rng& rng);

struct ChainStats {
    std::uint64_t iterations = 0;
    std::uint64_t accepted = 0;
    std::uint64_t rejected = 0;
    double initial_aggregate = 0.0;
    double best_aggregate = 0.0;
    double final_temperature = 0.0;
    std::uint64_t seed = 0;
};

struct SolveResult {
    SolutionRepr repr;
    Schedule schedule;
    CostBreakdown cost;
    std::vector<ChainStats> chains;
    std::size_t best_chain = 0;
};

struct ChainResult {
    SolutionRepr repr;
    Schedule schedule;
    CostBreakdown cost;
    ChainStats stats;
};

/// One annealing chain from `initial` with RNG seeded by `seed`.
ChainResult run_chain(const Instance& instance, const SAParams& params, const SolutionRepr& initial, std::uint64_t seed);

/// `params.runs` independent chains seeded seed+0, seed+1, ...; the best
/// result wins, ties to the lowest chain index. Without `initial` each chain
/// starts from the construction heuristic's solution.
SolveResult solve(const Instance& instance, const SAParams& params, const std::optional<SolutionRepr>& initial = std::nullopt);

nlohmann::json run_stats_to_json(const SolveResult& result);

}  // namespace pmsp
