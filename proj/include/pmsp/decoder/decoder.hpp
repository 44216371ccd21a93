#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "pmsp/core/instance.hpp"
#include "pmsp/core/solution.hpp"

namespace pmsp {

struct EndTime {
    Time end = 0;
    std::vector<Window> spanned;
};

/// End of a job started at `start` that needs `setup + proc` units of machine
/// time. Work pauses across every downtime it reaches; such windows are spanned
/// and end > window.end holds for each of them. `start` must not lie inside a
/// downtime and `downtimes` must be sorted.
EndTime compute_end(Time start, Time setup, Time proc, std::span<const Window> downtimes);

/// Index of the window containing slot t, if any.
std::optional<std::size_t> downtime_at(std::span<const Window> downtimes, Time t);

/// Units of one resource held by a job while running on a given machine.
struct ResourceNeed {
    std::size_t resource = 0;
    int amount = 0;
};

/// Combined job + machine demand, non-zero entries only.
std::vector<ResourceNeed> resource_needs(const Instance& instance, std::size_t job, std::size_t machine);

/// Residual capacity per resource and integer slot of [0, horizon).
class ResourceTimeline {
public:
    explicit ResourceTimeline(const Instance& instance);

    Time horizon() const { return horizon_; }
    std::size_t resource_count() const { return residual_.size(); }

    /// Residual at slot t; slots outside [0, horizon) have none.
    int residual(std::size_t resource, Time t) const;

    /// First slot of [start, end) outside `spanned` where some need exceeds the
    /// residual, or nullopt when all slots fit.
    std::optional<Time> first_conflict(std::span<const ResourceNeed> needs, Time start, Time end,
                                       std::span<const Window> spanned) const;

    /// Subtracts the needs over the occupied slots. Residuals may go negative
    /// (fallback placements); slots beyond the horizon are ignored.
    void reserve(std::span<const ResourceNeed> needs, Time start, Time end, std::span<const Window> spanned);
    void release(std::span<const ResourceNeed> needs, Time start, Time end, std::span<const Window> spanned);

    friend bool operator==(const ResourceTimeline&, const ResourceTimeline&) = default;

private:
    void apply(std::span<const ResourceNeed> needs, Time start, Time end, std::span<const Window> spanned, int sign);

    Time horizon_ = 0;
    std::vector<std::vector<int>> residual_;
};

/// Earliest t >= lower_bound where the job can run on `machine` after `prev`:
/// t outside every downtime, end within the horizon, and every occupied slot
/// has enough residual for all needs. nullopt when no such t exists.
std::optional<Time> earliest_start(const Instance& instance, const ResourceTimeline& timeline, std::size_t machine,
                                   std::size_t job, std::optional<std::size_t> prev, Time lower_bound);

/// Incremental earliest-start dispatcher shared by decoding and construction.
/// Jobs are committed one at a time; each goes after the last job already
/// committed on its machine.
class Dispatcher {
public:
    explicit Dispatcher(const Instance& instance);

    struct Probe {
        Time start = 0;
        Time end = 0;
    };

    bool committed(std::size_t job) const { return committed_[job]; }
    std::optional<std::size_t> last_on(std::size_t machine) const { return last_[machine]; }

    /// max(release, machine's last end, every predecessor end + lag).
    /// All predecessors must already be committed.
    Time lower_bound(std::size_t job, std::size_t machine) const;

    /// Earliest feasible placement against the current partial schedule.
    std::optional<Probe> probe(std::size_t job, std::size_t machine) const;

    /// Placement used when no feasible start exists: the earliest start that
    /// avoids downtimes, ignoring resource capacities and the horizon. Flagged
    /// `resource` if it still ends within the horizon, else `machine_availability`.
    Placement fallback(std::size_t job, std::size_t machine) const;

    /// Places the job at its probed start, or by `fallback` when stuck.
    const Placement& commit(std::size_t job, std::size_t machine);

    const Schedule& schedule() const { return schedule_; }
    const ResourceTimeline& timeline() const { return timeline_; }

private:
    Placement place_at(std::size_t job, std::size_t machine, Time start) const;

    const Instance& instance_;
    ResourceTimeline timeline_;
    Schedule schedule_;
    std::vector<bool> committed_;
    std::vector<std::optional<std::size_t>> last_;
};

struct Decoded {
    Schedule schedule;
    CostBreakdown cost;
};

/// Commits the jobs in `repr.order` on their assigned machines as early as
/// possible. Throws std::invalid_argument if `repr` is malformed or breaks the
/// precedence order.
Decoded decode(const Instance& instance, const SolutionRepr& repr);

/// Penalty per violated job; strictly above any feasible aggregate.
double big_m(const Instance& instance);

CostBreakdown evaluate(const Instance& instance, const Schedule& schedule);

}  // namespace pmsp
