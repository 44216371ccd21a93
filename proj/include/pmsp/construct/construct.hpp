#pragma once

#include <cstddef>
#include <set>
#include <vector>

#include "pmsp/core/instance.hpp"
#include "pmsp/core/solution.hpp"

namespace pmsp {

/// Jobs whose predecessors have all been committed.
class ActiveSet {
public:
    explicit ActiveSet(const Instance& instance);

    const std::set<std::size_t>& jobs() const { return active_; }
    bool contains(std::size_t job) const { return active_.count(job) > 0; }
    bool empty() const { return active_.empty(); }

    /// Removes `job` and activates every dependent whose last outstanding
    /// predecessor it was. Throws std::invalid_argument if `job` is not active.
    void commit(std::size_t job);

private:
    std::vector<std::vector<std::size_t>> succ_;
    std::vector<std::size_t> outstanding_;
    std::set<std::size_t> active_;
};

ActiveSet update_active(ActiveSet active, std::size_t committed);

struct Constructed {
    SolutionRepr repr;
    Schedule schedule;
    CostBreakdown cost;
    std::size_t fallbacks = 0;  // jobs placed ignoring capacities
};

/// Earliest-due-date dispatching: among active jobs with the smallest due date,
/// commits the (job, machine) pair with the earliest completion, ties to the
/// lower job index and then the lower machine index. When none of those jobs
/// fits anywhere, the lowest-index one is placed ignoring resources on the
/// machine where it finishes first.
/// Throws std::invalid_argument for instances with defects.
Constructed construct(const Instance& instance);

}  // namespace pmsp
