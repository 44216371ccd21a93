#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "pmsp/core/instance.hpp"
#include "pmsp/core/solution.hpp"

namespace pmsp {

enum class ConstraintFamily {
    release,
    downtime_boundary,
    end_equation,
    precedence_lag,
    prev_chain,
    eligibility,
    resource_capacity,
    horizon,
};

std::string_view to_string(ConstraintFamily family);

struct ConstraintViolation {
    ConstraintFamily family = ConstraintFamily::release;
    std::optional<std::size_t> job;
    std::optional<std::size_t> resource;
    std::optional<Time> slot;
    std::vector<std::size_t> running;  // jobs drawing on the resource at `slot`
    std::string detail;
};

struct ViolationReport {
    std::vector<ConstraintViolation> entries;

    bool empty() const { return entries.empty(); }
    std::size_t count(ConstraintFamily family) const;
    /// True if some entry concerns `job`, directly or as a consumer at an
    /// over-subscribed slot.
    bool implicates(std::size_t job) const;
};

/// Re-checks every schedule constraint from scratch by scanning individual
/// slots. Shares no code with the dispatcher.
ViolationReport check_feasibility(const Instance& instance, const Schedule& schedule);

nlohmann::json report_to_json(const ViolationReport& report);

}  // namespace pmsp
