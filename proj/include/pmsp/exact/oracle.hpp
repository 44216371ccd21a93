#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

#include "pmsp/core/instance.hpp"
#include "pmsp/core/solution.hpp"

namespace pmsp {

struct OracleLimits {
    std::uint64_t node_cap = 10'000'000;
    std::size_t max_jobs = 8;
    Time max_horizon = 200;
};

enum class OracleStatus { optimal, unsat, budget_exceeded };

std::string_view to_string(OracleStatus status);

struct OracleResult {
    OracleStatus status = OracleStatus::unsat;
    std::optional<SolutionRepr> repr;  // set by enumerate_representations only
    Schedule schedule;                 // valid when status == optimal
    CostBreakdown cost;
    std::uint64_t nodes = 0;
};

/// Chronological branch-and-bound over (job, machine, start) with every
/// constraint tested directly on a time-indexed grid. Does not use the decoder.
/// `unsat` means no feasible schedule exists.
OracleResult exhaustive_time_indexed(const Instance& instance, const OracleLimits& limits = {});

/// Decodes every precedence-valid (order, assignment) pair and keeps the best
/// one without violations. `unsat` here means no representation decodes
/// without violations. One node per decoded representation.
OracleResult enumerate_representations(const Instance& instance, const OracleLimits& limits = {});

}  // namespace pmsp
