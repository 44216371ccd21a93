#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "pmsp/core/instance.hpp"

namespace pmsp {

/// Global job permutation plus per-job machine assignment.
struct SolutionRepr {
    std::vector<std::size_t> order;   // permutation of job indices
    std::vector<std::size_t> assign;  // assign[job] = machine index

    friend bool operator==(const SolutionRepr&, const SolutionRepr&) = default;
};

/// Why a job could not be placed within the calendars.
enum class Violated { none, resource, machine_availability };

std::string_view to_string(Violated v);
std::optional<Violated> violated_from_string(std::string_view s);

struct Placement {
    std::size_t machine = 0;
    Time start = 0;
    Time end = 0;
    Time setup = 0;
    std::optional<std::size_t> prev;  // nullopt = machine start dummy
    std::vector<Window> spanned;      // downtimes the job is paused across
    Violated violated = Violated::none;

    friend bool operator==(const Placement&, const Placement&) = default;
};

struct Schedule {
    std::vector<Placement> jobs;  // indexed by job

    /// Jobs on `machine` in prev-chain order, following the chain from the dummy.
    std::vector<std::size_t> machine_sequence(std::size_t machine) const;

    friend bool operator==(const Schedule&, const Schedule&) = default;
};

struct CostBreakdown {
    Time tardiness = 0;
    Time makespan = 0;
    Time setup_total = 0;
    std::size_t violations = 0;
    double big_m = 0.0;
    double aggregate = 0.0;

    friend bool operator==(const CostBreakdown&, const CostBreakdown&) = default;
};

/// True iff `repr` is a permutation of all jobs with eligible assignments.
bool repr_well_formed(const Instance& instance, const SolutionRepr& repr);

/// True iff every predecessor appears before its dependent in `repr.order`.
bool precedence_order_ok(const Instance& instance, const SolutionRepr& repr);

}  // namespace pmsp
