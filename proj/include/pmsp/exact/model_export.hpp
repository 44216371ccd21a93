#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "pmsp/core/instance.hpp"

namespace pmsp {

/// Fixed synthetic job that occupies `cmax - capacity` units of a resource
/// over one calendar interval, so a single cumulative bound of cmax models a
/// time-varying capacity.
struct PlaceholderJob {
    std::size_t resource = 0;
    Time start = 0;
    Time end = 0;
    int demand = 0;

    friend bool operator==(const PlaceholderJob&, const PlaceholderJob&) = default;
};

/// One placeholder per calendar interval whose capacity is below the
/// resource's maximum.
std::vector<PlaceholderJob> build_placeholder_jobs(const Instance& instance);

/// Maximal stretch of machine availability between downtimes.
struct MachinePeriod {
    std::size_t machine = 0;
    Time start = 0;
    Time end = 0;
};

std::vector<MachinePeriod> machine_periods(const Instance& instance);

struct ModelArtifacts {
    std::vector<MachinePeriod> periods;
    std::vector<PlaceholderJob> placeholders;
    std::size_t cumulative_groups = 0;  // one per resource
    std::size_t job_parts = 0;          // (jobs + placeholders) x periods
};

ModelArtifacts model_artifacts(const Instance& instance);

struct ModelText {
    std::string model;  // MiniZinc model (.mzn)
    std::string data;   // MiniZinc data (.dzn)
};

/// Declarative MiniZinc model of the instance. Deterministic: the same
/// instance always yields the same bytes.
ModelText constraint_model_text(const Instance& instance);

/// Writes `<stem>.mzn` and `<stem>.dzn`. Throws std::runtime_error on I/O failure.
ModelArtifacts export_constraint_model(const Instance& instance, const std::filesystem::path& stem);

}  // namespace pmsp
