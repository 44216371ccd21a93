#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pmsp/core/instance.hpp"
#include "pmsp/core/rng.hpp"
#include "pmsp/core/solution.hpp"

namespace pmsp {

class GenerationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct IntRange {
    std::int64_t lo = 0;
    std::int64_t hi = 0;
};

enum class LagMode { uniform_gap, zero };

struct GenConfig {
    std::size_t jobs = 10;
    std::size_t machines = 2;
    std::size_t resources = 5;
    std::size_t chains = 1;
    std::optional<std::size_t> materials;  // default max(2, jobs / 5)
    IntRange proc{1, 100};
    IntRange setup{1, 50};  // between different materials and from the machine start
    IntRange demand{1, 3};
    IntRange resources_per_material{1, 2};
    IntRange downtimes_per_machine{0, 2};
    double machine_demand_probability = 0.3;
    LagMode lag_mode = LagMode::uniform_gap;
    Time due_slack = 20;
    Time release_slack = 20;
    double horizon_factor = 1.5;
    Weights weights;
    std::uint64_t seed = 0;
};

/// Throws GenerationError when the knobs contradict each other.
void check_config(const GenConfig& config);

/// Named configurations: the size grid "n<N>-c<C>-k<K>-s<S>" with
/// N in {10,20}, C in {N/10, N/4}, K in {2,5}, S in {5,10}; plus "tiny"
/// (oracle-sized), "large" (100 jobs) and "plant" (700 jobs, 60 machines,
/// 80 resources).
std::optional<GenConfig> preset(std::string_view name);
std::vector<std::string> preset_names();
std::vector<std::string> grid_preset_names();

/// Schedule built by the generator's own dispatching rule; every instance it
/// emits admits this schedule.
struct ReferenceSolution {
    SolutionRepr repr;                    // jobs ordered by reference start
    Schedule schedule;
    std::vector<std::vector<int>> usage;  // [resource][slot] demand of running jobs + machines
    Time makespan = 0;
};

/// Shuffles the jobs and appends each to the eligible machine whose current
/// last job gives the shortest setup (ties to the lowest machine index),
/// back to back from time 0. Only processing times, setups and demands of
/// `partial` are read.
ReferenceSolution build_reference_solution(const Instance& partial, Rng& rng);

/// Splits [0, horizon) at every switch between zero and non-zero usage; busy
/// periods get the peak usage as capacity, idle periods get 0.
std::vector<CapacityInterval> calendar_from_usage(std::span<const int> usage, Time horizon);
std::vector<CapacityInterval> derive_resource_calendar(const ReferenceSolution& reference, std::size_t resource,
                                                       Time horizon);

/// `count` chains of 2-4 jobs that do not overlap in the reference, each job
/// in at most one chain. Consecutive members get a precedence whose lag fits
/// in their reference gap. Returns predecessor lists per job.
std::vector<std::vector<Precedence>> sample_precedence_chains(const ReferenceSolution& reference, std::size_t count,
                                                              LagMode lag_mode, Rng& rng);

struct DatesAndDowntimes {
    std::vector<Time> due;
    std::vector<Time> release;
    std::vector<std::vector<Window>> downtimes;  // per machine
};

/// Due and release dates jittered around the reference times, and downtimes
/// placed in idle stretches of each machine's reference timeline.
DatesAndDowntimes derive_dates_and_downtimes(const ReferenceSolution& reference, const GenConfig& config,
                                             std::size_t machines, Time horizon, Rng& rng);

struct Generated {
    Instance instance;
    ReferenceSolution reference;
};

/// Deterministic in the configuration (including its seed).
Generated generate(const GenConfig& config);

}  // namespace pmsp
