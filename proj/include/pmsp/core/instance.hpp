#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace pmsp {

/// Discrete time unit. All calendars, durations and lags are integral.
using Time = std::int64_t;

/// Half-open window [start, end). A job occupying it uses slots start..end-1.
struct Window {
    Time start = 0;
    Time end = 0;

    Time length() const { return end - start; }
    bool contains(Time t) const { return start <= t && t < end; }
    friend bool operator==(const Window&, const Window&) = default;
};

struct CapacityInterval {
    Time start = 0;
    Time end = 0;
    int capacity = 0;
    friend bool operator==(const CapacityInterval&, const CapacityInterval&) = default;
};

struct Precedence {
    std::size_t pred = 0;  // job index
    Time lag = 0;
    friend bool operator==(const Precedence&, const Precedence&) = default;
};

struct Machine {
    std::vector<Window> downtimes;  // sorted, disjoint
    std::vector<int> demand;        // per resource, units held while processing
    friend bool operator==(const Machine&, const Machine&) = default;
};

struct Resource {
    std::vector<CapacityInterval> capacity;  // partition of [0, horizon)

    int cmax() const;
    /// Capacity at slot t; 0 outside the calendar.
    int capacity_at(Time t) const;
    friend bool operator==(const Resource&, const Resource&) = default;
};

struct Job {
    std::vector<std::size_t> eligible;  // machine indices, ascending
    std::vector<Time> proc;             // indexed by machine; only eligible entries are meaningful
    Time due = 0;
    Time release = 0;
    std::vector<int> demand;  // per resource
    std::vector<Precedence> preds;
    std::optional<int> material;

    bool eligible_on(std::size_t machine) const;
    friend bool operator==(const Job&, const Job&) = default;
};

/// Dense setup table s[m][p][j]. Predecessor index `jobs` denotes the machine
/// start dummy b_m. Entries that were never defined hold `kUndefined`.
class SetupTable {
public:
    static constexpr std::int32_t kUndefined = -1;

    SetupTable() = default;
    SetupTable(std::size_t machines, std::size_t jobs, std::int32_t fill = kUndefined);

    std::size_t machines() const { return machines_; }
    std::size_t jobs() const { return jobs_; }
    std::size_t dummy() const { return jobs_; }

    std::int32_t at(std::size_t machine, std::size_t pred, std::size_t job) const {
        return data_[index(machine, pred, job)];
    }
    void set(std::size_t machine, std::size_t pred, std::size_t job, std::int32_t value) {
        data_[index(machine, pred, job)] = value;
    }
    std::int32_t max_entry() const;

    friend bool operator==(const SetupTable&, const SetupTable&) = default;

private:
    std::size_t index(std::size_t machine, std::size_t pred, std::size_t job) const {
        return (machine * (jobs_ + 1) + pred) * jobs_ + job;
    }

    std::size_t machines_ = 0;
    std::size_t jobs_ = 0;
    std::vector<std::int32_t> data_;
};

struct Weights {
    double tardiness = 1.0;
    double makespan = 1.0;
    double setup = 1.0;
    friend bool operator==(const Weights&, const Weights&) = default;
};

/// Complete problem description. Jobs, machines and resources are addressed by
/// 0-based index internally; external files use 1-based ids.
struct Instance {
    std::vector<Machine> machines;
    std::vector<Job> jobs;
    std::vector<Resource> resources;
    SetupTable setup;
    Weights weights;
    Time horizon = 0;

    std::size_t job_count() const { return jobs.size(); }
    std::size_t machine_count() const { return machines.size(); }
    std::size_t resource_count() const { return resources.size(); }

    /// Setup of `job` on `machine` after `prev` (nullopt = machine start dummy).
    Time setup_time(std::size_t machine, std::optional<std::size_t> prev, std::size_t job) const {
        return setup.at(machine, prev ? *prev : setup.dummy(), job);
    }

    friend bool operator==(const Instance&, const Instance&) = default;
};

/// Successor lists derived from the predecessor lists.
std::vector<std::vector<std::size_t>> successors(const Instance& instance);

}  // namespace pmsp
