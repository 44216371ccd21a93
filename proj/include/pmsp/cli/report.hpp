#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "pmsp/core/instance.hpp"
#include "pmsp/core/solution.hpp"

namespace pmsp {

/// Process exit status per outcome category.
enum class ExitCode : int {
    ok = 0,
    violations = 1,       // validate found broken constraints
    invalid_input = 2,    // malformed file, bad flag, defective instance
    budget_exceeded = 3,  // oracle node cap or size limit hit
    io_error = 4,
    unsat = 5,            // oracle proved there is no feasible schedule
};

struct BenchRecord {
    std::string instance;
    std::string method;  // CA, SA or oracle
    Time makespan = 0;
    Time tardiness = 0;
    Time setup = 0;
    std::size_t violations = 0;
    double aggregate = 0.0;
    std::size_t tardy_jobs = 0;
    double wall_ms = 0.0;
    std::uint64_t seed = 0;
};

BenchRecord make_record(const Instance& instance, const std::string& id, const std::string& method,
                        const Schedule& schedule, const CostBreakdown& cost, double wall_ms, std::uint64_t seed);

inline constexpr int kBenchCsvVersion = 1;

/// Version comment line followed by the column names.
std::string bench_csv_header();
std::string bench_csv_row(const BenchRecord& record);

/// Mean of 1 - SA/CA per component over instances that have both a CA and an
/// SA record. A component that is 0 under CA counts as no improvement.
nlohmann::json improvement_summary(const std::vector<BenchRecord>& records);

/// Gantt chart: one row per machine with setup shading and hatched
/// downtimes, then one track per resource showing capacity and consumption.
std::string render_gantt_svg(const Instance& instance, const Schedule& schedule);

}  // namespace pmsp
