#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include "json.hpp"
#include "pmsp/core/instance.hpp"
#include "pmsp/core/solution.hpp"

namespace pmsp {

/// Malformed or schema-violating input document.
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr int kInstanceFormatVersion = 1;

nlohmann::json instance_to_json(const Instance& instance);
Instance instance_from_json(const nlohmann::json& doc);

nlohmann::json schedule_to_json(const Schedule& schedule, const CostBreakdown& cost, const std::string& instance_id);
/// Reads the job records of a schedule document; the cost block is ignored.
Schedule schedule_from_json(const Instance& instance, const nlohmann::json& doc);

nlohmann::json cost_to_json(const CostBreakdown& cost);

nlohmann::json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const nlohmann::json& doc);

}  // namespace pmsp
