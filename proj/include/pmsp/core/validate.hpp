#pragma once

#include <string>
#include <vector>

#include "pmsp/core/instance.hpp"

namespace pmsp {

/// One broken instance invariant. `invariant` is a stable machine-readable tag
/// (e.g. "precedence-cycle", "capacity-gap"); `entity` names the offender.
struct Defect {
    std::string invariant;
    std::string entity;
    std::string detail;

    friend bool operator==(const Defect&, const Defect&) = default;
};

/// Empty iff the instance is well formed. Pure; defects come out in a fixed order.
std::vector<Defect> validate_instance(const Instance& instance);

}  // namespace pmsp
