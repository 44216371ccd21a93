#pragma once

#include "pmsp/core/instance.hpp"
#include "pmsp/core/solution.hpp"

namespace pmsp::fixtures {

/// Two machines, two resources, six jobs with a downtime on M2 during [6,8).
/// R1 supplies 4 on [0,5), 0 on [5,6), 2 on [6,9); R2 supplies 1 on [0,3) and
/// 3 on [3,9); both are 0 on [9,12). M2 holds one unit of R2 while busy.
/// Precedences: J3 <- J1, J5 <- J1 (lag 1), J4 <- J6.
Instance fig1();

/// The representation that reproduces the figure: order (J1,J2,J3,J5,J6,J4)
/// with J2 and J5 on M2 and the rest on M1.
SolutionRepr fig1_repr();

/// One machine, one job of length 5, no resources or downtimes.
Instance single_job();

}  // namespace pmsp::fixtures
