#include "pmsp/core/fixtures.hpp"

namespace pmsp::fixtures {

Instance fig1() {
    Instance inst;
    inst.horizon = 12;
    inst.weights = {1.0, 1.0, 1.0};

    inst.machines.resize(2);
    inst.machines[0].demand = {0, 0};
    inst.machines[1].demand = {0, 1};
    inst.machines[1].downtimes = {{6, 8}};

    inst.resources.resize(2);
    inst.resources[0].capacity = {{0, 5, 4}, {5, 6, 0}, {6, 9, 2}, {9, 12, 0}};
    inst.resources[1].capacity = {{0, 3, 1}, {3, 9, 3}, {9, 12, 0}};

    struct Row {
        Time proc;
        Time due;
        std::vector<int> demand;
        std::vector<Precedence> preds;
    };
    const Row rows[] = {
        {3, 5, {2, 0}, {}},          // J1
        {2, 5, {2, 0}, {}},          // J2
        {1, 6, {0, 0}, {{0, 0}}},    // J3 <- J1
        {2, 11, {0, 0}, {{5, 0}}},   // J4 <- J6
        {2, 9, {0, 2}, {{0, 1}}},    // J5 <- J1, lag 1
        {1, 8, {0, 2}, {}},          // J6
    };
    for (const auto& row : rows) {
        Job job;
        job.eligible = {0, 1};
        job.proc = {row.proc, row.proc};
        job.due = row.due;
        job.release = 0;
        job.demand = row.demand;
        job.preds = row.preds;
        inst.jobs.push_back(job);
    }

    inst.setup = SetupTable(2, 6, 1);
    // the only zero-length changeover in the figure
    inst.setup.set(1, 1, 4, 0);
    for (std::size_t m = 0; m < 2; ++m) {
        for (std::size_t j = 0; j < 6; ++j) inst.setup.set(m, j, j, SetupTable::kUndefined);
    }
    return inst;
}

SolutionRepr fig1_repr() {
    return {{0, 1, 2, 4, 5, 3}, {0, 1, 0, 0, 1, 0}};
}

Instance single_job() {
    Instance inst;
    inst.horizon = 10;
    inst.machines.resize(1);
    Job job;
    job.eligible = {0};
    job.proc = {5};
    job.due = 10;
    inst.jobs.push_back(job);
    inst.setup = SetupTable(1, 1, 0);
    inst.setup.set(0, 0, 0, SetupTable::kUndefined);
    return inst;
}

}  // namespace pmsp::fixtures
