#include "pmsp/core/instance.hpp"

#include <algorithm>

namespace pmsp {

int Resource::cmax() const {
    int best = 0;
    for (const auto& iv : capacity) best = std::max(best, iv.capacity);
    return best;
}

int Resource::capacity_at(Time t) const {
    for (const auto& iv : capacity) {
        if (iv.start <= t && t < iv.end) return iv.capacity;
    }
    return 0;
}

bool Job::eligible_on(std::size_t machine) const {
    return std::binary_search(eligible.begin(), eligible.end(), machine);
}

SetupTable::SetupTable(std::size_t machines, std::size_t jobs, std::int32_t fill)
    : machines_(machines), jobs_(jobs), data_(machines * (jobs + 1) * jobs, fill) {}

std::int32_t SetupTable::max_entry() const {
    std::int32_t best = 0;
    for (auto v : data_) best = std::max(best, v);
    return best;
}

std::vector<std::vector<std::size_t>> successors(const Instance& instance) {
    std::vector<std::vector<std::size_t>> succ(instance.job_count());
    for (std::size_t j = 0; j < instance.job_count(); ++j) {
        for (const auto& p : instance.jobs[j].preds) {
            if (p.pred < succ.size()) succ[p.pred].push_back(j);
        }
    }
    return succ;
}

}  // namespace pmsp
