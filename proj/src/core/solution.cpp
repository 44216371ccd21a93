#include "pmsp/core/solution.hpp"

#include <algorithm>
#include <limits>

namespace pmsp {

std::string_view to_string(Violated v) {
    switch (v) {
        case Violated::none: return "none";
        case Violated::resource: return "resource";
        case Violated::machine_availability: return "machine_availability";
    }
    return "none";
}

std::optional<Violated> violated_from_string(std::string_view s) {
    if (s == "none") return Violated::none;
    if (s == "resource") return Violated::resource;
    if (s == "machine_availability") return Violated::machine_availability;
    return std::nullopt;
}

std::vector<std::size_t> Schedule::machine_sequence(std::size_t machine) const {
    constexpr auto kNone = std::numeric_limits<std::size_t>::max();
    // next[p] for job predecessors, head for the dummy
    std::vector<std::size_t> next(jobs.size(), kNone);
    std::size_t head = kNone;
    for (std::size_t j = 0; j < jobs.size(); ++j) {
        const auto& p = jobs[j];
        if (p.machine != machine) continue;
        if (!p.prev) {
            head = j;
        } else if (*p.prev < jobs.size()) {
            next[*p.prev] = j;
        }
    }
    std::vector<std::size_t> seq;
    for (auto cur = head; cur != kNone && seq.size() < jobs.size(); cur = next[cur]) {
        seq.push_back(cur);
    }
    return seq;
}

bool repr_well_formed(const Instance& instance, const SolutionRepr& repr) {
    const auto n = instance.job_count();
    if (repr.order.size() != n || repr.assign.size() != n) return false;
    std::vector<bool> seen(n, false);
    for (auto j : repr.order) {
        if (j >= n || seen[j]) return false;
        seen[j] = true;
    }
    for (std::size_t j = 0; j < n; ++j) {
        if (!instance.jobs[j].eligible_on(repr.assign[j])) return false;
    }
    return true;
}

bool precedence_order_ok(const Instance& instance, const SolutionRepr& repr) {
    const auto n = instance.job_count();
    std::vector<std::size_t> pos(n, std::numeric_limits<std::size_t>::max());
    for (std::size_t i = 0; i < repr.order.size(); ++i) {
        if (repr.order[i] < n) pos[repr.order[i]] = i;
    }
    for (std::size_t j = 0; j < n; ++j) {
        for (const auto& p : instance.jobs[j].preds) {
            if (p.pred >= n || pos[p.pred] >= pos[j]) return false;
        }
    }
    return true;
}

}  // namespace pmsp
