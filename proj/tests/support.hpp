#pragma once

#include <optional>
#include <span>
#include <vector>

#include "pmsp/core/instance.hpp"
#include "pmsp/core/rng.hpp"
#include "pmsp/core/solution.hpp"

namespace pmsp::testing {

/// Random topological order (uniform choice among ready jobs at each step)
/// with a uniformly drawn eligible machine per job.
inline SolutionRepr random_repr(const Instance& inst, Rng& rng) {
    const auto n = inst.job_count();
    std::vector<std::size_t> pending(n);
    std::vector<std::vector<std::size_t>> succ(n);
    for (std::size_t j = 0; j < n; ++j) {
        pending[j] = inst.jobs[j].preds.size();
        for (const auto& p : inst.jobs[j].preds) succ[p.pred].push_back(j);
    }
    std::vector<std::size_t> ready;
    for (std::size_t j = 0; j < n; ++j) {
        if (pending[j] == 0) ready.push_back(j);
    }
    SolutionRepr repr;
    repr.assign.resize(n);
    while (!ready.empty()) {
        const auto i = rng.index(ready.size());
        const auto j = ready[i];
        ready.erase(ready.begin() + static_cast<std::ptrdiff_t>(i));
        repr.order.push_back(j);
        const auto& e = inst.jobs[j].eligible;
        repr.assign[j] = e[rng.index(e.size())];
        for (auto s : succ[j]) {
            if (--pending[s] == 0) ready.push_back(s);
        }
    }
    return repr;
}

/// Smallest e with e = start + work + sum of lengths of windows w having
/// start < w.start and e > w.end, and e outside every (w.start, w.end].
/// Scans candidate ends one by one.
inline std::optional<Time> end_by_scan(Time start, Time work, std::span<const Window> downtimes, Time limit) {
    for (Time e = start + work; e <= limit; ++e) {
        Time paused = 0;
        bool inside = false;
        for (const auto& w : downtimes) {
            if (start < w.start && e > w.end) paused += w.length();
            if (w.start < e && e <= w.end) inside = true;
        }
        if (!inside && e == start + work + paused) return e;
    }
    return std::nullopt;
}

}  // namespace pmsp::testing
