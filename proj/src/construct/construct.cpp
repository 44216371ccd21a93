#include "pmsp/construct/construct.hpp"

#include <limits>
#include <stdexcept>
#include <tuple>

#include "pmsp/core/validate.hpp"
#include "pmsp/decoder/decoder.hpp"

namespace pmsp {

ActiveSet::ActiveSet(const Instance& instance)
    : succ_(instance.job_count()), outstanding_(instance.job_count(), 0) {
    for (std::size_t j = 0; j < instance.job_count(); ++j) {
        for (const auto& p : instance.jobs[j].preds) {
            succ_[p.pred].push_back(j);
            ++outstanding_[j];
        }
    }
    for (std::size_t j = 0; j < instance.job_count(); ++j) {
        if (outstanding_[j] == 0) active_.insert(j);
    }
}

void ActiveSet::commit(std::size_t job) {
    if (active_.erase(job) == 0) throw std::invalid_argument("committed job is not active");
    for (auto s : succ_[job]) {
        if (--outstanding_[s] == 0) active_.insert(s);
    }
}

ActiveSet update_active(ActiveSet active, std::size_t committed) {
    active.commit(committed);
    return active;
}

Constructed construct(const Instance& instance) {
    if (auto defects = validate_instance(instance); !defects.empty()) {
        throw std::invalid_argument("invalid instance: " + defects.front().invariant + " (" + defects.front().entity + ")");
    }
    const auto n = instance.job_count();
    Dispatcher dispatcher(instance);
    ActiveSet active(instance);
    Constructed out;
    out.repr.assign.assign(n, 0);
    out.repr.order.reserve(n);

    std::vector<std::size_t> earliest_due;
    while (!active.empty()) {
        Time due = std::numeric_limits<Time>::max();
        for (auto j : active.jobs()) due = std::min(due, instance.jobs[j].due);
        earliest_due.clear();
        for (auto j : active.jobs()) {
            if (instance.jobs[j].due == due) earliest_due.push_back(j);
        }

        // (completion, job, machine); lexicographic order gives the tie-breaks
        std::optional<std::tuple<Time, std::size_t, std::size_t>> best;
        for (auto j : earliest_due) {
            for (auto m : instance.jobs[j].eligible) {
                auto probe = dispatcher.probe(j, m);
                if (!probe) continue;
                std::tuple<Time, std::size_t, std::size_t> cand{probe->end, j, m};
                if (!best || cand < *best) best = cand;
            }
        }

        std::size_t job = 0;
        std::size_t machine = 0;
        if (best) {
            job = std::get<1>(*best);
            machine = std::get<2>(*best);
        } else {
            job = earliest_due.front();
            Time best_end = std::numeric_limits<Time>::max();
            for (auto m : instance.jobs[job].eligible) {
                const auto p = dispatcher.fallback(job, m);
                if (p.end < best_end) {
                    best_end = p.end;
                    machine = m;
                }
            }
            ++out.fallbacks;
        }

        dispatcher.commit(job, machine);
        out.repr.order.push_back(job);
        out.repr.assign[job] = machine;
        active.commit(job);
    }

    out.schedule = dispatcher.schedule();
    out.cost = evaluate(instance, out.schedule);
    return out;
}

}  // namespace pmsp
