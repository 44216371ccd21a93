#include "pmsp/decoder/decoder.hpp"

#include <algorithm>
#include <stdexcept>

namespace pmsp {

EndTime compute_end(Time start, Time setup, Time proc, std::span<const Window> downtimes) {
    EndTime out{start + setup + proc, {}};
    for (const auto& w : downtimes) {
        if (w.start <= start) continue;
        if (out.end <= w.start) break;
        out.end += w.length();
        out.spanned.push_back(w);
    }
    return out;
}

std::optional<std::size_t> downtime_at(std::span<const Window> downtimes, Time t) {
    auto it = std::upper_bound(downtimes.begin(), downtimes.end(), t,
                               [](Time value, const Window& w) { return value < w.start; });
    if (it == downtimes.begin()) return std::nullopt;
    --it;
    if (it->contains(t)) return static_cast<std::size_t>(it - downtimes.begin());
    return std::nullopt;
}

std::vector<ResourceNeed> resource_needs(const Instance& instance, std::size_t job, std::size_t machine) {
    std::vector<ResourceNeed> needs;
    const auto& jd = instance.jobs[job].demand;
    const auto& md = instance.machines[machine].demand;
    for (std::size_t r = 0; r < instance.resource_count(); ++r) {
        const int amount = (r < jd.size() ? jd[r] : 0) + (r < md.size() ? md[r] : 0);
        if (amount > 0) needs.push_back({r, amount});
    }
    return needs;
}

ResourceTimeline::ResourceTimeline(const Instance& instance) : horizon_(instance.horizon) {
    residual_.reserve(instance.resource_count());
    for (const auto& res : instance.resources) {
        std::vector<int> slots(static_cast<std::size_t>(std::max<Time>(horizon_, 0)), 0);
        for (const auto& iv : res.capacity) {
            const auto lo = std::clamp<Time>(iv.start, 0, horizon_);
            const auto hi = std::clamp<Time>(iv.end, 0, horizon_);
            std::fill(slots.begin() + lo, slots.begin() + hi, iv.capacity);
        }
        residual_.push_back(std::move(slots));
    }
}

int ResourceTimeline::residual(std::size_t resource, Time t) const {
    if (t < 0 || t >= horizon_) return 0;
    return residual_[resource][static_cast<std::size_t>(t)];
}

namespace {

/// Calls fn(lo, hi) for each maximal run of occupied slots in [start, end)
/// outside the spanned windows; stops early when fn returns true.
template <typename Fn>
bool for_each_segment(Time start, Time end, std::span<const Window> spanned, Fn&& fn) {
    Time cursor = start;
    for (const auto& w : spanned) {
        if (cursor < w.start && fn(cursor, std::min(w.start, end))) return true;
        cursor = std::max(cursor, w.end);
    }
    if (cursor < end) return fn(cursor, end);
    return false;
}

}  // namespace

std::optional<Time> ResourceTimeline::first_conflict(std::span<const ResourceNeed> needs, Time start, Time end,
                                                     std::span<const Window> spanned) const {
    if (needs.empty()) return std::nullopt;
    std::optional<Time> hit;
    for_each_segment(start, end, spanned, [&](Time lo, Time hi) {
        for (Time t = lo; t < hi; ++t) {
            for (const auto& need : needs) {
                if (residual(need.resource, t) < need.amount) {
                    hit = t;
                    return true;
                }
            }
        }
        return false;
    });
    return hit;
}

void ResourceTimeline::apply(std::span<const ResourceNeed> needs, Time start, Time end,
                             std::span<const Window> spanned, int sign) {
    for_each_segment(start, end, spanned, [&](Time lo, Time hi) {
        lo = std::max<Time>(lo, 0);
        hi = std::min(hi, horizon_);
        for (const auto& need : needs) {
            auto& slots = residual_[need.resource];
            for (Time t = lo; t < hi; ++t) slots[static_cast<std::size_t>(t)] -= sign * need.amount;
        }
        return false;
    });
}

void ResourceTimeline::reserve(std::span<const ResourceNeed> needs, Time start, Time end,
                               std::span<const Window> spanned) {
    apply(needs, start, end, spanned, 1);
}

void ResourceTimeline::release(std::span<const ResourceNeed> needs, Time start, Time end,
                               std::span<const Window> spanned) {
    apply(needs, start, end, spanned, -1);
}

std::optional<Time> earliest_start(const Instance& instance, const ResourceTimeline& timeline, std::size_t machine,
                                   std::size_t job, std::optional<std::size_t> prev, Time lower_bound) {
    const auto& downtimes = instance.machines[machine].downtimes;
    const Time setup = instance.setup_time(machine, prev, job);
    const Time proc = instance.jobs[job].proc[machine];
    const auto needs = resource_needs(instance, job, machine);

    Time t = lower_bound;
    while (true) {
        if (auto u = downtime_at(downtimes, t)) {
            t = downtimes[*u].end;
            continue;
        }
        // a zero-length job at a downtime end would also end on it
        if (setup + proc == 0 && downtime_at(downtimes, t - 1)) {
            ++t;
            continue;
        }
        const auto end = compute_end(t, setup, proc, downtimes);
        // ends are monotone in the start, so nothing later fits either
        if (end.end > instance.horizon) return std::nullopt;
        // any start in (t, conflict] still occupies the conflicting slot
        if (auto conflict = timeline.first_conflict(needs, t, end.end, end.spanned)) {
            t = *conflict + 1;
            continue;
        }
        return t;
    }
}

Dispatcher::Dispatcher(const Instance& instance)
    : instance_(instance),
      timeline_(instance),
      committed_(instance.job_count(), false),
      last_(instance.machine_count()) {
    schedule_.jobs.resize(instance.job_count());
}

Time Dispatcher::lower_bound(std::size_t job, std::size_t machine) const {
    const auto& j = instance_.jobs[job];
    Time lb = j.release;
    if (auto prev = last_[machine]) lb = std::max(lb, schedule_.jobs[*prev].end);
    for (const auto& p : j.preds) {
        if (!committed_[p.pred]) throw std::logic_error("predecessor committed after its dependent");
        lb = std::max(lb, schedule_.jobs[p.pred].end + p.lag);
    }
    return lb;
}

std::optional<Dispatcher::Probe> Dispatcher::probe(std::size_t job, std::size_t machine) const {
    const auto prev = last_[machine];
    auto start = earliest_start(instance_, timeline_, machine, job, prev, lower_bound(job, machine));
    if (!start) return std::nullopt;
    const auto end = compute_end(*start, instance_.setup_time(machine, prev, job), instance_.jobs[job].proc[machine],
                                 instance_.machines[machine].downtimes);
    return Probe{*start, end.end};
}

Placement Dispatcher::place_at(std::size_t job, std::size_t machine, Time start) const {
    Placement p;
    p.machine = machine;
    p.prev = last_[machine];
    p.start = start;
    p.setup = instance_.setup_time(machine, p.prev, job);
    auto end = compute_end(start, p.setup, instance_.jobs[job].proc[machine], instance_.machines[machine].downtimes);
    p.end = end.end;
    p.spanned = std::move(end.spanned);
    return p;
}

Placement Dispatcher::fallback(std::size_t job, std::size_t machine) const {
    const auto& downtimes = instance_.machines[machine].downtimes;
    const bool zero = instance_.setup_time(machine, last_[machine], job) + instance_.jobs[job].proc[machine] == 0;
    Time t = lower_bound(job, machine);
    while (true) {
        if (auto u = downtime_at(downtimes, t)) {
            t = downtimes[*u].end;
        } else if (zero && downtime_at(downtimes, t - 1)) {
            ++t;
        } else {
            break;
        }
    }
    auto p = place_at(job, machine, t);
    p.violated = p.end <= instance_.horizon ? Violated::resource : Violated::machine_availability;
    return p;
}

const Placement& Dispatcher::commit(std::size_t job, std::size_t machine) {
    if (committed_[job]) throw std::logic_error("job committed twice");
    if (!instance_.jobs[job].eligible_on(machine)) throw std::invalid_argument("machine not eligible for job");
    Placement p;
    if (auto found = earliest_start(instance_, timeline_, machine, job, last_[machine], lower_bound(job, machine))) {
        p = place_at(job, machine, *found);
    } else {
        p = fallback(job, machine);
    }
    timeline_.reserve(resource_needs(instance_, job, machine), p.start, p.end, p.spanned);
    schedule_.jobs[job] = std::move(p);
    committed_[job] = true;
    last_[machine] = job;
    return schedule_.jobs[job];
}

Decoded decode(const Instance& instance, const SolutionRepr& repr) {
    if (!repr_well_formed(instance, repr)) throw std::invalid_argument("representation is not a valid permutation/assignment");
    if (!precedence_order_ok(instance, repr)) throw std::invalid_argument("representation breaks the precedence order");
    Dispatcher dispatcher(instance);
    for (auto job : repr.order) dispatcher.commit(job, repr.assign[job]);
    Decoded out{dispatcher.schedule(), {}};
    out.cost = evaluate(instance, out.schedule);
    return out;
}

double big_m(const Instance& instance) {
    const auto& w = instance.weights;
    const auto n = static_cast<double>(instance.job_count());
    const auto v = static_cast<double>(instance.horizon);
    const auto smax = static_cast<double>(instance.setup.max_entry());
    return w.tardiness * n * v + w.makespan * v + w.setup * n * smax + 1.0;
}

CostBreakdown evaluate(const Instance& instance, const Schedule& schedule) {
    CostBreakdown c;
    for (std::size_t j = 0; j < schedule.jobs.size(); ++j) {
        const auto& p = schedule.jobs[j];
        c.tardiness += std::max<Time>(0, p.end - instance.jobs[j].due);
        c.makespan = std::max(c.makespan, p.end);
        c.setup_total += instance.setup_time(p.machine, p.prev, j);
        if (p.violated != Violated::none) ++c.violations;
    }
    c.big_m = big_m(instance);
    const auto& w = instance.weights;
    c.aggregate = w.tardiness * static_cast<double>(c.tardiness) + w.makespan * static_cast<double>(c.makespan) +
                  w.setup * static_cast<double>(c.setup_total) + c.big_m * static_cast<double>(c.violations);
    return c;
}

}  // namespace pmsp
