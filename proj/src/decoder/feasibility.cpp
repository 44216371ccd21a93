#include "pmsp/decoder/feasibility.hpp"

#include <algorithm>
#include <sstream>

namespace pmsp {

std::string_view to_string(ConstraintFamily family) {
    switch (family) {
        case ConstraintFamily::release: return "release";
        case ConstraintFamily::downtime_boundary: return "downtime-boundary";
        case ConstraintFamily::end_equation: return "end-equation";
        case ConstraintFamily::precedence_lag: return "precedence-lag";
        case ConstraintFamily::prev_chain: return "prev-chain";
        case ConstraintFamily::eligibility: return "eligibility";
        case ConstraintFamily::resource_capacity: return "resource-capacity";
        case ConstraintFamily::horizon: return "horizon";
    }
    return "unknown";
}

std::size_t ViolationReport::count(ConstraintFamily family) const {
    return static_cast<std::size_t>(
        std::count_if(entries.begin(), entries.end(), [&](const auto& e) { return e.family == family; }));
}

bool ViolationReport::implicates(std::size_t job) const {
    return std::any_of(entries.begin(), entries.end(), [&](const auto& e) {
        return e.job == job || std::find(e.running.begin(), e.running.end(), job) != e.running.end();
    });
}

namespace {

bool in_window(const Window& w, Time t) { return w.start <= t && t < w.end; }

/// Slot t is worked (not paused) by a job placed on `mach`.
bool paused(const Machine& mach, Time t) {
    for (const auto& w : mach.downtimes) {
        if (in_window(w, t)) return true;
    }
    return false;
}

class Checker {
public:
    Checker(const Instance& inst, const Schedule& sched) : inst_(inst), sched_(sched) {}

    ViolationReport run() {
        if (sched_.jobs.size() != inst_.job_count()) {
            add(ConstraintFamily::prev_chain, std::nullopt, "schedule does not place every job");
            return std::move(report_);
        }
        bool machines_ok = true;
        for (std::size_t j = 0; j < inst_.job_count(); ++j) {
            const auto& p = sched_.jobs[j];
            if (p.machine >= inst_.machine_count() || !inst_.jobs[j].eligible_on(p.machine)) {
                add(ConstraintFamily::eligibility, j, "machine not eligible");
                machines_ok = false;
            }
        }
        if (!machines_ok) return std::move(report_);
        check_prev_chain();
        for (std::size_t j = 0; j < inst_.job_count(); ++j) check_job(j);
        check_resources();
        return std::move(report_);
    }

private:
    void add(ConstraintFamily f, std::optional<std::size_t> job, std::string detail) {
        ConstraintViolation v;
        v.family = f;
        v.job = job;
        v.detail = std::move(detail);
        report_.entries.push_back(std::move(v));
    }

    void check_prev_chain() {
        const auto n = inst_.job_count();
        // distinct prev values: one dummy per machine, each job at most once
        std::vector<int> dummy_uses(inst_.machine_count(), 0);
        std::vector<int> job_uses(n, 0);
        for (std::size_t j = 0; j < n; ++j) {
            const auto& p = sched_.jobs[j];
            if (!p.prev) {
                ++dummy_uses[p.machine];
                continue;
            }
            const auto q = *p.prev;
            if (q >= n || q == j) {
                add(ConstraintFamily::prev_chain, j, "invalid previous job");
                continue;
            }
            ++job_uses[q];
            if (sched_.jobs[q].machine != p.machine) add(ConstraintFamily::prev_chain, j, "previous job on another machine");
            if (p.start < sched_.jobs[q].end) add(ConstraintFamily::prev_chain, j, "starts before previous job ends");
        }
        for (std::size_t m = 0; m < dummy_uses.size(); ++m) {
            if (dummy_uses[m] > 1) add(ConstraintFamily::prev_chain, std::nullopt, "machine start shared by several jobs");
        }
        for (std::size_t q = 0; q < n; ++q) {
            if (job_uses[q] > 1) add(ConstraintFamily::prev_chain, q, "job is previous of several jobs");
        }
        // every chain must lead back to a machine start
        for (std::size_t j = 0; j < n; ++j) {
            std::size_t cur = j;
            std::size_t steps = 0;
            while (sched_.jobs[cur].prev && *sched_.jobs[cur].prev < n && steps <= n) {
                cur = *sched_.jobs[cur].prev;
                ++steps;
            }
            if (steps > n) {
                add(ConstraintFamily::prev_chain, j, "previous-job chain is cyclic");
            }
        }
    }

    void check_job(std::size_t j) {
        const auto& p = sched_.jobs[j];
        const auto& job = inst_.jobs[j];
        const auto& mach = inst_.machines[p.machine];

        if (p.start < job.release) add(ConstraintFamily::release, j, "starts before release date");

        for (const auto& w : mach.downtimes) {
            if (w.start <= p.start && p.start < w.end) add(ConstraintFamily::downtime_boundary, j, "starts inside a downtime");
            if (w.start < p.end && p.end <= w.end) add(ConstraintFamily::downtime_boundary, j, "ends inside a downtime");
        }

        Time expected = p.start + inst_.setup_time(p.machine, p.prev, j) + job.proc[p.machine];
        std::vector<Window> across;
        for (const auto& w : mach.downtimes) {
            if (p.start < w.start && p.end > w.end) {
                expected += w.end - w.start;
                across.push_back(w);
            }
        }
        if (p.end != expected) {
            std::ostringstream os;
            os << "end " << p.end << " but start + setup + proc + paused = " << expected;
            add(ConstraintFamily::end_equation, j, os.str());
        }
        if (p.setup != inst_.setup_time(p.machine, p.prev, j)) add(ConstraintFamily::end_equation, j, "setup length disagrees with the setup table");
        if (p.spanned != across) add(ConstraintFamily::end_equation, j, "spanned windows disagree with the downtimes crossed");

        for (const auto& pr : job.preds) {
            if (p.start < sched_.jobs[pr.pred].end + pr.lag) {
                add(ConstraintFamily::precedence_lag, j, "predecessor " + std::to_string(pr.pred + 1) + " plus lag not respected");
            }
        }
        if (p.start < 0 || p.end > inst_.horizon) add(ConstraintFamily::horizon, j, "outside the scheduling horizon");
    }

    void check_resources() {
        const auto s = inst_.resource_count();
        if (s == 0) return;
        Time last = inst_.horizon;
        for (const auto& p : sched_.jobs) last = std::max(last, p.end);
        if (last <= 0) return;
        const auto slots = static_cast<std::size_t>(last);
        std::vector<std::vector<long long>> usage(s, std::vector<long long>(slots, 0));
        for (std::size_t j = 0; j < inst_.job_count(); ++j) {
            const auto& p = sched_.jobs[j];
            const auto& mach = inst_.machines[p.machine];
            for (Time t = std::max<Time>(p.start, 0); t < p.end; ++t) {
                if (paused(mach, t)) continue;
                for (std::size_t r = 0; r < s; ++r) {
                    usage[r][static_cast<std::size_t>(t)] += inst_.jobs[j].demand[r] + mach.demand[r];
                }
            }
        }
        for (std::size_t r = 0; r < s; ++r) {
            const auto& res = inst_.resources[r];
            for (std::size_t t = 0; t < slots; ++t) {
                const auto used = usage[r][t];
                if (used == 0) continue;
                const auto cap = res.capacity_at(static_cast<Time>(t));
                if (used <= cap) continue;
                ConstraintViolation v;
                v.family = ConstraintFamily::resource_capacity;
                v.resource = r;
                v.slot = static_cast<Time>(t);
                for (std::size_t j = 0; j < inst_.job_count(); ++j) {
                    const auto& p = sched_.jobs[j];
                    const auto tt = static_cast<Time>(t);
                    const auto& mach = inst_.machines[p.machine];
                    if (p.start <= tt && tt < p.end && !paused(mach, tt) &&
                        inst_.jobs[j].demand[r] + mach.demand[r] > 0) {
                        v.running.push_back(j);
                    }
                }
                std::ostringstream os;
                os << "demand " << used << " exceeds capacity " << cap;
                v.detail = os.str();
                report_.entries.push_back(std::move(v));
            }
        }
    }

    const Instance& inst_;
    const Schedule& sched_;
    ViolationReport report_;
};

}  // namespace

ViolationReport check_feasibility(const Instance& instance, const Schedule& schedule) {
    return Checker(instance, schedule).run();
}

nlohmann::json report_to_json(const ViolationReport& report) {
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& e : report.entries) {
        nlohmann::json rec = {{"family", std::string(to_string(e.family))}, {"detail", e.detail}};
        if (e.job) rec["job"] = *e.job + 1;
        if (e.resource) rec["resource"] = *e.resource + 1;
        if (e.slot) rec["slot"] = *e.slot;
        if (!e.running.empty()) {
            nlohmann::json ids = nlohmann::json::array();
            for (auto j : e.running) ids.push_back(j + 1);
            rec["running"] = ids;
        }
        entries.push_back(rec);
    }
    return {{"feasible", report.empty()}, {"violations", entries}};
}

}  // namespace pmsp
