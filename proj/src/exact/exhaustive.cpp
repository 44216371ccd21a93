#include "pmsp/exact/oracle.hpp"

#include <algorithm>
#include <limits>
#include <vector>

namespace pmsp {

std::string_view to_string(OracleStatus status) {
    switch (status) {
        case OracleStatus::optimal: return "optimal";
        case OracleStatus::unsat: return "unsat";
        case OracleStatus::budget_exceeded: return "budget_exceeded";
    }
    return "unknown";
}

namespace {

// Everything below works on a plain slot grid and re-reads the instance
// directly; none of it goes through the decoder.
class Search {
public:
    Search(const Instance& inst, const OracleLimits& limits) : inst_(inst), limits_(limits) {
        n_ = inst.job_count();
        k_ = inst.machine_count();
        nr_ = inst.resource_count();
        horizon_ = inst.horizon;

        cap_.assign(nr_, std::vector<int>(static_cast<std::size_t>(horizon_), 0));
        for (std::size_t r = 0; r < nr_; ++r) {
            for (const auto& iv : inst.resources[r].capacity) {
                for (Time t = std::max<Time>(0, iv.start); t < std::min(iv.end, horizon_); ++t) {
                    cap_[r][static_cast<std::size_t>(t)] = iv.capacity;
                }
            }
        }
        usage_.assign(nr_, std::vector<int>(static_cast<std::size_t>(horizon_), 0));

        down_.assign(k_, std::vector<bool>(static_cast<std::size_t>(horizon_) + 1, false));
        for (std::size_t m = 0; m < k_; ++m) {
            for (const auto& w : inst.machines[m].downtimes) {
                for (Time t = w.start; t < w.end && t <= horizon_; ++t) down_[m][static_cast<std::size_t>(t)] = true;
            }
        }

        min_work_.assign(n_, std::numeric_limits<Time>::max());
        min_setup_.assign(n_, std::numeric_limits<Time>::max());
        symmetric_ties_ = true;
        for (std::size_t j = 0; j < n_; ++j) {
            for (auto m : inst.jobs[j].eligible) {
                for (std::size_t p = 0; p <= n_; ++p) {
                    const Time s = inst.setup.at(m, p, j);
                    if (s < 0) continue;
                    min_setup_[j] = std::min(min_setup_[j], s);
                    min_work_[j] = std::min(min_work_[j], s + inst.jobs[j].proc[m]);
                }
            }
            if (min_work_[j] == 0) symmetric_ties_ = false;
        }

        placed_.assign(n_, false);
        placement_.assign(n_, Placement{});
        last_on_.assign(k_, std::nullopt);
        free_at_.assign(k_, 0);
    }

    OracleResult run() {
        OracleResult out;
        if (n_ > limits_.max_jobs || horizon_ > limits_.max_horizon) {
            out.status = OracleStatus::budget_exceeded;
            return out;
        }
        dfs(0);
        out.nodes = nodes_;
        if (exceeded_) {
            out.status = OracleStatus::budget_exceeded;
        } else if (found_) {
            out.status = OracleStatus::optimal;
            out.schedule = best_schedule_;
            out.cost = best_cost_;
        } else {
            out.status = OracleStatus::unsat;
        }
        return out;
    }

private:
    double weighted(Time tardiness, Time makespan, Time setup) const {
        const auto& w = inst_.weights;
        return w.tardiness * static_cast<double>(tardiness) + w.makespan * static_cast<double>(makespan) +
               w.setup * static_cast<double>(setup);
    }

    // Every unplaced job starts at or after `from` and ends no earlier than
    // start + its cheapest setup + processing.
    double bound(Time from, std::size_t skip, Time skip_end) const {
        Time tard = tardiness_;
        Time make = makespan_;
        Time setup = setup_total_;
        for (std::size_t j = 0; j < n_; ++j) {
            if (placed_[j]) continue;
            Time e = 0;
            if (j == skip) {
                e = skip_end;
            } else {
                e = std::max(from, inst_.jobs[j].release) + min_work_[j];
            }
            tard += std::max<Time>(0, e - inst_.jobs[j].due);
            make = std::max(make, e);
            setup += min_setup_[j];
        }
        return weighted(tard, make, setup);
    }

    // All ends satisfying end = start + work + paused downtime and the
    // boundary rule on machine m.
    std::vector<Time> ends(std::size_t m, Time start, Time work) const {
        std::vector<Time> out;
        const auto& dts = inst_.machines[m].downtimes;
        for (Time e = start + work; e <= horizon_; ++e) {
            Time paused = 0;
            bool inside = false;
            for (const auto& w : dts) {
                if (start < w.start && e > w.end) paused += w.end - w.start;
                if (w.start < e && e <= w.end) inside = true;
            }
            if (!inside && e == start + work + paused) out.push_back(e);
        }
        return out;
    }

    bool fits(std::size_t j, std::size_t m, Time start, Time end) const {
        for (std::size_t r = 0; r < nr_; ++r) {
            const int need = inst_.jobs[j].demand[r] + inst_.machines[m].demand[r];
            if (need == 0) continue;
            for (Time t = start; t < end; ++t) {
                const auto slot = static_cast<std::size_t>(t);
                if (down_[m][slot]) continue;
                if (usage_[r][slot] + need > cap_[r][slot]) return false;
            }
        }
        return true;
    }

    void occupy(std::size_t j, std::size_t m, Time start, Time end, int sign) {
        for (std::size_t r = 0; r < nr_; ++r) {
            const int need = inst_.jobs[j].demand[r] + inst_.machines[m].demand[r];
            if (need == 0) continue;
            for (Time t = start; t < end; ++t) {
                const auto slot = static_cast<std::size_t>(t);
                if (!down_[m][slot]) usage_[r][slot] += sign * need;
            }
        }
    }

    void record() {
        const double value = weighted(tardiness_, makespan_, setup_total_);
        if (found_ && value >= best_value_) return;
        found_ = true;
        best_value_ = value;
        best_schedule_.jobs = placement_;
        best_cost_ = CostBreakdown{};
        best_cost_.tardiness = tardiness_;
        best_cost_.makespan = makespan_;
        best_cost_.setup_total = setup_total_;
        const auto& w = inst_.weights;
        const auto n = static_cast<double>(n_);
        const auto v = static_cast<double>(horizon_);
        const auto smax = static_cast<double>(inst_.setup.max_entry());
        best_cost_.big_m = w.tardiness * n * v + w.makespan * v + w.setup * n * smax + 1.0;
        best_cost_.aggregate = value + best_cost_.big_m * 0.0;
    }

    void dfs(std::size_t depth) {
        if (exceeded_) return;
        if (depth == n_) {
            record();
            return;
        }
        for (std::size_t j = 0; j < n_ && !exceeded_; ++j) {
            if (placed_[j]) continue;
            const auto& job = inst_.jobs[j];
            Time ready = std::max(last_start_, job.release);
            bool preds_done = true;
            for (const auto& p : job.preds) {
                if (!placed_[p.pred]) {
                    preds_done = false;
                    break;
                }
                ready = std::max(ready, placement_[p.pred].end + p.lag);
            }
            if (!preds_done) continue;

            for (auto m : job.eligible) {
                const auto prev = last_on_[m];
                const Time setup = inst_.setup.at(m, prev ? *prev : n_, j);
                if (setup < 0) continue;
                const Time work = setup + job.proc[m];
                for (Time t = std::max(ready, free_at_[m]); t <= horizon_; ++t) {
                    if (++nodes_ > limits_.node_cap) {
                        exceeded_ = true;
                        return;
                    }
                    if (found_ && bound(t, j, t + work) >= best_value_) break;
                    if (symmetric_ties_ && depth > 0 && t == last_start_ && j < last_job_) continue;
                    if (t < horizon_ && down_[m][static_cast<std::size_t>(t)]) continue;
                    for (Time e : ends(m, t, work)) {
                        if (!fits(j, m, t, e)) continue;
                        place(j, m, t, e, setup, prev, depth);
                        if (exceeded_) return;
                    }
                }
            }
        }
    }

    void place(std::size_t j, std::size_t m, Time start, Time end, Time setup, std::optional<std::size_t> prev,
               std::size_t depth) {
        Placement p;
        p.machine = m;
        p.start = start;
        p.end = end;
        p.setup = setup;
        p.prev = prev;
        for (const auto& w : inst_.machines[m].downtimes) {
            if (start < w.start && end > w.end) p.spanned.push_back(w);
        }

        const auto saved_start = last_start_;
        const auto saved_job = last_job_;
        const auto saved_free = free_at_[m];
        const auto saved_make = makespan_;
        const Time tard = std::max<Time>(0, end - inst_.jobs[j].due);

        placement_[j] = std::move(p);
        placed_[j] = true;
        last_on_[m] = j;
        free_at_[m] = end;
        last_start_ = start;
        last_job_ = j;
        tardiness_ += tard;
        setup_total_ += setup;
        makespan_ = std::max(makespan_, end);
        occupy(j, m, start, end, +1);

        dfs(depth + 1);

        occupy(j, m, start, end, -1);
        makespan_ = saved_make;
        setup_total_ -= setup;
        tardiness_ -= tard;
        last_job_ = saved_job;
        last_start_ = saved_start;
        free_at_[m] = saved_free;
        last_on_[m] = prev;
        placed_[j] = false;
        placement_[j] = Placement{};
    }

    const Instance& inst_;
    OracleLimits limits_;
    std::size_t n_ = 0, k_ = 0, nr_ = 0;
    Time horizon_ = 0;
    std::vector<std::vector<int>> cap_, usage_;
    std::vector<std::vector<bool>> down_;
    std::vector<Time> min_work_, min_setup_;
    bool symmetric_ties_ = true;

    std::vector<bool> placed_;
    std::vector<Placement> placement_;
    std::vector<std::optional<std::size_t>> last_on_;
    std::vector<Time> free_at_;
    Time last_start_ = 0;
    std::size_t last_job_ = 0;
    Time tardiness_ = 0, makespan_ = 0, setup_total_ = 0;

    std::uint64_t nodes_ = 0;
    bool exceeded_ = false;
    bool found_ = false;
    double best_value_ = 0.0;
    Schedule best_schedule_;
    CostBreakdown best_cost_;
};

}  // namespace

OracleResult exhaustive_time_indexed(const Instance& instance, const OracleLimits& limits) {
    return Search(instance, limits).run();
}

}  // namespace pmsp
