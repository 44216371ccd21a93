#include <vector>

#include "pmsp/decoder/decoder.hpp"
#include "pmsp/exact/oracle.hpp"

namespace pmsp {

namespace {

class Enumerator {
public:
    Enumerator(const Instance& inst, const OracleLimits& limits) : inst_(inst), limits_(limits) {
        const auto n = inst.job_count();
        repr_.assign.assign(n, 0);
        pending_.assign(n, 0);
        for (std::size_t j = 0; j < n; ++j) pending_[j] = inst.jobs[j].preds.size();
        succ_ = successors(inst);
        used_.assign(n, false);
    }

    OracleResult run() {
        if (inst_.job_count() > limits_.max_jobs) {
            out_.status = OracleStatus::budget_exceeded;
            return out_;
        }
        dfs();
        out_.nodes = nodes_;
        if (exceeded_) {
            out_.status = OracleStatus::budget_exceeded;
            out_.repr.reset();
        } else {
            out_.status = out_.repr ? OracleStatus::optimal : OracleStatus::unsat;
        }
        return out_;
    }

private:
    void dfs() {
        if (exceeded_) return;
        const auto n = inst_.job_count();
        if (repr_.order.size() == n) {
            if (++nodes_ > limits_.node_cap) {
                exceeded_ = true;
                return;
            }
            auto d = decode(inst_, repr_);
            if (d.cost.violations != 0) return;
            if (out_.repr && d.cost.aggregate >= out_.cost.aggregate) return;
            out_.repr = repr_;
            out_.schedule = std::move(d.schedule);
            out_.cost = d.cost;
            return;
        }
        for (std::size_t j = 0; j < n; ++j) {
            if (used_[j] || pending_[j] != 0) continue;
            used_[j] = true;
            repr_.order.push_back(j);
            for (auto s : succ_[j]) --pending_[s];
            for (auto m : inst_.jobs[j].eligible) {
                repr_.assign[j] = m;
                dfs();
                if (exceeded_) return;
            }
            for (auto s : succ_[j]) ++pending_[s];
            repr_.order.pop_back();
            used_[j] = false;
        }
    }

    const Instance& inst_;
    OracleLimits limits_;
    SolutionRepr repr_;
    std::vector<std::size_t> pending_;
    std::vector<std::vector<std::size_t>> succ_;
    std::vector<bool> used_;
    std::uint64_t nodes_ = 0;
    bool exceeded_ = false;
    OracleResult out_;
};

}  // namespace

OracleResult enumerate_representations(const Instance& instance, const OracleLimits& limits) {
    return Enumerator(instance, limits).run();
}

}  // namespace pmsp
