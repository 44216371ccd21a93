#include "pmsp/core/validate.hpp"

#include <algorithm>
#include <queue>
#include <sstream>

namespace pmsp {
namespace {

std::string job_name(std::size_t j) { return "job " + std::to_string(j + 1); }
std::string machine_name(std::size_t m) { return "machine " + std::to_string(m + 1); }
std::string resource_name(std::size_t r) { return "resource " + std::to_string(r + 1); }

std::string window_text(Time s, Time e) {
    std::ostringstream os;
    os << '[' << s << ',' << e << ')';
    return os.str();
}

void check_machines(const Instance& inst, std::vector<Defect>& out) {
    for (std::size_t m = 0; m < inst.machine_count(); ++m) {
        const auto& mach = inst.machines[m];
        if (mach.demand.size() != inst.resource_count()) {
            out.push_back({"machine-demand-size", machine_name(m), "demand vector does not match resource count"});
        }
        for (std::size_t r = 0; r < mach.demand.size(); ++r) {
            if (mach.demand[r] < 0) out.push_back({"negative-demand", machine_name(m), resource_name(r)});
        }
        Time last_end = 0;
        for (std::size_t u = 0; u < mach.downtimes.size(); ++u) {
            const auto& w = mach.downtimes[u];
            const auto text = window_text(w.start, w.end);
            if (w.start >= w.end) out.push_back({"downtime-empty", machine_name(m), text});
            if (w.start < 0 || w.end > inst.horizon) out.push_back({"downtime-outside-horizon", machine_name(m), text});
            if (u > 0 && w.start < last_end) out.push_back({"downtime-order", machine_name(m), text});
            last_end = std::max(last_end, w.end);
        }
    }
}

void check_resources(const Instance& inst, std::vector<Defect>& out) {
    for (std::size_t r = 0; r < inst.resource_count(); ++r) {
        const auto& ivs = inst.resources[r].capacity;
        Time cursor = 0;
        for (const auto& iv : ivs) {
            if (iv.start >= iv.end) {
                out.push_back({"capacity-empty-interval", resource_name(r), window_text(iv.start, iv.end)});
                continue;
            }
            if (iv.capacity < 0) out.push_back({"negative-capacity", resource_name(r), window_text(iv.start, iv.end)});
            if (iv.start > cursor) {
                out.push_back({"capacity-gap", resource_name(r), window_text(cursor, iv.start)});
            } else if (iv.start < cursor) {
                out.push_back({"capacity-overlap", resource_name(r), window_text(iv.start, std::min(cursor, iv.end))});
            }
            cursor = std::max(cursor, iv.end);
        }
        if (cursor < inst.horizon) {
            out.push_back({"capacity-gap", resource_name(r), window_text(cursor, inst.horizon)});
        } else if (cursor > inst.horizon) {
            out.push_back({"capacity-outside-horizon", resource_name(r), window_text(inst.horizon, cursor)});
        }
    }
}

void check_jobs(const Instance& inst, std::vector<Defect>& out) {
    const auto n = inst.job_count();
    const auto k = inst.machine_count();
    for (std::size_t j = 0; j < n; ++j) {
        const auto& job = inst.jobs[j];
        if (job.eligible.empty()) out.push_back({"no-eligible-machine", job_name(j), ""});
        if (!std::is_sorted(job.eligible.begin(), job.eligible.end()) ||
            std::adjacent_find(job.eligible.begin(), job.eligible.end()) != job.eligible.end()) {
            out.push_back({"eligible-order", job_name(j), "eligible machines must be ascending and unique"});
        }
        if (job.proc.size() != k) out.push_back({"proc-size", job_name(j), "processing vector does not match machine count"});
        for (auto m : job.eligible) {
            if (m >= k) {
                out.push_back({"unknown-machine", job_name(j), machine_name(m)});
            } else if (m < job.proc.size() && job.proc[m] < 0) {
                out.push_back({"negative-proc", job_name(j), machine_name(m)});
            }
        }
        if (job.due < 0) out.push_back({"negative-due", job_name(j), ""});
        if (job.release < 0) out.push_back({"negative-release", job_name(j), ""});
        if (job.demand.size() != inst.resource_count()) {
            out.push_back({"job-demand-size", job_name(j), "demand vector does not match resource count"});
        }
        for (std::size_t r = 0; r < job.demand.size(); ++r) {
            if (job.demand[r] < 0) out.push_back({"negative-demand", job_name(j), resource_name(r)});
        }
        for (const auto& p : job.preds) {
            if (p.pred >= n) {
                out.push_back({"unknown-predecessor", job_name(j), "predecessor id " + std::to_string(p.pred + 1)});
            } else if (p.pred == j) {
                out.push_back({"self-precedence", job_name(j), ""});
            }
            if (p.lag < 0) out.push_back({"negative-lag", job_name(j), job_name(p.pred)});
        }
    }
}

void check_setup(const Instance& inst, std::vector<Defect>& out) {
    const auto n = inst.job_count();
    const auto k = inst.machine_count();
    if (inst.setup.machines() != k || inst.setup.jobs() != n) {
        if (n > 0) out.push_back({"setup-shape", "setup", "table dimensions do not match instance"});
        return;
    }
    for (std::size_t m = 0; m < k; ++m) {
        for (std::size_t j = 0; j < n; ++j) {
            if (!inst.jobs[j].eligible_on(m)) continue;
            if (inst.setup.at(m, inst.setup.dummy(), j) < 0) {
                out.push_back({"setup-missing", machine_name(m), "b" + std::to_string(m + 1) + " -> " + job_name(j)});
            }
            for (std::size_t p = 0; p < n; ++p) {
                if (p == j || !inst.jobs[p].eligible_on(m)) continue;
                if (inst.setup.at(m, p, j) < 0) {
                    out.push_back({"setup-missing", machine_name(m), job_name(p) + " -> " + job_name(j)});
                }
            }
        }
    }
}

void check_acyclic(const Instance& inst, std::vector<Defect>& out) {
    const auto n = inst.job_count();
    std::vector<std::size_t> indegree(n, 0);
    std::vector<std::vector<std::size_t>> succ(n);
    for (std::size_t j = 0; j < n; ++j) {
        for (const auto& p : inst.jobs[j].preds) {
            if (p.pred >= n || p.pred == j) continue;
            succ[p.pred].push_back(j);
            ++indegree[j];
        }
    }
    std::queue<std::size_t> ready;
    for (std::size_t j = 0; j < n; ++j) {
        if (indegree[j] == 0) ready.push(j);
    }
    std::size_t seen = 0;
    while (!ready.empty()) {
        auto j = ready.front();
        ready.pop();
        ++seen;
        for (auto s : succ[j]) {
            if (--indegree[s] == 0) ready.push(s);
        }
    }
    if (seen == n) return;
    std::string members;
    for (std::size_t j = 0; j < n; ++j) {
        if (indegree[j] > 0) {
            if (!members.empty()) members += ", ";
            members += std::to_string(j + 1);
        }
    }
    out.push_back({"precedence-cycle", "jobs " + members, "precedence graph is not acyclic"});
}

}  // namespace

std::vector<Defect> validate_instance(const Instance& instance) {
    std::vector<Defect> out;
    if (instance.horizon < 0) out.push_back({"negative-horizon", "instance", ""});
    const auto& w = instance.weights;
    if (w.tardiness < 0 || w.makespan < 0 || w.setup < 0) out.push_back({"negative-weight", "instance", ""});
    if (instance.machine_count() == 0 && instance.job_count() > 0) {
        out.push_back({"no-machines", "instance", "jobs present but no machines"});
    }
    check_machines(instance, out);
    check_resources(instance, out);
    check_jobs(instance, out);
    check_setup(instance, out);
    check_acyclic(instance, out);
    return out;
}

}  // namespace pmsp
