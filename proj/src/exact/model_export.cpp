#include "pmsp/exact/model_export.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace pmsp {

std::vector<PlaceholderJob> build_placeholder_jobs(const Instance& instance) {
    std::vector<PlaceholderJob> out;
    for (std::size_t r = 0; r < instance.resource_count(); ++r) {
        const auto& res = instance.resources[r];
        const int cmax = res.cmax();
        for (const auto& iv : res.capacity) {
            if (iv.capacity < cmax) out.push_back({r, iv.start, iv.end, cmax - iv.capacity});
        }
    }
    return out;
}

std::vector<MachinePeriod> machine_periods(const Instance& instance) {
    std::vector<MachinePeriod> out;
    for (std::size_t m = 0; m < instance.machine_count(); ++m) {
        Time cursor = 0;
        for (const auto& w : instance.machines[m].downtimes) {
            if (w.start > cursor) out.push_back({m, cursor, w.start});
            cursor = std::max(cursor, w.end);
        }
        if (cursor < instance.horizon) out.push_back({m, cursor, instance.horizon});
    }
    return out;
}

ModelArtifacts model_artifacts(const Instance& instance) {
    ModelArtifacts a;
    a.periods = machine_periods(instance);
    a.placeholders = build_placeholder_jobs(instance);
    a.cumulative_groups = instance.resource_count();
    a.job_parts = (instance.job_count() + a.placeholders.size()) * a.periods.size();
    return a;
}

namespace {

constexpr const char* kModelBody = R"(include "globals.mzn";

int: n;        % jobs
int: k;        % machines
int: nr;       % resources
int: V;        % horizon
int: nd;       % machine downtimes
int: nprec;    % precedences
int: nper;     % machine periods (availability between downtimes)
int: nph;      % placeholder jobs

set of int: JOB = 1..n;
set of int: MACH = 1..k;
set of int: J0 = 1..n+k;        % jobs, then machine start dummies b_m = n+m
set of int: RES = 1..nr;
set of int: DT = 1..nd;
set of int: PREC = 1..nprec;
set of int: PER = 1..nper;
set of int: PH = 1..nph;
set of int: JSTAR = 1..n+nph;   % jobs, then placeholder jobs

array[JOB, MACH] of bool: eligible;
array[JOB, MACH] of int: jp;
array[JOB] of int: due;
array[JOB] of int: rd;
array[MACH, J0, JOB] of int: setup;
array[JOB, RES] of int: z;
array[MACH, RES] of int: v;
array[DT] of int: dt_machine;
array[DT] of int: us;
array[DT] of int: ue;
array[PREC] of int: prec_job;
array[PREC] of int: prec_pred;
array[PREC] of int: prec_lag;
array[PER] of int: per_machine;
array[PER] of int: per_start;
array[PER] of int: per_end;
array[PH] of int: ph_resource;
array[PH] of int: ph_start;
array[PH] of int: ph_end;
array[PH] of int: ph_demand;
array[RES] of int: cmax;
int: max_usage;

array[J0] of var 0..V: job_start;
array[J0] of var 0..V: job_end;
array[J0] of var MACH: a;
array[JOB] of var J0: prev;
array[JOB, DT] of var bool: across;
array[JOB] of var PER: jobStartPeriod;
array[JOB] of var PER: jobCompletionPeriod;
array[JSTAR, PER] of var 0..V: startJobParts;
array[JSTAR, PER] of var 0..V: durationJobParts;
array[RES, JSTAR, PER] of var 0..max_usage: secResourceUsage;

% machine start dummies are pinned to their machine at time 0
constraint forall(m in MACH)(a[n+m] = m /\ job_start[n+m] = 0 /\ job_end[n+m] = 0);

% previous-job assignments are pairwise different and stay on the machine
constraint alldifferent(prev);
constraint forall(j in JOB)(prev[j] != j);
constraint forall(j in JOB)(eligible[j, a[j]]);
constraint forall(j in JOB)(a[prev[j]] = a[j]);

% spanning a downtime
constraint forall(j in JOB, u in DT)(
    across[j, u] <-> (a[j] = dt_machine[u] /\ job_start[j] < us[u] /\ job_end[j] > ue[u]));

% end = start + setup + processing + paused downtime
constraint forall(j in JOB)(
    job_end[j] = job_start[j] + setup[a[j], prev[j], j] + jp[j, a[j]]
                 + sum(u in DT)(bool2int(across[j, u]) * (ue[u] - us[u])));

constraint forall(j in JOB)(job_start[j] >= rd[j]);
constraint forall(j in JOB)(job_start[j] >= job_end[prev[j]]);

% starts and ends never fall inside a downtime (half-open windows)
constraint forall(j in JOB, u in DT)(
    a[j] = dt_machine[u] ->
        ((job_start[j] < us[u] \/ job_start[j] >= ue[u]) /\ (job_end[j] <= us[u] \/ job_end[j] > ue[u])));

constraint forall(p in PREC)(job_start[prec_job[p]] >= job_end[prec_pred[p]] + prec_lag[p]);

% machine periods holding the start and the completion
constraint forall(j in JOB)(
    per_machine[jobStartPeriod[j]] = a[j] /\
    per_start[jobStartPeriod[j]] <= job_start[j] /\ job_start[j] < per_end[jobStartPeriod[j]]);
constraint forall(j in JOB)(
    per_machine[jobCompletionPeriod[j]] = a[j] /\
    per_start[jobCompletionPeriod[j]] < job_end[j] /\ job_end[j] <= per_end[jobCompletionPeriod[j]]);

% uninterrupted job parts, one per machine period
constraint forall(j in JOB, p in PER)(
    let { var bool: runs = (a[j] = per_machine[p] /\ p >= jobStartPeriod[j] /\ p <= jobCompletionPeriod[j]) } in
    (runs -> (startJobParts[j, p] = max(job_start[j], per_start[p]) /\
              durationJobParts[j, p] = min(job_end[j], per_end[p]) - max(job_start[j], per_start[p]))) /\
    ((not runs) -> (startJobParts[j, p] = 0 /\ durationJobParts[j, p] = 0)));

constraint forall(r in RES, j in JOB, p in PER)(secResourceUsage[r, j, p] = z[j, r] + v[a[j], r]);

% placeholder jobs are fixed to their calendar interval in period 1
constraint forall(i in PH)(
    startJobParts[n+i, 1] = ph_start[i] /\ durationJobParts[n+i, 1] = ph_end[i] - ph_start[i]);
constraint forall(i in PH, p in PER where p > 1)(startJobParts[n+i, p] = 0 /\ durationJobParts[n+i, p] = 0);
constraint forall(r in RES, i in PH, p in PER)(
    secResourceUsage[r, n+i, p] = if r = ph_resource[i] /\ p = 1 then ph_demand[i] else 0 endif);
)";

std::string join_ints(const std::vector<long long>& values) {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) os << ", ";
        os << values[i];
    }
    os << ']';
    return os.str();
}

std::string number(double w, bool integral) {
    std::ostringstream os;
    if (integral) {
        os << static_cast<long long>(w);
    } else {
        os.precision(17);
        os << std::showpoint << w;
    }
    return os.str();
}

}  // namespace

ModelText constraint_model_text(const Instance& inst) {
    const auto n = inst.job_count();
    const auto k = inst.machine_count();
    const auto nr = inst.resource_count();
    const auto art = model_artifacts(inst);
    const auto& w = inst.weights;
    const bool integral = std::floor(w.tardiness) == w.tardiness && std::floor(w.makespan) == w.makespan &&
                          std::floor(w.setup) == w.setup;

    std::ostringstream model;
    model << "% Parallel machine scheduling with precedences and cumulative resource calendars\n";
    model << "% generated model: " << n << " jobs, " << k << " machine start dummies, " << nr
          << " cumulative groups, " << art.placeholders.size() << " placeholder jobs\n";
    model << kModelBody;
    model << "\n% one cumulative group per resource over jobs and placeholder jobs\n";
    for (std::size_t r = 1; r <= nr; ++r) {
        model << "constraint cumulative([startJobParts[j, p] | j in JSTAR, p in PER], "
              << "[durationJobParts[j, p] | j in JSTAR, p in PER], "
              << "[secResourceUsage[" << r << ", j, p] | j in JSTAR, p in PER], cmax[" << r << "]);\n";
    }
    const char* wtype = integral ? "int" : "float";
    model << "\n" << wtype << ": w1;\n" << wtype << ": w2;\n" << wtype << ": w3;\n";
    model << "var int: T = sum(j in JOB)(max(0, job_end[j] - due[j]));\n";
    model << "var int: C = max(j in JOB)(job_end[j]);\n";
    model << "var int: S = sum(j in JOB)(setup[a[j], prev[j], j]);\n";
    if (integral) {
        model << "solve minimize w1 * T + w2 * C + w3 * S;\n";
    } else {
        model << "solve minimize w1 * int2float(T) + w2 * int2float(C) + w3 * int2float(S);\n";
    }
    model << "\noutput [\"start = \\(job_start)\\n\", \"end = \\(job_end)\\n\", \"machine = \\(a)\\n\", "
             "\"prev = \\(prev)\\n\", \"T = \\(T)\\nC = \\(C)\\nS = \\(S)\\n\"];\n";

    std::ostringstream data;
    std::vector<long long> dt_machine, us, ue;
    for (std::size_t m = 0; m < k; ++m) {
        for (const auto& dw : inst.machines[m].downtimes) {
            dt_machine.push_back(static_cast<long long>(m + 1));
            us.push_back(dw.start);
            ue.push_back(dw.end);
        }
    }
    std::vector<long long> prec_job, prec_pred, prec_lag;
    for (std::size_t j = 0; j < n; ++j) {
        for (const auto& p : inst.jobs[j].preds) {
            prec_job.push_back(static_cast<long long>(j + 1));
            prec_pred.push_back(static_cast<long long>(p.pred + 1));
            prec_lag.push_back(p.lag);
        }
    }
    long long max_usage = 0;
    std::vector<long long> cmax;
    for (const auto& res : inst.resources) {
        cmax.push_back(res.cmax());
        max_usage = std::max<long long>(max_usage, res.cmax());
    }

    data << "n = " << n << ";\nk = " << k << ";\nnr = " << nr << ";\nV = " << inst.horizon << ";\n";
    data << "nd = " << us.size() << ";\nnprec = " << prec_job.size() << ";\nnper = " << art.periods.size()
         << ";\nnph = " << art.placeholders.size() << ";\n";
    data << "w1 = " << number(w.tardiness, integral) << ";\nw2 = " << number(w.makespan, integral)
         << ";\nw3 = " << number(w.setup, integral) << ";\n";

    std::vector<long long> jp, due, rd, z, v;
    std::ostringstream eligible;
    eligible << "eligible = array2d(1.." << n << ", 1.." << k << ", [";
    for (std::size_t j = 0; j < n; ++j) {
        const auto& job = inst.jobs[j];
        for (std::size_t m = 0; m < k; ++m) {
            if (j || m) eligible << ", ";
            eligible << (job.eligible_on(m) ? "true" : "false");
            jp.push_back(job.eligible_on(m) ? job.proc[m] : 0);
        }
        due.push_back(job.due);
        rd.push_back(job.release);
        for (std::size_t r = 0; r < nr; ++r) {
            z.push_back(job.demand[r]);
            max_usage = std::max<long long>(max_usage, job.demand[r]);
        }
    }
    eligible << "]);\n";
    long long max_machine = 0;
    for (std::size_t m = 0; m < k; ++m) {
        long long row = 0;
        for (std::size_t r = 0; r < nr; ++r) {
            v.push_back(inst.machines[m].demand[r]);
            row = std::max<long long>(row, inst.machines[m].demand[r]);
        }
        max_machine = std::max(max_machine, row);
    }
    max_usage += max_machine;
    data << eligible.str();
    data << "jp = array2d(1.." << n << ", 1.." << k << ", " << join_ints(jp) << ");\n";
    data << "due = " << join_ints(due) << ";\nrd = " << join_ints(rd) << ";\n";

    std::vector<long long> setup;
    for (std::size_t m = 0; m < k; ++m) {
        for (std::size_t p = 0; p < n + k; ++p) {
            for (std::size_t j = 0; j < n; ++j) {
                long long value = 0;
                if (p < n) {
                    value = inst.setup.at(m, p, j);
                } else if (p - n == m) {
                    value = inst.setup.at(m, inst.setup.dummy(), j);
                }
                setup.push_back(std::max<long long>(value, 0));
            }
        }
    }
    data << "setup = array3d(1.." << k << ", 1.." << n + k << ", 1.." << n << ", " << join_ints(setup) << ");\n";
    data << "z = array2d(1.." << n << ", 1.." << nr << ", " << join_ints(z) << ");\n";
    data << "v = array2d(1.." << k << ", 1.." << nr << ", " << join_ints(v) << ");\n";
    data << "dt_machine = " << join_ints(dt_machine) << ";\nus = " << join_ints(us) << ";\nue = " << join_ints(ue) << ";\n";
    data << "prec_job = " << join_ints(prec_job) << ";\nprec_pred = " << join_ints(prec_pred)
         << ";\nprec_lag = " << join_ints(prec_lag) << ";\n";

    std::vector<long long> per_machine, per_start, per_end;
    for (const auto& p : art.periods) {
        per_machine.push_back(static_cast<long long>(p.machine + 1));
        per_start.push_back(p.start);
        per_end.push_back(p.end);
    }
    data << "per_machine = " << join_ints(per_machine) << ";\nper_start = " << join_ints(per_start)
         << ";\nper_end = " << join_ints(per_end) << ";\n";

    std::vector<long long> ph_resource, ph_start, ph_end, ph_demand;
    for (const auto& ph : art.placeholders) {
        ph_resource.push_back(static_cast<long long>(ph.resource + 1));
        ph_start.push_back(ph.start);
        ph_end.push_back(ph.end);
        ph_demand.push_back(ph.demand);
    }
    data << "ph_resource = " << join_ints(ph_resource) << ";\nph_start = " << join_ints(ph_start)
         << ";\nph_end = " << join_ints(ph_end) << ";\nph_demand = " << join_ints(ph_demand) << ";\n";
    data << "cmax = " << join_ints(cmax) << ";\nmax_usage = " << max_usage << ";\n";

    return {model.str(), data.str()};
}

ModelArtifacts export_constraint_model(const Instance& instance, const std::filesystem::path& stem) {
    const auto text = constraint_model_text(instance);
    auto write = [](const std::filesystem::path& path, const std::string& body) {
        std::ofstream out(path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + path.string());
        out << body;
        if (!out) throw std::runtime_error("write failed for " + path.string());
    };
    auto model_path = stem;
    model_path += ".mzn";
    auto data_path = stem;
    data_path += ".dzn";
    write(model_path, text.model);
    write(data_path, text.data);
    return model_artifacts(instance);
}

}  // namespace pmsp
