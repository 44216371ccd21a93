#include "pmsp/core/json_io.hpp"

#include <algorithm>
#include <fstream>
#include <limits>

namespace pmsp {

using nlohmann::json;

namespace {

const json& member(const json& obj, const char* key) {
    if (!obj.is_object()) throw FormatError(std::string("expected object holding '") + key + "'");
    auto it = obj.find(key);
    if (it == obj.end()) throw FormatError(std::string("missing field '") + key + "'");
    return *it;
}

const json& array_member(const json& obj, const char* key) {
    const auto& v = member(obj, key);
    if (!v.is_array()) throw FormatError(std::string("field '") + key + "' must be an array");
    return v;
}

Time as_time(const json& v, const char* what) {
    if (!v.is_number_integer()) throw FormatError(std::string(what) + " must be an integer");
    return v.get<Time>();
}

int as_int(const json& v, const char* what) {
    const auto t = as_time(v, what);
    if (t < std::numeric_limits<int>::min() || t > std::numeric_limits<int>::max()) {
        throw FormatError(std::string(what) + " out of range");
    }
    return static_cast<int>(t);
}

/// Parses a 1-based id into an index below `count`.
std::size_t id_index(const json& v, std::size_t count, const char* what) {
    const auto id = as_time(v, what);
    if (id < 1 || static_cast<std::size_t>(id) > count) {
        throw FormatError(std::string(what) + " id " + std::to_string(id) + " out of range");
    }
    return static_cast<std::size_t>(id - 1);
}

std::size_t key_index(const std::string& key, std::size_t count, const char* what) {
    std::size_t pos = 0;
    long long id = 0;
    try {
        id = std::stoll(key, &pos);
    } catch (const std::exception&) {
        throw FormatError(std::string("bad ") + what + " key '" + key + "'");
    }
    if (pos != key.size() || id < 1 || static_cast<std::size_t>(id) > count) {
        throw FormatError(std::string("bad ") + what + " key '" + key + "'");
    }
    return static_cast<std::size_t>(id - 1);
}

std::string id_key(std::size_t index) { return std::to_string(index + 1); }

json demand_map(const std::vector<int>& demand) {
    json out = json::object();
    for (std::size_t r = 0; r < demand.size(); ++r) {
        if (demand[r] != 0) out[id_key(r)] = demand[r];
    }
    return out;
}

std::vector<int> parse_demand_map(const json& obj, std::size_t resources) {
    if (!obj.is_object()) throw FormatError("demands must be an object");
    std::vector<int> demand(resources, 0);
    for (const auto& [key, value] : obj.items()) {
        demand[key_index(key, resources, "resource")] = as_int(value, "demand");
    }
    return demand;
}

/// Orders entity records by their 1-based id, rejecting duplicates and gaps.
std::vector<const json*> by_id(const json& arr, const char* what) {
    std::vector<const json*> slots(arr.size(), nullptr);
    for (const auto& item : arr) {
        const auto idx = id_index(member(item, "id"), arr.size(), what);
        if (slots[idx]) throw FormatError(std::string("duplicate ") + what + " id " + id_key(idx));
        slots[idx] = &item;
    }
    return slots;
}

}  // namespace

json instance_to_json(const Instance& inst) {
    json doc;
    doc["version"] = kInstanceFormatVersion;
    doc["horizon"] = inst.horizon;
    doc["weights"] = {inst.weights.tardiness, inst.weights.makespan, inst.weights.setup};

    json machines = json::array();
    for (std::size_t m = 0; m < inst.machine_count(); ++m) {
        const auto& mach = inst.machines[m];
        json downtimes = json::array();
        for (const auto& w : mach.downtimes) downtimes.push_back({w.start, w.end});
        machines.push_back({{"id", m + 1}, {"downtimes", downtimes}, {"demands", demand_map(mach.demand)}});
    }
    doc["machines"] = machines;

    json resources = json::array();
    for (std::size_t r = 0; r < inst.resource_count(); ++r) {
        json cap = json::array();
        for (const auto& iv : inst.resources[r].capacity) cap.push_back({iv.start, iv.end, iv.capacity});
        resources.push_back({{"id", r + 1}, {"capacity", cap}});
    }
    doc["resources"] = resources;

    json jobs = json::array();
    for (std::size_t j = 0; j < inst.job_count(); ++j) {
        const auto& job = inst.jobs[j];
        json eligible = json::array();
        json proc = json::object();
        for (auto m : job.eligible) {
            eligible.push_back(m + 1);
            proc[id_key(m)] = job.proc[m];
        }
        json preds = json::array();
        for (const auto& p : job.preds) preds.push_back({p.pred + 1, p.lag});
        json rec = {{"id", j + 1},           {"eligible", eligible},   {"proc", proc},
                    {"due", job.due},        {"release", job.release}, {"demands", demand_map(job.demand)},
                    {"preds", preds}};
        if (job.material) rec["material"] = *job.material;
        jobs.push_back(rec);
    }
    doc["jobs"] = jobs;

    json setup = json::object();
    for (std::size_t m = 0; m < inst.machine_count(); ++m) {
        json per_machine = json::object();
        auto row = [&](std::size_t pred, const std::string& key) {
            json targets = json::object();
            for (std::size_t j = 0; j < inst.job_count(); ++j) {
                if (j == pred || !inst.jobs[j].eligible_on(m)) continue;
                const auto v = inst.setup.at(m, pred, j);
                if (v != SetupTable::kUndefined) targets[id_key(j)] = v;
            }
            if (!targets.empty()) per_machine[key] = targets;
        };
        row(inst.setup.dummy(), "b" + id_key(m));
        for (std::size_t p = 0; p < inst.job_count(); ++p) {
            if (inst.jobs[p].eligible_on(m)) row(p, id_key(p));
        }
        setup[id_key(m)] = per_machine;
    }
    doc["setup"] = setup;
    return doc;
}

Instance instance_from_json(const json& doc) {
    try {
        Instance inst;
        const auto version = as_time(member(doc, "version"), "version");
        if (version != kInstanceFormatVersion) throw FormatError("unsupported version " + std::to_string(version));
        inst.horizon = as_time(member(doc, "horizon"), "horizon");

        const auto& weights = array_member(doc, "weights");
        if (weights.size() != 3) throw FormatError("weights must hold three numbers");
        for (const auto& w : weights) {
            if (!w.is_number()) throw FormatError("weights must be numbers");
        }
        inst.weights = {weights[0].get<double>(), weights[1].get<double>(), weights[2].get<double>()};

        const auto& machines = array_member(doc, "machines");
        const auto& resources = array_member(doc, "resources");
        const auto& jobs = array_member(doc, "jobs");
        const auto k = machines.size();
        const auto s = resources.size();
        const auto n = jobs.size();

        for (const auto* rec : by_id(resources, "resource")) {
            Resource res;
            for (const auto& iv : array_member(*rec, "capacity")) {
                if (!iv.is_array() || iv.size() != 3) throw FormatError("capacity entries must be [start,end,capacity]");
                res.capacity.push_back({as_time(iv[0], "capacity start"), as_time(iv[1], "capacity end"),
                                        as_int(iv[2], "capacity")});
            }
            inst.resources.push_back(std::move(res));
        }

        for (const auto* rec : by_id(machines, "machine")) {
            Machine mach;
            for (const auto& w : array_member(*rec, "downtimes")) {
                if (!w.is_array() || w.size() != 2) throw FormatError("downtimes must be [start,end] pairs");
                mach.downtimes.push_back({as_time(w[0], "downtime start"), as_time(w[1], "downtime end")});
            }
            mach.demand = parse_demand_map(member(*rec, "demands"), s);
            inst.machines.push_back(std::move(mach));
        }

        for (const auto* rec : by_id(jobs, "job")) {
            Job job;
            for (const auto& m : array_member(*rec, "eligible")) job.eligible.push_back(id_index(m, k, "machine"));
            std::sort(job.eligible.begin(), job.eligible.end());
            job.proc.assign(k, 0);
            const auto& proc = member(*rec, "proc");
            if (!proc.is_object()) throw FormatError("proc must be an object");
            for (const auto& [key, value] : proc.items()) {
                job.proc[key_index(key, k, "machine")] = as_time(value, "proc");
            }
            for (auto m : job.eligible) {
                if (!proc.contains(id_key(m))) throw FormatError("job " + id_key(inst.jobs.size()) + " lacks proc for machine " + id_key(m));
            }
            job.due = as_time(member(*rec, "due"), "due");
            job.release = as_time(member(*rec, "release"), "release");
            job.demand = parse_demand_map(member(*rec, "demands"), s);
            for (const auto& p : array_member(*rec, "preds")) {
                if (!p.is_array() || p.size() != 2) throw FormatError("preds must be [pred_id, lag] pairs");
                job.preds.push_back({id_index(p[0], n, "predecessor"), as_time(p[1], "lag")});
            }
            if (auto it = rec->find("material"); it != rec->end() && !it->is_null()) {
                job.material = as_int(*it, "material");
            }
            inst.jobs.push_back(std::move(job));
        }

        inst.setup = SetupTable(k, n);
        const auto& setup = member(doc, "setup");
        if (!setup.is_object()) throw FormatError("setup must be an object");
        for (const auto& [mkey, per_machine] : setup.items()) {
            const auto m = key_index(mkey, k, "machine");
            if (!per_machine.is_object()) throw FormatError("setup rows must be objects");
            const auto dummy_key = "b" + id_key(m);
            for (const auto& [pkey, targets] : per_machine.items()) {
                std::size_t pred = 0;
                if (!pkey.empty() && pkey[0] == 'b') {
                    if (pkey != dummy_key) throw FormatError("dummy key '" + pkey + "' under machine " + mkey);
                    pred = inst.setup.dummy();
                } else {
                    pred = key_index(pkey, n, "job");
                }
                if (!targets.is_object()) throw FormatError("setup targets must be objects");
                for (const auto& [jkey, value] : targets.items()) {
                    const auto v = as_time(value, "setup");
                    if (v < 0 || v > std::numeric_limits<std::int32_t>::max()) throw FormatError("setup out of range");
                    inst.setup.set(m, pred, key_index(jkey, n, "job"), static_cast<std::int32_t>(v));
                }
            }
        }
        return inst;
    } catch (const json::exception& e) {
        throw FormatError(e.what());
    }
}

json cost_to_json(const CostBreakdown& cost) {
    return {{"T", cost.tardiness},
            {"C", cost.makespan},
            {"S", cost.setup_total},
            {"violations", cost.violations},
            {"aggregate", cost.aggregate}};
}

json schedule_to_json(const Schedule& schedule, const CostBreakdown& cost, const std::string& instance_id) {
    json jobs = json::array();
    for (std::size_t j = 0; j < schedule.jobs.size(); ++j) {
        const auto& p = schedule.jobs[j];
        json spanned = json::array();
        for (const auto& w : p.spanned) spanned.push_back({w.start, w.end});
        json prev = p.prev ? json(*p.prev + 1) : json("b" + id_key(p.machine));
        jobs.push_back({{"id", j + 1},
                        {"machine", p.machine + 1},
                        {"start", p.start},
                        {"end", p.end},
                        {"setup_len", p.setup},
                        {"prev", prev},
                        {"spanned", spanned},
                        {"violated", std::string(to_string(p.violated))}});
    }
    return {{"instance_id", instance_id}, {"jobs", jobs}, {"cost", cost_to_json(cost)}};
}

Schedule schedule_from_json(const Instance& inst, const json& doc) {
    try {
        const auto n = inst.job_count();
        const auto& jobs = array_member(doc, "jobs");
        if (jobs.size() != n) throw FormatError("schedule lists " + std::to_string(jobs.size()) + " jobs, instance has " + std::to_string(n));
        Schedule sched;
        sched.jobs.resize(n);
        for (const auto* rec : by_id(jobs, "job")) {
            const auto j = id_index(member(*rec, "id"), n, "job");
            auto& p = sched.jobs[j];
            p.machine = id_index(member(*rec, "machine"), inst.machine_count(), "machine");
            p.start = as_time(member(*rec, "start"), "start");
            p.end = as_time(member(*rec, "end"), "end");
            p.setup = as_time(member(*rec, "setup_len"), "setup_len");
            const auto& prev = member(*rec, "prev");
            if (prev.is_string()) {
                const auto s = prev.get<std::string>();
                if (s.empty() || s[0] != 'b') throw FormatError("bad prev '" + s + "'");
                // a dummy is pinned to its machine, so any other b<m> is unrepresentable
                if (key_index(s.substr(1), inst.machine_count(), "dummy") != p.machine) {
                    throw FormatError("job " + id_key(j) + " on machine " + id_key(p.machine) + " cannot follow " + s);
                }
                p.prev = std::nullopt;
            } else {
                p.prev = id_index(prev, n, "prev");
            }
            for (const auto& w : array_member(*rec, "spanned")) {
                if (!w.is_array() || w.size() != 2) throw FormatError("spanned entries must be [us,ue]");
                p.spanned.push_back({as_time(w[0], "spanned start"), as_time(w[1], "spanned end")});
            }
            const auto& flag = member(*rec, "violated");
            if (!flag.is_string()) throw FormatError("violated must be a string");
            auto v = violated_from_string(flag.get<std::string>());
            if (!v) throw FormatError("unknown violated flag '" + flag.get<std::string>() + "'");
            p.violated = *v;
        }
        return sched;
    } catch (const json::exception& e) {
        throw FormatError(e.what());
    }
}

json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw FormatError(path.string() + ": " + e.what());
    }
}

void write_json_file(const std::filesystem::path& path, const json& doc) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << doc.dump(2) << '\n';
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace pmsp
