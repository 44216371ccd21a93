#include "pmsp/gen/generator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace pmsp {

namespace {

constexpr std::int64_t kMaxDemand = 1'000'000;
constexpr int kChainAttempts = 200;

bool bad_range(const IntRange& r) { return r.lo > r.hi; }

}  // namespace

void check_config(const GenConfig& c) {
    auto fail = [](const std::string& what) { throw GenerationError("generator config: " + what); };
    if (c.jobs < 1) fail("need at least one job");
    if (c.machines < 1) fail("need at least one machine");
    if (c.chains > c.jobs / 2) fail("chain count exceeds jobs/2");
    if (c.materials && *c.materials < 1) fail("need at least one material");
    if (bad_range(c.proc) || c.proc.lo < 1) fail("processing range must be non-empty with lo >= 1");
    if (bad_range(c.setup) || c.setup.lo < 0 || c.setup.hi > INT32_MAX) fail("setup range invalid");
    if (bad_range(c.demand) || c.demand.lo < 0 || c.demand.hi > kMaxDemand) fail("demand range invalid");
    if (bad_range(c.resources_per_material) || c.resources_per_material.lo < 0) fail("resources per material invalid");
    if (c.resources > 0 && c.resources_per_material.hi < 1) fail("materials must use at least one resource");
    if (bad_range(c.downtimes_per_machine) || c.downtimes_per_machine.lo < 0) fail("downtime count range invalid");
    if (!(c.machine_demand_probability >= 0.0 && c.machine_demand_probability <= 1.0)) fail("machine demand probability outside [0,1]");
    if (c.due_slack < 0 || c.release_slack < 0) fail("slacks must be non-negative");
    if (!(c.horizon_factor >= 1.0)) fail("horizon factor must be at least 1");
    if (c.weights.tardiness < 0 || c.weights.makespan < 0 || c.weights.setup < 0) fail("weights must be non-negative");
}

std::optional<GenConfig> preset(std::string_view name) {
    GenConfig c;
    if (name == "tiny") {
        c.jobs = 5;
        c.machines = 2;
        c.resources = 2;
        c.chains = 1;
        c.proc = {1, 4};
        c.setup = {1, 2};
        c.demand = {1, 2};
        c.downtimes_per_machine = {0, 1};
        c.due_slack = 3;
        c.release_slack = 2;
        return c;
    }
    if (name == "large") {
        c.jobs = 100;
        c.machines = 5;
        c.resources = 10;
        c.chains = 10;
        return c;
    }
    if (name == "plant") {
        c.jobs = 700;
        c.machines = 60;
        c.resources = 80;
        c.chains = 70;
        return c;
    }
    for (std::size_t n : {10, 20}) {
        for (std::size_t chains : {n / 10, n / 4}) {
            for (std::size_t k : {2, 5}) {
                for (std::size_t s : {5, 10}) {
                    const auto tag = "n" + std::to_string(n) + "-c" + std::to_string(chains) + "-k" +
                                     std::to_string(k) + "-s" + std::to_string(s);
                    if (name == tag) {
                        c.jobs = n;
                        c.chains = chains;
                        c.machines = k;
                        c.resources = s;
                        return c;
                    }
                }
            }
        }
    }
    return std::nullopt;
}

std::vector<std::string> grid_preset_names() {
    std::vector<std::string> out;
    for (std::size_t n : {10, 20}) {
        for (std::size_t chains : {n / 10, n / 4}) {
            for (std::size_t k : {2, 5}) {
                for (std::size_t s : {5, 10}) {
                    out.push_back("n" + std::to_string(n) + "-c" + std::to_string(chains) + "-k" + std::to_string(k) +
                                  "-s" + std::to_string(s));
                }
            }
        }
    }
    return out;
}

std::vector<std::string> preset_names() {
    auto out = grid_preset_names();
    out.insert(out.end(), {"tiny", "large", "plant"});
    return out;
}

ReferenceSolution build_reference_solution(const Instance& partial, Rng& rng) {
    const auto n = partial.job_count();
    const auto k = partial.machine_count();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    rng.shuffle(std::span(order));

    ReferenceSolution ref;
    ref.schedule.jobs.resize(n);
    ref.repr.assign.assign(n, 0);
    std::vector<std::optional<std::size_t>> last(k);
    std::vector<Time> machine_end(k, 0);
    for (auto j : order) {
        const auto& job = partial.jobs[j];
        std::size_t machine = job.eligible.front();
        Time best = partial.setup_time(machine, last[machine], j);
        for (auto m : job.eligible) {
            const Time s = partial.setup_time(m, last[m], j);
            if (s < best) {
                best = s;
                machine = m;
            }
        }
        auto& p = ref.schedule.jobs[j];
        p.machine = machine;
        p.prev = last[machine];
        p.setup = best;
        p.start = machine_end[machine];
        p.end = p.start + best + job.proc[machine];
        machine_end[machine] = p.end;
        last[machine] = j;
        ref.repr.assign[j] = machine;
        ref.makespan = std::max(ref.makespan, p.end);
    }

    ref.repr.order.resize(n);
    std::iota(ref.repr.order.begin(), ref.repr.order.end(), std::size_t{0});
    std::stable_sort(ref.repr.order.begin(), ref.repr.order.end(), [&](std::size_t a, std::size_t b) {
        const auto& pa = ref.schedule.jobs[a];
        const auto& pb = ref.schedule.jobs[b];
        return std::tie(pa.start, pa.machine) < std::tie(pb.start, pb.machine);
    });

    const auto s = partial.resource_count();
    ref.usage.assign(s, std::vector<int>(static_cast<std::size_t>(ref.makespan), 0));
    for (std::size_t j = 0; j < n; ++j) {
        const auto& p = ref.schedule.jobs[j];
        for (std::size_t r = 0; r < s; ++r) {
            const int need = partial.jobs[j].demand[r] + partial.machines[p.machine].demand[r];
            if (need == 0) continue;
            for (Time t = p.start; t < p.end; ++t) ref.usage[r][static_cast<std::size_t>(t)] += need;
        }
    }
    return ref;
}

std::vector<CapacityInterval> calendar_from_usage(std::span<const int> usage, Time horizon) {
    std::vector<CapacityInterval> out;
    auto at = [&](Time t) { return t < static_cast<Time>(usage.size()) ? usage[static_cast<std::size_t>(t)] : 0; };
    Time t = 0;
    while (t < horizon) {
        const bool busy = at(t) > 0;
        Time e = t;
        int peak = 0;
        while (e < horizon && (at(e) > 0) == busy) {
            peak = std::max(peak, at(e));
            ++e;
        }
        out.push_back({t, e, peak});
        t = e;
    }
    return out;
}

std::vector<CapacityInterval> derive_resource_calendar(const ReferenceSolution& reference, std::size_t resource,
                                                       Time horizon) {
    return calendar_from_usage(reference.usage[resource], horizon);
}

std::vector<std::vector<Precedence>> sample_precedence_chains(const ReferenceSolution& reference, std::size_t count,
                                                              LagMode lag_mode, Rng& rng) {
    const auto& jobs = reference.schedule.jobs;
    const auto n = jobs.size();
    std::vector<std::vector<Precedence>> preds(n);
    std::vector<bool> used(n, false);
    auto overlaps = [&](std::size_t a, std::size_t b) {
        return jobs[a].start < jobs[b].end && jobs[b].start < jobs[a].end;
    };

    for (std::size_t c = 0; c < count; ++c) {
        std::vector<std::size_t> chain;
        for (int attempt = 0; attempt < kChainAttempts; ++attempt) {
            const auto want = static_cast<std::size_t>(rng.uniform_int(2, 4));
            std::vector<std::size_t> pool;
            for (std::size_t j = 0; j < n; ++j) {
                if (!used[j]) pool.push_back(j);
            }
            rng.shuffle(std::span(pool));
            std::vector<std::size_t> picked;
            for (auto j : pool) {
                if (picked.size() == want) break;
                if (std::none_of(picked.begin(), picked.end(), [&](std::size_t q) { return overlaps(j, q); })) {
                    picked.push_back(j);
                }
            }
            if (picked.size() >= 2 && (picked.size() == want || attempt + 1 == kChainAttempts)) {
                chain = std::move(picked);
                break;
            }
        }
        if (chain.size() < 2) throw GenerationError("cannot place precedence chain " + std::to_string(c + 1));
        std::sort(chain.begin(), chain.end(), [&](std::size_t a, std::size_t b) { return jobs[a].start < jobs[b].start; });
        for (std::size_t i = 0; i < chain.size(); ++i) {
            used[chain[i]] = true;
            if (i == 0) continue;
            const auto p = chain[i - 1];
            const auto q = chain[i];
            const Time gap = jobs[q].start - jobs[p].end;
            const Time lag = lag_mode == LagMode::zero ? 0 : rng.uniform_int(0, gap);
            preds[q].push_back({p, lag});
        }
    }
    return preds;
}

DatesAndDowntimes derive_dates_and_downtimes(const ReferenceSolution& reference, const GenConfig& config,
                                             std::size_t machines, Time horizon, Rng& rng) {
    const auto& jobs = reference.schedule.jobs;
    DatesAndDowntimes out;
    out.downtimes.resize(machines);

    for (std::size_t m = 0; m < machines; ++m) {
        std::vector<Window> busy;
        for (const auto& p : jobs) {
            if (p.machine == m) busy.push_back({p.start, p.end});
        }
        std::sort(busy.begin(), busy.end(), [](const Window& a, const Window& b) { return a.start < b.start; });
        std::vector<Window> gaps;
        Time cursor = 0;
        for (const auto& b : busy) {
            if (b.start > cursor) gaps.push_back({cursor, b.start});
            cursor = std::max(cursor, b.end);
        }
        if (cursor < horizon) gaps.push_back({cursor, horizon});

        const auto wanted = rng.uniform_int(config.downtimes_per_machine.lo, config.downtimes_per_machine.hi);
        for (std::int64_t d = 0; d < wanted && !gaps.empty(); ++d) {
            const auto g = rng.index(gaps.size());
            const auto gap = gaps[g];
            const Time a = rng.uniform_int(gap.start, gap.end - 1);
            const Time b = rng.uniform_int(a + 1, gap.end);
            out.downtimes[m].push_back({a, b});
            gaps.erase(gaps.begin() + static_cast<std::ptrdiff_t>(g));
            if (a > gap.start) gaps.push_back({gap.start, a});
            if (gap.end > b) gaps.push_back({b, gap.end});
        }
        std::sort(out.downtimes[m].begin(), out.downtimes[m].end(),
                  [](const Window& x, const Window& y) { return x.start < y.start; });
    }

    out.due.resize(jobs.size());
    out.release.resize(jobs.size());
    for (std::size_t j = 0; j < jobs.size(); ++j) {
        out.release[j] = std::max<Time>(0, jobs[j].start - rng.uniform_int(0, config.release_slack));
        const Time due = jobs[j].end + rng.uniform_int(-config.due_slack, config.due_slack);
        out.due[j] = std::max(due, out.release[j] + 1);
    }
    return out;
}

Generated generate(const GenConfig& config) {
    check_config(config);
    Rng rng(config.seed);
    const auto n = config.jobs;
    const auto k = config.machines;
    const auto s = config.resources;
    const auto materials = config.materials.value_or(std::max<std::size_t>(2, n / 5));

    Instance inst;
    inst.weights = config.weights;
    inst.machines.resize(k);
    inst.resources.resize(s);
    inst.jobs.resize(n);

    // materials and the resources each one draws on
    std::vector<std::vector<std::size_t>> material_resources(materials);
    for (auto& used : material_resources) {
        if (s == 0) break;
        const auto count = static_cast<std::size_t>(std::min<std::int64_t>(
            static_cast<std::int64_t>(s),
            rng.uniform_int(config.resources_per_material.lo, config.resources_per_material.hi)));
        std::vector<std::size_t> all(s);
        std::iota(all.begin(), all.end(), std::size_t{0});
        rng.shuffle(std::span(all));
        used.assign(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(count));
        std::sort(used.begin(), used.end());
    }
    for (auto& job : inst.jobs) job.material = static_cast<int>(rng.index(materials));

    for (auto& job : inst.jobs) {
        const auto size = static_cast<std::size_t>(rng.uniform_int(1, static_cast<std::int64_t>(k)));
        std::vector<std::size_t> all(k);
        std::iota(all.begin(), all.end(), std::size_t{0});
        rng.shuffle(std::span(all));
        job.eligible.assign(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(size));
        std::sort(job.eligible.begin(), job.eligible.end());
        job.proc.assign(k, 0);
        for (auto m : job.eligible) job.proc[m] = rng.uniform_int(config.proc.lo, config.proc.hi);
    }

    inst.setup = SetupTable(k, n);
    for (std::size_t m = 0; m < k; ++m) {
        for (std::size_t j = 0; j < n; ++j) {
            if (!inst.jobs[j].eligible_on(m)) continue;
            inst.setup.set(m, inst.setup.dummy(), j, static_cast<std::int32_t>(rng.uniform_int(config.setup.lo, config.setup.hi)));
            for (std::size_t p = 0; p < n; ++p) {
                if (p == j || !inst.jobs[p].eligible_on(m)) continue;
                const bool same = inst.jobs[p].material == inst.jobs[j].material;
                inst.setup.set(m, p, j, same ? 0 : static_cast<std::int32_t>(rng.uniform_int(config.setup.lo, config.setup.hi)));
            }
        }
    }

    for (auto& job : inst.jobs) {
        job.demand.assign(s, 0);
        for (auto r : material_resources[static_cast<std::size_t>(*job.material)]) {
            job.demand[r] = static_cast<int>(rng.uniform_int(config.demand.lo, config.demand.hi));
        }
    }
    for (auto& mach : inst.machines) {
        mach.demand.assign(s, 0);
        if (s > 0 && rng.bernoulli(config.machine_demand_probability)) mach.demand[rng.index(s)] = 1;
    }

    Generated out;
    out.reference = build_reference_solution(inst, rng);
    inst.horizon = std::max<Time>(
        {1, out.reference.makespan,
         static_cast<Time>(std::ceil(config.horizon_factor * static_cast<double>(out.reference.makespan)))});

    auto dates = derive_dates_and_downtimes(out.reference, config, k, inst.horizon, rng);
    for (std::size_t m = 0; m < k; ++m) inst.machines[m].downtimes = std::move(dates.downtimes[m]);
    for (std::size_t r = 0; r < s; ++r) inst.resources[r].capacity = derive_resource_calendar(out.reference, r, inst.horizon);

    auto preds = sample_precedence_chains(out.reference, config.chains, config.lag_mode, rng);
    for (std::size_t j = 0; j < n; ++j) {
        inst.jobs[j].preds = std::move(preds[j]);
        inst.jobs[j].due = dates.due[j];
        inst.jobs[j].release = dates.release[j];
    }
    out.instance = std::move(inst);
    return out;
}

}  // namespace pmsp
