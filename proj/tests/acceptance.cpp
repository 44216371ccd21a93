#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "pmsp/anneal/anneal.hpp"
#include "pmsp/construct/construct.hpp"
#include "pmsp/core/fixtures.hpp"
#include "pmsp/core/json_io.hpp"
#include "pmsp/core/validate.hpp"
#include "pmsp/decoder/decoder.hpp"
#include "pmsp/decoder/feasibility.hpp"
#include "pmsp/exact/model_export.hpp"
#include "pmsp/exact/oracle.hpp"
#include "pmsp/gen/generator.hpp"
#include "support.hpp"

using namespace pmsp;
using Clock = std::chrono::steady_clock;

namespace {

struct Verdict {
    bool pass = false;
    std::string detail;
};

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

Instance generated(const std::string& name, std::uint64_t seed) {
    auto cfg = *preset(name);
    cfg.seed = seed;
    return generate(cfg).instance;
}

// Tiny instances with V <= 40, shared by the first two criteria.
struct TinyCase {
    std::uint64_t seed = 0;
    Instance instance;
    OracleResult exhaustive;
    OracleResult enumerated;
};

std::vector<TinyCase>& tiny_cases() {
    static std::vector<TinyCase> cases;
    return cases;
}

constexpr std::size_t kTinyCount = 60;

Verdict oracle_agreement() {
    auto& cases = tiny_cases();
    cases.clear();
    const auto t0 = Clock::now();
    int disagree = 0, feasible = 0, capped = 0;
    for (std::uint64_t seed = 0; cases.size() < kTinyCount; ++seed) {
        auto inst = generated("tiny", seed);
        if (inst.horizon > 40) continue;
        TinyCase c{seed, inst, exhaustive_time_indexed(inst), enumerate_representations(inst)};
        if (c.exhaustive.status == OracleStatus::budget_exceeded || c.enumerated.status == OracleStatus::budget_exceeded) {
            ++capped;
        } else if (c.exhaustive.status != c.enumerated.status) {
            ++disagree;
        } else if (c.exhaustive.status == OracleStatus::optimal) {
            ++feasible;
            if (c.exhaustive.cost.aggregate != c.enumerated.cost.aggregate) ++disagree;
        }
        cases.push_back(std::move(c));
    }
    const double secs = seconds_since(t0);
    std::ostringstream os;
    os << cases.size() << " instances, " << feasible << " feasible, " << disagree << " disagreements, " << capped
       << " over budget, " << secs << " s";
    return {disagree == 0 && capped == 0 && secs < 600.0, os.str()};
}

Verdict sa_optimality_rate() {
    if (tiny_cases().empty()) oracle_agreement();
    int total = 0, matched = 0, below = 0;
    for (const auto& c : tiny_cases()) {
        if (c.exhaustive.status != OracleStatus::optimal) continue;
        SAParams p;
        p.time_limit = std::chrono::duration<double>(5.0);
        p.runs = 12;
        p.seed = c.seed;
        const auto r = solve(c.instance, p);
        ++total;
        if (r.cost.aggregate == c.exhaustive.cost.aggregate) ++matched;
        if (r.cost.aggregate < c.exhaustive.cost.aggregate) ++below;
    }
    const double rate = total ? static_cast<double>(matched) / total : 0.0;
    std::ostringstream os;
    os << matched << "/" << total << " optimal (" << rate * 100.0 << "%)";
    if (below) os << ", " << below << " below the oracle";
    return {total > 0 && below == 0 && rate >= 0.85, os.str()};
}

Verdict decoder_validator() {
    Rng rng(20240601);
    const auto names = grid_preset_names();
    int feasible = 0, flagged = 0, failures = 0;
    int done = 0;
    for (std::uint64_t seed = 0; done < 10000; ++seed) {
        auto cfg = *preset(names[seed % names.size()]);
        cfg.seed = seed;
        const auto g = generate(cfg);
        const auto& inst = g.instance;
        // half uniform draws, half a walk from the reference order that only
        // keeps steps decoding without violations
        auto walk = g.reference.repr;
        for (int i = 0; i < 50 && done < 10000; ++i, ++done) {
            SolutionRepr repr;
            if (i % 2 == 0) {
                repr = testing::random_repr(inst, rng);
            } else {
                repr = walk;
                if (const auto m = sample_move(inst, walk, rng)) repr = apply_move(inst, walk, *m);
            }
            const auto d = decode(inst, repr);
            const auto report = check_feasibility(inst, d.schedule);
            if (d.cost.violations == 0) {
                if (i % 2 == 1) walk = repr;
                ++feasible;
                if (!report.empty()) ++failures;
                continue;
            }
            for (std::size_t j = 0; j < inst.job_count(); ++j) {
                if (d.schedule.jobs[j].violated == Violated::none) continue;
                ++flagged;
                if (!report.implicates(j)) ++failures;
            }
        }
    }
    std::ostringstream os;
    os << done << " reprs, " << feasible << " clean, " << flagged << " flagged jobs, " << failures << " mismatches";
    return {failures == 0, os.str()};
}

Verdict end_time_equation() {
    Rng rng(4242);
    int failures = 0, done = 0;
    while (done < 10000) {
        std::vector<Window> dts;
        Time cursor = rng.uniform_int(0, 4);
        const auto count = rng.uniform_int(0, 5);
        for (int i = 0; i < count; ++i) {
            const Time s = cursor + rng.uniform_int(0, 6);
            const Time e = s + rng.uniform_int(1, 6);
            dts.push_back({s, e});
            cursor = e;
        }
        const Time start = rng.uniform_int(0, cursor + 3);
        if (downtime_at(dts, start)) continue;
        ++done;
        const Time setup = rng.uniform_int(0, 4);
        const Time proc = rng.uniform_int(0, 12);
        const auto got = compute_end(start, setup, proc, dts);
        Time paused = 0;
        for (const auto& w : got.spanned) paused += w.length();
        bool ok = got.end - start == setup + proc + paused;
        for (const auto& w : dts) {
            const bool listed = std::find(got.spanned.begin(), got.spanned.end(), w) != got.spanned.end();
            ok = ok && listed == (start < w.start && got.end > w.end);
        }
        if (const auto want = testing::end_by_scan(start, setup + proc, dts, cursor + 100)) ok = ok && got.end == *want;
        if (!ok) ++failures;
    }
    std::ostringstream os;
    os << done << " tuples, " << failures << " failures";
    return {failures == 0, os.str()};
}

Verdict generator_certificate() {
    const auto names = grid_preset_names();
    int total = 0, valid = 0, deterministic = 0;
    for (std::uint64_t seed = 0; total < 200; ++seed) {
        for (const auto& name : names) {
            if (total == 200) break;
            auto cfg = *preset(name);
            cfg.seed = seed;
            const auto a = generate(cfg);
            const auto b = generate(cfg);
            ++total;
            if (validate_instance(a.instance).empty() && check_feasibility(a.instance, a.reference.schedule).empty()) {
                ++valid;
            }
            if (instance_to_json(a.instance).dump() == instance_to_json(b.instance).dump() &&
                a.reference.schedule == b.reference.schedule) {
                ++deterministic;
            }
        }
    }
    std::ostringstream os;
    os << total << " instances, " << valid << " certified, " << deterministic << " byte-identical";
    return {valid == total && deterministic == total, os.str()};
}

Verdict ca_vs_sa() {
    std::vector<double> ca, sa;
    int not_worse = 0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto inst = generated("large", seed);
        const auto c = construct(inst);
        SAParams p;
        p.time_limit = std::chrono::duration<double>(300.0);
        p.runs = 12;
        p.seed = seed;
        const auto r = solve(inst, p, c.repr);
        ca.push_back(c.cost.aggregate);
        sa.push_back(r.cost.aggregate);
        if (r.cost.aggregate <= c.cost.aggregate) ++not_worse;
        std::cerr << "  large seed " << seed << ": CA " << c.cost.aggregate << " SA " << r.cost.aggregate << "\n";
    }
    auto median = [](std::vector<double> v) {
        std::sort(v.begin(), v.end());
        const auto h = v.size() / 2;
        return v.size() % 2 ? v[h] : (v[h - 1] + v[h]) / 2.0;
    };
    const double mca = median(ca), msa = median(sa);
    std::ostringstream os;
    os << not_worse << "/10 SA <= CA, median CA " << mca << " SA " << msa;
    return {not_worse == 10 && msa < mca, os.str()};
}

Verdict construction_scale() {
    const auto inst = generated("plant", 0);
    const auto t0 = Clock::now();
    const auto c = construct(inst);
    const double secs = seconds_since(t0);
    const auto report = check_feasibility(inst, c.schedule);
    const auto prec = report.count(ConstraintFamily::precedence_lag);
    const auto elig = report.count(ConstraintFamily::eligibility);
    std::ostringstream os;
    os << inst.job_count() << " jobs on " << inst.machine_count() << " machines, " << inst.resource_count()
       << " resources, " << secs << " s, " << prec << " precedence and " << elig << " eligibility violations";
    return {secs < 60.0 && prec == 0 && elig == 0 && inst.job_count() == 700 && inst.machine_count() == 60 &&
                inst.resource_count() == 80,
            os.str()};
}

Verdict cooling_contract() {
    const auto inst = generated("n10-c1-k2-s5", 2);
    double worst = 0.0;
    for (std::uint64_t budget : {1ull, 10ull, 1000ull, 20000ull}) {
        SAParams p;
        p.iteration_budget = budget;
        p.runs = 1;
        const auto r = solve(inst, p);
        worst = std::max(worst, std::abs(r.chains[0].final_temperature - p.t_min) / p.t_min);
    }
    Rng rng(99);
    int hits = 0;
    const int trials = 100000;
    for (int i = 0; i < trials; ++i) hits += accept(3.0, 3.0, rng) ? 1 : 0;
    const double freq = static_cast<double>(hits) / trials;
    std::ostringstream os;
    os << "final temperature rel. error " << worst << ", acceptance " << freq;
    return {worst <= 1e-9 && std::abs(freq - std::exp(-1.0)) <= 0.01, os.str()};
}

Verdict fig1_replication(const std::string& fixture_dir) {
    const auto inst = instance_from_json(read_json_file(fixture_dir + "/fig1.json"));
    const auto d = decode(inst, fixtures::fig1_repr());
    const auto& j1 = d.schedule.jobs[0];
    const auto& j5 = d.schedule.jobs[4];
    const auto& j6 = d.schedule.jobs[5];
    const Window pause{6, 8};
    const bool spans = j5.start < pause.start && j5.end > pause.end &&
                       j5.end - j5.start == j5.setup + inst.jobs[4].proc[j5.machine] + pause.length();
    const bool after = j5.start >= j1.end + 1;
    const bool overlap = j6.start < pause.end && j6.end > pause.start;
    const bool valid = d.cost.violations == 0 && check_feasibility(inst, d.schedule).empty();
    std::ostringstream os;
    os << "J5 [" << j5.start << "," << j5.end << ") on M" << j5.machine + 1 << ", J6 [" << j6.start << "," << j6.end
       << "), aggregate " << d.cost.aggregate;
    return {spans && after && overlap && valid, os.str()};
}

std::size_t count_of(const std::string& text, const std::string& needle) {
    std::size_t n = 0;
    for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
    return n;
}

Verdict model_export() {
    const auto inst = fixtures::fig1();
    const auto a = constraint_model_text(inst);
    const auto b = constraint_model_text(inst);
    const auto groups = count_of(a.model, "constraint cumulative(");
    const auto nph = build_placeholder_jobs(inst).size();
    const bool declared = a.data.find("nph = " + std::to_string(nph) + ";") != std::string::npos;
    std::ostringstream os;
    os << groups << " cumulative groups for " << inst.resource_count() << " resources, " << nph << " placeholders";
    return {groups == inst.resource_count() && declared && nph > 0 && a.model == b.model && a.data == b.data,
            os.str()};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"acceptance checks"};
    std::vector<int> only;
    std::string fixture_dir = PMSP_FIXTURE_DIR;
    app.add_option("--only", only, "criteria to run (default all)")->check(CLI::Range(1, 10));
    app.add_option("--fixtures", fixture_dir, "fixture directory");
    CLI11_PARSE(app, argc, argv);

    const std::vector<std::function<Verdict()>> criteria{
        oracle_agreement,    sa_optimality_rate, decoder_validator,
        end_time_equation,   generator_certificate, ca_vs_sa,
        construction_scale,  cooling_contract,   [&] { return fig1_replication(fixture_dir); },
        model_export};

    int failed = 0;
    for (int i = 1; i <= 10; ++i) {
        if (!only.empty() && std::find(only.begin(), only.end(), i) == only.end()) continue;
        Verdict v;
        try {
            v = criteria[static_cast<std::size_t>(i - 1)]();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        std::cout << "CRITERION " << i << " " << (v.pass ? "PASS" : "FAIL") << ": " << v.detail << std::endl;
        failed += v.pass ? 0 : 1;
    }
    return failed == 0 ? 0 : 1;
}
