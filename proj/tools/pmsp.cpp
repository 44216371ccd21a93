// pmsp: command-line front end for generating, solving, checking and charting
// parallel machine scheduling instances.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "pmsp/anneal/anneal.hpp"
#include "pmsp/cli/report.hpp"
#include "pmsp/construct/construct.hpp"
#include "pmsp/core/json_io.hpp"
#include "pmsp/core/validate.hpp"
#include "pmsp/decoder/decoder.hpp"
#include "pmsp/decoder/feasibility.hpp"
#include "pmsp/exact/model_export.hpp"
#include "pmsp/exact/oracle.hpp"
#include "pmsp/gen/generator.hpp"

using namespace pmsp;
using nlohmann::json;

namespace {

struct Failure {
    ExitCode code;
    std::string category;
    std::string message;
    json details = json::object();
};

std::string stem_of(const std::string& path) { return std::filesystem::path(path).stem().string(); }

Weights parse_weights(const std::string& text) {
    std::vector<double> w;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t pos = 0;
            w.push_back(std::stod(item, &pos));
            if (pos != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw Failure{ExitCode::invalid_input, "bad-flag", "weights must be three numbers w1,w2,w3"};
        }
    }
    if (w.size() != 3 || w[0] < 0 || w[1] < 0 || w[2] < 0) {
        throw Failure{ExitCode::invalid_input, "bad-flag", "weights must be three non-negative numbers w1,w2,w3"};
    }
    return {w[0], w[1], w[2]};
}

Instance load_instance(const std::string& path, const std::string& weights) {
    auto inst = instance_from_json(read_json_file(path));
    if (!weights.empty()) inst.weights = parse_weights(weights);
    if (auto defects = validate_instance(inst); !defects.empty()) {
        json list = json::array();
        for (const auto& d : defects) list.push_back({{"invariant", d.invariant}, {"entity", d.entity}, {"detail", d.detail}});
        throw Failure{ExitCode::invalid_input, "invalid-instance", path + " has defects", {{"defects", list}}};
    }
    return inst;
}

void emit(const json& doc, const std::string& path) {
    if (path.empty()) {
        std::cout << doc.dump(2) << '\n';
    } else {
        write_json_file(path, doc);
    }
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
    if (!out) throw std::runtime_error("write failed for " + path);
}

struct SAFlags {
    double time_limit = 300.0;
    std::size_t runs = 12;
    std::uint64_t seed = 0;
    double t_init = 600.0;
    double t_min = 0.001;
    std::uint64_t iteration_budget = 0;

    void attach(CLI::App* cmd) {
        cmd->add_option("--time-limit", time_limit, "Seconds per chain")->check(CLI::PositiveNumber);
        cmd->add_option("--runs", runs, "Independent chains")->check(CLI::PositiveNumber);
        cmd->add_option("--seed", seed, "Seed of the first chain");
        cmd->add_option("--t-init", t_init, "Initial temperature");
        cmd->add_option("--t-min", t_min, "Final temperature");
        cmd->add_option("--iteration-budget", iteration_budget,
                        "Iterations per chain instead of the time limit (reproducible runs)");
    }

    SAParams params() const {
        SAParams p;
        p.time_limit = std::chrono::duration<double>(time_limit);
        p.runs = runs;
        p.seed = seed;
        p.t_init = t_init;
        p.t_min = t_min;
        if (iteration_budget > 0) p.iteration_budget = iteration_budget;
        return p;
    }
};

double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

GenConfig config_for(const std::string& name) {
    auto cfg = preset(name);
    if (!cfg) {
        std::string known;
        for (const auto& p : preset_names()) known += (known.empty() ? "" : ", ") + p;
        throw Failure{ExitCode::invalid_input, "bad-flag", "unknown preset '" + name + "' (known: " + known + ")"};
    }
    return *cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Parallel machine scheduling with precedences and resource calendars"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string weights;
    app.add_option("--weights", weights, "Objective weights w1,w2,w3 (tardiness, makespan, setup)");

    // generate
    auto* gen = app.add_subcommand("generate", "Generate a random instance with a reference schedule");
    std::string gen_preset = "n10-c1-k2-s5", gen_out, gen_ref;
    std::uint64_t gen_seed = 0;
    std::size_t gen_jobs = 0, gen_machines = 0, gen_resources = 0, gen_chains = 0;
    gen->add_option("--preset", gen_preset, "Named configuration");
    gen->add_option("--seed", gen_seed, "Generator seed");
    gen->add_option("--jobs", gen_jobs, "Override the number of jobs");
    gen->add_option("--machines", gen_machines, "Override the number of machines");
    gen->add_option("--resources", gen_resources, "Override the number of resources");
    auto* gen_chains_opt = gen->add_option("--chains", gen_chains, "Override the number of precedence chains");
    gen->add_option("-o,--out", gen_out, "Instance JSON")->required();
    gen->add_option("--reference", gen_ref, "Write the reference schedule JSON here");

    // construct
    auto* con = app.add_subcommand("construct", "Run the construction heuristic");
    std::string con_in, con_out;
    con->add_option("instance", con_in)->required();
    con->add_option("-o,--out", con_out, "Schedule JSON (stdout if omitted)");

    // solve
    auto* sol = app.add_subcommand("solve", "Simulated annealing from the constructed schedule");
    std::string sol_in, sol_out, sol_stats;
    SAFlags sol_flags;
    sol->add_option("instance", sol_in)->required();
    sol->add_option("-o,--out", sol_out, "Schedule JSON (stdout if omitted)");
    sol->add_option("--stats", sol_stats, "Run-stats JSON");
    sol_flags.attach(sol);

    // validate
    auto* val = app.add_subcommand("validate", "Check a schedule against every constraint");
    std::string val_in, val_sched;
    val->add_option("instance", val_in)->required();
    val->add_option("schedule", val_sched)->required();

    // oracle
    auto* orc = app.add_subcommand("oracle", "Solve a small instance to optimality");
    std::string orc_in, orc_out, orc_method = "exhaustive";
    OracleLimits orc_limits;
    orc->add_option("instance", orc_in)->required();
    orc->add_option("--method", orc_method, "exhaustive or enumerate")->check(CLI::IsMember({"exhaustive", "enumerate"}));
    orc->add_option("--node-cap", orc_limits.node_cap, "Search node limit");
    orc->add_option("--max-jobs", orc_limits.max_jobs, "Refuse larger instances");
    orc->add_option("--max-horizon", orc_limits.max_horizon, "Refuse longer horizons");
    orc->add_option("-o,--out", orc_out, "Optimal schedule JSON");

    // export-model
    auto* exp = app.add_subcommand("export-model", "Write the MiniZinc model and data files");
    std::string exp_in, exp_stem;
    exp->add_option("instance", exp_in)->required();
    exp->add_option("--out", exp_stem, "Output stem; writes <stem>.mzn and <stem>.dzn");

    // gantt
    auto* gan = app.add_subcommand("gantt", "Render a schedule as SVG");
    std::string gan_in, gan_sched, gan_out;
    gan->add_option("instance", gan_in)->required();
    gan->add_option("schedule", gan_sched)->required();
    gan->add_option("-o,--out", gan_out, "SVG file")->required();

    // bench
    auto* ben = app.add_subcommand("bench", "Compare construction and annealing over instances");
    std::vector<std::string> ben_files;
    std::string ben_preset = "large", ben_csv, ben_summary;
    std::size_t ben_count = 10;
    std::uint64_t ben_instance_seed = 0;
    SAFlags ben_flags;
    ben->add_option("instances", ben_files, "Instance files; generated from --preset when omitted");
    ben->add_option("--preset", ben_preset, "Named configuration for generated instances");
    ben->add_option("--count", ben_count, "Number of generated instances");
    ben->add_option("--instance-seed", ben_instance_seed, "Seed of the first generated instance");
    ben->add_option("--csv", ben_csv, "Records CSV (stdout if omitted)");
    ben->add_option("--summary", ben_summary, "Improvement summary JSON (stdout if omitted)");
    ben_flags.attach(ben);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << json{{"error", {{"category", "bad-flag"}, {"message", e.what()}}}}.dump() << '\n';
        return static_cast<int>(ExitCode::invalid_input);
    }

    try {
        if (*gen) {
            auto cfg = config_for(gen_preset);
            cfg.seed = gen_seed;
            if (gen_jobs) cfg.jobs = gen_jobs;
            if (gen_machines) cfg.machines = gen_machines;
            if (gen_resources) cfg.resources = gen_resources;
            if (gen_chains_opt->count() > 0) cfg.chains = gen_chains;
            if (!weights.empty()) cfg.weights = parse_weights(weights);
            const auto g = generate(cfg);
            write_json_file(gen_out, instance_to_json(g.instance));
            if (!gen_ref.empty()) {
                write_json_file(gen_ref, schedule_to_json(g.reference.schedule, evaluate(g.instance, g.reference.schedule),
                                                          stem_of(gen_out)));
            }
        } else if (*con) {
            const auto inst = load_instance(con_in, weights);
            const auto c = construct(inst);
            emit(schedule_to_json(c.schedule, c.cost, stem_of(con_in)), con_out);
        } else if (*sol) {
            const auto inst = load_instance(sol_in, weights);
            const auto r = solve(inst, sol_flags.params());
            emit(schedule_to_json(r.schedule, r.cost, stem_of(sol_in)), sol_out);
            if (!sol_stats.empty()) write_json_file(sol_stats, run_stats_to_json(r));
        } else if (*val) {
            const auto inst = load_instance(val_in, weights);
            const auto sched = schedule_from_json(inst, read_json_file(val_sched));
            const auto report = check_feasibility(inst, sched);
            std::cout << report_to_json(report).dump(2) << '\n';
            return static_cast<int>(report.empty() ? ExitCode::ok : ExitCode::violations);
        } else if (*orc) {
            const auto inst = load_instance(orc_in, weights);
            const auto r = orc_method == "exhaustive" ? exhaustive_time_indexed(inst, orc_limits)
                                                      : enumerate_representations(inst, orc_limits);
            json verdict = {{"status", std::string(to_string(r.status))}, {"method", orc_method}, {"nodes", r.nodes}};
            if (r.status == OracleStatus::optimal) {
                verdict["cost"] = cost_to_json(r.cost);
                if (!orc_out.empty()) write_json_file(orc_out, schedule_to_json(r.schedule, r.cost, stem_of(orc_in)));
            }
            std::cout << verdict.dump(2) << '\n';
            if (r.status == OracleStatus::unsat) return static_cast<int>(ExitCode::unsat);
            if (r.status == OracleStatus::budget_exceeded) return static_cast<int>(ExitCode::budget_exceeded);
        } else if (*exp) {
            const auto inst = load_instance(exp_in, weights);
            if (exp_stem.empty()) exp_stem = (std::filesystem::path(exp_in).parent_path() / stem_of(exp_in)).string();
            const auto art = export_constraint_model(inst, exp_stem);
            std::cout << json{{"model", exp_stem + ".mzn"},
                              {"data", exp_stem + ".dzn"},
                              {"periods", art.periods.size()},
                              {"placeholders", art.placeholders.size()},
                              {"cumulative_groups", art.cumulative_groups}}
                             .dump(2)
                      << '\n';
        } else if (*gan) {
            const auto inst = load_instance(gan_in, weights);
            const auto sched = schedule_from_json(inst, read_json_file(gan_sched));
            write_text(gan_out, render_gantt_svg(inst, sched));
        } else if (*ben) {
            std::vector<std::pair<std::string, Instance>> instances;
            if (ben_files.empty()) {
                auto cfg = config_for(ben_preset);
                if (!weights.empty()) cfg.weights = parse_weights(weights);
                for (std::size_t i = 0; i < ben_count; ++i) {
                    cfg.seed = ben_instance_seed + i;
                    instances.emplace_back(ben_preset + "-" + std::to_string(cfg.seed), generate(cfg).instance);
                }
            } else {
                for (const auto& f : ben_files) instances.emplace_back(stem_of(f), load_instance(f, weights));
            }
            std::vector<BenchRecord> records;
            std::ostringstream csv;
            csv << bench_csv_header();
            for (const auto& [id, inst] : instances) {
                auto t0 = std::chrono::steady_clock::now();
                const auto c = construct(inst);
                records.push_back(make_record(inst, id, "CA", c.schedule, c.cost, ms_since(t0), 0));
                csv << bench_csv_row(records.back());
                t0 = std::chrono::steady_clock::now();
                const auto s = solve(inst, ben_flags.params(), c.repr);
                records.push_back(make_record(inst, id, "SA", s.schedule, s.cost, ms_since(t0), ben_flags.seed));
                csv << bench_csv_row(records.back());
            }
            if (ben_csv.empty()) {
                std::cout << csv.str();
            } else {
                write_text(ben_csv, csv.str());
            }
            emit(improvement_summary(records), ben_summary);
        }
    } catch (const Failure& f) {
        json err = {{"category", f.category}, {"message", f.message}};
        if (!f.details.empty()) err.update(f.details);
        std::cerr << json{{"error", err}}.dump() << '\n';
        return static_cast<int>(f.code);
    } catch (const FormatError& e) {
        std::cerr << json{{"error", {{"category", "malformed-input"}, {"message", e.what()}}}}.dump() << '\n';
        return static_cast<int>(ExitCode::invalid_input);
    } catch (const GenerationError& e) {
        std::cerr << json{{"error", {{"category", "bad-config"}, {"message", e.what()}}}}.dump() << '\n';
        return static_cast<int>(ExitCode::invalid_input);
    } catch (const std::invalid_argument& e) {
        std::cerr << json{{"error", {{"category", "invalid-input"}, {"message", e.what()}}}}.dump() << '\n';
        return static_cast<int>(ExitCode::invalid_input);
    } catch (const json::exception& e) {
        std::cerr << json{{"error", {{"category", "malformed-input"}, {"message", e.what()}}}}.dump() << '\n';
        return static_cast<int>(ExitCode::invalid_input);
    } catch (const std::exception& e) {
        std::cerr << json{{"error", {{"category", "io"}, {"message", e.what()}}}}.dump() << '\n';
        return static_cast<int>(ExitCode::io_error);
    }
    return static_cast<int>(ExitCode::ok);
}
