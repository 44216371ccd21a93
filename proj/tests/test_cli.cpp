#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "doctest.h"
#include "pmsp/cli/report.hpp"
#include "pmsp/core/fixtures.hpp"
#include "pmsp/core/json_io.hpp"
#include "pmsp/decoder/decoder.hpp"

using namespace pmsp;
namespace fs = std::filesystem;

namespace {

const fs::path kFixtures = PMSP_FIXTURE_DIR;

struct Scratch {
    fs::path dir;
    Scratch() {
        dir = fs::temp_directory_path() / ("pmsp_cli_" + std::to_string(::getpid()));
        fs::create_directories(dir);
    }
    ~Scratch() { fs::remove_all(dir); }
    std::string operator/(const std::string& name) const { return (dir / name).string(); }
};

int run(const std::string& args, const std::string& out = "/dev/null") {
    const std::string cmd = std::string(PMSP_CLI) + " " + args + " >" + out + " 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("shipped figure fixture matches the built-in one") {
    CHECK(instance_from_json(read_json_file(kFixtures / "fig1.json")) == fixtures::fig1());
    const auto inst = fixtures::fig1();
    const auto sched = schedule_from_json(inst, read_json_file(kFixtures / "fig1_schedule.json"));
    CHECK(sched == decode(inst, fixtures::fig1_repr()).schedule);
}

TEST_CASE("validate the figure schedule") {
    CHECK(run("validate " + (kFixtures / "fig1.json").string() + " " + (kFixtures / "fig1_schedule.json").string()) == 0);
}

TEST_CASE("validate reports violations") {
    Scratch tmp;
    auto doc = read_json_file(kFixtures / "fig1_schedule.json");
    doc["jobs"][4]["start"] = 4;
    write_json_file(tmp / "bad.json", doc);
    CHECK(run("validate " + (kFixtures / "fig1.json").string() + " " + (tmp / "bad.json"), tmp / "report.json") == 1);
    const auto report = nlohmann::json::parse(slurp(tmp / "report.json"));
    CHECK(report["feasible"] == false);
    CHECK(!report["violations"].empty());
}

TEST_CASE("exit codes by outcome") {
    Scratch tmp;
    CHECK(run("validate " + (tmp / "missing.json") + " " + (tmp / "missing2.json")) == 4);
    {
        std::ofstream(tmp / "garbage.json") << "{ not json";
    }
    CHECK(run("construct " + (tmp / "garbage.json"), tmp / "err.json") == 2);
    const auto err = nlohmann::json::parse(slurp(tmp / "err.json"));
    CHECK(err.contains("error"));
    CHECK(run("solve") == 2);
    CHECK(run("generate --preset nope -o " + (tmp / "x.json")) == 2);

    auto cyclic = read_json_file(kFixtures / "fig1.json");
    cyclic["jobs"][0]["preds"] = nlohmann::json::array({nlohmann::json::array({3, 0})});
    write_json_file(tmp / "cyclic.json", cyclic);
    CHECK(run("construct " + (tmp / "cyclic.json"), tmp / "err2.json") == 2);
    CHECK(slurp(tmp / "err2.json").find("precedence-cycle") != std::string::npos);

    CHECK(run("oracle " + (kFixtures / "fig1.json").string() + " --node-cap 5") == 3);

    Instance unsat = fixtures::single_job();
    unsat.machines[0].demand = {0};
    unsat.resources.resize(1);
    unsat.resources[0].capacity = {{0, 10, 0}};
    unsat.jobs[0].demand = {1};
    write_json_file(tmp / "unsat.json", instance_to_json(unsat));
    CHECK(run("oracle " + (tmp / "unsat.json")) == 5);
}

TEST_CASE("generate, construct, solve and validate") {
    Scratch tmp;
    REQUIRE(run("generate --preset n10-c1-k2-s5 --seed 3 -o " + (tmp / "i.json") + " --reference " + (tmp / "r.json")) == 0);
    CHECK(run("validate " + (tmp / "i.json") + " " + (tmp / "r.json")) == 0);
    REQUIRE(run("construct " + (tmp / "i.json") + " -o " + (tmp / "ca.json")) == 0);
    REQUIRE(run("solve " + (tmp / "i.json") + " --iteration-budget 300 --runs 2 --seed 5 -o " + (tmp / "sa.json") +
                " --stats " + (tmp / "stats.json")) == 0);
    const auto ca = read_json_file(tmp / "ca.json");
    const auto sa = read_json_file(tmp / "sa.json");
    CHECK(sa["cost"]["aggregate"].get<double>() <= ca["cost"]["aggregate"].get<double>());
    const auto stats = read_json_file(tmp / "stats.json");
    CHECK(stats["chains"].size() == 2);
    CHECK(stats["chains"][0]["iterations"] == 300);
    if (sa["cost"]["violations"] == 0) CHECK(run("validate " + (tmp / "i.json") + " " + (tmp / "sa.json")) == 0);

    // same seed, same bytes
    REQUIRE(run("generate --preset n10-c1-k2-s5 --seed 3 -o " + (tmp / "i2.json")) == 0);
    CHECK(slurp(tmp / "i.json") == slurp(tmp / "i2.json"));
}

TEST_CASE("weights flag overrides the instance") {
    Scratch tmp;
    REQUIRE(run("--weights 0,2,0 construct " + (kFixtures / "fig1.json").string() + " -o " + (tmp / "s.json")) == 0);
    CHECK(read_json_file(tmp / "s.json")["cost"]["aggregate"].get<double>() ==
          2.0 * read_json_file(tmp / "s.json")["cost"]["C"].get<double>());
    CHECK(run("--weights 1,x,1 construct " + (kFixtures / "fig1.json").string()) == 2);
}

TEST_CASE("export and oracle commands") {
    Scratch tmp;
    CHECK(run("export-model " + (kFixtures / "fig1.json").string() + " --out " + (tmp / "m")) == 0);
    CHECK(fs::exists(tmp / "m.mzn"));
    CHECK(fs::exists(tmp / "m.dzn"));
    CHECK(run("oracle " + (kFixtures / "fig1.json").string() + " -o " + (tmp / "opt.json"), tmp / "v.json") == 0);
    const auto verdict = nlohmann::json::parse(slurp(tmp / "v.json"));
    CHECK(verdict["status"] == "optimal");
    CHECK(run("validate " + (kFixtures / "fig1.json").string() + " " + (tmp / "opt.json")) == 0);
}

TEST_CASE("gantt chart of the figure") {
    const auto inst = fixtures::fig1();
    const auto svg = render_gantt_svg(inst, decode(inst, fixtures::fig1_repr()).schedule);
    std::size_t downtimes = 0;
    for (auto pos = svg.find("class=\"downtime\""); pos != std::string::npos; pos = svg.find("class=\"downtime\"", pos + 1)) {
        ++downtimes;
    }
    CHECK(downtimes == 1);
    CHECK(svg.find("class=\"downtime\" data-machine=\"2\" data-start=\"6\" data-end=\"8\"") != std::string::npos);
    CHECK(svg.find("fill=\"url(#hatch)\"") != std::string::npos);
    CHECK(svg.find("class=\"setup\"") != std::string::npos);
    CHECK(svg.find("class=\"capacity\" data-resource=\"2\"") != std::string::npos);
    CHECK(svg.find("class=\"usage\" data-resource=\"1\"") != std::string::npos);
    CHECK(svg.rfind("</svg>") != std::string::npos);

    Scratch tmp;
    CHECK(run("gantt " + (kFixtures / "fig1.json").string() + " " + (kFixtures / "fig1_schedule.json").string() +
              " -o " + (tmp / "g.svg")) == 0);
    CHECK(slurp(tmp / "g.svg") == svg);
}

TEST_CASE("bench records and summary") {
    BenchRecord ca{"a", "CA", 10, 4, 2, 0, 16.0, 1, 1.0, 0};
    BenchRecord sa{"a", "SA", 8, 0, 2, 0, 10.0, 0, 5.0, 0};
    BenchRecord ca2{"b", "CA", 10, 0, 0, 0, 10.0, 0, 1.0, 0};
    BenchRecord sa2{"b", "SA", 10, 0, 0, 0, 10.0, 0, 5.0, 0};
    const auto s = improvement_summary({ca, sa, ca2, sa2});
    CHECK(s["instances"] == 2);
    CHECK(s["sa_not_worse"] == 2);
    CHECK(s["improvement"]["C"].get<double>() == doctest::Approx((0.2 + 0.0) / 2));
    CHECK(s["improvement"]["T"].get<double>() == doctest::Approx((1.0 + 0.0) / 2));
    CHECK(s["improvement"]["S"].get<double>() == doctest::Approx(0.0));
    CHECK(s["improvement"]["aggregate"].get<double>() == doctest::Approx((1.0 - 10.0 / 16.0) / 2));

    const auto header = bench_csv_header();
    CHECK(header.rfind("# pmsp-bench v1\n", 0) == 0);
    CHECK(header.find("instance,method,C,T,S,violations,aggregate,tardy_jobs,wall_ms,seed") != std::string::npos);
    CHECK(bench_csv_row(ca) == "a,CA,10,4,2,0,16,1,1.000,0\n");
}

TEST_CASE("bench command over generated instances") {
    Scratch tmp;
    REQUIRE(run("bench --preset n10-c1-k2-s5 --count 10 --iteration-budget 200 --runs 2 --csv " + (tmp / "b.csv") +
                " --summary " + (tmp / "s.json")) == 0);
    std::ifstream in(tmp / "b.csv");
    std::string line;
    int rows = 0;
    while (std::getline(in, line)) {
        if (!line.empty() && line[0] != '#' && line.rfind("instance,", 0) != 0) ++rows;
    }
    CHECK(rows == 20);
    const auto summary = read_json_file(tmp / "s.json");
    CHECK(summary["instances"] == 10);
    CHECK(summary["sa_not_worse"] == 10);
    CHECK(summary["improvement"]["aggregate"].get<double>() >= 0.0);
}
