#include "pmsp/cli/report.hpp"

#include <algorithm>
#include <iomanip>
#include <map>
#include <sstream>

namespace pmsp {

BenchRecord make_record(const Instance& instance, const std::string& id, const std::string& method,
                        const Schedule& schedule, const CostBreakdown& cost, double wall_ms, std::uint64_t seed) {
    BenchRecord r;
    r.instance = id;
    r.method = method;
    r.makespan = cost.makespan;
    r.tardiness = cost.tardiness;
    r.setup = cost.setup_total;
    r.violations = cost.violations;
    r.aggregate = cost.aggregate;
    for (std::size_t j = 0; j < schedule.jobs.size(); ++j) {
        if (schedule.jobs[j].end > instance.jobs[j].due) ++r.tardy_jobs;
    }
    r.wall_ms = wall_ms;
    r.seed = seed;
    return r;
}

std::string bench_csv_header() {
    return "# pmsp-bench v" + std::to_string(kBenchCsvVersion) +
           "\ninstance,method,C,T,S,violations,aggregate,tardy_jobs,wall_ms,seed\n";
}

std::string bench_csv_row(const BenchRecord& r) {
    std::ostringstream os;
    os << r.instance << ',' << r.method << ',' << r.makespan << ',' << r.tardiness << ',' << r.setup << ','
       << r.violations << ',' << std::setprecision(17) << r.aggregate << ',' << r.tardy_jobs << ','
       << std::fixed << std::setprecision(3) << r.wall_ms << ',' << r.seed << '\n';
    return os.str();
}

nlohmann::json improvement_summary(const std::vector<BenchRecord>& records) {
    std::map<std::string, const BenchRecord*> ca, sa;
    for (const auto& r : records) {
        if (r.method == "CA") ca[r.instance] = &r;
        if (r.method == "SA") sa[r.instance] = &r;
    }
    auto ratio = [](double x_sa, double x_ca) { return x_ca == 0.0 ? 0.0 : 1.0 - x_sa / x_ca; };
    double c = 0, t = 0, s = 0, agg = 0;
    std::size_t pairs = 0, not_worse = 0;
    for (const auto& [id, a] : ca) {
        auto it = sa.find(id);
        if (it == sa.end()) continue;
        const auto* b = it->second;
        ++pairs;
        c += ratio(static_cast<double>(b->makespan), static_cast<double>(a->makespan));
        t += ratio(static_cast<double>(b->tardiness), static_cast<double>(a->tardiness));
        s += ratio(static_cast<double>(b->setup), static_cast<double>(a->setup));
        agg += ratio(b->aggregate, a->aggregate);
        if (b->aggregate <= a->aggregate) ++not_worse;
    }
    const double d = pairs ? static_cast<double>(pairs) : 1.0;
    return {{"instances", pairs},
            {"sa_not_worse", not_worse},
            {"improvement",
             {{"C", c / d}, {"T", t / d}, {"S", s / d}, {"aggregate", agg / d}}}};
}

namespace {

constexpr double kLeft = 64.0;
constexpr double kTop = 28.0;
constexpr double kRowHeight = 26.0;
constexpr double kTrackHeight = 44.0;
constexpr double kGap = 10.0;
constexpr double kPlotWidth = 960.0;

std::string num(double v) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(2) << v;
    auto s = os.str();
    s.erase(s.find_last_not_of('0') + 1);
    if (s.back() == '.') s.pop_back();
    return s;
}

struct Segment {
    Time start;
    Time end;
    bool setup;
};

// Runs of machine time a job occupies, split where setup ends and around
// the downtimes it is paused across.
std::vector<Segment> work_segments(const Placement& p) {
    std::vector<Segment> out;
    Time done = 0;
    for (Time t = p.start; t < p.end; ++t) {
        bool paused = false;
        for (const auto& w : p.spanned) paused = paused || w.contains(t);
        if (paused) continue;
        const bool setup = done < p.setup;
        ++done;
        if (!out.empty() && out.back().end == t && out.back().setup == setup) {
            out.back().end = t + 1;
        } else {
            out.push_back({t, t + 1, setup});
        }
    }
    return out;
}

}  // namespace

std::string render_gantt_svg(const Instance& inst, const Schedule& schedule) {
    const auto k = inst.machine_count();
    const auto nr = inst.resource_count();
    Time span = std::max<Time>(inst.horizon, 1);
    for (const auto& p : schedule.jobs) span = std::max(span, p.end);
    const double scale = kPlotWidth / static_cast<double>(span);
    auto x = [&](Time t) { return num(kLeft + scale * static_cast<double>(t)); };
    auto w = [&](Time a, Time b) { return num(scale * static_cast<double>(b - a)); };

    const double machines_bottom = kTop + kRowHeight * static_cast<double>(k);
    const double height = machines_bottom + kGap + (kTrackHeight + kGap) * static_cast<double>(nr) + 8.0;

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(kLeft + kPlotWidth + 16) << "\" height=\""
       << num(height) << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
    os << "<defs><pattern id=\"hatch\" width=\"6\" height=\"6\" patternUnits=\"userSpaceOnUse\" "
          "patternTransform=\"rotate(45)\"><rect width=\"6\" height=\"6\" fill=\"#eeeeee\"/>"
          "<line x1=\"0\" y1=\"0\" x2=\"0\" y2=\"6\" stroke=\"#555555\" stroke-width=\"2\"/></pattern></defs>\n";

    // time axis
    const Time tick = std::max<Time>(1, span / 12);
    for (Time t = 0; t <= span; t += tick) {
        os << "<line class=\"tick\" x1=\"" << x(t) << "\" y1=\"" << num(kTop - 4) << "\" x2=\"" << x(t) << "\" y2=\""
           << num(machines_bottom) << "\" stroke=\"#dddddd\"/>";
        os << "<text x=\"" << x(t) << "\" y=\"" << num(kTop - 8) << "\" text-anchor=\"middle\">" << t << "</text>\n";
    }

    for (std::size_t m = 0; m < k; ++m) {
        const double y = kTop + kRowHeight * static_cast<double>(m);
        os << "<text x=\"8\" y=\"" << num(y + kRowHeight / 2 + 4) << "\">M" << m + 1 << "</text>\n";
        for (const auto& dw : inst.machines[m].downtimes) {
            os << "<rect class=\"downtime\" data-machine=\"" << m + 1 << "\" data-start=\"" << dw.start
               << "\" data-end=\"" << dw.end << "\" x=\"" << x(dw.start) << "\" y=\"" << num(y + 2) << "\" width=\""
               << w(dw.start, dw.end) << "\" height=\"" << num(kRowHeight - 4) << "\" fill=\"url(#hatch)\"/>\n";
        }
    }

    for (std::size_t j = 0; j < schedule.jobs.size(); ++j) {
        const auto& p = schedule.jobs[j];
        const double y = kTop + kRowHeight * static_cast<double>(p.machine);
        const auto hue = (j * 47) % 360;
        const char* stroke = p.violated == Violated::none ? "#333333" : "#d62728";
        bool labelled = false;
        for (const auto& seg : work_segments(p)) {
            os << "<rect class=\"" << (seg.setup ? "setup" : "job") << "\" data-job=\"" << j + 1 << "\" x=\""
               << x(seg.start) << "\" y=\"" << num(y + 4) << "\" width=\"" << w(seg.start, seg.end) << "\" height=\""
               << num(kRowHeight - 8) << "\" fill=\"";
            if (seg.setup) {
                os << "#bbbbbb";
            } else {
                os << "hsl(" << hue << ",55%,62%)";
            }
            os << "\" stroke=\"" << stroke << "\"/>\n";
            if (!seg.setup && !labelled) {
                os << "<text x=\"" << num(kLeft + scale * static_cast<double>(seg.start) + 2) << "\" y=\""
                   << num(y + kRowHeight / 2 + 4) << "\">J" << j + 1 << "</text>\n";
                labelled = true;
            }
        }
    }

    // resource consumption per slot, downtime pauses excluded
    std::vector<std::vector<int>> usage(nr, std::vector<int>(static_cast<std::size_t>(span), 0));
    for (std::size_t j = 0; j < schedule.jobs.size(); ++j) {
        const auto& p = schedule.jobs[j];
        for (const auto& seg : work_segments(p)) {
            for (std::size_t r = 0; r < nr; ++r) {
                const int need = inst.jobs[j].demand[r] + inst.machines[p.machine].demand[r];
                for (Time t = seg.start; t < seg.end && t < span; ++t) {
                    if (t >= 0) usage[r][static_cast<std::size_t>(t)] += need;
                }
            }
        }
    }

    for (std::size_t r = 0; r < nr; ++r) {
        const double top = machines_bottom + kGap + (kTrackHeight + kGap) * static_cast<double>(r);
        const double bottom = top + kTrackHeight;
        int peak = std::max(1, inst.resources[r].cmax());
        for (int u : usage[r]) peak = std::max(peak, u);
        auto y = [&](int v) { return num(bottom - kTrackHeight * static_cast<double>(v) / static_cast<double>(peak)); };

        os << "<text x=\"8\" y=\"" << num(top + kTrackHeight / 2 + 4) << "\">R" << r + 1 << "</text>\n";
        os << "<rect x=\"" << num(kLeft) << "\" y=\"" << num(top) << "\" width=\"" << num(kPlotWidth)
           << "\" height=\"" << num(kTrackHeight) << "\" fill=\"none\" stroke=\"#cccccc\"/>\n";

        Time t = 0;
        while (t < span) {
            const int u = usage[r][static_cast<std::size_t>(t)];
            Time e = t + 1;
            while (e < span && usage[r][static_cast<std::size_t>(e)] == u) ++e;
            if (u > 0) {
                const bool over = u > inst.resources[r].capacity_at(t);
                os << "<rect class=\"usage\" data-resource=\"" << r + 1 << "\" x=\"" << x(t) << "\" y=\"" << y(u)
                   << "\" width=\"" << w(t, e) << "\" height=\"" << num(kTrackHeight * u / peak) << "\" fill=\""
                   << (over ? "#d62728" : "#7aa6c2") << "\"/>\n";
            }
            t = e;
        }

        os << "<polyline class=\"capacity\" data-resource=\"" << r + 1 << "\" fill=\"none\" stroke=\"#222222\" points=\"";
        bool first = true;
        for (const auto& iv : inst.resources[r].capacity) {
            if (!first) os << ' ';
            first = false;
            os << x(iv.start) << ',' << y(iv.capacity) << ' ' << x(iv.end) << ',' << y(iv.capacity);
        }
        os << "\"/>\n";
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace pmsp
