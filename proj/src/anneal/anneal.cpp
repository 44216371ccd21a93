#include "pmsp/anneal/anneal.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "pmsp/construct/construct.hpp"
#include "pmsp/core/validate.hpp"
#include "pmsp/decoder/decoder.hpp"

namespace pmsp {

MoveSampler::MoveSampler(const Instance& instance) : instance_(instance), succ_(successors(instance)) {}

void MoveSampler::refresh_positions(const SolutionRepr& repr) const {
    pos_.resize(repr.order.size());
    for (std::size_t i = 0; i < repr.order.size(); ++i) pos_[repr.order[i]] = i;
}

std::pair<std::size_t, std::size_t> MoveSampler::window(const SolutionRepr& repr, std::size_t job) const {
    refresh_positions(repr);
    const auto n = repr.order.size();
    std::size_t lo = 0;
    for (const auto& p : instance_.jobs[job].preds) lo = std::max(lo, pos_[p.pred] + 1);
    // successors shift down by one once the job is taken out
    std::size_t hi = n - 1;
    for (auto s : succ_[job]) hi = std::min(hi, pos_[s] - 1);
    return {lo, hi};
}

std::size_t MoveSampler::neighbourhood_size(const SolutionRepr& repr) const {
    std::size_t total = 0;
    for (std::size_t j = 0; j < repr.order.size(); ++j) {
        const auto [lo, hi] = window(repr, j);
        total += (hi - lo + 1) * instance_.jobs[j].eligible.size() - 1;
    }
    return total;
}

std::optional<Move> MoveSampler::sample(const SolutionRepr& repr, Rng& rng) const {
    refresh_positions(repr);
    const auto n = repr.order.size();
    weight_.assign(n, 0);
    std::size_t total = 0;
    for (std::size_t j = 0; j < n; ++j) {
        std::size_t lo = 0;
        for (const auto& p : instance_.jobs[j].preds) lo = std::max(lo, pos_[p.pred] + 1);
        std::size_t hi = n - 1;
        for (auto s : succ_[j]) hi = std::min(hi, pos_[s] - 1);
        weight_[j] = (hi - lo + 1) * instance_.jobs[j].eligible.size() - 1;
        total += weight_[j];
    }
    if (total == 0) return std::nullopt;

    auto pick = rng.index(total);
    std::size_t job = 0;
    while (pick >= weight_[job]) {
        pick -= weight_[job];
        ++job;
    }
    const auto [lo, hi] = window(repr, job);
    const auto& eligible = instance_.jobs[job].eligible;
    const auto machine_slot = static_cast<std::size_t>(
        std::find(eligible.begin(), eligible.end(), repr.assign[job]) - eligible.begin());
    const auto identity = (pos_[job] - lo) * eligible.size() + machine_slot;
    const auto combined = pick < identity ? pick : pick + 1;
    return Move{job, lo + combined / eligible.size(), eligible[combined % eligible.size()]};
}

std::optional<Move> sample_move(const Instance& instance, const SolutionRepr& repr, Rng& rng) {
    return MoveSampler(instance).sample(repr, rng);
}

SolutionRepr apply_move(const Instance& instance, const SolutionRepr& repr, const Move& move) {
    const auto n = repr.order.size();
    if (move.job >= n || move.new_position >= n) throw std::invalid_argument("move out of range");
    if (!instance.jobs[move.job].eligible_on(move.new_machine)) throw std::invalid_argument("move targets an ineligible machine");
    auto it = std::find(repr.order.begin(), repr.order.end(), move.job);
    const auto old_position = static_cast<std::size_t>(it - repr.order.begin());
    if (old_position == move.new_position && repr.assign[move.job] == move.new_machine) {
        throw std::invalid_argument("move leaves the representation unchanged");
    }
    SolutionRepr out = repr;
    out.order.erase(out.order.begin() + static_cast<std::ptrdiff_t>(old_position));
    out.order.insert(out.order.begin() + static_cast<std::ptrdiff_t>(move.new_position), move.job);
    out.assign[move.job] = move.new_machine;
    if (!precedence_order_ok(instance, out)) throw std::invalid_argument("move breaks the precedence order");
    return out;
}

double cooling_rate(double t_current, double t_min, double steps_left) {
    return std::pow(t_min / t_current, 1.0 / std::max(1.0, steps_left));
}

bool accept(double delta, double t_current, Rng& rng) {
    return rng.uniform01() < std::exp(-delta / t_current);
}

ChainResult run_chain(const Instance& instance, const SAParams& params, const SolutionRepr& initial, std::uint64_t seed) {
    using clock = std::chrono::steady_clock;
    Rng rng(seed);
    MoveSampler sampler(instance);

    auto decoded = decode(instance, initial);
    ChainResult best{initial, std::move(decoded.schedule), decoded.cost, {}};
    best.stats.seed = seed;
    best.stats.initial_aggregate = decoded.cost.aggregate;

    SolutionRepr current = initial;
    double current_cost = decoded.cost.aggregate;
    double temperature = params.t_init;
    auto& stats = best.stats;

    const auto started = clock::now();
    const double limit = params.time_limit.count();
    while (true) {
        double elapsed = 0.0;
        if (params.iteration_budget) {
            if (stats.iterations >= *params.iteration_budget) break;
        } else {
            elapsed = std::chrono::duration<double>(clock::now() - started).count();
            if (elapsed >= limit) break;
        }

        auto move = sampler.sample(current, rng);
        if (!move) break;
        auto candidate = apply_move(instance, current, *move);
        auto result = decode(instance, candidate);
        const double delta = result.cost.aggregate - current_cost;
        if (delta <= 0.0 || accept(delta, temperature, rng)) {
            current = std::move(candidate);
            current_cost = result.cost.aggregate;
            ++stats.accepted;
            if (current_cost < best.cost.aggregate) {
                best.repr = current;
                best.schedule = std::move(result.schedule);
                best.cost = result.cost;
            }
        } else {
            ++stats.rejected;
        }
        ++stats.iterations;

        double steps_left = 1.0;
        if (params.iteration_budget) {
            steps_left = static_cast<double>(*params.iteration_budget - stats.iterations + 1);
        } else {
            elapsed = std::chrono::duration<double>(clock::now() - started).count();
            const double mean = elapsed / static_cast<double>(stats.iterations);
            steps_left = mean > 0.0 ? std::round((limit - elapsed) / mean) : 1.0;
        }
        temperature = std::max(params.t_min, cooling_rate(temperature, params.t_min, std::max(1.0, steps_left)) * temperature);
    }
    stats.best_aggregate = best.cost.aggregate;
    stats.final_temperature = temperature;
    return best;
}

SolveResult solve(const Instance& instance, const SAParams& params, const std::optional<SolutionRepr>& initial) {
    if (auto defects = validate_instance(instance); !defects.empty()) {
        throw std::invalid_argument("invalid instance: " + defects.front().invariant + " (" + defects.front().entity + ")");
    }
    if (!(params.t_min > 0.0 && params.t_min < params.t_init)) throw std::invalid_argument("need 0 < t_min < t_init");
    if (params.runs == 0) throw std::invalid_argument("runs must be positive");

    const SolutionRepr start = initial ? *initial : construct(instance).repr;
    if (!repr_well_formed(instance, start) || !precedence_order_ok(instance, start)) {
        throw std::invalid_argument("initial representation is not precedence-valid");
    }

    std::vector<ChainResult> chains(params.runs);
    auto work = [&](std::size_t c) { chains[c] = run_chain(instance, params, start, params.seed + c); };
    if (params.parallel && params.runs > 1) {
        std::vector<std::jthread> workers;
        workers.reserve(params.runs);
        for (std::size_t c = 0; c < params.runs; ++c) workers.emplace_back(work, c);
    } else {
        for (std::size_t c = 0; c < params.runs; ++c) work(c);
    }

    SolveResult out;
    for (std::size_t c = 0; c < chains.size(); ++c) {
        if (c == 0 || chains[c].cost.aggregate < chains[out.best_chain].cost.aggregate) out.best_chain = c;
        out.chains.push_back(chains[c].stats);
    }
    auto& winner = chains[out.best_chain];
    out.repr = std::move(winner.repr);
    out.schedule = std::move(winner.schedule);
    out.cost = winner.cost;
    return out;
}

nlohmann::json run_stats_to_json(const SolveResult& result) {
    nlohmann::json chains = nlohmann::json::array();
    for (const auto& c : result.chains) {
        chains.push_back({{"seed", c.seed},
                          {"iterations", c.iterations},
                          {"accepted", c.accepted},
                          {"rejected", c.rejected},
                          {"initial_aggregate", c.initial_aggregate},
                          {"best_aggregate", c.best_aggregate},
                          {"final_temperature", c.final_temperature}});
    }
    return {{"best_chain", result.best_chain}, {"best_aggregate", result.cost.aggregate}, {"chains", chains}};
}

}  // namespace pmsp
