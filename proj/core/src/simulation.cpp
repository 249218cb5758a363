#include "swarmsim/simulation.hpp"

#include "swarmsim/errors.hpp"
#include "swarmsim/rng.hpp"

#include <numeric>

#include <fmt/format.h>

namespace swarmsim {

std::vector<bool> assign_sort_directions(std::size_t agents, std::uint64_t seed) {
    std::vector<std::size_t> order(agents);
    std::iota(order.begin(), order.end(), 0);
    auto rng = Rng::substream(seed, "sort-directions");
    rng.shuffle(order.begin(), order.end());
    std::vector<bool> ascending(agents, false);
    for (std::size_t i = 0; i < (agents + 1) / 2; ++i) ascending[order[i]] = true;
    return ascending;
}

namespace {

struct AppState {
    Application app;
    std::vector<PlacementUnit> units;
    std::size_t gateway = 0;
    int attempts = 0;
};

class Run {
public:
    Run(const std::vector<Capacity>& capacities, const std::vector<Application>& apps, const SimulationOptions& opt)
        : opt_(opt),
          ascending_(assign_sort_directions(capacities.size(), opt.seed)),
          infra_(capacities, ascending_),
          gateway_rng_(Rng::substream(opt.seed, "gateway")),
          ranking_rng_(Rng::substream(opt.seed, "random-ranking")) {
        registry_.bandwidth = opt.registry_bandwidth;
        registry_.latency = opt.registry_latency;
        apps_.reserve(apps.size());
        for (const auto& a : apps) {
            validate(a);
            AppState st{a, expand_units(a), 0, 0};
            if (opt.strategy.priorities) st.app.priorities = *opt.strategy.priorities;
            registry_.add(st.app);
            apps_.push_back(std::move(st));
        }
    }

    RunResult execute() {
        if (infra_.agents().empty() && !apps_.empty()) {
            throw ConfigError("no capacities registered");
        }
        if (opt_.check_invariants) {
            kernel_.set_post_event_check([this](const Kernel&) {
                ++checks_;
                if (!infra_.balanced()) throw StateError("capacity resource conservation violated");
            });
        }
        for (std::size_t i = 0; i < apps_.size(); ++i) {
            kernel_.schedule(apps_[i].app.submit_time, EventKind::submission, {apps_[i].app.id, {}, {}, -1, 0.0},
                             [this, i](Kernel& k) {
                                 apps_[i].gateway = select_gateway(infra_.agents(), gateway_rng_);
                                 start_round(k, i);
                             });
        }
        kernel_.run_until_idle();

        RunResult out;
        out.log = kernel_.log();
        out.metrics = compute_metrics(out.log, infra_.capacities());
        out.swarms = std::move(swarms_);
        out.rejected = std::move(rejected_);
        out.ascending_agents = ascending_;
        out.slices_reserved_at_end = infra_.count_in(SliceState::reserved);
        out.slices_assigned_at_end = infra_.count_in(SliceState::assigned);
        out.invariant_checks = checks_;
        return out;
    }

private:
    void start_round(Kernel& k, std::size_t i) {
        auto& st = apps_[i];
        ++st.attempts;
        broadcast_request(
            k, infra_, st.gateway, st.app, st.units,
            [this, i](Kernel& k2, std::vector<std::vector<OfferPair>> responses) { on_responses(k2, i, responses); },
            opt_.message_size_mb);
    }

    void on_responses(Kernel& k, std::size_t i, const std::vector<std::vector<OfferPair>>& responses) {
        auto& st = apps_[i];
        std::vector<OfferPair> all_pairs;
        for (const auto& r : responses) all_pairs.insert(all_pairs.end(), r.begin(), r.end());
        const auto& gw_node = infra_.capacity(infra_.agents()[st.gateway].capacity).id;

        auto combos = generate_combinations(all_pairs, st.units, opt_.combination_guard, opt_.combination_scope);
        if (combos.empty()) {
            release_reservations(all_pairs, infra_);
            if (st.attempts > opt_.max_retries) {
                reject(k, i, "no full-coverage offer");
                return;
            }
            k.schedule_in(opt_.retry_delay, EventKind::retry,
                          {st.app.id, gw_node, {}, -1, static_cast<double>(st.attempts)},
                          [this, i](Kernel& k2) { start_round(k2, i); });
            return;
        }

        for (auto& c : combos) {
            c.qos = aggregate_offer_qos(c, infra_);
            c.reliability = offer_reliability(c, infra_);
        }
        const auto& s = opt_.strategy;
        RankedOffers ranked;
        switch (s.method) {
            case RankingMethod::cost: ranked = cost_rank(combos, st.app.priorities, s.reliability); break;
            case RankingMethod::borda: ranked = borda_rank(combos, st.app.priorities, s.reliability); break;
            case RankingMethod::random: ranked = random_rank(combos, ranking_rng_); break;
        }
        std::vector<bool> available(combos.size(), true);
        for (int r : st.app.unavailable_ranks) {
            if (r >= 1 && static_cast<std::size_t>(r) <= ranked.entries.size()) {
                available[ranked.entries[static_cast<std::size_t>(r) - 1].offer] = false;
            }
        }
        k.schedule(k.now(), EventKind::offers_ranked, {st.app.id, gw_node, {}, -1, static_cast<double>(combos.size())});

        std::size_t winner = 0;
        try {
            winner = select_winner(ranked, available, combos, all_pairs, infra_);
        } catch (const DeploymentRejected& e) {
            reject(k, i, e.what());
            return;
        }
        const auto lead = select_lead_resource(combos[winner], infra_);
        k.schedule(k.now(), EventKind::deploy_start, {st.app.id, infra_.capacity(lead).id, {}, -1, 0.0},
                   [this, i, lead, combo = std::move(combos[winner])](Kernel& k2) {
                       auto& a = apps_[i];
                       auto swarm = deploy_application(k2, infra_, a.app, a.units, combo, lead, registry_);
                       run_workload(k2, swarm, a.units, infra_);
                       swarms_.push_back(std::move(swarm));
                   });
    }

    void reject(Kernel& k, std::size_t i, const std::string& why) {
        rejected_.push_back(fmt::format("{}: {}", apps_[i].app.id, why));
        k.schedule(k.now(), EventKind::rejected, {apps_[i].app.id, {}, {}, -1, static_cast<double>(apps_[i].attempts)});
    }

    SimulationOptions opt_;
    std::vector<bool> ascending_;
    Infrastructure infra_;
    Rng gateway_rng_;
    Rng ranking_rng_;
    ImageRegistry registry_;
    std::vector<AppState> apps_;
    Kernel kernel_;
    std::vector<Swarm> swarms_;
    std::vector<std::string> rejected_;
    std::size_t checks_ = 0;
};

}  // namespace

RunResult simulate(const std::vector<Capacity>& capacities, const std::vector<Application>& apps,
                   const SimulationOptions& options) {
    Run run(capacities, apps, options);
    return run.execute();
}

}  // namespace swarmsim
