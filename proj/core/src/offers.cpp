#include "swarmsim/offers.hpp"

#include "swarmsim/errors.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <numeric>

#include <fmt/format.h>

namespace swarmsim {

std::string_view to_string(Coverage c) noexcept {
    switch (c) {
        case Coverage::full: return "full";
        case Coverage::partial: return "partial";
        case Coverage::zero: return "zero";
    }
    return "?";
}

std::size_t select_gateway(std::span<const ResourceAgent> agents, Rng& rng) {
    if (agents.empty()) {
        throw std::invalid_argument("select_gateway: no agents registered");
    }
    return rng.index(agents.size());
}

namespace {

bool constraints_met(const Component& c, const Capacity& cap) {
    return (!c.provider || *c.provider == cap.provider) && (!c.location || *c.location == cap.location);
}

}  // namespace

std::vector<OfferPair> first_fit_match(std::size_t agent_idx, const Application& app,
                                       std::span<const PlacementUnit> units, Infrastructure& infra) {
    const auto& agent = infra.agents().at(agent_idx);
    const auto& cap = infra.capacity(agent.capacity);
    auto& ledger = infra.ledger(agent.capacity);

    std::vector<std::size_t> order(units.size());
    std::iota(order.begin(), order.end(), 0);
    const bool ascending = agent.direction == SortDirection::ascending;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const auto& ua = units[a];
        const auto& ub = units[b];
        if (ua.demand.cpu != ub.demand.cpu) {
            return ascending ? ua.demand.cpu < ub.demand.cpu : ua.demand.cpu > ub.demand.cpu;
        }
        const auto& ida = app.components[ua.component].id;
        const auto& idb = app.components[ub.component].id;
        if (ida != idb) return ida < idb;
        return ua.instance < ub.instance;
    });

    std::vector<OfferPair> placed;
    std::vector<bool> component_failed(app.components.size(), false);
    for (std::size_t u : order) {
        const auto& unit = units[u];
        const auto& comp = app.components.at(unit.component);
        if (component_failed[unit.component]) continue;
        std::optional<std::size_t> slice;
        if (constraints_met(comp, cap)) {
            slice = ledger.reserve(unit.demand, {app.id, comp.id, unit.instance});
        }
        if (slice) {
            placed.push_back({agent_idx, u, {agent.capacity, *slice}});
            continue;
        }
        component_failed[unit.component] = true;
        if (comp.kind == ComponentKind::compute && comp.instances > 1) {
            // Partially placed multi-instance components are undeployable; roll them back.
            auto keep = std::stable_partition(placed.begin(), placed.end(), [&](const OfferPair& p) {
                return units[p.unit].component != unit.component;
            });
            for (auto it = keep; it != placed.end(); ++it) {
                ledger.transition(it->slice.slice, SliceState::free);
            }
            placed.erase(keep, placed.end());
        }
    }
    std::sort(placed.begin(), placed.end(),
              [](const OfferPair& a, const OfferPair& b) { return a.unit < b.unit; });
    return placed;
}

Coverage classify_coverage(std::span<const OfferPair> response, std::span<const PlacementUnit> units) {
    std::vector<bool> covered(units.size(), false);
    for (const auto& p : response) {
        if (p.unit >= units.size()) {
            throw std::invalid_argument(fmt::format("offer pair references unknown placement unit {}", p.unit));
        }
        covered[p.unit] = true;
    }
    const auto n = static_cast<std::size_t>(std::count(covered.begin(), covered.end(), true));
    if (n == 0) return Coverage::zero;
    return n == units.size() ? Coverage::full : Coverage::partial;
}

std::vector<OfferCombination> generate_combinations(std::span<const OfferPair> pairs,
                                                    std::span<const PlacementUnit> units, std::size_t guard,
                                                    CombinationScope scope) {
    if (units.empty()) return {};

    // A "slot" is what a combination picks an agent for: a unit, or a whole component.
    std::vector<std::size_t> slot_of_unit(units.size());
    std::size_t slot_count = 0;
    if (scope == CombinationScope::unit) {
        std::iota(slot_of_unit.begin(), slot_of_unit.end(), 0);
        slot_count = units.size();
    } else {
        std::map<std::size_t, std::size_t> slot_of_component;
        for (std::size_t u = 0; u < units.size(); ++u) {
            auto [it, inserted] = slot_of_component.emplace(units[u].component, slot_count);
            if (inserted) ++slot_count;
            slot_of_unit[u] = it->second;
        }
    }

    // by_agent[slot][agent] -> that agent's pairs for the slot's units
    std::vector<std::map<std::size_t, std::vector<OfferPair>>> by_agent(slot_count);
    for (const auto& p : pairs) {
        if (p.unit >= units.size()) {
            throw std::invalid_argument(fmt::format("offer pair references unknown placement unit {}", p.unit));
        }
        by_agent[slot_of_unit[p.unit]][p.agent].push_back(p);
    }
    std::vector<std::size_t> units_in_slot(slot_count, 0);
    for (std::size_t u = 0; u < units.size(); ++u) ++units_in_slot[slot_of_unit[u]];

    std::vector<std::vector<const std::vector<OfferPair>*>> options(slot_count);
    double product = 1.0;
    for (std::size_t s = 0; s < slot_count; ++s) {
        for (const auto& [agent, agent_pairs] : by_agent[s]) {
            if (agent_pairs.size() == units_in_slot[s]) options[s].push_back(&agent_pairs);
        }
        if (options[s].empty()) return {};
        product *= static_cast<double>(options[s].size());
    }
    if (product > static_cast<double>(guard)) {
        throw CombinationOverflow(product, guard);
    }

    std::vector<OfferCombination> out;
    out.reserve(static_cast<std::size_t>(product));
    std::vector<std::size_t> pick(slot_count, 0);
    while (true) {
        OfferCombination combo;
        combo.pairs.reserve(units.size());
        for (std::size_t s = 0; s < slot_count; ++s) {
            const auto& chosen = *options[s][pick[s]];
            combo.pairs.insert(combo.pairs.end(), chosen.begin(), chosen.end());
        }
        std::sort(combo.pairs.begin(), combo.pairs.end(),
                  [](const OfferPair& a, const OfferPair& b) { return a.unit < b.unit; });
        out.push_back(std::move(combo));

        // odometer, last slot fastest
        std::size_t s = slot_count;
        while (s > 0) {
            --s;
            if (++pick[s] < options[s].size()) break;
            pick[s] = 0;
            if (s == 0) return out;
        }
    }
}

std::vector<std::size_t> participating_capacities(const OfferCombination& combo, const Infrastructure& infra) {
    std::vector<std::size_t> caps;
    caps.reserve(combo.pairs.size());
    for (const auto& p : combo.pairs) caps.push_back(infra.agents().at(p.agent).capacity);
    std::sort(caps.begin(), caps.end());
    caps.erase(std::unique(caps.begin(), caps.end()), caps.end());
    return caps;
}

QoSVector aggregate_offer_qos(const OfferCombination& combo, const Infrastructure& infra) {
    QoSVector q;
    for (std::size_t c : participating_capacities(combo, infra)) {
        const auto& cap = infra.capacity(c);
        q.latency += cap.latency;
        q.price += cap.price_per_hour;
        q.bandwidth += cap.bandwidth;
        q.energy += cap.max_power;
    }
    return q;
}

double offer_reliability(const OfferCombination& combo, const Infrastructure& infra) {
    const auto caps = participating_capacities(combo, infra);
    if (caps.empty()) return 0.0;
    double sum = 0.0;
    for (std::size_t c : caps) sum += infra.capacity(c).reliability;
    return sum / static_cast<double>(caps.size());
}

void release_reservations(std::span<const OfferPair> losing, Infrastructure& infra) {
    for (const auto& p : losing) {
        if (infra.slice(p.slice).state != SliceState::reserved) {
            throw StateError(fmt::format("cannot release slice {}/{} in state {}", p.slice.capacity, p.slice.slice,
                                         to_string(infra.slice(p.slice).state)));
        }
    }
    for (const auto& p : losing) infra.transition(p.slice, SliceState::free);
}

void broadcast_request(Kernel& kernel, Infrastructure& infra, std::size_t gateway, const Application& app,
                       std::span<const PlacementUnit> units, ResponsesHandler on_complete, double message_size_mb) {
    struct Round {
        Application app;
        std::vector<PlacementUnit> units;
        std::vector<std::vector<OfferPair>> responses;
        std::size_t outstanding;
        ResponsesHandler on_complete;
    };
    const auto agent_count = infra.agents().size();
    auto round = std::make_shared<Round>(
        Round{app, {units.begin(), units.end()}, std::vector<std::vector<OfferPair>>(agent_count), agent_count,
              std::move(on_complete)});

    const auto& gw_cap = infra.capacity(infra.agents().at(gateway).capacity);
    for (std::size_t a = 0; a < agent_count; ++a) {
        const auto& cap = infra.capacity(infra.agents()[a].capacity);
        const double hop =
            a == gateway ? 0.0
                         : transfer_duration(message_size_mb, path_bandwidth(gw_cap, cap), path_latency(gw_cap, cap));
        kernel.schedule_in(hop, EventKind::request_arrival, {app.id, cap.id, {}, -1, 0.0},
                           [&infra, round, a, hop, gw_id = gw_cap.id](Kernel& k) {
                               auto offered = first_fit_match(a, round->app, round->units, infra);
                               const double n_offered = static_cast<double>(offered.size());
                               k.schedule_in(hop, EventKind::response_arrival,
                                             {round->app.id, gw_id, {}, static_cast<int>(a), n_offered},
                                             [round, a, offered = std::move(offered)](Kernel& k2) mutable {
                                                 round->responses[a] = std::move(offered);
                                                 if (--round->outstanding == 0) {
                                                     round->on_complete(k2, std::move(round->responses));
                                                 }
                                             });
                           });
    }
}

}  // namespace swarmsim
