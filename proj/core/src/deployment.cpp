#include "swarmsim/deployment.hpp"

#include "swarmsim/errors.hpp"

#include <algorithm>
#include <set>

#include <fmt/format.h>

namespace swarmsim {

void ImageRegistry::add(const Application& app) {
    for (const auto& c : app.components) {
        if (c.kind == ComponentKind::compute) images[app.id + "/" + c.id] = c.image_size;
    }
}

double ImageRegistry::image_size(const std::string& app, const std::string& component) const {
    auto it = images.find(app + "/" + component);
    if (it == images.end()) {
        throw std::out_of_range(fmt::format("image registry has no image for {}/{}", app, component));
    }
    return it->second;
}

std::size_t select_winner(const RankedOffers& ranked, const std::vector<bool>& available,
                          std::span<const OfferCombination> offers, std::span<const OfferPair> all_pairs,
                          Infrastructure& infra) {
    if (ranked.entries.empty()) {
        throw std::invalid_argument("select_winner: empty ranking");
    }
    std::optional<std::size_t> winner;
    for (const auto& e : ranked.entries) {
        if (available.empty() || available[e.offer]) {
            winner = e.offer;
            break;
        }
    }
    std::set<SliceId> keep;
    if (winner) {
        for (const auto& p : offers[*winner].pairs) keep.insert(p.slice);
    }
    std::vector<OfferPair> losing;
    for (const auto& p : all_pairs) {
        if (!keep.contains(p.slice)) losing.push_back(p);
    }
    release_reservations(losing, infra);
    if (!winner) {
        throw DeploymentRejected("no ranked offer is available");
    }
    return *winner;
}

std::size_t select_lead_resource(const OfferCombination& winner, const Infrastructure& infra) {
    const auto caps = participating_capacities(winner, infra);
    if (caps.empty()) {
        throw std::invalid_argument("select_lead_resource: empty combination");
    }
    return *std::min_element(caps.begin(), caps.end(), [&](std::size_t a, std::size_t b) {
        const auto& ca = infra.capacity(a);
        const auto& cb = infra.capacity(b);
        if (ca.cpu_total != cb.cpu_total) return ca.cpu_total > cb.cpu_total;
        return ca.id < cb.id;
    });
}

Swarm deploy_application(Kernel& kernel, Infrastructure& infra, const Application& app,
                         std::span<const PlacementUnit> units, const OfferCombination& winner,
                         std::size_t lead_capacity, const ImageRegistry& registry) {
    for (const auto& p : winner.pairs) {
        if (infra.slice(p.slice).state != SliceState::reserved) {
            throw StateError(fmt::format("deploy_application: slice for unit {} of '{}' is {}, not reserved", p.unit,
                                         app.id, to_string(infra.slice(p.slice).state)));
        }
    }
    for (const auto& p : winner.pairs) infra.transition(p.slice, SliceState::assigned);

    const double start = kernel.now();
    kernel.schedule(start, EventKind::lead_sa_launch, {app.id, infra.capacity(lead_capacity).id, {}, -1, 0.0});

    Swarm swarm{app.id, lead_capacity, {}};
    std::map<std::size_t, double> ingress_free_at;  // per capacity, serialised transfers
    for (const auto& p : winner.pairs) {
        const auto& unit = units[p.unit];
        const auto& comp = app.components.at(unit.component);
        const auto cap_idx = infra.agents().at(p.agent).capacity;
        const auto& cap = infra.capacity(cap_idx);
        SwarmMember member{cap_idx, p.unit, comp.id, unit.instance, p.slice, start};
        EventSubject subject{app.id, cap.id, comp.id, unit.instance, 0.0};

        if (unit.kind == ComponentKind::storage) {
            kernel.schedule(start, EventKind::unit_deployed, subject,
                            [&infra, slice = p.slice](Kernel&) { infra.transition(slice, SliceState::allocated); });
        } else {
            const double seconds =
                transfer_duration(registry.image_size(app.id, comp.id), std::min(registry.bandwidth, cap.bandwidth),
                                  registry.latency + cap.latency);
            auto [it, _] = ingress_free_at.try_emplace(cap_idx, start);
            it->second += seconds;
            member.deployed_at = it->second;
            subject.value = seconds;
            kernel.schedule(member.deployed_at, EventKind::transfer_complete, subject,
                            [&infra, slice = p.slice, subject](Kernel& k) {
                                infra.transition(slice, SliceState::allocated);
                                k.schedule(k.now(), EventKind::unit_deployed, subject);
                            });
        }
        swarm.members.push_back(std::move(member));
    }
    return swarm;
}

void run_workload(Kernel& kernel, const Swarm& swarm, std::span<const PlacementUnit> units,
                  const Infrastructure& infra) {
    for (const auto& m : swarm.members) {
        const auto& unit = units[m.unit];
        if (unit.kind != ComponentKind::compute) continue;
        const auto& cap = infra.capacity(m.capacity);
        const int cores = unit.demand.cpu;
        EventSubject subject{swarm.application_id, cap.id, m.component, m.instance, static_cast<double>(cores)};
        kernel.schedule(m.deployed_at, EventKind::task_start, subject, [subject, cores](Kernel& k) {
            k.record_utilisation({subject.node, k.now(), k.now() + kWorkloadSeconds, cores});
            k.schedule_in(kWorkloadSeconds, EventKind::task_complete, subject);
        });
    }
}

}  // namespace swarmsim
