#include "support.hpp"

#include <swarmsim/deployment.hpp>
#include <swarmsim/errors.hpp>

#include <gtest/gtest.h>

using namespace swarmsim;
using namespace swarmsim::testing;

namespace {

struct Fixture {
    Infrastructure infra;
    Application app;
    std::vector<PlacementUnit> units;
    OfferCombination winner;
    ImageRegistry registry;

    Fixture(std::vector<Capacity> caps, Application a) : infra(std::move(caps)), app(std::move(a)) {
        units = expand_units(app);
        registry.add(app);
        winner.pairs = first_fit_match(0, app, units, infra);
    }
};

double event_time(const EventLog& log, EventKind kind, const std::string& component, int instance = 0) {
    for (const auto& e : log.entries) {
        if (e.kind == kind && e.subject.component == component && e.subject.instance == instance) return e.time;
    }
    return -1;
}

}  // namespace

TEST(SelectWinner, FallsBackAndReleases) {
    Infrastructure infra({make_capacity("a"), make_capacity("b"), make_capacity("c")});
    auto app = make_app("x", {compute("c1", 2, 2)});
    auto units = expand_units(app);
    std::vector<OfferPair> all;
    std::vector<OfferCombination> offers;
    for (std::size_t a = 0; a < 3; ++a) {
        auto r = first_fit_match(a, app, units, infra);
        all.insert(all.end(), r.begin(), r.end());
        offers.push_back({r, {}, 1});
    }
    RankedOffers ranked{{{2, 0}, {0, 1}, {1, 2}}, RankingMethod::cost, ReliabilityMode::none};

    Infrastructure copy = infra;
    EXPECT_EQ(select_winner(ranked, {}, offers, all, copy), 2u);
    EXPECT_EQ(copy.count_in(SliceState::reserved), 1u);

    copy = infra;
    EXPECT_EQ(select_winner(ranked, {true, true, false}, offers, all, copy), 0u);
    EXPECT_EQ(copy.slice(all[0].slice).state, SliceState::reserved);
    EXPECT_EQ(copy.slice(all[2].slice).state, SliceState::free);

    copy = infra;
    EXPECT_THROW((void)select_winner(ranked, {false, false, false}, offers, all, copy), DeploymentRejected);
    EXPECT_EQ(copy.count_in(SliceState::reserved), 0u);
}

TEST(LeadResource, MostCoresThenId) {
    Infrastructure infra({make_capacity("b", 64), make_capacity("a", 64), make_capacity("s", 16),
                          make_capacity("z", 100)});
    auto pick = [&](std::vector<std::size_t> agents) {
        OfferCombination c;
        for (auto a : agents) c.pairs.push_back({a, 0, {}});
        return infra.capacity(select_lead_resource(c, infra)).id;
    };
    EXPECT_EQ(pick({2, 3}), "z");
    EXPECT_EQ(pick({2}), "s");
    EXPECT_EQ(pick({0, 1}), "a");
}

TEST(Deploy, SingleTransfer) {
    auto cap = make_capacity("n");
    cap.bandwidth = 1200;
    Fixture f({cap}, make_app("x", {compute("c1", 2, 2, 500)}));
    Kernel k;
    k.schedule(10, EventKind::deploy_start, {"x"}, [&](Kernel& kk) {
        auto swarm = deploy_application(kk, f.infra, f.app, f.units, f.winner, 0, f.registry);
        EXPECT_NEAR(swarm.members[0].deployed_at, 14.015, 1e-12);
    });
    const auto& log = k.run_until_idle();
    EXPECT_NEAR(event_time(log, EventKind::unit_deployed, "c1"), 14.015, 1e-12);
    EXPECT_EQ(f.infra.count_in(SliceState::allocated), 1u);
    EXPECT_TRUE(f.infra.balanced());
}

TEST(Deploy, SameCapacitySerialises) {
    Fixture f({make_capacity("n")}, make_app("x", {compute("c1", 1, 1, 100), compute("c2", 1, 1, 100)}));
    Kernel k;
    deploy_application(k, f.infra, f.app, f.units, f.winner, 0, f.registry);
    const auto& log = k.run_until_idle();
    EXPECT_NEAR(event_time(log, EventKind::unit_deployed, "c1"), 0.815, 1e-12);
    EXPECT_NEAR(event_time(log, EventKind::unit_deployed, "c2"), 1.630, 1e-12);
}

TEST(Deploy, DistinctCapacitiesInParallel) {
    Infrastructure infra({make_capacity("a"), make_capacity("b")});
    auto app = make_app("x", {compute("c1", 1, 1, 100), compute("c2", 1, 1, 100)});
    auto units = expand_units(app);
    ImageRegistry reg;
    reg.add(app);
    OfferCombination w;
    w.pairs.push_back({0, 0, {0, *infra.ledger(0).reserve(units[0].demand, {"x", "c1", 0})}});
    w.pairs.push_back({1, 1, {1, *infra.ledger(1).reserve(units[1].demand, {"x", "c2", 0})}});
    Kernel k;
    auto swarm = deploy_application(k, infra, app, units, w, 0, reg);
    EXPECT_NEAR(swarm.members[0].deployed_at, 0.815, 1e-12);
    EXPECT_NEAR(swarm.members[1].deployed_at, 0.815, 1e-12);
}

TEST(Deploy, StorageOnlyAllocatesAtStart) {
    Fixture f({make_capacity("n")}, make_app("x", {storage("s1", 4)}));
    Kernel k;
    k.schedule(3, EventKind::deploy_start, {"x"},
               [&](Kernel& kk) { deploy_application(kk, f.infra, f.app, f.units, f.winner, 0, f.registry); });
    const auto& log = k.run_until_idle();
    EXPECT_EQ(event_time(log, EventKind::unit_deployed, "s1"), 3.0);
    EXPECT_EQ(f.infra.count_in(SliceState::allocated), 1u);
}

TEST(Deploy, RequiresReservedSlices) {
    Fixture f({make_capacity("n")}, make_app("x", {compute("c1", 1, 1)}));
    f.infra.transition(f.winner.pairs[0].slice, SliceState::free);
    Kernel k;
    EXPECT_THROW(deploy_application(k, f.infra, f.app, f.units, f.winner, 0, f.registry), StateError);
}

TEST(Workload, UtilisationIntervals) {
    Fixture f({make_capacity("n", 100, 100, 100)},
              make_app("x", {compute("c1", 3, 1, 100), compute("c2", 3, 1, 100), storage("s1", 1)}));
    Kernel k;
    auto swarm = deploy_application(k, f.infra, f.app, f.units, f.winner, 0, f.registry);
    run_workload(k, swarm, f.units, f.infra);
    const auto& log = k.run_until_idle();
    ASSERT_EQ(log.utilisation.size(), 2u);
    int tasks = 0;
    for (const auto& e : log.entries) tasks += e.kind == EventKind::task_start;
    EXPECT_EQ(tasks, 2);
    const auto& a = log.utilisation[0];
    const auto& b = log.utilisation[1];
    EXPECT_EQ(a.end - a.start, kWorkloadSeconds);
    EXPECT_LT(b.start, a.end);
    EXPECT_DOUBLE_EQ((a.cpu_cores_busy + b.cpu_cores_busy) / 100.0, 0.06);
    EXPECT_NEAR(k.now(), 1.630 + kWorkloadSeconds, 1e-9);
}

TEST(Workload, TwoCoresOnSixteen) {
    Fixture f({make_capacity("n", 16)}, make_app("x", {compute("c1", 2, 1, 100)}));
    Kernel k;
    auto swarm = deploy_application(k, f.infra, f.app, f.units, f.winner, 0, f.registry);
    run_workload(k, swarm, f.units, f.infra);
    const auto& log = k.run_until_idle();
    ASSERT_EQ(log.utilisation.size(), 1u);
    EXPECT_DOUBLE_EQ(log.utilisation[0].cpu_cores_busy / 16.0, 0.125);
    EXPECT_EQ(log.utilisation[0].start, swarm.members[0].deployed_at);
}
