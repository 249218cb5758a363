#include "support.hpp"

#include <swarmsim/errors.hpp>
#include <swarmsim/offers.hpp>

#include <gtest/gtest.h>

#include <set>

using namespace swarmsim;
using namespace swarmsim::testing;

namespace {

// Offerable pool {cpu 4, ram 8} once the agent footprint is taken off.
Infrastructure small_pool(SortDirection dir) {
    return Infrastructure({make_capacity("n", 5, 9, 10)}, {dir == SortDirection::ascending});
}

std::vector<PlacementUnit> units_of(const Application& app) { return expand_units(app); }

}  // namespace

TEST(Gateway, SingleAgent) {
    Infrastructure infra({make_capacity("n")});
    Rng rng(1);
    EXPECT_EQ(select_gateway(infra.agents(), rng), 0u);
}

TEST(Gateway, SameSeedSameAgent) {
    std::vector<ResourceAgent> agents(8);
    auto a = Rng::substream(42, "gateway");
    auto b = Rng::substream(42, "gateway");
    EXPECT_EQ(select_gateway(agents, a), select_gateway(agents, b));
}

TEST(Gateway, Uniform) {
    std::vector<ResourceAgent> agents(8);
    auto rng = Rng::substream(7, "gateway");
    std::vector<int> hits(8, 0);
    const int draws = 10000;
    for (int i = 0; i < draws; ++i) ++hits[select_gateway(agents, rng)];
    for (int h : hits) EXPECT_NEAR(h / double(draws), 0.125, 0.02);
}

TEST(FirstFit, AscendingTakesSmallFirst) {
    auto infra = small_pool(SortDirection::ascending);
    auto app = make_app("a", {compute("c1", 2, 2), compute("c2", 3, 3)});
    auto units = units_of(app);
    auto got = first_fit_match(0, app, units, infra);
    ASSERT_EQ(got.size(), 1u);
    EXPECT_EQ(got[0].unit, 0u);
    EXPECT_EQ(infra.ledger(0).free_pool().cpu, 2);
}

TEST(FirstFit, DescendingTakesLargeFirst) {
    auto infra = small_pool(SortDirection::descending);
    auto app = make_app("a", {compute("c1", 2, 2), compute("c2", 3, 3)});
    auto units = units_of(app);
    auto got = first_fit_match(0, app, units, infra);
    ASSERT_EQ(got.size(), 1u);
    EXPECT_EQ(got[0].unit, 1u);
    EXPECT_EQ(infra.ledger(0).free_pool().cpu, 1);
}

TEST(FirstFit, MultiInstanceAllOrNothing) {
    auto infra = small_pool(SortDirection::ascending);
    auto app = make_app("a", {compute("c1", 3, 1, 10, 2)});
    auto units = units_of(app);
    EXPECT_TRUE(first_fit_match(0, app, units, infra).empty());
    EXPECT_EQ(infra.ledger(0).free_pool(), (Resources{4, 8, 10}));
    EXPECT_TRUE(infra.balanced());
}

TEST(FirstFit, ConstraintsAreHardFilters) {
    auto infra = small_pool(SortDirection::ascending);
    auto c = compute("c1", 1, 1);
    c.provider = "Azure";
    auto s = storage("s1", 2);
    s.location = "EU";
    auto app = make_app("a", {c, s});
    auto units = units_of(app);
    auto got = first_fit_match(0, app, units, infra);
    ASSERT_EQ(got.size(), 1u);
    EXPECT_EQ(got[0].unit, 1u);
}

TEST(FirstFit, StorageSortsAsZeroCpu) {
    Infrastructure infra({make_capacity("n", 5, 9, 3)}, {false});
    auto app = make_app("a", {storage("s1", 3), compute("c1", 4, 1)});
    auto units = units_of(app);
    auto got = first_fit_match(0, app, units, infra);
    EXPECT_EQ(got.size(), 2u);
}

TEST(Coverage, Classes) {
    auto app = make_app("a", {compute("c1", 1, 1), compute("c2", 1, 1), compute("c3", 1, 1), storage("s", 1)});
    auto units = units_of(app);
    std::vector<OfferPair> all{{0, 0, {}}, {0, 1, {}}, {0, 2, {}}, {0, 3, {}}};
    EXPECT_EQ(classify_coverage(all, units), Coverage::full);
    EXPECT_EQ(classify_coverage({}, units), Coverage::zero);
    EXPECT_EQ(classify_coverage(std::span(all).first(2), units), Coverage::partial);
}

TEST(Combinations, ExactlyOnce) {
    auto app = make_app("a", {compute("c1", 1, 1), compute("c2", 1, 1)});
    auto units = units_of(app);
    std::vector<OfferPair> pairs{{0, 0, {0, 0}}, {1, 0, {1, 0}}, {0, 1, {0, 1}}};
    auto combos = generate_combinations(pairs, units);
    ASSERT_EQ(combos.size(), 2u);
    std::set<std::vector<std::size_t>> seen;
    for (const auto& c : combos) {
        ASSERT_EQ(c.pairs.size(), 2u);
        seen.insert({c.pairs[0].agent, c.pairs[1].agent});
    }
    EXPECT_EQ(seen, (std::set<std::vector<std::size_t>>{{0, 0}, {1, 0}}));
}

TEST(Combinations, UnofferedUnitGivesNothing) {
    auto app = make_app("a", {compute("c1", 1, 1), compute("c2", 1, 1)});
    auto units = units_of(app);
    std::vector<OfferPair> pairs{{0, 0, {}}, {1, 0, {}}};
    EXPECT_TRUE(generate_combinations(pairs, units).empty());
}

TEST(Combinations, ProductOfOptions) {
    auto app = make_app("a", {compute("c1", 1, 1), compute("c2", 1, 1), compute("c3", 1, 1), storage("s", 1)});
    auto units = units_of(app);
    std::vector<OfferPair> pairs;
    for (std::size_t a = 0; a < 3; ++a) {
        for (std::size_t u = 0; u < 4; ++u) pairs.push_back({a, u, {a, u}});
    }
    EXPECT_EQ(generate_combinations(pairs, units).size(), 81u);
    EXPECT_THROW((void)generate_combinations(pairs, units, 80), CombinationOverflow);
}

TEST(Combinations, ComponentScopeKeepsInstancesTogether) {
    auto app = make_app("a", {compute("c1", 1, 1, 10, 2)});
    auto units = units_of(app);
    std::vector<OfferPair> pairs{{0, 0, {0, 0}}, {0, 1, {0, 1}}, {1, 0, {1, 0}}, {1, 1, {1, 1}}, {2, 0, {2, 0}}};
    EXPECT_EQ(generate_combinations(pairs, units, 100, CombinationScope::unit).size(), 6u);
    auto whole = generate_combinations(pairs, units, 100, CombinationScope::component);
    ASSERT_EQ(whole.size(), 2u);
    for (const auto& c : whole) EXPECT_EQ(c.pairs[0].agent, c.pairs[1].agent);
}

TEST(Qos, SumOverDistinctCapacities) {
    auto a = make_capacity("a");
    a.latency = 20, a.price_per_hour = 0.1, a.max_power = 500, a.bandwidth = 200;
    auto b = make_capacity("b");
    b.latency = 30, b.price_per_hour = 0.2, b.max_power = 1000, b.bandwidth = 100;
    b.idle_power = 150;
    Infrastructure infra({a, b});
    OfferCombination one{{{0, 0, {}}}, {}, 0};
    EXPECT_EQ(aggregate_offer_qos(one, infra), (QoSVector{20, 0.1, 200, 500}));
    OfferCombination two{{{0, 0, {}}, {1, 1, {}}, {0, 2, {}}}, {}, 0};
    auto q = aggregate_offer_qos(two, infra);
    EXPECT_DOUBLE_EQ(q.latency, 50);
    EXPECT_NEAR(q.price, 0.3, 1e-12);
    EXPECT_DOUBLE_EQ(q.energy, 1500);
    EXPECT_DOUBLE_EQ(q.bandwidth, 300);
}

TEST(Reliability, Mean) {
    auto a = make_capacity("a");
    auto b = make_capacity("b");
    a.reliability = 0.8;
    b.reliability = 0.4;
    Infrastructure infra({a, b});
    EXPECT_DOUBLE_EQ(offer_reliability({{{0, 0, {}}, {1, 1, {}}}, {}, 0}, infra), 0.6);
    EXPECT_DOUBLE_EQ(offer_reliability({{{1, 0, {}}, {1, 1, {}}}, {}, 0}, infra), 0.4);
}

TEST(Release, FreesLosersAndRejectsNonReserved) {
    Infrastructure infra({make_capacity("a"), make_capacity("b"), make_capacity("c")});
    auto app = make_app("x", {compute("c1", 2, 2)});
    auto units = units_of(app);
    std::vector<OfferPair> all;
    for (std::size_t a = 0; a < 3; ++a) {
        auto r = first_fit_match(a, app, units, infra);
        all.insert(all.end(), r.begin(), r.end());
    }
    ASSERT_EQ(all.size(), 3u);
    release_reservations({}, infra);
    EXPECT_EQ(infra.count_in(SliceState::reserved), 3u);
    release_reservations(std::span(all).subspan(2), infra);
    EXPECT_EQ(infra.slice(all[2].slice).state, SliceState::free);
    EXPECT_EQ(infra.ledger(2).free_pool(), infra.ledger(2).offerable());

    infra.transition(all[0].slice, SliceState::assigned);
    infra.transition(all[0].slice, SliceState::allocated);
    EXPECT_THROW(release_reservations(std::span(all).first(2), infra), StateError);
    EXPECT_EQ(infra.slice(all[1].slice).state, SliceState::reserved);
}

TEST(Broadcast, MessagesAndWaitForSlowest) {
    std::vector<Capacity> caps;
    for (int i = 0; i < 8; ++i) caps.push_back(make_capacity("n" + std::to_string(i)));
    caps[5].latency = 100;
    Infrastructure infra(caps);
    auto app = make_app("x", {compute("c1", 1, 1)});
    auto units = units_of(app);
    Kernel k;
    std::optional<double> done;
    std::size_t responses = 0;
    broadcast_request(k, infra, 0, app, units, [&](Kernel& kk, std::vector<std::vector<OfferPair>> r) {
        done = kk.now();
        responses = r.size();
    });
    const auto& log = k.run_until_idle();
    ASSERT_TRUE(done);
    EXPECT_EQ(responses, 8u);
    int network = 0, local = 0;
    double last_response = 0;
    std::string last_agent;
    for (const auto& e : log.entries) {
        if (e.kind == EventKind::request_arrival) (e.time > 0 ? network : local)++;
        if (e.kind == EventKind::response_arrival && e.time >= last_response) {
            last_response = e.time;
            last_agent = std::to_string(e.subject.instance);
        }
    }
    EXPECT_EQ(network, 7);
    EXPECT_EQ(local, 1);
    EXPECT_EQ(last_agent, "5");
    EXPECT_NEAR(*done, 2 * transfer_duration(kMessageSizeMb, 1000, 115), 1e-12);
}

TEST(Broadcast, LoneGatewayAnswersItself) {
    Infrastructure infra({make_capacity("n")});
    auto app = make_app("x", {compute("c1", 1, 1)});
    auto units = units_of(app);
    Kernel k;
    bool done = false;
    broadcast_request(k, infra, 0, app, units, [&](Kernel& kk, auto r) {
        done = true;
        EXPECT_EQ(kk.now(), 0.0);
        EXPECT_EQ(r[0].size(), 1u);
    });
    k.run_until_idle();
    EXPECT_TRUE(done);
}
