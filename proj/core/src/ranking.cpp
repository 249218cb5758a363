#include "swarmsim/ranking.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <fmt/format.h>

namespace swarmsim {

std::string_view to_string(RankingMethod m) noexcept {
    switch (m) {
        case RankingMethod::cost: return "cost";
        case RankingMethod::borda: return "borda";
        case RankingMethod::random: return "random";
    }
    return "?";
}

std::string_view to_string(ReliabilityMode m) noexcept {
    switch (m) {
        case ReliabilityMode::none: return "none";
        case ReliabilityMode::additive: return "additive";
        case ReliabilityMode::multiplicative: return "multiplicative";
    }
    return "?";
}

RankingMethod ranking_method_from_string(std::string_view s) {
    for (auto m : {RankingMethod::cost, RankingMethod::borda, RankingMethod::random}) {
        if (to_string(m) == s) return m;
    }
    throw std::invalid_argument(fmt::format("unknown ranking method '{}'", s));
}

ReliabilityMode reliability_mode_from_string(std::string_view s) {
    for (auto m : {ReliabilityMode::none, ReliabilityMode::additive, ReliabilityMode::multiplicative}) {
        if (to_string(m) == s) return m;
    }
    throw std::invalid_argument(fmt::format("unknown reliability mode '{}'", s));
}

std::vector<double> normalize_attribute(std::span<const double> values, bool invert) {
    if (values.empty()) {
        throw std::invalid_argument("normalize_attribute: empty input");
    }
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    const double min = *lo;
    const double range = *hi - *lo;
    std::vector<double> out;
    out.reserve(values.size());
    for (double v : values) {
        if (range == 0.0) {
            out.push_back(0.0);  // no spread, no preference either way
            continue;
        }
        const double n = (v - min) / range;
        out.push_back(invert ? 1.0 - n : n);
    }
    return out;
}

std::vector<double> borda_scores(std::span<const double> values, bool higher_is_better) {
    const auto n = values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return higher_is_better ? values[a] > values[b] : values[a] < values[b];
    });
    std::vector<double> scores(n, 0.0);
    std::size_t group_start = 0;
    for (std::size_t pos = 0; pos < n; ++pos) {
        if (pos > 0 && values[order[pos]] != values[order[pos - 1]]) group_start = pos;
        scores[order[pos]] = static_cast<double>(n - 1 - group_start);
    }
    return scores;
}

std::uint64_t offer_content_hash(const OfferCombination& combo) {
    std::uint64_t h = fnv1a({});
    for (const auto& p : combo.pairs) {
        h = fnv1a(fmt::format("{}:{};", p.agent, p.unit), h);
    }
    return h;
}

namespace {

void check_offers(std::span<const OfferCombination> offers, const char* who) {
    if (offers.empty()) {
        throw std::invalid_argument(fmt::format("{}: no offers to rank", who));
    }
}

/// Sort best-first; ties by content hash, then input order.
RankedOffers finish(std::span<const OfferCombination> offers, std::vector<double> scores, bool lower_is_better,
                    RankingMethod method, ReliabilityMode mode) {
    std::vector<std::uint64_t> hashes;
    hashes.reserve(offers.size());
    for (const auto& o : offers) hashes.push_back(offer_content_hash(o));

    RankedOffers ranked{{}, method, mode};
    ranked.entries.reserve(offers.size());
    for (std::size_t i = 0; i < offers.size(); ++i) ranked.entries.push_back({i, scores[i]});
    std::stable_sort(ranked.entries.begin(), ranked.entries.end(), [&](const RankedEntry& a, const RankedEntry& b) {
        if (a.score != b.score) return lower_is_better ? a.score < b.score : a.score > b.score;
        return hashes[a.offer] < hashes[b.offer];
    });
    return ranked;
}

struct AttributeColumns {
    std::vector<double> latency, price, bandwidth, energy, reliability;
};

AttributeColumns columns(std::span<const OfferCombination> offers) {
    AttributeColumns c;
    for (const auto& o : offers) {
        c.latency.push_back(o.qos.latency);
        c.price.push_back(o.qos.price);
        c.bandwidth.push_back(o.qos.bandwidth);
        c.energy.push_back(o.qos.energy);
        c.reliability.push_back(o.reliability);
    }
    return c;
}

}  // namespace

RankedOffers cost_rank(std::span<const OfferCombination> offers, const PriorityVector& p, ReliabilityMode mode) {
    check_offers(offers, "cost_rank");
    const auto cols = columns(offers);
    const auto lat = normalize_attribute(cols.latency, false);
    const auto price = normalize_attribute(cols.price, false);
    const auto bw = normalize_attribute(cols.bandwidth, true);
    const auto energy = normalize_attribute(cols.energy, false);

    std::vector<double> scores(offers.size());
    for (std::size_t i = 0; i < offers.size(); ++i) {
        const double total = p.latency * lat[i] + p.price * price[i] + p.bandwidth * bw[i] + p.energy * energy[i];
        const double r = offers[i].reliability;
        switch (mode) {
            case ReliabilityMode::none: scores[i] = total; break;
            case ReliabilityMode::additive: scores[i] = total - r; break;
            case ReliabilityMode::multiplicative: scores[i] = (1.0 - r) * total; break;
        }
    }
    return finish(offers, std::move(scores), true, RankingMethod::cost, mode);
}

RankedOffers borda_rank(std::span<const OfferCombination> offers, const PriorityVector& p, ReliabilityMode mode) {
    check_offers(offers, "borda_rank");
    const auto cols = columns(offers);
    const auto lat = borda_scores(cols.latency, false);
    const auto price = borda_scores(cols.price, false);
    const auto bw = borda_scores(cols.bandwidth, true);
    const auto energy = borda_scores(cols.energy, false);
    const auto rel = borda_scores(cols.reliability, true);

    std::vector<double> scores(offers.size());
    for (std::size_t i = 0; i < offers.size(); ++i) {
        const double weighted = p.latency * lat[i] + p.price * price[i] + p.bandwidth * bw[i] + p.energy * energy[i];
        switch (mode) {
            case ReliabilityMode::none: scores[i] = weighted; break;
            case ReliabilityMode::additive: scores[i] = rel[i] + weighted; break;
            case ReliabilityMode::multiplicative: scores[i] = offers[i].reliability * weighted; break;
        }
    }
    return finish(offers, std::move(scores), false, RankingMethod::borda, mode);
}

RankedOffers random_rank(std::span<const OfferCombination> offers, Rng& rng) {
    check_offers(offers, "random_rank");
    std::vector<std::size_t> perm(offers.size());
    std::iota(perm.begin(), perm.end(), 0);
    rng.shuffle(perm.begin(), perm.end());
    RankedOffers ranked{{}, RankingMethod::random, ReliabilityMode::none};
    ranked.entries.reserve(perm.size());
    for (std::size_t pos = 0; pos < perm.size(); ++pos) {
        ranked.entries.push_back({perm[pos], static_cast<double>(pos)});
    }
    return ranked;
}

}  // namespace swarmsim
