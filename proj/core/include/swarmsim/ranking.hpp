#pragma once

#include "swarmsim/model.hpp"
#include "swarmsim/offers.hpp"
#include "swarmsim/rng.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace swarmsim {

enum class RankingMethod { cost, borda, random };
enum class ReliabilityMode { none, additive, multiplicative };

[[nodiscard]] std::string_view to_string(RankingMethod m) noexcept;
[[nodiscard]] std::string_view to_string(ReliabilityMode m) noexcept;
[[nodiscard]] RankingMethod ranking_method_from_string(std::string_view s);
[[nodiscard]] ReliabilityMode reliability_mode_from_string(std::string_view s);

struct RankedEntry {
    std::size_t offer = 0;  // index into the ranked offer list
    double score = 0.0;
};

/// Best-first. For cost, lower scores are better; for Borda, higher.
struct RankedOffers {
    std::vector<RankedEntry> entries;
    RankingMethod method = RankingMethod::cost;
    ReliabilityMode reliability_mode = ReliabilityMode::none;

    [[nodiscard]] std::size_t winner() const { return entries.at(0).offer; }
};

/// Min-max scaling to [0,1]; `invert` maps v -> 1 - v. All zeros when every value is equal,
/// inverted or not.
[[nodiscard]] std::vector<double> normalize_attribute(std::span<const double> values, bool invert);

/// Positional scores n-1..0 in preference order; ties share the best score of their group.
[[nodiscard]] std::vector<double> borda_scores(std::span<const double> values, bool higher_is_better);

/// Stable content hash of a combination's (agent, unit) pairs. Used for tie-breaking.
[[nodiscard]] std::uint64_t offer_content_hash(const OfferCombination& combo);

[[nodiscard]] RankedOffers cost_rank(std::span<const OfferCombination> offers, const PriorityVector& priorities,
                                     ReliabilityMode mode);

[[nodiscard]] RankedOffers borda_rank(std::span<const OfferCombination> offers, const PriorityVector& priorities,
                                      ReliabilityMode mode);

[[nodiscard]] RankedOffers random_rank(std::span<const OfferCombination> offers, Rng& rng);

}  // namespace swarmsim
