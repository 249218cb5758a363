#include "swarmsim/model.hpp"

#include "swarmsim/errors.hpp"

#include <cmath>
#include <set>

#include <fmt/format.h>

namespace swarmsim {

ValidationError::ValidationError(std::vector<std::string> violations)
    : std::runtime_error([&] {
          std::string msg = "validation failed:";
          for (const auto& v : violations) {
              msg += "\n  - ";
              msg += v;
          }
          return msg;
      }()),
      violations_(std::move(violations)) {}

CombinationOverflow::CombinationOverflow(double requested, std::size_t guard)
    : std::runtime_error(fmt::format("offer combination count {:.0f} exceeds guard {}", requested, guard)),
      requested_(requested),
      guard_(guard) {}

std::string_view to_string(SliceState s) noexcept {
    switch (s) {
        case SliceState::free: return "free";
        case SliceState::reserved: return "reserved";
        case SliceState::assigned: return "assigned";
        case SliceState::allocated: return "allocated";
    }
    return "?";
}

std::string_view to_string(ComponentKind k) noexcept {
    return k == ComponentKind::compute ? "compute" : "storage";
}

std::string_view to_string(Tier t) noexcept { return t == Tier::cloud ? "cloud" : "edge"; }

bool is_legal_transition(SliceState from, SliceState to) noexcept {
    using S = SliceState;
    return (from == S::free && to == S::reserved) || (from == S::reserved && to == S::free) ||
           (from == S::reserved && to == S::assigned) || (from == S::assigned && to == S::allocated);
}

std::vector<PlacementUnit> expand_units(const Application& app) {
    std::vector<PlacementUnit> units;
    for (std::size_t c = 0; c < app.components.size(); ++c) {
        const auto& comp = app.components[c];
        if (comp.kind == ComponentKind::storage) {
            units.push_back({c, 0, comp.kind, {0, 0, comp.storage_size}, 0.0});
            continue;
        }
        for (int i = 0; i < comp.instances; ++i) {
            units.push_back({c, i, comp.kind, {comp.cpu, comp.ram, 0}, comp.image_size});
        }
    }
    return units;
}

// ---- CapacityLedger ---------------------------------------------------------

std::optional<std::size_t> CapacityLedger::reserve(const Resources& demand, UnitRef unit) {
    if (!demand.non_negative() || !demand.fits_within(free_)) {
        return std::nullopt;
    }
    free_ -= demand;
    slices_.push_back({demand, SliceState::reserved, std::move(unit)});
    return slices_.size() - 1;
}

void CapacityLedger::transition(std::size_t idx, SliceState to) {
    auto& s = slices_.at(idx);
    if (!is_legal_transition(s.state, to)) {
        throw StateError(fmt::format("illegal slice transition {} -> {}", to_string(s.state), to_string(to)));
    }
    if (to == SliceState::free) {
        free_ += s.resources;
        s.bound.reset();
    }
    s.state = to;
}

Resources CapacityLedger::total_in(SliceState state) const noexcept {
    if (state == SliceState::free) {
        return free_;
    }
    Resources sum;
    for (const auto& s : slices_) {
        if (s.state == state) {
            sum += s.resources;
        }
    }
    return sum;
}

bool CapacityLedger::balanced() const noexcept {
    Resources held;
    for (const auto& s : slices_) {
        if (s.state != SliceState::free) {
            if (!s.bound) return false;
            held += s.resources;
        } else if (s.bound) {
            return false;
        }
    }
    return free_.non_negative() && free_ + held == offerable_;
}

// ---- Infrastructure ---------------------------------------------------------

Infrastructure::Infrastructure(std::vector<Capacity> capacities, std::vector<bool> ascending_mask)
    : capacities_(std::move(capacities)) {
    const auto n = capacities_.size();
    if (!ascending_mask.empty() && ascending_mask.size() != n) {
        throw ConfigError("sort-direction mask does not match the capacity count");
    }
    std::vector<std::string> errors;
    for (std::size_t i = 0; i < n; ++i) {
        const auto& cap = capacities_[i];
        try {
            validate(cap);
        } catch (const ValidationError& e) {
            errors.insert(errors.end(), e.violations().begin(), e.violations().end());
        }
        if (!index_.emplace(cap.id, i).second) {
            errors.push_back(fmt::format("duplicate capacity id '{}'", cap.id));
        }
        ledgers_.emplace_back(cap.offerable());
        const bool asc = ascending_mask.empty() ? i < (n + 1) / 2 : ascending_mask[i];
        agents_.push_back({"ra-" + cap.id, i, asc ? SortDirection::ascending : SortDirection::descending});
    }
    if (!errors.empty()) {
        throw ValidationError(std::move(errors));
    }
}

std::optional<std::size_t> Infrastructure::find_capacity(std::string_view id) const {
    auto it = index_.find(std::string(id));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

bool Infrastructure::balanced() const noexcept {
    for (const auto& l : ledgers_) {
        if (!l.balanced()) return false;
    }
    return true;
}

std::size_t Infrastructure::count_in(SliceState state) const noexcept {
    std::size_t n = 0;
    for (const auto& l : ledgers_) {
        for (const auto& s : l.slices()) {
            if (s.state == state) ++n;
        }
    }
    return n;
}

// ---- classification & validation -------------------------------------------

Tier classify_tier(const Capacity& capacity, const CapacityRanges& r) {
    auto norm = [&](int v, int lo, int hi, const char* field) {
        if (v < lo || v > hi) {
            throw ClassificationError(
                fmt::format("capacity '{}' {} = {} outside [{}, {}]", capacity.id, field, v, lo, hi));
        }
        return hi == lo ? 0.0 : static_cast<double>(v - lo) / static_cast<double>(hi - lo);
    };
    const double mean = (norm(capacity.cpu_total, r.cpu_min, r.cpu_max, "cpu_total") +
                         norm(capacity.ram_total, r.ram_min, r.ram_max, "ram_total") +
                         norm(capacity.storage_total, r.storage_min, r.storage_max, "storage_total")) /
                        3.0;
    return mean >= 0.5 ? Tier::cloud : Tier::edge;
}

void validate(const Application& app) {
    std::vector<std::string> v;
    if (app.id.empty()) v.emplace_back("application id must not be empty");
    if (app.components.empty()) v.push_back(fmt::format("application '{}' has no components", app.id));
    if (!std::isfinite(app.submit_time) || app.submit_time < 0) {
        v.push_back(fmt::format("application '{}': submit_time >= 0 violated", app.id));
    }
    const auto& p = app.priorities;
    for (double w : {p.latency, p.price, p.bandwidth, p.energy}) {
        if (!std::isfinite(w) || w < 0) {
            v.push_back(fmt::format("application '{}': priority weights must be finite and >= 0", app.id));
            break;
        }
    }
    if (!(p.latency > 0 || p.price > 0 || p.bandwidth > 0 || p.energy > 0)) {
        v.push_back(fmt::format("application '{}': at least one priority weight must be > 0", app.id));
    }
    for (int r : app.unavailable_ranks) {
        if (r < 1) v.push_back(fmt::format("application '{}': unavailable rank {} < 1", app.id, r));
    }
    std::set<std::string> seen;
    for (const auto& c : app.components) {
        const auto where = fmt::format("component '{}/{}'", app.id, c.id);
        if (c.id.empty()) v.push_back(fmt::format("application '{}': component id must not be empty", app.id));
        if (!seen.insert(c.id).second) v.push_back(fmt::format("{}: duplicate component id", where));
        if (c.kind == ComponentKind::compute) {
            if (c.cpu < 1) v.push_back(fmt::format("{}: cpu >= 1 violated", where));
            if (c.ram < 1) v.push_back(fmt::format("{}: ram >= 1 violated", where));
            if (!(c.image_size >= 1)) v.push_back(fmt::format("{}: image_size >= 1 violated", where));
            if (c.instances < 1) v.push_back(fmt::format("{}: instances >= 1 violated", where));
            if (c.storage_size != 0) v.push_back(fmt::format("{}: compute component carries storage_size", where));
        } else {
            if (c.storage_size < 1) v.push_back(fmt::format("{}: storage_size >= 1 violated", where));
            if (c.cpu != 0 || c.ram != 0 || c.image_size != 0 || c.instances != 1) {
                v.push_back(fmt::format("{}: storage component carries compute fields", where));
            }
        }
    }
    if (!v.empty()) throw ValidationError(std::move(v));
}

void validate(const Capacity& c) {
    std::vector<std::string> v;
    const auto where = fmt::format("capacity '{}'", c.id);
    if (c.id.empty()) v.emplace_back("capacity id must not be empty");
    if (c.cpu_total <= kAgentFootprint.cpu) v.push_back(fmt::format("{}: cpu_total must exceed the agent footprint", where));
    if (c.ram_total <= kAgentFootprint.ram) v.push_back(fmt::format("{}: ram_total must exceed the agent footprint", where));
    if (c.storage_total <= 0) v.push_back(fmt::format("{}: storage_total > 0 violated", where));
    if (!(c.idle_power >= 0 && c.idle_power < c.max_power)) v.push_back(fmt::format("{}: idle_power < max_power violated", where));
    if (!(c.bandwidth > 0) || !std::isfinite(c.bandwidth)) v.push_back(fmt::format("{}: bandwidth > 0 violated", where));
    if (!(c.latency >= 0) || !std::isfinite(c.latency)) v.push_back(fmt::format("{}: latency >= 0 violated", where));
    if (!(c.price_per_hour >= 0) || !std::isfinite(c.price_per_hour)) v.push_back(fmt::format("{}: price_per_hour >= 0 violated", where));
    if (!(c.reliability >= 0 && c.reliability <= 1)) v.push_back(fmt::format("{}: reliability in [0,1] violated", where));
    if (!std::isfinite(c.max_power)) v.push_back(fmt::format("{}: max_power must be finite", where));
    if (!v.empty()) throw ValidationError(std::move(v));
}

}  // namespace swarmsim
