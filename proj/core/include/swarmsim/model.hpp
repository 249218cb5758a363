#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace swarmsim {

enum class ComponentKind { compute, storage };

struct Component {
    std::string id;
    ComponentKind kind = ComponentKind::compute;
    int cpu = 0;              // cores
    int ram = 0;              // GB
    double image_size = 0.0;  // MB
    int storage_size = 0;     // GB
    int instances = 1;
    std::optional<std::string> provider;
    std::optional<std::string> location;

    friend bool operator==(const Component&, const Component&) = default;
};

/// QoS weights. At least one must be positive.
struct PriorityVector {
    double latency = 1.0;
    double price = 1.0;
    double bandwidth = 1.0;
    double energy = 1.0;

    friend bool operator==(const PriorityVector&, const PriorityVector&) = default;
};

struct Application {
    std::string id;
    std::vector<Component> components;
    PriorityVector priorities;
    double submit_time = 0.0;
    /// 1-based ranks of offers that fail confirmation. Scenario-level fault injection
    /// that drives the next-ranked fallback.
    std::vector<int> unavailable_ranks;

    friend bool operator==(const Application&, const Application&) = default;
};

/// Aggregated offer attributes. Energy is the summed max power of the hosts.
struct QoSVector {
    double latency = 0.0;    // ms
    double price = 0.0;      // EUR/hour
    double bandwidth = 0.0;  // Mbps
    double energy = 0.0;     // W

    friend bool operator==(const QoSVector&, const QoSVector&) = default;
};

struct Resources {
    int cpu = 0;
    int ram = 0;
    int storage = 0;

    [[nodiscard]] bool fits_within(const Resources& pool) const noexcept {
        return cpu <= pool.cpu && ram <= pool.ram && storage <= pool.storage;
    }
    [[nodiscard]] bool non_negative() const noexcept { return cpu >= 0 && ram >= 0 && storage >= 0; }

    Resources& operator+=(const Resources& o) noexcept {
        cpu += o.cpu;
        ram += o.ram;
        storage += o.storage;
        return *this;
    }
    Resources& operator-=(const Resources& o) noexcept {
        cpu -= o.cpu;
        ram -= o.ram;
        storage -= o.storage;
        return *this;
    }
    friend Resources operator+(Resources a, const Resources& b) noexcept { return a += b; }
    friend Resources operator-(Resources a, const Resources& b) noexcept { return a -= b; }
    friend bool operator==(const Resources&, const Resources&) = default;
};

/// Resource share of the virtualised Resource Agent on every node.
inline constexpr Resources kAgentFootprint{1, 1, 0};

struct Capacity {
    std::string id;
    std::string provider;
    std::string location;
    int cpu_total = 0;
    int ram_total = 0;
    int storage_total = 0;
    double idle_power = 0.0;      // W
    double max_power = 0.0;       // W
    double latency = 0.0;         // ms
    double bandwidth = 0.0;       // Mbps
    double price_per_hour = 0.0;  // EUR
    double reliability = 1.0;

    [[nodiscard]] Resources totals() const noexcept { return {cpu_total, ram_total, storage_total}; }
    [[nodiscard]] Resources offerable() const noexcept { return totals() - kAgentFootprint; }

    friend bool operator==(const Capacity&, const Capacity&) = default;
};

enum class SliceState { free, reserved, assigned, allocated };

[[nodiscard]] std::string_view to_string(SliceState s) noexcept;
[[nodiscard]] std::string_view to_string(ComponentKind k) noexcept;

/// Which placement unit a slice is held for.
struct UnitRef {
    std::string application;
    std::string component;
    int instance = 0;

    friend bool operator==(const UnitRef&, const UnitRef&) = default;
};

struct CapacitySlice {
    Resources resources;
    SliceState state = SliceState::free;
    std::optional<UnitRef> bound;
};

struct SliceId {
    std::size_t capacity = 0;
    std::size_t slice = 0;

    friend bool operator==(const SliceId&, const SliceId&) = default;
    friend auto operator<=>(const SliceId&, const SliceId&) = default;
};

[[nodiscard]] bool is_legal_transition(SliceState from, SliceState to) noexcept;

enum class SortDirection { ascending, descending };

struct ResourceAgent {
    std::string id;
    std::size_t capacity = 0;  // index into Infrastructure::capacities()
    SortDirection direction = SortDirection::ascending;
};

/// One instance of a compute component, or one storage component.
struct PlacementUnit {
    std::size_t component = 0;  // index into Application::components
    int instance = 0;
    ComponentKind kind = ComponentKind::compute;
    Resources demand;
    double image_size = 0.0;
};

[[nodiscard]] std::vector<PlacementUnit> expand_units(const Application& app);

/// Lifecycle bookkeeping for one capacity's offerable pool.
class CapacityLedger {
public:
    explicit CapacityLedger(Resources offerable) : offerable_(offerable), free_(offerable) {}

    [[nodiscard]] const Resources& offerable() const noexcept { return offerable_; }
    [[nodiscard]] const Resources& free_pool() const noexcept { return free_; }
    [[nodiscard]] const std::vector<CapacitySlice>& slices() const noexcept { return slices_; }
    [[nodiscard]] const CapacitySlice& slice(std::size_t idx) const { return slices_.at(idx); }

    /// Carves a reserved slice out of the free pool. Returns nullopt if it does not fit.
    std::optional<std::size_t> reserve(const Resources& demand, UnitRef unit);

    /// Moves a slice along the lifecycle. Throws StateError on an illegal move.
    void transition(std::size_t idx, SliceState to);

    /// Sum of slice resources currently in `state` (free = the unclaimed pool).
    [[nodiscard]] Resources total_in(SliceState state) const noexcept;

    /// free + reserved + assigned + allocated == offerable and free >= 0.
    [[nodiscard]] bool balanced() const noexcept;

private:
    Resources offerable_;
    Resources free_;
    std::vector<CapacitySlice> slices_;
};

/// Registered capacities, their agents and slice ledgers.
class Infrastructure {
public:
    Infrastructure() = default;
    /// Registers each capacity with one agent. Sort directions alternate according to
    /// `ascending_mask`; an empty mask means the first ceil(n/2) agents sort ascending.
    explicit Infrastructure(std::vector<Capacity> capacities, std::vector<bool> ascending_mask = {});

    [[nodiscard]] const std::vector<Capacity>& capacities() const noexcept { return capacities_; }
    [[nodiscard]] const std::vector<ResourceAgent>& agents() const noexcept { return agents_; }
    [[nodiscard]] const Capacity& capacity(std::size_t idx) const { return capacities_.at(idx); }
    [[nodiscard]] std::optional<std::size_t> find_capacity(std::string_view id) const;

    [[nodiscard]] CapacityLedger& ledger(std::size_t idx) { return ledgers_.at(idx); }
    [[nodiscard]] const CapacityLedger& ledger(std::size_t idx) const { return ledgers_.at(idx); }
    [[nodiscard]] const CapacitySlice& slice(SliceId id) const { return ledgers_.at(id.capacity).slice(id.slice); }
    void transition(SliceId id, SliceState to) { ledgers_.at(id.capacity).transition(id.slice, to); }

    [[nodiscard]] bool balanced() const noexcept;
    [[nodiscard]] std::size_t count_in(SliceState state) const noexcept;

private:
    std::vector<Capacity> capacities_;
    std::vector<CapacityLedger> ledgers_;
    std::vector<ResourceAgent> agents_;
    std::unordered_map<std::string, std::size_t> index_;
};

/// Min/max bounds used for capacity generation and tier classification.
struct CapacityRanges {
    int cpu_min = 16, cpu_max = 100;
    int ram_min = 16, ram_max = 100;
    int storage_min = 16, storage_max = 100;
};

enum class Tier { edge, cloud };
[[nodiscard]] std::string_view to_string(Tier t) noexcept;

/// Cloud when the mean min-max normalised (cpu, ram, storage) is at least 0.5.
[[nodiscard]] Tier classify_tier(const Capacity& capacity, const CapacityRanges& ranges);

/// Checks Component/Application/PriorityVector invariants; throws ValidationError listing all.
void validate(const Application& app);
void validate(const Capacity& capacity);

}  // namespace swarmsim
