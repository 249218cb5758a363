#pragma once

#include "swarmsim/model.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <iosfwd>
#include <map>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

namespace swarmsim {

enum class EventKind {
    submission,
    request_arrival,
    response_arrival,
    offers_ranked,
    retry,
    rejected,
    deploy_start,
    lead_sa_launch,
    transfer_complete,
    unit_deployed,
    task_start,
    task_complete,
};

[[nodiscard]] std::string_view to_string(EventKind k) noexcept;
[[nodiscard]] EventKind event_kind_from_string(std::string_view s);

/// What an event is about. Unused fields stay empty / -1.
struct EventSubject {
    std::string application;
    std::string node;  // capacity id
    std::string component;
    int instance = -1;
    double value = 0.0;  // kind-specific scalar (cores, seconds, count)

    friend bool operator==(const EventSubject&, const EventSubject&) = default;
};

struct LogEntry {
    double time = 0.0;
    std::uint64_t sequence = 0;
    EventKind kind = EventKind::submission;
    EventSubject subject;

    friend bool operator==(const LogEntry&, const LogEntry&) = default;
};

struct UtilisationInterval {
    std::string node;
    double start = 0.0;
    double end = 0.0;
    int cpu_cores_busy = 0;

    friend bool operator==(const UtilisationInterval&, const UtilisationInterval&) = default;
};

struct EventLog {
    std::vector<LogEntry> entries;
    std::vector<UtilisationInterval> utilisation;

    friend bool operator==(const EventLog&, const EventLog&) = default;
};

/// Newline-delimited JSON trace; one object per entry, then one per interval.
void write_trace(std::ostream& out, const EventLog& log);
[[nodiscard]] EventLog read_trace(std::istream& in);

/// Handler failure inside run_until_idle. Carries the log up to the failing event.
class SimulationAborted : public std::runtime_error {
public:
    SimulationAborted(const std::string& what, EventLog partial)
        : std::runtime_error(what), partial_(std::move(partial)) {}
    [[nodiscard]] const EventLog& partial_log() const noexcept { return partial_; }

private:
    EventLog partial_;
};

/// Single-threaded discrete-event engine. Events execute in (time, sequence) order.
class Kernel {
public:
    using Action = std::function<void(Kernel&)>;

    [[nodiscard]] double now() const noexcept { return now_; }

    /// Enqueue an event at absolute time `at`. Throws KernelError if `at` < now().
    void schedule(double at, EventKind kind, EventSubject subject, Action action = {});
    void schedule_in(double delay, EventKind kind, EventSubject subject, Action action = {}) {
        schedule(now_ + delay, kind, std::move(subject), std::move(action));
    }

    /// Record a utilisation interval for energy accounting.
    void record_utilisation(UtilisationInterval interval) { log_.utilisation.push_back(std::move(interval)); }

    /// Called after every executed event; throwing from it aborts the run.
    void set_post_event_check(std::function<void(const Kernel&)> check) { post_check_ = std::move(check); }

    /// Drain the queue. On a handler error throws SimulationAborted with the partial log.
    const EventLog& run_until_idle();

    [[nodiscard]] const EventLog& log() const noexcept { return log_; }
    [[nodiscard]] std::size_t pending() const noexcept { return queue_.size(); }

private:
    struct Pending {
        double time;
        std::uint64_t sequence;
        EventKind kind;
        EventSubject subject;
        Action action;
    };
    struct Later {
        bool operator()(const Pending& a, const Pending& b) const noexcept {
            return a.time != b.time ? a.time > b.time : a.sequence > b.sequence;
        }
    };

    double now_ = 0.0;
    std::uint64_t next_sequence_ = 0;
    std::priority_queue<Pending, std::vector<Pending>, Later> queue_;
    EventLog log_;
    std::function<void(const Kernel&)> post_check_;
};

/// latency/1000 + size*8/bandwidth seconds.
[[nodiscard]] double transfer_duration(double size_mb, double path_bandwidth_mbps, double path_latency_ms);

/// Bottleneck bandwidth and summed latency between two nodes.
[[nodiscard]] inline double path_bandwidth(const Capacity& a, const Capacity& b) noexcept {
    return a.bandwidth < b.bandwidth ? a.bandwidth : b.bandwidth;
}
[[nodiscard]] inline double path_latency(const Capacity& a, const Capacity& b) noexcept {
    return a.latency + b.latency;
}

/// Linear idle-to-max power curve.
[[nodiscard]] double node_power(const Capacity& capacity, double utilisation);

/// [first submission, last task completion]; falls back to the last event when no task ran.
struct EnergyWindow {
    double start = 0.0;
    double end = 0.0;
    [[nodiscard]] double length() const noexcept { return end - start; }
};
[[nodiscard]] std::optional<EnergyWindow> energy_window(const EventLog& log);

/// Cumulative kWh drawn by `capacity` from window.start to `t` (clamped to the window).
[[nodiscard]] double cumulative_energy(const EventLog& log, const Capacity& capacity, const EnergyWindow& window,
                                       double t);

/// Per-node kWh over the energy window, keyed by capacity id. Empty log -> empty map.
[[nodiscard]] std::map<std::string, double> accumulate_energy(const EventLog& log,
                                                              const std::vector<Capacity>& capacities);

inline constexpr double kJoulesPerKWh = 3.6e6;

}  // namespace swarmsim
