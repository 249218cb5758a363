#include "swarmsim/kernel.hpp"

#include "swarmsim/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <istream>
#include <ostream>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

namespace swarmsim {

namespace {

constexpr std::array kEventKindNames{
    std::pair{EventKind::submission, "submission"},
    std::pair{EventKind::request_arrival, "request_arrival"},
    std::pair{EventKind::response_arrival, "response_arrival"},
    std::pair{EventKind::offers_ranked, "offers_ranked"},
    std::pair{EventKind::retry, "retry"},
    std::pair{EventKind::rejected, "rejected"},
    std::pair{EventKind::deploy_start, "deploy_start"},
    std::pair{EventKind::lead_sa_launch, "lead_sa_launch"},
    std::pair{EventKind::transfer_complete, "transfer_complete"},
    std::pair{EventKind::unit_deployed, "unit_deployed"},
    std::pair{EventKind::task_start, "task_start"},
    std::pair{EventKind::task_complete, "task_complete"},
};

}  // namespace

std::string_view to_string(EventKind k) noexcept {
    for (const auto& [kind, name] : kEventKindNames) {
        if (kind == k) return name;
    }
    return "?";
}

EventKind event_kind_from_string(std::string_view s) {
    for (const auto& [kind, name] : kEventKindNames) {
        if (name == s) return kind;
    }
    throw std::invalid_argument(fmt::format("unknown event kind '{}'", s));
}

// ---- kernel ----------------------------------------------------------------

void Kernel::schedule(double at, EventKind kind, EventSubject subject, Action action) {
    if (!std::isfinite(at) || at < now_) {
        throw KernelError(fmt::format("cannot schedule {} at t={} before now={}", to_string(kind), at, now_));
    }
    queue_.push({at, next_sequence_++, kind, std::move(subject), std::move(action)});
}

const EventLog& Kernel::run_until_idle() {
    while (!queue_.empty()) {
        // priority_queue::top is const; the action is moved out via a copy of the node.
        Pending ev = queue_.top();
        queue_.pop();
        now_ = ev.time;
        log_.entries.push_back({ev.time, ev.sequence, ev.kind, std::move(ev.subject)});
        try {
            if (ev.action) ev.action(*this);
            if (post_check_) post_check_(*this);
        } catch (const std::exception& e) {
            throw SimulationAborted(fmt::format("t={}: {} handler failed: {}", ev.time, to_string(ev.kind), e.what()),
                                    log_);
        }
    }
    return log_;
}

// ---- trace -----------------------------------------------------------------

void write_trace(std::ostream& out, const EventLog& log) {
    for (const auto& e : log.entries) {
        nlohmann::ordered_json j;
        j["time"] = e.time;
        j["seq"] = e.sequence;
        j["kind"] = to_string(e.kind);
        if (!e.subject.application.empty()) j["app"] = e.subject.application;
        if (!e.subject.node.empty()) j["node"] = e.subject.node;
        if (!e.subject.component.empty()) j["component"] = e.subject.component;
        if (e.subject.instance >= 0) j["instance"] = e.subject.instance;
        if (e.subject.value != 0.0) j["value"] = e.subject.value;
        out << j.dump() << '\n';
    }
    for (const auto& u : log.utilisation) {
        nlohmann::ordered_json j;
        j["interval"] = u.node;
        j["start"] = u.start;
        j["end"] = u.end;
        j["cores"] = u.cpu_cores_busy;
        out << j.dump() << '\n';
    }
}

EventLog read_trace(std::istream& in) {
    EventLog log;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto j = nlohmann::json::parse(line);
        if (j.contains("interval")) {
            log.utilisation.push_back(
                {j.at("interval").get<std::string>(), j.at("start").get<double>(), j.at("end").get<double>(),
                 j.at("cores").get<int>()});
            continue;
        }
        LogEntry e;
        e.time = j.at("time").get<double>();
        e.sequence = j.at("seq").get<std::uint64_t>();
        e.kind = event_kind_from_string(j.at("kind").get<std::string>());
        e.subject.application = j.value("app", "");
        e.subject.node = j.value("node", "");
        e.subject.component = j.value("component", "");
        e.subject.instance = j.value("instance", -1);
        e.subject.value = j.value("value", 0.0);
        log.entries.push_back(std::move(e));
    }
    return log;
}

// ---- network & energy models ------------------------------------------------

double transfer_duration(double size_mb, double path_bandwidth_mbps, double path_latency_ms) {
    if (!(path_bandwidth_mbps > 0)) {
        throw std::invalid_argument("transfer_duration: bandwidth must be > 0");
    }
    if (!(size_mb >= 0) || !(path_latency_ms >= 0)) {
        throw std::invalid_argument("transfer_duration: size and latency must be >= 0");
    }
    return path_latency_ms / 1000.0 + size_mb * 8.0 / path_bandwidth_mbps;
}

double node_power(const Capacity& capacity, double utilisation) {
    if (!(utilisation >= 0.0 && utilisation <= 1.0)) {
        throw std::invalid_argument(fmt::format("node_power: utilisation {} outside [0,1]", utilisation));
    }
    return capacity.idle_power + (capacity.max_power - capacity.idle_power) * utilisation;
}

std::optional<EnergyWindow> energy_window(const EventLog& log) {
    std::optional<double> first_submit;
    std::optional<double> last_task;
    double last_event = 0.0;
    for (const auto& e : log.entries) {
        last_event = std::max(last_event, e.time);
        if (e.kind == EventKind::submission && (!first_submit || e.time < *first_submit)) first_submit = e.time;
        if (e.kind == EventKind::task_complete && (!last_task || e.time > *last_task)) last_task = e.time;
    }
    if (!first_submit) return std::nullopt;
    return EnergyWindow{*first_submit, std::max(*first_submit, last_task.value_or(last_event))};
}

double cumulative_energy(const EventLog& log, const Capacity& capacity, const EnergyWindow& window, double t) {
    const double until = std::clamp(t, window.start, window.end);
    // Idle baseline plus the dynamic share of each busy interval overlapping [start, until].
    double joules = capacity.idle_power * (until - window.start);
    const double per_core = (capacity.max_power - capacity.idle_power) / static_cast<double>(capacity.cpu_total);
    for (const auto& u : log.utilisation) {
        if (u.node != capacity.id) continue;
        const double lo = std::max(u.start, window.start);
        const double hi = std::min(u.end, until);
        if (hi > lo) joules += per_core * u.cpu_cores_busy * (hi - lo);
    }
    return joules / kJoulesPerKWh;
}

std::map<std::string, double> accumulate_energy(const EventLog& log, const std::vector<Capacity>& capacities) {
    std::map<std::string, double> out;
    if (log.entries.empty()) return out;
    const auto window = energy_window(log);
    for (const auto& cap : capacities) {
        out[cap.id] = window ? cumulative_energy(log, cap, *window, window->end) : 0.0;
    }
    return out;
}

}  // namespace swarmsim
