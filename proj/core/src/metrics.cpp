#include "swarmsim/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace swarmsim {

MetricsReport compute_metrics(const EventLog& log, const std::vector<Capacity>& capacities) {
    MetricsReport report;
    const auto window = energy_window(log);
    if (!window) return report;

    std::map<std::string, double> submitted_at;
    std::map<std::string, std::vector<double>> unit_delays;
    std::map<std::string, double> first_allocation;  // capacity id -> s
    for (const auto& e : log.entries) {
        const auto& s = e.subject;
        switch (e.kind) {
            case EventKind::submission:
                submitted_at.try_emplace(s.application, e.time);
                break;
            case EventKind::unit_deployed:
                unit_delays[s.application].push_back(e.time - submitted_at.at(s.application));
                first_allocation.try_emplace(s.node, e.time);
                break;
            case EventKind::rejected:
                ++report.rejected_applications;
                break;
            default:
                break;
        }
    }

    report.simulation_time = window->length() / 60.0;

    double app_mean_sum = 0.0;
    for (const auto& [app, delays] : unit_delays) {
        double sum = 0.0;
        for (double d : delays) sum += d;
        const double mean_min = sum / static_cast<double>(delays.size()) / 60.0;
        report.per_application[app] = mean_min;
        app_mean_sum += mean_min;
    }
    if (!unit_delays.empty()) {
        report.avg_deployment_time = app_mean_sum / static_cast<double>(unit_delays.size());
    }

    for (const auto& cap : capacities) {
        auto it = first_allocation.find(cap.id);
        if (it == first_allocation.end()) continue;
        const double hours = std::max(0.0, window->end - it->second) / 3600.0;
        report.total_price += cap.price_per_hour * hours;
    }

    report.per_node_energy = accumulate_energy(log, capacities);
    for (const auto& [_, kwh] : report.per_node_energy) report.total_energy += kwh;
    return report;
}

std::map<std::string, std::vector<EnergySample>> per_node_energy_series(const EventLog& log,
                                                                        const std::vector<Capacity>& capacities,
                                                                        double step) {
    if (!(step > 0) || !std::isfinite(step)) {
        throw std::invalid_argument("per_node_energy_series: step must be > 0");
    }
    std::map<std::string, std::vector<EnergySample>> out;
    const auto window = energy_window(log);
    if (!window) return out;

    std::vector<double> times;
    const auto whole_steps = static_cast<long long>(std::floor(window->length() / step));
    for (long long k = 0; k <= whole_steps; ++k) {
        times.push_back(window->start + static_cast<double>(k) * step);
    }
    if (times.back() < window->end) times.push_back(window->end);

    for (const auto& cap : capacities) {
        auto& series = out[cap.id];
        series.reserve(times.size());
        for (double t : times) series.push_back({t, cumulative_energy(log, cap, *window, t)});
    }
    return out;
}

}  // namespace swarmsim
