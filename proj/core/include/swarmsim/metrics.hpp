#pragma once

#include "swarmsim/kernel.hpp"
#include "swarmsim/model.hpp"

#include <map>
#include <string>
#include <vector>

namespace swarmsim {

struct MetricsReport {
    double simulation_time = 0.0;      // min
    double total_price = 0.0;          // EUR
    double avg_deployment_time = 0.0;  // min
    double total_energy = 0.0;         // kWh
    std::map<std::string, double> per_application;  // avg unit deployment time, min
    std::map<std::string, double> per_node_energy;  // kWh
    int rejected_applications = 0;

    friend bool operator==(const MetricsReport&, const MetricsReport&) = default;
};

/// Derives the report from a drained log. A log without submissions yields all zeros.
///
/// Price bills each capacity that hosts at least one allocated unit at its hourly rate,
/// prorated per second from its first allocation to the end of the window. Deployment
/// time is averaged per application first, then across applications.
[[nodiscard]] MetricsReport compute_metrics(const EventLog& log, const std::vector<Capacity>& capacities);

struct EnergySample {
    double time = 0.0;  // absolute simulation time, s
    double kwh = 0.0;   // cumulative
};

/// Cumulative per-node energy every `step` seconds from the first submission to the last
/// task completion. The window end is always the final sample.
[[nodiscard]] std::map<std::string, std::vector<EnergySample>> per_node_energy_series(
    const EventLog& log, const std::vector<Capacity>& capacities, double step);

}  // namespace swarmsim
