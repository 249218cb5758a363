#pragma once

#include <swarmsim/model.hpp>

#include <string>
#include <utility>
#include <vector>

namespace swarmsim::testing {

inline Capacity make_capacity(std::string id, int cpu = 16, int ram = 16, int storage = 16) {
    Capacity c;
    c.id = std::move(id);
    c.provider = "AWS";
    c.location = "EU";
    c.cpu_total = cpu;
    c.ram_total = ram;
    c.storage_total = storage;
    c.idle_power = 150;
    c.max_power = 500;
    c.latency = 15;
    c.bandwidth = 1000;
    c.price_per_hour = 0.1;
    c.reliability = 1.0;
    return c;
}

inline Component compute(std::string id, int cpu, int ram, double image = 100, int instances = 1) {
    Component c;
    c.id = std::move(id);
    c.kind = ComponentKind::compute;
    c.cpu = cpu;
    c.ram = ram;
    c.image_size = image;
    c.instances = instances;
    return c;
}

inline Component storage(std::string id, int size) {
    Component c;
    c.id = std::move(id);
    c.kind = ComponentKind::storage;
    c.storage_size = size;
    return c;
}

inline Application make_app(std::string id, std::vector<Component> comps) {
    Application a;
    a.id = std::move(id);
    a.components = std::move(comps);
    return a;
}

}  // namespace swarmsim::testing
