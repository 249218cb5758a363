#include "swarmsim/io.hpp"

#include "swarmsim/errors.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include <fmt/format.h>

namespace swarmsim {

namespace {

using json = nlohmann::json;

/// The document's "id" if it is a string, for locating errors; `fallback` otherwise.
std::string label_of(const json& doc, std::string fallback) {
    if (doc.is_object() && doc.contains("id") && doc.at("id").is_string()) return doc.at("id").get<std::string>();
    return fallback;
}

/// Accumulates violations while reading typed fields out of a JSON object.
class FieldReader {
public:
    FieldReader(const json& obj, std::string where, std::vector<std::string>& errors)
        : obj_(obj), where_(std::move(where)), errors_(errors) {}

    [[nodiscard]] bool has(const char* key) const { return obj_.is_object() && obj_.contains(key); }

    template <typename T>
    std::optional<T> optional(const char* key) {
        if (!has(key) || obj_.at(key).is_null()) return std::nullopt;
        const auto& v = obj_.at(key);
        if constexpr (std::is_same_v<T, std::string>) {
            if (!v.is_string()) return type_error<T>(key, "a string");
        } else if constexpr (std::is_integral_v<T>) {
            if (!v.is_number_integer()) return type_error<T>(key, "an integer");
        } else {
            if (!v.is_number()) return type_error<T>(key, "a number");
        }
        return v.get<T>();
    }

    template <typename T>
    std::optional<T> required(const char* key) {
        if (!has(key)) {
            errors_.push_back(fmt::format("{}: missing mandatory field '{}'", where_, key));
            return std::nullopt;
        }
        return optional<T>(key);
    }

    void forbid(const char* key, const char* why) {
        if (has(key)) errors_.push_back(fmt::format("{}: field '{}' not allowed {}", where_, key, why));
    }

private:
    template <typename T>
    std::optional<T> type_error(const char* key, const char* expected) {
        errors_.push_back(fmt::format("{}: field '{}' must be {}", where_, key, expected));
        return std::nullopt;
    }

    const json& obj_;
    std::string where_;
    std::vector<std::string>& errors_;
};

Component parse_component(const json& doc, const std::string& app_id, std::size_t pos,
                          std::vector<std::string>& errors) {
    Component c;
    if (!doc.is_object()) {
        errors.push_back(fmt::format("application '{}': component #{} is not an object", app_id, pos));
        return c;
    }
    FieldReader r(doc, fmt::format("component '{}/{}'", app_id, label_of(doc, fmt::format("#{}", pos))), errors);
    c.id = r.required<std::string>("id").value_or("");
    c.provider = r.optional<std::string>("provider");
    c.location = r.optional<std::string>("location");
    const auto kind = r.required<std::string>("kind");
    if (kind == "compute") {
        c.kind = ComponentKind::compute;
        c.cpu = r.required<int>("cpu").value_or(0);
        c.ram = r.required<int>("ram").value_or(0);
        c.image_size = r.required<double>("image_size").value_or(0.0);
        c.instances = r.optional<int>("instances").value_or(1);
        r.forbid("storage_size", "on a compute component");
    } else if (kind == "storage") {
        c.kind = ComponentKind::storage;
        c.storage_size = r.required<int>("storage_size").value_or(0);
        for (const char* k : {"cpu", "ram", "image_size", "instances"}) r.forbid(k, "on a storage component");
    } else if (kind) {
        errors.push_back(fmt::format("application '{}': component '{}' has unknown kind '{}'", app_id, c.id, *kind));
    }
    return c;
}

}  // namespace

Application validate_application(const json& doc) {
    std::vector<std::string> errors;
    if (!doc.is_object()) throw ValidationError({"application document must be an object"});

    Application app;
    FieldReader r(doc, fmt::format("application '{}'", label_of(doc, "?")), errors);
    app.id = r.required<std::string>("id").value_or("");
    app.submit_time = r.optional<double>("submit_time").value_or(0.0);
    if (r.has("priorities")) {
        const auto& p = doc.at("priorities");
        FieldReader pr(p, fmt::format("application '{}' priorities", app.id), errors);
        app.priorities.latency = pr.required<double>("latency").value_or(0.0);
        app.priorities.price = pr.required<double>("price").value_or(0.0);
        app.priorities.bandwidth = pr.required<double>("bandwidth").value_or(0.0);
        app.priorities.energy = pr.required<double>("energy").value_or(0.0);
    }
    if (r.has("unavailable_ranks")) {
        const auto& ranks = doc.at("unavailable_ranks");
        if (!ranks.is_array()) {
            errors.push_back(fmt::format("application '{}': unavailable_ranks must be a list", app.id));
        } else {
            for (const auto& v : ranks) {
                if (v.is_number_integer()) {
                    app.unavailable_ranks.push_back(v.get<int>());
                } else {
                    errors.push_back(fmt::format("application '{}': unavailable_ranks entries must be integers", app.id));
                }
            }
        }
    }
    if (!r.has("components") || !doc.at("components").is_array()) {
        errors.push_back(fmt::format("application '{}': missing mandatory list 'components'", app.id));
    } else {
        std::size_t pos = 0;
        for (const auto& c : doc.at("components")) app.components.push_back(parse_component(c, app.id, pos++, errors));
    }

    // Range and uniqueness rules on the typed value; only meaningful for fields that parsed.
    try {
        validate(app);
    } catch (const ValidationError& e) {
        for (const auto& v : e.violations()) {
            if (std::find(errors.begin(), errors.end(), v) == errors.end()) errors.push_back(v);
        }
    }
    if (!errors.empty()) throw ValidationError(std::move(errors));
    return app;
}

std::vector<Application> load_applications(const json& doc) {
    if (!doc.is_object() || !doc.contains("applications") || !doc.at("applications").is_array()) {
        throw ValidationError({"applications document must contain an 'applications' list"});
    }
    std::vector<Application> apps;
    std::vector<std::string> errors;
    std::set<std::string> ids;
    for (const auto& a : doc.at("applications")) {
        try {
            apps.push_back(validate_application(a));
            if (!ids.insert(apps.back().id).second) {
                errors.push_back(fmt::format("duplicate application id '{}'", apps.back().id));
            }
        } catch (const ValidationError& e) {
            errors.insert(errors.end(), e.violations().begin(), e.violations().end());
        }
    }
    if (!errors.empty()) throw ValidationError(std::move(errors));
    return apps;
}

InfrastructureDescriptor load_infrastructure(const json& doc) {
    if (!doc.is_object() || !doc.contains("capacities") || !doc.at("capacities").is_array()) {
        throw ValidationError({"infrastructure document must contain a 'capacities' list"});
    }
    InfrastructureDescriptor out;
    std::vector<std::string> errors;
    FieldReader top(doc, "infrastructure", errors);
    out.seed = top.optional<std::uint64_t>("seed");
    std::size_t pos = 0;
    for (const auto& c : doc.at("capacities")) {
        FieldReader r(c, fmt::format("capacity '{}'", label_of(c, fmt::format("#{}", pos))),
                      errors);
        Capacity cap;
        cap.id = r.required<std::string>("id").value_or("");
        cap.provider = r.required<std::string>("provider").value_or("");
        cap.location = r.required<std::string>("location").value_or("");
        cap.cpu_total = r.required<int>("cpu_total").value_or(0);
        cap.ram_total = r.required<int>("ram_total").value_or(0);
        cap.storage_total = r.required<int>("storage_total").value_or(0);
        cap.idle_power = r.required<double>("idle_power").value_or(0.0);
        cap.max_power = r.required<double>("max_power").value_or(0.0);
        cap.latency = r.required<double>("latency").value_or(0.0);
        cap.bandwidth = r.required<double>("bandwidth").value_or(0.0);
        cap.price_per_hour = r.required<double>("price_per_hour").value_or(0.0);
        cap.reliability = r.optional<double>("reliability").value_or(1.0);
        try {
            validate(cap);
        } catch (const ValidationError& e) {
            errors.insert(errors.end(), e.violations().begin(), e.violations().end());
        }
        out.capacities.push_back(std::move(cap));
        ++pos;
    }
    if (!errors.empty()) throw ValidationError(std::move(errors));
    return out;
}

nlohmann::ordered_json to_json(const Application& app) {
    nlohmann::ordered_json j;
    j["id"] = app.id;
    j["submit_time"] = app.submit_time;
    j["priorities"] = {{"latency", app.priorities.latency},
                       {"price", app.priorities.price},
                       {"bandwidth", app.priorities.bandwidth},
                       {"energy", app.priorities.energy}};
    if (!app.unavailable_ranks.empty()) j["unavailable_ranks"] = app.unavailable_ranks;
    auto& comps = j["components"] = nlohmann::ordered_json::array();
    for (const auto& c : app.components) {
        nlohmann::ordered_json cj;
        cj["id"] = c.id;
        cj["kind"] = to_string(c.kind);
        if (c.kind == ComponentKind::compute) {
            cj["cpu"] = c.cpu;
            cj["ram"] = c.ram;
            cj["image_size"] = c.image_size;
            cj["instances"] = c.instances;
        } else {
            cj["storage_size"] = c.storage_size;
        }
        if (c.provider) cj["provider"] = *c.provider;
        if (c.location) cj["location"] = *c.location;
        comps.push_back(std::move(cj));
    }
    return j;
}

nlohmann::ordered_json to_json(const Capacity& c) {
    return {{"id", c.id},
            {"provider", c.provider},
            {"location", c.location},
            {"cpu_total", c.cpu_total},
            {"ram_total", c.ram_total},
            {"storage_total", c.storage_total},
            {"idle_power", c.idle_power},
            {"max_power", c.max_power},
            {"latency", c.latency},
            {"bandwidth", c.bandwidth},
            {"price_per_hour", c.price_per_hour},
            {"reliability", c.reliability}};
}

nlohmann::ordered_json applications_document(const std::vector<Application>& apps) {
    nlohmann::ordered_json j;
    auto& arr = j["applications"] = nlohmann::ordered_json::array();
    for (const auto& a : apps) arr.push_back(to_json(a));
    return j;
}

nlohmann::ordered_json infrastructure_document(const InfrastructureDescriptor& infra) {
    nlohmann::ordered_json j;
    if (infra.seed) j["seed"] = *infra.seed;
    auto& arr = j["capacities"] = nlohmann::ordered_json::array();
    for (const auto& c : infra.capacities) arr.push_back(to_json(c));
    return j;
}

nlohmann::json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(fmt::format("cannot open '{}'", path.string()));
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(fmt::format("'{}' is not valid JSON: {}", path.string(), e.what()));
    }
}

}  // namespace swarmsim
