#pragma once

#include "swarmsim/model.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include <nlohmann/json.hpp>

namespace swarmsim {

/// Parses one application document and checks every field rule. Throws ValidationError
/// listing every violation found.
[[nodiscard]] Application validate_application(const nlohmann::json& doc);

/// Scenario-level document: {"applications": [ ... ]}.
[[nodiscard]] std::vector<Application> load_applications(const nlohmann::json& doc);

struct InfrastructureDescriptor {
    std::vector<Capacity> capacities;
    std::optional<std::uint64_t> seed;
};

/// {"seed": N, "capacities": [ ... ]}
[[nodiscard]] InfrastructureDescriptor load_infrastructure(const nlohmann::json& doc);

[[nodiscard]] nlohmann::ordered_json to_json(const Application& app);
[[nodiscard]] nlohmann::ordered_json to_json(const Capacity& capacity);
[[nodiscard]] nlohmann::ordered_json applications_document(const std::vector<Application>& apps);
[[nodiscard]] nlohmann::ordered_json infrastructure_document(const InfrastructureDescriptor& infra);

/// Reads and parses a JSON file; ConfigError on a missing file or a parse failure.
[[nodiscard]] nlohmann::json read_json_file(const std::filesystem::path& path);

}  // namespace swarmsim
