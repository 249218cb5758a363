// swarmsim: run the deployment simulator over a strategy x seed matrix, or generate
// a random scenario's descriptor files.

#include "swarmsim/errors.hpp"
#include "swarmsim/io.hpp"
#include "swarmsim/runner.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <fstream>
#include <iostream>

namespace {

/// "1,2,5..8" -> {1,2,5,6,7,8}
std::vector<std::uint64_t> parse_seeds(const std::vector<std::string>& items) {
    std::vector<std::uint64_t> seeds;
    for (const auto& item : items) {
        const auto dots = item.find("..");
        try {
            if (dots == std::string::npos) {
                seeds.push_back(std::stoull(item));
                continue;
            }
            const auto lo = std::stoull(item.substr(0, dots));
            const auto hi = std::stoull(item.substr(dots + 2));
            if (lo > hi) throw swarmsim::ConfigError(fmt::format("empty seed range '{}'", item));
            for (auto s = lo; s <= hi; ++s) seeds.push_back(s);
        } catch (const std::logic_error&) {
            throw swarmsim::ConfigError(fmt::format("bad seed '{}'", item));
        }
    }
    return seeds;
}

void write_json(const std::filesystem::path& path, const nlohmann::ordered_json& doc) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw swarmsim::ConfigError(fmt::format("cannot write '{}'", path.string()));
    out << doc.dump(2) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Decentralised cloud-edge deployment simulator"};
    app.option_defaults()->always_capture_default();

    swarmsim::ScenarioConfig config;
    std::string infra, apps;
    std::vector<std::string> methods{"cost", "borda"};
    std::string reliability = "none";
    std::vector<std::string> seeds;
    std::string out_dir = "out";
    std::string scope = "component";
    double energy_step = 0.0;
    bool gen_scenario = false;
    std::uint64_t gen_seed = 1;

    app.add_option("--infra", infra, "Infrastructure descriptor (JSON)");
    app.add_option("--apps", apps, "Applications descriptor (JSON)");
    app.add_option("--strategies", config.profiles,
                   "Priority profiles: energy, price, latency, bandwidth, equal, random, app, or l:p:b:e weights")
        ->delimiter(',');
    app.add_option("--methods", methods, "Ranking methods: cost, borda, random")->delimiter(',');
    app.add_option("--reliability", reliability, "Reliability integration: none, additive, multiplicative");
    app.add_option("--seeds", seeds, "Seeds, e.g. 1,2,3 or 1..20 (defaults to the infrastructure file's seed)")
        ->delimiter(',');
    app.add_option("--out", out_dir, "Output directory");
    app.add_flag("--trace", config.trace, "Write an NDJSON event trace per run");
    app.add_option("--energy-step", energy_step, "Write per-node cumulative energy CSVs sampled every N seconds")
        ->check(CLI::NonNegativeNumber);
    app.add_option("--combination-guard", config.combination_guard, "Maximum offer combinations per round");
    app.add_option("--combination-scope", scope, "Combination choice per 'component' or per 'unit'")
        ->check(CLI::IsMember({"component", "unit"}));
    app.add_option("--jobs", config.jobs, "Parallel runs")->check(CLI::PositiveNumber);
    app.add_flag("--gen-scenario", gen_scenario, "Write a generated scenario's descriptors to --out and exit");
    app.add_option("--gen-seed", gen_seed, "Seed for --gen-scenario");
    app.add_option("--n-apps", config.generator.applications, "Generated applications")->check(CLI::PositiveNumber);
    app.add_option("--n-capacities", config.generator.capacities, "Generated capacities")->check(CLI::PositiveNumber);

    CLI11_PARSE(app, argc, argv);

    try {
        config.out_dir = out_dir;
        if (gen_scenario) {
            const auto scenario = swarmsim::generate_random_scenario(gen_seed, config.generator);
            std::filesystem::create_directories(config.out_dir);
            write_json(config.out_dir / "infrastructure.json",
                       swarmsim::infrastructure_document(scenario.infrastructure));
            write_json(config.out_dir / "applications.json", swarmsim::applications_document(scenario.applications));
            std::cout << fmt::format("wrote {} and {}\n", (config.out_dir / "infrastructure.json").string(),
                                     (config.out_dir / "applications.json").string());
            return 0;
        }

        if (!infra.empty()) config.infra_path = infra;
        if (!apps.empty()) config.apps_path = apps;
        config.methods.clear();
        for (const auto& m : methods) config.methods.push_back(swarmsim::ranking_method_from_string(m));
        config.reliability = swarmsim::reliability_mode_from_string(reliability);
        config.seeds = parse_seeds(seeds);
        config.combination_scope =
            scope == "unit" ? swarmsim::CombinationScope::unit : swarmsim::CombinationScope::component;
        if (energy_step > 0) config.energy_step = energy_step;

        const int rc = swarmsim::run_scenario(config, std::cout);
        std::cout << fmt::format("metrics written to {}\n", (config.out_dir / "metrics.csv").string());
        return rc;
    } catch (const swarmsim::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
