#include <swarmsim/errors.hpp>
#include <swarmsim/runner.hpp>

#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace swarmsim;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path scratch(const std::string& name) {
    auto dir = fs::temp_directory_path() / ("swarmsim_runner_" + name);
    fs::remove_all(dir);
    return dir;
}

}  // namespace

TEST(Presets, ExpandExactly) {
    EXPECT_EQ(preset_priorities("energy"), (PriorityVector{0.1, 0.1, 0.1, 1.0}));
    EXPECT_EQ(preset_priorities("price"), (PriorityVector{0.1, 1.0, 0.1, 0.1}));
    EXPECT_EQ(preset_priorities("latency"), (PriorityVector{1.0, 0.1, 0.1, 0.1}));
    EXPECT_EQ(preset_priorities("bandwidth"), (PriorityVector{0.1, 0.1, 1.0, 0.1}));
    EXPECT_EQ(preset_priorities("equal"), (PriorityVector{1, 1, 1, 1}));
    EXPECT_FALSE(preset_priorities("random"));
    EXPECT_THROW((void)preset_priorities("speed"), ConfigError);
}

TEST(Presets, RandomForcesRandomMethod) {
    auto s = make_strategy("random", RankingMethod::borda, ReliabilityMode::additive);
    EXPECT_EQ(s.method, RankingMethod::random);
    EXPECT_EQ(s.reliability, ReliabilityMode::none);
}

TEST(Presets, ExplicitWeights) {
    EXPECT_EQ(make_strategy("1:0.5:0:2", RankingMethod::cost, ReliabilityMode::none).priorities,
              (PriorityVector{1, 0.5, 0, 2}));
    EXPECT_THROW((void)make_strategy("1:x:0:2", RankingMethod::cost, ReliabilityMode::none), ConfigError);
    EXPECT_THROW((void)make_strategy("0:0:0:0", RankingMethod::cost, ReliabilityMode::none), ConfigError);
}

TEST(Matrix, SixProfilesGiveSixRows) {
    ScenarioConfig c;
    c.methods = {RankingMethod::cost};
    c.seeds = {1};
    c.out_dir = scratch("six");
    std::ostringstream status;
    EXPECT_EQ(run_scenario(c, status), 0);
    auto csv = slurp(c.out_dir / "metrics.csv");
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 7);
    EXPECT_EQ(csv.substr(0, csv.find('\n')), kMetricsCsvHeader);
}

TEST(Matrix, ZeroSeedsRejected) {
    ScenarioConfig c;
    EXPECT_THROW(check_config(c), ConfigError);
}

TEST(Matrix, RepeatableAndJobIndependent) {
    ScenarioConfig c;
    c.seeds = {3, 4};
    c.trace = true;
    c.energy_step = 60;
    c.out_dir = scratch("a");
    std::ostringstream status;
    ASSERT_EQ(run_scenario(c, status), 0);
    auto first = slurp(c.out_dir / "metrics.csv");
    auto trace = slurp(c.out_dir / "trace_energy_cost_none_3.ndjson");
    EXPECT_FALSE(trace.empty());
    EXPECT_TRUE(fs::exists(c.out_dir / "energy_price_borda_none_4.csv"));

    c.out_dir = scratch("b");
    c.jobs = 3;
    ASSERT_EQ(run_scenario(c, status), 0);
    EXPECT_EQ(first, slurp(c.out_dir / "metrics.csv"));
    EXPECT_EQ(trace, slurp(c.out_dir / "trace_energy_cost_none_3.ndjson"));
}

TEST(Matrix, FilesAndSeedFallback) {
    auto dir = scratch("files");
    fs::create_directories(dir);
    auto gen = generate_random_scenario(9);
    std::ofstream(dir / "infra.json") << infrastructure_document(gen.infrastructure).dump(2);
    std::ofstream(dir / "apps.json") << applications_document(gen.applications).dump(2);
    ScenarioConfig c;
    c.infra_path = dir / "infra.json";
    c.apps_path = dir / "apps.json";
    c.profiles = {"energy"};
    c.methods = {RankingMethod::cost};
    auto recs = run_matrix(c);
    ASSERT_EQ(recs.size(), 1u);
    EXPECT_EQ(recs[0].seed, 9u);
    EXPECT_TRUE(recs[0].ok);

    ScenarioConfig g;
    g.profiles = {"energy"};
    g.methods = {RankingMethod::cost};
    g.seeds = {9};
    EXPECT_EQ(run_matrix(g)[0].result.metrics, recs[0].result.metrics);
}

TEST(Matrix, CsvRowFormat) {
    MetricsReport m;
    m.simulation_time = 31.5;
    m.total_price = 0.0125;
    m.avg_deployment_time = 0.2;
    m.total_energy = 2.17;
    auto s = make_strategy("price", RankingMethod::borda, ReliabilityMode::none);
    EXPECT_EQ(metrics_csv_row(s, 7, m), "price,borda,none,7,31.500000,0.012500,0.200000,2.170000");
}
