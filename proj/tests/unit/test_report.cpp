#include <catch2/catch_amalgamated.hpp>

#include <flextpu/errors.hpp>
#include <flextpu/report.hpp>

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

using namespace flextpu;

namespace {

const std::string kResnet = FLEXTPU_TOPOLOGY_DIR "/resnet18.csv";

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / ("flextpu_test_" + name)).string();
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

ModelReport totals_only(const std::string& name, Count flex, Count is, Count os, Count ws) {
    ModelReport r;
    r.model_name = name;
    r.totals = {is, os, ws, flex};
    return r;
}

}  // namespace

TEST_CASE("execution time conversion", "[report]") {
    CHECK(execution_time_ms(1'636'000, kFlexClockNs) == Catch::Approx(10.94).margin(0.01));
    CHECK(execution_time_ms(2'839'000, kStaticClockNs) == Catch::Approx(18.82).margin(0.01));
    // Linear in the clock period.
    for (Count c : {1ull, 977ull, 123456789ull}) {
        CHECK(execution_time_ms(c, 2 * 6.63) == 2 * execution_time_ms(c, 6.63));
    }
}

TEST_CASE("run modes", "[report]") {
    CHECK(parse_run_mode("flex") == RunMode::Flex);
    CHECK(parse_run_mode("OS") == RunMode::OS);
    CHECK_FALSE(parse_run_mode("xs").has_value());
}

TEST_CASE("config file keys and precedence", "[report]") {
    RunConfig c;
    std::istringstream text(
        "# comment\n"
        "topology = nets/a.csv\nrows=64\ncols = 16\ndataflow=ws\nclock-ns=5.8\nflex-clock-ns=5.92\n"
        "verify=true\nout=r.csv\ntrace-cap=1000\n");
    apply_config_text(text, c);
    CHECK(c.topology_path == "nets/a.csv");
    CHECK(c.rows == 64);
    CHECK(c.cols == 16);
    CHECK(c.mode == RunMode::WS);
    CHECK(c.clock_ns_static == 5.8);
    CHECK(c.clock_ns_flex == 5.92);
    CHECK(c.verify);
    CHECK(c.output_path == "r.csv");
    CHECK(c.trace_cap == 1000);

    std::istringstream bad("rows=abc\n");
    CHECK_THROWS_AS(apply_config_text(bad, c), ParseError);
    std::istringstream unknown("color=blue\n");
    CHECK_THROWS_AS(apply_config_text(unknown, c), ParseError);
}

TEST_CASE("run writes a report that parses back exactly", "[report]") {
    RunConfig config;
    config.topology_path = kResnet;
    config.output_path = temp_path("run.csv");
    for (RunMode mode : {RunMode::IS, RunMode::OS, RunMode::WS, RunMode::Flex}) {
        config.mode = mode;
        const auto outcome = run(config);
        std::ifstream in(config.output_path);
        const auto rows = parse_report_csv(in);
        REQUIRE(rows.size() == outcome.report.layers.size());
        for (std::size_t i = 0; i < rows.size(); ++i) CHECK(rows[i] == outcome.report.layers[i].cost(mode));
    }
}

TEST_CASE("flex run agrees with the scheduler", "[report]") {
    RunConfig config;
    config.topology_path = kResnet;
    const auto outcome = run(config);
    ArrayConfig array;
    const auto schedule = build_schedule(load_topology(kResnet), array);
    REQUIRE(outcome.report.layers.size() == schedule.entries.size());
    for (std::size_t i = 0; i < schedule.entries.size(); ++i) {
        CHECK(outcome.report.layers[i].chosen == schedule.entries[i].chosen);
    }
    CHECK(outcome.report.total_cycles(RunMode::Flex) == schedule.total_flex_cycles);
    for (RunMode m : {RunMode::IS, RunMode::OS, RunMode::WS}) {
        CHECK(outcome.report.total_cycles(RunMode::Flex) <= outcome.report.total_cycles(m));
    }
}

TEST_CASE("run failures", "[report]") {
    RunConfig config;
    config.topology_path = FLEXTPU_DATA_DIR "/does_not_exist.csv";
    CHECK_THROWS_AS(run(config), IoError);
    config.topology_path = FLEXTPU_DATA_DIR "/bad_filter.csv";
    CHECK_THROWS_AS(run(config), ValidationError);
    config.topology_path = kResnet;
    config.clock_ns_flex = 0.0;
    CHECK_THROWS_AS(run(config), ValidationError);
}

TEST_CASE("verified run on small layers", "[report]") {
    RunConfig config;
    config.topology_path = FLEXTPU_DATA_DIR "/small_net.csv";
    config.rows = 4;
    config.cols = 4;
    config.verify = true;
    for (RunMode mode : {RunMode::IS, RunMode::OS, RunMode::WS, RunMode::Flex}) {
        config.mode = mode;
        const auto outcome = run(config);
        REQUIRE(outcome.verification.size() == outcome.report.layers.size());
        for (const auto& v : outcome.verification) {
            CHECK(v.simulated);
            CHECK(v.passed());
        }
    }
}

TEST_CASE("sweep", "[report]") {
    RunConfig config;
    config.topology_path = kResnet;
    config.mode = RunMode::Flex;

    SECTION("three sizes") {
        config.output_path = temp_path("sweep.csv");
        const auto reports = sweep_array_sizes(config, {{32, 32}, {128, 128}, {256, 256}});
        REQUIRE(reports.size() == 3);
        CHECK(reports[1].rows == 128);
        for (const auto& r : reports) CHECK(r.speedup(Dataflow::OS) > 1.0);
        const auto text = slurp(config.output_path);
        CHECK(text.rfind("rows,cols,layer,dataflow,", 0) == 0);
        CHECK(text.find("\n256,256,conv1,") != std::string::npos);
    }
    SECTION("singleton equals run") {
        const auto reports = sweep_array_sizes(config, {{32, 32}});
        const auto single = run(config).report;
        REQUIRE(reports.size() == 1);
        CHECK(reports[0].totals.total_flex == single.totals.total_flex);
        for (std::size_t i = 0; i < single.layers.size(); ++i) {
            CHECK(reports[0].layers[i].cost(RunMode::Flex) == single.layers[i].cost(RunMode::Flex));
        }
    }
    SECTION("empty size list") {
        CHECK_THROWS_AS(sweep_array_sizes(config, {}), ValidationError);
    }
}

TEST_CASE("speedup table structure and round trip", "[report]") {
    const std::vector<ModelReport> reports{
        totals_only("AlexNet", 859'800, 1'176'000, 885'200, 1'188'000),
        totals_only("ResNet-18", 1'636'000, 2'839'000, 1'718'000, 2'520'000),
    };
    const auto text = emit_speedup_table(reports);
    std::istringstream in(text);
    std::string header;
    std::getline(in, header);
    CHECK(header == "Model,Flex-TPU Cycles,Dataflow,Static Dataflow Cycles,Speedup");

    std::istringstream again(text);
    const auto table = parse_speedup_table(again);
    REQUIRE(table.rows.size() == 6);
    CHECK(table.rows[0].model == "AlexNet");
    CHECK(table.rows[0].dataflow == Dataflow::IS);
    CHECK(table.rows[0].static_cycles == 1'176'000);
    CHECK(table.rows[0].speedup == reports[0].speedup(Dataflow::IS));
    CHECK(table.rows[4].speedup == reports[1].speedup(Dataflow::OS));
    const double mean_ws = (reports[0].speedup(Dataflow::WS) + reports[1].speedup(Dataflow::WS)) / 2;
    CHECK(table.mean_speedup[2] == mean_ws);
}

TEST_CASE("speedup table degenerate inputs", "[report]") {
    const auto text = emit_speedup_table({totals_only("one", 100, 100, 100, 100)});
    std::istringstream in(text);
    const auto table = parse_speedup_table(in);
    for (double m : table.mean_speedup) CHECK(m == 1.0);
    CHECK_THROWS_AS(emit_speedup_table({}), ValidationError);
}

TEST_CASE("plot data", "[report]") {
    auto r = totals_only("net", 1'000'000, 2'000'000, 1'500'000, 1'200'000);
    const auto text = emit_plot_data({r});
    CHECK(text.rfind("model,mode,value\n", 0) == 0);
    std::istringstream in(text);
    std::string line;
    std::getline(in, line);
    std::map<std::string, double> values;
    while (std::getline(in, line)) {
        const auto first = line.find(',');
        const auto second = line.find(',', first + 1);
        CHECK(line.substr(0, first) == "net");
        values[line.substr(first + 1, second - first - 1)] = std::stod(line.substr(second + 1));
    }
    REQUIRE(values.size() == 4);
    CHECK(values["Flex"] == Catch::Approx(6.69));
    CHECK(values["IS"] == Catch::Approx(13.26));
    CHECK(values["OS"] == Catch::Approx(9.945));
    CHECK(values["WS"] == Catch::Approx(7.956));
}

TEST_CASE("repeated runs are byte-identical", "[report]") {
    RunConfig config;
    config.topology_path = kResnet;
    config.output_path = temp_path("det_a.csv");
    run(config);
    const auto first = slurp(config.output_path);
    config.output_path = temp_path("det_b.csv");
    run(config);
    CHECK(slurp(config.output_path) == first);
}
