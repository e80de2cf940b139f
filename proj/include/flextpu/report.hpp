#pragma once

#include <flextpu/dataflow.hpp>
#include <flextpu/scheduler.hpp>
#include <flextpu/workload.hpp>

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace flextpu {

// Critical-path delays of the 32x32 designs, used to turn cycles into time.
inline constexpr double kStaticClockNs = 6.63;
inline constexpr double kFlexClockNs = 6.69;

// IS/OS/WS run one dataflow for every layer; Flex takes each layer's minimum.
enum class RunMode : std::uint8_t { IS, OS, WS, Flex };

std::string_view to_string(RunMode mode);
std::optional<RunMode> parse_run_mode(std::string_view text);

struct RunConfig {
    std::string topology_path;
    Count rows = 32;
    Count cols = 32;
    RunMode mode = RunMode::Flex;
    double clock_ns_static = kStaticClockNs;
    double clock_ns_flex = kFlexClockNs;
    bool verify = false;
    std::string output_path;
    Count trace_cap = kDefaultTraceCap;
};

void validate(const RunConfig& config);

// key=value lines ('#' comments). Keys mirror the long CLI flags without dashes:
// topology, rows, cols, dataflow, clock-ns, flex-clock-ns, verify, out, trace-cap.
void apply_config_text(std::istream& in, RunConfig& config);
void load_config_file(const std::string& path, RunConfig& config);

struct LayerRow {
    std::string layer_name;
    std::array<LayerCostReport, 3> by_dataflow;  // indexed IS, OS, WS
    Dataflow chosen = Dataflow::OS;

    const LayerCostReport& cost(Dataflow df) const { return by_dataflow[static_cast<std::size_t>(df)]; }
    const LayerCostReport& cost(RunMode mode) const;
};

struct ModelReport {
    std::string model_name;
    Count rows = 0;
    Count cols = 0;
    double clock_ns_static = kStaticClockNs;
    double clock_ns_flex = kFlexClockNs;
    std::vector<LayerRow> layers;
    StaticComparison totals;

    Count total_cycles(RunMode mode) const;
    double speedup(Dataflow df) const { return totals.speedup(df); }
    // cycles * clock_ns * 1e-6; static modes use clock_ns_static, Flex uses clock_ns_flex.
    double execution_time_ms(RunMode mode) const;
};

double execution_time_ms(Count cycles, double clock_ns);

ModelReport build_model_report(const Topology& topology, const ArrayConfig& array, double clock_ns_static,
                               double clock_ns_flex);

// Report CSV for one mode:
//   layer,dataflow,cycles,folds,sram_reads_ifmap,sram_reads_filter,sram_writes_ofmap,psum_spills,utilization
// Integers are exact; utilization is written in shortest round-trip form.
void write_report_csv(std::ostream& out, const ModelReport& report, RunMode mode);
std::vector<LayerCostReport> parse_report_csv(std::istream& in);

struct RunOutcome {
    ModelReport report;
    std::vector<LayerVerification> verification;  // empty unless config.verify
};

// Loads, evaluates and writes the report CSV to config.output_path (when set).
// Throws VerifyMismatch naming layer and dataflow when verification fails.
RunOutcome run(const RunConfig& config);

std::vector<ModelReport> sweep_array_sizes(const RunConfig& config, const std::vector<std::pair<Count, Count>>& sizes);

// Same columns as the report CSV, prefixed with rows,cols.
void write_sweep_csv(std::ostream& out, const std::vector<ModelReport>& reports, RunMode mode);

// Model,Flex-TPU Cycles,Dataflow,Static Dataflow Cycles,Speedup; three rows per
// model, then one "Mean" row per dataflow holding the arithmetic mean speedup.
std::string emit_speedup_table(const std::vector<ModelReport>& reports);

struct SpeedupRow {
    std::string model;
    Count flex_cycles = 0;
    Dataflow dataflow = Dataflow::OS;
    Count static_cycles = 0;
    double speedup = 0.0;
};

struct SpeedupTable {
    std::vector<SpeedupRow> rows;
    std::array<double, 3> mean_speedup{};  // indexed IS, OS, WS
};

SpeedupTable parse_speedup_table(std::istream& in);

// Plot data: model,mode,value with execution time in ms for IS, OS, WS, Flex.
std::string emit_plot_data(const std::vector<ModelReport>& reports);

}  // namespace flextpu
