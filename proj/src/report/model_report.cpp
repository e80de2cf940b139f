#include <flextpu/report.hpp>
#include <flextpu/errors.hpp>

#include <fstream>
#include <future>

namespace flextpu {

const LayerCostReport& LayerRow::cost(RunMode mode) const {
    switch (mode) {
        case RunMode::IS: return cost(Dataflow::IS);
        case RunMode::OS: return cost(Dataflow::OS);
        case RunMode::WS: return cost(Dataflow::WS);
        case RunMode::Flex: return cost(chosen);
    }
    return cost(chosen);
}

Count ModelReport::total_cycles(RunMode mode) const {
    switch (mode) {
        case RunMode::IS: return totals.total_is;
        case RunMode::OS: return totals.total_os;
        case RunMode::WS: return totals.total_ws;
        case RunMode::Flex: return totals.total_flex;
    }
    return 0;
}

double execution_time_ms(Count cycles, double clock_ns) {
    return static_cast<double>(cycles) * clock_ns * 1e-6;
}

double ModelReport::execution_time_ms(RunMode mode) const {
    const double clock = mode == RunMode::Flex ? clock_ns_flex : clock_ns_static;
    return flextpu::execution_time_ms(total_cycles(mode), clock);
}

ModelReport build_model_report(const Topology& topology, const ArrayConfig& array, double clock_ns_static,
                               double clock_ns_flex) {
    const FlexSchedule schedule = build_schedule(topology, array);

    ModelReport report;
    report.model_name = topology.model_name;
    report.rows = array.rows;
    report.cols = array.cols;
    report.clock_ns_static = clock_ns_static;
    report.clock_ns_flex = clock_ns_flex;
    report.totals = compare_static(schedule);
    report.layers.reserve(topology.layers.size());
    for (std::size_t i = 0; i < topology.layers.size(); ++i) {
        const auto& layer = topology.layers[i];
        const GemmShape shape = lower_to_gemm(layer);
        LayerRow row;
        row.layer_name = layer.name;
        for (Dataflow df : kAllDataflows) {
            row.by_dataflow[static_cast<std::size_t>(df)] = analytical_cycles(shape, array, df, layer.name);
        }
        row.chosen = schedule.entries[i].chosen;
        report.layers.push_back(std::move(row));
    }
    return report;
}

namespace {

ArrayConfig array_for(const RunConfig& config, Count rows, Count cols) {
    ArrayConfig array;
    array.rows = rows;
    array.cols = cols;
    array.clock_period_ns = config.clock_ns_static;
    return array;
}

Topology load_checked(const RunConfig& config) {
    validate(config);
    return load_topology(config.topology_path);
}

std::vector<LayerVerification> verify_report(const Topology& topology, const ModelReport& report,
                                             const ArrayConfig& array, RunMode mode, Count trace_cap) {
    std::vector<LayerVerification> results;
    for (std::size_t i = 0; i < topology.layers.size(); ++i) {
        const Dataflow df = report.layers[i].cost(mode).dataflow;
        auto v = verify_layer(topology.layers[i], array, df, trace_cap, i + 1);
        if (!v.passed()) {
            throw VerifyMismatch("layer '" + v.layer_name + "' dataflow " + std::string(to_string(df)) +
                                 ": analytical " + std::to_string(v.analytical_cycles) + " cycles, simulated " +
                                 std::to_string(v.simulated_cycles) +
                                 (v.ofmap_matches ? "" : ", simulated OFMap differs from the reference product"));
        }
        results.push_back(std::move(v));
    }
    return results;
}

template <typename Writer>
void write_output(const std::string& path, Writer&& writer) {
    if (path.empty()) return;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open output file '" + path + "'");
    writer(out);
    out.flush();
    if (!out) throw IoError("failed writing '" + path + "'");
}

}  // namespace

RunOutcome run(const RunConfig& config) {
    const Topology topology = load_checked(config);
    const ArrayConfig array = array_for(config, config.rows, config.cols);

    RunOutcome outcome;
    outcome.report = build_model_report(topology, array, config.clock_ns_static, config.clock_ns_flex);
    if (config.verify) {
        outcome.verification = verify_report(topology, outcome.report, array, config.mode, config.trace_cap);
    }
    write_output(config.output_path,
                 [&](std::ostream& out) { write_report_csv(out, outcome.report, config.mode); });
    return outcome;
}

std::vector<ModelReport> sweep_array_sizes(const RunConfig& config, const std::vector<std::pair<Count, Count>>& sizes) {
    if (sizes.empty()) throw ValidationError("array-size sweep needs at least one size");
    for (const auto& [rows, cols] : sizes) {
        if (rows < 1 || cols < 1) throw ValidationError("array rows and cols must be >= 1");
    }
    const Topology topology = load_checked(config);

    // Sizes are independent; results are collected in input order.
    std::vector<std::future<ModelReport>> pending;
    pending.reserve(sizes.size());
    for (const auto& [rows, cols] : sizes) {
        pending.push_back(std::async(std::launch::async, [&, rows = rows, cols = cols] {
            const ArrayConfig array = array_for(config, rows, cols);
            ModelReport report = build_model_report(topology, array, config.clock_ns_static, config.clock_ns_flex);
            if (config.verify) verify_report(topology, report, array, config.mode, config.trace_cap);
            return report;
        }));
    }
    std::vector<ModelReport> reports;
    reports.reserve(sizes.size());
    for (auto& p : pending) reports.push_back(p.get());

    write_output(config.output_path, [&](std::ostream& out) { write_sweep_csv(out, reports, config.mode); });
    return reports;
}

}  // namespace flextpu
