// flextpu: per-layer dataflow selection and cycle reports for systolic arrays.
//
//   flextpu run   --topology resnet18.csv --dataflow flex --out report.csv
//   flextpu sweep --topology resnet18.csv --sizes 32x32,128x128,256x256 --out sweep.csv
//   flextpu table --topology a.csv --topology b.csv --out table.csv --plot-out times.csv

#include <flextpu/errors.hpp>
#include <flextpu/report.hpp>
#include <flextpu/scheduler.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

using namespace flextpu;

namespace {

enum ExitCode : int { kOk = 0, kValidation = 1, kVerifyMismatch = 2, kIo = 3 };

struct CommonFlags {
    std::string config_file;
    std::string topology;
    Count rows = 0;
    Count cols = 0;
    std::string dataflow;
    double clock_ns = 0.0;
    double flex_clock_ns = 0.0;
    bool verify = false;
    std::string out;
    Count trace_cap = 0;

    std::vector<CLI::Option*> given;
    CLI::Option* o_topology = nullptr;
    CLI::Option* o_rows = nullptr;
    CLI::Option* o_cols = nullptr;
    CLI::Option* o_dataflow = nullptr;
    CLI::Option* o_clock = nullptr;
    CLI::Option* o_flex_clock = nullptr;
    CLI::Option* o_verify = nullptr;
    CLI::Option* o_out = nullptr;
    CLI::Option* o_cap = nullptr;

    void attach(CLI::App* app, bool with_topology = true) {
        app->add_option("--config", config_file, "key=value run-config file; flags override it");
        if (with_topology) o_topology = app->add_option("--topology", topology, "topology CSV");
        o_rows = app->add_option("--rows", rows, "systolic array rows")->check(CLI::PositiveNumber);
        o_cols = app->add_option("--cols", cols, "systolic array columns")->check(CLI::PositiveNumber);
        o_dataflow = app->add_option("--dataflow", dataflow, "is, os, ws or flex");
        o_clock = app->add_option("--clock-ns", clock_ns, "static-dataflow clock period (ns)");
        o_flex_clock = app->add_option("--flex-clock-ns", flex_clock_ns, "Flex clock period (ns)");
        o_verify = app->add_flag("--verify", verify, "cross-check layers on the PE grid simulator");
        o_out = app->add_option("--out", out, "output CSV path");
        o_cap = app->add_option("--trace-cap", trace_cap, "max operand-trace records per verified layer")
                    ->check(CLI::PositiveNumber);
    }

    RunConfig resolve() const {
        RunConfig config;
        if (!config_file.empty()) load_config_file(config_file, config);
        if (o_topology && o_topology->count()) config.topology_path = topology;
        if (o_rows->count()) config.rows = rows;
        if (o_cols->count()) config.cols = cols;
        if (o_dataflow->count()) {
            const auto mode = parse_run_mode(dataflow);
            if (!mode) throw ValidationError("unknown dataflow '" + dataflow + "'");
            config.mode = *mode;
        }
        if (o_clock->count()) config.clock_ns_static = clock_ns;
        if (o_flex_clock->count()) config.clock_ns_flex = flex_clock_ns;
        if (o_verify->count()) config.verify = verify;
        if (o_out->count()) config.output_path = out;
        if (o_cap->count()) config.trace_cap = trace_cap;
        return config;
    }
};

std::vector<std::pair<Count, Count>> parse_sizes(const std::vector<std::string>& specs) {
    std::vector<std::pair<Count, Count>> sizes;
    for (const auto& spec : specs) {
        const auto x = spec.find('x');
        try {
            if (x == std::string::npos) {
                const Count n = std::stoull(spec);
                sizes.emplace_back(n, n);
            } else {
                sizes.emplace_back(std::stoull(spec.substr(0, x)), std::stoull(spec.substr(x + 1)));
            }
        } catch (const std::logic_error&) {
            throw ValidationError("bad array size '" + spec + "', expected RxC");
        }
    }
    return sizes;
}

void print_summary(std::ostream& os, const ModelReport& r, RunMode mode) {
    os << r.model_name << " on " << r.rows << "x" << r.cols << '\n';
    if (mode == RunMode::Flex) {
        os << "  per-layer dataflow:";
        for (const auto& layer : r.layers) os << ' ' << layer.layer_name << '=' << to_string(layer.chosen);
        os << '\n';
    }
    os << std::fixed;
    for (RunMode m : {RunMode::IS, RunMode::OS, RunMode::WS, RunMode::Flex}) {
        os << "  " << std::left << std::setw(5) << to_string(m) << std::right << std::setw(14) << r.total_cycles(m)
           << " cycles " << std::setprecision(3) << std::setw(10) << r.execution_time_ms(m) << " ms";
        if (m != RunMode::Flex) {
            const Dataflow df = static_cast<Dataflow>(static_cast<int>(m));
            os << "  flex speedup " << std::setprecision(3) << r.speedup(df) << 'x';
        }
        os << '\n';
    }
    os.unsetf(std::ios::floatfield);
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open output file '" + path + "'");
    out << text;
    if (!out) throw IoError("failed writing '" + path + "'");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Systolic-array dataflow cost model with per-layer (flex) dataflow selection"};
    app.require_subcommand(1);

    CommonFlags run_flags;
    std::string schedule_out;
    std::string cmu_out;
    auto* run_cmd = app.add_subcommand("run", "evaluate one topology on one array size");
    run_flags.attach(run_cmd);
    run_cmd->add_option("--schedule-out", schedule_out, "write the per-layer schedule CSV");
    run_cmd->add_option("--cmu-out", cmu_out, "write the CMU configuration program CSV");

    CommonFlags sweep_flags;
    std::vector<std::string> size_specs;
    auto* sweep_cmd = app.add_subcommand("sweep", "evaluate one topology across array sizes");
    sweep_flags.attach(sweep_cmd);
    sweep_cmd->add_option("--sizes", size_specs, "array sizes as RxC (default: --rows x --cols)")->delimiter(',');

    CommonFlags table_flags;
    std::vector<std::string> table_topologies;
    std::string plot_out;
    auto* table_cmd = app.add_subcommand("table", "speedup table over several topologies");
    table_flags.attach(table_cmd, false);
    table_cmd->add_option("--topology", table_topologies, "topology CSV (repeatable)")->required();
    table_cmd->add_option("--plot-out", plot_out, "write execution-time plot data (model,mode,value)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kValidation;
    }

    try {
        if (run_cmd->parsed()) {
            const RunConfig config = run_flags.resolve();
            const RunOutcome outcome = run(config);
            print_summary(std::cout, outcome.report, config.mode);
            if (config.verify) {
                std::size_t simulated = 0;
                for (const auto& v : outcome.verification) simulated += v.simulated ? 1 : 0;
                std::cout << "  verify: " << simulated << " layer(s) simulated, "
                          << outcome.verification.size() - simulated << " over the trace cap\n";
            }
            if (!schedule_out.empty() || !cmu_out.empty()) {
                const Topology topology = load_topology(config.topology_path);
                ArrayConfig array;
                array.rows = config.rows;
                array.cols = config.cols;
                const FlexSchedule schedule = build_schedule(topology, array);
                if (!schedule_out.empty()) {
                    std::ostringstream s;
                    write_schedule_csv(s, schedule);
                    write_file(schedule_out, s.str());
                }
                if (!cmu_out.empty()) {
                    std::ostringstream s;
                    write_cmu_csv(s, emit_cmu_program(schedule, chosen_plans(schedule, topology, array)));
                    write_file(cmu_out, s.str());
                }
            }
        } else if (sweep_cmd->parsed()) {
            const RunConfig config = sweep_flags.resolve();
            auto sizes = parse_sizes(size_specs);
            if (size_specs.empty()) sizes.emplace_back(config.rows, config.cols);
            for (const auto& r : sweep_array_sizes(config, sizes)) print_summary(std::cout, r, config.mode);
        } else if (table_cmd->parsed()) {
            const RunConfig config = table_flags.resolve();
            ArrayConfig array;
            array.rows = config.rows;
            array.cols = config.cols;
            std::vector<ModelReport> reports;
            for (const auto& path : table_topologies) {
                reports.push_back(
                    build_model_report(load_topology(path), array, config.clock_ns_static, config.clock_ns_flex));
            }
            const std::string table = emit_speedup_table(reports);
            if (config.output_path.empty()) {
                std::cout << table;
            } else {
                write_file(config.output_path, table);
            }
            if (!plot_out.empty()) write_file(plot_out, emit_plot_data(reports));
        }
    } catch (const VerifyMismatch& e) {
        std::cerr << "verify mismatch: " << e.what() << '\n';
        return kVerifyMismatch;
    } catch (const IoError& e) {
        std::cerr << "I/O error: " << e.what() << '\n';
        return kIo;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kValidation;
    }
    return kOk;
}
