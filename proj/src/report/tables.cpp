#include <flextpu/report.hpp>
#include <flextpu/csv.hpp>
#include <flextpu/errors.hpp>

#include <istream>
#include <sstream>

namespace flextpu {

namespace {

constexpr const char* kTableHeader = "Model,Flex-TPU Cycles,Dataflow,Static Dataflow Cycles,Speedup";

}  // namespace

std::string emit_speedup_table(const std::vector<ModelReport>& reports) {
    if (reports.empty()) throw ValidationError("speedup table needs at least one model report");

    std::array<double, 3> sums{};
    std::ostringstream out;
    out << kTableHeader << '\n';
    for (const auto& r : reports) {
        for (Dataflow df : kAllDataflows) {
            const double s = r.speedup(df);
            sums[static_cast<std::size_t>(df)] += s;
            out << r.model_name << ',' << r.totals.total_flex << ',' << to_string(df) << ',' << r.totals.total(df)
                << ',' << csv::format_double(s) << '\n';
        }
    }
    for (Dataflow df : kAllDataflows) {
        const double mean = sums[static_cast<std::size_t>(df)] / static_cast<double>(reports.size());
        out << "Mean,," << to_string(df) << ",," << csv::format_double(mean) << '\n';
    }
    return out.str();
}

SpeedupTable parse_speedup_table(std::istream& in) {
    SpeedupTable table;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line_no == 1) {
            if (csv::trim(line) != kTableHeader) throw ParseError(line_no, "not a speedup table header");
            continue;
        }
        if (csv::trim(line).empty()) continue;
        const auto f = csv::split_line(line);
        if (f.size() != 5) throw ParseError(line_no, "expected 5 columns");
        const auto df = parse_dataflow(f[2]);
        if (!df) throw ParseError(line_no, "unknown dataflow '" + f[2] + "'");
        if (f[0] == "Mean" && f[1].empty() && f[3].empty()) {
            table.mean_speedup[static_cast<std::size_t>(*df)] = csv::parse_double(f[4], line_no);
            continue;
        }
        table.rows.push_back(SpeedupRow{
            .model = f[0],
            .flex_cycles = static_cast<Count>(csv::parse_int(f[1], line_no)),
            .dataflow = *df,
            .static_cycles = static_cast<Count>(csv::parse_int(f[3], line_no)),
            .speedup = csv::parse_double(f[4], line_no),
        });
    }
    return table;
}

std::string emit_plot_data(const std::vector<ModelReport>& reports) {
    std::ostringstream out;
    out << "model,mode,value\n";
    for (const auto& r : reports) {
        for (RunMode mode : {RunMode::IS, RunMode::OS, RunMode::WS, RunMode::Flex}) {
            out << r.model_name << ',' << to_string(mode) << ',' << csv::format_double(r.execution_time_ms(mode))
                << '\n';
        }
    }
    return out.str();
}

}  // namespace flextpu
