#include <flextpu/report.hpp>
#include <flextpu/csv.hpp>
#include <flextpu/errors.hpp>

#include <istream>
#include <ostream>

namespace flextpu {

namespace {

constexpr const char* kReportHeader =
    "layer,dataflow,cycles,folds,sram_reads_ifmap,sram_reads_filter,sram_writes_ofmap,psum_spills,utilization";

void write_cost_fields(std::ostream& out, const LayerCostReport& c) {
    out << c.layer_name << ',' << to_string(c.dataflow) << ',' << c.cycles << ',' << c.fold_count << ','
        << c.memory.sram_reads_ifmap << ',' << c.memory.sram_reads_filter << ',' << c.memory.sram_writes_ofmap << ','
        << c.memory.psum_spill_accesses << ',' << csv::format_double(c.utilization) << '\n';
}

Count parse_count(const std::string& field, std::size_t line) {
    const auto v = csv::parse_int(field, line);
    if (v < 0) throw ParseError(line, "negative count '" + field + "'");
    return static_cast<Count>(v);
}

}  // namespace

void write_report_csv(std::ostream& out, const ModelReport& report, RunMode mode) {
    out << kReportHeader << '\n';
    for (const auto& row : report.layers) write_cost_fields(out, row.cost(mode));
}

std::vector<LayerCostReport> parse_report_csv(std::istream& in) {
    std::vector<LayerCostReport> rows;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line_no == 1) {
            if (csv::trim(line) != kReportHeader) throw ParseError(line_no, "not a report CSV header");
            continue;
        }
        if (csv::trim(line).empty()) continue;
        const auto f = csv::split_line(line);
        if (f.size() != 9) throw ParseError(line_no, "expected 9 columns, got " + std::to_string(f.size()));
        const auto df = parse_dataflow(f[1]);
        if (!df) throw ParseError(line_no, "unknown dataflow '" + f[1] + "'");

        LayerCostReport c;
        c.layer_name = f[0];
        c.dataflow = *df;
        c.cycles = parse_count(f[2], line_no);
        c.fold_count = parse_count(f[3], line_no);
        c.memory.sram_reads_ifmap = parse_count(f[4], line_no);
        c.memory.sram_reads_filter = parse_count(f[5], line_no);
        c.memory.sram_writes_ofmap = parse_count(f[6], line_no);
        c.memory.psum_spill_accesses = parse_count(f[7], line_no);
        c.utilization = csv::parse_double(f[8], line_no);
        rows.push_back(std::move(c));
    }
    return rows;
}

void write_sweep_csv(std::ostream& out, const std::vector<ModelReport>& reports, RunMode mode) {
    out << "rows,cols," << kReportHeader << '\n';
    for (const auto& report : reports) {
        for (const auto& row : report.layers) {
            out << report.rows << ',' << report.cols << ',';
            write_cost_fields(out, row.cost(mode));
        }
    }
}

}  // namespace flextpu
