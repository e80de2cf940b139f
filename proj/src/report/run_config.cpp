#include <flextpu/report.hpp>
#include <flextpu/csv.hpp>
#include <flextpu/errors.hpp>

#include <fstream>
#include <istream>

namespace flextpu {

std::string_view to_string(RunMode mode) {
    switch (mode) {
        case RunMode::IS: return "IS";
        case RunMode::OS: return "OS";
        case RunMode::WS: return "WS";
        case RunMode::Flex: return "Flex";
    }
    return "?";
}

std::optional<RunMode> parse_run_mode(std::string_view text) {
    if (auto df = parse_dataflow(text)) {
        switch (*df) {
            case Dataflow::IS: return RunMode::IS;
            case Dataflow::OS: return RunMode::OS;
            case Dataflow::WS: return RunMode::WS;
        }
    }
    if (text == "flex" || text == "Flex" || text == "FLEX") return RunMode::Flex;
    return std::nullopt;
}

void validate(const RunConfig& config) {
    if (config.topology_path.empty()) throw ValidationError("no topology file given");
    if (config.rows < 1 || config.cols < 1) throw ValidationError("array rows and cols must be >= 1");
    if (!(config.clock_ns_static > 0.0) || !(config.clock_ns_flex > 0.0)) {
        throw ValidationError("clock periods must be > 0");
    }
}

void apply_config_text(std::istream& in, RunConfig& config) {
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto text = csv::trim(line);
        if (text.empty() || text.front() == '#') continue;
        const auto eq = text.find('=');
        if (eq == std::string_view::npos) throw ParseError(line_no, "expected key=value");
        const std::string key(csv::trim(text.substr(0, eq)));
        const std::string value(csv::trim(text.substr(eq + 1)));

        auto positive = [&](std::int64_t v) {
            if (v < 1) throw ParseError(line_no, key + " must be >= 1");
            return static_cast<Count>(v);
        };
        if (key == "topology") {
            config.topology_path = value;
        } else if (key == "rows") {
            config.rows = positive(csv::parse_int(value, line_no));
        } else if (key == "cols") {
            config.cols = positive(csv::parse_int(value, line_no));
        } else if (key == "dataflow") {
            const auto mode = parse_run_mode(value);
            if (!mode) throw ParseError(line_no, "unknown dataflow '" + value + "'");
            config.mode = *mode;
        } else if (key == "clock-ns") {
            config.clock_ns_static = csv::parse_double(value, line_no);
        } else if (key == "flex-clock-ns") {
            config.clock_ns_flex = csv::parse_double(value, line_no);
        } else if (key == "verify") {
            if (value != "true" && value != "false" && value != "1" && value != "0") {
                throw ParseError(line_no, "verify must be true or false");
            }
            config.verify = value == "true" || value == "1";
        } else if (key == "out") {
            config.output_path = value;
        } else if (key == "trace-cap") {
            config.trace_cap = positive(csv::parse_int(value, line_no));
        } else {
            throw ParseError(line_no, "unknown key '" + key + "'");
        }
    }
}

void load_config_file(const std::string& path, RunConfig& config) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file '" + path + "'");
    apply_config_text(in, config);
}

}  // namespace flextpu
