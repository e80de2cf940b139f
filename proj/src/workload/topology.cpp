#include <flextpu/workload.hpp>
#include <flextpu/csv.hpp>
#include <flextpu/errors.hpp>

#include <array>
#include <filesystem>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>

namespace flextpu {

namespace {

constexpr std::size_t kBaseColumns = 8;
constexpr std::size_t kPaddedColumns = 9;

Count to_count(std::int64_t value, const std::string& layer, const char* field) {
    if (value < 0) {
        throw ValidationError("layer '" + layer + "': " + field + " must not be negative");
    }
    return static_cast<Count>(value);
}

}  // namespace

void validate(const LayerDescriptor& layer) {
    auto fail = [&](const std::string& why) {
        throw ValidationError("layer '" + layer.name + "': " + why);
    };
    if (layer.name.empty()) throw ValidationError("layer with empty name");

    const std::array<std::pair<const char*, Count>, 7> dims{{
        {"ifmap_h", layer.ifmap_h},
        {"ifmap_w", layer.ifmap_w},
        {"filter_h", layer.filter_h},
        {"filter_w", layer.filter_w},
        {"channels", layer.channels},
        {"num_filters", layer.num_filters},
        {"stride", layer.stride},
    }};
    for (const auto& [field, value] : dims) {
        if (value < 1) fail(std::string(field) + " must be >= 1");
    }
    if (layer.ifmap_h + 2 * layer.padding < layer.filter_h) fail("filter_h exceeds padded ifmap_h");
    if (layer.ifmap_w + 2 * layer.padding < layer.filter_w) fail("filter_w exceeds padded ifmap_w");
}

void validate(const Topology& topology) {
    if (topology.layers.empty()) {
        throw EmptyTopologyError("topology '" + topology.model_name + "' has no layers");
    }
    std::set<std::string> names;
    for (const auto& layer : topology.layers) {
        validate(layer);
        if (!names.insert(layer.name).second) {
            throw ValidationError("duplicate layer name '" + layer.name + "'");
        }
    }
}

Topology parse_topology(std::istream& source, std::string model_name) {
    Topology topology{std::move(model_name), {}};
    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;

    while (std::getline(source, line)) {
        ++line_no;
        const auto text = csv::trim(line);
        if (text.empty() || text.front() == '#') continue;
        if (!header_seen) {
            header_seen = true;
            continue;
        }

        auto fields = csv::split_line(text);
        if (fields.size() > kBaseColumns && fields.back().empty()) fields.pop_back();
        if (fields.size() != kBaseColumns && fields.size() != kPaddedColumns) {
            throw ParseError(line_no, "expected 8 or 9 columns, got " + std::to_string(fields.size()));
        }

        LayerDescriptor layer;
        layer.name = fields[0];
        std::array<std::int64_t, kPaddedColumns - 1> values{};
        for (std::size_t i = 1; i < fields.size(); ++i) {
            values[i - 1] = csv::parse_int(fields[i], line_no);
        }
        layer.ifmap_h = to_count(values[0], layer.name, "ifmap_h");
        layer.ifmap_w = to_count(values[1], layer.name, "ifmap_w");
        layer.filter_h = to_count(values[2], layer.name, "filter_h");
        layer.filter_w = to_count(values[3], layer.name, "filter_w");
        layer.channels = to_count(values[4], layer.name, "channels");
        layer.num_filters = to_count(values[5], layer.name, "num_filters");
        layer.stride = to_count(values[6], layer.name, "stride");
        layer.padding = fields.size() == kPaddedColumns ? to_count(values[7], layer.name, "padding") : 0;

        topology.layers.push_back(std::move(layer));
    }

    validate(topology);
    return topology;
}

Topology load_topology(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open topology file '" + path + "'");
    return parse_topology(in, std::filesystem::path(path).stem().string());
}

std::string serialize_topology(const Topology& topology) {
    std::ostringstream out;
    out << "Layer name,IFMAP Height,IFMAP Width,Filter Height,Filter Width,Channels,Num Filter,Strides,Padding\n";
    for (const auto& l : topology.layers) {
        out << l.name << ',' << l.ifmap_h << ',' << l.ifmap_w << ',' << l.filter_h << ',' << l.filter_w << ','
            << l.channels << ',' << l.num_filters << ',' << l.stride << ',' << l.padding << '\n';
    }
    return out.str();
}

}  // namespace flextpu
