#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace flextpu {

using Count = std::uint64_t;

// Geometry of one MAC-bearing layer (conv or FC). FC layers are 1x1 convolutions
// on a 1x1 IFMap with `channels` inputs and `num_filters` outputs.
struct LayerDescriptor {
    std::string name;
    Count ifmap_h = 1;
    Count ifmap_w = 1;
    Count filter_h = 1;
    Count filter_w = 1;
    Count channels = 1;
    Count num_filters = 1;
    Count stride = 1;
    Count padding = 0;

    bool operator==(const LayerDescriptor&) const = default;
};

// Operand-matrix dimensions after im2col: (t x k) * (k x m) -> (t x m).
struct GemmShape {
    Count t_rows = 1;   // output pixels
    Count k_inner = 1;  // filter volume
    Count m_cols = 1;   // filter count

    Count macs() const { return t_rows * k_inner * m_cols; }

    bool operator==(const GemmShape&) const = default;
};

struct Topology {
    std::string model_name;
    std::vector<LayerDescriptor> layers;

    bool operator==(const Topology&) const = default;
};

// Throws ValidationError naming the layer when an invariant does not hold.
void validate(const LayerDescriptor& layer);
void validate(const Topology& topology);

/// Reads the ScaleSim-style topology CSV:
///   Name, IFMapH, IFMapW, FilterH, FilterW, Channels, NumFilters, Stride[, Padding]
/// The first non-comment line is the header. Lines starting with '#' are skipped
/// and a trailing comma on any row is ignored.
Topology parse_topology(std::istream& source, std::string model_name = "model");
Topology load_topology(const std::string& path);

// Always writes the 9-column form.
std::string serialize_topology(const Topology& topology);

// Output spatial size along one axis: floor((in + 2p - f) / s) + 1.
Count output_extent(Count input, Count filter, Count stride, Count padding);

GemmShape lower_to_gemm(const LayerDescriptor& layer);

}  // namespace flextpu
