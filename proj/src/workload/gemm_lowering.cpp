#include <flextpu/workload.hpp>

namespace flextpu {

Count output_extent(Count input, Count filter, Count stride, Count padding) {
    return (input + 2 * padding - filter) / stride + 1;
}

GemmShape lower_to_gemm(const LayerDescriptor& layer) {
    validate(layer);
    const Count out_h = output_extent(layer.ifmap_h, layer.filter_h, layer.stride, layer.padding);
    const Count out_w = output_extent(layer.ifmap_w, layer.filter_w, layer.stride, layer.padding);
    return GemmShape{
        .t_rows = out_h * out_w,
        .k_inner = layer.filter_h * layer.filter_w * layer.channels,
        .m_cols = layer.num_filters,
    };
}

}  // namespace flextpu
