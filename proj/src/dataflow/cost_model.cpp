#include <flextpu/dataflow.hpp>

namespace flextpu {

Count fold_cycles(const FoldDims& fold) {
    return fold.stream_len + 2 * fold.used_rows + fold.used_cols - 2;
}

MemoryAccesses count_memory_accesses(const GemmShape& shape, const FoldPlan& plan) {
    MemoryAccesses acc;
    const Count t = shape.t_rows;
    const Count k = shape.k_inner;
    const Count m = shape.m_cols;

    for (const auto& f : plan.folds) {
        const Count r = f.used_rows;
        const Count c = f.used_cols;
        switch (plan.dataflow) {
            case Dataflow::OS:
                // Both operands stream: r' IFMap rows and c' filter columns, each k long.
                acc.sram_reads_ifmap += r * k;
                acc.sram_reads_filter += k * c;
                break;
            case Dataflow::WS:
                acc.sram_reads_filter += r * c;
                acc.sram_reads_ifmap += t * r;
                break;
            case Dataflow::IS:
                acc.sram_reads_ifmap += r * c;
                acc.sram_reads_filter += r * m;
                break;
        }
    }
    acc.sram_writes_ofmap = t * m;
    if (plan.dataflow != Dataflow::OS && plan.row_folds > 1) {
        acc.psum_spill_accesses = 2 * t * m * (plan.row_folds - 1);
    }
    return acc;
}

double utilization(const GemmShape& shape, const ArrayConfig& array, Count cycles) {
    if (cycles == 0) return 0.0;
    return static_cast<double>(shape.macs()) /
           (static_cast<double>(array.pe_count()) * static_cast<double>(cycles));
}

LayerCostReport analytical_cycles(const GemmShape& shape, const ArrayConfig& array, Dataflow df,
                                  std::string layer_name) {
    const FoldPlan plan = plan_folds(shape, array, df);
    LayerCostReport report;
    report.layer_name = std::move(layer_name);
    report.dataflow = df;
    for (const auto& fold : plan.folds) report.cycles += fold_cycles(fold);
    report.fold_count = plan.fold_count();
    report.memory = count_memory_accesses(shape, plan);
    report.utilization = utilization(shape, array, report.cycles);
    return report;
}

}  // namespace flextpu
