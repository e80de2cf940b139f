#include <flextpu/scheduler.hpp>
#include <flextpu/errors.hpp>

#include <random>

namespace flextpu {

namespace {

IntMatrix random_operands(Count rows, Count cols, unsigned bits, std::mt19937_64& rng) {
    const std::int64_t hi = (std::int64_t{1} << (bits - 1)) - 1;
    std::uniform_int_distribution<std::int64_t> dist(-hi - 1, hi);
    IntMatrix m(rows, cols);
    for (auto& v : m.data) v = dist(rng);
    return m;
}

IntMatrix reference_product(const IntMatrix& a, const IntMatrix& b) {
    IntMatrix out(a.rows, b.cols);
    for (Count i = 0; i < a.rows; ++i) {
        for (Count p = 0; p < a.cols; ++p) {
            const std::int64_t x = a(i, p);
            for (Count j = 0; j < b.cols; ++j) out(i, j) += x * b(p, j);
        }
    }
    return out;
}

}  // namespace

LayerVerification verify_layer(const LayerDescriptor& layer, const ArrayConfig& array, Dataflow df, Count trace_cap,
                               std::uint64_t seed) {
    const GemmShape shape = lower_to_gemm(layer);
    LayerVerification v;
    v.layer_name = layer.name;
    v.dataflow = df;
    v.analytical_cycles = analytical_cycles(shape, array, df).cycles;
    if (trace_record_count(shape, array, df) > trace_cap) return v;

    // Synthetic operands must not overflow the accumulator over the full k sum.
    unsigned bits = array.operand_bits;
    while (bits > 2 && 2.0 * static_cast<double>(Count{1} << (2 * (bits - 1))) * static_cast<double>(shape.k_inner) >=
                           static_cast<double>(Count{1} << (array.accum_bits - 1))) {
        --bits;
    }

    std::mt19937_64 rng(seed);
    const IntMatrix a = random_operands(shape.t_rows, shape.k_inner, bits, rng);
    const IntMatrix b = random_operands(shape.k_inner, shape.m_cols, bits, rng);

    SimOptions options;
    options.trace_cap = trace_cap;
    const SimResult sim = simulate_gemm(a, b, array, df, options);
    v.simulated = true;
    v.simulated_cycles = sim.total_cycles;
    v.ofmap_matches = sim.ofmap == reference_product(a, b);
    return v;
}

std::vector<LayerVerification> verify_schedule(const FlexSchedule& schedule, const Topology& topology,
                                               const ArrayConfig& array, Count trace_cap) {
    if (schedule.entries.size() != topology.layers.size()) {
        throw ConsistencyError("schedule and topology cover different layer lists");
    }
    std::vector<LayerVerification> results;
    for (std::size_t i = 0; i < topology.layers.size(); ++i) {
        results.push_back(verify_layer(topology.layers[i], array, schedule.entries[i].chosen, trace_cap, i + 1));
    }
    return results;
}

}  // namespace flextpu
