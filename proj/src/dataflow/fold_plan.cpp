#include <flextpu/dataflow.hpp>
#include <flextpu/errors.hpp>

#include <algorithm>
#include <cctype>

namespace flextpu {

std::string_view to_string(Dataflow df) {
    switch (df) {
        case Dataflow::IS: return "IS";
        case Dataflow::OS: return "OS";
        case Dataflow::WS: return "WS";
    }
    return "?";
}

std::optional<Dataflow> parse_dataflow(std::string_view text) {
    std::string lower(text);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (lower == "is") return Dataflow::IS;
    if (lower == "os") return Dataflow::OS;
    if (lower == "ws") return Dataflow::WS;
    return std::nullopt;
}

void validate(const ArrayConfig& array) {
    if (array.rows < 1 || array.cols < 1) throw ValidationError("array rows and cols must be >= 1");
    if (!(array.clock_period_ns > 0.0)) throw ValidationError("clock period must be > 0");
    if (array.operand_bits < 2 || array.operand_bits > 32) throw ValidationError("operand_bits must be in [2, 32]");
    if (array.accum_bits < array.operand_bits || array.accum_bits > 63) {
        throw ValidationError("accum_bits must be in [operand_bits, 63]");
    }
}

namespace {

struct Mapping {
    Count row_dim;
    Count col_dim;
    Count stream_dim;
};

Mapping map_dims(const GemmShape& s, Dataflow df) {
    switch (df) {
        case Dataflow::OS: return {s.t_rows, s.m_cols, s.k_inner};
        case Dataflow::WS: return {s.k_inner, s.m_cols, s.t_rows};
        case Dataflow::IS: return {s.k_inner, s.t_rows, s.m_cols};
    }
    return {};
}

Count ceil_div(Count a, Count b) { return (a + b - 1) / b; }

void validate(const GemmShape& s) {
    if (s.t_rows < 1 || s.k_inner < 1 || s.m_cols < 1) throw ValidationError("GEMM dimensions must be >= 1");
}

}  // namespace

FoldPlan plan_folds(const GemmShape& shape, const ArrayConfig& array, Dataflow df) {
    validate(shape);
    validate(array);
    const auto [row_dim, col_dim, stream] = map_dims(shape, df);

    FoldPlan plan;
    plan.dataflow = df;
    plan.row_folds = ceil_div(row_dim, array.rows);
    plan.col_folds = ceil_div(col_dim, array.cols);
    plan.folds.reserve(plan.row_folds * plan.col_folds);
    for (Count rf = 0; rf < plan.row_folds; ++rf) {
        const Count row_offset = rf * array.rows;
        for (Count cf = 0; cf < plan.col_folds; ++cf) {
            const Count col_offset = cf * array.cols;
            plan.folds.push_back(FoldDims{
                .used_rows = std::min(array.rows, row_dim - row_offset),
                .used_cols = std::min(array.cols, col_dim - col_offset),
                .stream_len = stream,
                .row_offset = row_offset,
                .col_offset = col_offset,
            });
        }
    }
    return plan;
}

}  // namespace flextpu
