#include <flextpu/dataflow.hpp>
#include <flextpu/errors.hpp>

#include <algorithm>
#include <ostream>
#include <tuple>

namespace flextpu {

namespace {

Count fold_record_count(const FoldDims& f, Dataflow df) {
    const Count r = f.used_rows;
    const Count c = f.used_cols;
    const Count len = f.stream_len;
    if (df == Dataflow::OS) return r * len + c * len + r * c;
    return r * c + r * len + c * len;
}

// Operand entering west row `row` at stream step `step`, or the pinned value of PE(row, col).
OperandId streamed_west(Dataflow df, const FoldDims& f, Count row, Count step) {
    const Count i = f.row_offset + row;
    switch (df) {
        case Dataflow::OS: return {OperandMatrix::A, i, step};
        case Dataflow::WS: return {OperandMatrix::A, step, i};
        case Dataflow::IS: return {OperandMatrix::B, i, step};
    }
    return {};
}

OperandId pinned(Dataflow df, const FoldDims& f, Count row, Count col) {
    const Count i = f.row_offset + row;
    const Count j = f.col_offset + col;
    return df == Dataflow::WS ? OperandId{OperandMatrix::B, i, j} : OperandId{OperandMatrix::A, j, i};
}

OperandId stream_output(Dataflow df, const FoldDims& f, Count col, Count step) {
    const Count j = f.col_offset + col;
    return df == Dataflow::WS ? OperandId{OperandMatrix::O, step, j} : OperandId{OperandMatrix::O, j, step};
}

void emit_fold(std::vector<TraceRecord>& out, Dataflow df, const FoldDims& f, Count fold, Count start) {
    const Count r = f.used_rows;
    const Count c = f.used_cols;
    const Count len = f.stream_len;

    if (df == Dataflow::OS) {
        for (Count i = 0; i < r; ++i) {
            for (Count s = 0; s < len; ++s) {
                out.push_back({start + s + i, fold, Port::West, i, 0, {OperandMatrix::A, f.row_offset + i, s}});
            }
        }
        for (Count j = 0; j < c; ++j) {
            for (Count s = 0; s < len; ++s) {
                out.push_back({start + s + j, fold, Port::North, 0, j, {OperandMatrix::B, s, f.col_offset + j}});
            }
        }
        // Drain: the bottom row shifts out one accumulator row per cycle, deepest first.
        const Count drain_start = start + len + r + c - 2;
        for (Count d = 0; d < r; ++d) {
            for (Count j = 0; j < c; ++j) {
                out.push_back({drain_start + d, fold, Port::South, r - 1, j,
                               {OperandMatrix::O, f.row_offset + r - 1 - d, f.col_offset + j}});
            }
        }
        return;
    }

    for (Count i = 0; i < r; ++i) {
        for (Count j = 0; j < c; ++j) {
            out.push_back({start + i, fold, Port::Preload, i, j, pinned(df, f, i, j)});
        }
    }
    const Count stream_start = start + r;
    for (Count i = 0; i < r; ++i) {
        for (Count s = 0; s < len; ++s) {
            out.push_back({stream_start + s + i, fold, Port::West, i, 0, streamed_west(df, f, i, s)});
        }
    }
    for (Count j = 0; j < c; ++j) {
        for (Count s = 0; s < len; ++s) {
            out.push_back({stream_start + s + (r - 1) + j, fold, Port::South, r - 1, j, stream_output(df, f, j, s)});
        }
    }
}

}  // namespace

Count trace_record_count(const GemmShape& shape, const ArrayConfig& array, Dataflow df) {
    const FoldPlan plan = plan_folds(shape, array, df);
    Count total = 0;
    for (const auto& f : plan.folds) total += fold_record_count(f, df);
    return total;
}

OperandTrace generate_trace(const GemmShape& shape, const ArrayConfig& array, Dataflow df, Count record_cap) {
    const FoldPlan plan = plan_folds(shape, array, df);
    Count expected = 0;
    for (const auto& f : plan.folds) expected += fold_record_count(f, df);
    if (expected > record_cap) {
        throw ResourceError("operand trace needs " + std::to_string(expected) + " records, cap is " +
                            std::to_string(record_cap));
    }

    OperandTrace trace;
    trace.shape = shape;
    trace.dataflow = df;
    trace.folds = plan.folds;
    trace.records.reserve(expected);

    Count start = 0;
    for (Count fold = 0; fold < plan.fold_count(); ++fold) {
        trace.fold_start.push_back(start);
        emit_fold(trace.records, df, plan.folds[fold], fold, start);
        start += fold_cycles(plan.folds[fold]);
    }
    trace.total_cycles = start;

    std::sort(trace.records.begin(), trace.records.end(), [](const TraceRecord& a, const TraceRecord& b) {
        return std::tie(a.cycle, a.port, a.pe_row, a.pe_col) < std::tie(b.cycle, b.port, b.pe_row, b.pe_col);
    });
    return trace;
}

namespace {

std::ostream& operator<<(std::ostream& out, const OperandId& id) {
    switch (id.matrix) {
        case OperandMatrix::A: out << 'A'; break;
        case OperandMatrix::B: out << 'B'; break;
        case OperandMatrix::O: out << 'O'; break;
        case OperandMatrix::Bubble: return out << "BUBBLE";
    }
    return out << '(' << id.row << ';' << id.col << ')';
}

}  // namespace

void write_trace_csv(std::ostream& out, const OperandTrace& trace) {
    out << "cycle,port,operand\n";
    for (const auto& rec : trace.records) {
        out << rec.cycle << ',';
        switch (rec.port) {
            case Port::West: out << "west:" << rec.pe_row; break;
            case Port::North: out << "north:" << rec.pe_col; break;
            case Port::Preload: out << "preload:" << rec.pe_row << ':' << rec.pe_col; break;
            case Port::South: out << "south:" << rec.pe_col; break;
        }
        out << ',' << rec.operand << '\n';
    }
}

}  // namespace flextpu
