#include <flextpu/pe_grid.hpp>
#include <flextpu/errors.hpp>

#include <ostream>
#include <string>

namespace flextpu {

namespace {

void check_operands(const IntMatrix& m, unsigned bits, char name) {
    const std::int64_t hi = (std::int64_t{1} << (bits - 1)) - 1;
    const std::int64_t lo = -hi - 1;
    for (Count r = 0; r < m.rows; ++r) {
        for (Count c = 0; c < m.cols; ++c) {
            if (m(r, c) < lo || m(r, c) > hi) {
                throw ValidationError(std::string(1, name) + "(" + std::to_string(r) + "," + std::to_string(c) +
                                      ") = " + std::to_string(m(r, c)) + " is not a signed " +
                                      std::to_string(bits) + "-bit operand");
            }
        }
    }
}

std::int64_t operand_value(const OperandId& id, const IntMatrix& a, const IntMatrix& b) {
    switch (id.matrix) {
        case OperandMatrix::A: return a(id.row, id.col);
        case OperandMatrix::B: return b(id.row, id.col);
        default: throw VerifyMismatch("trace injects a non-input operand");
    }
}

std::string where(Dataflow df, Count fold, Count local_cycle) {
    return std::string(to_string(df)) + " fold " + std::to_string(fold) + " local cycle " + std::to_string(local_cycle);
}

bool all_macs_done(const GridState& state, const FoldDims& f) {
    for (Count i = 0; i < f.used_rows; ++i) {
        for (Count j = 0; j < f.used_cols; ++j) {
            if (state.at(i, j).mac_count < f.stream_len) return false;
        }
    }
    return true;
}

}  // namespace

GridSimulator::GridSimulator(const ArrayConfig& array) : state_(make_grid(flextpu::reconfigure(array, Dataflow::OS))) {}

void GridSimulator::reconfigure(Dataflow mode) {
    state_.config = flextpu::reconfigure(state_.config.array, mode);
    clear_datapath(state_);
}

SimResult GridSimulator::run(const IntMatrix& a, const IntMatrix& b, const SimOptions& options) {
    const ArrayConfig& array = state_.config.array;
    const Dataflow df = state_.config.mode;
    if (a.rows < 1 || a.cols < 1 || b.cols < 1) throw ValidationError("matrix dimensions must be >= 1");
    if (a.cols != b.rows) throw ValidationError("inner dimensions of a and b differ");
    check_operands(a, array.operand_bits, 'a');
    check_operands(b, array.operand_bits, 'b');

    const GemmShape shape{a.rows, a.cols, b.cols};
    const OperandTrace trace = generate_trace(shape, array, df, options.trace_cap);
    const std::int64_t accum_hi = (std::int64_t{1} << (array.accum_bits - 1)) - 1;

    SimResult result;
    result.ofmap = IntMatrix(shape.t_rows, shape.m_cols);
    std::vector<bool> written(shape.t_rows * shape.m_cols, false);

    if (options.state_dump) *options.state_dump << "cycle,row,col,accumulator\n";

    std::size_t cursor = 0;
    Count global_start = 0;
    for (Count fold = 0; fold < trace.folds.size(); ++fold) {
        const FoldDims& f = trace.folds[fold];
        if (trace.fold_start[fold] != global_start) {
            throw VerifyMismatch("trace starts " + where(df, fold, 0) + " at cycle " +
                                 std::to_string(trace.fold_start[fold]) + ", grid is ready at " +
                                 std::to_string(global_start));
        }
        clear_datapath(state_);

        const Count bottom = f.used_rows - 1;
        const Count expected_outputs = df == Dataflow::OS ? f.used_rows * f.used_cols : f.used_cols * f.stream_len;
        // Anything beyond this means the fold never completes.
        const Count stall_limit = 4 * (f.stream_len + f.used_rows + f.used_cols) + 16;

        Count local = 0;
        Count emitted = 0;
        Count drain_left = df == Dataflow::OS ? f.used_rows : 0;
        bool draining = false;

        while (true) {
            const Count now = global_start + local;
            Injection in;
            in.west.resize(array.rows);
            in.north.resize(array.cols);
            in.drain = draining;

            std::vector<const TraceRecord*> writes;
            for (; cursor < trace.records.size() && trace.records[cursor].cycle == now; ++cursor) {
                const TraceRecord& rec = trace.records[cursor];
                if (rec.fold != fold) throw VerifyMismatch("trace record of another fold at " + where(df, fold, local));
                switch (rec.port) {
                    case Port::West: in.west[rec.pe_row] = operand_value(rec.operand, a, b); break;
                    case Port::North: in.north[rec.pe_col] = operand_value(rec.operand, a, b); break;
                    case Port::Preload:
                        in.preload.push_back({rec.pe_row, rec.pe_col, operand_value(rec.operand, a, b)});
                        break;
                    case Port::South: writes.push_back(&rec); break;
                }
            }
            if (cursor < trace.records.size() && trace.records[cursor].cycle < now) {
                throw VerifyMismatch("trace is not sorted by cycle");
            }

            state_ = step(state_, in);

            if (options.state_dump) {
                for (Count i = 0; i < f.used_rows; ++i) {
                    for (Count j = 0; j < f.used_cols; ++j) {
                        *options.state_dump << now << ',' << i << ',' << j << ',' << state_.at(i, j).accumulator
                                            << '\n';
                    }
                }
            }

            // Results leaving the bottom of the active region this cycle.
            Count emitted_now = 0;
            const bool results_on_south = df != Dataflow::OS || draining;
            if (results_on_south) {
                for (Count j = 0; j < f.used_cols; ++j) {
                    const Latch& out = state_.at(bottom, j).out_south;
                    if (!out) continue;
                    const TraceRecord* target = nullptr;
                    for (const auto* w : writes) {
                        if (w->pe_col == j) target = w;
                    }
                    if (!target) {
                        throw VerifyMismatch("result left column " + std::to_string(j) +
                                             " with no write address at " + where(df, fold, local));
                    }
                    auto& cell = result.ofmap(target->operand.row, target->operand.col);
                    const auto index = target->operand.row * shape.m_cols + target->operand.col;
                    if (df == Dataflow::OS) {
                        if (written[index]) throw VerifyMismatch("output written twice at " + where(df, fold, local));
                        cell = *out;
                    } else {
                        cell += *out;
                        if (cell > accum_hi || cell < -accum_hi - 1) {
                            throw OverflowError("accumulator overflow in the external psum buffer for PE(" +
                                                std::to_string(bottom) + "," + std::to_string(j) + ") at cycle " +
                                                std::to_string(now));
                        }
                    }
                    written[index] = true;
                    ++emitted_now;
                }
            }
            if (emitted_now != writes.size()) {
                throw VerifyMismatch(std::to_string(writes.size()) + " write addresses but " +
                                     std::to_string(emitted_now) + " results at " + where(df, fold, local));
            }
            emitted += emitted_now;
            ++local;

            if (df == Dataflow::OS) {
                if (draining && --drain_left == 0) break;
                if (!draining && all_macs_done(state_, f)) draining = true;
            } else if (emitted == expected_outputs) {
                break;
            }
            if (local > stall_limit) throw VerifyMismatch("fold did not complete: " + where(df, fold, local));
        }

        if (emitted != expected_outputs) {
            throw VerifyMismatch("fold emitted " + std::to_string(emitted) + " of " +
                                 std::to_string(expected_outputs) + " results: " + where(df, fold, local));
        }
        if (cursor < trace.records.size() && trace.records[cursor].fold == fold) {
            throw VerifyMismatch("trace continues past the end of " + where(df, fold, local));
        }
        result.per_fold_cycles.push_back(local);
        result.total_cycles += local;
        global_start += local;
    }

    for (bool w : written) {
        if (!w) throw VerifyMismatch("an output element was never written");
    }
    clear_datapath(state_);
    return result;
}

SimResult simulate_gemm(const IntMatrix& a, const IntMatrix& b, const ArrayConfig& array, Dataflow df,
                        const SimOptions& options) {
    GridSimulator sim(array);
    sim.reconfigure(df);
    return sim.run(a, b, options);
}

}  // namespace flextpu
