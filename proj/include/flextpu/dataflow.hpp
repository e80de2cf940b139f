#pragma once

#include <flextpu/workload.hpp>

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace flextpu {

// Which operand stays pinned in the PEs while the others stream.
enum class Dataflow : std::uint8_t { IS, OS, WS };

inline constexpr std::array<Dataflow, 3> kAllDataflows{Dataflow::IS, Dataflow::OS, Dataflow::WS};

std::string_view to_string(Dataflow df);
// Accepts "is"/"os"/"ws" in either case.
std::optional<Dataflow> parse_dataflow(std::string_view text);

struct ArrayConfig {
    Count rows = 32;
    Count cols = 32;
    double clock_period_ns = 6.63;
    unsigned operand_bits = 8;
    unsigned accum_bits = 32;

    Count pe_count() const { return rows * cols; }

    bool operator==(const ArrayConfig&) const = default;
};

void validate(const ArrayConfig& array);

// One pass of the array over a tile of the stationary matrix.
struct FoldDims {
    Count used_rows = 0;   // r'
    Count used_cols = 0;   // c'
    Count stream_len = 0;  // streamed-dimension length
    Count row_offset = 0;  // first index of the row-mapped GEMM dimension
    Count col_offset = 0;  // first index of the column-mapped GEMM dimension

    bool operator==(const FoldDims&) const = default;
};

// Mapping per dataflow (array rows x array cols, streamed):
//   OS: t x m, stream k      WS: k x m, stream t      IS: k x t, stream m
// Folds are listed row-major: every column fold of a row fold before the next.
struct FoldPlan {
    Dataflow dataflow = Dataflow::OS;
    Count row_folds = 0;
    Count col_folds = 0;
    std::vector<FoldDims> folds;

    Count fold_count() const { return static_cast<Count>(folds.size()); }
};

FoldPlan plan_folds(const GemmShape& shape, const ArrayConfig& array, Dataflow df);

// Cycles for one fold: stream_len + 2r' + c' - 2. Covers the skewed fill, the
// streamed MACs and either the OS drain or the WS/IS stationary preload.
Count fold_cycles(const FoldDims& fold);

struct MemoryAccesses {
    Count sram_reads_ifmap = 0;
    Count sram_reads_filter = 0;
    Count sram_writes_ofmap = 0;
    Count psum_spill_accesses = 0;

    bool operator==(const MemoryAccesses&) const = default;
};

MemoryAccesses count_memory_accesses(const GemmShape& shape, const FoldPlan& plan);

struct LayerCostReport {
    std::string layer_name;
    Dataflow dataflow = Dataflow::OS;
    Count cycles = 0;
    Count fold_count = 0;
    MemoryAccesses memory;
    double utilization = 0.0;

    bool operator==(const LayerCostReport&) const = default;
};

double utilization(const GemmShape& shape, const ArrayConfig& array, Count cycles);

LayerCostReport analytical_cycles(const GemmShape& shape, const ArrayConfig& array, Dataflow df,
                                  std::string layer_name = {});

// ---------------------------------------------------------------------------
// Operand trace: the Dataflow Generator's per-cycle read/write schedule.
// ---------------------------------------------------------------------------

enum class Port : std::uint8_t {
    West,     // streaming operand entering PE(row, 0)
    North,    // streaming operand entering PE(0, col) (OS only)
    Preload,  // register-file write of a stationary operand into PE(row, col)
    South,    // result leaving PE(r'-1, col); the operand names its write address
};

enum class OperandMatrix : std::uint8_t { A, B, O, Bubble };

struct OperandId {
    OperandMatrix matrix = OperandMatrix::Bubble;
    Count row = 0;
    Count col = 0;

    bool operator==(const OperandId&) const = default;
};

struct TraceRecord {
    Count cycle = 0;
    Count fold = 0;
    Port port = Port::West;
    Count pe_row = 0;
    Count pe_col = 0;
    OperandId operand;

    bool operator==(const TraceRecord&) const = default;
};

struct OperandTrace {
    GemmShape shape;
    Dataflow dataflow = Dataflow::OS;
    std::vector<FoldDims> folds;
    std::vector<Count> fold_start;  // first global cycle of each fold
    Count total_cycles = 0;
    std::vector<TraceRecord> records;  // sorted by cycle, then port, then lane
};

inline constexpr Count kDefaultTraceCap = 2'000'000;

// Number of records generate_trace would produce, without building them.
Count trace_record_count(const GemmShape& shape, const ArrayConfig& array, Dataflow df);

// Throws ResourceError when trace_record_count exceeds `record_cap`.
OperandTrace generate_trace(const GemmShape& shape, const ArrayConfig& array, Dataflow df,
                            Count record_cap = kDefaultTraceCap);

// Debug CSV with header cycle,port,operand. Ports: west:<row>, north:<col>,
// preload:<row>:<col>, south:<col>. Operands: A(r;c), B(r;c), O(r;c) or BUBBLE.
void write_trace_csv(std::ostream& out, const OperandTrace& trace);

}  // namespace flextpu
