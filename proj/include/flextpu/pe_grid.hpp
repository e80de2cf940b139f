#pragma once

#include <flextpu/dataflow.hpp>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

namespace flextpu {

struct IntMatrix {
    Count rows = 0;
    Count cols = 0;
    std::vector<std::int64_t> data;

    IntMatrix() = default;
    IntMatrix(Count r, Count c, std::int64_t fill = 0) : rows(r), cols(c), data(r * c, fill) {}

    std::int64_t& operator()(Count r, Count c) { return data[r * cols + c]; }
    std::int64_t operator()(Count r, Count c) const { return data[r * cols + c]; }

    bool operator==(const IntMatrix&) const = default;
};

// Which operand the Main Controller writes into the extra PE register.
enum class PinSource : std::uint8_t { None, IFMap, Weight };

std::string_view to_string(PinSource pin);

// CMU broadcast: one control value drives both MUXs in every PE.
//   IS -> "0", IFMap pinned    OS -> "1", nothing pinned    WS -> "0", weight pinned
struct GridConfig {
    ArrayConfig array;
    Dataflow mode = Dataflow::OS;
    bool control_bit = true;
    PinSource pin = PinSource::None;

    bool operator==(const GridConfig&) const = default;
};

GridConfig reconfigure(const ArrayConfig& array, Dataflow mode);

using Latch = std::optional<std::int64_t>;

// Behavioral model of the flexible PE. With control "1" the multiplier takes the
// north operand and the adder feeds back the accumulator (output stationary).
// With control "0" the multiplier takes stationary_reg and the adder takes the
// psum arriving from the north; the sum leaves southward every cycle.
struct FlexPEState {
    std::int64_t stationary_reg = 0;
    bool mux_a_sel = true;
    bool mux_b_sel = true;
    std::int64_t accumulator = 0;
    Latch in_west;
    Latch in_north;
    Latch out_east;
    Latch out_south;
    Count mac_count = 0;

    bool operator==(const FlexPEState&) const = default;
};

struct GridState {
    GridConfig config;
    Count cycle = 0;
    std::vector<FlexPEState> pes;  // row-major, array.rows x array.cols

    const FlexPEState& at(Count row, Count col) const { return pes[row * config.array.cols + col]; }
    FlexPEState& at(Count row, Count col) { return pes[row * config.array.cols + col]; }

    bool operator==(const GridState&) const = default;
};

GridState make_grid(const GridConfig& config);

// Zeroes every register and latch; keeps the configuration. Used between folds.
void clear_datapath(GridState& state);

struct PreloadWrite {
    Count row = 0;
    Count col = 0;
    std::int64_t value = 0;
};

// Edge inputs for one cycle. `west` is indexed by row, `north` by column; missing
// entries are bubbles. In control-"0" modes a north value on row 0 is an incoming psum.
struct Injection {
    std::vector<Latch> west;
    std::vector<Latch> north;
    std::vector<PreloadWrite> preload;
    bool drain = false;  // OS only: shift accumulators one row south
};

// Advances every PE by one cycle. Reads only `state`, so PE update order is irrelevant.
// Throws OverflowError if an accumulator leaves the accum_bits range.
GridState step(const GridState& state, const Injection& injected);

struct SimResult {
    IntMatrix ofmap;
    Count total_cycles = 0;
    std::vector<Count> per_fold_cycles;

    bool operator==(const SimResult&) const = default;
};

struct SimOptions {
    Count trace_cap = kDefaultTraceCap;
    std::ostream* state_dump = nullptr;  // cycle,row,col,accumulator per active PE
};

// Owns one grid. Replays the operand trace fold by fold; a fold ends when the
// hardware says so (OS: all MACs done then r' drain shifts; WS/IS: every psum has
// left the bottom row), so the cycle count is observed rather than computed.
class GridSimulator {
public:
    explicit GridSimulator(const ArrayConfig& array);

    // Applied between runs only; a run always starts from a cleared datapath.
    void reconfigure(Dataflow mode);
    const GridConfig& config() const { return state_.config; }

    SimResult run(const IntMatrix& a, const IntMatrix& b, const SimOptions& options = {});

private:
    GridState state_;
};

SimResult simulate_gemm(const IntMatrix& a, const IntMatrix& b, const ArrayConfig& array, Dataflow df,
                        const SimOptions& options = {});

}  // namespace flextpu
