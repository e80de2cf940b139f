#include <flextpu/pe_grid.hpp>
#include <flextpu/errors.hpp>

#include <string>

namespace flextpu {

std::string_view to_string(PinSource pin) {
    switch (pin) {
        case PinSource::None: return "none";
        case PinSource::IFMap: return "ifmap";
        case PinSource::Weight: return "weight";
    }
    return "?";
}

GridConfig reconfigure(const ArrayConfig& array, Dataflow mode) {
    GridConfig config{array, mode, true, PinSource::None};
    switch (mode) {
        case Dataflow::OS: break;
        case Dataflow::IS:
            config.control_bit = false;
            config.pin = PinSource::IFMap;
            break;
        case Dataflow::WS:
            config.control_bit = false;
            config.pin = PinSource::Weight;
            break;
    }
    return config;
}

GridState make_grid(const GridConfig& config) {
    validate(config.array);
    GridState state;
    state.config = config;
    state.pes.resize(config.array.pe_count());
    clear_datapath(state);
    return state;
}

void clear_datapath(GridState& state) {
    for (auto& pe : state.pes) {
        pe = FlexPEState{};
        pe.mux_a_sel = state.config.control_bit;
        pe.mux_b_sel = state.config.control_bit;
    }
}

namespace {

std::string pe_name(Count row, Count col, Count cycle) {
    return "PE(" + std::to_string(row) + "," + std::to_string(col) + ") at cycle " + std::to_string(cycle);
}

void check_range(std::int64_t value, unsigned bits, Count row, Count col, Count cycle) {
    const std::int64_t hi = (std::int64_t{1} << (bits - 1)) - 1;
    const std::int64_t lo = -hi - 1;
    if (value < lo || value > hi) {
        throw OverflowError("accumulator overflow at " + pe_name(row, col, cycle) + ": " + std::to_string(value) +
                            " does not fit in " + std::to_string(bits) + " bits");
    }
}

Latch edge(const std::vector<Latch>& lane, Count index) {
    return index < lane.size() ? lane[index] : Latch{};
}

}  // namespace

GridState step(const GridState& state, const Injection& injected) {
    const Count rows = state.config.array.rows;
    const Count cols = state.config.array.cols;
    const unsigned accum_bits = state.config.array.accum_bits;

    GridState next = state;
    next.cycle = state.cycle + 1;

    for (Count i = 0; i < rows; ++i) {
        for (Count j = 0; j < cols; ++j) {
            const FlexPEState& old = state.at(i, j);
            FlexPEState& pe = next.at(i, j);

            const Latch west = j == 0 ? edge(injected.west, i) : state.at(i, j - 1).out_east;
            const Latch north = i == 0 ? edge(injected.north, j) : state.at(i - 1, j).out_south;
            pe.in_west = west;
            pe.in_north = north;

            if (old.mux_a_sel) {
                if (injected.drain) {
                    pe.out_south = old.accumulator;
                    pe.accumulator = i == 0 ? 0 : state.at(i - 1, j).accumulator;
                    pe.out_east.reset();
                    continue;
                }
                if (west && north) {
                    pe.accumulator = old.accumulator + *west * *north;
                    check_range(pe.accumulator, accum_bits, i, j, state.cycle);
                    ++pe.mac_count;
                }
                pe.out_east = west;
                pe.out_south = north;
                continue;
            }

            if (west) {
                if (i > 0 && !north) {
                    throw VerifyMismatch("partial sum missing at " + pe_name(i, j, state.cycle));
                }
                pe.accumulator = north.value_or(0) + *west * old.stationary_reg;
                check_range(pe.accumulator, accum_bits, i, j, state.cycle);
                ++pe.mac_count;
                pe.out_south = pe.accumulator;
            } else {
                pe.out_south.reset();
            }
            pe.out_east = west;
        }
    }

    for (const auto& write : injected.preload) {
        next.at(write.row, write.col).stationary_reg = write.value;
    }
    return next;
}

}  // namespace flextpu
