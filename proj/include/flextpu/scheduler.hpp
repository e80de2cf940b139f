#pragma once

#include <flextpu/dataflow.hpp>
#include <flextpu/pe_grid.hpp>
#include <flextpu/workload.hpp>

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

namespace flextpu {

struct ScheduleEntry {
    std::string layer_name;
    Dataflow chosen = Dataflow::OS;
    Count cycles_is = 0;
    Count cycles_os = 0;
    Count cycles_ws = 0;

    Count cycles(Dataflow df) const;
    Count best_cycles() const { return cycles(chosen); }

    bool operator==(const ScheduleEntry&) const = default;
};

struct FlexSchedule {
    std::string model_name;
    std::vector<ScheduleEntry> entries;
    Count total_flex_cycles = 0;

    Count static_total(Dataflow df) const;

    bool operator==(const FlexSchedule&) const = default;
};

// Minimum-cycle dataflow; ties prefer OS, then WS, then IS.
Dataflow select_dataflow(Count cycles_is, Count cycles_os, Count cycles_ws);

FlexSchedule build_schedule(const Topology& topology, const ArrayConfig& array);

// Table-I-style CSV: layer,chosen,is_cycles,os_cycles,ws_cycles,flex_cycles
void write_schedule_csv(std::ostream& out, const FlexSchedule& schedule);

struct CmuRecord {
    Count layer_index = 0;
    std::string layer_name;
    Dataflow dataflow = Dataflow::OS;
    bool control_bit = true;
    PinSource pin = PinSource::None;
    Count row_folds = 0;
    Count col_folds = 0;

    bool operator==(const CmuRecord&) const = default;
};

struct CmuProgram {
    std::vector<CmuRecord> records;
};

// `plans[i]` must be the fold plan of entry i under its chosen dataflow.
CmuProgram emit_cmu_program(const FlexSchedule& schedule, const std::vector<FoldPlan>& plans);

// Fold plans for each layer's chosen dataflow.
std::vector<FoldPlan> chosen_plans(const FlexSchedule& schedule, const Topology& topology, const ArrayConfig& array);

// CSV: layer_index,layer_name,dataflow,control_bit,pin_source
void write_cmu_csv(std::ostream& out, const CmuProgram& program);

struct StaticComparison {
    Count total_is = 0;
    Count total_os = 0;
    Count total_ws = 0;
    Count total_flex = 0;

    Count total(Dataflow df) const;
    double speedup(Dataflow df) const;
};

// static / flex
double speedup_ratio(double static_cycles, double flex_cycles);

StaticComparison compare_static(const Topology& topology, const ArrayConfig& array);
StaticComparison compare_static(const FlexSchedule& schedule);

// ---------------------------------------------------------------------------
// Optional cross-check of the analytical model against the PE grid.
// ---------------------------------------------------------------------------

struct LayerVerification {
    std::string layer_name;
    Dataflow dataflow = Dataflow::OS;
    bool simulated = false;  // false: trace would exceed the cap
    Count analytical_cycles = 0;
    Count simulated_cycles = 0;
    bool ofmap_matches = false;

    bool passed() const { return !simulated || (analytical_cycles == simulated_cycles && ofmap_matches); }
};

// Runs one layer under `df` on synthetic INT operands (seeded from `seed`).
LayerVerification verify_layer(const LayerDescriptor& layer, const ArrayConfig& array, Dataflow df, Count trace_cap,
                               std::uint64_t seed);

// Verifies every layer of the schedule under its chosen dataflow.
std::vector<LayerVerification> verify_schedule(const FlexSchedule& schedule, const Topology& topology,
                                               const ArrayConfig& array, Count trace_cap);

}  // namespace flextpu
