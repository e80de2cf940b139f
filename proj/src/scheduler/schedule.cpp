#include <flextpu/scheduler.hpp>
#include <flextpu/errors.hpp>

#include <ostream>

namespace flextpu {

Count ScheduleEntry::cycles(Dataflow df) const {
    switch (df) {
        case Dataflow::IS: return cycles_is;
        case Dataflow::OS: return cycles_os;
        case Dataflow::WS: return cycles_ws;
    }
    return 0;
}

Count FlexSchedule::static_total(Dataflow df) const {
    Count total = 0;
    for (const auto& e : entries) total += e.cycles(df);
    return total;
}

Dataflow select_dataflow(Count cycles_is, Count cycles_os, Count cycles_ws) {
    // Strict '<' keeps the earlier candidate on ties, so order encodes the preference.
    Dataflow best = Dataflow::OS;
    Count best_cycles = cycles_os;
    if (cycles_ws < best_cycles) {
        best = Dataflow::WS;
        best_cycles = cycles_ws;
    }
    if (cycles_is < best_cycles) best = Dataflow::IS;
    return best;
}

FlexSchedule build_schedule(const Topology& topology, const ArrayConfig& array) {
    validate(topology);
    validate(array);

    FlexSchedule schedule;
    schedule.model_name = topology.model_name;
    schedule.entries.reserve(topology.layers.size());
    for (const auto& layer : topology.layers) {
        const GemmShape shape = lower_to_gemm(layer);
        ScheduleEntry entry;
        entry.layer_name = layer.name;
        entry.cycles_is = analytical_cycles(shape, array, Dataflow::IS).cycles;
        entry.cycles_os = analytical_cycles(shape, array, Dataflow::OS).cycles;
        entry.cycles_ws = analytical_cycles(shape, array, Dataflow::WS).cycles;
        entry.chosen = select_dataflow(entry.cycles_is, entry.cycles_os, entry.cycles_ws);
        schedule.total_flex_cycles += entry.best_cycles();
        schedule.entries.push_back(std::move(entry));
    }
    return schedule;
}

void write_schedule_csv(std::ostream& out, const FlexSchedule& schedule) {
    out << "layer,chosen,is_cycles,os_cycles,ws_cycles,flex_cycles\n";
    for (const auto& e : schedule.entries) {
        out << e.layer_name << ',' << to_string(e.chosen) << ',' << e.cycles_is << ',' << e.cycles_os << ','
            << e.cycles_ws << ',' << e.best_cycles() << '\n';
    }
}

Count StaticComparison::total(Dataflow df) const {
    switch (df) {
        case Dataflow::IS: return total_is;
        case Dataflow::OS: return total_os;
        case Dataflow::WS: return total_ws;
    }
    return 0;
}

double StaticComparison::speedup(Dataflow df) const {
    return speedup_ratio(static_cast<double>(total(df)), static_cast<double>(total_flex));
}

double speedup_ratio(double static_cycles, double flex_cycles) {
    if (!(flex_cycles > 0.0)) throw ValidationError("flex cycle count must be positive");
    return static_cycles / flex_cycles;
}

StaticComparison compare_static(const FlexSchedule& schedule) {
    return StaticComparison{
        .total_is = schedule.static_total(Dataflow::IS),
        .total_os = schedule.static_total(Dataflow::OS),
        .total_ws = schedule.static_total(Dataflow::WS),
        .total_flex = schedule.total_flex_cycles,
    };
}

StaticComparison compare_static(const Topology& topology, const ArrayConfig& array) {
    return compare_static(build_schedule(topology, array));
}

}  // namespace flextpu
