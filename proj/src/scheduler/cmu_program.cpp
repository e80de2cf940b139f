#include <flextpu/scheduler.hpp>
#include <flextpu/errors.hpp>

#include <ostream>

namespace flextpu {

std::vector<FoldPlan> chosen_plans(const FlexSchedule& schedule, const Topology& topology, const ArrayConfig& array) {
    if (schedule.entries.size() != topology.layers.size()) {
        throw ConsistencyError("schedule has " + std::to_string(schedule.entries.size()) + " entries, topology has " +
                               std::to_string(topology.layers.size()) + " layers");
    }
    std::vector<FoldPlan> plans;
    plans.reserve(schedule.entries.size());
    for (std::size_t i = 0; i < schedule.entries.size(); ++i) {
        plans.push_back(plan_folds(lower_to_gemm(topology.layers[i]), array, schedule.entries[i].chosen));
    }
    return plans;
}

CmuProgram emit_cmu_program(const FlexSchedule& schedule, const std::vector<FoldPlan>& plans) {
    if (schedule.entries.empty()) throw ConsistencyError("cannot program the CMU from an empty schedule");
    if (plans.size() != schedule.entries.size()) {
        throw ConsistencyError("schedule has " + std::to_string(schedule.entries.size()) + " layers but " +
                               std::to_string(plans.size()) + " fold plans were given");
    }

    CmuProgram program;
    program.records.reserve(plans.size());
    for (std::size_t i = 0; i < plans.size(); ++i) {
        const auto& entry = schedule.entries[i];
        if (plans[i].dataflow != entry.chosen) {
            throw ConsistencyError("fold plan for layer '" + entry.layer_name + "' is " +
                                   std::string(to_string(plans[i].dataflow)) + ", schedule chose " +
                                   std::string(to_string(entry.chosen)));
        }
        // Only the control encoding is needed here; the array itself is irrelevant.
        const GridConfig grid = reconfigure(ArrayConfig{}, entry.chosen);
        program.records.push_back(CmuRecord{
            .layer_index = i,
            .layer_name = entry.layer_name,
            .dataflow = entry.chosen,
            .control_bit = grid.control_bit,
            .pin = grid.pin,
            .row_folds = plans[i].row_folds,
            .col_folds = plans[i].col_folds,
        });
    }
    return program;
}

void write_cmu_csv(std::ostream& out, const CmuProgram& program) {
    out << "layer_index,layer_name,dataflow,control_bit,pin_source\n";
    for (const auto& r : program.records) {
        out << r.layer_index << ',' << r.layer_name << ',' << to_string(r.dataflow) << ',' << (r.control_bit ? 1 : 0)
            << ',' << to_string(r.pin) << '\n';
    }
}

}  // namespace flextpu
