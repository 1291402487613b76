#include "paes/sweep.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

#include "json_util.hpp"
#include "paes/sched_sim.hpp"

namespace paes::report {

std::string_view to_string(Format format) {
    switch (format) {
    case Format::csv: return "csv";
    case Format::json: return "json";
    case Format::markdown: return "markdown";
    }
    return "?";
}

void SweepSpec::validate() const {
    if (modes.empty()) throw std::invalid_argument("sweep: empty mode axis");
    if (blocks.empty()) throw std::invalid_argument("sweep: empty L axis");
    if (pes.empty()) throw std::invalid_argument("sweep: empty M_r axis");
    if (inner_parallel.empty()) throw std::invalid_argument("sweep: empty inner-parallel axis");
    params.validate();
}

SweepRow evaluate_point(const cost::PipelineConfig& config, bool simulate) {
    config.validate();
    const TimeQuantum t_xor = config.params.t_xor;
    const TimeQuantum seq = cost::sequential_time(config.mode, config.num_blocks, config.params);
    const TimeQuantum pipe = cost::paper_pipeline_time(config);
    const cost::MetricRow m = cost::metrics(seq, pipe, config.pe_per_stage);
    SweepRow row;
    row.config = config;
    row.seq_txor = seq.in_units_of(t_xor);
    row.paper_pipeline_txor = pipe.in_units_of(t_xor);
    row.flowshop_txor = cost::flowshop_makespan(config).in_units_of(t_xor);
    row.speedup = m.speedup;
    row.efficiency = m.efficiency;
    row.improvement = m.improvement;
    if (simulate) row.simulated_txor = sim::simulate(config, {false}).makespan.in_units_of(t_xor);
    return row;
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
    spec.validate();
    std::vector<cost::Mode> modes = spec.modes;
    std::vector<int> blocks = spec.blocks;
    std::vector<int> pes = spec.pes;
    for (auto* axis : {&blocks, &pes}) {
        std::sort(axis->begin(), axis->end());
        axis->erase(std::unique(axis->begin(), axis->end()), axis->end());
    }
    std::sort(modes.begin(), modes.end());
    modes.erase(std::unique(modes.begin(), modes.end()), modes.end());
    std::vector<bool> layouts;
    for (bool v : {false, true})
        if (std::find(spec.inner_parallel.begin(), spec.inner_parallel.end(), v) != spec.inner_parallel.end())
            layouts.push_back(v);

    std::vector<SweepRow> rows;
    for (cost::Mode mode : modes) {
        for (int l : blocks) {
            for (int m : pes) {
                for (bool inner : layouts) {
                    cost::PipelineConfig c;
                    c.mode = mode;
                    c.num_blocks = l;
                    c.pe_per_stage = m;
                    c.inner_parallel = inner;
                    c.params = spec.params;
                    rows.push_back(evaluate_point(c, spec.simulate));
                }
            }
        }
    }
    return rows;
}

namespace {

std::string_view mode_name(cost::Mode mode) { return mode == cost::Mode::encrypt ? "enc" : "dec"; }

Rational t_ov_shifts(const SweepRow& r) { return r.config.params.t_ov.in_shifts(); }

bool any_simulated(const std::vector<SweepRow>& rows) {
    return std::any_of(rows.begin(), rows.end(), [](const SweepRow& r) { return r.simulated_txor.has_value(); });
}

void write_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
    const bool sim = any_simulated(rows);
    os << "mode,L,M_r,inner_parallel,t_ov,seq_txor,paper_pipeline_txor,flowshop_txor,speedup,efficiency,improvement";
    if (sim) os << ",simulated_txor";
    os << '\n';
    for (const SweepRow& r : rows) {
        os << mode_name(r.config.mode) << ',' << r.config.num_blocks << ',' << r.config.pe_per_stage << ','
           << (r.config.inner_parallel ? "true" : "false") << ',' << t_ov_shifts(r) << ',' << r.seq_txor << ','
           << r.paper_pipeline_txor << ',' << r.flowshop_txor << ',' << r.speedup << ',' << r.efficiency << ','
           << r.improvement;
        if (sim) os << ',' << (r.simulated_txor ? r.simulated_txor->str() : "");
        os << '\n';
    }
}

void write_json(std::ostream& os, const std::vector<SweepRow>& rows) {
    nlohmann::ordered_json out = nlohmann::ordered_json::array();
    for (const SweepRow& r : rows) {
        nlohmann::ordered_json j;
        j["mode"] = mode_name(r.config.mode);
        j["L"] = r.config.num_blocks;
        j["M_r"] = r.config.pe_per_stage;
        j["inner_parallel"] = r.config.inner_parallel;
        j["t_ov"] = rational_json(t_ov_shifts(r));
        j["seq_txor"] = rational_json(r.seq_txor);
        j["paper_pipeline_txor"] = rational_json(r.paper_pipeline_txor);
        j["flowshop_txor"] = rational_json(r.flowshop_txor);
        j["speedup"] = rational_json(r.speedup);
        j["efficiency"] = rational_json(r.efficiency);
        j["improvement"] = rational_json(r.improvement);
        if (r.simulated_txor) j["simulated_txor"] = rational_json(*r.simulated_txor);
        out.push_back(std::move(j));
    }
    os << out.dump(2) << '\n';
}

void write_markdown(std::ostream& os, const std::vector<SweepRow>& rows) {
    const bool sim = any_simulated(rows);
    os << "| mode | L | M_r | inner | t_ov | sequential | pipeline | flow-shop | speedup | efficiency | improvement %";
    os << (sim ? " | simulated |\n" : " |\n");
    os << "|---|---|---|---|---|---|---|---|---|---|---" << (sim ? "|---|\n" : "|\n");
    for (const SweepRow& r : rows) {
        os << "| " << mode_name(r.config.mode) << " | " << r.config.num_blocks << " | " << r.config.pe_per_stage
           << " | " << (r.config.inner_parallel ? "on" : "off") << " | " << t_ov_shifts(r).to_decimal(2) << " | "
           << r.seq_txor.to_decimal(2) << " | " << r.paper_pipeline_txor.to_decimal(2) << " | "
           << r.flowshop_txor.to_decimal(2) << " | " << r.speedup.to_decimal(2) << " | " << r.efficiency.to_decimal(2)
           << " | " << (r.improvement * Rational(100)).to_decimal(1);
        if (sim) os << " | " << (r.simulated_txor ? r.simulated_txor->to_decimal(2) : "");
        os << " |\n";
    }
}

} // namespace

void write_sweep(std::ostream& os, const std::vector<SweepRow>& rows, Format format) {
    switch (format) {
    case Format::csv: write_csv(os, rows); return;
    case Format::json: write_json(os, rows); return;
    case Format::markdown: write_markdown(os, rows); return;
    }
}

} // namespace paes::report
