#pragma once

#include <iosfwd>
#include <optional>
#include <string_view>
#include <vector>

#include "paes/cost_model.hpp"

namespace paes::report {

enum class Format { csv, json, markdown };

std::string_view to_string(Format format);

struct SweepSpec {
    std::vector<cost::Mode> modes;
    std::vector<int> blocks;
    std::vector<int> pes;
    std::vector<bool> inner_parallel;
    cost::CostParams params;
    bool simulate = false;

    // Throws std::invalid_argument on an empty axis or an invalid point.
    void validate() const;
};

// Model quantities in T_XOR; metrics use the sequential baseline.
struct SweepRow {
    cost::PipelineConfig config;
    Rational seq_txor;
    Rational paper_pipeline_txor;
    Rational flowshop_txor;
    Rational speedup;
    Rational efficiency;
    Rational improvement; // fraction
    std::optional<Rational> simulated_txor;
};

// Rows ordered by mode, L, M_r, inner_parallel; duplicate axis values collapse.
std::vector<SweepRow> run_sweep(const SweepSpec& spec);

SweepRow evaluate_point(const cost::PipelineConfig& config, bool simulate);

void write_sweep(std::ostream& os, const std::vector<SweepRow>& rows, Format format);

} // namespace paes::report
