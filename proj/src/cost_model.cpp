#include "paes/cost_model.hpp"

#include <stdexcept>

namespace paes::cost {

namespace {

constexpr int kStateBytes = 16;
constexpr int kShiftRowShifts = 48;

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

// Largest M_r the element split supports: 32 PE halves for Mix_Column,
// 64 PE quarters for Inv_Mix_Column.
int max_split(Mode mode) { return mode == Mode::encrypt ? 32 : 64; }
int min_tabulated(Mode mode) { return mode == Mode::encrypt ? 2 : 4; }

// Per-element cost of the serial Mix_Column / Inv_Mix_Column dataflow.
TimeQuantum serial_element(Mode mode, const CostParams& p) {
    if (mode == Mode::encrypt) return Rational(2) * p.t_shift + Rational(4) * p.t_xor;
    return Rational(12) * p.t_shift + Rational(10) * p.t_xor;
}

// Busiest PE of one cooperating group for one element.
TimeQuantum split_element(Mode mode, const CostParams& p) {
    if (mode == Mode::encrypt) {
        const TimeQuantum pe_k = p.t_shift + Rational(3) * p.t_xor;
        const TimeQuantum pe_k1 = p.t_shift + p.t_xor;
        return max(pe_k, pe_k1);
    }
    const TimeQuantum three_shifts = Rational(3) * p.t_shift;
    const TimeQuantum pe_k = three_shifts + Rational(4) * p.t_xor;
    const TimeQuantum pe_k1 = three_shifts + Rational(2) * p.t_xor;
    const TimeQuantum pe_k2 = three_shifts + Rational(3) * p.t_xor;
    const TimeQuantum pe_k3 = three_shifts + p.t_xor;
    return max(max(pe_k, pe_k1), max(pe_k2, pe_k3));
}

void require_positive(int value, const char* what) {
    if (value < 1) throw std::invalid_argument(std::string(what) + " must be at least 1, got " + std::to_string(value));
}

} // namespace

std::string_view to_string(Mode mode) { return mode == Mode::encrypt ? "encrypt" : "decrypt"; }

std::string_view to_string(StageKind kind) {
    switch (kind) {
    case StageKind::initial: return "initial";
    case StageKind::standard: return "standard";
    case StageKind::final: return "final";
    }
    return "?";
}

StageKind stage_kind_of(int stage) {
    if (stage < 0 || stage >= kStages) throw std::out_of_range("stage index out of range");
    if (stage == 0) return StageKind::initial;
    if (stage == kStages - 1) return StageKind::final;
    return StageKind::standard;
}

void CostParams::validate() const {
    const TimeQuantum zero;
    if (t_shift <= zero) throw std::invalid_argument("t_shift must be positive");
    if (t_xor <= zero) throw std::invalid_argument("t_xor must be positive");
    if (t_byte_sub < zero) throw std::invalid_argument("t_byte_sub must be non-negative");
    if (t_ov < zero) throw std::invalid_argument("t_ov must be non-negative");
}

CostParams CostParams::scaled(const Rational& factor) const {
    if (factor <= Rational(0)) throw std::invalid_argument("scale factor must be positive");
    return CostParams{t_shift * factor, t_xor * factor, t_byte_sub * factor, t_ov * factor};
}

std::vector<std::string> PipelineConfig::validate() const {
    require_positive(num_blocks, "number of blocks L");
    require_positive(pe_per_stage, "PEs per stage M_r");
    params.validate();

    std::vector<std::string> warnings;
    if (!inner_parallel) return warnings;

    const int m = pe_per_stage;
    if (!is_power_of_two(m)) {
        throw std::invalid_argument("inner parallelism needs M_r to be a power of two, got " + std::to_string(m));
    }
    if (m > max_split(mode)) {
        throw std::invalid_argument("inner parallelism supports at most " + std::to_string(max_split(mode)) +
                                    " PEs per stage for " + std::string(to_string(mode)) + ", got " +
                                    std::to_string(m));
    }
    if (m == 1) {
        warnings.emplace_back("M_r = 1 leaves no PE to cooperate with; stage evaluated serially");
    } else if (m < min_tabulated(mode)) {
        warnings.emplace_back("M_r = " + std::to_string(m) + " lies outside the tabulated " +
                              std::string(to_string(mode)) + " range " + std::to_string(min_tabulated(mode)) +
                              ".." + std::to_string(max_split(mode)) + "; formulas evaluated literally");
    }
    return warnings;
}

TransformTimes transform_times(Mode mode, int pe_per_stage, bool inner_parallel, const CostParams& p) {
    require_positive(pe_per_stage, "PEs per stage M_r");
    TransformTimes t;
    t.byte_sub = p.t_byte_sub;
    t.shift_row = Rational(kShiftRowShifts) * p.t_shift;
    if (inner_parallel && pe_per_stage > 1) {
        const Rational m(pe_per_stage);
        // ceil keeps M_r > 16 at one XOR per busy PE.
        t.add_round_key = Rational(Rational(kStateBytes, pe_per_stage).ceil()) * p.t_xor;
        const Rational chunks = (mode == Mode::encrypt ? Rational(32) : Rational(64)) / m;
        t.mix_column = chunks * (split_element(mode, p) + p.t_ov);
    } else {
        t.add_round_key = Rational(kStateBytes) * p.t_xor;
        t.mix_column = Rational(kStateBytes) * serial_element(mode, p);
    }
    return t;
}

const TimeQuantum& StageTimes::of(StageKind kind) const {
    switch (kind) {
    case StageKind::initial: return initial;
    case StageKind::standard: return standard;
    case StageKind::final: return final;
    }
    throw std::logic_error("bad stage kind");
}

TimeQuantum StageTimes::bottleneck() const { return max(initial, max(standard, final)); }

TimeQuantum sequential_time(Mode mode, int num_blocks, const CostParams& params) {
    require_positive(num_blocks, "number of blocks L");
    params.validate();
    const TransformTimes t = transform_times(mode, 1, false, params);
    const TimeQuantum standard_round = t.byte_sub + t.shift_row + t.mix_column + t.add_round_key;
    const TimeQuantum final_round = t.byte_sub + t.shift_row + t.add_round_key;
    const TimeQuantum one_block = t.add_round_key + Rational(kStandardRounds) * standard_round + final_round;
    return Rational(num_blocks) * one_block;
}

StageTimes stage_times(Mode mode, int pe_per_stage, bool inner_parallel, const CostParams& params) {
    params.validate();
    const TransformTimes t = transform_times(mode, pe_per_stage, inner_parallel, params);
    StageTimes s;
    s.initial = t.add_round_key;
    s.standard = t.byte_sub + t.shift_row + t.mix_column + t.add_round_key;
    s.final = t.byte_sub + t.shift_row + t.add_round_key;
    return s;
}

TimeQuantum paper_pipeline_time(const PipelineConfig& config) {
    config.validate();
    const StageTimes s = stage_times(config.mode, config.pe_per_stage, config.inner_parallel, config.params);
    return Rational(config.num_blocks) * s.initial + Rational(kStandardRounds) * s.standard + s.final;
}

TimeQuantum flowshop_makespan(const PipelineConfig& config) {
    config.validate();
    const StageTimes s = stage_times(config.mode, config.pe_per_stage, config.inner_parallel, config.params);
    const TimeQuantum traversal = s.initial + Rational(kStandardRounds) * s.standard + s.final;
    return traversal + Rational(config.num_blocks - 1) * s.bottleneck();
}

MetricRow metrics(const TimeQuantum& baseline, const TimeQuantum& exec_time, int pe_per_stage) {
    require_positive(pe_per_stage, "PEs per stage M_r");
    if (baseline <= TimeQuantum()) throw std::invalid_argument("metrics: baseline time must be positive");
    if (exec_time <= TimeQuantum()) throw std::invalid_argument("metrics: execution time must be positive");
    MetricRow row;
    row.exec_time = exec_time;
    row.speedup = baseline / exec_time;
    row.efficiency = row.speedup / Rational(pe_per_stage);
    row.improvement = (baseline - exec_time) / baseline;
    return row;
}

} // namespace paes::cost
