#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "paes/rational.hpp"
#include "paes/time_quantum.hpp"

// Analytical timing model of the eleven-stage AES-128 pipeline with M_r
// processing elements per stage. All quantities are exact.
namespace paes::cost {

enum class Mode { encrypt, decrypt };
enum class StageKind { initial, standard, final };

inline constexpr int kStages = 11;
inline constexpr int kStandardRounds = 9;

std::string_view to_string(Mode mode);
std::string_view to_string(StageKind kind);

// Stage index 0..10 -> kind.
StageKind stage_kind_of(int stage);

struct CostParams {
    TimeQuantum t_shift = TimeQuantum::shifts(1);
    TimeQuantum t_xor = TimeQuantum::shifts(6);
    // Whole-state Byte_Sub (or Inv_Byte_Sub) time per round.
    TimeQuantum t_byte_sub;
    // Overhead paid once per Mix_Column element chunk when PEs cooperate.
    TimeQuantum t_ov;

    // Throws std::invalid_argument on negative values or a zero t_shift / t_xor.
    void validate() const;

    // Every duration multiplied by `factor` (> 0).
    CostParams scaled(const Rational& factor) const;
};

struct PipelineConfig {
    Mode mode = Mode::encrypt;
    int num_blocks = 1;      // L
    int pe_per_stage = 1;    // M_r
    bool inner_parallel = false;
    CostParams params;

    int total_pes() const { return kStages * pe_per_stage; }

    // True when Add_Round_Key and Mix_Column actually run on several PEs.
    // A single PE has no partner to cooperate with, so M_r = 1 is serial.
    bool splits_rounds() const { return inner_parallel && pe_per_stage > 1; }

    // Throws std::invalid_argument for configurations outside the formulas'
    // domain. Returns warnings for points the formulas accept but that lie
    // outside the tabulated PE ranges (2..32 encrypt, 4..64 decrypt).
    std::vector<std::string> validate() const;
};

// Per-transformation durations of one round under a given PE split.
struct TransformTimes {
    TimeQuantum add_round_key;
    TimeQuantum shift_row;
    TimeQuantum mix_column; // Mix_Column or Inv_Mix_Column
    TimeQuantum byte_sub;
};

TransformTimes transform_times(Mode mode, int pe_per_stage, bool inner_parallel, const CostParams& params);

struct StageTimes {
    TimeQuantum initial;
    TimeQuantum standard;
    TimeQuantum final;

    const TimeQuantum& of(StageKind kind) const;
    TimeQuantum bottleneck() const;
};

// L * (Add_Round_Key + 9 standard rounds + final round), all serial.
TimeQuantum sequential_time(Mode mode, int num_blocks, const CostParams& params);

StageTimes stage_times(Mode mode, int pe_per_stage, bool inner_parallel, const CostParams& params);

// L * t_initial + 9 * t_standard + t_final.
TimeQuantum paper_pipeline_time(const PipelineConfig& config);

// Completion time of L identical jobs through the 11-stage line with unbounded
// buffers: one full traversal plus (L - 1) bottleneck-stage intervals.
TimeQuantum flowshop_makespan(const PipelineConfig& config);

struct MetricRow {
    TimeQuantum exec_time;
    Rational speedup;
    Rational efficiency;
    Rational improvement; // fraction, not percent
};

// speedup = baseline / exec, efficiency = speedup / M_r,
// improvement = (baseline - exec) / baseline.
MetricRow metrics(const TimeQuantum& baseline, const TimeQuantum& exec_time, int pe_per_stage);

} // namespace paes::cost
