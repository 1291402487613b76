#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "paes/aes_core.hpp"
#include "paes/cost_model.hpp"
#include "paes/time_quantum.hpp"

// Discrete-event simulation of the eleven-stage pipeline. Each stage owns
// M_r processing elements and runs one block at a time through a costed,
// PE-assigned task graph.
namespace paes::sim {

using cost::Mode;
using cost::PipelineConfig;
using cost::StageKind;

enum class TaskKind { xor_op, shift, sbox, nop };

std::string_view to_string(TaskKind kind);

// Stage register file layout. Registers hold bytes while a block is in a
// stage: the state, the stage's round key, the Mix_Column output and scratch.
inline constexpr std::uint16_t kStateReg = 0;
inline constexpr std::uint16_t kKeyReg = 16;
inline constexpr std::uint16_t kMixOutReg = 32;
inline constexpr std::uint16_t kScratchReg = 48;

// Byte-level effect of a task, used by the functional simulation.
struct TaskAction {
    enum class Op : std::uint8_t {
        none,
        xor_bytes,    // r[dst] = r[a] ^ r[b]
        xtime,        // r[dst] = xtime(r[a])
        sub_bytes,    // S-box over the 16 state registers
        inv_sub_bytes,
        rotate_left,  // state row `a` rotated left by `b`
        rotate_right,
    };
    Op op = Op::none;
    std::uint16_t dst = 0;
    std::uint16_t a = 0;
    std::uint16_t b = 0;
};

struct Task {
    int id = 0;
    TaskKind kind = TaskKind::nop;
    TimeQuantum cost;     // cost of `kind` under the active CostParams
    TimeQuantum overhead; // combine overhead paid on this task's PE
    int pe = 0;
    TaskAction action;

    TimeQuantum duration() const { return cost + overhead; }
};

struct Edge {
    int from = 0;
    int to = 0;
};

class TaskGraph {
  public:
    Mode mode = Mode::encrypt;
    StageKind stage_kind = StageKind::initial;
    int pe_count = 1;
    bool inner_parallel = false;
    TimeQuantum combine_overhead;
    std::vector<Task> tasks;
    std::vector<Edge> edges;
    int register_count = kScratchReg;
    std::uint16_t output_reg = kStateReg;

    // Checks ids, PE indices and acyclicity; throws std::logic_error.
    void validate() const;

    std::size_t count(TaskKind kind) const;
    // Sum of task costs, excluding combine overhead.
    TimeQuantum total_cost() const;
    TimeQuantum total_overhead() const;
};

// Throws std::invalid_argument when the PE count cannot be grouped into the
// cooperating pairs (encrypt) or quads (decrypt) the element split needs.
TaskGraph build_stage_graph(Mode mode, StageKind kind, int pe_per_stage, bool inner_parallel,
                            const cost::CostParams& params);

// The eleven stage graphs for a configuration, stage 0 first.
std::vector<TaskGraph> build_pipeline(const PipelineConfig& config);

struct TraceEvent {
    TimeQuantum start;
    TimeQuantum end;
    int block = 0;
    int stage = 0;
    int pe = 0;
    int task = 0;
    TaskKind kind = TaskKind::nop;

    friend bool operator==(const TraceEvent&, const TraceEvent&) = default;
};

struct SimResult {
    TimeQuantum makespan;
    // Time each stage spent holding a block.
    std::array<TimeQuantum, cost::kStages> per_stage_busy{};
    // [stage][pe] busy time / makespan.
    std::vector<std::vector<Rational>> pe_utilization;
    // Completion time of each block at the last stage.
    std::vector<TimeQuantum> block_completion;
    std::vector<TraceEvent> trace;
    std::vector<aes::Block> outputs;
};

struct SimOptions {
    bool record_trace = true;
};

// Schedule length of a single stage graph started at time zero.
TimeQuantum stage_span(const TaskGraph& graph);

SimResult simulate(const PipelineConfig& config, const SimOptions& options = {});

// Raised when a functional run diverges from the reference cipher.
class FunctionalMismatch : public std::runtime_error {
  public:
    FunctionalMismatch(int block, int round, int byte, std::uint8_t expected, std::uint8_t actual);
    int block;
    int round;
    int byte;
};

// Runs the pipeline with byte semantics attached to every task. `blocks` are
// plaintexts (encrypt) or ciphertexts (decrypt); their count must equal L.
// Each stage's output is checked against the reference round function.
SimResult simulate_functional(const PipelineConfig& config, std::span<const aes::Block> blocks,
                              const aes::KeySchedule& ks, const SimOptions& options = {});

// One line per event: start,end,block,stage,pe,task,kind with times in T_shift.
void write_trace(std::ostream& os, const SimResult& result);

} // namespace paes::sim
