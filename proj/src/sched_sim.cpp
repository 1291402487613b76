#include "paes/sched_sim.hpp"

#include <deque>
#include <functional>
#include <ostream>
#include <queue>

namespace paes::sim {

namespace {

using Reg = std::uint16_t;

struct Event {
    TimeQuantum time;
    std::uint64_t seq = 0;
    int stage = 0;
    int pe = 0;
    int task = 0;
};

struct EventLater {
    bool operator()(const Event& a, const Event& b) const {
        if (a.time != b.time) return a.time > b.time;
        return a.seq > b.seq;
    }
};

using MinHeap = std::priority_queue<int, std::vector<int>, std::greater<>>;

// Byte-level view of the run, present only for functional simulations.
struct Functional {
    const aes::KeySchedule* ks = nullptr;
    Mode mode = Mode::encrypt;
    std::vector<aes::State> actual;
    std::vector<aes::State> reference;

    const aes::RoundKey& key_for_stage(int stage) const {
        const int round = mode == Mode::encrypt ? stage : aes::kRounds - stage;
        return ks->round_keys[static_cast<std::size_t>(round)];
    }
};

void apply(const TaskAction& action, std::vector<std::uint8_t>& r) {
    using Op = TaskAction::Op;
    switch (action.op) {
    case Op::none: return;
    case Op::xor_bytes: r[action.dst] = static_cast<std::uint8_t>(r[action.a] ^ r[action.b]); return;
    case Op::xtime: r[action.dst] = aes::xtime(r[action.a]); return;
    case Op::sub_bytes:
    case Op::inv_sub_bytes: {
        const auto& table = action.op == Op::sub_bytes ? aes::sbox() : aes::inv_sbox();
        for (std::size_t i = kStateReg; i < kStateReg + 16u; ++i) r[i] = table[r[i]];
        return;
    }
    case Op::rotate_left:
    case Op::rotate_right: {
        const int row = action.a;
        const int amount = action.op == Op::rotate_left ? action.b : 4 - action.b;
        std::array<std::uint8_t, 4> tmp{};
        for (int c = 0; c < 4; ++c) tmp[static_cast<std::size_t>(c)] = r[static_cast<std::size_t>(kStateReg + row * 4 + (c + amount) % 4)];
        for (int c = 0; c < 4; ++c) r[static_cast<std::size_t>(kStateReg + row * 4 + c)] = tmp[static_cast<std::size_t>(c)];
        return;
    }
    }
}

class Executor {
  public:
    Executor(std::span<const TaskGraph> graphs, int blocks, bool record_trace, Functional* functional)
        : blocks_(blocks), record_trace_(record_trace), functional_(functional) {
        for (const TaskGraph& g : graphs) {
            g.validate();
            StageRun s;
            s.graph = &g;
            s.succ.resize(g.tasks.size());
            s.indegree.assign(g.tasks.size(), 0);
            for (const Edge& e : g.edges) {
                s.succ[static_cast<std::size_t>(e.from)].push_back(e.to);
                ++s.indegree[static_cast<std::size_t>(e.to)];
            }
            s.ready.resize(static_cast<std::size_t>(g.pe_count));
            s.pe_busy.assign(static_cast<std::size_t>(g.pe_count), false);
            s.pe_busy_time.assign(static_cast<std::size_t>(g.pe_count), TimeQuantum());
            stages_.push_back(std::move(s));
        }
    }

    SimResult run() {
        for (int b = 0; b < blocks_; ++b) stages_.front().waiting.push_back(b);
        result_.block_completion.assign(static_cast<std::size_t>(blocks_), TimeQuantum());

        TimeQuantum now;
        advance(now);
        while (!events_.empty()) {
            now = events_.top().time;
            while (!events_.empty() && events_.top().time == now) {
                const Event ev = events_.top();
                events_.pop();
                complete(ev, now);
            }
            advance(now);
        }

        result_.makespan = now;
        result_.pe_utilization.clear();
        for (std::size_t s = 0; s < stages_.size(); ++s) {
            if (s < result_.per_stage_busy.size()) result_.per_stage_busy[s] = stages_[s].busy;
            std::vector<Rational> util;
            for (const TimeQuantum& busy : stages_[s].pe_busy_time) {
                util.push_back(now.is_zero() ? Rational(0) : busy / now);
            }
            result_.pe_utilization.push_back(std::move(util));
        }
        return std::move(result_);
    }

  private:
    struct StageRun {
        const TaskGraph* graph = nullptr;
        std::vector<std::vector<int>> succ;
        std::vector<int> indegree;
        std::deque<int> waiting;
        int current = -1;
        std::vector<int> remaining;
        std::vector<MinHeap> ready;
        std::vector<bool> pe_busy;
        std::vector<TimeQuantum> pe_busy_time;
        std::size_t tasks_left = 0;
        TimeQuantum started;
        TimeQuantum busy;
        std::vector<std::uint8_t> regs;
    };

    void advance(const TimeQuantum& now) {
        for (std::size_t s = 0; s < stages_.size(); ++s) {
            try_start(s, now);
            dispatch(s, now);
        }
    }

    void try_start(std::size_t s, const TimeQuantum& now) {
        StageRun& st = stages_[s];
        if (st.current >= 0 || st.waiting.empty()) return;
        st.current = st.waiting.front();
        st.waiting.pop_front();
        st.started = now;
        st.remaining = st.indegree;
        st.tasks_left = st.graph->tasks.size();
        for (std::size_t t = 0; t < st.remaining.size(); ++t) {
            if (st.remaining[t] == 0) st.ready[static_cast<std::size_t>(st.graph->tasks[t].pe)].push(static_cast<int>(t));
        }
        if (functional_) {
            st.regs.assign(static_cast<std::size_t>(st.graph->register_count), 0);
            const aes::State& in = functional_->actual[static_cast<std::size_t>(st.current)];
            const aes::RoundKey& key = functional_->key_for_stage(static_cast<int>(s));
            const aes::State key_state = aes::State::from_block(key);
            for (std::size_t i = 0; i < 16; ++i) {
                st.regs[kStateReg + i] = in.cells()[i];
                st.regs[kKeyReg + i] = key_state.cells()[i];
            }
        }
        if (st.tasks_left == 0) finish_block(s, now);
    }

    void dispatch(std::size_t s, const TimeQuantum& now) {
        StageRun& st = stages_[s];
        if (st.current < 0) return;
        for (std::size_t pe = 0; pe < st.ready.size(); ++pe) {
            if (st.pe_busy[pe] || st.ready[pe].empty()) continue;
            const int id = st.ready[pe].top();
            st.ready[pe].pop();
            const Task& task = st.graph->tasks[static_cast<std::size_t>(id)];
            const TimeQuantum end = now + task.duration();
            st.pe_busy[pe] = true;
            st.pe_busy_time[pe] += task.duration();
            events_.push(Event{end, seq_++, static_cast<int>(s), static_cast<int>(pe), id});
            if (record_trace_) {
                result_.trace.push_back(
                    TraceEvent{now, end, st.current, static_cast<int>(s), static_cast<int>(pe), id, task.kind});
            }
        }
    }

    void complete(const Event& ev, const TimeQuantum& now) {
        StageRun& st = stages_[static_cast<std::size_t>(ev.stage)];
        st.pe_busy[static_cast<std::size_t>(ev.pe)] = false;
        const Task& task = st.graph->tasks[static_cast<std::size_t>(ev.task)];
        if (functional_) apply(task.action, st.regs);
        for (int next : st.succ[static_cast<std::size_t>(ev.task)]) {
            if (--st.remaining[static_cast<std::size_t>(next)] == 0) {
                st.ready[static_cast<std::size_t>(st.graph->tasks[static_cast<std::size_t>(next)].pe)].push(next);
            }
        }
        if (--st.tasks_left == 0) finish_block(static_cast<std::size_t>(ev.stage), now);
    }

    void finish_block(std::size_t s, const TimeQuantum& now) {
        StageRun& st = stages_[s];
        const int block = st.current;
        st.busy += now - st.started;
        if (functional_) check_stage_output(s, block);
        st.current = -1;
        if (s + 1 < stages_.size()) {
            stages_[s + 1].waiting.push_back(block);
        } else {
            result_.block_completion[static_cast<std::size_t>(block)] = now;
        }
    }

    void check_stage_output(std::size_t s, int block) {
        const StageRun& st = stages_[s];
        auto& actual = functional_->actual[static_cast<std::size_t>(block)];
        auto& reference = functional_->reference[static_cast<std::size_t>(block)];
        aes::State out;
        for (int k = 1; k <= 16; ++k) out.element(k) = st.regs[static_cast<std::size_t>(st.graph->output_reg + k - 1)];
        const int round = static_cast<int>(s);
        reference = functional_->mode == Mode::encrypt ? aes::encrypt_round(reference, *functional_->ks, round)
                                                       : aes::decrypt_round(reference, *functional_->ks, round);
        if (out != reference) {
            const aes::Block got = out.to_block();
            const aes::Block want = reference.to_block();
            for (std::size_t j = 0; j < 16; ++j) {
                if (got[j] != want[j]) throw FunctionalMismatch(block, round, static_cast<int>(j), want[j], got[j]);
            }
        }
        actual = out;
    }

    int blocks_;
    bool record_trace_;
    Functional* functional_;
    std::vector<StageRun> stages_;
    std::priority_queue<Event, std::vector<Event>, EventLater> events_;
    std::uint64_t seq_ = 0;
    SimResult result_;
};

} // namespace

FunctionalMismatch::FunctionalMismatch(int block_, int round_, int byte_, std::uint8_t expected, std::uint8_t actual)
    : std::runtime_error("functional mismatch at block " + std::to_string(block_) + ", round " +
                         std::to_string(round_) + ", byte " + std::to_string(byte_) + ": expected " +
                         aes::to_hex(std::span<const std::uint8_t>(&expected, 1)) + ", got " +
                         aes::to_hex(std::span<const std::uint8_t>(&actual, 1))),
      block(block_), round(round_), byte(byte_) {}

TimeQuantum stage_span(const TaskGraph& graph) {
    Executor ex(std::span<const TaskGraph>(&graph, 1), 1, false, nullptr);
    return ex.run().makespan;
}

SimResult simulate(const PipelineConfig& config, const SimOptions& options) {
    const std::vector<TaskGraph> stages = build_pipeline(config);
    Executor ex(stages, config.num_blocks, options.record_trace, nullptr);
    return ex.run();
}

SimResult simulate_functional(const PipelineConfig& config, std::span<const aes::Block> blocks,
                              const aes::KeySchedule& ks, const SimOptions& options) {
    if (blocks.size() != static_cast<std::size_t>(config.num_blocks)) {
        throw std::invalid_argument("simulate_functional: got " + std::to_string(blocks.size()) +
                                    " blocks for L = " + std::to_string(config.num_blocks));
    }
    const std::vector<TaskGraph> stages = build_pipeline(config);
    Functional fn;
    fn.ks = &ks;
    fn.mode = config.mode;
    for (const aes::Block& b : blocks) {
        fn.actual.push_back(aes::State::from_block(b));
        fn.reference.push_back(aes::State::from_block(b));
    }
    Executor ex(stages, config.num_blocks, options.record_trace, &fn);
    SimResult result = ex.run();
    for (const aes::State& s : fn.actual) result.outputs.push_back(s.to_block());
    return result;
}

void write_trace(std::ostream& os, const SimResult& result) {
    os << "start,end,block,stage,pe,task,kind\n";
    for (const TraceEvent& e : result.trace) {
        os << e.start.in_shifts() << ',' << e.end.in_shifts() << ',' << e.block << ',' << e.stage << ',' << e.pe
           << ',' << e.task << ',' << to_string(e.kind) << '\n';
    }
}

} // namespace paes::sim
