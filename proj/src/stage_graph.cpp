#include <algorithm>
#include <queue>
#include <stdexcept>

#include "paes/sched_sim.hpp"

namespace paes::sim {

namespace {

using Op = TaskAction::Op;
using Reg = std::uint16_t;

constexpr int kShiftRowTasks = 48;
constexpr int kShiftsPerRow = kShiftRowTasks / 3;

Reg state_reg(int row, int col) { return static_cast<Reg>(kStateReg + row * 4 + col); }

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

// Element e of the state in column-major order.
int row_of(int e) { return e % 4; }
int col_of(int e) { return e / 4; }

class GraphBuilder {
  public:
    GraphBuilder(Mode mode, StageKind kind, int pe_count, bool split, const cost::CostParams& params)
        : params_(params), split_(split) {
        graph_.mode = mode;
        graph_.stage_kind = kind;
        graph_.pe_count = pe_count;
        graph_.inner_parallel = split;
        graph_.combine_overhead = params.t_ov;
    }

    int add(TaskKind kind, int pe, TaskAction action, TimeQuantum overhead = {}) {
        Task t;
        t.id = static_cast<int>(graph_.tasks.size());
        t.kind = kind;
        t.cost = cost_of(kind);
        t.overhead = overhead;
        t.pe = pe;
        t.action = action;
        graph_.tasks.push_back(t);
        phase_.push_back(t.id);
        if (gate_ >= 0) graph_.edges.push_back({gate_, t.id});
        return t.id;
    }

    void depend(int from, int to) { graph_.edges.push_back({from, to}); }

    Reg scratch() { return static_cast<Reg>(next_scratch_++); }

    // Closes the current transformation: a zero-cost NOP on PE 0 that waits for
    // every task of the phase and gates every task of the next one.
    void end_phase() {
        const std::vector<int> members = std::exchange(phase_, {});
        const int previous_gate = gate_;
        gate_ = -1;
        const int barrier = add(TaskKind::nop, 0, {});
        phase_.clear();
        if (previous_gate >= 0) graph_.edges.push_back({previous_gate, barrier});
        for (int id : members) graph_.edges.push_back({id, barrier});
        gate_ = barrier;
    }

    bool split() const { return split_; }
    int pe_count() const { return graph_.pe_count; }
    const cost::CostParams& params() const { return params_; }

    TaskGraph finish(Reg output_reg) {
        graph_.register_count = next_scratch_;
        graph_.output_reg = output_reg;
        return std::move(graph_);
    }

  private:
    TimeQuantum cost_of(TaskKind kind) const {
        switch (kind) {
        case TaskKind::xor_op: return params_.t_xor;
        case TaskKind::shift: return params_.t_shift;
        case TaskKind::sbox: return params_.t_byte_sub;
        case TaskKind::nop: return TimeQuantum();
        }
        return TimeQuantum();
    }

    TaskGraph graph_;
    cost::CostParams params_;
    bool split_;
    int gate_ = -1;
    std::vector<int> phase_;
    int next_scratch_ = kScratchReg;
};

void add_round_key(GraphBuilder& b, Reg source_base) {
    for (int e = 0; e < 16; ++e) {
        const int pe = b.split() ? e % b.pe_count() : 0;
        const Reg idx = static_cast<Reg>(row_of(e) * 4 + col_of(e));
        b.add(TaskKind::xor_op, pe,
              {Op::xor_bytes, static_cast<Reg>(kStateReg + idx), static_cast<Reg>(source_base + idx),
               static_cast<Reg>(kKeyReg + idx)});
    }
}

void byte_sub(GraphBuilder& b, bool inverse) {
    b.add(TaskKind::sbox, 0, {inverse ? Op::inv_sub_bytes : Op::sub_bytes, 0, 0, 0});
}

// 48 shifts on PE 0 in a chain; the last shift of each row's group applies
// that row's rotation.
void shift_row(GraphBuilder& b, bool inverse) {
    int previous = -1;
    for (int i = 0; i < kShiftRowTasks; ++i) {
        TaskAction action;
        if (i % kShiftsPerRow == kShiftsPerRow - 1) {
            const int row = i / kShiftsPerRow + 1;
            action = {inverse ? Op::rotate_right : Op::rotate_left, 0, static_cast<Reg>(row), static_cast<Reg>(row)};
        }
        const int id = b.add(TaskKind::shift, 0, action);
        if (previous >= 0) b.depend(previous, id);
        previous = id;
    }
}

// c = 2*x0 ^ 3*x1 ^ x2 ^ x3 for the element at (row, col). PE k forms
// 2*x0 ^ x2 ^ x3, PE k+1 forms 3*x1, and PE k merges the two.
void mix_element(GraphBuilder& b, int e) {
    const int r = row_of(e);
    const int c = col_of(e);
    int pe_k = 0;
    int pe_k1 = 0;
    if (b.split()) {
        const int group = e % (b.pe_count() / 2);
        pe_k = 2 * group;
        pe_k1 = pe_k + 1;
    }
    const Reg x0 = state_reg(r, c);
    const Reg x1 = state_reg((r + 1) % 4, c);
    const Reg x2 = state_reg((r + 2) % 4, c);
    const Reg x3 = state_reg((r + 3) % 4, c);

    const Reg d0 = b.scratch();
    const Reg s0 = b.scratch();
    const Reg s1 = b.scratch();
    const int t_double = b.add(TaskKind::shift, pe_k, {Op::xtime, d0, x0, 0});
    const int t_add2 = b.add(TaskKind::xor_op, pe_k, {Op::xor_bytes, s0, d0, x2});
    const int t_add3 = b.add(TaskKind::xor_op, pe_k, {Op::xor_bytes, s1, s0, x3});
    b.depend(t_double, t_add2);
    b.depend(t_add2, t_add3);

    const Reg d1 = b.scratch();
    const Reg triple = b.scratch();
    const int t_double1 = b.add(TaskKind::shift, pe_k1, {Op::xtime, d1, x1, 0});
    const int t_triple = b.add(TaskKind::xor_op, pe_k1, {Op::xor_bytes, triple, d1, x1});
    b.depend(t_double1, t_triple);

    const TimeQuantum overhead = b.split() ? b.params().t_ov : TimeQuantum();
    const int t_merge =
        b.add(TaskKind::xor_op, pe_k, {Op::xor_bytes, static_cast<Reg>(kMixOutReg + r * 4 + c), s1, triple}, overhead);
    b.depend(t_add3, t_merge);
    b.depend(t_triple, t_merge);
}

// One GF product coef * x built from three doublings and the XORs selected by
// the coefficient's bits. Returns the task producing the product; its register
// is written to `out`.
int gf_term(GraphBuilder& b, int pe, Reg x, std::uint8_t coef, Reg& out) {
    const Reg x2 = b.scratch();
    const Reg x4 = b.scratch();
    const Reg x8 = b.scratch();
    const int t2 = b.add(TaskKind::shift, pe, {Op::xtime, x2, x, 0});
    const int t4 = b.add(TaskKind::shift, pe, {Op::xtime, x4, x2, 0});
    const int t8 = b.add(TaskKind::shift, pe, {Op::xtime, x8, x4, 0});
    b.depend(t2, t4);
    b.depend(t4, t8);

    std::vector<std::pair<Reg, int>> parts{{x8, t8}};
    if (coef & 0x04) parts.emplace_back(x4, t4);
    if (coef & 0x02) parts.emplace_back(x2, t2);
    if (coef & 0x01) parts.emplace_back(x, -1);

    Reg acc = parts[0].first;
    int last = parts[0].second;
    for (std::size_t i = 1; i < parts.size(); ++i) {
        const Reg dst = b.scratch();
        const int t = b.add(TaskKind::xor_op, pe, {Op::xor_bytes, dst, acc, parts[i].first});
        b.depend(last, t);
        if (parts[i].second >= 0 && parts[i].second != last) b.depend(parts[i].second, t);
        acc = dst;
        last = t;
    }
    out = acc;
    return last;
}

// b = 0E*x0 ^ 0B*x1 ^ 0D*x2 ^ 09*x3 across a quad of PEs. PE k+2 merges the
// 0D and 09 terms, PE k merges 0E with 0B and then with PE k+2's partial.
void inv_mix_element(GraphBuilder& b, int e) {
    const int r = row_of(e);
    const int c = col_of(e);
    int base = 0;
    if (b.split()) base = 4 * (e % (b.pe_count() / 4));
    auto pe = [&](int offset) { return b.split() ? base + offset : 0; };

    Reg v0, v1, v2, v3;
    const int t0 = gf_term(b, pe(0), state_reg(r, c), 0x0E, v0);
    const int t1 = gf_term(b, pe(1), state_reg((r + 1) % 4, c), 0x0B, v1);
    const int t2 = gf_term(b, pe(2), state_reg((r + 2) % 4, c), 0x0D, v2);
    const int t3 = gf_term(b, pe(3), state_reg((r + 3) % 4, c), 0x09, v3);

    const Reg low = b.scratch();
    const int t_low = b.add(TaskKind::xor_op, pe(2), {Op::xor_bytes, low, v2, v3});
    b.depend(t2, t_low);
    b.depend(t3, t_low);

    const Reg high = b.scratch();
    const int t_high = b.add(TaskKind::xor_op, pe(0), {Op::xor_bytes, high, v0, v1});
    b.depend(t0, t_high);
    b.depend(t1, t_high);

    const TimeQuantum overhead = b.split() ? b.params().t_ov : TimeQuantum();
    const int t_merge = b.add(TaskKind::xor_op, pe(0),
                              {Op::xor_bytes, static_cast<Reg>(kMixOutReg + r * 4 + c), high, low}, overhead);
    b.depend(t_high, t_merge);
    b.depend(t_low, t_merge);
}

void check_pe_grouping(Mode mode, int m, bool inner_parallel) {
    if (m < 1) throw std::invalid_argument("PEs per stage must be at least 1, got " + std::to_string(m));
    if (!inner_parallel || m == 1) return;
    const std::string mode_name(cost::to_string(mode));
    if (!is_power_of_two(m)) {
        throw std::invalid_argument("cannot split rounds over " + std::to_string(m) +
                                    " PEs: M_r must be a power of two");
    }
    if (mode == Mode::encrypt && m > 32) {
        throw std::invalid_argument("cannot split " + mode_name + " rounds over " + std::to_string(m) +
                                    " PEs: at most 16 cooperating pairs (32 PEs)");
    }
    if (mode == Mode::decrypt && m < 4) {
        throw std::invalid_argument("cannot split decrypt rounds over " + std::to_string(m) +
                                    " PEs: Inv_Mix_Column elements need quads of 4 PEs");
    }
    if (mode == Mode::decrypt && m > 64) {
        throw std::invalid_argument("cannot split decrypt rounds over " + std::to_string(m) +
                                    " PEs: at most 16 cooperating quads (64 PEs)");
    }
}

} // namespace

std::string_view to_string(TaskKind kind) {
    switch (kind) {
    case TaskKind::xor_op: return "XOR";
    case TaskKind::shift: return "SHIFT";
    case TaskKind::sbox: return "SBOX";
    case TaskKind::nop: return "NOP";
    }
    return "?";
}

void TaskGraph::validate() const {
    const auto n = tasks.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (tasks[i].id != static_cast<int>(i)) throw std::logic_error("task ids must be dense and ordered");
        if (tasks[i].pe < 0 || tasks[i].pe >= pe_count) throw std::logic_error("task assigned to a missing PE");
    }
    std::vector<int> indegree(n, 0);
    std::vector<std::vector<int>> succ(n);
    for (const Edge& e : edges) {
        if (e.from < 0 || e.to < 0 || static_cast<std::size_t>(e.from) >= n || static_cast<std::size_t>(e.to) >= n) {
            throw std::logic_error("edge references a missing task");
        }
        succ[static_cast<std::size_t>(e.from)].push_back(e.to);
        ++indegree[static_cast<std::size_t>(e.to)];
    }
    std::queue<int> ready;
    for (std::size_t i = 0; i < n; ++i)
        if (indegree[i] == 0) ready.push(static_cast<int>(i));
    std::size_t visited = 0;
    while (!ready.empty()) {
        const int t = ready.front();
        ready.pop();
        ++visited;
        for (int s : succ[static_cast<std::size_t>(t)])
            if (--indegree[static_cast<std::size_t>(s)] == 0) ready.push(s);
    }
    if (visited != n) throw std::logic_error("task graph has a cycle");
}

std::size_t TaskGraph::count(TaskKind kind) const {
    return static_cast<std::size_t>(std::count_if(tasks.begin(), tasks.end(), [&](const Task& t) { return t.kind == kind; }));
}

TimeQuantum TaskGraph::total_cost() const {
    TimeQuantum sum;
    for (const Task& t : tasks) sum += t.cost;
    return sum;
}

TimeQuantum TaskGraph::total_overhead() const {
    TimeQuantum sum;
    for (const Task& t : tasks) sum += t.overhead;
    return sum;
}

TaskGraph build_stage_graph(Mode mode, StageKind kind, int pe_per_stage, bool inner_parallel,
                            const cost::CostParams& params) {
    params.validate();
    check_pe_grouping(mode, pe_per_stage, inner_parallel);
    const bool split = inner_parallel && pe_per_stage > 1;
    GraphBuilder b(mode, kind, pe_per_stage, split, params);

    if (kind == StageKind::initial) {
        add_round_key(b, kStateReg);
        return b.finish(kStateReg);
    }

    if (mode == Mode::encrypt) {
        byte_sub(b, false);
        b.end_phase();
        shift_row(b, false);
        b.end_phase();
        if (kind == StageKind::standard) {
            for (int e = 0; e < 16; ++e) mix_element(b, e);
            b.end_phase();
            add_round_key(b, kMixOutReg);
        } else {
            add_round_key(b, kStateReg);
        }
        return b.finish(kStateReg);
    }

    shift_row(b, true);
    b.end_phase();
    byte_sub(b, true);
    b.end_phase();
    add_round_key(b, kStateReg);
    if (kind == StageKind::final) return b.finish(kStateReg);
    b.end_phase();
    for (int e = 0; e < 16; ++e) inv_mix_element(b, e);
    return b.finish(kMixOutReg);
}

std::vector<TaskGraph> build_pipeline(const PipelineConfig& config) {
    config.validate();
    std::vector<TaskGraph> stages;
    stages.reserve(cost::kStages);
    for (int s = 0; s < cost::kStages; ++s) {
        stages.push_back(build_stage_graph(config.mode, cost::stage_kind_of(s), config.pe_per_stage,
                                           config.inner_parallel, config.params));
    }
    return stages;
}

} // namespace paes::sim
