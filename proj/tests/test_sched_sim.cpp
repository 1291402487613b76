#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>

#include "oracles.hpp"
#include "paes/sched_sim.hpp"

using namespace paes;
using namespace paes::sim;
using cost::CostParams;

namespace {

const TimeQuantum kXor = TimeQuantum::shifts(6);

PipelineConfig cfg(Mode mode, int blocks, int pe, bool inner, CostParams params = {}) {
    PipelineConfig c;
    c.mode = mode;
    c.num_blocks = blocks;
    c.pe_per_stage = pe;
    c.inner_parallel = inner;
    c.params = params;
    return c;
}

std::vector<int> pe_grid(Mode mode) {
    return mode == Mode::encrypt ? std::vector<int>{1, 2, 4, 8, 16, 32} : std::vector<int>{1, 4, 8, 16, 32, 64};
}

std::vector<aes::Block> random_blocks(std::mt19937& rng, int n) {
    std::uniform_int_distribution<int> byte(0, 255);
    std::vector<aes::Block> out(static_cast<std::size_t>(n));
    for (auto& b : out)
        for (auto& x : b) x = static_cast<aes::Byte>(byte(rng));
    return out;
}

} // namespace

TEST_CASE("operation counts per stage graph") {
    const CostParams p;
    const TaskGraph enc = build_stage_graph(Mode::encrypt, StageKind::standard, 1, false, p);
    CHECK(enc.count(TaskKind::xor_op) == 80);
    CHECK(enc.count(TaskKind::shift) == 80);
    CHECK(enc.count(TaskKind::sbox) == 1);
    CHECK(enc.total_cost().in_units_of(kXor) == Rational(280, 3));

    const TaskGraph dec = build_stage_graph(Mode::decrypt, StageKind::standard, 1, false, p);
    CHECK(dec.count(TaskKind::xor_op) == 176);
    CHECK(dec.count(TaskKind::shift) == 240);
    CHECK(dec.count(TaskKind::sbox) == 1);
    CHECK(dec.total_cost().in_units_of(kXor) == Rational(216));

    const TaskGraph init = build_stage_graph(Mode::encrypt, StageKind::initial, 1, false, p);
    CHECK(init.count(TaskKind::xor_op) == 16);
    CHECK(init.tasks.size() == 16);

    for (Mode mode : {Mode::encrypt, Mode::decrypt}) {
        const TaskGraph fin = build_stage_graph(mode, StageKind::final, 1, false, p);
        CHECK(fin.count(TaskKind::xor_op) == 16);
        CHECK(fin.count(TaskKind::shift) == 48);
        CHECK(fin.total_cost().in_units_of(kXor) == Rational(24));
    }
}

TEST_CASE("splitting does not change the amount of work") {
    CostParams p;
    p.t_ov = TimeQuantum::shifts(3);
    for (Mode mode : {Mode::encrypt, Mode::decrypt}) {
        const TaskGraph serial = build_stage_graph(mode, StageKind::standard, 1, false, p);
        for (int m : pe_grid(mode)) {
            const TaskGraph g = build_stage_graph(mode, StageKind::standard, m, true, p);
            CHECK(g.total_cost() == serial.total_cost());
            CHECK(g.count(TaskKind::xor_op) == serial.count(TaskKind::xor_op));
            CHECK(g.count(TaskKind::shift) == serial.count(TaskKind::shift));
            // One overhead charge per element when PEs cooperate.
            CHECK(g.total_overhead() == (m > 1 ? TimeQuantum::shifts(16 * 3) : TimeQuantum()));
            CHECK_NOTHROW(g.validate());
        }
    }
}

TEST_CASE("stage schedule length equals the analytical stage time") {
    std::vector<CostParams> params(3);
    params[1].t_ov = TimeQuantum::shifts(2);
    params[2].t_ov = TimeQuantum::shifts(Rational(5, 2));
    params[2].t_byte_sub = TimeQuantum::shifts(7);
    for (const CostParams& p : params) {
        for (Mode mode : {Mode::encrypt, Mode::decrypt}) {
            for (int m : pe_grid(mode)) {
                for (bool inner : {false, true}) {
                    const cost::StageTimes expected = cost::stage_times(mode, m, inner, p);
                    for (StageKind kind : {StageKind::initial, StageKind::standard, StageKind::final}) {
                        CAPTURE(m);
                        CAPTURE(inner);
                        CHECK(stage_span(build_stage_graph(mode, kind, m, inner, p)) == expected.of(kind));
                    }
                }
            }
        }
    }
    // Hand-derived: 48 shifts + Inv_Byte_Sub (0) + 16/4 XORs + 16 * 27 shifts.
    CHECK(stage_span(build_stage_graph(Mode::decrypt, StageKind::standard, 4, true, {})).in_units_of(kXor) ==
          Rational(84));
}

TEST_CASE("pipeline makespan follows the flow-shop recurrence") {
    for (Mode mode : {Mode::encrypt, Mode::decrypt}) {
        for (int m : pe_grid(mode)) {
            for (int blocks : {1, 2, 10, 25, 40}) {
                const auto c = cfg(mode, blocks, m, true);
                const std::vector<TaskGraph> graphs = build_pipeline(c);
                std::array<Rational, cost::kStages> spans{};
                for (std::size_t s = 0; s < graphs.size(); ++s) spans[s] = stage_span(graphs[s]).in_shifts();
                const SimResult r = simulate(c, {false});
                CAPTURE(m);
                CAPTURE(blocks);
                CHECK(r.makespan.in_shifts() == oracle::flowshop_recurrence(spans, blocks));
                CHECK(r.makespan == cost::flowshop_makespan(c));
            }
        }
    }
    CHECK(simulate(cfg(Mode::encrypt, 10, 1, false), {false}).makespan.in_units_of(kXor) == Rational(1720));
    CHECK(simulate(cfg(Mode::decrypt, 10, 16, true), {false}).makespan.in_units_of(kXor) == Rational(496));
}

TEST_CASE("blocks complete in order, one bottleneck interval apart") {
    const auto c = cfg(Mode::encrypt, 6, 4, true);
    const SimResult r = simulate(c, {false});
    const TimeQuantum gap = cost::stage_times(Mode::encrypt, 4, true, {}).bottleneck();
    REQUIRE(r.block_completion.size() == 6);
    for (std::size_t i = 1; i < r.block_completion.size(); ++i) {
        CHECK(r.block_completion[i] - r.block_completion[i - 1] == gap);
    }
    CHECK(r.block_completion.back() == r.makespan);
}

TEST_CASE("trace respects PE exclusivity and work conservation") {
    CostParams p;
    p.t_ov = TimeQuantum::shifts(1);
    const auto c = cfg(Mode::decrypt, 3, 8, true, p);
    const SimResult r = simulate(c);
    const std::vector<TaskGraph> graphs = build_pipeline(c);

    std::map<std::pair<int, int>, std::vector<std::pair<TimeQuantum, TimeQuantum>>> by_pe;
    std::array<TimeQuantum, cost::kStages> busy{};
    for (const TraceEvent& e : r.trace) {
        CHECK(e.end >= e.start);
        CHECK(e.end <= r.makespan);
        const Task& t = graphs[static_cast<std::size_t>(e.stage)].tasks[static_cast<std::size_t>(e.task)];
        CHECK(e.end - e.start == t.duration());
        CHECK(e.pe == t.pe);
        by_pe[{e.stage, e.pe}].emplace_back(e.start, e.end);
        busy[static_cast<std::size_t>(e.stage)] += e.end - e.start;
    }
    for (auto& [key, spans] : by_pe) {
        std::sort(spans.begin(), spans.end());
        for (std::size_t i = 1; i < spans.size(); ++i) CHECK(spans[i].first >= spans[i - 1].second);
    }
    for (std::size_t s = 0; s < graphs.size(); ++s) {
        CHECK(busy[s] == graphs[s].total_cost() * Rational(3) + graphs[s].total_overhead() * Rational(3));
        Rational util_sum(0);
        for (const Rational& u : r.pe_utilization[s]) {
            CHECK(u >= Rational(0));
            CHECK(u <= Rational(1));
            util_sum += u;
        }
        CHECK(r.makespan * util_sum == busy[s]);
    }
    CHECK(r.trace.size() == 3 * (graphs[0].tasks.size() + 9 * graphs[1].tasks.size() + graphs[10].tasks.size()));
}

TEST_CASE("simulation is deterministic") {
    const auto c = cfg(Mode::encrypt, 4, 8, true);
    const SimResult a = simulate(c);
    const SimResult b = simulate(c);
    CHECK(a.makespan == b.makespan);
    CHECK(a.trace == b.trace);
    std::ostringstream sa, sb;
    write_trace(sa, a);
    write_trace(sb, b);
    CHECK(sa.str() == sb.str());
    CHECK(sa.str().rfind("start,end,block,stage,pe,task,kind\n", 0) == 0);
}

TEST_CASE("functional run reproduces the reference cipher") {
    std::mt19937 rng(20240611);
    const aes::KeySchedule ks = aes::key_expand(aes::block_from_hex("2b7e151628aed2a6abf7158809cf4f3c"));
    for (Mode mode : {Mode::encrypt, Mode::decrypt}) {
        for (int m : pe_grid(mode)) {
            for (bool inner : {false, true}) {
                const std::vector<aes::Block> in = random_blocks(rng, 3);
                const SimResult r = simulate_functional(cfg(mode, 3, m, inner), in, ks, {false});
                REQUIRE(r.outputs.size() == 3);
                for (std::size_t i = 0; i < in.size(); ++i) {
                    const aes::Block want =
                        mode == Mode::encrypt ? aes::encrypt_block(in[i], ks) : aes::decrypt_block(in[i], ks);
                    CHECK(r.outputs[i] == want);
                }
            }
        }
    }
}

TEST_CASE("functional run on the published vector") {
    const aes::KeySchedule ks = aes::key_expand(aes::block_from_hex("000102030405060708090a0b0c0d0e0f"));
    const std::vector<aes::Block> pt{aes::block_from_hex("00112233445566778899aabbccddeeff")};
    const SimResult enc = simulate_functional(cfg(Mode::encrypt, 1, 8, true), pt, ks);
    CHECK(aes::to_hex(enc.outputs[0]) == "69c4e0d86a7b0430d8cdb78070b4c55a");
    const SimResult dec = simulate_functional(cfg(Mode::decrypt, 1, 16, true), enc.outputs, ks);
    CHECK(dec.outputs[0] == pt[0]);
}

TEST_CASE("invalid configurations are rejected with a diagnostic") {
    const CostParams p;
    CHECK_THROWS_AS(build_stage_graph(Mode::decrypt, StageKind::standard, 2, true, p), std::invalid_argument);
    CHECK_THROWS_AS(simulate(cfg(Mode::decrypt, 1, 2, true)), std::invalid_argument);
    CHECK_THROWS_AS(build_stage_graph(Mode::encrypt, StageKind::standard, 6, true, p), std::invalid_argument);
    CHECK_THROWS_AS(build_stage_graph(Mode::encrypt, StageKind::standard, 64, true, p), std::invalid_argument);
    CHECK_THROWS_AS(build_stage_graph(Mode::decrypt, StageKind::standard, 128, true, p), std::invalid_argument);
    CHECK_THROWS_AS(build_stage_graph(Mode::encrypt, StageKind::standard, 0, false, p), std::invalid_argument);
    // Without cooperation any PE count is accepted; the extra PEs idle.
    CHECK_NOTHROW(build_stage_graph(Mode::decrypt, StageKind::standard, 3, false, p));

    try {
        build_stage_graph(Mode::decrypt, StageKind::standard, 2, true, p);
        FAIL("expected a diagnostic");
    } catch (const std::invalid_argument& e) {
        CHECK(std::string(e.what()).find("quads") != std::string::npos);
    }

    const aes::KeySchedule ks = aes::key_expand(aes::Block{});
    const std::vector<aes::Block> two(2);
    CHECK_THROWS_AS(simulate_functional(cfg(Mode::encrypt, 3, 1, false), two, ks), std::invalid_argument);
}

TEST_CASE("mismatch exception carries its location") {
    const FunctionalMismatch e(2, 7, 5, 0xab, 0xcd);
    CHECK(e.block == 2);
    CHECK(e.round == 7);
    CHECK(e.byte == 5);
    CHECK(std::string(e.what()) == "functional mismatch at block 2, round 7, byte 5: expected ab, got cd");
}
