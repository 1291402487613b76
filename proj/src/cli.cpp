#include "paes/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <ostream>
#include <random>
#include <sstream>

#include "json_util.hpp"
#include "paes/aes_core.hpp"
#include "paes/audit.hpp"
#include "paes/cost_model.hpp"
#include "paes/sched_sim.hpp"
#include "paes/sweep.hpp"

namespace paes::report {

namespace {

using cost::Mode;

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

Mode parse_mode(const std::string& text) {
    if (text == "enc" || text == "encrypt") return Mode::encrypt;
    if (text == "dec" || text == "decrypt") return Mode::decrypt;
    throw UsageError("--mode: expected enc or dec, got '" + text + "'");
}

Format parse_format(const std::string& text) {
    if (text == "csv") return Format::csv;
    if (text == "json") return Format::json;
    if (text == "markdown" || text == "md") return Format::markdown;
    throw UsageError("--format: expected csv, json or markdown, got '" + text + "'");
}

TimeQuantum parse_shifts(const std::string& flag, const std::string& text) {
    try {
        return TimeQuantum::shifts(Rational::parse(text));
    } catch (const std::invalid_argument&) {
        throw UsageError(flag + ": not a rational number: '" + text + "'");
    }
}

std::vector<std::string> split(const std::string& text) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

std::vector<int> parse_int_list(const std::string& flag, const std::string& text) {
    std::vector<int> out;
    for (const std::string& item : split(text)) {
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != item.size() || used == 0) throw UsageError(flag + ": not an integer: '" + item + "'");
        out.push_back(v);
    }
    if (out.empty()) throw UsageError(flag + ": empty list");
    return out;
}

aes::Block parse_hex_arg(const std::string& what, const std::string& text) {
    try {
        return aes::block_from_hex(text);
    } catch (const std::invalid_argument&) {
        throw UsageError(what + ": expected 32 hex digits, got '" + text + "' (" + std::to_string(text.size()) +
                         " characters)");
    }
}

std::string txor_text(const Rational& r) {
    return r.is_integer() ? r.str() + " T_XOR" : r.str() + " (" + r.to_decimal(2) + ") T_XOR";
}

// Common model flags shared by `model`, `simulate` and `sweep`.
struct ModelFlags {
    std::string mode = "enc";
    std::string t_ov = "0";
    std::string t_byte_sub = "0";
    bool inner_parallel = false;

    void attach(CLI::App* app) {
        app->add_option("--mode", mode, "enc or dec")->capture_default_str();
        app->add_flag("--inner-parallel", inner_parallel, "split Add_Round_Key and Mix_Column across the stage's PEs");
        app->add_option("--t-ov", t_ov, "combine overhead per element chunk, in T_shift")->capture_default_str();
        app->add_option("--t-byte-sub", t_byte_sub, "Byte_Sub time per round, in T_shift")->capture_default_str();
    }

    cost::CostParams params() const {
        cost::CostParams p;
        p.t_ov = parse_shifts("--t-ov", t_ov);
        p.t_byte_sub = parse_shifts("--t-byte-sub", t_byte_sub);
        p.validate();
        return p;
    }
};

// Writes to --out when given, else to the command's stdout.
class Sink {
  public:
    Sink(const std::string& path, std::ostream& fallback) : fallback_(fallback) {
        if (!path.empty()) {
            file_.open(path, std::ios::out | std::ios::trunc);
            if (!file_) throw UsageError("--out: cannot write '" + path + "'");
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : fallback_; }

  private:
    std::ofstream file_;
    std::ostream& fallback_;
};

class Cli {
  public:
    Cli(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

    int run(const std::vector<std::string>& args) {
        CLI::App app{"Pipelined AES-128 cost model, simulator and table audit", "paes"};
        app.require_subcommand(1);
        app.set_version_flag("--version", "paes 1.0");

        auto* enc = app.add_subcommand("encrypt", "encrypt 128-bit blocks");
        auto* dec = app.add_subcommand("decrypt", "decrypt 128-bit blocks");
        for (auto* sub : {enc, dec}) {
            sub->add_option("--key", key_, "32 hex digits")->required();
            sub->add_option("blocks", hex_blocks_, "32 hex digits each")->required();
        }

        auto* model = app.add_subcommand("model", "analytical times for one configuration");
        flags_.attach(model);
        model->add_option("--blocks-count,-L", blocks_count_, "number of blocks L")->capture_default_str();
        model->add_option("--pe", pe_, "PEs per stage M_r")->capture_default_str();
        model->add_option("--format", format_, "markdown, json or csv");
        model->add_option("--out", out_path_, "output file");

        auto* simulate = app.add_subcommand("simulate", "discrete-event simulation of one configuration");
        flags_.attach(simulate);
        auto* l_opt = simulate->add_option("--blocks-count,-L", blocks_count_, "number of blocks L");
        simulate->add_option("--pe", pe_, "PEs per stage M_r")->capture_default_str();
        simulate->add_flag("--functional", functional_, "carry real bytes and check every stage against aes_core");
        simulate->add_option("--key", key_, "32 hex digits (default: random from --seed)");
        simulate->add_option("--blocks", blocks_list_, "comma-separated input blocks (default: random from --seed)");
        simulate->add_option("--seed", seed_, "seed for random key and blocks")->capture_default_str();
        simulate->add_option("--trace", trace_path_, "write the event trace as CSV");

        auto* tables = app.add_subcommand("tables", "regenerate Tables 1-4 and audit them");
        tables->add_option("--format", format_, "markdown, json or csv");
        tables->add_option("--out", out_path_, "output file");

        auto* sweep = app.add_subcommand("sweep", "model quantities over a parameter grid");
        flags_.attach(sweep);
        sweep->add_option("--blocks-count,-L", blocks_axis_, "comma-separated L values")->required();
        sweep->add_option("--pe", pe_axis_, "comma-separated M_r values")->required();
        sweep->add_option("--inner", inner_axis_, "comma-separated subset of off,on");
        sweep->add_flag("--simulate", sweep_simulate_, "add the simulated makespan");
        sweep->add_option("--format", format_, "csv, json or markdown");
        sweep->add_option("--out", out_path_, "output file");

        std::vector<std::string> reversed(args.rbegin(), args.rend());
        try {
            app.parse(reversed);
        } catch (const CLI::ParseError& e) {
            const int code = app.exit(e, out_, err_);
            return code == 0 ? exit_ok : exit_usage;
        }

        try {
            if (enc->parsed()) return cipher(Mode::encrypt);
            if (dec->parsed()) return cipher(Mode::decrypt);
            if (model->parsed()) return cmd_model();
            if (simulate->parsed()) return cmd_simulate(l_opt->count() > 0);
            if (tables->parsed()) return cmd_tables();
            if (sweep->parsed()) return cmd_sweep();
        } catch (const sim::FunctionalMismatch& e) {
            err_ << "error: " << e.what() << '\n';
            return exit_cross_check;
        } catch (const std::invalid_argument& e) {
            err_ << "error: " << e.what() << '\n';
            return exit_usage;
        } catch (const std::domain_error& e) {
            err_ << "error: " << e.what() << '\n';
            return exit_usage;
        } catch (const std::overflow_error& e) {
            err_ << "error: " << e.what() << '\n';
            return exit_usage;
        }
        return exit_usage;
    }

  private:
    int cipher(Mode mode) {
        const aes::Block key = parse_hex_arg("--key", key_);
        std::vector<aes::Block> blocks;
        for (std::size_t i = 0; i < hex_blocks_.size(); ++i)
            blocks.push_back(parse_hex_arg("block " + std::to_string(i + 1), hex_blocks_[i]));
        const aes::KeySchedule ks = aes::key_expand(key);
        for (const aes::Block& b : blocks)
            out_ << aes::to_hex(mode == Mode::encrypt ? aes::encrypt_block(b, ks) : aes::decrypt_block(b, ks)) << '\n';
        return exit_ok;
    }

    cost::PipelineConfig config() const {
        cost::PipelineConfig c;
        c.mode = parse_mode(flags_.mode);
        c.num_blocks = blocks_count_;
        c.pe_per_stage = pe_;
        c.inner_parallel = flags_.inner_parallel;
        c.params = flags_.params();
        return c;
    }

    void warn(const cost::PipelineConfig& c) {
        for (const std::string& w : c.validate()) err_ << "warning: " << w << '\n';
    }

    int cmd_model() {
        const cost::PipelineConfig c = config();
        warn(c);
        const Format format = format_.empty() ? Format::markdown : parse_format(format_);
        Sink sink(out_path_, out_);
        std::ostream& os = sink.stream();
        if (format == Format::csv) {
            write_sweep(os, {evaluate_point(c, false)}, Format::csv);
            return exit_ok;
        }

        const TimeQuantum x = c.params.t_xor;
        const cost::StageTimes st = cost::stage_times(c.mode, c.pe_per_stage, c.inner_parallel, c.params);
        const TimeQuantum seq = cost::sequential_time(c.mode, c.num_blocks, c.params);
        const TimeQuantum pipe = cost::paper_pipeline_time(c);
        const TimeQuantum flow = cost::flowshop_makespan(c);
        cost::PipelineConfig single = c;
        single.pe_per_stage = 1;
        single.inner_parallel = false;
        const TimeQuantum single_pipe = cost::paper_pipeline_time(single);
        const cost::MetricRow vs_seq = cost::metrics(seq, pipe, c.pe_per_stage);
        const cost::MetricRow vs_single = cost::metrics(single_pipe, pipe, c.pe_per_stage);

        if (format == Format::json) {
            nlohmann::ordered_json j;
            j["mode"] = cost::to_string(c.mode);
            j["L"] = c.num_blocks;
            j["M_r"] = c.pe_per_stage;
            j["inner_parallel"] = c.inner_parallel;
            j["t_ov"] = rational_json(c.params.t_ov.in_shifts());
            j["t_byte_sub"] = rational_json(c.params.t_byte_sub.in_shifts());
            j["stage_times_txor"] = {{"initial", rational_json(st.initial.in_units_of(x))},
                                     {"standard", rational_json(st.standard.in_units_of(x))},
                                     {"final", rational_json(st.final.in_units_of(x))}};
            j["seq_txor"] = rational_json(seq.in_units_of(x));
            j["paper_pipeline_txor"] = rational_json(pipe.in_units_of(x));
            j["flowshop_txor"] = rational_json(flow.in_units_of(x));
            j["single_pe_pipeline_txor"] = rational_json(single_pipe.in_units_of(x));
            auto metric_json = [](const cost::MetricRow& m) {
                return nlohmann::ordered_json{{"speedup", rational_json(m.speedup)},
                                              {"efficiency", rational_json(m.efficiency)},
                                              {"improvement", rational_json(m.improvement)}};
            };
            j["vs_sequential"] = metric_json(vs_seq);
            j["vs_single_pe"] = metric_json(vs_single);
            os << j.dump(2) << '\n';
            return exit_ok;
        }

        auto metric_line = [&](const char* label, const cost::MetricRow& m) {
            os << label << ": speedup " << m.speedup << " (" << m.speedup.to_decimal(2) << "), efficiency "
               << m.efficiency << " (" << m.efficiency.to_decimal(2) << "), improvement " << m.improvement << " ("
               << (m.improvement * Rational(100)).to_decimal(2) << "%)\n";
        };
        os << "mode: " << cost::to_string(c.mode) << '\n'
           << "L: " << c.num_blocks << '\n'
           << "M_r: " << c.pe_per_stage << '\n'
           << "inner_parallel: " << (c.inner_parallel ? "on" : "off") << '\n'
           << "t_ov: " << c.params.t_ov.in_shifts() << " T_shift\n"
           << "t_byte_sub: " << c.params.t_byte_sub.in_shifts() << " T_shift\n"
           << "stage times: initial " << txor_text(st.initial.in_units_of(x)) << ", standard "
           << txor_text(st.standard.in_units_of(x)) << ", final " << txor_text(st.final.in_units_of(x)) << '\n'
           << "sequential: " << txor_text(seq.in_units_of(x)) << '\n'
           << "pipeline (L*t1 + 9*t2 + t3): " << txor_text(pipe.in_units_of(x)) << '\n'
           << "flow-shop makespan: " << txor_text(flow.in_units_of(x)) << '\n'
           << "single-PE pipeline: " << txor_text(single_pipe.in_units_of(x)) << '\n';
        metric_line("vs sequential", vs_seq);
        metric_line("vs single-PE pipeline", vs_single);
        return exit_ok;
    }

    int cmd_simulate(bool l_given) {
        std::vector<aes::Block> blocks;
        if (!blocks_list_.empty()) {
            const std::vector<std::string> items = split(blocks_list_);
            for (std::size_t i = 0; i < items.size(); ++i)
                blocks.push_back(parse_hex_arg("--blocks item " + std::to_string(i + 1), items[i]));
            if (!l_given) blocks_count_ = static_cast<int>(blocks.size());
            if (blocks.size() != static_cast<std::size_t>(blocks_count_)) {
                throw UsageError("--blocks gives " + std::to_string(blocks.size()) + " blocks but --blocks-count is " +
                                 std::to_string(blocks_count_));
            }
        }
        if ((!blocks_list_.empty() || !key_.empty()) && !functional_)
            throw UsageError("--key and --blocks need --functional");

        const cost::PipelineConfig c = config();
        warn(c);
        const TimeQuantum x = c.params.t_xor;
        const bool want_trace = !trace_path_.empty();

        sim::SimResult r;
        if (functional_) {
            std::mt19937_64 rng(seed_);
            std::uniform_int_distribution<int> byte(0, 255);
            auto random_block = [&] {
                aes::Block b{};
                for (auto& v : b) v = static_cast<aes::Byte>(byte(rng));
                return b;
            };
            const aes::Block key = key_.empty() ? random_block() : parse_hex_arg("--key", key_);
            if (blocks.empty())
                for (int i = 0; i < c.num_blocks; ++i) blocks.push_back(random_block());
            r = sim::simulate_functional(c, blocks, aes::key_expand(key), {want_trace});
        } else {
            r = sim::simulate(c, {want_trace});
        }

        const TimeQuantum flow = cost::flowshop_makespan(c);
        const bool agree = r.makespan == flow;
        out_ << "mode: " << cost::to_string(c.mode) << '\n'
             << "L: " << c.num_blocks << '\n'
             << "M_r: " << c.pe_per_stage << '\n'
             << "inner_parallel: " << (c.inner_parallel ? "on" : "off") << '\n'
             << "makespan: " << txor_text(r.makespan.in_units_of(x)) << '\n'
             << "flow-shop makespan: " << txor_text(flow.in_units_of(x)) << '\n'
             << "agreement: " << (agree ? "PASS" : "FAIL") << '\n'
             << "pipeline (L*t1 + 9*t2 + t3): " << txor_text(cost::paper_pipeline_time(c).in_units_of(x)) << '\n'
             << "stage utilization:\n";
        for (std::size_t s = 0; s < r.per_stage_busy.size(); ++s) {
            const Rational u = r.makespan.is_zero() ? Rational(0) : r.per_stage_busy[s] / r.makespan;
            out_ << "  S" << s << ": " << u.to_decimal(4) << " (busy " << txor_text(r.per_stage_busy[s].in_units_of(x))
                 << ")\n";
        }
        if (functional_) {
            out_ << "functional: OK (aes_core match)\n";
            for (const aes::Block& b : r.outputs) out_ << "  " << aes::to_hex(b) << '\n';
        }
        if (want_trace) {
            std::ofstream trace(trace_path_);
            if (!trace) throw UsageError("--trace: cannot write '" + trace_path_ + "'");
            sim::write_trace(trace, r);
        }
        if (!agree) {
            err_ << "error: simulated makespan disagrees with the flow-shop model\n";
            return exit_cross_check;
        }
        return exit_ok;
    }

    int cmd_tables() {
        const Format format = format_.empty() ? Format::markdown : parse_format(format_);
        const AuditReport report = audit_tables();
        Sink sink(out_path_, out_);
        switch (format) {
        case Format::markdown: write_audit_markdown(sink.stream(), report); break;
        case Format::csv: write_audit_csv(sink.stream(), report); break;
        case Format::json: write_audit_json(sink.stream(), report); break;
        }
        if (report.clean()) return exit_ok;
        for (const Coordinate& c : report.undocumented) err_ << "undocumented mismatch: " << c.str() << '\n';
        for (const Coordinate& c : report.vanished) err_ << "catalogued cell no longer flagged: " << c.str() << '\n';
        return exit_audit_mismatch;
    }

    int cmd_sweep() {
        SweepSpec spec;
        for (const std::string& m : split(flags_.mode)) spec.modes.push_back(parse_mode(m));
        spec.blocks = parse_int_list("--blocks-count", blocks_axis_);
        spec.pes = parse_int_list("--pe", pe_axis_);
        if (inner_axis_.empty()) {
            spec.inner_parallel = {flags_.inner_parallel};
        } else {
            for (const std::string& v : split(inner_axis_)) {
                if (v == "off") spec.inner_parallel.push_back(false);
                else if (v == "on") spec.inner_parallel.push_back(true);
                else throw UsageError("--inner: expected off or on, got '" + v + "'");
            }
        }
        spec.params = flags_.params();
        spec.simulate = sweep_simulate_;
        const Format format = format_.empty() ? Format::csv : parse_format(format_);
        const std::vector<SweepRow> rows = run_sweep(spec);
        Sink sink(out_path_, out_);
        write_sweep(sink.stream(), rows, format);
        return exit_ok;
    }

    std::ostream& out_;
    std::ostream& err_;

    ModelFlags flags_;
    std::string key_;
    std::vector<std::string> hex_blocks_;
    std::string blocks_list_;
    int blocks_count_ = 1;
    int pe_ = 1;
    bool functional_ = false;
    std::uint64_t seed_ = 1;
    std::string trace_path_;
    std::string format_;
    std::string out_path_;
    std::string blocks_axis_;
    std::string pe_axis_;
    std::string inner_axis_;
    bool sweep_simulate_ = false;
};

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    return Cli(out, err).run(args);
}

} // namespace paes::report
