// Command-line harness: workload generation, mirrored runs, transcription,
// pattern checks, extremal search and cost reports.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "splaydeque/compression_trace.hpp"
#include "splaydeque/error.hpp"
#include "splaydeque/sequence.hpp"
#include "splaydeque/transcription.hpp"
#include "splaydeque/workload.hpp"

namespace sd = splaydeque;

namespace {

constexpr int kViolation = 1;
constexpr int kUsage = 2;

struct GenArgs {
    std::string kind = "pop-only";
    std::size_t n = 0;
    std::size_t m = 0;
    std::uint64_t seed = 1;
    std::string initial;
    std::string mix;
    std::size_t burst = 0;
};

void add_gen_options(CLI::App* cmd, GenArgs& g) {
    cmd->add_option("--kind", g.kind, "pop-only | random-mix | push-burst | period-hold")
        ->check(CLI::IsMember({"pop-only", "random-mix", "push-burst", "period-hold"}));
    cmd->add_option("--n", g.n, "initial number of nodes");
    cmd->add_option("--m", g.m, "number of operations (0: kind default)");
    cmd->add_option("--seed", g.seed, "generator seed");
    cmd->add_option("--initial", g.initial, "left-path | random")->check(CLI::IsMember({"left-path", "random"}));
    cmd->add_option("--mix", g.mix, "random-mix operations, comma separated (e.g. push,pop)");
    cmd->add_option("--burst", g.burst, "push-burst / period-hold burst length (0: default block size)");
}

sd::WorkloadParams to_params(const GenArgs& g) {
    sd::WorkloadParams p;
    p.kind = sd::parse_workload_kind(g.kind);
    p.n = g.n;
    p.m = g.m;
    p.seed = g.seed;
    if (!g.initial.empty()) p.initial = sd::parse_initial_shape(g.initial);
    std::istringstream ms(g.mix);
    for (std::string op; std::getline(ms, op, ',');) {
        if (!op.empty()) p.mix.push_back(sd::parse_deque_op(op));
    }
    p.burst = g.burst;
    return p;
}

// Opens `path` for writing, or returns stdout for "" / "-".
class Output {
public:
    explicit Output(const std::string& path) {
        if (path.empty() || path == "-") return;
        file_ = std::make_unique<std::ofstream>(path);
        if (!*file_) throw sd::Error(sd::ErrorKind::invalid_argument, "cannot write " + path);
    }
    std::ostream& get() { return file_ ? *file_ : std::cout; }

private:
    std::unique_ptr<std::ofstream> file_;
};

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw sd::Error(sd::ErrorKind::invalid_argument, "cannot read " + path);
    return in;
}

sd::WorkloadTrace load_or_generate(const std::string& trace_path, const GenArgs& g) {
    if (!trace_path.empty()) {
        auto in = open_input(trace_path);
        return sd::read_trace(in);
    }
    return sd::generate(to_params(g));
}

void print_mirror(std::ostream& os, const sd::MirrorStats& s) {
    os << "mirror checks " << s.checks << " mismatches " << s.mismatches << " phases " << s.phases
       << " compressions " << s.compressions << " stunted " << s.stunted << " relocations " << s.relocations
       << '\n';
    for (const auto& m : s.first_mismatches) os << "  mismatch: " << m << '\n';
}

bool patterns_ok(const sd::TranscriptionReport& r) {
    return !r.contains_abababa && !r.contains_abaabba && r.path_violations == 0 &&
           r.exposed_block_violations == 0 && r.repetition_bound_holds() && r.max_multiplicity <= r.split_bound;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Splay-tree deque harness"};
    app.require_subcommand(1);

    GenArgs gen_args;
    std::string out_path;
    std::string trace_path;
    bool mirror = false;
    bool strict = false;
    std::size_t block_size = 0;
    std::size_t split_bound = 0;
    std::size_t validate_every = 1;
    std::string compression_out;
    std::string epochs_csv;
    std::string pattern = "abababa";
    std::string seq_path;
    std::size_t ex_n = 0;
    std::size_t ex_cap = 0;
    std::uint64_t ex_budget = 50'000'000;
    std::vector<std::size_t> sizes;
    std::vector<std::uint64_t> seeds;

    auto* gen = app.add_subcommand("gen", "generate a workload trace");
    add_gen_options(gen, gen_args);
    gen->add_option("--out", out_path, "trace file (default stdout)");

    auto* run = app.add_subcommand("run", "execute a workload and report costs");
    add_gen_options(run, gen_args);
    run->add_option("--trace", trace_path, "workload trace file (instead of generating)");
    run->add_flag("--mirror", mirror, "check every operation against the general-tree model");
    run->add_flag("--strict", strict, "exit 1 on any model mismatch or forbidden pattern");
    run->add_option("--block-size", block_size, "transcription block size B (strict mode)");
    run->add_option("--split-bound", split_bound, "transcription split bound t (strict mode)");
    run->add_option("--validate-every", validate_every, "full tree validation period (0: never)");
    run->add_option("--compression-out", compression_out, "write the left-half compression trace here");
    run->add_option("--out", out_path, "CSV report (default stdout)");

    auto* tr = app.add_subcommand("transcribe", "transcribe a compression trace into S' and S");
    add_gen_options(tr, gen_args);
    tr->add_option("--trace", trace_path, "compression trace file (instead of generating a mirrored run)");
    tr->add_option("--block-size", block_size, "block size B (0: max(4, ceil(log2(n)^2)))");
    tr->add_option("--split-bound", split_bound, "split bound t (0: same as B)");
    tr->add_flag("--strict", strict, "exit 1 on a forbidden pattern or invariant violation");
    tr->add_option("--epochs-csv", epochs_csv, "per-epoch CSV output");
    tr->add_option("--out", out_path, "sequence file with S' then S (default stdout)");

    auto* cp = app.add_subcommand("check-pattern", "test sequences for a forbidden pattern");
    cp->add_option("--pattern", pattern, "pattern in letters, e.g. abab");
    cp->add_option("--in", seq_path, "sequence file, one sequence per line")->required();
    cp->add_flag("--strict", strict, "exit 1 if any sequence contains the pattern");
    cp->add_option("--out", out_path, "results (default stdout)");

    auto* ex = app.add_subcommand("ex", "exhaustive extremal search Ex(pattern, n)");
    ex->add_option("--pattern", pattern, "pattern in letters")->required();
    ex->add_option("--n", ex_n, "number of distinct symbols")->required();
    ex->add_option("--cap", ex_cap, "length cap (0: 4n+4)");
    ex->add_option("--budget", ex_budget, "search node budget");
    ex->add_option("--out", out_path, "witness sequence file (default stdout)");

    auto* rep = app.add_subcommand("report", "cost CSV over several sizes and seeds");
    add_gen_options(rep, gen_args);
    rep->add_option("--sizes", sizes, "initial sizes n")->delimiter(',')->required();
    rep->add_option("--seeds", seeds, "seeds")->delimiter(',');
    rep->add_option("--validate-every", validate_every, "full tree validation period (0: never)");
    rep->add_option("--out", out_path, "CSV report (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*gen) {
            const auto trace = sd::generate(to_params(gen_args));
            Output out(out_path);
            sd::write_trace(out.get(), trace);
            return 0;
        }

        if (*run) {
            const auto trace = load_or_generate(trace_path, gen_args);
            sd::RunOptions opts;
            opts.mirror = mirror;
            opts.validate_every = validate_every;
            opts.keep_series = false;
            const auto result = sd::run(trace, opts);
            Output out(out_path);
            const std::vector<sd::CostReport> rows{result.cost};
            sd::write_report_csv(out.get(), rows);
            int status = 0;
            if (result.mirror) {
                print_mirror(std::cerr, *result.mirror);
                if (strict && result.mirror->mismatches != 0) status = kViolation;
                if (!compression_out.empty()) {
                    Output cout_(compression_out);
                    sd::trace::write(cout_.get(), result.compression_trace);
                }
                if (strict) {
                    sd::TranscriptionOptions topts{block_size, split_bound};
                    const auto tr_report = sd::transcribe(result.compression_trace, topts);
                    std::cerr << "transcription S' " << tr_report.s_prime.size() << " abababa "
                              << tr_report.contains_abababa << " abaabba " << tr_report.contains_abaabba << '\n';
                    if (!patterns_ok(tr_report)) status = kViolation;
                }
            } else if (strict) {
                std::cerr << "--strict has no effect without --mirror\n";
            }
            return status;
        }

        if (*tr) {
            std::vector<sd::trace::Record> records;
            if (!trace_path.empty()) {
                auto in = open_input(trace_path);
                records = sd::trace::read(in);
            } else {
                const auto trace = sd::generate(to_params(gen_args));
                sd::RunOptions opts;
                opts.mirror = true;
                opts.keep_series = false;
                records = sd::run(trace, opts).compression_trace;
            }
            const auto report = sd::transcribe(records, {block_size, split_bound});
            {
                Output out(out_path);
                out.get() << "# S'\n";
                sd::write_sequence(out.get(), report.s_prime);
                out.get() << "# S\n";
                sd::write_sequence(out.get(), report.s);
            }
            sd::write_summary(std::cerr, report);
            if (!epochs_csv.empty()) {
                Output csv(epochs_csv);
                sd::write_epoch_csv(csv.get(), report);
            }
            return strict && !patterns_ok(report) ? kViolation : 0;
        }

        if (*cp) {
            const auto pat = sd::SymbolSequence::from_letters(pattern);
            auto in = open_input(seq_path);
            const auto seqs = sd::read_sequences(in);
            Output out(out_path);
            std::size_t hits = 0;
            for (std::size_t i = 0; i < seqs.size(); ++i) {
                const bool hit = sd::contains_pattern(pat, seqs[i]);
                hits += hit ? 1 : 0;
                out.get() << i << ' ' << (hit ? "contains" : "free") << '\n';
            }
            return strict && hits != 0 ? kViolation : 0;
        }

        if (*ex) {
            const auto pat = sd::SymbolSequence::from_letters(pattern);
            const std::size_t cap = ex_cap ? ex_cap : 4 * ex_n + 4;
            const auto result = sd::ex_bruteforce(pat, ex_n, cap, ex_budget);
            std::cout << "ex " << result.value << (result.exact ? " exact" : " lower-bound") << " nodes "
                      << result.nodes << '\n';
            if (result.witness) {
                Output out(out_path);
                sd::write_sequence(out.get(), *result.witness);
            }
            return 0;
        }

        if (*rep) {
            if (seeds.empty()) seeds.push_back(gen_args.seed);
            std::vector<sd::CostReport> rows;
            for (std::size_t n : sizes) {
                for (std::uint64_t seed : seeds) {
                    GenArgs g = gen_args;
                    g.n = n;
                    g.seed = seed;
                    sd::RunOptions opts;
                    opts.validate_every = validate_every;
                    opts.keep_series = false;
                    rows.push_back(sd::run(sd::generate(to_params(g)), opts).cost);
                }
            }
            Output out(out_path);
            sd::write_report_csv(out.get(), rows);
            return 0;
        }
    } catch (const sd::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        const bool usage = e.kind() == sd::ErrorKind::invalid_argument || e.kind() == sd::ErrorKind::parse_error ||
                           e.kind() == sd::ErrorKind::empty_structure;
        return usage ? kUsage : kViolation;
    }
    return 0;
}
