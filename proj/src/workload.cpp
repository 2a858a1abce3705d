#include "splaydeque/workload.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <tuple>

#include "splaydeque/error.hpp"
#include "splaydeque/slow_functions.hpp"
#include "splaydeque/transcription.hpp"

namespace splaydeque {

const char* to_string(WorkloadKind kind) noexcept {
    switch (kind) {
        case WorkloadKind::pop_only: return "pop-only";
        case WorkloadKind::random_mix: return "random-mix";
        case WorkloadKind::push_burst: return "push-burst";
        case WorkloadKind::period_hold: return "period-hold";
    }
    return "?";
}

WorkloadKind parse_workload_kind(std::string_view s) {
    for (auto k : {WorkloadKind::pop_only, WorkloadKind::random_mix, WorkloadKind::push_burst,
                   WorkloadKind::period_hold}) {
        if (s == to_string(k)) return k;
    }
    throw Error(ErrorKind::parse_error, "unknown workload kind: " + std::string(s));
}

const char* to_string(InitialShape shape) noexcept {
    return shape == InitialShape::left_path ? "left-path" : "random";
}

InitialShape parse_initial_shape(std::string_view s) {
    if (s == "left-path") return InitialShape::left_path;
    if (s == "random") return InitialShape::random;
    throw Error(ErrorKind::parse_error, "unknown initial shape: " + std::string(s));
}

DequeOp parse_deque_op(std::string_view s) {
    for (auto op : {DequeOp::push, DequeOp::pop, DequeOp::inject, DequeOp::eject}) {
        if (s == to_string(op)) return op;
    }
    throw Error(ErrorKind::parse_error, "unknown deque operation: " + std::string(s));
}

InitialShape WorkloadParams::initial_shape() const {
    if (initial) return *initial;
    return kind == WorkloadKind::random_mix ? InitialShape::random : InitialShape::left_path;
}

std::uint64_t WorkloadRng::below(std::uint64_t bound) {
    if (bound == 0) throw Error(ErrorKind::invalid_argument, "empty range");
    // Reject the top partial copy of [0, bound) so every residue is equally likely.
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x;
    do {
        x = engine_();
    } while (x >= limit);
    return x % bound;
}

namespace {

bool removes(DequeOp op) { return op == DequeOp::pop || op == DequeOp::eject; }

std::size_t burst_length(const WorkloadParams& p) {
    return p.burst ? p.burst : default_block_size(p.n);
}

}  // namespace

WorkloadTrace generate(const WorkloadParams& params) {
    WorkloadTrace out;
    out.params = params;
    const std::size_t n = params.n;
    WorkloadRng rng(params.seed);
    auto& ops = out.ops;

    switch (params.kind) {
        case WorkloadKind::pop_only: {
            const std::size_t m = params.m ? params.m : n;
            if (m > n) {
                throw Error(ErrorKind::invalid_argument,
                            "pop-only workload needs m <= n (" + std::to_string(m) + " > " + std::to_string(n) + ")");
            }
            ops.assign(m, DequeOp::pop);
            out.params.m = m;
            break;
        }
        case WorkloadKind::random_mix: {
            const std::size_t m = params.m ? params.m : n;
            std::vector<DequeOp> mix = params.mix;
            if (mix.empty()) mix = {DequeOp::push, DequeOp::pop, DequeOp::inject, DequeOp::eject};
            std::vector<DequeOp> inserts;
            for (DequeOp op : mix) {
                if (!removes(op)) inserts.push_back(op);
            }
            std::size_t size = n;
            for (std::size_t i = 0; i < m; ++i) {
                DequeOp op = mix[rng.below(mix.size())];
                if (removes(op) && size == 0) {
                    if (inserts.empty()) {
                        throw Error(ErrorKind::invalid_argument,
                                    "random-mix without insertions runs out of nodes after " + std::to_string(i) +
                                        " operations");
                    }
                    op = inserts[rng.below(inserts.size())];
                }
                size += removes(op) ? -1 : 1;
                ops.push_back(op);
            }
            out.params.m = m;
            break;
        }
        case WorkloadKind::push_burst: {
            const std::size_t m = params.m ? params.m : 2 * n;
            const std::size_t b = burst_length(params);
            std::size_t size = n;
            while (ops.size() < m) {
                const std::size_t pushes = 1 + rng.below(b);
                for (std::size_t i = 0; i < pushes && ops.size() < m; ++i, ++size) ops.push_back(DequeOp::push);
                const std::size_t pops = std::min<std::size_t>(size, 1 + rng.below(2 * b));
                for (std::size_t i = 0; i < pops && ops.size() < m; ++i, --size) ops.push_back(DequeOp::pop);
            }
            out.params.m = m;
            break;
        }
        case WorkloadKind::period_hold: {
            // A pop opens a period, a burst of pushes puts it on hold, a pop resumes.
            const std::size_t m = params.m ? params.m : 2 * n;
            const std::size_t b = burst_length(params);
            std::size_t size = n;
            while (ops.size() < m) {
                const std::size_t before = ops.size();
                if (size > 0) {
                    ops.push_back(DequeOp::pop);
                    --size;
                }
                for (std::size_t i = 0; i < b && ops.size() < m; ++i, ++size) ops.push_back(DequeOp::push);
                if (ops.size() < m) {
                    ops.push_back(DequeOp::pop);
                    --size;
                }
                if (ops.size() == before) break;
            }
            ops.resize(std::min(ops.size(), m));
            out.params.m = m;
            break;
        }
    }
    check_feasible(out);
    return out;
}

SplayTree initial_tree(const WorkloadParams& params) {
    if (params.initial_shape() == InitialShape::left_path) return SplayTree::left_path(params.n);
    // A separate stream, so the shape does not shift the op sequence.
    WorkloadRng rng(params.seed ^ 0x9e3779b97f4a7c15ULL);
    std::vector<NodeId> keys(params.n);
    std::iota(keys.begin(), keys.end(), NodeId{0});
    for (std::size_t i = keys.size(); i > 1; --i) std::swap(keys[i - 1], keys[rng.below(i)]);
    return SplayTree::from_insertion_order(keys);
}

void check_feasible(const WorkloadTrace& trace) {
    std::size_t size = trace.params.n;
    for (std::size_t i = 0; i < trace.ops.size(); ++i) {
        if (removes(trace.ops[i])) {
            if (size == 0) {
                throw Error(ErrorKind::invalid_argument,
                            std::string(to_string(trace.ops[i])) + " on an empty deque at operation " + std::to_string(i));
            }
            --size;
        } else {
            ++size;
        }
    }
}

void write_trace(std::ostream& os, const WorkloadTrace& trace) {
    const auto& p = trace.params;
    os << "# splaydeque trace kind=" << to_string(p.kind) << " n=" << p.n << " m=" << trace.ops.size()
       << " seed=" << p.seed << " initial=" << to_string(p.initial_shape());
    if (!p.mix.empty()) {
        os << " mix=";
        for (std::size_t i = 0; i < p.mix.size(); ++i) os << (i ? "," : "") << to_string(p.mix[i]);
    }
    if (p.burst) os << " burst=" << p.burst;
    os << '\n';
    for (DequeOp op : trace.ops) os << to_string(op) << '\n';
}

WorkloadTrace read_trace(std::istream& is) {
    WorkloadTrace out;
    std::string line;
    std::size_t lineno = 0;
    bool header = false;
    auto fail = [&](const std::string& why) {
        throw Error(ErrorKind::parse_error, "trace line " + std::to_string(lineno) + ": " + why);
    };
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::istringstream ss(line.substr(1));
            std::string word;
            ss >> word;
            if (word != "splaydeque") continue;
            ss >> word;  // "trace"
            header = true;
            while (ss >> word) {
                const auto eq = word.find('=');
                if (eq == std::string::npos) fail("malformed header field '" + word + "'");
                const std::string key = word.substr(0, eq), value = word.substr(eq + 1);
                try {
                    if (key == "kind") out.params.kind = parse_workload_kind(value);
                    else if (key == "n") out.params.n = std::stoull(value);
                    else if (key == "m") out.params.m = std::stoull(value);
                    else if (key == "seed") out.params.seed = std::stoull(value);
                    else if (key == "initial") out.params.initial = parse_initial_shape(value);
                    else if (key == "burst") out.params.burst = std::stoull(value);
                    else if (key == "mix") {
                        std::istringstream ms(value);
                        std::string op;
                        while (std::getline(ms, op, ',')) out.params.mix.push_back(parse_deque_op(op));
                    }
                } catch (const Error& e) {
                    fail(e.what());
                } catch (const std::exception&) {
                    fail("bad value for " + key);
                }
            }
            continue;
        }
        try {
            out.ops.push_back(parse_deque_op(line));
        } catch (const Error& e) {
            fail(e.what());
        }
    }
    if (!header) throw Error(ErrorKind::parse_error, "trace has no '# splaydeque trace' header");
    if (out.params.m != 0 && out.params.m != out.ops.size()) {
        throw Error(ErrorKind::parse_error, "header says m=" + std::to_string(out.params.m) + " but trace has " +
                                                std::to_string(out.ops.size()) + " operations");
    }
    out.params.m = out.ops.size();
    check_feasible(out);
    return out;
}

double CostReport::per_operation() const {
    return m == 0 ? 0.0 : static_cast<double>(total_rotations) / static_cast<double>(m);
}

double CostReport::amortized() const {
    return m + n == 0 ? 0.0 : static_cast<double>(total_rotations) / static_cast<double>(m + n);
}

double CostReport::log2_mn() const {
    return m + n == 0 ? 0.0 : std::log2(static_cast<double>(m + n));
}

unsigned CostReport::alpha_star_mn() const { return alpha_star(std::max<std::uint64_t>(1, m + n)); }

RunResult run(const WorkloadTrace& trace, const RunOptions& options) {
    RunResult out;
    SplayTree t = initial_tree(trace.params);
    t.set_local_checks(options.local_checks);

    std::optional<DequeMirror> mirror;
    if (options.mirror) {
        PhasePolicy policy = PhasePolicy::whole_tree;
        if (options.policy) {
            policy = *options.policy;
        } else if (std::any_of(trace.ops.begin(), trace.ops.end(),
                               [](DequeOp op) { return op == DequeOp::inject || op == DequeOp::eject; })) {
            policy = PhasePolicy::halves;
        }
        mirror.emplace(policy);
        mirror->start(t);
    }

    auto& cost = out.cost;
    cost.kind = trace.params.kind;
    cost.n = trace.params.n;
    cost.m = trace.ops.size();
    cost.seed = trace.params.seed;
    if (options.keep_series) cost.per_op.reserve(trace.ops.size());

    for (std::size_t i = 0; i < trace.ops.size(); ++i) {
        const DequeOp op = trace.ops[i];
        const std::uint64_t before = t.rotation_count().rotations;
        if (mirror) mirror->before(t, op);
        PopRecord rec;
        NodeId inserted = kNil;
        switch (op) {
            case DequeOp::push: inserted = t.push(); break;
            case DequeOp::inject: inserted = t.inject(); break;
            case DequeOp::pop: rec = t.pop(); break;
            case DequeOp::eject: rec = t.eject(); break;
        }
        if (mirror) mirror->after(t, op, removes(op) ? &rec : nullptr, inserted);
        if (options.keep_series) {
            cost.per_op.push_back(static_cast<std::uint32_t>(t.rotation_count().rotations - before));
        }
        if (options.validate_every != 0 && (i + 1) % options.validate_every == 0) {
            t.validate();
            ++out.validations;
        }
    }
    if (options.validate_every != 0) {
        t.validate();
        ++out.validations;
    }
    cost.ledger = t.rotation_count();
    cost.total_rotations = cost.ledger.rotations;
    if (mirror) {
        out.mirror = mirror->stats();
        out.compression_trace = mirror->left_trace();
    }
    return out;
}

void write_report_csv(std::ostream& os, std::span<const CostReport> costs) {
    os << "kind,n,m,seed,total_rotations,per_op,amortized,log2_mn,alpha_star_mn,ratio_log2,ratio_alpha_star\n";
    std::vector<const CostReport*> rows;
    for (const auto& c : costs) rows.push_back(&c);
    std::stable_sort(rows.begin(), rows.end(), [](const CostReport* a, const CostReport* b) {
        return std::make_tuple(std::string(to_string(a->kind)), a->n, a->m, a->seed) <
               std::make_tuple(std::string(to_string(b->kind)), b->n, b->m, b->seed);
    });
    char buf[256];
    for (const CostReport* c : rows) {
        const double amortized = c->amortized();
        const double lg = c->log2_mn();
        const unsigned as = c->alpha_star_mn();
        std::snprintf(buf, sizeof buf, "%s,%zu,%zu,%llu,%llu,%.6f,%.6f,%.6f,%u,%.6f,%.6f\n", to_string(c->kind),
                      c->n, c->m, static_cast<unsigned long long>(c->seed),
                      static_cast<unsigned long long>(c->total_rotations), c->per_operation(), amortized, lg, as,
                      lg > 0 ? amortized / lg : 0.0, as > 0 ? amortized / as : 0.0);
        os << buf;
    }
}

}  // namespace splaydeque
