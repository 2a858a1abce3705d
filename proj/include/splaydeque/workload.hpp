#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "splaydeque/compression_trace.hpp"
#include "splaydeque/correspondence.hpp"
#include "splaydeque/splay_tree.hpp"

namespace splaydeque {

enum class WorkloadKind { pop_only, random_mix, push_burst, period_hold };
enum class InitialShape { left_path, random };

const char* to_string(WorkloadKind kind) noexcept;
WorkloadKind parse_workload_kind(std::string_view s);
const char* to_string(InitialShape shape) noexcept;
InitialShape parse_initial_shape(std::string_view s);
DequeOp parse_deque_op(std::string_view s);

struct WorkloadParams {
    WorkloadKind kind = WorkloadKind::pop_only;
    std::size_t n = 0;
    /// Operation count; pop-only defaults to n when left at 0.
    std::size_t m = 0;
    std::uint64_t seed = 1;
    /// Defaults: left path for pop-only, push-burst and period-hold; random otherwise.
    std::optional<InitialShape> initial;
    /// random-mix only: operations drawn uniformly from this list (empty: all four).
    std::vector<DequeOp> mix;
    /// push-burst / period-hold burst length; 0 selects default_block_size(n).
    std::size_t burst = 0;

    InitialShape initial_shape() const;
};

struct WorkloadTrace {
    WorkloadParams params;
    std::vector<DequeOp> ops;
};

/// Seeded with std::mt19937_64; bounded draws use rejection sampling so
/// traces do not depend on the standard library's distributions.
class WorkloadRng {
public:
    explicit WorkloadRng(std::uint64_t seed) : engine_(seed) {}
    std::uint64_t next() { return engine_(); }
    /// Uniform in [0, bound).
    std::uint64_t below(std::uint64_t bound);

private:
    std::mt19937_64 engine_;
};

/// Deterministic for (kind, n, m, seed, mix, burst).
/// Throws invalid_argument when the request cannot be met (e.g. more pops than nodes).
WorkloadTrace generate(const WorkloadParams& params);

/// The initial tree a trace starts from.
SplayTree initial_tree(const WorkloadParams& params);

/// Throws invalid_argument at the first pop/eject on an empty deque.
void check_feasible(const WorkloadTrace& trace);

/// `# splaydeque trace kind=... n=... m=... seed=... initial=...` then one op per line.
void write_trace(std::ostream& os, const WorkloadTrace& trace);
WorkloadTrace read_trace(std::istream& is);

struct RunOptions {
    bool mirror = false;
    /// Full tree validation every this many operations (0: never, 1: every op).
    std::size_t validate_every = 1;
    /// Link checks around every rotation.
    bool local_checks = false;
    bool keep_series = true;
    /// Mirror policy; defaults to whole_tree for push/pop-only traces, halves otherwise.
    std::optional<PhasePolicy> policy;
};

struct CostReport {
    WorkloadKind kind = WorkloadKind::pop_only;
    std::size_t n = 0;
    std::size_t m = 0;
    std::uint64_t seed = 0;
    std::uint64_t total_rotations = 0;
    RotationLedger ledger;
    /// Rotations charged to each operation, in order.
    std::vector<std::uint32_t> per_op;

    /// total / m
    double per_operation() const;
    /// total / (m + n)
    double amortized() const;
    double log2_mn() const;
    unsigned alpha_star_mn() const;
};

struct RunResult {
    CostReport cost;
    std::optional<MirrorStats> mirror;
    /// Left-half compression trace (empty unless mirroring).
    std::vector<trace::Record> compression_trace;
    std::size_t validations = 0;
};

RunResult run(const WorkloadTrace& trace, const RunOptions& options = {});

/// kind,n,m,seed,total_rotations,per_op,amortized,log2_mn,alpha_star_mn,ratio_log2,ratio_alpha_star
/// Rows are sorted by (kind, n, m, seed) so merged reports are deterministic.
void write_report_csv(std::ostream& os, std::span<const CostReport> costs);

}  // namespace splaydeque
