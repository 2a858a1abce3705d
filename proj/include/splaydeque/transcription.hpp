#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "splaydeque/compression_trace.hpp"
#include "splaydeque/general_tree.hpp"
#include "splaydeque/sequence.hpp"

namespace splaydeque {

struct TranscriptionOptions {
    /// Essential nodes per block; 0 selects default_block_size(n) per phase.
    std::size_t block_size = 0;
    /// Maximum labelled nodes per spawned system; 0 means "same as block size".
    std::size_t split_bound = 0;
};

/// max(4, ceil(log2(n)^2)).
std::size_t default_block_size(std::size_t n);

/// Sizes of the contiguous blocks covering n essential nodes in postorder;
/// every block has B nodes except possibly a shorter last one.
std::vector<std::size_t> partition_blocks(std::size_t n, std::size_t block_size);

/// Contiguous pieces of at most t nodes, ceil(|exposed|/t) of them.
std::vector<std::vector<NodeId>> split_large(std::span<const NodeId> exposed, std::size_t t);

/// Sparse iff |exposed| * log2|exposed| < |touched|.
bool is_dense(std::size_t exposed, std::size_t touched);

struct EpochReport {
    std::size_t phase = 0;
    std::size_t index = 0;  ///< global, in order of commencement
    std::size_t block = 0;
    std::size_t touched = 0;  ///< |I_j|
    std::size_t exposed = 0;  ///< |exposed subset of I_j|
    bool dense = false;
    std::size_t pieces = 0;
    std::size_t labels_assigned = 0;
    std::size_t compressions = 0;
    std::size_t stunted = 0;
    /// Sparse epochs: parent changes inside I_j on unaffiliated nodes.
    std::size_t cascade_cost = 0;
    /// I_j lay on the spine as one contiguous segment at commencement.
    bool single_path = true;
};

struct TranscriptionReport {
    SymbolSequence s_prime;
    SymbolSequence s;
    std::size_t removed_repetitions = 0;
    std::size_t blocks = 0;
    std::size_t phases = 0;
    std::size_t block_size = 0;   ///< last phase's effective B
    std::size_t split_bound = 0;  ///< last phase's effective t
    std::size_t max_multiplicity = 0;
    std::size_t labels_dropped = 0;  ///< labelled nodes still alive when their phase ended
    bool contains_abababa = false;
    bool contains_abaabba = false;
    std::size_t path_violations = 0;
    std::size_t affiliation_violations = 0;
    std::size_t exposed_block_violations = 0;
    std::size_t max_label_length = 0;
    /// Period instrumentation: a block's period runs from its first to its last deletion.
    std::size_t periods = 0;
    std::size_t max_open_periods = 0;
    std::size_t on_hold_events = 0;
    std::vector<EpochReport> epochs;

    /// Repetitions can only sit at block boundaries: at most #blocks - 1 of them.
    bool repetition_bound_holds() const {
        return removed_repetitions == 0 || removed_repetitions + 1 <= blocks;
    }
};

/// Labelling state for one compression trace. Symbols are allocated in
/// increasing order, so every label (kept newest first) is strictly descending.
class Transcript {
public:
    explicit Transcript(TranscriptionOptions options = {}) : options_(options) {}

    /// Starts a phase over `tree`; `order` lists every node that will ever
    /// appear in the phase, in postorder.
    void begin_phase(GeneralTree tree, std::span<const NodeId> order);

    /// Epoch commencement: computes the exposed subset of `touched`, classifies
    /// the epoch and, if dense, affiliates and labels.
    EpochReport& begin_epoch(std::size_t block, std::span<const NodeId> touched);

    /// Appends the leftmost leaf's label to S' and deletes it.
    /// Throws if `node` is not the current leftmost leaf.
    void emit_on_delete(NodeId node);

    CompressionRecord compress(const trace::Compress& c);
    void add_leaf(NodeId node, NodeId parent);

    TranscriptionReport finalize();

    const GeneralTree& tree() const noexcept { return tree_; }
    std::size_t block_of(NodeId v) const;
    std::span<const Symbol> label(NodeId v) const;
    bool affiliated(NodeId v) const;
    const SymbolSequence& emitted() const noexcept { return s_prime_; }
    std::size_t effective_block_size() const noexcept { return block_size_; }
    std::size_t effective_split_bound() const noexcept { return split_bound_; }

private:
    bool exposed(NodeId v) const;
    bool shares_affiliation(NodeId a, NodeId b) const;
    void check_affiliation_contiguity();
    void end_phase();
    void track_period(NodeId deleted);

    TranscriptionOptions options_;
    GeneralTree tree_;
    std::unordered_map<NodeId, std::size_t> block_;
    std::unordered_map<NodeId, std::vector<Symbol>> labels_;
    std::unordered_map<NodeId, std::vector<std::size_t>> affiliations_;
    std::size_t block_size_ = 0;
    std::size_t split_bound_ = 0;
    std::size_t phase_blocks_ = 0;
    std::vector<std::size_t> block_remaining_;
    std::vector<bool> period_open_;
    std::size_t open_periods_ = 0;
    std::size_t active_block_ = static_cast<std::size_t>(-1);
    Symbol next_symbol_ = 0;
    std::size_t next_epoch_ = 0;
    SymbolSequence s_prime_;
    TranscriptionReport report_;
    bool in_phase_ = false;
};

/// Two passes over the trace: the first finds each epoch's touched set, the
/// second replays and labels at each epoch's first compression.
TranscriptionReport transcribe(const std::vector<trace::Record>& records, TranscriptionOptions options = {});

/// For every ordered pair b > a: is b a b b a a plain subsequence? Returns the
/// first offending pair.
std::optional<std::pair<Symbol, Symbol>> find_babba(const SymbolSequence& seq);

/// Per-epoch CSV: phase,epoch,block,touched,exposed,tag,pieces,labels,compressions,stunted,cascade_cost,single_path
void write_epoch_csv(std::ostream& os, const TranscriptionReport& report);
void write_summary(std::ostream& os, const TranscriptionReport& report);

}  // namespace splaydeque
