#pragma once

#include <optional>
#include <string>
#include <vector>

#include "splaydeque/compression_trace.hpp"
#include "splaydeque/general_tree.hpp"
#include "splaydeque/splay_tree.hpp"

namespace splaydeque {

enum class Side { left, right };

/// Which nodes of the splay tree form the half being modelled.
/// Left: keys <= threshold. Right: keys > threshold, viewed in mirror image.
struct HalfSpec {
    Side side = Side::left;
    NodeId threshold = std::numeric_limits<NodeId>::max();

    static HalfSpec whole_tree() { return {}; }
    bool includes(NodeId v) const noexcept { return side == Side::left ? v <= threshold : v > threshold; }
};

/// The general tree L'' of one half together with the root r of the induced
/// binary tree L, which sits on the spine of L''.
struct ModelSnapshot {
    GeneralTree tree;
    std::optional<NodeId> root;
};

/// Induces L on the half, rotates its right spine across the root (L'), and
/// maps left child -> leftmost child, right child -> right sibling (L'').
ModelSnapshot binary_to_general(const SplayTree& t, const HalfSpec& half = HalfSpec::whole_tree());

struct CorrespondenceReport {
    bool matched = false;
    /// The compression the delta was matched against, when it had nonzero length.
    std::optional<CompressionRecord> compression;
    std::optional<NodeId> deleted;
    std::optional<NodeId> added;
    std::optional<NodeId> root_before;
    std::optional<NodeId> root_after;
    /// First structural mismatch when `matched` is false.
    std::string mismatch;

    bool relocated() const { return root_before != root_after; }
};

/// Pop of the half's minimum: a halving compression of the spine path from the
/// deleted leaf's parent up to r, deletion of the leaf, and a relocation of r
/// to its leftmost child (or to its parent when the leaf was r itself).
CorrespondenceReport check_pop_correspondence(ModelSnapshot before, const ModelSnapshot& after,
                                              const PopRecord& rec);
CorrespondenceReport check_pop_correspondence(const SplayTree& before, const SplayTree& after,
                                              const PopRecord& rec);

/// New leaf v as leftmost child of r, then r := v.
ModelSnapshot mirror_push(ModelSnapshot g, NodeId v);
CorrespondenceReport check_push_correspondence(ModelSnapshot before, const ModelSnapshot& after,
                                               NodeId pushed);

/// Eject removing a node outside the half: a halving compression originating
/// at r (or at p(r) after r moves there), ending at any ancestor.
CorrespondenceReport mirror_eject_check(ModelSnapshot before, const ModelSnapshot& after,
                                        const PopRecord& rec);

/// Inject adds a node outside the half: L'' must be unchanged.
CorrespondenceReport check_inject_correspondence(const ModelSnapshot& before, const ModelSnapshot& after);

enum class DequeOp { push, pop, inject, eject };

const char* to_string(DequeOp op) noexcept;

enum class PhasePolicy {
    whole_tree,  ///< the left half is the whole tree; only push/pop allowed
    halves,      ///< split into halves, restart when a needed half is empty
};

struct MirrorStats {
    std::size_t checks = 0;
    std::size_t mismatches = 0;
    std::size_t phases = 0;
    std::size_t compressions = 0;
    std::size_t stunted = 0;
    std::size_t relocations = 0;
    std::vector<std::string> first_mismatches;
};

/// Runs alongside a SplayTree and checks every operation against both halves'
/// general-tree models. Records the left half's model events as a trace.
class DequeMirror {
public:
    explicit DequeMirror(PhasePolicy policy) : policy_(policy) {}

    /// Must be called once with the initial tree before any operation.
    void start(const SplayTree& t);

    /// Call before applying `op` to `t`; may start a new phase.
    void before(const SplayTree& t, DequeOp op);
    /// Call after the operation. `rec` is required for pop/eject, `inserted` for push/inject.
    void after(const SplayTree& t, DequeOp op, const PopRecord* rec, NodeId inserted);

    const MirrorStats& stats() const noexcept { return stats_; }
    const std::vector<trace::Record>& left_trace() const noexcept { return trace_; }
    const HalfSpec& left_half() const noexcept { return left_; }

private:
    void new_phase(const SplayTree& t, NodeId threshold);
    void record(const CorrespondenceReport& rep, const std::string& what);
    void emit_left(const CorrespondenceReport& rep);

    PhasePolicy policy_;
    HalfSpec left_;
    ModelSnapshot left_before_;
    ModelSnapshot right_before_;
    bool threshold_pending_ = false;
    MirrorStats stats_;
    std::vector<trace::Record> trace_;
};

}  // namespace splaydeque
