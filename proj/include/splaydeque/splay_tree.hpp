#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace splaydeque {

/// Node identifiers double as keys: deque order is numeric order.
using NodeId = std::int64_t;

inline constexpr NodeId kNil = std::numeric_limits<NodeId>::min();

struct RotationLedger {
    std::uint64_t zig = 0;
    std::uint64_t zigzig = 0;
    std::uint64_t zigzag = 0;
    /// Raw edge rotations; each zig-zig or zig-zag step contributes two.
    std::uint64_t rotations = 0;

    friend bool operator==(const RotationLedger&, const RotationLedger&) = default;
};

/// Outcome of a pop or eject.
struct PopRecord {
    /// Pre-operation path from the removed extreme node up to the pre-operation root.
    std::vector<NodeId> splayed_path;
    std::uint64_t rotations = 0;
    NodeId deleted = kNil;
};

/// Bottom-up splay tree restricted to deque operations.
///
/// Nodes live in two dense arrays indexed by identifier (non-negative ids and
/// negative ids), so lookup is O(1). Live ids need not be contiguous: a pop
/// followed by a push leaves a gap.
class SplayTree {
public:
    SplayTree() = default;

    /// Path of `n` nodes 0..n-1 where every node is a left child; root is n-1.
    static SplayTree left_path(std::size_t n);

    /// Plain (non-splaying) BST insertion of `keys` in the given order.
    /// Keys must be a permutation of 0..keys.size()-1.
    static SplayTree from_insertion_order(std::span<const NodeId> keys);

    NodeId push();
    NodeId inject();
    void push(NodeId v);
    void inject(NodeId v);
    PopRecord pop();
    PopRecord eject();

    void splay(NodeId x);

    const RotationLedger& rotation_count() const noexcept { return ledger_; }

    std::size_t size() const noexcept { return size_; }
    bool empty() const noexcept { return size_ == 0; }
    bool contains(NodeId v) const noexcept;

    std::optional<NodeId> root() const noexcept;
    std::optional<NodeId> parent(NodeId v) const;
    std::optional<NodeId> left(NodeId v) const;
    std::optional<NodeId> right(NodeId v) const;

    /// Minimum / maximum live node. Throws on an empty tree.
    NodeId leftmost() const;
    NodeId rightmost() const;

    /// Identifier the next auto-assigned push/inject would receive.
    NodeId next_push_id() const noexcept;
    NodeId next_inject_id() const noexcept;

    std::vector<NodeId> in_order() const;

    /// Parenthesised in-order dump: empty subtree is `.`, a node is `(L id R)`.
    std::string dump() const;

    /// Full structural check: link symmetry, strictly increasing in-order,
    /// node count, and the cached leftmost node. Throws Error(invariant_violation).
    void validate() const;

    /// When enabled, every rotation checks the links of the nodes it touched.
    void set_local_checks(bool on) noexcept { local_checks_ = on; }

private:
    struct Node {
        NodeId parent = kNil;
        NodeId left = kNil;
        NodeId right = kNil;
        bool live = false;
    };

    Node& node(NodeId v);
    const Node& node(NodeId v) const;
    Node& create(NodeId v);
    void erase(NodeId v);

    void rotate(NodeId x);
    void check_links(NodeId v) const;
    PopRecord remove_extreme(bool left_side);
    NodeId descend(NodeId from, bool left_side) const;

    std::vector<Node> nonneg_;
    std::vector<Node> neg_;
    NodeId root_ = kNil;
    std::size_t size_ = 0;
    bool ever_used_ = false;
    NodeId min_ever_ = 0;
    NodeId max_ever_ = 0;
    mutable NodeId leftmost_cache_ = kNil;
    RotationLedger ledger_;
    bool local_checks_ = false;
};

}  // namespace splaydeque
