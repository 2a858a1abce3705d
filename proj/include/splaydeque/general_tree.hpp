#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "splaydeque/splay_tree.hpp"

namespace splaydeque {

enum class NodeClass { essential, fluff };

enum class CompressionKind { halving, total };

/// Whether a halving compression of even length k also re-parents u_{k-1}.
enum class FinalStep {
    never,
    when_root,  ///< only when u_k is a root, which makes u_{k-1} a root too
    always,
};

struct CompressionRecord {
    /// u_1..u_k with u_{i+1} the parent of u_i at compression time.
    std::vector<NodeId> path;
    CompressionKind kind = CompressionKind::halving;
    /// Number of nodes whose parent changed.
    std::size_t length = 0;
    /// True iff u_k was not a root when the compression ran.
    bool stunted = false;
    bool final_step_applied = false;
    /// Fluff nodes removed because the compression left them as leaves.
    std::vector<NodeId> fluff_deleted;
};

/// Rooted forest with left-to-right ordered children. All restructuring keeps
/// the postorder of the surviving nodes unchanged.
class GeneralTree {
public:
    GeneralTree() = default;

    /// Builds a forest from (node, parent) pairs listed in postorder; a parent
    /// of kNil marks a root. Children end up in the order they are listed.
    static GeneralTree from_postorder(std::span<const std::pair<NodeId, NodeId>> entries);

    /// A single path where `bottom_up[0]` is the leaf and the last entry the root.
    static GeneralTree path(std::span<const NodeId> bottom_up);

    void add_root(NodeId v, NodeClass cls = NodeClass::essential);
    void add_child(NodeId parent, NodeId v, NodeClass cls = NodeClass::essential);
    void add_leftmost_child(NodeId parent, NodeId v, NodeClass cls = NodeClass::essential);

    /// Removes leaf `v`, then any fluff ancestors that become leaves.
    /// Returns every removed node, `v` first.
    std::vector<NodeId> delete_leaf(NodeId v);

    /// `path` must run bottom-up through leftmost children (u_i is the first
    /// child of u_{i+1}); other ancestor chains are rejected.
    CompressionRecord halving_compress(std::span<const NodeId> path,
                                       FinalStep final_step = FinalStep::when_root);
    CompressionRecord total_compress(std::span<const NodeId> path);

    void reserve(std::size_t n) { slots_.reserve(n); }

    bool contains(NodeId v) const noexcept { return slot(v) != nullptr; }
    std::size_t size() const noexcept { return count_; }
    bool empty() const noexcept { return count_ == 0; }

    std::optional<NodeId> parent(NodeId v) const;
    std::vector<NodeId> children(NodeId v) const;
    std::optional<NodeId> first_child(NodeId v) const;
    std::optional<NodeId> next_sibling(NodeId v) const;
    const std::vector<NodeId>& roots() const noexcept { return roots_; }
    bool is_root(NodeId v) const;
    bool is_leaf(NodeId v) const;
    NodeClass node_class(NodeId v) const;
    void set_class(NodeId v, NodeClass cls);
    std::size_t depth(NodeId v) const;

    std::vector<NodeId> postorder() const;
    /// Path from the leftmost root down to its leftmost leaf.
    std::vector<NodeId> spine() const;
    NodeId leftmost_leaf() const;

    /// Description of the first structural difference, or nullopt if equal.
    std::optional<std::string> first_difference(const GeneralTree& other) const;
    friend bool operator==(const GeneralTree& a, const GeneralTree& b) {
        return !a.first_difference(b).has_value();
    }

    /// Link symmetry and duplicate-free child lists. Throws on violation.
    void validate() const;

private:
    // Children form a doubly linked sibling list; roots live in roots_ instead.
    struct Node {
        NodeId parent = kNil;
        NodeId first = kNil;
        NodeId last = kNil;
        NodeId prev = kNil;
        NodeId next = kNil;
        NodeClass cls = NodeClass::essential;
        bool live = false;
    };

    const Node* slot(NodeId v) const noexcept;
    Node& create(NodeId v);
    void erase(NodeId v);
    Node& at(NodeId v);
    const Node& at(NodeId v) const;
    void link_before(NodeId v, NodeId parent, NodeId before);
    void detach(NodeId v);
    void attach_before(NodeId v, NodeId new_parent, NodeId before);
    void check_ancestor_chain(std::span<const NodeId> path) const;
    void prune_fluff(NodeId start, std::vector<NodeId>& removed);

    // Dense storage indexed by id - base_; ids are expected to be clustered.
    std::vector<Node> slots_;
    NodeId base_ = 0;
    std::size_t count_ = 0;
    std::vector<NodeId> roots_;
};

}  // namespace splaydeque
