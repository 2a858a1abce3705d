#include "splaydeque/general_tree.hpp"

#include <algorithm>
#include <cstdint>
#include <utility>

#include "splaydeque/error.hpp"

namespace splaydeque {

namespace {

std::string id(NodeId v) { return v == kNil ? std::string("-") : std::to_string(v); }

constexpr std::uint64_t kMaxSpan = std::uint64_t{1} << 28;

}  // namespace

const GeneralTree::Node* GeneralTree::slot(NodeId v) const noexcept {
    if (v == kNil || v < base_) return nullptr;
    const std::uint64_t off = static_cast<std::uint64_t>(v) - static_cast<std::uint64_t>(base_);
    if (off >= slots_.size()) return nullptr;
    const Node& n = slots_[off];
    return n.live ? &n : nullptr;
}

GeneralTree::Node& GeneralTree::create(NodeId v) {
    if (v == kNil) throw Error(ErrorKind::invalid_argument, "reserved node id");
    if (contains(v)) throw Error(ErrorKind::invalid_argument, "node " + id(v) + " already present");
    if (slots_.empty()) {
        base_ = v;
        slots_.resize(1);
    } else if (v < base_) {
        const std::uint64_t need = static_cast<std::uint64_t>(base_) - static_cast<std::uint64_t>(v);
        const std::uint64_t grow = std::max<std::uint64_t>(need, slots_.size());
        if (need + slots_.size() > kMaxSpan) throw Error(ErrorKind::invalid_argument, "node ids too far apart");
        const std::uint64_t room = std::min<std::uint64_t>(grow, kMaxSpan - slots_.size());
        std::vector<Node> moved(static_cast<std::size_t>(room + slots_.size()));
        std::move(slots_.begin(), slots_.end(), moved.begin() + static_cast<std::ptrdiff_t>(room));
        slots_ = std::move(moved);
        base_ = static_cast<NodeId>(static_cast<std::uint64_t>(base_) - room);
    } else {
        const std::uint64_t off = static_cast<std::uint64_t>(v) - static_cast<std::uint64_t>(base_);
        if (off >= kMaxSpan) throw Error(ErrorKind::invalid_argument, "node ids too far apart");
        if (off >= slots_.size()) slots_.resize(static_cast<std::size_t>(off) + 1);
    }
    Node& n = slots_[static_cast<std::size_t>(static_cast<std::uint64_t>(v) - static_cast<std::uint64_t>(base_))];
    n = Node{};
    n.live = true;
    ++count_;
    return n;
}

void GeneralTree::erase(NodeId v) {
    Node& n = at(v);
    n = Node{};
    --count_;
}

GeneralTree GeneralTree::from_postorder(std::span<const std::pair<NodeId, NodeId>> entries) {
    GeneralTree g;
    // In postorder every child precedes its parent, so collect children first.
    for (const auto& [v, p] : entries) {
        if (g.contains(v)) throw Error(ErrorKind::invalid_argument, "duplicate node " + id(v));
        g.create(v).parent = p;
    }
    for (const auto& [v, p] : entries) {
        if (p == kNil) {
            g.roots_.push_back(v);
            continue;
        }
        if (!g.contains(p)) {
            throw Error(ErrorKind::invalid_argument, "parent " + id(p) + " of " + id(v) + " is unknown");
        }
        g.link_before(v, p, kNil);
    }
    g.validate();
    return g;
}

GeneralTree GeneralTree::path(std::span<const NodeId> bottom_up) {
    std::vector<std::pair<NodeId, NodeId>> entries;
    for (std::size_t i = 0; i < bottom_up.size(); ++i) {
        entries.emplace_back(bottom_up[i], i + 1 < bottom_up.size() ? bottom_up[i + 1] : kNil);
    }
    return from_postorder(entries);
}

GeneralTree::Node& GeneralTree::at(NodeId v) {
    return const_cast<Node&>(std::as_const(*this).at(v));
}

const GeneralTree::Node& GeneralTree::at(NodeId v) const {
    const Node* n = slot(v);
    if (n == nullptr) throw Error(ErrorKind::not_found, "node " + id(v) + " is not in the tree");
    return *n;
}

void GeneralTree::add_root(NodeId v, NodeClass cls) {
    create(v).cls = cls;
    roots_.push_back(v);
}

void GeneralTree::add_child(NodeId parent, NodeId v, NodeClass cls) {
    if (contains(v)) throw Error(ErrorKind::invalid_argument, "node " + id(v) + " already present");
    at(parent);
    create(v).cls = cls;
    link_before(v, parent, kNil);
}

void GeneralTree::add_leftmost_child(NodeId parent, NodeId v, NodeClass cls) {
    if (contains(v)) throw Error(ErrorKind::invalid_argument, "node " + id(v) + " already present");
    const NodeId first = at(parent).first;
    create(v).cls = cls;
    link_before(v, parent, first);
}

std::optional<NodeId> GeneralTree::parent(NodeId v) const {
    const NodeId p = at(v).parent;
    if (p == kNil) return std::nullopt;
    return p;
}

std::vector<NodeId> GeneralTree::children(NodeId v) const {
    std::vector<NodeId> out;
    for (NodeId c = at(v).first; c != kNil; c = at(c).next) out.push_back(c);
    return out;
}

std::optional<NodeId> GeneralTree::first_child(NodeId v) const {
    const NodeId c = at(v).first;
    if (c == kNil) return std::nullopt;
    return c;
}

std::optional<NodeId> GeneralTree::next_sibling(NodeId v) const {
    const NodeId c = at(v).next;
    if (c == kNil) return std::nullopt;
    return c;
}

bool GeneralTree::is_root(NodeId v) const { return at(v).parent == kNil; }
bool GeneralTree::is_leaf(NodeId v) const { return at(v).first == kNil; }
NodeClass GeneralTree::node_class(NodeId v) const { return at(v).cls; }
void GeneralTree::set_class(NodeId v, NodeClass cls) { at(v).cls = cls; }

std::size_t GeneralTree::depth(NodeId v) const {
    std::size_t d = 0;
    for (NodeId p = at(v).parent; p != kNil; p = at(p).parent) ++d;
    return d;
}

// Links a detached v under `parent` (kNil: as a root) just before `before`
// (kNil: at the end).
void GeneralTree::link_before(NodeId v, NodeId parent, NodeId before) {
    Node& n = at(v);
    n.parent = parent;
    n.prev = n.next = kNil;
    if (parent == kNil) {
        roots_.insert(std::find(roots_.begin(), roots_.end(), before), v);
        return;
    }
    Node& p = at(parent);
    if (before == kNil) {
        n.prev = p.last;
        if (p.last != kNil) at(p.last).next = v; else p.first = v;
        p.last = v;
        return;
    }
    Node& b = at(before);
    if (b.parent != parent) throw Error(ErrorKind::invariant_violation, "sibling " + id(before) + " has another parent");
    n.prev = b.prev;
    n.next = before;
    if (b.prev != kNil) at(b.prev).next = v; else p.first = v;
    b.prev = v;
}

void GeneralTree::detach(NodeId v) {
    Node& n = at(v);
    if (n.parent == kNil) {
        roots_.erase(std::find(roots_.begin(), roots_.end(), v));
    } else {
        Node& p = at(n.parent);
        if (n.prev != kNil) at(n.prev).next = n.next; else p.first = n.next;
        if (n.next != kNil) at(n.next).prev = n.prev; else p.last = n.prev;
    }
    n.parent = n.prev = n.next = kNil;
}

// Makes v a child of new_parent (kNil: a root) placed immediately before `before`.
void GeneralTree::attach_before(NodeId v, NodeId new_parent, NodeId before) {
    detach(v);
    link_before(v, new_parent, before);
}

void GeneralTree::check_ancestor_chain(std::span<const NodeId> path) const {
    if (path.size() < 2) {
        throw Error(ErrorKind::invalid_argument, "compression path needs at least two nodes");
    }
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        if (at(path[i]).parent != path[i + 1]) {
            throw Error(ErrorKind::invalid_argument,
                        "compression path is not an ancestor chain at " + id(path[i]));
        }
        // Moving nodes to the front of a child list keeps postorder only along leftmost children.
        if (at(path[i + 1]).first != path[i]) {
            throw Error(ErrorKind::invalid_argument,
                        "compression path leaves the leftmost-child chain at " + id(path[i]));
        }
    }
    at(path.back());
}

void GeneralTree::prune_fluff(NodeId start, std::vector<NodeId>& removed) {
    NodeId cur = start;
    while (cur != kNil && contains(cur)) {
        const Node& n = at(cur);
        if (n.cls != NodeClass::fluff || n.first != kNil) break;
        const NodeId p = n.parent;
        detach(cur);
        erase(cur);
        removed.push_back(cur);
        cur = p;
    }
}

std::vector<NodeId> GeneralTree::delete_leaf(NodeId v) {
    if (at(v).first != kNil) {
        throw Error(ErrorKind::invalid_argument, "node " + id(v) + " is not a leaf");
    }
    std::vector<NodeId> removed{v};
    const NodeId p = at(v).parent;
    detach(v);
    erase(v);
    prune_fluff(p, removed);
    return removed;
}

CompressionRecord GeneralTree::halving_compress(std::span<const NodeId> path, FinalStep final_step) {
    check_ancestor_chain(path);
    const std::size_t k = path.size();
    const bool terminus_is_root = at(path[k - 1]).parent == kNil;
    const bool apply_final = k % 2 == 0 &&
                             (final_step == FinalStep::always ||
                              (final_step == FinalStep::when_root && terminus_is_root));
    if (apply_final && !terminus_is_root) {
        const Node& top = at(path[k - 1]);
        if (at(top.parent).first != path[k - 1]) {
            throw Error(ErrorKind::invalid_argument, "final step would leave the leftmost-child chain");
        }
    }
    std::size_t moves = 0;
    for (std::size_t i = 0; i + 2 < k; i += 2) ++moves;
    if (apply_final) ++moves;
    if (moves == 0) {
        throw Error(ErrorKind::invalid_argument, "zero-length compression");
    }

    CompressionRecord rec;
    rec.path.assign(path.begin(), path.end());
    rec.kind = CompressionKind::halving;
    rec.stunted = !terminus_is_root;
    rec.final_step_applied = apply_final;
    rec.length = moves;

    // u_i (0-based even i) moves to u_{i+2}, landing just left of u_{i+1}.
    for (std::size_t i = 0; i + 2 < k; i += 2) {
        attach_before(path[i], path[i + 2], path[i + 1]);
    }
    if (apply_final) {
        attach_before(path[k - 2], at(path[k - 1]).parent, path[k - 1]);
    }
    for (std::size_t i = 1; i < k; ++i) {
        if (contains(path[i])) prune_fluff(path[i], rec.fluff_deleted);
    }
    return rec;
}

CompressionRecord GeneralTree::total_compress(std::span<const NodeId> path) {
    check_ancestor_chain(path);
    const std::size_t k = path.size();
    if (k < 3) throw Error(ErrorKind::invalid_argument, "zero-length compression");

    CompressionRecord rec;
    rec.path.assign(path.begin(), path.end());
    rec.kind = CompressionKind::total;
    rec.stunted = at(path[k - 1]).parent != kNil;
    rec.length = k - 2;
    // Inserting each of u_1..u_{k-2} just left of u_{k-1} prepends them in order.
    for (std::size_t i = 0; i + 2 < k; ++i) {
        attach_before(path[i], path[k - 1], path[k - 2]);
    }
    for (std::size_t i = 1; i + 1 < k; ++i) {
        if (contains(path[i])) prune_fluff(path[i], rec.fluff_deleted);
    }
    return rec;
}

std::vector<NodeId> GeneralTree::postorder() const {
    std::vector<NodeId> out;
    out.reserve(count_);
    for (NodeId r : roots_) {
        // Descend to the leftmost leaf, then climb via next-sibling/parent links.
        NodeId v = r;
        while (at(v).first != kNil) v = at(v).first;
        while (true) {
            out.push_back(v);
            if (v == r) break;
            const Node& n = at(v);
            if (n.next != kNil) {
                v = n.next;
                while (at(v).first != kNil) v = at(v).first;
            } else {
                v = n.parent;
            }
        }
    }
    return out;
}

std::vector<NodeId> GeneralTree::spine() const {
    std::vector<NodeId> out;
    if (roots_.empty()) return out;
    for (NodeId cur = roots_.front(); cur != kNil; cur = at(cur).first) out.push_back(cur);
    return out;
}

NodeId GeneralTree::leftmost_leaf() const {
    if (roots_.empty()) throw Error(ErrorKind::empty_structure, "leftmost leaf of an empty tree");
    NodeId cur = roots_.front();
    while (at(cur).first != kNil) cur = at(cur).first;
    return cur;
}

std::optional<std::string> GeneralTree::first_difference(const GeneralTree& other) const {
    if (roots_ != other.roots_) return std::string("root lists differ");
    if (count_ != other.count_) {
        return "node counts differ (" + std::to_string(count_) + " vs " + std::to_string(other.count_) + ")";
    }
    // Walk in postorder so the reported node is the first one in key order.
    for (NodeId v : postorder()) {
        const Node* other_node = other.slot(v);
        if (other_node == nullptr) return "node " + id(v) + " missing";
        const Node& a = at(v);
        const Node& b = *other_node;
        if (a.parent != b.parent) {
            return "parent of " + id(v) + " is " + id(a.parent) + " vs " + id(b.parent);
        }
        if (a.first != b.first || a.next != b.next) return "child order near " + id(v) + " differs";
        if (a.cls != b.cls) return "class of " + id(v) + " differs";
    }
    return std::nullopt;
}

void GeneralTree::validate() const {
    std::size_t linked = 0;
    for (NodeId r : roots_) {
        const Node& n = at(r);
        if (n.parent != kNil || n.prev != kNil || n.next != kNil) {
            throw Error(ErrorKind::invariant_violation, "root " + id(r) + " has parent or sibling links");
        }
    }
    for (std::size_t i = 0; i < slots_.size(); ++i) {
        const Node& n = slots_[i];
        if (!n.live) continue;
        const auto v = static_cast<NodeId>(static_cast<std::uint64_t>(base_) + i);
        NodeId prev = kNil;
        for (NodeId c = n.first; c != kNil; c = at(c).next) {
            const Node& cn = at(c);
            if (cn.parent != v) {
                throw Error(ErrorKind::invariant_violation, "child " + id(c) + " does not link back to " + id(v));
            }
            if (cn.prev != prev) throw Error(ErrorKind::invariant_violation, "broken sibling links under " + id(v));
            prev = c;
            if (++linked > count_) throw Error(ErrorKind::invariant_violation, "sibling list cycles under " + id(v));
        }
        if (n.last != prev) throw Error(ErrorKind::invariant_violation, "stale last child of " + id(v));
    }
    if (linked + roots_.size() != count_) {
        throw Error(ErrorKind::invariant_violation, "parent links do not form a forest");
    }
    if (postorder().size() != count_) {
        throw Error(ErrorKind::invariant_violation, "forest contains a cycle");
    }
}

}  // namespace splaydeque
