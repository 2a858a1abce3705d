#include "splaydeque/splay_tree.hpp"

#include <algorithm>
#include <sstream>

#include "splaydeque/error.hpp"

namespace splaydeque {

namespace {

[[noreturn]] void violation(const std::string& what) {
    throw Error(ErrorKind::invariant_violation, what);
}

}  // namespace

SplayTree SplayTree::left_path(std::size_t n) {
    SplayTree t;
    if (n == 0) return t;
    t.nonneg_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto& nd = t.nonneg_[i];
        nd.live = true;
        nd.left = i == 0 ? kNil : static_cast<NodeId>(i - 1);
        nd.parent = i + 1 == n ? kNil : static_cast<NodeId>(i + 1);
    }
    t.root_ = static_cast<NodeId>(n - 1);
    t.size_ = n;
    t.ever_used_ = true;
    t.min_ever_ = 0;
    t.max_ever_ = static_cast<NodeId>(n - 1);
    t.leftmost_cache_ = 0;
    return t;
}

SplayTree SplayTree::from_insertion_order(std::span<const NodeId> keys) {
    SplayTree t;
    const auto n = keys.size();
    if (n == 0) return t;
    std::vector<bool> seen(n, false);
    for (NodeId k : keys) {
        if (k < 0 || static_cast<std::size_t>(k) >= n || seen[static_cast<std::size_t>(k)]) {
            throw Error(ErrorKind::invalid_argument,
                        "insertion order must be a permutation of 0..n-1");
        }
        seen[static_cast<std::size_t>(k)] = true;
    }
    t.nonneg_.resize(n);
    for (NodeId k : keys) {
        auto& nk = t.nonneg_[static_cast<std::size_t>(k)];
        nk.live = true;
        if (t.root_ == kNil) {
            t.root_ = k;
            continue;
        }
        NodeId cur = t.root_;
        while (true) {
            auto& nc = t.node(cur);
            NodeId& slot = k < cur ? nc.left : nc.right;
            if (slot == kNil) {
                slot = k;
                nk.parent = cur;
                break;
            }
            cur = slot;
        }
    }
    t.size_ = n;
    t.ever_used_ = true;
    t.min_ever_ = 0;
    t.max_ever_ = static_cast<NodeId>(n - 1);
    t.leftmost_cache_ = 0;
    return t;
}

SplayTree::Node& SplayTree::node(NodeId v) {
    return const_cast<Node&>(std::as_const(*this).node(v));
}

const SplayTree::Node& SplayTree::node(NodeId v) const {
    if (v >= 0) {
        const auto i = static_cast<std::size_t>(v);
        if (i < nonneg_.size() && nonneg_[i].live) return nonneg_[i];
    } else if (v != kNil) {
        const auto i = static_cast<std::size_t>(-(v + 1));
        if (i < neg_.size() && neg_[i].live) return neg_[i];
    }
    throw Error(ErrorKind::not_found, "node " + std::to_string(v) + " is not in the tree");
}

bool SplayTree::contains(NodeId v) const noexcept {
    if (v >= 0) {
        const auto i = static_cast<std::size_t>(v);
        return i < nonneg_.size() && nonneg_[i].live;
    }
    if (v == kNil) return false;
    const auto i = static_cast<std::size_t>(-(v + 1));
    return i < neg_.size() && neg_[i].live;
}

SplayTree::Node& SplayTree::create(NodeId v) {
    auto& vec = v >= 0 ? nonneg_ : neg_;
    const auto i = v >= 0 ? static_cast<std::size_t>(v) : static_cast<std::size_t>(-(v + 1));
    if (i >= vec.size()) vec.resize(std::max(i + 1, vec.size() * 2));
    vec[i] = Node{};
    vec[i].live = true;
    ++size_;
    if (!ever_used_) {
        min_ever_ = max_ever_ = v;
        ever_used_ = true;
    } else {
        min_ever_ = std::min(min_ever_, v);
        max_ever_ = std::max(max_ever_, v);
    }
    return vec[i];
}

void SplayTree::erase(NodeId v) {
    node(v) = Node{};
    --size_;
}

std::optional<NodeId> SplayTree::root() const noexcept {
    if (root_ == kNil) return std::nullopt;
    return root_;
}

namespace {
std::optional<NodeId> opt(NodeId v) {
    if (v == kNil) return std::nullopt;
    return v;
}
}  // namespace

std::optional<NodeId> SplayTree::parent(NodeId v) const { return opt(node(v).parent); }
std::optional<NodeId> SplayTree::left(NodeId v) const { return opt(node(v).left); }
std::optional<NodeId> SplayTree::right(NodeId v) const { return opt(node(v).right); }

NodeId SplayTree::next_push_id() const noexcept { return ever_used_ ? min_ever_ - 1 : 0; }
NodeId SplayTree::next_inject_id() const noexcept { return ever_used_ ? max_ever_ + 1 : 0; }

NodeId SplayTree::push() {
    const NodeId v = next_push_id();
    push(v);
    return v;
}

NodeId SplayTree::inject() {
    const NodeId v = next_inject_id();
    inject(v);
    return v;
}

void SplayTree::push(NodeId v) {
    if (v == kNil || (ever_used_ && v >= min_ever_)) {
        throw Error(ErrorKind::invalid_argument,
                    "push: node " + std::to_string(v) + " does not precede every node ever used");
    }
    auto& nv = create(v);
    nv.right = root_;
    if (root_ != kNil) node(root_).parent = v;
    root_ = v;
    leftmost_cache_ = v;
}

void SplayTree::inject(NodeId v) {
    if (v == kNil || (ever_used_ && v <= max_ever_)) {
        throw Error(ErrorKind::invalid_argument,
                    "inject: node " + std::to_string(v) + " does not follow every node ever used");
    }
    const bool was_empty = root_ == kNil;
    auto& nv = create(v);
    nv.left = root_;
    if (root_ != kNil) node(root_).parent = v;
    root_ = v;
    if (was_empty) leftmost_cache_ = v;
}

// Rotates the edge between x and its parent; x moves up one level.
void SplayTree::rotate(NodeId x) {
    Node& nx = node(x);
    const NodeId y = nx.parent;
    Node& ny = node(y);
    const NodeId z = ny.parent;
    if (ny.left == x) {
        const NodeId b = nx.right;
        ny.left = b;
        if (b != kNil) node(b).parent = y;
        nx.right = y;
    } else {
        const NodeId b = nx.left;
        ny.right = b;
        if (b != kNil) node(b).parent = y;
        nx.left = y;
    }
    ny.parent = x;
    nx.parent = z;
    if (z == kNil) {
        root_ = x;
    } else {
        Node& nz = node(z);
        if (nz.left == y) {
            nz.left = x;
        } else {
            nz.right = x;
        }
    }
    ++ledger_.rotations;
    if (local_checks_) {
        check_links(x);
        check_links(y);
        if (z != kNil) check_links(z);
    }
}

void SplayTree::check_links(NodeId v) const {
    const Node& nv = node(v);
    if (nv.left != kNil && (node(nv.left).parent != v || nv.left >= v)) {
        violation("left link of " + std::to_string(v) + " is inconsistent");
    }
    if (nv.right != kNil && (node(nv.right).parent != v || nv.right <= v)) {
        violation("right link of " + std::to_string(v) + " is inconsistent");
    }
    if (nv.parent == kNil) {
        if (root_ != v) violation("parentless node " + std::to_string(v) + " is not the root");
    } else {
        const Node& np = node(nv.parent);
        if (np.left != v && np.right != v) {
            violation("parent of " + std::to_string(v) + " does not link back");
        }
    }
}

void SplayTree::splay(NodeId x) {
    node(x);  // not-found check
    while (true) {
        const NodeId y = node(x).parent;
        if (y == kNil) break;
        const NodeId z = node(y).parent;
        if (z == kNil) {
            rotate(x);
            ++ledger_.zig;
            break;
        }
        const bool x_left = node(y).left == x;
        const bool y_left = node(z).left == y;
        if (x_left == y_left) {
            rotate(y);
            rotate(x);
            ++ledger_.zigzig;
        } else {
            rotate(x);
            rotate(x);
            ++ledger_.zigzag;
        }
    }
}

NodeId SplayTree::descend(NodeId from, bool left_side) const {
    NodeId cur = from;
    while (true) {
        const Node& n = node(cur);
        const NodeId next = left_side ? n.left : n.right;
        if (next == kNil) return cur;
        cur = next;
    }
}

NodeId SplayTree::leftmost() const {
    if (root_ == kNil) throw Error(ErrorKind::empty_structure, "leftmost of an empty tree");
    if (leftmost_cache_ == kNil) leftmost_cache_ = descend(root_, true);
    return leftmost_cache_;
}

NodeId SplayTree::rightmost() const {
    if (root_ == kNil) throw Error(ErrorKind::empty_structure, "rightmost of an empty tree");
    return descend(root_, false);
}

PopRecord SplayTree::remove_extreme(bool left_side) {
    if (root_ == kNil) {
        throw Error(ErrorKind::empty_structure, left_side ? "pop on an empty tree" : "eject on an empty tree");
    }
    const NodeId x = left_side ? leftmost() : rightmost();
    PopRecord rec;
    rec.deleted = x;
    for (NodeId cur = x; cur != kNil; cur = node(cur).parent) {
        rec.splayed_path.push_back(cur);
    }
    const auto before = ledger_.rotations;
    splay(x);
    rec.rotations = ledger_.rotations - before;
    if (rec.rotations + 1 != rec.splayed_path.size()) {
        violation("splay rotated a different number of edges than the path length");
    }
    Node& nx = node(x);
    const NodeId rest = left_side ? nx.right : nx.left;
    if ((left_side ? nx.left : nx.right) != kNil) violation("extreme node has an outer child");
    if (rest != kNil) node(rest).parent = kNil;
    root_ = rest;
    erase(x);
    if (left_side || root_ == kNil || leftmost_cache_ == x) leftmost_cache_ = kNil;
    return rec;
}

PopRecord SplayTree::pop() { return remove_extreme(true); }
PopRecord SplayTree::eject() { return remove_extreme(false); }

std::vector<NodeId> SplayTree::in_order() const {
    std::vector<NodeId> out;
    out.reserve(size_);
    if (root_ == kNil) return out;
    // Parent-pointer walk, no auxiliary stack.
    NodeId cur = descend(root_, true);
    while (cur != kNil) {
        out.push_back(cur);
        const Node& n = node(cur);
        if (n.right != kNil) {
            cur = descend(n.right, true);
        } else {
            NodeId child = cur;
            cur = n.parent;
            while (cur != kNil && node(cur).right == child) {
                child = cur;
                cur = node(cur).parent;
            }
        }
    }
    return out;
}

std::string SplayTree::dump() const {
    if (root_ == kNil) return ".";
    std::ostringstream os;
    // Frames: node id with a stage counter (0: open + left, 1: id + right, 2: close).
    std::vector<std::pair<NodeId, int>> stack{{root_, 0}};
    while (!stack.empty()) {
        auto& [v, stage] = stack.back();
        const Node& n = node(v);
        if (stage == 0) {
            os << '(';
            stage = 1;
            if (n.left == kNil) {
                os << '.';
            } else {
                stack.emplace_back(n.left, 0);
            }
        } else if (stage == 1) {
            os << ' ' << v << ' ';
            stage = 2;
            if (n.right == kNil) {
                os << '.';
            } else {
                stack.emplace_back(n.right, 0);
            }
        } else {
            os << ')';
            stack.pop_back();
        }
    }
    return os.str();
}

void SplayTree::validate() const {
    if (root_ == kNil) {
        if (size_ != 0) violation("empty root but nonzero size");
        return;
    }
    if (node(root_).parent != kNil) violation("root has a parent");
    std::size_t count = 0;
    NodeId prev = kNil;
    NodeId cur = root_;
    // Descend-left walk with link checks at every node.
    while (node(cur).left != kNil) {
        check_links(cur);
        cur = node(cur).left;
    }
    const NodeId first = cur;
    while (cur != kNil) {
        check_links(cur);
        if (prev != kNil && prev >= cur) violation("in-order sequence is not strictly increasing");
        prev = cur;
        ++count;
        const Node& n = node(cur);
        if (n.right != kNil) {
            cur = n.right;
            while (node(cur).left != kNil) {
                check_links(cur);
                cur = node(cur).left;
            }
        } else {
            NodeId child = cur;
            cur = n.parent;
            while (cur != kNil && node(cur).right == child) {
                child = cur;
                cur = node(cur).parent;
            }
        }
    }
    if (count != size_) violation("node count does not match size");
    if (leftmost_cache_ != kNil && leftmost_cache_ != first) violation("cached leftmost node is stale");
}

}  // namespace splaydeque
