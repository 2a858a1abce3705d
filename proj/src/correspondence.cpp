#include "splaydeque/correspondence.hpp"

#include <algorithm>
#include <unordered_map>

#include "splaydeque/error.hpp"

namespace splaydeque {

namespace {

struct BinLinks {
    NodeId inner = kNil;  // toward the half's front (left child, or right child when mirrored)
    NodeId outer = kNil;
};

std::string id(std::optional<NodeId> v) { return v ? std::to_string(*v) : std::string("-"); }

CorrespondenceReport fail(CorrespondenceReport rep, std::string why) {
    rep.matched = false;
    rep.mismatch = std::move(why);
    return rep;
}

// Compares the predicted tree against the observed one and accepts the
// observed designated root if it is among the candidates.
CorrespondenceReport finish(CorrespondenceReport rep, const GeneralTree& predicted, const ModelSnapshot& after,
                            std::initializer_list<std::optional<NodeId>> root_candidates) {
    rep.root_after = after.root;
    if (auto diff = predicted.first_difference(after.tree)) {
        return fail(std::move(rep), "model tree differs: " + *diff);
    }
    const bool root_ok = std::find(root_candidates.begin(), root_candidates.end(), after.root) !=
                         root_candidates.end();
    if (!root_ok) return fail(std::move(rep), "unexpected root relocation to " + id(after.root));
    rep.matched = true;
    return rep;
}

}  // namespace

ModelSnapshot binary_to_general(const SplayTree& t, const HalfSpec& half) {
    const bool mirrored = half.side == Side::right;
    // Ids never exceed the key span, which is bounded by the number of ids ever issued.
    const NodeId base = t.empty() ? 0 : t.leftmost();
    std::vector<BinLinks> store(t.empty() ? 0 : static_cast<std::size_t>(t.rightmost() - base + 1));
    auto links = [&](NodeId v) -> BinLinks& { return store[static_cast<std::size_t>(v - base)]; };
    NodeId induced_root = kNil;
    std::size_t members = 0;

    // Nearest in-half ancestor becomes the parent in the induced tree L.
    std::vector<std::pair<NodeId, NodeId>> stack;
    if (auto r = t.root()) stack.emplace_back(*r, kNil);
    while (!stack.empty()) {
        const auto [v, anc] = stack.back();
        stack.pop_back();
        const bool in = half.includes(v);
        if (in) {
            ++members;
            if (anc == kNil) {
                if (induced_root != kNil) {
                    throw Error(ErrorKind::invariant_violation, "half does not induce a single tree");
                }
                induced_root = v;
            } else {
                const bool toward_front = mirrored ? v > anc : v < anc;
                NodeId& slot = toward_front ? links(anc).inner : links(anc).outer;
                if (slot != kNil) {
                    throw Error(ErrorKind::invariant_violation, "half does not induce a binary tree");
                }
                slot = v;
            }
        }
        const NodeId next_anc = in ? v : anc;
        if (auto l = t.left(v)) stack.emplace_back(*l, next_anc);
        if (auto r = t.right(v)) stack.emplace_back(*r, next_anc);
    }

    ModelSnapshot snap;
    if (induced_root == kNil) return snap;
    snap.root = induced_root;

    // L': the outer spine s_0..s_k is rotated across the root; s_k becomes the root.
    std::vector<NodeId> spine{induced_root};
    while (links(spine.back()).outer != kNil) spine.push_back(links(spine.back()).outer);
    std::vector<NodeId> old_inner;
    old_inner.reserve(spine.size());
    for (NodeId s : spine) old_inner.push_back(links(s).inner);
    for (std::size_t i = 0; i < spine.size(); ++i) {
        auto& l = links(spine[i]);
        if (i >= 1) l.inner = spine[i - 1];
        l.outer = i + 1 < spine.size() ? old_inner[i + 1] : kNil;
    }

    // L'': inner child -> leftmost child, outer child -> next sibling.
    const NodeId top = spine.back();
    snap.tree.reserve(members);
    snap.tree.add_root(top);
    std::vector<NodeId> work{top};
    while (!work.empty()) {
        const NodeId w = work.back();
        work.pop_back();
        for (NodeId c = links(w).inner; c != kNil; c = links(c).outer) {
            snap.tree.add_child(w, c);
            work.push_back(c);
        }
    }
    return snap;
}

CorrespondenceReport check_pop_correspondence(ModelSnapshot before, const ModelSnapshot& after,
                                              const PopRecord& rec) {
    CorrespondenceReport rep;
    rep.deleted = rec.deleted;
    rep.root_before = before.root;
    const NodeId x = rec.deleted;
    if (!before.root || !before.tree.contains(x)) {
        return fail(std::move(rep), "deleted node " + std::to_string(x) + " is not in the model");
    }
    if (before.tree.leftmost_leaf() != x) {
        return fail(std::move(rep), "deleted node " + std::to_string(x) + " is not the leftmost leaf");
    }
    GeneralTree& g = before.tree;
    const NodeId r = *before.root;
    if (x == r) {
        const auto up = g.parent(x);
        g.delete_leaf(x);
        return finish(std::move(rep), g, after, {up});
    }
    std::vector<NodeId> path;
    for (auto cur = g.parent(x); cur; cur = g.parent(*cur)) {
        path.push_back(*cur);
        if (*cur == r) break;
    }
    if (path.empty() || path.back() != r) {
        return fail(std::move(rep), "root " + std::to_string(r) + " is not an ancestor of the leftmost leaf");
    }
    if (path.size() >= 3) rep.compression = g.halving_compress(path, FinalStep::never);
    g.delete_leaf(x);
    return finish(std::move(rep), g, after, {r, g.first_child(r)});
}

CorrespondenceReport check_pop_correspondence(const SplayTree& before, const SplayTree& after,
                                              const PopRecord& rec) {
    return check_pop_correspondence(binary_to_general(before), binary_to_general(after), rec);
}

ModelSnapshot mirror_push(ModelSnapshot g, NodeId v) {
    ModelSnapshot out = std::move(g);
    if (out.root) {
        out.tree.add_leftmost_child(*out.root, v);
    } else {
        if (!out.tree.empty()) throw Error(ErrorKind::invariant_violation, "model has nodes but no root");
        out.tree.add_root(v);
    }
    out.root = v;
    return out;
}

CorrespondenceReport check_push_correspondence(ModelSnapshot before, const ModelSnapshot& after,
                                               NodeId pushed) {
    CorrespondenceReport rep;
    rep.added = pushed;
    rep.root_before = before.root;
    const ModelSnapshot predicted = mirror_push(std::move(before), pushed);
    return finish(std::move(rep), predicted.tree, after, {predicted.root});
}

CorrespondenceReport mirror_eject_check(ModelSnapshot before, const ModelSnapshot& after,
                                        const PopRecord& /*rec*/) {
    CorrespondenceReport rep;
    rep.root_before = before.root;
    if (!before.root) return finish(std::move(rep), before.tree, after, {std::nullopt});
    const NodeId r = *before.root;
    GeneralTree& g = before.tree;

    std::vector<NodeId> chain;
    for (std::optional<NodeId> cur = r; cur; cur = g.parent(*cur)) chain.push_back(*cur);

    // Which chain positions changed parent?
    std::vector<std::size_t> moved;
    for (std::size_t i = 0; i < chain.size(); ++i) {
        if (!after.tree.contains(chain[i])) return fail(std::move(rep), "node " + std::to_string(chain[i]) + " vanished");
        if (after.tree.parent(chain[i]) != g.parent(chain[i])) moved.push_back(i);
    }
    if (!moved.empty()) {
        const std::size_t origin = moved.front();
        if (origin > 1) {
            return fail(std::move(rep), "compression does not originate at r or its parent");
        }
        for (std::size_t j = 0; j < moved.size(); ++j) {
            if (moved[j] != origin + 2 * j) {
                return fail(std::move(rep), "moved nodes do not follow a halving pattern");
            }
        }
        const std::size_t end = origin + 2 * moved.size();
        if (end >= chain.size()) return fail(std::move(rep), "compression runs past the model root");
        std::vector<NodeId> path(chain.begin() + static_cast<std::ptrdiff_t>(origin),
                                 chain.begin() + static_cast<std::ptrdiff_t>(end) + 1);
        rep.compression = g.halving_compress(path, FinalStep::never);
    }
    return finish(std::move(rep), g, after, {r, g.parent(r)});
}

CorrespondenceReport check_inject_correspondence(const ModelSnapshot& before, const ModelSnapshot& after) {
    CorrespondenceReport rep;
    rep.root_before = before.root;
    return finish(std::move(rep), before.tree, after, {before.root});
}

const char* to_string(DequeOp op) noexcept {
    switch (op) {
        case DequeOp::push: return "push";
        case DequeOp::pop: return "pop";
        case DequeOp::inject: return "inject";
        case DequeOp::eject: return "eject";
    }
    return "?";
}

namespace {

// Largest key of the lower half (floor(k/2) nodes); `single` when k == 1.
NodeId split_point(const SplayTree& t, NodeId single) {
    if (t.size() < 2) return single;
    return t.in_order()[t.size() / 2 - 1];
}

}  // namespace

void DequeMirror::start(const SplayTree& t) {
    if (policy_ == PhasePolicy::whole_tree) {
        new_phase(t, HalfSpec::whole_tree().threshold);
        return;
    }
    if (t.empty()) {
        threshold_pending_ = true;
        new_phase(t, left_.threshold);
        return;
    }
    new_phase(t, split_point(t, t.leftmost()));
}

void DequeMirror::new_phase(const SplayTree& t, NodeId threshold) {
    left_ = HalfSpec{Side::left, threshold};
    left_before_ = binary_to_general(t, left_);
    right_before_ = policy_ == PhasePolicy::halves ? binary_to_general(t, HalfSpec{Side::right, threshold})
                                                   : ModelSnapshot{};
    trace_.emplace_back(trace::Phase{stats_.phases});
    trace_.emplace_back(trace::from_tree(left_before_.tree));
    trace_.emplace_back(trace::Root{left_before_.root.value_or(kNil)});
    ++stats_.phases;
}

void DequeMirror::before(const SplayTree& t, DequeOp op) {
    if (policy_ == PhasePolicy::whole_tree) {
        if (op == DequeOp::inject || op == DequeOp::eject) {
            throw Error(ErrorKind::invalid_argument,
                        "whole-tree mirroring only models push and pop; use the halves policy");
        }
        return;
    }
    if (threshold_pending_) {
        if (op == DequeOp::push) {
            left_.threshold = t.next_push_id();
        } else if (op == DequeOp::inject) {
            left_.threshold = t.next_inject_id() - 1;
        }
        threshold_pending_ = false;
        return;
    }
    if (t.empty()) return;
    const NodeId lo = t.leftmost();
    if (op == DequeOp::pop && !left_.includes(lo)) {
        new_phase(t, split_point(t, lo));
    } else if (op == DequeOp::eject && left_.includes(t.rightmost())) {
        new_phase(t, split_point(t, lo - 1));
    }
}

void DequeMirror::record(const CorrespondenceReport& rep, const std::string& what) {
    ++stats_.checks;
    if (!rep.matched) {
        ++stats_.mismatches;
        if (stats_.first_mismatches.size() < 8) stats_.first_mismatches.push_back(what + ": " + rep.mismatch);
    }
}

void DequeMirror::emit_left(const CorrespondenceReport& rep) {
    if (rep.compression) {
        ++stats_.compressions;
        if (rep.compression->stunted) ++stats_.stunted;
        trace_.emplace_back(trace::from_compression(*rep.compression));
    }
    if (rep.added) {
        const auto p = rep.root_before;
        trace_.emplace_back(trace::Add{*rep.added, p.value_or(kNil)});
    }
    if (rep.deleted) trace_.emplace_back(trace::Delete{*rep.deleted});
    if (rep.relocated()) {
        ++stats_.relocations;
        trace_.emplace_back(trace::Root{rep.root_after.value_or(kNil)});
    }
}

void DequeMirror::after(const SplayTree& t, DequeOp op, const PopRecord* rec, NodeId inserted) {
    ModelSnapshot left_after = binary_to_general(t, left_);
    ModelSnapshot right_after;
    const bool halves = policy_ == PhasePolicy::halves;
    if (halves) right_after = binary_to_general(t, HalfSpec{Side::right, left_.threshold});

    const std::string tag = to_string(op);
    CorrespondenceReport left_rep;
    switch (op) {
        case DequeOp::push:
            left_rep = check_push_correspondence(std::move(left_before_), left_after, inserted);
            if (halves) record(check_inject_correspondence(right_before_, right_after), tag + " (right half)");
            break;
        case DequeOp::inject:
            left_rep = check_inject_correspondence(left_before_, left_after);
            record(check_push_correspondence(std::move(right_before_), right_after, inserted),
                   tag + " (right half)");
            break;
        case DequeOp::pop:
            left_rep = check_pop_correspondence(std::move(left_before_), left_after, *rec);
            if (halves) record(mirror_eject_check(std::move(right_before_), right_after, *rec), tag + " (right half)");
            break;
        case DequeOp::eject:
            left_rep = mirror_eject_check(std::move(left_before_), left_after, *rec);
            record(check_pop_correspondence(std::move(right_before_), right_after, *rec), tag + " (right half)");
            break;
    }
    record(left_rep, tag + " (left half)");
    if (left_rep.matched) emit_left(left_rep);

    left_before_ = std::move(left_after);
    right_before_ = std::move(right_after);
}

}  // namespace splaydeque
