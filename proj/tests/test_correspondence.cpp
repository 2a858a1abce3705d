#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "splaydeque/correspondence.hpp"
#include "splaydeque/error.hpp"

using namespace splaydeque;

namespace {

SplayTree build(std::vector<NodeId> keys) { return SplayTree::from_insertion_order(keys); }

}  // namespace

TEST_CASE("binary_to_general rotates the right spine over the root") {
    const auto t = build({1, 0, 2});
    const auto snap = binary_to_general(t);
    CHECK(snap.root == 1);
    CHECK(snap.tree.roots() == std::vector<NodeId>{2});
    CHECK(snap.tree.parent(1) == 2);
    CHECK(snap.tree.parent(0) == 1);
    CHECK(snap.tree.postorder() == std::vector<NodeId>{0, 1, 2});
}

TEST_CASE("binary_to_general on trivial shapes") {
    const auto one = binary_to_general(SplayTree::left_path(1));
    CHECK(one.root == 0);
    CHECK(one.tree.size() == 1);
    const auto chain = binary_to_general(SplayTree::left_path(4));
    CHECK(chain.tree.spine() == std::vector<NodeId>{3, 2, 1, 0});
    CHECK(binary_to_general(SplayTree{}).tree.empty());
    CHECK_FALSE(binary_to_general(SplayTree{}).root.has_value());
}

TEST_CASE("right children become right siblings") {
    // 3 with left child 1, which has children 0 and 2. In L'' 2 becomes 1's right sibling.
    const auto snap = binary_to_general(build({3, 1, 0, 2}));
    CHECK(snap.tree.children(3) == std::vector<NodeId>{1, 2});
    CHECK(snap.tree.children(1) == std::vector<NodeId>{0});
    CHECK(snap.tree.postorder() == std::vector<NodeId>{0, 1, 2, 3});
}

TEST_CASE("pop of a single node is a bare deletion") {
    auto before = SplayTree::left_path(1);
    auto after = before;
    const auto rec = after.pop();
    const auto rep = check_pop_correspondence(before, after, rec);
    CHECK(rep.matched);
    CHECK_FALSE(rep.compression.has_value());
    CHECK(rep.deleted == 0);
}

TEST_CASE("pop on the three-node left path matches with a relocation") {
    auto before = SplayTree::left_path(3);
    auto after = before;
    const auto rec = after.pop();
    const auto rep = check_pop_correspondence(before, after, rec);
    INFO(rep.mismatch);
    CHECK(rep.matched);
    CHECK(rep.deleted == 0);
    CHECK_FALSE(rep.compression.has_value());
    CHECK(rep.root_before == 2);
    CHECK(rep.root_after == 1);
    CHECK(rep.relocated());
}

TEST_CASE("pop on a five-node left path is a halving from the leaf's parent") {
    auto before = SplayTree::left_path(5);
    auto after = before;
    const auto rec = after.pop();
    const auto rep = check_pop_correspondence(before, after, rec);
    INFO(rep.mismatch);
    REQUIRE(rep.matched);
    REQUIRE(rep.compression.has_value());
    CHECK(rep.compression->path.front() == 1);
    CHECK(rep.compression->kind == CompressionKind::halving);

    // The literal halving from the leaf itself predicts a different tree.
    auto literal = binary_to_general(before).tree;
    const std::vector<NodeId> from_leaf{0, 1, 2, 3, 4};
    literal.halving_compress(from_leaf);
    literal.delete_leaf(0);
    CHECK_FALSE(literal == binary_to_general(after).tree);
}

TEST_CASE("every pop from small trees corresponds to one halving") {
    for (std::size_t n = 1; n <= 6; ++n) {
        std::vector<NodeId> keys(n);
        std::iota(keys.begin(), keys.end(), 0);
        do {
            auto before = build(keys);
            auto after = before;
            const auto rec = after.pop();
            const auto rep = check_pop_correspondence(before, after, rec);
            INFO(rep.mismatch);
            REQUIRE(rep.matched);
        } while (std::next_permutation(keys.begin(), keys.end()));
    }
}

TEST_CASE("push adds the new node as r's leftmost child and moves r to it") {
    auto t = build({1, 0, 2});
    const auto before = binary_to_general(t);
    const NodeId v = t.push();
    const auto after = binary_to_general(t);
    const auto predicted = mirror_push(before, v);
    CHECK(predicted.root == v);
    CHECK(predicted.tree.parent(v) == 1);
    CHECK(predicted.tree == after.tree);
    const auto rep = check_push_correspondence(before, after, v);
    INFO(rep.mismatch);
    CHECK(rep.matched);
}

TEST_CASE("inject leaves the left half unchanged") {
    auto t = build({2, 1, 0, 3});
    const HalfSpec left{Side::left, 1};
    const auto before = binary_to_general(t, left);
    t.inject();
    const auto rep = check_inject_correspondence(before, binary_to_general(t, left));
    CHECK(rep.matched);
}

TEST_CASE("eject of a lone right half node only relocates") {
    auto t = build({1, 0, 2});
    const HalfSpec left{Side::left, 1};
    const auto before = binary_to_general(t, left);
    const auto rec = t.eject();
    const auto rep = mirror_eject_check(before, binary_to_general(t, left), rec);
    INFO(rep.mismatch);
    CHECK(rep.matched);
    CHECK_FALSE(rep.compression.has_value());
}

TEST_CASE("ejects on small trees match and some compressions are stunted") {
    std::size_t stunted = 0;
    std::size_t checked = 0;
    for (std::size_t n = 4; n <= 6; ++n) {
        std::vector<NodeId> keys(n);
        std::iota(keys.begin(), keys.end(), 0);
        do {
            for (NodeId thr = 0; thr + 1 < static_cast<NodeId>(n); ++thr) {
                auto t = build(keys);
                const HalfSpec left{Side::left, thr};
                ModelSnapshot before;
                try {
                    before = binary_to_general(t, left);
                } catch (const Error&) {
                    continue;  // the lower keys do not induce a single binary tree here
                }
                const auto rec = t.eject();
                const auto rep = mirror_eject_check(before, binary_to_general(t, left), rec);
                INFO(rep.mismatch);
                REQUIRE(rep.matched);
                ++checked;
                if (rep.compression && rep.compression->stunted) ++stunted;
            }
        } while (std::next_permutation(keys.begin(), keys.end()));
        if (n == 4) CHECK(stunted == 0);  // four nodes are too few for a stunted eject
    }
    CHECK(stunted > 0);
    CHECK(checked > 0);
}

TEST_CASE("smallest stunted eject compression") {
    auto t = build({0, 1, 2, 4, 3});
    REQUIRE(t.dump() == "(. 0 (. 1 (. 2 ((. 3 .) 4 .))))");
    const HalfSpec left{Side::left, 3};
    const auto before = binary_to_general(t, left);
    const auto rec = t.eject();
    const auto rep = mirror_eject_check(before, binary_to_general(t, left), rec);
    INFO(rep.mismatch);
    REQUIRE(rep.matched);
    REQUIRE(rep.compression.has_value());
    CHECK(rep.compression->stunted);
}

TEST_CASE("deque mirror reports no mismatches on a mixed run") {
    auto t = SplayTree::left_path(32);
    DequeMirror m(PhasePolicy::halves);
    m.start(t);
    const DequeOp ops[] = {DequeOp::pop, DequeOp::inject, DequeOp::push, DequeOp::eject,
                           DequeOp::pop, DequeOp::pop, DequeOp::eject, DequeOp::push};
    for (int round = 0; round < 6; ++round) {
        for (DequeOp op : ops) {
            m.before(t, op);
            PopRecord rec;
            NodeId inserted = kNil;
            switch (op) {
                case DequeOp::push: inserted = t.push(); break;
                case DequeOp::inject: inserted = t.inject(); break;
                case DequeOp::pop: rec = t.pop(); break;
                case DequeOp::eject: rec = t.eject(); break;
            }
            m.after(t, op, &rec, inserted);
        }
    }
    CHECK(m.stats().mismatches == 0);
    CHECK(m.stats().checks > 0);
    CHECK_FALSE(m.left_trace().empty());
}
