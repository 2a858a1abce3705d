#include <doctest.h>

#include <array>

#include "splaydeque/error.hpp"
#include "splaydeque/general_tree.hpp"

using namespace splaydeque;

namespace {

GeneralTree path_of(std::initializer_list<NodeId> bottom_up) {
    std::vector<NodeId> p(bottom_up);
    return GeneralTree::path(p);
}

}  // namespace

TEST_CASE("halving on five nodes skips every other parent") {
    auto g = path_of({1, 2, 3, 4, 5});
    const std::array<NodeId, 5> p{1, 2, 3, 4, 5};
    const auto rec = g.halving_compress(p);
    CHECK(g.parent(1) == 3);
    CHECK(g.parent(3) == 5);
    CHECK(g.parent(2) == 3);
    CHECK(g.parent(4) == 5);
    CHECK(rec.length == 2);
    CHECK_FALSE(rec.stunted);
    CHECK(g.children(5) == std::vector<NodeId>{3, 4});
    CHECK(g.children(3) == std::vector<NodeId>{1, 2});
    CHECK(g.postorder() == std::vector<NodeId>{1, 2, 3, 4, 5});
    g.validate();
}

TEST_CASE("halving of an even path ending at a root makes u_{k-1} a root") {
    auto g = path_of({1, 2});
    const std::array<NodeId, 2> p{1, 2};
    const auto rec = g.halving_compress(p);
    CHECK(rec.length == 1);
    CHECK(rec.final_step_applied);
    CHECK(g.is_root(1));
    CHECK(g.roots() == std::vector<NodeId>{1, 2});
    CHECK(g.postorder() == std::vector<NodeId>{1, 2});
}

TEST_CASE("halving of an even path below the root skips the final step by default") {
    auto g = path_of({1, 2, 3});
    const std::array<NodeId, 2> p{1, 2};
    CHECK_THROWS_AS(g.halving_compress(p), Error);  // zero length once the final step is off
    auto h = path_of({1, 2, 3, 4, 5});
    const std::array<NodeId, 4> q{1, 2, 3, 4};
    const auto rec = h.halving_compress(q);
    CHECK(rec.stunted);
    CHECK(rec.length == 1);
    CHECK(h.parent(1) == 3);
    CHECK(h.parent(3) == 4);
}

TEST_CASE("halving on three nodes") {
    auto g = path_of({1, 2, 3});
    const std::array<NodeId, 3> p{1, 2, 3};
    const auto rec = g.halving_compress(p);
    CHECK(rec.length == 1);
    CHECK(g.parent(1) == 3);
    CHECK(g.children(3) == std::vector<NodeId>{1, 2});
}

TEST_CASE("final step policies") {
    auto g = path_of({1, 2, 3, 4, 5});
    const std::array<NodeId, 4> q{1, 2, 3, 4};
    const auto rec = g.halving_compress(q, FinalStep::always);
    CHECK(rec.final_step_applied);
    CHECK(rec.length == 2);
    CHECK(g.parent(3) == 5);
    auto h = path_of({1, 2, 3, 4});
    const std::array<NodeId, 4> r{1, 2, 3, 4};
    const auto rec2 = h.halving_compress(r, FinalStep::never);
    CHECK_FALSE(rec2.final_step_applied);
    CHECK(rec2.length == 1);
    CHECK(h.parent(3) == 4);
}

TEST_CASE("total compression prepends to the top node's children") {
    auto g = path_of({1, 2, 3});
    const std::array<NodeId, 3> p{1, 2, 3};
    const auto rec = g.total_compress(p);
    CHECK(rec.kind == CompressionKind::total);
    CHECK(rec.length == 1);
    CHECK(g.children(3) == std::vector<NodeId>{1, 2});

    auto h = path_of({1, 2, 3, 4});
    const std::array<NodeId, 4> q{1, 2, 3, 4};
    CHECK(h.total_compress(q).length == 2);
    CHECK(h.parent(1) == 4);
    CHECK(h.parent(2) == 4);
    CHECK(h.children(4) == std::vector<NodeId>{1, 2, 3});
    CHECK(h.postorder() == std::vector<NodeId>{1, 2, 3, 4});
}

TEST_CASE("zero-length compressions are rejected") {
    auto g = path_of({1, 2});
    const std::array<NodeId, 2> p{1, 2};
    CHECK_THROWS_AS(g.total_compress(p), Error);
    const std::array<NodeId, 1> one{1};
    CHECK_THROWS_AS(g.halving_compress(one), Error);
}

TEST_CASE("compression paths must be ancestor chains") {
    auto g = path_of({1, 2, 3, 4});
    const std::array<NodeId, 3> gap{1, 3, 4};
    CHECK_THROWS_AS(g.halving_compress(gap), Error);
    const std::array<NodeId, 3> missing{1, 2, 9};
    CHECK_THROWS_AS(g.total_compress(missing), Error);
}

TEST_CASE("paths off the leftmost-child chain are rejected") {
    // 1 and 2 are children of 3, 3 is a child of 4: 2 -> 3 -> 4 is an ancestor chain but 2 is not 3's first child.
    const std::vector<std::pair<NodeId, NodeId>> entries{{1, 3}, {2, 3}, {3, 4}, {4, kNil}};
    auto g = GeneralTree::from_postorder(entries);
    const std::array<NodeId, 3> p{2, 3, 4};
    CHECK_THROWS_AS(g.halving_compress(p), Error);
    CHECK_THROWS_AS(g.total_compress(p), Error);
    const std::array<NodeId, 3> q{1, 3, 4};
    CHECK(g.halving_compress(q).length == 1);
    CHECK(g.postorder() == std::vector<NodeId>{1, 2, 3, 4});
}

TEST_CASE("stunted flag tracks whether the path ends at a root") {
    auto g = path_of({1, 2, 3, 4});
    const std::array<NodeId, 3> p{1, 2, 3};
    CHECK(g.halving_compress(p).stunted);
}

TEST_CASE("deleting a leaf sweeps fluff ancestors that become leaves") {
    auto g = path_of({1, 2, 3, 4});
    g.set_class(2, NodeClass::fluff);
    g.set_class(3, NodeClass::fluff);
    const auto removed = g.delete_leaf(1);
    CHECK(removed == std::vector<NodeId>{1, 2, 3});
    CHECK(g.size() == 1);
    CHECK(g.is_leaf(4));
    CHECK_THROWS_AS(g.delete_leaf(7), Error);
}

TEST_CASE("deleting an inner node is rejected") {
    auto g = path_of({1, 2, 3});
    CHECK_THROWS_AS(g.delete_leaf(2), Error);
}

TEST_CASE("fluff compression can leave a fluff leaf that gets swept") {
    // 1 under fluff 2 under 3 under 4. Halving 1..3 moves 1 up, leaving 2 a fluff leaf.
    auto g = path_of({1, 2, 3, 4});
    g.set_class(2, NodeClass::fluff);
    const std::array<NodeId, 3> p{1, 2, 3};
    const auto rec = g.halving_compress(p);
    CHECK(rec.fluff_deleted == std::vector<NodeId>{2});
    CHECK_FALSE(g.contains(2));
    CHECK(g.postorder() == std::vector<NodeId>{1, 3, 4});
}

TEST_CASE("from_postorder and spine") {
    // 1 and 2 are children of 3; 3 and 4 children of 5; 6 is a second root.
    const std::vector<std::pair<NodeId, NodeId>> entries{{1, 3}, {2, 3}, {3, 5}, {4, 5}, {5, kNil}, {6, kNil}};
    const auto g = GeneralTree::from_postorder(entries);
    CHECK(g.postorder() == std::vector<NodeId>{1, 2, 3, 4, 5, 6});
    CHECK(g.spine() == std::vector<NodeId>{5, 3, 1});
    CHECK(g.leftmost_leaf() == 1);
    CHECK(g.depth(1) == 2);
    CHECK(g.first_child(5) == 3);
    CHECK(g.next_sibling(3) == 4);
    CHECK_FALSE(g.next_sibling(4).has_value());
    g.validate();
}

TEST_CASE("first_difference reports structural changes") {
    auto a = path_of({1, 2, 3});
    auto b = path_of({1, 2, 3});
    CHECK(a == b);
    b.set_class(2, NodeClass::fluff);
    CHECK(a.first_difference(b).has_value());
    auto c = path_of({1, 2, 3});
    const std::array<NodeId, 3> p{1, 2, 3};
    c.halving_compress(p);
    CHECK_FALSE(a == c);
}

TEST_CASE("add_leftmost_child keeps postorder with the new leaf first") {
    auto g = path_of({1, 2});
    g.add_leftmost_child(2, 0);
    CHECK(g.children(2) == std::vector<NodeId>{0, 1});
    CHECK(g.leftmost_leaf() == 0);
    g.add_child(2, 5);
    CHECK(g.children(2) == std::vector<NodeId>{0, 1, 5});
    CHECK_THROWS_AS(g.add_root(1), Error);
}
