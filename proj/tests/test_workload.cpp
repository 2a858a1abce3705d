#include <doctest.h>

#include <sstream>

#include "splaydeque/error.hpp"
#include "splaydeque/workload.hpp"

using namespace splaydeque;

TEST_CASE("pop-only n=3 is three pops") {
    WorkloadParams p;
    p.n = 3;
    const auto t = generate(p);
    CHECK(t.ops == std::vector<DequeOp>{DequeOp::pop, DequeOp::pop, DequeOp::pop});
}

TEST_CASE("generation is deterministic in the seed") {
    WorkloadParams p;
    p.kind = WorkloadKind::random_mix;
    p.n = 50;
    p.m = 400;
    p.seed = 42;
    const auto a = generate(p);
    const auto b = generate(p);
    CHECK(a.ops == b.ops);
    p.seed = 43;
    CHECK(generate(p).ops != a.ops);
}

TEST_CASE("period-hold pushes a full burst right after a pop") {
    WorkloadParams p;
    p.kind = WorkloadKind::period_hold;
    p.n = 16;
    p.burst = 4;
    const auto t = generate(p);
    REQUIRE(t.ops.size() >= 5);
    CHECK(t.ops[0] == DequeOp::pop);
    for (int i = 1; i <= 4; ++i) CHECK(t.ops[i] == DequeOp::push);
}

TEST_CASE("infeasible requests are rejected") {
    WorkloadParams p;
    p.n = 3;
    p.m = 4;
    CHECK_THROWS_AS(generate(p), Error);
    p.kind = WorkloadKind::random_mix;
    p.n = 0;
    p.m = 5;
    p.mix = {DequeOp::pop};
    CHECK_THROWS_AS(generate(p), Error);
    WorkloadTrace bad;
    bad.params.n = 1;
    bad.ops = {DequeOp::pop, DequeOp::eject};
    CHECK_THROWS_AS(check_feasible(bad), Error);
}

TEST_CASE("every generated kind passes the feasibility check") {
    for (auto kind : {WorkloadKind::pop_only, WorkloadKind::random_mix, WorkloadKind::push_burst,
                      WorkloadKind::period_hold}) {
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            WorkloadParams p;
            p.kind = kind;
            p.n = 20;
            p.seed = seed;
            CHECK_NOTHROW(check_feasible(generate(p)));
        }
    }
}

TEST_CASE("run costs on tiny pop-only workloads") {
    WorkloadParams p;
    p.n = 1;
    CHECK(run(generate(p)).cost.total_rotations == 0);
    p.n = 3;
    const auto r = run(generate(p));
    CHECK(r.cost.total_rotations == 2);
    CHECK(r.cost.per_op == std::vector<std::uint32_t>{2, 0, 0});
    CHECK(r.cost.ledger.zigzig == 1);
}

TEST_CASE("mirrored runs report zero mismatches") {
    for (auto kind : {WorkloadKind::random_mix, WorkloadKind::push_burst, WorkloadKind::period_hold}) {
        WorkloadParams p;
        p.kind = kind;
        p.n = 64;
        p.seed = 7;
        RunOptions o;
        o.mirror = true;
        const auto r = run(generate(p), o);
        REQUIRE(r.mirror.has_value());
        CHECK(r.mirror->mismatches == 0);
        CHECK(r.validations == r.cost.m + 1);  // the initial tree is checked too
    }
}

TEST_CASE("trace files round trip") {
    WorkloadParams p;
    p.kind = WorkloadKind::random_mix;
    p.n = 10;
    p.m = 30;
    p.seed = 9;
    p.mix = {DequeOp::push, DequeOp::pop};
    const auto t = generate(p);
    std::stringstream ss;
    write_trace(ss, t);
    const auto back = read_trace(ss);
    CHECK(back.ops == t.ops);
    CHECK(back.params.n == 10);
    CHECK(back.params.seed == 9);
    CHECK(back.params.mix == p.mix);
    std::istringstream bad("# splaydeque trace kind=pop-only n=2 m=1 seed=1 initial=left-path\nfly\n");
    CHECK_THROWS_AS(read_trace(bad), Error);
}

TEST_CASE("report csv") {
    std::ostringstream empty;
    write_report_csv(empty, {});
    CHECK(empty.str() == "kind,n,m,seed,total_rotations,per_op,amortized,log2_mn,alpha_star_mn,ratio_log2,ratio_alpha_star\n");

    std::vector<CostReport> costs;
    for (std::size_t n : {64u, 16u}) {
        WorkloadParams p;
        p.n = n;
        costs.push_back(run(generate(p)).cost);
    }
    std::ostringstream out;
    write_report_csv(out, costs);
    std::istringstream lines(out.str());
    std::string header, row1, row2, extra;
    std::getline(lines, header);
    std::getline(lines, row1);
    std::getline(lines, row2);
    CHECK_FALSE(std::getline(lines, extra));
    CHECK(row1.rfind("pop-only,16,", 0) == 0);
    CHECK(row2.rfind("pop-only,64,", 0) == 0);

    std::ostringstream again;
    write_report_csv(again, costs);
    CHECK(again.str() == out.str());
}

TEST_CASE("parsers") {
    CHECK(parse_workload_kind("period-hold") == WorkloadKind::period_hold);
    CHECK(parse_initial_shape("random") == InitialShape::random);
    CHECK(parse_deque_op("eject") == DequeOp::eject);
    CHECK_THROWS_AS(parse_workload_kind("nope"), Error);
}

TEST_CASE("random initial trees are valid and seeded") {
    WorkloadParams p;
    p.n = 100;
    p.initial = InitialShape::random;
    p.seed = 3;
    const auto a = initial_tree(p);
    a.validate();
    CHECK(a.size() == 100);
    CHECK(a.dump() == initial_tree(p).dump());
}
