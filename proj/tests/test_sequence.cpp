#include <doctest.h>

#include <sstream>

#include "splaydeque/error.hpp"
#include "splaydeque/sequence.hpp"

using namespace splaydeque;

namespace {

SymbolSequence L(std::string_view s) { return SymbolSequence::from_letters(s); }

}  // namespace

TEST_CASE("from_letters numbers letters by first occurrence") {
    CHECK(L("abab") == SymbolSequence{0, 1, 0, 1});
    CHECK(L("xyxyx") == SymbolSequence{0, 1, 0, 1, 0});
    CHECK(L("baab") == SymbolSequence{0, 1, 1, 0});
    CHECK(SymbolSequence{7, 3, 7}.canonical() == SymbolSequence{0, 1, 0});
    CHECK(L("abcab").alphabet_size() == 3);
}

TEST_CASE("pattern containment examples") {
    CHECK(contains_pattern(L("abab"), L("xyxyx")));
    CHECK_FALSE(contains_pattern(L("abababa"), L("abcabcabc")));
    CHECK_FALSE(contains_pattern(L("abaabba"), L("abab")));
    CHECK(contains_pattern(L("abaabba"), L("abaabba")));
    CHECK(contains_pattern(L("abc"), L("xaybzc")));
    CHECK_FALSE(contains_pattern(L("abc"), L("aabb")));
    CHECK_THROWS_AS(contains_pattern(SymbolSequence{}, L("ab")), Error);
}

TEST_CASE("the three containment paths agree on a hand-picked case") {
    const auto p = L("ababa");
    const auto t = SymbolSequence{3, 1, 3, 2, 1, 3, 1, 3};
    CHECK(contains_pattern_generic(p, t));
    CHECK(contains_pattern_alternation(p, t));
    CHECK(contains_pattern_pairwise(p, t));
}

TEST_CASE("alternation helpers") {
    CHECK(is_alternation(L("a")));
    CHECK(is_alternation(L("abab")));
    CHECK_FALSE(is_alternation(L("aab")));
    CHECK_FALSE(is_alternation(L("abc")));
    CHECK(longest_alternation(L("abcabcabc"), 0, 1) == 6);
    CHECK(longest_alternation(L("abcabcabc"), 1, 0) == 5);
}

TEST_CASE("find_pattern returns witness positions") {
    const auto w = find_pattern(L("abab"), L("xxyxy"));
    REQUIRE(w.has_value());
    CHECK(w->size() == 4);
    CHECK_FALSE(find_pattern(L("abab"), L("aabb")).has_value());
}

TEST_CASE("regularity") {
    CHECK(is_regular(L("aba"), 2));
    CHECK_FALSE(is_regular(L("aab"), 2));
    CHECK(is_regular(L("abcdefg"), 2));
    CHECK(is_regular(L("abcabc"), 3));
    CHECK_FALSE(is_regular(L("abcab"), 4));
    CHECK(is_regular(SymbolSequence{}, 5));
}

TEST_CASE("remove_repetitions") {
    auto [s1, r1] = remove_repetitions(L("aabb"));
    CHECK(s1 == L("ab"));
    CHECK(r1 == 2);
    auto [s2, r2] = remove_repetitions(L("abab"));
    CHECK(s2 == L("abab"));
    CHECK(r2 == 0);
    auto [s3, r3] = remove_repetitions(L("aaab"));
    CHECK(s3 == L("ab"));
    CHECK(r3 == 2);
    CHECK(remove_repetitions(SymbolSequence{}).second == 0);
}

TEST_CASE("Ex(abab, n) follows 2n - 1") {
    const auto abab = L("abab");
    for (std::size_t n : {2u, 3u, 4u}) {
        const auto r = ex_bruteforce(abab, n, 4 * n + 4);
        CHECK(r.exact);
        CHECK(r.value == 2 * n - 1);
        REQUIRE(r.witness.has_value());
        CHECK(r.witness->size() == r.value);
        CHECK(r.witness->alphabet_size() == n);
        CHECK(is_regular(*r.witness, 2));
        CHECK_FALSE(contains_pattern(abab, *r.witness));
    }
}

TEST_CASE("Ex(ab, 2) is 0: every two-symbol sequence contains ab") {
    const auto r = ex_bruteforce(L("ab"), 2, 10);
    CHECK(r.exact);
    CHECK(r.value == 0);
    CHECK_FALSE(r.witness.has_value());
    CHECK(ex_bruteforce(L("ab"), 1, 10).value == 1);
}

TEST_CASE("Ex is monotone in n for patterns with witnesses") {
    for (const auto* pat : {"abab", "abaab", "ababa"}) {
        std::size_t prev = 0;
        for (std::size_t n = 1; n <= 3; ++n) {
            const auto r = ex_bruteforce(L(pat), n, 4 * n + 4);
            CHECK(r.value >= prev);
            prev = r.value;
        }
    }
}

TEST_CASE("search budget exhaustion reports a lower bound") {
    const auto r = ex_bruteforce(L("ababa"), 4, 40, 50);
    CHECK_FALSE(r.exact);
}

TEST_CASE("sequence files round trip") {
    std::istringstream in("0 1 0\n\n5 7 5 7\n");
    const auto seqs = read_sequences(in);
    REQUIRE(seqs.size() == 3);  // a blank line is an empty sequence
    CHECK(seqs[0] == SymbolSequence{0, 1, 0});
    CHECK(seqs[1].empty());
    std::ostringstream out;
    write_sequence(out, seqs[2]);
    CHECK(out.str() == "5 7 5 7\n");
    std::istringstream bad("0 x 1\n");
    CHECK_THROWS_AS(read_sequences(bad), Error);
}
