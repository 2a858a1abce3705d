#include <doctest.h>

#include <cstdint>
#include <limits>

#include "splaydeque/slow_functions.hpp"

using namespace splaydeque;

TEST_CASE("log_star") {
    CHECK(log_star(65536) == 3);
    CHECK(log_star(2) == 0);
    CHECK(log_star(4) == 1);
    CHECK(log_star(16) == 2);
    CHECK(log_star(17) == 3);
}

TEST_CASE("iter_star levels") {
    CHECK(iter_star(1, 1024) == doctest::Approx(10.0));
    CHECK(iter_star(2, 65536) == doctest::Approx(3.0));
}

TEST_CASE("alpha") {
    CHECK(alpha(4, 4) == 1);
    CHECK(alpha_n(4) == 1);
    CHECK(alpha(16, 1 << 20) >= 2);
}

TEST_CASE("alpha_star stays tiny over the whole 64-bit range") {
    CHECK(alpha_star(2) == 0);
    CHECK(alpha_star(std::numeric_limits<std::uint64_t>::max()) <= 4);
    for (std::uint64_t n = 1; n < (1ull << 20); n = n * 3 + 1) CHECK(alpha_star(n) <= 4);
}
