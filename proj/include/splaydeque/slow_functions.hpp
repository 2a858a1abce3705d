#pragma once

#include <cstdint>

namespace splaydeque {

// All logarithms are base 2. For a function f with f(x) < x above 2,
// f*(x) = min{ i >= 0 : f^(i)(x) <= 2 }.

/// log*(x) over the reals.
unsigned log_star(long double x);

/// Level 1 is log2(x); level i+1 is the star of level i (so level 2 is log*).
long double iter_star(unsigned level, long double x);

/// min{ i >= 1 : iter_star(i, n) <= 2 + m/n }, threshold compared exactly.
unsigned alpha(std::uint64_t m, std::uint64_t n);

/// alpha(n, n).
unsigned alpha_n(std::uint64_t n);

/// min{ i >= 0 : alpha^(i)(n) <= 2 }.
unsigned alpha_star(std::uint64_t n);

}  // namespace splaydeque
