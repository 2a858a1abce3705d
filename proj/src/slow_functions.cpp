#include "splaydeque/slow_functions.hpp"

#include <bit>
#include <cmath>

#include "splaydeque/error.hpp"

namespace splaydeque {

unsigned log_star(long double x) {
    return static_cast<unsigned>(iter_star(2, x));
}

long double iter_star(unsigned level, long double x) {
    if (level == 0) throw Error(ErrorKind::invalid_argument, "iter_star level starts at 1");
    if (!(x > 0)) throw Error(ErrorKind::invalid_argument, "iter_star needs a positive argument");
    if (level == 1) return std::log2(x);
    unsigned count = 0;
    while (x > 2) {
        x = iter_star(level - 1, x);
        ++count;
    }
    return count;
}

namespace {

__extension__ typedef unsigned __int128 Wide;

// Exact test of log2(n) <= 2 + m/n.
bool log_within(std::uint64_t m, std::uint64_t n) {
    const auto p = static_cast<unsigned>(std::bit_width(n) - 1);  // floor(log2 n)
    auto scaled_le = [m, n](unsigned k) {                        // k <= 2 + m/n  <=>  (k-2) n <= m
        return k <= 2 || static_cast<Wide>(k - 2) * n <= static_cast<Wide>(m);
    };
    if (std::has_single_bit(n)) return scaled_le(p);
    if (scaled_le(p + 1)) return true;  // log2 n < p+1 <= threshold
    if (!scaled_le(p)) return false;    // threshold < p < log2 n
    // log2 n is irrational here, so no tie is possible.
    const long double lhs = std::log2(static_cast<long double>(n));
    const long double rhs = 2.0L + static_cast<long double>(m) / static_cast<long double>(n);
    return lhs <= rhs;
}

}  // namespace

unsigned alpha(std::uint64_t m, std::uint64_t n) {
    if (n == 0) throw Error(ErrorKind::invalid_argument, "alpha needs n >= 1");
    if (log_within(m, n)) return 1;
    for (unsigned i = 2;; ++i) {
        const auto k = static_cast<std::uint64_t>(iter_star(i, static_cast<long double>(n)));
        if (k <= 2 || static_cast<Wide>(k - 2) * n <= static_cast<Wide>(m)) return i;
    }
}

unsigned alpha_n(std::uint64_t n) { return alpha(n, n); }

unsigned alpha_star(std::uint64_t n) {
    if (n == 0) throw Error(ErrorKind::invalid_argument, "alpha_star needs n >= 1");
    unsigned count = 0;
    while (n > 2) {
        n = alpha_n(n);
        ++count;
    }
    return count;
}

}  // namespace splaydeque
