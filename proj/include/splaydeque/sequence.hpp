#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace splaydeque {

using Symbol = std::int64_t;

/// Finite sequence over an integer alphabet.
class SymbolSequence {
public:
    SymbolSequence() = default;
    explicit SymbolSequence(std::vector<Symbol> symbols) : symbols_(std::move(symbols)) {}
    SymbolSequence(std::initializer_list<Symbol> symbols) : symbols_(symbols) {}

    /// "abab" -> 0 1 0 1; letters are numbered by first occurrence.
    static SymbolSequence from_letters(std::string_view letters);

    std::size_t size() const noexcept { return symbols_.size(); }
    bool empty() const noexcept { return symbols_.empty(); }
    std::size_t alphabet_size() const;
    Symbol operator[](std::size_t i) const { return symbols_[i]; }
    std::span<const Symbol> symbols() const noexcept { return symbols_; }

    void push_back(Symbol s) { symbols_.push_back(s); }
    void pop_back() { symbols_.pop_back(); }

    /// Renames symbols to 0,1,2,... in order of first occurrence.
    SymbolSequence canonical() const;

    friend bool operator==(const SymbolSequence&, const SymbolSequence&) = default;

private:
    std::vector<Symbol> symbols_;
};

/// True iff the pattern has the form a, ab, aba, abab, ... (two symbols alternating).
bool is_alternation(const SymbolSequence& pattern);

/// Longest subsequence of `text` alternating first, second, first, ...
std::size_t longest_alternation(const SymbolSequence& text, Symbol first, Symbol second);

/// Backtracking over injective renamings of the pattern alphabet. Returns the
/// text positions of the first witness found.
std::optional<std::vector<std::size_t>> find_pattern(const SymbolSequence& pattern,
                                                     const SymbolSequence& text);
bool contains_pattern_generic(const SymbolSequence& pattern, const SymbolSequence& text);

/// Alternation patterns only: compares the best pairwise alternation length.
bool contains_pattern_alternation(const SymbolSequence& pattern, const SymbolSequence& text);

/// Any two-symbol pattern: greedy match over every ordered pair of text symbols.
bool contains_pattern_pairwise(const SymbolSequence& pattern, const SymbolSequence& text);

/// Pattern containment up to renaming; dispatches to the alternation or
/// pairwise path when it applies.
bool contains_pattern(const SymbolSequence& pattern, const SymbolSequence& text);

/// Every two occurrences of the same symbol are at least `c` positions apart.
bool is_regular(const SymbolSequence& seq, std::size_t c);

/// Collapses runs of equal adjacent symbols. Second member: symbols removed.
std::pair<SymbolSequence, std::size_t> remove_repetitions(const SymbolSequence& seq);

struct ExResult {
    /// Longest pattern-free sequence found (0 if none uses exactly n symbols).
    std::size_t value = 0;
    /// False if the cap or node budget cut the search short: value is then a lower bound.
    bool exact = true;
    std::optional<SymbolSequence> witness;
    std::uint64_t nodes = 0;
};

/// Exhaustive search for Ex(pattern, n): longest ||pattern||-regular,
/// pattern-free sequence with exactly n distinct symbols, no longer than `cap`.
ExResult ex_bruteforce(const SymbolSequence& pattern, std::size_t n, std::size_t cap,
                       std::uint64_t node_budget = 50'000'000);

/// Sequence files: whitespace-separated integers, one sequence per line.
std::vector<SymbolSequence> read_sequences(std::istream& is);
void write_sequence(std::ostream& os, const SymbolSequence& seq);

}  // namespace splaydeque
