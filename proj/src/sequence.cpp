#include "splaydeque/sequence.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <unordered_map>

#include "splaydeque/error.hpp"

namespace splaydeque {

SymbolSequence SymbolSequence::from_letters(std::string_view letters) {
    std::vector<Symbol> out;
    std::unordered_map<char, Symbol> names;
    for (char ch : letters) {
        if (ch == ' ') continue;
        auto [it, fresh] = names.try_emplace(ch, static_cast<Symbol>(names.size()));
        out.push_back(it->second);
    }
    return SymbolSequence(std::move(out));
}

std::size_t SymbolSequence::alphabet_size() const {
    auto copy = symbols_;
    std::sort(copy.begin(), copy.end());
    return static_cast<std::size_t>(std::unique(copy.begin(), copy.end()) - copy.begin());
}

SymbolSequence SymbolSequence::canonical() const {
    std::unordered_map<Symbol, Symbol> names;
    std::vector<Symbol> out;
    out.reserve(symbols_.size());
    for (Symbol s : symbols_) {
        auto [it, fresh] = names.try_emplace(s, static_cast<Symbol>(names.size()));
        out.push_back(it->second);
    }
    return SymbolSequence(std::move(out));
}

bool is_alternation(const SymbolSequence& pattern) {
    if (pattern.empty()) return false;
    if (pattern.size() == 1) return true;
    if (pattern[0] == pattern[1]) return false;
    for (std::size_t i = 2; i < pattern.size(); ++i) {
        if (pattern[i] != pattern[i - 2]) return false;
    }
    return true;
}

std::size_t longest_alternation(const SymbolSequence& text, Symbol first, Symbol second) {
    std::size_t len = 0;
    for (Symbol s : text.symbols()) {
        if (s == (len % 2 == 0 ? first : second)) ++len;
    }
    return len;
}

namespace {

class Matcher {
public:
    Matcher(const SymbolSequence& pattern, const SymbolSequence& text)
        : pattern_(pattern.canonical()), text_(text), image_(pattern_.alphabet_size()) {}

    std::optional<std::vector<std::size_t>> run() {
        positions_.clear();
        if (search(0, 0)) return positions_;
        return std::nullopt;
    }

private:
    bool search(std::size_t pi, std::size_t tj) {
        if (pi == pattern_.size()) return true;
        const auto p = static_cast<std::size_t>(pattern_[pi]);
        if (image_[p]) {
            // Earliest occurrence dominates once the image is fixed.
            for (std::size_t j = tj; j < text_.size(); ++j) {
                if (text_[j] == *image_[p]) {
                    positions_.push_back(j);
                    if (search(pi + 1, j + 1)) return true;
                    positions_.pop_back();
                    return false;
                }
            }
            return false;
        }
        // Unmapped symbol: branch on the first occurrence of each unused text symbol.
        std::vector<Symbol> tried;
        const std::size_t remaining = pattern_.size() - pi;
        for (std::size_t j = tj; j + remaining <= text_.size(); ++j) {
            const Symbol s = text_[j];
            if (std::find(tried.begin(), tried.end(), s) != tried.end()) continue;
            tried.push_back(s);
            if (std::find(image_.begin(), image_.end(), s) != image_.end()) continue;
            image_[p] = s;
            positions_.push_back(j);
            if (search(pi + 1, j + 1)) return true;
            positions_.pop_back();
            image_[p].reset();
        }
        return false;
    }

    SymbolSequence pattern_;
    const SymbolSequence& text_;
    std::vector<std::optional<Symbol>> image_;
    std::vector<std::size_t> positions_;
};

}  // namespace

std::optional<std::vector<std::size_t>> find_pattern(const SymbolSequence& pattern,
                                                     const SymbolSequence& text) {
    if (pattern.empty()) throw Error(ErrorKind::invalid_argument, "pattern must be nonempty");
    if (pattern.size() > text.size()) return std::nullopt;
    return Matcher(pattern, text).run();
}

bool contains_pattern_generic(const SymbolSequence& pattern, const SymbolSequence& text) {
    return find_pattern(pattern, text).has_value();
}

namespace {

using Occurrences = std::vector<std::pair<Symbol, std::vector<std::size_t>>>;

Occurrences occurrences(const SymbolSequence& text) {
    std::unordered_map<Symbol, std::size_t> slot;
    Occurrences out;
    for (std::size_t i = 0; i < text.size(); ++i) {
        auto [it, fresh] = slot.try_emplace(text[i], out.size());
        if (fresh) out.push_back({text[i], {}});
        out[it->second].second.push_back(i);
    }
    return out;
}

// Greedy match of a canonical two-letter pattern against the merged
// occurrences of the images of 0 and 1.
bool pair_matches(const SymbolSequence& canon, const std::vector<std::size_t>& zero,
                  const std::vector<std::size_t>& one) {
    if (zero.size() + one.size() < canon.size()) return false;
    std::size_t i = 0, j = 0, k = 0;
    while (k < canon.size() && (i < zero.size() || j < one.size())) {
        const bool take_zero = j == one.size() || (i < zero.size() && zero[i] < one[j]);
        const Symbol got = take_zero ? 0 : 1;
        if (got == canon[k]) ++k;
        if (take_zero) ++i; else ++j;
    }
    return k == canon.size();
}

bool any_pair_matches(const SymbolSequence& canon, const SymbolSequence& text) {
    const auto occ = occurrences(text);
    for (const auto& [a, pa] : occ) {
        for (const auto& [b, pb] : occ) {
            if (a != b && pair_matches(canon, pa, pb)) return true;
        }
    }
    return false;
}

}  // namespace

bool contains_pattern_alternation(const SymbolSequence& pattern, const SymbolSequence& text) {
    if (!is_alternation(pattern)) {
        throw Error(ErrorKind::invalid_argument, "pattern is not an alternation");
    }
    const std::size_t s = pattern.size();
    if (s > text.size()) return false;
    if (s == 1) return !text.empty();
    return any_pair_matches(pattern.canonical(), text);
}

bool contains_pattern_pairwise(const SymbolSequence& pattern, const SymbolSequence& text) {
    if (pattern.empty() || pattern.alphabet_size() != 2) {
        throw Error(ErrorKind::invalid_argument, "pattern must use exactly two symbols");
    }
    if (pattern.size() > text.size()) return false;
    return any_pair_matches(pattern.canonical(), text);
}

bool contains_pattern(const SymbolSequence& pattern, const SymbolSequence& text) {
    if (pattern.empty()) throw Error(ErrorKind::invalid_argument, "pattern must be nonempty");
    if (is_alternation(pattern)) return contains_pattern_alternation(pattern, text);
    if (pattern.alphabet_size() == 2) return contains_pattern_pairwise(pattern, text);
    return contains_pattern_generic(pattern, text);
}

bool is_regular(const SymbolSequence& seq, std::size_t c) {
    if (c == 0) throw Error(ErrorKind::invalid_argument, "regularity distance must be positive");
    std::unordered_map<Symbol, std::size_t> last;
    for (std::size_t i = 0; i < seq.size(); ++i) {
        auto [it, fresh] = last.try_emplace(seq[i], i);
        if (!fresh) {
            if (i - it->second < c) return false;
            it->second = i;
        }
    }
    return true;
}

std::pair<SymbolSequence, std::size_t> remove_repetitions(const SymbolSequence& seq) {
    std::vector<Symbol> out;
    out.reserve(seq.size());
    for (Symbol s : seq.symbols()) {
        if (out.empty() || out.back() != s) out.push_back(s);
    }
    const std::size_t removed = seq.size() - out.size();
    return {SymbolSequence(std::move(out)), removed};
}

namespace {

struct ExSearch {
    const SymbolSequence& pattern;
    std::size_t n;
    std::size_t cap;
    std::size_t regularity;
    std::uint64_t budget;
    ExResult result;
    SymbolSequence current;

    void extend(std::size_t used) {
        if (result.nodes >= budget) {
            result.exact = false;
            return;
        }
        ++result.nodes;
        if (used == n && current.size() > result.value) {
            result.value = current.size();
            result.witness = current;
        }
        if (current.size() == cap) {
            // A valid sequence of cap length might continue: the value is only a lower bound.
            result.exact = false;
            return;
        }
        // Canonical form: a new symbol is always the next unused index.
        const std::size_t limit = std::min(used + 1, n);
        for (std::size_t s = 0; s < limit; ++s) {
            if (!fits_regularity(static_cast<Symbol>(s))) continue;
            current.push_back(static_cast<Symbol>(s));
            if (!contains_pattern(pattern, current)) extend(std::max(used, s + 1));
            current.pop_back();
        }
    }

    bool fits_regularity(Symbol s) const {
        const std::size_t len = current.size();
        const std::size_t window = regularity - 1;
        for (std::size_t back = 1; back <= window && back <= len; ++back) {
            if (current[len - back] == s) return false;
        }
        return true;
    }
};

}  // namespace

ExResult ex_bruteforce(const SymbolSequence& pattern, std::size_t n, std::size_t cap, std::uint64_t node_budget) {
    if (pattern.empty()) throw Error(ErrorKind::invalid_argument, "pattern must be nonempty");
    ExSearch search{pattern, n, cap, pattern.alphabet_size(), node_budget, {}, {}};
    search.extend(0);
    return search.result;
}

std::vector<SymbolSequence> read_sequences(std::istream& is) {
    std::vector<SymbolSequence> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (!line.empty() && line[0] == '#') continue;
        std::istringstream ls(line);
        std::vector<Symbol> syms;
        std::string tok;
        while (ls >> tok) {
            try {
                std::size_t used = 0;
                const long long v = std::stoll(tok, &used);
                if (used != tok.size()) throw std::invalid_argument(tok);
                syms.push_back(static_cast<Symbol>(v));
            } catch (const std::exception&) {
                throw Error(ErrorKind::parse_error,
                            "line " + std::to_string(lineno) + ": bad symbol '" + tok + "'");
            }
        }
        out.emplace_back(std::move(syms));
    }
    return out;
}

void write_sequence(std::ostream& os, const SymbolSequence& seq) {
    for (std::size_t i = 0; i < seq.size(); ++i) {
        if (i) os << ' ';
        os << seq[i];
    }
    os << '\n';
}

}  // namespace splaydeque
