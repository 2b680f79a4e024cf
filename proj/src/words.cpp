#include "laceforge/words.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "laceforge/geometry.hpp"

namespace lace {

SpacingWord::SpacingWord(std::string symbols, double lenS, double lenL)
    : symbols_(std::move(symbols)), lenS_(lenS), lenL_(lenL) {
    if (lenS_ <= 0 || lenL_ <= 0)
        throw std::invalid_argument("spacing lengths must be positive");
    for (char c : symbols_)
        if (c != 'S' && c != 'L')
            throw std::invalid_argument("spacing word symbols must be 'S' or 'L'");
}

SpacingSymbol SpacingWord::at(std::size_t i) const {
    return static_cast<SpacingSymbol>(symbols_.at(i));
}

double SpacingWord::length_at(std::size_t i) const {
    return symbols_.at(i) == 'S' ? lenS_ : lenL_;
}

double SpacingWord::total_length() const {
    double total = 0;
    for (char c : symbols_) total += (c == 'S' ? lenS_ : lenL_);
    return total;
}

SpacingWord SpacingWord::swapped() const {
    std::string out = symbols_;
    for (char& c : out) c = (c == 'S') ? 'L' : 'S';
    return SpacingWord(std::move(out), lenS_, lenL_);
}

bool SpacingWord::is_palindrome() const {
    return std::equal(symbols_.begin(),
                      symbols_.begin() + static_cast<std::ptrdiff_t>(symbols_.size() / 2),
                      symbols_.rbegin());
}

SpacingWord fibonacci_word(int k, double lenS, double lenL) {
    if (k < 0) throw std::invalid_argument("fibonacci_word: k must be >= 0");
    std::string w = "L";
    for (int step = 0; step < k; ++step) {
        std::string next;
        next.reserve(w.size() * 2);
        for (char c : w) {
            if (c == 'L')
                next += "LS";
            else
                next += 'L';
        }
        w = std::move(next);
    }
    return SpacingWord(std::move(w), lenS, lenL);
}

std::size_t hamming_weight(const SpacingWord& w) {
    return static_cast<std::size_t>(
        std::count(w.symbols().begin(), w.symbols().end(), 'S'));
}

bool is_balanced(const SpacingWord& w, std::size_t maxFactorLen) {
    const std::string& s = w.symbols();
    if (maxFactorLen > s.size())
        throw std::invalid_argument("is_balanced: maxFactorLen exceeds word length");
    // Sliding window per factor length; weights of equal-length factors may
    // differ by at most one.
    for (std::size_t m = 1; m <= maxFactorLen; ++m) {
        std::size_t weight = 0;
        for (std::size_t i = 0; i < m; ++i) weight += (s[i] == 'S');
        std::size_t lo = weight, hi = weight;
        for (std::size_t i = m; i < s.size(); ++i) {
            weight += (s[i] == 'S');
            weight -= (s[i - m] == 'S');
            lo = std::min(lo, weight);
            hi = std::max(hi, weight);
        }
        if (hi - lo > 1) return false;
    }
    return true;
}

std::pair<SpacingWord, SpacingWord> counterexample_words(int m, double lenS,
                                                         double lenL) {
    if (m < 0) throw std::invalid_argument("counterexample_words: m must be >= 0");
    // Runs out from the center: S^4, L^16, S^64, ... lengths 4^j.
    std::string half;
    std::uint64_t runLen = 4;
    for (int j = 1; j <= m; ++j) {
        char c = (j % 2 == 1) ? 'S' : 'L';
        half.append(static_cast<std::size_t>(runLen), c);
        runLen *= 4;
    }
    std::string left(half.rbegin(), half.rend());
    std::string wa = left + "LL" + half;
    SpacingWord a(std::move(wa), lenS, lenL);
    SpacingWord b = a.swapped();
    return {std::move(a), std::move(b)};
}

SpacingWord mechanical_word(double slope, double intercept, std::size_t length,
                            double lenS, double lenL) {
    if (!(slope > 0.0 && slope < 1.0))
        throw std::invalid_argument("mechanical_word: slope must be in (0, 1)");
    std::string out;
    out.reserve(length);
    // Characteristic word convention: symbol i compares floors at i+1 and i+2
    // so that slope 2 - tau with intercept 0 yields the Fibonacci word.
    for (std::size_t i = 0; i < length; ++i) {
        double a = std::floor(static_cast<double>(i + 1) * slope + intercept);
        double b = std::floor(static_cast<double>(i + 2) * slope + intercept);
        out += (b > a) ? 'S' : 'L';
    }
    return SpacingWord(std::move(out), lenS, lenL);
}

}  // namespace lace
