#pragma once

#include <cstddef>
#include <string>
#include <utility>

namespace lace {

// Binary spacing alphabet: 'S' (short) and 'L' (long).
enum class SpacingSymbol : char { S = 'S', L = 'L' };

// A finite word over {S, L} together with the geometric lengths of the two
// symbols. Drives the aperiodic spacing of line families.
class SpacingWord {
public:
    SpacingWord() = default;
    SpacingWord(std::string symbols, double lenS, double lenL);

    const std::string& symbols() const { return symbols_; }
    std::size_t size() const { return symbols_.size(); }
    bool empty() const { return symbols_.empty(); }
    double len_s() const { return lenS_; }
    double len_l() const { return lenL_; }

    SpacingSymbol at(std::size_t i) const;
    // Geometric length of symbol i.
    double length_at(std::size_t i) const;
    double total_length() const;

    // Word with S and L exchanged, lengths kept per symbol name.
    SpacingWord swapped() const;
    bool is_palindrome() const;

    bool operator==(const SpacingWord& o) const = default;

private:
    std::string symbols_;
    double lenS_ = 1.0;
    double lenL_ = kDefaultLenL;

public:
    static constexpr double kDefaultLenL = 1.6180339887498948;
};

// k-fold application of the substitution L -> LS, S -> L to the word "L".
// The result has length F(k+2) with F(1) = F(2) = 1.
SpacingWord fibonacci_word(int k, double lenS = 1.0,
                           double lenL = SpacingWord::kDefaultLenL);

// Number of S symbols in the word.
std::size_t hamming_weight(const SpacingWord& w);

// True iff for every factor length m <= maxFactorLen the Hamming weights of
// all length-m contiguous factors differ by at most one.
bool is_balanced(const SpacingWord& w, std::size_t maxFactorLen);

// Finite truncations (W_A, W_B) of the zigzag counterexample words: a center
// "LL" flanked symmetrically by alternating runs of lengths 4^1 .. 4^m,
// starting with S adjacent to the center. W_B is W_A with S and L swapped.
std::pair<SpacingWord, SpacingWord> counterexample_words(
    int m, double lenS = 1.0, double lenL = SpacingWord::kDefaultLenL);

// Characteristic mechanical word of the given slope in (0, 1): symbol i is
// S when floor((i+1)*slope + intercept) > floor(i*slope + intercept), else L.
// Slope 2 - golden ratio reproduces the Fibonacci word.
SpacingWord mechanical_word(double slope, double intercept, std::size_t length,
                            double lenS = 1.0,
                            double lenL = SpacingWord::kDefaultLenL);

}  // namespace lace
