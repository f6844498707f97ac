#pragma once

#include <compare>
#include <string>
#include <string_view>
#include <vector>

namespace isofill {

struct Generator
{
    int index = 0;
    std::string name;
};

/**
 * One letter of a word: a generator or its inverse.
 *
 * Letters are ordered by `code() = 2 * generator + inverse`, so a generator
 * ranks before its inverse and both rank before the next generator. This is
 * the order used for shortlex comparisons everywhere in the library.
 */
struct Letter
{
    int generator = 0;
    bool inverse = false;

    int code() const { return 2 * generator + (inverse ? 1 : 0); }
    Letter inverted() const { return {generator, !inverse}; }
    static Letter from_code(int code) { return {code / 2, (code % 2) != 0}; }

    friend bool operator==(const Letter&, const Letter&) = default;
    friend auto operator<=>(const Letter& a, const Letter& b) { return a.code() <=> b.code(); }
};

using Word = std::vector<Letter>;

/// Free reduction: cancels adjacent `s s^-1` pairs until none remain.
Word reduce(const Word& word);

/// Free reduction followed by cancelling matching first and last letters.
Word cyclically_reduce(const Word& word);

Word inverse(const Word& word);
Word concat(const Word& a, const Word& b);

/// True when `a` precedes `b` in shortlex order (length first, then letter codes).
bool shortlex_less(const Word& a, const Word& b);

/**
 * Parses whitespace-separated letters `name` or `name^k` (k a nonzero integer)
 * against the given generator names; exponents expand into repeated letters.
 * Throws ParseError on unknown names or malformed exponents.
 */
Word parse_word(std::string_view text, const std::vector<Generator>& generators);

/// Inverse of parse_word; runs of the same letter are written with an exponent.
std::string format_word(const Word& word, const std::vector<Generator>& generators);

}  // namespace isofill
