#include "isofill/word.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>

#include "isofill/errors.hpp"

namespace isofill {

Word reduce(const Word& word)
{
    Word out;
    out.reserve(word.size());
    for (const Letter& letter : word)
    {
        if (!out.empty() && out.back() == letter.inverted())
            out.pop_back();
        else
            out.push_back(letter);
    }
    return out;
}

Word cyclically_reduce(const Word& word)
{
    Word w = reduce(word);
    std::size_t lo = 0, hi = w.size();
    while (hi - lo >= 2 && w[lo] == w[hi - 1].inverted())
    {
        ++lo;
        --hi;
    }
    return Word(w.begin() + static_cast<std::ptrdiff_t>(lo), w.begin() + static_cast<std::ptrdiff_t>(hi));
}

Word inverse(const Word& word)
{
    Word out;
    out.reserve(word.size());
    for (auto it = word.rbegin(); it != word.rend(); ++it)
        out.push_back(it->inverted());
    return out;
}

Word concat(const Word& a, const Word& b)
{
    Word out = a;
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

bool shortlex_less(const Word& a, const Word& b)
{
    if (a.size() != b.size())
        return a.size() < b.size();
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

namespace {

int find_generator(std::string_view name, const std::vector<Generator>& generators)
{
    for (const Generator& g : generators)
    {
        if (g.name == name)
            return g.index;
    }
    throw ParseError("unknown generator '" + std::string(name) + "'");
}

}  // namespace

Word parse_word(std::string_view text, const std::vector<Generator>& generators)
{
    Word out;
    std::istringstream in{std::string(text)};
    std::string token;
    while (in >> token)
    {
        std::string_view tok = token;
        std::string_view name = tok;
        long exponent = 1;
        if (auto caret = tok.find('^'); caret != std::string_view::npos)
        {
            name = tok.substr(0, caret);
            std::string_view exp_text = tok.substr(caret + 1);
            if (!exp_text.empty() && exp_text.front() == '+')
                exp_text.remove_prefix(1);
            auto [ptr, ec] = std::from_chars(exp_text.data(), exp_text.data() + exp_text.size(), exponent);
            if (ec != std::errc() || ptr != exp_text.data() + exp_text.size() || exp_text.empty())
                throw ParseError("bad exponent in '" + token + "'");
            if (exponent == 0)
                throw ParseError("zero exponent in '" + token + "'");
            if (exponent > 100000 || exponent < -100000)
                throw ParseError("exponent too large in '" + token + "'");
        }
        if (name.empty())
            throw ParseError("empty generator name in '" + token + "'");
        const int gen = find_generator(name, generators);
        const Letter letter{gen, exponent < 0};
        for (long i = 0; i < std::abs(exponent); ++i)
            out.push_back(letter);
    }
    return out;
}

std::string format_word(const Word& word, const std::vector<Generator>& generators)
{
    std::string out;
    std::size_t i = 0;
    while (i < word.size())
    {
        std::size_t j = i;
        while (j < word.size() && word[j] == word[i])
            ++j;
        const long run = static_cast<long>(j - i);
        const long exponent = word[i].inverse ? -run : run;
        if (!out.empty())
            out += ' ';
        out += generators.at(static_cast<std::size_t>(word[i].generator)).name;
        if (exponent != 1)
            out += "^" + std::to_string(exponent);
        i = j;
    }
    return out;
}

}  // namespace isofill
