#include "isofill/oracle.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <functional>
#include <limits>

#include "isofill/errors.hpp"

namespace isofill {

std::string to_string(OracleKind kind)
{
    switch (kind)
    {
        case OracleKind::free: return "free";
        case OracleKind::free_abelian: return "free-abelian";
        case OracleKind::finite: return "finite";
        case OracleKind::surface: return "surface";
    }
    return "unknown";
}

std::size_t ElementKeyHash::operator()(const ElementKey& key) const noexcept
{
    std::size_t h = 0x9e3779b97f4a7c15ULL ^ key.size();
    for (int v : key)
        h = (h ^ static_cast<std::size_t>(static_cast<unsigned>(v))) * 0x100000001b3ULL + (h >> 29);
    return h;
}

namespace {

Word word_from_codes(const ElementKey& codes)
{
    Word w;
    w.reserve(codes.size());
    for (int c : codes)
        w.push_back(Letter::from_code(c));
    return w;
}

ElementKey codes_from_word(const Word& word)
{
    ElementKey k;
    k.reserve(word.size());
    for (const Letter& l : word)
        k.push_back(l.code());
    return k;
}

}  // namespace

void GroupOracle::check_word(const Word& word) const
{
    for (const Letter& l : word)
    {
        if (l.generator < 0 || l.generator >= generator_count())
            throw UnsupportedOracle("word uses generator index " + std::to_string(l.generator) +
                                    " outside the presentation");
    }
}

ElementKey GroupOracle::multiply_letter(const ElementKey& a, Letter letter) const
{
    return multiply(a, normal_form(Word{letter}));
}

std::string GroupOracle::render(const ElementKey& a) const
{
    return format_word(word_from_codes(a), generators_);
}

ElementKey GroupOracle::parse_canonical(std::string_view text) const
{
    return normal_form(parse_word(text, generators_));
}

// ---------------------------------------------------------------------------
// Free group

namespace {

class FreeOracle final : public GroupOracle
{
    public:
        using GroupOracle::GroupOracle;

        OracleKind kind() const override { return OracleKind::free; }

        ElementKey normal_form(const Word& word) const override
        {
            check_word(word);
            return codes_from_word(reduce(word));
        }

        ElementKey multiply(const ElementKey& a, const ElementKey& b) const override
        {
            ElementKey out = a;
            for (int c : b)
                push(out, c);
            return out;
        }

        ElementKey multiply_letter(const ElementKey& a, Letter letter) const override
        {
            ElementKey out = a;
            push(out, letter.code());
            return out;
        }

        ElementKey invert(const ElementKey& a) const override
        {
            ElementKey out(a.rbegin(), a.rend());
            for (int& c : out)
                c ^= 1;
            return out;
        }

        ElementKey identity() const override { return {}; }

        int word_length(const ElementKey& a) const override { return static_cast<int>(a.size()); }

    private:
        static void push(ElementKey& w, int code)
        {
            if (!w.empty() && w.back() == (code ^ 1))
                w.pop_back();
            else
                w.push_back(code);
        }
};

// ---------------------------------------------------------------------------
// Free abelian group: keys are exponent vectors.

class FreeAbelianOracle final : public GroupOracle
{
    public:
        using GroupOracle::GroupOracle;

        OracleKind kind() const override { return OracleKind::free_abelian; }

        ElementKey normal_form(const Word& word) const override
        {
            check_word(word);
            ElementKey e(static_cast<std::size_t>(generator_count()), 0);
            for (const Letter& l : word)
                e[static_cast<std::size_t>(l.generator)] += l.inverse ? -1 : 1;
            return e;
        }

        ElementKey multiply(const ElementKey& a, const ElementKey& b) const override
        {
            ElementKey out = a;
            for (std::size_t i = 0; i < out.size(); ++i)
                out[i] += b[i];
            return out;
        }

        ElementKey multiply_letter(const ElementKey& a, Letter letter) const override
        {
            ElementKey out = a;
            out[static_cast<std::size_t>(letter.generator)] += letter.inverse ? -1 : 1;
            return out;
        }

        ElementKey invert(const ElementKey& a) const override
        {
            ElementKey out = a;
            for (int& v : out)
                v = -v;
            return out;
        }

        ElementKey identity() const override { return ElementKey(static_cast<std::size_t>(generator_count()), 0); }

        int word_length(const ElementKey& a) const override
        {
            int n = 0;
            for (int v : a)
                n += std::abs(v);
            return n;
        }

        // x^a y^b ... is also the shortlex-least word for the element.
        std::string render(const ElementKey& a) const override
        {
            Word w;
            for (std::size_t i = 0; i < a.size(); ++i)
            {
                for (int k = 0; k < std::abs(a[i]); ++k)
                    w.push_back(Letter{static_cast<int>(i), a[i] < 0});
            }
            return format_word(w, generators());
        }
};

// ---------------------------------------------------------------------------
// Finite group from a multiplication table.

class FiniteOracle final : public GroupOracle
{
    public:
        FiniteOracle(std::vector<Generator> generators, std::vector<std::vector<int>> table,
                     std::vector<int> generator_elements)
            : GroupOracle(std::move(generators)), table_(std::move(table)), gens_(std::move(generator_elements))
        {
            validate();
        }

        OracleKind kind() const override { return OracleKind::finite; }

        ElementKey normal_form(const Word& word) const override
        {
            check_word(word);
            int e = 0;
            for (const Letter& l : word)
                e = table_[static_cast<std::size_t>(e)][static_cast<std::size_t>(letter_element(l))];
            return {e};
        }

        ElementKey multiply(const ElementKey& a, const ElementKey& b) const override
        {
            return {table_[static_cast<std::size_t>(a.at(0))][static_cast<std::size_t>(b.at(0))]};
        }

        ElementKey multiply_letter(const ElementKey& a, Letter letter) const override
        {
            return {table_[static_cast<std::size_t>(a.at(0))][static_cast<std::size_t>(letter_element(letter))]};
        }

        ElementKey invert(const ElementKey& a) const override { return {inverse_[static_cast<std::size_t>(a.at(0))]}; }

        ElementKey identity() const override { return {0}; }

        int word_length(const ElementKey& a) const override { return distance_[static_cast<std::size_t>(a.at(0))]; }

        std::string render(const ElementKey& a) const override
        {
            return a.at(0) == 0 ? std::string() : "#" + std::to_string(a.at(0));
        }

        ElementKey parse_canonical(std::string_view text) const override
        {
            if (text.empty())
                return {0};
            if (text.front() != '#')
                throw ParseError("finite-group canonical form must be empty or '#<index>': '" + std::string(text) + "'");
            int idx = -1;
            auto [ptr, ec] = std::from_chars(text.data() + 1, text.data() + text.size(), idx);
            if (ec != std::errc() || ptr != text.data() + text.size() || idx <= 0 || idx >= size())
                throw ParseError("bad finite-group element '" + std::string(text) + "'");
            return {idx};
        }

        std::optional<std::size_t> order() const override { return table_.size(); }

    private:
        int size() const { return static_cast<int>(table_.size()); }

        int letter_element(Letter l) const
        {
            const int e = gens_[static_cast<std::size_t>(l.generator)];
            return l.inverse ? inverse_[static_cast<std::size_t>(e)] : e;
        }

        void validate()
        {
            const int n = size();
            if (n == 0)
                throw UnsupportedOracle("finite oracle needs a nonempty multiplication table");
            for (const auto& row : table_)
            {
                if (static_cast<int>(row.size()) != n)
                    throw UnsupportedOracle("multiplication table is not square");
                for (int v : row)
                {
                    if (v < 0 || v >= n)
                        throw UnsupportedOracle("multiplication table entry out of range");
                }
            }
            for (int i = 0; i < n; ++i)
            {
                if (table_[0][static_cast<std::size_t>(i)] != i || table_[static_cast<std::size_t>(i)][0] != i)
                    throw UnsupportedOracle("element 0 of the table is not the identity");
            }
            inverse_.assign(static_cast<std::size_t>(n), -1);
            for (int i = 0; i < n; ++i)
            {
                for (int j = 0; j < n; ++j)
                {
                    if (table_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] == 0)
                        inverse_[static_cast<std::size_t>(i)] = j;
                }
                if (inverse_[static_cast<std::size_t>(i)] < 0)
                    throw UnsupportedOracle("element " + std::to_string(i) + " has no inverse in the table");
            }
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b)
                    for (int c = 0; c < n; ++c)
                    {
                        const auto ab = static_cast<std::size_t>(table_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]);
                        const auto bc = static_cast<std::size_t>(table_[static_cast<std::size_t>(b)][static_cast<std::size_t>(c)]);
                        if (table_[ab][static_cast<std::size_t>(c)] != table_[static_cast<std::size_t>(a)][bc])
                            throw UnsupportedOracle("multiplication table is not associative");
                    }
            if (gens_.size() != static_cast<std::size_t>(generator_count()))
                throw UnsupportedOracle("finite oracle needs one table element per generator");
            for (int g : gens_)
            {
                if (g < 0 || g >= n)
                    throw UnsupportedOracle("generator element out of range");
            }
            // Word lengths by breadth-first search; also proves the generators generate.
            distance_.assign(static_cast<std::size_t>(n), -1);
            distance_[0] = 0;
            std::deque<int> queue{0};
            while (!queue.empty())
            {
                const int u = queue.front();
                queue.pop_front();
                for (int code = 0; code < 2 * generator_count(); ++code)
                {
                    const int v = table_[static_cast<std::size_t>(u)][static_cast<std::size_t>(letter_element(Letter::from_code(code)))];
                    if (distance_[static_cast<std::size_t>(v)] < 0)
                    {
                        distance_[static_cast<std::size_t>(v)] = distance_[static_cast<std::size_t>(u)] + 1;
                        queue.push_back(v);
                    }
                }
            }
            if (std::find(distance_.begin(), distance_.end(), -1) != distance_.end())
                throw UnsupportedOracle("generators do not generate the whole table group");
        }

        std::vector<std::vector<int>> table_;
        std::vector<int> gens_;
        std::vector<int> inverse_;
        std::vector<int> distance_;
};

// ---------------------------------------------------------------------------
// Surface groups of genus >= 2.

class DehnReducer
{
    public:
        explicit DehnReducer(int genus) : genus_(genus)
        {
            const Word r = surface_relator(genus);
            const Word ri = inverse(r);
            const std::size_t len = r.size();
            by_first_.assign(4 * static_cast<std::size_t>(genus), {});
            for (const Word* base : {&r, &ri})
            {
                for (std::size_t shift = 0; shift < len; ++shift)
                {
                    ElementKey rot;
                    rot.reserve(len);
                    for (std::size_t i = 0; i < len; ++i)
                        rot.push_back((*base)[(shift + i) % len].code());
                    by_first_[static_cast<std::size_t>(rot.front())].push_back(std::move(rot));
                }
            }
        }

        int half() const { return 2 * genus_; }
        int length() const { return 4 * genus_; }

        /// Relator rotations starting with the given letter code.
        const std::vector<ElementKey>& starting_with(int code) const { return by_first_[static_cast<std::size_t>(code)]; }

        ElementKey reduce(ElementKey w) const
        {
            bool changed = true;
            while (changed)
            {
                changed = false;
                free_reduce(w);
                for (std::size_t i = 0; i < w.size() && !changed; ++i)
                {
                    for (const ElementKey& rot : starting_with(w[i]))
                    {
                        std::size_t k = 0;
                        while (k < rot.size() && i + k < w.size() && w[i + k] == rot[k])
                            ++k;
                        if (static_cast<int>(k) > half())
                        {
                            // rot = p q with p = w[i, i+k); p equals q^-1 in the group.
                            ElementKey replacement;
                            for (std::size_t j = rot.size(); j > k; --j)
                                replacement.push_back(rot[j - 1] ^ 1);
                            ElementKey next(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(i));
                            next.insert(next.end(), replacement.begin(), replacement.end());
                            next.insert(next.end(), w.begin() + static_cast<std::ptrdiff_t>(i + k), w.end());
                            w = std::move(next);
                            changed = true;
                            break;
                        }
                    }
                }
            }
            return w;
        }

        static void free_reduce(ElementKey& w)
        {
            ElementKey out;
            out.reserve(w.size());
            for (int c : w)
            {
                if (!out.empty() && out.back() == (c ^ 1))
                    out.pop_back();
                else
                    out.push_back(c);
            }
            w = std::move(out);
        }

    private:
        int genus_;
        std::vector<std::vector<ElementKey>> by_first_;
};

class SurfaceOracle final : public GroupOracle
{
    public:
        SurfaceOracle(std::vector<Generator> generators, int genus)
            : GroupOracle(std::move(generators)), dehn_(genus)
        {
            if (genus < 2)
                throw UnsupportedOracle("surface oracle needs genus >= 2 (Dehn's algorithm)");
            if (generator_count() != 2 * genus)
                throw UnsupportedOracle("surface oracle of genus " + std::to_string(genus) + " needs " +
                                        std::to_string(2 * genus) + " generators");
        }

        OracleKind kind() const override { return OracleKind::surface; }

        ElementKey normal_form(const Word& word) const override
        {
            check_word(word);
            return canonical(codes_from_word(word));
        }

        ElementKey multiply(const ElementKey& a, const ElementKey& b) const override
        {
            ElementKey w = a;
            w.insert(w.end(), b.begin(), b.end());
            return canonical(std::move(w));
        }

        ElementKey multiply_letter(const ElementKey& a, Letter letter) const override
        {
            ElementKey w = a;
            w.push_back(letter.code());
            return canonical(std::move(w));
        }

        ElementKey invert(const ElementKey& a) const override
        {
            ElementKey w(a.rbegin(), a.rend());
            for (int& c : w)
                c ^= 1;
            return canonical(std::move(w));
        }

        ElementKey identity() const override { return {}; }

        int word_length(const ElementKey& a) const override { return static_cast<int>(a.size()); }

        ElementKey dehn_reduce(ElementKey w) const { return dehn_.reduce(std::move(w)); }

    private:
        std::vector<int> abelianisation(const ElementKey& w) const
        {
            std::vector<int> ab(static_cast<std::size_t>(generator_count()), 0);
            for (int c : w)
                ab[static_cast<std::size_t>(c / 2)] += (c & 1) ? -1 : 1;
            return ab;
        }

        static int l1(const std::vector<int>& v)
        {
            int s = 0;
            for (int x : v)
                s += std::abs(x);
            return s;
        }

        // Rejects prefixes that cannot start a shortlex-least geodesic: the new
        // last letter may not close a cancellation, a piece longer than half a
        // relator, or a half relator whose complementary half is shortlex-smaller.
        bool admissible_suffix(const ElementKey& u) const
        {
            const std::size_t n = u.size();
            if (n >= 2 && u[n - 1] == (u[n - 2] ^ 1))
                return false;
            const std::size_t half = static_cast<std::size_t>(dehn_.half());
            for (std::size_t len : {half, half + 1})
            {
                if (n < len)
                    continue;
                const std::size_t start = n - len;
                for (const ElementKey& rot : dehn_.starting_with(u[start]))
                {
                    if (!std::equal(u.begin() + static_cast<std::ptrdiff_t>(start), u.end(), rot.begin()))
                        continue;
                    if (len > half)
                        return false;
                    ElementKey other;
                    for (std::size_t j = rot.size(); j > len; --j)
                        other.push_back(rot[j - 1] ^ 1);
                    if (std::lexicographical_compare(other.begin(), other.end(),
                                                     u.begin() + static_cast<std::ptrdiff_t>(start), u.end()))
                        return false;
                }
            }
            return true;
        }

        ElementKey canonical(ElementKey word) const
        {
            const ElementKey target = dehn_.reduce(std::move(word));
            if (target.empty())
                return {};
            ElementKey target_inverse(target.rbegin(), target.rend());
            for (int& c : target_inverse)
                c ^= 1;
            const std::vector<int> goal = abelianisation(target);
            const int letters = 2 * generator_count();

            ElementKey u;
            std::vector<int> ab(goal.size(), 0);
            std::function<bool(int)> search = [&](int remaining) -> bool {
                std::vector<int> diff(goal.size());
                for (std::size_t i = 0; i < goal.size(); ++i)
                    diff[i] = goal[i] - ab[i];
                if (l1(diff) > remaining)
                    return false;
                if (remaining == 0)
                {
                    ElementKey test = u;
                    test.insert(test.end(), target_inverse.begin(), target_inverse.end());
                    return dehn_.reduce(std::move(test)).empty();
                }
                for (int code = 0; code < letters; ++code)
                {
                    u.push_back(code);
                    if (admissible_suffix(u))
                    {
                        ab[static_cast<std::size_t>(code / 2)] += (code & 1) ? -1 : 1;
                        const bool found = search(remaining - 1);
                        ab[static_cast<std::size_t>(code / 2)] -= (code & 1) ? -1 : 1;
                        if (found)
                            return true;
                    }
                    u.pop_back();
                }
                return false;
            };

            // Relators have even length, so word lengths share the parity of |target|.
            for (int len = l1(goal); len <= static_cast<int>(target.size()); len += 2)
            {
                u.clear();
                std::fill(ab.begin(), ab.end(), 0);
                if (search(len))
                    return u;
            }
            return target;  // unreachable: target itself is a representative
        }

        DehnReducer dehn_;
};

}  // namespace

std::shared_ptr<const GroupOracle> make_free_oracle(std::vector<Generator> generators)
{
    return std::make_shared<FreeOracle>(std::move(generators));
}

std::shared_ptr<const GroupOracle> make_free_abelian_oracle(std::vector<Generator> generators)
{
    return std::make_shared<FreeAbelianOracle>(std::move(generators));
}

std::shared_ptr<const GroupOracle> make_finite_oracle(std::vector<Generator> generators,
                                                      std::vector<std::vector<int>> table,
                                                      std::vector<int> generator_elements)
{
    return std::make_shared<FiniteOracle>(std::move(generators), std::move(table), std::move(generator_elements));
}

std::shared_ptr<const GroupOracle> make_surface_oracle(std::vector<Generator> generators, int genus)
{
    return std::make_shared<SurfaceOracle>(std::move(generators), genus);
}

Word surface_relator(int genus)
{
    Word r;
    for (int i = 0; i < genus; ++i)
    {
        const int a = 2 * i, b = 2 * i + 1;
        r.push_back({a, false});
        r.push_back({b, false});
        r.push_back({a, true});
        r.push_back({b, true});
    }
    return r;
}

Word surface_dehn_reduce(const Word& word, int genus)
{
    if (genus < 2)
        throw UnsupportedOracle("Dehn reduction needs genus >= 2");
    return word_from_codes(DehnReducer(genus).reduce(codes_from_word(word)));
}

}  // namespace isofill
