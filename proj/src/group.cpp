#include "isofill/group.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "isofill/errors.hpp"

namespace isofill {

GroupElement mul(const GroupElement& a, const GroupElement& b)
{
    if (a.oracle_ptr() != b.oracle_ptr())
        throw OracleMismatch();
    return {a.oracle_ptr(), a.oracle().multiply(a.key(), b.key())};
}

GroupElement inv(const GroupElement& a)
{
    return {a.oracle_ptr(), a.oracle().invert(a.key())};
}

int Presentation::max_relator_length() const
{
    std::size_t len = 0;
    for (const Word& r : relators)
        len = std::max(len, r.size());
    return static_cast<int>(len);
}

namespace {

bool is_cyclic_rotation(const Word& a, const Word& b)
{
    if (a.size() != b.size())
        return false;
    if (a.empty())
        return true;
    for (std::size_t shift = 0; shift < a.size(); ++shift)
    {
        bool same = true;
        for (std::size_t i = 0; i < a.size() && same; ++i)
            same = a[(shift + i) % a.size()] == b[i];
        if (same)
            return true;
    }
    return false;
}

Word commutator(int i, int j)
{
    return {{i, false}, {j, false}, {i, true}, {j, true}};
}

void check_free_abelian(const std::vector<Word>& relators, int rank)
{
    for (const Word& r : relators)
    {
        std::vector<int> sums(static_cast<std::size_t>(rank), 0);
        for (const Letter& l : r)
            sums[static_cast<std::size_t>(l.generator)] += l.inverse ? -1 : 1;
        if (std::any_of(sums.begin(), sums.end(), [](int s) { return s != 0; }))
            throw UnsupportedOracle("free-abelian oracle: a relator has nonzero exponent sum");
    }
    for (int i = 0; i < rank; ++i)
    {
        for (int j = i + 1; j < rank; ++j)
        {
            const bool found = std::any_of(relators.begin(), relators.end(), [&](const Word& r) {
                return is_cyclic_rotation(r, commutator(i, j)) || is_cyclic_rotation(r, commutator(j, i));
            });
            if (!found)
                throw UnsupportedOracle("free-abelian oracle needs a commutator relator for every generator pair");
        }
    }
}

}  // namespace

Presentation make_presentation(const std::vector<std::string>& generator_names, const std::vector<Word>& relators,
                               const OracleSpec& spec, bool aspherical)
{
    Presentation p;
    std::set<std::string> names;
    for (std::size_t i = 0; i < generator_names.size(); ++i)
    {
        const std::string& name = generator_names[i];
        if (name.empty() || !names.insert(name).second)
            throw ParseError("generator names must be nonempty and unique ('" + name + "')");
        if (name.front() == '#' || name.find_first_of("^ \t,;:") != std::string::npos)
            throw ParseError("invalid generator name '" + name + "'");
        p.generators.push_back({static_cast<int>(i), name});
    }
    const int n = static_cast<int>(p.generators.size());
    for (const Word& r : relators)
    {
        if (r.empty())
            throw ParseError("relators must be nonempty");
        for (const Letter& l : r)
        {
            if (l.generator < 0 || l.generator >= n)
                throw ParseError("relator uses an unknown generator");
        }
        if (cyclically_reduce(r) != r)
            throw ParseError("relator '" + format_word(r, p.generators) + "' is not cyclically reduced");
    }
    p.relators = relators;
    p.aspherical = aspherical;

    switch (spec.kind)
    {
        case OracleKind::free:
            if (!relators.empty())
                throw UnsupportedOracle("free oracle cannot decide equality with relators present");
            p.oracle = make_free_oracle(p.generators);
            break;
        case OracleKind::free_abelian:
            if (spec.parameter != n)
                throw UnsupportedOracle("free-abelian rank " + std::to_string(spec.parameter) + " does not match " +
                                        std::to_string(n) + " generators");
            check_free_abelian(relators, n);
            p.oracle = make_free_abelian_oracle(p.generators);
            break;
        case OracleKind::finite:
        {
            if (spec.parameter != static_cast<int>(spec.table.size()))
                throw UnsupportedOracle("finite oracle order does not match the table size");
            p.oracle = make_finite_oracle(p.generators, spec.table, spec.generator_elements);
            for (const Word& r : relators)
            {
                if (p.oracle->normal_form(r) != p.oracle->identity())
                    throw UnsupportedOracle("relator '" + format_word(r, p.generators) +
                                            "' is not the identity in the table group");
            }
            break;
        }
        case OracleKind::surface:
        {
            const int genus = spec.parameter;
            if (genus < 2)
                throw UnsupportedOracle("surface oracle needs genus >= 2");
            const Word standard = surface_relator(genus);
            if (relators.size() != 1 ||
                !(is_cyclic_rotation(relators[0], standard) || is_cyclic_rotation(relators[0], inverse(standard))))
                throw UnsupportedOracle("surface oracle needs exactly the standard relator a1 b1 a1^-1 b1^-1 ...");
            p.oracle = make_surface_oracle(p.generators, genus);
            break;
        }
    }
    return p;
}

namespace {

std::string trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep)
{
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true)
    {
        const auto pos = s.find(sep, start);
        out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
        if (pos == std::string_view::npos)
            break;
        start = pos + 1;
    }
    return out;
}

std::vector<std::string> tokens(std::string_view s)
{
    std::istringstream in{std::string(s)};
    std::vector<std::string> out;
    std::string t;
    while (in >> t)
        out.push_back(t);
    return out;
}

int parse_int(const std::string& s, const std::string& what)
{
    int v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw ParseError("expected an integer for " + what + ", got '" + s + "'");
    return v;
}

}  // namespace

Presentation parse_presentation(std::string_view text)
{
    std::vector<std::string> names;
    std::vector<std::string> relator_texts;
    OracleSpec spec;
    bool have_generators = false, have_oracle = false;
    bool aspherical = false;

    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;
    while (std::getline(in, line))
    {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos)
        {
            // '#' inside `elements:`/`table:` is never needed, so it always starts a comment.
            line.erase(hash);
        }
        const std::string body = trim(line);
        if (body.empty())
            continue;
        const auto colon = body.find(':');
        if (colon == std::string::npos)
            throw ParseError("line " + std::to_string(line_no) + ": expected 'key: value'");
        const std::string key = trim(std::string_view(body).substr(0, colon));
        const std::string value = trim(std::string_view(body).substr(colon + 1));
        if (key == "generators")
        {
            names = tokens(value);
            have_generators = true;
        }
        else if (key == "relators")
        {
            if (!value.empty())
            {
                for (const std::string& r : split(value, ','))
                {
                    if (r.empty())
                        throw ParseError("line " + std::to_string(line_no) + ": empty relator");
                    relator_texts.push_back(r);
                }
            }
        }
        else if (key == "oracle")
        {
            const auto parts = tokens(value);
            if (parts.empty())
                throw ParseError("line " + std::to_string(line_no) + ": missing oracle kind");
            const std::string& kind = parts[0];
            if (kind == "free" && parts.size() == 1)
                spec.kind = OracleKind::free;
            else if (kind == "free-abelian" && parts.size() == 2)
                spec.kind = OracleKind::free_abelian;
            else if (kind == "finite" && parts.size() == 2)
                spec.kind = OracleKind::finite;
            else if (kind == "surface" && parts.size() == 2)
                spec.kind = OracleKind::surface;
            else
                throw ParseError("line " + std::to_string(line_no) + ": unknown oracle '" + value + "'");
            if (parts.size() == 2)
                spec.parameter = parse_int(parts[1], "oracle parameter");
            have_oracle = true;
        }
        else if (key == "aspherical")
        {
            if (value == "true")
                aspherical = true;
            else if (value == "false")
                aspherical = false;
            else
                throw ParseError("line " + std::to_string(line_no) + ": aspherical must be true or false");
        }
        else if (key == "table")
        {
            for (const std::string& row : split(value, ';'))
            {
                std::vector<int> entries;
                for (const std::string& t : tokens(row))
                    entries.push_back(parse_int(t, "table entry"));
                spec.table.push_back(std::move(entries));
            }
        }
        else if (key == "elements")
        {
            for (const std::string& t : tokens(value))
                spec.generator_elements.push_back(parse_int(t, "generator element"));
        }
        else
        {
            throw ParseError("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
        }
    }
    if (!have_generators)
        throw ParseError("missing 'generators:' line");
    if (!have_oracle)
        throw ParseError("missing 'oracle:' line");

    std::vector<Generator> gens;
    for (std::size_t i = 0; i < names.size(); ++i)
        gens.push_back({static_cast<int>(i), names[i]});
    std::vector<Word> relators;
    for (const std::string& r : relator_texts)
        relators.push_back(parse_word(r, gens));
    return make_presentation(names, relators, spec, aspherical);
}

Presentation load_presentation(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open presentation file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_presentation(buffer.str());
}

namespace {

std::vector<std::string> default_names(int count)
{
    static const char* small[] = {"x", "y", "z", "w"};
    std::vector<std::string> names;
    for (int i = 0; i < count; ++i)
        names.push_back(count <= 4 ? small[i] : "g" + std::to_string(i + 1));
    return names;
}

}  // namespace

Presentation free_group(int rank)
{
    return make_presentation(default_names(rank), {}, {OracleKind::free, 0, {}, {}}, true);
}

Presentation free_abelian_group(int rank)
{
    std::vector<Word> relators;
    for (int i = 0; i < rank; ++i)
        for (int j = i + 1; j < rank; ++j)
            relators.push_back(commutator(i, j));
    return make_presentation(default_names(rank), relators, {OracleKind::free_abelian, rank, {}, {}}, rank <= 2);
}

Presentation cyclic_group(int n)
{
    if (n < 1)
        throw PreconditionFailed("cyclic group order must be positive");
    std::vector<std::vector<int>> table(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            table[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = (i + j) % n;
    const Word relator(static_cast<std::size_t>(n), Letter{0, false});
    return make_presentation({"x"}, {relator}, {OracleKind::finite, n, table, {n == 1 ? 0 : 1}}, false);
}

Presentation surface_group(int genus)
{
    std::vector<std::string> names;
    for (int i = 1; i <= genus; ++i)
    {
        names.push_back("a" + std::to_string(i));
        names.push_back("b" + std::to_string(i));
    }
    return make_presentation(names, {surface_relator(genus)}, {OracleKind::surface, genus, {}, {}}, true);
}

// ---------------------------------------------------------------------------

BallEnumerator::BallEnumerator(const Presentation& presentation, std::size_t cap)
    : oracle_(presentation.oracle), cap_(cap)
{
    spheres_.push_back({GroupElement(oracle_, oracle_->identity())});
    seen_.insert(oracle_->identity());
}

void BallEnumerator::grow()
{
    std::vector<GroupElement> next;
    if (!exhausted_)
    {
        const int letters = 2 * oracle_->generator_count();
        for (const GroupElement& g : spheres_.back())
        {
            for (int code = 0; code < letters; ++code)
            {
                ElementKey k = oracle_->multiply_letter(g.key(), Letter::from_code(code));
                if (seen_.count(k))
                    continue;
                if (seen_.size() >= cap_)
                    throw BudgetExceeded("ball exceeds the cap of " + std::to_string(cap_) + " elements");
                seen_.insert(k);
                next.emplace_back(oracle_, std::move(k));
            }
        }
        if (next.empty())
            exhausted_ = true;
    }
    spheres_.push_back(std::move(next));
}

const std::vector<GroupElement>& BallEnumerator::sphere(int k)
{
    if (k < 0)
        throw PreconditionFailed("sphere radius must be nonnegative");
    while (static_cast<int>(spheres_.size()) <= k)
        grow();
    return spheres_[static_cast<std::size_t>(k)];
}

std::vector<GroupElement> ball(const Presentation& presentation, int r, std::size_t cap)
{
    if (r < 0)
        throw PreconditionFailed("ball radius must be nonnegative");
    BallEnumerator spheres(presentation, cap);
    std::vector<GroupElement> out;
    for (int k = 0; k <= r; ++k)
    {
        const auto& s = spheres.sphere(k);
        out.insert(out.end(), s.begin(), s.end());
        if (spheres.exhausted())
            break;
    }
    return out;
}

int group_diameter(const Presentation& presentation)
{
    if (!presentation.oracle->order())
        throw NotFinite();
    BallEnumerator spheres(presentation);
    int r = 0;
    while (!spheres.sphere(r + 1).empty())
        ++r;
    return r;
}

}  // namespace isofill
