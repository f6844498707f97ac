#include "isofill/complex.hpp"

#include "isofill/errors.hpp"

namespace isofill {

Cell vertex(const GroupElement& at) { return Cell{0, 0, at}; }
Cell edge(int generator, const GroupElement& at) { return Cell{1, generator, at}; }
Cell disc(int relator, const GroupElement& at) { return Cell{2, relator, at}; }

void check_cell(const Presentation& presentation, const Cell& cell)
{
    if (cell.translate.oracle_ptr() != presentation.oracle)
        throw OracleMismatch();
    bool ok = false;
    switch (cell.dimension)
    {
        case 0: ok = cell.orbit == 0; break;
        case 1: ok = cell.orbit >= 0 && cell.orbit < presentation.generator_count(); break;
        case 2: ok = cell.orbit >= 0 && cell.orbit < static_cast<int>(presentation.relators.size()); break;
        default: ok = false;
    }
    if (!ok)
        throw PreconditionFailed("cell (" + std::to_string(cell.dimension) + ", " + std::to_string(cell.orbit) +
                                 ") does not exist in the presentation complex");
}

// ---------------------------------------------------------------------------

Rational Chain::coefficient(const Cell& cell) const
{
    auto it = terms_.find(cell);
    return it == terms_.end() ? Rational(0) : it->second;
}

void Chain::add(const Cell& cell, const Rational& value)
{
    if (cell.dimension != dimension_)
        throw PreconditionFailed("cell of dimension " + std::to_string(cell.dimension) + " added to a " +
                                 std::to_string(dimension_) + "-chain");
    if (value == 0)
        return;
    auto [it, inserted] = terms_.try_emplace(cell, value);
    if (!inserted)
    {
        it->second += value;
        if (it->second == 0)
            terms_.erase(it);
    }
}

Chain& Chain::operator+=(const Chain& other)
{
    for (const auto& [cell, q] : other.terms_)
        add(cell, q);
    return *this;
}

Chain& Chain::operator-=(const Chain& other)
{
    for (const auto& [cell, q] : other.terms_)
        add(cell, -q);
    return *this;
}

Chain& Chain::operator*=(const Rational& q)
{
    if (q == 0)
    {
        terms_.clear();
        return *this;
    }
    for (auto& [cell, v] : terms_)
        v *= q;
    return *this;
}

Rational l1_norm(const Chain& chain)
{
    Rational sum = 0;
    for (const auto& [cell, q] : chain.terms())
        sum += abs_value(q);
    return sum;
}

std::set<Cell> support(const Chain& chain)
{
    std::set<Cell> out;
    for (const auto& [cell, q] : chain.terms())
        out.insert(cell);
    return out;
}

Cell translate(const GroupElement& g, const Cell& cell)
{
    return Cell{cell.dimension, cell.orbit, mul(g, cell.translate)};
}

Chain translate(const GroupElement& g, const Chain& chain)
{
    Chain out(chain.dimension());
    for (const auto& [cell, q] : chain.terms())
        out.add(translate(g, cell), q);
    return out;
}

namespace {

// Shared by trace_word and build_window: walks the word with raw keys.
template <typename Emit>
void walk(const GroupOracle& oracle, const Word& word, ElementKey h, Emit&& emit)
{
    for (const Letter& l : word)
    {
        if (!l.inverse)
        {
            ElementKey next = oracle.multiply_letter(h, l);
            emit(l.generator, std::move(h), Rational(1));
            h = std::move(next);
        }
        else
        {
            h = oracle.multiply_letter(h, l);
            emit(l.generator, h, Rational(-1));
        }
    }
}

}  // namespace

Chain trace_word(const Presentation& presentation, const Word& word, const GroupElement& start)
{
    if (start.oracle_ptr() != presentation.oracle)
        throw OracleMismatch();
    Chain out(1);
    walk(*presentation.oracle, word, start.key(), [&](int gen, ElementKey at, const Rational& sign) {
        out.add(edge(gen, GroupElement(presentation.oracle, std::move(at))), sign);
    });
    return out;
}

Chain cell_boundary(const Presentation& presentation, const Cell& cell)
{
    check_cell(presentation, cell);
    switch (cell.dimension)
    {
        case 2: return trace_word(presentation, presentation.relators[static_cast<std::size_t>(cell.orbit)], cell.translate);
        case 1:
        {
            Chain out(0);
            out.add(vertex(GroupElement(presentation.oracle,
                                        presentation.oracle->multiply_letter(cell.translate.key(), Letter{cell.orbit, false}))),
                    1);
            out.add(vertex(cell.translate), -1);
            return out;
        }
        default: return Chain(-1);
    }
}

Chain boundary(const Presentation& presentation, const Chain& chain)
{
    Chain out(chain.dimension() - 1);
    for (const auto& [cell, q] : chain.terms())
        out += q * cell_boundary(presentation, cell);
    return out;
}

// ---------------------------------------------------------------------------

WindowComplex::WindowComplex(Presentation presentation, int radius, std::vector<Cell> cells0, std::vector<Cell> cells1,
                             std::vector<Cell> cells2, SparseMatrix boundary1, SparseMatrix boundary2)
    : presentation_(std::move(presentation)),
      radius_(radius),
      cells_{std::move(cells0), std::move(cells1), std::move(cells2)},
      boundary1_(std::move(boundary1)),
      boundary2_(std::move(boundary2))
{
    for (int d = 0; d < 3; ++d)
    {
        auto& idx = index_[d];
        idx.reserve(cells_[d].size());
        for (std::size_t i = 0; i < cells_[d].size(); ++i)
            idx.emplace(cells_[d][i], i);
    }
}

std::span<const Cell> WindowComplex::cells(int dimension) const
{
    if (dimension < 0 || dimension > 2)
        return {};
    return cells_[dimension];
}

std::optional<std::size_t> WindowComplex::index_of(const Cell& cell) const
{
    if (cell.dimension < 0 || cell.dimension > 2)
        return std::nullopt;
    const auto& idx = index_[cell.dimension];
    auto it = idx.find(cell);
    if (it == idx.end())
        return std::nullopt;
    return it->second;
}

std::vector<Rational> WindowComplex::to_vector(const Chain& chain) const
{
    if (chain.dimension() < 0 || chain.dimension() > 2)
        throw PreconditionFailed("chain dimension outside 0..2");
    std::vector<Rational> v(cells_[chain.dimension()].size());
    for (const auto& [cell, q] : chain.terms())
    {
        auto i = index_of(cell);
        if (!i)
            throw OutOfWindow("cell (" + std::to_string(cell.dimension) + ", " + std::to_string(cell.orbit) + ", '" +
                              cell.translate.canonical_form() + "') is outside the radius-" + std::to_string(radius_) +
                              " window");
        v[*i] = q;
    }
    return v;
}

Chain WindowComplex::to_chain(int dimension, std::span<const Rational> coefficients) const
{
    if (dimension < 0 || dimension > 2 || coefficients.size() != cells_[dimension].size())
        throw PreconditionFailed("coefficient vector does not match the window cells");
    Chain out(dimension);
    for (std::size_t i = 0; i < coefficients.size(); ++i)
        out.add(cells_[dimension][i], coefficients[i]);
    return out;
}

WindowComplex build_window(const Presentation& presentation, int radius, std::size_t ball_cap)
{
    if (radius < 1)
        throw PreconditionFailed("window radius must be at least 1");
    const auto& oracle = *presentation.oracle;
    const std::vector<GroupElement> centre = ball(presentation, radius, ball_cap);

    std::vector<Cell> cells2;
    for (const GroupElement& g : centre)
        for (std::size_t i = 0; i < presentation.relators.size(); ++i)
            cells2.push_back(disc(static_cast<int>(i), g));

    std::vector<Cell> cells1;
    std::unordered_map<Cell, std::size_t, CellHash> index1;
    auto add_edge = [&](const Cell& e) {
        auto [it, inserted] = index1.try_emplace(e, cells1.size());
        if (inserted)
            cells1.push_back(e);
        return it->second;
    };
    for (const GroupElement& g : centre)
        for (int s = 0; s < presentation.generator_count(); ++s)
            add_edge(edge(s, g));

    std::vector<std::vector<std::pair<std::size_t, Rational>>> columns(cells2.size());
    for (std::size_t j = 0; j < cells2.size(); ++j)
    {
        const Word& relator = presentation.relators[static_cast<std::size_t>(cells2[j].orbit)];
        walk(oracle, relator, cells2[j].translate.key(), [&](int gen, ElementKey at, const Rational& sign) {
            const std::size_t row = add_edge(edge(gen, GroupElement(presentation.oracle, std::move(at))));
            columns[j].emplace_back(row, sign);
        });
    }
    SparseMatrix d2(cells1.size(), cells2.size());
    for (std::size_t j = 0; j < columns.size(); ++j)
        for (const auto& [row, sign] : columns[j])
            d2.add(row, j, sign);

    std::vector<Cell> cells0;
    std::unordered_map<Cell, std::size_t, CellHash> index0;
    auto add_vertex = [&](const Cell& v) {
        auto [it, inserted] = index0.try_emplace(v, cells0.size());
        if (inserted)
            cells0.push_back(v);
        return it->second;
    };
    std::vector<std::pair<std::size_t, std::size_t>> ends(cells1.size());
    for (std::size_t j = 0; j < cells1.size(); ++j)
    {
        const Cell& e = cells1[j];
        const std::size_t tail = add_vertex(vertex(e.translate));
        const std::size_t head = add_vertex(
            vertex(GroupElement(presentation.oracle, oracle.multiply_letter(e.translate.key(), Letter{e.orbit, false}))));
        ends[j] = {tail, head};
    }
    SparseMatrix d1(cells0.size(), cells1.size());
    for (std::size_t j = 0; j < cells1.size(); ++j)
    {
        d1.add(ends[j].second, j, 1);
        d1.add(ends[j].first, j, -1);
    }

    return WindowComplex(presentation, radius, std::move(cells0), std::move(cells1), std::move(cells2), std::move(d1),
                         std::move(d2));
}

Chain boundary(const WindowComplex& window, const Chain& chain)
{
    const int d = chain.dimension();
    if (d != 1 && d != 2)
        throw PreconditionFailed("window boundary needs a 1- or 2-chain");
    const SparseMatrix& m = d == 2 ? window.boundary2() : window.boundary1();
    const std::vector<Rational> x = window.to_vector(chain);
    return window.to_chain(d - 1, m.multiply(x));
}

}  // namespace isofill
