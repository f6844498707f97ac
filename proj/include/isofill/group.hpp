#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "isofill/oracle.hpp"
#include "isofill/word.hpp"

namespace isofill {

inline constexpr std::size_t kDefaultBallCap = 200000;

/**
 * An element of the group behind an oracle, held in canonical form.
 * Equality is equality of canonical keys under the same oracle instance.
 */
class GroupElement
{
    public:
        GroupElement(std::shared_ptr<const GroupOracle> oracle, ElementKey key)
            : oracle_(std::move(oracle)), key_(std::move(key)) {}

        const ElementKey& key() const { return key_; }
        const GroupOracle& oracle() const { return *oracle_; }
        const std::shared_ptr<const GroupOracle>& oracle_ptr() const { return oracle_; }

        /// Oracle-specific canonical form; empty for the identity.
        std::string canonical_form() const { return oracle_->render(key_); }
        bool is_identity() const { return key_ == oracle_->identity(); }
        int word_length() const { return oracle_->word_length(key_); }

        friend bool operator==(const GroupElement& a, const GroupElement& b)
        {
            return a.oracle_ == b.oracle_ && a.key_ == b.key_;
        }
        friend bool operator<(const GroupElement& a, const GroupElement& b)
        {
            if (a.key_ != b.key_)
                return a.key_ < b.key_;
            return a.oracle_.owner_before(b.oracle_);
        }

    private:
        std::shared_ptr<const GroupOracle> oracle_;
        ElementKey key_;
};

struct GroupElementHash
{
    std::size_t operator()(const GroupElement& g) const noexcept { return ElementKeyHash{}(g.key()); }
};

using ElementSet = std::unordered_set<GroupElement, GroupElementHash>;

/// Throws OracleMismatch unless both elements come from the same oracle.
GroupElement mul(const GroupElement& a, const GroupElement& b);
GroupElement inv(const GroupElement& a);

/**
 * A finite presentation together with the oracle that decides its word
 * problem. Constructed only through make_presentation / parse_presentation,
 * which check that the relators and the oracle agree where that is decidable.
 */
struct Presentation
{
    std::vector<Generator> generators;
    std::vector<Word> relators;
    std::shared_ptr<const GroupOracle> oracle;
    /// User assertion that the presentation 2-complex is aspherical.
    bool aspherical = false;

    OracleKind oracle_kind() const { return oracle->kind(); }
    int generator_count() const { return static_cast<int>(generators.size()); }
    int max_relator_length() const;

    GroupElement identity() const { return {oracle, oracle->identity()}; }
    GroupElement element(const Word& word) const { return {oracle, oracle->normal_form(word)}; }
    GroupElement element(std::string_view word) const { return element(parse(word)); }
    /// Inverse of GroupElement::canonical_form.
    GroupElement element_from_canonical(std::string_view text) const { return {oracle, oracle->parse_canonical(text)}; }

    Word parse(std::string_view word) const { return parse_word(word, generators); }
    std::string format(const Word& word) const { return format_word(word, generators); }
};

struct OracleSpec
{
    OracleKind kind = OracleKind::free;
    /// Rank for free-abelian, order for finite, genus for surface.
    int parameter = 0;
    std::vector<std::vector<int>> table;
    std::vector<int> generator_elements;
};

/**
 * Validates and assembles a presentation. Relators must be nonempty and
 * cyclically reduced; the oracle must match the relators:
 *  - free: no relators;
 *  - free-abelian d: d generators, every relator has zero exponent sums and
 *    every generator pair has a commutator relator;
 *  - finite N: an N-element table in which every relator evaluates to 1;
 *  - surface g: 2g generators and the standard relator (up to rotation and
 *    inversion).
 * Throws ParseError for malformed relators, UnsupportedOracle otherwise.
 */
Presentation make_presentation(const std::vector<std::string>& generator_names, const std::vector<Word>& relators,
                               const OracleSpec& oracle, bool aspherical = false);

/**
 * Parses the line-oriented text format:
 *
 *     generators: x y
 *     relators: x y x^-1 y^-1
 *     oracle: free-abelian 2
 *     aspherical: true
 *
 * Several relators are separated by commas or given on repeated `relators:`
 * lines. Finite oracles add `table:` (rows separated by `;`) and `elements:`
 * (one table index per generator). `#` starts a comment.
 */
Presentation parse_presentation(std::string_view text);
Presentation load_presentation(const std::string& path);

// Ready-made presentations.
Presentation free_group(int rank);
Presentation free_abelian_group(int rank);
/// <x | x^n> with the cyclic multiplication table.
Presentation cyclic_group(int n);
Presentation surface_group(int genus);

/**
 * Breadth-first enumeration of word-metric spheres in shortlex order.
 *
 * Sphere k lists the elements of word length k ordered by their shortlex-least
 * representative; the first discovery of an element while scanning sphere k-1
 * in order and letters in code order is exactly that representative.
 */
class BallEnumerator
{
    public:
        explicit BallEnumerator(const Presentation& presentation, std::size_t cap = kDefaultBallCap);

        /// Elements of word length exactly `k`; throws BudgetExceeded past the cap.
        const std::vector<GroupElement>& sphere(int k);
        /// True once some sphere came out empty (finite group exhausted).
        bool exhausted() const { return exhausted_; }
        std::size_t size() const { return seen_.size(); }

    private:
        void grow();

        std::shared_ptr<const GroupOracle> oracle_;
        std::size_t cap_;
        std::vector<std::vector<GroupElement>> spheres_;
        std::unordered_set<ElementKey, ElementKeyHash> seen_;
        bool exhausted_ = false;
};

/// All elements of word length <= r, in shortlex order, without duplicates.
std::vector<GroupElement> ball(const Presentation& presentation, int r, std::size_t cap = kDefaultBallCap);

/// Smallest r with ball(r) == G for a finite oracle; throws NotFinite otherwise.
int group_diameter(const Presentation& presentation);

}  // namespace isofill
