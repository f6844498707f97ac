#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "isofill/word.hpp"

namespace isofill {

enum class OracleKind { free, free_abelian, finite, surface };

std::string to_string(OracleKind kind);

/// Oracle-specific canonical data for a group element. Two words are equal in
/// the group exactly when their keys are equal.
using ElementKey = std::vector<int>;

struct ElementKeyHash
{
    std::size_t operator()(const ElementKey& key) const noexcept;
};

/**
 * Decides equality in one concrete group and supplies canonical forms.
 *
 * Keys per kind:
 *  - free: the freely reduced word as letter codes;
 *  - free-abelian: the exponent vector in generator order;
 *  - finite: a single multiplication-table index (0 is the identity);
 *  - surface: the shortlex-least word representing the element, as letter codes.
 *
 * Oracles are immutable after construction and safe to share between threads.
 */
class GroupOracle
{
    public:
        explicit GroupOracle(std::vector<Generator> generators) : generators_(std::move(generators)) {}
        virtual ~GroupOracle() = default;

        virtual OracleKind kind() const = 0;
        virtual ElementKey normal_form(const Word& word) const = 0;
        virtual ElementKey multiply(const ElementKey& a, const ElementKey& b) const = 0;
        virtual ElementKey invert(const ElementKey& a) const = 0;
        virtual ElementKey identity() const = 0;
        /// Right multiplication by one letter; the hot path of ball enumeration.
        virtual ElementKey multiply_letter(const ElementKey& a, Letter letter) const;
        /// Length of a shortest word for the element.
        virtual int word_length(const ElementKey& a) const = 0;
        /// Canonical form string; empty exactly for the identity.
        virtual std::string render(const ElementKey& a) const;
        /// Inverse of render.
        virtual ElementKey parse_canonical(std::string_view text) const;
        /// Group order for finite oracles.
        virtual std::optional<std::size_t> order() const { return std::nullopt; }

        const std::vector<Generator>& generators() const { return generators_; }
        int generator_count() const { return static_cast<int>(generators_.size()); }

    protected:
        void check_word(const Word& word) const;

    private:
        std::vector<Generator> generators_;
};

std::shared_ptr<const GroupOracle> make_free_oracle(std::vector<Generator> generators);

std::shared_ptr<const GroupOracle> make_free_abelian_oracle(std::vector<Generator> generators);

/**
 * Finite group given by a multiplication table over elements 0..N-1, where 0
 * must be the identity, together with the table element assigned to each
 * generator. The table is checked for the group axioms and the generators are
 * checked to generate it; violations raise UnsupportedOracle.
 */
std::shared_ptr<const GroupOracle> make_finite_oracle(std::vector<Generator> generators,
                                                      std::vector<std::vector<int>> table,
                                                      std::vector<int> generator_elements);

/**
 * Fundamental group of the closed orientable surface of genus `genus >= 2`
 * with the standard presentation a1 b1 a1^-1 b1^-1 ... ag bg ag^-1 bg^-1;
 * generators are expected in the order a1 b1 a2 b2 ...
 *
 * Equality is decided by Dehn's algorithm. Canonical forms are shortlex-least
 * representatives found by iterative deepening below the Dehn-reduced length,
 * so their cost grows exponentially with word length.
 */
std::shared_ptr<const GroupOracle> make_surface_oracle(std::vector<Generator> generators, int genus);

/// Dehn reduction for the standard genus-g surface relator (exposed for tests).
Word surface_dehn_reduce(const Word& word, int genus);

/// The standard surface relator a1 b1 a1^-1 b1^-1 ... in generator indices.
Word surface_relator(int genus);

}  // namespace isofill
