#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace isofill {

/** Base class of every error raised by the library. */
class Error : public std::runtime_error
{
    public:
        explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/** Malformed presentation, word, rational or chain file. */
class ParseError : public Error
{
    public:
        explicit ParseError(const std::string& what) : Error("parse error: " + what) {}
};

/** The declared oracle cannot decide equality for this presentation. */
class UnsupportedOracle : public Error
{
    public:
        explicit UnsupportedOracle(const std::string& what) : Error("unsupported oracle: " + what) {}
};

/** Elements (or cells) belonging to different oracles were combined. */
class OracleMismatch : public Error
{
    public:
        OracleMismatch() : Error("oracle mismatch: elements come from different groups") {}
};

/**
 * A configured resource cap was hit: ball size, simplex pivots, enumeration
 * counts. The CLI maps this to exit code 3.
 */
class BudgetExceeded : public Error
{
    public:
        explicit BudgetExceeded(const std::string& what) : Error("budget exceeded: " + what) {}
};

/** A chain is not supported inside the window complex. */
class OutOfWindow : public Error
{
    public:
        explicit OutOfWindow(const std::string& what) : Error("out of window: " + what) {}
};

/** brute_force_min refuses programs with more than twelve columns. */
class TooLarge : public Error
{
    public:
        explicit TooLarge(const std::string& what) : Error("too large: " + what) {}
};

/** An operation that needs an infinite group was handed a finite one. */
class FiniteGroup : public Error
{
    public:
        FiniteGroup() : Error("finite group: no disjoint translate exists for every pair of sets") {}
};

/** An operation that needs a finite group was handed an infinite one. */
class NotFinite : public Error
{
    public:
        NotFinite() : Error("not finite: the presentation oracle is not a finite table") {}
};

/** The window is too small for the requested construction. */
class WindowTooSmall : public Error
{
    public:
        WindowTooSmall(const std::string& what, int required_radius)
            : Error("window too small: " + what), required_radius_(required_radius) {}

        /// Smallest radius known to be needed, or -1 when it could not be determined.
        int required_radius() const { return required_radius_; }

    private:
        int required_radius_;
};

/** A precondition other than the ones above was violated. */
class PreconditionFailed : public Error
{
    public:
        explicit PreconditionFailed(const std::string& what) : Error("precondition failed: " + what) {}
};

}  // namespace isofill
