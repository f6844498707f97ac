#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "isofill/chain_io.hpp"
#include "isofill/errors.hpp"
#include "isofill/filling.hpp"

namespace isofill::cli {
namespace {

struct CommonOptions
{
    std::string presentation;
    std::optional<int> radius;
    std::size_t ball_cap = kDefaultBallCap;
    std::size_t pivot_limit = SolverOptions{}.pivot_limit;
    std::string out_path;
    bool verbose = false;
    std::ostream* trace = nullptr;

    SolverOptions solver() const { return {pivot_limit, verbose ? trace : nullptr}; }
};

void add_common(CLI::App& cmd, CommonOptions& o, bool with_out)
{
    cmd.add_option("--presentation,-p", o.presentation, "Presentation file")->required();
    cmd.add_option("--radius,-r", o.radius, "Window radius")->check(CLI::PositiveNumber);
    cmd.add_option("--ball-cap", o.ball_cap, "Largest ball enumerated")->check(CLI::PositiveNumber);
    cmd.add_option("--pivot-limit", o.pivot_limit, "Simplex pivots allowed per solve")->check(CLI::PositiveNumber);
    cmd.add_flag("--verbose,-v", o.verbose, "Dump every simplex tableau to standard error");
    if (with_out)
        cmd.add_option("--out,-o", o.out_path, "Output file");
}

/// Largest word length of a cell's base point.
int reach(const Chain& c)
{
    int r = 0;
    for (const auto& [cell, q] : c.terms())
        r = std::max(r, cell.translate.word_length());
    return r;
}

std::vector<Rational> parse_rationals(const std::vector<std::string>& items, const char* what)
{
    std::vector<Rational> out;
    for (const std::string& s : items)
    {
        Rational q = parse_rational(s);
        if (q <= 0)
            throw ParseError(std::string(what) + " must be positive, got '" + s + "'");
        out.push_back(q);
    }
    return out;
}

// ---------------------------------------------------------------------------

struct FillArgs
{
    CommonOptions common;
    std::optional<std::string> cycle;
    std::string chain_path;
    std::string scale = "1";
};

int cmd_fill(const FillArgs& a, std::ostream& out, std::ostream& err)
{
    const Presentation p = load_presentation(a.common.presentation);
    if (a.cycle.has_value() == !a.chain_path.empty())
        throw ParseError("give exactly one of --cycle and --chain");
    Chain b = a.cycle ? trace_word(p, p.parse(*a.cycle), p.identity()) : load_chain(p, a.chain_path);
    if (b.dimension() != 1)
        throw ParseError("the chain to fill must be a 1-chain");
    b *= parse_rational(a.scale);

    const int radius = a.common.radius.value_or(std::max(1, reach(b) + 1));
    const WindowComplex w = build_window(p, radius, a.common.ball_cap);
    FillingResult r;
    try
    {
        r = filling_norm(w, b, a.common.solver());
    }
    catch (const OutOfWindow& e)
    {
        err << "no in-window filling: the cycle leaves the window of radius " << radius << "\n";
        return kNoFilling;
    }
    if (!r.feasible())
    {
        err << "no in-window filling at radius " << radius << "\n";
        return kNoFilling;
    }
    out << to_string(*r.value) << "\n";
    if (!a.common.out_path.empty())
        save_chain(r.witness, a.common.out_path);
    return kOk;
}

// ---------------------------------------------------------------------------

struct IsoArgs
{
    CommonOptions common;
    std::vector<std::string> budgets;
    std::string family = "commutator";
    std::vector<int> family_m;
    int ball_radius = 1;
};

bool image_is_zero(const WindowComplex& w)
{
    return w.boundary2().nonzeros() == 0;
}

int cmd_isoperimetric(const IsoArgs& a, std::ostream& out, std::ostream& err)
{
    (void)err;
    const Presentation p = load_presentation(a.common.presentation);
    const std::vector<Rational> budgets = parse_rationals(a.budgets, "budgets");
    if (budgets.empty())
        throw ParseError("--budgets needs at least one value");
    if (!a.family_m.empty() && a.family_m.size() != 1 && a.family_m.size() != budgets.size())
        throw ParseError("--family-m takes one value or one value per budget");
    if (std::any_of(a.family_m.begin(), a.family_m.end(), [](int m) { return m < 1; }))
        throw ParseError("--family-m values must be positive");

    const bool exhaustive = a.family == "exhaustive";
    const int max_m = a.family_m.empty() ? 4 : *std::max_element(a.family_m.begin(), a.family_m.end());
    const bool finite = p.oracle->order().has_value();
    int radius = 0;
    if (a.common.radius)
        radius = *a.common.radius;
    else if (finite)
        radius = std::max(1, group_diameter(p));
    else
        radius = exhaustive ? a.ball_radius + 2 : 2 * max_m;
    const WindowComplex w = build_window(p, radius, a.common.ball_cap);

    std::vector<IsoperimetricSample> rows;
    std::string verdict;
    if (image_is_zero(w))
    {
        for (const Rational& b : budgets)
            rows.push_back({b, 0, "zero", radius});
        verdict = "LINEARLY BOUNDED (image is zero)";
    }
    else if (finite)
    {
        const FiniteConstant k = finite_linear_constant(w, a.common.solver());
        for (const Rational& b : budgets)
            rows.push_back({b, k.constant * b, "extremal-vertex", radius});
        verdict = "f1(l) = (" + to_string(k.constant) + ") l";
    }
    else
    {
        if (exhaustive)
        {
            const Rational top = *std::max_element(budgets.begin(), budgets.end());
            const int max_l1 = static_cast<int>(Integer(numerator(top) / denominator(top)));
            const std::vector<LabeledCycle> cycles = exhaustive_cycles(w, a.ball_radius, max_l1);
            rows = isoperimetric_lower_bounds(w, budgets, cycles, a.common.solver());
        }
        else
        {
            CycleFamily family;
            if (a.family == "commutator")
                family = commutator_family(p);
            else if (a.family == "scaled-commutator")
                family = scaled_commutator_family(p);
            else
                throw ParseError("unknown family '" + a.family + "'");
            for (std::size_t i = 0; i < budgets.size(); ++i)
            {
                int upto = 4;
                if (a.family_m.size() == 1)
                    upto = a.family_m.front();
                else if (!a.family_m.empty())
                    upto = a.family_m[i];
                const std::vector<LabeledCycle> members = family_members(family, 1, upto);
                const Rational budget[1] = {budgets[i]};
                rows.push_back(isoperimetric_lower_bounds(w, budget, members, a.common.solver()).front());
            }
        }
        const bool injective = check_injective(w.boundary2());
        bool increasing = rows.size() >= 2;
        for (std::size_t i = 1; i < rows.size(); ++i)
            increasing = increasing && rows[i].lower_bound / rows[i].budget > rows[i - 1].lower_bound / rows[i - 1].budget;
        verdict = injective && increasing ? "NOT LINEARLY BOUNDED (Theorem ⇒ f₁(l₀) = ∞ for some l₀)"
                                          : "UNDETERMINED (certified lower bounds only)";
    }

    std::ostringstream csv;
    csv << "budget,lower_bound_num,lower_bound_den,witness_id,radius\n";
    for (const IsoperimetricSample& s : rows)
        csv << to_string(s.budget) << "," << numerator(s.lower_bound) << "," << denominator(s.lower_bound) << ","
            << s.witness_id << "," << s.radius << "\n";
    if (a.common.out_path.empty())
    {
        out << csv.str();
    }
    else
    {
        std::ofstream file(a.common.out_path);
        if (!file)
            throw Error("cannot write '" + a.common.out_path + "'");
        file << csv.str();
    }
    out << verdict << "\n";
    return kOk;
}

// ---------------------------------------------------------------------------

struct NuArgs
{
    CommonOptions common;
    int l = 1;
    std::string epsilon = "0";
    int max_m = 0;
};

const char* verdict(bool ok) { return ok ? "PASS" : "FAIL"; }

int cmd_nu(const NuArgs& a, std::ostream& out, std::ostream& err)
{
    const Presentation p = load_presentation(a.common.presentation);
    const Rational epsilon = parse_rational(a.epsilon);
    NuOptions opts{a.common.solver(), a.common.ball_cap, a.max_m};

    int radius = a.common.radius.value_or(8);
    std::optional<NuWitness> nu;
    while (!nu)
    {
        const WindowComplex w = build_window(p, radius, a.common.ball_cap);
        try
        {
            nu = nu_witness(w, a.l, epsilon, opts);
        }
        catch (const WindowTooSmall& e)
        {
            if (a.common.radius || e.required_radius() <= radius)
            {
                err << e.what() << "\n";
                return kNoFilling;
            }
            radius = e.required_radius();
        }
    }

    const Rational bound = nu->lower_bound;
    out << "nu witness\n";
    out << "l: " << nu->l << "\n";
    out << "epsilon: " << to_string(nu->epsilon) << "\n";
    out << "radius: " << radius << "\n";
    for (const NuStep& s : nu->steps)
        out << "step " << s.k << ": m=" << s.m << " n=" << to_string(s.n) << " filling=" << to_string(s.filling)
            << " shift=" << (s.shift.empty() ? "1" : s.shift) << "\n";
    out << "|nu|: " << to_string(nu->nu_norm) << "\n";
    out << "|d nu|: " << to_string(nu->boundary_norm) << "\n";
    out << "value: " << to_string(nu->boundary_filling) << "\n";
    out << "bound (l+1)/2 - 2 epsilon: " << to_string(bound) << "\n";
    out << "supports disjoint: " << verdict(nu->supports_disjoint) << "\n";
    out << "|d nu| <= 1: " << verdict(nu->boundary_at_most_one) << "\n";
    out << "|nu| >= bound: " << verdict(nu->norm_at_least_bound) << "\n";
    out << "filling(d nu) >= bound: " << verdict(nu->filling_equals_norm && nu->boundary_filling >= bound) << "\n";
    if (!a.common.out_path.empty())
        save_chain(nu->nu, a.common.out_path);
    return kOk;
}

// ---------------------------------------------------------------------------

int cmd_finite_constant(const CommonOptions& a, std::ostream& out)
{
    const Presentation p = load_presentation(a.presentation);
    if (!p.oracle->order())
        throw NotFinite();
    const int radius = a.radius.value_or(std::max(1, group_diameter(p)));
    const WindowComplex w = build_window(p, radius, a.ball_cap);
    out << to_string(finite_linear_constant(w, a.solver()).constant) << "\n";
    return kOk;
}

int cmd_check(const CommonOptions& a, std::ostream& out)
{
    const Presentation p = load_presentation(a.presentation);
    const WindowComplex w = build_window(p, a.radius.value_or(2), a.ball_cap);
    out << "injective: " << (check_injective(w.boundary2()) ? "true" : "false") << "\n";
    return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Exact l1 filling norms and isoperimetric data for finitely presented groups", "isofill"};
    app.require_subcommand(1);

    FillArgs fill;
    CLI::App* fill_cmd = app.add_subcommand("fill", "Filling norm of a 1-cycle");
    add_common(*fill_cmd, fill.common, true);
    fill_cmd->add_option("--cycle", fill.cycle, "Word whose edge cycle (from the identity) is filled");
    fill_cmd->add_option("--chain", fill.chain_path, "JSON chain file to fill");
    fill_cmd->add_option("--scale", fill.scale, "Rational factor applied to the cycle");

    IsoArgs iso;
    CLI::App* iso_cmd = app.add_subcommand("isoperimetric", "Certified lower bounds for f1");
    add_common(*iso_cmd, iso.common, true);
    iso_cmd->add_option("--budgets", iso.budgets, "Comma-separated positive rationals")->delimiter(',')->required();
    iso_cmd->add_option("--family", iso.family, "commutator, scaled-commutator or exhaustive")
        ->check(CLI::IsMember({"commutator", "scaled-commutator", "exhaustive"}));
    iso_cmd->add_option("--family-m", iso.family_m, "Largest member per budget (or one for all)")->delimiter(',');
    iso_cmd->add_option("--ball-radius", iso.ball_radius, "Support ball for exhaustive cycles")
        ->check(CLI::NonNegativeNumber);

    NuArgs nu;
    CLI::App* nu_cmd = app.add_subcommand("nu", "Blow-up witness nu_l");
    add_common(*nu_cmd, nu.common, true);
    nu_cmd->add_option("--l", nu.l, "Number of steps")->check(CLI::PositiveNumber);
    nu_cmd->add_option("--epsilon", nu.epsilon, "Slack epsilon >= 0");
    nu_cmd->add_option("--max-m", nu.max_m, "Largest family member tried per step")->check(CLI::NonNegativeNumber);

    CommonOptions finite;
    CLI::App* finite_cmd = app.add_subcommand("finite-constant", "Linear isoperimetric constant of a finite group");
    add_common(*finite_cmd, finite, false);

    CommonOptions check;
    CLI::App* check_cmd = app.add_subcommand("check", "Injectivity of the window boundary map");
    add_common(*check_cmd, check, false);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try
    {
        app.parse(reversed);
    }
    catch (const CLI::Success& e)
    {
        return app.exit(e, out, err);
    }
    catch (const CLI::ParseError& e)
    {
        err << "usage error: " << e.what() << "\n";
        return kUsage;
    }

    for (CommonOptions* o : {&fill.common, &iso.common, &nu.common, &finite, &check})
        o->trace = &err;
    try
    {
        if (fill_cmd->parsed())
            return cmd_fill(fill, out, err);
        if (iso_cmd->parsed())
            return cmd_isoperimetric(iso, out, err);
        if (nu_cmd->parsed())
            return cmd_nu(nu, out, err);
        if (finite_cmd->parsed())
            return cmd_finite_constant(finite, out);
        return cmd_check(check, out);
    }
    catch (const BudgetExceeded& e)
    {
        err << e.what() << "\n";
        return kResourceCap;
    }
    catch (const OutOfWindow& e)
    {
        err << "no in-window filling: " << e.what() << "\n";
        return kNoFilling;
    }
    catch (const WindowTooSmall& e)
    {
        err << e.what() << "\n";
        return kNoFilling;
    }
    catch (const Error& e)
    {
        err << e.what() << "\n";
        return kUsage;
    }
}

}  // namespace isofill::cli
