#include "carcass/cli.hpp"

#include "carcass/carcass_map.hpp"
#include "carcass/conjugacy.hpp"
#include "carcass/derivative.hpp"
#include "carcass/errors.hpp"
#include "carcass/expansion.hpp"
#include "carcass/graph_length.hpp"
#include "carcass/preimage_grid.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>

namespace carcass {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitPrecondition = 3;
constexpr int kExitInternal = 4;

CarcassMap resolve_map(const std::string& spec)
{
    if (spec == "tent") return tent();
    if (spec.rfind("skew:", 0) == 0) return skew_tent(parse_rational(spec.substr(5)));
    if (spec.rfind("homeo:", 0) == 0) {
        std::ifstream in(spec.substr(6));
        if (!in) throw ParseError("cannot open homeomorphism file '" + spec.substr(6) + "'");
        Homeomorphism phi;
        std::string line;
        while (std::getline(in, line)) {
            const auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            std::istringstream fields(line);
            std::string xs, ys;
            if (!(fields >> xs)) continue;
            if (!(fields >> ys)) throw ParseError("homeomorphism vertex needs two rationals");
            phi.push_back({parse_rational(xs), parse_rational(ys)});
        }
        return generate_firm_from_homeomorphism(phi);
    }
    return certify_firm(load_map_file(spec));
}

std::ofstream open_output(const std::string& path)
{
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open output file '" + path + "'");
    return out;
}

std::optional<Rational> parse_skew_parameter(const std::string& spec)
{
    if (spec == "tent") return Rational(1, 2);
    if (spec.rfind("skew:", 0) == 0) return parse_rational(spec.substr(5));
    return std::nullopt;
}

struct Options {
    std::string map_spec;
    std::string map2_spec;
    std::string x_text;
    std::string eps_text = "1/10000";
    std::string side = "both";
    std::string out;
    unsigned depth = 0;
    unsigned window = 8;
    unsigned precision = kDefaultLengthPrecision;
};

int cmd_grid(const Options& opt)
{
    if (opt.depth == 0) throw ParseError("grid needs --depth >= 1");
    const CarcassMap map = resolve_map(opt.map_spec);
    const PreimageGrid grid = build_grid(map, opt.depth);
    const std::string prefix = opt.out.empty() ? "grid" : opt.out;
    for (unsigned n = 1; n <= opt.depth; ++n) {
        auto out = open_output(prefix + ".level" + std::to_string(n) + ".csv");
        write_level_csv(grid, n, out);
    }
    std::cout << "wrote levels 1.." << opt.depth << " to " << prefix << ".level*.csv\n";
    return kExitOk;
}

int cmd_conjugate(const Options& opt)
{
    const PreimageGrid g1 = build_grid(resolve_map(opt.map_spec), opt.depth);
    const PreimageGrid g2 = build_grid(resolve_map(opt.map2_spec), opt.depth);
    const ConjugacyApprox h = build_hn(g1, g2, opt.depth);
    if (!opt.out.empty()) {
        auto out = open_output(opt.out);
        write_conjugacy_csv(h, out);
    } else {
        write_conjugacy_csv(h, std::cout);
    }
    const SemiconjugacyReport report = verify_semiconjugacy(h);
    std::cout << "semiconjugacy: level " << report.level << ", " << report.points_checked
              << " points, " << report.violations.size() << " violations\n";
    if (!report.ok())
        throw InternalCheckError("semiconjugacy identity failed at level " +
                                 std::to_string(report.level));
    if (!opt.x_text.empty()) {
        const auto [lo, hi] =
            eval_h(g1, g2, parse_rational(opt.x_text), parse_rational(opt.eps_text));
        std::cout << "h(" << opt.x_text << ") in [" << fraction_string(lo) << ", "
                  << fraction_string(hi) << "]\n";
    }
    return kExitOk;
}

int cmd_expand(const Options& opt)
{
    const PreimageGrid grid = build_grid(resolve_map(opt.map_spec), 1);
    const GExpansion e = encode(grid, parse_rational(opt.x_text), opt.depth);
    const std::string text = expansion_text(e);
    if (!opt.out.empty()) {
        auto out = open_output(opt.out);
        out << text << "\n";
    }
    std::cout << text << " ("
              << (e.finiteness == Finiteness::finite ? "finite" : "truncated") << ")\n";
    return kExitOk;
}

int cmd_derivative(const Options& opt)
{
    const PreimageGrid g1 = build_grid(resolve_map(opt.map_spec), 1);
    const PreimageGrid g2 = build_grid(resolve_map(opt.map2_spec), 1);
    const Rational x = parse_rational(opt.x_text);
    const auto [left, right] = lr_limits(g1, g2, x, opt.depth, opt.window);
    if (!opt.out.empty()) {
        auto out = open_output(opt.out);
        if (opt.side == "left")
            write_slopes_csv({&left}, out);
        else if (opt.side == "right")
            write_slopes_csv({&right}, out);
        else
            write_slopes_csv({&left, &right}, out);
    }
    std::cout << "left: " << to_string(left.trend);
    if (left.trend == SlopeTrend::converges_finite) std::cout << " (" << left.limit << ")";
    std::cout << "\nright: " << to_string(right.trend);
    if (right.trend == SlopeTrend::converges_finite) std::cout << " (" << right.limit << ")";
    std::cout << "\n";
    return kExitOk;
}

int cmd_length(const Options& opt)
{
    LengthSequence seq;
    if (opt.map2_spec.empty()) {
        const auto v = parse_skew_parameter(opt.map_spec);
        if (!v)
            throw ParseError("closed-form lengths need --map tent or skew:p/q; "
                             "give --map2 for the polyline mode");
        seq = length_sequence_binomial(*v, opt.depth, opt.precision);
    } else {
        const PreimageGrid g1 = build_grid(resolve_map(opt.map_spec), 1);
        const PreimageGrid g2 = build_grid(resolve_map(opt.map2_spec), 1);
        seq = length_sequence_polyline(g1, g2, opt.depth, opt.precision);
    }
    if (!opt.out.empty()) {
        auto out = open_output(opt.out);
        write_lengths_csv(seq, out);
    } else {
        write_lengths_csv(seq, std::cout);
    }
    return kExitOk;
}

int cmd_classify(const Options& opt)
{
    const PreimageGrid g1 = build_grid(resolve_map(opt.map_spec), 1);
    const PreimageGrid g2 = build_grid(resolve_map(opt.map2_spec), 1);
    try {
        const ConjugacyClassification result = classify_conjugacy(g1, g2, opt.depth);
        if (result.kind == ConjugacyClassification::Kind::piecewise_linear) {
            std::cout << "piecewise_linear (stabilised at level " << result.witness_level << ")\n";
        } else {
            std::cout << "singular (x = " << fraction_string(result.evidence_x) << ", "
                      << to_string(result.evidence_side) << " slopes "
                      << to_string(result.evidence_trend) << ")\n";
        }
    } catch (const InconclusiveError& e) {
        std::cout << "inconclusive: " << e.what() << "\n";
    }
    return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args)
{
    CLI::App app{"exact analysis of piecewise-linear unimodal interval maps and their conjugacies"};
    app.require_subcommand(1);

    Options opt;

    auto add_common = [&](CLI::App* cmd, bool needs_map2) {
        cmd->add_option("--map", opt.map_spec, "map: tent | skew:p/q | homeo:path | file path")
            ->required();
        if (needs_map2) cmd->add_option("--map2", opt.map2_spec, "second map (same forms)");
        cmd->add_option("--out", opt.out, "output path (grid: filename prefix)");
    };

    CLI::App* grid = app.add_subcommand("grid", "dump pre-image grid levels as CSV");
    add_common(grid, false);
    grid->add_option("--depth", opt.depth, "levels to compute")->required();

    CLI::App* conjugate = app.add_subcommand("conjugate", "conjugacy approximation vertices + semiconjugacy check");
    add_common(conjugate, true);
    conjugate->get_option("--map2")->required();
    conjugate->add_option("--depth", opt.depth, "approximation level")->required();
    conjugate->add_option("--x", opt.x_text, "also bracket the limit conjugacy at this point");
    conjugate->add_option("--eps", opt.eps_text, "bracket width for --x (default 1/10000)");

    CLI::App* expand = app.add_subcommand("expand", "grid expansion of a point");
    add_common(expand, false);
    expand->add_option("--x", opt.x_text, "point to expand")->required();
    expand->add_option("--depth", opt.depth, "bits to produce")->required();

    CLI::App* derivative = app.add_subcommand("derivative", "one-sided slope sequences and their trend");
    add_common(derivative, true);
    derivative->get_option("--map2")->required();
    derivative->add_option("--x", opt.x_text, "probe point")->required();
    derivative->add_option("--depth", opt.depth, "sequence depth")->default_val(40u);
    derivative->add_option("--window", opt.window, "classification window");
    derivative->add_option("--side", opt.side, "left | right | both")
        ->check(CLI::IsMember({"left", "right", "both"}));

    CLI::App* length = app.add_subcommand("length", "graph-length sequence of the approximations");
    add_common(length, true);
    length->add_option("--depth", opt.depth, "max level")->required();
    length->add_option("--precision", opt.precision, "mantissa bits");

    CLI::App* classify = app.add_subcommand("classify", "piecewise-linear vs singular conjugacy");
    add_common(classify, true);
    classify->get_option("--map2")->required();
    classify->add_option("--depth", opt.depth, "probe depth")->default_val(12u);

    // CLI11 wants argv-style reversed arguments.
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInput;
    }

    try {
        if (grid->parsed()) return cmd_grid(opt);
        if (conjugate->parsed()) return cmd_conjugate(opt);
        if (expand->parsed()) return cmd_expand(opt);
        if (derivative->parsed()) return cmd_derivative(opt);
        if (length->parsed()) return cmd_length(opt);
        if (classify->parsed()) return cmd_classify(opt);
    } catch (const NotFirmError& e) {
        std::cerr << "precondition: " << e.what() << "\n";
        return kExitPrecondition;
    } catch (const NotFirmWithinBoundError& e) {
        std::cerr << "precondition: " << e.what() << "\n";
        return kExitPrecondition;
    } catch (const LevelMissingError& e) {
        std::cerr << "precondition: " << e.what() << "\n";
        return kExitPrecondition;
    } catch (const DepthCapExceededError& e) {
        std::cerr << "precondition: " << e.what() << "\n";
        return kExitPrecondition;
    } catch (const InternalCheckError& e) {
        std::cerr << "internal invariant violated: " << e.what() << "\n";
        return kExitInternal;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitInput;
}

}  // namespace carcass
