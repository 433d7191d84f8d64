#include <cstdint>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "flatsum/arith.hpp"
#include "flatsum/characters.hpp"
#include "flatsum/error.hpp"
#include "flatsum/expsums.hpp"
#include "flatsum/flatnum.hpp"
#include "flatsum/harness.hpp"
#include "flatsum/report.hpp"

namespace {

using flatsum::ChiSelector;
using flatsum::DirichletCharacter;
using flatsum::Error;
using flatsum::errc;

std::vector<std::string> split_commas(const std::string& text) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t comma = std::min(text.find(',', pos), text.size());
        out.push_back(text.substr(pos, comma - pos));
        pos = comma + 1;
    }
    return out;
}

std::uint64_t parse_seed(const std::string& text) {
    try {
        std::size_t pos = 0;
        const std::uint64_t v = std::stoull(text, &pos, 0);
        if (pos != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw Error(errc::invalid_config, "seed '" + text + "' is not an unsigned integer");
    }
}

// A single character for the sum subcommand; "all" is only meaningful for
// suites, so it is rejected here.
DirichletCharacter single_character(const std::string& selector_text, std::int64_t q) {
    const ChiSelector sel = ChiSelector::parse(selector_text);
    if (sel.kind == ChiSelector::Kind::all)
        throw Error(errc::invalid_config, "sum needs one character: use principal, jacobi, "
                                          "or index:<k,...>");
    auto g = flatsum::CharacterGroup::make(flatsum::factorize(q));
    return sel.select(g).front();
}

std::int64_t integral_threshold(double h) {
    const auto v = static_cast<std::int64_t>(h);
    if (static_cast<double>(v) != h)
        throw Error(errc::bad_threshold, "this sum takes an integer H");
    return v;
}

struct SuiteFlags {
    std::int64_t q_min = 3;
    std::int64_t q_max = 0;
    std::string h_grid;
    int samples = 32;
    std::string seed = "0x5EED";
    double tol = 1e-7;
    int threads = 0;
    std::string chi = "all";
    std::vector<int> r_values;
    std::vector<std::string> deltas;
};

flatsum::SweepConfig to_config(const SuiteFlags& f) {
    flatsum::SweepConfig cfg;
    cfg.q_min = f.q_min;
    cfg.q_max = f.q_max;
    if (!f.h_grid.empty()) cfg.h_grid = flatsum::HGrid::parse(split_commas(f.h_grid));
    cfg.samples = f.samples;
    cfg.seed = parse_seed(f.seed);
    cfg.tol_scale = f.tol;
    cfg.threads = f.threads;
    cfg.chi = ChiSelector::parse(f.chi);
    if (!f.r_values.empty()) cfg.r_values = f.r_values;
    for (const std::string& d : f.deltas) cfg.deltas.push_back(flatsum::parse_decimal(d));
    return cfg;
}

void add_suite_flags(CLI::App* cmd, SuiteFlags& f, bool with_sweep_extras) {
    cmd->add_option("--q-min", f.q_min, "smallest modulus");
    cmd->add_option("--q-max", f.q_max, "largest modulus (0: suite default)");
    cmd->add_option("--h-grid", f.h_grid, "comma list of 1, q, q/2, q/4, q/8");
    cmd->add_option("--samples", f.samples, "sampled (m,n) pairs per modulus");
    cmd->add_option("--seed", f.seed, "sample seed (decimal or 0x hex)");
    cmd->add_option("--tol", f.tol, "identity tolerance scale (times q)");
    cmd->add_option("--threads", f.threads, "worker threads (0: auto)");
    if (with_sweep_extras) {
        cmd->add_option("--chi", f.chi, "character selector for theorem1");
        cmd->add_option("--r", f.r_values, "r values for theorem2/theorem3");
        cmd->add_option("--delta", f.deltas, "delta grid for the zhang target");
    }
}

int emit_and_status(const flatsum::Report& rep, const std::string& format,
                    const std::string& out) {
    const std::string text =
        format == "csv" ? flatsum::render_csv(rep) : flatsum::render_json(rep);
    flatsum::write_report(text, out);
    return rep.pass ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"character sums over flat numbers: exact evaluators and verification suites"};
    app.require_subcommand(1);

    std::string format = "json";
    std::string out = "-";
    app.add_option("--format", format, "report format")
        ->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--out", out, "output path, - for stdout");

    // flat
    auto* flat_cmd = app.add_subcommand("flat", "list the flat numbers mod q");
    flat_cmd->fallthrough();
    // --h would clash with the implicit -h help shortcut, so help is long-form only here.
    flat_cmd->set_help_flag("--help", "print this help message and exit");
    std::int64_t flat_q = 0;
    double flat_h = 0.0;
    flat_cmd->add_option("--q", flat_q, "modulus")->required();
    flat_cmd->add_option("--h", flat_h, "threshold H")->required();

    // sum
    auto* sum_cmd = app.add_subcommand("sum", "evaluate one exponential or flat-number sum");
    sum_cmd->fallthrough();
    sum_cmd->set_help_flag("--help", "print this help message and exit");
    std::string sum_kind;
    std::int64_t sum_q = 0;
    std::int64_t sum_m = 1;
    std::int64_t sum_n = 1;
    std::int64_t sum_d = 0;
    std::int64_t sum_s = 1;
    double sum_h = 1.0;
    std::string sum_chi;
    sum_cmd->add_option("--kind", sum_kind, "sum to evaluate")
        ->required()
        ->check(CLI::IsMember({"kloosterman", "tsum", "gauss", "salie-rhs", "w", "wstar",
                               "wstar-fourier", "wstar-salie"}));
    sum_cmd->add_option("--q", sum_q, "modulus")->required();
    sum_cmd->add_option("--m", sum_m, "first argument");
    sum_cmd->add_option("--n", sum_n, "second argument");
    sum_cmd->add_option("--d", sum_d, "exponential denominator for tsum (default q)");
    sum_cmd->add_option("--s", sum_s, "shift for gauss");
    sum_cmd->add_option("--h", sum_h, "threshold for w and wstar kinds");
    sum_cmd->add_option("--chi", sum_chi, "character: principal, jacobi, or index:<k,...>");

    // zhang
    auto* zhang_cmd = app.add_subcommand("zhang", "count units with |n - nbar| <= delta*q");
    zhang_cmd->fallthrough();
    std::int64_t zhang_q = 0;
    std::string zhang_delta;
    zhang_cmd->add_option("--q", zhang_q, "modulus")->required();
    zhang_cmd->add_option("--delta", zhang_delta, "threshold ratio in (0, 1]")->required();

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "run one identity suite");
    verify_cmd->fallthrough();
    std::string verify_suite;
    SuiteFlags verify_flags;
    verify_cmd->add_option("--suite", verify_suite, "symmetry, lemma2, lemma3, lemma5, "
                                                    "lemma6, fourier, salie-closed")
        ->required();
    add_suite_flags(verify_cmd, verify_flags, false);

    // sweep
    auto* sweep_cmd = app.add_subcommand("sweep", "run one bound or density sweep");
    sweep_cmd->fallthrough();
    std::string sweep_target;
    SuiteFlags sweep_flags;
    sweep_cmd->add_option("--target", sweep_target, "weil, polya-vinogradov, theorem1, "
                                                    "theorem2, theorem3, zhang")
        ->required();
    add_suite_flags(sweep_cmd, sweep_flags, true);

    // burgess
    auto* burgess_cmd = app.add_subcommand("burgess", "short character sum against the "
                                                      "Burgess-shape bound");
    burgess_cmd->fallthrough();
    std::int64_t burgess_q = 0;
    std::int64_t burgess_start = 0;
    std::int64_t burgess_length = 0;
    int burgess_r = 1;
    std::string burgess_chi = "all";
    burgess_cmd->add_option("--q", burgess_q, "modulus (squarefree)")->required();
    burgess_cmd->add_option("--start", burgess_start, "interval start N");
    burgess_cmd->add_option("--length", burgess_length, "interval length A")->required();
    burgess_cmd->add_option("--r", burgess_r, "bound parameter r");
    burgess_cmd->add_option("--chi", burgess_chi, "character selector");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*flat_cmd) {
            flatsum::write_report(flatsum::render_flat_set(flatsum::flat_set(flat_q, flat_h)),
                                  out);
            return 0;
        }
        if (*sum_cmd) {
            if (sum_kind == "salie-rhs") {
                flatsum::write_report(
                    flatsum::render_sum(flatsum::salie_rhs(sum_m, sum_n, sum_q), sum_kind), out);
                return 0;
            }
            if (sum_kind == "wstar-salie") {
                flatsum::write_report(
                    flatsum::render_flat_sum(
                        flatsum::salie_w_star(integral_threshold(sum_h), sum_q), sum_kind),
                    out);
                return 0;
            }
            const DirichletCharacter chi =
                single_character(sum_chi.empty() ? "principal" : sum_chi, sum_q);
            if (sum_kind == "kloosterman") {
                flatsum::write_report(
                    flatsum::render_sum(flatsum::kloosterman(chi, sum_m, sum_n, sum_q), sum_kind),
                    out);
            } else if (sum_kind == "tsum") {
                const std::int64_t d = sum_d == 0 ? sum_q : sum_d;
                flatsum::write_report(
                    flatsum::render_sum(flatsum::t_sum(chi, sum_m, sum_n, d, sum_q), sum_kind),
                    out);
            } else if (sum_kind == "gauss") {
                flatsum::write_report(
                    flatsum::render_sum(flatsum::gauss_sum_shifted(sum_s, chi), sum_kind), out);
            } else if (sum_kind == "w") {
                flatsum::write_report(
                    flatsum::render_flat_sum(flatsum::w_sum(chi, sum_h, sum_q), sum_kind), out);
            } else if (sum_kind == "wstar") {
                flatsum::write_report(
                    flatsum::render_flat_sum(
                        flatsum::w_star_sum(chi, integral_threshold(sum_h), sum_q), sum_kind),
                    out);
            } else {  // wstar-fourier
                flatsum::write_report(
                    flatsum::render_flat_sum(
                        flatsum::fourier_w_star(chi, integral_threshold(sum_h), sum_q), sum_kind),
                    out);
            }
            return 0;
        }
        if (*zhang_cmd) {
            const flatsum::Rational delta = flatsum::parse_decimal(zhang_delta);
            const flatsum::ZhangCount z = flatsum::zhang_count(zhang_q, delta.num, delta.den);
            flatsum::write_report(flatsum::render_zhang(z, zhang_q, delta.text), out);
            return 0;
        }
        if (*verify_cmd)
            return emit_and_status(
                flatsum::run_identity_suite(verify_suite, to_config(verify_flags)), format, out);
        if (*sweep_cmd)
            return emit_and_status(
                flatsum::run_bound_sweep(sweep_target, to_config(sweep_flags)), format, out);
        if (*burgess_cmd)
            return emit_and_status(
                flatsum::burgess_report(burgess_q, ChiSelector::parse(burgess_chi),
                                        burgess_start, burgess_length, burgess_r),
                format, out);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
