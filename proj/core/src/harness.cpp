#include "flatsum/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <utility>

#include "flatsum/arith.hpp"
#include "flatsum/error.hpp"
#include "flatsum/expsums.hpp"
#include "flatsum/flatnum.hpp"
#include "flatsum/parallel.hpp"
#include "flatsum/sampling.hpp"

namespace flatsum {

namespace {

constexpr double kSymmetryTolerance = 1e-9;

const std::vector<std::string>& identity_grid_tokens() {
    static const std::vector<std::string> g = {"1", "q/4", "q/2", "q"};
    return g;
}

const std::vector<std::string>& sweep_grid_tokens() {
    static const std::vector<std::string> g = {"1", "q/8", "q/4", "q/2", "q"};
    return g;
}

SweepConfig resolve_config(const SweepConfig& in, std::int64_t q_max_default,
                           const std::vector<std::string>& grid_default) {
    SweepConfig cfg = in;
    if (cfg.q_max == 0) cfg.q_max = q_max_default;
    if (cfg.h_grid.empty() && !grid_default.empty()) cfg.h_grid = HGrid::parse(grid_default);
    if (cfg.threads <= 0) cfg.threads = default_thread_count();
    if (cfg.q_min < 2) throw Error(errc::invalid_config, "sweep: q_min must be at least 2");
    if (cfg.q_max < cfg.q_min)
        throw Error(errc::invalid_config, "sweep: q_max must be at least q_min");
    if (cfg.samples < 1) throw Error(errc::invalid_config, "sweep: samples must be positive");
    if (!(cfg.tol_scale > 0.0))
        throw Error(errc::invalid_config, "sweep: tolerance must be positive");
    if (cfg.r_values.empty()) throw Error(errc::invalid_config, "sweep: empty r grid");
    for (int r : cfg.r_values)
        if (r < 1) throw Error(errc::invalid_config, "sweep: r must be at least 1");
    return cfg;
}

bool is_squarefree(std::int64_t q) { return factorize(q).squarefull_part() == 1; }

bool domain_all(std::int64_t) { return true; }
bool domain_odd_squarefree(std::int64_t q) { return q % 2 == 1 && is_squarefree(q); }
bool domain_squarefull(std::int64_t q) { return !is_squarefree(q); }
bool domain_odd_squarefull(std::int64_t q) { return q % 2 == 1 && !is_squarefree(q); }

std::vector<std::int64_t> moduli_range(std::int64_t lo, std::int64_t hi,
                                       bool (*domain)(std::int64_t)) {
    std::vector<std::int64_t> out;
    for (std::int64_t q = lo; q <= hi; ++q)
        if (domain(q)) out.push_back(q);
    return out;
}

template <typename Fn>
std::vector<RatioRecord> run_per_modulus(const std::vector<std::int64_t>& qs, int threads,
                                         Fn fn) {
    std::vector<std::vector<RatioRecord>> slots(qs.size());
    parallel_for_index(static_cast<std::int64_t>(qs.size()), threads, [&](std::int64_t i) {
        slots[static_cast<std::size_t>(i)] = fn(qs[static_cast<std::size_t>(i)]);
    });
    std::vector<RatioRecord> out;
    for (auto& s : slots) out.insert(out.end(), s.begin(), s.end());
    return out;
}

// Keeps the row with the largest metric; ties go to the earliest offer, and
// every iteration order below is fixed, so aggregation is deterministic.
struct Best {
    bool any = false;
    RatioRecord rec;
    void offer(RatioRecord r) {
        if (!any || r.metric > rec.metric) {
            any = true;
            rec = std::move(r);
        }
    }
};

RatioRecord make_record(std::int64_t q, std::string chi, std::string h, int r, double lhs,
                        double rhs, double metric) {
    RatioRecord rec;
    rec.q = q;
    rec.chi = std::move(chi);
    rec.h = std::move(h);
    rec.r = r;
    rec.lhs = lhs;
    rec.rhs = rhs;
    rec.metric = metric;
    return rec;
}

std::string triple_key(std::int64_t m, std::int64_t n, std::int64_t d) {
    return std::to_string(m) + ":" + std::to_string(n) + ":" + std::to_string(d);
}

Report finish_report(std::string suite,
                     std::vector<std::pair<std::string, std::string>> params,
                     std::vector<RatioRecord> records, MetricKind kind, bool pass) {
    Report rep;
    rep.suite = std::move(suite);
    rep.params = std::move(params);
    rep.records = std::move(records);
    rep.kind = kind;
    sort_records(rep.records);
    rep.max_metric = 0.0;
    for (const RatioRecord& r : rep.records) rep.max_metric = std::max(rep.max_metric, r.metric);
    rep.pass = pass;
    return rep;
}

// ---- shared W machinery: units ordered by |n - nbar| ----

struct DiffSorted {
    std::vector<std::int64_t> units;
    std::vector<std::int64_t> diffs;
};

DiffSorted diff_sorted(const CharacterGroup& g) {
    std::vector<std::pair<std::int64_t, std::int64_t>> v;
    v.reserve(g.units().size());
    for (std::int64_t a : g.units()) {
        std::int64_t d = a - g.inverse_of(a);
        if (d < 0) d = -d;
        v.emplace_back(d, a);
    }
    std::sort(v.begin(), v.end());
    DiffSorted ds;
    ds.units.reserve(v.size());
    ds.diffs.reserve(v.size());
    for (const auto& [d, a] : v) {
        ds.diffs.push_back(d);
        ds.units.push_back(a);
    }
    return ds;
}

// |W(chi, H; q)| at every cut of an ascending H grid, in one prefix pass.
std::vector<double> abs_w_at_cuts(const CharacterGroup& g,
                                  const std::vector<std::int64_t>& labels,
                                  const DiffSorted& ds,
                                  const std::vector<std::int64_t>& cuts) {
    const auto& vroots = g.value_roots();
    std::vector<double> out;
    out.reserve(cuts.size());
    Cx acc{0.0, 0.0};
    std::size_t i = 0;
    for (std::int64_t h : cuts) {
        while (i < ds.units.size() && ds.diffs[i] <= h) {
            acc += vroots[static_cast<std::size_t>(g.char_phase(labels, ds.units[i]))];
            ++i;
        }
        out.push_back(std::abs(acc));
    }
    return out;
}

// ---- identity suites, one modulus at a time ----

std::vector<RatioRecord> symmetry_q(std::int64_t q, const SweepConfig& cfg) {
    auto g = CharacterGroup::make(factorize(q));
    const DiffSorted ds = diff_sorted(*g);
    const auto cuts = cfg.h_grid.resolve(q);
    std::vector<Best> best(cuts.size());
    for (std::int64_t ci = 0; ci < g->size(); ++ci) {
        const DirichletCharacter chi = g->at(ci);
        if (g->char_phase(chi.labels(), q - 1) == 0) continue;  // even character
        const auto vals = abs_w_at_cuts(*g, chi.labels(), ds, cuts);
        for (std::size_t k = 0; k < cuts.size(); ++k)
            best[k].offer(make_record(q, chi.label_string(), std::to_string(cuts[k]), 0,
                                      vals[k], 0.0, vals[k]));
    }
    std::vector<RatioRecord> out;
    for (Best& b : best)
        if (b.any) out.push_back(std::move(b.rec));
    return out;
}

std::vector<RatioRecord> lemma2_q(std::int64_t q, const SweepConfig& cfg) {
    auto g = CharacterGroup::make(factorize(q));
    const auto pairs = sample_pairs(cfg.seed, q, cfg.samples);
    std::vector<RatioRecord> out;
    for (std::int64_t d = 1; d <= q; ++d) {
        if (q % d != 0 || std::gcd(d, q / d) != 1) continue;
        const std::int64_t ell = q / d;
        auto gd = CharacterGroup::make(factorize(d));
        auto gl = CharacterGroup::make(factorize(ell));
        const double phi_ell = static_cast<double>(gl->size());
        Best best;
        for (std::int64_t ci = 0; ci < g->size(); ++ci) {
            const DirichletCharacter chi = g->at(ci);
            const auto [chi1, chi2] = factor_character(chi, gd, gl);
            const bool survives = chi2.is_principal();
            for (const auto& [m, n] : pairs) {
                const Cx lhs = t_sum(chi, m, n, d, q).value;
                Cx rhs{0.0, 0.0};
                if (survives) rhs = phi_ell * kloosterman(chi1, m, n, d).value;
                best.offer(make_record(q, chi.label_string(), triple_key(m, n, d), 0,
                                       std::abs(lhs), std::abs(rhs), std::abs(lhs - rhs)));
            }
        }
        out.push_back(std::move(best.rec));
    }
    return out;
}

std::vector<RatioRecord> lemma3_q(std::int64_t q, const SweepConfig& cfg) {
    auto g = CharacterGroup::make(factorize(q));
    const DirichletCharacter chi = g->jacobi();
    SampleStream s(cfg.seed, q);
    Best best;
    for (int i = 0; i < cfg.samples; ++i) {
        const std::int64_t m = s.below(q);
        std::int64_t n = s.below(q);
        while (std::gcd(n, q) != 1) n = s.below(q);
        const Cx lhs = kloosterman(chi, m, n, q).value;
        const Cx rhs = salie_rhs(m, n, q).value;
        best.offer(make_record(q, chi.label_string(), triple_key(m, n, q), 0, std::abs(lhs),
                               std::abs(rhs), std::abs(lhs - rhs)));
    }
    return {best.rec};
}

std::vector<RatioRecord> lemma5_q(std::int64_t q, const SweepConfig& cfg) {
    const Modulus mod = factorize(q);
    const std::int64_t q1 = mod.squarefree_part();
    const std::int64_t q2 = mod.squarefull_part();
    auto g = CharacterGroup::make(mod);
    auto g1 = CharacterGroup::make(factorize(q1));
    auto g2 = CharacterGroup::make(factorize(q2));
    const std::int64_t q2_inv = q1 == 1 ? 0 : mod_inverse(mod_reduce(q2, q1), q1).value;
    const std::int64_t q1_inv = mod_inverse(mod_reduce(q1, q2), q2).value;
    const auto pairs = sample_pairs(cfg.seed, q, cfg.samples);
    std::vector<RatioRecord> out;
    for (std::int64_t d = 1; d <= q; ++d) {
        if (q % d != 0) continue;
        const std::int64_t d1 = std::gcd(d, q1);
        const std::int64_t d2 = d / d1;
        const std::int64_t ell1 = q1 / d1;
        const std::int64_t ell2 = q2 / d2;
        auto gd1 = CharacterGroup::make(factorize(d1));
        auto gell1 = CharacterGroup::make(factorize(ell1));
        Best best;
        for (std::int64_t ci = 0; ci < g->size(); ++ci) {
            const DirichletCharacter chi = g->at(ci);
            const auto [chi1, chi2] = factor_character(chi, g1, g2);
            const auto [chi_d, chi_l] = factor_character(chi1, gd1, gell1);
            const bool vanishes = !chi_l.is_principal();
            const Cx pref = chi1(q2) * chi2(q1);
            for (const auto& [m, n] : pairs) {
                const std::int64_t m1 = mul_mod(mod_reduce(m, q1), mod_reduce(ell2, q1), q1);
                std::int64_t n1 = mul_mod(mod_reduce(n, q1), q2_inv, q1);
                n1 = mul_mod(n1, q2_inv, q1);
                n1 = mul_mod(n1, mod_reduce(ell2, q1), q1);
                const std::int64_t m2 = mul_mod(mod_reduce(m, q2), mod_reduce(ell1, q2), q2);
                std::int64_t n2 = mul_mod(mod_reduce(n, q2), q1_inv, q2);
                n2 = mul_mod(n2, q1_inv, q2);
                n2 = mul_mod(n2, mod_reduce(ell1, q2), q2);
                const Cx lhs = t_sum(chi, m, n, d, q).value;
                const Cx rhs =
                    pref * t_sum(chi1, m1, n1, d1, q1).value * t_sum(chi2, m2, n2, d2, q2).value;
                double dev = std::abs(lhs - rhs);
                if (vanishes) dev = std::max(dev, std::abs(lhs));
                best.offer(make_record(q, chi.label_string(), triple_key(m, n, d), 0,
                                       std::abs(lhs), std::abs(rhs), dev));
            }
        }
        out.push_back(std::move(best.rec));
    }
    return out;
}

std::vector<RatioRecord> lemma6_q(std::int64_t q, const SweepConfig& cfg) {
    const Modulus mod = factorize(q);
    auto g = CharacterGroup::make(mod);
    SampleStream s(cfg.seed, q);
    std::vector<std::int64_t> ns;
    ns.reserve(static_cast<std::size_t>(cfg.samples));
    for (int i = 0; i < cfg.samples; ++i) ns.push_back(s.below(q));
    std::vector<RatioRecord> out;
    for (std::int64_t q1 = 1; q1 <= q; ++q1) {
        if (q % q1 != 0) continue;
        const std::int64_t q2 = q / q1;
        if (std::gcd(q1, q2) != 1 || !is_squarefree(q1)) continue;
        auto g1 = CharacterGroup::make(factorize(q1));
        auto g2 = CharacterGroup::make(factorize(q2));
        const DirichletCharacter chi2 = g2->principal();
        Best best;
        for (std::int64_t ci = 0; ci < g1->size(); ++ci) {
            const DirichletCharacter chi1 = g1->at(ci);
            const DirichletCharacter chi = combine_characters(g, chi1, chi2);
            const bool primitive1 = character_info(chi1).is_primitive;
            const Cx tau1 = primitive1 ? gauss_sum_shifted(1, chi1).value : Cx{0.0, 0.0};
            const Cx pref = chi1(q2) * chi2(q1);
            for (std::int64_t n : ns) {
                const Cx lhs = gauss_sum_shifted(n, chi).value;
                const Cx ga = gauss_sum_shifted(n, chi1).value;
                const Cx gb = gauss_sum_shifted(n, chi2).value;
                const double ram = static_cast<double>(ramanujan_sum(n, q2));
                double dev = std::abs(lhs - pref * ga * gb);
                dev = std::max(dev, std::abs(gb - Cx{ram, 0.0}));
                if (primitive1) {
                    Cx rhs{0.0, 0.0};
                    const std::int64_t nr = mod_reduce(n, q1);
                    if (q1 == 1) {
                        rhs = tau1 * ram;
                    } else if (std::gcd(nr, q1) == 1) {
                        const std::int64_t arg =
                            mul_mod(mod_inverse(nr, q1).value, mod_reduce(q2, q1), q1);
                        rhs = chi1(arg) * tau1 * ram;
                    }
                    dev = std::max(dev, std::abs(lhs - rhs));
                }
                best.offer(make_record(q, chi1.label_string(), std::to_string(n), 0,
                                       std::abs(lhs), std::abs(pref * ga * gb), dev));
            }
        }
        out.push_back(std::move(best.rec));
    }
    return out;
}

std::vector<RatioRecord> fourier_q(std::int64_t q, const SweepConfig& cfg) {
    auto g = CharacterGroup::make(factorize(q));
    const auto cuts = cfg.h_grid.resolve(q);
    std::vector<Best> best(cuts.size());
    for (std::int64_t ci = 0; ci < g->size(); ++ci) {
        const DirichletCharacter chi = g->at(ci);
        if (chi.is_principal()) continue;
        const auto rhs = fourier_w_star_grid(chi, cuts, q);
        for (std::size_t k = 0; k < cuts.size(); ++k) {
            const Cx lhs = w_star_sum(chi, cuts[k], q).w;
            best[k].offer(make_record(q, chi.label_string(), std::to_string(cuts[k]), 0,
                                      std::abs(lhs), std::abs(rhs[k].w),
                                      std::abs(lhs - rhs[k].w)));
        }
    }
    std::vector<RatioRecord> out;
    for (Best& b : best)
        if (b.any) out.push_back(std::move(b.rec));
    return out;
}

std::vector<RatioRecord> salie_closed_q(std::int64_t q, const SweepConfig& cfg) {
    auto g = CharacterGroup::make(factorize(q));
    const DirichletCharacter chi = g->jacobi();
    std::vector<RatioRecord> out;
    for (std::int64_t h : cfg.h_grid.resolve(q)) {
        const Cx lhs = w_star_sum(chi, h, q).w;
        const Cx rhs = salie_w_star(h, q).w;
        out.push_back(make_record(q, chi.label_string(), std::to_string(h), 0, std::abs(lhs),
                                  std::abs(rhs), std::abs(lhs - rhs)));
    }
    return out;
}

struct IdentitySuite {
    const char* name;
    std::int64_t q_max_default;
    bool uses_grid;
    bool uses_samples;
    std::vector<RatioRecord> (*run)(std::int64_t, const SweepConfig&);
    bool (*domain)(std::int64_t);
};

constexpr IdentitySuite kIdentitySuites[] = {
    {"symmetry", 500, true, false, &symmetry_q, &domain_all},
    {"lemma2", 300, false, true, &lemma2_q, &domain_all},
    {"lemma3", 500, false, true, &lemma3_q, &domain_odd_squarefree},
    {"lemma5", 400, false, true, &lemma5_q, &domain_squarefull},
    {"lemma6", 400, false, true, &lemma6_q, &domain_all},
    {"fourier", 300, true, false, &fourier_q, &domain_all},
    {"salie-closed", 500, true, false, &salie_closed_q, &domain_odd_squarefree},
};

// ---- bound sweeps, one modulus at a time ----

std::vector<RatioRecord> weil_q(std::int64_t q, const SweepConfig& cfg) {
    auto g = CharacterGroup::make(factorize(q));
    const DirichletCharacter chi = g->principal();
    Best best;
    for (const auto& [m, n] : sample_pairs(cfg.seed, q, cfg.samples)) {
        const WeilRatio wr = weil_ratio(chi, m, n, q);
        best.offer(
            make_record(q, chi.label_string(), triple_key(m, n, q), 0, wr.value, wr.bound,
                        wr.ratio));
    }
    return {best.rec};
}

std::vector<RatioRecord> pv_q(std::int64_t q, const SweepConfig& cfg) {
    auto g = CharacterGroup::make(factorize(q));
    const double bound = std::sqrt(static_cast<double>(q)) * std::log(static_cast<double>(q));
    const auto pairs = sample_pairs(cfg.seed, q, cfg.samples);
    Best best;
    std::vector<Cx> prefix(static_cast<std::size_t>(2 * q), Cx{0.0, 0.0});
    for (std::int64_t ci = 0; ci < g->size(); ++ci) {
        const DirichletCharacter chi = g->at(ci);
        if (!character_info(chi).is_primitive) continue;
        for (std::int64_t x = 1; x < 2 * q; ++x)
            prefix[static_cast<std::size_t>(x)] = prefix[static_cast<std::size_t>(x - 1)] + chi(x);
        for (const auto& [start, len] : pairs) {
            const std::int64_t a = len == 0 ? q : len;
            const double lhs = std::abs(prefix[static_cast<std::size_t>(start + a)] -
                                        prefix[static_cast<std::size_t>(start)]);
            best.offer(make_record(q, chi.label_string(),
                                   std::to_string(start) + ":" + std::to_string(a), 0, lhs,
                                   bound, lhs / bound));
        }
    }
    if (!best.any) return {};
    return {best.rec};
}

std::vector<RatioRecord> theorem1_q(std::int64_t q, const SweepConfig& cfg) {
    const Modulus mod = factorize(q);
    auto g = CharacterGroup::make(mod);
    const auto profile = multiplicative_profile(mod);
    const DiffSorted ds = diff_sorted(*g);
    const auto cuts = cfg.h_grid.resolve(q);
    const double root_q = std::sqrt(static_cast<double>(q));
    const double tau2 = static_cast<double>(profile.tau * profile.tau);
    Best best;
    for (const DirichletCharacter& chi : cfg.chi.select(g)) {
        if (chi.is_principal()) continue;
        const auto vals = abs_w_at_cuts(*g, chi.labels(), ds, cuts);
        for (std::size_t k = 0; k < cuts.size(); ++k) {
            const double logh = std::max(std::log(static_cast<double>(cuts[k])), 1.0);
            const double bound = root_q * tau2 * logh;
            best.offer(make_record(q, chi.label_string(), std::to_string(cuts[k]), 0, vals[k],
                                   bound, vals[k] / bound));
        }
    }
    if (!best.any) return {};
    return {best.rec};
}

std::vector<RatioRecord> theorem2_q(std::int64_t q, const SweepConfig& cfg) {
    const Modulus mod = factorize(q);
    auto g = CharacterGroup::make(mod);
    const auto profile = multiplicative_profile(mod);
    const DirichletCharacter chi = g->jacobi();
    const DiffSorted ds = diff_sorted(*g);
    const auto cuts = cfg.h_grid.resolve(q);
    const auto vals = abs_w_at_cuts(*g, chi.labels(), ds, cuts);
    const double logq = std::log(static_cast<double>(q));
    std::vector<RatioRecord> out;
    for (int r : cfg.r_values) {
        Best best;
        for (std::size_t k = 0; k < cuts.size(); ++k) {
            const double bound = std::pow(static_cast<double>(cuts[k]), 1.0 - 1.0 / r) *
                                 std::pow(static_cast<double>(q), (r + 1) / (4.0 * r * r)) *
                                 static_cast<double>(profile.tau) * logq;
            best.offer(make_record(q, chi.label_string(), std::to_string(cuts[k]), r, vals[k],
                                   bound, vals[k] / bound));
        }
        out.push_back(std::move(best.rec));
    }
    return out;
}

std::vector<RatioRecord> theorem3_q(std::int64_t q, const SweepConfig& cfg) {
    const Modulus mod = factorize(q);
    const std::int64_t q1 = mod.squarefree_part();
    const std::int64_t q2 = mod.squarefull_part();
    auto g = CharacterGroup::make(mod);
    const auto profile = multiplicative_profile(mod);
    const double phi2 = static_cast<double>(multiplicative_profile(factorize(q2)).phi);
    const DirichletCharacter chi = g->jacobi();
    const DiffSorted ds = diff_sorted(*g);
    const auto cuts = cfg.h_grid.resolve(q);
    const auto vals = abs_w_at_cuts(*g, chi.labels(), ds, cuts);
    const double logq1 = std::max(std::log(static_cast<double>(q1)), 1.0);
    const double two_omega = std::pow(2.0, static_cast<double>(profile.omega));
    std::vector<RatioRecord> out;
    for (int r : cfg.r_values) {
        Best best;
        for (std::size_t k = 0; k < cuts.size(); ++k) {
            const double bound =
                std::pow(static_cast<double>(cuts[k]) / static_cast<double>(q2), 1.0 - 1.0 / r) *
                phi2 * phi2 * std::pow(static_cast<double>(q1), (r + 1) / (4.0 * r * r)) *
                two_omega * logq1;
            best.offer(make_record(q, chi.label_string(), std::to_string(cuts[k]), r, vals[k],
                                   bound, vals[k] / bound));
        }
        out.push_back(std::move(best.rec));
    }
    return out;
}

std::vector<Rational> default_deltas() {
    std::vector<Rational> out;
    out.reserve(10);
    for (int i = 1; i <= 10; ++i)
        out.push_back(parse_decimal(i == 10 ? "1" : "0." + std::to_string(i)));
    return out;
}

std::string join_r_values(const std::vector<int>& rv) {
    std::string out;
    for (std::size_t i = 0; i < rv.size(); ++i) {
        if (i != 0) out += ",";
        out += std::to_string(rv[i]);
    }
    return out;
}

std::string join_delta_texts(const std::vector<Rational>& deltas) {
    std::string out;
    for (std::size_t i = 0; i < deltas.size(); ++i) {
        if (i != 0) out += ",";
        out += deltas[i].text;
    }
    return out;
}

} // namespace

// ---- HGrid ----

HGrid HGrid::parse(const std::vector<std::string>& tokens) {
    HGrid grid;
    for (const std::string& t : tokens) {
        if (t != "1" && t != "q" && t != "q/2" && t != "q/4" && t != "q/8")
            throw Error(errc::invalid_config,
                        "h grid: unknown token '" + t + "' (use 1, q, q/2, q/4, q/8)");
        grid.tokens.push_back(t);
    }
    return grid;
}

std::vector<std::int64_t> HGrid::resolve(std::int64_t q) const {
    std::vector<std::int64_t> out;
    out.reserve(tokens.size());
    for (const std::string& t : tokens) {
        std::int64_t v = 1;
        if (t == "q")
            v = q;
        else if (t == "q/2")
            v = q / 2;
        else if (t == "q/4")
            v = q / 4;
        else if (t == "q/8")
            v = q / 8;
        out.push_back(std::max<std::int64_t>(v, 1));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::string HGrid::describe() const {
    std::string out;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (i != 0) out += ",";
        out += tokens[i];
    }
    return out;
}

// ---- Rational ----

Rational parse_decimal(const std::string& text) {
    const auto bad = [&]() {
        return Error(errc::bad_delta, "delta '" + text + "' is not a decimal in (0, 1]");
    };
    std::string intpart;
    std::string fracpart;
    std::size_t i = 0;
    while (i < text.size() && text[i] >= '0' && text[i] <= '9') intpart += text[i++];
    if (i < text.size() && text[i] == '.') {
        ++i;
        while (i < text.size() && text[i] >= '0' && text[i] <= '9') fracpart += text[i++];
    }
    if (i != text.size() || intpart.empty() || fracpart.size() > 9 || intpart.size() > 9)
        throw bad();
    std::int64_t den = 1;
    for (std::size_t k = 0; k < fracpart.size(); ++k) den *= 10;
    std::int64_t num = std::strtoll(intpart.c_str(), nullptr, 10) * den;
    if (!fracpart.empty()) num += std::strtoll(fracpart.c_str(), nullptr, 10);
    if (num < 1 || num > den) throw bad();
    const std::int64_t g = std::gcd(num, den);
    Rational r;
    r.num = num / g;
    r.den = den / g;
    r.text = text;
    return r;
}

// ---- ChiSelector ----

ChiSelector ChiSelector::parse(const std::string& text) {
    ChiSelector sel;
    if (text == "all") {
        sel.kind = Kind::all;
    } else if (text == "principal") {
        sel.kind = Kind::principal;
    } else if (text == "jacobi") {
        sel.kind = Kind::jacobi;
    } else if (text.rfind("index:", 0) == 0) {
        sel.kind = Kind::index;
        const std::string body = text.substr(6);
        std::size_t pos = 0;
        while (pos <= body.size()) {
            const std::size_t comma = std::min(body.find(',', pos), body.size());
            const std::string piece = body.substr(pos, comma - pos);
            if (piece.empty())
                throw Error(errc::invalid_config, "chi selector: empty index in '" + text + "'");
            char* end = nullptr;
            const long long v = std::strtoll(piece.c_str(), &end, 10);
            if (end != piece.c_str() + piece.size() || v < 0)
                throw Error(errc::invalid_config,
                            "chi selector: bad index '" + piece + "' in '" + text + "'");
            sel.labels.push_back(v);
            pos = comma + 1;
        }
    } else {
        throw Error(errc::invalid_config,
                    "chi selector '" + text + "' (use all, principal, jacobi, index:<k,...>)");
    }
    return sel;
}

std::vector<DirichletCharacter>
ChiSelector::select(const std::shared_ptr<const CharacterGroup>& group) const {
    switch (kind) {
        case Kind::principal:
            return {group->principal()};
        case Kind::jacobi:
            return {group->jacobi()};
        case Kind::index:
            return {group->character(labels)};
        case Kind::all:
            break;
    }
    std::vector<DirichletCharacter> out;
    out.reserve(static_cast<std::size_t>(group->size()));
    for (std::int64_t i = 0; i < group->size(); ++i) out.push_back(group->at(i));
    return out;
}

std::string ChiSelector::describe() const {
    switch (kind) {
        case Kind::all:
            return "all";
        case Kind::principal:
            return "principal";
        case Kind::jacobi:
            return "jacobi";
        case Kind::index:
            break;
    }
    std::string out = "index:";
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (i != 0) out += ",";
        out += std::to_string(labels[i]);
    }
    return out;
}

// ---- configs ----

SweepConfig default_identity_config() {
    SweepConfig cfg;
    cfg.h_grid = HGrid::parse(identity_grid_tokens());
    return cfg;
}

SweepConfig default_sweep_config() {
    SweepConfig cfg;
    cfg.h_grid = HGrid::parse(sweep_grid_tokens());
    return cfg;
}

// ---- suite drivers ----

Report run_identity_suite(const std::string& suite, const SweepConfig& config) {
    for (const IdentitySuite& s : kIdentitySuites) {
        if (suite != s.name) continue;
        const SweepConfig cfg = resolve_config(
            config, s.q_max_default,
            s.uses_grid ? identity_grid_tokens() : std::vector<std::string>{});
        const auto qs = moduli_range(cfg.q_min, cfg.q_max, s.domain);
        auto records =
            run_per_modulus(qs, cfg.threads, [&](std::int64_t q) { return s.run(q, cfg); });
        const bool absolute = suite == "symmetry";
        bool pass = true;
        for (const RatioRecord& r : records) {
            const double tol =
                absolute ? kSymmetryTolerance : cfg.tol_scale * static_cast<double>(r.q);
            if (!(r.metric <= tol)) pass = false;
        }
        std::vector<std::pair<std::string, std::string>> params;
        params.emplace_back("q_min", std::to_string(cfg.q_min));
        params.emplace_back("q_max", std::to_string(cfg.q_max));
        if (s.uses_grid) params.emplace_back("h_grid", cfg.h_grid.describe());
        if (s.uses_samples) {
            params.emplace_back("samples", std::to_string(cfg.samples));
            params.emplace_back("seed", std::to_string(cfg.seed));
        }
        params.emplace_back("tol", absolute ? std::string("1e-09 absolute")
                                            : render_double(cfg.tol_scale) + " * q");
        return finish_report(s.name, std::move(params), std::move(records),
                             MetricKind::deviation, pass);
    }
    throw Error(errc::unknown_suite, "run_identity_suite: unknown suite '" + suite + "'");
}

Report run_bound_sweep(const std::string& target, const SweepConfig& config) {
    if (target == "zhang") return run_zhang_sweep(config);
    std::vector<std::pair<std::string, std::string>> params;
    if (target == "weil") {
        const SweepConfig cfg = resolve_config(config, 2000, {});
        const auto qs = moduli_range(cfg.q_min, cfg.q_max, &domain_all);
        auto records =
            run_per_modulus(qs, cfg.threads, [&](std::int64_t q) { return weil_q(q, cfg); });
        bool pass = true;
        for (const RatioRecord& r : records)
            if (!(r.metric <= 1.0 + 1e-9)) pass = false;
        params.emplace_back("q_min", std::to_string(cfg.q_min));
        params.emplace_back("q_max", std::to_string(cfg.q_max));
        params.emplace_back("samples", std::to_string(cfg.samples));
        params.emplace_back("seed", std::to_string(cfg.seed));
        params.emplace_back("assert", "ratio <= 1 + 1e-09 (untwisted)");
        return finish_report("weil", std::move(params), std::move(records), MetricKind::ratio,
                             pass);
    }
    if (target == "polya-vinogradov") {
        const SweepConfig cfg = resolve_config(config, 1000, {});
        const auto qs = moduli_range(cfg.q_min, cfg.q_max, &domain_all);
        auto records =
            run_per_modulus(qs, cfg.threads, [&](std::int64_t q) { return pv_q(q, cfg); });
        bool pass = true;
        for (const RatioRecord& r : records)
            if (!(r.metric <= 1.0)) pass = false;
        params.emplace_back("q_min", std::to_string(cfg.q_min));
        params.emplace_back("q_max", std::to_string(cfg.q_max));
        params.emplace_back("samples", std::to_string(cfg.samples));
        params.emplace_back("seed", std::to_string(cfg.seed));
        params.emplace_back("assert", "ratio <= 1 (primitive characters)");
        return finish_report("polya-vinogradov", std::move(params), std::move(records),
                             MetricKind::ratio, pass);
    }
    if (target == "theorem1") {
        const SweepConfig cfg = resolve_config(config, 1000, sweep_grid_tokens());
        const auto qs = moduli_range(cfg.q_min, cfg.q_max, &domain_all);
        auto records = run_per_modulus(qs, cfg.threads,
                                       [&](std::int64_t q) { return theorem1_q(q, cfg); });
        params.emplace_back("q_min", std::to_string(cfg.q_min));
        params.emplace_back("q_max", std::to_string(cfg.q_max));
        params.emplace_back("h_grid", cfg.h_grid.describe());
        params.emplace_back("chi", cfg.chi.describe());
        params.emplace_back("note", "log H clamped below at 1; report-only");
        return finish_report("theorem1", std::move(params), std::move(records),
                             MetricKind::ratio, true);
    }
    if (target == "theorem2") {
        const SweepConfig cfg = resolve_config(config, 1000, sweep_grid_tokens());
        const auto qs = moduli_range(cfg.q_min, cfg.q_max, &domain_odd_squarefree);
        auto records = run_per_modulus(qs, cfg.threads,
                                       [&](std::int64_t q) { return theorem2_q(q, cfg); });
        params.emplace_back("q_min", std::to_string(cfg.q_min));
        params.emplace_back("q_max", std::to_string(cfg.q_max));
        params.emplace_back("h_grid", cfg.h_grid.describe());
        params.emplace_back("r", join_r_values(cfg.r_values));
        params.emplace_back("note", "report-only");
        return finish_report("theorem2", std::move(params), std::move(records),
                             MetricKind::ratio, true);
    }
    if (target == "theorem3") {
        const SweepConfig cfg = resolve_config(config, 1000, sweep_grid_tokens());
        const auto qs = moduli_range(cfg.q_min, cfg.q_max, &domain_odd_squarefull);
        auto records = run_per_modulus(qs, cfg.threads,
                                       [&](std::int64_t q) { return theorem3_q(q, cfg); });
        params.emplace_back("q_min", std::to_string(cfg.q_min));
        params.emplace_back("q_max", std::to_string(cfg.q_max));
        params.emplace_back("h_grid", cfg.h_grid.describe());
        params.emplace_back("r", join_r_values(cfg.r_values));
        params.emplace_back("note", "log q1 clamped below at 1; report-only");
        return finish_report("theorem3", std::move(params), std::move(records),
                             MetricKind::ratio, true);
    }
    throw Error(errc::unknown_suite, "run_bound_sweep: unknown target '" + target + "'");
}

Report run_zhang_sweep(const SweepConfig& config) {
    const SweepConfig cfg = resolve_config(config, 2000, {});
    const std::vector<Rational> deltas = cfg.deltas.empty() ? default_deltas() : cfg.deltas;
    const auto qs = moduli_range(cfg.q_min, cfg.q_max, &domain_all);
    std::vector<std::vector<RatioRecord>> slots(qs.size());
    std::vector<unsigned char> exact_at_one(qs.size(), 1);
    parallel_for_index(static_cast<std::int64_t>(qs.size()), cfg.threads, [&](std::int64_t i) {
        const std::int64_t q = qs[static_cast<std::size_t>(i)];
        const Modulus mod = factorize(q);
        const auto profile = multiplicative_profile(mod);
        std::vector<std::int32_t> diffs_upto(static_cast<std::size_t>(q) + 1, 0);
        for (std::int64_t n = 1; n < q; ++n) {
            if (std::gcd(n, q) != 1) continue;
            const std::int64_t inv = mod_inverse(n, q).value;
            const std::int64_t diff = n > inv ? n - inv : inv - n;
            ++diffs_upto[static_cast<std::size_t>(diff)];
        }
        for (std::int64_t k = 1; k <= q; ++k)
            diffs_upto[static_cast<std::size_t>(k)] += diffs_upto[static_cast<std::size_t>(k - 1)];
        const double logq = std::log(static_cast<double>(q));
        const double denom = std::sqrt(static_cast<double>(q)) *
                             static_cast<double>(profile.tau * profile.tau) * logq * logq * logq;
        Best best;
        for (const Rational& del : deltas) {
            const std::int64_t cut = std::min<std::int64_t>(q, del.num * q / del.den);
            const std::int64_t count = diffs_upto[static_cast<std::size_t>(cut)];
            const double dv = static_cast<double>(del.num) / static_cast<double>(del.den);
            const double main = dv * (2.0 - dv) * static_cast<double>(profile.phi);
            const double err = static_cast<double>(count) - main;
            if (del.num == del.den && err != 0.0) exact_at_one[static_cast<std::size_t>(i)] = 0;
            best.offer(make_record(q, "", del.text, 0, std::abs(err), denom,
                                   std::abs(err) / denom));
        }
        slots[static_cast<std::size_t>(i)] = {best.rec};
    });
    std::vector<RatioRecord> records;
    bool pass = true;
    for (std::size_t i = 0; i < qs.size(); ++i) {
        records.insert(records.end(), slots[i].begin(), slots[i].end());
        if (!exact_at_one[i]) pass = false;
    }
    std::vector<std::pair<std::string, std::string>> params;
    params.emplace_back("q_min", std::to_string(cfg.q_min));
    params.emplace_back("q_max", std::to_string(cfg.q_max));
    params.emplace_back("deltas", join_delta_texts(deltas));
    params.emplace_back("assert", "error = 0 at delta = 1; ratios report-only");
    return finish_report("zhang", std::move(params), std::move(records), MetricKind::ratio,
                         pass);
}

RatioRecord burgess_ratio(const DirichletCharacter& chi, std::int64_t start,
                          std::int64_t length, int r) {
    const std::int64_t q = chi.modulus();
    if (!is_squarefree(q))
        throw Error(errc::not_squarefree, "burgess_ratio: q must be squarefree");
    if (chi.is_principal())
        throw Error(errc::principal_character, "burgess_ratio: chi must be non-principal");
    if (length < 1) throw Error(errc::bad_argument, "burgess_ratio: length must be positive");
    if (r < 1) throw Error(errc::bad_argument, "burgess_ratio: r must be at least 1");
    Cx acc{0.0, 0.0};
    for (std::int64_t x = start + 1; x <= start + length; ++x) acc += chi(x);
    const double lhs = std::abs(acc);
    const double bound = std::pow(static_cast<double>(length), 1.0 - 1.0 / r) *
                         std::pow(static_cast<double>(q), (r + 1) / (4.0 * r * r)) *
                         std::log(static_cast<double>(q));
    return make_record(q, chi.label_string(),
                       std::to_string(start) + ":" + std::to_string(length), r, lhs, bound,
                       lhs / bound);
}

Report burgess_report(std::int64_t q, const ChiSelector& chi, std::int64_t start,
                      std::int64_t length, int r) {
    if (q < 2) throw Error(errc::bad_argument, "burgess: q must be at least 2");
    auto g = CharacterGroup::make(factorize(q));
    std::vector<RatioRecord> records;
    for (const DirichletCharacter& c : chi.select(g)) {
        if (c.is_principal() && chi.kind == ChiSelector::Kind::all) continue;
        records.push_back(burgess_ratio(c, start, length, r));
    }
    if (records.empty())
        throw Error(errc::principal_character, "burgess: no non-principal character selected");
    std::vector<std::pair<std::string, std::string>> params;
    params.emplace_back("q", std::to_string(q));
    params.emplace_back("chi", chi.describe());
    params.emplace_back("start", std::to_string(start));
    params.emplace_back("length", std::to_string(length));
    params.emplace_back("r", std::to_string(r));
    params.emplace_back("note", "report-only");
    return finish_report("burgess", std::move(params), std::move(records), MetricKind::ratio,
                         true);
}

} // namespace flatsum
