#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "flatsum/harness.hpp"
#include "flatsum/parallel.hpp"
#include "flatsum/report.hpp"
#include "flatsum/sampling.hpp"

using flatsum::Error;
using flatsum::Report;
using flatsum::SweepConfig;

TEST_CASE("sample streams depend only on (seed, q)") {
    auto a = flatsum::sample_pairs(0x5EED, 101, 16);
    auto b = flatsum::sample_pairs(0x5EED, 101, 16);
    CHECK(a == b);
    CHECK(a != flatsum::sample_pairs(0x5EED, 103, 16));
    CHECK(a != flatsum::sample_pairs(0x5EEE, 101, 16));
    for (const auto& [x, y] : a) {
        CHECK(x >= 0);
        CHECK(x < 101);
        CHECK(y >= 0);
        CHECK(y < 101);
    }
    // A longer draw extends the shorter one.
    auto longer = flatsum::sample_pairs(0x5EED, 101, 32);
    CHECK(std::equal(a.begin(), a.end(), longer.begin()));

    flatsum::SampleStream s(7, 11);
    for (int i = 0; i < 1000; ++i) {
        auto v = s.below(7);
        CHECK(v >= 0);
        CHECK(v < 7);
    }
}

TEST_CASE("H grids parse known tokens and resolve with clamping") {
    auto grid = flatsum::HGrid::parse({"1", "q/4", "q/2", "q"});
    CHECK(grid.describe() == "1,q/4,q/2,q");
    CHECK(grid.resolve(100) == std::vector<std::int64_t>{1, 25, 50, 100});
    CHECK(grid.resolve(3) == std::vector<std::int64_t>{1, 3}); // q/4, q/2 clamp to 1
    CHECK(grid.resolve(8) == std::vector<std::int64_t>{1, 2, 4, 8});
    CHECK_THROWS_AS(flatsum::HGrid::parse({"q/3"}), Error);
    CHECK_THROWS_AS(flatsum::HGrid::parse({"2"}), Error);
    CHECK(flatsum::HGrid{}.empty());
}

TEST_CASE("parse_decimal keeps the spelling and reduces the fraction") {
    auto half = flatsum::parse_decimal("0.5");
    CHECK(half.num == 1);
    CHECK(half.den == 2);
    CHECK(half.text == "0.5");

    auto padded = flatsum::parse_decimal("0.50");
    CHECK(padded.num == 1);
    CHECK(padded.den == 2);
    CHECK(padded.text == "0.50");

    auto one = flatsum::parse_decimal("1");
    CHECK(one.num == 1);
    CHECK(one.den == 1);

    auto eighth = flatsum::parse_decimal("0.125");
    CHECK(eighth.num == 1);
    CHECK(eighth.den == 8);

    auto nine = flatsum::parse_decimal("0.000000001");
    CHECK(nine.num == 1);
    CHECK(nine.den == 1000000000);

    for (const char* bad : {"0", "0.0", "1.5", "2", "", ".5", "0.1234567891",
                            "abc", "-0.5", "0.5x", "1e-3"})
        CHECK_THROWS_AS(flatsum::parse_decimal(bad), Error);
}

TEST_CASE("chi selectors parse, describe, and select") {
    auto g = flatsum::CharacterGroup::make(flatsum::factorize(5));

    auto all = flatsum::ChiSelector::parse("all");
    CHECK(all.describe() == "all");
    CHECK(all.select(g).size() == 4);

    auto principal = flatsum::ChiSelector::parse("principal");
    CHECK(principal.select(g).size() == 1);
    CHECK(principal.select(g)[0].is_principal());

    auto jac = flatsum::ChiSelector::parse("jacobi");
    CHECK(jac.select(g)[0].labels() == std::vector<std::int64_t>{2});

    auto idx = flatsum::ChiSelector::parse("index:3");
    CHECK(idx.describe() == "index:3");
    CHECK(idx.select(g)[0].labels() == std::vector<std::int64_t>{3});

    auto multi = flatsum::ChiSelector::parse("index:1,2");
    CHECK(multi.labels == std::vector<std::int64_t>{1, 2});

    for (const char* bad : {"index:", "index:a", "index:1,", "index:-1", "bogus", ""})
        CHECK_THROWS_AS(flatsum::ChiSelector::parse(bad), Error);
}

TEST_CASE("identity suites pass on reduced ranges") {
    struct Tiny {
        const char* suite;
        std::int64_t q_max;
        int samples;
    };
    for (Tiny t : {Tiny{"symmetry", 60, 0}, Tiny{"lemma2", 40, 6}, Tiny{"lemma3", 60, 6},
                   Tiny{"lemma5", 60, 6}, Tiny{"lemma6", 40, 6}, Tiny{"fourier", 30, 0},
                   Tiny{"salie-closed", 60, 0}}) {
        SweepConfig cfg = flatsum::default_identity_config();
        cfg.q_max = t.q_max;
        if (t.samples > 0) cfg.samples = t.samples;
        cfg.threads = 1;
        Report rep = flatsum::run_identity_suite(t.suite, cfg);
        INFO(t.suite);
        CHECK(rep.suite == t.suite);
        CHECK(rep.pass);
        CHECK(rep.kind == flatsum::MetricKind::deviation);
        CHECK(!rep.records.empty());
    }
    CHECK_THROWS_AS(flatsum::run_identity_suite("nope", flatsum::default_identity_config()),
                    Error);

    SweepConfig bad = flatsum::default_identity_config();
    bad.q_min = 50;
    bad.q_max = 10;
    CHECK_THROWS_AS(flatsum::run_identity_suite("symmetry", bad), Error);
    bad = flatsum::default_identity_config();
    bad.samples = 0;
    CHECK_THROWS_AS(flatsum::run_identity_suite("lemma2", bad), Error);
}

TEST_CASE("weil and polya-vinogradov sweeps stay under their envelopes") {
    SweepConfig cfg;
    cfg.q_max = 60;
    cfg.threads = 1;
    Report weil = flatsum::run_bound_sweep("weil", cfg);
    CHECK(weil.pass);
    CHECK(weil.kind == flatsum::MetricKind::ratio);
    for (const auto& r : weil.records) CHECK(r.metric <= 1.0 + 1e-9);

    Report pv = flatsum::run_bound_sweep("polya-vinogradov", cfg);
    CHECK(pv.pass);
    for (const auto& r : pv.records) CHECK(r.metric <= 1.0);

    CHECK_THROWS_AS(flatsum::run_bound_sweep("nope", cfg), Error);
}

TEST_CASE("theorem1 ratio at q=17, chi=Legendre, H=4 is pinned") {
    SweepConfig cfg = flatsum::default_sweep_config();
    cfg.q_min = 17;
    cfg.q_max = 17;
    cfg.h_grid = flatsum::HGrid::parse({"q/4"});
    cfg.chi = flatsum::ChiSelector::parse("index:8");
    cfg.threads = 1;
    Report rep = flatsum::run_bound_sweep("theorem1", cfg);
    REQUIRE(rep.records.size() == 1);
    const auto& rec = rep.records[0];
    CHECK(rec.q == 17);
    CHECK(rec.chi == "q=17;labels=8");
    CHECK(rec.h == "4");
    CHECK(rec.lhs == doctest::Approx(6.0).epsilon(1e-12));
    const double bound = std::sqrt(17.0) * 4.0 * std::log(4.0);
    CHECK(rec.rhs == doctest::Approx(bound).epsilon(1e-12));
    CHECK(rec.metric == doctest::Approx(6.0 / bound).epsilon(1e-12));
    CHECK(rep.pass); // report-only
}

TEST_CASE("theorem2/theorem3 produce one record per modulus and r") {
    SweepConfig cfg;
    cfg.q_max = 60;
    cfg.threads = 1;
    Report t2 = flatsum::run_bound_sweep("theorem2", cfg);
    CHECK(t2.pass);
    std::int64_t odd_squarefree = 0;
    for (std::int64_t q = 3; q <= 60; ++q)
        if (q % 2 == 1 && flatsum::factorize(q).squarefull_part() == 1) ++odd_squarefree;
    CHECK(static_cast<std::int64_t>(t2.records.size()) == 3 * odd_squarefree);
    for (const auto& r : t2.records) CHECK((r.r >= 1 && r.r <= 3));

    cfg.q_max = 200;
    Report t3 = flatsum::run_bound_sweep("theorem3", cfg);
    CHECK(t3.pass);
    for (const auto& r : t3.records) {
        CHECK(r.q % 2 == 1);
        CHECK(flatsum::factorize(r.q).squarefull_part() > 1);
    }
}

TEST_CASE("zhang sweep is exact at delta = 1 and reports ratios") {
    SweepConfig cfg;
    cfg.q_max = 80;
    cfg.threads = 1;
    Report rep = flatsum::run_zhang_sweep(cfg);
    CHECK(rep.pass);
    CHECK(rep.suite == "zhang");
    CHECK(static_cast<std::int64_t>(rep.records.size()) == 80 - 3 + 1);
    bool found_deltas_param = false;
    for (const auto& [k, v] : rep.params)
        if (k == "deltas") {
            found_deltas_param = true;
            CHECK(v == "0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9,1");
        }
    CHECK(found_deltas_param);

    cfg.deltas = {flatsum::parse_decimal("1")};
    Report exact = flatsum::run_zhang_sweep(cfg);
    CHECK(exact.pass);
    for (const auto& r : exact.records) CHECK(r.lhs == 0.0);
}

TEST_CASE("burgess ratios at pinned arguments") {
    auto g17 = flatsum::CharacterGroup::make(flatsum::factorize(17));
    auto leg17 = flatsum::jacobi_character(g17);

    auto rec = flatsum::burgess_ratio(leg17, 0, 4, 1);
    CHECK(rec.lhs == doctest::Approx(2.0).epsilon(1e-12)); // 1+1-1+1
    const double bound = std::sqrt(17.0) * std::log(17.0);
    CHECK(rec.rhs == doctest::Approx(bound).epsilon(1e-12));
    CHECK(rec.metric == doctest::Approx(2.0 / bound).epsilon(1e-12));
    CHECK(rec.r == 1);
    CHECK(rec.h == "0:4");

    // Full period: complete character sum vanishes.
    auto full = flatsum::burgess_ratio(leg17, 0, 17, 2);
    CHECK(full.lhs < 1e-9);

    auto g5 = flatsum::CharacterGroup::make(flatsum::factorize(5));
    auto leg5 = flatsum::jacobi_character(g5);
    CHECK(flatsum::burgess_ratio(leg5, 0, 5, 2).lhs < 1e-12);

    CHECK_THROWS_AS(flatsum::burgess_ratio(g17->principal(), 0, 4, 1), Error);
    CHECK_THROWS_AS(flatsum::burgess_ratio(leg17, 0, 0, 1), Error);
    CHECK_THROWS_AS(flatsum::burgess_ratio(leg17, 0, 4, 0), Error);
    auto g12 = flatsum::CharacterGroup::make(flatsum::factorize(12));
    CHECK_THROWS_AS(flatsum::burgess_ratio(g12->at(1), 0, 4, 1), Error);

    Report rep = flatsum::burgess_report(17, flatsum::ChiSelector::parse("all"), 0, 8, 2);
    CHECK(rep.pass);
    CHECK(rep.records.size() == 15); // phi(17) - 1 principal
    CHECK_THROWS_AS(
        flatsum::burgess_report(17, flatsum::ChiSelector::parse("principal"), 0, 8, 2), Error);
    CHECK_THROWS_AS(flatsum::burgess_report(2, flatsum::ChiSelector::parse("all"), 0, 1, 2),
                    Error);
    CHECK_THROWS_AS(flatsum::burgess_report(1, flatsum::ChiSelector::parse("all"), 0, 1, 2),
                    Error);
}

TEST_CASE("render_double trims and normalizes") {
    CHECK(flatsum::render_double(0.0) == "0");
    CHECK(flatsum::render_double(-0.0) == "0");
    CHECK(flatsum::render_double(1.5) == "1.5");
    CHECK(flatsum::render_double(-4.0) == "-4");
    CHECK(flatsum::render_double(1e-7) == "1e-07");
    CHECK(flatsum::render_double(0.1) == "0.1");
    CHECK(flatsum::render_double(1234567890123.0) == "1.23456789012e+12");
}

TEST_CASE("record ordering is canonical") {
    using flatsum::RatioRecord;
    std::vector<RatioRecord> recs;
    auto push = [&](std::int64_t q, const char* chi, const char* h, int r) {
        RatioRecord rec;
        rec.q = q;
        rec.chi = chi;
        rec.h = h;
        rec.r = r;
        recs.push_back(rec);
    };
    push(7, "b", "10", 0);
    push(7, "b", "9", 0); // numeric: 9 before 10
    push(7, "a", "2", 1);
    push(7, "a", "2", 0); // r breaks the tie
    push(5, "z", "0:4", 0);
    push(5, "z", "0:11", 0); // non-numeric: lexicographic
    flatsum::sort_records(recs);
    CHECK(recs[0].q == 5);
    CHECK(recs[0].h == "0:11");
    CHECK(recs[1].h == "0:4");
    CHECK(recs[2].chi == "a");
    CHECK(recs[2].r == 0);
    CHECK(recs[3].r == 1);
    CHECK(recs[4].h == "9");
    CHECK(recs[5].h == "10");
}

TEST_CASE("JSON and CSV renderings are stable shapes") {
    Report empty;
    empty.suite = "demo";
    empty.pass = true;
    CHECK(flatsum::render_json(empty) ==
          "{\n  \"suite\": \"demo\",\n  \"params\": {},\n  \"records\": [],\n"
          "  \"max_dev\": 0,\n  \"pass\": true\n}\n");
    CHECK(flatsum::render_csv(empty) ==
          "# suite: demo\nq,chi,H,r,lhs,bound_or_rhs,deviation_or_ratio\n"
          "# max_dev: 0\n# pass: true\n");

    SweepConfig cfg = flatsum::default_identity_config();
    cfg.q_max = 30;
    cfg.threads = 1;
    Report rep = flatsum::run_identity_suite("fourier", cfg);
    const std::string json = flatsum::render_json(rep);
    CHECK(json.find("\"suite\": \"fourier\"") != std::string::npos);
    CHECK(json.find("\"max_dev\": ") != std::string::npos);
    CHECK(json.find("\"pass\": true") != std::string::npos);
    const std::string csv = flatsum::render_csv(rep);
    CHECK(csv.find("# suite: fourier\n") == 0);
    CHECK(csv.find("q,chi,H,r,lhs,bound_or_rhs,deviation_or_ratio\n") != std::string::npos);
    CHECK(csv.find("# pass: true\n") != std::string::npos);
}

TEST_CASE("reports are byte-identical across reruns and thread counts") {
    SweepConfig cfg = flatsum::default_identity_config();
    cfg.q_max = 40;
    cfg.threads = 1;
    Report first = flatsum::run_identity_suite("fourier", cfg);
    Report second = flatsum::run_identity_suite("fourier", cfg);
    CHECK(flatsum::render_json(first) == flatsum::render_json(second));
    CHECK(flatsum::render_csv(first) == flatsum::render_csv(second));

    cfg.threads = 4;
    Report threaded = flatsum::run_identity_suite("fourier", cfg);
    CHECK(flatsum::render_json(first) == flatsum::render_json(threaded));

    SweepConfig sy = flatsum::default_identity_config();
    sy.q_max = 80;
    sy.threads = 1;
    Report s1 = flatsum::run_identity_suite("symmetry", sy);
    sy.threads = 3;
    Report s3 = flatsum::run_identity_suite("symmetry", sy);
    CHECK(flatsum::render_json(s1) == flatsum::render_json(s3));
}

TEST_CASE("write_report hits files and fails loudly on bad paths") {
    const std::string path = "harness_write_test.json";
    flatsum::write_report("hello\n", path);
    std::ifstream in(path, std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    CHECK(buf.str() == "hello\n");
    in.close();
    std::remove(path.c_str());

    CHECK_THROWS_AS(flatsum::write_report("x", "no-such-dir-xyz/out.json"), Error);
}

TEST_CASE("parallel_for_index covers every index and propagates exceptions") {
    std::vector<int> hits(100, 0);
    flatsum::parallel_for_index(100, 4, [&](std::int64_t i) {
        hits[static_cast<std::size_t>(i)] += 1;
    });
    for (int h : hits) CHECK(h == 1);

    CHECK_THROWS_AS(flatsum::parallel_for_index(
                        10, 3,
                        [&](std::int64_t i) {
                            if (i == 5) throw Error(flatsum::errc::bad_argument, "boom");
                        }),
                    Error);
    CHECK(flatsum::default_thread_count() >= 1);
}
