#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "flatsum/flatnum.hpp"

namespace flatsum {

struct SumResult;

// One comparison row: an observed quantity against its reference or bound.
// `h` is free-form ("4", "q/2" resolved to a number, "m:n:d" for sums keyed
// by arguments, a delta for density counts); `r` is 0 when unused.
struct RatioRecord {
    std::int64_t q = 0;
    std::string chi;
    std::string h;
    int r = 0;
    double lhs = 0.0;
    double rhs = 0.0;
    double metric = 0.0;  // deviation for identities, lhs/rhs for bounds
};

enum class MetricKind { deviation, ratio };

struct Report {
    std::string suite;
    std::vector<std::pair<std::string, std::string>> params;  // rendered, in order
    std::vector<RatioRecord> records;
    MetricKind kind = MetricKind::deviation;
    double max_metric = 0.0;
    bool pass = false;
};

// Shortest round-trip-ish text for a double (%.12g, "-0" normalized to "0").
std::string render_double(double v);

// Canonical order: q, then chi label, then h (numeric when both sides parse
// as plain integers, else lexicographic), then r.  Rendering sorts a copy,
// so reports are byte-identical however the records were produced.
void sort_records(std::vector<RatioRecord>& records);

std::string render_json(const Report& report);
std::string render_csv(const Report& report);

// One-shot JSON documents for the direct CLI queries.
std::string render_flat_set(const FlatSet& fs);
std::string render_sum(const SumResult& r, const std::string& kind);
std::string render_flat_sum(const FlatSumValue& v, const std::string& kind);
std::string render_zhang(const ZhangCount& z, std::int64_t q, const std::string& delta_text);

// Writes text to path, or to stdout when path is "-".
void write_report(const std::string& text, const std::string& path);

} // namespace flatsum
