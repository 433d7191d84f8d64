#include "flatsum/report.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include "flatsum/error.hpp"
#include "flatsum/expsums.hpp"

namespace flatsum {

namespace {

std::string escape_json(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        if (c == '"' || c == '\\') {
            out += '\\';
            out += c;
        } else if (static_cast<unsigned char>(c) < 0x20) {
            char buf[8];
            std::snprintf(buf, sizeof buf, "\\u%04x", static_cast<unsigned>(c));
            out += buf;
        } else {
            out += c;
        }
    }
    return out;
}

bool parse_plain_int(const std::string& s, long long& value) {
    if (s.empty()) return false;
    char* end = nullptr;
    value = std::strtoll(s.c_str(), &end, 10);
    return end == s.c_str() + s.size();
}

std::string complex_json(const Cx& v) {
    return "{\"re\": " + render_double(v.real()) + ", \"im\": " + render_double(v.imag()) + "}";
}

std::string record_json(const RatioRecord& rec) {
    std::string out = "{\"q\": " + std::to_string(rec.q);
    out += ", \"chi\": \"" + escape_json(rec.chi) + "\"";
    out += ", \"h\": \"" + escape_json(rec.h) + "\"";
    out += ", \"r\": " + std::to_string(rec.r);
    out += ", \"lhs\": " + render_double(rec.lhs);
    out += ", \"bound_or_rhs\": " + render_double(rec.rhs);
    out += ", \"deviation_or_ratio\": " + render_double(rec.metric);
    out += "}";
    return out;
}

} // namespace

std::string render_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    std::string out = buf;
    if (out == "-0") out = "0";
    return out;
}

void sort_records(std::vector<RatioRecord>& records) {
    std::stable_sort(records.begin(), records.end(),
                     [](const RatioRecord& a, const RatioRecord& b) {
                         if (a.q != b.q) return a.q < b.q;
                         if (a.chi != b.chi) return a.chi < b.chi;
                         if (a.h != b.h) {
                             long long ha = 0;
                             long long hb = 0;
                             if (parse_plain_int(a.h, ha) && parse_plain_int(b.h, hb)) {
                                 if (ha != hb) return ha < hb;
                             } else {
                                 return a.h < b.h;
                             }
                         }
                         return a.r < b.r;
                     });
}

std::string render_json(const Report& report) {
    std::vector<RatioRecord> recs = report.records;
    sort_records(recs);
    std::string out = "{\n";
    out += "  \"suite\": \"" + escape_json(report.suite) + "\",\n";
    out += "  \"params\": {";
    for (std::size_t i = 0; i < report.params.size(); ++i) {
        out += i == 0 ? "\n" : ",\n";
        out += "    \"" + escape_json(report.params[i].first) + "\": \"" +
               escape_json(report.params[i].second) + "\"";
    }
    out += report.params.empty() ? "},\n" : "\n  },\n";
    out += "  \"records\": [";
    for (std::size_t i = 0; i < recs.size(); ++i) {
        out += i == 0 ? "\n" : ",\n";
        out += "    " + record_json(recs[i]);
    }
    out += recs.empty() ? "],\n" : "\n  ],\n";
    out += report.kind == MetricKind::deviation ? "  \"max_dev\": " : "  \"max_ratio\": ";
    out += render_double(report.max_metric) + ",\n";
    out += std::string("  \"pass\": ") + (report.pass ? "true" : "false") + "\n}\n";
    return out;
}

std::string render_csv(const Report& report) {
    std::vector<RatioRecord> recs = report.records;
    sort_records(recs);
    std::string out = "# suite: " + report.suite + "\n";
    for (const auto& kv : report.params) out += "# " + kv.first + ": " + kv.second + "\n";
    out += "q,chi,H,r,lhs,bound_or_rhs,deviation_or_ratio\n";
    for (const RatioRecord& rec : recs) {
        out += std::to_string(rec.q) + ",\"" + rec.chi + "\"," + rec.h + "," +
               std::to_string(rec.r) + "," + render_double(rec.lhs) + "," +
               render_double(rec.rhs) + "," + render_double(rec.metric) + "\n";
    }
    out += report.kind == MetricKind::deviation ? "# max_dev: " : "# max_ratio: ";
    out += render_double(report.max_metric) + "\n";
    out += std::string("# pass: ") + (report.pass ? "true" : "false") + "\n";
    return out;
}

std::string render_flat_set(const FlatSet& fs) {
    std::string out = "{\"q\": " + std::to_string(fs.q);
    out += ", \"h\": " + render_double(fs.h);
    out += ", \"members\": [";
    for (std::size_t i = 0; i < fs.members.size(); ++i) {
        if (i != 0) out += ", ";
        out += std::to_string(fs.members[i]);
    }
    out += "]}\n";
    return out;
}

std::string render_sum(const SumResult& r, const std::string& kind) {
    std::string out = "{\"kind\": \"" + escape_json(kind) + "\"";
    out += ", \"q\": " + std::to_string(r.params.q);
    out += ", \"m\": " + std::to_string(r.params.m);
    out += ", \"n\": " + std::to_string(r.params.n);
    out += ", \"d\": " + std::to_string(r.params.d);
    out += ", \"chi\": \"" + escape_json(r.params.chi) + "\"";
    out += ", \"value\": " + complex_json(r.value);
    out += ", \"terms\": " + std::to_string(r.term_count);
    out += "}\n";
    return out;
}

std::string render_flat_sum(const FlatSumValue& v, const std::string& kind) {
    std::string out = "{\"kind\": \"" + escape_json(kind) + "\"";
    out += ", \"q\": " + std::to_string(v.q);
    out += ", \"h\": " + render_double(v.h);
    out += ", \"chi\": \"" + escape_json(v.chi_label) + "\"";
    out += ", \"value\": " + complex_json(v.w);
    out += "}\n";
    return out;
}

std::string render_zhang(const ZhangCount& z, std::int64_t q, const std::string& delta_text) {
    std::string out = "{\"q\": " + std::to_string(q);
    out += ", \"delta\": \"" + escape_json(delta_text) + "\"";
    out += ", \"count\": " + std::to_string(z.count);
    out += ", \"main_term\": " + render_double(z.main_term);
    out += ", \"error\": " + render_double(z.error);
    out += "}\n";
    return out;
}

void write_report(const std::string& text, const std::string& path) {
    if (path == "-") {
        std::cout << text;
        std::cout.flush();
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error(errc::io_failure, "write_report: cannot open " + path);
    f << text;
    f.flush();
    if (!f) throw Error(errc::io_failure, "write_report: cannot write " + path);
}

} // namespace flatsum
