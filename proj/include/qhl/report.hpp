#ifndef QHL_REPORT_HPP
#define QHL_REPORT_HPP

// Verification reports and their CSV / JSON serialization.  CSV follows
// RFC 4180 quoting; JSON is one object with fixed key order.  Doubles are
// printed with shortest round-trip formatting so re-emission is
// byte-identical and parsing restores the exact value.

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "qhl/arith.hpp"

namespace qhl {

struct FailureRecord {
  std::string parameters;
  double expected;
  double got;
  double tolerance;

  bool operator==(const FailureRecord&) const = default;
};

struct VerificationReport {
  std::string suite;
  i64 cases = 0;
  std::vector<FailureRecord> failures;
  double max_error = 0.0;
  double elapsed_seconds = 0.0;

  bool operator==(const VerificationReport&) const = default;
  bool passed() const { return failures.empty(); }

  // record one case; stores a failure row when the error exceeds tolerance
  void record(const std::string& parameters, double expected, double got, double tolerance) {
    ++cases;
    double err = std::abs(expected - got);
    max_error = std::max(max_error, err);
    if (!(err <= tolerance)) failures.push_back({parameters, expected, got, tolerance});
  }

  void record_flag(const std::string& parameters, bool ok) {
    record(parameters, 0.0, ok ? 0.0 : 1.0, 0.5);
  }

  void merge(const VerificationReport& other) {
    cases += other.cases;
    max_error = std::max(max_error, other.max_error);
    elapsed_seconds += other.elapsed_seconds;
    for (const auto& f : other.failures) failures.push_back({other.suite + ":" + f.parameters,
                                                            f.expected, f.got, f.tolerance});
  }
};

namespace detail {

inline std::string double_repr(double v) {
  char buf[40];
  auto r = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, r.ptr);
}

inline double parse_double(const std::string& s) {
  double v = 0.0;
  auto r = std::from_chars(s.data(), s.data() + s.size(), v);
  if (r.ec != std::errc() || r.ptr != s.data() + s.size())
    throw std::domain_error("parse_double: bad number '" + s + "'");
  return v;
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

// split a CSV document into records of fields, honoring RFC 4180 quoting
// (quoted fields may contain commas, quotes, and line breaks)
inline std::vector<std::vector<std::string>> csv_records(const std::string& text) {
  std::vector<std::vector<std::string>> out;
  std::vector<std::string> rec;
  std::string cur;
  bool quoted = false, any = false;
  auto end_field = [&] {
    rec.push_back(cur);
    cur.clear();
    any = false;
  };
  auto end_record = [&] {
    if (any || !rec.empty() || !cur.empty()) {
      end_field();
      out.push_back(rec);
      rec.clear();
    }
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          cur += '"';
          ++i;
        } else
          quoted = false;
      } else
        cur += c;
    } else if (c == '"') {
      quoted = true;
      any = true;
    } else if (c == ',') {
      end_field();
      any = true;  // a comma implies a following (possibly empty) field
    } else if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') {
      end_record();
      ++i;
    } else if (c == '\n')
      end_record();
    else {
      cur += c;
      any = true;
    }
  }
  end_record();
  return out;
}

inline std::string json_string(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else
          out += c;
    }
  }
  out += '"';
  return out;
}

}  // namespace detail

inline const char* kReportCsvHeader =
    "suite,cases,max_error,elapsed_seconds,parameters,expected,got,tolerance";

inline std::string report_to_csv(const VerificationReport& r) {
  std::string out = kReportCsvHeader;
  out += "\r\n";
  for (const auto& f : r.failures) {
    out += detail::csv_field(r.suite);
    out += ',';
    out += std::to_string(r.cases);
    out += ',';
    out += detail::double_repr(r.max_error);
    out += ',';
    out += detail::double_repr(r.elapsed_seconds);
    out += ',';
    out += detail::csv_field(f.parameters);
    out += ',';
    out += detail::double_repr(f.expected);
    out += ',';
    out += detail::double_repr(f.got);
    out += ',';
    out += detail::double_repr(f.tolerance);
    out += "\r\n";
  }
  return out;
}

inline VerificationReport report_from_csv(const std::string& text) {
  auto recs = detail::csv_records(text);
  if (recs.empty()) throw std::domain_error("report_from_csv: empty input");
  std::string header;
  for (std::size_t i = 0; i < recs[0].size(); ++i) {
    if (i) header += ',';
    header += recs[0][i];
  }
  if (header != kReportCsvHeader) throw std::domain_error("report_from_csv: bad header");
  VerificationReport r;
  for (std::size_t k = 1; k < recs.size(); ++k) {
    const auto& f = recs[k];
    if (f.size() != 8) throw std::domain_error("report_from_csv: bad record");
    r.suite = f[0];
    r.cases = std::stoll(f[1]);
    r.max_error = detail::parse_double(f[2]);
    r.elapsed_seconds = detail::parse_double(f[3]);
    r.failures.push_back({f[4], detail::parse_double(f[5]), detail::parse_double(f[6]),
                          detail::parse_double(f[7])});
  }
  return r;
}

inline std::string report_to_json(const VerificationReport& r) {
  std::string out = "{";
  out += "\"suite\":" + detail::json_string(r.suite);
  out += ",\"cases\":" + std::to_string(r.cases);
  out += ",\"max_error\":" + detail::double_repr(r.max_error);
  out += ",\"elapsed_seconds\":" + detail::double_repr(r.elapsed_seconds);
  out += ",\"failures\":[";
  for (std::size_t i = 0; i < r.failures.size(); ++i) {
    const auto& f = r.failures[i];
    if (i) out += ',';
    out += "{\"parameters\":" + detail::json_string(f.parameters);
    out += ",\"expected\":" + detail::double_repr(f.expected);
    out += ",\"got\":" + detail::double_repr(f.got);
    out += ",\"tolerance\":" + detail::double_repr(f.tolerance);
    out += "}";
  }
  out += "]}\n";
  return out;
}

namespace detail {

// minimal parser for exactly the object report_to_json writes
struct JsonCursor {
  const std::string& s;
  std::size_t i = 0;

  void expect(const std::string& lit) {
    if (s.compare(i, lit.size(), lit) != 0)
      throw std::domain_error("report_from_json: expected '" + lit + "' at offset " +
                              std::to_string(i));
    i += lit.size();
  }
  std::string string_value() {
    expect("\"");
    std::string out;
    while (i < s.size() && s[i] != '"') {
      char c = s[i++];
      if (c == '\\') {
        if (i >= s.size()) break;
        char e = s[i++];
        switch (e) {
          case 'n': out += '\n'; break;
          case 'r': out += '\r'; break;
          case 't': out += '\t'; break;
          case 'u': {
            if (i + 4 > s.size()) throw std::domain_error("report_from_json: bad escape");
            out += char(std::stoi(s.substr(i, 4), nullptr, 16));
            i += 4;
            break;
          }
          default: out += e;
        }
      } else
        out += c;
    }
    expect("\"");
    return out;
  }
  std::string number_token() {
    std::size_t j = i;
    while (j < s.size() && (std::isdigit(static_cast<unsigned char>(s[j])) ||
                            std::string("+-.eE").find(s[j]) != std::string::npos))
      ++j;
    std::string tok = s.substr(i, j - i);
    i = j;
    return tok;
  }
};

}  // namespace detail

inline VerificationReport report_from_json(const std::string& text) {
  detail::JsonCursor c{text};
  VerificationReport r;
  c.expect("{\"suite\":");
  r.suite = c.string_value();
  c.expect(",\"cases\":");
  r.cases = std::stoll(c.number_token());
  c.expect(",\"max_error\":");
  r.max_error = detail::parse_double(c.number_token());
  c.expect(",\"elapsed_seconds\":");
  r.elapsed_seconds = detail::parse_double(c.number_token());
  c.expect(",\"failures\":[");
  while (text[c.i] != ']') {
    if (!r.failures.empty()) c.expect(",");
    FailureRecord f;
    c.expect("{\"parameters\":");
    f.parameters = c.string_value();
    c.expect(",\"expected\":");
    f.expected = detail::parse_double(c.number_token());
    c.expect(",\"got\":");
    f.got = detail::parse_double(c.number_token());
    c.expect(",\"tolerance\":");
    f.tolerance = detail::parse_double(c.number_token());
    c.expect("}");
    r.failures.push_back(f);
  }
  c.expect("]}");
  return r;
}

enum class ReportFormat { csv, json };

inline void emit(const VerificationReport& r, ReportFormat fmt, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("emit: cannot open '" + path + "' for writing");
  out << (fmt == ReportFormat::csv ? report_to_csv(r) : report_to_json(r));
  if (!out) throw std::runtime_error("emit: write failed for '" + path + "'");
}

struct RunConfig {
  std::vector<std::array<i64, 4>> forms = {
      {1, 1, 1, 1}, {1, 1, 1, -1}, {1, 2, 3, -6}, {2, 3, 5, 7}, {3, 1, 1, -1}};
  std::vector<i64> primes = {2, 3, 5, 7, 11, 13};
  i64 prime_power_cap = 2500;
  std::vector<i64> x_list = {50, 100, 200, 400};
  double tol_mult = 1.0;
  i64 tau_limit = 20000;
  std::string cache_dir;  // empty: no tau-table caching
  u64 seed = 1;
  int jobs = 1;

  void validate() const {
    if (forms.empty() || primes.empty() || x_list.empty())
      throw std::domain_error("RunConfig: all grids must be non-empty");
    if (tol_mult <= 0.0) throw std::domain_error("RunConfig: tol_mult must be positive");
    if (tau_limit < 10) throw std::domain_error("RunConfig: tau_limit too small");
    if (jobs < 1) throw std::domain_error("RunConfig: jobs must be >= 1");
  }
};

}  // namespace qhl

#endif  // QHL_REPORT_HPP
