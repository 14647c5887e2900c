// Command-line front door: verification suites, exponential-sum evaluation,
// tau tables, quadric counting experiments, oscillatory-integral checks, and
// micro-benchmarks.  Tabular output as RFC 4180 CSV or a single JSON object.

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include "qhl/oscint.hpp"
#include "qhl/quadric.hpp"
#include "qhl/report.hpp"
#include "qhl/suites.hpp"

using namespace qhl;

namespace {

std::string i128_str(i128 v) {
  if (v == 0) return "0";
  bool neg = v < 0;
  std::string out;
  while (v != 0) {
    i128 d = v % 10;
    out += char('0' + int(d < 0 ? -d : d));
    v /= 10;
  }
  if (neg) out += '-';
  std::reverse(out.begin(), out.end());
  return out;
}

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  void add_row(std::vector<std::string> r) { rows.push_back(std::move(r)); }

  std::string to_csv() const {
    std::string out;
    for (std::size_t i = 0; i < columns.size(); ++i) {
      if (i) out += ',';
      out += detail::csv_field(columns[i]);
    }
    out += "\r\n";
    for (const auto& r : rows) {
      for (std::size_t i = 0; i < r.size(); ++i) {
        if (i) out += ',';
        out += detail::csv_field(r[i]);
      }
      out += "\r\n";
    }
    return out;
  }

  std::string to_json() const {
    std::string out = "{\"rows\":[";
    for (std::size_t k = 0; k < rows.size(); ++k) {
      if (k) out += ',';
      out += '{';
      for (std::size_t i = 0; i < columns.size(); ++i) {
        if (i) out += ',';
        out += detail::json_string(columns[i]) + ":" + detail::json_string(rows[k][i]);
      }
      out += '}';
    }
    out += "]}\n";
    return out;
  }
};

void write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open '" + out_path + "' for writing");
  f << text;
}

void emit_table(const Table& t, const std::string& format, const std::string& out_path) {
  write_output(format == "json" ? t.to_json() : t.to_csv(), out_path);
}

DiagonalForm parse_form(const std::vector<i64>& coeffs) {
  if (coeffs.size() != 4) throw CLI::ValidationError("--form needs exactly 4 coefficients");
  return {coeffs[0], coeffs[1], coeffs[2], coeffs[3]};
}

std::string dstr(double v) { return detail::double_repr(v); }

std::string cache_path_for(i64 limit) {
  const char* dir = std::getenv("QHL_CACHE_DIR");
  if (!dir || !*dir) return {};
  return std::string(dir) + "/tau_" + std::to_string(limit) + ".bin";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quadric exponential sum and eigenvalue verification toolkit"};
  app.require_subcommand(1);
  app.fallthrough();  // let --out / --format appear after the subcommand name

  std::string out_path, format = "csv";
  app.add_option("--out", out_path, "output file (default stdout)")->capture_default_str();
  app.add_option("--format", format, "output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();

  RunConfig cfg;

  // verify
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  std::string suite = "all";
  verify->add_option("--suite", suite, "expsums|modforms|quadric|oscint|all")
      ->check(CLI::IsMember({"expsums", "modforms", "quadric", "oscint", "all"}))
      ->capture_default_str();
  verify->add_option("--tol-mult", cfg.tol_mult, "tolerance multiplier");
  verify->add_option("--jobs", cfg.jobs, "worker threads for heavy checks");
  verify->add_option("--seed", cfg.seed, "seed for randomized splittings");
  verify->add_option("--tau-limit", cfg.tau_limit, "eigenvalue table size");

  // expsum
  auto* expsum = app.add_subcommand("expsum", "evaluate S_q(n) for one form");
  std::vector<i64> form_coeffs = {1, 1, 1, 1};
  i64 es_q = 1, es_n = 0;
  expsum->add_option("--form", form_coeffs, "A1,A2,A3,A4")->delimiter(',')->expected(4);
  expsum->add_option("--q", es_q, "modulus")->required();
  expsum->add_option("--n", es_n, "single n (default: all n in [1,q])");

  // tau
  auto* tau = app.add_subcommand("tau", "emit n, tau(n), lambda(n)");
  i64 tau_limit = 1000;
  tau->add_option("--tau-limit", tau_limit, "table size")->capture_default_str();

  // count
  auto* count = app.add_subcommand("count", "weighted zero counts over the quadric");
  std::vector<i64> count_form = {1, 1, 1, -1};
  std::vector<i64> x_list = {50, 100, 200, 400};
  std::string method = "mitm";
  count->add_option("--form", count_form, "A1,A2,A3,A4")->delimiter(',')->expected(4);
  count->add_option("--x-list", x_list, "scales X")->delimiter(',');
  count->add_option("--method", method, "naive|mitm")->check(CLI::IsMember({"naive", "mitm"}));

  // oscint
  auto* oscint = app.add_subcommand("oscint", "oscillatory integral identity checks");
  double tol_mult = 1.0;
  int jobs = 1;
  i64 voronoi_qmax = 2;
  oscint->add_option("--tol-mult", tol_mult, "tolerance multiplier");
  oscint->add_option("--jobs", jobs, "worker threads");
  oscint->add_option("--voronoi-qmax", voronoi_qmax, "largest Voronoi modulus (<= 6)")
      ->check(CLI::Range(i64(0), i64(6)));

  // bench
  auto* bench = app.add_subcommand("bench", "micro-benchmarks");
  i64 bench_tau = 20000, bench_x = 2000;
  bench->add_option("--tau-limit", bench_tau, "table size to time");
  bench->add_option("--x-list", bench_x, "meet-in-middle scale to time");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*verify) {
      auto report = run_suite(suite, cfg);
      std::string text = format == "json" ? report_to_json(report) : report_to_csv(report);
      write_output(text, out_path);
      std::cerr << "suite " << suite << ": " << report.cases << " cases, "
                << report.failures.size() << " failures, max error " << dstr(report.max_error)
                << ", " << dstr(report.elapsed_seconds) << "s\n";
      return report.passed() ? 0 : 1;
    }

    if (*expsum) {
      DiagonalForm F = parse_form(form_coeffs);
      Table t;
      t.columns = {"q", "n", "re", "im", "method"};
      bool a0 = condition_a0(F, es_q);
      Factorization qf = factorize(es_q);
      i64 lo = es_n > 0 ? es_n : 1, hi = es_n > 0 ? es_n : es_q;
      for (i64 n = lo; n <= hi; ++n) {
        cplx v;
        std::string how;
        if (a0) {
          v = sq_closed(F, qf, n);
          how = "closed";
        } else {
          v = a_q_brute(F, es_q, {n, {0, 0, 0}}, BruteTier::factored);
          how = "factored-oracle";
        }
        t.add_row({std::to_string(es_q), std::to_string(n), dstr(v.real()), dstr(v.imag()), how});
      }
      emit_table(t, format, out_path);
      return 0;
    }

    if (*tau) {
      std::string cache = cache_path_for(tau_limit);
      TauTable table = [&] {
        if (!cache.empty()) {
          try {
            return TauTable::load(cache);
          } catch (const std::exception&) {
          }
        }
        TauTable fresh(tau_limit);
        if (!cache.empty()) {
          try {
            fresh.save(cache);
          } catch (const capacity_error&) {
            // tau exceeds 64-bit storage beyond n ~ 2500; cache only small tables
          }
        }
        return fresh;
      }();
      Table t;
      t.columns = {"n", "tau", "lambda"};
      for (i64 n = 1; n <= table.limit(); ++n)
        t.add_row({std::to_string(n), i128_str(table.tau(n)), dstr(table.lambda(n))});
      emit_table(t, format, out_path);
      return 0;
    }

    if (*count) {
      DiagonalForm F = parse_form(count_form);
      i64 maxX = *std::max_element(x_list.begin(), x_list.end());
      TauTable table(std::max<i64>(2 * maxX, 100));
      EnumMethod em = method == "naive" ? EnumMethod::naive : EnumMethod::meet_in_middle;
      SmoothWeight w;
      Table t;
      t.columns = {"X", "zero_count", "N_unit", "N_lambda", "N_abslambda", "ratio", "seconds"};
      for (i64 X : x_list) {
        auto cu = weighted_count(F, X, WeightChoice::unit, w, nullptr, em);
        auto cl = weighted_count(F, X, WeightChoice::lambda, w, &table, em);
        auto ca = weighted_count(F, X, WeightChoice::abs_lambda, w, &table, em);
        double ratio = ca.weighted_value > 0 ? std::abs(cl.weighted_value) / ca.weighted_value : 0;
        t.add_row({std::to_string(X), std::to_string(cu.zero_count), dstr(cu.weighted_value),
                   dstr(cl.weighted_value), dstr(ca.weighted_value), dstr(ratio),
                   dstr(cu.seconds + cl.seconds + ca.seconds)});
      }
      emit_table(t, format, out_path);
      return 0;
    }

    if (*oscint) {
      Table t;
      t.columns = {"check", "parameters", "value", "bound_ratio", "pass"};
      bool all_ok = true;
      auto push = [&](const std::string& check, const std::string& params, double value,
                      double bound) {
        double ratio = bound > 0 ? value / bound : 0.0;
        bool ok = value <= bound;
        all_ok = all_ok && ok;
        t.add_row({check, params, dstr(value), dstr(ratio), ok ? "pass" : "fail"});
      };
      SmoothFunction1D g = scaled_bump(500.0, 2000.0);
      if (voronoi_qmax > 0) {
        const TauTable& table = detail::shared_tau();
        for (i64 q = 1; q <= voronoi_qmax; ++q) {
          auto checks = voronoi_suite(q, g, table, 6, 1e-5, jobs);
          for (i64 b = 0; b < q; ++b)
            push("voronoi", "q=" + std::to_string(q) + ",b=" + std::to_string(b),
                 checks[std::size_t(b)].abs_diff,
                 1e-4 * (1.0 + std::abs(checks[std::size_t(b)].lhs)) * tol_mult);
        }
      }
      for (i64 q : {1, 2, 3, 5, 8}) {
        auto c = poisson_check(q, q / 2, g);
        push("poisson", "q=" + std::to_string(q) + ",b=" + std::to_string(q / 2), c.abs_diff,
             1e-6 * (1.0 + std::abs(c.lhs)) * tol_mult);
      }
      SmoothWeight w;
      for (double delta : {1.0, 0.5, 0.25})
        push("dissection", "delta=" + dstr(delta),
             dissection_check(w, delta, {1.25, 1.25, 1.25, 1.25}),
             1e-6 * delta * delta * delta * tol_mult);
      SmoothFunction1D pw = poly_window(0.5, 2.0);
      for (double A : {1e2, 1e3, 1e4}) {
        double v = std::abs(phase_integral(A, -2.0 * A, pw)) * std::sqrt(A);
        push("stationary_phase", "A=" + dstr(A) + ",B=-2A", v, 5.0 * tol_mult);
      }
      emit_table(t, format, out_path);
      return all_ok ? 0 : 1;
    }

    if (*bench) {
      Table t;
      t.columns = {"name", "parameters", "seconds"};
      {
        detail::Stopwatch sw;
        TauTable table(bench_tau);
        t.add_row({"tau_build", "N=" + std::to_string(bench_tau), dstr(sw.seconds())});
      }
      {
        detail::Stopwatch sw;
        auto c = weighted_count(DiagonalForm(1, 1, 1, -1), bench_x, WeightChoice::unit, {},
                                nullptr);
        t.add_row({"mitm_enumerate", "X=" + std::to_string(bench_x) + ",zeros=" +
                                         std::to_string(c.zero_count),
                   dstr(sw.seconds())});
      }
      {
        Factorization qf;
        qf.entries = {{3, 5}, {5, 4}, {7, 3}, {13, 2}};
        DiagonalForm F(1, 1, 1, 1);
        detail::Stopwatch sw;
        volatile double sink = 0.0;
        for (int i = 0; i < 10000; ++i)
          sink = sink + std::abs(sq_closed(F, qf, 1 + i64(i) * 9973 % qf.value()));
        t.add_row({"sq_closed_10k", "q=" + std::to_string(qf.value()), dstr(sw.seconds())});
      }
      emit_table(t, format, out_path);
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
