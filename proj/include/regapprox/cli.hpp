#pragma once

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "regapprox/regapprox.hpp"

namespace regapprox::cli {

struct Options {
  std::string poly;
  std::string x;
  std::string num = "2,1";
  std::string den = "3,1";
  std::string offset = "0";
  std::string n = "1:20";
  std::string schedule = "arithmetic";
  std::string methods = "newton,halley,noor";
  std::string x0;
  std::string target = "auto";
  std::string target_poly;
  std::string closed_form;
  std::string table = "all";
  std::string out;
  std::string format = "csv";
  std::optional<std::uint64_t> power;
  std::uint64_t stride = 0;
  std::uint64_t steps = 10;
  Real::Bits precision = 256;
  unsigned jobs = 1;
  std::size_t digit_budget = 200000;
  int digits = 6;
  bool time = false;
};

/// A CSV block with optional "# ..." comment lines ahead of the header.
struct Block {
  std::vector<std::string> comments;
  CsvRow header;
  std::vector<CsvRow> rows;
};

namespace detail {

inline std::uint64_t parse_u64(const std::string& text, const std::string& parameter) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
    throw InvalidArgument(parameter, "expected a non-negative integer, got '" + text + "'");
  return v;
}

inline std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else if (c != ' ') {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

/// "5,20,35", "1:100" or "1:100:5".
inline std::vector<std::uint64_t> parse_n_list(const std::string& text) {
  constexpr std::uint64_t kMaxCount = 1000000;
  std::vector<std::uint64_t> out;
  if (text.find(':') != std::string::npos) {
    auto parts = split(text, ':');
    if (parts.size() < 2 || parts.size() > 3) throw InvalidArgument("n", "range must be a:b or a:b:step");
    const auto a = parse_u64(parts[0], "n"), b = parse_u64(parts[1], "n");
    const auto s = parts.size() == 3 ? parse_u64(parts[2], "n") : 1;
    if (s == 0) throw InvalidArgument("n", "range step must be positive");
    if (b < a) throw InvalidArgument("n", "range end " + std::to_string(b) + " is below its start");
    if ((b - a) / s >= kMaxCount) throw InvalidArgument("n", "range has more than 1000000 entries");
    for (std::uint64_t v = a; v <= b; v += s) out.push_back(v);
    return out;
  }
  for (const auto& p : split(text, ',')) out.push_back(parse_u64(p, "n"));
  return out;
}

inline IndexPair parse_index(const std::string& text, const std::string& parameter) {
  auto parts = split(text, ',');
  if (parts.size() != 2) throw InvalidArgument(parameter, "expected 'row,col', got '" + text + "'");
  const auto r = parse_u64(parts[0], parameter), c = parse_u64(parts[1], parameter);
  return {static_cast<std::size_t>(r), static_cast<std::size_t>(c)};
}

inline Weights parse_weights(const Options& o) {
  if (o.x.empty()) throw InvalidArgument("x", "weights are required");
  return Weights(parse_rational_list(o.x, "x"));
}

inline Polynomial parse_poly(const Options& o) {
  if (o.poly.empty()) throw InvalidArgument("poly", "a polynomial is required (u:... or c:...)");
  return parse_polynomial(o.poly);
}

inline std::string bool_text(bool b) { return b ? "true" : "false"; }

inline std::string complex_text(const Complex& z, int digits) {
  if (z.im.is_zero()) return z.re.to_sci(digits);
  return z.re.to_sci(digits) + (z.im.sign() < 0 ? "" : "+") + z.im.to_sci(digits) + "i";
}

inline void print_pretty(std::ostream& os, const Block& b) {
  std::vector<std::size_t> width(b.header.size(), 0);
  auto widen = [&](const CsvRow& r) {
    for (std::size_t i = 0; i < r.size() && i < width.size(); ++i) width[i] = std::max(width[i], r[i].size());
  };
  widen(b.header);
  for (const auto& r : b.rows) widen(r);
  auto line = [&](const CsvRow& r) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (i) os << "  ";
      if (i + 1 == r.size()) os << r[i];
      else os << std::left << std::setw(static_cast<int>(width[i])) << r[i];
    }
    os << std::right << '\n';
  };
  line(b.header);
  for (const auto& r : b.rows) line(r);
}

inline void print_blocks(std::ostream& os, const std::vector<Block>& blocks, const std::string& format) {
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (i) os << '\n';
    for (const auto& c : blocks[i].comments) os << "# " << c << '\n';
    if (blocks[i].header.empty()) continue;
    if (format == "pretty") {
      print_pretty(os, blocks[i]);
    } else {
      write_csv_row(os, blocks[i].header);
      for (const auto& r : blocks[i].rows) write_csv_row(os, r);
    }
  }
}

inline Block matrix_block(const SquareMatrix<Rational>& m) {
  Block b;
  b.header.push_back("row");
  for (std::size_t j = 1; j <= m.size(); ++j) b.header.push_back("col" + std::to_string(j));
  for (std::size_t i = 0; i < m.size(); ++i) {
    CsvRow r{std::to_string(i + 1)};
    for (std::size_t j = 0; j < m.size(); ++j) r.push_back(to_string(m(i, j)));
    b.rows.push_back(std::move(r));
  }
  return b;
}

inline CsvRow approx_header() {
  return {"n", "value_num", "value_den", "abs_error", "den_digits", "reduced_den_digits"};
}

inline CsvRow approx_row(const ApproximationRecord& r, int digits) {
  if (!r.available) return {std::to_string(r.n), "", "", "", "", ""};
  return {std::to_string(r.n),
          r.value.get_num().get_str(),
          r.value.get_den().get_str(),
          r.abs_error ? r.abs_error->to_sci(digits) : "",
          std::to_string(r.den_digits),
          std::to_string(r.reduced_den_digits)};
}

/// Real root with 1-based canonical index `text` of g.
inline RealRootRefiner indexed_root(const Polynomial& g, const std::string& text, Real::Bits bits) {
  const auto k = parse_u64(text, "target");
  auto roots = all_roots(g, bits);
  if (k < 1 || k > roots.roots.size())
    throw InvalidArgument("target", "root index must be 1.." + std::to_string(roots.roots.size()));
  const auto& est = roots.roots[k - 1];
  if (!est.is_real) throw DomainError("target: root " + text + " is not real");
  return refiner_for(g, est);
}

inline std::vector<Block> cmd_repr(const Options& o) {
  auto f = parse_poly(o);
  return {matrix_block(build(f, parse_weights(o)).entries)};
}

inline std::vector<Block> cmd_power(const Options& o) {
  auto f = parse_poly(o);
  if (!o.power) throw InvalidArgument("n", "an exponent is required");
  auto p = mat_pow(build(f, parse_weights(o)), *o.power);
  auto b = matrix_block(p.entries);
  b.comments.push_back("n=" + std::to_string(*o.power));
  return {b};
}

inline std::vector<Block> cmd_approx(const Options& o) {
  const auto f = parse_poly(o);
  const auto x = parse_weights(o);
  const auto m = build(f, x);
  RatioSpec spec{parse_index(o.num, "num"), parse_index(o.den, "den"), Rational(0)};
  regapprox::detail::check_index(spec.numerator, f.degree(), "num");
  regapprox::detail::check_index(spec.denominator, f.degree(), "den");

  Block b;
  std::optional<ConvergenceReport> report;
  auto need_report = [&]() -> const ConvergenceReport& {
    if (!report) report = analyze(f, x, o.precision);
    return *report;
  };

  std::optional<RealRootRefiner> target;
  if (o.target == "auto") {
    if (!o.target_poly.empty())
      throw InvalidArgument("target", "an explicit root index is required with --target-poly");
    const auto& rep = need_report();
    const auto& est = rep.roots.roots[rep.dominant];
    if (!est.is_real) throw DomainError("target: the dominant root is not real; pass --target none");
    target = refiner_for(f, est);
  } else if (o.target != "none") {
    const auto g = o.target_poly.empty() ? f : parse_polynomial(o.target_poly);
    target = indexed_root(g, o.target, o.precision);
  }

  if (o.offset == "auto") {
    const auto& rep = need_report();
    spec.offset = auto_offset(rep, limit_ratio(rep, spec.numerator, spec.denominator));
    b.comments.push_back("offset=" + to_string(spec.offset) + " (auto)");
  } else {
    spec.offset = parse_rational(o.offset, "offset");
  }

  RealRootRefiner* t = target ? &*target : nullptr;
  std::vector<ApproximationRecord> recs;
  if (o.stride > 0) {
    Schedule s = Schedule::Arithmetic;
    if (o.schedule == "geometric") s = Schedule::Geometric;
    else if (o.schedule != "arithmetic")
      throw InvalidArgument("schedule", "expected arithmetic or geometric, got '" + o.schedule + "'");
    if (o.steps < 1) throw InvalidArgument("steps", "must be at least 1");
    recs = accelerated_sequence(m, o.stride, spec, o.steps, s, t);
  } else {
    recs = ratio_sequence(m, spec, parse_n_list(o.n), t);
  }
  b.header = approx_header();
  for (const auto& r : recs) b.rows.push_back(approx_row(r, o.digits));
  return {b};
}

inline std::vector<Block> cmd_c_ratio(const Options& o) {
  const auto f = parse_poly(o);
  const auto rep = analyze(f, parse_weights(o), o.precision);
  Block b;
  b.comments.push_back("k=" + std::to_string(rep.dominant + 1) + " l=" + std::to_string(rep.runner_up + 1) +
                       " c=" + rep.c_value.to_sci(o.digits) + " c_inverse=" + rep.c_inverse.to_sci(o.digits) +
                       " certified=" + bool_text(rep.certified) +
                       " precision_bits=" + std::to_string(rep.precision_bits));
  b.header = {"index", "root", "gamma", "gamma_modulus", "gamma_radius", "role"};
  for (std::size_t j = 0; j < f.degree(); ++j) {
    std::string role = j == rep.dominant ? "dominant" : j == rep.runner_up ? "runner_up" : "";
    b.rows.push_back({std::to_string(j + 1), complex_text(rep.roots.roots[j].center, o.digits),
                      complex_text(rep.gamma[j], o.digits), rep.gamma_modulus[j].to_sci(o.digits),
                      rep.gamma_radius[j].to_sci(3), role});
  }
  return {b};
}

inline std::vector<Block> cmd_limits(const Options& o, bool pairs_given) {
  const auto f = parse_poly(o);
  const auto rep = analyze(f, parse_weights(o), o.precision);
  const std::size_t m = f.degree();

  if (!o.closed_form.empty()) {
    IndexPair which = parse_index(o.closed_form, "closed-form");
    auto lim = cubic_limit_matrix(rep, which);
    Block b;
    b.comments.push_back("lim M^n(" + o.closed_form + ") / M^n(row,col)");
    b.header.push_back("row");
    for (std::size_t j = 1; j <= lim.size(); ++j) b.header.push_back("col" + std::to_string(j));
    for (std::size_t i = 0; i < lim.size(); ++i) {
      CsvRow r{std::to_string(i + 1)};
      for (std::size_t j = 0; j < lim.size(); ++j) r.push_back(lim(i, j).to_sci(o.digits));
      b.rows.push_back(std::move(r));
    }
    return {b};
  }

  std::vector<std::pair<IndexPair, IndexPair>> pairs;
  if (pairs_given) {
    pairs.emplace_back(parse_index(o.num, "num"), parse_index(o.den, "den"));
  } else {
    for (std::size_t i = 1; i <= m; ++i)
      for (std::size_t j = 1; j <= m; ++j)
        for (std::size_t p = 1; p <= m; ++p)
          for (std::size_t q = 1; q <= m; ++q) pairs.push_back({{i, j}, {p, q}});
  }
  Block b;
  b.header = {"i", "j", "p", "q", "L", "rate_constant", "degenerate", "L_error"};
  std::size_t skipped = 0;
  for (const auto& [num, den] : pairs) {
    std::optional<LimitPrediction> pred;
    try {
      pred = limit_ratio(rep, num, den);
    } catch (const DomainError&) {
      if (pairs_given) throw;
      ++skipped;
      continue;
    }
    b.rows.push_back({std::to_string(num.row), std::to_string(num.col), std::to_string(den.row),
                      std::to_string(den.col), complex_text(pred->limit, o.digits),
                      pred->rate_constant.to_sci(o.digits), bool_text(pred->degenerate),
                      pred->limit_error.to_sci(2)});
  }
  b.comments.push_back("k=" + std::to_string(rep.dominant + 1) + " c=" + rep.c_value.to_sci(o.digits));
  if (skipped) b.comments.push_back("skipped " + std::to_string(skipped) + " pairs whose denominator limit vanishes");
  return {b};
}

inline std::vector<Block> cmd_compare(const Options& o) {
  const auto f = parse_poly(o);
  if (o.x0.empty()) throw InvalidArgument("x0", "a starting point is required");
  const Rational x0 = parse_rational(o.x0, "x0");
  std::vector<Method> methods;
  for (const auto& s : split(o.methods, ',')) methods.push_back(parse_method(s));

  std::optional<RealRootRefiner> target;
  if (o.target == "auto") {
    // The real root nearest x0.
    auto roots = all_roots(f, o.precision);
    std::optional<std::size_t> best;
    Real best_d(0L, o.precision);
    const Real at(x0, o.precision);
    for (const auto& r : roots.roots) {
      if (!r.is_real) continue;
      Real d = abs(r.center.re - at);
      if (!best || d < best_d) {
        best = r.index;
        best_d = d;
      }
    }
    if (!best) throw DomainError("target: polynomial has no real root");
    target = refiner_for(f, roots.roots[*best]);
  } else {
    target = indexed_root(o.target_poly.empty() ? f : parse_polynomial(o.target_poly), o.target, o.precision);
  }

  std::vector<Block> out;
  for (auto method : methods) {
    Block b;
    b.comments.push_back("method=" + std::string(method_name(method)) + " x0=" + to_string(x0));
    b.header = approx_header();
    for (const auto& r : run_method(method, f, x0, o.steps, *target, o.digit_budget))
      b.rows.push_back(approx_row(r, o.digits));
    out.push_back(std::move(b));
  }
  return out;
}

inline std::vector<Block> cmd_roots(const Options& o) {
  const auto f = parse_poly(o);
  const auto roots = all_roots(f, o.precision);
  const int digits = std::max(6, static_cast<int>(std::floor(static_cast<double>(o.precision) * 0.30103)));
  Block b;
  b.header = {"index", "re", "im", "radius", "is_real"};
  for (const auto& r : roots.roots)
    b.rows.push_back({std::to_string(r.index + 1), r.center.re.to_sci(digits),
                      r.is_real ? "0" : r.center.im.to_sci(digits), r.radius.to_sci(3), bool_text(r.is_real)});
  return {b};
}

inline std::vector<Block> cmd_tables(const Options& o, std::ostream& err) {
  std::vector<int> ids;
  if (o.table == "all") {
    ids = {1, 2, 3, 4, 5, 6, 7};
  } else {
    for (const auto& s : split(o.table, ',')) {
      const auto id = parse_u64(s, "table");
      if (id < 1 || id > 7) throw InvalidArgument("table", "table id must be 1..7, got " + s);
      ids.push_back(static_cast<int>(id));
    }
  }
  BenchConfig cfg;
  cfg.precision_bits = o.precision;
  cfg.jobs = std::max(1u, o.jobs);
  cfg.digit_budget = o.digit_budget;

  std::vector<TableOutput> tables;
  for (int id : ids) {
    const auto start = std::chrono::steady_clock::now();
    tables.push_back(reproduce_table(id, cfg));
    if (o.time) {
      const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start;
      err << "table " << id << ": " << std::fixed << std::setprecision(3) << dt.count() << " s\n"
          << std::defaultfloat;
    }
  }
  const std::filesystem::path dir = o.out.empty() ? std::filesystem::path("results") : std::filesystem::path(o.out);
  write_tables(tables, dir);

  Block b;
  b.comments.push_back("written to " + dir.string());
  b.header = {"table", "cells", "exact", "within_tolerance", "mismatch"};
  for (const auto& t : tables) {
    b.rows.push_back({std::to_string(t.id), std::to_string(t.report.cells.size()),
                      std::to_string(t.report.count(MatchStatus::Exact)),
                      std::to_string(t.report.count(MatchStatus::WithinTolerance)),
                      std::to_string(t.report.mismatches())});
    for (const auto& n : t.notes) b.comments.push_back("table " + std::to_string(t.id) + ": " + n);
  }
  return {b};
}

}  // namespace detail

/// Exit codes: 0 success, 1 invalid arguments or I/O failure, 2 the
/// mathematics refused (no dominant root, zero denominators, divergence).
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Rational approximation of algebraic numbers by powers of regular representation matrices"};
  app.name("regapprox");
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "Read options from a TOML or INI file");

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--precision", o.precision, "Working precision in bits")->check(CLI::Range(64, 1 << 20));
    sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "pretty"}));
    sub->add_option("--digits", o.digits, "Significant digits for decimal output")->check(CLI::Range(1, 100000));
    sub->add_flag("--time", o.time, "Report wall time on stderr");
  };
  auto add_poly = [&](CLI::App* sub) {
    sub->add_option("--poly", o.poly, "u:u1,...,um or c:1,c_{m-1},...,c0");
  };
  auto add_x = [&](CLI::App* sub) { sub->add_option("--x", o.x, "Weights x0,...,x_{m-1}"); };
  auto add_file_out = [&](CLI::App* sub) { sub->add_option("--out", o.out, "Write output to this file"); };

  auto* repr = app.add_subcommand("repr", "Print the regular representation matrix M(x,u)");
  add_poly(repr);
  add_x(repr);
  add_common(repr);
  add_file_out(repr);

  auto* pw = app.add_subcommand("power", "Print M^n exactly");
  add_poly(pw);
  add_x(pw);
  pw->add_option("--n", o.power, "Exponent");
  add_common(pw);
  add_file_out(pw);

  auto* approx = app.add_subcommand("approx", "Entry ratios of M^n as approximations of a root");
  add_poly(approx);
  add_x(approx);
  approx->add_option("--num", o.num, "Numerator entry i,j (1-based)");
  approx->add_option("--den", o.den, "Denominator entry p,q (1-based)");
  approx->add_option("--offset", o.offset, "Rational added to each ratio, or 'auto'");
  approx->add_option("--n", o.n, "Powers: list 5,20,35 or range a:b[:step]");
  approx->add_option("--stride", o.stride, "Accelerate with N = M^stride");
  approx->add_option("--schedule", o.schedule, "arithmetic (N^t) or geometric (N_t = N_{t-1}^stride)");
  approx->add_option("--steps", o.steps, "Accelerated steps");
  approx->add_option("--target", o.target, "Root for abs_error: auto (dominant), none, or a 1-based index");
  approx->add_option("--target-poly", o.target_poly, "Take the --target root from this polynomial");
  add_common(approx);
  add_file_out(approx);

  auto* cr = app.add_subcommand("c-ratio", "Dominance data: gamma_j, k and c(x,alpha_k)");
  add_poly(cr);
  add_x(cr);
  add_common(cr);
  add_file_out(cr);

  auto* lim = app.add_subcommand("limits", "Predicted limits and rate constants of entry ratios");
  add_poly(lim);
  add_x(lim);
  auto* lim_num = lim->add_option("--num", o.num, "Numerator entry i,j; all pairs when omitted");
  auto* lim_den = lim->add_option("--den", o.den, "Denominator entry p,q");
  lim_num->needs(lim_den);
  lim_den->needs(lim_num);
  lim->add_option("--closed-form", o.closed_form, "Cubic only: matrix of lim M^n(2,2)/M^n(h,k), or with (3,3) on top");
  add_common(lim);
  add_file_out(lim);

  auto* cmp = app.add_subcommand("compare", "Newton, Halley and Noor iterates in exact arithmetic");
  add_poly(cmp);
  cmp->add_option("--methods", o.methods, "Comma-separated subset of newton,halley,noor");
  cmp->add_option("--x0", o.x0, "Rational starting point");
  cmp->add_option("--steps", o.steps, "Iterations")->check(CLI::Range(1, 1000000));
  cmp->add_option("--target", o.target, "Root for abs_error: auto (nearest x0) or a 1-based index");
  cmp->add_option("--target-poly", o.target_poly, "Take the --target root from this polynomial");
  cmp->add_option("--digit-budget", o.digit_budget, "Stop before denominators exceed this many digits (0: none)");
  add_common(cmp);
  add_file_out(cmp);

  auto* tab = app.add_subcommand("tables", "Reproduce the benchmark tables and the discrepancy report");
  tab->add_option("--table", o.table, "all, or comma-separated ids 1..7");
  tab->add_option("--out", o.out, "Output directory (default: results)")->envname("REGAPPROX_OUT_DIR");
  tab->add_option("--jobs", o.jobs, "Worker threads")->check(CLI::Range(1u, 256u));
  tab->add_option("--digit-budget", o.digit_budget, "Digit cap for the iterative baselines");
  add_common(tab);

  auto* rts = app.add_subcommand("roots", "Roots in canonical order with inclusion radii");
  add_poly(rts);
  add_common(rts);
  add_file_out(rts);

  for (auto* sub : app.get_subcommands({})) sub->configurable();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 1;
  }

  const auto start = std::chrono::steady_clock::now();
  std::string which;
  try {
    std::vector<Block> blocks;
    if (repr->parsed()) which = "repr", blocks = detail::cmd_repr(o);
    else if (pw->parsed()) which = "power", blocks = detail::cmd_power(o);
    else if (approx->parsed()) which = "approx", blocks = detail::cmd_approx(o);
    else if (cr->parsed()) which = "c-ratio", blocks = detail::cmd_c_ratio(o);
    else if (lim->parsed()) which = "limits", blocks = detail::cmd_limits(o, lim_num->count() > 0);
    else if (cmp->parsed()) which = "compare", blocks = detail::cmd_compare(o);
    else if (tab->parsed()) which = "tables", blocks = detail::cmd_tables(o, err);
    else if (rts->parsed()) which = "roots", blocks = detail::cmd_roots(o);

    if (!o.out.empty() && which != "tables") {
      std::ofstream file(o.out, std::ios::binary);
      if (!file) throw std::runtime_error("out: cannot open " + o.out + " for writing");
      detail::print_blocks(file, blocks, o.format);
      if (!file) throw std::runtime_error("out: write to " + o.out + " failed");
    } else {
      detail::print_blocks(out, blocks, o.format);
    }
  } catch (const InvalidArgument& e) {
    err << "regapprox " << which << ": invalid --" << e.what() << '\n';
    return 1;
  } catch (const DomainError& e) {
    err << "regapprox " << which << ": " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "regapprox " << which << ": " << e.what() << '\n';
    return 1;
  }
  if (o.time && which != "tables") {
    const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start;
    err << which << ": " << std::fixed << std::setprecision(3) << dt.count() << " s\n";
  }
  return 0;
}

}  // namespace regapprox::cli
