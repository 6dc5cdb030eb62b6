#pragma once

#include <atomic>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "regapprox/convergence.hpp"
#include "regapprox/csv.hpp"
#include "regapprox/iterative.hpp"
#include "regapprox/powers.hpp"
#include "regapprox/regrep.hpp"
#include "regapprox/roots.hpp"

namespace regapprox {

// ---------------------------------------------------------------------------
// Matching measured values against printed ones

/// A number as printed in a table: its exact value and the place value of
/// its last printed digit ("3.1e-18" has unit 1e-19, "0.06" has unit 0.01).
struct PrintedValue {
  std::string text;
  Rational value;
  Rational unit;
};

inline Rational pow10_rational(long e) {
  Integer p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(e < 0 ? -e : e));
  return e < 0 ? Rational(1, 1) / Rational(p) : Rational(p);
}

inline PrintedValue parse_printed(std::string_view text) {
  std::string s(text);
  long exponent = 0;
  std::string mantissa = s;
  if (auto e = s.find_first_of("eE"); e != std::string::npos) {
    mantissa = s.substr(0, e);
    try {
      exponent = std::stol(s.substr(e + 1));
    } catch (const std::exception&) {
      throw InvalidArgument("expected", "malformed printed value '" + s + "'");
    }
  }
  std::string int_part = mantissa, frac_part;
  if (auto dot = mantissa.find('.'); dot != std::string::npos) {
    int_part = mantissa.substr(0, dot);
    frac_part = mantissa.substr(dot + 1);
  }
  const std::string digits = int_part + frac_part;
  if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
    throw InvalidArgument("expected", "malformed printed value '" + s + "'");
  const Rational unit = pow10_rational(exponent - static_cast<long>(frac_part.size()));
  return {s, Rational(Integer(digits)) * unit, unit};
}

enum class MatchStatus { Exact, WithinTolerance, Mismatch };

inline std::string_view status_name(MatchStatus s) {
  switch (s) {
    case MatchStatus::Exact: return "exact";
    case MatchStatus::WithinTolerance: return "within-tolerance";
    case MatchStatus::Mismatch: return "mismatch";
  }
  return "?";
}

inline constexpr std::string_view kPrintedTolerance = "rounds or truncates to the printed digits";
inline constexpr std::string_view kExactTolerance = "exact";

/// Exact when the measured value rounds to the printed digits, within
/// tolerance when it truncates to them, a mismatch otherwise.
inline MatchStatus match_printed(const Rational& measured, const PrintedValue& printed) {
  const Rational dev = measured - printed.value;
  if (abs(dev) * 2 <= printed.unit) return MatchStatus::Exact;
  if (dev >= 0 && dev < printed.unit) return MatchStatus::WithinTolerance;
  return MatchStatus::Mismatch;
}

inline MatchStatus match_printed(const Real& measured, const PrintedValue& printed) {
  return match_printed(measured.to_rational(), printed);
}

inline MatchStatus match_printed(const Real& measured, std::string_view printed) {
  return match_printed(measured, parse_printed(printed));
}

// ---------------------------------------------------------------------------
// Table descriptions

enum class CellKind { ErrorMagnitude, DigitCount, StepIndex };

struct ExpectedCell {
  /// Row label inside the table, e.g. "(0,-1,1)" or "newton".
  std::string params;
  std::uint64_t n = 0;
  CellKind kind = CellKind::ErrorMagnitude;
  std::string expected;
  /// Table 3 only: the digit target whose row this cell belongs to.
  std::size_t target = 0;
};

struct TableSpec {
  int id = 0;
  std::string title;
  std::vector<ExpectedCell> cells;
};

struct CellResult {
  int table = 0;
  std::string cell;
  std::string expected;
  std::string measured;
  MatchStatus status = MatchStatus::Mismatch;
  std::string tolerance;
  /// Cross-checks outside the table's own method, e.g. values at the printed
  /// n of the equal-size comparison.
  bool supplementary = false;
};

struct DiscrepancyReport {
  std::vector<CellResult> cells;

  std::size_t count(MatchStatus s) const {
    std::size_t c = 0;
    for (const auto& r : cells) c += r.status == s;
    return c;
  }
  std::size_t mismatches() const { return count(MatchStatus::Mismatch); }
};

namespace detail {

inline const std::vector<std::uint64_t>& table_n() {
  static const std::vector<std::uint64_t> n{5, 20, 35, 50, 75, 100};
  return n;
}

inline void add_row(TableSpec& t, const std::string& params, CellKind kind, const std::vector<std::string>& values) {
  for (std::size_t i = 0; i < values.size(); ++i) t.cells.push_back({params, table_n()[i], kind, values[i], 0});
}

}  // namespace detail

/// Weight vectors of the first three tables, in table order.
inline const std::vector<std::vector<long>>& ramanujan_weight_rows() {
  static const std::vector<std::vector<long>> rows{{0, 0, 1}, {1, -1, 1}, {0, -1, 1}, {69, 99, -124}};
  return rows;
}

inline std::string weights_label(const std::vector<long>& x) {
  std::string out = "(";
  for (std::size_t i = 0; i < x.size(); ++i) out += (i ? "," : "") + std::to_string(x[i]);
  return out + ")";
}

struct RatioVariant {
  std::string label;
  RatioSpec spec;
};

/// The four ratios compared at fixed weights (0,-1,1).
inline std::vector<RatioVariant> ratio_variants() {
  return {{"M21/M31-1", {{2, 1}, {3, 1}, Rational(-1)}},
          {"M22/M21", {{2, 2}, {2, 1}, Rational(0)}},
          {"M23/M22", {{2, 3}, {2, 2}, Rational(0)}},
          {"M33/M32", {{3, 3}, {3, 2}, Rational(0)}}};
}

inline TableSpec table_spec(int id) {
  TableSpec t;
  t.id = id;
  using detail::add_row;
  const auto& w = ramanujan_weight_rows();
  switch (id) {
    case 1:
      t.title = "|m_n - alpha| for m_n = M^n(2,1)/M^n(3,1) - 1";
      add_row(t, weights_label(w[0]), CellKind::ErrorMagnitude, {"0.06", "9.8e-7", "1.6e-11", "2.5e-16", "2.5e-24", "2.6e-32"});
      add_row(t, weights_label(w[1]), CellKind::ErrorMagnitude, {"0.002", "1.2e-11", "3.8e-20", "1.2e-28", "8.7e-43", "6.1e-57"});
      add_row(t, weights_label(w[2]), CellKind::ErrorMagnitude, {"8e-5", "3.1e-18", "1.2e-31", "4.4e-45", "1.9e-67", "7.9e-90"});
      add_row(t, weights_label(w[3]), CellKind::ErrorMagnitude, {"1e-15", "4.0e-63", "9.5e-110", "8.6e-157", "6.1e-235", "3.7e-313"});
      break;
    case 2:
      t.title = "denominator digits of m_n";
      add_row(t, weights_label(w[0]), CellKind::DigitCount, {"2", "9", "14", "25", "36", "49"});
      add_row(t, weights_label(w[1]), CellKind::DigitCount, {"4", "16", "21", "39", "59", "78"});
      add_row(t, weights_label(w[2]), CellKind::DigitCount, {"3", "12", "21", "35", "50", "69"});
      add_row(t, weights_label(w[3]), CellKind::DigitCount, {"13", "52", "92", "135", "203", "269"});
      break;
    case 3: {
      t.title = "m_n at equal denominator size";
      struct Row {
        std::size_t weights, target;
        std::uint64_t n;
        const char* error;
        const char* digits;
      };
      const Row rows[] = {{0, 16, 37, "3.6e-12", "16"},  {1, 16, 20, "1.2e-11", "16"},  {2, 16, 23, "6.4e-21", "16"},
                          {3, 16, 6, "1.0e-19", "16"},   {0, 35, 74, "5.3e-24", "35"},  {1, 35, 45, "8.3e-26", "35"},
                          {2, 35, 50, "4.4e-45", "35"},  {3, 35, 14, "1.9e-44", "35"},  {0, 62, 128, "2.9e-41", "62"},
                          {1, 62, 82, "9.4e-47", "62"},  {2, 62, 91, "8.9e-82", "62"},  {3, 62, 23, "3.7e-72", "62"}};
      for (const auto& r : rows) {
        const auto label = weights_label(w[r.weights]);
        t.cells.push_back({label, r.n, CellKind::StepIndex, std::to_string(r.n), r.target});
        t.cells.push_back({label, r.n, CellKind::ErrorMagnitude, r.error, r.target});
        t.cells.push_back({label, r.n, CellKind::DigitCount, r.digits, r.target});
      }
      break;
    }
    case 4: {
      t.title = "|ratio - alpha| for four ratios at (0,-1,1)";
      const auto v = ratio_variants();
      add_row(t, v[0].label, CellKind::ErrorMagnitude, {"8.0e-5", "3.1e-18", "1.2e-31", "4.4e-45", "1.9e-67", "7.9e-90"});
      add_row(t, v[1].label, CellKind::ErrorMagnitude, {"5.0e-5", "2.1e-18", "8.1e-32", "3.0e-45", "1.3e-67", "5.4e-90"});
      add_row(t, v[2].label, CellKind::ErrorMagnitude, {"2.0e-5", "5.3e-19", "2.0e-32", "7.5e-46", "3.2e-68", "1.3e-90"});
      add_row(t, v[3].label, CellKind::ErrorMagnitude, {"2.1e-5", "7.6e-19", "2.9e-32", "1.1e-45", "4.6e-68", "1.9e-90"});
      break;
    }
    case 5: {
      t.title = "denominator digits for four ratios at (0,-1,1)";
      const auto v = ratio_variants();
      add_row(t, v[0].label, CellKind::DigitCount, {"3", "12", "21", "35", "50", "69"});
      add_row(t, v[1].label, CellKind::DigitCount, {"3", "14", "25", "35", "50", "70"});
      add_row(t, v[2].label, CellKind::DigitCount, {"4", "14", "25", "35", "53", "70"});
      add_row(t, v[3].label, CellKind::DigitCount, {"4", "14", "25", "34", "53", "70"});
      break;
    }
    case 6: {
      t.title = "Newton, Halley and Noor iterates";
      struct Row {
        const char* method;
        std::uint64_t n;
        const char* digits;
        const char* error;
      };
      // Newton n = 5 and Noor n = 3 are printed with a broken exponent
      // marker; the evident values are used.
      const Row rows[] = {{"newton", 3, "9", "1.1e-6"},       {"newton", 5, "80", "9.2e-14"},
                          {"newton", 10, "19352", "3.7e-762"}, {"halley", 2, "9", "8.1e-8"},
                          {"halley", 3, "45", "4.8e-22"},      {"halley", 6, "28140", "1.2e-527"},
                          {"noor", 2, "18", "1.1e-6"},         {"noor", 3, "186", "2.7e-18"},
                          {"noor", 6, "43136", "4.8e-471"}};
      for (const auto& r : rows) {
        t.cells.push_back({r.method, r.n, CellKind::DigitCount, r.digits, 0});
        t.cells.push_back({r.method, r.n, CellKind::ErrorMagnitude, r.error, 0});
      }
      break;
    }
    case 7: {
      t.title = "N_n from N = M^3 at (69,99,-124), N_n = N_{n-1}^3";
      const char* digits[] = {"8", "24", "73", "219", "658", "1975"};
      const char* errors[] = {"1.9e-9", "2.8e-28", "1.1e-84", "1.0e-253", "1.e-760", "8.4e-2281"};
      for (std::uint64_t n = 1; n <= 6; ++n) {
        t.cells.push_back({"N=M^3", n, CellKind::DigitCount, digits[n - 1], 0});
        t.cells.push_back({"N=M^3", n, CellKind::ErrorMagnitude, errors[n - 1], 0});
      }
      break;
    }
    default: throw InvalidArgument("id", "table id must be 1..7, got " + std::to_string(id));
  }
  return t;
}

// ---------------------------------------------------------------------------
// Equal-size comparison

struct Candidate {
  std::string label;
  std::vector<ApproximationRecord> records;
};

struct EqualDigitsRow {
  std::size_t target = 0;
  std::string label;
  ApproximationRecord record;
};

/// For each target and candidate, the record with the largest n whose reduced
/// denominator has at most `target` digits.
inline std::vector<EqualDigitsRow> compare_at_equal_digits(const std::vector<Candidate>& candidates,
                                                           const std::vector<std::size_t>& targets) {
  std::vector<EqualDigitsRow> out;
  for (std::size_t target : targets) {
    for (const auto& c : candidates) {
      const ApproximationRecord* best = nullptr;
      bool exceeded = false;
      for (const auto& r : c.records) {
        if (!r.available) continue;
        if (r.reduced_den_digits <= target) {
          if (!best || r.n > best->n) best = &r;
        } else {
          exceeded = true;
        }
      }
      if (!best) throw DomainError(c.label + ": no record with at most " + std::to_string(target) + " digits");
      if (!exceeded || best->n == c.records.back().n)
        throw DomainError(c.label + ": target " + std::to_string(target) +
                          " digits not exceeded within the n ceiling " + std::to_string(c.records.back().n));
      out.push_back({target, c.label, *best});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Reproduction

struct BenchConfig {
  Real::Bits precision_bits = 256;
  unsigned jobs = 1;
  /// Iterates of the root-finding baselines stop once their denominators
  /// exceed this many digits.
  std::size_t digit_budget = 200000;
  std::vector<Rational> x0_candidates{Rational(-2), Rational(-3, 2), Rational(-7, 4), Rational(-9, 5)};
  /// Largest n scanned by the equal-size comparison.
  std::uint64_t equal_digits_ceiling = 200;
};

struct ExtraCsv {
  std::string file;
  CsvRow header;
  std::vector<CsvRow> rows;
};

struct TableOutput {
  int id = 0;
  CsvRow header;
  std::vector<CsvRow> rows;
  DiscrepancyReport report;
  std::vector<std::string> notes;
  std::vector<ExtraCsv> extra;
};

/// Runs tasks 0..count-1 on up to `jobs` threads; rethrows the first failure
/// by task index.
inline void parallel_for(std::size_t count, unsigned jobs, const std::function<void(std::size_t)>& task) {
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        task(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned threads = std::max(1U, std::min<unsigned>(jobs, static_cast<unsigned>(count)));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

namespace detail {

inline std::string sci(const Real& v) { return v.to_sci(6); }

struct RamanujanSetup {
  Polynomial f = parse_polynomial("c:1,1,-2,-1");
  RationalInterval bracket;

  explicit RamanujanSetup(Real::Bits bits) {
    // The most negative root, 2 cos(8 pi / 7), is first in canonical order.
    bracket = *all_roots(f, bits).roots.at(0).bracket;
  }
  RealRootRefiner refiner() const { return RealRootRefiner(f, bracket); }
  RegRepMatrix matrix(const std::vector<long>& x) const {
    return build(f, Weights(std::vector<Rational>(x.begin(), x.end())));
  }
};

inline std::string cell_name(const ExpectedCell& c, std::string_view what) {
  std::string out = c.params;
  if (c.target) out += " target=" + std::to_string(c.target);
  out += " n=" + std::to_string(c.n);
  if (!what.empty()) out += " " + std::string(what);
  return out;
}

inline CellResult judge(int table, const ExpectedCell& c, std::string_view what,
                        const std::optional<Real>& error, std::optional<std::uint64_t> integer,
                        const std::string& missing = "unavailable") {
  CellResult r;
  r.table = table;
  r.cell = cell_name(c, what);
  r.expected = c.expected;
  if (c.kind == CellKind::ErrorMagnitude) {
    r.tolerance = kPrintedTolerance;
    if (!error) {
      r.measured = missing;
      return r;
    }
    r.measured = error->to_sci(3);
    r.status = match_printed(*error, c.expected);
  } else {
    r.tolerance = kExactTolerance;
    if (!integer) {
      r.measured = missing;
      return r;
    }
    r.measured = std::to_string(*integer);
    r.status = r.measured == c.expected ? MatchStatus::Exact : MatchStatus::Mismatch;
  }
  return r;
}

inline const ApproximationRecord* find_n(const std::vector<ApproximationRecord>& recs, std::uint64_t n) {
  for (const auto& r : recs)
    if (r.n == n) return &r;
  return nullptr;
}

inline std::string cell_what(CellKind k) {
  switch (k) {
    case CellKind::ErrorMagnitude: return "abs_error";
    case CellKind::DigitCount: return "digits";
    case CellKind::StepIndex: return "n";
  }
  return "";
}

/// Tables whose rows are a ratio sequence sampled at the fixed n list.
inline TableOutput ratio_table(int id, const BenchConfig& cfg, const std::vector<std::string>& labels,
                               const std::function<std::pair<RegRepMatrix, RatioSpec>(std::size_t)>& row_setup,
                               bool digits_table) {
  const RamanujanSetup setup(cfg.precision_bits);
  std::vector<std::vector<ApproximationRecord>> records(labels.size());
  parallel_for(labels.size(), cfg.jobs, [&](std::size_t i) {
    auto [m, spec] = row_setup(i);
    auto ref = setup.refiner();
    records[i] = ratio_sequence(m, spec, table_n(), digits_table ? nullptr : &ref);
  });

  TableOutput out;
  out.id = id;
  out.header = digits_table ? CsvRow{"params", "n", "digits"} : CsvRow{"params", "n", "abs_error"};
  for (std::size_t i = 0; i < labels.size(); ++i)
    for (const auto& r : records[i]) {
      if (!r.available) continue;
      out.rows.push_back({labels[i], std::to_string(r.n),
                          digits_table ? std::to_string(r.reduced_den_digits) : sci(*r.abs_error)});
    }
  for (const auto& c : table_spec(id).cells) {
    std::size_t row = 0;
    while (labels[row] != c.params) ++row;
    const auto* rec = find_n(records[row], c.n);
    std::optional<Real> err;
    std::optional<std::uint64_t> digits;
    if (rec && rec->available) {
      if (rec->abs_error) err = *rec->abs_error;
      digits = rec->reduced_den_digits;
    }
    out.report.cells.push_back(judge(id, c, "", err, digits));
  }
  return out;
}

inline TableOutput weights_table(int id, const BenchConfig& cfg) {
  const RamanujanSetup setup(cfg.precision_bits);
  std::vector<std::string> labels;
  for (const auto& x : ramanujan_weight_rows()) labels.push_back(weights_label(x));
  return ratio_table(
      id, cfg, labels,
      [&](std::size_t i) {
        return std::pair{setup.matrix(ramanujan_weight_rows()[i]), RatioSpec{{2, 1}, {3, 1}, Rational(-1)}};
      },
      id == 2);
}

inline TableOutput variants_table(int id, const BenchConfig& cfg) {
  const RamanujanSetup setup(cfg.precision_bits);
  const auto variants = ratio_variants();
  std::vector<std::string> labels;
  for (const auto& v : variants) labels.push_back(v.label);
  return ratio_table(
      id, cfg, labels, [&](std::size_t i) { return std::pair{setup.matrix({0, -1, 1}), variants[i].spec}; }, id == 5);
}

inline TableOutput equal_digits_table(const BenchConfig& cfg) {
  const RamanujanSetup setup(cfg.precision_bits);
  const auto& weights = ramanujan_weight_rows();
  std::vector<Candidate> candidates(weights.size());
  std::vector<std::uint64_t> ns;
  for (std::uint64_t n = 1; n <= cfg.equal_digits_ceiling; ++n) ns.push_back(n);
  parallel_for(weights.size(), cfg.jobs, [&](std::size_t i) {
    candidates[i] = {weights_label(weights[i]),
                     ratio_sequence(setup.matrix(weights[i]), {{2, 1}, {3, 1}, Rational(-1)}, ns)};
  });
  auto rows = compare_at_equal_digits(candidates, {16, 35, 62});
  parallel_for(rows.size(), cfg.jobs, [&](std::size_t i) {
    auto ref = setup.refiner();
    rows[i].record.abs_error = distance_to_root(rows[i].record.value, ref);
  });

  TableOutput out;
  out.id = 3;
  out.header = {"params", "n", "abs_error", "digits"};
  for (const auto& r : rows)
    out.rows.push_back({r.label, std::to_string(r.record.n), sci(*r.record.abs_error),
                        std::to_string(r.record.reduced_den_digits)});
  for (const auto& c : table_spec(3).cells) {
    const EqualDigitsRow* row = nullptr;
    for (const auto& r : rows)
      if (r.label == c.params && r.target == c.target) row = &r;
    std::optional<Real> err;
    std::optional<std::uint64_t> integer;
    if (row) {
      err = row->record.abs_error;
      integer = c.kind == CellKind::StepIndex ? row->record.n : row->record.reduced_den_digits;
    }
    CellResult res = judge(3, c, cell_what(c.kind), err, integer);
    res.cell = c.params + " target=" + std::to_string(c.target) + " " + cell_what(c.kind);
    out.report.cells.push_back(std::move(res));
  }
  // The same error and digit cells evaluated at the printed n.
  for (const auto& c : table_spec(3).cells) {
    if (c.kind == CellKind::StepIndex) continue;
    std::size_t w = 0;
    while (candidates[w].label != c.params) ++w;
    const auto* rec = find_n(candidates[w].records, c.n);
    std::optional<Real> err;
    std::optional<std::uint64_t> digits;
    if (rec && rec->available) {
      auto ref = setup.refiner();
      err = distance_to_root(rec->value, ref);
      digits = rec->reduced_den_digits;
    }
    CellResult res = judge(3, c, cell_what(c.kind), err, digits);
    res.cell = c.params + " target=" + std::to_string(c.target) + " at printed n=" + std::to_string(c.n) + " " +
               cell_what(c.kind);
    res.supplementary = true;
    out.report.cells.push_back(std::move(res));
  }
  return out;
}

inline TableOutput iterative_table(const BenchConfig& cfg) {
  const RamanujanSetup setup(cfg.precision_bits);
  const Method methods[] = {Method::Newton, Method::Halley, Method::Noor};
  const std::uint64_t steps = 10;
  const std::size_t per = std::size(methods);
  const std::size_t tasks = cfg.x0_candidates.size() * per;
  std::vector<std::vector<ApproximationRecord>> runs(tasks);
  std::vector<std::string> failures(tasks);
  parallel_for(tasks, cfg.jobs, [&](std::size_t i) {
    auto ref = setup.refiner();
    const Method m = methods[i % per];
    try {
      runs[i] = run_method(m, setup.f, cfg.x0_candidates[i / per], m == Method::Newton ? steps : 6, ref,
                           cfg.digit_budget);
    } catch (const DomainError& e) {
      failures[i] = e.what();
    }
  });

  TableOutput out;
  out.id = 6;
  out.header = {"method_or_stride", "n", "digits", "abs_error"};
  const auto spec = table_spec(6);
  const std::string missing = "unreached (digit budget " + std::to_string(cfg.digit_budget) + ")";
  auto judge_candidate = [&](std::size_t c) {
    std::vector<CellResult> cells;
    for (const auto& cell : spec.cells) {
      std::size_t mi = 0;
      while (method_name(methods[mi]) != cell.params) ++mi;
      const auto* rec = find_n(runs[c * per + mi], cell.n);
      std::optional<Real> err;
      std::optional<std::uint64_t> digits;
      if (rec) {
        err = rec->abs_error;
        digits = rec->den_digits;
      }
      auto res = judge(6, cell, cell_what(cell.kind), err, digits, failures[c * per + mi].empty() ? missing : "diverged");
      res.cell = "x0=" + to_string(cfg.x0_candidates[c]) + " " + res.cell;
      cells.push_back(std::move(res));
    }
    return cells;
  };

  std::size_t best = 0, best_score = 0;
  ExtraCsv sweep{"table6_sweep.csv", {"x0", "matched_cells", "total_cells"}, {}};
  for (std::size_t c = 0; c < cfg.x0_candidates.size(); ++c) {
    auto cells = judge_candidate(c);
    std::size_t score = 0;
    for (const auto& r : cells) score += r.status != MatchStatus::Mismatch;
    sweep.rows.push_back({to_string(cfg.x0_candidates[c]), std::to_string(score), std::to_string(cells.size())});
    if (c == 0 || score > best_score) {
      best = c;
      best_score = score;
    }
    for (std::size_t mi = 0; mi < per; ++mi) {
      const std::string tag = std::string(method_name(methods[mi])) + " x0=" + to_string(cfg.x0_candidates[c]);
      for (const auto& r : runs[c * per + mi])
        out.rows.push_back({tag, std::to_string(r.n), std::to_string(r.den_digits), sci(*r.abs_error)});
      if (!failures[c * per + mi].empty()) out.notes.push_back(tag + ": " + failures[c * per + mi]);
    }
  }
  out.report.cells = judge_candidate(best);
  out.notes.push_back("best x0 = " + to_string(cfg.x0_candidates[best]) + " (" + std::to_string(best_score) + " of " +
                      std::to_string(spec.cells.size()) + " cells matched)");
  out.extra.push_back(std::move(sweep));
  return out;
}

inline TableOutput accelerated_table(const BenchConfig& cfg) {
  const RamanujanSetup setup(cfg.precision_bits);
  auto ref = setup.refiner();
  auto recs = accelerated_sequence(setup.matrix({69, 99, -124}), 3, {{2, 1}, {3, 1}, Rational(-1)}, 6,
                                   Schedule::Geometric, &ref);
  TableOutput out;
  out.id = 7;
  out.header = {"method_or_stride", "n", "digits", "abs_error"};
  for (const auto& r : recs)
    out.rows.push_back({"N=M^3", std::to_string(r.n), std::to_string(r.reduced_den_digits), sci(*r.abs_error)});
  for (const auto& c : table_spec(7).cells) {
    const auto* rec = find_n(recs, c.n);
    std::optional<Real> err;
    std::optional<std::uint64_t> digits;
    if (rec && rec->available) {
      err = rec->abs_error;
      digits = rec->reduced_den_digits;
    }
    out.report.cells.push_back(judge(7, c, cell_what(c.kind), err, digits));
  }
  return out;
}

}  // namespace detail

inline TableOutput reproduce_table(int id, const BenchConfig& cfg = {}) {
  switch (id) {
    case 1:
    case 2: return detail::weights_table(id, cfg);
    case 3: return detail::equal_digits_table(cfg);
    case 4:
    case 5: return detail::variants_table(id, cfg);
    case 6: return detail::iterative_table(cfg);
    case 7: return detail::accelerated_table(cfg);
    default: throw InvalidArgument("id", "table id must be 1..7, got " + std::to_string(id));
  }
}

inline CsvRow discrepancy_header() { return {"table", "cell", "expected", "measured", "status"}; }

inline std::vector<CsvRow> discrepancy_rows(const std::vector<TableOutput>& tables) {
  std::vector<CsvRow> rows;
  for (const auto& t : tables)
    for (const auto& c : t.report.cells)
      rows.push_back({std::to_string(c.table), c.cell, c.expected, c.measured, std::string(status_name(c.status))});
  return rows;
}

/// Writes table<id>.csv (plus any extra files) for each table and one
/// discrepancies.csv covering all of them. Cells keep grid order.
inline void write_tables(const std::vector<TableOutput>& tables, const std::filesystem::path& dir) {
  for (const auto& t : tables) {
    emit_csv(dir / ("table" + std::to_string(t.id) + ".csv"), t.header, t.rows);
    for (const auto& e : t.extra) emit_csv(dir / e.file, e.header, e.rows);
  }
  emit_csv(dir / "discrepancies.csv", discrepancy_header(), discrepancy_rows(tables), false);
}

}  // namespace regapprox
