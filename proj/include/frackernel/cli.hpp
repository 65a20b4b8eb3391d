#pragma once

// Command implementations behind the frackernel executable. Each command writes a
// table (CSV or JSON) to `out`, diagnostics to `err`, and returns the exit code:
// 0 success, 2 usage or domain error, 3 numerical failure.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "frackernel/asymptotics.hpp"
#include "frackernel/error.hpp"
#include "frackernel/kernels.hpp"
#include "frackernel/montecarlo.hpp"
#include "frackernel/parallel.hpp"
#include "frackernel/stable.hpp"
#include "frackernel/transform.hpp"
#include "frackernel/validation.hpp"

namespace frackernel::cli {

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode : int { kOk = 0, kUsage = 2, kNumerical = 3 };

struct RunConfig {
  std::string command;

  // kernel
  std::string base = "gauss";  // gauss | cauchy | stable
  double d = 1.0;
  double gamma = 0.5;  // stable base: 2gamma-stable profile
  double beta = 0.5;

  // eval
  std::string mode = "sub";  // sub | invsub
  std::vector<double> t;
  std::vector<double> rho;

  // validate
  std::string sweep_case;  // 1a 1b 2a 2b 2c or the long names
  std::optional<double> a_from, a_to;
  int per_decade = 4;
  /// unset: 0.05 in the logarithmic d = alpha regime, 0.02 elsewhere
  std::optional<double> tol;
  double t_fixed = 1.0;

  // asym
  std::string corollary;  // 1a..1d 2a..2d 3a 3b
  std::string theorem;    // 1a 1b 2a 2b 2c

  // moments
  std::vector<double> kappa;
  std::string moment_kind = "stable";  // stable | levy
  double levy_alpha = 1.0;

  // sample
  std::string sample_kind = "subordinator";  // subordinator | inverse | timechanged
  long long n = 1000;
  std::uint64_t seed = 1;

  // quadrature
  double rel_tol = 1e-9;
  int max_depth = 40;
  std::optional<double> truncate;

  std::string format = "csv";  // csv | json
};

// ---------------------------------------------------------------------------
// Table output

using Cell = std::variant<double, long long, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

inline std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline void write_csv(const Table& table, std::ostream& out) {
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    out << (i ? "," : "") << table.columns[i];
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      std::visit(
          [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>) {
              out << format_double(v);
            } else if constexpr (std::is_same_v<T, long long>) {
              out << v;
            } else {
              out << csv_escape(v);
            }
          },
          row[i]);
    }
    out << '\n';
  }
}

inline nlohmann::json cell_json(const Cell& c) {
  return std::visit(
      [](const auto& v) -> nlohmann::json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, double>) {
          if (!std::isfinite(v)) return format_double(v);  // JSON has no inf/nan
          return v;
        } else {
          return v;
        }
      },
      c);
}

inline void write_json(const Table& table, const nlohmann::json& meta, std::ostream& out) {
  nlohmann::json doc;
  doc["meta"] = meta;
  doc["rows"] = nlohmann::json::array();
  for (const auto& row : table.rows) {
    nlohmann::json r = nlohmann::json::object();
    for (std::size_t i = 0; i < row.size(); ++i) r[table.columns[i]] = cell_json(row[i]);
    doc["rows"].push_back(std::move(r));
  }
  out << doc.dump(2) << '\n';
}

inline nlohmann::json params_json(const RunConfig& c) {
  nlohmann::json p;
  p["base"] = c.base;
  p["d"] = c.d;
  p["beta"] = c.beta;
  if (c.base == "stable") p["gamma"] = c.gamma;
  if (c.command == "eval") {
    p["mode"] = c.mode;
    p["t"] = c.t;
    p["rho"] = c.rho;
  }
  if (c.command == "validate") {
    p["case"] = c.sweep_case;
    p["t"] = c.t_fixed;
    p["per_decade"] = c.per_decade;
    if (c.tol) p["tol"] = *c.tol;
  }
  if (c.command == "eval" || c.command == "validate") {
    p["rel_tol"] = c.rel_tol;
    p["max_depth"] = c.max_depth;
    if (c.truncate) p["truncate"] = *c.truncate;
  }
  if (c.command == "moments") {
    p["kind"] = c.moment_kind;
    p["kappa"] = c.kappa;
    p["t"] = c.t;
    if (c.moment_kind == "levy") p["alpha"] = c.levy_alpha;
  }
  if (c.command == "sample") {
    p["kind"] = c.sample_kind;
    p["n"] = c.n;
    p["t"] = c.t_fixed;
    if (c.sample_kind == "timechanged") p["mode"] = c.mode;
  }
  if (c.command == "asym") {
    if (!c.corollary.empty()) p["corollary"] = c.corollary;
    if (!c.theorem.empty()) p["theorem"] = c.theorem;
    p["t"] = c.t;
    p["rho"] = c.rho;
    p["gamma"] = c.gamma;
  }
  return p;
}

inline void emit(const RunConfig& c, const Table& table, std::ostream& out,
                 nlohmann::json extra_meta = nlohmann::json::object()) {
  if (c.format == "json") {
    nlohmann::json meta;
    meta["command"] = c.command;
    meta["params"] = params_json(c);
    meta["seed"] = c.seed;
    meta["version"] = kVersion;
    for (auto it = extra_meta.begin(); it != extra_meta.end(); ++it) meta[it.key()] = it.value();
    write_json(table, meta, out);
  } else {
    write_csv(table, out);
  }
}

// ---------------------------------------------------------------------------
// Config helpers

namespace detail {

inline void require_format(const RunConfig& c) {
  frackernel::detail::require(c.format == "csv" || c.format == "json",
                              "format must be csv or json");
}

inline ProfileKernel make_kernel(const RunConfig& c) {
  if (c.base == "gauss") return as_profile(Gauss{c.d});
  if (c.base == "cauchy") return as_profile(Cauchy{c.d});
  if (c.base == "stable") return as_profile(Stable2Gamma{c.gamma, c.d});
  throw DomainError("base must be gauss, cauchy or stable");
}

inline QuadConfig make_quad(const RunConfig& c) {
  QuadConfig q;
  q.rel_tol = c.rel_tol;
  q.max_depth = c.max_depth;
  if (c.truncate) q.tail_policy = HardTruncate{*c.truncate};
  q.validate();
  return q;
}

inline SweepCase parse_case(const std::string& s) {
  static const std::map<std::string, SweepCase> names = {
      {"1a", SweepCase::SubFar},          {"sub-far", SweepCase::SubFar},
      {"1b", SweepCase::SubNear},         {"sub-near", SweepCase::SubNear},
      {"2a", SweepCase::InvLargeT},       {"invsub-large-t", SweepCase::InvLargeT},
      {"2b", SweepCase::InvSmallT},       {"invsub-small-t", SweepCase::InvSmallT},
      {"2c", SweepCase::InvSmallTExp},    {"invsub-small-t-exp", SweepCase::InvSmallTExp},
  };
  const auto it = names.find(s);
  if (it == names.end()) throw DomainError("unknown validation case '" + s + "'");
  return it->second;
}

/// default sweep range (from, to) per case
inline std::pair<double, double> default_range(SweepCase c) {
  switch (c) {
    case SweepCase::SubFar: return {10.0, 1e4};
    case SweepCase::SubNear: return {1e-1, 1e-4};
    case SweepCase::InvLargeT: return {1e2, 1e12};
    case SweepCase::InvSmallT: return {1.0, 1e-6};
    case SweepCase::InvSmallTExp: return {1.0, 1e3};
  }
  return {1.0, 10.0};
}

template <class F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ConvergenceError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Commands

/// Kernel values p^S or p^{S^-1} on the (t, rho) grid.
inline int cmd_eval(const RunConfig& c, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    detail::require_format(c);
    frackernel::detail::require(!c.t.empty() && !c.rho.empty(), "eval: empty (t, rho) grid");
    frackernel::detail::require(c.mode == "sub" || c.mode == "invsub",
                                "eval: mode must be sub or invsub");
    const auto kernel = detail::make_kernel(c);
    const StableLaw law(c.beta);
    const auto q = detail::make_quad(c);
    std::vector<EvalPoint> pts;
    for (double t : c.t) {
      for (double r : c.rho) {
        const EvalPoint p{t, r};
        validate(p);
        pts.push_back(p);
      }
    }
    struct Out {
      KernelValue v;
      std::string status = "ok";
    };
    std::vector<Out> res(pts.size());
    parallel_for(pts.size(), [&](std::size_t i) {
      try {
        res[i].v = c.mode == "sub" ? subordinated_density(kernel, law, pts[i], q)
                                   : inverse_subordinated_density(kernel, law, pts[i], q);
        if (res[i].v.underflow) res[i].status = "underflow";
      } catch (const ConvergenceError& e) {
        res[i].v.value = e.best_value();
        res[i].v.log_value = e.best_log_value();
        res[i].v.est_error = e.est_error();
        res[i].status = "no-convergence";
      }
    });
    Table table{{"t", "rho", "value", "log_value", "est_error", "status"}, {}};
    bool failed = false;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      failed = failed || res[i].status == "no-convergence";
      table.rows.push_back({pts[i].t, pts[i].rho, res[i].v.value, res[i].v.log_value,
                            res[i].v.est_error, res[i].status});
    }
    emit(c, table, out);
    if (failed) {
      err << "numerical failure: some rows did not reach the quadrature tolerance\n";
      return static_cast<int>(kNumerical);
    }
    return static_cast<int>(kOk);
  });
}

/// Ratio sweep quadrature / asymptotic in the similarity variable.
inline int cmd_validate(const RunConfig& c, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    detail::require_format(c);
    SweepSpec s;
    s.which = detail::parse_case(c.sweep_case);
    s.kernel = detail::make_kernel(c);
    s.beta = c.beta;
    s.t = c.t_fixed;
    const auto range = detail::default_range(s.which);
    s.a_from = c.a_from.value_or(range.first);
    s.a_to = c.a_to.value_or(range.second);
    s.per_decade = c.per_decade;
    s.quad = detail::make_quad(c);
    frackernel::detail::require(!c.tol || *c.tol > 0.0, "validate: tol must be positive");
    const auto res = run_sweep(s);
    const bool log_regime = std::any_of(res.rows.begin(), res.rows.end(), [](const SweepRow& r) {
      return r.ok && r.regime == Regime::InvSubLargeT_dEqAlpha;
    });
    const double tol = c.tol.value_or(log_regime ? 0.05 : 0.02);

    Table table{{"A", "t", "rho", "quadrature", "asymptotic", "log_quadrature", "log_asymptotic",
                 "ratio", "regime", "status"},
                {}};
    for (const auto& r : res.rows) {
      table.rows.push_back({r.similarity, r.t, r.rho, std::exp(r.quad_log), std::exp(r.asym_log),
                            r.quad_log, r.asym_log, r.ratio, std::string(regime_name(r.regime)),
                            std::string(r.ok ? "ok" : "no-convergence")});
    }
    nlohmann::json summary;
    summary["max_abs_ratio_minus_1_last_decade"] = res.dev_last_decade;
    summary["max_abs_ratio_minus_1_two_decades_earlier"] =
        std::isnan(res.dev_two_decades_earlier) ? nlohmann::json(nullptr)
                                                : nlohmann::json(res.dev_two_decades_earlier);
    summary["log_rel_dev_last"] = std::isnan(res.log_rel_dev_last)
                                      ? nlohmann::json(nullptr)
                                      : nlohmann::json(res.log_rel_dev_last);
    summary["tol"] = tol;
    const bool pass = res.all_ok && res.dev_last_decade <= tol;
    summary["pass"] = pass;
    emit(c, table, out, {{"summary", summary}});
    char line[160];
    std::snprintf(line, sizeof line, "summary: max |ratio-1| over last decade = %.6g (tol %g) %s\n",
                  res.dev_last_decade, tol, pass ? "PASS" : "FAIL");
    err << line;
    return static_cast<int>(pass ? kOk : kNumerical);
  });
}

/// Moments of the stable subordinator or of the symmetric stable process.
inline int cmd_moments(const RunConfig& c, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    detail::require_format(c);
    frackernel::detail::require(!c.kappa.empty(), "moments: empty kappa list");
    const std::vector<double> ts = c.t.empty() ? std::vector<double>{1.0} : c.t;
    Table table;
    if (c.moment_kind == "stable") {
      const StableLaw law(c.beta);
      table.columns = {"beta", "kappa", "t", "moment"};
      for (double t : ts) {
        for (double k : c.kappa) table.rows.push_back({c.beta, k, t, law.moment(k, t)});
      }
    } else if (c.moment_kind == "levy") {
      table.columns = {"alpha", "n", "kappa", "t", "moment"};
      for (double t : ts) {
        for (double k : c.kappa) {
          table.rows.push_back({c.levy_alpha, c.d, k, t, levy_moment(c.levy_alpha, c.d, k, t)});
        }
      }
    } else {
      throw DomainError("moments: kind must be stable or levy");
    }
    emit(c, table, out);
    return static_cast<int>(kOk);
  });
}

/// Sample export; the seed is recorded in the metadata.
inline int cmd_sample(const RunConfig& c, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    detail::require_format(c);
    frackernel::detail::require(c.n >= 1, "sample: n must be at least 1");
    const StableLaw law(c.beta);
    const auto n = static_cast<std::size_t>(c.n);
    SampleBatch batch;
    if (c.sample_kind == "subordinator") {
      batch = sample_subordinator(law, c.t_fixed, n, c.seed);
    } else if (c.sample_kind == "inverse") {
      batch = sample_inverse_subordinator(law, c.t_fixed, n, c.seed);
    } else if (c.sample_kind == "timechanged") {
      BaseProcess base;
      if (c.base == "gauss") {
        base = Gauss{c.d};
      } else if (c.base == "cauchy") {
        base = Cauchy{c.d};
      } else {
        throw DomainError("sample: timechanged base must be gauss or cauchy");
      }
      frackernel::detail::require(c.mode == "sub" || c.mode == "invsub",
                                  "sample: mode must be sub or invsub");
      batch = sample_timechanged(base, law,
                                 c.mode == "sub" ? TimeChange::Subordinate
                                                 : TimeChange::InverseSubordinate,
                                 c.t_fixed, n, c.seed);
    } else {
      throw DomainError("sample: kind must be subordinator, inverse or timechanged");
    }
    Table table{{"index", "value"}, {}};
    table.rows.reserve(batch.values.size());
    for (std::size_t i = 0; i < batch.values.size(); ++i) {
      table.rows.push_back({static_cast<long long>(i), batch.values[i]});
    }
    emit(c, table, out, {{"law", batch.law_tag}});
    return static_cast<int>(kOk);
  });
}

/// Closed-form asymptotic values (corollaries) or generic theorem forms for a base kernel.
inline int cmd_asym(const RunConfig& c, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    detail::require_format(c);
    frackernel::detail::require(c.corollary.empty() != c.theorem.empty(),
                                "asym: give exactly one of --corollary or --theorem");
    const EvalPoint p{c.t.empty() ? 1.0 : c.t.front(), c.rho.empty() ? 1.0 : c.rho.front()};
    Table table{{"quantity", "value"}, {}};
    AsymptoticResult r;
    if (!c.corollary.empty()) {
      const std::string& k = c.corollary;
      frackernel::detail::require(k.size() == 2, "asym: corollary must look like 1a .. 3b");
      const char part = k[1];
      const Part pt = part == 'a' ? Part::A : part == 'b' ? Part::B : part == 'c' ? Part::C : Part::D;
      frackernel::detail::require(part >= 'a' && part <= 'd', "asym: unknown corollary part");
      if (k[0] == '1') {
        r = gauss_asym(pt, c.d, c.beta, p);
        if (pt == Part::D) {
          const auto kc = closed_form::gauss_exponential_constants(c.d, c.beta);
          table.rows.push_back({std::string("K1"), kc.k1()});
          table.rows.push_back({std::string("K2"), kc.k2()});
        }
      } else if (k[0] == '2') {
        r = cauchy_asym(pt, c.d, c.beta, p);
      } else if (k[0] == '3') {
        frackernel::detail::require(pt == Part::A || pt == Part::B,
                                    "asym: corollary 3 has parts a and b");
        r = frac_frac_asym(c.beta, c.gamma, c.d, p,
                           pt == Part::A ? Direction::LargeT : Direction::SmallT);
      } else {
        throw DomainError("asym: corollary must be 1, 2 or 3");
      }
    } else {
      const auto kernel = detail::make_kernel(c);
      const SweepCase which = detail::parse_case(c.theorem);
      switch (which) {
        case SweepCase::SubFar: r = sub_asym_far(kernel, c.beta, p); break;
        case SweepCase::SubNear: r = sub_asym_near(kernel, c.beta, p); break;
        case SweepCase::InvLargeT: r = invsub_asym_large_t(kernel, c.beta, p); break;
        case SweepCase::InvSmallT:
        case SweepCase::InvSmallTExp: r = invsub_asym_small_t(kernel, c.beta, p); break;
      }
      if (which == SweepCase::InvSmallTExp || (which == SweepCase::InvSmallT && kernel.exponential_type())) {
        const auto kc = exponential_constants(kernel.c1, kernel.c2, kernel.d, kernel.alpha, c.beta);
        table.rows.push_back({std::string("K1"), kc.k1()});
        table.rows.push_back({std::string("K2"), kc.k2()});
      }
    }
    table.rows.push_back({std::string("value"), r.value});
    table.rows.push_back({std::string("log_value"), r.log_value});
    table.rows.push_back({std::string("similarity"), r.similarity});
    table.rows.push_back({std::string("regime"), std::string(regime_name(r.regime))});
    emit(c, table, out);
    return static_cast<int>(kOk);
  });
}

inline int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
  if (c.command == "eval") return cmd_eval(c, out, err);
  if (c.command == "validate") return cmd_validate(c, out, err);
  if (c.command == "moments") return cmd_moments(c, out, err);
  if (c.command == "sample") return cmd_sample(c, out, err);
  if (c.command == "asym") return cmd_asym(c, out, err);
  err << "error: unknown command '" << c.command << "'\n";
  return kUsage;
}

}  // namespace frackernel::cli
