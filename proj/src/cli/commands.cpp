#include <cmath>

#include "expfun/cli.hpp"
#include "expfun/error.hpp"
#include "expfun/inequalities.hpp"

namespace expfun::cli {

namespace {

std::vector<double> sample_points(const RunConfig& cfg) {
  std::vector<double> xs = cfg.points;
  if (cfg.interval) {
    const auto [lo, hi] = *cfg.interval;
    const int count = cfg.samples;
    for (int i = 0; i < count; ++i) {
      xs.push_back(count == 1 ? lo : (i == count - 1 ? hi : lo + (hi - lo) * i / (count - 1)));
    }
  }
  return xs;
}

Report frequencies_json(const FrequencyVector& freq) {
  Report arr = Report::array();
  for (const auto& f : freq.entries()) arr.push_back({f.real(), f.imag()});
  return arr;
}

Report header(const RunConfig& cfg, const FrequencyVector& freq) {
  Report r;
  r["command"] = to_string(cfg.command);
  r["frequencies"] = frequencies_json(freq);
  r["n"] = freq.order();
  return r;
}

template <class T>
Report optional_json(const std::optional<T>& v) {
  return v ? Report(*v) : Report(nullptr);
}

}  // namespace

Outcome cmd_eval(const RunConfig& cfg) {
  const auto freq = cfg.frequency_vector();
  const FundamentalEvaluator e(freq);
  const int m = cfg.m.value_or(0);
  Outcome out;
  out.tabular = true;
  out.report = header(cfg, freq);
  out.report["m"] = m;
  Report rows = Report::array();
  for (double x : sample_points(cfg)) {
    Report row;
    row["x"] = x;
    if (e.realify()) {
      row["value"] = e.derivative(m, x);
    } else {
      const Complex v = e.derivative_complex(m, x);
      row["re"] = v.real();
      row["im"] = v.imag();
    }
    rows.push_back(std::move(row));
  }
  out.report["rows"] = std::move(rows);
  return out;
}

Outcome cmd_verify(const RunConfig& cfg) {
  const auto freq = cfg.frequency_vector();
  const FundamentalEvaluator e(freq);
  const int m = cfg.m.value_or(freq.order() + 1);
  const auto [lo, hi] = *cfg.interval;
  const auto rep = verify_sign(e, m, lo, hi, cfg.grid, cfg.tol.value_or(kDefaultSignTol), cfg.orientation);
  Outcome out;
  out.report = header(cfg, freq);
  out.report["m"] = m;
  out.report["interval"] = {lo, hi};
  out.report["orientation"] =
      cfg.orientation == Orientation::nonnegative ? "nonnegative" : "nonpositive";
  out.report["samples"] = rep.samples;
  out.report["status"] = to_string(rep.status);
  out.report["witness"] = optional_json(rep.witness);
  out.report["witness_value"] = optional_json(rep.witness_value);
  out.report["boundary"] = optional_json(rep.boundary);
  out.check_failed = rep.status == SignStatus::violated;
  return out;
}

Outcome cmd_hankel(const RunConfig& cfg) {
  const auto freq = cfg.frequency_vector();
  const FundamentalEvaluator e(freq);
  const double tol = cfg.tol.value_or(0.0);
  const int top = cfg.top_order < 0 ? freq.order() : cfg.top_order;
  if (2 * cfg.k > top) throw ConfigError("hankel needs 2k <= top_order");

  const auto det = [&](double x) { return hankel_matrix(e, cfg.k, x, top).determinant(); };

  Outcome out;
  out.report = header(cfg, freq);
  out.report["k"] = cfg.k;
  out.report["top_order"] = top;
  bool all_pd = true;
  Report points = Report::array();
  for (double x : cfg.points) {
    const auto h = hankel_matrix(e, cfg.k, x, top);
    const bool pd = is_positive_definite(h, tol);
    all_pd = all_pd && pd;
    points.push_back({{"x", x}, {"det", h.determinant()}, {"positive_definite", pd}});
  }
  out.report["points"] = std::move(points);

  if (cfg.interval) {
    const auto [lo, hi] = *cfg.interval;
    const int grid = cfg.grid;
    const double step = (hi - lo) / grid;
    Report changes = Report::array();
    int non_pd = 0;
    std::optional<double> first_non_pd;
    double prev_x = lo;
    double prev_det = 0.0;
    for (int i = 0; i <= grid; ++i) {
      const double x = i == grid ? hi : lo + i * step;
      const auto h = hankel_matrix(e, cfg.k, x, top);
      const double d = h.determinant();
      if (!is_positive_definite(h, tol)) {
        ++non_pd;
        if (!first_non_pd) first_non_pd = x;
      }
      if (i > 0 && (d >= 0.0) != (prev_det >= 0.0)) {
        changes.push_back(bisect_sign_change(det, prev_x, x));
      }
      prev_x = x;
      prev_det = d;
    }
    all_pd = all_pd && non_pd == 0;
    out.report["interval"] = {lo, hi};
    out.report["samples"] = grid;
    out.report["det_at_lo"] = det(lo);
    out.report["det_at_hi"] = det(hi);
    out.report["non_pd_samples"] = non_pd;
    out.report["first_non_pd"] = optional_json(first_non_pd);
    out.report["det_sign_changes"] = std::move(changes);
  }
  out.report["all_positive_definite"] = all_pd;
  out.check_failed = !all_pd;
  return out;
}

Outcome cmd_turan(const RunConfig& cfg) {
  const auto freq = cfg.frequency_vector();
  const FundamentalEvaluator e(freq);
  if (freq.order() < 2) throw ConfigError("turan needs n >= 2");
  const double upper = turan_upper_bound(freq.order());
  Outcome out;
  out.tabular = true;
  out.report = header(cfg, freq);
  Report rows = Report::array();
  for (double x : sample_points(cfg)) {
    Report row;
    row["x"] = x;
    try {
      const double f = turan_ratio(e, x);
      row["F"] = f;
      if (x > 0.0 && (f < 1.0 - 1e-12 || f >= upper + 1e-9)) out.check_failed = true;
    } catch (const NumericalError&) {
      row["F"] = nullptr;
    }
    row["lower"] = 1.0;
    row["upper"] = upper;
    rows.push_back(std::move(row));
  }
  out.report["rows"] = std::move(rows);
  return out;
}

Outcome cmd_moments(const RunConfig& cfg) {
  const auto freq = cfg.frequency_vector();
  const FundamentalEvaluator e(freq);
  if (!e.realify()) throw ConfigError("moments need conjugate-closed frequencies");
  const auto mu = parse_measure(*cfg.measure);
  const double tol = cfg.tol.value_or(1e-10);

  const auto s = transform(e, mu, cfg.grid);
  const auto check = hausdorff_check(s, tol);

  Outcome out;
  out.report = header(cfg, freq);
  out.report["measure"] = {{"kind", mu.kind() == Measure::Kind::atoms ? "atoms" : "density"},
                           {"support", {mu.lo(), mu.hi()}},
                           {"name", mu.name()}};
  out.report["s"] = s.values;
  out.report["hypothesis_certified"] = s.hypothesis_certified;
  out.report["quadrature_order"] = s.quadrature_order;
  Report conditions = Report::array();
  for (const auto& c : check.conditions) {
    conditions.push_back({{"name", c.name},
                          {"min_eigenvalue", c.min_eigenvalue},
                          {"threshold", c.threshold},
                          {"passed", c.passed}});
  }
  out.report["hausdorff"] = {{"pass", check.pass}, {"conditions", std::move(conditions)}};

  if (check.pass) {
    const auto nu = recover_measure(s, tol);
    Report atoms = Report::array();
    for (const auto& a : nu.atoms()) atoms.push_back({{"location", a.location}, {"weight", a.weight}});
    const auto res = moment_residuals(nu, s);
    double worst = 0.0;
    for (double r : res) worst = std::max(worst, r);
    out.report["recovered"] = {{"atoms", std::move(atoms)},
                               {"residuals", res},
                               {"max_residual", worst}};
  } else {
    out.report["recovered"] = nullptr;
  }
  out.check_failed = !check.pass;
  return out;
}

Outcome cmd_certify(const RunConfig& cfg) {
  const auto freq = cfg.frequency_vector();
  if (!freq.is_real()) throw ConfigError("certify needs real frequencies");
  const auto cert = monotonicity_certificate(freq);
  const bool necessary = check_necessary(freq);

  Outcome out;
  out.report = header(cfg, freq);
  out.report["tag"] = to_string(cert.tag);
  out.report["chain_depth"] = cert.chain_depth();
  Report pairs = Report::array();
  for (const auto& [j, k] : cert.pairs) pairs.push_back({j, k});
  out.report["pairs"] = std::move(pairs);
  out.report["nonneg_index"] = optional_json(cert.nonneg_index);
  out.report["certified_order"] =
      cert.tag == MonotonicityTag::symmetric ? Report("all") : Report(*cert.certified_order);
  out.report["counter_certificate"] = cert.counter_certificate;
  out.report["counter_witness"] = optional_json(cert.counter_witness);
  out.report["frequency_sum"] = freq.sum().real();
  out.report["necessary_condition"] = necessary;
  out.check_failed = !necessary || cert.tag == MonotonicityTag::none;
  return out;
}

Outcome run_command(const RunConfig& cfg) {
  switch (cfg.command) {
    case Command::eval: return cmd_eval(cfg);
    case Command::verify: return cmd_verify(cfg);
    case Command::hankel: return cmd_hankel(cfg);
    case Command::turan: return cmd_turan(cfg);
    case Command::moments: return cmd_moments(cfg);
    case Command::certify: return cmd_certify(cfg);
  }
  throw ConfigError("unknown command");
}

}  // namespace expfun::cli
