#pragma once

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "spinplane/algebra.hpp"
#include "spinplane/catalog.hpp"
#include "spinplane/determining.hpp"
#include "spinplane/periodic.hpp"
#include "spinplane/probes.hpp"
#include "spinplane/radial.hpp"
#include "spinplane/susy.hpp"

namespace spinplane::cli {

using nlohmann::ordered_json;

enum Exit { kPass = 0, kNumericFailure = 1, kUsage = 2 };

// Anything that maps to exit code 2.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

inline std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

// Writes to `path`, or stdout when empty.
inline void emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot open output file " + path);
  f << text;
}

// ---- verify-catalog ---------------------------------------------------------------------

struct CatalogConfig {
  std::string family = "T2.1";
  std::optional<double> mu, nu, k, omega, alpha, lambda, kappa, c;
  std::optional<int> delta, branch;
  std::string variant = "adopted";
  int samples = 200;
  std::uint64_t seed = 42;
  double tol = 1e-8;
  bool relations = false;
  int probes = 20, points = 50;
  std::string out;

  bool has_overrides() const {
    return mu || nu || k || omega || alpha || lambda || kappa || c || delta || branch;
  }
};

inline FieldParams resolve(FamilyId id, const CatalogConfig& c) {
  FieldParams p = default_params(id);
  if (c.mu) p.mu = *c.mu;
  if (c.nu) p.nu = *c.nu;
  if (c.k) p.k = *c.k;
  if (c.omega) p.omega = *c.omega;
  if (c.alpha) p.alpha = *c.alpha;
  if (c.lambda) p.lambda = *c.lambda;
  if (c.kappa) p.kappa = *c.kappa;
  if (c.c) p.c = *c.c;
  if (c.delta) p.delta = *c.delta;
  if (c.branch) p.branch = *c.branch;
  return p;
}

inline ordered_json params_json(const FieldParams& p) {
  return {{"mu", p.mu},     {"nu", p.nu}, {"k", p.k}, {"omega", p.omega}, {"alpha", p.alpha}, {"lambda", p.lambda},
          {"kappa", p.kappa}, {"delta", p.delta}, {"c", p.c}, {"branch", p.branch}};
}

inline ordered_json verify_family(FamilyId id, const CatalogConfig& c, std::vector<std::string>& failures) {
  const Variant v = c.variant == "printed" ? Variant::printed : Variant::adopted;
  const FieldParams p = resolve(id, c);
  std::optional<FieldFamily> famo;
  try {
    famo.emplace(id, p, v);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("inadmissible parameters: ") + e.what());
  }
  const FieldFamily& fam = *famo;

  ordered_json r;
  r["family"] = to_string(id);
  r["variant"] = c.variant;
  r["params"] = params_json(p);
  r["note"] = fam.decoupled() ? "decoupled" : "";

  ordered_json ops = ordered_json::array();
  for (const auto& d : fam.symmetry_operators())
    for (const auto& rep : certify(fam, d, c.samples, c.seed, c.tol)) {
      ops.push_back({{"operator", rep.op},
                     {"check", rep.check},
                     {"formula", d.formula},
                     {"n_points", rep.n_points},
                     {"max_residual", rep.max_residual},
                     {"mean_residual", rep.mean_residual},
                     {"tol", rep.tol},
                     {"pass", rep.pass},
                     {"note", rep.note}});
      if (!rep.pass)
        failures.push_back(rep.family + " " + rep.op + ": " +
                           (rep.check == "de" ? "determining equations for [H, Q] = 0" : "reduced planar system") +
                           " violated, max residual " + num(rep.max_residual) + " > " + num(rep.tol));
    }
  r["operators"] = ops;

  const auto probes = seeded_probes(c.probes, c.seed);
  ordered_json comm = ordered_json::array();
  for (const auto& cc : mutual_commutativity(fam, probes, c.points, c.seed, c.tol)) {
    comm.push_back({{"a", cc.a}, {"b", cc.b}, {"max_residual", cc.max_residual}, {"tol", c.tol}, {"pass", cc.pass}});
    if (!cc.pass)
      failures.push_back(to_string(id) + ": [" + cc.a + ", " + cc.b + "] = 0 violated, max residual " +
                         num(cc.max_residual) + " > " + num(c.tol));
  }
  r["commutators"] = comm;

  if (c.relations) {
    ordered_json rels = ordered_json::array();
    for (RelationId rid : all_relations()) {
      if (bound_family(rid) != id) continue;
      const auto rep = check_relation(rid, p, probes, c.points, c.seed, c.tol);
      auto parts = [&](const std::vector<IdentityResult>& v) {
        ordered_json a = ordered_json::array();
        for (auto& x : v) a.push_back({{"identity", x.text}, {"max_residual", x.max_residual}, {"pass", x.pass}});
        return a;
      };
      rels.push_back({{"relation", to_string(rid)},
                      {"max_residual", rep.max_residual},
                      {"tol", rep.tol},
                      {"pass", rep.pass},
                      {"parts", parts(rep.parts)},
                      {"exact_forms", parts(rep.info)},
                      {"note", rep.note}});
      for (auto& x : rep.parts)
        if (!x.pass)
          failures.push_back(to_string(id) + " relation " + to_string(rid) + ": " + x.text + " violated, max residual " +
                             num(x.max_residual) + " > " + num(rep.tol));
    }
    r["relations"] = rels;
  }
  return r;
}

inline int cmd_verify_catalog(const CatalogConfig& c) {
  if (c.samples < 1 || c.probes < 1 || c.points < 1) throw ConfigError("samples, probes and points must be positive");
  if (!(c.tol > 0)) throw ConfigError("tol must be positive");
  if (c.variant != "adopted" && c.variant != "printed") throw ConfigError("variant must be 'adopted' or 'printed'");
  std::vector<FamilyId> ids;
  if (c.family == "all") {
    if (c.has_overrides()) throw ConfigError("parameter overrides need a single --family");
    ids.assign(all_families().begin(), all_families().end());
  } else {
    try {
      ids.push_back(family_from_string(c.family));
    } catch (const std::exception&) {
      throw ConfigError("unknown family id '" + c.family + "' (expected T1.1..T1.8, T2.1..T2.4 or all)");
    }
  }

  std::vector<std::string> failures;
  ordered_json fams = ordered_json::array();
  for (FamilyId id : ids) fams.push_back(verify_family(id, c, failures));

  ordered_json rep;
  rep["schema"] = "1";
  rep["command"] = "verify-catalog";
  rep["config"] = {{"family", c.family}, {"variant", c.variant}, {"samples", c.samples}, {"seed", c.seed},
                   {"tol", c.tol},       {"relations", c.relations}, {"probes", c.probes}, {"points", c.points}};
  rep["families"] = fams;
  rep["failures"] = failures;
  rep["pass"] = failures.empty();
  emit(c.out, rep.dump(2) + "\n");
  for (auto& f : failures) std::cerr << "FAIL " << f << "\n";
  return failures.empty() ? kPass : kNumericFailure;
}

// ---- spectrum ---------------------------------------------------------------------------

struct SpectrumConfig {
  std::string model;
  std::optional<double> mu;  // periodic default 1, radial default 0
  // periodic
  double nu = 0.5;
  int nmax = 3, cutoff = 64;
  // radial
  double alpha = 2, k = 0.5;
  int eps = 1, levels = 3, n_grid = 6000;
  double rmax = 60;
  // susy
  double kappa = 1, p = -1, lambda = 1, ymax = 12;
  int n = 2;

  std::string convention = "printed";
  double tol = -1;  // model default when negative
  std::string out, log, series;
};

struct Row {
  std::vector<std::string> keys;  // model params and level label
  double closed = 0, numeric = 0;
  bool ok = true;                 // numeric side trustworthy (converged)
};

inline std::string csv(const std::vector<std::string>& header, const std::vector<Row>& rows, double tol, bool relative,
                       std::vector<std::string>& failures) {
  std::ostringstream o;
  for (size_t i = 0; i < header.size(); ++i) o << header[i] << ",";
  o << "E_closed_form,E_numeric,abs_err,rel_err,pass\n";
  for (const auto& r : rows) {
    const double ae = std::abs(r.numeric - r.closed), re = ae / std::max(std::abs(r.closed), 1e-300);
    const bool pass = r.ok && (relative ? re : ae) <= tol;
    for (auto& k : r.keys) o << k << ",";
    o << num(r.closed) << "," << num(r.numeric) << "," << num(ae) << "," << num(re) << "," << (pass ? 1 : 0) << "\n";
    if (!pass) {
      std::string id;
      for (size_t i = 0; i < r.keys.size(); ++i) id += (i ? " " : "") + header[i] + "=" + r.keys[i];
      failures.push_back(id + ": " + (r.ok ? std::string(relative ? "relative" : "absolute") + " error " +
                                                 num(relative ? re : ae) + " > " + num(tol)
                                           : std::string("numeric solve not converged")));
    }
  }
  return o.str();
}

inline std::string jsonl(const ordered_json& j) { return j.dump() + "\n"; }

inline int run_periodic(const SpectrumConfig& c, std::vector<std::string>& failures) {
  const double mu = c.mu.value_or(1.0);
  if (!(mu > 0)) throw ConfigError("inadmissible parameters: periodic levels need mu > 0");
  if (c.nmax < 0) throw ConfigError("nmax must be >= 0");
  if (c.cutoff < 16) throw ConfigError("cutoff must be >= 16");
  const double tol = c.tol > 0 ? c.tol : 1e-6;
  const bool printed = c.convention == "printed";
  std::vector<Row> rows;
  std::string log = jsonl({{"config", {{"model", "periodic"}, {"mu", mu}, {"nu", c.nu}, {"nmax", c.nmax},
                                       {"cutoff", c.cutoff}, {"convention", c.convention}}}});
  for (const auto& d : discrete_levels(mu, c.nmax))
    for (int side : {1, -1}) {
      if (d.n == 0 && side < 0) continue;
      // the state with Q3 = k sits on branch t = +-n/2 of the +- band
      const double t = side * 0.5 * d.n;
      const double q = quasimomentum(c.nu, t);
      const auto bs = bloch_spectrum(mu, c.nu, q, c.cutoff);
      // upper component e^{i(m + q) y} with m + q = 1/2 - nu + t
      const int m = int(std::lround(0.5 - c.nu + t - q));
      size_t best = 0;
      double score = 1e300;
      for (size_t i = 0; i < bs.values.size(); ++i)
        if (bs.block[i] == m && std::abs(bs.k_values[i] - d.k) < score) score = std::abs(bs.k_values[i] - d.k), best = i;
      const double closed = printed ? d.E() : band_energy(mu, c.nu, t, d.eps);
      rows.push_back({{"periodic", num(mu), num(c.nu), std::to_string(d.n), d.eps > 0 ? "+" : "-", num(t), num(d.k),
                       num(q)},
                      closed,
                      bs.values[best],
                      bs.converged});
      for (int M : {16, 32, 48, c.cutoff}) {
        if (M > c.cutoff) continue;
        const auto s = bloch_spectrum(mu, c.nu, q, M);
        for (int i = 0; i < 6; ++i) log += jsonl({{"n", d.n}, {"eps", d.eps}, {"t", t}, {"M", M}, {"level", i}, {"value", s.values[i]}});
      }
    }
  if (!c.series.empty()) {
    std::ostringstream s;
    s << "t,k_plus,E_plus,k_minus,E_minus\n";
    for (int i = 0; i <= 120; ++i) {
      const double t = -3 + 0.05 * i, w = std::hypot(t, mu);
      s << num(t) << "," << num(0.5 + w) << "," << num(band_energy(mu, c.nu, t, 1)) << "," << num(0.5 - w) << ","
        << num(band_energy(mu, c.nu, t, -1)) << "\n";
    }
    emit(c.series, s.str());
  }
  emit(c.out, csv({"model", "mu", "nu", "n", "branch", "t", "k", "q"}, rows, tol, false, failures));
  if (!c.log.empty()) emit(c.log, log);
  return 0;
}

inline int run_radial(const SpectrumConfig& c, std::vector<std::string>& failures) {
  const double mu = c.mu.value_or(0.0);
  if (c.levels < 1) throw ConfigError("levels must be >= 1");
  if (c.n_grid < 1000) throw ConfigError("n must be >= 1000");
  if (!(c.rmax > 0)) throw ConfigError("rmax must be positive");
  if (!(c.alpha > 0)) throw ConfigError("inadmissible parameters: bound states need alpha > 0");
  try {
    check_radial_admissible(c.k, c.eps, mu);
  } catch (const AdmissibilityError& e) {
    throw ConfigError(std::string("inadmissible parameters: ") + e.what());
  }
  const double tol = c.tol > 0 ? c.tol : 1e-4;
  const auto conv = c.convention == "printed" ? LevelConvention::printed : LevelConvention::corrected;
  const auto ex = coulomb_levels(c.alpha, c.k, mu, c.eps, c.levels - 1, conv);
  const auto fd = radial_fd_spectrum(c.alpha, c.k, mu, c.eps, c.rmax, c.n_grid, c.levels, tol);
  std::vector<Row> rows;
  for (int n = 0; n < c.levels; ++n)
    rows.push_back({{"radial", num(c.alpha), num(c.k), num(mu), std::to_string(c.eps), std::to_string(n)},
                    ex[n].E,
                    fd.values[n],
                    fd.converged});
  emit(c.out, csv({"model", "alpha", "k", "mu", "eps", "n"}, rows, tol, true, failures));
  if (!fd.converged) failures.push_back("radial solver: " + fd.note);
  if (!c.series.empty()) {
    const auto pr = coulomb_levels(c.alpha, c.k, mu, c.eps, c.levels - 1, LevelConvention::printed);
    const auto co = coulomb_levels(c.alpha, c.k, mu, c.eps, c.levels - 1, LevelConvention::corrected);
    std::ostringstream s;
    s << "n,E_printed,E_corrected,E_fd\n";
    for (int n = 0; n < c.levels; ++n) s << n << "," << num(pr[n].E) << "," << num(co[n].E) << "," << num(fd.values[n]) << "\n";
    emit(c.series, s.str());
  }
  if (!c.log.empty()) {
    std::string log = jsonl({{"config", {{"model", "radial"}, {"alpha", c.alpha}, {"k", c.k}, {"mu", mu}, {"eps", c.eps},
                                         {"levels", c.levels}, {"rmax", c.rmax}, {"n", c.n_grid}, {"convention", c.convention}}}});
    for (int N : {c.n_grid / 4, c.n_grid / 2, c.n_grid}) {
      if (N < 1000) continue;
      const auto s = radial_fd_spectrum(c.alpha, c.k, mu, c.eps, c.rmax, N, c.levels, tol);
      for (int i = 0; i < c.levels; ++i) log += jsonl({{"N", N}, {"level", i}, {"value", s.values[i]}});
    }
    emit(c.log, log);
  }
  return 0;
}

// eps estimate <Phi, (-d^2 + V) Phi> / <Phi, Phi> on a uniform y grid, analytic derivatives
inline double susy_quotient(const SusyState& st, double y0, double y1, int n = 600) {
  double num_ = 0, den = 0;
  for (int i = 0; i <= n; ++i) {
    const double y = y0 + (y1 - y0) * i / n;
    const Jet1 Y = Jet1::variable(y);
    const auto f = st.jet(y);
    const auto vf = apply_V(st.params, f, Y);
    for (int c = 0; c < 2; ++c) {
      num_ += f[c].value() * (-f[c].derivative(2) + vf[c].value());
      den += f[c].value() * f[c].value();
    }
  }
  return num_ / den;
}

inline int run_susy(const SpectrumConfig& c, std::vector<std::string>& failures) {
  const SusyParams s{c.kappa, c.p, c.lambda};
  if (c.n < 0) throw ConfigError("n must be >= 0");
  if (!(c.ymax > 0)) throw ConfigError("ymax must be positive");
  std::vector<SusyState> states;
  try {
    validate(s);
    for (int j = 0; j <= c.n; ++j) states.push_back(susy_excited_state(s, j));
  } catch (const std::domain_error& e) {
    throw ConfigError(std::string("inadmissible parameters: ") + e.what());
  }
  const double tol = c.tol > 0 ? c.tol : 1e-6;
  const auto ys = y_grid(0, c.ymax, 241);
  std::vector<Row> rows;
  std::string log = jsonl({{"config", {{"model", "susy"}, {"kappa", c.kappa}, {"p", c.p}, {"lambda", c.lambda}, {"n", c.n},
                                       {"ymax", c.ymax}}}});
  for (const auto& st : states) {
    const double q = susy_quotient(st, 0, c.ymax);
    rows.push_back({{"susy", num(c.kappa), num(c.p), num(c.lambda), std::to_string(st.n)}, st.eps, q, true});
    log += jsonl({{"n", st.n}, {"E", st.E}, {"eigen_residual", eigen_residual(st, ys).relative},
                  {"phi0", {st.boundary_value()[0], st.boundary_value()[1]}}});
  }
  emit(c.out, csv({"model", "kappa", "p", "lambda", "n"}, rows, tol, true, failures));
  if (!c.series.empty()) {
    std::ostringstream o;
    o << "y";
    for (auto& st : states) o << ",phi" << st.n << "_1,phi" << st.n << "_2";
    o << "\n";
    for (double y : ys) {
      o << num(y);
      for (auto& st : states) {
        const auto v = st(y);
        o << "," << num(v[0]) << "," << num(v[1]);
      }
      o << "\n";
    }
    emit(c.series, o.str());
  }
  if (!c.log.empty()) emit(c.log, log);
  return 0;
}

inline int cmd_spectrum(const SpectrumConfig& c) {
  if (c.convention != "printed" && c.convention != "corrected")
    throw ConfigError("convention must be 'printed' or 'corrected'");
  std::vector<std::string> failures;
  if (c.model == "periodic") run_periodic(c, failures);
  else if (c.model == "radial") run_radial(c, failures);
  else if (c.model == "susy") run_susy(c, failures);
  else throw ConfigError("model must be one of periodic, radial, susy (got '" + c.model + "')");
  for (auto& f : failures) std::cerr << "FAIL " << f << "\n";
  return failures.empty() ? kPass : kNumericFailure;
}

// ---- report -----------------------------------------------------------------------------

struct ReportConfig {
  std::string input;
  std::string out;
};

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  return out;
}

inline int cmd_report(const ReportConfig& c) {
  namespace fs = std::filesystem;
  if (c.input.empty() || !fs::is_directory(c.input)) throw ConfigError("input directory '" + c.input + "' not found");
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(c.input))
    if (e.is_regular_file() && (e.path().extension() == ".json" || e.path().extension() == ".csv")) files.push_back(e.path());
  std::sort(files.begin(), files.end());

  ordered_json matrix = ordered_json::object(), spectra = ordered_json::array(), sources = ordered_json::array();
  std::vector<std::string> failures;
  auto cell = [&](const std::string& fam, const std::string& key, double res, double tol, bool pass) {
    matrix[fam][key] = {{"max_residual", res}, {"tol", tol}, {"pass", pass}};
    if (!pass) failures.push_back(fam + " " + key);
  };
  for (const auto& f : files) {
    std::ifstream in(f, std::ios::binary);
    if (f.extension() == ".json") {
      ordered_json j;
      try {
        j = ordered_json::parse(in);
      } catch (const std::exception& e) {
        throw ConfigError(f.filename().string() + ": not valid JSON");
      }
      if (!j.is_object() || j.value("schema", "") != "1" || j.value("command", "") != "verify-catalog") continue;
      sources.push_back(f.filename().string());
      for (const auto& fam : j["families"]) {
        const std::string id = fam["family"];
        for (const auto& o : fam["operators"])
          cell(id, o["operator"].get<std::string>() + ":" + o["check"].get<std::string>(), o["max_residual"], o["tol"], o["pass"]);
        for (const auto& o : fam["commutators"])
          cell(id, "[" + o["a"].get<std::string>() + "," + o["b"].get<std::string>() + "]", o["max_residual"], o["tol"], o["pass"]);
        if (fam.contains("relations"))
          for (const auto& o : fam["relations"]) cell(id, o["relation"], o["max_residual"], o["tol"], o["pass"]);
      }
    } else {
      std::string line;
      if (!std::getline(in, line)) continue;
      const auto header = split_csv_line(line);
      if (header.empty() || header[0] != "model" || header.back() != "pass") continue;
      sources.push_back(f.filename().string());
      while (std::getline(in, line)) {
        const auto cells = split_csv_line(line);
        if (cells.size() != header.size()) throw ConfigError(f.filename().string() + ": ragged CSV row");
        ordered_json row;
        for (size_t i = 0; i < header.size(); ++i) row[header[i]] = cells[i];
        row["source"] = f.filename().string();
        if (cells.back() != "1") failures.push_back(f.filename().string() + " " + line);
        spectra.push_back(row);
      }
    }
  }
  if (sources.empty()) throw ConfigError("no run artifacts (verify-catalog JSON or spectrum CSV) in " + c.input);

  ordered_json rep;
  rep["schema"] = "1";
  rep["command"] = "report";
  rep["config"] = {{"input", c.input}};
  rep["sources"] = sources;
  rep["matrix"] = matrix;
  rep["spectra"] = spectra;
  rep["failures"] = failures;
  rep["pass"] = failures.empty();
  emit(c.out, rep.dump(2) + "\n");
  return failures.empty() ? kPass : kNumericFailure;
}

}  // namespace spinplane::cli
