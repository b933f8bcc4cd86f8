#include "polyinv/pipeline.hpp"

#include "polyinv/solvability.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <random>
#include <regex>
#include <set>
#include <sstream>

namespace polyinv {

namespace {

using Clock = std::chrono::steady_clock;

struct Deadline {
  Clock::time_point end;
  bool enabled;

  explicit Deadline(double seconds)
      : end(Clock::now() +
            std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(seconds))),
        enabled(seconds > 0) {}

  void check() const {
    if (enabled && Clock::now() > end) throw TimeoutError("analysis exceeded the time limit");
  }
};

double ms_between(Clock::time_point a, Clock::time_point b) {
  return std::chrono::duration<double, std::milli>(b - a).count();
}

std::string eigenvalue_label(const std::vector<Rational>& eigs) {
  bool uniform = std::all_of(eigs.begin(), eigs.end(),
                             [&](const Rational& x) { return x == eigs.front(); });
  if (uniform) return rational_to_string(eigs.front());
  std::string s = "(";
  for (std::size_t i = 0; i < eigs.size(); ++i) {
    if (i) s += ", ";
    s += rational_to_string(eigs[i]);
  }
  return s + ")";
}

}  // namespace

Report analyze(const Program& p, const AnalyzeConfig& cfg) {
  Deadline dl(cfg.timeout_seconds);
  Report r;
  r.program = p;
  r.degree = cfg.degree;
  r.with_timings = cfg.with_timings;

  auto last = Clock::now();
  auto mark = [&](const char* phase) {
    auto now = Clock::now();
    r.timings_ms.emplace_back(phase, ms_between(last, now));
    last = now;
  };

  std::vector<PolyMap> bodies = p.loop_bodies();
  for (const PolyMap& b : bodies) check_solvable(b, p.vars);
  mark("solvability");
  dl.check();

  r.linear = linearize_bodies(bodies, cfg.degree, p.vars, cfg.basis_limit);
  mark("linearize");
  dl.check();

  std::vector<InvariantFamily> fams;
  std::vector<UniPoly> body_residuals(bodies.size());
  fams.reserve(bodies.size());
  for (std::size_t b = 0; b < bodies.size(); ++b) {
    fams.push_back(semi_invariants(r.linear.body(b), &body_residuals[b]));
    dl.check();
  }
  mark("eigenspaces");

  r.family = intersect(fams, cfg.max_combos);
  r.truncated = r.family.truncated;
  r.poly_families = to_poly_families(r.family);
  mark("intersect");
  dl.check();

  std::optional<State> entry;
  if (cfg.init) entry = p.prefix_map().apply(*cfg.init);
  r.forms = entry ? instantiate(r.poly_families, *entry, p.vars)
                  : reduce_parameters(r.poly_families, p.vars);
  mark_evident(r.forms, bodies);
  mark("reduce");
  dl.check();

  for (std::size_t b = 0; b < bodies.size(); ++b) {
    ResidualSpectrum spec = residual_spectrum(body_residuals[b]);
    if (!spec.empty()) r.residuals.push_back({b, std::move(spec)});
  }
  mark("residual");
  dl.check();

  if (cfg.elevate_on_irrational && !r.residuals.empty()) {
    std::vector<unsigned> schedule;
    if (cfg.elevation_degree > 0) {
      schedule.push_back(cfg.elevation_degree);
    } else {
      std::set<unsigned> degs;
      for (const auto& br : r.residuals)
        for (unsigned e : elevation_schedule(br.spectrum)) degs.insert(e);
      schedule.assign(degs.begin(), degs.end());
    }
    for (unsigned e : schedule) {
      ElevationResult res;
      res.degree = e;
      try {
        res.families =
            elevated_invariants(r.linear, e, cfg.elevation_cap, cfg.max_combos, &res.truncated);
      } catch (const SizeLimitError&) {
        break;  // elevated dimension above the cap: stop escalating
      }
      res.forms = entry ? instantiate(res.families, *entry, p.vars)
                        : reduce_parameters(res.families, p.vars);
      mark_evident(res.forms, bodies);
      r.elevations.push_back(std::move(res));
      dl.check();
    }
    mark("elevate");
  }

  if (cfg.oracle_iters > 0) {
    r.oracle_verdict = run_oracle(p, r, cfg);
    mark("oracle");
  }
  return r;
}

namespace {

Rational random_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-9, 9);
  std::uniform_int_distribution<long> den(1, 4);
  Rational r(num(rng), den(rng));
  r.canonicalize();
  return r;
}

bool forms_hold_on_trace(const std::vector<InvariantForm>& forms, const Trace& tr,
                         const std::vector<std::size_t>& choices) {
  for (const InvariantForm& form : forms) {
    if (form.instantiated) {
      Rational want = form.k_form ? form.value : Rational(0);
      for (const State& s : tr.states)
        if (form.parts.front().eval(s) != want) return false;
    } else {
      for (const Polynomial& part : form.parts) {
        Rational prev = part.eval(tr.states.front());
        for (std::size_t t = 0; t + 1 < tr.states.size(); ++t) {
          Rational next = part.eval(tr.states[t + 1]);
          if (next != form.eigenvalues[choices[t]] * prev) return false;
          prev = std::move(next);
        }
      }
    }
  }
  return true;
}

}  // namespace

std::string run_oracle(const Program& p, const Report& r, const AnalyzeConfig& cfg) {
  std::mt19937_64 rng(cfg.oracle_seed);

  std::vector<State> inits;
  if (cfg.init) {
    inits.push_back(*cfg.init);
  } else {
    for (unsigned i = 0; i < cfg.oracle_runs; ++i) {
      State s;
      s.reserve(p.vars.size());
      for (std::size_t v = 0; v < p.vars.size(); ++v) s.push_back(random_rational(rng));
      inits.push_back(std::move(s));
    }
  }

  std::size_t nbodies = p.loop_bodies().size();
  std::uniform_int_distribution<std::size_t> body_pick(0, nbodies - 1);
  PolyMap prefix = p.prefix_map();

  for (const State& init : inits) {
    std::vector<std::size_t> choices;
    choices.reserve(cfg.oracle_iters);
    for (unsigned t = 0; t < cfg.oracle_iters; ++t) choices.push_back(body_pick(rng));
    Trace tr = run(p, init, cfg.oracle_iters, choices);

    if (!forms_hold_on_trace(r.forms, tr, choices)) return "fail";
    for (const auto& e : r.elevations)
      if (!forms_hold_on_trace(e.forms, tr, choices)) return "fail";

    if (!cfg.init) {
      // Also pin every family on this concrete start and re-check.
      State entry = prefix.apply(init);
      if (!forms_hold_on_trace(instantiate(r.poly_families, entry, p.vars), tr, choices))
        return "fail";
      for (const auto& e : r.elevations)
        if (!forms_hold_on_trace(instantiate(e.families, entry, p.vars), tr, choices))
          return "fail";
    }
  }
  return "pass";
}

std::optional<unsigned> degree_directive(const std::string& source) {
  static const std::regex re(R"(#\s*degree\s*:\s*(\d+))");
  std::smatch m;
  if (std::regex_search(source, m, re)) return static_cast<unsigned>(std::stoul(m[1].str()));
  return std::nullopt;
}

namespace {

// A pinned "p = k" equation holds on every execution, so it is a plain
// invariant; only parametrized scaling families stay semi-invariants.
std::string form_status(const InvariantForm& f) {
  return f.k_form || f.instantiated ? "invariant" : "semi-invariant";
}

std::string form_text_line(const InvariantForm& f) {
  std::string s = "[lambda = " + eigenvalue_label(f.eigenvalues) + "] " + f.rendered;
  if (f.evident) s += "  (evident)";
  return s;
}

}  // namespace

std::string Report::to_text() const {
  std::ostringstream out;
  out << "degree: " << degree << "\n";
  out << "bodies: " << linear.matrices.size() << "\n";
  out << "basis (" << linear.basis.size() << "):";
  for (std::size_t i = 0; i < linear.basis.size(); ++i)
    out << (i ? ", " : " ") << linear.basis[i].str(linear.names);
  out << "\n";

  if (forms.empty())
    out << "invariants: none\n";
  else {
    out << "invariants:\n";
    for (const auto& f : forms) out << "  " << form_text_line(f) << "\n";
  }

  if (!residuals.empty()) {
    out << "residual spectrum:\n";
    for (const auto& br : residuals) {
      out << "  body " << br.body << ": " << br.spectrum.residual.str("lambda");
      for (const auto& rf : br.spectrum.factors) {
        out << "; factor " << rf.factor.str("lambda") << " (multiplicity " << rf.multiplicity
            << ", root product " << rational_to_string(rf.root_product) << ")";
      }
      out << "\n";
    }
  }

  for (const auto& e : elevations) {
    out << "elevation (degree " << e.degree << "):\n";
    if (e.forms.empty()) out << "  none\n";
    for (const auto& f : e.forms) out << "  " << form_text_line(f) << "\n";
    if (e.truncated) out << "  (combinations truncated)\n";
  }

  if (truncated) out << "note: eigenvalue combinations truncated at the cap\n";
  out << "oracle: " << oracle_verdict << "\n";

  if (with_timings) {
    out << "timings:\n";
    for (const auto& [phase, ms] : timings_ms)
      out << "  " << phase << ": " << std::fixed << std::setprecision(2) << ms << " ms\n";
  }
  return out.str();
}

namespace {

nlohmann::ordered_json monomial_json(const Monomial& m, const std::vector<std::string>& names) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (std::size_t v = 0; v < m.exps.size(); ++v)
    if (m.exps[v] > 0) j[names[v]] = m.exps[v];
  return j;
}

nlohmann::ordered_json terms_json(const Polynomial& p, const std::vector<std::string>& names) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& [m, c] : p.terms) {
    nlohmann::ordered_json t;
    t["monomial"] = monomial_json(m, names);
    t["coeff"] = rational_to_string(c);
    arr.push_back(std::move(t));
  }
  return arr;
}

nlohmann::ordered_json form_json(const InvariantForm& f, const std::vector<std::string>& names) {
  nlohmann::ordered_json j;
  j["eigenvalue"] = eigenvalue_label(f.eigenvalues);
  nlohmann::ordered_json parts = nlohmann::ordered_json::array();
  if (f.instantiated) {
    // single anonymous part whose equation is part = 0
    Polynomial eq = f.parts.front();
    if (f.k_form) eq = eq - Polynomial::constant(eq.nvars, f.value);
    nlohmann::ordered_json part;
    part["parameter"] = nullptr;
    part["terms"] = terms_json(eq, names);
    parts.push_back(std::move(part));
  } else {
    for (std::size_t i = 0; i < f.parts.size(); ++i) {
      nlohmann::ordered_json part;
      part["parameter"] = f.parameters[i];
      part["terms"] = terms_json(f.parts[i], names);
      parts.push_back(std::move(part));
    }
  }
  j["form"] = std::move(parts);
  j["rendered"] = f.rendered;
  j["status"] = form_status(f);
  j["parameters"] = f.instantiated ? nlohmann::ordered_json::array()
                                   : nlohmann::ordered_json(f.parameters);
  j["evident"] = f.evident;
  return j;
}

}  // namespace

std::string Report::to_json() const {
  nlohmann::ordered_json j;
  j["program"] = pretty_print(program);
  j["degree"] = degree;

  nlohmann::ordered_json basis = nlohmann::ordered_json::array();
  for (const auto& m : linear.basis) basis.push_back(m.str(linear.names));
  j["basis"] = std::move(basis);

  nlohmann::ordered_json invs = nlohmann::ordered_json::array();
  for (const auto& f : forms) invs.push_back(form_json(f, program.vars));
  j["invariants"] = std::move(invs);

  nlohmann::ordered_json residual = nlohmann::ordered_json::array();
  for (const auto& br : residuals) {
    nlohmann::ordered_json b;
    b["body"] = br.body;
    b["residual"] = br.spectrum.residual.str("lambda");
    nlohmann::ordered_json factors = nlohmann::ordered_json::array();
    for (const auto& rf : br.spectrum.factors) {
      nlohmann::ordered_json fj;
      fj["factor"] = rf.factor.str("lambda");
      fj["multiplicity"] = rf.multiplicity;
      fj["root_product"] = rational_to_string(rf.root_product);
      factors.push_back(std::move(fj));
    }
    b["factors"] = std::move(factors);
    residual.push_back(std::move(b));
  }
  j["residual_spectrum"] = std::move(residual);

  nlohmann::ordered_json elevs = nlohmann::ordered_json::array();
  for (const auto& e : elevations) {
    nlohmann::ordered_json ej;
    ej["degree"] = e.degree;
    ej["truncated"] = e.truncated;
    nlohmann::ordered_json einvs = nlohmann::ordered_json::array();
    for (const auto& f : e.forms) einvs.push_back(form_json(f, program.vars));
    ej["invariants"] = std::move(einvs);
    elevs.push_back(std::move(ej));
  }
  j["elevations"] = std::move(elevs);

  j["truncated"] = truncated;
  j["oracle"] = oracle_verdict;

  if (with_timings) {
    nlohmann::ordered_json t;
    for (const auto& [phase, ms] : timings_ms) t[phase] = ms;
    j["timings"] = std::move(t);
  } else {
    j["timings"] = nullptr;
  }
  return j.dump(2) + "\n";
}

std::string Report::to_annotated() const {
  std::istringstream in(pretty_print(program));
  std::ostringstream out;
  std::string line;
  bool inserted = false;
  while (std::getline(in, line)) {
    std::size_t indent_len = line.find_first_not_of(' ');
    if (indent_len == std::string::npos) indent_len = line.size();
    if (!inserted && line.compare(indent_len, 5, "while") == 0) {
      std::string indent = line.substr(0, indent_len);
      auto emit = [&](const InvariantForm& f) {
        out << indent << "# " << form_status(f) << " " << f.rendered;
        if (f.evident) out << "  (evident)";
        out << "\n";
      };
      for (const auto& f : forms) emit(f);
      for (const auto& e : elevations)
        for (const auto& f : e.forms) emit(f);
      inserted = true;
    }
    out << line << "\n";
  }
  return out.str();
}

std::vector<BenchRow> bench(const std::string& dir, unsigned repetitions, AnalyzeConfig cfg) {
  namespace fs = std::filesystem;
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".loop") files.push_back(e.path());
  std::sort(files.begin(), files.end());

  std::vector<BenchRow> rows;
  for (const auto& file : files) {
    BenchRow row;
    row.name = file.stem().string();
    std::ifstream in(file);
    std::stringstream ss;
    ss << in.rdbuf();
    std::string source = ss.str();

    try {
      Program p = parse(source);
      row.vars = p.vars.size();
      AnalyzeConfig run_cfg = cfg;
      if (auto d = degree_directive(source)) run_cfg.degree = *d;
      row.degree = run_cfg.degree;

      AnalyzeConfig timed = run_cfg;
      timed.oracle_iters = 0;  // timing covers the analysis, not the verification
      std::vector<double> times;
      Report report;
      for (unsigned rep = 0; rep < std::max(1u, repetitions); ++rep) {
        auto t0 = Clock::now();
        report = analyze(p, timed);
        times.push_back(ms_between(t0, Clock::now()));
      }
      std::sort(times.begin(), times.end());
      row.median_ms = times.size() % 2 ? times[times.size() / 2]
                                       : (times[times.size() / 2 - 1] + times[times.size() / 2]) / 2;
      row.invariants = report.forms.size();
      for (const auto& e : report.elevations) row.invariants += e.forms.size();
      row.verdict = run_cfg.oracle_iters > 0 ? run_oracle(p, report, run_cfg) : "skipped";
    } catch (const TimeoutError&) {
      row.oot = true;
      row.verdict = "O.O.T.";
    } catch (const std::exception& ex) {
      row.failed = true;
      row.verdict = std::string("error: ") + ex.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string bench_table(const std::vector<BenchRow>& rows) {
  std::ostringstream out;
  out << std::left << std::setw(14) << "Name" << std::right << std::setw(5) << "Var"
      << std::setw(8) << "Degree" << std::setw(12) << "Time (ms)" << std::setw(12) << "Invariants"
      << "  Oracle\n";
  for (const auto& r : rows) {
    out << std::left << std::setw(14) << r.name << std::right;
    if (r.failed) {
      out << std::setw(5) << "-" << std::setw(8) << "-" << std::setw(12) << "-" << std::setw(12)
          << "-" << "  " << r.verdict << "\n";
      continue;
    }
    out << std::setw(5) << r.vars << std::setw(8) << r.degree;
    if (r.oot)
      out << std::setw(12) << "O.O.T." << std::setw(12) << "-" << "  -\n";
    else
      out << std::setw(12) << std::fixed << std::setprecision(2) << r.median_ms << std::setw(12)
          << r.invariants << "  " << r.verdict << "\n";
  }
  return out.str();
}

}  // namespace polyinv
