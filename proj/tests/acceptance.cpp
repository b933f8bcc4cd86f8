// End-to-end acceptance checks: one line per criterion, exit 0 only when all
// pass. Each check drives the public API the way the CLI does and verifies
// the output against independently computed expectations.
#include "polyinv/algext.hpp"
#include "polyinv/exactla.hpp"
#include "polyinv/frontend.hpp"
#include "polyinv/invgen.hpp"
#include "polyinv/linearize.hpp"
#include "polyinv/pipeline.hpp"
#include "polyinv/solvability.hpp"

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace polyinv;

namespace {

int failures = 0;

void report(int n, const std::string& what, bool ok, const std::string& detail = "") {
  if (ok) {
    std::cout << "PASS criterion " << n << ": " << what << "\n";
  } else {
    ++failures;
    std::cout << "FAIL criterion " << n << ": " << what;
    if (!detail.empty()) std::cout << "  [" << detail << "]";
    std::cout << "\n";
  }
}

Rational rat(long n, long d = 1) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::string s((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return s;
}

std::vector<std::filesystem::path> corpus_files() {
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(POLYINV_CORPUS_DIR))
    if (e.path().extension() == ".loop") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  return files;
}

std::vector<Rational> left_apply(const std::vector<Rational>& phi, const RatMatrix& A) {
  std::vector<Rational> out(A.nc, Rational(0));
  for (std::size_t j = 0; j < A.nc; ++j)
    for (std::size_t i = 0; i < A.nr; ++i)
      if (phi[i] != 0 && A.at(i, j) != 0) out[j] += phi[i] * A.at(i, j);
  return out;
}

bool is_left_eigenvector(const std::vector<Rational>& phi, const RatMatrix& A,
                         const Rational& lambda) {
  std::vector<Rational> lhs = left_apply(phi, A);
  for (std::size_t j = 0; j < phi.size(); ++j)
    if (lhs[j] != lambda * phi[j]) return false;
  return true;
}

// Plain elimination, written here so criterion 6 does not trust the library's
// own linear algebra. Returns the rank; rows are modified in place.
std::size_t naive_rank(std::vector<std::vector<Rational>> rows) {
  if (rows.empty()) return 0;
  std::size_t nc = rows[0].size();
  std::size_t rank = 0;
  for (std::size_t col = 0; col < nc && rank < rows.size(); ++col) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][col] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][col] == 0) continue;
      Rational f = rows[r][col] / rows[rank][col];
      for (std::size_t c = col; c < nc; ++c) rows[r][c] -= f * rows[rank][c];
    }
    ++rank;
  }
  return rank;
}

bool naive_member(const std::vector<std::vector<Rational>>& span,
                  const std::vector<Rational>& v) {
  auto with = span;
  with.push_back(v);
  return naive_rank(span) == naive_rank(with);
}

// Null space of M (right kernel), by the same naive elimination.
std::vector<std::vector<Rational>> naive_kernel(std::vector<std::vector<Rational>> m,
                                                std::size_t nc) {
  std::vector<std::size_t> pivot_col;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < nc && rank < m.size(); ++col) {
    std::size_t pivot = rank;
    while (pivot < m.size() && m[pivot][col] == 0) ++pivot;
    if (pivot == m.size()) continue;
    std::swap(m[rank], m[pivot]);
    Rational lead = m[rank][col];
    for (std::size_t c = 0; c < nc; ++c) m[rank][c] /= lead;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == rank || m[r][col] == 0) continue;
      Rational f = m[r][col];
      for (std::size_t c = 0; c < nc; ++c) m[r][c] -= f * m[rank][c];
    }
    pivot_col.push_back(col);
    ++rank;
  }
  std::vector<bool> is_pivot(nc, false);
  for (std::size_t c : pivot_col) is_pivot[c] = true;
  std::vector<std::vector<Rational>> basis;
  for (std::size_t free = 0; free < nc; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> v(nc, Rational(0));
    v[free] = 1;
    for (std::size_t r = 0; r < rank; ++r) v[pivot_col[r]] = -m[r][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

// Characteristic polynomial by cofactor expansion over univariate-polynomial
// entries: independent of the library's block and trace based computation.
UniPoly laplace_det(const std::vector<std::vector<UniPoly>>& m) {
  std::size_t n = m.size();
  if (n == 1) return m[0][0];
  UniPoly det(std::vector<Rational>{Rational(0)});
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<std::vector<UniPoly>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<UniPoly> row;
      for (std::size_t c = 0; c < n; ++c)
        if (c != j) row.push_back(m[r][c]);
      minor.push_back(std::move(row));
    }
    UniPoly term = m[0][j] * laplace_det(minor);
    if (j % 2 == 1) term = term * UniPoly(std::vector<Rational>{Rational(-1)});
    det = det + term;
  }
  return det;
}

UniPoly laplace_char_poly(const RatMatrix& a) {
  std::vector<std::vector<UniPoly>> m(a.nr, std::vector<UniPoly>(a.nc));
  for (std::size_t i = 0; i < a.nr; ++i)
    for (std::size_t j = 0; j < a.nc; ++j) {
      std::vector<Rational> c{-a.at(i, j)};
      if (i == j) c.push_back(Rational(1));
      m[i][j] = UniPoly(std::move(c));
    }
  return laplace_det(m);
}

// All rational roots of a monic integer polynomial: integers dividing the
// trailing coefficient (rational root theorem). Zero roots are stripped first.
std::vector<Rational> naive_rational_roots(UniPoly p) {
  std::vector<Rational> roots;
  while (p.degree() > 0 && p.c[0] == 0) {
    if (roots.empty() || roots.back() != 0) roots.push_back(Rational(0));
    std::vector<Rational> shifted(p.c.begin() + 1, p.c.end());
    p = UniPoly(std::move(shifted));
  }
  if (p.degree() < 1) return roots;
  Integer a0 = p.c[0].get_num();  // monic integer polynomial: denominators are 1
  if (a0 < 0) a0 = -a0;
  std::vector<Integer> divisors;
  for (Integer d = 1; d * d <= a0; ++d) {
    if (a0 % d != 0) continue;
    divisors.push_back(d);
    divisors.push_back(a0 / d);
  }
  for (const Integer& d : divisors)
    for (int sign : {1, -1}) {
      Rational cand(sign * d);
      if (p.eval(cand) == 0 &&
          std::find(roots.begin(), roots.end(), cand) == roots.end())
        roots.push_back(cand);
    }
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace

static void criterion1() {
  const std::string what = "quadratic accumulator at degree 3: exact eigenspace and closed form";
  try {
    Program p = parse("while (*) do (x, y) := (x + y*y, y + 1) done");
    AnalyzeConfig cfg;
    cfg.degree = 3;
    auto t0 = std::chrono::steady_clock::now();
    Report r = analyze(p, cfg);
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

    std::vector<std::string> basis;
    for (const auto& m : r.linear.basis) basis.push_back(m.str(r.linear.names));
    bool basis_ok = basis == std::vector<std::string>{"x", "y", "y^2", "x*y", "y^3", "1"};

    bool span_ok = false;
    for (const auto& e : r.family.entries)
      if (e.eigenvalues == std::vector<Rational>{rat(1)}) {
        std::vector<Rational> line{rat(-6), rat(1), rat(-3), rat(0), rat(2), rat(0)};
        std::vector<Rational> e_one{rat(0), rat(0), rat(0), rat(0), rat(0), rat(1)};
        span_ok = e.span.size() == 2 && span_contains(e.span, line) &&
                  span_contains(e.span, e_one);
      }

    bool form_ok = false;
    for (const auto& f : r.forms)
      if (f.k_form && f.rendered == "6*x - y + 3*y^2 - 2*y^3 = k") form_ok = true;

    AnalyzeConfig with_init = cfg;
    with_init.init = State{rat(0), rat(0)};
    Report ri = analyze(p, with_init);
    bool init_ok = false;
    for (const auto& f : ri.forms)
      if (f.instantiated && f.value == 0 &&
          f.rendered == "6*x - y + 3*y^2 - 2*y^3 = 0")
        init_ok = true;

    std::ostringstream detail;
    if (!basis_ok) detail << "basis mismatch; ";
    if (!span_ok) detail << "eigenspace mismatch; ";
    if (!form_ok) detail << "closed form not rendered; ";
    if (!init_ok) detail << "instantiation at (0,0) wrong; ";
    if (ms >= 1000.0) detail << "took " << ms << " ms; ";
    report(1, what, basis_ok && span_ok && form_ok && init_ok && ms < 1000.0, detail.str());
  } catch (const std::exception& e) {
    report(1, what, false, e.what());
  }
}

static void criterion2() {
  const std::string what = "division loop at degree 2: conserved remainder with evident forms flagged";
  try {
    std::string source = read_file(std::filesystem::path(POLYINV_CORPUS_DIR) / "eucli_div.loop");
    Program p = parse(source);
    AnalyzeConfig cfg;
    cfg.degree = 2;
    auto t0 = std::chrono::steady_clock::now();
    Report r = analyze(p, cfg);
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

    bool main_ok = false, y_ok = false, y2_ok = false;
    for (const auto& f : r.forms) {
      if (f.rendered == "x + y*q = k" && !f.evident) main_ok = true;
      if (f.rendered == "y = k" && f.evident) y_ok = true;
      if (f.rendered == "y^2 = k" && f.evident) y2_ok = true;
    }
    bool annotated_ok = r.to_annotated().find("invariant x + y*q = k") != std::string::npos;

    std::ostringstream detail;
    if (!main_ok) detail << "x + y*q = k missing; ";
    if (!y_ok) detail << "y = k not evident; ";
    if (!y2_ok) detail << "y^2 = k not evident; ";
    if (!annotated_ok) detail << "annotation missing; ";
    if (ms >= 1000.0) detail << "took " << ms << " ms; ";
    report(2, what, main_ok && y_ok && y2_ok && annotated_ok && ms < 1000.0, detail.str());
  } catch (const std::exception& e) {
    report(2, what, false, e.what());
  }
}

static void criterion3() {
  const std::string what = "two-body product loop at degree 2: intersection keeps x*y + z = k";
  try {
    Program p = parse(
        "while (*) do (x, y, z) := (2*x, (y - 1)/2, x + z)"
        " OR (x, y, z) := (2*x, y/2, z) done");
    AnalyzeConfig cfg;
    cfg.degree = 2;
    auto t0 = std::chrono::steady_clock::now();
    Report r = analyze(p, cfg);
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

    // Expected lambda = (1, 1) span: exactly {v(x*y + z), e_one}.
    std::vector<Rational> prod(r.linear.basis.size(), Rational(0));
    std::vector<Rational> e_one(r.linear.basis.size(), Rational(0));
    for (std::size_t i = 0; i < r.linear.basis.size(); ++i) {
      std::string s = r.linear.basis[i].str(r.linear.names);
      if (s == "x*y" || s == "z") prod[i] = 1;
      if (s == "1") e_one[i] = 1;
    }
    bool span_ok = false;
    for (const auto& e : r.family.entries)
      if (e.eigenvalues == std::vector<Rational>{rat(1), rat(1)})
        span_ok = e.span.size() == 2 && span_contains(e.span, prod) &&
                  span_contains(e.span, e_one);

    bool form_ok = false;
    for (const auto& f : r.forms)
      if (f.k_form && f.rendered == "z + x*y = k") form_ok = true;

    std::ostringstream detail;
    if (!span_ok) detail << "lambda (1,1) span is not {x*y + z, 1}; ";
    if (!form_ok) detail << "conserved product form missing; ";
    if (ms >= 1000.0) detail << "took " << ms << " ms; ";
    report(3, what, span_ok && form_ok && ms < 1000.0, detail.str());
  } catch (const std::exception& e) {
    report(3, what, false, e.what());
  }
}

static void criterion4() {
  const std::string what = "swap-and-double loop: quadratic residual, recovered by degree-2 elevation";
  try {
    Program p = parse("while (*) do (x, y) := (y, 2*x) done");
    AnalyzeConfig cfg;
    cfg.degree = 1;
    cfg.elevate_on_irrational = true;
    Report r = analyze(p, cfg);

    bool residual_ok = r.residuals.size() == 1 &&
                       r.residuals[0].spectrum.residual ==
                           UniPoly(std::vector<Rational>{rat(-2), rat(0), rat(1)});
    bool no_base_forms = r.forms.empty();

    bool plus_ok = false, minus_ok = false;
    std::size_t n = 2;
    Polynomial x = Polynomial::variable(n, 0), y = Polynomial::variable(n, 1);
    for (const auto& el : r.elevations) {
      if (el.degree != 2) continue;
      for (const auto& fam : el.families) {
        if (fam.eigenvalues == std::vector<Rational>{rat(2)})
          plus_ok = canonicalize_polys(fam.polys, n) ==
                    canonicalize_polys({x * y, x * x * rat(2) + y * y}, n);
        if (fam.eigenvalues == std::vector<Rational>{rat(-2)})
          minus_ok = canonicalize_polys(fam.polys, n) ==
                     canonicalize_polys({y * y - x * x * rat(2)}, n);
      }
    }

    std::ostringstream detail;
    if (!residual_ok) detail << "residual is not lambda^2 - 2; ";
    if (!no_base_forms) detail << "unexpected base invariants; ";
    if (!plus_ok) detail << "lambda 2 span is not {x*y, 2*x^2 + y^2}; ";
    if (!minus_ok) detail << "lambda -2 span is not {y^2 - 2*x^2}; ";
    report(4, what, residual_ok && no_base_forms && plus_ok && minus_ok, detail.str());
  } catch (const std::exception& e) {
    report(4, what, false, e.what());
  }
}

static void criterion5() {
  const std::string what = "corpus soundness: exact eigen identities and trace oracle on every program";
  try {
    std::ostringstream detail;
    bool all_ok = true;
    for (const auto& file : corpus_files()) {
      std::string source = read_file(file);
      Program p = parse(source);
      AnalyzeConfig cfg;
      if (auto d = degree_directive(source)) cfg.degree = *d;
      cfg.oracle_iters = 100;
      cfg.oracle_runs = 3;
      Report r = analyze(p, cfg);

      bool eigen_ok = true;
      for (const auto& e : r.family.entries)
        for (const auto& phi : e.span)
          for (std::size_t b = 0; b < r.linear.matrices.size(); ++b)
            if (!is_left_eigenvector(phi, r.linear.matrices[b], e.eigenvalues[b]))
              eigen_ok = false;

      if (!eigen_ok) {
        all_ok = false;
        detail << file.stem().string() << ": eigen identity broken; ";
      }
      if (r.oracle_verdict != "pass") {
        all_ok = false;
        detail << file.stem().string() << ": oracle " << r.oracle_verdict << "; ";
      }
    }
    report(5, what, all_ok, detail.str());
  } catch (const std::exception& e) {
    report(5, what, false, e.what());
  }
}

static void criterion6() {
  const std::string what = "affine maps match a brute-force eigen decomposition on 50 random instances";
  try {
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<int> small(-3, 3);
    std::uniform_int_distribution<int> shear(-2, 2);
    std::ostringstream detail;
    bool all_ok = true;

    for (int round = 0; round < 50 && all_ok; ++round) {
      std::size_t n = 3;
      // Half the rounds plant an integer spectrum via unimodular conjugation,
      // half draw a raw integer matrix.
      std::vector<std::vector<Rational>> T(n, std::vector<Rational>(n, Rational(0)));
      if (round % 2 == 0) {
        for (std::size_t i = 0; i < n; ++i) T[i][i] = rat(small(rng));
        for (int s = 0; s < 2; ++s) {
          std::size_t i = rng() % n, j = rng() % n;
          if (i == j) continue;
          Rational c = rat(shear(rng));
          // T <- E T E^{-1} with E = I + c e_ij.
          for (std::size_t k = 0; k < n; ++k) T[i][k] += c * T[j][k];
          for (std::size_t k = 0; k < n; ++k) T[k][j] -= c * T[k][i];
        }
      } else {
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j) T[i][j] = rat(small(rng));
      }

      PolyMap g;
      for (std::size_t i = 0; i < n; ++i) {
        Polynomial img(n);
        for (std::size_t j = 0; j < n; ++j)
          if (T[i][j] != 0) img = img + Polynomial::variable(n, j) * T[i][j];
        img = img + Polynomial::constant(n, rat(small(rng)));
        g.images.push_back(img);
      }

      LinearLoop L = linearize(g, 1, {"x", "y", "z"});
      InvariantFamily fam = semi_invariants(L);
      RatMatrix At = L.matrix.transpose();

      // Independent decomposition: cofactor characteristic polynomial,
      // divisor root scan, elimination kernel of (A^T - lambda I).
      UniPoly cp = laplace_char_poly(At);
      std::vector<Rational> roots = naive_rational_roots(cp);

      std::vector<Rational> emitted;
      for (const auto& e : fam.entries) emitted.push_back(e.eigenvalues[0]);
      if (emitted != roots) {
        all_ok = false;
        detail << "round " << round << ": eigenvalue sets differ; ";
        break;
      }

      for (const auto& e : fam.entries) {
        std::vector<std::vector<Rational>> shifted(At.nr,
                                                   std::vector<Rational>(At.nc, Rational(0)));
        for (std::size_t i = 0; i < At.nr; ++i) {
          for (std::size_t j = 0; j < At.nc; ++j) shifted[i][j] = At.at(i, j);
          shifted[i][i] -= e.eigenvalues[0];
        }
        std::vector<std::vector<Rational>> expected = naive_kernel(shifted, At.nc);
        bool same = expected.size() == e.span.size();
        for (const auto& v : expected)
          if (!naive_member(e.span, v)) same = false;
        for (const auto& v : e.span)
          if (!naive_member(expected, v)) same = false;
        if (!same) {
          all_ok = false;
          detail << "round " << round << ": span mismatch at lambda "
                 << e.eigenvalues[0].get_str() << "; ";
          break;
        }
      }
    }
    report(6, what, all_ok, detail.str());
  } catch (const std::exception& e) {
    report(6, what, false, e.what());
  }
}

static void criterion7() {
  const std::string what = "elevation identities: monomial action, functoriality, basis bounds";
  try {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> small(-4, 4);
    std::uniform_int_distribution<int> den(1, 3);
    bool action_ok = true, functor_ok = true, size_ok = true;

    auto binom = [](std::size_t n, std::size_t k) {
      std::size_t r = 1;
      for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
      return r;
    };

    for (int round = 0; round < 100; ++round) {
      std::size_t n = 2 + round % 2;
      unsigned d = 1 + round % 3;
      RatMatrix a(n, n), b(n, n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          a.at(i, j) = rat(small(rng));
          b.at(i, j) = rat(small(rng));
        }
      std::vector<Rational> x;
      for (std::size_t i = 0; i < n; ++i) x.push_back(rat(small(rng), den(rng)));

      auto basis = elevation_basis(n, d);
      if (basis.size() != binom(n + d, d) - 1) size_ok = false;

      auto value = [&](const std::vector<Rational>& pt) {
        std::vector<Rational> v;
        for (const auto& m : basis)
          v.push_back(Polynomial::from_monomial(m, rat(1)).eval(pt));
        return v;
      };
      RatMatrix psi = elevate(a, d);
      if (psi.apply(value(x)) != value(a.apply(x))) action_ok = false;
      if (round < 30 && !(elevate(a * b, d) == elevate(a, d) * elevate(b, d)))
        functor_ok = false;
    }

    Program p = parse("while (*) do (x, y) := (x + y*y, y + 1) done");
    LinearLoop L = linearize(p.loop_bodies()[0], 3, p.vars);
    bool running_ok = L.basis.size() == 6 && 6 <= binom(2 + 3, 3);

    std::ostringstream detail;
    if (!action_ok) detail << "monomial action broken; ";
    if (!functor_ok) detail << "functoriality broken; ";
    if (!size_ok) detail << "elevation basis size wrong; ";
    if (!running_ok) detail << "running example basis not 6; ";
    report(7, what, action_ok && functor_ok && size_ok && running_ok, detail.str());
  } catch (const std::exception& e) {
    report(7, what, false, e.what());
  }
}

static void criterion8() {
  const std::string what = "performance: each corpus program < 1 s, full bench < 30 s, no timeouts";
  try {
    AnalyzeConfig cfg;
    cfg.oracle_iters = 100;
    cfg.oracle_runs = 3;
    auto t0 = std::chrono::steady_clock::now();
    std::vector<BenchRow> rows = bench(POLYINV_CORPUS_DIR, 1, cfg);
    double wall_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    std::ostringstream detail;
    bool all_ok = rows.size() == 20;
    if (!all_ok) detail << "expected 20 programs, saw " << rows.size() << "; ";
    for (const auto& row : rows) {
      if (row.oot || row.failed || row.verdict != "pass") {
        all_ok = false;
        detail << row.name << ": " << row.verdict << "; ";
      }
      if (row.median_ms >= 1000.0) {
        all_ok = false;
        detail << row.name << " took " << row.median_ms << " ms; ";
      }
    }
    if (wall_s >= 30.0) {
      all_ok = false;
      detail << "bench wall " << wall_s << " s; ";
    }
    report(8, what, all_ok, detail.str());
  } catch (const std::exception& e) {
    report(8, what, false, e.what());
  }
}

static void criterion9() {
  const std::string what = "solvability gate: squaring rejected with a witness, corpus accepted";
  try {
    Program bad = parse("while (*) do x := x*x done");
    bool rejected = false, witness_ok = false;
    try {
      check_solvable(bad.loop_bodies()[0], bad.vars);
    } catch (const NotSolvableError& e) {
      rejected = true;
      witness_ok = e.cycle.size() >= 2 && e.cycle.front() == e.cycle.back();
    }

    bool corpus_ok = true;
    std::ostringstream detail;
    for (const auto& file : corpus_files()) {
      Program p = parse(read_file(file));
      for (const auto& body : p.loop_bodies()) {
        try {
          check_solvable(body, p.vars);
        } catch (const NotSolvableError&) {
          corpus_ok = false;
          detail << file.stem().string() << " rejected; ";
        }
      }
    }
    if (!rejected) detail << "squaring map accepted; ";
    if (rejected && !witness_ok) detail << "witness cycle malformed; ";
    report(9, what, rejected && witness_ok && corpus_ok, detail.str());
  } catch (const std::exception& e) {
    report(9, what, false, e.what());
  }
}

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  if (failures == 0) {
    std::cout << "all criteria passed\n";
    return 0;
  }
  std::cout << failures << " criteria failed\n";
  return 1;
}
