#include "polyinv/invgen.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <utility>

namespace polyinv {

InvariantFamily semi_invariants(const LinearLoop& L, UniPoly* residual) {
  EigenDecomposition ed = eigenspaces(L.matrix.transpose());
  if (residual) *residual = ed.residual;
  InvariantFamily fam;
  fam.names = L.names;
  fam.basis = L.basis;
  for (const Eigenspace& es : ed.spaces) {
    if (es.basis.empty()) continue;
    SpanEntry e;
    e.eigenvalues = {es.lambda};
    e.span = rref_span(es.basis);
    fam.entries.push_back(std::move(e));
  }
  return fam;
}

std::vector<std::vector<Rational>> intersect_spans(const std::vector<std::vector<Rational>>& U,
                                                   const std::vector<std::vector<Rational>>& V) {
  if (U.empty() || V.empty()) return {};
  std::size_t n = U.front().size();

  // w lies in both spans iff w = U^T a = V^T c for some coefficient vectors,
  // i.e. (a, c) is in the kernel of the stacked matrix [U^T | -V^T].
  RatMatrix M(n, U.size() + V.size());
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t i = 0; i < U.size(); ++i) M.at(r, i) = U[i][r];
    for (std::size_t j = 0; j < V.size(); ++j) M.at(r, U.size() + j) = -V[j][r];
  }

  std::vector<std::vector<Rational>> vecs;
  for (const auto& ac : kernel(M)) {
    std::vector<Rational> w(n, Rational(0));
    for (std::size_t i = 0; i < U.size(); ++i) {
      if (ac[i] == 0) continue;
      for (std::size_t r = 0; r < n; ++r)
        if (U[i][r] != 0) w[r] += ac[i] * U[i][r];
    }
    if (std::any_of(w.begin(), w.end(), [](const Rational& x) { return x != 0; }))
      vecs.push_back(std::move(w));
  }
  return rref_span(std::move(vecs));
}

InvariantFamily intersect(const std::vector<InvariantFamily>& families, std::size_t max_combos) {
  if (families.empty()) throw std::invalid_argument("intersect: no families");
  for (const auto& f : families)
    if (f.names != families.front().names || !(f.basis == families.front().basis))
      throw BasisMismatchError("families are expressed over different bases");

  InvariantFamily out;
  out.names = families.front().names;
  out.basis = families.front().basis;
  for (const auto& f : families) out.truncated = out.truncated || f.truncated;
  if (families.size() == 1) {
    out.entries = families.front().entries;
    return out;
  }

  std::vector<std::size_t> pick(families.size(), 0);
  std::size_t explored = 0;
  bool exhausted = std::any_of(families.begin(), families.end(),
                               [](const InvariantFamily& f) { return f.entries.empty(); });
  while (!exhausted) {
    if (explored == max_combos) {
      out.truncated = true;
      break;
    }
    ++explored;

    SpanEntry entry;
    entry.span = families.front().entries[pick.front()].span;
    entry.eigenvalues = families.front().entries[pick.front()].eigenvalues;
    for (std::size_t f = 1; f < families.size() && !entry.span.empty(); ++f) {
      const SpanEntry& next = families[f].entries[pick[f]];
      entry.span = intersect_spans(entry.span, next.span);
      entry.eigenvalues.insert(entry.eigenvalues.end(), next.eigenvalues.begin(),
                               next.eigenvalues.end());
    }
    if (!entry.span.empty()) out.entries.push_back(std::move(entry));

    // next combination (rightmost family advances fastest)
    std::size_t f = families.size();
    while (f-- > 0) {
      if (++pick[f] < families[f].entries.size()) break;
      pick[f] = 0;
      if (f == 0) exhausted = true;
    }
  }

  std::sort(out.entries.begin(), out.entries.end(),
            [](const SpanEntry& a, const SpanEntry& b) { return a.eigenvalues < b.eigenvalues; });
  return out;
}

namespace {

// Display-stable column order for canonical reduction: the constant monomial
// goes last so that a constant direction in the span reduces every other row
// to a zero constant term.
std::vector<Monomial> support_columns(const std::vector<Polynomial>& polys, std::size_t nvars) {
  std::set<Monomial> support;
  for (const auto& p : polys)
    for (const auto& [m, c] : p.terms) {
      (void)c;
      support.insert(m);
    }
  std::vector<Monomial> cols(support.begin(), support.end());
  std::sort(cols.begin(), cols.end(), [](const Monomial& a, const Monomial& b) {
    if (a.is_unit() != b.is_unit()) return b.is_unit();
    return a < b;
  });
  (void)nvars;
  return cols;
}

Polynomial row_to_poly(const std::vector<Rational>& row, const std::vector<Monomial>& cols,
                       std::size_t nvars) {
  Polynomial p(nvars);
  for (std::size_t j = 0; j < cols.size(); ++j)
    if (row[j] != 0) p.add_term(cols[j], row[j]);
  return p;
}

}  // namespace

Polynomial primitive_polynomial(const Polynomial& p) {
  if (p.is_zero()) return p;
  std::vector<Rational> coeffs;
  coeffs.reserve(p.terms.size());
  for (const auto& [m, c] : p.terms) {
    (void)m;
    coeffs.push_back(c);
  }
  std::vector<Rational> prim = normalize_primitive(std::move(coeffs));
  Polynomial out(p.nvars);
  std::size_t i = 0;
  for (const auto& [m, c] : p.terms) {
    (void)c;
    out.add_term(m, prim[i++]);
  }
  // Sign by the first displayed term: the constant renders last, so skip it
  // when anything else is present.
  auto it = out.terms.begin();
  if (it->first.is_unit() && out.terms.size() > 1) ++it;
  if (it->second < 0) return -out;
  return out;
}

std::vector<Polynomial> canonicalize_polys(const std::vector<Polynomial>& polys,
                                           std::size_t nvars) {
  std::vector<Monomial> cols = support_columns(polys, nvars);
  if (cols.empty()) return {};
  std::vector<std::vector<Rational>> rows;
  rows.reserve(polys.size());
  for (const auto& p : polys) {
    std::vector<Rational> row(cols.size(), Rational(0));
    for (std::size_t j = 0; j < cols.size(); ++j)
      if (const Rational* c = p.coeff(cols[j])) row[j] = *c;
    rows.push_back(std::move(row));
  }
  std::vector<Polynomial> out;
  for (const auto& row : rref_span(std::move(rows)))
    out.push_back(row_to_poly(normalize_primitive(row), cols, nvars));
  return out;
}

std::vector<PolyFamily> to_poly_families(const InvariantFamily& fam) {
  std::size_t nvars = fam.names.size();
  std::vector<PolyFamily> out;
  for (const SpanEntry& e : fam.entries) {
    PolyFamily pf;
    pf.eigenvalues = e.eigenvalues;
    std::vector<Polynomial> raw;
    raw.reserve(e.span.size());
    for (const auto& row : e.span) {
      Polynomial p(nvars);
      for (std::size_t j = 0; j < fam.basis.size(); ++j)
        if (row[j] != 0) p.add_term(fam.basis[j], row[j]);
      raw.push_back(std::move(p));
    }
    pf.polys = canonicalize_polys(raw, nvars);
    if (!pf.polys.empty()) out.push_back(std::move(pf));
  }
  return out;
}

namespace {

bool all_ones(const std::vector<Rational>& eigs) {
  return std::all_of(eigs.begin(), eigs.end(), [](const Rational& x) { return x == 1; });
}

// Splits off the constant direction when the entry contains one.
void split_constant(const PolyFamily& f, bool& has_const, std::vector<Polynomial>& rest) {
  has_const = false;
  for (const auto& p : f.polys) {
    if (p.is_constant() && !p.is_zero())
      has_const = true;
    else
      rest.push_back(p);
  }
}

std::string homogeneous_render(const std::vector<Polynomial>& parts,
                               const std::vector<std::string>& params,
                               const std::vector<std::string>& names) {
  std::string s;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) s += " + ";
    s += params[i] + "*(" + parts[i].str(names) + ")";
  }
  return s + " = 0";
}

}  // namespace

std::vector<InvariantForm> reduce_parameters(const std::vector<PolyFamily>& fams,
                                             const std::vector<std::string>& names) {
  std::vector<InvariantForm> out;
  for (const PolyFamily& f : fams) {
    bool has_const = false;
    std::vector<Polynomial> rest;
    split_constant(f, has_const, rest);
    if (all_ones(f.eigenvalues) && has_const) {
      for (const auto& p : rest) {
        InvariantForm form;
        form.eigenvalues = f.eigenvalues;
        form.parts = {p};
        form.parameters = {"k"};
        form.k_form = true;
        form.rendered = p.str(names) + " = k";
        out.push_back(std::move(form));
      }
    } else if (!f.polys.empty()) {
      InvariantForm form;
      form.eigenvalues = f.eigenvalues;
      form.parts = f.polys;
      for (std::size_t i = 0; i < f.polys.size(); ++i)
        form.parameters.push_back(f.polys.size() == 1 ? "k" : "k" + std::to_string(i + 1));
      form.rendered = homogeneous_render(form.parts, form.parameters, names);
      out.push_back(std::move(form));
    }
  }
  return out;
}

std::vector<InvariantForm> instantiate(const std::vector<PolyFamily>& fams, const State& init,
                                       const std::vector<std::string>& names) {
  std::vector<InvariantForm> out;
  for (const PolyFamily& f : fams) {
    bool has_const = false;
    std::vector<Polynomial> rest;
    split_constant(f, has_const, rest);
    if (all_ones(f.eigenvalues) && has_const) {
      for (const auto& p : rest) {
        InvariantForm form;
        form.eigenvalues = f.eigenvalues;
        form.parts = {p};
        form.k_form = true;
        form.instantiated = true;
        form.value = p.eval(init);
        form.rendered = p.str(names) + " = " + rational_to_string(form.value);
        out.push_back(std::move(form));
      }
      continue;
    }
    if (f.polys.empty()) continue;

    std::vector<Rational> at_init;
    at_init.reserve(f.polys.size());
    for (const auto& p : f.polys) at_init.push_back(p.eval(init));

    auto emit_zero = [&](Polynomial p) {
      InvariantForm form;
      form.eigenvalues = f.eigenvalues;
      form.instantiated = true;
      form.rendered = p.str(names) + " = 0";
      form.parts = {std::move(p)};
      out.push_back(std::move(form));
    };

    std::size_t j0 = f.polys.size();
    for (std::size_t i = 0; i < f.polys.size(); ++i) {
      if (at_init[i] == 0)
        emit_zero(f.polys[i]);
      else if (j0 == f.polys.size())
        j0 = i;
    }
    if (j0 < f.polys.size()) {
      // Directions that do not vanish on init still yield invariants in
      // pairs: the scaling constant cancels between them.
      for (std::size_t i = 0; i < f.polys.size(); ++i) {
        if (i == j0 || at_init[i] == 0) continue;
        emit_zero(primitive_polynomial(f.polys[i] * at_init[j0] - f.polys[j0] * at_init[i]));
      }
    }
  }
  return out;
}

void mark_evident(std::vector<InvariantForm>& forms, const std::vector<PolyMap>& bodies) {
  if (bodies.empty()) return;
  std::size_t n = bodies.front().nvars();
  std::vector<bool> modified(n, false);
  for (const PolyMap& b : bodies)
    for (std::size_t v = 0; v < n; ++v)
      if (!(b.images[v] == Polynomial::variable(n, v))) modified[v] = true;

  for (auto& form : forms) {
    bool evident = true;
    for (const Polynomial& p : form.parts)
      for (const auto& [m, c] : p.terms) {
        (void)c;
        for (std::size_t v = 0; v < n; ++v)
          if (m.exps[v] > 0 && modified[v]) evident = false;
      }
    form.evident = evident;
  }
}

}  // namespace polyinv
