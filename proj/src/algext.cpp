#include "polyinv/algext.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <vector>

namespace polyinv {

namespace {

std::vector<Integer> signed_divisors(const Integer& n) {
  std::vector<Integer> out;
  Integer a = abs(n);
  for (Integer d = 1; d * d <= a; ++d) {
    if (a % d != 0) continue;
    out.push_back(d);
    out.push_back(-d);
    Integer q = a / d;
    if (q != d) {
      out.push_back(q);
      out.push_back(-q);
    }
  }
  return out;
}

UniPoly lagrange_basis(const std::vector<Rational>& xs, std::size_t i) {
  UniPoly num({Rational(1)});
  Rational den = 1;
  for (std::size_t j = 0; j < xs.size(); ++j) {
    if (j == i) continue;
    num = num * UniPoly::x_minus(xs[j]);
    den *= xs[i] - xs[j];
  }
  return num.scaled(Rational(1) / den);
}

// One nontrivial factor of f found by interpolation through divisors of f's
// values at small integers, or an empty polynomial if none exists within the
// candidate budget. f has integer coefficients, degree >= 2, no rational
// roots, and is squarefree.
UniPoly interpolation_split(const UniPoly& f) {
  const std::size_t budget = 200000;
  int deg = f.degree();
  for (int k = 2; k <= deg / 2; ++k) {
    // k+1 sample points 0, 1, -1, 2, -2, ...
    std::vector<Rational> xs;
    std::vector<std::vector<Integer>> choices;
    std::size_t total = 1;
    for (int t = 0; t <= k; ++t) {
      long x = (t + 1) / 2 * (t % 2 ? 1 : -1);
      xs.push_back(Rational(x));
      Rational v = f.eval(Rational(x));
      choices.push_back(signed_divisors(v.get_num()));
      total *= choices.back().size();
      if (total > budget) return UniPoly();
    }

    std::vector<UniPoly> lag;
    for (std::size_t i = 0; i < xs.size(); ++i) lag.push_back(lagrange_basis(xs, i));

    std::vector<std::size_t> pick(xs.size(), 0);
    while (true) {
      UniPoly cand;
      for (std::size_t i = 0; i < xs.size(); ++i)
        cand = cand + lag[i].scaled(Rational(choices[i][pick[i]]));
      if (cand.degree() == k) {
        auto [q, r] = f.divmod(cand);
        if (r.is_zero()) return cand;
        (void)q;
      }
      std::size_t i = xs.size();
      bool done = true;
      while (i-- > 0) {
        if (++pick[i] < choices[i].size()) {
          done = false;
          break;
        }
        pick[i] = 0;
      }
      if (done) break;
    }
  }
  return UniPoly();
}

void factor_squarefree(const UniPoly& f, std::vector<UniPoly>& out) {
  if (f.degree() < 1) return;
  // No rational roots, so degree 2 and 3 are already irreducible.
  if (f.degree() <= 3) {
    out.push_back(f.primitive_integer());
    return;
  }
  UniPoly g = interpolation_split(f.primitive_integer());
  if (g.is_zero()) {
    out.push_back(f.primitive_integer());
    return;
  }
  factor_squarefree(g, out);
  factor_squarefree(f.divmod(g).first, out);
}

}  // namespace

std::vector<std::pair<UniPoly, unsigned>> factor_residual(const UniPoly& residual) {
  std::vector<std::pair<UniPoly, unsigned>> out;
  if (residual.degree() < 1) return out;

  std::vector<UniPoly> parts;
  factor_squarefree(squarefree_part(residual), parts);
  std::sort(parts.begin(), parts.end(), [](const UniPoly& a, const UniPoly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return a.c < b.c;
  });

  for (const UniPoly& g : parts) {
    unsigned mult = 0;
    UniPoly rest = residual;
    while (true) {
      auto [q, r] = rest.divmod(g);
      if (!r.is_zero()) break;
      rest = std::move(q);
      ++mult;
    }
    out.emplace_back(g, mult);
  }
  return out;
}

ResidualSpectrum detect_irrational(const LinearLoop& L) {
  return residual_spectrum(rational_roots(char_poly(L.matrix)).residual);
}

ResidualSpectrum residual_spectrum(const UniPoly& residual) {
  ResidualSpectrum spec;
  spec.residual = residual;
  for (auto& [factor, mult] : factor_residual(residual)) {
    ResidualFactor rf;
    rf.root_product = Rational(factor.c.front()) / Rational(factor.c.back());
    if (factor.degree() % 2 != 0) rf.root_product = -rf.root_product;
    rf.multiplicity = mult;
    rf.factor = std::move(factor);
    spec.factors.push_back(std::move(rf));
  }
  return spec;
}

std::vector<unsigned> elevation_schedule(const ResidualSpectrum& spectrum) {
  if (spectrum.empty()) return {};
  std::vector<unsigned> out{2};
  unsigned smallest = 0;
  for (const auto& f : spectrum.factors) {
    unsigned d = static_cast<unsigned>(f.factor.degree());
    if (smallest == 0 || d < smallest) smallest = d;
  }
  if (smallest > 2) out.push_back(smallest);
  return out;
}

std::vector<PolyFamily> elevated_invariants(const LinearSystem& S, unsigned degree,
                                            std::size_t dim_cap, std::size_t max_combos,
                                            bool* truncated) {
  ElevatedSystem es = elevate_system(S, degree, dim_cap);

  std::vector<InvariantFamily> fams;
  fams.reserve(es.sys.matrices.size());
  for (std::size_t b = 0; b < es.sys.matrices.size(); ++b)
    fams.push_back(semi_invariants(es.sys.body(b)));
  InvariantFamily joint = intersect(fams, max_combos);
  if (truncated) *truncated = joint.truncated;

  // Rewrite each span direction from elevation variables back to the program
  // variables. Distinct elevation monomials can collapse onto one program
  // monomial, so the rewritten set is re-canonicalized (dropping directions
  // that cancel to zero).
  std::size_t nprog = S.names.size();
  std::vector<PolyFamily> out;
  for (const SpanEntry& e : joint.entries) {
    std::vector<Polynomial> raw;
    raw.reserve(e.span.size());
    for (const auto& row : e.span) {
      Polynomial p(nprog);
      for (std::size_t j = 0; j < joint.basis.size(); ++j) {
        if (row[j] == 0) continue;
        const Monomial& zm = joint.basis[j];
        Monomial m = Monomial::unit(nprog);
        for (std::size_t v = 0; v < zm.exps.size(); ++v)
          for (unsigned t = 0; t < zm.exps[v]; ++t) m = m * es.var_meaning[v];
        p.add_term(m, row[j]);
      }
      raw.push_back(std::move(p));
    }
    PolyFamily pf;
    pf.eigenvalues = e.eigenvalues;
    pf.polys = canonicalize_polys(raw, nprog);
    if (!pf.polys.empty()) out.push_back(std::move(pf));
  }
  return out;
}

}  // namespace polyinv
