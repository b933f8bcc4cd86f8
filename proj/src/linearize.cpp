#include "polyinv/linearize.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <utility>

namespace polyinv {

namespace {

void check_closure_bound(std::size_t nvars, unsigned d, std::size_t limit) {
  Integer bound;
  mpz_bin_uiui(bound.get_mpz_t(), static_cast<unsigned long>(nvars) + d, d);
  if (bound > static_cast<unsigned long>(limit))
    throw SizeLimitError("monomial basis would have " + bound.get_str() +
                         " entries, above the limit of " + std::to_string(limit));
}

}  // namespace

LinearSystem linearize_bodies(const std::vector<PolyMap>& bodies, unsigned degree,
                              std::vector<std::string> names, std::size_t basis_limit) {
  if (bodies.empty()) throw std::invalid_argument("linearize_bodies: no bodies");
  std::size_t n = bodies.front().nvars();
  for (const auto& b : bodies)
    if (b.nvars() != n) throw BasisMismatchError("loop bodies disagree on variable count");
  if (names.size() != n) throw BasisMismatchError("variable name count mismatch");
  if (degree < 1) throw DegreeTooSmallError("degree must be at least 1");
  check_closure_bound(n, degree, basis_limit);

  std::vector<Monomial> all = monomials_up_to(n, degree);

  // Composed image of every candidate monomial under every body, computed once.
  std::vector<std::vector<Polynomial>> images(bodies.size());
  for (std::size_t b = 0; b < bodies.size(); ++b) {
    images[b].reserve(all.size());
    for (const Monomial& m : all) images[b].push_back(compose(m, bodies[b]));
  }

  // Greatest fixpoint by removal: a monomial stays only while its image under
  // every body has degree <= d and mentions only retained monomials.
  std::set<Monomial> retained(all.begin(), all.end());
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < all.size(); ++i) {
      const Monomial& m = all[i];
      if (m.is_unit() || retained.find(m) == retained.end()) continue;
      bool keep = true;
      for (std::size_t b = 0; b < bodies.size() && keep; ++b) {
        const Polynomial& im = images[b][i];
        if (im.degree() > degree) {
          keep = false;
          break;
        }
        for (const auto& [mon, c] : im.terms) {
          (void)c;
          if (retained.find(mon) == retained.end()) {
            keep = false;
            break;
          }
        }
      }
      if (!keep) {
        if (m.degree() <= 1)
          throw DegreeTooSmallError("degree " + std::to_string(degree) +
                                    " is too small: the image of " + m.str(names) +
                                    " cannot be tracked within the basis");
        retained.erase(m);
        changed = true;
      }
    }
  }

  // Basis order: variables in declaration order, then the retained higher
  // monomials by (degree, exponent tuple), the constant monomial last.
  std::vector<Monomial> basis;
  basis.reserve(retained.size());
  for (std::size_t i = 0; i < n; ++i) basis.push_back(Monomial::var(n, i));
  std::vector<Monomial> rest;
  for (const Monomial& m : retained)
    if (m.degree() >= 2) rest.push_back(m);
  std::sort(rest.begin(), rest.end(), [](const Monomial& a, const Monomial& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return a.exps < b.exps;
  });
  basis.insert(basis.end(), rest.begin(), rest.end());
  basis.push_back(Monomial::unit(n));

  std::map<Monomial, std::size_t> col;
  for (std::size_t i = 0; i < basis.size(); ++i) col[basis[i]] = i;
  std::map<Monomial, std::size_t> image_row;
  for (std::size_t i = 0; i < all.size(); ++i) image_row[all[i]] = i;

  LinearSystem sys;
  sys.names = std::move(names);
  sys.basis = std::move(basis);
  for (std::size_t b = 0; b < bodies.size(); ++b) {
    RatMatrix A(sys.basis.size(), sys.basis.size());
    for (std::size_t i = 0; i < sys.basis.size(); ++i) {
      const Polynomial& im = images[b][image_row.at(sys.basis[i])];
      for (const auto& [mon, c] : im.terms) A.at(i, col.at(mon)) = c;
    }
    sys.matrices.push_back(std::move(A));
  }
  return sys;
}

LinearLoop linearize(const PolyMap& g, unsigned degree, std::vector<std::string> names,
                     std::size_t basis_limit) {
  LinearSystem sys = linearize_bodies({g}, degree, std::move(names), basis_limit);
  return {std::move(sys.names), std::move(sys.basis), std::move(sys.matrices.front())};
}

std::vector<Monomial> elevation_basis(std::size_t nvars, unsigned degree) {
  std::vector<Monomial> out;
  for (const Monomial& m : monomials_up_to(nvars, degree))
    if (!m.is_unit()) out.push_back(m);
  std::sort(out.begin(), out.end(), [](const Monomial& a, const Monomial& b) {
    if (a.degree() != b.degree()) return a.degree() > b.degree();
    return b.exps < a.exps;
  });
  return out;
}

RatMatrix elevate(const RatMatrix& A, unsigned degree) {
  if (A.nr != A.nc) throw BasisMismatchError("elevation needs a square matrix");
  std::size_t n = A.nr;
  PolyMap g;
  g.images.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Polynomial p(n);
    for (std::size_t j = 0; j < n; ++j)
      if (A.at(i, j) != 0) p.add_term(Monomial::var(n, j), A.at(i, j));
    g.images.push_back(std::move(p));
  }

  std::vector<Monomial> basis = elevation_basis(n, degree);
  std::map<Monomial, std::size_t> col;
  for (std::size_t i = 0; i < basis.size(); ++i) col[basis[i]] = i;

  // Images of homogeneous monomials under a linear map stay homogeneous, so
  // every composed monomial lies in the elevation basis.
  RatMatrix psi(basis.size(), basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    Polynomial im = compose(basis[i], g);
    for (const auto& [mon, c] : im.terms) psi.at(i, col.at(mon)) = c;
  }
  return psi;
}

ElevatedSystem elevate_system(const LinearSystem& S, unsigned degree, std::size_t basis_limit) {
  if (S.basis.empty() || !S.basis.back().is_unit())
    throw BasisMismatchError("elevation expects a basis ending in the constant monomial");
  std::size_t nz = S.basis.size() - 1;

  ElevatedSystem out;
  std::vector<std::string> znames;
  znames.reserve(nz);
  for (std::size_t i = 0; i < nz; ++i) {
    out.var_meaning.push_back(S.basis[i]);
    znames.push_back(S.basis[i].str(S.names));
  }

  // Rows of each matrix, minus the constant row, read as an affine map on the
  // non-constant basis entries.
  std::vector<PolyMap> affine;
  affine.reserve(S.matrices.size());
  for (const RatMatrix& A : S.matrices) {
    PolyMap g;
    g.images.reserve(nz);
    for (std::size_t i = 0; i < nz; ++i) {
      Polynomial p(nz);
      for (std::size_t j = 0; j < nz; ++j)
        if (A.at(i, j) != 0) p.add_term(Monomial::var(nz, j), A.at(i, j));
      if (A.at(i, nz) != 0) p.add_term(Monomial::unit(nz), A.at(i, nz));
      g.images.push_back(std::move(p));
    }
    affine.push_back(std::move(g));
  }

  out.sys = linearize_bodies(affine, degree, std::move(znames), basis_limit);
  return out;
}

}  // namespace polyinv
