#include "polyinv/exactla.hpp"

#include "polyinv/scc.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>

namespace polyinv {

RatMatrix RatMatrix::identity(std::size_t n) {
  RatMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

RatMatrix RatMatrix::transpose() const {
  RatMatrix t(nc, nr);
  for (std::size_t r = 0; r < nr; ++r)
    for (std::size_t c = 0; c < nc; ++c) t.at(c, r) = at(r, c);
  return t;
}

RatMatrix RatMatrix::operator*(const RatMatrix& o) const {
  if (nc != o.nr) throw BasisMismatchError("matrix product dimension mismatch");
  RatMatrix m(nr, o.nc);
  for (std::size_t r = 0; r < nr; ++r)
    for (std::size_t k = 0; k < nc; ++k) {
      const Rational& v = at(r, k);
      if (v == 0) continue;
      for (std::size_t c = 0; c < o.nc; ++c)
        if (o.at(k, c) != 0) m.at(r, c) += v * o.at(k, c);
    }
  return m;
}

std::vector<Rational> RatMatrix::apply(const std::vector<Rational>& v) const {
  if (v.size() != nc) throw BasisMismatchError("matrix-vector dimension mismatch");
  std::vector<Rational> out(nr, Rational(0));
  for (std::size_t r = 0; r < nr; ++r)
    for (std::size_t c = 0; c < nc; ++c)
      if (at(r, c) != 0) out[r] += at(r, c) * v[c];
  return out;
}

void UniPoly::trim() {
  while (!c.empty() && c.back() == 0) c.pop_back();
}

Rational UniPoly::eval(const Rational& x) const {
  Rational acc = 0;
  for (std::size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
  return acc;
}

UniPoly UniPoly::operator+(const UniPoly& o) const {
  std::vector<Rational> r(std::max(c.size(), o.c.size()), Rational(0));
  for (std::size_t i = 0; i < c.size(); ++i) r[i] += c[i];
  for (std::size_t i = 0; i < o.c.size(); ++i) r[i] += o.c[i];
  return UniPoly(std::move(r));
}

UniPoly UniPoly::operator-(const UniPoly& o) const { return *this + o.scaled(-1); }

UniPoly UniPoly::operator*(const UniPoly& o) const {
  if (is_zero() || o.is_zero()) return UniPoly();
  std::vector<Rational> r(c.size() + o.c.size() - 1, Rational(0));
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = 0; j < o.c.size(); ++j) r[i + j] += c[i] * o.c[j];
  return UniPoly(std::move(r));
}

UniPoly UniPoly::scaled(const Rational& k) const {
  if (k == 0) return UniPoly();
  std::vector<Rational> r = c;
  for (auto& x : r) x *= k;
  return UniPoly(std::move(r));
}

UniPoly UniPoly::monic() const {
  if (is_zero()) return *this;
  return scaled(Rational(1) / lead());
}

UniPoly UniPoly::derivative() const {
  if (c.size() <= 1) return UniPoly();
  std::vector<Rational> r(c.size() - 1);
  for (std::size_t i = 1; i < c.size(); ++i) r[i - 1] = c[i] * Rational(static_cast<long>(i));
  return UniPoly(std::move(r));
}

std::pair<UniPoly, UniPoly> UniPoly::divmod(const UniPoly& d) const {
  if (d.is_zero()) throw std::invalid_argument("polynomial division by zero");
  UniPoly rem = *this;
  if (degree() < d.degree()) return {UniPoly(), rem};
  std::vector<Rational> q(static_cast<std::size_t>(degree() - d.degree()) + 1, Rational(0));
  while (!rem.is_zero() && rem.degree() >= d.degree()) {
    std::size_t shift = static_cast<std::size_t>(rem.degree() - d.degree());
    Rational f = rem.lead() / d.lead();
    q[shift] = f;
    std::vector<Rational> sub(shift + d.c.size(), Rational(0));
    for (std::size_t i = 0; i < d.c.size(); ++i) sub[shift + i] = d.c[i] * f;
    rem = rem - UniPoly(std::move(sub));
  }
  return {UniPoly(std::move(q)), rem};
}

UniPoly UniPoly::primitive_integer() const {
  if (is_zero()) return *this;
  Integer den_lcm = 1;
  for (const auto& x : c) {
    Integer d = x.get_den();
    den_lcm = den_lcm / gcd(den_lcm, d) * d;
  }
  Integer num_gcd = 0;
  std::vector<Rational> r = c;
  for (auto& x : r) {
    x *= Rational(den_lcm);
    num_gcd = gcd(num_gcd, x.get_num());
  }
  if (num_gcd != 0)
    for (auto& x : r) x /= Rational(num_gcd);
  if (r.back() < 0)
    for (auto& x : r) x = -x;
  return UniPoly(std::move(r));
}

std::string UniPoly::str(const std::string& var) const {
  if (is_zero()) return "0";
  std::string out;
  for (std::size_t i = c.size(); i-- > 0;) {
    if (c[i] == 0) continue;
    Rational a = abs(c[i]);
    if (out.empty()) {
      if (c[i] < 0) out += "-";
    } else {
      out += c[i] < 0 ? " - " : " + ";
    }
    if (i == 0) {
      out += rational_to_string(a);
    } else {
      if (a != 1) out += rational_to_string(a) + "*";
      out += var;
      if (i > 1) out += "^" + std::to_string(i);
    }
  }
  return out;
}

UniPoly poly_gcd(UniPoly a, UniPoly b) {
  while (!b.is_zero()) {
    UniPoly r = a.divmod(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

UniPoly squarefree_part(const UniPoly& p) {
  if (p.degree() <= 1) return p.monic();
  UniPoly g = poly_gcd(p, p.derivative());
  return p.divmod(g).first.monic();
}

namespace {

Rational trace(const RatMatrix& m) {
  Rational t = 0;
  for (std::size_t i = 0; i < m.nr; ++i) t += m.at(i, i);
  return t;
}

// Faddeev-LeVerrier trace recursion; exact over the rationals.
UniPoly char_poly_fl(const RatMatrix& A) {
  std::size_t n = A.nr;
  if (n == 0) return UniPoly({Rational(1)});
  std::vector<Rational> coeff(n + 1, Rational(0));
  coeff[n] = 1;  // lambda^n
  RatMatrix M = RatMatrix::identity(n);
  Rational ck;
  for (std::size_t k = 1; k <= n; ++k) {
    RatMatrix AM = A * M;
    ck = -trace(AM) / Rational(static_cast<long>(k));
    coeff[n - k] = ck;
    if (k < n) {
      M = std::move(AM);
      for (std::size_t i = 0; i < n; ++i) M.at(i, i) += ck;
    }
  }
  return UniPoly(std::move(coeff));
}

}  // namespace

UniPoly char_poly(const RatMatrix& A) {
  if (A.nr != A.nc) throw BasisMismatchError("characteristic polynomial of a non-square matrix");
  std::vector<std::vector<std::size_t>> adj(A.nr);
  for (std::size_t r = 0; r < A.nr; ++r)
    for (std::size_t c = 0; c < A.nc; ++c)
      if (r != c && A.at(r, c) != 0) adj[r].push_back(c);
  auto comps = strongly_connected_components(adj);

  // Block-triangular along components: the char poly is the product of the
  // diagonal blocks' char polys.
  UniPoly p({Rational(1)});
  for (const auto& comp : comps) {
    RatMatrix block(comp.size(), comp.size());
    for (std::size_t i = 0; i < comp.size(); ++i)
      for (std::size_t j = 0; j < comp.size(); ++j) block.at(i, j) = A.at(comp[i], comp[j]);
    p = p * char_poly_fl(block);
  }
  return p;
}

Rational determinant(const RatMatrix& A) {
  if (A.nr != A.nc) throw BasisMismatchError("determinant of a non-square matrix");
  RatMatrix m = A;
  Rational det = 1;
  for (std::size_t col = 0; col < m.nc; ++col) {
    std::size_t piv = col;
    while (piv < m.nr && m.at(piv, col) == 0) ++piv;
    if (piv == m.nr) return 0;
    if (piv != col) {
      for (std::size_t c = 0; c < m.nc; ++c) std::swap(m.at(piv, c), m.at(col, c));
      det = -det;
    }
    det *= m.at(col, col);
    Rational inv = Rational(1) / m.at(col, col);
    for (std::size_t r = col + 1; r < m.nr; ++r) {
      if (m.at(r, col) == 0) continue;
      Rational f = m.at(r, col) * inv;
      for (std::size_t c = col; c < m.nc; ++c)
        if (m.at(col, c) != 0) m.at(r, c) -= f * m.at(col, c);
    }
  }
  return det;
}

namespace {

// Pollard rho with Floyd cycle detection; n must be odd, composite, and free
// of small factors (trial division has already run).
Integer pollard_rho(const Integer& n) {
  for (unsigned long c = 1;; ++c) {
    Integer x = 2, y = 2, d = 1;
    while (d == 1) {
      x = (x * x + c) % n;
      y = (y * y + c) % n;
      y = (y * y + c) % n;
      Integer diff = x > y ? x - y : y - x;
      if (diff == 0) break;  // cycle without factor; retry with next c
      mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
    }
    if (d != 1 && d != n) return d;
  }
}

void factor_into(Integer n, std::map<Integer, unsigned>& out) {
  if (n <= 1) return;
  for (Integer p = 2; p * p <= n && p < 100000; p == 2 ? p = 3 : p += 2) {
    while (n % p == 0) {
      ++out[p];
      n /= p;
    }
  }
  if (n == 1) return;
  if (mpz_probab_prime_p(n.get_mpz_t(), 40) != 0) {
    ++out[n];
    return;
  }
  Integer d = pollard_rho(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

std::vector<Integer> divisors(const Integer& n) {
  std::map<Integer, unsigned> f;
  factor_into(abs(n), f);
  std::vector<Integer> divs{Integer(1)};
  for (const auto& [p, e] : f) {
    std::size_t sz = divs.size();
    if (sz * (e + 1) > 2000000) throw std::runtime_error("rational-root divisor enumeration too large");
    Integer pk = 1;
    for (unsigned k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < sz; ++i) divs.push_back(divs[i] * pk);
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

// Synthetic division by (x - r). The Horner chain yields the quotient
// coefficients directly and its final value is the remainder p(r), so one
// O(deg) pass both tests the root and deflates it.
std::optional<UniPoly> deflate_root(const UniPoly& p, const Rational& r) {
  std::vector<Rational> q(p.c.size() - 1);
  Rational acc = p.c.back();
  for (std::size_t i = p.c.size() - 1; i-- > 0;) {
    q[i] = acc;
    acc = p.c[i] + r * acc;
  }
  if (acc != 0) return std::nullopt;
  return UniPoly(std::move(q));
}

}  // namespace

RationalRoots rational_roots(const UniPoly& p) {
  if (p.is_zero()) throw std::invalid_argument("rational_roots of the zero polynomial");
  RationalRoots out;
  UniPoly work = p.monic();

  // Root zero first: strip the power of lambda.
  unsigned zero_mult = 0;
  while (!work.c.empty() && work.c.front() == 0) {
    work.c.erase(work.c.begin());
    ++zero_mult;
  }
  if (zero_mult > 0) out.roots.push_back({Rational(0), zero_mult});

  if (work.degree() >= 1) {
    UniPoly sf = squarefree_part(work).primitive_integer();
    Integer a0 = sf.c.front().get_num();
    Integer an = sf.c.back().get_num();
    std::vector<Rational> candidates;
    for (const Integer& num : divisors(a0))
      for (const Integer& den : divisors(an)) {
        Rational cand(num, den);
        cand.canonicalize();
        candidates.push_back(cand);
        candidates.push_back(-cand);
      }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    for (const Rational& r : candidates) {
      if (sf.eval(r) != 0) continue;
      unsigned mult = 0;
      while (auto q = deflate_root(work, r)) {
        work = std::move(*q);
        ++mult;
      }
      out.roots.push_back({r, mult});
    }
  }

  std::sort(out.roots.begin(), out.roots.end(),
            [](const RootMult& a, const RootMult& b) { return a.root < b.root; });
  out.residual = work.monic();
  return out;
}

std::vector<Rational> normalize_primitive(std::vector<Rational> v) {
  Integer den_lcm = 1;
  for (const auto& x : v) {
    Integer d = x.get_den();
    den_lcm = den_lcm / gcd(den_lcm, d) * d;
  }
  Integer num_gcd = 0;
  for (auto& x : v) {
    x *= Rational(den_lcm);
    num_gcd = gcd(num_gcd, x.get_num());
  }
  if (num_gcd > 1)
    for (auto& x : v) x /= Rational(num_gcd);
  for (const auto& x : v) {
    if (x == 0) continue;
    if (x < 0)
      for (auto& y : v) y = -y;
    break;
  }
  return v;
}

namespace {

// In-place reduced row echelon form; returns pivot columns.
std::vector<std::size_t> rref_in_place(std::vector<std::vector<Rational>>& rows) {
  std::vector<std::size_t> pivots;
  if (rows.empty()) return pivots;
  std::size_t ncols = rows[0].size();
  std::size_t r = 0;
  for (std::size_t col = 0; col < ncols && r < rows.size(); ++col) {
    std::size_t piv = r;
    while (piv < rows.size() && rows[piv][col] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[r], rows[piv]);
    Rational inv = Rational(1) / rows[r][col];
    for (std::size_t c = col; c < ncols; ++c)
      if (rows[r][c] != 0) rows[r][c] *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][col] == 0) continue;
      Rational f = rows[i][col];
      for (std::size_t c = col; c < ncols; ++c)
        if (rows[r][c] != 0) rows[i][c] -= f * rows[r][c];
    }
    pivots.push_back(col);
    ++r;
  }
  rows.resize(r);
  return pivots;
}

}  // namespace

std::vector<std::vector<Rational>> kernel(const RatMatrix& A) {
  std::vector<std::vector<Rational>> rows(A.nr, std::vector<Rational>(A.nc, Rational(0)));
  for (std::size_t r = 0; r < A.nr; ++r)
    for (std::size_t c = 0; c < A.nc; ++c) rows[r][c] = A.at(r, c);
  std::vector<std::size_t> pivots = rref_in_place(rows);

  std::vector<bool> is_pivot(A.nc, false);
  for (std::size_t c : pivots) is_pivot[c] = true;

  std::vector<std::vector<Rational>> basis;
  for (std::size_t free_col = 0; free_col < A.nc; ++free_col) {
    if (is_pivot[free_col]) continue;
    std::vector<Rational> v(A.nc, Rational(0));
    v[free_col] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -rows[r][free_col];
    basis.push_back(normalize_primitive(std::move(v)));
  }
  return basis;
}

std::vector<std::vector<Rational>> rref_span(std::vector<std::vector<Rational>> rows) {
  rref_in_place(rows);
  return rows;
}

bool span_contains(const std::vector<std::vector<Rational>>& rref,
                   const std::vector<Rational>& v) {
  std::vector<Rational> w = v;
  for (const auto& row : rref) {
    std::size_t pivot = 0;
    while (pivot < row.size() && row[pivot] == 0) ++pivot;
    if (pivot == row.size()) continue;
    if (w[pivot] == 0) continue;
    Rational f = w[pivot];  // rref rows have a leading 1
    for (std::size_t c = pivot; c < w.size(); ++c)
      if (row[c] != 0) w[c] -= f * row[c];
  }
  return std::all_of(w.begin(), w.end(), [](const Rational& x) { return x == 0; });
}

EigenDecomposition eigenspaces(const RatMatrix& A) {
  UniPoly p = char_poly(A);
  RationalRoots rr = rational_roots(p);
  EigenDecomposition out;
  out.residual = rr.residual;
  for (const auto& [root, mult] : rr.roots) {
    RatMatrix shifted = A;
    for (std::size_t i = 0; i < A.nr; ++i) shifted.at(i, i) -= root;
    Eigenspace es;
    es.lambda = root;
    es.alg_mult = mult;
    es.basis = kernel(shifted);
    out.spaces.push_back(std::move(es));
  }
  return out;
}

}  // namespace polyinv
