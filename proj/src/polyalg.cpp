#include "polyinv/polyalg.hpp"

#include <algorithm>
#include <sstream>

namespace polyinv {

Rational rational_from_string(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  Rational r;
  try {
    r = Rational(s);  // gmpxx rejects malformed strings
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("malformed rational literal: " + s);
  }
  if (r.get_den() == 0) throw std::invalid_argument("zero denominator in rational literal: " + s);
  r.canonicalize();
  return r;
}

std::string rational_to_string(const Rational& r) { return r.get_str(); }

Monomial Monomial::var(std::size_t nvars, std::size_t i) {
  Monomial m(nvars);
  m.exps.at(i) = 1;
  return m;
}

unsigned Monomial::degree() const {
  unsigned d = 0;
  for (unsigned e : exps) d += e;
  return d;
}

Monomial Monomial::operator*(const Monomial& o) const {
  if (nvars() != o.nvars()) throw BasisMismatchError("monomial product across different variable universes");
  Monomial r(nvars());
  for (std::size_t i = 0; i < exps.size(); ++i) r.exps[i] = exps[i] + o.exps[i];
  return r;
}

std::strong_ordering Monomial::operator<=>(const Monomial& o) const {
  if (auto c = degree() <=> o.degree(); c != 0) return c;
  // Same degree: lexicographically larger exponent tuple sorts first.
  for (std::size_t i = 0; i < exps.size() && i < o.exps.size(); ++i)
    if (auto c = o.exps[i] <=> exps[i]; c != 0) return c;
  return exps.size() <=> o.exps.size();
}

std::string Monomial::str(const std::vector<std::string>& names) const {
  std::string out;
  for (std::size_t i = 0; i < exps.size(); ++i) {
    if (exps[i] == 0) continue;
    if (!out.empty()) out += "*";
    out += names.at(i);
    if (exps[i] > 1) out += "^" + std::to_string(exps[i]);
  }
  return out.empty() ? "1" : out;
}

Polynomial Polynomial::constant(std::size_t nvars, const Rational& c) {
  Polynomial p(nvars);
  p.add_term(Monomial::unit(nvars), c);
  return p;
}

Polynomial Polynomial::variable(std::size_t nvars, std::size_t i) {
  Polynomial p(nvars);
  p.add_term(Monomial::var(nvars, i), 1);
  return p;
}

Polynomial Polynomial::from_monomial(const Monomial& m, const Rational& c) {
  Polynomial p(m.nvars());
  p.add_term(m, c);
  return p;
}

bool Polynomial::is_constant() const {
  return terms.empty() || (terms.size() == 1 && terms.begin()->first.is_unit());
}

Rational Polynomial::constant_value() const {
  if (!is_constant()) throw std::logic_error("constant_value on non-constant polynomial");
  return terms.empty() ? Rational(0) : terms.begin()->second;
}

unsigned Polynomial::degree() const {
  unsigned d = 0;
  for (const auto& [m, c] : terms) d = std::max(d, m.degree());
  return d;
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
  if (m.nvars() != nvars) throw BasisMismatchError("term over a different variable universe");
  if (c == 0) return;
  auto it = terms.find(m);
  if (it == terms.end()) {
    terms.emplace(m, c);
  } else {
    it->second += c;
    if (it->second == 0) terms.erase(it);
  }
}

const Rational* Polynomial::coeff(const Monomial& m) const {
  auto it = terms.find(m);
  return it == terms.end() ? nullptr : &it->second;
}

Polynomial Polynomial::operator-() const {
  Polynomial r(nvars);
  for (const auto& [m, c] : terms) r.terms.emplace(m, -c);
  return r;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  if (nvars != o.nvars) throw BasisMismatchError("sum across different variable universes");
  Polynomial r = *this;
  for (const auto& [m, c] : o.terms) r.add_term(m, c);
  return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + (-o); }

Polynomial Polynomial::operator*(const Polynomial& o) const {
  if (nvars != o.nvars) throw BasisMismatchError("product across different variable universes");
  Polynomial r(nvars);
  for (const auto& [m1, c1] : terms)
    for (const auto& [m2, c2] : o.terms) r.add_term(m1 * m2, c1 * c2);
  return r;
}

Polynomial Polynomial::operator*(const Rational& c) const {
  Polynomial r(nvars);
  if (c == 0) return r;
  for (const auto& [m, k] : terms) r.terms.emplace(m, k * c);
  return r;
}

Polynomial Polynomial::pow(unsigned e) const {
  Polynomial r = Polynomial::constant(nvars, 1);
  for (unsigned i = 0; i < e; ++i) r = r * *this;
  return r;
}

Rational Polynomial::eval(const std::vector<Rational>& point) const {
  if (point.size() != nvars) throw BasisMismatchError("evaluation point arity mismatch");
  Rational acc = 0;
  for (const auto& [m, c] : terms) {
    Rational t = c;
    for (std::size_t i = 0; i < m.exps.size(); ++i)
      for (unsigned e = 0; e < m.exps[i]; ++e) t *= point[i];
    acc += t;
  }
  return acc;
}

Polynomial Polynomial::substitute(const std::vector<Polynomial>& images) const {
  if (images.size() != nvars) throw BasisMismatchError("substitution arity mismatch");
  std::size_t target = images.empty() ? 0 : images[0].nvars;
  for (const auto& im : images)
    if (im.nvars != target) throw BasisMismatchError("substitution images over different universes");
  Polynomial acc(target);
  for (const auto& [m, c] : terms) {
    Polynomial t = Polynomial::constant(target, c);
    for (std::size_t i = 0; i < m.exps.size(); ++i)
      if (m.exps[i] > 0) t = t * images[i].pow(m.exps[i]);
    acc = acc + t;
  }
  return acc;
}

namespace {

// Display order: constant term last, otherwise degree-ascending with the
// monomial order's tie-break.
bool display_before(const Monomial& a, const Monomial& b) {
  if (a.is_unit() != b.is_unit()) return b.is_unit();
  return a < b;
}

}  // namespace

std::string Polynomial::str(const std::vector<std::string>& names) const {
  if (terms.empty()) return "0";
  std::vector<const std::pair<const Monomial, Rational>*> ordered;
  ordered.reserve(terms.size());
  for (const auto& t : terms) ordered.push_back(&t);
  std::sort(ordered.begin(), ordered.end(),
            [](auto* a, auto* b) { return display_before(a->first, b->first); });

  std::string out;
  for (const auto* t : ordered) {
    const auto& [m, c] = *t;
    Rational a = abs(c);
    if (out.empty()) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    if (m.is_unit()) {
      out += rational_to_string(a);
    } else {
      if (a != 1) out += rational_to_string(a) + "*";
      out += m.str(names);
    }
  }
  return out;
}

PolyMap PolyMap::identity(std::size_t n) {
  PolyMap g;
  g.images.reserve(n);
  for (std::size_t i = 0; i < n; ++i) g.images.push_back(Polynomial::variable(n, i));
  return g;
}

unsigned PolyMap::degree() const {
  unsigned d = 0;
  for (const auto& p : images) d = std::max(d, p.degree());
  return d;
}

PolyMap PolyMap::after(const PolyMap& first) const {
  if (nvars() != first.nvars()) throw BasisMismatchError("composition arity mismatch");
  PolyMap r;
  r.images.reserve(images.size());
  for (const auto& p : images) r.images.push_back(p.substitute(first.images));
  return r;
}

std::vector<Rational> PolyMap::apply(const std::vector<Rational>& state) const {
  std::vector<Rational> out;
  out.reserve(images.size());
  for (const auto& p : images) out.push_back(p.eval(state));
  return out;
}

Polynomial compose(const Monomial& m, const PolyMap& g) {
  if (m.nvars() != g.nvars()) throw BasisMismatchError("compose: monomial/map arity mismatch");
  Polynomial r = Polynomial::constant(g.nvars(), 1);
  for (std::size_t i = 0; i < m.exps.size(); ++i)
    if (m.exps[i] > 0) r = r * g.images[i].pow(m.exps[i]);
  return r;
}

namespace {

void enumerate(std::size_t nvars, unsigned budget, std::size_t i, Monomial& cur,
               std::vector<Monomial>& out) {
  if (i == nvars) {
    out.push_back(cur);
    return;
  }
  for (unsigned e = 0; e <= budget; ++e) {
    cur.exps[i] = e;
    enumerate(nvars, budget - e, i + 1, cur, out);
  }
  cur.exps[i] = 0;
}

}  // namespace

std::vector<Monomial> monomials_up_to(std::size_t nvars, unsigned d) {
  std::vector<Monomial> out;
  Monomial cur(nvars);
  enumerate(nvars, d, 0, cur, out);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace polyinv
