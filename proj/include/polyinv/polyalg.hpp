// Exact polynomial algebra over arbitrary-precision rationals: monomials with a
// fixed variable universe, sparse polynomials, and simultaneous polynomial maps.
#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace polyinv {

// Canonical lowest-terms rational with positive denominator (maintained by GMP).
using Rational = mpq_class;
using Integer = mpz_class;

// Accepts "p", "-p", "p/q"; throws std::invalid_argument on anything else or q == 0.
Rational rational_from_string(const std::string& s);
std::string rational_to_string(const Rational& r);

struct BasisMismatchError : std::runtime_error {
  explicit BasisMismatchError(const std::string& what) : std::runtime_error(what) {}
};

// Power product over a fixed variable universe; exps.size() == number of variables.
// The all-zero monomial is the constant monomial (rendered "1").
struct Monomial {
  std::vector<unsigned> exps;

  Monomial() = default;
  explicit Monomial(std::size_t nvars) : exps(nvars, 0) {}

  static Monomial unit(std::size_t nvars) { return Monomial(nvars); }
  static Monomial var(std::size_t nvars, std::size_t i);

  std::size_t nvars() const { return exps.size(); }
  unsigned degree() const;
  bool is_unit() const { return degree() == 0; }

  Monomial operator*(const Monomial& o) const;

  bool operator==(const Monomial& o) const { return exps == o.exps; }
  // Total order: by total degree, ties by exponent-tuple lex with earlier
  // variables more significant and higher exponents first (x^2 < x*y < y^2).
  std::strong_ordering operator<=>(const Monomial& o) const;

  std::string str(const std::vector<std::string>& names) const;
};

// Sparse polynomial; invariant: no explicit zero coefficients, every stored
// monomial has exps.size() == nvars.
struct Polynomial {
  std::size_t nvars = 0;
  std::map<Monomial, Rational> terms;

  Polynomial() = default;
  explicit Polynomial(std::size_t nvars) : nvars(nvars) {}

  static Polynomial zero(std::size_t nvars) { return Polynomial(nvars); }
  static Polynomial constant(std::size_t nvars, const Rational& c);
  static Polynomial variable(std::size_t nvars, std::size_t i);
  static Polynomial from_monomial(const Monomial& m, const Rational& c);

  bool is_zero() const { return terms.empty(); }
  bool is_constant() const;
  // Value of a constant polynomial (0 for the zero polynomial).
  Rational constant_value() const;
  // degree() of the zero polynomial is 0 by convention.
  unsigned degree() const;

  void add_term(const Monomial& m, const Rational& c);
  const Rational* coeff(const Monomial& m) const;

  Polynomial operator-() const;
  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator*(const Rational& c) const;
  Polynomial pow(unsigned e) const;

  bool operator==(const Polynomial& o) const { return nvars == o.nvars && terms == o.terms; }

  Rational eval(const std::vector<Rational>& point) const;
  // Substitutes images[i] for variable i; all images must share one variable
  // universe, which becomes the universe of the result.
  Polynomial substitute(const std::vector<Polynomial>& images) const;

  // Degree-ascending term list, constant term last; powers rendered with '^'.
  std::string str(const std::vector<std::string>& names) const;
};

// Simultaneous polynomial mapping x := g(x); images[i] is the image of variable i
// and every image is a polynomial over the same nvars() variables.
struct PolyMap {
  std::vector<Polynomial> images;

  PolyMap() = default;
  explicit PolyMap(std::vector<Polynomial> imgs) : images(std::move(imgs)) {}

  static PolyMap identity(std::size_t n);

  std::size_t nvars() const { return images.size(); }
  unsigned degree() const;

  // Composition (*this) after first: x -> this(first(x)).
  PolyMap after(const PolyMap& first) const;
  std::vector<Rational> apply(const std::vector<Rational>& state) const;

  bool operator==(const PolyMap& o) const { return images == o.images; }
};

// Image of a monomial under a map: prod_i g_i^{e_i}. Throws BasisMismatchError
// when m.nvars() != g.nvars().
Polynomial compose(const Monomial& m, const PolyMap& g);

// All monomials of total degree <= d over n variables, sorted by the monomial
// order (the constant monomial first); exactly C(n+d, d) entries.
std::vector<Monomial> monomials_up_to(std::size_t nvars, unsigned d);

}  // namespace polyinv
