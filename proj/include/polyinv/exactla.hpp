// Exact linear algebra over arbitrary-precision rationals: dense matrices,
// univariate polynomials, characteristic polynomial, rational eigenvalues and
// eigenspaces. Everything is exact; no floating point anywhere.
#pragma once

#include "polyinv/polyalg.hpp"

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace polyinv {

struct RatMatrix {
  std::size_t nr = 0, nc = 0;
  std::vector<Rational> a;  // row-major

  RatMatrix() = default;
  RatMatrix(std::size_t rows, std::size_t cols) : nr(rows), nc(cols), a(rows * cols) {}

  Rational& at(std::size_t r, std::size_t c) { return a[r * nc + c]; }
  const Rational& at(std::size_t r, std::size_t c) const { return a[r * nc + c]; }

  static RatMatrix identity(std::size_t n);
  RatMatrix transpose() const;
  RatMatrix operator*(const RatMatrix& o) const;
  std::vector<Rational> apply(const std::vector<Rational>& v) const;
  bool operator==(const RatMatrix& o) const = default;
};

// Univariate polynomial, coefficients ascending; invariant: no trailing zero
// coefficient (the zero polynomial stores nothing).
struct UniPoly {
  std::vector<Rational> c;

  UniPoly() = default;
  explicit UniPoly(std::vector<Rational> coeffs) : c(std::move(coeffs)) { trim(); }

  static UniPoly constant(const Rational& v) { return UniPoly({v}); }
  static UniPoly x_minus(const Rational& r) { return UniPoly({-r, Rational(1)}); }

  void trim();
  bool is_zero() const { return c.empty(); }
  int degree() const { return static_cast<int>(c.size()) - 1; }  // -1 for zero
  Rational lead() const { return c.back(); }
  Rational eval(const Rational& x) const;

  UniPoly operator+(const UniPoly& o) const;
  UniPoly operator-(const UniPoly& o) const;
  UniPoly operator*(const UniPoly& o) const;
  UniPoly scaled(const Rational& k) const;
  UniPoly monic() const;
  UniPoly derivative() const;
  // Quotient/remainder; divisor must be nonzero.
  std::pair<UniPoly, UniPoly> divmod(const UniPoly& d) const;
  // Integer coefficients with content 1 and positive leading coefficient.
  UniPoly primitive_integer() const;

  bool operator==(const UniPoly& o) const = default;
  std::string str(const std::string& var) const;  // descending powers
};

UniPoly poly_gcd(UniPoly a, UniPoly b);      // monic gcd
UniPoly squarefree_part(const UniPoly& p);   // p / gcd(p, p'), monic

// det(lambda*I - A), monic of degree n. Decomposes along the support graph's
// strongly connected components (char poly of a block-triangular matrix is the
// product over diagonal blocks), then runs the Faddeev-LeVerrier trace
// recursion on each block.
UniPoly char_poly(const RatMatrix& A);

Rational determinant(const RatMatrix& A);

struct RootMult {
  Rational root;
  unsigned mult;
  bool operator==(const RootMult& o) const = default;
};

struct RationalRoots {
  std::vector<RootMult> roots;  // ascending by root
  UniPoly residual;             // rational-root-free cofactor, monic (1 if none left)
};

// All rational roots with algebraic multiplicity, found by the rational-root
// theorem on the squarefree part (divisor enumeration over the factored
// extreme coefficients) and exact deflation.
RationalRoots rational_roots(const UniPoly& p);

// Scales to primitive integer entries with the first nonzero entry positive.
std::vector<Rational> normalize_primitive(std::vector<Rational> v);

// Nullspace basis, one vector per free column, each normalized primitive.
std::vector<std::vector<Rational>> kernel(const RatMatrix& A);

// Canonical reduced row echelon form of a span (zero rows dropped). Two row
// sets span the same subspace iff their rref_span results are equal.
std::vector<std::vector<Rational>> rref_span(std::vector<std::vector<Rational>> rows);

bool span_contains(const std::vector<std::vector<Rational>>& rref,
                   const std::vector<Rational>& v);

struct Eigenspace {
  Rational lambda;
  unsigned alg_mult = 0;
  std::vector<std::vector<Rational>> basis;  // normalized primitive kernel vectors
};

struct EigenDecomposition {
  std::vector<Eigenspace> spaces;  // ascending by eigenvalue
  UniPoly residual;                // non-rational factor of the char poly
};

EigenDecomposition eigenspaces(const RatMatrix& A);

}  // namespace polyinv
