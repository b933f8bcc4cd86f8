#pragma once

#include "polyinv/exactla.hpp"
#include "polyinv/polyalg.hpp"

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace polyinv {

// The requested degree cannot close the loop: keeping the variables themselves
// in the basis would require a monomial of higher degree.
struct DegreeTooSmallError : std::runtime_error {
  explicit DegreeTooSmallError(const std::string& what) : std::runtime_error(what) {}
};

// The monomial basis would exceed a configured size cap.
struct SizeLimitError : std::runtime_error {
  explicit SizeLimitError(const std::string& what) : std::runtime_error(what) {}
};

inline constexpr std::size_t kDefaultBasisLimit = 2000;

// A loop body as a linear map over monomials of the program variables.
// The basis lists the variables first in declaration order, then the retained
// higher-degree monomials by (degree, exponent order), and the constant
// monomial last. Row i of the matrix holds the coefficients of basis[i]
// composed with the body, expressed over the basis, so the monomial vector
// v(X) = (m_0(X), ..., 1) satisfies v(g(X)) = matrix * v(X).
struct LinearLoop {
  std::vector<std::string> names;
  std::vector<Monomial> basis;
  RatMatrix matrix;

  std::size_t unit_index() const { return basis.size() - 1; }
};

// Several loop bodies over one shared basis.
struct LinearSystem {
  std::vector<std::string> names;
  std::vector<Monomial> basis;
  std::vector<RatMatrix> matrices;

  std::size_t unit_index() const { return basis.size() - 1; }
  LinearLoop body(std::size_t i) const { return {names, basis, matrices[i]}; }
};

// Linear form of a single body over the largest closed subset of degree-<=d
// monomials: starting from all of them, repeatedly discard any monomial whose
// composed image exceeds degree d or mentions a discarded monomial, until
// stable. Discarding a variable or the constant monomial raises
// DegreeTooSmallError; a basis larger than basis_limit raises SizeLimitError.
LinearLoop linearize(const PolyMap& g, unsigned degree, std::vector<std::string> names,
                     std::size_t basis_limit = kDefaultBasisLimit);

// Joint form for all bodies of a non-deterministic loop: one shared basis,
// where a monomial survives only if every body keeps it.
LinearSystem linearize_bodies(const std::vector<PolyMap>& bodies, unsigned degree,
                              std::vector<std::string> names,
                              std::size_t basis_limit = kDefaultBasisLimit);

// Monomials of degree 1..d over n variables, highest degree first; within a
// degree block, descending exponent order, so for two variables and d = 2 the
// sequence is x^2, x*y, y^2, x, y. For d = 1 this is just the variables.
std::vector<Monomial> elevation_basis(std::size_t nvars, unsigned degree);

// Action induced by the linear map A (rows = images of the variables) on the
// elevation basis: the row for monomial m holds the coefficients of m
// composed with A. Satisfies elevate(A, 1) = A and
// elevate(A*B, d) = elevate(A, d) * elevate(B, d).
RatMatrix elevate(const RatMatrix& A, unsigned degree);

// Semantic elevation of an already linearized system: every basis monomial
// except the constant becomes a fresh variable, the matrix rows become an
// affine map on those variables, and that map is linearized at the given
// degree. Affine images never raise degree, so nothing is discarded.
// var_meaning records the original-variable monomial behind each fresh
// variable; distinct fresh monomials may stand for the same original one.
struct ElevatedSystem {
  LinearSystem sys;
  std::vector<Monomial> var_meaning;
};

ElevatedSystem elevate_system(const LinearSystem& S, unsigned degree,
                              std::size_t basis_limit = kDefaultBasisLimit);

}  // namespace polyinv
