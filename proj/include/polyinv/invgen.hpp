#pragma once

#include "polyinv/exactla.hpp"
#include "polyinv/frontend.hpp"
#include "polyinv/linearize.hpp"
#include "polyinv/polyalg.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace polyinv {

// One eigenvalue combination (one eigenvalue per body) together with the space
// of dual vectors every body scales by its chosen eigenvalue. The span is kept
// in reduced row echelon form over the monomial basis, so equal spaces have
// equal representations.
struct SpanEntry {
  std::vector<Rational> eigenvalues;
  std::vector<std::vector<Rational>> span;
};

struct InvariantFamily {
  std::vector<std::string> names;
  std::vector<Monomial> basis;
  std::vector<SpanEntry> entries;  // sorted by eigenvalue tuple
  bool truncated = false;          // combination cap was hit
};

// Dual eigenvector spans of a single body: one entry per rational eigenvalue
// of the transposed matrix. Every vector phi in an entry's span satisfies
// phi^T * matrix = lambda * phi^T, so <phi, X> = 0 is preserved by the body.
// When residual is given it receives the part of the characteristic
// polynomial with no rational root.
InvariantFamily semi_invariants(const LinearLoop& L, UniPoly* residual = nullptr);

inline constexpr std::size_t kDefaultMaxCombos = 10000;

// Basis of span(U) meet span(V); rows of U and V live in the same column space.
std::vector<std::vector<Rational>> intersect_spans(const std::vector<std::vector<Rational>>& U,
                                                   const std::vector<std::vector<Rational>>& V);

// Combination-wise intersection across bodies: for every way of picking one
// entry per family, the vectors lying in every chosen span. Families must
// share names and basis. Empty intersections are dropped; at most max_combos
// combinations are explored and the truncated flag records whether any were
// skipped. The eigenvalue tuples of the results concatenate the choices in
// family order.
InvariantFamily intersect(const std::vector<InvariantFamily>& families,
                          std::size_t max_combos = kDefaultMaxCombos);

// A span entry with its directions written out as polynomials over the
// program variables: the form consumed by rendering and the trace oracle.
struct PolyFamily {
  std::vector<Rational> eigenvalues;
  std::vector<Polynomial> polys;
};

// Canonical form of a list of directions: row reduction over their joint
// monomial support (constant column last), each surviving row scaled to
// primitive integer coefficients. Zero polynomials vanish; the result is
// empty when the input spans nothing.
std::vector<Polynomial> canonicalize_polys(const std::vector<Polynomial>& polys,
                                           std::size_t nvars);

// Integer-primitive scalar multiple of p with positive leading coefficient
// (in the monomial order used for display).
Polynomial primitive_polynomial(const Polynomial& p);

std::vector<PolyFamily> to_poly_families(const InvariantFamily& fam);

// One printable (semi-)invariant equation.
struct InvariantForm {
  std::vector<Rational> eigenvalues;    // one per body
  std::vector<Polynomial> parts;        // polynomials carrying the parameters
  std::vector<std::string> parameters;  // "k" or "k1", "k2", ...; empty once instantiated
  bool k_form = false;                  // equation reads parts[0] = k (or = value)
  bool instantiated = false;
  Rational value;                       // right-hand side of an instantiated k-form
  bool evident = false;                 // no support variable is modified by any body
  std::string rendered;
};

// Parameter-reduced rendering. An all-ones entry containing the constant
// direction turns into one "p = k" line per remaining span direction (the
// constant direction absorbs the additive freedom); every other entry keeps
// its parameters as a homogeneous combination "k1*(p1) + k2*(p2) = 0".
// Entries spanned by the constant direction alone are vacuous and dropped.
std::vector<InvariantForm> reduce_parameters(const std::vector<PolyFamily>& fams,
                                             const std::vector<std::string>& names);

// Instantiation against an initial state: "p = k" becomes p = p(init); a
// homogeneous entry contributes p_i = 0 for every direction vanishing on init
// and, when some direction j0 does not vanish, the cross forms
// p_j0(init) * p_i - p_i(init) * p_j0 = 0 for the others.
std::vector<InvariantForm> instantiate(const std::vector<PolyFamily>& fams, const State& init,
                                       const std::vector<std::string>& names);

// Marks forms all of whose support variables are mapped to themselves by
// every body; such equations are true but say nothing about the loop.
void mark_evident(std::vector<InvariantForm>& forms, const std::vector<PolyMap>& bodies);

}  // namespace polyinv
