#pragma once

#include "polyinv/exactla.hpp"
#include "polyinv/invgen.hpp"
#include "polyinv/linearize.hpp"

#include <cstddef>
#include <utility>
#include <vector>

namespace polyinv {

// One factor of the non-rational part of a characteristic polynomial,
// together with the product of its roots, which is rational even when the
// roots themselves are not.
struct ResidualFactor {
  UniPoly factor;          // primitive integer coefficients
  unsigned multiplicity;   // power of the factor in the residual
  Rational root_product;   // (-1)^deg * constant / leading coefficient
};

struct ResidualSpectrum {
  UniPoly residual;  // monic; the constant 1 when the spectrum is fully rational
  std::vector<ResidualFactor> factors;

  bool empty() const { return residual.degree() < 1; }
};

// Factors a polynomial without rational roots into irreducible integer
// factors with multiplicities, by a bounded interpolation search; a factor
// whose split would exceed the search bound is returned whole.
std::vector<std::pair<UniPoly, unsigned>> factor_residual(const UniPoly& residual);

// Splits the characteristic polynomial of the dual map into rational roots
// (dropped here; invgen handles them) and the remaining factors.
ResidualSpectrum detect_irrational(const LinearLoop& L);

// Same analysis starting from an already computed residual polynomial.
ResidualSpectrum residual_spectrum(const UniPoly& residual);

inline constexpr std::size_t kDefaultElevationCap = 500;

// Semi-invariant spans of the system elevated to the given degree, with the
// directions rewritten as polynomials over the program variables. Products of
// up to `degree` dual eigenvalues are eigenvalues of the elevated system, so
// rational products of irrational eigenvalues surface here with rational
// eigenvectors. Throws SizeLimitError when the elevated basis exceeds dim_cap.
std::vector<PolyFamily> elevated_invariants(const LinearSystem& S, unsigned degree,
                                            std::size_t dim_cap = kDefaultElevationCap,
                                            std::size_t max_combos = kDefaultMaxCombos,
                                            bool* truncated = nullptr);

// Elevation degrees worth trying for a residual spectrum: 2 first, then the
// smallest residual-factor degree when that is larger. Empty when the
// spectrum is fully rational.
std::vector<unsigned> elevation_schedule(const ResidualSpectrum& spectrum);

}  // namespace polyinv
