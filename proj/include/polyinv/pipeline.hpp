#pragma once

#include "polyinv/algext.hpp"
#include "polyinv/frontend.hpp"
#include "polyinv/invgen.hpp"
#include "polyinv/linearize.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace polyinv {

struct TimeoutError : std::runtime_error {
  explicit TimeoutError(const std::string& what) : std::runtime_error(what) {}
};

struct AnalyzeConfig {
  unsigned degree = 2;
  std::optional<State> init;          // program-start state; the loop entry state
                                      // is reached through the pre-loop assignments
  unsigned oracle_iters = 100;        // 0 disables the trace oracle
  unsigned oracle_runs = 3;           // random initial states when none is given
  std::uint64_t oracle_seed = 1;
  bool elevate_on_irrational = false;
  unsigned elevation_degree = 0;      // 0: automatic schedule from the residual factors
  std::size_t max_combos = kDefaultMaxCombos;
  std::size_t basis_limit = kDefaultBasisLimit;
  std::size_t elevation_cap = kDefaultElevationCap;
  double timeout_seconds = 600.0;
  bool with_timings = false;          // timings make the output run-dependent, so opt-in
};

struct BodyResidual {
  std::size_t body;
  ResidualSpectrum spectrum;
};

struct ElevationResult {
  unsigned degree = 0;
  std::vector<PolyFamily> families;
  std::vector<InvariantForm> forms;
  bool truncated = false;
};

struct Report {
  Program program;
  unsigned degree = 0;
  LinearSystem linear;
  InvariantFamily family;                // intersected spans over the basis
  std::vector<PolyFamily> poly_families; // the same spans as polynomials
  std::vector<InvariantForm> forms;
  std::vector<BodyResidual> residuals;   // bodies with non-rational spectrum parts
  std::vector<ElevationResult> elevations;
  bool truncated = false;
  std::string oracle_verdict = "skipped";  // "pass" | "fail" | "skipped"
  std::vector<std::pair<std::string, double>> timings_ms;
  bool with_timings = false;

  std::string to_text() const;
  // Stable key order; canonical fractions; byte-identical across runs unless
  // timings are enabled.
  std::string to_json() const;
  // The pretty-printed program with one comment line per invariant inserted
  // before the loop.
  std::string to_annotated() const;
};

// Full pipeline on a parsed program: solvability gate, joint linearization,
// dual eigenspaces per body, intersection, parameter reduction or
// instantiation, evident marking, residual detection, optional elevation,
// and the trace oracle.
Report analyze(const Program& p, const AnalyzeConfig& cfg);

// Exact check of every reported form along random executions: instantiated
// equations must hold on every visited state, parametrized directions must
// scale by their body's eigenvalue at every step. Returns "pass" or "fail".
std::string run_oracle(const Program& p, const Report& r, const AnalyzeConfig& cfg);

// Reads a "# degree: N" comment directive, used by the benchmark harness (and
// the CLI when no degree is given on the command line).
std::optional<unsigned> degree_directive(const std::string& source);

struct BenchRow {
  std::string name;
  std::size_t vars = 0;
  unsigned degree = 0;
  double median_ms = 0.0;
  std::size_t invariants = 0;
  std::string verdict;  // oracle verdict, "O.O.T." on timeout, or an error note
  bool oot = false;
  bool failed = false;  // parse/solvability/limit error
};

// Analyzes every *.loop file in the directory (sorted by name): median wall
// time over the repetitions, then one oracle pass. Timeouts and per-program
// errors are recorded in the row and the run continues.
std::vector<BenchRow> bench(const std::string& dir, unsigned repetitions, AnalyzeConfig cfg);

std::string bench_table(const std::vector<BenchRow>& rows);

}  // namespace polyinv
