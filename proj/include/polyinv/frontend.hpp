// Mini-language of non-deterministic loops over simultaneous polynomial
// assignments:
//
//   stmt  ::= stmt ';' stmt
//           | '(' x1 ',' .. ',' xn ')' ':=' '(' e1 ',' .. ',' en ')'
//           | x ':=' e
//           | stmt 'OR' stmt
//           | 'while' '(' '*' ')' 'do' stmt 'done'
//
// Expressions use + - * / ^ over variables and integer literals; '/' must
// divide by a nonzero constant (folded into the coefficients) and '^' takes a
// nonnegative integer literal exponent. '#' starts a comment. OR binds loosest.
#pragma once

#include "polyinv/polyalg.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace polyinv {

struct SyntaxError : std::runtime_error {
  std::size_t line, col;
  SyntaxError(const std::string& msg, std::size_t line, std::size_t col)
      : std::runtime_error(msg + " at line " + std::to_string(line) + ", column " +
                           std::to_string(col)),
        line(line),
        col(col) {}
};

// A 'while' nested inside another 'while' body is outside the analyzed fragment.
struct NestedLoopError : std::runtime_error {
  std::size_t line, col;
  NestedLoopError(std::size_t line, std::size_t col)
      : std::runtime_error("nested while loops are not supported (line " + std::to_string(line) +
                           ", column " + std::to_string(col) + ")"),
        line(line),
        col(col) {}
};

struct UnboundVariableError : std::runtime_error {
  explicit UnboundVariableError(const std::string& name)
      : std::runtime_error("unbound variable: " + name) {}
};

struct Instr {
  enum class Kind { Assign, Seq, Or, While };
  Kind kind = Kind::Assign;
  // Assign: a total simultaneous assignment (variables missing from the source
  // tuple are completed with themselves at parse time).
  PolyMap assign;
  // Seq/Or: exactly two children; While: one child (the body).
  std::vector<Instr> children;

  bool operator==(const Instr& o) const;
};

struct Program {
  std::vector<std::string> vars;  // first-appearance order, fixed for the analysis
  Instr body;

  bool operator==(const Program& o) const { return vars == o.vars && body == o.body; }

  std::size_t var_index(const std::string& name) const;  // throws UnboundVariableError

  // The unique top-level while loop (throws SyntaxError at 0:0 if absent).
  const Instr& loop() const;
  // Composition of the assignments preceding the loop (identity if none).
  PolyMap prefix_map() const;
  // The loop's OR alternatives, each folded into one simultaneous map
  // (sequential assignments compose; OR distributes over sequence).
  std::vector<PolyMap> loop_bodies() const;
};

Program parse(const std::string& text);
// Canonical source form; parse(pretty_print(p)) == p.
std::string pretty_print(const Program& p);

// State indexed like Program::vars.
using State = std::vector<Rational>;

struct Trace {
  // states[0] is the state at loop entry (after pre-loop assignments);
  // states[k] the state after k completed iterations.
  std::vector<State> states;
};

// Runs the loop for iters iterations; choices[k] picks the OR alternative for
// iteration k and must have at least iters entries.
Trace run(const Program& p, const State& init, std::size_t iters,
          const std::vector<std::size_t>& choices);

}  // namespace polyinv
