#include "polyinv/frontend.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <memory>
#include <utility>

namespace polyinv {

bool Instr::operator==(const Instr& o) const {
  return kind == o.kind && assign == o.assign && children == o.children;
}

std::size_t Program::var_index(const std::string& name) const {
  for (std::size_t i = 0; i < vars.size(); ++i)
    if (vars[i] == name) return i;
  throw UnboundVariableError(name);
}

namespace {

struct Token {
  enum class Kind {
    Ident, Number, Assign, LParen, RParen, LBrace, RBrace, Comma, Semi,
    Plus, Minus, Star, Slash, Caret, KwWhile, KwDo, KwDone, KwOr, End
  };
  Kind kind;
  std::string text;
  std::size_t line, col;
};

class Lexer {
 public:
  explicit Lexer(const std::string& src) : src_(src) {}

  std::vector<Token> lex() {
    std::vector<Token> out;
    while (true) {
      skip_blank();
      if (pos_ >= src_.size()) break;
      std::size_t line = line_, col = col_;
      char c = src_[pos_];
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::string word = take_while([](char ch) {
          return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_';
        });
        Token::Kind k = Token::Kind::Ident;
        if (word == "while") k = Token::Kind::KwWhile;
        else if (word == "do") k = Token::Kind::KwDo;
        else if (word == "done") k = Token::Kind::KwDone;
        else if (word == "OR") k = Token::Kind::KwOr;
        out.push_back({k, word, line, col});
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        std::string num = take_while([](char ch) {
          return std::isdigit(static_cast<unsigned char>(ch)) != 0;
        });
        out.push_back({Token::Kind::Number, num, line, col});
      } else if (c == ':' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '=') {
        advance(); advance();
        out.push_back({Token::Kind::Assign, ":=", line, col});
      } else {
        Token::Kind k;
        switch (c) {
          case '(': k = Token::Kind::LParen; break;
          case ')': k = Token::Kind::RParen; break;
          case '{': k = Token::Kind::LBrace; break;
          case '}': k = Token::Kind::RBrace; break;
          case ',': k = Token::Kind::Comma; break;
          case ';': k = Token::Kind::Semi; break;
          case '+': k = Token::Kind::Plus; break;
          case '-': k = Token::Kind::Minus; break;
          case '*': k = Token::Kind::Star; break;
          case '/': k = Token::Kind::Slash; break;
          case '^': k = Token::Kind::Caret; break;
          default:
            throw SyntaxError(std::string("unexpected character '") + c + "'", line, col);
        }
        advance();
        out.push_back({k, std::string(1, c), line, col});
      }
    }
    out.push_back({Token::Kind::End, "", line_, col_});
    return out;
  }

 private:
  void advance() {
    if (src_[pos_] == '\n') { ++line_; col_ = 1; } else { ++col_; }
    ++pos_;
  }

  void skip_blank() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  template <class Pred>
  std::string take_while(Pred pred) {
    std::string s;
    while (pos_ < src_.size() && pred(src_[pos_])) {
      s += src_[pos_];
      advance();
    }
    return s;
  }

  const std::string& src_;
  std::size_t pos_ = 0, line_ = 1, col_ = 1;
};

// Expression tree kept until the whole program is read and the variable
// universe is fixed; positions are retained for lowering-time diagnostics.
struct RExpr {
  enum class Kind { Num, Var, Add, Sub, Mul, Div, Neg, Pow };
  Kind kind;
  std::size_t line = 0, col = 0;
  Integer num;           // Num
  std::string var;       // Var
  unsigned exponent = 0; // Pow
  std::vector<RExpr> kids;
};

struct RInstr {
  Instr::Kind kind = Instr::Kind::Assign;
  std::size_t line = 0, col = 0;
  std::vector<std::pair<std::string, std::pair<std::size_t, std::size_t>>> targets;
  std::vector<RExpr> values;
  std::vector<RInstr> children;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  RInstr parse_program(std::vector<std::string>& vars) {
    RInstr top = parse_seq();
    expect(Token::Kind::End, "end of input");
    vars = std::move(vars_);
    return top;
  }

 private:
  const Token& cur() const { return toks_[i_]; }
  const Token& next() { return toks_[i_++]; }
  bool at(Token::Kind k) const { return cur().kind == k; }

  bool accept(Token::Kind k) {
    if (!at(k)) return false;
    ++i_;
    return true;
  }

  const Token& expect(Token::Kind k, const std::string& what) {
    if (!at(k)) throw SyntaxError("expected " + what + ", got '" + cur().text + "'", cur().line, cur().col);
    return next();
  }

  void note_var(const std::string& name) {
    if (std::find(vars_.begin(), vars_.end(), name) == vars_.end()) vars_.push_back(name);
  }

  // OR binds loosest, ';' tighter.
  RInstr parse_seq() {
    RInstr left = parse_sequence_level();
    while (at(Token::Kind::KwOr)) {
      const Token& t = next();
      RInstr node;
      node.kind = Instr::Kind::Or;
      node.line = t.line; node.col = t.col;
      node.children.push_back(std::move(left));
      node.children.push_back(parse_sequence_level());
      left = std::move(node);
    }
    return left;
  }

  RInstr parse_sequence_level() {
    RInstr left = parse_atom();
    while (accept(Token::Kind::Semi)) {
      if (at(Token::Kind::KwDone) || at(Token::Kind::End) || at(Token::Kind::RBrace) ||
          at(Token::Kind::KwOr))
        break;  // trailing ';'
      RInstr node;
      node.kind = Instr::Kind::Seq;
      node.children.push_back(std::move(left));
      node.children.push_back(parse_atom());
      left = std::move(node);
    }
    return left;
  }

  RInstr parse_atom() {
    if (at(Token::Kind::KwWhile)) return parse_while();
    if (accept(Token::Kind::LBrace)) {
      RInstr inner = parse_seq();
      expect(Token::Kind::RBrace, "'}'");
      return inner;
    }
    return parse_assign();
  }

  RInstr parse_while() {
    const Token& t = expect(Token::Kind::KwWhile, "'while'");
    if (loop_depth_ > 0) throw NestedLoopError(t.line, t.col);
    expect(Token::Kind::LParen, "'('");
    const Token& star = expect(Token::Kind::Star, "'*'");
    (void)star;
    expect(Token::Kind::RParen, "')'");
    expect(Token::Kind::KwDo, "'do'");
    ++loop_depth_;
    RInstr body = parse_seq();
    --loop_depth_;
    expect(Token::Kind::KwDone, "'done'");
    RInstr node;
    node.kind = Instr::Kind::While;
    node.line = t.line; node.col = t.col;
    node.children.push_back(std::move(body));
    return node;
  }

  RInstr parse_assign() {
    RInstr node;
    node.kind = Instr::Kind::Assign;
    node.line = cur().line; node.col = cur().col;
    if (accept(Token::Kind::LParen)) {
      do {
        const Token& id = expect(Token::Kind::Ident, "variable name");
        note_var(id.text);
        node.targets.push_back({id.text, {id.line, id.col}});
      } while (accept(Token::Kind::Comma));
      expect(Token::Kind::RParen, "')'");
    } else {
      const Token& id = expect(Token::Kind::Ident, "variable name");
      note_var(id.text);
      node.targets.push_back({id.text, {id.line, id.col}});
    }
    expect(Token::Kind::Assign, "':='");
    if (node.targets.size() == 1) {
      // A leading '(' is an expression group here, not a tuple.
      node.values.push_back(parse_expr());
    } else {
      expect(Token::Kind::LParen, "'('");
      do {
        node.values.push_back(parse_expr());
      } while (accept(Token::Kind::Comma));
      expect(Token::Kind::RParen, "')'");
    }
    if (node.targets.size() != node.values.size())
      throw SyntaxError("assignment tuple arity mismatch (" + std::to_string(node.targets.size()) +
                        " targets, " + std::to_string(node.values.size()) + " values)",
                        node.line, node.col);
    return node;
  }

  RExpr parse_expr() {
    RExpr left = parse_term();
    while (at(Token::Kind::Plus) || at(Token::Kind::Minus)) {
      const Token& t = next();
      RExpr node;
      node.kind = t.kind == Token::Kind::Plus ? RExpr::Kind::Add : RExpr::Kind::Sub;
      node.line = t.line; node.col = t.col;
      node.kids.push_back(std::move(left));
      node.kids.push_back(parse_term());
      left = std::move(node);
    }
    return left;
  }

  RExpr parse_term() {
    RExpr left = parse_unary();
    while (at(Token::Kind::Star) || at(Token::Kind::Slash)) {
      const Token& t = next();
      RExpr node;
      node.kind = t.kind == Token::Kind::Star ? RExpr::Kind::Mul : RExpr::Kind::Div;
      node.line = t.line; node.col = t.col;
      node.kids.push_back(std::move(left));
      node.kids.push_back(parse_unary());
      left = std::move(node);
    }
    return left;
  }

  RExpr parse_unary() {
    if (at(Token::Kind::Minus) || at(Token::Kind::Plus)) {
      const Token& t = next();
      RExpr inner = parse_unary();
      if (t.kind == Token::Kind::Plus) return inner;
      RExpr node;
      node.kind = RExpr::Kind::Neg;
      node.line = t.line; node.col = t.col;
      node.kids.push_back(std::move(inner));
      return node;
    }
    return parse_power();
  }

  RExpr parse_power() {
    RExpr base = parse_primary();
    if (accept(Token::Kind::Caret)) {
      const Token& e = expect(Token::Kind::Number, "integer exponent");
      unsigned long exp = 0;
      try {
        exp = std::stoul(e.text);
      } catch (const std::out_of_range&) {
        throw SyntaxError("exponent too large", e.line, e.col);
      }
      if (exp > 512) throw SyntaxError("exponent too large", e.line, e.col);
      RExpr node;
      node.kind = RExpr::Kind::Pow;
      node.line = e.line; node.col = e.col;
      node.exponent = static_cast<unsigned>(exp);
      node.kids.push_back(std::move(base));
      return node;
    }
    return base;
  }

  RExpr parse_primary() {
    if (at(Token::Kind::Number)) {
      const Token& t = next();
      RExpr node;
      node.kind = RExpr::Kind::Num;
      node.line = t.line; node.col = t.col;
      node.num = Integer(t.text);
      return node;
    }
    if (at(Token::Kind::Ident)) {
      const Token& t = next();
      note_var(t.text);
      RExpr node;
      node.kind = RExpr::Kind::Var;
      node.line = t.line; node.col = t.col;
      node.var = t.text;
      return node;
    }
    if (accept(Token::Kind::LParen)) {
      RExpr inner = parse_expr();
      expect(Token::Kind::RParen, "')'");
      return inner;
    }
    throw SyntaxError("expected expression, got '" + cur().text + "'", cur().line, cur().col);
  }

  std::vector<Token> toks_;
  std::size_t i_ = 0;
  int loop_depth_ = 0;
  std::vector<std::string> vars_;
};

class Lowerer {
 public:
  explicit Lowerer(const std::vector<std::string>& vars) : vars_(vars) {}

  Instr lower(const RInstr& r) const {
    Instr out;
    out.kind = r.kind;
    if (r.kind == Instr::Kind::Assign) {
      out.assign = lower_assign(r);
    } else {
      for (const auto& c : r.children) out.children.push_back(lower(c));
    }
    return out;
  }

 private:
  std::size_t index_of(const std::string& name) const {
    return static_cast<std::size_t>(
        std::find(vars_.begin(), vars_.end(), name) - vars_.begin());
  }

  PolyMap lower_assign(const RInstr& r) const {
    PolyMap g = PolyMap::identity(vars_.size());
    std::vector<bool> seen(vars_.size(), false);
    for (std::size_t k = 0; k < r.targets.size(); ++k) {
      const auto& [name, pos] = r.targets[k];
      std::size_t idx = index_of(name);
      if (seen[idx])
        throw SyntaxError("variable '" + name + "' assigned twice in one tuple", pos.first,
                          pos.second);
      seen[idx] = true;
      g.images[idx] = lower_expr(r.values[k]);
    }
    return g;
  }

  Polynomial lower_expr(const RExpr& e) const {
    switch (e.kind) {
      case RExpr::Kind::Num:
        return Polynomial::constant(vars_.size(), Rational(e.num));
      case RExpr::Kind::Var:
        return Polynomial::variable(vars_.size(), index_of(e.var));
      case RExpr::Kind::Add:
        return lower_expr(e.kids[0]) + lower_expr(e.kids[1]);
      case RExpr::Kind::Sub:
        return lower_expr(e.kids[0]) - lower_expr(e.kids[1]);
      case RExpr::Kind::Mul:
        return lower_expr(e.kids[0]) * lower_expr(e.kids[1]);
      case RExpr::Kind::Neg:
        return -lower_expr(e.kids[0]);
      case RExpr::Kind::Pow:
        return lower_expr(e.kids[0]).pow(e.exponent);
      case RExpr::Kind::Div: {
        Polynomial lhs = lower_expr(e.kids[0]);
        Polynomial rhs = lower_expr(e.kids[1]);
        if (!rhs.is_constant())
          throw SyntaxError("division by a non-constant expression", e.line, e.col);
        Rational d = rhs.constant_value();
        if (d == 0) throw SyntaxError("division by zero", e.line, e.col);
        return lhs * (Rational(1) / d);
      }
    }
    throw std::logic_error("unreachable expression kind");
  }

  const std::vector<std::string>& vars_;
};

}  // namespace

Program parse(const std::string& text) {
  Lexer lexer(text);
  Parser parser(lexer.lex());
  std::vector<std::string> vars;
  RInstr raw = parser.parse_program(vars);
  Program p;
  p.vars = std::move(vars);
  p.body = Lowerer(p.vars).lower(raw);
  return p;
}

namespace {

void flatten_seq(const Instr& n, std::vector<const Instr*>& out) {
  if (n.kind == Instr::Kind::Seq) {
    flatten_seq(n.children[0], out);
    flatten_seq(n.children[1], out);
  } else {
    out.push_back(&n);
  }
}

void print_instr(const Instr& n, const std::vector<std::string>& vars, int indent,
                 bool brace_or, std::string& out) {
  std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  switch (n.kind) {
    case Instr::Kind::Assign: {
      out += pad + "(";
      for (std::size_t i = 0; i < vars.size(); ++i) {
        if (i) out += ",";
        out += vars[i];
      }
      out += ") := (";
      for (std::size_t i = 0; i < n.assign.images.size(); ++i) {
        if (i) out += ", ";
        out += n.assign.images[i].str(vars);
      }
      out += ")";
      break;
    }
    case Instr::Kind::Seq: {
      std::vector<const Instr*> stmts;
      flatten_seq(n, stmts);
      for (std::size_t i = 0; i < stmts.size(); ++i) {
        if (i) out += ";\n";
        // An OR alternative chain inside a sequence needs explicit grouping.
        bool needs_brace = stmts[i]->kind == Instr::Kind::Or && stmts.size() > 1;
        print_instr(*stmts[i], vars, indent, needs_brace, out);
      }
      break;
    }
    case Instr::Kind::Or: {
      if (brace_or) out += pad + "{\n";
      int inner = brace_or ? indent + 1 : indent;
      print_instr(n.children[0], vars, inner, true, out);
      out += "\n" + std::string(static_cast<std::size_t>(inner) * 2, ' ') + "OR\n";
      print_instr(n.children[1], vars, inner, true, out);
      if (brace_or) out += "\n" + pad + "}";
      break;
    }
    case Instr::Kind::While: {
      out += pad + "while (*) do\n";
      print_instr(n.children[0], vars, indent + 1, false, out);
      out += "\n" + pad + "done";
      break;
    }
  }
}

}  // namespace

std::string pretty_print(const Program& p) {
  std::string out;
  print_instr(p.body, p.vars, 0, false, out);
  out += "\n";
  return out;
}

const Instr& Program::loop() const {
  std::vector<const Instr*> stmts;
  flatten_seq(body, stmts);
  const Instr* found = nullptr;
  for (const Instr* s : stmts) {
    if (s->kind == Instr::Kind::While) {
      if (found) throw SyntaxError("analysis requires exactly one loop", 0, 0);
      found = s;
    } else if (s->kind == Instr::Kind::Or) {
      // A while under OR would make the loop itself non-deterministic.
      std::vector<const Instr*> stack{s};
      while (!stack.empty()) {
        const Instr* n = stack.back();
        stack.pop_back();
        if (n->kind == Instr::Kind::While)
          throw SyntaxError("a loop under OR is not supported", 0, 0);
        for (const auto& c : n->children) stack.push_back(&c);
      }
    }
  }
  if (!found) throw SyntaxError("program contains no loop", 0, 0);
  return *found;
}

PolyMap Program::prefix_map() const {
  std::vector<const Instr*> stmts;
  flatten_seq(body, stmts);
  PolyMap acc = PolyMap::identity(vars.size());
  for (const Instr* s : stmts) {
    if (s->kind == Instr::Kind::While) break;
    if (s->kind != Instr::Kind::Assign)
      throw SyntaxError("only assignments may precede the loop", 0, 0);
    acc = s->assign.after(acc);
  }
  return acc;
}

namespace {

std::vector<PolyMap> fold_bodies(const Instr& n) {
  switch (n.kind) {
    case Instr::Kind::Assign:
      return {n.assign};
    case Instr::Kind::Or: {
      std::vector<PolyMap> out = fold_bodies(n.children[0]);
      std::vector<PolyMap> right = fold_bodies(n.children[1]);
      out.insert(out.end(), right.begin(), right.end());
      return out;
    }
    case Instr::Kind::Seq: {
      std::vector<PolyMap> left = fold_bodies(n.children[0]);
      std::vector<PolyMap> right = fold_bodies(n.children[1]);
      std::vector<PolyMap> out;
      out.reserve(left.size() * right.size());
      for (const auto& l : left)
        for (const auto& r : right) out.push_back(r.after(l));
      return out;
    }
    case Instr::Kind::While:
      throw std::logic_error("nested loop survived parsing");
  }
  throw std::logic_error("unreachable instruction kind");
}

}  // namespace

std::vector<PolyMap> Program::loop_bodies() const { return fold_bodies(loop().children[0]); }

Trace run(const Program& p, const State& init, std::size_t iters,
          const std::vector<std::size_t>& choices) {
  if (init.size() != p.vars.size())
    throw std::invalid_argument("initial state arity does not match program variables");
  if (choices.size() < iters) throw std::invalid_argument("fewer choices than iterations");
  std::vector<PolyMap> bodies = p.loop_bodies();
  Trace t;
  t.states.push_back(p.prefix_map().apply(init));
  for (std::size_t k = 0; k < iters; ++k) {
    std::size_t c = choices[k];
    if (c >= bodies.size()) throw std::out_of_range("body choice out of range");
    t.states.push_back(bodies[c].apply(t.states.back()));
  }
  return t;
}

}  // namespace polyinv
