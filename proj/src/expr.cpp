// Copyright 2026 The Hyra Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "hyra/expr.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <system_error>
#include <tuple>

#include "hyra/error.hpp"

namespace hyra {

namespace {

enum class Tok {
  End,
  Number,
  Ident,
  Prime,
  Plus,
  Minus,
  Star,
  Slash,
  LParen,
  RParen,
  And,
  Rel,
  Assign,
};

struct Token {
  Tok type = Tok::End;
  std::size_t pos = 0;
  std::string text;
  double number = 0.0;
  Relation relation = Relation::LessEq;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      Token t;
      t.pos = i_;
      if (i_ >= text_.size()) {
        out.push_back(t);
        return out;
      }
      const char ch = text_[i_];
      if (std::isdigit(static_cast<unsigned char>(ch)) ||
          (ch == '.' && i_ + 1 < text_.size() &&
           std::isdigit(static_cast<unsigned char>(text_[i_ + 1])))) {
        lex_number(t);
      } else if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
        std::size_t j = i_;
        while (j < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[j])) || text_[j] == '_'))
          ++j;
        t.type = Tok::Ident;
        t.text = std::string(text_.substr(i_, j - i_));
        i_ = j;
      } else {
        lex_symbol(t);
      }
      out.push_back(std::move(t));
    }
  }

 private:
  void skip_space() {
    while (i_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[i_]))) ++i_;
  }

  void lex_number(Token& t) {
    std::size_t j = i_;
    auto digits = [&] {
      while (j < text_.size() && std::isdigit(static_cast<unsigned char>(text_[j]))) ++j;
    };
    digits();
    if (j < text_.size() && text_[j] == '.') {
      ++j;
      digits();
    }
    if (j < text_.size() && (text_[j] == 'e' || text_[j] == 'E')) {
      std::size_t k = j + 1;
      if (k < text_.size() && (text_[k] == '+' || text_[k] == '-')) ++k;
      if (k < text_.size() && std::isdigit(static_cast<unsigned char>(text_[k]))) {
        j = k;
        digits();
      }
    }
    std::string_view lit = text_.substr(i_, j - i_);
    // from_chars rejects a leading '+' in the exponent only in some library
    // versions; normalise it away.
    std::string buf(lit);
    if (auto e = buf.find_first_of("eE"); e != std::string::npos && e + 1 < buf.size() &&
                                          buf[e + 1] == '+')
      buf.erase(e + 1, 1);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(buf.data(), buf.data() + buf.size(), v);
    if (ec != std::errc() || ptr != buf.data() + buf.size())
      throw Error(ErrorKind::SyntaxError, "malformed number '" + std::string(lit) + "'", i_);
    t.type = Tok::Number;
    t.number = v;
    t.text = std::string(lit);
    i_ = j;
  }

  void lex_symbol(Token& t) {
    auto next = [&](std::size_t k) { return i_ + k < text_.size() ? text_[i_ + k] : '\0'; };
    const char ch = text_[i_];
    std::size_t len = 1;
    switch (ch) {
      case '\'': t.type = Tok::Prime; break;
      case '+': t.type = Tok::Plus; break;
      case '-': t.type = Tok::Minus; break;
      case '*': t.type = Tok::Star; break;
      case '/': t.type = Tok::Slash; break;
      case '(': t.type = Tok::LParen; break;
      case ')': t.type = Tok::RParen; break;
      case '&':
        t.type = Tok::And;
        if (next(1) == '&') len = 2;
        break;
      case '=':
        t.type = Tok::Rel;
        t.relation = Relation::Equal;
        if (next(1) == '=') len = 2;
        break;
      case '<':
        t.type = Tok::Rel;
        t.relation = next(1) == '=' ? Relation::LessEq : Relation::Less;
        if (next(1) == '=') len = 2;
        break;
      case '>':
        t.type = Tok::Rel;
        t.relation = next(1) == '=' ? Relation::GreaterEq : Relation::Greater;
        if (next(1) == '=') len = 2;
        break;
      case ':':
        if (next(1) == '=') {
          t.type = Tok::Assign;
          len = 2;
          break;
        }
        [[fallthrough]];
      default:
        throw Error(ErrorKind::SyntaxError, std::string("unexpected character '") + ch + "'", i_);
    }
    t.text = std::string(text_.substr(i_, len));
    i_ += len;
  }

  std::string_view text_;
  std::size_t i_ = 0;
};

ExprNode make(NodeKind kind, std::size_t pos) {
  ExprNode n;
  n.kind = kind;
  n.position = pos;
  return n;
}

class Parser {
 public:
  Parser(std::vector<Token> tokens, const VariableTable& table)
      : toks_(std::move(tokens)), table_(table) {}

  ExprNode parse_all() {
    if (peek().type == Tok::End) return make(NodeKind::Conjunction, 0);
    ExprNode root = conjunction();
    if (peek().type != Tok::End) fail("unexpected '" + peek().text + "'");
    return root;
  }

 private:
  const Token& peek() const { return toks_[k_]; }
  const Token& take() { return toks_[k_ < toks_.size() - 1 ? k_++ : k_]; }

  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorKind::SyntaxError, msg, peek().pos);
  }

  void expect(Tok type, const char* what) {
    if (peek().type != type) {
      if (peek().type == Tok::End) fail(std::string("expected ") + what + " before end of input");
      fail(std::string("expected ") + what + ", found '" + peek().text + "'");
    }
    take();
  }

  ExprNode conjunction() {
    ExprNode first = comparison();
    if (peek().type != Tok::And) return first;
    ExprNode conj = make(NodeKind::Conjunction, first.position);
    append_conjunct(conj, std::move(first));
    while (peek().type == Tok::And) {
      take();
      append_conjunct(conj, comparison());
    }
    return conj;
  }

  static void append_conjunct(ExprNode& conj, ExprNode item) {
    if (item.kind == NodeKind::Conjunction) {
      for (auto& c : item.children) conj.children.push_back(std::move(c));
    } else {
      conj.children.push_back(std::move(item));
    }
  }

  ExprNode comparison() {
    ExprNode lhs = sum();
    if (peek().type != Tok::Rel && peek().type != Tok::Assign) return lhs;
    std::vector<ExprNode> parts;
    while (peek().type == Tok::Rel || peek().type == Tok::Assign) {
      const Token op = take();
      ExprNode rhs = sum();
      ExprNode cmp = make(NodeKind::Compare, op.pos);
      cmp.relation = op.type == Tok::Assign ? Relation::Equal : op.relation;
      cmp.assignment = op.type == Tok::Assign;
      if (cmp.assignment && !parts.empty())
        throw Error(ErrorKind::SyntaxError, "assignment cannot be chained", op.pos);
      cmp.children.push_back(lhs);
      cmp.children.push_back(rhs);
      parts.push_back(std::move(cmp));
      lhs = std::move(rhs);
    }
    if (parts.size() == 1) return std::move(parts.front());
    ExprNode conj = make(NodeKind::Conjunction, parts.front().position);
    conj.children = std::move(parts);
    return conj;
  }

  ExprNode sum() {
    ExprNode lhs = product();
    while (peek().type == Tok::Plus || peek().type == Tok::Minus) {
      const Token op = take();
      ExprNode node = make(op.type == Tok::Plus ? NodeKind::Add : NodeKind::Sub, op.pos);
      node.children.push_back(std::move(lhs));
      node.children.push_back(product());
      lhs = std::move(node);
    }
    return lhs;
  }

  ExprNode product() {
    ExprNode lhs = unary();
    while (peek().type == Tok::Star || peek().type == Tok::Slash) {
      const Token op = take();
      ExprNode node = make(op.type == Tok::Star ? NodeKind::Mul : NodeKind::Div, op.pos);
      node.children.push_back(std::move(lhs));
      node.children.push_back(unary());
      lhs = std::move(node);
    }
    return lhs;
  }

  ExprNode unary() {
    if (peek().type == Tok::Minus) {
      const Token op = take();
      ExprNode node = make(NodeKind::Negate, op.pos);
      node.children.push_back(unary());
      return node;
    }
    if (peek().type == Tok::Plus) {
      take();
      return unary();
    }
    return primary();
  }

  ExprNode primary() {
    const Token& t = peek();
    switch (t.type) {
      case Tok::Number: {
        ExprNode n = make(NodeKind::Number, t.pos);
        n.number = t.number;
        take();
        return n;
      }
      case Tok::Ident:
        return identifier();
      case Tok::LParen: {
        take();
        ExprNode inner = conjunction();
        expect(Tok::RParen, "')'");
        return inner;
      }
      case Tok::End:
        fail("unexpected end of input");
      default:
        fail("unexpected '" + t.text + "'");
    }
  }

  ExprNode identifier() {
    const Token t = take();
    if (t.text == "true") return make(NodeKind::Conjunction, t.pos);
    if (t.text == "loc" && peek().type == Tok::LParen) {
      take();
      if (peek().type == Tok::Ident) take();
      expect(Tok::RParen, "')'");
      if (peek().type != Tok::Rel || peek().relation != Relation::Equal)
        fail("expected '==' after loc()");
      take();
      if (peek().type != Tok::Ident) fail("expected a location name");
      ExprNode n = make(NodeKind::LocationRef, t.pos);
      n.name = take().text;
      return n;
    }
    const bool known = table_.state_index(t.text) || table_.input_index(t.text) ||
                       table_.has_constant(t.text);
    if (!known) throw Error(ErrorKind::UnknownIdentifier, "unknown identifier '" + t.text + "'", t.pos);
    ExprNode n = make(NodeKind::Identifier, t.pos);
    n.name = t.text;
    if (peek().type == Tok::Prime) {
      take();
      n.primed = true;
    }
    return n;
  }

  std::vector<Token> toks_;
  std::size_t k_ = 0;
  const VariableTable& table_;
};

AffineForm zero_form(const VariableTable& table) {
  AffineForm f;
  f.state.assign(table.num_states(), Coef{});
  f.input.assign(table.num_inputs(), Coef{});
  return f;
}

bool is_constant_form(const AffineForm& f) { return !f.has_states() && !f.has_inputs(); }

void add_into(AffineForm& acc, const AffineForm& other, double sign) {
  for (std::size_t i = 0; i < acc.state.size(); ++i) acc.state[i] += other.state[i].scaled(sign);
  for (std::size_t i = 0; i < acc.input.size(); ++i) acc.input[i] += other.input[i].scaled(sign);
  acc.constant += other.constant.scaled(sign);
}

// c * f where c is a scalar Coef; a product of two symbolic scalars is not affine.
AffineForm scale_form(const AffineForm& f, const Coef& c, std::size_t pos) {
  AffineForm out = f;
  auto mul = [&](const Coef& a) -> Coef {
    if (a.is_zero() || c.is_zero()) return Coef{};
    if (c.is_number()) return a.scaled(c.value);
    if (a.is_number()) return c.scaled(a.value);
    throw Error(ErrorKind::NonlinearUnsupported, "product of two constants is not supported", pos);
  };
  for (auto& s : out.state) s = mul(s);
  for (auto& s : out.input) s = mul(s);
  out.constant = mul(out.constant);
  return out;
}

AffineForm linearize_impl(const ExprNode& node, const VariableTable& table) {
  switch (node.kind) {
    case NodeKind::Number: {
      AffineForm f = zero_form(table);
      f.constant = Coef(node.number);
      return f;
    }
    case NodeKind::Identifier: {
      if (node.primed)
        throw Error(ErrorKind::SyntaxError,
                    "primed variable '" + node.name + "' only allowed on the left of a flow or assignment",
                    node.position);
      AffineForm f = zero_form(table);
      if (auto i = table.state_index(node.name)) {
        f.state[*i] = Coef(1.0);
      } else if (auto j = table.input_index(node.name)) {
        f.input[*j] = Coef(1.0);
      } else if (table.has_constant(node.name)) {
        f.constant.params[node.name] = 1.0;
      } else {
        throw Error(ErrorKind::UnknownIdentifier, "unknown identifier '" + node.name + "'",
                    node.position);
      }
      return f;
    }
    case NodeKind::Negate: {
      AffineForm f = linearize_impl(node.children[0], table);
      return scale_form(f, Coef(-1.0), node.position);
    }
    case NodeKind::Add:
    case NodeKind::Sub: {
      AffineForm f = linearize_impl(node.children[0], table);
      add_into(f, linearize_impl(node.children[1], table), node.kind == NodeKind::Add ? 1.0 : -1.0);
      return f;
    }
    case NodeKind::Mul: {
      AffineForm a = linearize_impl(node.children[0], table);
      AffineForm b = linearize_impl(node.children[1], table);
      if (is_constant_form(a)) return scale_form(b, a.constant, node.position);
      if (is_constant_form(b)) return scale_form(a, b.constant, node.position);
      throw Error(ErrorKind::NonlinearUnsupported,
                  "product of two variable terms is not affine", node.position);
    }
    case NodeKind::Div: {
      AffineForm a = linearize_impl(node.children[0], table);
      AffineForm b = linearize_impl(node.children[1], table);
      if (!is_constant_form(b) || !b.constant.is_number())
        throw Error(ErrorKind::NonlinearUnsupported, "division by a non-numeric term",
                    node.position);
      if (b.constant.value == 0.0)
        throw Error(ErrorKind::SyntaxError, "division by zero", node.position);
      return scale_form(a, Coef(1.0 / b.constant.value), node.position);
    }
    case NodeKind::Compare:
    case NodeKind::Conjunction:
    case NodeKind::LocationRef:
      break;
  }
  throw Error(ErrorKind::SyntaxError, "expected an arithmetic expression", node.position);
}

void check_linear(const ExprNode& node, const VariableTable& table) {
  switch (node.kind) {
    case NodeKind::Conjunction:
      for (const auto& c : node.children) check_linear(c, table);
      return;
    case NodeKind::Compare: {
      const ExprNode& lhs = node.children[0];
      if (!(lhs.kind == NodeKind::Identifier && lhs.primed)) {
        if (node.assignment && lhs.kind != NodeKind::Identifier)
          throw Error(ErrorKind::SyntaxError, "left side of ':=' must be a variable", lhs.position);
        if (!node.assignment) linearize_impl(lhs, table);
      }
      linearize_impl(node.children[1], table);
      return;
    }
    case NodeKind::LocationRef:
      return;
    default:
      linearize_impl(node, table);
  }
}

LinearConstraint make_constraint(const AffineForm& e, Relation rel) {
  const std::size_t n = e.state.size();
  LinearConstraint c;
  c.coeffs = Vector::Zero(static_cast<Eigen::Index>(n));
  c.relation = rel;
  for (std::size_t i = 0; i < n; ++i) {
    c.coeffs(static_cast<Eigen::Index>(i)) = e.state[i].value;
    for (const auto& [name, f] : e.state[i].params) c.params.push_back({0, i, name, f});
  }
  c.bound = 0.0 - e.constant.value;
  for (const auto& [name, f] : e.constant.params) c.params.push_back({0, n, name, -f});
  return c;
}

bool holds_constant(double v, Relation rel) {
  switch (rel) {
    case Relation::LessEq: return v <= 0.0;
    case Relation::Less: return v < 0.0;
    case Relation::Equal: return v == 0.0;
    case Relation::GreaterEq: return v >= 0.0;
    case Relation::Greater: return v > 0.0;
  }
  return false;
}

Relation flip(Relation rel) {
  switch (rel) {
    case Relation::LessEq: return Relation::GreaterEq;
    case Relation::Less: return Relation::Greater;
    case Relation::GreaterEq: return Relation::LessEq;
    case Relation::Greater: return Relation::Less;
    case Relation::Equal: return Relation::Equal;
  }
  return rel;
}

void collect_conjuncts(const ExprNode& node, std::vector<const ExprNode*>& out) {
  if (node.kind == NodeKind::Conjunction) {
    for (const auto& c : node.children) collect_conjuncts(c, out);
  } else {
    out.push_back(&node);
  }
}

// Resolves the primed (or `:=`) target of a flow / assignment conjunct.
std::size_t target_state(const ExprNode& cmp, const VariableTable& table, bool allow_unprimed) {
  if (cmp.kind != NodeKind::Compare || cmp.relation != Relation::Equal)
    throw Error(ErrorKind::SyntaxError, "expected an equation of the form x' == ...", cmp.position);
  const ExprNode& lhs = cmp.children[0];
  if (lhs.kind != NodeKind::Identifier || (!lhs.primed && !(allow_unprimed && cmp.assignment)))
    throw Error(ErrorKind::SyntaxError, "left side must be a primed state variable",
                lhs.position);
  auto i = table.state_index(lhs.name);
  if (!i)
    throw Error(ErrorKind::SyntaxError, "'" + lhs.name + "' is not a state variable",
                lhs.position);
  return *i;
}

double format_guard(double v) { return v == 0.0 ? 0.0 : v; }  // folds -0 into 0

std::string term_text(double factor, const std::string& symbol) {
  if (factor == 1.0) return symbol;
  if (factor == -1.0) return "-" + symbol;
  return format_number(factor) + "*" + symbol;
}

void append_term(std::string& out, const std::string& term) {
  if (out.empty()) {
    out = term;
  } else if (term.front() == '-') {
    out += " - " + term.substr(1);
  } else {
    out += " + " + term;
  }
}

}  // namespace

bool AffineForm::has_inputs() const {
  return std::any_of(input.begin(), input.end(), [](const Coef& c) { return !c.is_zero(); });
}

bool AffineForm::has_states() const {
  return std::any_of(state.begin(), state.end(), [](const Coef& c) { return !c.is_zero(); });
}

ExpressionAst parse_expression(std::string_view text, const VariableTable& table) {
  Parser parser(Lexer(text).run(), table);
  ExprNode root = parser.parse_all();
  check_linear(root, table);
  return root;
}

AffineForm linearize(const ExprNode& node, const VariableTable& table) {
  return linearize_impl(node, table);
}

Condition to_condition(const ExprNode& ast, const VariableTable& table,
                       std::vector<InputBound>* input_bounds) {
  std::vector<const ExprNode*> items;
  collect_conjuncts(ast, items);
  Condition cond;
  for (const ExprNode* item : items) {
    if (item->kind != NodeKind::Compare || item->assignment)
      throw Error(ErrorKind::SyntaxError, "expected a comparison", item->position);
    AffineForm e = linearize_impl(item->children[0], table);
    add_into(e, linearize_impl(item->children[1], table), -1.0);
    if (e.has_inputs()) {
      const auto nz = std::count_if(e.input.begin(), e.input.end(),
                                    [](const Coef& c) { return !c.is_zero(); });
      if (!input_bounds || e.has_states() || nz != 1)
        throw Error(ErrorKind::UnsupportedFeature,
                    "constraints may bound a single input variable only", item->position);
      const auto j = static_cast<std::size_t>(
          std::find_if(e.input.begin(), e.input.end(), [](const Coef& c) { return !c.is_zero(); }) -
          e.input.begin());
      const Coef& a = e.input[j];
      if (!a.is_number() || !e.constant.is_number())
        throw Error(ErrorKind::UnsupportedFeature, "input bounds must be numeric", item->position);
      // a*u + k rel 0  ->  u rel' -k/a
      const Relation rel = a.value < 0 ? flip(item->relation) : item->relation;
      input_bounds->push_back({j, rel, -e.constant.value / a.value});
      continue;
    }
    LinearConstraint c = make_constraint(e, item->relation);
    if (c.is_trivial() && c.params.empty()) {
      if (holds_constant(-c.bound, c.relation)) continue;  // constant-true conjunct
    }
    cond.constraints.push_back(std::move(c));
  }
  return cond;
}

Condition parse_condition(std::string_view text, const VariableTable& table,
                          std::vector<InputBound>* input_bounds) {
  return to_condition(parse_expression(text, table), table, input_bounds);
}

AffineDynamics parse_flow(std::string_view text, const VariableTable& table) {
  const ExprNode ast = parse_expression(text, table);
  std::vector<const ExprNode*> items;
  collect_conjuncts(ast, items);
  const std::size_t n = table.num_states();
  const std::size_t m = table.num_inputs();
  AffineDynamics d = AffineDynamics::zero(n, m);
  std::vector<bool> seen(n, false);
  for (const ExprNode* item : items) {
    const std::size_t row = target_state(*item, table, false);
    if (item->assignment)
      throw Error(ErrorKind::SyntaxError, "flows use '==', not ':='", item->position);
    if (seen[row])
      throw Error(ErrorKind::SyntaxError, "second equation for '" + table.state_vars[row] + "'",
                  item->position);
    seen[row] = true;
    const AffineForm rhs = linearize_impl(item->children[1], table);
    const auto r = static_cast<Eigen::Index>(row);
    for (std::size_t i = 0; i < n; ++i) {
      d.A(r, static_cast<Eigen::Index>(i)) = rhs.state[i].value;
      for (const auto& [name, f] : rhs.state[i].params) d.params.push_back({row, i, name, f});
    }
    for (std::size_t j = 0; j < m; ++j) {
      d.B(r, static_cast<Eigen::Index>(j)) = rhs.input[j].value;
      for (const auto& [name, f] : rhs.input[j].params) d.params.push_back({row, n + j, name, f});
    }
    d.c(r) = rhs.constant.value;
    for (const auto& [name, f] : rhs.constant.params) d.params.push_back({row, n + m, name, f});
  }
  std::sort(d.params.begin(), d.params.end(), [](const ParamTerm& a, const ParamTerm& b) {
    return std::tie(a.row, a.col, a.name) < std::tie(b.row, b.col, b.name);
  });
  return d;
}

ResetMap parse_assignment(std::string_view text, const VariableTable& table) {
  const ExprNode ast = parse_expression(text, table);
  std::vector<const ExprNode*> items;
  collect_conjuncts(ast, items);
  const std::size_t n = table.num_states();
  ResetMap reset = ResetMap::identity(n);
  std::vector<bool> seen(n, false);
  for (const ExprNode* item : items) {
    const std::size_t row = target_state(*item, table, true);
    if (seen[row])
      throw Error(ErrorKind::SyntaxError, "'" + table.state_vars[row] + "' assigned twice",
                  item->position);
    seen[row] = true;
    const AffineForm rhs = linearize_impl(item->children[1], table);
    if (rhs.has_inputs())
      throw Error(ErrorKind::UnsupportedFeature, "resets may not read input variables",
                  item->position);
    const auto r = static_cast<Eigen::Index>(row);
    for (std::size_t i = 0; i < n; ++i) {
      reset.R(r, static_cast<Eigen::Index>(i)) = rhs.state[i].value;
      for (const auto& [name, f] : rhs.state[i].params) reset.params.push_back({row, i, name, f});
    }
    reset.r(r) = rhs.constant.value;
    for (const auto& [name, f] : rhs.constant.params) reset.params.push_back({row, n, name, f});
  }
  std::sort(reset.params.begin(), reset.params.end(), [](const ParamTerm& a, const ParamTerm& b) {
    return std::tie(a.row, a.col, a.name) < std::tie(b.row, b.col, b.name);
  });
  return reset;
}

std::string format_number(double value) {
  value = format_guard(value);
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) return "nan";
  return std::string(buf, ptr);
}

std::string format_affine(const std::vector<Coef>& coeffs, const std::vector<std::string>& names,
                          const Coef& constant) {
  std::string out;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    const Coef& c = coeffs[i];
    if (c.value != 0.0) append_term(out, term_text(c.value, names[i]));
    for (const auto& [p, f] : c.params) append_term(out, term_text(f, p + "*" + names[i]));
  }
  if (constant.value != 0.0) append_term(out, format_number(constant.value));
  for (const auto& [p, f] : constant.params) append_term(out, term_text(f, p));
  return out.empty() ? "0" : out;
}

std::string format_constraint(const LinearConstraint& c, const std::vector<std::string>& names,
                              EqualityStyle style) {
  std::vector<Coef> coeffs;
  coeffs.reserve(names.size());
  for (std::size_t i = 0; i < names.size(); ++i) coeffs.push_back(c.coeff(i));
  std::string rel(to_string(c.relation));
  if (c.relation == Relation::Equal && style == EqualityStyle::SingleEquals) rel = "=";
  return format_affine(coeffs, names, Coef{}) + " " + rel + " " +
         format_affine({}, {}, c.bound_coef());
}

std::string format_condition(const Condition& cond, const std::vector<std::string>& names,
                             EqualityStyle style) {
  std::string out;
  for (const auto& c : cond.constraints) {
    if (!out.empty()) out += " & ";
    out += format_constraint(c, names, style);
  }
  return out;
}

}  // namespace hyra
