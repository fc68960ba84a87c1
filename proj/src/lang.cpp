#include "hyperflow/lang.hpp"

#include <cctype>
#include <map>
#include <set>
#include <sstream>

namespace hyperflow {

std::vector<VarDecl> SpaceDecl::visible() const {
  std::vector<VarDecl> out;
  for (const auto& v : vars)
    if (!v.hidden) out.push_back(v);
  return out;
}

std::vector<VarDecl> SpaceDecl::hidden() const {
  std::vector<VarDecl> out;
  for (const auto& v : vars)
    if (v.hidden) out.push_back(v);
  return out;
}

ExprPtr expr_bool(bool b) {
  auto e = std::make_shared<Expr>();
  e->op = Expr::Op::BoolLit;
  e->bval = b;
  return e;
}

ExprPtr expr_int(long i) {
  auto e = std::make_shared<Expr>();
  e->op = Expr::Op::IntLit;
  e->ival = i;
  return e;
}

ExprPtr expr_rat(const Rat& r) {
  auto e = std::make_shared<Expr>();
  e->op = Expr::Op::RatLit;
  e->rval = r;
  return e;
}

bool expr_is_constant(const ExprPtr& e) {
  if (!e) return true;
  if (e->op == Expr::Op::Var) return false;
  for (const auto& k : e->kids)
    if (!expr_is_constant(k)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Lexer

namespace {

enum class Tok {
  End, Ident, Int,
  Semi, Colon, Comma, Assign, Choose, At, DotDot,
  LParen, RParen, LBrace, RBrace, LLBrace, RRBrace,
  LBrack, RBrack, LLBrack, RRBrack,
  Plus, Minus, Star, Slash,
  Eq, Ne, Lt, Le, Gt, Ge,
};

struct Token {
  Tok t;
  std::string text;
  long num = 0;
  int line = 1, col = 1;
};

bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

class Lexer {
 public:
  explicit Lexer(const std::string& src) : src_(src) { advance(); }

  const Token& peek() const { return cur_; }
  Token take() {
    Token t = cur_;
    advance();
    return t;
  }

 private:
  void advance() {
    skip_ws();
    cur_.line = line_;
    cur_.col = col_;
    if (pos_ >= src_.size()) {
      cur_.t = Tok::End;
      cur_.text.clear();
      return;
    }
    char c = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t start = pos_;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) bump();
      cur_.t = Tok::Int;
      cur_.text = src_.substr(start, pos_ - start);
      cur_.num = std::stol(cur_.text);
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos_;
      while (pos_ < src_.size() && ident_char(src_[pos_])) bump();
      cur_.t = Tok::Ident;
      cur_.text = src_.substr(start, pos_ - start);
      return;
    }
    auto two = [&](char a, char b) {
      return c == a && pos_ + 1 < src_.size() && src_[pos_ + 1] == b;
    };
    if (two('{', '{')) { bump(); bump(); cur_.t = Tok::LLBrace; return; }
    if (two('}', '}')) { bump(); bump(); cur_.t = Tok::RRBrace; return; }
    if (two('[', '[')) { bump(); bump(); cur_.t = Tok::LLBrack; return; }
    if (two(']', ']')) { bump(); bump(); cur_.t = Tok::RRBrack; return; }
    if (two('.', '.')) { bump(); bump(); cur_.t = Tok::DotDot; return; }
    if (two(':', '=')) { bump(); bump(); cur_.t = Tok::Assign; return; }
    if (c == ':' && pos_ + 2 < src_.size() && src_[pos_ + 1] == 'i' && src_[pos_ + 2] == 'n' &&
        (pos_ + 3 >= src_.size() || !ident_char(src_[pos_ + 3]))) {
      bump(); bump(); bump();
      cur_.t = Tok::Choose;
      return;
    }
    if (two('<', '=')) { bump(); bump(); cur_.t = Tok::Le; return; }
    if (two('>', '=')) { bump(); bump(); cur_.t = Tok::Ge; return; }
    if (two('!', '=')) { bump(); bump(); cur_.t = Tok::Ne; return; }
    bump();
    switch (c) {
      case ';': cur_.t = Tok::Semi; return;
      case ':': cur_.t = Tok::Colon; return;
      case ',': cur_.t = Tok::Comma; return;
      case '@': cur_.t = Tok::At; return;
      case '(': cur_.t = Tok::LParen; return;
      case ')': cur_.t = Tok::RParen; return;
      case '{': cur_.t = Tok::LBrace; return;
      case '}': cur_.t = Tok::RBrace; return;
      case '[': cur_.t = Tok::LBrack; return;
      case ']': cur_.t = Tok::RBrack; return;
      case '+': cur_.t = Tok::Plus; return;
      case '-': cur_.t = Tok::Minus; return;
      case '*': cur_.t = Tok::Star; return;
      case '/': cur_.t = Tok::Slash; return;
      case '=': cur_.t = Tok::Eq; return;
      case '<': cur_.t = Tok::Lt; return;
      case '>': cur_.t = Tok::Gt; return;
      default:
        throw parse_error(std::string("unexpected character '") + c + "'", line_, col_ - 1);
    }
  }

  void skip_ws() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') bump();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        bump();
      } else {
        break;
      }
    }
  }

  void bump() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  const std::string& src_;
  size_t pos_ = 0;
  int line_ = 1, col_ = 1;
  Token cur_;
};

const std::set<std::string> kKeywords = {
    "vis", "hid", "bool", "skip", "abort", "reveal", "if", "then", "else", "fi",
    "while", "do", "od", "uniform", "div", "mod", "and", "or", "not", "true", "false"};

// ---------------------------------------------------------------------------
// Parser

class Parser {
 public:
  explicit Parser(const std::string& src) : lex_(src) {}

  ParsedProgram program() {
    ParsedProgram p;
    while (at_kw("vis") || at_kw("hid")) p.space.vars.push_back(decl());
    push_frame(p.space.vars);
    p.body = stmt();
    expect_end();
    return p;
  }

  StmtPtr stmt_in(const SpaceDecl& space) {
    push_frame(space.vars);
    auto s = stmt();
    expect_end();
    return s;
  }

  Value value_literal() {
    Value v = const_value();
    expect_end();
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) {
    const Token& t = lex_.peek();
    throw parse_error(msg, t.line, t.col);
  }

  bool at(Tok t) const { return lex_.peek().t == t; }
  bool at_kw(const std::string& k) const {
    return lex_.peek().t == Tok::Ident && lex_.peek().text == k;
  }
  Token eat(Tok t, const std::string& what) {
    if (!at(t)) fail("expected " + what);
    return lex_.take();
  }
  void eat_kw(const std::string& k) {
    if (!at_kw(k)) fail("expected '" + k + "'");
    lex_.take();
  }
  void expect_end() {
    if (!at(Tok::End)) fail("unexpected trailing input");
  }

  long signed_int() {
    bool neg = false;
    if (at(Tok::Minus)) {
      lex_.take();
      neg = true;
    }
    Token t = eat(Tok::Int, "integer");
    return neg ? -t.num : t.num;
  }

  VarDecl decl() {
    VarDecl d;
    d.hidden = at_kw("hid");
    lex_.take();
    Token name = eat(Tok::Ident, "variable name");
    if (kKeywords.count(name.text)) fail("keyword used as variable name");
    d.name = name.text;
    eat(Tok::Colon, "':'");
    if (at_kw("bool")) {
      lex_.take();
      d.dom = Domain::booleans();
    } else {
      eat(Tok::LBrace, "'{'");
      if (at(Tok::Int) || at(Tok::Minus)) {
        long lo = signed_int();
        eat(Tok::DotDot, "'..'");
        long hi = signed_int();
        if (hi < lo) fail("empty integer range");
        d.dom = Domain::int_range(lo, hi);
      } else {
        std::vector<std::string> names;
        names.push_back(eat(Tok::Ident, "enumeration symbol").text);
        while (at(Tok::Comma)) {
          lex_.take();
          names.push_back(eat(Tok::Ident, "enumeration symbol").text);
        }
        d.dom = Domain::symbols(names);
      }
      eat(Tok::RBrace, "'}'");
    }
    eat(Tok::Semi, "';'");
    return d;
  }

  // name resolution ---------------------------------------------------------

  void push_frame(const std::vector<VarDecl>& decls) {
    frames_.push_back(decls);
    for (const auto& d : decls)
      for (const auto& v : d.dom.values)
        if (v.is_sym()) symbols_.insert(v.as_sym());
  }
  void pop_frame() { frames_.pop_back(); }

  const VarDecl* find_var(const std::string& name) const {
    for (auto f = frames_.rbegin(); f != frames_.rend(); ++f)
      for (auto d = f->rbegin(); d != f->rend(); ++d)
        if (d->name == name) return &*d;
    return nullptr;
  }

  // statements --------------------------------------------------------------

  StmtPtr make(Stmt::Kind k) {
    auto s = std::make_shared<Stmt>();
    s->kind = k;
    s->line = lex_.peek().line;
    s->col = lex_.peek().col;
    return s;
  }

  StmtPtr stmt() {
    std::vector<StmtPtr> seq;
    seq.push_back(choice());
    while (at(Tok::Semi)) {
      lex_.take();
      seq.push_back(choice());
    }
    if (seq.size() == 1) return seq[0];
    auto s = make(Stmt::Kind::Seq);
    const_cast<Stmt&>(*s).kids = std::move(seq);
    return s;
  }

  StmtPtr choice() {
    StmtPtr left = atom();
    while (at(Tok::LBrack)) {
      lex_.take();
      ExprPtr p = expr();
      eat(Tok::RBrack, "']'");
      StmtPtr right = atom();
      auto s = make(Stmt::Kind::PChoice);
      auto& m = const_cast<Stmt&>(*s);
      m.expr = p;
      m.kids = {left, right};
      left = s;
    }
    return left;
  }

  StmtPtr atom() {
    if (at_kw("skip")) {
      lex_.take();
      return make(Stmt::Kind::Skip);
    }
    if (at_kw("abort")) {
      lex_.take();
      return make(Stmt::Kind::Abort);
    }
    if (at(Tok::LBrace)) {
      auto s = make(Stmt::Kind::Assert);
      lex_.take();
      const_cast<Stmt&>(*s).expr = expr();
      eat(Tok::RBrace, "'}'");
      return s;
    }
    if (at_kw("reveal")) {
      lex_.take();
      if (at_kw("uniform") || at(Tok::LLBrace)) {
        auto s = make(Stmt::Kind::RevealD);
        const_cast<Stmt&>(*s).dexpr = dexpr();
        return s;
      }
      auto s = make(Stmt::Kind::RevealE);
      const_cast<Stmt&>(*s).expr = expr();
      return s;
    }
    if (at_kw("if")) {
      auto s = make(Stmt::Kind::If);
      lex_.take();
      auto& m = const_cast<Stmt&>(*s);
      m.expr = expr();
      eat_kw("then");
      StmtPtr t = stmt();
      eat_kw("else");
      StmtPtr f = stmt();
      eat_kw("fi");
      m.kids = {t, f};
      return s;
    }
    if (at_kw("while")) {
      auto s = make(Stmt::Kind::While);
      lex_.take();
      auto& m = const_cast<Stmt&>(*s);
      m.expr = expr();
      eat_kw("do");
      m.kids = {stmt()};
      eat_kw("od");
      return s;
    }
    if (at(Tok::LLBrack)) {
      auto s = make(Stmt::Kind::Scope);
      lex_.take();
      auto& m = const_cast<Stmt&>(*s);
      while (at_kw("vis") || at_kw("hid")) m.decls.push_back(decl());
      push_frame(m.decls);
      m.kids = {stmt()};
      pop_frame();
      eat(Tok::RRBrack, "']]'");
      if (m.decls.empty()) return m.kids[0];  // plain grouping
      return s;
    }
    if (at(Tok::Ident) && !kKeywords.count(lex_.peek().text)) {
      Token name = lex_.take();
      const VarDecl* d = find_var(name.text);
      if (!d) throw parse_error("assignment to undeclared variable '" + name.text + "'",
                                name.line, name.col);
      if (at(Tok::Assign)) {
        lex_.take();
        auto s = make(Stmt::Kind::Assign);
        auto& m = const_cast<Stmt&>(*s);
        m.var = name.text;
        m.var_hidden = d->hidden;
        m.expr = expr();
        return s;
      }
      if (at(Tok::Choose)) {
        lex_.take();
        auto s = make(Stmt::Kind::Choose);
        auto& m = const_cast<Stmt&>(*s);
        m.var = name.text;
        m.var_hidden = d->hidden;
        m.dexpr = dexpr();
        return s;
      }
      fail("expected ':=' or ':in' after variable");
    }
    fail("expected statement");
  }

  DExpr dexpr() {
    DExpr d;
    if (at_kw("uniform")) {
      lex_.take();
      d.kind = DExpr::Kind::Uniform;
      eat(Tok::LBrace, "'{'");
      d.elems.push_back(expr());
      while (at(Tok::Comma)) {
        lex_.take();
        d.elems.push_back(expr());
      }
      eat(Tok::RBrace, "'}'");
      return d;
    }
    if (at(Tok::LLBrace)) {
      lex_.take();
      d.kind = DExpr::Kind::Enumerated;
      for (;;) {
        ExprPtr v = expr();
        eat(Tok::At, "'@'");
        ExprPtr w = expr();
        d.weighted.emplace_back(v, w);
        if (!at(Tok::Comma)) break;
        lex_.take();
      }
      eat(Tok::RRBrace, "'}}'");
      return d;
    }
    fail("expected distribution expression");
  }

  // expressions -------------------------------------------------------------

  ExprPtr mk(Expr::Op op, std::vector<ExprPtr> kids = {}) {
    auto e = std::make_shared<Expr>();
    e->op = op;
    e->kids = std::move(kids);
    e->line = lex_.peek().line;
    e->col = lex_.peek().col;
    return e;
  }

  ExprPtr expr() { return or_expr(); }

  ExprPtr or_expr() {
    ExprPtr e = and_expr();
    while (at_kw("or")) {
      lex_.take();
      e = mk(Expr::Op::Or, {e, and_expr()});
    }
    return e;
  }

  ExprPtr and_expr() {
    ExprPtr e = not_expr();
    while (at_kw("and")) {
      lex_.take();
      e = mk(Expr::Op::And, {e, not_expr()});
    }
    return e;
  }

  ExprPtr not_expr() {
    if (at_kw("not")) {
      lex_.take();
      return mk(Expr::Op::Not, {not_expr()});
    }
    return cmp_expr();
  }

  ExprPtr cmp_expr() {
    ExprPtr e = add_expr();
    Expr::Op op;
    if (at(Tok::Eq)) op = Expr::Op::Eq;
    else if (at(Tok::Ne)) op = Expr::Op::Ne;
    else if (at(Tok::Lt)) op = Expr::Op::Lt;
    else if (at(Tok::Le)) op = Expr::Op::Le;
    else if (at(Tok::Gt)) op = Expr::Op::Gt;
    else if (at(Tok::Ge)) op = Expr::Op::Ge;
    else return e;
    lex_.take();
    return mk(op, {e, add_expr()});
  }

  ExprPtr add_expr() {
    ExprPtr e = mul_expr();
    for (;;) {
      if (at(Tok::Plus)) {
        lex_.take();
        e = mk(Expr::Op::Add, {e, mul_expr()});
      } else if (at(Tok::Minus)) {
        lex_.take();
        e = mk(Expr::Op::Sub, {e, mul_expr()});
      } else {
        return e;
      }
    }
  }

  ExprPtr mul_expr() {
    ExprPtr e = unary();
    for (;;) {
      if (at(Tok::Star)) {
        lex_.take();
        e = mk(Expr::Op::Mul, {e, unary()});
      } else if (at(Tok::Slash)) {
        lex_.take();
        e = mk(Expr::Op::Div, {e, unary()});
      } else if (at_kw("div")) {
        lex_.take();
        e = mk(Expr::Op::IntDiv, {e, unary()});
      } else if (at_kw("mod")) {
        lex_.take();
        e = mk(Expr::Op::Mod, {e, unary()});
      } else {
        return e;
      }
    }
  }

  ExprPtr unary() {
    if (at(Tok::Minus)) {
      lex_.take();
      return mk(Expr::Op::Neg, {unary()});
    }
    return primary();
  }

  ExprPtr primary() {
    if (at(Tok::Int)) {
      Token t = lex_.take();
      auto e = expr_int(t.num);
      const_cast<Expr&>(*e).line = t.line;
      const_cast<Expr&>(*e).col = t.col;
      return e;
    }
    if (at_kw("true") || at_kw("false")) {
      Token t = lex_.take();
      return expr_bool(t.text == "true");
    }
    if (at(Tok::LParen)) {
      lex_.take();
      std::vector<ExprPtr> elems;
      elems.push_back(expr());
      while (at(Tok::Comma)) {
        lex_.take();
        elems.push_back(expr());
      }
      eat(Tok::RParen, "')'");
      if (elems.size() == 1) return elems[0];
      return mk(Expr::Op::Tuple, std::move(elems));
    }
    if (at(Tok::Ident) && !kKeywords.count(lex_.peek().text)) {
      Token t = lex_.take();
      auto e = std::make_shared<Expr>();
      e->line = t.line;
      e->col = t.col;
      e->name = t.text;
      if (find_var(t.text)) {
        e->op = Expr::Op::Var;
      } else if (symbols_.count(t.text)) {
        e->op = Expr::Op::SymLit;
      } else {
        throw parse_error("unbound identifier '" + t.text + "'", t.line, t.col);
      }
      return e;
    }
    fail("expected expression");
  }

  Value const_value() {
    if (at(Tok::Int) || at(Tok::Minus)) return Value(signed_int());
    if (at_kw("true")) { lex_.take(); return Value(true); }
    if (at_kw("false")) { lex_.take(); return Value(false); }
    if (at(Tok::LParen)) {
      lex_.take();
      std::vector<Value> elems;
      elems.push_back(const_value());
      while (at(Tok::Comma)) {
        lex_.take();
        elems.push_back(const_value());
      }
      eat(Tok::RParen, "')'");
      if (elems.size() == 1) return elems[0];
      return Value::tuple(std::move(elems));
    }
    if (at(Tok::Ident) && !kKeywords.count(lex_.peek().text))
      return Value::symbol(lex_.take().text);
    fail("expected value literal");
  }

  Lexer lex_;
  std::vector<std::vector<VarDecl>> frames_;
  std::set<std::string> symbols_;
};

}  // namespace

ParsedProgram parse_program(const std::string& text) { return Parser(text).program(); }

StmtPtr parse_stmt_in(const SpaceDecl& space, const std::string& text) {
  return Parser(text).stmt_in(space);
}

Value parse_value(const std::string& text) { return Parser(text).value_literal(); }

// ---------------------------------------------------------------------------
// Printing

namespace {

int prec_of(Expr::Op op) {
  switch (op) {
    case Expr::Op::Or: return 1;
    case Expr::Op::And: return 2;
    case Expr::Op::Not: return 3;
    case Expr::Op::Eq: case Expr::Op::Ne: case Expr::Op::Lt:
    case Expr::Op::Le: case Expr::Op::Gt: case Expr::Op::Ge: return 4;
    case Expr::Op::Add: case Expr::Op::Sub: return 5;
    case Expr::Op::Mul: case Expr::Op::Div:
    case Expr::Op::IntDiv: case Expr::Op::Mod: return 6;
    case Expr::Op::Neg: return 7;
    default: return 8;
  }
}

const char* op_text(Expr::Op op) {
  switch (op) {
    case Expr::Op::Or: return "or";
    case Expr::Op::And: return "and";
    case Expr::Op::Eq: return "=";
    case Expr::Op::Ne: return "!=";
    case Expr::Op::Lt: return "<";
    case Expr::Op::Le: return "<=";
    case Expr::Op::Gt: return ">";
    case Expr::Op::Ge: return ">=";
    case Expr::Op::Add: return "+";
    case Expr::Op::Sub: return "-";
    case Expr::Op::Mul: return "*";
    case Expr::Op::Div: return "/";
    case Expr::Op::IntDiv: return "div";
    case Expr::Op::Mod: return "mod";
    default: return "?";
  }
}

void print_expr_to(std::ostream& out, const ExprPtr& e, int parent_prec) {
  int p = prec_of(e->op);
  bool paren = p < parent_prec;
  switch (e->op) {
    case Expr::Op::BoolLit: out << (e->bval ? "true" : "false"); return;
    case Expr::Op::IntLit: out << e->ival; return;
    case Expr::Op::RatLit: out << rat_str(e->rval); return;
    case Expr::Op::SymLit: out << e->name; return;
    case Expr::Op::Var: out << e->name; return;
    case Expr::Op::Tuple: {
      out << "(";
      for (size_t i = 0; i < e->kids.size(); ++i) {
        if (i) out << ", ";
        print_expr_to(out, e->kids[i], 0);
      }
      out << ")";
      return;
    }
    case Expr::Op::Not:
      if (paren) out << "(";
      out << "not ";
      print_expr_to(out, e->kids[0], p);
      if (paren) out << ")";
      return;
    case Expr::Op::Neg:
      if (paren) out << "(";
      out << "-";
      print_expr_to(out, e->kids[0], p);
      if (paren) out << ")";
      return;
    default:
      if (paren) out << "(";
      print_expr_to(out, e->kids[0], p);
      out << " " << op_text(e->op) << " ";
      // comparisons are non-associative; arithmetic prints left-assoc
      print_expr_to(out, e->kids[1], p + 1);
      if (paren) out << ")";
      return;
  }
}

std::string print_expr(const ExprPtr& e) {
  std::ostringstream out;
  print_expr_to(out, e, 0);
  return out.str();
}

std::string print_dexpr(const DExpr& d) {
  std::ostringstream out;
  switch (d.kind) {
    case DExpr::Kind::Uniform:
      out << "uniform{";
      for (size_t i = 0; i < d.elems.size(); ++i) {
        if (i) out << ", ";
        out << print_expr(d.elems[i]);
      }
      out << "}";
      break;
    case DExpr::Kind::Enumerated:
      out << "{{";
      for (size_t i = 0; i < d.weighted.size(); ++i) {
        if (i) out << ", ";
        out << print_expr(d.weighted[i].first) << " @ " << print_expr(d.weighted[i].second);
      }
      out << "}}";
      break;
    case DExpr::Kind::PointOf:
      out << "{{" << print_expr(d.point) << " @ 1}}";
      break;
    case DExpr::Kind::None:
      break;
  }
  return out.str();
}

std::string domain_text(const Domain& d) {
  if (d == Domain::booleans()) return "bool";
  std::ostringstream out;
  bool ints = !d.values.empty() && d.values.front().is_int();
  if (ints) {
    // contiguous by construction
    out << "{" << d.values.front().as_int() << ".." << d.values.back().as_int() << "}";
  } else {
    out << "{";
    for (size_t i = 0; i < d.values.size(); ++i) {
      if (i) out << ", ";
      out << d.values[i].str();
    }
    out << "}";
  }
  return out.str();
}

// A child of a sequence or a probabilistic choice must reparse as one atom.
bool needs_group(const StmtPtr& s, bool right_of_choice) {
  if (s->kind == Stmt::Kind::Seq) return true;
  if (right_of_choice && s->kind == Stmt::Kind::PChoice) return true;
  return false;
}

void print_stmt_to(std::ostream& out, const StmtPtr& s);

void print_child(std::ostream& out, const StmtPtr& s, bool right_of_choice) {
  if (needs_group(s, right_of_choice)) {
    out << "[[ ";
    print_stmt_to(out, s);
    out << " ]]";
  } else {
    print_stmt_to(out, s);
  }
}

void print_stmt_to(std::ostream& out, const StmtPtr& s) {
  switch (s->kind) {
    case Stmt::Kind::Skip: out << "skip"; return;
    case Stmt::Kind::Abort: out << "abort"; return;
    case Stmt::Kind::Assert: out << "{" << print_expr(s->expr) << "}"; return;
    case Stmt::Kind::Assign: out << s->var << " := " << print_expr(s->expr); return;
    case Stmt::Kind::Choose: out << s->var << " :in " << print_dexpr(s->dexpr); return;
    case Stmt::Kind::RevealE: out << "reveal " << print_expr(s->expr); return;
    case Stmt::Kind::RevealD: out << "reveal " << print_dexpr(s->dexpr); return;
    case Stmt::Kind::Seq: {
      for (size_t i = 0; i < s->kids.size(); ++i) {
        if (i) out << "; ";
        print_child(out, s->kids[i], false);
      }
      return;
    }
    case Stmt::Kind::PChoice:
      // choice is left-associative, so only a right-hand choice needs [[ ]]
      print_child(out, s->kids[0], false);
      out << " [" << print_expr(s->expr) << "] ";
      print_child(out, s->kids[1], true);
      return;
    case Stmt::Kind::If:
      out << "if " << print_expr(s->expr) << " then ";
      print_stmt_to(out, s->kids[0]);
      out << " else ";
      print_stmt_to(out, s->kids[1]);
      out << " fi";
      return;
    case Stmt::Kind::While:
      out << "while " << print_expr(s->expr) << " do ";
      print_stmt_to(out, s->kids[0]);
      out << " od";
      return;
    case Stmt::Kind::Scope:
      out << "[[ ";
      for (const auto& d : s->decls)
        out << (d.hidden ? "hid " : "vis ") << d.name << ":" << domain_text(d.dom) << "; ";
      print_stmt_to(out, s->kids[0]);
      out << " ]]";
      return;
  }
}

}  // namespace

std::string print_space(const SpaceDecl& space) {
  std::ostringstream out;
  for (const auto& d : space.vars)
    out << (d.hidden ? "hid " : "vis ") << d.name << ":" << domain_text(d.dom) << "; ";
  return out.str();
}

std::string print_stmt(const StmtPtr& s) {
  std::ostringstream out;
  print_stmt_to(out, s);
  return out.str();
}

std::string print_program(const ParsedProgram& p) {
  return print_space(p.space) + print_stmt(p.body);
}

// ---------------------------------------------------------------------------
// Layout and evaluation

Layout Layout::of(const SpaceDecl& space) {
  Layout l;
  l.push(space.vars);
  return l;
}

void Layout::push(const std::vector<VarDecl>& decls) {
  for (const auto& d : decls) {
    auto& list = d.hidden ? hid_ : vis_;
    list.push_back(d);
    stack_.push_back(Binding{d.name, d.hidden, list.size() - 1});
  }
}

void Layout::pop(const std::vector<VarDecl>& decls) {
  for (size_t i = 0; i < decls.size(); ++i) {
    const Binding& b = stack_.back();
    auto& list = b.hidden ? hid_ : vis_;
    if (list.size() != b.index + 1) throw std::logic_error("scope pop out of order");
    list.pop_back();
    stack_.pop_back();
  }
}

Layout::Slot Layout::lookup(const std::string& name, int line, int col) const {
  for (auto it = stack_.rbegin(); it != stack_.rend(); ++it) {
    if (it->name == name) {
      const auto& list = it->hidden ? hid_ : vis_;
      return Slot{it->hidden, it->index, &list[it->index].dom};
    }
  }
  throw parse_error("unbound identifier '" + name + "'", line, col);
}

namespace {

[[noreturn]] void eval_fail(const Expr& e, const std::string& msg, const Env& env) {
  throw runtime_error(msg + " at (" + env.vis->str() + ", " + env.hid->str() +
                      ") (line " + std::to_string(e.line) + ")");
}

Rat to_num(const Expr& e, const Value& v, const Env& env) {
  switch (v.kind()) {
    case Value::Kind::Bool: return Rat(v.as_bool() ? 1 : 0);
    case Value::Kind::Int: return Rat(v.as_int());
    case Value::Kind::Rational: return v.as_rational();
    default: eval_fail(e, "expected a numeric value, got " + v.str(), env);
  }
}

Value num_value(const Rat& r) {
  if (r.get_den() == 1 && r.get_num().fits_slong_p()) return Value(r.get_num().get_si());
  return Value::rational(r);
}

long to_int(const Expr& e, const Value& v, const Env& env) {
  if (v.is_int()) return v.as_int();
  if (v.is_bool()) return v.as_bool() ? 1 : 0;
  eval_fail(e, "expected an integer value, got " + v.str(), env);
}

long floor_div(long a, long b) {
  long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

Value eval_expr(const ExprPtr& ep, const Env& env) {
  const Expr& e = *ep;
  switch (e.op) {
    case Expr::Op::BoolLit: return Value(e.bval);
    case Expr::Op::IntLit: return Value(e.ival);
    case Expr::Op::RatLit: return num_value(e.rval);
    case Expr::Op::SymLit: return Value::symbol(e.name);
    case Expr::Op::Var: {
      auto slot = env.layout->lookup(e.name, e.line, e.col);
      const Value& tup = slot.hidden ? *env.hid : *env.vis;
      return tup.as_tuple()[slot.index];
    }
    case Expr::Op::Tuple: {
      std::vector<Value> elems;
      elems.reserve(e.kids.size());
      for (const auto& k : e.kids) elems.push_back(eval_expr(k, env));
      return Value::tuple(std::move(elems));
    }
    case Expr::Op::Not: {
      Value v = eval_expr(e.kids[0], env);
      if (!v.is_bool()) eval_fail(e, "'not' applied to non-boolean", env);
      return Value(!v.as_bool());
    }
    case Expr::Op::Neg:
      return num_value(-to_num(e, eval_expr(e.kids[0], env), env));
    case Expr::Op::Add:
    case Expr::Op::Sub:
    case Expr::Op::Mul:
    case Expr::Op::Div: {
      Rat a = to_num(e, eval_expr(e.kids[0], env), env);
      Rat b = to_num(e, eval_expr(e.kids[1], env), env);
      switch (e.op) {
        case Expr::Op::Add: return num_value(a + b);
        case Expr::Op::Sub: return num_value(a - b);
        case Expr::Op::Mul: return num_value(a * b);
        default:
          if (b == 0) eval_fail(e, "division by zero", env);
          return num_value(a / b);
      }
    }
    case Expr::Op::IntDiv:
    case Expr::Op::Mod: {
      long a = to_int(e, eval_expr(e.kids[0], env), env);
      long b = to_int(e, eval_expr(e.kids[1], env), env);
      if (b == 0) eval_fail(e, "division by zero", env);
      long q = floor_div(a, b);
      return Value(e.op == Expr::Op::IntDiv ? q : a - q * b);
    }
    case Expr::Op::Eq:
    case Expr::Op::Ne: {
      Value a = eval_expr(e.kids[0], env);
      Value b = eval_expr(e.kids[1], env);
      bool numeric = (a.is_int() || a.is_rational() || a.is_bool()) &&
                     (b.is_int() || b.is_rational() || b.is_bool());
      bool eq;
      if (a.kind() == b.kind()) {
        eq = a == b;
      } else if (numeric && !a.is_bool() && !b.is_bool()) {
        eq = to_num(e, a, env) == to_num(e, b, env);
      } else {
        eval_fail(e, "comparison of incompatible values " + a.str() + " and " + b.str(), env);
      }
      return Value(e.op == Expr::Op::Eq ? eq : !eq);
    }
    case Expr::Op::Lt:
    case Expr::Op::Le:
    case Expr::Op::Gt:
    case Expr::Op::Ge: {
      Rat a = to_num(e, eval_expr(e.kids[0], env), env);
      Rat b = to_num(e, eval_expr(e.kids[1], env), env);
      switch (e.op) {
        case Expr::Op::Lt: return Value(a < b);
        case Expr::Op::Le: return Value(a <= b);
        case Expr::Op::Gt: return Value(a > b);
        default: return Value(a >= b);
      }
    }
    case Expr::Op::And:
    case Expr::Op::Or: {
      Value a = eval_expr(e.kids[0], env);
      if (!a.is_bool()) eval_fail(e, "boolean operator on non-boolean", env);
      // no short-circuit surprises: both sides are pure
      Value b = eval_expr(e.kids[1], env);
      if (!b.is_bool()) eval_fail(e, "boolean operator on non-boolean", env);
      return Value(e.op == Expr::Op::And ? (a.as_bool() && b.as_bool())
                                         : (a.as_bool() || b.as_bool()));
    }
  }
  throw std::logic_error("unhandled expression op");
}

Rat eval_pexpr(const ExprPtr& e, const Env& env) {
  Value v = eval_expr(e, env);
  Rat r = v.is_bool() ? Rat(v.as_bool() ? 1 : 0) : to_num(*e, v, env);
  if (r < 0 || r > 1)
    eval_fail(*e, "probability " + rat_str(r) + " outside [0,1]", env);
  return r;
}

Dist eval_dist_expr(const DExpr& d, const Env& env) {
  switch (d.kind) {
    case DExpr::Kind::Uniform: {
      std::vector<Value> vals;
      vals.reserve(d.elems.size());
      for (const auto& e : d.elems) vals.push_back(eval_expr(e, env));
      return Dist::uniform(vals);
    }
    case DExpr::Kind::Enumerated: {
      Dist::Map m;
      Rat total = 0;
      for (const auto& [ve, we] : d.weighted) {
        Value v = eval_expr(ve, env);
        Value wv = eval_expr(we, env);
        Rat w = wv.is_bool() ? Rat(wv.as_bool() ? 1 : 0) : to_num(*we, wv, env);
        if (w < 0) eval_fail(*we, "negative distribution weight " + rat_str(w), env);
        m[v] += w;
        total += w;
      }
      if (total > 1) eval_fail(*d.weighted[0].second,
                               "distribution weights sum to " + rat_str(total) + " > 1", env);
      return Dist::from_entries(m);
    }
    case DExpr::Kind::PointOf:
      return Dist::point(eval_expr(d.point, env));
    case DExpr::Kind::None:
      break;
  }
  throw std::logic_error("empty distribution expression");
}

}  // namespace hyperflow
