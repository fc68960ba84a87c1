#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hyperflow/dist.hpp"

namespace hyperflow {

class parse_error : public std::runtime_error {
 public:
  parse_error(const std::string& msg, int line, int col)
      : std::runtime_error(msg + " (line " + std::to_string(line) + ", col " +
                           std::to_string(col) + ")"),
        line(line),
        col(col) {}
  int line, col;
};

class runtime_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct VarDecl {
  std::string name;
  bool hidden = false;
  Domain dom;

  bool operator==(const VarDecl& o) const {
    return name == o.name && hidden == o.hidden && dom == o.dom;
  }
};

/// The declared variable space. Visible state and hidden state are tuples
/// over the vis/hid variables in declaration order.
struct SpaceDecl {
  std::vector<VarDecl> vars;

  std::vector<VarDecl> visible() const;
  std::vector<VarDecl> hidden() const;
  bool operator==(const SpaceDecl& o) const { return vars == o.vars; }
};

// ---------------------------------------------------------------------------
// Expressions

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  enum class Op {
    BoolLit, IntLit, RatLit, SymLit, Var, Tuple,
    Not, Neg,
    Add, Sub, Mul, Div, IntDiv, Mod,
    Eq, Ne, Lt, Le, Gt, Ge, And, Or,
  };

  Op op;
  bool bval = false;
  long ival = 0;
  Rat rval;
  std::string name;  // Var / SymLit
  std::vector<ExprPtr> kids;
  int line = 0, col = 0;
};

ExprPtr expr_bool(bool b);
ExprPtr expr_int(long i);
ExprPtr expr_rat(const Rat& r);

/// True when the expression mentions no variables.
bool expr_is_constant(const ExprPtr& e);

struct DExpr {
  enum class Kind { None, Uniform, Enumerated, PointOf };
  Kind kind = Kind::None;
  std::vector<ExprPtr> elems;                          // Uniform
  std::vector<std::pair<ExprPtr, ExprPtr>> weighted;   // Enumerated: value @ weight
  ExprPtr point;                                       // PointOf
};

// ---------------------------------------------------------------------------
// Statements

struct Stmt;
using StmtPtr = std::shared_ptr<const Stmt>;

struct Stmt {
  enum class Kind {
    Skip, Abort, Assert,
    Assign, Choose,          // var := expr / var :in dexpr
    RevealE, RevealD,
    Seq, PChoice, If, While, Scope,
  };

  Kind kind;
  ExprPtr expr;              // Assert / Assign rhs / RevealE / PChoice prob / If guard / While guard
  DExpr dexpr;               // Choose / RevealD
  std::string var;           // Assign / Choose target
  bool var_hidden = false;
  std::vector<StmtPtr> kids; // Seq: all; PChoice/If: {left,right}; While/Scope: {body}
  std::vector<VarDecl> decls;  // Scope locals
  int line = 0, col = 0;
};

struct ParsedProgram {
  SpaceDecl space;
  StmtPtr body;
};

/// Parses "decl* stmt". Identifier binding, visibility of assignment
/// targets, and enumeration symbols are all resolved here; errors carry
/// line/column.
ParsedProgram parse_program(const std::string& text);

/// Parses a statement against an existing space (used by the law catalog).
StmtPtr parse_stmt_in(const SpaceDecl& space, const std::string& text);

/// Parses a single constant value literal ("3", "true", "p1", "(0, 1)").
Value parse_value(const std::string& text);

std::string print_space(const SpaceDecl& space);
std::string print_stmt(const StmtPtr& s);
std::string print_program(const ParsedProgram& p);

// ---------------------------------------------------------------------------
// Expression evaluation

/// The active variable stack during evaluation: the global space plus any
/// pushed scope frames. Visible and hidden tuples are indexed in push order;
/// name lookup shadows from the innermost frame outward.
class Layout {
 public:
  static Layout of(const SpaceDecl& space);

  void push(const std::vector<VarDecl>& decls);
  void pop(const std::vector<VarDecl>& decls);

  struct Slot {
    bool hidden;
    size_t index;
    const Domain* dom;
  };
  Slot lookup(const std::string& name, int line, int col) const;

  const std::vector<VarDecl>& vis() const { return vis_; }
  const std::vector<VarDecl>& hid() const { return hid_; }

 private:
  std::vector<VarDecl> vis_, hid_;
  struct Binding {
    std::string name;
    bool hidden;
    size_t index;
  };
  std::vector<Binding> stack_;
};

/// One concrete (visible tuple, hidden tuple) pair under a layout.
struct Env {
  const Layout* layout;
  const Value* vis;  // tuple value
  const Value* hid;  // tuple value
};

Value eval_expr(const ExprPtr& e, const Env& env);

/// Evaluates as a probability: booleans coerce to 0/1, integers to
/// rationals; the result must land in [0,1].
Rat eval_pexpr(const ExprPtr& e, const Env& env);

/// Weights are validated on every evaluation: negative or sum > 1 is a
/// runtime error, never a silent clamp.
Dist eval_dist_expr(const DExpr& d, const Env& env);

}  // namespace hyperflow
