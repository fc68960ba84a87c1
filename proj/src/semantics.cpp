#include "hyperflow/semantics.hpp"

#include <map>
#include <set>

namespace hyperflow {

namespace {

Value replace_coord(const Value& tuple, size_t index, const Value& v) {
  std::vector<Value> elems = tuple.as_tuple();
  elems[index] = v;
  return Value::tuple(std::move(elems));
}

// ---------------------------------------------------------------------------
// The structural evaluator. One instance per top-level denote call; the
// layout tracks scope pushes so expressions see the right variable slots.

class Denoter {
 public:
  Denoter(const SpaceDecl& space, const EvalOptions& opts)
      : layout_(Layout::of(space)), opts_(opts) {}

  Hyper run(const StmtPtr& s, const InitState& st) { return denote(s, st); }

  LoopReport approximant(const StmtPtr& body, const ExprPtr& p, const InitState& s, long k) {
    return loop_iterate(body, p, s, k, /*use_tol=*/false);
  }

  LoopReport fixpoint(const StmtPtr& body, const ExprPtr& p, const InitState& s) {
    if (opts_.loop_mode == EvalOptions::LoopMode::ExactThenIterate) {
      auto exact = loop_exact(body, p, s);
      if (exact) return *exact;
    }
    return loop_iterate(body, p, s, opts_.loop_max_k, /*use_tol=*/true);
  }

 private:
  Hyper denote(const StmtPtr& s, const InitState& st) {
    switch (s->kind) {
      case Stmt::Kind::Skip:
        return Hyper::single(st.vis, st.inner);
      case Stmt::Kind::Abort:
        return Hyper();
      case Stmt::Kind::Assert:
        return assertion(s->expr, st);
      case Stmt::Kind::Assign:
        return s->var_hidden ? assign_hidden(*s, st) : assign_visible(*s, st);
      case Stmt::Kind::Choose:
        return s->var_hidden ? choose_hidden(*s, st) : choose_visible(*s, st);
      case Stmt::Kind::RevealE:
        return reveal_expr(*s, st);
      case Stmt::Kind::RevealD:
        return reveal_dist(*s, st);
      case Stmt::Kind::Seq: {
        Hyper h = Hyper::single(st.vis, st.inner);
        for (const auto& k : s->kids) h = apply(h, k);
        return h;
      }
      case Stmt::Kind::PChoice:
        return branch(s->expr, s->kids[0], s->kids[1], st, /*boolean_guard=*/false);
      case Stmt::Kind::If:
        return branch(s->expr, s->kids[0], s->kids[1], st, /*boolean_guard=*/true);
      case Stmt::Kind::While:
        return fixpoint(s->kids[0], s->expr, st).approximant;
      case Stmt::Kind::Scope:
        return scope(*s, st);
    }
    throw std::logic_error("unhandled statement kind");
  }

  // Kleisli: evaluate the continuation at every entry, reassemble with the
  // entry weights. The outer partitioning is never coarsened.
  Hyper apply(const Hyper& h, const StmtPtr& s) {
    Hyper out;
    for (const auto& [k, w] : h.entries())
      out = out.plus(denote(s, InitState{k.first, k.second}).scaled(w));
    return out;
  }

  Env env_at(const Value& v, const Value& h) const { return Env{&layout_, &v, &h}; }

  // {q}: terminate with probability q, conditioning the posterior on survival.
  Hyper assertion(const ExprPtr& q, const InitState& st) {
    Dist::Map survived;
    Rat mass = 0;
    for (const auto& [h, p] : st.inner.entries()) {
      Rat qp = eval_pexpr(q, env_at(st.vis, h));
      if (qp == 0) continue;
      survived[h] = p * qp;
      mass += p * qp;
    }
    if (mass == 0) return Hyper();  // everywhere-false assertion behaves as abort
    Dist::Map norm;
    for (auto& [h, p] : survived) norm[h] = p / mass;
    return Hyper::single(st.vis, Dist::from_entries(norm), mass);
  }

  Hyper assign_visible(const Stmt& s, const InitState& st) {
    auto slot = layout_.lookup(s.var, s.line, s.col);
    std::map<Value, Dist::Map> classes;
    std::map<Value, Rat> mass;
    for (const auto& [h, p] : st.inner.entries()) {
      Value val = eval_expr(s.expr, env_at(st.vis, h));
      if (!slot.dom->contains(val))
        throw runtime_error("value " + val.str() + " outside domain of '" + s.var +
                            "' at (" + st.vis.str() + ", " + h.str() + ")");
      classes[val][h] += p;
      mass[val] += p;
    }
    Hyper out;
    for (auto& [val, cond] : classes) {
      Dist::Map norm;
      for (auto& [h, p] : cond) norm[h] = p / mass[val];
      out.add(replace_coord(st.vis, slot.index, val), Dist::from_entries(norm), mass[val]);
    }
    return out;
  }

  Hyper assign_hidden(const Stmt& s, const InitState& st) {
    auto slot = layout_.lookup(s.var, s.line, s.col);
    Dist::Map pushed;
    for (const auto& [h, p] : st.inner.entries()) {
      Value val = eval_expr(s.expr, env_at(st.vis, h));
      if (!slot.dom->contains(val))
        throw runtime_error("value " + val.str() + " outside domain of '" + s.var +
                            "' at (" + st.vis.str() + ", " + h.str() + ")");
      pushed[replace_coord(h, slot.index, val)] += p;
    }
    return Hyper::single(st.vis, Dist::from_entries(pushed));
  }

  Hyper choose_visible(const Stmt& s, const InitState& st) {
    auto slot = layout_.lookup(s.var, s.line, s.col);
    std::map<Value, Dist::Map> classes;
    std::map<Value, Rat> mass;
    for (const auto& [h, p] : st.inner.entries()) {
      Dist d = eval_dist_expr(s.dexpr, env_at(st.vis, h));
      for (const auto& [val, q] : d.entries()) {
        if (!slot.dom->contains(val))
          throw runtime_error("value " + val.str() + " outside domain of '" + s.var +
                              "' at (" + st.vis.str() + ", " + h.str() + ")");
        classes[val][h] += p * q;
        mass[val] += p * q;
      }
    }
    Hyper out;
    for (auto& [val, cond] : classes) {
      Dist::Map norm;
      for (auto& [h, p] : cond) norm[h] = p / mass[val];
      out.add(replace_coord(st.vis, slot.index, val), Dist::from_entries(norm), mass[val]);
    }
    return out;
  }

  // No partitioning: the attacker sees nothing, the hidden prior is pushed
  // through the choice and averaged. A partial choice distribution loses
  // the missing mass (conditioning the posterior on termination).
  Hyper choose_hidden(const Stmt& s, const InitState& st) {
    auto slot = layout_.lookup(s.var, s.line, s.col);
    Dist::Map mixed;
    Rat mass = 0;
    for (const auto& [h, p] : st.inner.entries()) {
      Dist d = eval_dist_expr(s.dexpr, env_at(st.vis, h));
      for (const auto& [val, q] : d.entries()) {
        if (!slot.dom->contains(val))
          throw runtime_error("value " + val.str() + " outside domain of '" + s.var +
                              "' at (" + st.vis.str() + ", " + h.str() + ")");
        mixed[replace_coord(h, slot.index, val)] += p * q;
        mass += p * q;
      }
    }
    if (mass == 0) return Hyper();
    Dist::Map norm;
    for (auto& [h, p] : mixed) norm[h] = p / mass;
    return Hyper::single(st.vis, Dist::from_entries(norm), mass);
  }

  Hyper reveal_expr(const Stmt& s, const InitState& st) {
    std::map<Value, Dist::Map> classes;
    std::map<Value, Rat> mass;
    for (const auto& [h, p] : st.inner.entries()) {
      Value val = eval_expr(s.expr, env_at(st.vis, h));
      classes[val][h] += p;
      mass[val] += p;
    }
    Hyper out;
    for (auto& [val, cond] : classes) {
      Dist::Map norm;
      for (auto& [h, p] : cond) norm[h] = p / mass[val];
      out.add(st.vis, Dist::from_entries(norm), mass[val]);
    }
    return out;
  }

  Hyper reveal_dist(const Stmt& s, const InitState& st) {
    std::map<Value, Dist::Map> classes;
    std::map<Value, Rat> mass;
    for (const auto& [h, p] : st.inner.entries()) {
      Dist d = eval_dist_expr(s.dexpr, env_at(st.vis, h));
      for (const auto& [val, q] : d.entries()) {
        classes[val][h] += p * q;
        mass[val] += p * q;
      }
    }
    Hyper out;
    for (auto& [val, cond] : classes) {
      Dist::Map norm;
      for (auto& [h, p] : cond) norm[h] = p / mass[val];
      out.add(st.vis, Dist::from_entries(norm), mass[val]);
    }
    return out;
  }

  // {p};L + {1-p};R, the implicit-flow reading of branching.
  Hyper branch(const ExprPtr& guard, const StmtPtr& left, const StmtPtr& right,
               const InitState& st, bool boolean_guard) {
    Dist::Map lm, rm;
    Rat lw = 0, rw = 0;
    for (const auto& [h, p] : st.inner.entries()) {
      Rat q;
      if (boolean_guard) {
        Value g = eval_expr(guard, env_at(st.vis, h));
        if (!g.is_bool())
          throw runtime_error("non-boolean conditional guard at (" + st.vis.str() + ", " +
                              h.str() + ")");
        q = g.as_bool() ? 1 : 0;
      } else {
        q = eval_pexpr(guard, env_at(st.vis, h));
      }
      if (q > 0) {
        lm[h] += p * q;
        lw += p * q;
      }
      if (q < 1) {
        rm[h] += p * (1 - q);
        rw += p * (1 - q);
      }
    }
    Hyper out;
    if (lw > 0) {
      Dist::Map norm;
      for (auto& [h, p] : lm) norm[h] = p / lw;
      out = out.plus(denote(left, InitState{st.vis, Dist::from_entries(norm)}).scaled(lw));
    }
    if (rw > 0) {
      Dist::Map norm;
      for (auto& [h, p] : rm) norm[h] = p / rw;
      out = out.plus(denote(right, InitState{st.vis, Dist::from_entries(norm)}).scaled(rw));
    }
    return out;
  }

  Hyper scope(const Stmt& s, const InitState& st) {
    if (!opts_.implicit_uniform_locals) check_locals_initialized(s.decls, s.kids[0]);
    Hyper pushed = scope_push(s.decls, Hyper::single(st.vis, st.inner),
                              opts_.implicit_uniform_locals);
    layout_.push(s.decls);
    Hyper inside;
    try {
      inside = apply(pushed, s.kids[0]);
    } catch (...) {
      layout_.pop(s.decls);
      throw;
    }
    layout_.pop(s.decls);
    return scope_pop(s.decls, inside);
  }

  // Loop support ------------------------------------------------------------

  // Mass that stays in the loop: [[{p}; body]].s, memoized per state.
  Hyper loop_step(const StmtPtr& body, const ExprPtr& p, const InitState& s,
                  std::map<InitState, Hyper>& memo) {
    auto it = memo.find(s);
    if (it != memo.end()) return it->second;
    Hyper enter = assertion(p, s);
    Hyper out = apply(enter, body);
    memo.emplace(s, out);
    return out;
  }

  // Mass that leaves: [[{1-p}]].s.
  Hyper loop_exit(const ExprPtr& p, const InitState& s) {
    Dist::Map stay;
    Rat mass = 0;
    for (const auto& [h, q] : s.inner.entries()) {
      Rat stop = Rat(1) - eval_pexpr(p, env_at(s.vis, h));
      if (stop == 0) continue;
      stay[h] = q * stop;
      mass += q * stop;
    }
    if (mass == 0) return Hyper();
    Dist::Map norm;
    for (auto& [h, q] : stay) norm[h] = q / mass;
    return Hyper::single(s.vis, Dist::from_entries(norm), mass);
  }

  LoopReport loop_iterate(const StmtPtr& body, const ExprPtr& p, const InitState& s,
                          long k_limit, bool use_tol) {
    std::map<InitState, Hyper> memo;
    LoopReport rep;
    Hyper acc;
    std::map<InitState, Rat> running{{s, Rat(1)}};
    long k = 0;
    for (;;) {
      rep.approximant = acc;
      rep.iterations = k;
      rep.deficit = Rat(1) - acc.weight();
      if (running.empty()) {
        // all mass terminated or aborted inside the body: the chain is at
        // its fixed point and stays there
        rep.status = LoopReport::Status::Exact;
        return rep;
      }
      if (use_tol && rep.deficit <= opts_.loop_tol) {
        rep.status = LoopReport::Status::TolConverged;
        return rep;
      }
      if (k >= k_limit) {
        rep.status = LoopReport::Status::MaxIterations;
        return rep;
      }
      std::map<InitState, Rat> next;
      Rat exited = acc.weight();
      for (const auto& [state, w] : running) {
        acc = acc.plus(loop_exit(p, state).scaled(w));
        Hyper cont = loop_step(body, p, state, memo);
        for (const auto& [key, cw] : cont.entries()) {
          if (cw == 0) continue;
          next[InitState{key.first, key.second}] += w * cw;
        }
      }
      ++k;
      if (use_tol && acc.weight() == exited && next == running) {
        // the iteration is stationary with everything still circulating:
        // no future round can add mass, so report nonconvergence now
        rep.approximant = acc;
        rep.iterations = k;
        rep.deficit = Rat(1) - acc.weight();
        rep.status = LoopReport::Status::MaxIterations;
        return rep;
      }
      running = std::move(next);
    }
  }

  // Explores the reachable state graph of [[{p}; body]]; when it closes,
  // the visit weights solve v = e0 + M^T v and the fixed point is the
  // visit-weighted sum of exit hypers. Returns nullopt when the graph
  // exceeds the exploration limit or I - M^T is singular (some mass
  // recirculates forever; the iterative fallback reports the deficit).
  std::optional<LoopReport> loop_exact(const StmtPtr& body, const ExprPtr& p,
                                       const InitState& s0) {
    std::map<InitState, Hyper> memo;
    std::vector<InitState> states{s0};
    std::map<InitState, size_t> index{{s0, 0}};
    std::vector<std::vector<std::pair<size_t, Rat>>> edges;

    for (size_t i = 0; i < states.size(); ++i) {
      if (states.size() > opts_.loop_closure_limit) return std::nullopt;
      Hyper cont = loop_step(body, p, states[i], memo);
      std::vector<std::pair<size_t, Rat>> row;
      for (const auto& [key, w] : cont.entries()) {
        InitState t{key.first, key.second};
        auto [it, fresh] = index.emplace(t, states.size());
        if (fresh) states.push_back(t);
        row.emplace_back(it->second, w);
      }
      edges.push_back(std::move(row));
    }

    const size_t n = states.size();
    if (n > opts_.loop_closure_limit) return std::nullopt;

    // (I - M^T) visit = e0, dense exact Gaussian elimination
    std::vector<std::vector<Rat>> a(n, std::vector<Rat>(n + 1, Rat(0)));
    for (size_t i = 0; i < n; ++i) a[i][i] = 1;
    for (size_t i = 0; i < n; ++i)
      for (const auto& [j, w] : edges[i]) a[j][i] -= w;
    a[0][n] = 1;

    for (size_t col = 0; col < n; ++col) {
      size_t piv = col;
      while (piv < n && a[piv][col] == 0) ++piv;
      if (piv == n) return std::nullopt;  // singular: recirculating mass
      std::swap(a[piv], a[col]);
      for (size_t r = 0; r < n; ++r) {
        if (r == col || a[r][col] == 0) continue;
        Rat f = a[r][col] / a[col][col];
        for (size_t c = col; c <= n; ++c) a[r][c] -= f * a[col][c];
      }
    }
    std::vector<Rat> visit(n);
    for (size_t i = 0; i < n; ++i) {
      visit[i] = a[i][n] / a[i][i];
      if (visit[i] < 0) return std::nullopt;
    }

    LoopReport rep;
    Hyper out;
    for (size_t i = 0; i < n; ++i) {
      if (visit[i] == 0) continue;
      out = out.plus(loop_exit(p, states[i]).scaled(visit[i]));
    }
    rep.approximant = out;
    rep.iterations = 0;
    rep.deficit = Rat(1) - out.weight();
    rep.status = LoopReport::Status::Exact;
    return rep;
  }

  Layout layout_;
  const EvalOptions& opts_;
};

}  // namespace

Hyper denote(const SpaceDecl& space, const StmtPtr& program, const InitState& s,
             const EvalOptions& opts) {
  return Denoter(space, opts).run(program, s);
}

Hyper kleisli_apply(const Hyper& h, const ProgramFn& f) {
  Hyper out;
  for (const auto& [k, w] : h.entries())
    out = out.plus(f(InitState{k.first, k.second}).scaled(w));
  return out;
}

ProgramFn kleisli_seq(ProgramFn first, ProgramFn second) {
  return [first = std::move(first), second = std::move(second)](const InitState& s) {
    return kleisli_apply(first(s), second);
  };
}

LoopReport loop_approximant(const SpaceDecl& space, const StmtPtr& body, const ExprPtr& p,
                            const InitState& s, long k, const EvalOptions& opts) {
  return Denoter(space, opts).approximant(body, p, s, k);
}

LoopReport loop_fixpoint(const SpaceDecl& space, const StmtPtr& body, const ExprPtr& p,
                         const InitState& s, const EvalOptions& opts) {
  return Denoter(space, opts).fixpoint(body, p, s);
}

LoopEquivResult check_loop_equiv(const SpaceDecl& space, const StmtPtr& body, const ExprPtr& p,
                                 const StmtPtr& w, const std::vector<InitState>& priors,
                                 const EvalOptions& opts) {
  auto seq = std::make_shared<Stmt>();
  seq->kind = Stmt::Kind::Seq;
  seq->kids = {body, w};
  auto skip = std::make_shared<Stmt>();
  skip->kind = Stmt::Kind::Skip;
  auto unrolled = std::make_shared<Stmt>();
  unrolled->kind = Stmt::Kind::PChoice;
  unrolled->expr = p;
  unrolled->kids = {seq, skip};

  LoopEquivResult res;
  for (const auto& s : priors) {
    Hyper lhs = denote(space, unrolled, s, opts);
    Hyper rhs = denote(space, w, s, opts);
    bool eq = lhs == rhs;
    res.priors.push_back({s, eq});
    if (!eq) res.all_equal = false;
  }
  if (expr_is_constant(p)) {
    Layout empty_layout = Layout::of(SpaceDecl{});
    Value unit = Value::tuple({});
    Env env{&empty_layout, &unit, &unit};
    Rat k = eval_pexpr(p, env);
    res.guard_constant = k;
    res.termination_certified = k < 1;
  }
  return res;
}

Hyper scope_push(const std::vector<VarDecl>& decls, const Hyper& h, bool implicit_uniform) {
  Hyper out = h;
  for (const auto& d : decls) {
    Hyper next;
    for (const auto& [key, w] : out.entries()) {
      if (!d.hidden) {
        std::vector<Value> vt = key.first.as_tuple();
        if (implicit_uniform) {
          Rat share = rat_of(1, static_cast<long>(d.dom.values.size()));
          for (const auto& val : d.dom.values) {
            vt.push_back(val);
            next.add(Value::tuple(vt), key.second, w * share);
            vt.pop_back();
          }
        } else {
          vt.push_back(d.dom.values.front());
          next.add(Value::tuple(vt), key.second, w);
        }
      } else {
        Dist::Map ext;
        if (implicit_uniform) {
          Rat share = rat_of(1, static_cast<long>(d.dom.values.size()));
          for (const auto& [ht, p] : key.second.entries()) {
            std::vector<Value> et = ht.as_tuple();
            for (const auto& val : d.dom.values) {
              et.push_back(val);
              ext[Value::tuple(et)] += p * share;
              et.pop_back();
            }
          }
        } else {
          for (const auto& [ht, p] : key.second.entries()) {
            std::vector<Value> et = ht.as_tuple();
            et.push_back(d.dom.values.front());
            ext[Value::tuple(et)] += p;
          }
        }
        next.add(key.first, Dist::from_entries(ext), w);
      }
    }
    out = next;
  }
  return out;
}

Hyper scope_pop(const std::vector<VarDecl>& decls, const Hyper& h) {
  size_t drop_vis = 0, drop_hid = 0;
  for (const auto& d : decls) (d.hidden ? drop_hid : drop_vis) += 1;

  auto trim = [](const Value& tuple, size_t count) {
    std::vector<Value> elems = tuple.as_tuple();
    elems.resize(elems.size() - count);
    return Value::tuple(std::move(elems));
  };

  Hyper out;
  for (const auto& [key, w] : h.entries()) {
    Value v = drop_vis ? trim(key.first, drop_vis) : key.first;
    Dist inner = key.second;
    if (drop_hid) {
      Dist::Map marg;
      for (const auto& [ht, p] : inner.entries()) marg[trim(ht, drop_hid)] += p;
      inner = Dist::from_entries(marg);
    }
    out.add(v, inner, w);
  }
  return out;
}

namespace {

void collect_vars(const ExprPtr& e, std::set<std::string>& out) {
  if (!e) return;
  if (e->op == Expr::Op::Var) out.insert(e->name);
  for (const auto& k : e->kids) collect_vars(k, out);
}

void collect_dexpr_vars(const DExpr& d, std::set<std::string>& out) {
  for (const auto& e : d.elems) collect_vars(e, out);
  for (const auto& [v, w] : d.weighted) {
    collect_vars(v, out);
    collect_vars(w, out);
  }
  collect_vars(d.point, out);
}

// Conservative init-before-use analysis: pending holds the locals not yet
// surely assigned; reads of pending locals throw. Branches initialize only
// what both arms initialize; loop bodies are checked but credit nothing.
void analyze_init(const StmtPtr& s, std::set<std::string>& pending) {
  auto use = [&pending](const std::set<std::string>& names) {
    for (const auto& n : names)
      if (pending.count(n))
        throw runtime_error("local variable '" + n + "' may be used before initialization");
  };
  std::set<std::string> names;
  switch (s->kind) {
    case Stmt::Kind::Skip:
    case Stmt::Kind::Abort:
      return;
    case Stmt::Kind::Assert:
    case Stmt::Kind::RevealE:
      collect_vars(s->expr, names);
      use(names);
      return;
    case Stmt::Kind::RevealD:
      collect_dexpr_vars(s->dexpr, names);
      use(names);
      return;
    case Stmt::Kind::Assign:
      collect_vars(s->expr, names);
      use(names);
      pending.erase(s->var);
      return;
    case Stmt::Kind::Choose:
      collect_dexpr_vars(s->dexpr, names);
      use(names);
      pending.erase(s->var);
      return;
    case Stmt::Kind::Seq:
      for (const auto& k : s->kids) analyze_init(k, pending);
      return;
    case Stmt::Kind::PChoice:
    case Stmt::Kind::If: {
      collect_vars(s->expr, names);
      use(names);
      std::set<std::string> left = pending, right = pending;
      analyze_init(s->kids[0], left);
      analyze_init(s->kids[1], right);
      std::set<std::string> joined;
      for (const auto& n : pending)
        if (left.count(n) || right.count(n)) joined.insert(n);
      pending = std::move(joined);
      return;
    }
    case Stmt::Kind::While: {
      collect_vars(s->expr, names);
      use(names);
      std::set<std::string> inner = pending;
      analyze_init(s->kids[0], inner);
      return;  // the body may never run
    }
    case Stmt::Kind::Scope: {
      // inner locals shadow; anything they shadow is untouchable inside
      std::set<std::string> inner = pending;
      std::set<std::string> shadowed;
      for (const auto& d : s->decls) {
        if (pending.count(d.name)) shadowed.insert(d.name);
        inner.insert(d.name);
      }
      analyze_init(s->kids[0], inner);
      std::set<std::string> joined;
      for (const auto& n : pending)
        if (inner.count(n) || shadowed.count(n)) joined.insert(n);
      pending = std::move(joined);
      return;
    }
  }
}

}  // namespace

void check_locals_initialized(const std::vector<VarDecl>& decls, const StmtPtr& body) {
  std::set<std::string> pending;
  for (const auto& d : decls) pending.insert(d.name);
  analyze_init(body, pending);
}

std::vector<Value> enumerate_tuples(const std::vector<VarDecl>& vars) {
  std::vector<std::vector<Value>> acc{{}};
  for (const auto& v : vars) {
    std::vector<std::vector<Value>> next;
    for (const auto& prefix : acc)
      for (const auto& val : v.dom.values) {
        auto t = prefix;
        t.push_back(val);
        next.push_back(std::move(t));
      }
    acc = std::move(next);
  }
  std::vector<Value> out;
  out.reserve(acc.size());
  for (auto& t : acc) out.push_back(Value::tuple(std::move(t)));
  return out;
}

Value default_vis_state(const SpaceDecl& space) {
  std::vector<Value> elems;
  for (const auto& v : space.visible()) elems.push_back(v.dom.values.front());
  return Value::tuple(std::move(elems));
}

Dist uniform_hidden_prior(const SpaceDecl& space) {
  return Dist::uniform(enumerate_tuples(space.hidden()));
}

Dist point_hidden_prior(const SpaceDecl& space, const Value& hid_tuple) {
  auto states = enumerate_tuples(space.hidden());
  for (const auto& s : states)
    if (s == hid_tuple) return Dist::point(hid_tuple);
  throw runtime_error("hidden state " + hid_tuple.str() + " not in the declared space");
}

InitState make_init(const SpaceDecl& space, const Dist& hidden_prior) {
  return make_init(space, hidden_prior, default_vis_state(space));
}

InitState make_init(const SpaceDecl& space, const Dist& hidden_prior, const Value& vis) {
  if (!hidden_prior.full()) throw runtime_error("hidden prior must have weight one");
  auto hid = space.hidden();
  for (const auto& [h, _] : hidden_prior.entries()) {
    if (!h.is_tuple() || h.as_tuple().size() != hid.size())
      throw runtime_error("prior key " + h.str() + " does not match the hidden space");
    for (size_t i = 0; i < hid.size(); ++i)
      if (!hid[i].dom.contains(h.as_tuple()[i]))
        throw runtime_error("prior key " + h.str() + " outside variable '" + hid[i].name + "'");
  }
  auto vis_vars = space.visible();
  if (!vis.is_tuple() || vis.as_tuple().size() != vis_vars.size())
    throw runtime_error("visible state " + vis.str() + " does not match the visible space");
  for (size_t i = 0; i < vis_vars.size(); ++i)
    if (!vis_vars[i].dom.contains(vis.as_tuple()[i]))
      throw runtime_error("visible state " + vis.str() + " outside variable '" +
                          vis_vars[i].name + "'");
  return InitState{vis, hidden_prior};
}

}  // namespace hyperflow
