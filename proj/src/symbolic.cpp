#include "clone_lattice/symbolic.hpp"

#include <cctype>
#include <cstring>
#include <set>

#include "clone_lattice/errors.hpp"
#include "clone_lattice/expr_utils.hpp"

namespace clone_lattice {

namespace {

using Value = std::optional<LinearExpr>;
using Conj = std::vector<Atom>;
using Dnf = std::vector<Conj>;

struct State {
  std::set<Atom> atoms;
  std::map<std::string, Value> env;
  bool done = false;
  bool dead = false;

  void add(const std::variant<bool, Atom>& a) {
    if (const auto* atom = std::get_if<Atom>(&a)) {
      atoms.insert(*atom);
    } else if (!std::get<bool>(a)) {
      dead = true;
    }
  }
};

std::optional<std::int64_t> parse_int(const std::string& text) {
  if (text.empty() || !std::isdigit(static_cast<unsigned char>(text[0]))) return std::nullopt;
  if (text.find_first_of(".eE") != std::string::npos && text.rfind("0x", 0) != 0 && text.rfind("0X", 0) != 0) {
    return std::nullopt;
  }
  try {
    std::size_t used = 0;
    const long long v = std::stoll(text, &used, 0);
    for (std::size_t i = used; i < text.size(); ++i) {
      if (!std::strchr("uUlL", text[i])) return std::nullopt;
    }
    return v;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

std::optional<CmpOp> cmp_op(const std::string& op) {
  if (op == "<") return CmpOp::Lt;
  if (op == "<=") return CmpOp::Le;
  if (op == ">") return CmpOp::Gt;
  if (op == ">=") return CmpOp::Ge;
  if (op == "==") return CmpOp::Eq;
  return std::nullopt;
}

Dnf dnf_true() { return {Conj{}}; }

Dnf dnf_and(const Dnf& a, const Dnf& b) {
  Dnf out;
  for (const auto& x : a) {
    for (const auto& y : b) {
      Conj c = x;
      c.insert(c.end(), y.begin(), y.end());
      out.push_back(std::move(c));
    }
  }
  return out;
}

Dnf dnf_or(Dnf a, const Dnf& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

Dnf from_atoms(const std::vector<std::variant<bool, Atom>>& alternatives) {
  Dnf out;
  for (const auto& a : alternatives) {
    if (const auto* atom = std::get_if<Atom>(&a)) {
      out.push_back(Conj{*atom});
    } else if (std::get<bool>(a)) {
      out.push_back(Conj{});
    }
  }
  return out;
}

class Executor {
 public:
  Executor(const PointerSlice& slice, const SymbolicOptions& opts) : slice_(slice), opts_(opts) {
    for (const auto& v : slice.related.variables) related_.insert(v);
  }

  ConstraintSet run() {
    State init;
    for (const auto& v : slice_.related.variables) init.env[v] = LinearExpr::var(v);
    std::vector<State> states = exec(slice_.slice_tree.body(), {init});

    ConstraintSet cs;
    cs.pointer = slice_.pointer.name;
    for (const auto& v : slice_.related.variables) cs.symbolic_vars.emplace_back(v, slice_.related.roles.at(v));
    if (saw_deref_) {
      for (const auto& s : states) {
        if (!s.dead) cs.paths.insert(PathCondition{s.atoms});
      }
    }
    return simplify(cs);
  }

 private:
  Value lookup(const State& s, const std::string& name) const {
    auto it = s.env.find(name);
    if (it != s.env.end()) return it->second;
    return std::nullopt;
  }

  void assign(State& s, const std::string& name, Value v) { s.env[name] = related_.count(name) ? v : std::nullopt; }

  Value eval_pure(const AstNode& e, const State& s) {
    State copy = s;
    return eval(e, copy);
  }

  Value eval(const AstNode& e, State& s) {
    switch (e.kind) {
      case NodeKind::ID:
        return lookup(s, e.text);
      case NodeKind::Constant: {
        auto v = parse_int(e.text);
        if (v) return LinearExpr::num(*v);
        return std::nullopt;
      }
      case NodeKind::StructRef: {
        if (auto name = chain_name(e)) return lookup(s, *name);
        eval(e.children[0], s);
        return std::nullopt;
      }
      case NodeKind::BinaryOp: {
        Value a = eval(e.children[0], s);
        Value b = eval(e.children[1], s);
        if (!a || !b) return std::nullopt;
        if (e.text == "+") return *a + *b;
        if (e.text == "-") return *a - *b;
        if (e.text == "*") {
          if (a->is_constant()) return *b * a->constant;
          if (b->is_constant()) return *a * b->constant;
          throw UnsupportedConstruct("non-linear expression " + expression_text(e));
        }
        if (a->is_constant() && b->is_constant()) {
          const auto x = a->constant, y = b->constant;
          if (e.text == "/" && y != 0) return LinearExpr::num(x / y);
          if (e.text == "%" && y != 0) return LinearExpr::num(x % y);
          if (e.text == "<<" && y >= 0 && y < 62) return LinearExpr::num(x << y);
          if (e.text == ">>" && y >= 0 && y < 62) return LinearExpr::num(x >> y);
        }
        return std::nullopt;
      }
      case NodeKind::UnaryOp: {
        const AstNode& x = e.children[0];
        if (e.text == "++" || e.text == "--" || e.text == "p++" || e.text == "p--") {
          Value old = eval(x, s);
          Value next;
          if (old) next = *old + LinearExpr::num(e.text.find('+') != std::string::npos ? 1 : -1);
          if (auto t = write_target(x); t && !t->through_pointer) assign(s, t->name, next);
          return e.text[0] == 'p' ? old : next;
        }
        if (e.text == "&") return std::nullopt;
        Value v = eval(x, s);
        if (!v) return std::nullopt;
        if (e.text == "-") return *v * -1;
        if (e.text == "+") return v;
        if (v->is_constant()) {
          if (e.text == "!") return LinearExpr::num(v->constant == 0);
          if (e.text == "~") return LinearExpr::num(~v->constant);
        }
        return std::nullopt;
      }
      case NodeKind::Assignment: {
        Value v = eval(e.children[1], s);
        if (auto t = write_target(e.children[0]); t && !t->through_pointer) assign(s, t->name, v);
        return v;
      }
      case NodeKind::Call: {
        for (const auto& arg : e.children) {
          if (arg.kind == NodeKind::UnaryOp && arg.text == "&") {
            if (auto name = chain_name(arg.children[0])) s.env[*name] = std::nullopt;
          } else {
            eval(arg, s);
          }
        }
        const std::string slot = expression_text(e);
        if (related_.count(slot)) return LinearExpr::var(slot);
        return std::nullopt;
      }
      default:
        return std::nullopt;
    }
  }

  void record_derefs(const AstNode& e, State& s) {
    for (const auto& access : collect_accesses(e)) {
      if (access.base != slice_.pointer.name) continue;
      saw_deref_ = true;
      for (std::size_t level = 0; level < access.indices.size(); ++level) {
        if (level > 1) throw UnsupportedConstruct("subscript nesting deeper than two on " + access.base);
        Value idx = access.indices[level] ? eval_pure(*access.indices[level], s) : Value(LinearExpr::num(0));
        if (!idx) continue;
        const LinearExpr len = LinearExpr::var(length_term(access.base, static_cast<int>(level)));
        s.add(make_atom(LinearExpr::num(0), CmpOp::Le, *idx));
        s.add(make_atom(*idx, CmpOp::Lt, len));
      }
    }
  }

  Dnf condition(const AstNode& e, bool negate, const State& s) {
    if (e.kind == NodeKind::UnaryOp && e.text == "!") return condition(e.children[0], !negate, s);
    if (e.kind == NodeKind::BinaryOp && (e.text == "&&" || e.text == "||")) {
      Dnf a = condition(e.children[0], negate, s);
      Dnf b = condition(e.children[1], negate, s);
      const bool conj = (e.text == "&&") != negate;
      return conj ? dnf_and(a, b) : dnf_or(std::move(a), b);
    }
    if (e.kind == NodeKind::BinaryOp && (cmp_op(e.text) || e.text == "!=")) {
      Value l = eval_pure(e.children[0], s);
      Value r = eval_pure(e.children[1], s);
      if (!l || !r) return dnf_true();
      const bool ne = e.text == "!=";
      const CmpOp op = ne ? CmpOp::Eq : *cmp_op(e.text);
      if (negate != ne) return from_atoms(negated_atoms(*l, op, *r));
      return from_atoms({make_atom(*l, op, *r)});
    }
    Value v = eval_pure(e, s);
    if (!v) return dnf_true();
    if (negate) return from_atoms({make_atom(*v, CmpOp::Eq, LinearExpr::num(0))});
    return from_atoms(negated_atoms(*v, CmpOp::Eq, LinearExpr::num(0)));
  }

  // States taking the branch described by `cond`/`negate`, with the
  // condition's side effects applied.
  std::vector<State> assume(const AstNode& cond, bool negate, const State& s) {
    std::vector<State> out;
    for (const auto& conj : condition(cond, negate, s)) {
      State t = s;
      for (const auto& a : conj) t.atoms.insert(a);
      eval(cond, t);
      out.push_back(std::move(t));
    }
    return out;
  }

  void check_paths(std::size_t n) const {
    if (n > opts_.max_paths) {
      throw UnsupportedConstruct("more than " + std::to_string(opts_.max_paths) + " paths");
    }
  }

  std::vector<State> exec(const AstNode& n, std::vector<State> states) {
    std::vector<State> out;
    for (auto& s : states) {
      if (s.done || s.dead) {
        out.push_back(std::move(s));
        continue;
      }
      for (auto& t : exec_one(n, std::move(s))) out.push_back(std::move(t));
    }
    check_paths(out.size());
    return out;
  }

  std::set<std::string> written_in(const AstNode& n) const {
    std::set<std::string> out;
    visit_preorder(n, [&](const AstNode& x) {
      if (x.kind == NodeKind::Decl) out.insert(x.text);
      if (x.kind == NodeKind::Assignment || x.kind == NodeKind::UnaryOp || x.kind == NodeKind::Call) {
        for (const auto& w : writes_in(x)) {
          if (!w.through_pointer) out.insert(w.name);
        }
      }
    });
    return out;
  }

  void havoc(State& s, const std::set<std::string>& names) {
    for (const auto& n : names) s.env[n] = std::nullopt;
  }

  // x++, ++x, x--, --x, x = x + c, x = x - c with x related; returns the step.
  std::optional<std::pair<std::string, std::int64_t>> induction_step(const AstNode& e) {
    if (e.kind == NodeKind::UnaryOp && (e.text == "++" || e.text == "p++" || e.text == "--" || e.text == "p--")) {
      if (auto name = chain_name(e.children[0]); name && related_.count(*name)) {
        return std::make_pair(*name, std::int64_t{e.text.find('+') != std::string::npos ? 1 : -1});
      }
      return std::nullopt;
    }
    if (e.kind != NodeKind::Assignment) return std::nullopt;
    auto name = chain_name(e.children[0]);
    if (!name || !related_.count(*name)) return std::nullopt;
    const AstNode& rhs = e.children[1];
    if (rhs.kind != NodeKind::BinaryOp || (rhs.text != "+" && rhs.text != "-")) return std::nullopt;
    if (chain_name(rhs.children[0]) != name || rhs.children[1].kind != NodeKind::Constant) return std::nullopt;
    auto c = parse_int(rhs.children[1].text);
    if (!c || *c == 0) return std::nullopt;
    return std::make_pair(*name, rhs.text == "+" ? *c : -*c);
  }

  std::vector<State> exec_loop(const AstNode& loop, std::vector<State> states) {
    const bool is_for = loop.kind == NodeKind::For;
    std::size_t i = 0;
    if (is_for) {
      for (; i < loop.for_parts.init; ++i) states = exec(loop.children[i], std::move(states));
    }
    const AstNode* cond = nullptr;
    if (!is_for || loop.for_parts.cond) cond = &loop.children[is_for ? i++ : 0];
    std::vector<const AstNode*> next;
    if (is_for) {
      for (std::size_t k = 0; k < loop.for_parts.next; ++k) next.push_back(&loop.children[i++]);
    }
    const AstNode& body = loop.children.back();

    std::set<std::string> modified = written_in(body);
    for (const auto* n : next) {
      for (const auto& w : written_in(*n)) modified.insert(w);
    }

    std::vector<std::pair<std::string, std::int64_t>> induction;
    bool affine = is_for && cond && !next.empty();
    const std::set<std::string> body_writes = written_in(body);
    for (const auto* n : next) {
      auto step = induction_step(*n);
      if (!step) {
        for (const auto& w : written_in(*n)) {
          if (related_.count(w)) affine = false;
        }
        continue;
      }
      if (body_writes.count(step->first)) affine = false;
      induction.push_back(*step);
    }
    if (induction.empty()) affine = false;

    std::vector<State> out;
    auto keep_alive = [&](std::vector<State>& live) {
      std::vector<State> rest;
      for (auto& s : live) {
        if (s.done || s.dead) {
          out.push_back(std::move(s));
        } else {
          rest.push_back(std::move(s));
        }
      }
      live = std::move(rest);
    };
    keep_alive(states);

    if (affine) {
      for (const auto& s0 : states) {
        State skip = s0;
        record_derefs(*cond, skip);
        for (auto& t : assume(*cond, true, skip)) out.push_back(std::move(t));

        State it = s0;
        for (const auto& [x, step] : induction) {
          Value v0 = lookup(s0, x);
          it.env[x] = LinearExpr::var(x);
          if (v0) it.add(make_atom(LinearExpr::var(x), step > 0 ? CmpOp::Ge : CmpOp::Le, *v0));
        }
        std::set<std::string> others = modified;
        for (const auto& [x, step] : induction) others.erase(x);
        havoc(it, others);
        record_derefs(*cond, it);
        std::vector<State> entered = assume(*cond, false, it);
        entered = exec(body, std::move(entered));
        for (auto& t : entered) {
          if (!t.done) havoc(t, modified);
          out.push_back(std::move(t));
        }
        check_paths(out.size());
      }
      return out;
    }

    for (int k = 0; k < opts_.unroll_bound && !states.empty(); ++k) {
      std::vector<State> cont;
      for (auto& s : states) {
        if (cond) {
          record_derefs(*cond, s);
          for (auto& t : assume(*cond, true, s)) out.push_back(std::move(t));
          for (auto& t : assume(*cond, false, s)) cont.push_back(std::move(t));
        } else {
          cont.push_back(std::move(s));
        }
      }
      cont = exec(body, std::move(cont));
      for (const auto* n : next) cont = exec(*n, std::move(cont));
      keep_alive(cont);
      states = std::move(cont);
      check_paths(out.size() + states.size());
    }
    for (auto& s : states) {
      havoc(s, modified);
      out.push_back(std::move(s));
    }
    return out;
  }

  std::vector<State> exec_one(const AstNode& n, State s) {
    switch (n.kind) {
      case NodeKind::Compound: {
        std::vector<State> states{std::move(s)};
        for (const auto& c : n.children) states = exec(c, std::move(states));
        return states;
      }
      case NodeKind::Decl: {
        for (const auto& c : n.children) record_derefs(c, s);
        if (n.decl.has_init) {
          assign(s, n.text, eval(n.children.back(), s));
        } else if (related_.count(n.text)) {
          s.env[n.text] = LinearExpr::var(n.text);
        }
        return {std::move(s)};
      }
      case NodeKind::Return:
        for (const auto& c : n.children) {
          record_derefs(c, s);
          eval(c, s);
        }
        s.done = true;
        return {std::move(s)};
      case NodeKind::If: {
        record_derefs(n.children[0], s);
        std::vector<State> out = exec(n.children[1], assume(n.children[0], false, s));
        std::vector<State> other = assume(n.children[0], true, s);
        if (n.children.size() > 2) other = exec(n.children[2], std::move(other));
        for (auto& t : other) out.push_back(std::move(t));
        return out;
      }
      case NodeKind::For:
      case NodeKind::While:
        return exec_loop(n, {std::move(s)});
      default:
        record_derefs(n, s);
        eval(n, s);
        return {std::move(s)};
    }
  }

  const PointerSlice& slice_;
  SymbolicOptions opts_;
  std::set<std::string> related_;
  bool saw_deref_ = false;
};

}  // namespace

ConstraintSet symbolic_execute(const PointerSlice& slice, const SymbolicOptions& opts) {
  if (opts.unroll_bound < 1) throw std::invalid_argument("unroll bound must be at least 1");
  return Executor(slice, opts).run();
}

}  // namespace clone_lattice
