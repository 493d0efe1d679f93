#pragma once

// Tactic recording.
//
// Goals are promoted to xgoals carrying a unique id, and tactics to
// xtactics that, besides doing their work, record in a goal tree which
// script expression was applied to which goal. The tree keeps one node per
// goal; a node is either Active (still open) or Applied, in which case it
// holds the expression and one child per resulting subgoal.
//
// Every xtactic application is atomic with respect to the tree: a failed
// application, however deep inside a tactical, leaves the tree exactly as
// it was. This is done with an undo journal scoped by Transaction objects.
//
// A RecordingContext serves one proof attempt at a time and is not
// thread-safe; distinct contexts are independent.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "hiprove/errors.hpp"
#include "hiprove/hiproof.hpp"
#include "hiprove/kernel.hpp"
#include "hiprove/script_expr.hpp"
#include "hiprove/tactics.hpp"
#include "hiprove/term_syntax.hpp"

namespace hiprove {

struct GoalId {
  std::uint64_t value = 0;
  friend auto operator<=>(const GoalId&, const GoalId&) = default;
};

inline std::string to_string(GoalId id) { return std::to_string(id.value); }

struct XGoal {
  Goal goal;
  GoalId id;
  friend bool operator==(const XGoal&, const XGoal&) = default;
};

/// A user box opened at a node by hilabel_tac. `outputs` are the goals the
/// boxed tactic left, in order; they may include the node itself when the
/// tactic did nothing. `output_marks[i]` is how many boxes outputs[i]
/// carried when this box closed: those were opened inside this box. Boxes at
/// the same node with index in (k, end) are nested inside box k.
struct BoxMark {
  UserLabel label;
  std::vector<GoalId> outputs;
  std::vector<std::size_t> output_marks;
  std::size_t end = 0;
  bool closed = false;
  friend bool operator==(const BoxMark&, const BoxMark&) = default;
};

struct StepRecord {
  ScriptExpr expr;
  std::vector<GoalId> children;
  friend bool operator==(const StepRecord&, const StepRecord&) = default;
};

struct GoalNode {
  GoalId id;
  Goal goal;
  std::optional<StepRecord> step;  // empty while the goal is Active
  std::vector<BoxMark> boxes;

  bool active() const noexcept { return !step.has_value(); }
  friend bool operator==(const GoalNode&, const GoalNode&) = default;
};

/// The goal tree and its id index.
class GTree {
 public:
  GTree() = default;
  GTree(GoalId root, Goal goal) : root_(root) {
    nodes_.emplace(root, GoalNode{root, std::move(goal), std::nullopt, {}});
  }

  GoalId root() const noexcept { return root_; }
  bool empty() const noexcept { return nodes_.empty(); }
  std::size_t size() const noexcept { return nodes_.size(); }
  bool contains(GoalId id) const { return nodes_.contains(id); }

  const GoalNode& node(GoalId id) const {
    auto it = nodes_.find(id);
    if (it == nodes_.end()) throw RecordingError("unknown goal id " + to_string(id));
    return it->second;
  }

  /// The id index; keys equal the ids of the nodes they map to.
  const std::map<GoalId, GoalNode>& index() const noexcept { return nodes_; }

  friend bool operator==(const GTree&, const GTree&) = default;

 private:
  friend class RecordingContext;

  GoalNode& mutable_node(GoalId id) {
    auto it = nodes_.find(id);
    if (it == nodes_.end()) throw RecordingError("unknown goal id " + to_string(id));
    return it->second;
  }

  GoalId root_;
  std::map<GoalId, GoalNode> nodes_;
};

/// Ids of the Active nodes in depth-first, left-to-right order.
inline std::vector<GoalId> active_ids(const GTree& t) {
  std::vector<GoalId> out;
  if (t.empty()) return out;
  std::function<void(GoalId)> walk = [&](GoalId id) {
    const auto& n = t.node(id);
    if (n.active()) {
      out.push_back(id);
      return;
    }
    for (auto c : n.step->children) walk(c);
  };
  walk(t.root());
  return out;
}

/// Checks the structural invariants of a goal tree: the index is
/// consistent, every node is reachable exactly once from the root, and box
/// outputs name nodes of the tree. Returns a description of the first
/// problem found.
inline std::optional<std::string> check_gtree(const GTree& t) {
  if (t.empty()) return std::nullopt;
  for (const auto& [key, n] : t.index())
    if (key != n.id) return "index key " + to_string(key) + " maps to node " + to_string(n.id);
  std::map<GoalId, int> seen;
  std::optional<std::string> problem;
  std::function<void(GoalId)> walk = [&](GoalId id) {
    if (problem) return;
    if (!t.contains(id)) {
      problem = "dangling child id " + to_string(id);
      return;
    }
    if (++seen[id] > 1) {
      problem = "node " + to_string(id) + " reached twice";
      return;
    }
    const auto& n = t.node(id);
    for (const auto& b : n.boxes)
      for (auto o : b.outputs)
        if (!t.contains(o)) problem = "box output " + to_string(o) + " is not in the tree";
    if (n.step)
      for (auto c : n.step->children) walk(c);
  };
  walk(t.root());
  if (problem) return problem;
  if (seen.size() != t.size()) return std::string("unreachable nodes in the index");
  return std::nullopt;
}

/// Compares two trees node by node (goal, expression, child count, boxes)
/// ignoring the ids themselves.
inline bool equal_up_to_ids(const GTree& a, const GTree& b, bool compare_boxes = false) {
  if (a.empty() || b.empty()) return a.empty() == b.empty();
  std::function<bool(GoalId, GoalId)> eq = [&](GoalId x, GoalId y) {
    const auto& n = a.node(x);
    const auto& m = b.node(y);
    if (!(n.goal == m.goal) || n.active() != m.active()) return false;
    if (compare_boxes) {
      if (n.boxes.size() != m.boxes.size()) return false;
      for (std::size_t i = 0; i < n.boxes.size(); ++i)
        if (!(n.boxes[i].label == m.boxes[i].label) ||
            n.boxes[i].outputs.size() != m.boxes[i].outputs.size())
          return false;
    }
    if (n.active()) return true;
    if (!(n.step->expr == m.step->expr) || n.step->children.size() != m.step->children.size())
      return false;
    for (std::size_t i = 0; i < n.step->children.size(); ++i)
      if (!eq(n.step->children[i], m.step->children[i])) return false;
    return true;
  };
  return eq(a.root(), b.root());
}

/// The mutable recording state of one proof attempt: the goal tree, the id
/// counter and the undo journal.
class RecordingContext {
 public:
  /// Starts a fresh proof attempt; the root goal gets id 1.
  XGoal start(const Goal& g) {
    next_id_ = 1;
    const GoalId root = allocate();
    tree_ = GTree(root, g);
    journal_.clear();
    return {g, root};
  }

  const GTree& tree() const noexcept { return tree_; }

  /// Replaces the tree wholesale (used by undo). The id counter is kept so
  /// ids are never reused.
  void restore(GTree t) {
    tree_ = std::move(t);
    journal_.clear();
  }

  std::uint64_t next_id() const noexcept { return next_id_; }

  /// Marks `id` as Applied with `expr` and adds one Active child per
  /// subgoal, returning the subgoals paired with their fresh ids.
  std::vector<XGoal> extend_gtree(GoalId id, const ScriptExpr& expr,
                                  const std::vector<Goal>& subgoals) {
    GoalNode& n = tree_.mutable_node(id);
    if (!n.active())
      throw RecordingError("goal " + to_string(id) + " already has a recorded step");
    std::vector<XGoal> out;
    StepRecord step{expr, {}};
    for (const auto& g : subgoals) {
      const GoalId c = allocate();
      step.children.push_back(c);
      out.push_back({g, c});
    }
    for (const auto& x : out)
      tree_.nodes_.emplace(x.id, GoalNode{x.id, x.goal, std::nullopt, {}});
    // `n` stays valid: std::map insertion does not move existing nodes.
    n.step = std::move(step);
    journal_.push_back(Extended{id});
    return out;
  }

  /// Opens a box at an Active node; returns its index among the node's boxes.
  std::size_t open_box(GoalId id, UserLabel label) {
    GoalNode& n = tree_.mutable_node(id);
    if (!n.active()) throw RecordingError("box opened on closed goal " + to_string(id));
    n.boxes.push_back(BoxMark{std::move(label), {}, {}, 0, false});
    journal_.push_back(BoxOpened{id});
    return n.boxes.size() - 1;
  }

  void close_box(GoalId id, std::size_t index, std::vector<GoalId> outputs) {
    GoalNode& n = tree_.mutable_node(id);
    BoxMark& b = n.boxes.at(index);
    b.output_marks.clear();
    for (auto o : outputs) b.output_marks.push_back(tree_.node(o).boxes.size());
    b.outputs = std::move(outputs);
    b.end = n.boxes.size();
    b.closed = true;
    journal_.push_back(BoxClosed{id, index});
  }

  /// Scope within which tree changes are provisional. Unless commit() is
  /// called, the destructor undoes every change made since construction.
  class Transaction {
   public:
    explicit Transaction(RecordingContext& ctx) : ctx_(ctx), mark_(ctx.journal_.size()) {
      ++ctx_.depth_;
    }
    Transaction(const Transaction&) = delete;
    Transaction& operator=(const Transaction&) = delete;
    ~Transaction() {
      if (!done_) ctx_.rollback_to(mark_);
      if (--ctx_.depth_ == 0) ctx_.journal_.clear();
    }
    void commit() noexcept { done_ = true; }
    void rollback() {
      ctx_.rollback_to(mark_);
      done_ = true;
    }

   private:
    RecordingContext& ctx_;
    std::size_t mark_;
    bool done_ = false;
  };

 private:
  struct Extended { GoalId id; };
  struct BoxOpened { GoalId id; };
  struct BoxClosed { GoalId id; std::size_t index; };
  using Change = std::variant<Extended, BoxOpened, BoxClosed>;

  GoalId allocate() { return GoalId{next_id_++}; }

  void rollback_to(std::size_t mark) {
    while (journal_.size() > mark) {
      const Change c = journal_.back();
      journal_.pop_back();
      if (const auto* e = std::get_if<Extended>(&c)) {
        GoalNode& n = tree_.mutable_node(e->id);
        for (auto child : n.step->children) tree_.nodes_.erase(child);
        n.step.reset();
      } else if (const auto* o = std::get_if<BoxOpened>(&c)) {
        tree_.mutable_node(o->id).boxes.pop_back();
      } else {
        const auto& b = std::get<BoxClosed>(c);
        BoxMark& m = tree_.mutable_node(b.id).boxes.at(b.index);
        m.outputs.clear();
        m.output_marks.clear();
        m.end = 0;
        m.closed = false;
      }
    }
  }

  GTree tree_;
  std::uint64_t next_id_ = 1;
  std::vector<Change> journal_;
  int depth_ = 0;
};

struct XGoalState {
  Instantiation meta;
  std::vector<XGoal> xsubgoals;
  Justification justification;
};

using XTactic = std::function<XGoalState(RecordingContext&, const XGoal&)>;

/// Promotes a tactic; the recorded expression is the bare binding name.
inline XTactic tactic_wrap(std::string name, Tactic tac) {
  return [name = std::move(name), tac = std::move(tac)](RecordingContext& ctx,
                                                        const XGoal& xg) -> XGoalState {
    GoalState gs = tac(xg.goal);
    auto xgs = ctx.extend_gtree(xg.id, ScriptExpr::name(name), gs.subgoals);
    return {gs.meta, std::move(xgs), std::move(gs.justification)};
  };
}

using TermTactic = std::function<Tactic(const Term&)>;

/// Promotes a term-taking tactic applied to `arg`; the recorded expression
/// is `NAME "arg"`.
inline XTactic term_tactic_wrap(std::string name, TermTactic tac, Term arg) {
  return [name = std::move(name), tac = std::move(tac), arg = std::move(arg)](
             RecordingContext& ctx, const XGoal& xg) -> XGoalState {
    GoalState gs = tac(arg)(xg.goal);
    const ScriptExpr obj = ScriptExpr::app(ScriptExpr::name(name), {ScriptExpr::term(arg)});
    auto xgs = ctx.extend_gtree(xg.id, obj, gs.subgoals);
    return {gs.meta, std::move(xgs), std::move(gs.justification)};
  };
}

namespace detail {

// Justification for a goal whose subgoals were each refined further:
// `counts[i]` theorems go to `inner[i]`, whose results feed `outer`.
inline Justification compose_justifications(Justification outer, std::vector<Justification> inner,
                                            std::vector<std::size_t> counts) {
  return [outer = std::move(outer), inner = std::move(inner),
          counts = std::move(counts)](const std::vector<Thm>& ths) {
    std::vector<Thm> mid;
    mid.reserve(inner.size());
    std::size_t off = 0;
    for (std::size_t i = 0; i < inner.size(); ++i) {
      if (off + counts[i] > ths.size())
        throw TacticFailure("justification received too few theorems");
      std::vector<Thm> slice(ths.begin() + static_cast<std::ptrdiff_t>(off),
                             ths.begin() + static_cast<std::ptrdiff_t>(off + counts[i]));
      mid.push_back(inner[i](slice));
      off += counts[i];
    }
    return outer(mid);
  };
}

inline XGoalState refine_each(RecordingContext& ctx, XGoalState first,
                              const std::function<XGoalState(std::size_t, const XGoal&)>& next) {
  XGoalState out;
  out.meta = first.meta;
  std::vector<Justification> js;
  std::vector<std::size_t> counts;
  for (std::size_t i = 0; i < first.xsubgoals.size(); ++i) {
    XGoalState s = next(i, first.xsubgoals[i]);
    counts.push_back(s.xsubgoals.size());
    js.push_back(std::move(s.justification));
    for (auto& x : s.xsubgoals) out.xsubgoals.push_back(std::move(x));
  }
  (void)ctx;
  out.justification = compose_justifications(std::move(first.justification), std::move(js),
                                             std::move(counts));
  return out;
}

inline XGoalState identity_state(const XGoal& xg) {
  return {{}, {xg}, [](const std::vector<Thm>& ths) {
            if (ths.size() != 1) throw TacticFailure("identity justification expects 1 theorem");
            return ths.front();
          }};
}

inline XGoalState repeat_apply(const XTactic& a, RecordingContext& ctx, const XGoal& xg) {
  RecordingContext::Transaction tx(ctx);
  XGoalState first;
  try {
    first = a(ctx, xg);
  } catch (const TacticFailure&) {
    tx.rollback();
    return identity_state(xg);
  }
  XGoalState out = refine_each(ctx, std::move(first), [&](std::size_t, const XGoal& sub) {
    return repeat_apply(a, ctx, sub);
  });
  tx.commit();
  return out;
}

}  // namespace detail

/// Applies `a`, then `b` to every resulting subgoal.
inline XTactic then_(XTactic a, XTactic b) {
  return [a = std::move(a), b = std::move(b)](RecordingContext& ctx, const XGoal& xg) {
    RecordingContext::Transaction tx(ctx);
    XGoalState out = detail::refine_each(ctx, a(ctx, xg), [&](std::size_t, const XGoal& sub) {
      return b(ctx, sub);
    });
    tx.commit();
    return out;
  };
}

/// Applies `a`, then `bs[i]` to its i-th subgoal; the counts must agree.
inline XTactic thenl_(XTactic a, std::vector<XTactic> bs) {
  return [a = std::move(a), bs = std::move(bs)](RecordingContext& ctx, const XGoal& xg) {
    RecordingContext::Transaction tx(ctx);
    XGoalState first = a(ctx, xg);
    if (first.xsubgoals.size() != bs.size())
      throw TacticFailure("THENL: " + std::to_string(bs.size()) + " tactic(s) for " +
                          std::to_string(first.xsubgoals.size()) + " subgoal(s) in goal " +
                          print_goal(xg.goal));
    XGoalState out = detail::refine_each(ctx, std::move(first),
                                         [&](std::size_t i, const XGoal& sub) {
                                           return bs[i](ctx, sub);
                                         });
    tx.commit();
    return out;
  };
}

/// Applies `a` until it fails, recursively on all produced subgoals. Only
/// the successful applications are recorded.
inline XTactic repeat_(XTactic a) {
  return [a = std::move(a)](RecordingContext& ctx, const XGoal& xg) {
    return detail::repeat_apply(a, ctx, xg);
  };
}

/// Applies `a`; if it fails, discards its records and applies `b`.
inline XTactic orelse_(XTactic a, XTactic b) {
  return [a = std::move(a), b = std::move(b)](RecordingContext& ctx,
                                              const XGoal& xg) -> XGoalState {
    std::string first_error;
    {
      RecordingContext::Transaction tx(ctx);
      try {
        XGoalState s = a(ctx, xg);
        tx.commit();
        return s;
      } catch (const TacticFailure& e) {
        tx.rollback();
        first_error = e.what();
      }
    }
    try {
      return b(ctx, xg);
    } catch (const TacticFailure& e) {
      throw TacticFailure("ORELSE: both alternatives failed (" + first_error + "; " + e.what() +
                          ")");
    }
  };
}

/// Draws a box labelled `label` around what `t` does to the goal: the box
/// enters at the goal and leaves with t's subgoals. The justification is
/// boxed in the kernel as well, so the theorem's own proof shows the box.
inline XTactic hilabel_tac(UserLabel label, XTactic t) {
  return [label = std::move(label), t = std::move(t)](RecordingContext& ctx,
                                                      const XGoal& xg) -> XGoalState {
    RecordingContext::Transaction tx(ctx);
    const std::size_t k = ctx.open_box(xg.id, label);
    XGoalState s = t(ctx, xg);
    std::vector<GoalId> outs;
    for (const auto& x : s.xsubgoals) outs.push_back(x.id);
    ctx.close_box(xg.id, k, std::move(outs));
    Justification j = [label, inner = std::move(s.justification)](const std::vector<Thm>& ths) {
      return hilabel(label, inner, ths);
    };
    s.justification = std::move(j);
    tx.commit();
    return s;
  };
}

/// Binding names visible to the script interpreter, each mapped to a
/// promoted tactic or to a constructor of one from a term argument.
class Registry {
 public:
  struct Entry {
    std::optional<XTactic> nullary;
    std::optional<std::function<XTactic(const Term&)>> with_term;
  };

  /// Registers and returns the promoted tactic.
  XTactic wrap(const std::string& name, Tactic tac) {
    XTactic x = tactic_wrap(name, std::move(tac));
    entries_[name] = Entry{x, std::nullopt};
    return x;
  }

  /// Registers the promoted constructor and returns it.
  std::function<XTactic(const Term&)> wrap_term(const std::string& name, TermTactic tac) {
    std::function<XTactic(const Term&)> ctor = [name, tac = std::move(tac)](const Term& t) {
      return term_tactic_wrap(name, tac, t);
    };
    entries_[name] = Entry{std::nullopt, ctor};
    return ctor;
  }

  const Entry* find(std::string_view name) const {
    auto it = entries_.find(std::string(name));
    return it == entries_.end() ? nullptr : &it->second;
  }

  std::vector<std::string> names() const {
    std::vector<std::string> out;
    for (const auto& [n, _] : entries_) out.push_back(n);
    return out;
  }

 private:
  std::map<std::string, Entry> entries_;
};

/// The registry of all built-in tactics.
inline Registry default_registry() {
  Registry r;
  r.wrap("CONJ_TAC", conj_tac);
  r.wrap("CONJUNCTS_TAC", conjuncts_tac);
  r.wrap("DISCH_TAC", disch_tac);
  r.wrap("TRUTH_TAC", truth_tac);
  r.wrap("ASSUMPTION_TAC", assumption_tac);
  r.wrap("DISJ1_TAC", disj1_tac);
  r.wrap("DISJ2_TAC", disj2_tac);
  r.wrap_term("CONJ_ASSUM_TAC", conj_assum_tac);
  r.wrap_term("DISJ_CASES_TAC", disj_cases_tac);
  return r;
}

}  // namespace hiprove
