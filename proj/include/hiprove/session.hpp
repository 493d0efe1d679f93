#pragma once

// The subgoal package: a goal stack with undo, recording every step.
//
// Each entry of the stack is a snapshot of the pending subgoals, the
// justification that turns theorems for them into a theorem for the root
// goal, and the goal tree. Steps always act on the first pending subgoal.
// A Session is single-threaded.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hiprove/errors.hpp"
#include "hiprove/kernel.hpp"
#include "hiprove/recorder.hpp"
#include "hiprove/script.hpp"
#include "hiprove/tactics.hpp"
#include "hiprove/term_syntax.hpp"

namespace hiprove {

class Session {
 public:
  /// Starts a new proof of `∅ ⊢? t`, discarding any previous state.
  void set_goal(const Term& t) {
    const Goal g({}, t);
    const XGoal root = ctx_.start(g);
    stack_.clear();
    stack_.push_back(Snapshot{{root}, [](const std::vector<Thm>& ths) {
                                if (ths.size() != 1)
                                  throw RecordingError("root justification expects 1 theorem");
                                return ths.front();
                              },
                              ctx_.tree(), std::nullopt});
  }

  /// Applies `t` to the first pending subgoal. On failure nothing changes.
  void apply(const XTactic& t) {
    if (stack_.empty()) throw UsageError("no goal set");
    const Snapshot& top = stack_.back();
    if (top.pending.empty()) throw UsageError("no pending subgoals");

    RecordingContext::Transaction tx(ctx_);
    XGoalState s = t(ctx_, top.pending.front());

    Snapshot next;
    next.pending = s.xsubgoals;
    next.pending.insert(next.pending.end(), top.pending.begin() + 1, top.pending.end());
    const std::size_t k = s.xsubgoals.size();
    next.justification = [k, step = std::move(s.justification),
                          rest = top.justification](const std::vector<Thm>& ths) {
      if (ths.size() < k) throw RecordingError("too few theorems for the pending goals");
      std::vector<Thm> mine(ths.begin(), ths.begin() + static_cast<std::ptrdiff_t>(k));
      std::vector<Thm> outer{step(mine)};
      outer.insert(outer.end(), ths.begin() + static_cast<std::ptrdiff_t>(k), ths.end());
      return rest(outer);
    };
    if (next.pending.empty()) {
      Thm th = next.justification({});
      check_root(th);
      next.theorem = std::move(th);
    }
    next.tree = ctx_.tree();
    tx.commit();
    stack_.push_back(std::move(next));
  }

  /// Undoes the last step. Ids allocated since are not reused.
  void back() {
    if (stack_.size() < 2) throw UsageError("nothing to undo");
    stack_.pop_back();
    ctx_.restore(stack_.back().tree);
  }

  bool has_goal() const noexcept { return !stack_.empty(); }
  bool finished() const noexcept { return has_goal() && stack_.back().theorem.has_value(); }
  std::size_t depth() const noexcept { return stack_.size(); }

  const std::vector<XGoal>& pending() const {
    require_goal();
    return stack_.back().pending;
  }

  /// The theorem of the root goal once no subgoals remain.
  const Thm& theorem() const {
    if (!finished()) throw UsageError("the proof is not finished");
    return *stack_.back().theorem;
  }

  const GTree& tree() const {
    require_goal();
    return ctx_.tree();
  }

  /// Plain textual proof state (the `p` command).
  std::string print_state() const {
    if (!has_goal()) return "No goal set\n";
    if (finished()) return "No subgoals\n" + print_thm(theorem()) + "\n";
    const auto& ps = stack_.back().pending;
    std::string out = std::to_string(ps.size()) + (ps.size() == 1 ? " subgoal\n" : " subgoals\n");
    for (std::size_t i = 0; i < ps.size(); ++i)
      out += "  " + std::to_string(i + 1) + ". " + print_goal(ps[i].goal) + "\n";
    return out;
  }

 private:
  struct Snapshot {
    std::vector<XGoal> pending;
    Justification justification;
    GTree tree;
    std::optional<Thm> theorem;
  };

  void require_goal() const {
    if (stack_.empty()) throw UsageError("no goal set");
  }

  void check_root(const Thm& th) const {
    const Goal& g = ctx_.tree().node(ctx_.tree().root()).goal;
    if (!(th.conclusion() == g.conclusion) || !subset_of(th.assumptions(), g.assumptions))
      throw RecordingError("justification proved " + print_thm(th) + " instead of " +
                           print_goal(g));
  }

  RecordingContext ctx_;
  std::vector<Snapshot> stack_;
};

inline std::string describe_pending(const std::vector<XGoal>& ps) {
  std::string s;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    if (i) s += "; ";
    s += print_goal(ps[i].goal);
  }
  return s;
}

/// Proves `t` with a single tactic expression; all goals must be closed.
inline std::pair<Thm, GTree> prove(const Term& t, const ScriptExpr& expr,
                                   const Registry& reg = default_registry()) {
  const XTactic tac = interpret(expr, reg);
  Session s;
  s.set_goal(t);
  s.apply(tac);
  if (!s.finished())
    throw IncompleteProof(std::to_string(s.pending().size()) + " goal(s) left: " +
                              describe_pending(s.pending()),
                          s.pending().size());
  return {s.theorem(), s.tree()};
}

}  // namespace hiprove
