#pragma once

// Script refactoring over recorded goal trees: conversion of a tree to a
// hiproof, flattening of a packaged proof into interactive steps, and
// packing of steps back into one THEN/THENL tactic.

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hiprove/errors.hpp"
#include "hiprove/hiproof.hpp"
#include "hiprove/recorder.hpp"
#include "hiprove/script.hpp"
#include "hiprove/session.hpp"
#include "hiprove/term_syntax.hpp"

namespace hiprove {

/// How Active leaves appear in gtree_to_hiproof: as Variable placeholders
/// (arity 0) or as Identity wires left open (arity 1).
enum class ActiveLeaves { Variable, Open };

namespace detail {

class TreeToHiproof {
 public:
  TreeToHiproof(const GTree& t, ActiveLeaves mode) : tree_(t), mode_(mode) {}

  Hiproof run() {
    const Cut none;
    return enter(tree_.root(), none);
  }

 private:
  // Nodes where the innermost open box ends, with the number of boxes the
  // node carried when that box closed.
  using Cut = std::map<GoalId, std::size_t>;

  Hiproof enter(GoalId id, const Cut& cut) {
    const auto it = cut.find(id);
    const std::size_t limit = it != cut.end() ? it->second : tree_.node(id).boxes.size();
    return from(id, 0, limit, cut);
  }

  // Translates node `id` starting at its box `i`; boxes [i, limit) belong
  // to the current scope.
  Hiproof from(GoalId id, std::size_t i, std::size_t limit, const Cut& cut) {
    const GoalNode& n = tree_.node(id);
    const std::string goal = print_goal(n.goal);
    if (i < limit) {
      const BoxMark& b = n.boxes.at(i);
      if (!b.closed || b.end <= i || b.end > limit)
        throw RecordingError("box '" + b.label.text + "' at goal " + to_string(id) +
                             " is not properly closed");
      Cut inner_cut;
      for (std::size_t k = 0; k < b.outputs.size(); ++k) inner_cut[b.outputs[k]] = b.output_marks.at(k);
      Hiproof boxed = Hiproof::box(b.label, from(id, i + 1, b.end, inner_cut));
      if (boxed.out_count() != b.outputs.size())
        throw RecordingError("box '" + b.label.text + "' has " +
                             std::to_string(boxed.out_count()) + " outputs, recorded " +
                             std::to_string(b.outputs.size()));
      std::vector<Hiproof> conts;
      for (std::size_t k = 0; k < b.outputs.size(); ++k) {
        const GoalId o = b.outputs[k];
        const std::size_t mark = b.output_marks[k];
        if (o == id) {
          conts.push_back(from(id, mark, limit, cut));
        } else {
          const auto c = cut.find(o);
          const std::size_t lim = c != cut.end() ? c->second : tree_.node(o).boxes.size();
          conts.push_back(from(o, mark, lim, cut));
        }
      }
      return then_all(std::move(boxed), std::move(conts));
    }
    if (cut.contains(id)) return identity_step(goal);
    if (n.active()) {
      if (mode_ == ActiveLeaves::Open) return identity_step(goal);
      return variable_step("g" + to_string(id), goal);
    }
    const auto& kids = n.step->children;
    Hiproof atom = Hiproof::atomic(TacticLabel{n.step->expr}, goal, kids.size());
    std::vector<Hiproof> subs;
    for (auto c : kids) subs.push_back(enter(c, cut));
    return then_all(std::move(atom), std::move(subs));
  }

  static Hiproof then_all(Hiproof first, std::vector<Hiproof> rest) {
    if (rest.empty()) return first;
    if (rest.size() == 1) return Hiproof::sequence({std::move(first), std::move(rest.front())});
    return Hiproof::sequence({std::move(first), Hiproof::tensor(std::move(rest))});
  }

  const GTree& tree_;
  ActiveLeaves mode_;
};

}  // namespace detail

/// The hiproof a recording describes: one tactic atomic per applied step,
/// boxes where hilabel_tac drew them. The result is normalized; wires that
/// merely pass a goal through at the end of a sequence are dropped.
inline Hiproof gtree_to_hiproof(const GTree& t, ActiveLeaves mode = ActiveLeaves::Variable) {
  if (t.empty()) throw RecordingError("empty goal tree");
  if (auto problem = check_gtree(t)) throw RecordingError(*problem);
  return normalize(detail::TreeToHiproof(t, mode).run(), false);
}

/// Steps of a recorded tree in depth-first pre-order. Every branch of a
/// split into two or more subgoals is announced by a subgoal comment.
inline FlatScript flatten_tree(const GTree& t) {
  if (t.empty()) throw RecordingError("empty goal tree");
  const GoalNode& root = t.node(t.root());
  FlatScript f{root.goal.conclusion, {}};
  std::function<void(GoalId, const SubgoalNumber&, std::optional<SubgoalNumber>)> walk =
      [&](GoalId id, const SubgoalNumber& number, std::optional<SubgoalNumber> comment) {
        const GoalNode& n = t.node(id);
        if (n.active()) return;
        f.steps.push_back({std::move(comment), n.step->expr, 0});
        const auto& kids = n.step->children;
        if (kids.size() == 1) {
          walk(kids.front(), number, std::nullopt);
          return;
        }
        for (std::size_t k = 0; k < kids.size(); ++k) {
          SubgoalNumber sub = number;
          sub.push_back(k + 1);
          walk(kids[k], sub, sub);
        }
      };
  walk(t.root(), {}, std::nullopt);
  return f;
}

/// One THEN/THENL expression that redoes the recorded tree. While every
/// open branch continues with the same expression it is applied to all of
/// them with THEN; otherwise the branches are packed separately in THENL.
inline ScriptExpr pack_tree(const GTree& t) {
  if (t.empty()) throw RecordingError("empty goal tree");
  std::function<ScriptExpr(GoalId)> pack_node = [&](GoalId id) {
    const GoalNode& n = t.node(id);
    if (n.active())
      throw IncompleteProof("goal " + print_goal(n.goal) + " has no recorded step", 1);
    ScriptExpr expr = n.step->expr;
    std::vector<GoalId> frontier = n.step->children;
    while (!frontier.empty()) {
      bool same = true;
      for (auto f : frontier) {
        const GoalNode& m = t.node(f);
        if (m.active()) throw IncompleteProof("goal " + print_goal(m.goal) + " has no recorded step", 1);
        same = same && m.step->expr == t.node(frontier.front()).step->expr;
      }
      if (!same) {
        std::vector<ScriptExpr> branches;
        for (auto f : frontier) branches.push_back(pack_node(f));
        return ScriptExpr::thenl(std::move(expr), std::move(branches));
      }
      expr = ScriptExpr::then_(std::move(expr), t.node(frontier.front()).step->expr);
      std::vector<GoalId> next;
      for (auto f : frontier)
        for (auto c : t.node(f).step->children) next.push_back(c);
      frontier = std::move(next);
    }
    return expr;
  };
  return pack_node(t.root());
}

/// Replays a flat script step by step in a fresh session. A step after the
/// proof is complete is an error reported at that step's line.
inline Session run_flat(const FlatScript& f, const Registry& reg = default_registry()) {
  Session s;
  s.set_goal(f.goal);
  for (const auto& step : f.steps) {
    const std::optional<std::size_t> line =
        step.line ? std::optional<std::size_t>(step.line) : std::nullopt;
    if (s.finished()) throw ScriptError("script continues past QED", line);
    const XTactic tac = interpret(step.expr, reg);
    try {
      s.apply(tac);
    } catch (const TacticFailure& e) {
      std::string where = line ? " (line " + std::to_string(*line) + ")" : "";
      throw TacticFailure(std::string(e.what()) + where);
    }
  }
  return s;
}

/// Runs a flat script that must close all its goals.
inline Session run_flat_complete(const FlatScript& f, const Registry& reg = default_registry()) {
  Session s = run_flat(f, reg);
  if (!s.finished())
    throw IncompleteProof(std::to_string(s.pending().size()) + " goal(s) left: " +
                              describe_pending(s.pending()),
                          s.pending().size());
  return s;
}

inline FlatScript flatten(const PackagedScript& p, const Registry& reg = default_registry()) {
  auto [thm, tree] = prove(p.goal, p.tactic, reg);
  (void)thm;
  return flatten_tree(tree);
}

inline PackagedScript pack(const FlatScript& f, std::optional<std::string> name = std::nullopt,
                           const Registry& reg = default_registry()) {
  Session s = run_flat_complete(f, reg);
  return {std::move(name), f.goal, pack_tree(s.tree())};
}

/// The canonical form of a flat script: the flattening of its own replay,
/// with compound steps split into atoms and comments regenerated.
inline FlatScript canonical_flat(const FlatScript& f, const Registry& reg = default_registry()) {
  return flatten_tree(run_flat_complete(f, reg).tree());
}

}  // namespace hiprove
