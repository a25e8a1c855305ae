#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "onerel/automorphism.hpp"
#include "onerel/presentation.hpp"
#include "onerel/rewriting.hpp"

namespace onerel {

enum class StepCase { free_factor, cyclic_cover };

/// Edge data of a cyclic_cover step. The parent splits as an HNN extension
/// of the child (vertex group) over levels 0..m-1, with stable letter t.
struct StepSplitting {
  Generator stable{1};
  int m = 0;
  int edge_rank = 0;
};

/// One step of the hierarchy. The child is read off the cyclic core of
/// automorphism_used(parent relator): a free_factor step drops `omitted`
/// and reindexes the rest; a cyclic_cover step rewrites over y_{i,j} with
/// stable letter splitting->stable. character_used is the vanishing
/// character in the parent basis, i.e. the dual of t pulled back along the
/// automorphism.
struct HierarchyStep {
  StepCase case_tag = StepCase::free_factor;
  Automorphism automorphism_used = Automorphism::identity(1);
  std::optional<IntegralCharacter> character_used;
  std::optional<Generator> omitted;
  std::optional<StepSplitting> splitting;
  OneRelatorPresentation child{1, Word()};
  // Whitehead-minimal relator lengths of parent and child.
  int metric_before = 0;
  int metric_after = 0;
  int child_length = 0;  // length of the stored child relator
};

/// <x | x^k>; k = 0 is the infinite cyclic group.
struct TerminalGroup {
  long long order = 0;
  /// Rank at which the relator was empty, if the free-group exit was taken.
  std::optional<int> free_exit_rank;
};

struct Hierarchy {
  OneRelatorPresentation root;
  std::vector<HierarchyStep> steps;
  TerminalGroup terminal;
};

/// Case 1 if the relator lies in a proper free factor, Case 2 otherwise.
/// Requires rank >= 2 and a nonempty relator.
HierarchyStep hierarchy_step(const OneRelatorPresentation& p);

/// Thrown by build_hierarchy when max_steps runs out; carries the steps
/// built so far.
class StepBudgetExceeded : public std::runtime_error {
 public:
  StepBudgetExceeded(Hierarchy partial)
      : std::runtime_error("hierarchy step budget exhausted"), partial_(std::move(partial)) {}
  const Hierarchy& partial() const { return partial_; }

 private:
  Hierarchy partial_;
};

Hierarchy build_hierarchy(const OneRelatorPresentation& p, int max_steps = 64);

struct HierarchyCheck {
  bool ok = true;
  std::size_t step = 0;  // index of the first failing step (steps.size() for the terminal)
  std::string reason;

  explicit operator bool() const { return ok; }
};

/// Replays every step from the root and checks automorphisms, children,
/// splittings, metrics and the terminal group.
HierarchyCheck verify_hierarchy(const Hierarchy& h);

std::string to_string(StepCase c);

}  // namespace onerel
