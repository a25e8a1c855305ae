#include "onerel/hierarchy.hpp"

#include <cstdlib>
#include <numeric>

namespace onerel {

namespace {

Word drop_generator(const Word& w, Generator g) {
  std::vector<int> raw;
  raw.reserve(w.size());
  for (Letter l : w.letters()) {
    if (l.gen() == g) throw PreconditionError("dropped generator occurs in the relator");
    raw.push_back(l.sign() * (l.index() > g.index ? l.index() - 1 : l.index()));
  }
  return Word::from_signed(raw);
}

OneRelatorPresentation cover_child(const Word& w1, Generator t, int rank, YWord* rewritten = nullptr) {
  YWord yw = y_rewrite(w1, t, rank);
  OneRelatorPresentation child((rank - 1) * (yw.m + 1), vertex_word(yw));
  if (rewritten) *rewritten = std::move(yw);
  return child;
}

int y_length(const Word& w, Generator t) { return static_cast<int>(w.size() - occurrence_count(w, t)); }

struct Cover {
  Automorphism alpha;  // on the parent relator
  Generator stable;
  Word relator;  // cyclic core of alpha(parent relator)
};

// Normalizes phi on the minimal word, then shortens it by Whitehead moves
// that keep the stable character.
Cover cover_for(const WhiteheadResult& minimal, int rank, const IntegralCharacter& phi) {
  Automorphism normalize = Automorphism::identity(rank);
  Generator t(rank);
  if (auto unit = phi.unit_generator(); unit && phi.value(*unit) == 1) {
    t = *unit;
  } else {
    normalize = normalize_character(phi);
  }
  // Inner automorphisms keep characters; absorbing the conjugator keeps
  // alpha(w) exactly equal to the stored relator.
  const CyclicReduction r = cyclically_reduce(apply(normalize.backward(), minimal.minimal));
  WhiteheadResult fixed = whitehead_minimize_fixing(r.core, rank, t);
  Automorphism alpha = compose(fixed.automorphism, compose(conjugation(rank, r.conjugator),
                                                           compose(normalize.inverse(), minimal.automorphism)));
  return {std::move(alpha), t, std::move(fixed.minimal)};
}

// Characters vanishing on a word with exponent vector e (e != 0).
std::vector<IntegralCharacter> vanishing_characters(const std::vector<long long>& e) {
  const std::size_t n = e.size();
  for (std::size_t i = n; i-- > 0;) {
    if (e[i] == 0) return {IntegralCharacter::dual(static_cast<int>(n), Generator(static_cast<int>(i + 1)))};
  }
  std::vector<IntegralCharacter> out;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const long long g = std::gcd(e[i], e[j]);
      std::vector<long long> v(n, 0);
      v[i] = e[j] / g;
      v[j] = -e[i] / g;
      out.emplace_back(std::move(v));
    }
  }
  return out;
}

int minimal_length(const OneRelatorPresentation& p) {
  return static_cast<int>(whitehead_minimize(p.relator(), p.rank()).minimal.size());
}

HierarchyStep free_factor_step(const Word& w1, Automorphism alpha, Generator omitted, int rank, int metric) {
  HierarchyStep s;
  s.case_tag = StepCase::free_factor;
  s.automorphism_used = std::move(alpha);
  s.omitted = omitted;
  s.child = OneRelatorPresentation(rank - 1, drop_generator(w1, omitted));
  s.metric_before = metric;
  s.child_length = static_cast<int>(s.child.relator().size());
  s.metric_after = minimal_length(s.child);
  return s;
}

TerminalGroup terminal_of(const OneRelatorPresentation& p, std::optional<int> free_exit) {
  return {std::llabs(exponent_sum(p.relator(), Generator(1))), free_exit};
}

}  // namespace

HierarchyStep hierarchy_step(const OneRelatorPresentation& p) {
  const int n = p.rank();
  if (n < 2) throw PreconditionError("hierarchy step needs rank at least 2");
  if (p.relator().empty()) throw PreconditionError("hierarchy step needs a nonempty relator");

  WhiteheadResult minimal = whitehead_minimize(p.relator(), n);
  const int metric = static_cast<int>(minimal.minimal.size());
  for (int i = 1; i <= n; ++i) {
    if (occurrence_count(minimal.minimal, Generator(i)) == 0) {
      return free_factor_step(minimal.minimal, std::move(minimal.automorphism), Generator(i), n, metric);
    }
  }

  const auto e = exponent_vector(minimal.minimal, n);
  std::vector<IntegralCharacter> candidates;
  if (std::all_of(e.begin(), e.end(), [](long long v) { return v == 0; })) {
    candidates.push_back(IntegralCharacter::dual(n, Generator(minimal.minimal.max_generator())));
  } else {
    candidates = vanishing_characters(e);
  }
  std::optional<Cover> best;
  for (const IntegralCharacter& phi : candidates) {
    Cover c = cover_for(minimal, n, phi);
    if (!best || y_length(c.relator, c.stable) < y_length(best->relator, best->stable)) best = std::move(c);
  }

  YWord yw;
  HierarchyStep s;
  s.case_tag = StepCase::cyclic_cover;
  s.child = cover_child(best->relator, best->stable, n, &yw);
  s.character_used = pullback(IntegralCharacter::dual(n, best->stable), best->alpha);
  s.splitting = StepSplitting{best->stable, yw.m, (n - 1) * yw.m};
  s.automorphism_used = std::move(best->alpha);
  s.metric_before = metric;
  s.child_length = static_cast<int>(s.child.relator().size());
  s.metric_after = minimal_length(s.child);
  return s;
}

Hierarchy build_hierarchy(const OneRelatorPresentation& p, int max_steps) {
  if (max_steps < 1) throw PreconditionError("max_steps must be positive");
  Hierarchy h{p, {}, {}};
  OneRelatorPresentation current = p;
  std::optional<int> free_exit;
  while (current.rank() > 1) {
    if (static_cast<int>(h.steps.size()) >= max_steps) throw StepBudgetExceeded(std::move(h));
    if (current.relator().empty()) {
      if (!free_exit) free_exit = current.rank();
      const Generator top(current.rank());
      h.steps.push_back(free_factor_step(Word(), Automorphism::identity(current.rank()), top, current.rank(), 0));
    } else {
      h.steps.push_back(hierarchy_step(current));
    }
    current = h.steps.back().child;
  }
  if (current.relator().empty() && !free_exit) free_exit = 1;
  h.terminal = terminal_of(current, free_exit);
  return h;
}

HierarchyCheck verify_hierarchy(const Hierarchy& h) {
  auto fail = [](std::size_t step, std::string reason) { return HierarchyCheck{false, step, std::move(reason)}; };
  OneRelatorPresentation current = h.root;
  std::optional<int> free_exit;
  for (std::size_t k = 0; k < h.steps.size(); ++k) {
    const HierarchyStep& s = h.steps[k];
    const int n = current.rank();
    if (n < 2) return fail(k, "step taken at rank 1");
    if (s.automorphism_used.rank() != n) return fail(k, "automorphism rank does not match the parent");
    if (!s.automorphism_used.verify()) return fail(k, "automorphism fails its inverse check");
    if (current.relator().empty() && !free_exit) free_exit = n;

    const Word w1 = cyclically_reduce(s.automorphism_used(current.relator())).core;
    if (s.metric_before != minimal_length(current)) return fail(k, "metric_before is not the Whitehead-minimal length");
    if (s.metric_after != minimal_length(s.child)) return fail(k, "metric_after is not the child's minimal length");
    if (s.child_length != static_cast<int>(s.child.relator().size())) return fail(k, "child_length is stale");

    if (s.case_tag == StepCase::free_factor) {
      if (!s.omitted || s.omitted->index > n) return fail(k, "free_factor step without a valid omitted generator");
      if (occurrence_count(w1, *s.omitted) != 0) return fail(k, "omitted generator occurs in the image relator");
      if (!(s.child == OneRelatorPresentation(n - 1, drop_generator(w1, *s.omitted)))) {
        return fail(k, "child does not match the reduced relator");
      }
      if (s.metric_after > s.metric_before) return fail(k, "metric increased on a free_factor step");
    } else {
      if (!s.splitting || !s.character_used) return fail(k, "cyclic_cover step without splitting data");
      if (proper_free_factor(current.relator(), n)) return fail(k, "relator lies in a proper free factor");
      const Generator t = s.splitting->stable;
      if (t.index > n || exponent_sum(w1, t) != 0) return fail(k, "stable letter does not vanish on the relator");
      if (!(*s.character_used == pullback(IntegralCharacter::dual(n, t), s.automorphism_used))) {
        return fail(k, "character does not match the stable letter");
      }
      YWord yw;
      if (!(s.child == cover_child(w1, t, n, &yw))) return fail(k, "child does not match the y-rewriting");
      if (s.splitting->m != yw.m || s.splitting->edge_rank != (n - 1) * yw.m) {
        return fail(k, "splitting levels do not match the y-rewriting");
      }
      if (!is_conjugate(y_expand(y_word_from_vertex(s.child.relator(), t, n)), w1)) {
        return fail(k, "child relator does not expand to the parent relator");
      }
      if (s.metric_after >= s.metric_before) return fail(k, "metric did not decrease on a cyclic_cover step");
    }
    current = s.child;
  }
  if (current.rank() != 1) return fail(h.steps.size(), "hierarchy does not end at rank 1");
  if (current.relator().empty() && !free_exit) free_exit = 1;
  const TerminalGroup expected = terminal_of(current, free_exit);
  if (h.terminal.order != expected.order || h.terminal.free_exit_rank != expected.free_exit_rank) {
    return fail(h.steps.size(), "terminal group does not match the last child");
  }
  return {};
}

std::string to_string(StepCase c) { return c == StepCase::free_factor ? "free_factor" : "cyclic_cover"; }

}  // namespace onerel
