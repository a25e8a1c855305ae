#include <random>
#include <sstream>

#include "doctest.h"
#include "generators.hpp"
#include "onerel/hierarchy.hpp"
#include "oracles.hpp"

using namespace onerel;

namespace {
Word W(std::initializer_list<int> v) { return Word::from_signed(v); }

const Word kCommutator = W({1, 2, -1, -2});

std::string trace(const Hierarchy& h) {
  std::ostringstream out;
  for (const auto& s : h.steps) {
    out << to_string(s.case_tag) << ' ' << to_string(s.child) << ' ' << s.metric_before << "->" << s.metric_after
        << '\n';
  }
  out << "terminal " << h.terminal.order << '\n';
  return out.str();
}

// Lexicographic pair (Whitehead-minimal length, rank).
std::pair<int, int> measure(const OneRelatorPresentation& p) {
  return {static_cast<int>(whitehead_minimize(p.relator(), p.rank()).minimal.size()), p.rank()};
}
}  // namespace

TEST_CASE("hierarchy_step") {
  SUBCASE("generator already absent") {
    auto s = hierarchy_step(OneRelatorPresentation(3, kCommutator));
    CHECK(s.case_tag == StepCase::free_factor);
    CHECK(s.omitted == Generator(3));
    CHECK(s.child.rank() == 2);
    CHECK(relators_equivalent(s.child.relator(), kCommutator));
    CHECK(s.metric_before == 4);
    CHECK(s.metric_after == 4);
  }
  SUBCASE("commutator in rank 2") {
    auto s = hierarchy_step(OneRelatorPresentation(2, kCommutator));
    CHECK(s.case_tag == StepCase::cyclic_cover);
    CHECK(s.child.rank() == 2);
    CHECK(relators_equivalent(s.child.relator(), W({2, -1})));
    CHECK(s.metric_before == 4);
    CHECK(s.child_length == 2);
    // y1 y0^-1 is primitive
    CHECK(s.metric_after == 1);
    REQUIRE(s.splitting);
    CHECK(s.splitting->m == 1);
    CHECK(s.splitting->edge_rank == 1);
    CHECK(character_apply(*s.character_used, kCommutator) == 0);
  }
  SUBCASE("trefoil") {
    auto s = hierarchy_step(OneRelatorPresentation(2, W({1, 1, -2, -2, -2})));
    CHECK(s.case_tag == StepCase::cyclic_cover);
    CHECK(s.child_length < 5);
    CHECK(s.metric_after <= 3);
    CHECK(character_apply(*s.character_used, W({1, 1, -2, -2, -2})) == 0);
    CHECK(s.character_used->is_surjective());
  }
  SUBCASE("primitive relator") {
    auto s = hierarchy_step(OneRelatorPresentation(2, W({1, 2, 1})));
    CHECK(s.case_tag == StepCase::free_factor);
    CHECK(s.child.relator().size() == 1);
  }
  CHECK_THROWS_AS(hierarchy_step(OneRelatorPresentation(1, W({1, 1}))), PreconditionError);
  CHECK_THROWS_AS(hierarchy_step(OneRelatorPresentation(2, Word())), PreconditionError);
}

TEST_CASE("build_hierarchy") {
  SUBCASE("rank 1") {
    auto h = build_hierarchy(OneRelatorPresentation(1, W({1, 1, 1, 1, 1})));
    CHECK(h.steps.empty());
    CHECK(h.terminal.order == 5);
    CHECK_FALSE(h.terminal.free_exit_rank);
  }
  SUBCASE("commutator") {
    auto h = build_hierarchy(OneRelatorPresentation(2, kCommutator));
    REQUIRE(h.steps.size() == 2);
    CHECK(h.steps[0].case_tag == StepCase::cyclic_cover);
    CHECK(h.steps[1].case_tag == StepCase::free_factor);
    CHECK(h.steps[1].child.rank() == 1);
    CHECK(h.terminal.order == 1);
    CHECK(verify_hierarchy(h));
  }
  SUBCASE("Baumslag-Solitar golden trace") {
    auto h = build_hierarchy(OneRelatorPresentation(2, W({2, 1, 2, 2, -1})));
    CHECK(verify_hierarchy(h));
    for (const auto& s : h.steps) {
      if (s.case_tag == StepCase::cyclic_cover) CHECK(s.metric_after <= s.metric_before - 2);
    }
    CHECK(trace(h) ==
          "cyclic_cover <x1, x2 | x1 x2^2> 5->1\n"
          "free_factor <x1 | x1> 1->1\n"
          "terminal 1\n");
  }
  SUBCASE("free group exit") {
    auto h = build_hierarchy(OneRelatorPresentation(3, Word()));
    REQUIRE(h.steps.size() == 2);
    CHECK(h.terminal.order == 0);
    CHECK(h.terminal.free_exit_rank == 3);
    CHECK(verify_hierarchy(h));
    auto h1 = build_hierarchy(OneRelatorPresentation(1, Word()));
    CHECK(h1.terminal.order == 0);
    CHECK(h1.terminal.free_exit_rank == 1);
  }
  SUBCASE("step budget") {
    try {
      build_hierarchy(OneRelatorPresentation(2, kCommutator), 1);
      FAIL("expected the budget to run out");
    } catch (const StepBudgetExceeded& e) {
      CHECK(e.partial().steps.size() == 1);
    }
    CHECK_THROWS_AS(build_hierarchy(OneRelatorPresentation(2, kCommutator), 0), PreconditionError);
  }
}

TEST_CASE("verify_hierarchy detects tampering") {
  auto h = build_hierarchy(OneRelatorPresentation(2, W({1, 1, -2, -2, -2})));
  REQUIRE(verify_hierarchy(h));
  REQUIRE(h.steps[0].case_tag == StepCase::cyclic_cover);

  SUBCASE("flipped child letter") {
    Hierarchy bad = h;
    auto letters = oracle::raw(bad.steps[0].child.relator());
    letters[0] = -letters[0];
    bad.steps[0].child = OneRelatorPresentation(bad.steps[0].child.rank(), Word::from_signed(letters));
    auto check = verify_hierarchy(bad);
    CHECK_FALSE(check);
    CHECK(check.step == 0);
  }
  SUBCASE("swapped metrics") {
    Hierarchy bad = h;
    std::swap(bad.steps[0].metric_before, bad.steps[0].metric_after);
    CHECK_FALSE(verify_hierarchy(bad));
  }
  SUBCASE("wrong automorphism") {
    Hierarchy bad = h;
    bad.steps[0].automorphism_used = compose(nielsen_multiply(2, Generator(1), Generator(2)), h.steps[0].automorphism_used);
    CHECK_FALSE(verify_hierarchy(bad));
  }
  SUBCASE("wrong terminal") {
    Hierarchy bad = h;
    bad.terminal.order += 1;
    auto check = verify_hierarchy(bad);
    CHECK_FALSE(check);
    CHECK(check.step == bad.steps.size());
  }
  SUBCASE("dropped step") {
    Hierarchy bad = h;
    bad.steps.pop_back();
    CHECK_FALSE(verify_hierarchy(bad));
  }
}

TEST_CASE("hierarchy properties on random presentations") {
  std::mt19937_64 rng(113);
  std::uniform_int_distribution<int> rank_dist(1, 3);
  for (int i = 0; i < 1000; ++i) {
    const int rank = rank_dist(rng);
    OneRelatorPresentation p(rank, oracle::random_word(rng, rank, 16));
    Hierarchy h = build_hierarchy(p, 64);
    REQUIRE(verify_hierarchy(h));
    OneRelatorPresentation parent = p;
    for (const auto& s : h.steps) {
      const auto before = measure(parent), after = measure(s.child);
      if (s.case_tag == StepCase::cyclic_cover) {
        CHECK(s.metric_after <= s.metric_before - 2);
        CHECK(after.first < before.first);
        const Generator t = s.splitting->stable;
        const int n = parent.rank();
        for (int k = 1; k <= s.splitting->edge_rank; ++k) {
          Word lhs = y_expand(y_word_from_vertex(Word::generator(Generator(k + n - 1)), t, n));
          Word rhs = y_expand(y_word_from_vertex(Word::generator(Generator(k)), t, n));
          CHECK(lhs == Word::generator(t) * rhs * Word::generator(t, -1));
        }
      } else {
        CHECK(after.first <= before.first);
        CHECK(after.second == before.second - 1);
        auto hp = abelianization(parent), hc = abelianization(s.child);
        CHECK(hp.free_rank == hc.free_rank + 1);
        CHECK(hp.torsion == hc.torsion);
      }
      parent = s.child;
    }
    CHECK(parent.rank() == 1);
  }
}
