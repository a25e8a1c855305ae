#include <random>

#include "doctest.h"
#include "generators.hpp"
#include "onerel/automorphism.hpp"
#include "oracles.hpp"

using namespace onerel;

namespace {
Word W(std::initializer_list<int> v) { return Word::from_signed(v); }

std::vector<long long> composite_character(const IntegralCharacter& phi, const Automorphism& theta) {
  return pullback(phi, theta).values();
}
}  // namespace

TEST_CASE("nielsen_multiply") {
  auto tau = nielsen_multiply(2, Generator(1), Generator(2));
  CHECK(tau(W({1})) == W({1, 2}));
  CHECK(tau(W({2})) == W({2}));
  CHECK(apply(tau.backward(), W({1})) == W({1, -2}));
  CHECK(apply(tau.backward(), tau(W({1}))) == W({1}));
  CHECK(tau.verify());
  CHECK_THROWS_AS(nielsen_multiply(2, Generator(1), Generator(1)), PreconditionError);
  CHECK_THROWS_AS(nielsen_multiply(2, Generator(1), Generator(3)), PreconditionError);
}

TEST_CASE("nielsen_invert") {
  auto t2 = nielsen_invert(2, Generator(2));
  CHECK(t2(W({1, 1, -2, -2, -2})) == W({1, 1, 2, 2, 2}));
  CHECK(compose(t2, t2).is_identity());
  CHECK(nielsen_invert(2, Generator(1))(W({1, 2})) == W({-1, 2}));
  CHECK(t2.inverse().forward() == t2.forward());
  CHECK_THROWS_AS(nielsen_invert(2, Generator(3)), PreconditionError);
}

TEST_CASE("apply") {
  std::mt19937_64 rng(1);
  Word w = oracle::random_word(rng, 3, 10);
  CHECK(apply(Endomorphism::identity(3), w) == w);
  // x1 -> x1 x2 on x1^2 x2^-3: x1 x2 x1 x2 x2^-3 = x1 x2 x1 x2^-2
  CHECK(nielsen_multiply(2, Generator(1), Generator(2))(W({1, 1, -2, -2, -2})) == W({1, 2, 1, -2, -2}));
  Endomorphism swap(2, {W({2}), W({1})});
  CHECK(apply(swap, W({1, -2})) == W({2, -1}));
  CHECK_THROWS_AS(apply(Endomorphism::identity(2), W({3})), PreconditionError);
}

TEST_CASE("compose") {
  std::mt19937_64 rng(29);
  auto tau = nielsen_multiply(2, Generator(1), Generator(2));
  CHECK(compose(tau, tau)(W({1})) == W({1, 2, 2}));
  for (int i = 0; i < 50; ++i) {
    auto a = gen::random_automorphism(rng, 3, 8);
    auto b = gen::random_automorphism(rng, 3, 8);
    auto ab = compose(a, b);
    CHECK(compose(a, a.inverse()).is_identity());
    CHECK(compose(Automorphism::identity(3), b).forward() == b.forward());
    for (int j = 0; j < 10; ++j) {
      Word w = oracle::random_word(rng, 3, 12);
      CHECK(ab(w) == a(b(w)));
      CHECK(apply(ab.backward(), w) == apply(b.backward(), apply(a.backward(), w)));
    }
  }
  CHECK_THROWS_AS(compose(Automorphism::identity(2), Automorphism::identity(3)), PreconditionError);
}

TEST_CASE("automorphisms carry a verified inverse witness") {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 40; ++i) {
    std::uniform_int_distribution<int> rank_dist(1, 4);
    const int rank = rank_dist(rng);
    auto theta = gen::random_automorphism(rng, rank, 12);
    CHECK(theta.verify());
    for (int j = 0; j < 100; ++j) {
      Word w = oracle::random_word(rng, rank, 16);
      REQUIRE(apply(theta.backward(), theta(w)) == w);
    }
  }
}

TEST_CASE("move list replays to the forward images") {
  std::mt19937_64 rng(37);
  for (int i = 0; i < 100; ++i) {
    auto theta = gen::random_automorphism(rng, 3, 10);
    std::vector<oracle::Raw> tuple = {{1}, {2}, {3}};
    for (const auto& m : theta.moves()) {
      auto& t = tuple[static_cast<std::size_t>(m.target - 1)];
      if (m.kind == NielsenMove::Kind::invert) {
        t = oracle::naive_invert(t);
      } else {
        oracle::Raw by = tuple[static_cast<std::size_t>(m.by - 1)];
        if (m.power < 0) by = oracle::naive_invert(by);
        t.insert(t.end(), by.begin(), by.end());
        t = oracle::naive_reduce(t);
      }
    }
    for (int g = 1; g <= 3; ++g) CHECK(oracle::raw(theta.forward().image(Generator(g))) == tuple[static_cast<std::size_t>(g - 1)]);
  }
}

TEST_CASE("from_images decomposes bases into Nielsen moves") {
  std::mt19937_64 rng(41);
  for (int i = 0; i < 100; ++i) {
    auto theta = gen::random_automorphism(rng, 3, 6);
    auto rebuilt = Automorphism::from_images(3, theta.forward().images());
    CHECK(rebuilt.forward() == theta.forward());
    CHECK(rebuilt.backward() == theta.backward());
  }
  // y0 -> y1, y1 -> y0 y1
  auto psi = Automorphism::from_images(2, {W({2}), W({1, 2})});
  CHECK(psi.verify());
  CHECK(apply(psi.backward(), W({1})) == W({2, -1}));
  CHECK_THROWS_AS(Automorphism::from_images(2, {W({1, 1}), W({2})}), PreconditionError);
  CHECK_THROWS_AS(Automorphism::from_images(2, {W({1}), W({1})}), PreconditionError);
}

TEST_CASE("whitehead_automorphism and conjugation") {
  // (A, a) = ({x1, x2}, x2): x1 -> x1 x2.
  std::vector<bool> in_set = {true, false, true, false};
  auto move = whitehead_automorphism(2, in_set, Letter(Generator(2), 1));
  CHECK(move(W({1})) == W({1, 2}));
  CHECK(move(W({2})) == W({2}));

  auto c = conjugation(3, W({2, -3}));
  for (int g = 1; g <= 3; ++g) {
    Word x = Word::generator(Generator(g));
    CHECK(c(x) == invert(W({2, -3})) * x * W({2, -3}));
  }
  CHECK_THROWS_AS(whitehead_automorphism(2, {false, false, true, false}, Letter(Generator(1), 1)), PreconditionError);
}

TEST_CASE("character_apply") {
  CHECK(character_apply(IntegralCharacter({1, 0}), W({1, 1, -2, -2, -2})) == 2);
  // x2 x1 x2^2 x1 x2^3 x1^-2: x2 exponents 1 + 2 + 3
  CHECK(character_apply(IntegralCharacter({0, 1}), W({2, 1, 2, 2, 1, 2, 2, 2, -1, -1})) == 6);
  CHECK(character_apply(IntegralCharacter({4, -7}), Word()) == 0);
  CHECK_THROWS_AS(character_apply(IntegralCharacter({1}), W({2})), PreconditionError);
  CHECK(IntegralCharacter({2, -3}).is_surjective());
  CHECK_FALSE(IntegralCharacter({2, 4}).is_surjective());
  CHECK(IntegralCharacter({0, -1}).unit_generator() == Generator(2));
  CHECK_FALSE(IntegralCharacter({1, 1}).unit_generator());
}

TEST_CASE("normalize_character") {
  SUBCASE("trefoil exponent vector (2, -3)") {
    IntegralCharacter phi({2, -3});
    auto theta = normalize_character(phi);
    CHECK(theta.verify());
    CHECK(composite_character(phi, theta) == std::vector<long long>{0, 1});
    // Euclid on (2, -3): x2 -> x2 x1, x1 -> x1 (x2 x1)^2, then invert x2.
    CHECK(theta.forward().image(Generator(1)) == W({1, 2, 1, 2, 1}));
    CHECK(theta.forward().image(Generator(2)) == W({-1, -2}));
  }
  SUBCASE("already normalized") {
    CHECK(normalize_character(IntegralCharacter({0, 1})).is_identity());
  }
  SUBCASE("rank 3, (6, 10, 15)") {
    IntegralCharacter phi({6, 10, 15});
    CHECK(std::gcd(std::gcd(6, 10), 15) == 1);
    auto theta = normalize_character(phi);
    CHECK(theta.verify());
    CHECK(composite_character(phi, theta) == std::vector<long long>{0, 0, 1});
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(normalize_character(IntegralCharacter({2, 4})), PreconditionError);
    CHECK_THROWS_AS(normalize_character(IntegralCharacter({1})), PreconditionError);
  }
  SUBCASE("random surjective characters") {
    std::mt19937_64 rng(43);
    std::uniform_int_distribution<long long> val(-20, 20);
    std::uniform_int_distribution<int> rank_dist(2, 4);
    int tested = 0;
    while (tested < 300) {
      const int rank = rank_dist(rng);
      std::vector<long long> v(static_cast<std::size_t>(rank));
      for (auto& x : v) x = val(rng);
      IntegralCharacter phi(v);
      if (!phi.is_surjective()) continue;
      ++tested;
      auto theta = normalize_character(phi);
      std::vector<long long> expected(static_cast<std::size_t>(rank), 0);
      expected.back() = 1;
      REQUIRE(composite_character(phi, theta) == expected);
      REQUIRE(theta.verify());
    }
  }
}

TEST_CASE("pullback respects composition") {
  std::mt19937_64 rng(47);
  for (int i = 0; i < 100; ++i) {
    auto a = gen::random_automorphism(rng, 3, 6);
    auto b = gen::random_automorphism(rng, 3, 6);
    IntegralCharacter phi({1, -2, 5});
    CHECK(pullback(phi, compose(a, b)) == pullback(pullback(phi, a), b));
  }
}

TEST_CASE("Whitehead cut formula matches direct application") {
  std::mt19937_64 rng(53);
  std::bernoulli_distribution coin(0.5);
  for (int i = 0; i < 500; ++i) {
    Word w = cyclically_reduce(oracle::random_word(rng, 3, 14)).core;
    if (w.empty()) continue;
    for (int a = 1; a <= 3; ++a) {
      Letter m(Generator(a), coin(rng) ? 1 : -1);
      std::vector<bool> in_set(6);
      for (std::size_t v = 0; v < 6; ++v) in_set[v] = coin(rng);
      in_set[static_cast<std::size_t>(letter_vertex(m))] = true;
      in_set[static_cast<std::size_t>(letter_vertex(m.inverse()))] = false;
      long cut = 0;
      for (std::size_t k = 0; k < w.size(); ++k) {
        Letter u = w[k], v = w[(k + 1) % w.size()];
        cut += in_set[static_cast<std::size_t>(letter_vertex(u))] != in_set[static_cast<std::size_t>(letter_vertex(v.inverse()))];
      }
      auto move = whitehead_automorphism(3, in_set, m);
      long expected = static_cast<long>(w.size()) + cut - static_cast<long>(occurrence_count(w, m.gen()));
      CHECK(static_cast<long>(cyclically_reduce(move(w)).core.size()) == expected);
    }
  }
}

TEST_CASE("whitehead_minimize") {
  auto r1 = whitehead_minimize(W({1, 2}));
  CHECK(r1.minimal.size() == 1);
  CHECK(r1.automorphism(W({1, 2})) == r1.minimal);

  auto r2 = whitehead_minimize(W({1, 1, -2, -2, -2}));
  CHECK(r2.minimal.size() == 5);
  CHECK(r2.automorphism.is_identity());

  CHECK(whitehead_minimize(W({1, 2, -1, -2})).minimal.size() == 4);
  CHECK(whitehead_minimize(Word(), 2).minimal.empty());
  // conjugates are minimized exactly, conjugator absorbed
  auto r3 = whitehead_minimize(W({2, 1, 1, -2, -2, -2, -2}), 2);
  CHECK(r3.automorphism(W({2, 1, 1, -2, -2, -2, -2})) == r3.minimal);
  CHECK(r3.minimal.size() == 5);

  SUBCASE("agrees with exhaustive orbit search, rank 2, length <= 6") {
    oracle::Rank2OrbitOracle orbits(8);
    for (const auto& s : oracle::cyclically_reduced_words(2, 6)) {
      Word w = Word::from_signed(s);
      auto r = whitehead_minimize(w, 2);
      REQUIRE(r.automorphism(w) == r.minimal);
      REQUIRE(r.minimal.size() == orbits.orbit_minimum(s));
    }
  }

  SUBCASE("random rank-3 words: result is an image and never longer") {
    std::mt19937_64 rng(59);
    for (int i = 0; i < 300; ++i) {
      Word w = oracle::random_word(rng, 3, 18);
      auto r = whitehead_minimize(w, 3);
      CHECK(r.automorphism(w) == r.minimal);
      CHECK(r.minimal.size() <= cyclically_reduce(w).core.size());
      CHECK(r.automorphism.verify());
    }
  }
}

TEST_CASE("whitehead_minimize_fixing keeps the stable character") {
  std::mt19937_64 rng(61);
  for (int i = 0; i < 300; ++i) {
    Word w = gen::random_relator(rng, 3, 16);
    auto r = whitehead_minimize_fixing(w, 3, Generator(3));
    CHECK(r.automorphism(w) == r.minimal);
    CHECK(pullback(IntegralCharacter::dual(3, Generator(3)), r.automorphism.inverse()) ==
          IntegralCharacter::dual(3, Generator(3)));
    auto non_stable = [](const Word& u) { return u.size() - occurrence_count(u, Generator(3)); };
    CHECK(non_stable(r.minimal) <= non_stable(w));
  }
}

TEST_CASE("is_primitive") {
  CHECK(is_primitive(W({1, 2})));
  CHECK_FALSE(is_primitive(W({1, 1, -2, -2, -2})));
  CHECK_FALSE(is_primitive(Word(), 2));
  CHECK(is_primitive(W({2, 1, 2, 1, 2})));

  std::mt19937_64 rng(67);
  for (int i = 0; i < 200; ++i) {
    Word w = oracle::random_word(rng, 2, 10);
    auto theta = gen::random_automorphism(rng, 2, 8);
    CHECK(is_primitive(theta(w), 2) == is_primitive(w, 2));
  }
}

TEST_CASE("proper_free_factor") {
  auto f1 = proper_free_factor(W({1, 2, -1, -2}), 3);
  REQUIRE(f1);
  CHECK(f1->omitted == Generator(3));
  CHECK(occurrence_count(f1->automorphism(W({1, 2, -1, -2})), Generator(3)) == 0);

  auto f2 = proper_free_factor(W({1, 2, 1}), 2);
  REQUIRE(f2);
  Word image = f2->automorphism(W({1, 2, 1}));
  CHECK(image.size() == 1);
  CHECK(occurrence_count(image, f2->omitted) == 0);

  CHECK_FALSE(proper_free_factor(W({1, 1, -2, -2, -2}), 2));
  CHECK_THROWS_AS(proper_free_factor(W({3}), 2), PreconditionError);
}
