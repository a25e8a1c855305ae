#include "onerel/automorphism.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>

namespace onerel {

Endomorphism::Endomorphism(int rank, std::vector<Word> images)
    : rank_(rank), target_rank_(rank), images_(std::move(images)) {
  if (rank < 0) throw PreconditionError("rank must be non-negative");
  if (images_.size() != static_cast<std::size_t>(rank)) {
    throw PreconditionError("endomorphism needs one image per generator");
  }
  for (const Word& w : images_) target_rank_ = std::max(target_rank_, w.max_generator());
}

Endomorphism Endomorphism::identity(int rank) {
  std::vector<Word> images;
  images.reserve(static_cast<std::size_t>(rank));
  for (int i = 1; i <= rank; ++i) images.push_back(Word::generator(Generator(i)));
  return Endomorphism(rank, std::move(images));
}

Word apply(const Endomorphism& e, const Word& w) {
  std::vector<Letter> out;
  out.reserve(w.size());
  for (Letter l : w.letters()) {
    if (l.index() > e.rank()) {
      throw PreconditionError("word uses x" + std::to_string(l.index()) + " beyond endomorphism rank " +
                              std::to_string(e.rank()));
    }
    const Word& img = e.image(l.gen());
    if (l.sign() > 0) {
      out.insert(out.end(), img.letters().begin(), img.letters().end());
    } else {
      for (auto it = img.letters().rbegin(); it != img.letters().rend(); ++it) out.push_back(it->inverse());
    }
  }
  return reduce(out);
}

Endomorphism compose(const Endomorphism& a, const Endomorphism& b) {
  if (b.target_rank() > a.rank()) throw PreconditionError("endomorphism ranks do not compose");
  std::vector<Word> images;
  images.reserve(b.images().size());
  for (const Word& w : b.images()) images.push_back(apply(a, w));
  return Endomorphism(b.rank(), std::move(images));
}

// ---------------------------------------------------------------------------

namespace {

std::vector<Word> replay(int rank, const std::vector<NielsenMove>& moves) {
  std::vector<Word> tuple = Endomorphism::identity(rank).images();
  for (const NielsenMove& m : moves) {
    Word& target = tuple[static_cast<std::size_t>(m.target - 1)];
    if (m.kind == NielsenMove::Kind::invert) {
      target = invert(target);
    } else {
      const Word& by = tuple[static_cast<std::size_t>(m.by - 1)];
      target = concat(target, m.power > 0 ? by : invert(by));
    }
  }
  return tuple;
}

std::vector<NielsenMove> inverse_moves(const std::vector<NielsenMove>& moves) {
  std::vector<NielsenMove> out;
  out.reserve(moves.size());
  for (auto it = moves.rbegin(); it != moves.rend(); ++it) out.push_back(it->inverse());
  return out;
}

void check_move(int rank, const NielsenMove& m) {
  if (m.target < 1 || m.target > rank) throw PreconditionError("Nielsen move target out of range");
  if (m.kind == NielsenMove::Kind::multiply) {
    if (m.by < 1 || m.by > rank) throw PreconditionError("Nielsen move multiplier out of range");
    if (m.by == m.target) throw PreconditionError("Nielsen move needs distinct generators");
    if (m.power != 1 && m.power != -1) throw PreconditionError("Nielsen move power must be +1 or -1");
  }
}

// entry_target <- entry_by^power * entry_target
void push_left_multiply(std::vector<NielsenMove>& moves, int target, int by, int power) {
  moves.push_back(NielsenMove::invert(target));
  moves.push_back(NielsenMove::multiply(target, by, -power));
  moves.push_back(NielsenMove::invert(target));
}

}  // namespace

Automorphism::Automorphism(int rank, std::vector<NielsenMove> moves)
    : moves_(std::move(moves)),
      forward_(rank, replay(rank, moves_)),
      backward_(rank, replay(rank, inverse_moves(moves_))) {}

Automorphism Automorphism::identity(int rank) {
  if (rank < 0) throw PreconditionError("rank must be non-negative");
  return Automorphism(rank, {});
}

Automorphism Automorphism::from_moves(int rank, std::vector<NielsenMove> moves) {
  if (rank < 0) throw PreconditionError("rank must be non-negative");
  for (const auto& m : moves) check_move(rank, m);
  return Automorphism(rank, std::move(moves));
}

Automorphism Automorphism::from_images(int rank, const std::vector<Word>& images) {
  Endomorphism target(rank, images);
  if (target.target_rank() > rank) throw PreconditionError("image uses a generator beyond the rank");

  // Reduce the tuple U to the standard basis by right-composing with
  // Nielsen moves; U o m_1 o ... o m_k = id gives the automorphism as the
  // inverse of that product.
  std::vector<Word> u = images;
  std::vector<NielsenMove> reduction;
  auto total = [&] {
    std::size_t t = 0;
    for (const Word& w : u) t += w.size();
    return t;
  };
  bool progress = true;
  while (progress && total() > static_cast<std::size_t>(rank)) {
    progress = false;
    for (int r = 1; r <= rank && !progress; ++r) {
      Word& ur = u[static_cast<std::size_t>(r - 1)];
      for (int s = 1; s <= rank && !progress; ++s) {
        if (s == r) continue;
        const Word& us = u[static_cast<std::size_t>(s - 1)];
        for (int p : {1, -1}) {
          Word factor = p > 0 ? us : invert(us);
          Word right = concat(ur, factor);
          if (right.size() < ur.size()) {
            ur = right;
            reduction.push_back(NielsenMove::multiply(r, s, p));
            progress = true;
            break;
          }
          Word left = concat(factor, ur);
          if (left.size() < ur.size()) {
            ur = left;
            push_left_multiply(reduction, r, s, p);
            progress = true;
            break;
          }
        }
      }
    }
  }
  std::vector<int> where(static_cast<std::size_t>(rank) + 1, 0);
  for (int r = 1; r <= rank; ++r) {
    const Word& ur = u[static_cast<std::size_t>(r - 1)];
    if (ur.size() != 1 || where[static_cast<std::size_t>(ur[0].index())] != 0) {
      throw PreconditionError("images do not form a free basis");
    }
    where[static_cast<std::size_t>(ur[0].index())] = r;
  }
  // Sort the signed permutation into the identity.
  for (int r = 1; r <= rank; ++r) {
    int k = 0;
    for (int j = r; j <= rank; ++j) {
      if (u[static_cast<std::size_t>(j - 1)][0].index() == r) k = j;
    }
    if (k != r) {
      // (A, B) -> (AB, B) -> (AB, A^-1) -> (B, A^-1) -> (B, A)
      reduction.push_back(NielsenMove::multiply(r, k, 1));
      reduction.push_back(NielsenMove::multiply(k, r, -1));
      push_left_multiply(reduction, r, k, 1);
      reduction.push_back(NielsenMove::invert(k));
      std::swap(u[static_cast<std::size_t>(r - 1)], u[static_cast<std::size_t>(k - 1)]);
    }
    if (u[static_cast<std::size_t>(r - 1)][0].sign() < 0) {
      reduction.push_back(NielsenMove::invert(r));
      u[static_cast<std::size_t>(r - 1)] = invert(u[static_cast<std::size_t>(r - 1)]);
    }
  }
  Automorphism result(rank, inverse_moves(reduction));
  if (result.forward().images() != images) throw PreconditionError("Nielsen decomposition failed");
  return result;
}

Automorphism Automorphism::inverse() const { return Automorphism(rank(), inverse_moves(moves_)); }

bool Automorphism::is_identity() const { return forward_ == Endomorphism::identity(rank()); }

bool Automorphism::verify() const {
  const auto id = Endomorphism::identity(rank());
  return compose(forward_, backward_) == id && compose(backward_, forward_) == id;
}

Word apply(const Automorphism& a, const Word& w) { return apply(a.forward(), w); }

Automorphism compose(const Automorphism& a, const Automorphism& b) {
  if (a.rank() != b.rank()) throw PreconditionError("cannot compose automorphisms of different rank");
  std::vector<NielsenMove> moves = a.moves();
  moves.insert(moves.end(), b.moves().begin(), b.moves().end());
  return Automorphism::from_moves(a.rank(), std::move(moves));
}

Automorphism nielsen_multiply(int rank, Generator r, Generator s) {
  if (r == s) throw PreconditionError("Nielsen multiplication needs distinct generators");
  if (r.index < 1 || s.index < 1 || r.index > rank || s.index > rank) {
    throw PreconditionError("generator index out of range");
  }
  return Automorphism::from_moves(rank, {NielsenMove::multiply(r.index, s.index, 1)});
}

Automorphism nielsen_invert(int rank, Generator i) {
  if (i.index < 1 || i.index > rank) throw PreconditionError("generator index out of range");
  return Automorphism::from_moves(rank, {NielsenMove::invert(i.index)});
}

Automorphism whitehead_automorphism(int rank, const std::vector<bool>& in_set, Letter a) {
  if (in_set.size() != static_cast<std::size_t>(2 * rank)) throw PreconditionError("Whitehead set has wrong size");
  if (a.index() > rank) throw PreconditionError("multiplier out of range");
  if (!in_set[static_cast<std::size_t>(letter_vertex(a))] || in_set[static_cast<std::size_t>(letter_vertex(a.inverse()))]) {
    throw PreconditionError("Whitehead set must contain the multiplier but not its inverse");
  }
  std::vector<NielsenMove> moves;
  for (int x = 1; x <= rank; ++x) {
    if (x == a.index()) continue;
    const bool pos = in_set[static_cast<std::size_t>(2 * (x - 1))];
    const bool neg = in_set[static_cast<std::size_t>(2 * (x - 1) + 1)];
    if (pos) moves.push_back(NielsenMove::multiply(x, a.index(), a.sign()));
    if (neg) push_left_multiply(moves, x, a.index(), -a.sign());
  }
  return Automorphism::from_moves(rank, std::move(moves));
}

Automorphism conjugation(int rank, const Word& c) {
  Automorphism result = Automorphism::identity(rank);
  for (Letter l : c.letters()) {
    std::vector<bool> all(static_cast<std::size_t>(2 * rank), true);
    all[static_cast<std::size_t>(letter_vertex(l.inverse()))] = false;
    result = compose(whitehead_automorphism(rank, all, l), result);
  }
  return result;
}

// ---------------------------------------------------------------------------

IntegralCharacter::IntegralCharacter(std::vector<long long> values) : values_(std::move(values)) {
  long long g = 0;
  for (long long v : values_) g = std::gcd(g, v);
  surjective_ = g == 1;
}

IntegralCharacter IntegralCharacter::dual(int rank, Generator g) {
  if (g.index < 1 || g.index > rank) throw PreconditionError("generator index out of range");
  std::vector<long long> v(static_cast<std::size_t>(rank), 0);
  v[static_cast<std::size_t>(g.index - 1)] = 1;
  return IntegralCharacter(std::move(v));
}

std::optional<Generator> IntegralCharacter::unit_generator() const {
  std::optional<Generator> found;
  for (int i = 1; i <= rank(); ++i) {
    long long v = values_[static_cast<std::size_t>(i - 1)];
    if (v == 0) continue;
    if (found || std::llabs(v) != 1) return std::nullopt;
    found = Generator(i);
  }
  return found;
}

long long character_apply(const IntegralCharacter& phi, const Word& w) {
  long long s = 0;
  for (Letter l : w.letters()) {
    if (l.index() > phi.rank()) throw PreconditionError("word uses a generator beyond the character rank");
    s += l.sign() * phi.value(l.gen());
  }
  return s;
}

IntegralCharacter pullback(const IntegralCharacter& phi, const Automorphism& a) {
  if (phi.rank() != a.rank()) throw PreconditionError("character and automorphism ranks differ");
  std::vector<long long> v;
  v.reserve(static_cast<std::size_t>(a.rank()));
  for (const Word& img : a.forward().images()) v.push_back(character_apply(phi, img));
  return IntegralCharacter(std::move(v));
}

Automorphism normalize_character(const IntegralCharacter& phi) {
  const int n = phi.rank();
  if (n < 2) throw PreconditionError("character normalization needs rank >= 2");
  if (!phi.is_surjective()) throw PreconditionError("character is not surjective");

  // c[j] = phi(theta(x_j)); a move x_q -> x_q x_p^s adds s*c[p] to c[q].
  std::vector<long long> c = phi.values();
  std::vector<NielsenMove> moves;
  auto nonzero = [&] { return std::count_if(c.begin(), c.end(), [](long long v) { return v != 0; }); };
  while (nonzero() > 1) {
    int p = -1;
    for (int j = 0; j < n; ++j) {
      if (c[static_cast<std::size_t>(j)] != 0 &&
          (p < 0 || std::llabs(c[static_cast<std::size_t>(j)]) < std::llabs(c[static_cast<std::size_t>(p)]))) {
        p = j;
      }
    }
    const long long cp = c[static_cast<std::size_t>(p)];
    for (int q = 0; q < n; ++q) {
      long long& cq = c[static_cast<std::size_t>(q)];
      if (q == p || cq == 0) continue;
      const long long k = cq / cp;
      const int s = k > 0 ? -1 : 1;
      for (long long i = 0; i < std::llabs(k); ++i) moves.push_back(NielsenMove::multiply(q + 1, p + 1, s));
      cq -= k * cp;
    }
  }
  int p = 0;
  while (c[static_cast<std::size_t>(p)] == 0) ++p;
  if (c[static_cast<std::size_t>(p)] < 0) moves.push_back(NielsenMove::invert(p + 1));
  if (p != n - 1) {
    moves.push_back(NielsenMove::multiply(n, p + 1, 1));
    moves.push_back(NielsenMove::multiply(p + 1, n, -1));
  }
  return Automorphism::from_moves(n, std::move(moves));
}

}  // namespace onerel
