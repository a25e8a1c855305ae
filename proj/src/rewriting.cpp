#include "onerel/rewriting.hpp"

#include <algorithm>
#include <numeric>

namespace onerel {

namespace {

int non_stable_position(int slot, Generator stable) { return slot < stable.index ? slot - 1 : slot - 2; }
int slot_at(int position, Generator stable) { return position + 1 < stable.index ? position + 1 : position + 2; }

Word conjugate_by_power(Generator t, int power, const Word& w) {
  Word tp = Word::generator(t, power);
  return tp * w * invert(tp);
}

void require_vanishing(const OneRelatorPresentation& p, const IntegralCharacter& phi) {
  if (phi.rank() != p.rank()) throw PreconditionError("character rank does not match presentation");
  if (!phi.is_surjective()) throw PreconditionError("character is not surjective");
  if (character_apply(phi, p.relator()) != 0) throw PreconditionError("character does not vanish on the relator");
}

}  // namespace

YWord y_rewrite(const Word& w, Generator stable, int rank) {
  if (rank == 0) rank = std::max(w.max_generator(), stable.index);
  if (stable.index < 1 || stable.index > rank) throw PreconditionError("stable letter out of range");
  if (w.max_generator() > rank) throw PreconditionError("word uses a generator beyond the rank");
  if (exponent_sum(w, stable) != 0) throw PreconditionError("stable letter has nonzero exponent sum");

  YWord out;
  out.stable = stable;
  out.rank = rank;
  int power = 0;
  for (Letter l : w.letters()) {
    if (l.gen() == stable) {
      power += l.sign();
    } else {
      out.letters.push_back({power, l.index(), l.sign()});
    }
  }
  if (out.letters.empty()) return out;
  const auto [lo, hi] = std::minmax_element(out.letters.begin(), out.letters.end(),
                                            [](const YLetter& a, const YLetter& b) { return a.level < b.level; });
  out.shift = lo->level;
  out.m = hi->level - lo->level;
  for (YLetter& y : out.letters) y.level -= out.shift;
  return out;
}

Word y_expand(const YWord& yw) {
  std::vector<int> raw;
  for (const YLetter& y : yw.letters) {
    for (int k = 0; k < y.level; ++k) raw.push_back(yw.stable.index);
    raw.push_back(y.sign * y.slot);
    for (int k = 0; k < y.level; ++k) raw.push_back(-yw.stable.index);
  }
  return Word::from_signed(raw);
}

int vertex_index(int level, int slot, Generator stable, int rank) {
  return level * (rank - 1) + non_stable_position(slot, stable) + 1;
}

YLetter vertex_letter(Letter l, Generator stable, int rank) {
  const int k = l.index() - 1;
  return {k / (rank - 1), slot_at(k % (rank - 1), stable), l.sign()};
}

Word vertex_word(const YWord& yw) {
  std::vector<int> raw;
  raw.reserve(yw.letters.size());
  for (const YLetter& y : yw.letters) raw.push_back(y.sign * vertex_index(y.level, y.slot, yw.stable, yw.rank));
  return Word::from_signed(raw);
}

YWord y_word_from_vertex(const Word& w, Generator stable, int rank) {
  YWord out;
  out.stable = stable;
  out.rank = rank;
  for (Letter l : w.letters()) {
    out.letters.push_back(vertex_letter(l, stable, rank));
    out.m = std::max(out.m, out.letters.back().level);
  }
  return out;
}

CharacterBasis character_basis(const OneRelatorPresentation& p, const IntegralCharacter& phi) {
  require_vanishing(p, phi);
  if (p.rank() < 2) throw PreconditionError("rank must be at least 2");
  if (auto t = phi.unit_generator()) {
    Automorphism theta = phi.value(*t) > 0 ? Automorphism::identity(p.rank()) : nielsen_invert(p.rank(), *t);
    Word relator = cyclically_reduce(apply(theta.backward(), p.relator())).core;
    return {phi, std::move(theta), *t, std::move(relator)};
  }
  Automorphism theta = normalize_character(phi);
  Word relator = cyclically_reduce(apply(theta.backward(), p.relator())).core;
  return {phi, std::move(theta), Generator(p.rank()), std::move(relator)};
}

FiberingReport fibering_report(const YWord& yw) {
  if (yw.letters.empty()) throw PreconditionError("rewritten relator is empty");
  FiberingReport r;
  for (const YLetter& y : yw.letters) r.lambda.push_back(y.level);
  r.min_value = *std::min_element(r.lambda.begin(), r.lambda.end());
  r.max_value = *std::max_element(r.lambda.begin(), r.lambda.end());
  r.min_multiplicity = static_cast<int>(std::count(r.lambda.begin(), r.lambda.end(), r.min_value));
  r.max_multiplicity = static_cast<int>(std::count(r.lambda.begin(), r.lambda.end(), r.max_value));
  r.rank_is_two = yw.rank == 2;
  const bool unique_min = r.min_multiplicity == 1;
  const bool unique_max = r.max_multiplicity == 1;
  r.verdict = r.rank_is_two && unique_min && unique_max ? Verdict::fg_kernel : Verdict::not_fg_kernel;
  if (r.rank_is_two && unique_min != unique_max) {
    r.exclusion = unique_min ? Exclusion::unique_min_repeated_max : Exclusion::unique_max_repeated_min;
  }
  return r;
}

FiberingReport brown_test(const OneRelatorPresentation& p, const IntegralCharacter& phi) {
  if (p.relator().empty()) throw PreconditionError("relator is empty");
  const CharacterBasis b = character_basis(p, phi);
  return fibering_report(y_rewrite(b.relator, b.stable, p.rank()));
}

IntegralCharacter default_character(const OneRelatorPresentation& p) {
  const int n = p.rank();
  if (n < 2) throw PreconditionError("no surjective character vanishes on a rank-1 relator");
  const auto e = exponent_vector(p.relator(), n);
  const bool zero = std::all_of(e.begin(), e.end(), [](long long v) { return v == 0; });
  if (n == 2) {
    if (zero) return IntegralCharacter::dual(2, Generator(1));
    const long long g = std::gcd(e[0], e[1]);
    long long a = -e[1] / g, b = e[0] / g;
    if (a < 0 || (a == 0 && b < 0)) a = -a, b = -b;
    return IntegralCharacter({a, b});
  }
  if (zero) return IntegralCharacter::dual(n, Generator(n));
  for (int i = n; i >= 1; --i) {
    if (e[static_cast<std::size_t>(i - 1)] == 0) return IntegralCharacter::dual(n, Generator(i));
  }
  const long long g = std::gcd(e[0], e[1]);
  std::vector<long long> v(static_cast<std::size_t>(n), 0);
  v[0] = e[1] / g;
  v[1] = -e[0] / g;
  return IntegralCharacter(std::move(v));
}

std::optional<NonManifoldCertificate> non_manifold_certificate(const OneRelatorPresentation& p) {
  if (p.rank() != 2) throw PreconditionError("certificate search needs rank 2");
  if (p.relator().empty()) throw PreconditionError("relator is empty");
  const auto e = exponent_vector(p.relator(), 2);
  std::vector<IntegralCharacter> candidates = {default_character(p)};
  if (e[0] == 0 && e[1] == 0) candidates.push_back(IntegralCharacter::dual(2, Generator(2)));
  for (const IntegralCharacter& phi : candidates) {
    FiberingReport r = brown_test(p, phi);
    if (r.exclusion) return NonManifoldCertificate{*r.exclusion, phi, std::move(r)};
  }
  return std::nullopt;
}

Word expand_vertex_word(const HnnSplitting& s, const Word& w) {
  const YWord yw = y_word_from_vertex(w, s.basis.stable, s.rewritten.rank);
  return y_expand(yw);
}

HnnSplitting moldavansky_split(const OneRelatorPresentation& p, const IntegralCharacter& phi) {
  if (p.relator().empty()) throw PreconditionError("relator is empty");
  CharacterBasis b = character_basis(p, phi);
  YWord yw = y_rewrite(b.relator, b.stable, p.rank());
  const int n = p.rank();
  const int m = yw.m;
  const int edge_rank = (n - 1) * m;

  std::vector<Word> plus, minus;
  for (int k = 1; k <= edge_rank; ++k) {
    plus.push_back(Word::generator(Generator(k)));
    minus.push_back(Word::generator(Generator(k + n - 1)));
  }
  OneRelatorPresentation vertex((n - 1) * (m + 1), vertex_word(yw));
  return {std::move(b),   std::move(yw),  std::move(vertex), m, edge_rank, Endomorphism(edge_rank, std::move(plus)),
          Endomorphism(edge_rank, std::move(minus))};
}

MappingTorusData mapping_torus(const OneRelatorPresentation& p, const IntegralCharacter& phi) {
  if (brown_test(p, phi).verdict != Verdict::fg_kernel) {
    throw PreconditionError("kernel is not finitely generated");
  }
  HnnSplitting s = moldavansky_split(p, phi);
  const int m = s.m;
  if (m == 0) throw PreconditionError("trivial edge group; no monodromy");

  // Rotate the unique y_m letter to the front, inverted.
  const Generator top(m + 1);
  Word w = s.vertex.relator();
  auto rotate_to_top = [&](const Word& u) {
    std::size_t k = 0;
    while (u[k].gen() != top) ++k;
    return rotate(u, k);
  };
  w = rotate_to_top(w);
  if (w.front().sign() > 0) w = rotate_to_top(invert(w));
  Word w3 = subword(w, 1, w.size() - 1);
  if (occurrence_count(w3, top) != 0) throw std::logic_error("top level letter occurs more than once");

  std::vector<Word> images;
  for (int j = 1; j < m; ++j) images.push_back(Word::generator(Generator(j + 1)));
  images.push_back(w3);
  Automorphism psi = Automorphism::from_images(m, images);
  return {std::move(s), m, std::move(psi), std::move(w3)};
}

OneRelatorPresentation mapping_torus_presentation(const MappingTorusData& d) {
  const Generator t = d.splitting.basis.stable;
  const Word expanded = y_expand(y_word_from_vertex(d.w3, t, 2));
  const Word x = Word::generator(Generator(t.index == 1 ? 2 : 1));
  return OneRelatorPresentation(2, conjugate_by_power(t, d.base_rank, x) * invert(expanded));
}

std::string to_string(Verdict v) { return v == Verdict::fg_kernel ? "fg_kernel" : "not_fg_kernel"; }

std::string to_string(Exclusion e) {
  return e == Exclusion::unique_min_repeated_max ? "unique_min_repeated_max" : "unique_max_repeated_min";
}

std::string y_name(const YLetter& l) { return "y" + std::to_string(l.level) + "_" + std::to_string(l.slot); }

std::string to_string(const YWord& yw) {
  if (yw.letters.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < yw.letters.size();) {
    std::size_t j = i;
    while (j < yw.letters.size() && yw.letters[j] == yw.letters[i]) ++j;
    const int power = static_cast<int>(j - i) * yw.letters[i].sign;
    if (!out.empty()) out += ' ';
    out += y_name(yw.letters[i]);
    if (power != 1) out += "^" + std::to_string(power);
    i = j;
  }
  return out;
}

}  // namespace onerel
