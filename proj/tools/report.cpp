#include "report.hpp"

#include <sstream>

namespace onerel::cli {

namespace {

std::string x_name(Generator g) { return "x" + std::to_string(g.index); }

std::string vertex_name(int k, Generator stable, int rank) {
  return y_name(vertex_letter(Letter::from_signed(k), stable, rank));
}

std::string vertex_string(const Word& w, Generator stable, int rank) {
  return to_string(y_word_from_vertex(w, stable, rank));
}

Json extremum_json(int value, int multiplicity) {
  Json j;
  j["value"] = value;
  j["multiplicity"] = multiplicity;
  return j;
}

// Vertex-generator map k -> image, keyed and valued by y-names.
Json vertex_map_json(const Endomorphism& e, Generator stable, int rank) {
  Json j = Json::object();
  for (int k = 1; k <= e.rank(); ++k) {
    j[vertex_name(k, stable, rank)] = vertex_string(e.image(Generator(k)), stable, rank);
  }
  return j;
}

bool is_scalar(const Json& j) { return !j.is_object() && !j.is_array(); }

std::string scalar_text(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_null()) return "none";
  return j.dump();
}

void render(const Json& j, int indent, std::ostringstream& out);

void render_value(const std::string& key, const Json& v, int indent, std::ostringstream& out) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  if (is_scalar(v)) {
    out << pad << key << ": " << scalar_text(v) << '\n';
  } else if (v.empty()) {
    out << pad << key << ": " << (v.is_array() ? "()" : "{}") << '\n';
  } else if (v.is_array() && std::all_of(v.begin(), v.end(), is_scalar)) {
    out << pad << key << ": (";
    for (std::size_t i = 0; i < v.size(); ++i) out << (i ? ", " : "") << scalar_text(v[i]);
    out << ")\n";
  } else {
    out << pad << key << ":\n";
    render(v, indent + 2, out);
  }
}

void render(const Json& j, int indent, std::ostringstream& out) {
  if (j.is_object()) {
    for (const auto& [key, v] : j.items()) render_value(key, v, indent, out);
    return;
  }
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  for (const Json& item : j) {
    if (is_scalar(item)) {
      out << pad << "- " << scalar_text(item) << '\n';
      continue;
    }
    std::ostringstream inner;
    render(item, indent + 2, inner);
    std::string text = inner.str();
    text.replace(static_cast<std::size_t>(indent), 2, "- ");
    out << text;
  }
}

}  // namespace

Json input_json(const OneRelatorPresentation& p, const std::string& text) {
  Json j;
  j["text"] = text;
  j["label"] = p.label().empty() ? Json(nullptr) : Json(p.label());
  j["rank"] = p.rank();
  j["relator"] = to_string(p.relator());
  return j;
}

Json abelian_json(const AbelianInvariants& h) {
  Json j;
  j["free_rank"] = h.free_rank;
  j["torsion"] = h.torsion ? Json(*h.torsion) : Json(nullptr);
  j["group"] = to_string(h);
  return j;
}

Json automorphism_json(const Automorphism& a) {
  Json images = Json::object();
  for (int i = 1; i <= a.rank(); ++i) images[x_name(Generator(i))] = to_string(a.forward().image(Generator(i)));
  Json moves = Json::array();
  for (const NielsenMove& m : a.moves()) {
    const std::string target = x_name(Generator(m.target));
    if (m.kind == NielsenMove::Kind::invert) {
      moves.push_back(target + " -> " + target + "^-1");
    } else {
      moves.push_back(target + " -> " + target + " " + to_string(Word::generator(Generator(m.by), m.power)));
    }
  }
  Json j;
  j["images"] = std::move(images);
  j["moves"] = std::move(moves);
  return j;
}

Json character_json(const IntegralCharacter& phi) { return Json(phi.values()); }

Json fibering_json(const OneRelatorPresentation& p, const IntegralCharacter& phi) {
  const FiberingReport r = brown_test(p, phi);
  const CharacterBasis b = character_basis(p, phi);
  Json j;
  j["character"] = character_json(phi);
  j["stable_generator"] = x_name(b.stable);
  j["basis_change"] = automorphism_json(b.theta);
  j["rewritten_relator"] = to_string(b.relator);
  j["y_word"] = to_string(y_rewrite(b.relator, b.stable, p.rank()));
  j["lambda"] = r.lambda;
  j["min"] = extremum_json(r.min_value, r.min_multiplicity);
  j["max"] = extremum_json(r.max_value, r.max_multiplicity);
  j["rank_is_two"] = r.rank_is_two;
  j["verdict"] = to_string(r.verdict);
  j["exclusion"] = r.exclusion ? Json(to_string(*r.exclusion)) : Json(nullptr);
  return j;
}

Json certificate_json(const std::optional<NonManifoldCertificate>& c) {
  if (!c) return nullptr;
  Json j;
  j["kind"] = to_string(c->kind);
  j["character"] = character_json(c->character);
  j["lambda"] = c->report.lambda;
  j["statement"] = "not the fundamental group of a compact, orientable 3-manifold";
  return j;
}

Json splitting_json(const HnnSplitting& s) {
  const Generator t = s.basis.stable;
  const int n = s.basis.character.rank();
  Json vertex;
  Json names = Json::array();
  for (int k = 1; k <= s.vertex.rank(); ++k) names.push_back(vertex_name(k, t, n));
  vertex["generators"] = std::move(names);
  vertex["relator"] = vertex_string(s.vertex.relator(), t, n);

  Json edge = Json::array();
  for (int k = 1; k <= s.edge_rank; ++k) edge.push_back(vertex_name(k, t, n));

  Json j;
  j["character"] = character_json(s.basis.character);
  j["stable"] = "t";
  j["stable_generator"] = x_name(t);
  j["basis_change"] = automorphism_json(s.basis.theta);
  j["rewritten_relator"] = to_string(s.basis.relator);
  j["m"] = s.m;
  j["vertex"] = std::move(vertex);
  j["edge_rank"] = s.edge_rank;
  j["edge_generators"] = std::move(edge);
  j["inclusion_plus"] = vertex_map_json(s.inclusion_plus, t, n);
  j["inclusion_minus"] = vertex_map_json(s.inclusion_minus, t, n);
  return j;
}

Json torus_json(const MappingTorusData& d) {
  const Generator t = d.splitting.basis.stable;
  const int n = d.splitting.basis.character.rank();
  Json base = Json::array();
  for (int k = 1; k <= d.base_rank; ++k) base.push_back(vertex_name(k, t, n));
  const OneRelatorPresentation rebuilt = mapping_torus_presentation(d);
  const AbelianInvariants h_rebuilt = abelianization(rebuilt);

  Json j;
  j["character"] = character_json(d.splitting.basis.character);
  j["stable_generator"] = x_name(t);
  j["base_rank"] = d.base_rank;
  j["base_generators"] = std::move(base);
  j["monodromy"] = vertex_map_json(d.psi.forward(), t, n);
  j["monodromy_inverse"] = vertex_map_json(d.psi.backward(), t, n);
  j["inverse_verified"] = d.psi.verify();
  j["w3"] = vertex_string(d.w3, t, n);
  j["reconstructed"] = to_string(rebuilt);
  j["reconstructed_abelianization"] = abelian_json(h_rebuilt);
  j["abelianization_matches"] = h_rebuilt == abelianization(OneRelatorPresentation(n, d.splitting.basis.relator));
  return j;
}

std::string terminal_name(const TerminalGroup& t) {
  if (t.order == 0) return "Z";
  if (t.order == 1) return "1";
  return "Z/" + std::to_string(t.order);
}

Json hierarchy_json(const Hierarchy& h, bool full) {
  const HierarchyCheck check = verify_hierarchy(h);
  Json steps = Json::array();
  for (const HierarchyStep& s : h.steps) {
    if (!full) {
      steps.push_back(to_string(s.case_tag));
      continue;
    }
    Json j;
    j["case"] = to_string(s.case_tag);
    j["automorphism"] = automorphism_json(s.automorphism_used);
    j["character"] = s.character_used ? character_json(*s.character_used) : Json(nullptr);
    j["omitted"] = s.omitted ? Json(x_name(*s.omitted)) : Json(nullptr);
    j["stable_generator"] = s.splitting ? Json(x_name(s.splitting->stable)) : Json(nullptr);
    j["m"] = s.splitting ? Json(s.splitting->m) : Json(nullptr);
    j["edge_rank"] = s.splitting ? Json(s.splitting->edge_rank) : Json(nullptr);
    j["child"] = to_string(s.child);
    j["metric_before"] = s.metric_before;
    j["metric_after"] = s.metric_after;
    j["child_length"] = s.child_length;
    steps.push_back(std::move(j));
  }
  Json terminal;
  terminal["order"] = h.terminal.order;
  terminal["group"] = terminal_name(h.terminal);
  terminal["free_exit_rank"] = h.terminal.free_exit_rank ? Json(*h.terminal.free_exit_rank) : Json(nullptr);

  Json j;
  j["step_count"] = h.steps.size();
  j["steps"] = std::move(steps);
  j["terminal"] = std::move(terminal);
  j["verified"] = check.ok;
  if (!check.ok) {
    j["verification_failure"] = {{"step", check.step}, {"reason", check.reason}};
  }
  return j;
}

Json order_json(const Word& u, const ElementOrder& o) {
  Json j;
  j["element"] = to_string(u);
  j["order"] = o.infinite ? Json("infinite") : Json(o.value);
  return j;
}

std::string render_text(const Json& report) {
  std::ostringstream out;
  render(report, 0, out);
  return out.str();
}

}  // namespace onerel::cli
