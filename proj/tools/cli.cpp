#include "cli.hpp"

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "report.hpp"

namespace onerel::cli {

namespace {

// Generous bound for bare words; the effective rank is the largest index used.
constexpr int kWordRank = 1 << 20;

struct Outcome {
  Json report;
  int status = kExitOk;
  std::string message;
};

IntegralCharacter parse_character(const std::string& text, int rank) {
  std::vector<long long> values;
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == ',' ||
                               text[i] == '(' || text[i] == ')')) {
      ++i;
    }
  };
  for (skip(); i < text.size(); skip()) {
    const std::size_t start = i;
    if (text[i] == '-' || text[i] == '+') ++i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (i == start || !std::isdigit(static_cast<unsigned char>(text[i - 1]))) {
      throw ParseError("expected an integer in the character", start);
    }
    try {
      values.push_back(std::stoll(text.substr(start, i - start)));
    } catch (const std::out_of_range&) {
      throw ParseError("character value out of range", start);
    }
  }
  if (static_cast<int>(values.size()) != rank) {
    throw PreconditionError("character has " + std::to_string(values.size()) + " values, presentation rank is " +
                            std::to_string(rank));
  }
  IntegralCharacter phi(std::move(values));
  if (!phi.is_surjective()) throw PreconditionError("character is not surjective");
  return phi;
}

IntegralCharacter character_for(const RunConfig& c, const OneRelatorPresentation& p) {
  return c.phi ? parse_character(*c.phi, p.rank()) : default_character(p);
}

std::string monodromy_text(const Json& monodromy) {
  std::string out;
  for (const auto& [key, value] : monodromy.items()) {
    out += (out.empty() ? "" : ", ") + key + " -> " + value.get<std::string>();
  }
  return out;
}

std::string vertex_presentation(const Json& split) {
  std::string out = "<";
  for (const Json& g : split["vertex"]["generators"]) out += (out.size() > 1 ? ", " : "") + g.get<std::string>();
  return out + " | " + split["vertex"]["relator"].get<std::string>() + ">";
}

// Every analysis that applies, recording why the others were skipped.
void analyze_into(Json& r, const RunConfig& c, const OneRelatorPresentation& p) {
  Json skipped = Json::object();
  const AbelianInvariants h = abelianization(p);
  r["abelianization"] = abelian_json(h);
  r["primitive"] = !p.relator().empty() && is_primitive(p.relator(), p.rank());
  std::string summary = "H1 " + to_string(h);

  std::optional<IntegralCharacter> phi;
  try {
    if (p.relator().empty()) throw PreconditionError("relator is empty");
    phi = character_for(c, p);
    Json fibering = Json::array();
    fibering.push_back(fibering_json(p, *phi));
    std::optional<NonManifoldCertificate> cert;
    if (p.rank() == 2) {
      cert = non_manifold_certificate(p);
      if (cert && !(cert->character == *phi)) fibering.push_back(fibering_json(p, cert->character));
    }
    summary += ", " + fibering[0]["verdict"].get<std::string>();
    r["fibering"] = std::move(fibering);
    if (p.rank() == 2) r["certificate"] = certificate_json(cert);
    if (cert) summary += ", " + to_string(cert->kind);
  } catch (const PreconditionError& e) {
    skipped["fibering"] = e.what();
  }

  if (phi) {
    const Json split = splitting_json(moldavansky_split(p, *phi));
    r["splitting"] = split;
    try {
      r["mapping_torus"] = torus_json(mapping_torus(p, *phi));
    } catch (const PreconditionError& e) {
      skipped["mapping_torus"] = e.what();
    }
  } else {
    skipped["splitting"] = skipped["fibering"];
    skipped["mapping_torus"] = skipped["fibering"];
  }

  try {
    const Hierarchy hier = build_hierarchy(p, c.max_steps);
    r["hierarchy"] = hierarchy_json(hier, false);
    summary += ", hierarchy " + terminal_name(hier.terminal);
  } catch (const StepBudgetExceeded& e) {
    skipped["hierarchy"] = std::string(e.what()) + " after " + std::to_string(e.partial().steps.size()) + " steps";
  }
  if (!skipped.empty()) r["skipped"] = std::move(skipped);
  r["result"] = summary;
}

void run_command(Json& r, const RunConfig& c, const OneRelatorPresentation& p, const std::string& extra) {
  const std::string& cmd = c.command;
  if (cmd == "fiber") {
    if (p.relator().empty()) throw PreconditionError("relator is empty");
    const IntegralCharacter phi = character_for(c, p);
    Json f = fibering_json(p, phi);
    r["result"] = f["verdict"];
    r["fibering"] = std::move(f);
    if (p.rank() == 2) r["certificate"] = certificate_json(non_manifold_certificate(p));
  } else if (cmd == "split") {
    Json s = splitting_json(moldavansky_split(p, character_for(c, p)));
    r["result"] = vertex_presentation(s);
    r["splitting"] = std::move(s);
  } else if (cmd == "torus") {
    Json t = torus_json(mapping_torus(p, character_for(c, p)));
    r["result"] = monodromy_text(t["monodromy"]);
    r["mapping_torus"] = std::move(t);
  } else if (cmd == "hierarchy") {
    Hierarchy h = [&] {
      try {
        return build_hierarchy(p, c.max_steps);
      } catch (const StepBudgetExceeded& e) {
        throw PreconditionError(std::string(e.what()) + " (max-steps " + std::to_string(c.max_steps) + ")");
      }
    }();
    Json j = hierarchy_json(h, true);
    r["result"] = terminal_name(h.terminal);
    r["hierarchy"] = std::move(j);
  } else if (cmd == "h1") {
    Json a = abelian_json(abelianization(p));
    r["result"] = a["group"];
    r["abelianization"] = std::move(a);
  } else if (cmd == "order") {
    const Word u = parse_word_extended(extra, p.rank());
    Json o = order_json(u, element_order_in_h1(p, u));
    r["result"] = o["order"];
    r["order"] = std::move(o);
  } else if (cmd == "primitive") {
    const bool prim = !p.relator().empty() && is_primitive(p.relator(), p.rank());
    r["result"] = prim ? "primitive" : "not primitive";
    r["primitive"] = prim;
  } else {
    analyze_into(r, c, p);
  }
}

OneRelatorPresentation parse_input(const RunConfig& c, const std::string& text) {
  if (c.command == "primitive" && text.find('<') == std::string::npos) {
    const Word w = parse_word_extended(text, kWordRank);
    return OneRelatorPresentation(std::max(1, w.max_generator()), w, c.label);
  }
  OneRelatorPresentation p = parse_presentation(text, true);
  return c.label.empty() ? p : OneRelatorPresentation(p.rank(), p.relator(), c.label);
}

Json error_json(const std::string& kind, const std::string& message, std::optional<std::size_t> position) {
  Json e;
  e["kind"] = kind;
  e["message"] = message;
  if (position) e["position"] = *position;
  return e;
}

// `batch_line` > 0 marks a batch record: the line is parsed with the file
// grammar (comments, labels) and may yield no presentation at all.
std::optional<Outcome> execute(const RunConfig& c, const std::string& text, const std::string& extra,
                               std::size_t batch_line = 0) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  Json& r = o.report;
  if (batch_line) r["line"] = batch_line;
  r["command"] = c.command;
  r["result"] = nullptr;
  try {
    std::optional<OneRelatorPresentation> p;
    if (batch_line) {
      p = parse_presentation_line(text, true);
      if (!p) return std::nullopt;
    } else {
      p = parse_input(c, text);
    }
    r["input"] = input_json(*p, text);
    run_command(r, c, *p, extra);
  } catch (const ParseError& e) {
    o.status = kExitParse;
    o.message = e.what();
    r["error"] = error_json("parse", e.what(), e.position());
  } catch (const PreconditionError& e) {
    o.status = kExitPrecondition;
    o.message = e.what();
    r["error"] = error_json("precondition", e.what(), std::nullopt);
  }
  if (c.timing) {
    const std::chrono::duration<double, std::milli> dt = std::chrono::steady_clock::now() - start;
    r["timing_ms"] = dt.count();
  }
  return o;
}

std::string format(const RunConfig& c, const Outcome& o) {
  const Json& r = o.report;
  if (c.json) return r.dump(c.command == "batch" ? -1 : 2) + "\n";
  const std::string prefix = r.contains("line") ? "line " + std::to_string(r["line"].get<std::size_t>()) + ": " : "";
  if (r.contains("error")) return prefix + r["error"]["kind"].get<std::string>() + " error: " + o.message + "\n";
  if (c.quiet) {
    return prefix + (r["result"].is_string() ? r["result"].get<std::string>() : r["result"].dump()) + "\n";
  }
  return render_text(r);
}

int combine(int a, int b) {
  if (a == kExitParse || b == kExitParse) return kExitParse;
  return std::max(a, b);
}

int run_batch(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const std::string& path = c.inputs.at(0);
  std::vector<std::string> lines;
  {
    std::ifstream file;
    std::istream* in = &std::cin;
    if (path != "-") {
      file.open(path);
      if (!file) {
        err << "error: cannot read " << path << '\n';
        return kExitParse;
      }
      in = &file;
    }
    for (std::string line; std::getline(*in, line);) lines.push_back(std::move(line));
  }

  RunConfig analyze = c;
  analyze.command = "analyze";
  std::vector<std::optional<Outcome>> results(lines.size());
  std::vector<char> done(lines.size(), 0);
  std::mutex mutex;
  std::condition_variable ready;
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < lines.size();) {
      auto o = execute(analyze, lines[i], {}, i + 1);
      if (o) o->report["command"] = "batch";
      std::lock_guard lock(mutex);
      results[i] = std::move(o);
      done[i] = 1;
      ready.notify_one();
    }
  };
  const int jobs = std::max(1, std::min<int>(c.jobs, static_cast<int>(lines.size())));
  std::vector<std::jthread> pool;
  for (int k = 0; k < jobs; ++k) pool.emplace_back(worker);

  // Single writer: emits records strictly in input order as they complete.
  int status = kExitOk;
  bool first = true;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::optional<Outcome> o;
    {
      std::unique_lock lock(mutex);
      ready.wait(lock, [&] { return done[i] != 0; });
      o = std::move(results[i]);
    }
    if (!o) continue;
    status = combine(status, o->status);
    if (!c.json && !c.quiet && !first && !o->report.contains("error")) out << '\n';
    out << format(c, *o);
    first = false;
  }
  return status;
}

}  // namespace

int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
  if (c.jobs < 1) {
    err << "error: --jobs must be at least 1\n";
    return kExitPrecondition;
  }
  if (c.max_steps < 1) {
    err << "error: --max-steps must be at least 1\n";
    return kExitPrecondition;
  }
  if (c.command == "batch") return run_batch(c, out, err);
  const std::string extra = c.inputs.size() > 1 ? c.inputs[1] : std::string();
  const Outcome o = *execute(c, c.inputs.at(0), extra);
  if (o.status != kExitOk && !c.json) {
    err << "error: " << o.message << '\n';
  } else {
    out << format(c, o);
  }
  return o.status;
}

int run_args(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Analysis of one-relator group presentations", "onerel"};
  app.require_subcommand(1);
  RunConfig c;
  app.add_flag("--json", c.json, "Structured output (one JSON tree per input)");
  app.add_option("--max-steps", c.max_steps, "Step budget for the hierarchy")->capture_default_str();
  app.add_option("--jobs", c.jobs, "Worker threads for batch")->capture_default_str();
  app.add_flag("-q,--quiet", c.quiet, "Print only the headline result");
  app.add_option("--label", c.label, "Label attached to the input presentation");
  app.add_option("--phi", c.phi, "Character values, e.g. \"1,0\" (default: a canonical vanishing character)");
  app.add_flag("--timing", c.timing, "Add wall-clock timing_ms to each report");

  auto presentation_command = [&](const char* name, const char* help) {
    CLI::App* sub = app.add_subcommand(name, help)->fallthrough();
    sub->add_option("presentation", c.inputs, "Presentation such as \"<x1, x2 | x1 x2 x1^-1 x2^-1>\"")
        ->required()
        ->expected(1);
    return sub;
  };
  presentation_command("fiber", "Brown's criterion for a character, plus the 3-manifold exclusion certificate");
  presentation_command("split", "HNN splitting of the group along a character");
  presentation_command("torus", "Monodromy of a fibering character");
  presentation_command("hierarchy", "Build and verify the one-relator hierarchy");
  presentation_command("h1", "Abelianization");
  presentation_command("analyze", "Every analysis whose preconditions hold");
  app.add_subcommand("order", "Order of an element in the abelianization")
      ->fallthrough()
      ->add_option("inputs", c.inputs, "Presentation, then the element word")
      ->required()
      ->expected(2);
  app.add_subcommand("primitive", "Whether the relator (or a bare word) is primitive")
      ->fallthrough()
      ->add_option("input", c.inputs, "Presentation or word")
      ->required()
      ->expected(1);
  app.add_subcommand("batch", "Analyze every presentation in a file, one per line")
      ->fallthrough()
      ->add_option("file", c.inputs, "Input file, or - for standard input")
      ->required()
      ->expected(1);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitParse;
  }
  c.command = app.get_subcommands().front()->get_name();
  return run(c, out, err);
}

}  // namespace onerel::cli
