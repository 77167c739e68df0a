#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "cmtop/acceptance.hpp"
#include "cmtop/fixtures.hpp"
#include "cmtop/io.hpp"
#include "cmtop/knot_words.hpp"
#include "cmtop/moves.hpp"
#include "cmtop/statesum.hpp"

using namespace cmtop;
using nlohmann::json;

namespace {

constexpr int kOk = 0, kFailure = 1, kUsage = 2;

struct Globals {
  bool json = false;
  std::uint64_t seed = 20240601;
  unsigned threads = 1;
  bool peiffer_warn_only = false;
};

std::string rational(const Rational& r) {
  std::ostringstream out;
  out << boost::multiprecision::numerator(r) << '/' << boost::multiprecision::denominator(r);
  return out.str();
}

json value_json(const InvariantValue& v) {
  return {{"value", rational(v.value)}, {"N", v.count.str()}, {"a", v.a}, {"b", v.b}};
}

std::string witness_text(const std::vector<Element>& w) {
  std::string s;
  for (Element e : w) s += (s.empty() ? "" : " ") + std::to_string(e);
  return s;
}

// Crossed-module axioms; Peiffer failures only warn when asked to.
int check_cm(const CrossedModule& cm, const std::string& source, const Globals& g, json* out) {
  auto report = validate(cm, true);
  int status = kOk;
  json items = json::array();
  for (const auto& v : report) {
    const bool warning = v.axiom == Axiom::Peiffer && g.peiffer_warn_only;
    if (!warning) status = kFailure;
    if (out) {
      items.push_back({{"axiom", axiom_name(v.axiom)},
                       {"witness", v.witness},
                       {"message", v.message},
                       {"severity", warning ? "warning" : "error"}});
    } else {
      std::cerr << source << ": " << (warning ? "warning" : "error") << ": axiom " << axiom_name(v.axiom)
                << ": " << v.message << " (witness " << witness_text(v.witness) << ")\n";
    }
  }
  if (out) *out = items;
  return status;
}

int cmd_validate_cm(const std::string& file, const Globals& g) {
  auto cm = resolve_cm(file);
  json violations;
  const int status = check_cm(cm, file, g, g.json ? &violations : nullptr);
  if (g.json) {
    std::cout << json{{"command", "validate-cm"},
                      {"file", file},
                      {"name", cm.name()},
                      {"h_order", cm.h().order()},
                      {"g_order", cm.g().order()},
                      {"ok", status == kOk},
                      {"violations", violations}}
                     .dump(2)
              << '\n';
  } else if (status == kOk) {
    std::cout << file << ": ok (" << cm.name() << ", |H|=" << cm.h().order() << ", |G|=" << cm.g().order()
              << ")\n";
  }
  return status;
}

int cmd_validate_complex(const std::string& file, const Globals& g) {
  auto c = resolve_complex(file);
  auto report = validate_manifold_basics(c);
  const auto k = c.counts();
  if (g.json) {
    json items = json::array();
    for (const auto& v : report)
      items.push_back({{"rule", v.rule}, {"entity", v.entity}, {"id", v.id}, {"detail", v.detail}});
    std::cout << json{{"command", "validate-complex"},
                      {"file", file},
                      {"counts", {k.k0, k.k1, k.k2, k.k3}},
                      {"simplicial", c.is_simplicial()},
                      {"ok", report.empty()},
                      {"violations", items}}
                     .dump(2)
              << '\n';
  } else {
    for (const auto& v : report)
      std::cerr << file << ": " << v.rule << ": " << v.entity << ' ' << v.id << ": " << v.detail << '\n';
    if (report.empty())
      std::cout << file << ": ok (" << k.k0 << " vertices, " << k.k1 << " edges, " << k.k2 << " faces, "
                << k.k3 << " tets" << (c.is_simplicial() ? ", simplicial" : "") << ")\n";
  }
  return report.empty() ? kOk : kFailure;
}

int cmd_invariant(const std::string& complex_file, const std::string& cm_file, const std::string& engine,
                  std::optional<std::uint64_t> budget, const Globals& g) {
  auto c = resolve_complex(complex_file);
  auto cm = resolve_cm(cm_file);
  if (check_cm(cm, cm_file, g, nullptr) != kOk) return kFailure;
  if (auto report = validate_manifold_basics(c); !report.empty()) {
    for (const auto& v : report)
      std::cerr << complex_file << ": " << v.rule << ": " << v.entity << ' ' << v.id << ": " << v.detail << '\n';
    return kFailure;
  }
  EngineOptions opts;
  opts.threads = g.threads;
  InvariantValue v = engine == "brute" ? brute_force_invariant(cm, c, budget, g.threads) : invariant(cm, c, opts);
  if (g.json)
    std::cout << json{{"command", "invariant"}, {"complex", complex_file}, {"cm", cm_file}, {"engine", engine},
                      {"result", value_json(v)}}
                     .dump(2)
              << '\n';
  else
    std::cout << v.to_string() << '\n';
  return kOk;
}

int cmd_move(const std::string& complex_file, const std::string& kind_text, std::optional<EntityId> face,
             std::optional<EntityId> edge, std::optional<EntityId> tet, std::optional<VertexLabel> vertex,
             std::optional<VertexLabel> new_vertex, const Globals& g) {
  const MoveKind kind = parse_move_kind(kind_text);
  std::optional<EntityId> target;
  const char* wanted = "";
  switch (target_kind(kind)) {
    case TargetKind::Face: target = face, wanted = "--face"; break;
    case TargetKind::Edge: target = edge, wanted = "--edge"; break;
    case TargetKind::Tet: target = tet, wanted = "--tet"; break;
    case TargetKind::Vertex: target = vertex, wanted = "--vertex"; break;
  }
  const int given = face.has_value() + edge.has_value() + tet.has_value() + vertex.has_value();
  if (!target || given != 1) {
    std::cerr << "move " << move_name(kind) << " needs exactly one target, given with " << wanted << '\n';
    return kUsage;
  }
  auto c = resolve_complex(complex_file);
  auto r = apply(c, MoveDescriptor{kind, *target, new_vertex});
  const std::string text = write_complex(r.complex);
  if (g.json) {
    const auto k = r.complex.counts();
    std::cout << json{{"command", "move"},
                      {"complex", complex_file},
                      {"move", to_string(MoveDescriptor{kind, *target, new_vertex})},
                      {"inverse", to_string(r.inverse)},
                      {"counts", {k.k0, k.k1, k.k2, k.k3}},
                      {"created", {{"vertices", r.created_vertices}, {"edges", r.created_edges},
                                   {"faces", r.created_faces}, {"tets", r.created_tets}}},
                      {"removed", {{"vertices", r.removed_vertices}, {"edges", r.removed_edges},
                                   {"faces", r.removed_faces}, {"tets", r.removed_tets}}},
                      {"result", text}}
                     .dump(2)
              << '\n';
  } else {
    std::cout << "# " << to_string(MoveDescriptor{kind, *target, new_vertex}) << ", inverse "
              << to_string(r.inverse) << '\n'
              << text;
  }
  return kOk;
}

GroupWord word_from(const std::string& text, const std::string& builtin) {
  if (!text.empty() && !builtin.empty()) throw CLI::ValidationError("give either a word or --builtin, not both");
  if (!builtin.empty()) return builtin_word(builtin);
  if (text.empty()) throw CLI::ValidationError("a word or --builtin is required");
  return parse_word(text);
}

int cmd_word(const GroupWord& w, const std::string& cm_file, const Globals& g) {
  auto cm = resolve_cm(cm_file);
  if (check_cm(cm, cm_file, g, nullptr) != kOk) return kFailure;
  auto v = word_state_sum(w, cm, g.threads);
  if (g.json)
    std::cout << json{{"command", "word"}, {"word", w.to_string()}, {"cm", cm_file}, {"result", value_json(v)}}
                     .dump(2)
              << '\n';
  else
    std::cout << v.to_string() << '\n';
  return kOk;
}

int cmd_reps(const GroupWord& w, const std::string& group, const Globals& g) {
  auto grp = resolve_group(group);
  const auto n = count_reps(w.without_da(), *grp);
  if (g.json)
    std::cout << json{{"command", "reps"}, {"relator", w.without_da().to_string()}, {"group", grp->name()},
                      {"count", n}}
                     .dump(2)
              << '\n';
  else
    std::cout << n << '\n';
  return kOk;
}

int cmd_selftest(const Globals& g) {
  AcceptanceOptions opts;
  opts.seed = g.seed;
  opts.threads = g.threads;
  if (!g.json) opts.on_result = [](const CriterionResult& r) { std::cout << format_result(r) << std::endl; };
  auto results = run_acceptance(opts);
  const bool ok = acceptance_ok(results);
  if (g.json) {
    static const char* names[] = {"pass", "fail", "finding"};
    json items = json::array();
    for (const auto& r : results)
      items.push_back({{"id", r.id},
                       {"title", r.title},
                       {"status", names[static_cast<int>(r.status)]},
                       {"detail", r.detail},
                       {"seconds", r.seconds},
                       {"limit_seconds", r.limit_seconds}});
    std::cout << json{{"command", "selftest"}, {"seed", g.seed}, {"ok", ok}, {"criteria", items}}.dump(2) << '\n';
  } else {
    std::cout << (ok ? "selftest: all criteria met" : "selftest: FAILED") << '\n';
  }
  return ok ? kOk : kFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Crossed-module state sums on triangulated 3-manifolds"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_flag("--json", g.json, "Machine-readable output");
  app.add_option("--seed", g.seed, "Seed for randomized checks")->capture_default_str();
  app.add_option("--threads", g.threads, "Worker threads")->capture_default_str()->check(CLI::Range(1u, 256u));
  app.add_flag("--peiffer-warn-only", g.peiffer_warn_only, "Report Peiffer violations as warnings");

  std::string file;
  auto* vcm = app.add_subcommand("validate-cm", "Check the crossed-module axioms");
  vcm->add_option("file", file, "Crossed-module file or fixture name")->required();
  auto* vcx = app.add_subcommand("validate-complex", "Check a complex");
  vcx->add_option("file", file, "Complex file or fixture name")->required();

  std::string complex_file, cm_file, engine = "fast";
  std::optional<std::uint64_t> budget;
  auto* inv = app.add_subcommand("invariant", "Evaluate the state sum");
  inv->add_option("--complex", complex_file, "Complex file or fixture name")->required();
  inv->add_option("--cm", cm_file, "Crossed-module file or fixture name")->required();
  inv->add_option("--engine", engine, "brute or fast")->check(CLI::IsMember({"brute", "fast"}))->capture_default_str();
  inv->add_option("--budget", budget, "Brute-force iteration budget (default CMTOP_BUDGET or 1e8)");

  std::string move_kind;
  std::optional<EntityId> face, edge, tet;
  std::optional<VertexLabel> vertex, new_vertex;
  auto* mv = app.add_subcommand("move", "Apply a local move and print the new complex");
  mv->add_option("--complex", complex_file, "Complex file or fixture name")->required();
  mv->add_option("--move", move_kind, "P14 P41 P23 P32 B13 B31 B22")->required();
  mv->add_option("--face", face, "Target face id (P23, B13)");
  mv->add_option("--edge", edge, "Target edge id (P32, B22)");
  mv->add_option("--tet", tet, "Target tet id (P14)");
  mv->add_option("--vertex", vertex, "Target vertex label (P41, B31)");
  mv->add_option("--new-vertex", new_vertex, "Label of the inserted vertex (P14, B13)");

  std::string word_text, builtin, group;
  auto* wd = app.add_subcommand("word", "State sum of a knot-complement word");
  wd->add_option("--word", word_text, "Tokens X x Y y D");
  wd->add_option("--builtin", builtin, "fig8, t52 or k52");
  wd->add_option("--cm", cm_file, "Crossed-module file or fixture name")->required();

  auto* rp = app.add_subcommand("reps", "Count pairs (x, y) satisfying a relator");
  rp->add_option("--relator", word_text, "Tokens X x Y y (D is dropped)");
  rp->add_option("--builtin", builtin, "fig8, t52 or k52");
  rp->add_option("--group", group, "Group spec (Z/n, S3, Z/2xZ/2) or file")->required();

  auto* st = app.add_subcommand("selftest", "Run the acceptance criteria");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*vcm) return cmd_validate_cm(file, g);
    if (*vcx) return cmd_validate_complex(file, g);
    if (*inv) return cmd_invariant(complex_file, cm_file, engine, budget, g);
    if (*mv) return cmd_move(complex_file, move_kind, face, edge, tet, vertex, new_vertex, g);
    if (*wd) return cmd_word(word_from(word_text, builtin), cm_file, g);
    if (*rp) return cmd_reps(word_from(word_text, builtin), group, g);
    if (*st) return cmd_selftest(g);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailure;
  } catch (const MovePreconditionError& e) {
    std::cerr << complex_file << ": error: " << e.what() << '\n';
    return kFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kUsage;
}
