#include "cmtop/io.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

namespace cmtop {

namespace {

std::string format_location(const std::string& source, int line, int column) {
  std::string out = source;
  if (line > 0) out += ":" + std::to_string(line);
  if (column > 0) out += ":" + std::to_string(column);
  return out;
}

struct Token {
  std::string text;
  int column;
};

struct Line {
  int number;
  std::vector<Token> tokens;
};

std::vector<Line> tokenize(const std::string& text) {
  std::vector<Line> lines;
  std::istringstream in(text);
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    Line line{number, {}};
    std::size_t i = 0;
    while (i < raw.size()) {
      while (i < raw.size() && std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
      std::size_t start = i;
      while (i < raw.size() && !std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
      if (i > start) line.tokens.push_back({raw.substr(start, i - start), static_cast<int>(start + 1)});
    }
    if (!line.tokens.empty()) lines.push_back(std::move(line));
  }
  return lines;
}

class Reader {
 public:
  Reader(std::string source) : source_(std::move(source)) {}

  [[noreturn]] void fail(const Line& line, std::size_t tok, const std::string& msg) const {
    int col = tok < line.tokens.size() ? line.tokens[tok].column
                                       : (line.tokens.empty() ? 1 : line.tokens.back().column);
    throw ParseError(source_, line.number, col, msg);
  }

  std::int64_t integer(const Line& line, std::size_t tok) const {
    if (tok >= line.tokens.size()) fail(line, tok, "expected an integer");
    const std::string& s = line.tokens[tok].text;
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
      fail(line, tok, "expected an integer, got '" + s + "'");
    return v;
  }

  std::int64_t nonneg(const Line& line, std::size_t tok) const {
    std::int64_t v = integer(line, tok);
    if (v < 0) fail(line, tok, "expected a nonnegative integer");
    return v;
  }

  void arity(const Line& line, std::size_t n, const std::string& what) const {
    if (line.tokens.size() != n)
      fail(line, std::min(line.tokens.size(), n),
           what + " takes " + std::to_string(n - 1) + " fields, got " +
               std::to_string(line.tokens.size() - 1));
  }

  const std::string& source() const { return source_; }

 private:
  std::string source_;
};

std::vector<Element> element_row(const Reader& r, const Line& line, std::size_t first,
                                 std::size_t count) {
  if (line.tokens.size() != first + count)
    r.fail(line, std::min(line.tokens.size(), first + count),
           "expected " + std::to_string(count) + " entries, got " +
               std::to_string(line.tokens.size() - first));
  std::vector<Element> out;
  for (std::size_t i = 0; i < count; ++i)
    out.push_back(static_cast<Element>(r.nonneg(line, first + i)));
  return out;
}

}  // namespace

ParseError::ParseError(std::string source, int line, int column, const std::string& message)
    : std::runtime_error(format_location(source, line, column) + ": " + message),
      source_(std::move(source)),
      line_(line),
      column_(column) {}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path.string(), 0, 0, "cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

GroupPtr parse_group(const std::string& text, const std::string& source) {
  Reader r(source);
  auto lines = tokenize(text);
  if (lines.empty()) throw ParseError(source, 0, 0, "empty group file");
  const Line& head = lines[0];
  if (head.tokens[0].text != "group") r.fail(head, 0, "expected 'group <name> <order>'");
  r.arity(head, 3, "group");
  std::int64_t order = r.integer(head, 2);
  if (order <= 0) r.fail(head, 2, "group order must be positive");
  if (lines.size() != static_cast<std::size_t>(order) + 1)
    r.fail(lines.back(), 0,
           "expected " + std::to_string(order) + " table rows, got " + std::to_string(lines.size() - 1));
  std::vector<Element> table;
  for (std::int64_t a = 0; a < order; ++a) {
    auto row = element_row(r, lines[a + 1], 0, order);
    table.insert(table.end(), row.begin(), row.end());
  }
  try {
    return std::make_shared<const FiniteGroup>(head.tokens[1].text, order, std::move(table));
  } catch (const std::invalid_argument& e) {
    r.fail(head, 0, e.what());
  }
}

GroupPtr load_group_file(const std::filesystem::path& path) {
  return parse_group(read_text_file(path), path.string());
}

std::string write_group(const FiniteGroup& g) {
  std::ostringstream out;
  out << "group " << g.name() << ' ' << g.order() << '\n';
  for (Element a = 0; a < g.order(); ++a) {
    for (Element b = 0; b < g.order(); ++b) out << (b ? " " : "") << g.mul(a, b);
    out << '\n';
  }
  return out.str();
}

namespace {

GroupPtr group_field(const Reader& r, const Line& line, const std::filesystem::path& base_dir) {
  if (line.tokens.size() < 2) r.fail(line, 1, "missing group");
  const std::string& what = line.tokens[1].text;
  if (what == "inline") {
    std::int64_t order = r.integer(line, 2);
    if (order <= 0) r.fail(line, 2, "group order must be positive");
    auto table = element_row(r, line, 3, static_cast<std::size_t>(order * order));
    try {
      return std::make_shared<const FiniteGroup>("G" + std::to_string(order), order, std::move(table));
    } catch (const std::invalid_argument& e) {
      r.fail(line, 1, e.what());
    }
  }
  r.arity(line, 2, line.tokens[0].text);
  std::filesystem::path p = base_dir / what;
  if (std::filesystem::is_regular_file(p)) return load_group_file(p);
  try {
    return build_group_from_spec(what);
  } catch (const std::invalid_argument&) {
    r.fail(line, 1, "'" + what + "' is neither a group file nor a known group spec");
  }
}

}  // namespace

CrossedModule parse_cmod(const std::string& text, const std::string& source,
                         const std::filesystem::path& base_dir) {
  Reader r(source);
  auto lines = tokenize(text);
  if (lines.empty()) throw ParseError(source, 0, 0, "empty crossed-module file");
  const Line& head = lines[0];
  if (head.tokens[0].text != "cmod") r.fail(head, 0, "expected 'cmod <name>'");
  r.arity(head, 2, "cmod");
  GroupPtr h, g;
  std::optional<std::size_t> delta_line, action_line;
  std::size_t i = 1;
  for (; i < lines.size(); ++i) {
    const Line& line = lines[i];
    const std::string& key = line.tokens[0].text;
    if (key == "group_h") {
      h = group_field(r, line, base_dir);
    } else if (key == "group_g") {
      g = group_field(r, line, base_dir);
    } else if (key == "delta") {
      delta_line = i;
    } else if (key == "action") {
      r.arity(line, 1, "action");
      action_line = i;
      break;
    } else {
      r.fail(line, 0, "unknown keyword '" + key + "'");
    }
  }
  if (!h) throw ParseError(source, 0, 0, "missing group_h");
  if (!g) throw ParseError(source, 0, 0, "missing group_g");
  if (!delta_line) throw ParseError(source, 0, 0, "missing delta line");
  if (!action_line) throw ParseError(source, 0, 0, "missing action block");
  auto boundary = element_row(r, lines[*delta_line], 1, h->order());
  for (std::size_t y = 0; y < boundary.size(); ++y)
    if (boundary[y] >= g->order())
      r.fail(lines[*delta_line], y + 1, "boundary image " + std::to_string(boundary[y]) + " is not in G");
  if (lines.size() - *action_line - 1 != g->order())
    r.fail(lines.back(), 0,
           "action block needs " + std::to_string(g->order()) + " rows, got " +
               std::to_string(lines.size() - *action_line - 1));
  std::vector<Element> action;
  for (Element x = 0; x < g->order(); ++x) {
    const Line& line = lines[*action_line + 1 + x];
    auto row = element_row(r, line, 0, h->order());
    for (std::size_t y = 0; y < row.size(); ++y)
      if (row[y] >= h->order()) r.fail(line, y, "action value " + std::to_string(row[y]) + " is not in H");
    action.insert(action.end(), row.begin(), row.end());
  }
  return CrossedModule(head.tokens[1].text, h, g, std::move(boundary), std::move(action));
}

CrossedModule load_cmod_file(const std::filesystem::path& path) {
  return parse_cmod(read_text_file(path), path.string(), path.parent_path());
}

std::string write_cmod(const CrossedModule& cm) {
  auto inline_group = [](const FiniteGroup& grp) {
    std::ostringstream out;
    out << "inline " << grp.order();
    for (Element v : grp.table()) out << ' ' << v;
    return out.str();
  };
  std::ostringstream out;
  out << "cmod " << cm.name() << '\n';
  out << "group_h " << inline_group(cm.h()) << '\n';
  out << "group_g " << inline_group(cm.g()) << '\n';
  out << "delta";
  for (Element v : cm.boundary_table()) out << ' ' << v;
  out << "\naction\n";
  for (Element x = 0; x < cm.g().order(); ++x) {
    for (Element y = 0; y < cm.h().order(); ++y) out << (y ? " " : "") << cm.act(x, y);
    out << '\n';
  }
  return out.str();
}

Complex parse_complex(const std::string& text, const std::string& source) {
  Reader r(source);
  auto lines = tokenize(text);
  bool delta_mode = false;
  for (const auto& line : lines) {
    const std::string& key = line.tokens[0].text;
    if (key == "edge" || key == "face") delta_mode = true;
    else if (key != "tet") r.fail(line, 0, "unknown keyword '" + key + "'");
  }
  try {
    if (!delta_mode) {
      std::vector<std::array<VertexLabel, 4>> tets;
      for (const auto& line : lines) {
        r.arity(line, 5, "tet");
        std::array<VertexLabel, 4> t{};
        for (int k = 0; k < 4; ++k) t[k] = r.nonneg(line, k + 1);
        std::set<VertexLabel> distinct(t.begin(), t.end());
        if (distinct.size() != 4) r.fail(line, 1, "repeated vertex in tet");
        tets.push_back(t);
      }
      return Complex::from_tet_list(tets);
    }
    std::vector<Complex::DeltaEdge> edges;
    std::vector<Complex::DeltaFace> faces;
    std::vector<Complex::DeltaTet> tets;
    std::set<EntityId> edge_ids, face_ids, tet_ids;
    for (const auto& line : lines) {
      const std::string& key = line.tokens[0].text;
      if (key == "edge") {
        if (line.tokens.size() != 2 && line.tokens.size() != 4)
          r.fail(line, 1, "edge takes an id and optionally tail and head vertices");
        Complex::DeltaEdge e{r.nonneg(line, 1), std::nullopt};
        if (line.tokens.size() == 4) e.ends = std::make_pair(r.nonneg(line, 2), r.nonneg(line, 3));
        if (!edge_ids.insert(e.id).second) r.fail(line, 1, "duplicate edge id " + std::to_string(e.id));
        edges.push_back(e);
      } else if (key == "face") {
        r.arity(line, 5, "face");
        Complex::DeltaFace f{r.nonneg(line, 1), {}};
        if (!face_ids.insert(f.id).second) r.fail(line, 1, "duplicate face id " + std::to_string(f.id));
        for (int k = 0; k < 3; ++k) f.edges[k] = r.nonneg(line, k + 2);
        faces.push_back(f);
      } else {
        r.arity(line, 6, "tet");
        Complex::DeltaTet t{r.nonneg(line, 1), {}};
        if (!tet_ids.insert(t.id).second) r.fail(line, 1, "duplicate tet id " + std::to_string(t.id));
        for (int k = 0; k < 4; ++k) t.faces[k] = r.nonneg(line, k + 2);
        tets.push_back(t);
      }
    }
    for (const auto& line : lines) {
      const std::string& key = line.tokens[0].text;
      if (key == "face") {
        for (int k = 0; k < 3; ++k)
          if (!edge_ids.count(r.integer(line, k + 2)))
            r.fail(line, k + 2, "unknown edge " + line.tokens[k + 2].text);
      } else if (key == "tet") {
        for (int k = 0; k < 4; ++k)
          if (!face_ids.count(r.integer(line, k + 2)))
            r.fail(line, k + 2, "unknown face " + line.tokens[k + 2].text);
      }
    }
    return Complex::from_delta(edges, faces, tets);
  } catch (const ParseError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ParseError(source, 0, 0, e.what());
  }
}

Complex load_complex_file(const std::filesystem::path& path) {
  return parse_complex(read_text_file(path), path.string());
}

std::string write_complex(const Complex& c) {
  std::ostringstream out;
  const auto labels = c.vertex_labels();
  if (c.is_simplicial() && !c.tets().empty()) {
    std::vector<std::array<VertexLabel, 4>> tets;
    for (Index t = 0; t < c.tets().size(); ++t) {
      auto v = c.tet_vertices(t);
      tets.push_back({labels[v[0]], labels[v[1]], labels[v[2]], labels[v[3]]});
    }
    if (Complex::from_tet_list(tets) == c) {
      for (const auto& t : tets) out << "tet " << t[0] << ' ' << t[1] << ' ' << t[2] << ' ' << t[3] << '\n';
      return out.str();
    }
  }
  for (const auto& e : c.edges())
    out << "edge " << e.id << ' ' << labels[e.tail] << ' ' << labels[e.head] << '\n';
  for (const auto& f : c.faces())
    out << "face " << f.id << ' ' << c.edges()[f.edges[0]].id << ' ' << c.edges()[f.edges[1]].id
        << ' ' << c.edges()[f.edges[2]].id << '\n';
  for (const auto& t : c.tets())
    out << "tet " << t.id << ' ' << c.faces()[t.faces[0]].id << ' ' << c.faces()[t.faces[1]].id
        << ' ' << c.faces()[t.faces[2]].id << ' ' << c.faces()[t.faces[3]].id << '\n';
  return out.str();
}

}  // namespace cmtop
