#include "cubictsp/io.hpp"

#include <fstream>
#include <sstream>
#include <vector>

namespace cubictsp {

ParseError::ParseError(int line, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}

namespace {

int parse_count(const std::string& token, int line, const char* what) {
  std::size_t used = 0;
  int value = 0;
  try {
    value = std::stoi(token, &used);
  } catch (const std::exception&) {
    throw ParseError(line, std::string("bad ") + what + " '" + token + "'");
  }
  if (used != token.size() || value < 0) throw ParseError(line, std::string("bad ") + what + " '" + token + "'");
  return value;
}

}  // namespace

Instance parse_instance(std::istream& in) {
  std::string raw;
  int line = 0;
  bool have_header = false;
  int declared_edges = 0;
  Instance inst;
  while (std::getline(in, raw)) {
    ++line;
    std::istringstream ls(raw);
    std::string tag;
    if (!(ls >> tag) || tag == "c") continue;
    if (tag == "p") {
      if (have_header) throw ParseError(line, "duplicate p line");
      std::string kind;
      std::string n_text;
      std::string m_text;
      if (!(ls >> kind >> n_text >> m_text) || kind != "ftsp") throw ParseError(line, "expected 'p ftsp <n> <m>'");
      inst = Instance(parse_count(n_text, line, "vertex count"));
      declared_edges = parse_count(m_text, line, "edge count");
      have_header = true;
    } else if (tag == "e") {
      if (!have_header) throw ParseError(line, "edge before p line");
      std::string u_text;
      std::string v_text;
      std::string w_text;
      if (!(ls >> u_text >> v_text >> w_text)) throw ParseError(line, "expected 'e <u> <v> <weight> [F]'");
      const int u = parse_count(u_text, line, "vertex");
      const int v = parse_count(v_text, line, "vertex");
      if (u < 1 || v < 1 || u > inst.num_vertices() || v > inst.num_vertices()) {
        throw ParseError(line, "vertex out of range");
      }
      if (u == v) throw ParseError(line, "self-loop");
      Rational w;
      try {
        w = parse_rational(w_text);
      } catch (const std::invalid_argument& err) {
        throw ParseError(line, err.what());
      }
      bool forced = false;
      std::string flag;
      if (ls >> flag) {
        if (flag != "F") throw ParseError(line, "unexpected token '" + flag + "'");
        forced = true;
      }
      if (ls >> flag) throw ParseError(line, "trailing tokens");
      inst.add_edge(u - 1, v - 1, std::move(w), forced);
      if (inst.degrees(u - 1).total > 3 || inst.degrees(v - 1).total > 3) throw ParseError(line, "vertex degree exceeds 3");
    } else {
      throw ParseError(line, "unknown line type '" + tag + "'");
    }
  }
  if (!have_header) throw ParseError(line, "missing p line");
  if (inst.num_edges() != declared_edges) {
    throw ParseError(line, "p line declares " + std::to_string(declared_edges) + " edges, found " +
                               std::to_string(inst.num_edges()));
  }
  return inst;
}

Instance parse_instance(const std::string& text) {
  std::istringstream in(text);
  return parse_instance(in);
}

Instance read_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return parse_instance(in);
}

std::string serialize(const Instance& inst, const std::string& comment) {
  std::vector<int> index(static_cast<std::size_t>(inst.vertex_capacity()), -1);
  int next = 0;
  for (VertexId v : inst.vertices()) index[static_cast<std::size_t>(v)] = ++next;
  std::ostringstream out;
  if (!comment.empty()) out << "c " << comment << '\n';
  out << "p ftsp " << inst.num_vertices() << ' ' << inst.num_edges() << '\n';
  for (EdgeId e : inst.edges()) {
    const auto& ed = inst.edge(e);
    out << "e " << index[static_cast<std::size_t>(ed.u)] << ' ' << index[static_cast<std::size_t>(ed.v)] << ' '
        << to_string(ed.weight) << (ed.forced ? " F" : "") << '\n';
  }
  return out.str();
}

void write_instance(const std::filesystem::path& path, const Instance& inst, const std::string& comment) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << serialize(inst, comment);
}

}  // namespace cubictsp
