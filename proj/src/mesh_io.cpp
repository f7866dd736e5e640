#include <algorithm>
#include <charconv>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "prdg/error.hpp"
#include "prdg/mesh.hpp"

namespace prdg {

namespace {

struct Line {
  std::size_t number;
  std::vector<std::string> tokens;
};

std::vector<Line> tokenize(const std::string& text) {
  std::vector<Line> lines;
  std::istringstream in(text);
  std::string raw;
  std::size_t number = 0;
  while (std::getline(in, raw)) {
    ++number;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream ls(raw);
    Line line{number, {}};
    for (std::string tok; ls >> tok;) line.tokens.push_back(tok);
    if (!line.tokens.empty()) lines.push_back(std::move(line));
  }
  return lines;
}

template <class T>
T parse_number(const std::string& tok, std::size_t line) {
  T value{};
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw ParseError("invalid number '" + tok + "'", line);
  return value;
}

}  // namespace

PolyMesh parse_mesh(const std::string& text, const ReadOptions& options) {
  auto lines = tokenize(text);
  if (lines.empty()) throw ParseError("empty mesh file", 0);
  const Line& header = lines[0];
  if (header.tokens.size() != 2) throw ParseError("header must be 'NV NE'", header.number);
  auto nv = parse_number<std::size_t>(header.tokens[0], header.number);
  auto ne = parse_number<std::size_t>(header.tokens[1], header.number);
  if (lines.size() < 1 + nv + ne)
    throw ParseError("expected " + std::to_string(nv) + " vertices and " + std::to_string(ne) + " elements",
                     lines.back().number);
  if (lines.size() > 1 + nv + ne) throw ParseError("trailing content", lines[1 + nv + ne].number);

  std::vector<Point> vertices;
  vertices.reserve(nv);
  for (std::size_t i = 0; i < nv; ++i) {
    const Line& l = lines[1 + i];
    if (l.tokens.size() != 2) throw ParseError("vertex line must be 'x y'", l.number);
    vertices.emplace_back(parse_number<double>(l.tokens[0], l.number), parse_number<double>(l.tokens[1], l.number));
  }

  std::vector<std::vector<Index>> elements;
  elements.reserve(ne);
  std::vector<Point> poly;
  for (std::size_t i = 0; i < ne; ++i) {
    const Line& l = lines[1 + nv + i];
    auto m = parse_number<std::size_t>(l.tokens[0], l.number);
    if (m < 3) throw ParseError("element needs at least 3 vertices", l.number);
    if (l.tokens.size() != m + 1) throw ParseError("element vertex count does not match", l.number);
    std::vector<Index> cyc;
    poly.clear();
    for (std::size_t j = 0; j < m; ++j) {
      auto v = parse_number<std::size_t>(l.tokens[j + 1], l.number);
      if (v >= nv) throw ParseError("vertex index " + std::to_string(v) + " out of range", l.number);
      cyc.push_back(v);
      poly.push_back(vertices[v]);
    }
    if (!polygon_is_simple(poly)) throw ParseError("element is not a simple polygon", l.number);
    if (signed_area(poly) <= 0) {
      if (!options.fix_orientation) throw ParseError("element is not counter-clockwise", l.number);
      std::reverse(cyc.begin(), cyc.end());
    }
    elements.push_back(std::move(cyc));
  }
  try {
    return PolyMesh(std::move(vertices), std::move(elements));
  } catch (const GeometryError& e) {
    throw ParseError(e.what(), 0);
  }
}

PolyMesh read_mesh(const std::filesystem::path& path, const ReadOptions& options) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open mesh file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_mesh(ss.str(), options);
}

std::string format_mesh(const PolyMesh& mesh) {
  std::ostringstream out;
  out << std::setprecision(17);
  out << mesh.num_vertices() << ' ' << mesh.num_elements() << '\n';
  for (const auto& v : mesh.vertices()) out << v.x() << ' ' << v.y() << '\n';
  for (const auto& cyc : mesh.elements()) {
    out << cyc.size();
    for (Index v : cyc) out << ' ' << v;
    out << '\n';
  }
  return out.str();
}

void write_mesh(const PolyMesh& mesh, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot write mesh file " + path.string());
  out << format_mesh(mesh);
}

}  // namespace prdg
