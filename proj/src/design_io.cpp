#include "oatk/design_io.hpp"

#include <fstream>
#include <sstream>

namespace oatk {

namespace {

std::string next_content_line(std::istream& is) {
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') continue;
    return line;
  }
  throw ParseError("unexpected end of design file");
}

}  // namespace

void write_design(std::ostream& os, const Design& d) {
  const auto& p = d.params;
  os << p.runs << ' ' << p.factors << ' ' << p.levels << ' ' << p.strength << '\n';
  for (int r = 0; r < p.runs; ++r) {
    for (int c = 0; c < p.factors; ++c) {
      if (c) os << ' ';
      os << static_cast<int>(d.at(r, c));
    }
    os << '\n';
  }
}

Design read_design(std::istream& is) {
  std::istringstream header(next_content_line(is));
  int n, k, s, t;
  if (!(header >> n >> k >> s >> t)) throw ParseError("bad design header, expected 'N k s t'");
  DesignParams params;
  try {
    params = make_params(n, k, s, t);
  } catch (const InvalidParams& e) {
    throw ParseError(std::string("invalid design parameters: ") + e.what());
  }
  std::vector<std::uint8_t> cells;
  cells.reserve(static_cast<std::size_t>(n) * k);
  for (int r = 0; r < n; ++r) {
    std::istringstream row(next_content_line(is));
    for (int c = 0; c < k; ++c) {
      int v;
      if (!(row >> v)) throw ParseError("short design row");
      if (v < 0 || v >= s) throw ParseError("level out of range in design row");
      cells.push_back(static_cast<std::uint8_t>(v));
    }
    int extra;
    if (row >> extra) throw ParseError("design row longer than factor count");
  }
  return make_design(params, std::move(cells));
}

void save_design(const std::string& path, const Design& d) {
  std::ofstream os(path);
  if (!os) throw ParseError("cannot open for writing: " + path);
  write_design(os, d);
}

Design load_design(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ParseError("cannot open: " + path);
  return read_design(is);
}

void write_design_set(std::ostream& os, const std::vector<Design>& ds) {
  os << "# designs: " << ds.size() << '\n';
  for (const auto& d : ds) {
    os << '\n';
    write_design(os, d);
  }
}

std::vector<Design> read_design_set(std::istream& is) {
  std::string line;
  std::size_t count = 0;
  bool have_count = false;
  while (std::getline(is, line)) {
    if (line.rfind("# designs:", 0) == 0) {
      count = std::stoul(line.substr(10));
      have_count = true;
      break;
    }
    if (!line.empty() && line[0] != '#') throw ParseError("missing '# designs: n' header");
  }
  if (!have_count) throw ParseError("missing '# designs: n' header");
  std::vector<Design> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(read_design(is));
  return out;
}

void save_design_set(const std::string& path, const std::vector<Design>& ds) {
  std::ofstream os(path);
  if (!os) throw ParseError("cannot open for writing: " + path);
  write_design_set(os, ds);
}

std::vector<Design> load_design_set(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ParseError("cannot open: " + path);
  return read_design_set(is);
}

}  // namespace oatk
