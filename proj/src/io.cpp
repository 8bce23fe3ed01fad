#include "sset/io.hpp"

#include <fstream>
#include <sstream>
#include <vector>

namespace sset {

namespace {

struct Line {
  int number;
  std::vector<std::string> words;
};

std::vector<Line> tokenize(const std::string& text) {
  std::vector<Line> out;
  std::istringstream in(text);
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    std::istringstream words(raw);
    Line line{number, {}};
    std::string w;
    while (words >> w) line.words.push_back(w);
    if (!line.words.empty()) out.push_back(std::move(line));
  }
  return out;
}

int parse_int(const Line& line, const std::string& word, const char* what) {
  try {
    std::size_t used = 0;
    int v = std::stoi(word, &used);
    if (used != word.size()) throw std::invalid_argument(word);
    return v;
  } catch (const std::exception&) {
    throw ParseError(line.number, std::string("expected integer ") + what + ", got '" + word + "'");
  }
}

}  // namespace

ComplexReport parse_complex_report(const std::string& text) {
  auto lines = tokenize(text);
  if (lines.empty() || lines[0].words[0] != "dim" || lines[0].words.size() != 2)
    throw ParseError(lines.empty() ? 1 : lines[0].number, "expected header 'dim N'");
  int declared = parse_int(lines[0], lines[0].words[1], "dimension");
  if (declared < -1) throw ParseError(lines[0].number, "dimension must be >= -1");
  SimplicialSet::Builder builder;
  for (std::size_t k = 1; k < lines.size(); ++k) {
    const Line& line = lines[k];
    const auto& w = line.words;
    if (w[0] != "cell") throw ParseError(line.number, "unknown record '" + w[0] + "'");
    if (w.size() < 4 || w[3] != "faces:") throw ParseError(line.number, "expected 'cell <name> <dim> faces: ...'");
    int d = parse_int(line, w[2], "cell dimension");
    if (d < 0 || d > declared) throw ParseError(line.number, "cell dimension " + w[2] + " outside 0.." + std::to_string(declared));
    std::size_t nfaces = w.size() - 4;
    if (d == 0 ? nfaces != 0 : nfaces != std::size_t(d + 1))
      throw ParseError(line.number, "cell '" + w[1] + "' of dimension " + w[2] + " needs " +
                                        std::to_string(d == 0 ? 0 : d + 1) + " faces");
    std::vector<Simplex> faces;
    for (std::size_t f = 4; f < w.size(); ++f) {
      try {
        faces.push_back(builder.peek().parse_token(w[f]));
      } catch (const Error& e) {
        throw ParseError(line.number, "bad face token '" + w[f] + "': " + e.what());
      }
    }
    try {
      builder.add_cell(w[1], std::move(faces));
    } catch (const Error& e) {
      throw ParseError(line.number, e.what());
    }
  }
  ComplexReport report;
  report.complex = builder.build();
  for (const auto& v : validate(*report.complex)) {
    int number = 0;
    for (const auto& line : lines)
      if (line.words[0] == "cell" && line.words[1] == report.complex->name(v.cell)) number = line.number;
    report.violations.push_back({number, report.complex->name(v.cell), v.message});
  }
  return report;
}

SSetPtr parse_complex(const std::string& text) {
  ComplexReport r = parse_complex_report(text);
  if (!r.violations.empty()) throw ParseError(r.violations.front().line, r.violations.front().message);
  return r.complex;
}

std::string serialize_complex(const SimplicialSet& x) {
  std::ostringstream out;
  out << "dim " << x.dim() << "\n";
  for (auto id : x.cell_ids()) {
    out << "cell " << x.name(id) << " " << id.dim << " faces:";
    for (const auto& f : x.cell(id).faces) out << " " << x.token(f);
    out << "\n";
  }
  return out.str();
}

MapHeader parse_map_header(const std::string& text) {
  auto lines = tokenize(text);
  if (lines.empty() || lines[0].words[0] != "map" || lines[0].words.size() != 3)
    throw ParseError(lines.empty() ? 1 : lines[0].number, "expected header 'map <src-file> <tgt-file>'");
  return {lines[0].words[1], lines[0].words[2]};
}

SimplicialMap parse_map(const std::string& text, SSetPtr source, SSetPtr target) {
  auto lines = tokenize(text);
  parse_map_header(text);
  SimplicialMap::Images images(source->dim() + 1);
  for (int d = 0; d <= source->dim(); ++d) images[d].resize(source->count(unsigned(d)));
  std::vector<std::vector<char>> seen(images.size());
  for (std::size_t d = 0; d < images.size(); ++d) seen[d].assign(images[d].size(), 0);
  for (std::size_t k = 1; k < lines.size(); ++k) {
    const Line& line = lines[k];
    const auto& w = line.words;
    if (w[0] != "image" || w.size() != 3) throw ParseError(line.number, "expected 'image <cell> <simplex-token>'");
    auto c = source->find(w[1]);
    if (!c) throw ParseError(line.number, "unknown source cell '" + w[1] + "'");
    Simplex s;
    try {
      s = target->parse_token(w[2]);
    } catch (const Error& e) {
      throw ParseError(line.number, "bad image token '" + w[2] + "': " + e.what());
    }
    if (s.dim() != c->dim)
      throw ParseError(line.number, "image of cell '" + w[1] + "' has dimension " + std::to_string(s.dim()) +
                                        ", expected " + std::to_string(c->dim));
    if (seen[c->dim][c->index]) throw ParseError(line.number, "duplicate image for cell '" + w[1] + "'");
    seen[c->dim][c->index] = 1;
    images[c->dim][c->index] = s;
  }
  for (auto c : source->cell_ids())
    if (!seen[c.dim][c.index]) throw ParseError(lines.back().number, "no image given for cell '" + source->name(c) + "'");
  auto f = SimplicialMap::unchecked(source, target, std::move(images));
  auto problems = f.violations();
  if (!problems.empty()) throw ParseError(0, problems.front());
  return f;
}

std::string serialize_map(const SimplicialMap& f, const std::string& source_file, const std::string& target_file) {
  std::ostringstream out;
  out << "map " << source_file << " " << target_file << "\n";
  for (auto c : f.source().cell_ids())
    out << "image " << f.source().name(c) << " " << f.target().token(f.image(c)) << "\n";
  return out.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << contents;
}

}  // namespace sset
