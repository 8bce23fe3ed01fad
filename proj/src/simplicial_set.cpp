#include "sset/simplicial_set.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <sstream>

namespace sset {

unsigned Simplex::dim() const { return base.dim + unsigned(std::popcount(degeneracies)); }

std::vector<unsigned> Simplex::word() const {
  std::vector<unsigned> w;
  for (unsigned j = 0; j < 32; ++j)
    if (degeneracies & (1u << j)) w.push_back(j);
  return w;
}

Simplex Simplex::from_word(CellId base, std::span<const unsigned> word) {
  std::uint32_t mask = 0;
  for (std::size_t m = 0; m < word.size(); ++m) {
    if (m > 0 && word[m] <= word[m - 1]) throw Error("degeneracy word must be strictly increasing");
    if (word[m] > base.dim + m) throw Error("degeneracy index " + std::to_string(word[m]) + " out of range");
    if (base.dim + word.size() > kMaxDim) throw Error("simplex dimension too large");
    mask |= 1u << word[m];
  }
  return Simplex(base, mask);
}

Monotone coface_map(unsigned n, unsigned i) {
  Monotone m;
  m.reserve(n);
  for (unsigned k = 0; k <= n; ++k)
    if (k != i) m.push_back(std::uint8_t(k));
  return m;
}

Monotone codegeneracy_map(unsigned n, unsigned j) {
  Monotone m;
  m.reserve(n + 2);
  for (unsigned k = 0; k <= n + 1; ++k) m.push_back(std::uint8_t(k <= j ? k : k - 1));
  return m;
}

Monotone surjection_of(const Simplex& x) {
  unsigned n = x.dim();
  Monotone s(n + 1);
  s[0] = 0;
  for (unsigned i = 0; i < n; ++i) s[i + 1] = std::uint8_t(s[i] + ((x.degeneracies >> i) & 1u ? 0 : 1));
  return s;
}

std::uint32_t mask_of(const Monotone& surjection) {
  std::uint32_t mask = 0;
  for (std::size_t i = 0; i + 1 < surjection.size(); ++i)
    if (surjection[i] == surjection[i + 1]) mask |= 1u << i;
  return mask;
}

bool normal_form_less(const Simplex& a, const Simplex& b) {
  if (a.base != b.base) return a.base < b.base;
  auto wa = a.word(), wb = b.word();
  return std::lexicographical_compare(wa.begin(), wa.end(), wb.begin(), wb.end());
}

namespace {

bool valid_name(const std::string& name) {
  if (name.empty()) return false;
  for (char ch : name)
    if (ch == '@' || ch == '#' || std::isspace(static_cast<unsigned char>(ch))) return false;
  return true;
}

bool mask_fits(const Simplex& s) {
  unsigned n = s.dim();
  if (n > kMaxDim) return false;
  return n == 0 ? s.degeneracies == 0 : (s.degeneracies >> n) == 0;
}

}  // namespace

// ---------------------------------------------------------------- Builder

CellId SimplicialSet::Builder::add_vertex(std::string name) { return add_cell(std::move(name), {}); }

CellId SimplicialSet::Builder::add_cell(std::string name, std::vector<Simplex> faces) {
  auto& s = *set_;
  if (!valid_name(name)) throw Error("invalid cell name '" + name + "'");
  if (s.by_name_.count(name)) throw Error("duplicate cell name '" + name + "'");
  unsigned d = faces.empty() ? 0 : unsigned(faces.size() - 1);
  if (faces.size() == 1) throw Error("cell '" + name + "' has a single face");
  if (d > kMaxDim) throw Error("cell '" + name + "' exceeds the maximal dimension");
  for (std::size_t i = 0; i < faces.size(); ++i) {
    const Simplex& f = faces[i];
    if (!mask_fits(f) || f.dim() != d - 1)
      throw Error("face " + std::to_string(i) + " of '" + name + "' has the wrong dimension");
    if (!s.contains(f.base)) throw Error("face " + std::to_string(i) + " of '" + name + "' references a missing cell");
  }
  Cell cell;
  cell.name = name;
  cell.faces = std::move(faces);
  if (d == 0) {
    cell.vertices = {std::uint32_t(s.count(0))};
  } else {
    cell.vertices.resize(d + 1);
    for (unsigned k = 0; k < d; ++k) cell.vertices[k] = s.vertex(cell.faces[d], k);
    cell.vertices[d] = s.vertex(cell.faces[0], d - 1);
  }
  if (s.cells_.size() <= d) s.cells_.resize(d + 1);
  CellId id{d, std::uint32_t(s.cells_[d].size())};
  s.cells_[d].push_back(std::move(cell));
  s.by_name_.emplace(std::move(name), id);
  return id;
}

CellId SimplicialSet::Builder::add_cell_unique(std::string name, std::vector<Simplex> faces) {
  if (!set_->find(name)) return add_cell(std::move(name), std::move(faces));
  for (unsigned k = 1;; ++k) {
    std::string candidate = name + "'" + std::to_string(k);
    if (!set_->find(candidate)) return add_cell(std::move(candidate), std::move(faces));
  }
}

std::size_t SimplicialSet::Builder::size() const { return set_->total_cells(); }

const SimplicialSet& SimplicialSet::Builder::peek() const { return *set_; }

bool SimplicialSet::operator==(const SimplicialSet& o) const {
  if (cells_.size() != o.cells_.size()) return false;
  for (std::size_t d = 0; d < cells_.size(); ++d) {
    if (cells_[d].size() != o.cells_[d].size()) return false;
    for (std::size_t k = 0; k < cells_[d].size(); ++k)
      if (cells_[d][k].name != o.cells_[d][k].name || cells_[d][k].faces != o.cells_[d][k].faces) return false;
  }
  return true;
}

bool same_complex(const SimplicialSet& a, const SimplicialSet& b) { return &a == &b || a == b; }

SSetPtr SimplicialSet::Builder::build() {
  // empty trailing dimensions never arise: cells_ grows only on insertion
  SSetPtr out = std::move(set_);
  set_ = std::make_shared<SimplicialSet>();
  return out;
}

// ---------------------------------------------------------------- queries

std::size_t SimplicialSet::total_cells() const {
  std::size_t n = 0;
  for (const auto& level : cells_) n += level.size();
  return n;
}

std::optional<CellId> SimplicialSet::find(const std::string& name) const {
  auto it = by_name_.find(name);
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

bool SimplicialSet::contains(const Simplex& s) const { return contains(s.base) && mask_fits(s); }

std::vector<CellId> SimplicialSet::cell_ids() const {
  std::vector<CellId> ids;
  ids.reserve(total_cells());
  for (std::uint32_t d = 0; d < cells_.size(); ++d)
    for (std::uint32_t i = 0; i < cells_[d].size(); ++i) ids.push_back({d, i});
  return ids;
}

Simplex SimplicialSet::apply(const Simplex& x, const Monotone& theta) const {
  Monotone eta = surjection_of(x);
  Monotone comp(theta.size());
  for (std::size_t k = 0; k < theta.size(); ++k) comp[k] = eta.at(theta[k]);
  CellId b = x.base;
  for (;;) {
    unsigned d = b.dim;
    std::uint64_t hit = 0;
    for (auto v : comp) hit |= std::uint64_t(1) << v;
    std::uint64_t full = (std::uint64_t(1) << (d + 1)) - 1;
    if (hit == full) return Simplex(b, mask_of(comp));
    int j = 63 - std::countl_zero(full & ~hit);
    const Simplex& f = cell_face(b, unsigned(j));
    Monotone ef = surjection_of(f);
    for (auto& v : comp) v = ef[v > j ? v - 1 : v];
    b = f.base;
  }
}

Simplex SimplicialSet::face(const Simplex& x, unsigned i) const {
  unsigned n = x.dim();
  if (n == 0 || i > n) throw Error("face index out of range");
  return apply(x, coface_map(n, i));
}

Simplex SimplicialSet::degeneracy(const Simplex& x, unsigned j) const {
  unsigned n = x.dim();
  if (j > n) throw Error("degeneracy index out of range");
  if (n + 1 > kMaxDim) throw Error("simplex dimension too large");
  return apply(x, codegeneracy_map(n, j));
}

std::uint32_t SimplicialSet::vertex(const Simplex& x, unsigned k) const {
  Monotone eta = surjection_of(x);
  return cell(x.base).vertices.at(eta.at(k));
}

std::vector<std::uint32_t> SimplicialSet::vertices(const Simplex& x) const {
  Monotone eta = surjection_of(x);
  const auto& bv = cell(x.base).vertices;
  std::vector<std::uint32_t> out(eta.size());
  for (std::size_t k = 0; k < eta.size(); ++k) out[k] = bv[eta[k]];
  return out;
}

std::vector<Simplex> SimplicialSet::simplices(unsigned n) const {
  std::vector<Simplex> out;
  for (std::uint32_t d = 0; d <= n && d < cells_.size(); ++d) {
    unsigned k = n - d;  // number of degeneracies
    // word positions: choose k of the n positions 0..n-1, in lexicographic order
    std::vector<unsigned> pos(k);
    std::vector<std::uint32_t> masks;
    auto rec = [&](auto&& self, unsigned start, unsigned depth) -> void {
      if (depth == k) {
        std::uint32_t m = 0;
        for (auto p : pos) m |= 1u << p;
        masks.push_back(m);
        return;
      }
      for (unsigned p = start; p < n; ++p) {
        pos[depth] = p;
        self(self, p + 1, depth + 1);
      }
    };
    rec(rec, 0, 0);
    for (std::uint32_t i = 0; i < cells_[d].size(); ++i)
      for (auto m : masks) {
        Simplex s(CellId{d, i}, m);
        if (mask_fits(s)) out.push_back(s);
      }
  }
  return out;
}

Simplex SimplicialSet::constant(std::uint32_t vertex, unsigned n) {
  return Simplex(CellId{0, vertex}, n == 0 ? 0u : ((n >= 32 ? 0u : (1u << n)) - 1u));
}

std::string SimplicialSet::token(const Simplex& x) const {
  if (x.nondegenerate()) return name(x.base);
  std::string out = "s";
  bool first = true;
  for (auto j : x.word()) {
    if (!first) out += ',';
    out += std::to_string(j);
    first = false;
  }
  return out + "@" + name(x.base);
}

Simplex SimplicialSet::parse_token(const std::string& token) const {
  auto at = token.find('@');
  if (at == std::string::npos) {
    auto c = find(token);
    if (!c) throw Error("unknown cell '" + token + "'");
    return Simplex(*c);
  }
  std::string prefix = token.substr(0, at), nm = token.substr(at + 1);
  auto c = find(nm);
  if (!c) throw Error("unknown cell '" + nm + "' in token '" + token + "'");
  if (prefix.size() < 2 || prefix[0] != 's') throw Error("malformed degeneracy token '" + token + "'");
  std::vector<unsigned> word;
  std::string num;
  for (std::size_t k = 1; k <= prefix.size(); ++k) {
    if (k == prefix.size() || prefix[k] == ',') {
      if (num.empty() || num.size() > 2) throw Error("malformed degeneracy token '" + token + "'");
      word.push_back(unsigned(std::stoul(num)));
      num.clear();
    } else if (std::isdigit(static_cast<unsigned char>(prefix[k]))) {
      num += prefix[k];
    } else {
      throw Error("malformed degeneracy token '" + token + "'");
    }
  }
  return Simplex::from_word(*c, word);
}

// ---------------------------------------------------------------- maps

SimplicialMap::SimplicialMap(SSetPtr source, SSetPtr target, Images images)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
  if (!source_ || !target_) throw Error("map with null complex");
  auto v = violations();
  if (!v.empty()) throw Error(v.front());
}

SimplicialMap SimplicialMap::unchecked(SSetPtr source, SSetPtr target, Images images) {
  SimplicialMap m;
  m.source_ = std::move(source);
  m.target_ = std::move(target);
  m.images_ = std::move(images);
  return m;
}

SimplicialMap SimplicialMap::identity(SSetPtr x) {
  Images im(x->dim() + 1);
  for (auto c : x->cell_ids()) im[c.dim].push_back(Simplex(c));
  return unchecked(x, x, std::move(im));
}

SimplicialMap SimplicialMap::to_point(SSetPtr x, SSetPtr point) {
  if (point->dim() != 0 || point->count(0) != 1) throw Error("target is not a point");
  Images im(x->dim() + 1);
  for (auto c : x->cell_ids()) im[c.dim].push_back(SimplicialSet::constant(0, c.dim));
  return unchecked(std::move(x), std::move(point), std::move(im));
}

SimplicialMap SimplicialMap::compose(const SimplicialMap& g, const SimplicialMap& f) {
  if (f.target_ != g.source_ && f.target_.get() != g.source_.get())
    throw Error("maps are not composable");
  Images im(f.source().dim() + 1);
  for (auto c : f.source().cell_ids()) im[c.dim].push_back(g(f.image(c)));
  return unchecked(f.source_, g.target_, std::move(im));
}

Simplex SimplicialMap::operator()(const Simplex& x) const {
  return target_->apply(image(x.base), surjection_of(x));
}

bool SimplicialMap::injective_on_cells() const {
  std::unordered_map<Simplex, int, SimplexHash> seen;
  for (const auto& level : images_)
    for (const auto& s : level) {
      if (!s.nondegenerate()) return false;
      if (!seen.emplace(s, 0).second) return false;
    }
  return true;
}

bool SimplicialMap::bijective_on_vertices() const {
  std::size_t nv = source_->count(0);
  if (nv != target_->count(0)) return false;
  std::vector<char> hit(nv, 0);
  for (std::size_t v = 0; v < nv; ++v) {
    auto t = images_.at(0).at(v).base.index;
    if (hit[t]) return false;
    hit[t] = 1;
  }
  return true;
}

bool SimplicialMap::surjective_on_cells() const {
  std::unordered_map<Simplex, int, SimplexHash> seen;
  for (const auto& level : images_)
    for (const auto& s : level)
      if (s.nondegenerate()) seen.emplace(s, 0);
  return seen.size() == target_->total_cells();
}

std::vector<std::string> SimplicialMap::violations() const {
  std::vector<std::string> out;
  const auto& src = *source_;
  const auto& tgt = *target_;
  if (images_.size() != std::size_t(src.dim() + 1)) {
    out.push_back("image table does not cover every dimension of the source");
    return out;
  }
  for (std::uint32_t d = 0; d < images_.size(); ++d) {
    if (images_[d].size() != src.count(d)) {
      out.push_back("image table size mismatch in dimension " + std::to_string(d));
      return out;
    }
    for (std::uint32_t i = 0; i < images_[d].size(); ++i) {
      const Simplex& y = images_[d][i];
      if (!tgt.contains(y) || y.dim() != d) {
        out.push_back("image of '" + src.name({d, i}) + "' has the wrong dimension or is missing");
      }
    }
  }
  if (!out.empty()) return out;
  for (auto c : src.cell_ids()) {
    if (c.dim == 0) continue;
    const Simplex& y = image(c);
    for (unsigned k = 0; k <= c.dim; ++k) {
      if ((*this)(src.cell_face(c, k)) != tgt.face(y, k))
        out.push_back("image of '" + src.name(c) + "' is not compatible with face " + std::to_string(k));
    }
  }
  return out;
}

// ---------------------------------------------------------------- mono

MonoInclusion::MonoInclusion(SimplicialMap map) : map_(std::move(map)) {
  const auto& tgt = map_.target();
  inverse_.resize(std::max(0, tgt.dim() + 1));
  for (std::size_t d = 0; d < inverse_.size(); ++d) inverse_[d].assign(tgt.count(unsigned(d)), -1);
  for (auto c : map_.source().cell_ids()) {
    const Simplex& s = map_.image(c);
    if (!s.nondegenerate()) throw Error("map sends cell '" + map_.source().name(c) + "' to a degenerate simplex");
    auto& slot = inverse_[s.base.dim][s.base.index];
    if (slot >= 0) throw Error("map is not injective on cells");
    slot = c.index;
  }
}

std::optional<CellId> MonoInclusion::preimage(CellId t) const {
  if (t.dim >= inverse_.size() || t.index >= inverse_[t.dim].size()) return std::nullopt;
  auto v = inverse_[t.dim][t.index];
  if (v < 0) return std::nullopt;
  return CellId{t.dim, std::uint32_t(v)};
}

std::vector<CellId> MonoInclusion::complement() const {
  std::vector<CellId> out;
  for (auto c : target().cell_ids())
    if (!in_image(c)) out.push_back(c);
  return out;
}

// ---------------------------------------------------------------- validate

std::vector<Violation> validate(const SimplicialSet& x) {
  std::vector<Violation> out;
  for (auto c : x.cell_ids()) {
    if (c.dim == 0) continue;
    const auto& faces = x.cell(c).faces;
    bool structural_ok = faces.size() == c.dim + 1;
    for (std::size_t i = 0; structural_ok && i < faces.size(); ++i) {
      const Simplex& f = faces[i];
      if (!x.contains(f) || f.dim() + 1 != c.dim) {
        out.push_back({c, "face " + std::to_string(i) + " of '" + x.name(c) + "' is malformed"});
        structural_ok = false;
      }
    }
    if (!structural_ok || c.dim < 2) continue;
    for (unsigned j = 1; j <= c.dim; ++j)
      for (unsigned i = 0; i < j; ++i) {
        Simplex lhs = x.face(faces[j], i);
        Simplex rhs = x.face(faces[i], j - 1);
        if (lhs != rhs) {
          std::ostringstream msg;
          msg << "d" << i << " d" << j << " != d" << (j - 1) << " d" << i << " on '" << x.name(c) << "' ("
              << x.token(lhs) << " vs " << x.token(rhs) << ")";
          out.push_back({c, msg.str()});
        }
      }
  }
  return out;
}

}  // namespace sset
