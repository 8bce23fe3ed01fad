#include "sset/constructions.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <set>
#include <unordered_map>

namespace sset {

namespace {

std::string safe_token(const SimplicialSet& x, const Simplex& s) {
  std::string t = x.token(s);
  std::replace(t.begin(), t.end(), '@', '~');
  return t;
}

std::vector<std::vector<unsigned>> all_faces_of(const std::vector<std::vector<unsigned>>& generators) {
  std::vector<std::vector<unsigned>> out;
  for (const auto& g : generators) {
    std::vector<unsigned> sorted = g;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    unsigned k = unsigned(sorted.size());
    if (k > 20) throw Error("generating face too large");
    for (std::uint32_t m = 1; m < (1u << k); ++m) {
      std::vector<unsigned> s;
      for (unsigned b = 0; b < k; ++b)
        if (m & (1u << b)) s.push_back(sorted[b]);
      out.push_back(std::move(s));
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

SSetPtr build_from_vertex_sets(unsigned n, const std::vector<std::vector<unsigned>>& sets) {
  SimplicialSet::Builder b;
  std::map<std::vector<unsigned>, CellId> ids;
  for (const auto& s : sets) {
    std::vector<Simplex> faces;
    if (s.size() > 1) {
      for (std::size_t k = 0; k < s.size(); ++k) {
        std::vector<unsigned> f = s;
        f.erase(f.begin() + std::ptrdiff_t(k));
        faces.push_back(Simplex(ids.at(f)));
      }
    }
    ids[s] = b.add_cell(vertex_set_name(n, s), std::move(faces));
  }
  return b.build();
}

MonoInclusion inclusion_by_name(const SSetPtr& small, const SSetPtr& large) {
  SimplicialMap::Images im(small->dim() + 1);
  for (auto c : small->cell_ids()) {
    auto t = large->find(small->name(c));
    if (!t) throw Error("cell '" + small->name(c) + "' missing from the ambient complex");
    im[c.dim].push_back(Simplex(*t));
  }
  return MonoInclusion(SimplicialMap(small, large, std::move(im)));
}

}  // namespace

std::optional<GeneratorKind> parse_generator_kind(const std::string& s) {
  if (s == "simplex") return GeneratorKind::Simplex;
  if (s == "boundary") return GeneratorKind::Boundary;
  if (s == "horn") return GeneratorKind::Horn;
  if (s == "spine") return GeneratorKind::Spine;
  if (s == "j_trunc" || s == "j-trunc") return GeneratorKind::JTrunc;
  return std::nullopt;
}

const char* to_string(GeneratorKind kind) {
  switch (kind) {
    case GeneratorKind::Simplex: return "simplex";
    case GeneratorKind::Boundary: return "boundary";
    case GeneratorKind::Horn: return "horn";
    case GeneratorKind::Spine: return "spine";
    case GeneratorKind::JTrunc: return "j_trunc";
  }
  return "?";
}

std::string vertex_set_name(unsigned n, const std::vector<unsigned>& vertices) {
  std::string out;
  for (std::size_t k = 0; k < vertices.size(); ++k) {
    if (n >= 10 && k > 0) out += '_';
    out += std::to_string(vertices[k]);
  }
  return out;
}

SSetPtr standard_simplex(unsigned n) {
  std::vector<unsigned> all(n + 1);
  for (unsigned k = 0; k <= n; ++k) all[k] = k;
  return build_from_vertex_sets(n, all_faces_of({all}));
}

SSetPtr point() { return standard_simplex(0); }

SSetPtr empty_complex() { return SimplicialSet::Builder().build(); }

MonoInclusion standard_subcomplex(unsigned n, const std::vector<std::vector<unsigned>>& generators) {
  for (const auto& g : generators)
    for (auto v : g)
      if (v > n) throw Error("vertex " + std::to_string(v) + " outside Delta^" + std::to_string(n));
  return inclusion_by_name(build_from_vertex_sets(n, all_faces_of(generators)), standard_simplex(n));
}

MonoInclusion standard_inclusion(unsigned n, const std::vector<std::vector<unsigned>>& small,
                                 const std::vector<std::vector<unsigned>>& large) {
  return inclusion_by_name(build_from_vertex_sets(n, all_faces_of(small)),
                           build_from_vertex_sets(n, all_faces_of(large)));
}

MonoInclusion horn_inclusion(unsigned n, unsigned i) {
  if (n < 1 || i > n) throw Error("invalid horn");
  std::vector<std::vector<unsigned>> gens;
  for (unsigned j = 0; j <= n; ++j) {
    if (j == i) continue;
    std::vector<unsigned> f;
    for (unsigned k = 0; k <= n; ++k)
      if (k != j) f.push_back(k);
    gens.push_back(f);
  }
  return standard_subcomplex(n, gens);
}

MonoInclusion boundary_inclusion(unsigned n) {
  std::vector<std::vector<unsigned>> gens;
  if (n > 0)
    for (unsigned j = 0; j <= n; ++j) {
      std::vector<unsigned> f;
      for (unsigned k = 0; k <= n; ++k)
        if (k != j) f.push_back(k);
      gens.push_back(f);
    }
  return standard_subcomplex(n, gens);
}

MonoInclusion spine_inclusion(unsigned n) {
  if (n < 1) throw Error("spine needs n >= 1");
  std::vector<std::vector<unsigned>> gens;
  for (unsigned k = 0; k < n; ++k) gens.push_back({k, k + 1});
  return standard_subcomplex(n, gens);
}

SSetPtr make_generator(GeneratorKind kind, int n, std::optional<int> i) {
  if (n < 0) throw Error("n must be non-negative");
  if (unsigned(n) > kMaxDim) throw Error("n too large");
  unsigned un = unsigned(n);
  switch (kind) {
    case GeneratorKind::Simplex:
      return standard_simplex(un);
    case GeneratorKind::Boundary:
      return boundary_inclusion(un).source_ptr();
    case GeneratorKind::Horn:
      if (!i || n < 1 || *i < 0 || *i > n) throw Error("horn needs n >= 1 and 0 <= i <= n");
      return horn_inclusion(un, unsigned(*i)).source_ptr();
    case GeneratorKind::Spine:
      if (n < 1) throw Error("spine needs n >= 1");
      return spine_inclusion(un).source_ptr();
    case GeneratorKind::JTrunc:
      return cosk0({"0", "1"}, un);
  }
  throw Error("unknown generator");
}

std::optional<Simplex> standard_simplex_at(const SimplicialSet& sub, unsigned n, const Monotone& sequence) {
  std::vector<unsigned> distinct;
  for (auto v : sequence)
    if (distinct.empty() || distinct.back() != v) distinct.push_back(v);
  auto c = sub.find(vertex_set_name(n, distinct));
  if (!c) return std::nullopt;
  return Simplex(*c, mask_of(sequence));
}

SimplicialMap classifying_map(SSetPtr x_complex, const Simplex& x) {
  unsigned n = x.dim();
  SSetPtr delta = standard_simplex(n);
  SimplicialMap::Images im(n + 1);
  for (auto c : delta->cell_ids()) {
    Monotone theta;
    for (auto v : delta->cell(c).vertices) theta.push_back(std::uint8_t(v));
    im[c.dim].push_back(x_complex->apply(x, theta));
  }
  return SimplicialMap::unchecked(delta, std::move(x_complex), std::move(im));
}

Simplex strip_degeneracies(const SimplicialSet& x_complex, const Simplex& x, std::uint32_t mask) {
  if (mask == 0) return x;
  unsigned n = x.dim();
  Monotone section;
  for (unsigned k = 0; k <= n; ++k)
    if (k == 0 || !(mask & (1u << (k - 1)))) section.push_back(std::uint8_t(k));
  return x_complex.apply(x, section);
}

// ------------------------------------------------------------------ colimits

PushoutResult pushout(const MonoInclusion& i, const SimplicialMap& f) {
  if (!same_complex(f.source(), i.source()))
    throw Error("pushout legs have different sources");
  const SimplicialSet& b = i.target();
  const SimplicialSet& c = f.target();
  SimplicialSet::Builder builder;
  for (auto id : c.cell_ids()) builder.add_cell(c.name(id), c.cell(id).faces);
  std::map<CellId, CellId> fresh;
  for (auto id : i.complement()) {
    std::vector<Simplex> faces;
    for (const auto& face : b.cell(id).faces) {
      if (auto a = i.preimage(face.base)) {
        faces.push_back(builder.peek().apply(f.image(*a), surjection_of(face)));
      } else {
        faces.push_back(Simplex(fresh.at(face.base), face.degeneracies));
      }
    }
    fresh[id] = builder.add_cell_unique(b.name(id), std::move(faces));
  }
  SSetPtr d = builder.build();
  SimplicialMap::Images from_c(c.dim() + 1), from_b(b.dim() + 1);
  for (auto id : c.cell_ids()) from_c[id.dim].push_back(Simplex(id));
  for (auto id : b.cell_ids()) {
    if (auto a = i.preimage(id))
      from_b[id.dim].push_back(f.image(*a));
    else
      from_b[id.dim].push_back(Simplex(fresh.at(id)));
  }
  PushoutResult out{d, MonoInclusion(SimplicialMap::unchecked(f.target_ptr(), d, std::move(from_c))),
                    SimplicialMap::unchecked(i.target_ptr(), d, std::move(from_b))};
  return out;
}

AttachResult attach(SSetPtr s, const std::vector<Attachment>& attachments) {
  SimplicialSet::Builder builder;
  for (auto id : s->cell_ids()) builder.add_cell(s->name(id), s->cell(id).faces);
  std::vector<std::map<CellId, CellId>> fresh(attachments.size());
  for (std::size_t a = 0; a < attachments.size(); ++a) {
    const auto& att = attachments[a];
    const MonoInclusion& gen = *att.generator;
    const SimplicialSet& j = gen.target();
    for (auto id : gen.complement()) {
      std::vector<Simplex> faces;
      for (const auto& face : j.cell(id).faces) {
        if (auto pre = gen.preimage(face.base))
          faces.push_back(builder.peek().apply(att.attaching.image(*pre), surjection_of(face)));
        else
          faces.push_back(Simplex(fresh[a].at(face.base), face.degeneracies));
      }
      fresh[a][id] = builder.add_cell_unique(att.label + "." + j.name(id), std::move(faces));
    }
  }
  SSetPtr out = builder.build();
  AttachResult result;
  result.object = out;
  SimplicialMap::Images inc(s->dim() + 1);
  for (auto id : s->cell_ids()) inc[id.dim].push_back(Simplex(id));
  result.inclusion = MonoInclusion(SimplicialMap::unchecked(s, out, std::move(inc)));
  for (std::size_t a = 0; a < attachments.size(); ++a) {
    const auto& att = attachments[a];
    const MonoInclusion& gen = *att.generator;
    SimplicialMap::Images im(gen.target().dim() + 1);
    std::vector<std::pair<CellId, CellId>> created;
    for (auto id : gen.target().cell_ids()) {
      if (auto pre = gen.preimage(id)) {
        im[id.dim].push_back(att.attaching.image(*pre));
      } else {
        im[id.dim].push_back(Simplex(fresh[a].at(id)));
        created.emplace_back(id, fresh[a].at(id));
      }
    }
    result.characteristic.push_back(SimplicialMap::unchecked(gen.target_ptr(), out, std::move(im)));
    result.created.push_back(std::move(created));
  }
  return result;
}

SSetPtr coproduct(const SSetPtr& x, const SSetPtr& y) {
  SimplicialSet::Builder builder;
  for (auto id : x->cell_ids()) builder.add_cell(x->name(id), x->cell(id).faces);
  std::map<CellId, CellId> moved;
  for (auto id : y->cell_ids()) {
    std::vector<Simplex> faces;
    for (const auto& f : y->cell(id).faces) faces.push_back(Simplex(moved.at(f.base), f.degeneracies));
    moved[id] = builder.add_cell_unique(y->name(id), std::move(faces));
  }
  return builder.build();
}

// ------------------------------------------------------------------ limits

FiberProduct::FiberProduct(const SimplicialMap& p, const SimplicialMap& q, std::optional<unsigned> max_dim)
    : x_(p.source_ptr()), y_(q.source_ptr()) {
  if (!same_complex(p.target(), q.target()))
    throw Error("fiber product of maps with different targets");
  build([&](const Simplex& s) -> std::optional<Simplex> { return p(s); },
        [&](const Simplex& s) -> std::optional<Simplex> { return q(s); }, max_dim);
}

FiberProduct::FiberProduct(SSetPtr x, SSetPtr y, std::optional<unsigned> max_dim) : x_(std::move(x)), y_(std::move(y)) {
  auto constant = [](const Simplex& s) -> std::optional<Simplex> { return SimplicialSet::constant(0, s.dim()); };
  build(constant, constant, max_dim);
}

void FiberProduct::build(const std::function<std::optional<Simplex>(const Simplex&)>& p,
                         const std::function<std::optional<Simplex>(const Simplex&)>& q,
                         std::optional<unsigned> max_dim) {
  SimplicialSet::Builder builder;
  if (x_->empty() || y_->empty()) {
    object_ = builder.build();
    return;
  }
  unsigned top = unsigned(x_->dim() + y_->dim());
  if (max_dim && *max_dim < top) {
    top = *max_dim;
    truncated_at_ = int(top);
  }
  for (unsigned n = 0; n <= top; ++n) {
    std::unordered_map<Simplex, std::vector<Simplex>, SimplexHash> by_image;
    for (const auto& b : y_->simplices(n)) by_image[*q(b)].push_back(b);
    for (const auto& a : x_->simplices(n)) {
      auto it = by_image.find(*p(a));
      if (it == by_image.end()) continue;
      for (const auto& b : it->second) {
        if (a.degeneracies & b.degeneracies) continue;
        std::vector<Simplex> faces;
        if (n > 0)
          for (unsigned i = 0; i <= n; ++i) faces.push_back(pair(x_->face(a, i), y_->face(b, i)));
        CellId id = builder.add_cell_unique("(" + safe_token(*x_, a) + "," + safe_token(*y_, b) + ")", std::move(faces));
        if (components_.size() <= id.dim) components_.resize(id.dim + 1);
        components_[id.dim].emplace_back(a, b);
        lookup_.emplace(std::make_pair(a, b), id);
      }
    }
  }
  object_ = builder.build();
}

std::optional<Simplex> FiberProduct::try_pair(const Simplex& a, const Simplex& b) const {
  if (a.dim() != b.dim()) return std::nullopt;
  std::uint32_t common = a.degeneracies & b.degeneracies;
  Simplex a0 = strip_degeneracies(*x_, a, common);
  Simplex b0 = strip_degeneracies(*y_, b, common);
  auto it = lookup_.find({a0, b0});
  if (it == lookup_.end()) return std::nullopt;
  return Simplex(it->second, common);
}

Simplex FiberProduct::pair(const Simplex& a, const Simplex& b) const {
  auto s = try_pair(a, b);
  if (!s) throw Error("pair (" + x_->token(a) + ", " + y_->token(b) + ") is not a simplex of the fiber product");
  return *s;
}

SimplicialMap FiberProduct::projection1() const {
  SimplicialMap::Images im(object_->dim() + 1);
  for (auto c : object_->cell_ids()) im[c.dim].push_back(components(c).first);
  return SimplicialMap::unchecked(object_, x_, std::move(im));
}

SimplicialMap FiberProduct::projection2() const {
  SimplicialMap::Images im(object_->dim() + 1);
  for (auto c : object_->cell_ids()) im[c.dim].push_back(components(c).second);
  return SimplicialMap::unchecked(object_, y_, std::move(im));
}

SSetPtr product(const SSetPtr& x, const SSetPtr& y) { return FiberProduct(x, y).object(); }

SimplicialMap product_map(const FiberProduct& source, const FiberProduct& target, const SimplicialMap& f,
                          const SimplicialMap& g) {
  const auto& obj = source.object();
  SimplicialMap::Images im(obj->dim() + 1);
  for (auto c : obj->cell_ids()) {
    const auto& [a, b] = source.components(c);
    im[c.dim].push_back(target.pair(f(a), g(b)));
  }
  return SimplicialMap::unchecked(obj, target.object(), std::move(im));
}

Join::Join(SSetPtr x, SSetPtr y) : x_(std::move(x)), y_(std::move(y)) {
  SimplicialSet::Builder builder;
  from_x_.resize(std::max(0, x_->dim() + 1));
  from_y_.resize(std::max(0, y_->dim() + 1));
  for (auto id : x_->cell_ids()) {
    std::vector<Simplex> faces;
    for (const auto& f : x_->cell(id).faces) faces.push_back(Simplex(from_x_[f.base.dim][f.base.index], f.degeneracies));
    from_x_[id.dim].push_back(builder.add_cell_unique(x_->name(id), std::move(faces)));
  }
  for (auto id : y_->cell_ids()) {
    std::vector<Simplex> faces;
    for (const auto& f : y_->cell(id).faces) faces.push_back(Simplex(from_y_[f.base.dim][f.base.index], f.degeneracies));
    from_y_[id.dim].push_back(builder.add_cell_unique(y_->name(id), std::move(faces)));
  }
  int top = x_->dim() + y_->dim() + 1;
  for (int m = 1; m <= top; ++m) {
    for (int p = 0; p < m; ++p) {
      int q = m - 1 - p;
      if (p > x_->dim() || q > y_->dim()) continue;
      for (std::uint32_t si = 0; si < x_->count(unsigned(p)); ++si)
        for (std::uint32_t ti = 0; ti < y_->count(unsigned(q)); ++ti) {
          CellId sigma{std::uint32_t(p), si}, tau{std::uint32_t(q), ti};
          std::vector<Simplex> faces;
          for (int i = 0; i <= m; ++i) {
            if (i <= p) {
              if (p == 0) {
                faces.push_back(Simplex(from_y_[tau.dim][tau.index]));
              } else {
                const Simplex& f = x_->cell_face(sigma, unsigned(i));
                faces.push_back(Simplex(pairs_.at({f.base, tau}), f.degeneracies));
              }
            } else {
              int j = i - p - 1;
              if (q == 0) {
                faces.push_back(Simplex(from_x_[sigma.dim][sigma.index]));
              } else {
                const Simplex& f = y_->cell_face(tau, unsigned(j));
                faces.push_back(Simplex(pairs_.at({sigma, f.base}), f.degeneracies << (p + 1)));
              }
            }
          }
          pairs_[{sigma, tau}] =
              builder.add_cell_unique("(" + x_->name(sigma) + "*" + y_->name(tau) + ")", std::move(faces));
        }
    }
  }
  object_ = builder.build();
}

MonoInclusion Join::left_inclusion() const {
  SimplicialMap::Images im(x_->dim() + 1);
  for (auto id : x_->cell_ids()) im[id.dim].push_back(Simplex(from_x_[id.dim][id.index]));
  return MonoInclusion(SimplicialMap::unchecked(x_, object_, std::move(im)));
}

MonoInclusion Join::right_inclusion() const {
  SimplicialMap::Images im(y_->dim() + 1);
  for (auto id : y_->cell_ids()) im[id.dim].push_back(Simplex(from_y_[id.dim][id.index]));
  return MonoInclusion(SimplicialMap::unchecked(y_, object_, std::move(im)));
}

SSetPtr join(const SSetPtr& x, const SSetPtr& y) { return Join(x, y).object(); }

MonoInclusion join_map(const MonoInclusion& u, const SSetPtr& c) {
  Join source(u.source_ptr(), c);
  Join target(u.target_ptr(), c);
  const auto& a = u.source();
  const auto& src = *source.object();
  SimplicialMap::Images im(src.dim() + 1);
  auto left_s = source.left_inclusion(), right_s = source.right_inclusion();
  auto left_t = target.left_inclusion(), right_t = target.right_inclusion();
  std::map<CellId, Simplex> image;
  for (auto id : a.cell_ids()) image[left_s.map().image(id).base] = left_t.map().image(u.map().image(id).base);
  for (auto id : c->cell_ids()) image[right_s.map().image(id).base] = right_t.map().image(id);
  for (auto sa : a.cell_ids())
    for (auto sc : c->cell_ids())
      image[source.pair_cell(sa, sc)] = Simplex(target.pair_cell(u.map().image(sa).base, sc));
  for (auto id : src.cell_ids()) im[id.dim].push_back(image.at(id));
  return MonoInclusion(SimplicialMap(source.object(), target.object(), std::move(im)));
}

// ------------------------------------------------------------------ subcomplexes

MonoInclusion subcomplex(SSetPtr x, const std::function<bool(CellId)>& keep) {
  SimplicialSet::Builder builder;
  std::map<CellId, CellId> moved;
  std::vector<CellId> kept;
  for (auto id : x->cell_ids()) {
    if (!keep(id)) continue;
    std::vector<Simplex> faces;
    for (const auto& f : x->cell(id).faces) {
      auto it = moved.find(f.base);
      if (it == moved.end()) throw Error("selected cells are not closed under faces ('" + x->name(id) + "')");
      faces.push_back(Simplex(it->second, f.degeneracies));
    }
    moved[id] = builder.add_cell(x->name(id), std::move(faces));
    kept.push_back(id);
  }
  SSetPtr sub = builder.build();
  SimplicialMap::Images im(sub->dim() + 1);
  for (auto id : kept) im[id.dim].push_back(Simplex(id));
  return MonoInclusion(SimplicialMap::unchecked(sub, std::move(x), std::move(im)));
}

MonoInclusion skeleton(SSetPtr x, unsigned n) {
  return subcomplex(std::move(x), [n](CellId c) { return c.dim <= n; });
}

MonoInclusion full_subset(SSetPtr x, const std::vector<std::uint32_t>& vertices) {
  std::vector<char> in(x->count(0), 0);
  for (auto v : vertices) {
    if (v >= in.size()) throw Error("vertex index " + std::to_string(v) + " is not a vertex");
    in[v] = 1;
  }
  const SimplicialSet& xs = *x;
  return subcomplex(std::move(x), [&](CellId c) {
    for (auto v : xs.cell(c).vertices)
      if (!in[v]) return false;
    return true;
  });
}

MonoInclusion image_subcomplex(const SimplicialMap& f) {
  std::set<CellId> bases;
  for (auto c : f.source().cell_ids()) bases.insert(f.image(c).base);
  return subcomplex(f.target_ptr(), [&](CellId c) { return bases.count(c) != 0; });
}

SSetPtr cosk0(const std::vector<std::string>& vertex_names, unsigned max_dim) {
  bool short_names = std::all_of(vertex_names.begin(), vertex_names.end(), [](const auto& s) { return s.size() == 1; });
  auto name_of = [&](const std::vector<unsigned>& t) {
    std::string out;
    for (std::size_t k = 0; k < t.size(); ++k) {
      if (!short_names && k > 0) out += '.';
      out += vertex_names[t[k]];
    }
    return out;
  };
  SimplicialSet::Builder builder;
  std::map<std::vector<unsigned>, CellId> ids;
  unsigned v = unsigned(vertex_names.size());
  if (v == 0) return builder.build();
  std::vector<std::vector<unsigned>> level;
  for (unsigned k = 0; k < v; ++k) {
    ids[{k}] = builder.add_cell(vertex_names[k], {});
    level.push_back({k});
  }
  for (unsigned d = 1; d <= max_dim && v > 1; ++d) {
    std::vector<std::vector<unsigned>> next;
    for (const auto& t : level)
      for (unsigned k = 0; k < v; ++k) {
        if (k == t.back()) continue;
        auto u = t;
        u.push_back(k);
        next.push_back(u);
      }
    std::sort(next.begin(), next.end());
    for (const auto& t : next) {
      std::vector<Simplex> faces;
      for (unsigned i = 0; i <= d; ++i) {
        std::vector<unsigned> f = t;
        f.erase(f.begin() + i);
        std::vector<unsigned> base;
        Monotone seq;
        for (auto x : f) {
          if (base.empty() || base.back() != x) base.push_back(x);
          seq.push_back(std::uint8_t(base.size() - 1));
        }
        faces.push_back(Simplex(ids.at(base), mask_of(seq)));
      }
      ids[t] = builder.add_cell(name_of(t), std::move(faces));
    }
    level = std::move(next);
  }
  return builder.build();
}

// ------------------------------------------------------------------ slices

namespace {

UnderSpace build_under(const SSetPtr& x, std::uint32_t source, std::optional<std::uint32_t> target, int up_to) {
  if (source >= x->count(0) || (target && *target >= x->count(0))) throw Error("vertex out of range");
  UnderSpace out;
  out.source_vertex = source;
  out.target_vertex = target;
  out.computed_up_to = up_to;
  SimplicialSet::Builder builder;
  auto& cell_of = out.cell_of;
  const SimplicialSet& xs = *x;
  for (int n = 0; n <= up_to; ++n) {
    std::vector<Simplex> level;
    for (std::uint32_t i = 0; i < xs.count(unsigned(n)); ++i) {
      CellId b{std::uint32_t(n), i};
      if (xs.cell(b).vertices[0] == source) level.push_back(Simplex(b, 1u));
    }
    for (std::uint32_t i = 0; i < xs.count(unsigned(n + 1)); ++i) {
      CellId b{std::uint32_t(n + 1), i};
      if (xs.cell(b).vertices[0] == source) level.push_back(Simplex(b));
    }
    for (const auto& u : level) {
      if (target && xs.face(u, 0) != SimplicialSet::constant(*target, unsigned(n))) continue;
      std::vector<Simplex> faces;
      if (n > 0)
        for (unsigned i = 0; i <= unsigned(n); ++i) {
          Simplex w = xs.face(u, i + 1);
          std::uint32_t outer = w.degeneracies & ~1u;
          Simplex w0 = strip_degeneracies(xs, w, outer);
          faces.push_back(Simplex(cell_of.at(w0), outer >> 1));
        }
      CellId id = builder.add_cell_unique("u" + safe_token(xs, u), std::move(faces));
      cell_of.emplace(u, id);
      if (out.ambient.size() <= id.dim) out.ambient.resize(id.dim + 1);
      out.ambient[id.dim].push_back(u);
    }
  }
  out.space = builder.build();
  return out;
}

}  // namespace

Simplex UnderSpace::to_ambient(const SimplicialSet& x, const Simplex& s) const {
  const Simplex& u = ambient.at(s.base.dim).at(s.base.index);
  if (s.degeneracies == 0) return u;
  unsigned n = s.dim() + 1;
  std::uint32_t mask = s.degeneracies << 1;
  Monotone gamma(n + 1);
  gamma[0] = 0;
  for (unsigned i = 0; i < n; ++i) gamma[i + 1] = std::uint8_t(gamma[i] + ((mask >> i) & 1u ? 0 : 1));
  return x.apply(u, gamma);
}

std::optional<Simplex> UnderSpace::from_ambient(const SimplicialSet& x, const Simplex& u) const {
  if (u.dim() == 0) return std::nullopt;
  std::uint32_t outer = u.degeneracies & ~1u;
  Simplex u0 = strip_degeneracies(x, u, outer);
  auto it = cell_of.find(u0);
  if (it == cell_of.end()) return std::nullopt;
  return Simplex(it->second, outer >> 1);
}

SimplicialMap UnderSpace::projection(const SSetPtr& x) const {
  SimplicialMap::Images im(space->dim() + 1);
  for (auto c : space->cell_ids()) im[c.dim].push_back(x->face(ambient[c.dim][c.index], 0));
  return SimplicialMap::unchecked(space, x, std::move(im));
}

UnderSpace slice_under(const SSetPtr& x, std::uint32_t vertex, int up_to) {
  return build_under(x, vertex, std::nullopt, up_to);
}

UnderSpace hom_left(const SSetPtr& x, std::uint32_t source, std::uint32_t target, int up_to) {
  return build_under(x, source, target, up_to);
}

}  // namespace sset
