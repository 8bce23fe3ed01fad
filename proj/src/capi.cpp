#include "sset/sset.h"

#include <cstdlib>
#include <cstring>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "sset/certify.hpp"
#include "sset/constructions.hpp"
#include "sset/factorize.hpp"
#include "sset/function_complex.hpp"
#include "sset/homotopy.hpp"
#include "sset/io.hpp"
#include "sset/lifting.hpp"

struct sset_complex {
  sset::SSetPtr ptr;
};

struct sset_map {
  sset::SimplicialMap map;
};

struct sset_report {
  std::string verdict;
  int exit_code = 0;
  std::string json;
  std::string text;
  std::vector<std::pair<std::string, std::string>> artifacts;
};

namespace {

using nlohmann::json;
using namespace sset;

thread_local std::string g_error;
thread_local int g_error_line = 0;

template <class F>
sset_status guard(F&& f) {
  g_error.clear();
  g_error_line = 0;
  try {
    f();
    return SSET_OK;
  } catch (const ParseError& e) {
    g_error = e.what();
    g_error_line = e.line();
    return SSET_E_PARSE;
  } catch (const Error& e) {
    g_error = e.what();
    return SSET_E_ARGUMENT;
  } catch (const std::exception& e) {
    g_error = std::string("internal error: ") + e.what();
    return SSET_E_INTERNAL;
  }
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <class T>
const T& need(const T* p, const char* what) {
  if (!p) throw Error(std::string("missing argument: ") + what);
  return *p;
}

std::string need(const char* s, const char* what) {
  if (!s) throw Error(std::string("missing argument: ") + what);
  return s;
}

struct Config {
  int max_dim = -1;
  std::uint64_t node_budget = kDefaultNodeBudget;
  int word_budget = kDefaultWordBudget;
  int stages = 2;
};

Config config_of(const sset_config* c) {
  Config out;
  if (!c) return out;
  if (c->max_dim < -1 || c->max_dim > int(kMaxDim)) throw Error("max-dim out of range");
  if (c->node_budget == 0) throw Error("node budget must be positive");
  if (c->word_budget < 1) throw Error("word budget must be positive");
  if (c->stage_count < 1) throw Error("stage count must be positive");
  out.max_dim = c->max_dim;
  out.node_budget = c->node_budget;
  out.word_budget = c->word_budget;
  out.stages = c->stage_count;
  return out;
}

int or_default(int v, int d) { return v < 0 ? d : v; }

class Report {
 public:
  explicit Report(std::string command) : command_(std::move(command)) {}

  json& body() { return body_; }
  std::ostringstream& text() { return text_; }
  void artifact(std::string name, std::string contents) { artifacts_.emplace_back(std::move(name), std::move(contents)); }

  sset_report* finish(const std::string& verdict, int exit_code) {
    json j;
    j["schema"] = "sset-report/1";
    j["command"] = command_;
    j["verdict"] = verdict;
    j["exit_code"] = exit_code;
    j["result"] = body_;
    json names = json::array();
    for (const auto& a : artifacts_) names.push_back(a.first);
    j["artifacts"] = names;
    auto* r = new sset_report;
    r->verdict = verdict;
    r->exit_code = exit_code;
    r->json = j.dump(2);
    r->text = text_.str();
    r->artifacts = std::move(artifacts_);
    return r;
  }

 private:
  std::string command_;
  json body_ = json::object();
  std::ostringstream text_;
  std::vector<std::pair<std::string, std::string>> artifacts_;
};

json counts_json(const SimplicialSet& x) {
  json c = json::array();
  for (int d = 0; d <= x.dim(); ++d) c.push_back(x.count(unsigned(d)));
  return c;
}

std::string counts_text(const SimplicialSet& x) {
  std::string out;
  for (int d = 0; d <= x.dim(); ++d) out += (d ? " " : "") + std::to_string(x.count(unsigned(d)));
  return out.empty() ? "(empty)" : out;
}

const char* verdict_name(VerdictKind k) {
  switch (k) {
    case VerdictKind::Yes: return "yes";
    case VerdictKind::No: return "no";
    case VerdictKind::Budget: return "budget";
  }
  return "?";
}

const char* tri_name(Tri t) {
  switch (t) {
    case Tri::Yes: return "yes";
    case Tri::No: return "no";
    case Tri::Unknown: return "unknown";
  }
  return "?";
}

const char* outcome_name(Outcome o) {
  switch (o) {
    case Outcome::Found: return "found";
    case Outcome::None: return "none";
    case Outcome::Budget: return "budget";
  }
  return "?";
}

int tri_exit(Tri t) { return t == Tri::Yes ? 0 : t == Tri::No ? 1 : 2; }

std::string describe_map(const SimplicialMap& f) {
  std::string out;
  for (auto c : f.source().cell_ids()) {
    if (!out.empty()) out += ", ";
    out += f.source().name(c) + " -> " + f.target().token(f.image(c));
  }
  return out;
}

/// The square as replayable files: prefix{A,B,X,S}.sset and prefix{i,u,v,p}.map.
void witness_artifacts(Report& r, const std::string& prefix, const LiftingProblem& w) {
  const std::string a = prefix + "A.sset", b = prefix + "B.sset", x = prefix + "X.sset", s = prefix + "S.sset";
  r.artifact(a, serialize_complex(w.i.source()));
  r.artifact(b, serialize_complex(w.i.target()));
  r.artifact(x, serialize_complex(w.p.source()));
  r.artifact(s, serialize_complex(w.p.target()));
  r.artifact(prefix + "i.map", serialize_map(w.i.map(), a, b));
  r.artifact(prefix + "u.map", serialize_map(w.u, a, x));
  r.artifact(prefix + "v.map", serialize_map(w.v, b, s));
  r.artifact(prefix + "p.map", serialize_map(w.p, x, s));
}

json verdict_json(const LiftingVerdict& v) {
  json j;
  j["value"] = verdict_name(v.kind);
  if (v.kind == VerdictKind::Yes) j["checked_dim"] = v.checked_dim;
  if (!v.generator.empty()) j["generator"] = v.generator;
  return j;
}

std::string verdict_text(const LiftingVerdict& v) {
  switch (v.kind) {
    case VerdictKind::Yes: return "yes up to dimension " + std::to_string(v.checked_dim);
    case VerdictKind::No: return "no (fails against " + v.generator + ")";
    case VerdictKind::Budget: return "unknown (node budget exhausted" + (v.generator.empty() ? "" : " at " + v.generator) + ")";
  }
  return "?";
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep))
    if (!cur.empty()) out.push_back(cur);
  return out;
}

std::uint32_t vertex_named(const SimplicialSet& x, const std::string& name) {
  auto c = x.find(name);
  if (!c || c->dim != 0) throw Error("no vertex named '" + name + "'");
  return c->index;
}

json classifier_json(const ClassifierVerdict& v) {
  json j;
  j["kind"] = to_string(v.kind);
  if (!v.reason.empty()) j["reason"] = v.reason;
  j["cellular_search"] = outcome_name(v.cellular);
  j["diagnostics"] = v.diagnostics;
  return j;
}

std::string classifier_text(const ClassifierVerdict& v) {
  std::string out = to_string(v.kind);
  if (!v.reason.empty()) out += " (" + v.reason + ")";
  return out;
}

void trace_report(Report& r, const SoaTrace& t, const SimplicialSet& input, AnodyneClass cls) {
  json stages = json::array();
  r.text() << "selector: " << t.selector << "\n";
  r.text() << "stage 0: cells " << counts_text(*t.stages.front()) << "\n";
  for (std::size_t k = 0; k < t.maps.size(); ++k) {
    const SimplicialSet& next = *t.stages[k + 1];
    stages.push_back({{"stage", k + 1}, {"attached", t.attachments[k].size()}, {"cells", counts_json(next)}});
    r.text() << "stage " << k + 1 << ": attached " << t.attachments[k].size() << " horns, cells " << counts_text(next)
             << "\n";
    r.artifact("stage" + std::to_string(k + 1) + ".cert",
               serialize_certificate(certificate_of_stage(t.attachments[k], next, cls)));
  }
  r.body()["selector"] = t.selector;
  r.body()["input_cells"] = counts_json(input);
  r.body()["stages"] = stages;
  r.body()["outcome"] = t.outcome == Outcome::Budget ? "budget" : "complete";
  const SimplicialSet& last = *t.stages.back();
  r.artifact("result.sset", serialize_complex(last));
  SimplicialMap total = SimplicialMap::identity(t.stages.front());
  for (const auto& m : t.maps) total = SimplicialMap::compose(m.map(), total);
  r.artifact("inclusion.map", serialize_map(total, "input.sset", "result.sset"));
  if (t.outcome == Outcome::Budget) r.text() << "node budget exhausted; later stages were not built\n";
}

}  // namespace

extern "C" {

void sset_config_init(sset_config* config) {
  if (!config) return;
  config->max_dim = -1;
  config->node_budget = kDefaultNodeBudget;
  config->word_budget = kDefaultWordBudget;
  config->stage_count = 2;
}

const char* sset_version(void) { return "1.0.0"; }
const char* sset_last_error(void) { return g_error.c_str(); }
int sset_last_error_line(void) { return g_error_line; }
void sset_string_free(char* s) { std::free(s); }

sset_status sset_complex_parse(const char* text, sset_complex** out) {
  return guard([&] { *out = new sset_complex{parse_complex(need(text, "text"))}; });
}

sset_status sset_complex_generate(const char* kind, int n, int i, sset_complex** out) {
  return guard([&] {
    auto k = parse_generator_kind(need(kind, "kind"));
    if (!k) throw Error(std::string("unknown generator '") + kind + "'");
    *out = new sset_complex{make_generator(*k, n, i < 0 ? std::nullopt : std::optional<int>(i))};
  });
}

sset_status sset_complex_serialize(const sset_complex* x, char** out) {
  return guard([&] { *out = dup(serialize_complex(*need(x, "complex").ptr)); });
}

int sset_complex_dim(const sset_complex* x) { return x ? x->ptr->dim() : -1; }
size_t sset_complex_count(const sset_complex* x, unsigned dim) { return x ? x->ptr->count(dim) : 0; }
void sset_complex_free(sset_complex* x) { delete x; }

sset_status sset_map_header(const char* text, char** source_file, char** target_file) {
  return guard([&] {
    MapHeader h = parse_map_header(need(text, "text"));
    *source_file = dup(h.source_file);
    *target_file = dup(h.target_file);
  });
}

sset_status sset_map_parse(const char* text, const sset_complex* source, const sset_complex* target, sset_map** out) {
  return guard([&] {
    *out = new sset_map{parse_map(need(text, "text"), need(source, "source").ptr, need(target, "target").ptr)};
  });
}

sset_status sset_map_serialize(const sset_map* f, const char* source_file, const char* target_file, char** out) {
  return guard([&] { *out = dup(serialize_map(need(f, "map").map, need(source_file, "source"), need(target_file, "target"))); });
}

void sset_map_free(sset_map* f) { delete f; }

int sset_report_exit_code(const sset_report* r) { return r ? r->exit_code : 3; }
const char* sset_report_verdict(const sset_report* r) { return r ? r->verdict.c_str() : ""; }
const char* sset_report_json(const sset_report* r) { return r ? r->json.c_str() : ""; }
const char* sset_report_text(const sset_report* r) { return r ? r->text.c_str() : ""; }
size_t sset_report_artifact_count(const sset_report* r) { return r ? r->artifacts.size() : 0; }
const char* sset_report_artifact_name(const sset_report* r, size_t k) {
  return r && k < r->artifacts.size() ? r->artifacts[k].first.c_str() : nullptr;
}
const char* sset_report_artifact_text(const sset_report* r, size_t k) {
  return r && k < r->artifacts.size() ? r->artifacts[k].second.c_str() : nullptr;
}
void sset_report_free(sset_report* r) { delete r; }

// ------------------------------------------------------------------ verbs

sset_status sset_validate(const char* text, sset_report** out) {
  return guard([&] {
    ComplexReport cr = parse_complex_report(need(text, "text"));
    Report r("validate");
    json v = json::array();
    for (const auto& x : cr.violations) {
      v.push_back({{"line", x.line}, {"cell", x.cell}, {"message", x.message}});
      r.text() << "line " << x.line << ": cell '" << x.cell << "': " << x.message << "\n";
    }
    r.body()["violations"] = v;
    r.body()["cells"] = counts_json(*cr.complex);
    if (cr.violations.empty()) {
      r.text() << "valid: dimension " << cr.complex->dim() << ", cells per dimension " << counts_text(*cr.complex)
               << "\n";
      *out = r.finish("valid", 0);
    } else {
      *out = r.finish("invalid", 1);
    }
  });
}

sset_status sset_generate(const char* kind, int n, int i, sset_report** out) {
  return guard([&] {
    auto k = parse_generator_kind(need(kind, "kind"));
    if (!k) throw Error(std::string("unknown generator '") + kind + "'");
    SSetPtr x = make_generator(*k, n, i < 0 ? std::nullopt : std::optional<int>(i));
    Report r("gen");
    r.body()["kind"] = kind;
    r.body()["n"] = n;
    if (i >= 0) r.body()["i"] = i;
    r.body()["cells"] = counts_json(*x);
    r.text() << serialize_complex(*x);
    r.artifact("complex.sset", serialize_complex(*x));
    *out = r.finish("generated", 0);
  });
}

sset_status sset_op(const char* op, const sset_complex* a, const sset_complex* b, const char* arg1, const char* arg2,
                    int n, sset_report** out) {
  return guard([&] {
    const std::string name = need(op, "op");
    Report r("op");
    r.body()["op"] = name;
    SSetPtr result;
    if (name == "product") {
      result = product(need(a, "first complex").ptr, need(b, "second complex").ptr);
    } else if (name == "join") {
      result = join(need(a, "first complex").ptr, need(b, "second complex").ptr);
    } else if (name == "coproduct") {
      result = coproduct(need(a, "first complex").ptr, need(b, "second complex").ptr);
    } else if (name == "skeleton") {
      if (n < 0) throw Error("skeleton needs a dimension");
      result = skeleton(need(a, "complex").ptr, unsigned(n)).source_ptr();
    } else if (name == "full-subset") {
      const SSetPtr& x = need(a, "complex").ptr;
      std::vector<std::uint32_t> vs;
      for (const auto& v : split(need(arg1, "vertex list"), ',')) vs.push_back(vertex_named(*x, v));
      result = full_subset(x, vs).source_ptr();
    } else if (name == "slice") {
      const SSetPtr& x = need(a, "complex").ptr;
      UnderSpace u = slice_under(x, vertex_named(*x, need(arg1, "vertex")), or_default(n, 2));
      result = u.space;
      r.body()["computed_up_to"] = u.computed_up_to;
    } else if (name == "hom-left") {
      const SSetPtr& x = need(a, "complex").ptr;
      UnderSpace u = hom_left(x, vertex_named(*x, need(arg1, "source vertex")), vertex_named(*x, need(arg2, "target vertex")),
                              or_default(n, 2));
      result = u.space;
      r.body()["computed_up_to"] = u.computed_up_to;
      r.body()["components"] = pi0(*u.space).size();
      r.text() << "components: " << pi0(*u.space).size() << "\n";
    } else if (name == "cosk0") {
      if (n < 0) throw Error("cosk0 needs a dimension");
      result = cosk0(split(need(arg1, "vertex list"), ','), unsigned(n));
    } else {
      throw Error("unknown operation '" + name + "'");
    }
    r.body()["cells"] = counts_json(*result);
    r.text() << "cells per dimension: " << counts_text(*result) << "\n";
    r.artifact("result.sset", serialize_complex(*result));
    *out = r.finish("constructed", 0);
  });
}

sset_status sset_pushout(const sset_map* i, const sset_map* f, sset_report** out) {
  return guard([&] {
    MonoInclusion mono(need(i, "i").map);
    PushoutResult p = pushout(mono, need(f, "f").map);
    Report r("op");
    r.body()["op"] = "pushout";
    r.body()["cells"] = counts_json(*p.object);
    r.text() << "cells per dimension: " << counts_text(*p.object) << "\n";
    r.artifact("result.sset", serialize_complex(*p.object));
    *out = r.finish("constructed", 0);
  });
}

sset_status sset_lift(const sset_map* i, const sset_map* p, const sset_map* u, const sset_map* v,
                      const sset_config* config, sset_report** out) {
  return guard([&] {
    Config c = config_of(config);
    const SimplicialMap& um = need(u, "u").map;
    MonoInclusion im(need(i, "i").map);
    LiftingProblem prob;
    prob.i = im;
    prob.u = um;
    if (p) {
      prob.p = p->map;
      prob.v = need(v, "v").map;
    } else {
      if (v) throw Error("v given without p");
      SSetPtr pt = point();
      prob.p = SimplicialMap::to_point(um.target_ptr(), pt);
      prob.v = SimplicialMap::to_point(im.target_ptr(), pt);
    }
    auto problems = prob.problems();
    if (!problems.empty()) throw Error("ill-formed lifting problem: " + problems.front());
    LiftResult res = solve_lift(prob, c.node_budget);
    Report r("lift");
    r.body()["outcome"] = outcome_name(res.outcome);
    r.body()["nodes"] = res.nodes;
    if (res.outcome == Outcome::Found) {
      r.text() << "lift found: " << describe_map(*res.lift) << "\n";
      r.artifact("lift.map", serialize_map(*res.lift, "B.sset", "X.sset"));
      *out = r.finish("lift-found", 0);
    } else if (res.outcome == Outcome::None) {
      r.text() << "no lift exists (exhaustive search, " << res.nodes << " nodes)\n";
      r.text() << "witness square: u = {" << describe_map(prob.u) << "}\n";
      witness_artifacts(r, "witness_", prob);
      *out = r.finish("no-lift", 1);
    } else {
      r.text() << "node budget exhausted after " << res.nodes << " nodes\n";
      *out = r.finish("budget", 2);
    }
  });
}

sset_status sset_classify(const sset_map* p, const char* classes, const sset_config* config, sset_report** out) {
  return guard([&] {
    Config c = config_of(config);
    const SimplicialMap& pm = need(p, "p").map;
    std::vector<FibrationClass> wanted;
    if (classes) {
      for (const auto& s : split(classes, ',')) {
        auto fc = parse_fibration_class(s);
        if (!fc) throw Error("unknown class '" + s + "'");
        wanted.push_back(*fc);
      }
    } else {
      wanted.assign(std::begin(kAllClasses), std::end(kAllClasses));
    }
    FibrationReport fr = classify_map(pm, c.max_dim, c.node_budget, wanted);
    Report r("classify");
    r.body()["checked_dim"] = fr.checked_dim;
    r.body()["mono"] = fr.mono;
    r.body()["vertex_bijective"] = fr.vertex_bijective;
    json vs = json::object();
    bool refuted = false;
    for (const auto& [cls, v] : fr.verdicts) {
      vs[to_string(cls)] = verdict_json(v);
      r.text() << to_string(cls) << ": " << verdict_text(v) << "\n";
      if (v.kind == VerdictKind::No) {
        refuted = true;
        if (v.witness) witness_artifacts(r, std::string("witness_") + to_string(cls) + "_", *v.witness);
      }
    }
    r.body()["verdicts"] = vs;
    *out = refuted ? r.finish("refuted", 1) : r.finish("bounded", 2);
  });
}

sset_status sset_homcat(const sset_complex* s, const char* x, const char* y, const sset_config* config,
                        sset_report** out) {
  return guard([&] {
    Config c = config_of(config);
    const SSetPtr& sp = need(s, "complex").ptr;
    if (bool(x) != bool(y)) throw Error("give both vertices or neither");
    HomotopyCategory h(sp, c.word_budget);
    std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
    if (x) {
      pairs.emplace_back(vertex_named(*sp, x), vertex_named(*sp, y));
    } else {
      for (std::uint32_t a = 0; a < sp->count(0); ++a)
        for (std::uint32_t b = 0; b < sp->count(0); ++b) pairs.emplace_back(a, b);
    }
    Report r("homcat");
    r.body()["confluent"] = h.confluent();
    r.body()["relations"] = h.relations().size();
    r.body()["rules"] = h.rules().size();
    r.body()["word_budget"] = c.word_budget;
    r.text() << "rewriting system: " << h.rules().size() << " rules from " << h.relations().size() << " relations, "
             << (h.confluent() ? "confluent" : "completion incomplete") << "\n";
    json homs = json::array();
    bool exact = true;
    for (auto [a, b] : pairs) {
      HomSet hs = h.hom(a, b);
      if (!x && hs.morphisms.empty() && hs.status == HomStatus::Exact) continue;
      exact = exact && hs.status == HomStatus::Exact;
      json m = json::array();
      std::string list;
      for (const auto& w : hs.morphisms) {
        m.push_back(h.text(w, a));
        list += (list.empty() ? "" : ", ") + h.text(w, a);
      }
      const std::string sa = sp->name(CellId{0, a}), sb = sp->name(CellId{0, b});
      const char* status = hs.status == HomStatus::Exact ? "exact" : "truncated";
      homs.push_back({{"source", sa}, {"target", sb}, {"morphisms", m}, {"status", status}});
      r.text() << "hom(" << sa << ", " << sb << ") = {" << list << "} [" << status << "]\n";
    }
    r.body()["hom"] = homs;
    *out = exact ? r.finish("exact", 0) : r.finish("truncated", 2);
  });
}

sset_status sset_equiv_edge(const sset_complex* s, const char* edge, const sset_config* config, sset_report** out) {
  return guard([&] {
    Config c = config_of(config);
    const SSetPtr& sp = need(s, "complex").ptr;
    Simplex e = sp->parse_token(need(edge, "edge"));
    if (e.dim() != 1) throw Error(std::string("'") + edge + "' is not an edge");
    HomotopyCategory h(sp, c.word_budget);
    EquivalenceVerdict v = is_equivalence_edge(h, e);
    Report r("equiv-edge");
    r.body()["edge"] = edge;
    r.body()["value"] = tri_name(v.value);
    r.text() << "equivalence: " << tri_name(v.value);
    if (v.value == Tri::Yes) {
      std::string inv = h.text(v.inverse, sp->vertex(e, 1));
      r.body()["inverse"] = inv;
      r.text() << ", inverse " << inv;
    }
    r.text() << "\n";
    *out = r.finish(tri_name(v.value), tri_exit(v.value));
  });
}

sset_status sset_isofib(const sset_map* p, const sset_config* config, sset_report** out) {
  return guard([&] {
    Config c = config_of(config);
    const SimplicialMap& pm = need(p, "p").map;
    IsofibrationReport ir = check_isofibration(pm, c.word_budget);
    Report r("isofib");
    r.body()["value"] = tri_name(ir.value);
    if (!ir.note.empty()) r.body()["note"] = ir.note;
    r.text() << "isofibration: " << tri_name(ir.value) << "\n";
    if (ir.edge) {
      r.body()["edge"] = pm.target().token(*ir.edge);
      r.text() << "equivalence " << pm.target().token(*ir.edge);
      if (ir.vertex) {
        r.body()["vertex"] = pm.source().name(CellId{0, *ir.vertex});
        r.text() << " does not lift from " << pm.source().name(CellId{0, *ir.vertex});
      }
      r.text() << "\n";
    }
    if (!ir.note.empty()) r.text() << ir.note << "\n";
    if (ir.witness) witness_artifacts(r, "witness_", *ir.witness);
    *out = r.finish(tri_name(ir.value), tri_exit(ir.value));
  });
}

sset_status sset_catfib(const sset_map* p, const sset_config* config, sset_report** out) {
  return guard([&] {
    Config c = config_of(config);
    const SimplicialMap& pm = need(p, "p").map;
    CategoricalFibrationReport cr = check_categorical_fibration(pm, c.max_dim, c.word_budget, c.node_budget);
    Report r("catfib");
    r.body()["value"] = tri_name(cr.value);
    r.body()["inner"] = verdict_json(cr.inner);
    r.body()["isofibration"] = tri_name(cr.isofibration.value);
    r.text() << "inner fibration: " << verdict_text(cr.inner) << "\n";
    r.text() << "isofibration: " << tri_name(cr.isofibration.value) << "\n";
    if (cr.inner.witness) witness_artifacts(r, "witness_inner_", *cr.inner.witness);
    if (cr.isofibration.witness) witness_artifacts(r, "witness_isofib_", *cr.isofibration.witness);
    if (cr.value == Tri::Yes) {
      r.text() << "categorical fibration up to dimension " << cr.inner_dim << "\n";
      *out = r.finish("yes-bounded", 2);
    } else {
      *out = r.finish(tri_name(cr.value), tri_exit(cr.value));
    }
  });
}

sset_status sset_dk_check(const sset_map* f, const sset_config* config, sset_report** out) {
  return guard([&] {
    Config c = config_of(config);
    DwyerKanReport d = dwyer_kan_check(need(f, "f").map, c.word_budget, c.max_dim);
    Report r("dk-check");
    r.body()["essentially_surjective"] = tri_name(d.essentially_surjective);
    r.body()["fully_faithful"] = tri_name(d.fully_faithful);
    r.body()["notes"] = d.notes;
    r.text() << "essentially surjective: " << tri_name(d.essentially_surjective) << "\n";
    r.text() << "fully faithful: " << tri_name(d.fully_faithful) << "\n";
    for (const auto& n : d.notes) r.text() << "  " << n << "\n";
    if (d.essentially_surjective == Tri::No || d.fully_faithful == Tri::No)
      *out = r.finish("no", 1);
    else if (d.essentially_surjective == Tri::Yes && d.fully_faithful == Tri::Yes)
      *out = r.finish("yes", 0);
    else
      *out = r.finish("unknown", 2);
  });
}

sset_status sset_mapspace(const sset_complex* c, const sset_complex* k, int restricted, const sset_config* config,
                          sset_report** out) {
  return guard([&] {
    Config cf = config_of(config);
    int up_to = or_default(cf.max_dim, 2);
    FunctionComplex fc = restricted ? restricted_function_complex(need(c, "C").ptr, need(k, "K").ptr, up_to,
                                                                  cf.node_budget, cf.word_budget)
                                    : function_complex(need(c, "C").ptr, need(k, "K").ptr, up_to, cf.node_budget);
    Report r("mapspace");
    r.body()["restricted"] = bool(restricted);
    r.body()["requested_up_to"] = up_to;
    r.body()["computed_up_to"] = fc.computed_up_to();
    r.body()["cells"] = counts_json(*fc.space());
    r.text() << (restricted ? "restricted " : "") << "function complex: cells per dimension "
             << counts_text(*fc.space()) << ", complete up to level " << fc.computed_up_to() << "\n";
    r.artifact("result.sset", serialize_complex(*fc.space()));
    *out = fc.outcome() == Outcome::Budget ? r.finish("budget", 2) : r.finish("computed", 0);
  });
}

sset_status sset_certify(const sset_map* i, const char* cls, int theorem_c, const sset_config* config,
                         sset_report** out) {
  return guard([&] {
    Config c = config_of(config);
    MonoInclusion mono(need(i, "i").map);
    Report r("certify");
    if (theorem_c) {
      ClassifierVerdict v = theoremC_classify(mono, c.node_budget, c.word_budget);
      r.body() = classifier_json(v);
      r.text() << "classification: " << classifier_text(v) << "\n";
      for (const auto& d : v.diagnostics) r.text() << "  " << d << "\n";
      if (v.certificate) r.artifact("certificate.cert", serialize_certificate(*v.certificate));
      int code = v.kind == ClassifierKind::InnerAnodyne ? 0 : v.kind == ClassifierKind::NotInnerAnodyne ? 1 : 2;
      *out = r.finish(to_string(v.kind), code);
      return;
    }
    auto ac = parse_anodyne_class(cls ? cls : "inner");
    if (!ac) throw Error(std::string("unknown class '") + cls + "'");
    CertificateSearch cs = search_certificate(mono, *ac, c.node_budget);
    r.body()["class"] = to_string(*ac);
    r.body()["outcome"] = outcome_name(cs.outcome);
    r.body()["nodes"] = cs.nodes;
    if (cs.outcome == Outcome::Found) {
      r.body()["steps"] = cs.certificate->steps.size();
      r.text() << to_string(*ac) << " anodyne certificate with " << cs.certificate->steps.size() << " steps\n";
      r.text() << serialize_certificate(*cs.certificate);
      r.artifact("certificate.cert", serialize_certificate(*cs.certificate));
      *out = r.finish("certified", 0);
    } else if (cs.outcome == Outcome::None) {
      r.text() << "no cellular " << to_string(*ac) << " certificate exists (search exhausted)\n";
      *out = r.finish("no-certificate", 1);
    } else {
      r.text() << "node budget exhausted after " << cs.nodes << " nodes\n";
      *out = r.finish("budget", 2);
    }
  });
}

sset_status sset_verify_certificate(const sset_map* i, const char* certificate_text, sset_report** out) {
  return guard([&] {
    MonoInclusion mono(need(i, "i").map);
    Certificate cert = parse_certificate(need(certificate_text, "certificate"));
    bool ok = verify_certificate(cert, mono);
    Report r("certify");
    r.body()["class"] = to_string(cert.cls);
    r.body()["steps"] = cert.steps.size();
    r.body()["valid"] = ok;
    r.text() << "certificate " << (ok ? "verified" : "rejected") << " (" << cert.steps.size() << " steps, class "
             << to_string(cert.cls) << ")\n";
    *out = ok ? r.finish("verified", 0) : r.finish("rejected", 1);
  });
}

sset_status sset_two_of_three(const sset_map* u, const sset_map* v, const sset_config* config, sset_report** out) {
  return guard([&] {
    Config c = config_of(config);
    MonoInclusion um(need(u, "u").map), vm(need(v, "v").map);
    TwoOutOfThreeReport t = check_two_out_of_three(um, vm, c.node_budget, c.word_budget);
    Report r("two-of-three");
    r.body()["u"] = classifier_json(t.u);
    r.body()["v"] = classifier_json(t.v);
    r.body()["vu"] = classifier_json(t.vu);
    r.body()["alarm"] = t.alarm;
    r.text() << "u: " << classifier_text(t.u) << "\nv: " << classifier_text(t.v) << "\nv.u: " << classifier_text(t.vu)
             << "\n" << t.note << "\n";
    if (t.alarm) {
      *out = r.finish("alarm", 1);
      return;
    }
    bool definite = true;
    for (const auto* x : {&t.u, &t.v, &t.vu}) definite = definite && x->kind != ClassifierKind::Unknown;
    *out = definite ? r.finish("consistent", 0) : r.finish("consistent-partial", 2);
  });
}

sset_status sset_prefibrantize(const sset_complex* s, int only_unfilled, const sset_config* config, sset_report** out) {
  return guard([&] {
    Config c = config_of(config);
    const SSetPtr& sp = need(s, "complex").ptr;
    PrefibrantizeOptions o;
    o.stages = c.stages;
    o.max_dim = or_default(c.max_dim, 3);
    o.only_unfilled = only_unfilled != 0;
    o.node_budget = c.node_budget;
    SoaTrace t = prefibrantize(sp, o);
    Report r("prefibrantize");
    trace_report(r, t, *sp, AnodyneClass::Inner);
    PrefibrantReport pr = is_prefibrant(t.stages.back(), o.max_dim, c.node_budget);
    r.body()["result_prefibrant"] = tri_name(pr.value);
    r.text() << "result is pre-fibrant up to dimension " << o.max_dim << ": " << tri_name(pr.value) << "\n";
    *out = t.outcome == Outcome::Budget ? r.finish("budget", 2) : r.finish("constructed", 0);
  });
}

sset_status sset_complete(const sset_complex* s, const sset_config* config, sset_report** out) {
  return guard([&] {
    Config c = config_of(config);
    const SSetPtr& sp = need(s, "complex").ptr;
    SoaTrace t = complete(sp, c.stages, or_default(c.max_dim, 3), c.node_budget);
    Report r("complete");
    trace_report(r, t, *sp, AnodyneClass::Inner);
    *out = t.outcome == Outcome::Budget ? r.finish("budget", 2) : r.finish("constructed", 0);
  });
}

sset_status sset_saturate(const sset_complex* s, int literal, const sset_config* config, sset_report** out) {
  return guard([&] {
    Config c = config_of(config);
    const SSetPtr& sp = need(s, "complex").ptr;
    int up_to = or_default(c.max_dim, 3);
    Report r("saturate");
    r.body()["up_to"] = up_to;
    r.body()["selector"] = literal ? "literal" : "tightened";
    SaturationResult sr;
    try {
      sr = saturate_prefibrant(sp, up_to, c.node_budget, literal != 0);
    } catch (const BudgetError& e) {
      r.text() << e.what() << "\n";
      *out = r.finish("budget", 2);
      return;
    }
    r.body()["attachments"] = sr.attachments.size();
    r.body()["cells"] = counts_json(*sr.object);
    r.body()["p2_holds"] = sr.p2_holds;
    r.body()["hom_levels_equal"] = sr.hom_levels_equal;
    r.body()["notes"] = sr.notes;
    r.text() << "attached " << sr.attachments.size() << " horns, cells per dimension " << counts_text(*sr.object)
             << "\n";
    r.text() << "new cells have non-constant d0: " << (sr.p2_holds ? "yes" : "no") << "\n";
    r.text() << "left mapping spaces unchanged in low levels: " << (sr.hom_levels_equal ? "yes" : "no") << "\n";
    for (const auto& n : sr.notes) r.text() << "  " << n << "\n";
    r.artifact("result.sset", serialize_complex(*sr.object));
    r.artifact("inclusion.map", serialize_map(sr.inclusion.map(), "input.sset", "result.sset"));
    r.artifact("saturation.cert", serialize_certificate(certificate_of_stage(sr.attachments, *sr.object)));
    bool ok = sr.p2_holds && sr.hom_levels_equal;
    *out = ok ? r.finish("saturated", 0) : r.finish("invariant-failed", 1);
  });
}

sset_status sset_descend_triangle(const sset_map* p, const sset_config* config, sset_report** out) {
  return guard([&] {
    Config c = config_of(config);
    int max_dim = or_default(c.max_dim, 3);
    Report r("descend-triangle");
    TriangleDescent td;
    try {
      td = descend_over_triangle(need(p, "p").map, c.stages, max_dim, c.node_budget);
    } catch (const InvariantError& e) {
      r.text() << e.what() << "\n";
      r.body()["error"] = e.what();
      *out = r.finish("pullback-failed", 1);
      return;
    }
    json stages = json::array();
    for (std::size_t k = 0; k < td.stages.size(); ++k) {
      json st = {{"stage", k}, {"cells", counts_json(*td.stages[k])}};
      if (k > 0) st["attached"] = td.attached[k - 1];
      stages.push_back(st);
      r.text() << "C(" << k << "): cells " << counts_text(*td.stages[k]);
      if (k > 0) r.text() << ", attached " << td.attached[k - 1] << " horns";
      r.text() << "\n";
    }
    r.body()["stages"] = stages;
    r.body()["max_dim"] = max_dim;
    r.body()["pullback_checks"] = "passed";
    r.text() << "cells over the horn equal the input at every stage\n";
    r.artifact("result.sset", serialize_complex(*td.stages.back()));
    r.artifact("over.map", serialize_map(td.over.back(), "result.sset", "simplex2.sset"));
    r.artifact("simplex2.sset", serialize_complex(td.over.back().target()));
    *out = td.outcome == Outcome::Budget ? r.finish("budget", 2) : r.finish("constructed", 0);
  });
}

sset_status sset_pathspace(const sset_map* f, const sset_config* config, sset_report** out) {
  return guard([&] {
    Config c = config_of(config);
    int up_to = or_default(c.max_dim, 1);
    PathSpace ps = mapping_path_space(need(f, "f").map, up_to, c.node_budget);
    Report r("pathspace");
    r.body()["up_to"] = up_to;
    r.body()["path_cells"] = counts_json(*ps.paths.space());
    if (ps.q) r.body()["cells"] = counts_json(*ps.q->object());
    r.body()["factorization_holds"] = ps.factorization_holds;
    r.text() << "paths: cells " << counts_text(*ps.paths.space()) << "\n";
    if (ps.outcome == Outcome::Budget || !ps.q) {
      r.text() << "node budget exhausted\n";
      *out = r.finish("budget", 2);
      return;
    }
    r.text() << "Q: cells " << counts_text(*ps.q->object()) << "\n";
    r.text() << "f = pi . i on computed cells: " << (ps.factorization_holds ? "yes" : "no") << "\n";
    r.artifact("result.sset", serialize_complex(*ps.q->object()));
    r.artifact("pi.map", serialize_map(ps.pi, "result.sset", "target.sset"));
    *out = ps.factorization_holds ? r.finish("constructed", 0) : r.finish("factorization-failed", 1);
  });
}

}  // extern "C"
