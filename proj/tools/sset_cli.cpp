// Command line front end.  Links only the C interface.
//
// Exit codes: 0 positive or complete, 1 refuted (witness emitted),
// 2 bounded / unknown / budget exhausted, 3 input error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "sset/sset.h"

namespace fs = std::filesystem;

namespace {

constexpr int kInputError = 3;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ComplexDeleter {
  void operator()(sset_complex* x) const { sset_complex_free(x); }
};
struct MapDeleter {
  void operator()(sset_map* f) const { sset_map_free(f); }
};
struct ReportDeleter {
  void operator()(sset_report* r) const { sset_report_free(r); }
};
using ComplexPtr = std::unique_ptr<sset_complex, ComplexDeleter>;
using MapPtr = std::unique_ptr<sset_map, MapDeleter>;
using ReportPtr = std::unique_ptr<sset_report, ReportDeleter>;

std::string failure(const std::string& what) {
  std::string msg = what + ": " + sset_last_error();
  return msg;
}

void check(sset_status s, const std::string& what) {
  if (s != SSET_OK) throw InputError(failure(what));
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Loads complexes and maps, sharing one handle per complex file so that maps
/// read from different files compose.
class Loader {
 public:
  sset_complex* complex(const std::string& path) {
    std::string key = fs::weakly_canonical(fs::path(path)).string();
    auto it = complexes_.find(key);
    if (it != complexes_.end()) return it->second.get();
    sset_complex* x = nullptr;
    check(sset_complex_parse(read_text(path).c_str(), &x), path);
    return complexes_.emplace(key, ComplexPtr(x)).first->second.get();
  }

  sset_map* map(const std::string& path) {
    std::string text = read_text(path);
    char* src = nullptr;
    char* tgt = nullptr;
    check(sset_map_header(text.c_str(), &src, &tgt), path);
    std::string s(src), t(tgt);
    sset_string_free(src);
    sset_string_free(tgt);
    fs::path dir = fs::path(path).parent_path();
    sset_complex* a = complex(resolve(dir, s));
    sset_complex* b = complex(resolve(dir, t));
    sset_map* f = nullptr;
    check(sset_map_parse(text.c_str(), a, b, &f), path);
    maps_.emplace_back(f);
    return f;
  }

 private:
  static std::string resolve(const fs::path& dir, const std::string& file) {
    fs::path p(file);
    return (p.is_absolute() ? p : dir / p).string();
  }

  std::map<std::string, ComplexPtr> complexes_;
  std::vector<MapPtr> maps_;
};

struct Globals {
  std::string format = "human";
  std::string out_dir;
  int max_dim = -1;
  std::uint64_t node_budget = 1'000'000;
  int word_budget = 8;
  int stages = 2;

  sset_config config() const {
    sset_config c;
    sset_config_init(&c);
    c.max_dim = max_dim;
    c.node_budget = node_budget;
    c.word_budget = word_budget;
    c.stage_count = stages;
    return c;
  }
};

int emit(const Globals& g, sset_status status, sset_report* raw, const std::string& what) {
  ReportPtr r(raw);
  if (status != SSET_OK) throw InputError(failure(what));
  if (g.format == "json")
    std::cout << sset_report_json(r.get()) << "\n";
  else
    std::cout << sset_report_text(r.get());
  std::size_t n = sset_report_artifact_count(r.get());
  if (!g.out_dir.empty()) {
    fs::create_directories(g.out_dir);
    for (std::size_t k = 0; k < n; ++k) {
      fs::path p = fs::path(g.out_dir) / sset_report_artifact_name(r.get(), k);
      std::ofstream out(p, std::ios::binary);
      if (!out) throw InputError("cannot write '" + p.string() + "'");
      out << sset_report_artifact_text(r.get(), k);
    }
    if (g.format != "json" && n > 0) std::cout << "wrote " << n << " files to " << g.out_dir << "\n";
  } else if (g.format != "json" && n > 0) {
    std::cerr << "artifacts:";
    for (std::size_t k = 0; k < n; ++k) std::cerr << " " << sset_report_artifact_name(r.get(), k);
    std::cerr << " (use --out-dir to write them)\n";
  }
  return sset_report_exit_code(r.get());
}

const char* opt(const std::string& s) { return s.empty() ? nullptr : s.c_str(); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite simplicial sets: lifting, homotopy categories, factorizations and certificates"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", sset_version());
  Globals g;
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"human", "json"}));
  app.add_option("--out-dir", g.out_dir, "Directory for emitted complexes, maps and certificates");
  app.add_option("--max-dim", g.max_dim, "Dimension bound (default depends on the command)");
  app.add_option("--node-budget", g.node_budget, "Search node budget");
  app.add_option("--word-budget", g.word_budget, "Path length bound for homotopy categories");
  app.add_option("--stages", g.stages, "Number of small-object-argument stages");

  Loader load;
  std::function<int()> run;
  auto cfg = [&] { return g.config(); };

  std::string file, file2, map1, map2, name, arg1, arg2, cls;
  int n = -1, i = -1;
  bool flag = false;

  auto* validate = app.add_subcommand("validate", "Check a complex for face identity violations");
  validate->add_option("file", file)->required();
  validate->callback([&] {
    run = [&] {
      sset_report* r = nullptr;
      auto s = sset_validate(read_text(file).c_str(), &r);
      return emit(g, s, r, file);
    };
  });

  auto* gen = app.add_subcommand("gen", "Generate simplex, boundary, horn, spine or j_trunc");
  gen->add_option("kind", name)->required();
  gen->add_option("n", n)->required();
  gen->add_option("i", i);
  gen->callback([&] {
    run = [&] {
      sset_report* r = nullptr;
      auto s = sset_generate(name.c_str(), n, i, &r);
      return emit(g, s, r, "gen");
    };
  });

  auto* op = app.add_subcommand("op", "product, join, coproduct, skeleton, full-subset, slice, hom-left, cosk0, pushout");
  op->add_option("operation", name)->required();
  op->add_option("inputs", file)->description("First complex (for pushout: the mono i)");
  op->add_option("second", file2)->description("Second complex (for pushout: the map f)");
  op->add_option("--dim,--up-to", n, "Dimension argument");
  op->add_option("--vertices,--vertex,--from", arg1, "Vertex or comma separated vertex list");
  op->add_option("--to", arg2, "Target vertex for hom-left");
  op->callback([&] {
    run = [&] {
      sset_report* r = nullptr;
      if (name == "pushout") {
        if (file.empty() || file2.empty()) throw InputError("pushout needs two map files");
        auto s = sset_pushout(load.map(file), load.map(file2), &r);
        return emit(g, s, r, "op");
      }
      sset_complex* a = file.empty() ? nullptr : load.complex(file);
      sset_complex* b = file2.empty() ? nullptr : load.complex(file2);
      auto s = sset_op(name.c_str(), a, b, opt(arg1), opt(arg2), n, &r);
      return emit(g, s, r, "op");
    };
  });

  std::string li, lp, lu, lv;
  auto* lift = app.add_subcommand("lift", "Solve a lifting problem (p and v omitted: extend u along i)");
  lift->add_option("--i", li, "Mono A -> B")->required();
  lift->add_option("--u", lu, "Map A -> X")->required();
  lift->add_option("--p", lp, "Map X -> S");
  lift->add_option("--v", lv, "Map B -> S");
  lift->callback([&] {
    run = [&] {
      sset_report* r = nullptr;
      auto c = cfg();
      auto s = sset_lift(load.map(li), lp.empty() ? nullptr : load.map(lp), load.map(lu),
                         lv.empty() ? nullptr : load.map(lv), &c, &r);
      return emit(g, s, r, "lift");
    };
  });

  auto* classify = app.add_subcommand("classify", "Check lifting properties against horn and boundary families");
  classify->add_option("map", map1)->required();
  classify->add_option("--class", cls, "Comma separated subset of inner,left,right,kan,trivial_kan");
  classify->callback([&] {
    run = [&] {
      sset_report* r = nullptr;
      auto c = cfg();
      auto s = sset_classify(load.map(map1), opt(cls), &c, &r);
      return emit(g, s, r, "classify");
    };
  });

  auto* homcat = app.add_subcommand("homcat", "Hom-sets of the homotopy category");
  homcat->add_option("file", file)->required();
  homcat->add_option("--from", arg1, "Source vertex");
  homcat->add_option("--to", arg2, "Target vertex");
  homcat->callback([&] {
    run = [&] {
      sset_report* r = nullptr;
      auto c = cfg();
      auto s = sset_homcat(load.complex(file), opt(arg1), opt(arg2), &c, &r);
      return emit(g, s, r, "homcat");
    };
  });

  auto* equiv = app.add_subcommand("equiv-edge", "Whether an edge is an equivalence");
  equiv->add_option("file", file)->required();
  equiv->add_option("edge", arg1)->required();
  equiv->callback([&] {
    run = [&] {
      sset_report* r = nullptr;
      auto c = cfg();
      auto s = sset_equiv_edge(load.complex(file), arg1.c_str(), &c, &r);
      return emit(g, s, r, "equiv-edge");
    };
  });

  auto map_verb = [&](const char* verb, const char* help,
                      sset_status (*fn)(const sset_map*, const sset_config*, sset_report**)) {
    auto* sc = app.add_subcommand(verb, help);
    sc->add_option("map", map1)->required();
    sc->callback([&, verb, fn] {
      run = [&, verb, fn] {
        sset_report* r = nullptr;
        auto c = cfg();
        auto s = fn(load.map(map1), &c, &r);
        return emit(g, s, r, verb);
      };
    });
    return sc;
  };
  map_verb("isofib", "Isofibration check", sset_isofib);
  map_verb("catfib", "Categorical fibration check (bounded)", sset_catfib);
  map_verb("dk-check", "Essential surjectivity and full faithfulness", sset_dk_check);
  map_verb("descend-triangle", "Modified small object argument over the inner 2-horn", sset_descend_triangle);
  map_verb("pathspace", "Mapping path space factorization (up to --max-dim, default 1)", sset_pathspace);

  auto* mapspace = app.add_subcommand("mapspace", "Function complex Fun(K, C) up to --max-dim (default 2)");
  mapspace->add_option("target", file, "C")->required();
  mapspace->add_option("source", file2, "K")->required();
  mapspace->add_flag("--restricted", flag, "Keep maps sending edges to equivalences");
  mapspace->callback([&] {
    run = [&] {
      sset_report* r = nullptr;
      auto c = cfg();
      auto s = sset_mapspace(load.complex(file), load.complex(file2), flag ? 1 : 0, &c, &r);
      return emit(g, s, r, "mapspace");
    };
  });

  std::string verify, anodyne = "inner";
  auto* certify = app.add_subcommand("certify", "Search, verify or classify anodyne certificates of a mono");
  certify->add_option("map", map1)->required();
  certify->add_option("--class", anodyne, "inner, left, right or kan")->capture_default_str();
  certify->add_option("--verify", verify, "Certificate file to replay");
  certify->add_flag("--classify", flag, "Classify as inner anodyne or not");
  std::uint64_t certify_budget = 0;
  auto* budget_opt = certify->add_option("--budget", certify_budget, "Node budget for this search")
                         ->check(CLI::PositiveNumber);
  certify->callback([&] {
    run = [&] {
      sset_report* r = nullptr;
      auto c = cfg();
      if (budget_opt->count()) c.node_budget = certify_budget;
      sset_status s;
      if (!verify.empty())
        s = sset_verify_certificate(load.map(map1), read_text(verify).c_str(), &r);
      else
        s = sset_certify(load.map(map1), anodyne.c_str(), flag ? 1 : 0, &c, &r);
      return emit(g, s, r, "certify");
    };
  });

  auto* two = app.add_subcommand("two-of-three", "Classify u, v and v.u and look for contradictions");
  two->add_option("u", map1)->required();
  two->add_option("v", map2)->required();
  two->callback([&] {
    run = [&] {
      sset_report* r = nullptr;
      auto c = cfg();
      auto s = sset_two_of_three(load.map(map1), load.map(map2), &c, &r);
      return emit(g, s, r, "two-of-three");
    };
  });

  auto* pre = app.add_subcommand("prefibrantize", "Pre-fibrant replacement stages (up to --max-dim, default 3)");
  pre->add_option("file", file)->required();
  pre->add_flag("--only-unfilled", flag, "Attach only horns without a filler");
  pre->callback([&] {
    run = [&] {
      sset_report* r = nullptr;
      auto c = cfg();
      auto s = sset_prefibrantize(load.complex(file), flag ? 1 : 0, &c, &r);
      return emit(g, s, r, "prefibrantize");
    };
  });

  auto* sat = app.add_subcommand("saturate", "Saturate a pre-fibrant complex (up to --max-dim, default 3)");
  sat->add_option("file", file)->required();
  sat->add_flag("--literal-selector", flag, "Attach every inner horn with non-constant d0 face");
  sat->callback([&] {
    run = [&] {
      sset_report* r = nullptr;
      auto c = cfg();
      auto s = sset_saturate(load.complex(file), flag ? 1 : 0, &c, &r);
      return emit(g, s, r, "saturate");
    };
  });

  auto* comp = app.add_subcommand("complete", "Inner horn small object argument stages");
  comp->add_option("file", file)->required();
  comp->callback([&] {
    run = [&] {
      sset_report* r = nullptr;
      auto c = cfg();
      auto s = sset_complete(load.complex(file), &c, &r);
      return emit(g, s, r, "complete");
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }
  try {
    return run();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
}
