// khtool: build, verify, pair and reduce twisted bordered structures.
//
// Exit codes: 0 ok, 1 verification failed, 2 bad input, 3 state budget exceeded.

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <regex>

#include "kh/fixtures.hpp"
#include "kh/pairing.hpp"
#include "kh/reduce.hpp"
#include "kh/weightmoves.hpp"

using namespace kh;
using nlohmann::json;

namespace {

struct Options {
  std::string mode = "exact";
  uint64_t seed = 0x5eed;
  bool json = false;
  std::size_t max_states = 0;

  RankOptions ranks() const {
    RankOptions o;
    o.mode = mode == "randomized" ? RankMode::Randomized : RankMode::Exact;
    o.seed = seed;
    return o;
  }
};

// A path to a diagram JSON file, or a fixture name when no such file exists.
TangleDiagram load(const std::string& src) {
  if (!std::filesystem::exists(src)) {
    auto names = fixture_names();
    if (std::find(names.begin(), names.end(), src) != names.end()) return fixture(src);
    throw Error(Err::SchemaError, "no such file or fixture: " + src);
  }
  std::ifstream in(src);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw Error(Err::SchemaError, src + ": " + e.what());
  }
  return parse_diagram(j);
}

TangleDiagram need(const TangleDiagram& t, Side side, const std::string& what) {
  if (t.side != side)
    throw Error(Err::BoundaryMismatch, what + " needs a " + side_name(side) + " tangle, got " + side_name(t.side));
  return t;
}

// Left copy of t whose variable names avoid those of other.
TangleDiagram as_left(const TangleDiagram& t, const TangleDiagram& other) {
  TangleDiagram l = t.side == Side::Left ? t : mirror(t);
  bool clash = false;
  for (auto& n : l.vars.names()) clash |= other.vars.find(n).has_value();
  if (!clash) return l;
  json j = to_json(l);
  for (auto& [k, v] : j["arcs"].items()) v = "l" + v.get<std::string>();
  if (j.contains("weights")) {
    std::regex name(R"(\b([A-Za-z_][A-Za-z0-9_]*)\b)");
    for (auto& [k, v] : j["weights"].items()) v = std::regex_replace(v.get<std::string>(), name, "l$1");
  }
  return parse_diagram(j);
}

void print_report(const Report& r, const std::string& what, const Options& o) {
  if (o.json) {
    std::cout << json{{"check", what}, {"ok", r.ok}, {"failures", r.failures}}.dump(2) << "\n";
    return;
  }
  std::cout << what << ": " << (r.ok ? "ok" : "FAILED") << "\n";
  for (auto& f : r.failures) std::cout << "  " << f << "\n";
}

void print_d(const TypeDStructure& d) {
  Algebra& A = d.alg();
  std::cout << d.states.size() << " states, " << d.num_terms() << " terms\n";
  for (std::size_t i = 0; i < d.states.size(); ++i) {
    std::cout << "[" << i << "] " << to_string(d.states[i]) << "  zeta " << zeta_string(d.zeta4[i]) << "\n";
    for (auto& [j, e] : d.delta[i]) std::cout << "    -> [" << j << "] " << A.describe(e, &d.vars) << "\n";
  }
}

void print_a(const TypeAStructure& a) {
  Algebra& A = a.alg();
  std::cout << a.states.size() << " states\n";
  for (std::size_t i = 0; i < a.states.size(); ++i) {
    std::cout << "[" << i << "] " << to_string(a.states[i]) << "  zeta " << zeta_string(a.zeta4[i]) << "\n";
    for (auto& [j, c] : a.m1[i]) std::cout << "    m1 -> " << to_string(c, &a.vars) << " [" << j << "]\n";
    for (auto& [g, v] : a.act[i])
      for (auto& [j, c] : v)
        std::cout << "    " << A.describe(g, false) << " -> " << to_string(c, &a.vars) << " [" << j << "]\n";
  }
}

void print_ranks(const std::map<int, std::size_t>& r, const Options& o) {
  if (o.json) {
    std::cout << ranks_json(r).dump() << "\n";
    return;
  }
  std::size_t total = 0;
  for (auto& [z, k] : r) {
    std::cout << "zeta " << zeta_string(z) << ": " << k << "\n";
    total += k;
  }
  std::cout << "total: " << total << "\n";
}

std::pair<Port, Port> parse_ports(const std::string& s) {
  auto comma = s.find(',');
  if (comma == std::string::npos) throw Error(Err::SchemaError, "ports are given as a,b");
  auto one = [](const std::string& p) {
    for (Port q : {InLo, InHi, OutLo, OutHi})
      if (p == port_name(q)) return q;
    throw Error(Err::SchemaError, "unknown port " + p);
  };
  return {one(s.substr(0, comma)), one(s.substr(comma + 1))};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Twisted bordered Khovanov structures over GF(2) rational functions"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--mode", o.mode, "rank computation")->check(CLI::IsMember({"exact", "randomized"}));
  app.add_option("--seed", o.seed, "seed for randomized ranks");
  app.add_flag("--json", o.json, "JSON output");
  app.add_option("--max-states", o.max_states, "abort above this many states (exit 3)");

  std::string in1, in2, type = "d", ports = "in-lo,out-hi", weight, out_dir;
  std::vector<std::string> names;
  bool compare_oracle = false, closed = false, check = false, all_ports = false;
  int crossing = 1;
  std::vector<std::string> pair_inputs;

  auto* build_d = app.add_subcommand("build-d", "type D structure of a right tangle");
  build_d->add_option("diagram", in1)->required();
  auto* build_a = app.add_subcommand("build-a", "type A structure of a left tangle");
  build_a->add_option("diagram", in1)->required();
  auto* verify = app.add_subcommand("verify", "structure equations and gradings");
  verify->add_option("--type", type)->check(CLI::IsMember({"d", "a"}));
  verify->add_option("diagram", in1)->required();
  auto* pair = app.add_subcommand("pair", "box tensor of a left and a right tangle");
  pair->add_option("left", in1)->required();
  pair->add_option("right", in2)->required();
  pair->add_flag("--compare-oracle", compare_oracle, "compare with the glued diagram's complex");
  auto* homology = app.add_subcommand("homology", "homology ranks per zeta grading");
  homology->add_option("--pair", pair_inputs, "left and right diagrams")->expected(2)->required();
  auto* reduce = app.add_subcommand("reduce", "cancel free circles of a right tangle's structure");
  reduce->add_option("diagram", in1)->required();
  reduce->add_flag("--closed-form", closed, "print the closed form instead of running cancellations");
  reduce->add_flag("--check", check, "verify the retraction and compare with the closed form");
  auto* wm = app.add_subcommand("weightmove", "move a weight across a crossing and check the morphisms");
  wm->add_option("diagram", in1)->required();
  wm->add_option("--crossing", crossing, "1-based crossing index")->required();
  wm->add_option("--ports", ports, "two of in-lo, in-hi, out-lo, out-hi");
  wm->add_option("--w", weight, "moved weight (default: first variable)");
  wm->add_flag("--all-ports", all_ports, "try every port pair and tabulate");
  auto* fx = app.add_subcommand("fixtures", "list or write fixture diagrams");
  fx->add_option("names", names);
  fx->add_option("--out", out_dir, "write <name>.json files here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*build_d) {
      auto d = build_delta(need(load(in1), Side::Right, "build-d"), o.max_states);
      if (o.json)
        std::cout << to_json(d).dump(2) << "\n";
      else
        print_d(d);
    } else if (*build_a) {
      auto a = build_type_a(need(load(in1), Side::Left, "build-a"), o.max_states);
      if (o.json)
        std::cout << to_json(a).dump(2) << "\n";
      else
        print_a(a);
    } else if (*verify) {
      auto t = load(in1);
      Report r;
      if (type == "d") {
        auto d = build_delta(need(t, Side::Right, "verify --type d"), o.max_states);
        r = verify_structure(d);
        for (auto& f : verify_grading(d).failures) r.fail("grading: " + f);
      } else {
        auto a = build_type_a(need(t, Side::Left, "verify --type a"), o.max_states);
        r = verify_Ainf(a);
        for (auto& f : verify_grading(a).failures) r.fail("grading: " + f);
      }
      print_report(r, type == "d" ? "type D structure" : "A-infinity relations", o);
      return r.ok ? 0 : 1;
    } else if (*pair) {
      auto r = need(load(in2), Side::Right, "pair");
      auto l = as_left(load(in1), r);
      auto c = box_tensor(build_type_a(l, o.max_states), build_delta(r, o.max_states));
      auto vc = verify_complex(c);
      bool same = true;
      std::string why;
      if (compare_oracle) same = compare(c, twisted_khovanov(l, r, o.max_states), &why);
      if (o.json) {
        json j = to_json(c);
        j["complex_ok"] = vc.ok;
        if (compare_oracle) j["isomorphic"] = same;
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << c.size() << " generators\n";
        for (std::size_t i = 0; i < c.size(); ++i) {
          std::cout << "[" << i << "] " << c.keys[i] << "  zeta " << zeta_string(c.zeta4[i]) << "\n";
          for (auto& [j, x] : c.d[i]) std::cout << "    -> " << to_string(x, &c.vars) << " [" << j << "]\n";
        }
        if (!vc.ok) std::cout << "d^2 check: FAILED\n";
        if (compare_oracle) std::cout << "isomorphic: " << (same ? "true" : "false") << (same ? "" : " (" + why + ")") << "\n";
      }
      return vc.ok && same ? 0 : 1;
    } else if (*homology) {
      auto r = need(load(pair_inputs[1]), Side::Right, "homology");
      auto l = as_left(load(pair_inputs[0]), r);
      auto c = box_tensor(build_type_a(l, o.max_states), build_delta(r, o.max_states));
      print_ranks(homology_ranks(c, o.ranks()), o);
    } else if (*reduce) {
      auto t = need(load(in1), Side::Right, "reduce");
      if (closed) {
        auto d = closed_form(t, o.max_states);
        if (o.json)
          std::cout << to_json(d).dump(2) << "\n";
        else
          print_d(d);
        return 0;
      }
      auto c = reduce_free_circles(build_delta(t, o.max_states));
      Report r;
      if (check) {
        std::string why;
        if (!equivalent(closed_form(t), *c.reduced, &why)) r.fail("closed form differs: " + why);
        for (auto& f : verify_structure(*c.reduced).failures) r.fail("reduced: " + f);
        for (auto& f : verify_morphism(c.iota).failures) r.fail("iota: " + f);
        for (auto& f : verify_morphism(c.pi).failures) r.fail("pi: " + f);
        if (!equal_morphisms(compose(c.pi, c.iota), identity_morphism(*c.reduced))) r.fail("pi * iota is not the identity");
        if (c.has_homotopy)
          for (auto& f : verify_homotopy(compose(c.iota, c.pi), identity_morphism(*c.original), c.H).failures)
            r.fail("homotopy: " + f);
      }
      if (o.json) {
        json j = to_json(c);
        if (check) j["check"] = {{"ok", r.ok}, {"failures", r.failures}};
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << c.original->states.size() << " -> " << c.reduced->states.size() << " states\n";
        print_d(*c.reduced);
        if (check) print_report(r, "reduction", o);
      }
      return r.ok ? 0 : 1;
    } else if (*wm) {
      auto t = need(load(in1), Side::Right, "weightmove");
      if (crossing < 1 || crossing > t.num_crossings()) throw Error(Err::SchemaError, "crossing out of range");
      Polynomial w = weight.empty() ? Polynomial::var(0) : parse_polynomial(weight, t.vars);
      std::vector<std::pair<Port, Port>> todo = all_ports ? port_pairs() : std::vector{parse_ports(ports)};
      json rows = json::array();
      bool ok = true;
      for (auto [a, b] : todo) {
        auto rep = check_weight_move(make_weight_move(t, crossing - 1, a, b, w), o.max_states);
        json row = to_json(rep);
        row["ports"] = std::string(port_name(a)) + "," + port_name(b);
        rows.push_back(row);
        ok &= rep.ok();
        if (!o.json) {
          std::cout << port_name(a) << "," << port_name(b) << ": " << (rep.ok() ? "ok" : "FAILED") << "\n";
          if (!all_ports)
            for (auto& f : rep.failures) std::cout << "  " << f << "\n";
        }
      }
      if (o.json) std::cout << (all_ports ? rows : rows[0]).dump(2) << "\n";
      return ok || all_ports ? 0 : 1;
    } else if (*fx) {
      if (names.empty()) {
        for (auto& n : fixture_names()) std::cout << n << "\n";
        return 0;
      }
      for (auto& n : names) {
        json j = to_json(fixture(n));
        if (out_dir.empty()) {
          std::cout << j.dump(2) << "\n";
          continue;
        }
        std::filesystem::create_directories(out_dir);
        std::ofstream(std::filesystem::path(out_dir) / (n + ".json")) << j.dump(2) << "\n";
      }
    }
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return e.kind() == Err::StateBudgetExceeded ? 3 : 2;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
  return 0;
}
