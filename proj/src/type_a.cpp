#include "kh/type_a.hpp"

#include "state_space.hpp"

namespace kh {

int TypeAStructure::find(const AState& s) const {
  auto it = index.find(s);
  return it == index.end() ? -1 : it->second;
}

namespace {

void check_left(const TangleDiagram& t) {
  if (t.side != Side::Left) throw Error(Err::BoundaryMismatch, "type A structures are built from left tangles");
}

void add_to(StateVec& v, int j, const RF& c) {
  if (c.is_zero()) return;
  auto it = v.find(j);
  if (it == v.end()) {
    v.emplace(j, c);
    return;
  }
  it->second = it->second + c;
  if (it->second.is_zero()) v.erase(it);
}

void add_to(StateVec& v, const StateVec& w, const RF& c = RF::one()) {
  for (auto& [j, x] : w) add_to(v, j, x * c);
}

struct ABuilder : detail::StateSpace {
  TypeAStructure a;

  explicit ABuilder(const TangleDiagram& tt) : StateSpace(tt) {}

  void states(std::size_t max_states) {
    build(max_states);
    a.n = t.n;
    a.vars = t.vars;
    a.states = StateSpace::states;
    a.index = index;
    a.boundary = boundary;
    a.zeta4 = zeta4;
    a.n_cleaved = n_cleaved;
    a.circle_key = circle_key;
    a.m1.assign(a.states.size(), {});
    a.act.assign(a.states.size(), {});
  }

  void fill(int i) {
    Algebra& A = algebra(t.n);
    const AState& s = a.states[i];
    const Resolved& R = res[s.rho];
    const CircleSet& cs = circles(s.m, s.rho);
    LinkId L = a.boundary[i];
    auto& table = a.act[i];
    for (GenId g : A.generators_from(L)) table[g];
    auto sig = signatures(cs);
    // resolution sites: idempotent moves feed m1, the rest feed left actions
    for (const auto& site : cs.sites) {
      if (!site.active) continue;
      SurgeryOutcome out = surger_circles(t, R, cs, site, s.m);
      for (auto& nd : transfer_decorations(sig, s.dec, signatures(out.circles), out.circles.marked)) {
        int j = target(AState{s.m, out.resolved.rho, nd});
        GenId g = connect(L, a.boundary[j], out);
        add_to(g < 0 ? a.m1[i] : table[g], j, RF::one());
      }
    }
    for (int c = 0; c < static_cast<int>(cs.circles.size()); ++c) {
      if (s.dec[c] < 0) continue;
      AState ns = s;
      ns.dec[c] = -1;
      int j = target(ns);
      RF w(cs.circles[c].weight);
      if (cs.circles[c].free) {
        add_to(a.m1[i], j, w);
      } else {
        add_to(table[A.dec(GenKind::LeftDec, L, c)], j, w);
        add_to(table[A.dec(GenKind::RightDec, L, c)], j, RF::one());
      }
    }
    // right bridges surger the right matching; free decorations are kept
    for (GenId g : A.generators_from(L)) {
      const Generator& x = A.gen(g);
      if (x.kind != GenKind::RightBridge) continue;
      PlanarMatching m2 = surger_matching(s.m, x.bridge).result;
      const DecoratedLink& T = A.link(x.tgt);
      Decoration nd = T.sigma;
      nd.insert(nd.end(), s.dec.begin() + a.n_cleaved[i], s.dec.end());
      add_to(table[g], target(AState{m2, s.rho, nd}), RF::one());
    }
  }
};

}  // namespace

std::vector<AState> build_states_a(const TangleDiagram& t, std::size_t max_states) {
  check_left(t);
  ABuilder b(t);
  b.states(max_states);
  return b.a.states;
}

TypeAStructure build_type_a(const TangleDiagram& t, std::size_t max_states) {
  check_left(t);
  ABuilder b(t);
  b.states(max_states);
  for (int i = 0; i < static_cast<int>(b.a.states.size()); ++i) b.fill(i);
  return std::move(b.a);
}

StateVec act_generator(const TypeAStructure& a, int state, GenId g) {
  const auto& table = a.act[state];
  auto it = table.find(g);
  return it == table.end() ? StateVec{} : it->second;
}

StateVec act_word(const TypeAStructure& a, const StateVec& x, const Word& w, LinkId src) {
  if (w.size() > 2) throw Error(Err::WordTooLong, "actions are defined for words of length <= 2");
  StateVec cur;
  for (auto& [i, c] : x)
    if (a.boundary[i] == src) add_to(cur, i, c);
  for (GenId g : w) {
    StateVec next;
    for (auto& [i, c] : cur) add_to(next, act_generator(a, i, g), c);
    cur = std::move(next);
  }
  return cur;
}

StateVec act_word(const TypeAStructure& a, int state, const Word& w, LinkId src) {
  return act_word(a, StateVec{{state, RF::one()}}, w, src);
}

StateVec act(const TypeAStructure& a, const StateVec& x, const AlgebraElement& e) {
  StateVec out;
  for (auto& [w, c] : e.terms) add_to(out, act_word(a, x, w, e.src), c);
  return out;
}

StateVec apply_m1(const TypeAStructure& a, const StateVec& x) {
  StateVec out;
  for (auto& [i, c] : x) add_to(out, a.m1[i], c);
  return out;
}

Report verify_Ainf(const TypeAStructure& a) {
  Algebra& A = a.alg();
  Report rep;
  auto links = A.enumerate_links();
  auto show = [&](const StateVec& v) {
    std::string s;
    for (auto& [j, c] : v) s += (s.empty() ? "" : " + ") + to_string(c, &a.vars) + "*[" + to_string(a.states[j]) + "]";
    return s;
  };
  for (int i = 0; i < static_cast<int>(a.states.size()); ++i) {
    StateVec xi{{i, RF::one()}};
    StateVec mm = apply_m1(a, apply_m1(a, xi));
    if (!mm.empty()) rep.fail("m1^2 at " + to_string(a.states[i]) + ": " + show(mm));
    LinkId L = a.boundary[i];
    for (GenId g : A.generators_from(L)) {
      StateVec lhs = act(a, apply_m1(a, xi), A.element(g));
      add_to(lhs, act(a, xi, A.d_gamma(g)));
      add_to(lhs, apply_m1(a, act(a, xi, A.element(g))));
      if (!lhs.empty())
        rep.fail("mixed relation at " + to_string(a.states[i]) + " with " + gen_kind_name(A.gen(g).kind) + " " + A.describe(g, false) + ": " + show(lhs));
    }
    for (LinkId t : links)
      for (const Relation& r : A.relation_instances(L, t)) {
        StateVec v;
        for (auto& w : r) add_to(v, act_word(a, xi, w, L));
        if (!v.empty()) {
          std::string rs;
          for (auto& w : r) rs += (rs.empty() ? "" : " + ") + A.describe_word(w);
          rep.fail("relation " + rs + " at " + to_string(a.states[i]) + ": " + show(v));
        }
      }
  }
  return rep;
}

Report verify_grading(const TypeAStructure& a) {
  Algebra& A = a.alg();
  Report rep;
  for (int i = 0; i < static_cast<int>(a.states.size()); ++i) {
    for (auto& [j, c] : a.m1[i])
      if (a.zeta4[j] != a.zeta4[i] + 4) rep.fail("m1 zeta at " + to_string(a.states[i]));
    for (auto& [g, v] : a.act[i])
      for (auto& [j, c] : v) {
        if (a.boundary[j] != A.gen(g).tgt) rep.fail("action lands off the target idempotent");
        if (a.zeta4[j] != a.zeta4[i] + gen_zeta4(A.gen(g).kind))
          rep.fail("zeta of " + A.describe(g, false) + " at " + to_string(a.states[i]));
      }
  }
  return rep;
}

nlohmann::json to_json(const TypeAStructure& a) {
  Algebra& A = a.alg();
  auto vec = [&](const StateVec& v) {
    nlohmann::json out = nlohmann::json::array();
    for (auto& [j, c] : v) out.push_back({{"coeff", to_string(c, &a.vars)}, {"target", j}});
    return out;
  };
  nlohmann::json j;
  j["n"] = a.n;
  j["vars"] = a.vars.names();
  j["states"] = nlohmann::json::array();
  for (std::size_t i = 0; i < a.states.size(); ++i) {
    const auto& s = a.states[i];
    std::string dec;
    for (auto x : s.dec) dec += x > 0 ? '+' : '-';
    nlohmann::json acts = nlohmann::json::array();
    for (auto& [g, v] : a.act[i])
      if (!v.empty())
        acts.push_back({{"generator", A.describe(g, false)}, {"kind", gen_kind_name(A.gen(g).kind)}, {"terms", vec(v)}});
    j["states"].push_back({{"id", i},
                           {"matching", to_string(s.m)},
                           {"rho", s.rho},
                           {"dec", dec},
                           {"boundary", A.describe(a.boundary[i])},
                           {"zeta", zeta_string(a.zeta4[i])},
                           {"m1", vec(a.m1[i])},
                           {"act", acts}});
  }
  return j;
}

}  // namespace kh
