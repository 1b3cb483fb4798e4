#include "kh/weightmoves.hpp"

#include "kh/reduce.hpp"
#include "state_space.hpp"

namespace kh {

WeightMove make_weight_move(const TangleDiagram& t, int crossing, Port a, Port b, const Polynomial& w) {
  if (crossing < 0 || crossing >= t.num_crossings()) throw Error(Err::SchemaError, "crossing out of range");
  if (a == b) throw Error(Err::SchemaError, "weight move needs two distinct ports");
  WeightMove m{crossing, {a, b}, w, t, t};
  // char 2: adding w to both arcs moves it from one to the other
  for (Port p : {a, b}) {
    int arc = t.port_arc[crossing][p];
    m.target.arc_weight[arc] = m.target.arc_weight[arc] + w;
  }
  return m;
}

std::vector<std::pair<Port, Port>> port_pairs() {
  return {{InLo, OutLo}, {InHi, OutHi}, {InLo, InHi}, {OutLo, OutHi}, {InLo, OutHi}, {InHi, OutLo}};
}

std::vector<std::pair<Port, Port>> diagonal_port_pairs() { return {{InLo, OutHi}, {InHi, OutLo}}; }

const char* port_name(Port p) {
  switch (p) {
    case InLo: return "in-lo";
    case InHi: return "in-hi";
    case OutLo: return "out-lo";
    case OutHi: return "out-hi";
  }
  return "?";
}

namespace {

// The generator from l to l2 when they differ by a right surgery or flip; -1 for l == l2.
GenId right_step(Algebra& A, LinkId l, LinkId l2) {
  if (l == l2) return -1;
  GenId found = -1;
  for (GenId g : A.generators_from(l)) {
    const Generator& x = A.gen(g);
    if (x.tgt != l2 || (x.kind != GenKind::RightBridge && x.kind != GenKind::RightDec)) continue;
    if (found >= 0) throw Error(Err::SchemaError, "ambiguous right step " + A.describe(l) + " -> " + A.describe(l2));
    found = g;
  }
  if (found < 0) throw Error(Err::SchemaError, "no right step " + A.describe(l) + " -> " + A.describe(l2));
  return found;
}

void check_pair(const TypeDStructure& from, const TypeDStructure& to) {
  if (from.states != to.states) throw Error(Err::BoundaryMismatch, "weight move structures have different states");
}

}  // namespace

DMorphism build_Dc(const WeightMove& move, const TypeDStructure& from, const TypeDStructure& to) {
  check_pair(from, to);
  const TangleDiagram& t = move.source;
  detail::StateSpace S(t);
  S.build(0);
  Algebra& A = from.alg();
  ResolutionMask bit = ResolutionMask(1) << move.crossing;
  DMorphism f{&from, &to, std::vector<std::map<int, AlgebraElement>>(from.states.size()), 0};
  for (int i = 0; i < static_cast<int>(from.states.size()); ++i) {
    const DState& s = from.states[i];
    if (!(s.rho & bit)) continue;
    ResolutionMask r2 = s.rho & ~bit;
    const CircleSet& cs = S.circles(s.m, s.rho);
    const CircleSet& cs2 = S.circles(s.m, r2);
    for (auto& nd : transfer_decorations(signatures(cs), s.dec, signatures(cs2), cs2.marked)) {
      int j = to.find(DState{s.m, r2, nd});
      if (j < 0) throw Error(Err::SchemaError, "reverse surgery leaves the state space");
      GenId g = right_step(A, from.boundary[i], to.boundary[j]);
      AlgebraElement e = g < 0 ? A.idempotent(from.boundary[i]) : A.element(g);
      auto it = f.map[i].find(j);
      if (it == f.map[i].end())
        f.map[i].emplace(j, e);
      else if ((it->second += e).empty())
        f.map[i].erase(it);
    }
  }
  return f;
}

DMorphism build_Psi(const WeightMove& move, const TypeDStructure& from, const TypeDStructure& to) {
  DMorphism f = build_Dc(move, from, to);
  RF w(move.w);
  Algebra& A = from.alg();
  for (int i = 0; i < static_cast<int>(f.map.size()); ++i) {
    std::map<int, AlgebraElement> row;
    if (!w.is_zero())
      for (auto& [j, e] : f.map[i]) row.emplace(j, e.scaled(w));
    row.emplace(i, A.idempotent(from.boundary[i]));
    f.map[i] = std::move(row);
  }
  return f;
}

DMorphism build_Phi(const WeightMove& move, const TypeDStructure& from, const TypeDStructure& to) {
  return build_Psi(move, from, to);
}

WeightMoveMaps weight_move_maps(const WeightMove& move, std::size_t max_states) {
  WeightMoveMaps m;
  m.d_source = std::make_shared<const TypeDStructure>(build_delta(move.source, max_states));
  m.d_target = std::make_shared<const TypeDStructure>(build_delta(move.target, max_states));
  m.psi = build_Psi(move, *m.d_source, *m.d_target);
  m.phi = build_Phi(move, *m.d_target, *m.d_source);
  return m;
}

WeightMoveReport check_weight_move(const WeightMove& move, std::size_t max_states) {
  WeightMoveReport rep;
  auto m = weight_move_maps(move, max_states);
  auto keep = [&](const Report& r, const char* what) {
    for (auto& f : r.failures) rep.failures.push_back(std::string(what) + ": " + f);
    return r.ok;
  };
  rep.psi_morphism = keep(verify_morphism(m.psi), "psi");
  rep.phi_morphism = keep(verify_morphism(m.phi), "phi");
  rep.phi_psi_identity = equal_morphisms(compose(m.phi, m.psi), identity_morphism(*m.d_source));
  rep.psi_phi_identity = equal_morphisms(compose(m.psi, m.phi), identity_morphism(*m.d_target));
  if (!rep.phi_psi_identity) rep.failures.push_back("phi * psi is not the identity");
  if (!rep.psi_phi_identity) rep.failures.push_back("psi * phi is not the identity");
  return rep;
}

nlohmann::json to_json(const WeightMoveReport& r) {
  return {{"psi_morphism", r.psi_morphism},
          {"phi_morphism", r.phi_morphism},
          {"phi_psi_identity", r.phi_psi_identity},
          {"psi_phi_identity", r.psi_phi_identity},
          {"ok", r.ok()},
          {"failures", r.failures}};
}

}  // namespace kh
