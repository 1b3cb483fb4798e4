#include "kh/type_d.hpp"

#include <sstream>

#include "state_space.hpp"

namespace kh {

std::string to_string(const DState& s) {
  std::ostringstream os;
  os << to_string(s.m) << " rho=";
  int k = 0;
  for (ResolutionMask r = s.rho; r; r >>= 1) ++k;
  for (int c = 0; c < std::max(k, 1); ++c) os << ((s.rho >> c) & 1);
  os << " s=";
  for (auto d : s.dec) os << (d > 0 ? '+' : '-');
  return os.str();
}

int TypeDStructure::find(const DState& s) const {
  auto it = index.find(s);
  return it == index.end() ? -1 : it->second;
}

std::size_t TypeDStructure::num_terms() const {
  std::size_t n = 0;
  for (auto& row : delta)
    for (auto& [j, a] : row) n += a.terms.size();
  return n;
}

namespace {

void check_right(const TangleDiagram& t) {
  if (t.side != Side::Right) throw Error(Err::BoundaryMismatch, "type D structures are built from right tangles");
}

struct Builder : detail::StateSpace {
  TypeDStructure d;

  explicit Builder(const TangleDiagram& tt) : StateSpace(tt) {}

  void states(std::size_t max_states) {
    build(max_states);
    d.n = t.n;
    d.vars = t.vars;
    d.states = StateSpace::states;
    d.index = index;
    d.boundary = boundary;
    d.zeta4 = zeta4;
    d.n_cleaved = n_cleaved;
    d.circle_key = circle_key;
    d.delta.assign(d.states.size(), {});
  }

  void add(int i, int j, const AlgebraElement& a) {
    if (a.empty()) return;
    auto it = d.delta[i].find(j);
    if (it == d.delta[i].end()) {
      d.delta[i].emplace(j, a);
      return;
    }
    it->second += a;
    if (it->second.empty()) d.delta[i].erase(it);
  }

  void delta_T(int i) {
    Algebra& A = algebra(t.n);
    const DState& s = d.states[i];
    const Resolved& R = res[s.rho];
    const CircleSet& cs = circles(s.m, s.rho);
    LinkId L = d.boundary[i];
    auto sig = signatures(cs);
    // resolution surgeries
    for (const auto& site : cs.sites) {
      if (!site.active) continue;
      SurgeryOutcome out = surger_circles(t, R, cs, site, s.m);
      auto sig2 = signatures(out.circles);
      for (auto& nd : transfer_decorations(sig, s.dec, sig2, out.circles.marked)) {
        int j = target(DState{s.m, out.resolved.rho, nd});
        GenId g = connect(L, d.boundary[j], out);
        add(i, j, g < 0 ? A.idempotent(L) : A.element(g));
      }
    }
    // left bridges of the boundary
    for (auto& g : bridge_classes(s.m, Side::Left)) {
      PlanarMatching m2 = surger_matching(s.m, g).result;
      const CircleSet& cs2 = circles(m2, s.rho);
      for (auto& nd : transfer_decorations(sig, s.dec, signatures(cs2), cs2.marked)) {
        int j = target(DState{m2, s.rho, nd});
        GenId gid = A.bridge(L, d.boundary[j], g);
        if (gid < 0) throw Error(Err::SchemaError, "no left bridge generator for " + to_string(g));
        add(i, j, A.element(gid));
      }
    }
    // left decorations
    for (int c = 0; c < cs.n_cleaved; ++c) {
      if (s.dec[c] < 0) continue;
      DState ns = s;
      ns.dec[c] = -1;
      add(i, target(ns), A.element(A.dec(GenKind::LeftDec, L, c)));
    }
  }

  void delta_V(int i) {
    Algebra& A = algebra(t.n);
    const DState& s = d.states[i];
    const CircleSet& cs = circles(s.m, s.rho);
    LinkId L = d.boundary[i];
    for (int c = 0; c < static_cast<int>(cs.circles.size()); ++c) {
      if (s.dec[c] < 0) continue;
      DState ns = s;
      ns.dec[c] = -1;
      int j = target(ns);
      RF w(cs.circles[c].weight);
      if (w.is_zero()) continue;
      if (cs.circles[c].free)
        add(i, j, A.idempotent(L).scaled(w));
      else
        add(i, j, A.element(A.dec(GenKind::RightDec, L, c), w));
    }
  }
};

TypeDStructure build(const TangleDiagram& t, std::size_t max_states, bool T, bool V) {
  check_right(t);
  Builder b(t);
  b.states(max_states);
  for (int i = 0; i < static_cast<int>(b.d.states.size()); ++i) {
    if (T) b.delta_T(i);
    if (V) b.delta_V(i);
  }
  return std::move(b.d);
}

// Sum over two-step paths of a then b, plus d applied to a's coefficients.
std::map<int, AlgebraElement> two_step(const TypeDStructure& a, const TypeDStructure& b, int i, bool with_d) {
  Algebra& A = a.alg();
  std::map<int, AlgebraElement> acc;
  auto put = [&](int k, const AlgebraElement& e) {
    if (e.empty()) return;
    auto it = acc.find(k);
    if (it == acc.end())
      acc.emplace(k, e);
    else
      it->second += e;
  };
  for (auto& [j, x] : a.delta[i]) {
    for (auto& [k, y] : b.delta[j]) put(k, A.multiply(x, y));
    if (with_d) put(j, A.d_gamma(x));
  }
  return acc;
}

Report check_blocks(const TypeDStructure& a, const TypeDStructure& b, bool with_d, bool symmetric) {
  Algebra& A = a.alg();
  Report rep;
  for (int i = 0; i < static_cast<int>(a.states.size()); ++i) {
    auto acc = two_step(a, b, i, with_d);
    if (symmetric)
      for (auto& [k, e] : two_step(b, a, i, false)) {
        auto it = acc.find(k);
        if (it == acc.end())
          acc.emplace(k, e);
        else
          it->second += e;
      }
    for (auto& [k, e] : acc)
      if (!e.empty() && !A.is_zero(e))
        rep.fail("block " + to_string(a.states[i]) + " -> " + to_string(a.states[k]) + ": " + A.describe(e, &a.vars));
  }
  return rep;
}

}  // namespace

std::vector<DState> build_states(const TangleDiagram& t, std::size_t max_states) {
  check_right(t);
  Builder b(t);
  b.states(max_states);
  return b.d.states;
}

TypeDStructure build_delta_V(const TangleDiagram& t, std::size_t max_states) { return build(t, max_states, false, true); }
TypeDStructure build_Delta_T(const TangleDiagram& t, std::size_t max_states) { return build(t, max_states, true, false); }
TypeDStructure build_delta(const TangleDiagram& t, std::size_t max_states) { return build(t, max_states, true, true); }

Report verify_structure(const TypeDStructure& d) { return check_blocks(d, d, true, false); }

Report verify_anticommute(const TypeDStructure& a, const TypeDStructure& b) {
  if (a.states.size() != b.states.size()) throw Error(Err::BoundaryMismatch, "structures have different states");
  return check_blocks(a, b, false, true);
}

Report verify_grading(const TypeDStructure& d) {
  Algebra& A = d.alg();
  Report rep;
  for (int i = 0; i < static_cast<int>(d.states.size()); ++i)
    for (auto& [j, e] : d.delta[i]) {
      if (e.src != d.boundary[i] || e.tgt != d.boundary[j])
        rep.fail("block mismatch " + to_string(d.states[i]) + " -> " + to_string(d.states[j]));
      for (auto& [w, c] : e.terms) {
        if (w.size() > 1) rep.fail("word of length " + std::to_string(w.size()));
        if (A.zeta4(w) + d.zeta4[j] != d.zeta4[i] + 4)
          rep.fail("zeta " + to_string(d.states[i]) + " -> " + to_string(d.states[j]) + " via " + A.describe_word(w));
      }
    }
  return rep;
}

AlgebraElement substitute(const AlgebraElement& a, const Substitution& s) {
  AlgebraElement out(a.src, a.tgt);
  for (auto& [w, c] : a.terms) out.add(w, substitute(c, s));
  return out;
}

TypeDStructure transport(const TypeDStructure& d, const Substitution& s) { return transport(d, s, d.vars); }

TypeDStructure transport(const TypeDStructure& d, const Substitution& s, const VarRegistry& vars) {
  TypeDStructure out = d;
  out.vars = vars;
  for (auto& row : out.delta) {
    for (auto it = row.begin(); it != row.end();) {
      it->second = substitute(it->second, s);
      it = it->second.empty() ? row.erase(it) : std::next(it);
    }
  }
  return out;
}

// ---------------------------------------------------------------- morphisms

DMorphism identity_morphism(const TypeDStructure& d) {
  DMorphism f{&d, &d, std::vector<std::map<int, AlgebraElement>>(d.states.size()), 0};
  for (int i = 0; i < static_cast<int>(d.states.size()); ++i) f.map[i].emplace(i, d.alg().idempotent(d.boundary[i]));
  return f;
}

namespace {

using Row = std::map<int, AlgebraElement>;

void put(Row& acc, int k, const AlgebraElement& e) {
  if (e.empty()) return;
  auto it = acc.find(k);
  if (it == acc.end())
    acc.emplace(k, e);
  else {
    it->second += e;
    if (it->second.empty()) acc.erase(it);
  }
}

// Rows of mu2(I (x) g) f, i.e. first f then g.
Row follow(Algebra& A, const Row& f_row, const std::vector<Row>& g) {
  Row acc;
  for (auto& [j, a] : f_row)
    for (auto& [k, b] : g[j]) put(acc, k, A.multiply(a, b));
  return acc;
}

// mu2(I (x) delta') h + mu2(I (x) h) delta + mu1 h, per source state
Row boundary_row(Algebra& A, const DMorphism& h, int i) {
  Row acc = follow(A, h.map[i], h.to->delta);
  for (auto& [k, e] : follow(A, h.from->delta[i], h.map)) put(acc, k, e);
  for (auto& [j, a] : h.map[i]) put(acc, j, A.d_gamma(a));
  return acc;
}

bool long_words(const Row& r) {
  for (auto& [k, e] : r)
    if (e.max_length() > 2) return true;
  return false;
}

}  // namespace

Report verify_morphism(const DMorphism& psi) {
  Algebra& A = psi.from->alg();
  Report rep;
  for (int i = 0; i < static_cast<int>(psi.from->states.size()); ++i) {
    Row acc = boundary_row(A, psi, i);
    bool l3 = long_words(acc);
    for (auto& [k, e] : acc)
      if (!A.is_zero(e, l3))
        rep.fail("block " + to_string(psi.from->states[i]) + " -> " + to_string(psi.to->states[k]) + ": " +
                 A.describe(e, &psi.from->vars));
  }
  return rep;
}

DMorphism compose(const DMorphism& phi, const DMorphism& psi) {
  if (psi.to != phi.from) throw Error(Err::BoundaryMismatch, "morphisms do not compose");
  Algebra& A = psi.from->alg();
  DMorphism out{psi.from, phi.to, {}, psi.degree4 + phi.degree4};
  for (auto& row : psi.map) {
    Row r = follow(A, row, phi.map);
    for (auto it = r.begin(); it != r.end();) {
      if (it->second.max_length() == 2) {
        try {
          it->second = A.reduce_to_short(it->second);
        } catch (const Error& e) {
          if (e.kind() != Err::NeedsWordReduction) throw;
        }
      }
      it = it->second.empty() ? r.erase(it) : std::next(it);
    }
    out.map.push_back(std::move(r));
  }
  return out;
}

Report verify_homotopy(const DMorphism& psi, const DMorphism& phi, const DMorphism& h) {
  Algebra& A = psi.from->alg();
  Report rep;
  for (int i = 0; i < static_cast<int>(psi.from->states.size()); ++i) {
    Row acc = boundary_row(A, h, i);
    for (auto& [k, e] : psi.map[i]) put(acc, k, e);
    for (auto& [k, e] : phi.map[i]) put(acc, k, e);
    bool l3 = long_words(acc);
    for (auto& [k, e] : acc)
      if (!A.is_zero(e, l3))
        rep.fail("block " + to_string(psi.from->states[i]) + " -> " + to_string(psi.to->states[k]) + ": " +
                 A.describe(e, &psi.from->vars));
  }
  return rep;
}

bool equal_morphisms(const DMorphism& a, const DMorphism& b) {
  if (a.from != b.from || a.to != b.to) return false;
  Algebra& A = a.from->alg();
  for (std::size_t i = 0; i < a.map.size(); ++i) {
    Row acc = a.map[i];
    for (auto& [k, e] : b.map[i]) put(acc, k, e);
    bool l3 = long_words(acc);
    for (auto& [k, e] : acc)
      if (!A.is_zero(e, l3)) return false;
  }
  return true;
}

// ---------------------------------------------------------------- json

nlohmann::json to_json(const TypeDStructure& d) {
  Algebra& A = d.alg();
  nlohmann::json j;
  j["n"] = d.n;
  j["vars"] = d.vars.names();
  j["states"] = nlohmann::json::array();
  for (std::size_t i = 0; i < d.states.size(); ++i) {
    const auto& s = d.states[i];
    std::string dec;
    for (auto x : s.dec) dec += x > 0 ? '+' : '-';
    nlohmann::json terms = nlohmann::json::array();
    for (auto& [k, e] : d.delta[i])
      for (auto& [w, c] : e.terms) {
        std::string kind = w.empty() ? gen_kind_name(GenKind::Idempotent) : gen_kind_name(A.gen(w[0]).kind);
        terms.push_back({{"coeff", to_string(c, &d.vars)},
                         {"generator", w.empty() ? "I" : A.describe(w[0], false)},
                         {"kind", kind},
                         {"target", k}});
      }
    j["states"].push_back({{"id", i},
                           {"matching", to_string(s.m)},
                           {"rho", s.rho},
                           {"dec", dec},
                           {"boundary", A.describe(d.boundary[i])},
                           {"zeta", zeta_string(d.zeta4[i])},
                           {"terms", terms}});
  }
  return j;
}

}  // namespace kh
