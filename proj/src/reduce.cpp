#include "kh/reduce.hpp"

#include "state_space.hpp"

namespace kh {

namespace {

using Row = std::map<int, AlgebraElement>;

void put(Row& acc, int k, const AlgebraElement& e) {
  if (e.empty()) return;
  auto it = acc.find(k);
  if (it == acc.end()) {
    acc.emplace(k, e);
    return;
  }
  it->second += e;
  if (it->second.empty()) acc.erase(it);
}

AlgebraElement shorten(Algebra& A, const AlgebraElement& e) {
  return e.max_length() == 2 ? A.reduce_to_short(e) : e;
}

const AlgebraElement* entry(const TypeDStructure& d, int i, int j) {
  auto it = d.delta[i].find(j);
  return it == d.delta[i].end() ? nullptr : &it->second;
}

// Scalar c with a = c * idempotent, or zero.
RF pivot_scalar(const AlgebraElement* a) {
  if (!a || a->terms.size() != 1 || !a->terms.begin()->first.empty()) return RF();
  return a->terms.begin()->second;
}

TypeDStructure restrict_to(const TypeDStructure& d, const std::vector<int>& kept) {
  TypeDStructure r;
  r.n = d.n;
  r.vars = d.vars;
  for (int i : kept) {
    r.index[d.states[i]] = static_cast<int>(r.states.size());
    r.states.push_back(d.states[i]);
    r.boundary.push_back(d.boundary[i]);
    r.zeta4.push_back(d.zeta4[i]);
    r.n_cleaved.push_back(d.n_cleaved[i]);
    r.circle_key.push_back(d.circle_key[i]);
  }
  r.delta.assign(kept.size(), {});
  return r;
}

DMorphism sum(const DMorphism& a, const DMorphism& b) {
  DMorphism out = a;
  for (std::size_t i = 0; i < b.map.size(); ++i)
    for (auto& [k, e] : b.map[i]) put(out.map[i], k, e);
  return out;
}

bool has_free(const TypeDStructure& d, int i) { return d.n_cleaved[i] < static_cast<int>(d.states[i].dec.size()); }

}  // namespace

CancellationData cancel(std::shared_ptr<const TypeDStructure> dp, int x1, int x2) {
  const TypeDStructure& d = *dp;
  Algebra& A = d.alg();
  int N = static_cast<int>(d.states.size());
  if (x1 < 0 || x2 < 0 || x1 >= N || x2 >= N || x1 == x2) throw Error(Err::SchemaError, "bad cancellation pair");
  RF c = pivot_scalar(entry(d, x1, x2));
  if (c.is_zero())
    throw Error(Err::NonInvertiblePivot, to_string(d.states[x1]) + " -> " + to_string(d.states[x2]) +
                                             " is not a nonzero multiple of an idempotent");
  if (entry(d, x1, x1) || entry(d, x2, x2)) throw Error(Err::NonInvertiblePivot, "cancelled states have self terms");
  RF ci = c.inv();

  CancellationData out;
  out.original = dp;
  std::vector<int> pos(N, -1);
  for (int i = 0; i < N; ++i)
    if (i != x1 && i != x2) {
      pos[i] = static_cast<int>(out.kept.size());
      out.kept.push_back(i);
    }
  auto red = std::make_shared<TypeDStructure>(restrict_to(d, out.kept));
  int M = static_cast<int>(out.kept.size());

  // delta-bar(x_i) = sum_j (a_ij + a_i2 c^-1 a_1j) x_j
  for (int r = 0; r < M; ++r) {
    int i = out.kept[r];
    Row row;
    for (auto& [j, a] : d.delta[i])
      if (pos[j] >= 0) put(row, pos[j], a);
    if (const AlgebraElement* ai2 = entry(d, i, x2))
      for (auto& [j, a1j] : d.delta[x1])
        if (pos[j] >= 0) put(row, pos[j], A.multiply(*ai2, a1j).scaled(ci));
    // words that do not shorten are kept; they must be gone once the last pair is cancelled
    for (auto& [k, e] : row) {
      AlgebraElement s = e;
      if (e.max_length() == 2) {
        try {
          s = A.reduce_to_short(e);
        } catch (const Error& err) {
          if (err.kind() != Err::NeedsWordReduction) throw;
        }
      }
      if (s.max_length() > 2 || !A.is_zero(s)) red->delta[r].emplace(k, s);
    }
  }
  out.reduced = red;

  out.iota = DMorphism{red.get(), dp.get(), std::vector<Row>(M), 0};
  for (int r = 0; r < M; ++r) {
    int i = out.kept[r];
    put(out.iota.map[r], i, A.idempotent(d.boundary[i]));
    if (const AlgebraElement* ai2 = entry(d, i, x2)) put(out.iota.map[r], x1, ai2->scaled(ci));
  }
  out.pi = DMorphism{dp.get(), red.get(), std::vector<Row>(N), 0};
  for (int i = 0; i < N; ++i)
    if (pos[i] >= 0) put(out.pi.map[i], pos[i], A.idempotent(d.boundary[i]));
  for (auto& [j, a1j] : d.delta[x1])
    if (pos[j] >= 0) put(out.pi.map[x2], pos[j], a1j.scaled(ci));
  out.H = DMorphism{dp.get(), dp.get(), std::vector<Row>(N), -4};
  put(out.H.map[x2], x1, A.idempotent(d.boundary[x2]).scaled(ci));
  return out;
}

CancellationData cancel(const TypeDStructure& d, int x1, int x2) {
  return cancel(std::make_shared<const TypeDStructure>(d), x1, x2);
}

CancellationData reduce_free_circles(const TypeDStructure& d, std::vector<CancellationData>* steps, bool reverse_order) {
  auto orig = std::make_shared<const TypeDStructure>(d);
  CancellationData total;
  total.original = orig;
  total.reduced = orig;
  for (int i = 0; i < static_cast<int>(d.states.size()); ++i) total.kept.push_back(i);
  total.iota = identity_morphism(*orig);
  total.pi = identity_morphism(*orig);
  total.H = DMorphism{orig.get(), orig.get(), std::vector<Row>(d.states.size()), -4};
  for (;;) {
    const TypeDStructure& cur = *total.reduced;
    int N = static_cast<int>(cur.states.size());
    int x = -1;
    for (int k = 0; k < N; ++k) {
      int i = reverse_order ? N - 1 - k : k;
      if (has_free(cur, i)) {
        x = i;
        break;
      }
    }
    if (x < 0) break;
    // pair on the first free circle: + side is x1
    int f = cur.n_cleaved[x];
    DState other = cur.states[x];
    other.dec[f] = -other.dec[f];
    int y = cur.find(other);
    if (y < 0) throw Error(Err::SchemaError, "no partner for " + to_string(cur.states[x]));
    int x1 = cur.states[x].dec[f] > 0 ? x : y;
    int x2 = x1 == x ? y : x;
    CancellationData step = cancel(total.reduced, x1, x2);

    std::vector<int> kept;
    for (int k : step.kept) kept.push_back(total.kept[k]);
    total.kept = kept;
    // H_total = H_old + iota_old * H_step * pi_old
    if (total.has_homotopy) {
      try {
        total.H = sum(total.H, compose(total.iota, compose(step.H, total.pi)));
      } catch (const Error& e) {
        if (e.kind() != Err::NeedsWordReduction && e.kind() != Err::WordTooLong) throw;
        total.has_homotopy = false;
        total.H = DMorphism{};
      }
    }
    total.iota = compose(total.iota, step.iota);
    total.pi = compose(step.pi, total.pi);
    total.reduced = step.reduced;
    if (steps) steps->push_back(std::move(step));
  }
  for (std::size_t i = 0; i < total.reduced->delta.size(); ++i)
    for (auto& [j, e] : total.reduced->delta[i])
      if (e.max_length() > 1)
        throw Error(Err::NeedsWordReduction, to_string(total.reduced->states[i]) + " -> " +
                                                 to_string(total.reduced->states[j]) + " keeps a long word");
  return total;
}

TypeDStructure closed_form(const TangleDiagram& t, std::size_t max_states) {
  if (t.side != Side::Right) throw Error(Err::BoundaryMismatch, "type D structures are built from right tangles");
  detail::StateSpace S(t);
  S.build(0);
  Algebra& A = algebra(t.n);
  std::vector<int> kept;
  for (int i = 0; i < static_cast<int>(S.states.size()); ++i)
    if (S.n_cleaved[i] == static_cast<int>(S.states[i].dec.size())) kept.push_back(i);
  if (max_states && kept.size() > max_states)
    throw Error(Err::StateBudgetExceeded, "more than " + std::to_string(max_states) + " states");

  TypeDStructure full;
  full.n = t.n;
  full.vars = t.vars;
  full.states = S.states;
  full.boundary = S.boundary;
  full.zeta4 = S.zeta4;
  full.n_cleaved = S.n_cleaved;
  full.circle_key = S.circle_key;
  TypeDStructure d = restrict_to(full, kept);
  int nc = t.num_crossings();

  auto free_weight = [&](const CircleSet& cs) -> const Polynomial* {
    if (cs.n_cleaved == static_cast<int>(cs.circles.size())) return nullptr;
    return &cs.circles[cs.n_cleaved].weight;
  };

  for (int r = 0; r < static_cast<int>(kept.size()); ++r) {
    const DState& s = d.states[r];
    LinkId L = d.boundary[r];
    const CircleSet& cs = S.circles(s.m, s.rho);
    auto sig = signatures(cs);
    auto add = [&](const DState& to, const AlgebraElement& a) {
      int j = d.find(to);
      if (j < 0) throw Error(Err::SchemaError, "closed form leaves the free-circle-free states");
      put(d.delta[r], j, a);
    };
    // bridge terms: sites that move the boundary matching
    for (const auto& site : cs.sites) {
      if (!site.active) continue;
      SurgeryOutcome out = surger_circles(t, S.res[s.rho], cs, site, s.m);
      if (out.effect != BoundaryEffect::ChangesMatching) continue;
      for (auto& nd : transfer_decorations(sig, s.dec, signatures(out.circles), out.circles.marked)) {
        DState to{s.m, out.resolved.rho, nd};
        add(to, A.element(S.connect(L, S.boundary[S.target(to)], out)));
      }
    }
    for (auto& g : bridge_classes(s.m, Side::Left)) {
      PlanarMatching m2 = surger_matching(s.m, g).result;
      const CircleSet& cs2 = S.circles(m2, s.rho);
      for (auto& nd : transfer_decorations(sig, s.dec, signatures(cs2), cs2.marked)) {
        DState to{m2, s.rho, nd};
        add(to, A.element(A.bridge(L, S.boundary[S.target(to)], g)));
      }
    }
    // (l e_C + w_C r e_C) per + circle
    for (int c = 0; c < cs.n_cleaved; ++c) {
      if (s.dec[c] < 0) continue;
      DState to = s;
      to.dec[c] = -1;
      AlgebraElement a = A.element(A.dec(GenKind::LeftDec, L, c));
      RF w(cs.circles[c].weight);
      if (!w.is_zero()) a += A.element(A.dec(GenKind::RightDec, L, c), w);
      add(to, a);
    }
    // idempotent terms across two crossings where a free circle appears and is absorbed
    for (int c1 = 0; c1 < nc; ++c1)
      for (int c2 = c1 + 1; c2 < nc; ++c2) {
        ResolutionMask b1 = ResolutionMask(1) << c1, b2 = ResolutionMask(1) << c2;
        if ((s.rho & b1) || (s.rho & b2)) continue;
        ResolutionMask r2 = s.rho | b1 | b2;
        const CircleSet& top = S.circles(s.m, r2);
        if (top.n_cleaved != static_cast<int>(top.circles.size())) continue;
        RF coeff;
        for (ResolutionMask mid : {s.rho | b1, s.rho | b2})
          if (const Polynomial* w = free_weight(S.circles(s.m, mid))) coeff = coeff + RF(*w).inv();
        if (coeff.is_zero()) continue;
        DState to{s.m, r2, s.dec};
        int j = d.find(to);
        if (j < 0 || d.boundary[j] != L) continue;
        put(d.delta[r], j, A.idempotent(L).scaled(coeff));
      }
  }
  return d;
}

bool equivalent(const TypeDStructure& a, const TypeDStructure& b, std::string* why) {
  auto fail = [&](const std::string& s) {
    if (why) *why = s;
    return false;
  };
  if (a.n != b.n) return fail("different n");
  if (a.states.size() != b.states.size()) return fail("different state counts");
  Algebra& A = a.alg();
  for (int i = 0; i < static_cast<int>(a.states.size()); ++i) {
    int bi = b.find(a.states[i]);
    if (bi < 0) return fail("state " + to_string(a.states[i]) + " missing");
    Row acc;
    for (auto& [j, e] : a.delta[i]) put(acc, j, e);
    for (auto& [j, e] : b.delta[bi]) {
      int aj = a.find(b.states[j]);
      if (aj < 0) return fail("state " + to_string(b.states[j]) + " missing");
      put(acc, aj, e);
    }
    for (auto& [j, e] : acc)
      if (!A.is_zero(e))
        return fail(to_string(a.states[i]) + " -> " + to_string(a.states[j]) + ": " + A.describe(e, &a.vars));
  }
  return true;
}

nlohmann::json to_json(const DMorphism& f) {
  Algebra& A = f.from->alg();
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < f.map.size(); ++i) {
    nlohmann::json terms = nlohmann::json::array();
    for (auto& [j, e] : f.map[i])
      terms.push_back({{"target", j}, {"coeff", A.describe(e, &f.from->vars)}});
    rows.push_back({{"source", i}, {"terms", terms}});
  }
  return rows;
}

nlohmann::json to_json(const CancellationData& c) {
  nlohmann::json j = to_json(*c.reduced);
  j["kept"] = c.kept;
  j["iota"] = to_json(c.iota);
  j["pi"] = to_json(c.pi);
  if (c.has_homotopy) j["H"] = to_json(c.H);
  return j;
}

}  // namespace kh
