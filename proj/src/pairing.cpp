#include "kh/pairing.hpp"

#include <algorithm>
#include <numeric>

namespace kh {

int ChainComplex::find(const std::string& key) const {
  auto it = std::find(keys.begin(), keys.end(), key);
  return it == keys.end() ? -1 : static_cast<int>(it - keys.begin());
}

VarRegistry merge_registries(const VarRegistry& left, const VarRegistry& right) {
  VarRegistry out;
  for (auto& n : left.names()) out.add(n);
  for (auto& n : right.names()) out.add(n);
  return out;
}

namespace {

Substitution shift(std::size_t count, std::size_t by) {
  Substitution s;
  for (std::size_t v = 0; v < count; ++v) s.set(static_cast<Var>(v), Polynomial::var(static_cast<Var>(v + by)));
  return s;
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

std::string make_key(ResolutionMask rl, ResolutionMask rr, std::vector<std::pair<std::string, int8_t>> circles) {
  std::sort(circles.begin(), circles.end());
  std::string s = std::to_string(rl) + "/" + std::to_string(rr) + ":";
  for (auto& [k, d] : circles) s += k + (d > 0 ? "+" : "-") + ",";
  return s;
}

std::string circle_name(int key, char side) {
  return key > 0 ? "p" + std::to_string(key) : std::string(1, side) + std::to_string(-key - 1);
}

}  // namespace

ChainComplex box_tensor(const TypeAStructure& a, const TypeDStructure& d) {
  if (a.n != d.n) throw Error(Err::BoundaryMismatch, "type A and type D structures have different n");
  ChainComplex c;
  c.vars = merge_registries(a.vars, d.vars);
  Substitution sh = shift(d.vars.size(), a.vars.size());
  std::map<std::pair<int, int>, int> index;
  std::map<LinkId, std::vector<int>> a_by_link;
  for (int x = 0; x < static_cast<int>(a.states.size()); ++x) a_by_link[a.boundary[x]].push_back(x);
  for (int y = 0; y < static_cast<int>(d.states.size()); ++y) {
    auto it = a_by_link.find(d.boundary[y]);
    if (it == a_by_link.end()) continue;
    for (int x : it->second) {
      index[{x, y}] = static_cast<int>(c.zeta4.size());
      c.zeta4.push_back(a.zeta4[x] + d.zeta4[y]);
      std::vector<std::pair<std::string, int8_t>> circles;
      const auto& xs = a.states[x];
      const auto& ys = d.states[y];
      for (std::size_t k = 0; k < xs.dec.size(); ++k) circles.emplace_back(circle_name(a.circle_key[x][k], 'l'), xs.dec[k]);
      for (std::size_t k = d.n_cleaved[y]; k < ys.dec.size(); ++k)
        circles.emplace_back(circle_name(d.circle_key[y][k], 'r'), ys.dec[k]);
      c.keys.push_back(make_key(xs.rho, ys.rho, circles));
    }
  }
  if (c.zeta4.empty()) throw Error(Err::BoundaryMismatch, "no generators with matching boundaries");
  c.d.assign(c.zeta4.size(), {});
  for (auto& [xy, i] : index) {
    auto [x, y] = xy;
    for (auto& [x2, coef] : a.m1[x]) add_to(c.d[i], index.at({x2, y}), coef);
    for (auto& [y2, e] : d.delta[y]) {
      AlgebraElement es = substitute(e, sh);
      for (auto& [x2, coef] : act(a, StateVec{{x, RF::one()}}, es)) add_to(c.d[i], index.at({x2, y2}), coef);
    }
  }
  return c;
}

// ---------------------------------------------------------------- oracle

namespace {

struct Glued {
  const TangleDiagram& l;
  const TangleDiagram& r;
  int arcs, kl, k;
  std::vector<Polynomial> weight;

  Glued(const TangleDiagram& left, const TangleDiagram& right, const Substitution& sh)
      : l(left), r(right), arcs(left.num_arcs + right.num_arcs), kl(left.num_crossings()),
        k(left.num_crossings() + right.num_crossings()) {
    weight = left.arc_weight;
    for (auto& w : right.arc_weight) weight.push_back(sh.apply(w));
  }

  // Circles as sorted global arc lists, ordered by smallest arc.
  std::vector<std::vector<int>> circles(ResolutionMask rho) const {
    std::vector<int> parent(arcs);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int a) {
      while (parent[a] != a) a = parent[a] = parent[parent[a]];
      return a;
    };
    auto unite = [&](int a, int b) { parent[find(a)] = find(b); };
    for (int c = 0; c < k; ++c) {
      const TangleDiagram& t = c < kl ? l : r;
      int local = c < kl ? c : c - kl;
      int off = c < kl ? 0 : l.num_arcs;
      bool one = (rho >> c) & 1;
      bool identity = t.crossings[local].over_pos != one;
      const auto& pa = t.port_arc[local];
      if (identity) {
        unite(off + pa[InLo], off + pa[OutLo]);
        unite(off + pa[InHi], off + pa[OutHi]);
      } else {
        unite(off + pa[InLo], off + pa[InHi]);
        unite(off + pa[OutLo], off + pa[OutHi]);
      }
    }
    for (int p = 1; p <= 2 * l.n; ++p) unite(l.point_arc[p], l.num_arcs + r.point_arc[p]);
    std::map<int, std::vector<int>> groups;
    for (int a = 0; a < arcs; ++a) groups[find(a)].push_back(a);
    std::vector<std::vector<int>> out;
    for (auto& [root, g] : groups) out.push_back(g);
    std::sort(out.begin(), out.end());
    return out;
  }

  int marked(const std::vector<std::vector<int>>& cs) const {
    int a = l.point_arc[2 * l.n];
    for (std::size_t i = 0; i < cs.size(); ++i)
      if (std::binary_search(cs[i].begin(), cs[i].end(), a)) return static_cast<int>(i);
    return -1;
  }

  std::string name(const std::vector<int>& circle) const {
    int best = 1 << 30;
    for (int p = 1; p <= 2 * l.n; ++p)
      if (std::binary_search(circle.begin(), circle.end(), l.point_arc[p])) best = std::min(best, p);
    if (best < (1 << 30)) return "p" + std::to_string(best);
    int a = circle.front();
    return a < l.num_arcs ? "l" + std::to_string(a) : "r" + std::to_string(a - l.num_arcs);
  }
};

}  // namespace

ChainComplex twisted_khovanov(const TangleDiagram& left, const TangleDiagram& right, std::size_t max_states) {
  if (left.side != Side::Left || right.side != Side::Right) throw Error(Err::BoundaryMismatch, "need a left and a right tangle");
  if (left.n != right.n) throw Error(Err::BoundaryMismatch, "tangles have different n");
  ChainComplex c;
  c.vars = merge_registries(left.vars, right.vars);
  Glued g(left, right, shift(right.vars.size(), left.vars.size()));
  if (g.k > 24) throw Error(Err::StateBudgetExceeded, "too many crossings");
  int np = left.n_plus() + right.n_plus();
  ResolutionMask lowmask = (ResolutionMask{1} << g.kl) - 1;

  struct Level {
    std::vector<std::vector<int>> circles;
    int marked;
  };
  std::vector<Level> levels;
  std::map<std::pair<ResolutionMask, Decoration>, int> index;
  std::vector<std::pair<ResolutionMask, Decoration>> gens;
  for (ResolutionMask rho = 0; rho < (ResolutionMask{1} << g.k); ++rho) {
    auto cs = g.circles(rho);
    int m = g.marked(cs);
    levels.push_back({cs, m});
    int nc = static_cast<int>(cs.size());
    for (uint64_t mask = 0; mask < (uint64_t{1} << nc); ++mask) {
      if ((mask >> m) & 1) continue;
      Decoration dec(nc);
      int f = 0;
      std::vector<std::pair<std::string, int8_t>> named;
      for (int i = 0; i < nc; ++i) {
        dec[i] = ((mask >> i) & 1) ? 1 : -1;
        if (i != m) f += dec[i];
        named.emplace_back(g.name(cs[i]), dec[i]);
      }
      index[{rho, dec}] = static_cast<int>(gens.size());
      gens.emplace_back(rho, dec);
      c.zeta4.push_back(2 * __builtin_popcount(rho) - 2 * f - 2 * np);
      c.keys.push_back(make_key(rho & lowmask, rho >> g.kl, named));
      if (max_states && gens.size() > max_states)
        throw Error(Err::StateBudgetExceeded, "more than " + std::to_string(max_states) + " states");
    }
  }
  c.d.assign(gens.size(), {});
  for (std::size_t i = 0; i < gens.size(); ++i) {
    auto [rho, dec] = gens[i];
    const Level& L = levels[rho];
    // vertical part: every + circle (never the marked one)
    for (std::size_t ci = 0; ci < L.circles.size(); ++ci) {
      if (dec[ci] < 0) continue;
      Polynomial w;
      for (int a : L.circles[ci]) w += g.weight[a];
      Decoration nd = dec;
      nd[ci] = -1;
      add_to(c.d[i], index.at({rho, nd}), RF(w));
    }
    // Khovanov part
    for (int cr = 0; cr < g.k; ++cr) {
      if ((rho >> cr) & 1) continue;
      ResolutionMask r2 = rho | (ResolutionMask{1} << cr);
      const Level& M = levels[r2];
      std::vector<int> gone, kept_from(M.circles.size(), -1), fresh;
      for (std::size_t a = 0; a < L.circles.size(); ++a) {
        auto it = std::find(M.circles.begin(), M.circles.end(), L.circles[a]);
        if (it == M.circles.end())
          gone.push_back(static_cast<int>(a));
        else
          kept_from[it - M.circles.begin()] = static_cast<int>(a);
      }
      for (std::size_t b = 0; b < M.circles.size(); ++b)
        if (kept_from[b] < 0) fresh.push_back(static_cast<int>(b));
      Decoration base(M.circles.size(), -1);
      for (std::size_t b = 0; b < M.circles.size(); ++b)
        if (kept_from[b] >= 0) base[b] = dec[kept_from[b]];
      std::vector<Decoration> outs;
      if (gone.size() == 2 && fresh.size() == 1) {
        int x = dec[gone[0]], y = dec[gone[1]];
        if (x > 0 || y > 0) {
          base[fresh[0]] = (x > 0 && y > 0) ? 1 : -1;
          outs.push_back(base);
        }
      } else if (gone.size() == 1 && fresh.size() == 2) {
        if (dec[gone[0]] > 0) {
          auto d1 = base, d2 = base;
          d1[fresh[0]] = 1, d1[fresh[1]] = -1;
          d2[fresh[0]] = -1, d2[fresh[1]] = 1;
          outs = {d1, d2};
        } else {
          base[fresh[0]] = base[fresh[1]] = -1;
          outs.push_back(base);
        }
      } else {
        throw Error(Err::SchemaError, "oracle: a smoothing change is neither a merge nor a divide");
      }
      for (auto& nd : outs)
        if (nd[M.marked] < 0) add_to(c.d[i], index.at({r2, nd}), RF::one());
    }
  }
  return c;
}

// ---------------------------------------------------------------- checks

Report verify_complex(const ChainComplex& c) {
  Report rep;
  for (std::size_t i = 0; i < c.size(); ++i) {
    StateVec sq;
    for (auto& [j, x] : c.d[i]) {
      if (c.zeta4[j] != c.zeta4[i] + 4) rep.fail("zeta " + c.keys[i] + " -> " + c.keys[j]);
      for (auto& [k, y] : c.d[j]) add_to(sq, k, x * y);
    }
    for (auto& [k, x] : sq) rep.fail("d^2 " + c.keys[i] + " -> " + c.keys[k] + ": " + to_string(x, &c.vars));
  }
  return rep;
}

bool compare(const ChainComplex& a, const ChainComplex& b, std::string* why) {
  auto fail = [&](const std::string& s) {
    if (why) *why = s;
    return false;
  };
  if (a.size() != b.size())
    return fail("generator counts " + std::to_string(a.size()) + " vs " + std::to_string(b.size()));
  if (a.vars.names() != b.vars.names()) return fail("variable registries differ");
  std::map<std::string, int> bi;
  for (std::size_t j = 0; j < b.size(); ++j) bi[b.keys[j]] = static_cast<int>(j);
  std::vector<int> to(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    auto it = bi.find(a.keys[i]);
    if (it == bi.end()) return fail("no partner for " + a.keys[i]);
    to[i] = it->second;
    if (a.zeta4[i] != b.zeta4[to[i]]) return fail("zeta differs at " + a.keys[i]);
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    StateVec mapped;
    for (auto& [j, x] : a.d[i]) mapped.emplace(to[j], x);
    const StateVec& other = b.d[to[i]];
    if (mapped.size() != other.size()) return fail("differential support differs at " + a.keys[i]);
    for (auto& [j, x] : mapped) {
      auto it = other.find(j);
      if (it == other.end() || !(it->second == x)) return fail("coefficient differs at " + a.keys[i] + " -> " + b.keys[j]);
    }
  }
  return true;
}

std::map<int, std::size_t> homology_ranks(const ChainComplex& c, const RankOptions& opt) {
  std::map<int, std::vector<int>> by_degree;
  for (std::size_t i = 0; i < c.size(); ++i) by_degree[c.zeta4[i]].push_back(static_cast<int>(i));
  // rank of the differential leaving each degree
  std::map<int, std::size_t> out_rank;
  for (auto& [z, src] : by_degree) {
    auto it = by_degree.find(z + 4);
    if (it == by_degree.end()) continue;
    std::map<int, int> col;
    for (std::size_t k = 0; k < it->second.size(); ++k) col[it->second[k]] = static_cast<int>(k);
    Matrix m(src.size(), std::vector<RF>(it->second.size(), RF()));
    bool any = false;
    for (std::size_t r = 0; r < src.size(); ++r)
      for (auto& [j, x] : c.d[src[r]]) {
        m[r][col.at(j)] = x;
        any = true;
      }
    out_rank[z] = any ? rank(m, opt) : 0;
  }
  std::map<int, std::size_t> ranks;
  for (auto& [z, src] : by_degree) {
    std::size_t r = src.size() - out_rank[z] - (out_rank.count(z - 4) ? out_rank[z - 4] : 0);
    if (r) ranks[z] = r;
  }
  return ranks;
}

nlohmann::json to_json(const ChainComplex& c) {
  nlohmann::json j;
  j["generators"] = nlohmann::json::array();
  j["differential"] = nlohmann::json::array();
  for (std::size_t i = 0; i < c.size(); ++i) {
    j["generators"].push_back({{"id", i}, {"zeta", zeta_string(c.zeta4[i])}, {"key", c.keys[i]}});
    for (auto& [k, x] : c.d[i]) j["differential"].push_back({{"from", i}, {"to", k}, {"coeff", to_string(x, &c.vars)}});
  }
  return j;
}

nlohmann::json ranks_json(const std::map<int, std::size_t>& ranks) {
  nlohmann::json j = nlohmann::json::object();
  for (auto& [z, r] : ranks) j[zeta_string(z)] = r;
  return j;
}

}  // namespace kh
