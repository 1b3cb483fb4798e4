#include "kh/cleaved.hpp"

#include <algorithm>
#include <cassert>
#include <set>
#include <sstream>

namespace kh {

const char* gen_kind_name(GenKind k) {
  switch (k) {
    case GenKind::Idempotent: return "idempotent";
    case GenKind::RightDec: return "right-dec";
    case GenKind::LeftDec: return "left-dec";
    case GenKind::RightBridge: return "right-bridge";
    case GenKind::LeftBridge: return "left-bridge";
  }
  return "?";
}

int gen_zeta4(GenKind k) {
  switch (k) {
    case GenKind::Idempotent: return 0;
    case GenKind::RightDec:
    case GenKind::LeftDec: return 2;
    case GenKind::RightBridge: return 1;
    case GenKind::LeftBridge: return 3;
  }
  return 0;
}

// ---------------------------------------------------------------- elements

void AlgebraElement::add(const Word& w, const RF& c) {
  if (c.is_zero()) return;
  auto it = terms.find(w);
  if (it == terms.end()) {
    terms.emplace(w, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms.erase(it);
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& o) {
  if (o.empty()) return *this;
  if (empty()) src = o.src, tgt = o.tgt;
  if (src != o.src || tgt != o.tgt) throw Error(Err::BoundaryMismatch, "adding elements of different blocks");
  for (auto& [w, c] : o.terms) add(w, c);
  return *this;
}

AlgebraElement AlgebraElement::scaled(const RF& c) const {
  AlgebraElement r(src, tgt);
  if (c.is_zero()) return r;
  for (auto& [w, x] : terms) r.terms.emplace(w, x * c);
  return r;
}

std::size_t AlgebraElement::max_length() const {
  std::size_t m = 0;
  for (auto& [w, c] : terms) m = std::max(m, w.size());
  return m;
}

bool AlgebraElement::operator==(const AlgebraElement& o) const {
  if (empty() && o.empty()) return true;
  return src == o.src && tgt == o.tgt && terms == o.terms;
}

// ---------------------------------------------------------------- links

Algebra::Algebra(int n) : n_(n) {}
Algebra::~Algebra() = default;

LinkId Algebra::find(const PlanarMatching& left, const PlanarMatching& right, const Decoration& sigma) const {
  auto it = link_index_.find(Key{left.partner, right.partner, sigma});
  return it == link_index_.end() ? -1 : it->second;
}

LinkId Algebra::intern(const PlanarMatching& left, const PlanarMatching& right, const Decoration& sigma) {
  LinkId f = find(left, right, sigma);
  if (f >= 0) return f;
  if (left.n() != n_ || right.n() != n_) throw Error(Err::BoundaryMismatch, "link has the wrong number of points");
  DecoratedLink L{left, right, sigma, link_circles(left, right)};
  if (sigma.size() != L.circles.points.size()) throw Error(Err::SchemaError, "decoration size mismatch");
  if (sigma[L.circles.marked] > 0) throw Error(Err::SchemaError, "marked circle decorated +");
  LinkId id = static_cast<LinkId>(links_.size());
  links_.push_back(std::move(L));
  link_index_[Key{left.partner, right.partner, sigma}] = id;
  return id;
}

std::vector<LinkId> Algebra::enumerate_links() {
  std::vector<LinkId> out;
  auto ms = enumerate_matchings(n_);
  for (auto& l : ms)
    for (auto& r : ms) {
      auto lc = link_circles(l, r);
      int k = static_cast<int>(lc.points.size());
      for (int mask = 0; mask < (1 << k); ++mask) {
        if ((mask >> lc.marked) & 1) continue;
        Decoration s(k);
        for (int c = 0; c < k; ++c) s[c] = ((mask >> c) & 1) ? 1 : -1;
        out.push_back(intern(l, r, s));
      }
    }
  return out;
}

LinkId Algebra::flip(LinkId l, int c) {
  DecoratedLink L = links_.at(l);
  L.sigma[c] = -L.sigma[c];
  return intern(L.left, L.right, L.sigma);
}

// ---------------------------------------------------------------- generators

const std::vector<GenId>& Algebra::generators_from(LinkId l) {
  auto it = from_.find(l);
  if (it != from_.end()) return it->second;
  const DecoratedLink L = links_.at(l);
  std::vector<GenId> out;
  auto reg = [&](Generator g) {
    auto key = std::make_tuple(static_cast<int>(g.kind), g.src, g.tgt, g.circle, g.bridge.a, g.bridge.b);
    auto f = gen_index_.find(key);
    if (f != gen_index_.end()) {
      out.push_back(f->second);
      return;
    }
    GenId id = static_cast<GenId>(gens_.size());
    gens_.push_back(g);
    gen_index_[key] = id;
    out.push_back(id);
  };
  for (int c = 0; c < static_cast<int>(L.sigma.size()); ++c) {
    if (L.sigma[c] < 0) continue;
    LinkId t = flip(l, c);
    reg(Generator{GenKind::RightDec, l, t, c, {}});
    reg(Generator{GenKind::LeftDec, l, t, c, {}});
  }
  std::vector<std::vector<int>> from_sig;
  for (auto& pts : L.circles.points) from_sig.push_back(pts);
  for (Side side : {Side::Left, Side::Right}) {
    const PlanarMatching& m = side == Side::Left ? L.left : L.right;
    for (auto& g : bridge_classes(m, side)) {
      auto s = surger_matching(m, g);
      PlanarMatching nl = side == Side::Left ? s.result : L.left;
      PlanarMatching nr = side == Side::Left ? L.right : s.result;
      auto lc = link_circles(nl, nr);
      for (auto& d : transfer_decorations(from_sig, L.sigma, lc.points, lc.marked)) {
        LinkId t = intern(nl, nr, d);
        reg(Generator{side == Side::Left ? GenKind::LeftBridge : GenKind::RightBridge, l, t, -1, g});
      }
    }
  }
  return from_[l] = out;
}

GenId Algebra::dec(GenKind kind, LinkId src, int circle) {
  generators_from(src);
  LinkId t = flip(src, circle);
  auto it = gen_index_.find(std::make_tuple(static_cast<int>(kind), src, t, circle, 0, 0));
  if (it == gen_index_.end()) throw Error(Err::SchemaError, "no decoration generator on a - circle");
  return it->second;
}

GenId Algebra::bridge(LinkId src, LinkId tgt, const BridgeClass& g) {
  generators_from(src);
  GenKind k = g.side == Side::Left ? GenKind::LeftBridge : GenKind::RightBridge;
  auto it = gen_index_.find(std::make_tuple(static_cast<int>(k), src, tgt, -1, g.a, g.b));
  return it == gen_index_.end() ? -1 : it->second;
}

std::vector<GenId> Algebra::bridge_gens(LinkId l, const BridgeClass& g) {
  std::vector<GenId> out;
  for (GenId id : generators_from(l)) {
    const auto& x = gens_[id];
    if (is_bridge(x.kind) && x.bridge == g) out.push_back(id);
  }
  return out;
}

int Algebra::zeta4(const Word& w) const {
  int z = 0;
  for (GenId g : w) z += gen_zeta4(gens_.at(g).kind);
  return z;
}

std::vector<int> Algebra::support(LinkId l, const BridgeClass& g) const {
  const auto& L = links_.at(l);
  const PlanarMatching& m = g.side == Side::Left ? L.left : L.right;
  std::set<int> cs = {L.circles.circle_of[g.a], L.circles.circle_of[m.partner[g.a]], L.circles.circle_of[g.b],
                      L.circles.circle_of[m.partner[g.b]]};
  return {cs.begin(), cs.end()};
}

int Algebra::same_circle(LinkId l1, int c, LinkId l2) const {
  const auto& pts = links_.at(l1).circles.points[c];
  const auto& L2 = links_.at(l2);
  int k = L2.circles.circle_of[pts[0]];
  return L2.circles.points[k] == pts ? k : -1;
}

AlgebraElement Algebra::idempotent(LinkId l) const {
  AlgebraElement e(l, l);
  e.terms.emplace(Word{}, RF::one());
  return e;
}

AlgebraElement Algebra::element(GenId g, const RF& c) const {
  const auto& x = gens_.at(g);
  AlgebraElement e(x.src, x.tgt);
  e.add(Word{g}, c);
  return e;
}

AlgebraElement Algebra::multiply(const AlgebraElement& a, const AlgebraElement& b) const {
  AlgebraElement r(a.src, b.tgt);
  if (a.empty() || b.empty() || a.tgt != b.src) return r;
  for (auto& [wa, ca] : a.terms)
    for (auto& [wb, cb] : b.terms) {
      Word w = wa;
      w.insert(w.end(), wb.begin(), wb.end());
      r.add(w, ca * cb);
    }
  return r;
}

// ---------------------------------------------------------------- differential

AlgebraElement Algebra::d_gamma(GenId g) {
  const Generator x = gens_.at(g);
  AlgebraElement out(x.src, x.tgt);
  if (x.kind != GenKind::LeftDec) return out;
  const DecoratedLink L = links_.at(x.src);
  for (auto& gamma : bridge_classes(L.left, Side::Left)) {
    auto sup = support(x.src, gamma);
    if (std::find(sup.begin(), sup.end(), x.circle) == sup.end()) continue;
    BridgeClass dagger = surger_matching(L.left, gamma).cocore;
    for (GenId g1 : bridge_gens(x.src, gamma))
      for (GenId g2 : bridge_gens(gens_[g1].tgt, dagger))
        if (gens_[g2].tgt == x.tgt) out.add(Word{g1, g2}, RF::one());
  }
  return out;
}

AlgebraElement Algebra::d_gamma(const Word& w, LinkId src) {
  LinkId tgt = w.empty() ? src : gens_.at(w.back()).tgt;
  AlgebraElement out(src, tgt);
  for (std::size_t i = 0; i < w.size(); ++i) {
    AlgebraElement d = d_gamma(w[i]);
    if (d.empty()) continue;
    Word pre(w.begin(), w.begin() + static_cast<long>(i)), post(w.begin() + static_cast<long>(i) + 1, w.end());
    for (auto& [dw, c] : d.terms) {
      Word full = pre;
      full.insert(full.end(), dw.begin(), dw.end());
      full.insert(full.end(), post.begin(), post.end());
      out.add(full, c);
    }
  }
  return out;
}

AlgebraElement Algebra::d_gamma(const AlgebraElement& a) {
  AlgebraElement out(a.src, a.tgt);
  for (auto& [w, c] : a.terms) out += d_gamma(w, a.src).scaled(c);
  return out;
}

// ---------------------------------------------------------------- relations

const std::map<LinkId, std::vector<Word>>& Algebra::words_from(LinkId src) {
  auto it = word_cache_.find(src);
  if (it != word_cache_.end()) return it->second;
  std::map<LinkId, std::vector<Word>> out;
  out[src].push_back(Word{});
  std::vector<GenId> first = generators_from(src);
  for (GenId g1 : first) {
    out[gens_[g1].tgt].push_back(Word{g1});
    std::vector<GenId> second = generators_from(gens_[g1].tgt);
    for (GenId g2 : second) out[gens_[g2].tgt].push_back(Word{g1, g2});
  }
  return word_cache_[src] = std::move(out);
}

const std::vector<Word>& Algebra::words(LinkId src, LinkId tgt) {
  const auto& m = words_from(src);
  auto it = m.find(tgt);
  return it == m.end() ? no_words_ : it->second;
}

const std::map<LinkId, std::vector<Relation>>& Algebra::relations_from(LinkId l) {
  auto cached = rel_cache_.find(l);
  if (cached != rel_cache_.end()) return cached->second;

  std::map<LinkId, std::set<Relation>> acc;
  auto target = [&](const Word& w) { return gens_[w.back()].tgt; };
  auto emit = [&](std::vector<Word> ws) {
    std::sort(ws.begin(), ws.end());
    Relation r;
    for (std::size_t i = 0; i < ws.size();) {
      std::size_t j = i;
      while (j < ws.size() && ws[j] == ws[i]) ++j;
      if ((j - i) % 2) r.push_back(ws[i]);
      i = j;
    }
    if (r.empty()) return;
    acc[target(r.front())].insert(r);
  };
  // all two-step paths from l, grouped by final link
  using Path = std::pair<BridgeClass, Word>;
  auto two_step = [&](const BridgeClass& first, const BridgeClass& second, std::map<LinkId, std::vector<Path>>& out) {
    for (GenId g1 : bridge_gens(l, first))
      for (GenId g2 : bridge_gens(gens_[g1].tgt, second)) out[gens_[g2].tgt].push_back({first, Word{g1, g2}});
  };

  const DecoratedLink L = links_.at(l);
  int k = static_cast<int>(L.sigma.size());
  const GenKind kinds[2] = {GenKind::RightDec, GenKind::LeftDec};

  // (1) decoration commutators on distinct + circles
  for (int c = 0; c < k; ++c)
    for (int d = c + 1; d < k; ++d) {
      if (L.sigma[c] < 0 || L.sigma[d] < 0) continue;
      for (GenKind x : kinds)
        for (GenKind y : kinds) {
          GenId a1 = dec(x, l, c), a2 = dec(y, gens_[a1].tgt, d);
          GenId b1 = dec(y, l, d), b2 = dec(x, gens_[b1].tgt, c);
          emit({{a1, a2}, {b1, b2}});
        }
    }

  std::vector<BridgeClass> left = bridge_classes(L.left, Side::Left);
  std::vector<BridgeClass> right = bridge_classes(L.right, Side::Right);
  std::vector<BridgeClass> all = left;
  all.insert(all.end(), right.begin(), right.end());

  // (2) bridge / decoration with disjoint support
  for (auto& gamma : all) {
    auto sup = support(l, gamma);
    for (GenId g : bridge_gens(l, gamma)) {
      LinkId t = gens_[g].tgt;
      for (int c = 0; c < k; ++c) {
        if (L.sigma[c] < 0 || std::find(sup.begin(), sup.end(), c) != sup.end()) continue;
        int c2 = same_circle(l, c, t);
        assert(c2 >= 0);
        for (GenKind x : kinds) {
          GenId a2 = dec(x, t, c2);
          GenId b1 = dec(x, l, c);
          GenId b2 = bridge(gens_[b1].tgt, gens_[a2].tgt, gamma);
          if (b2 < 0) throw Error(Err::SchemaError, "missing commuting bridge generator");
          emit({{g, a2}, {b1, b2}});
        }
      }
    }
  }

  // (3) bridges with disjoint feet: sum of both orders per final link
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = i + 1; j < all.size(); ++j) {
      const auto &g = all[i], &h = all[j];
      BridgeClass h_img = h, g_img = g;
      if (g.side == h.side) {
        const PlanarMatching& m = g.side == Side::Left ? L.left : L.right;
        if (classify_pair(m, g, h) != BridgePair::Disjoint) continue;
        auto hi = bridge_images(m, g, h), gi = bridge_images(m, h, g);
        if (hi.empty() || gi.empty()) continue;
        h_img = hi[0], g_img = gi[0];
      }
      std::map<LinkId, std::vector<Path>> paths;
      two_step(g, h_img, paths);
      two_step(h, g_img, paths);
      for (auto& [t, ps] : paths) {
        std::vector<Word> ws;
        for (auto& p : ps) ws.push_back(p.second);
        emit(ws);
      }
    }

  // (4) right squares: every two-step right path into a link equals every
  // other one that starts with a different bridge
  {
    std::map<LinkId, std::vector<Path>> paths;
    for (auto& g : right)
      for (GenId g1 : bridge_gens(l, g)) {
        const auto& L1 = links_.at(gens_[g1].tgt);
        for (auto& d : bridge_classes(L1.right, Side::Right))
          for (GenId g2 : bridge_gens(gens_[g1].tgt, d)) paths[gens_[g2].tgt].push_back({g, Word{g1, g2}});
      }
    for (auto& [t, ps] : paths) {
      std::set<BridgeClass> firsts;
      for (auto& p : ps) firsts.insert(p.first);
      if (firsts.size() < 2) continue;
      for (std::size_t a = 1; a < ps.size(); ++a) emit({ps[0].second, ps[a].second});
    }
  }

  // (5) left bridges on opposite sides of a shared arc
  for (std::size_t i = 0; i < left.size(); ++i)
    for (std::size_t j = i + 1; j < left.size(); ++j) {
      const auto &g = left[i], &h = left[j];
      if (classify_pair(L.left, g, h) != BridgePair::OppositeSide) continue;
      auto mg = surger_matching(L.left, g).result, mh = surger_matching(L.left, h).result;
      for (auto& d : bridge_classes(mg, Side::Left))
        for (auto& w : bridge_classes(mh, Side::Left)) {
          auto end = surger_matching(mg, d).result;
          if (!(end == surger_matching(mh, w).result) || end == L.left) continue;
          std::map<LinkId, std::vector<Path>> paths;
          two_step(g, d, paths);
          two_step(h, w, paths);
          for (auto& [t, ps] : paths) {
            std::vector<Word> ws;
            for (auto& p : ps) ws.push_back(p.second);
            emit(ws);
          }
        }
    }

  // (6) left words through a bridge that must cross the co-core
  for (auto& g : left) {
    auto mg = surger_matching(L.left, g).result;
    for (auto& d : bridge_classes(mg, Side::Left)) {
      if (!crosses_cocore(L.left, g, d)) continue;
      for (GenId g1 : bridge_gens(l, g))
        for (GenId g2 : bridge_gens(gens_[g1].tgt, d)) emit({{g1, g2}});
    }
  }

  // (7) slides: three left bridges pairwise joining three arcs of one face
  {
    std::set<std::array<int, 3>> triples;
    for (auto& a : left)
      for (auto& b : left) {
        if (!(a < b) || classify_pair(L.left, a, b) != BridgePair::SameSide) continue;
        std::set<int> arcs = {a.a, a.b, b.a, b.b};
        std::array<int, 3> t{};
        std::copy(arcs.begin(), arcs.end(), t.begin());
        triples.insert(t);
      }
    for (auto& t : triples) {
      BridgeClass cls[3] = {make_bridge(Side::Left, t[0], t[1]), make_bridge(Side::Left, t[0], t[2]),
                            make_bridge(Side::Left, t[1], t[2])};
      std::map<LinkId, std::vector<Path>> paths;
      for (int f = 0; f < 3; ++f) {
        const BridgeClass& other = cls[(f + 1) % 3];
        auto img = bridge_images(L.left, cls[f], other);
        if (img.size() != 1) throw Error(Err::SchemaError, "slide image is not unique");
        two_step(cls[f], img[0], paths);
      }
      for (auto& [tl, ps] : paths) {
        std::vector<Word> ws;
        for (auto& p : ps) ws.push_back(p.second);
        emit(ws);
      }
    }
  }

  // (8) a right bridge followed by its co-core is a right decoration
  for (auto& g : right) {
    BridgeClass dagger = surger_matching(L.right, g).cocore;
    for (GenId g1 : bridge_gens(l, g))
      for (GenId g2 : bridge_gens(gens_[g1].tgt, dagger)) {
        const auto& T = links_.at(gens_[g2].tgt);
        int flipped = -1;
        for (int c = 0; c < k; ++c)
          if (T.sigma[c] != L.sigma[c]) flipped = c;
        if (flipped < 0 || L.sigma[flipped] < 0) throw Error(Err::SchemaError, "co-core path does not flip a + circle");
        emit({{g1, g2}, {dec(GenKind::RightDec, l, flipped)}});
      }
  }

  // (9), (10) decorations against a merge or divide of + circles
  for (auto& g : all) {
    auto sup = support(l, g);
    for (GenKind x : kinds) {
      std::vector<Word> ws;
      if (sup.size() == 2) {
        if (L.sigma[sup[0]] < 0 || L.sigma[sup[1]] < 0) continue;
        for (int c : sup) {
          GenId a1 = dec(x, l, c);
          auto bs = bridge_gens(gens_[a1].tgt, g);
          assert(bs.size() == 1);
          ws.push_back({a1, bs[0]});
        }
        auto bs = bridge_gens(l, g);
        assert(bs.size() == 1);
        LinkId t = gens_[bs[0]].tgt;
        int merged = links_.at(t).circles.circle_of[links_.at(l).circles.points[sup[0]][0]];
        ws.push_back({bs[0], dec(x, t, merged)});
      } else {
        int c = sup[0];
        if (L.sigma[c] < 0) continue;
        GenId a1 = dec(x, l, c);
        auto bs = bridge_gens(gens_[a1].tgt, g);
        assert(bs.size() == 1);
        ws.push_back({a1, bs[0]});
        for (GenId b : bridge_gens(l, g)) {
          const auto& T = links_.at(gens_[b].tgt);
          for (int c2 = 0; c2 < static_cast<int>(T.sigma.size()); ++c2)
            if (T.sigma[c2] > 0 && same_circle(gens_[b].tgt, c2, l) < 0) ws.push_back({b, dec(x, gens_[b].tgt, c2)});
        }
      }
      for (auto& w : ws)
        if (target(w) != target(ws[0])) throw Error(Err::SchemaError, "decoration edge paths disagree");
      if (x == GenKind::RightDec) {
        for (std::size_t a = 1; a < ws.size(); ++a) emit({ws[0], ws[a]});
      } else {
        emit(ws);
      }
    }
  }

  std::map<LinkId, std::vector<Relation>> out;
  for (auto& [t, rs] : acc) out[t] = {rs.begin(), rs.end()};
  return rel_cache_[l] = std::move(out);
}

const std::vector<Relation>& Algebra::relation_instances(LinkId src, LinkId tgt) {
  const auto& m = relations_from(src);
  auto it = m.find(tgt);
  return it == m.end() ? no_relations_ : it->second;
}

// ---------------------------------------------------------------- zero test

struct Algebra::Block {
  std::vector<Word> cols;
  std::map<Word, int> col;
  std::vector<std::vector<uint64_t>> rows;  // reduced row echelon form
  std::vector<int> pivot;
};

Algebra::Block Algebra::build_block(LinkId, LinkId, const std::vector<Word>& words,
                                    const std::vector<Relation>& rels) const {
  Block b;
  std::set<Word> all(words.begin(), words.end());
  for (auto& r : rels) all.insert(r.begin(), r.end());
  b.cols.assign(all.begin(), all.end());
  // longer words first so that pivots eliminate them
  std::stable_sort(b.cols.begin(), b.cols.end(), [](const Word& x, const Word& y) { return x.size() > y.size(); });
  for (std::size_t i = 0; i < b.cols.size(); ++i) b.col[b.cols[i]] = static_cast<int>(i);
  std::size_t nw = (b.cols.size() + 63) / 64;
  std::vector<std::vector<uint64_t>> rows;
  for (auto& r : rels) {
    std::vector<uint64_t> row(nw, 0);
    for (auto& w : r) {
      int c = b.col.at(w);
      row[c / 64] ^= uint64_t{1} << (c % 64);
    }
    rows.push_back(std::move(row));
  }
  std::size_t rank = 0;
  for (std::size_t c = 0; c < b.cols.size() && rank < rows.size(); ++c) {
    uint64_t bit = uint64_t{1} << (c % 64);
    std::size_t p = rank;
    while (p < rows.size() && !(rows[p][c / 64] & bit)) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[rank]);
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (i != rank && (rows[i][c / 64] & bit))
        for (std::size_t w = 0; w < nw; ++w) rows[i][w] ^= rows[rank][w];
    b.pivot.push_back(static_cast<int>(c));
    ++rank;
  }
  rows.resize(rank);
  b.rows = std::move(rows);
  return b;
}

Algebra::Block& Algebra::block(LinkId src, LinkId tgt) {
  auto key = std::make_pair(src, tgt);
  auto it = blocks_.find(key);
  if (it != blocks_.end()) return *it->second;
  auto b = std::make_unique<Block>(build_block(src, tgt, words(src, tgt), relation_instances(src, tgt)));
  return *(blocks_[key] = std::move(b));
}

AlgebraElement Algebra::reduce(Block& b, const AlgebraElement& a) const {
  std::map<int, RF> v;
  AlgebraElement rest(a.src, a.tgt);
  for (auto& [w, c] : a.terms) {
    auto it = b.col.find(w);
    if (it == b.col.end())
      rest.add(w, c);
    else
      v[it->second] += c;
  }
  for (std::size_t i = 0; i < b.rows.size(); ++i) {
    auto it = v.find(b.pivot[i]);
    if (it == v.end() || it->second.is_zero()) continue;
    RF c = it->second;
    const auto& row = b.rows[i];
    for (std::size_t w = 0; w < row.size(); ++w) {
      uint64_t bits = row[w];
      while (bits) {
        int j = static_cast<int>(w * 64) + __builtin_ctzll(bits);
        bits &= bits - 1;
        v[j] += c;
      }
    }
  }
  for (auto& [j, c] : v) rest.add(b.cols[j], c);
  return rest;
}

bool Algebra::is_zero(const AlgebraElement& a, bool allow_length3) {
  if (a.empty()) return true;
  std::size_t len = a.max_length();
  if (len <= 2) return reduce(block(a.src, a.tgt), a).empty();
  if (len > 3 || !allow_length3) throw Error(Err::WordTooLong, "zero test needs words of length <= 2");
  auto key = std::make_pair(a.src, a.tgt);
  auto it = blocks3_.find(key);
  if (it == blocks3_.end()) {
    std::vector<Relation> rels = relation_instances(a.src, a.tgt);
    std::vector<GenId> first = generators_from(a.src);
    for (GenId g : first)
      for (auto r : relation_instances(gens_[g].tgt, a.tgt)) {
        for (auto& w : r) w.insert(w.begin(), g);
        rels.push_back(r);
      }
    auto mids = relations_from(a.src);
    for (auto& [mid, rs] : mids) {
      std::vector<GenId> last = generators_from(mid);
      for (GenId g : last) {
        if (gens_[g].tgt != a.tgt) continue;
        for (auto r : rs) {
          for (auto& w : r) w.push_back(g);
          rels.push_back(r);
        }
      }
    }
    auto b = std::make_unique<Block>(build_block(a.src, a.tgt, {}, rels));
    it = blocks3_.emplace(key, std::move(b)).first;
  }
  return reduce(*it->second, a).empty();
}

AlgebraElement Algebra::reduce_to_short(const AlgebraElement& a) {
  if (a.empty() || a.max_length() <= 1) return a;
  if (a.max_length() > 2) throw Error(Err::WordTooLong, "reduction needs words of length <= 2");
  AlgebraElement r = reduce(block(a.src, a.tgt), a);
  if (r.max_length() > 1) throw Error(Err::NeedsWordReduction, "length-2 word is not a combination of shorter words");
  return r;
}

std::size_t Algebra::quotient_dim(LinkId src, LinkId tgt) {
  Block& b = block(src, tgt);
  return b.cols.size() - b.rows.size();
}

// ---------------------------------------------------------------- text

std::string Algebra::describe(LinkId l) const {
  const auto& L = links_.at(l);
  std::string s = to_string(L.left) + "|" + to_string(L.right) + "|";
  for (auto d : L.sigma) s += d > 0 ? '+' : '-';
  return s;
}

std::string Algebra::describe(GenId g, bool with_endpoints) const {
  const auto& x = gens_.at(g);
  std::ostringstream os;
  switch (x.kind) {
    case GenKind::Idempotent: os << "I"; break;
    case GenKind::RightDec:
    case GenKind::LeftDec: {
      os << (x.kind == GenKind::RightDec ? "r" : "l") << "e_C{";
      const auto& pts = links_.at(x.src).circles.points[x.circle];
      for (std::size_t i = 0; i < pts.size(); ++i) os << (i ? "," : "") << pts[i];
      os << "}";
      break;
    }
    case GenKind::RightBridge:
    case GenKind::LeftBridge:
      os << (x.kind == GenKind::RightBridge ? "r" : "l") << "e_" << x.bridge.a << "~" << x.bridge.b;
      break;
  }
  if (with_endpoints) os << "[" << describe(x.src) << " -> " << describe(x.tgt) << "]";
  return os.str();
}

std::string Algebra::describe_word(const Word& w) const {
  if (w.empty()) return "I";
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) s += (i ? " " : "") + describe(w[i], false);
  return s;
}

std::string Algebra::describe(const AlgebraElement& a, const VarRegistry* reg) const {
  if (a.empty()) return "0";
  std::string s;
  for (auto& [w, c] : a.terms) {
    if (!s.empty()) s += " + ";
    if (!c.is_one()) s += "(" + to_string(c, reg) + ") ";
    s += describe_word(w);
  }
  return s;
}

Algebra& algebra(int n) {
  static std::map<int, std::unique_ptr<Algebra>> all;
  auto& p = all[n];
  if (!p) p = std::make_unique<Algebra>(n);
  return *p;
}

}  // namespace kh
