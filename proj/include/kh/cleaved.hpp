#pragma once

// The algebra of decorated cleaved links: generators, free words, relation
// instances and a zero test for words of length <= 2.

#include <deque>
#include <map>
#include <memory>
#include <string>
#include <tuple>
#include <vector>

#include "kh/diagram.hpp"
#include "kh/field.hpp"

namespace kh {

struct DecoratedLink {
  PlanarMatching left, right;
  Decoration sigma;  // per circle of link_circles(left, right)
  LinkCircles circles;
};

enum class GenKind { Idempotent, RightDec, LeftDec, RightBridge, LeftBridge };
const char* gen_kind_name(GenKind k);
// Four times zeta.
int gen_zeta4(GenKind k);
inline bool is_bridge(GenKind k) { return k == GenKind::RightBridge || k == GenKind::LeftBridge; }
inline bool is_dec(GenKind k) { return k == GenKind::RightDec || k == GenKind::LeftDec; }

using LinkId = int;
using GenId = int;

struct Generator {
  GenKind kind = GenKind::Idempotent;
  LinkId src = -1, tgt = -1;
  int circle = -1;     // decorations: circle index in src
  BridgeClass bridge;  // bridges
};

// Non-idempotent generators, composable left to right.
using Word = std::vector<GenId>;

struct AlgebraElement {
  LinkId src = -1, tgt = -1;
  std::map<Word, RF> terms;  // no zero coefficients

  AlgebraElement() = default;
  AlgebraElement(LinkId s, LinkId t) : src(s), tgt(t) {}
  bool empty() const { return terms.empty(); }
  void add(const Word& w, const RF& c);
  AlgebraElement& operator+=(const AlgebraElement& o);
  AlgebraElement operator+(const AlgebraElement& o) const {
    AlgebraElement r = *this;
    return r += o;
  }
  AlgebraElement scaled(const RF& c) const;
  std::size_t max_length() const;
  bool operator==(const AlgebraElement& o) const;
};

// Relation instance: a GF(2) sum of words with common endpoints.
using Relation = std::vector<Word>;

class Algebra {
 public:
  explicit Algebra(int n);
  ~Algebra();
  int n() const { return n_; }

  LinkId intern(const PlanarMatching& left, const PlanarMatching& right, const Decoration& sigma);
  LinkId find(const PlanarMatching& left, const PlanarMatching& right, const Decoration& sigma) const;
  const DecoratedLink& link(LinkId id) const { return links_.at(id); }
  std::size_t num_links() const { return links_.size(); }
  std::vector<LinkId> enumerate_links();
  // Same link with circle c flipped.
  LinkId flip(LinkId l, int c);

  const Generator& gen(GenId g) const { return gens_.at(g); }
  // Non-idempotent generators with source l.
  const std::vector<GenId>& generators_from(LinkId l);
  GenId dec(GenKind kind, LinkId src, int circle);
  // -1 when absent
  GenId bridge(LinkId src, LinkId tgt, const BridgeClass& g);
  int zeta4(const Word& w) const;

  AlgebraElement idempotent(LinkId l) const;
  AlgebraElement element(GenId g, const RF& c = RF::one()) const;
  AlgebraElement multiply(const AlgebraElement& a, const AlgebraElement& b) const;

  AlgebraElement d_gamma(GenId g);
  AlgebraElement d_gamma(const Word& w, LinkId src);
  AlgebraElement d_gamma(const AlgebraElement& a);

  const std::vector<Relation>& relation_instances(LinkId src, LinkId tgt);
  // All composable words of length <= 2 from src to tgt.
  const std::vector<Word>& words(LinkId src, LinkId tgt);

  // Membership in the relation span. Words of length 3 are accepted only with
  // allow_length3, using the span of R, gR and Rg.
  bool is_zero(const AlgebraElement& a, bool allow_length3 = false);
  // Rewrites modulo relations so that no word of length 2 remains, or throws
  // NeedsWordReduction.
  AlgebraElement reduce_to_short(const AlgebraElement& a);
  // Dimension of the quotient on one block.
  std::size_t quotient_dim(LinkId src, LinkId tgt);

  std::string describe(LinkId l) const;
  std::string describe(GenId g, bool with_endpoints) const;
  std::string describe_word(const Word& w) const;
  std::string describe(const AlgebraElement& a, const VarRegistry* reg) const;

 private:
  struct Block;
  struct Key {
    std::vector<int> l, r;
    Decoration s;
    bool operator<(const Key& o) const { return std::tie(l, r, s) < std::tie(o.l, o.r, o.s); }
  };

  std::vector<GenId> bridge_gens(LinkId l, const BridgeClass& g);
  // Circles of l touched by g (indices).
  std::vector<int> support(LinkId l, const BridgeClass& g) const;
  // Circle of l2 with the same points as circle c of l1, or -1.
  int same_circle(LinkId l1, int c, LinkId l2) const;
  const std::map<LinkId, std::vector<Relation>>& relations_from(LinkId src);
  const std::map<LinkId, std::vector<Word>>& words_from(LinkId src);
  Block& block(LinkId src, LinkId tgt);
  Block build_block(LinkId src, LinkId tgt, const std::vector<Word>& cols, const std::vector<Relation>& rels) const;
  AlgebraElement reduce(Block& b, const AlgebraElement& a) const;

  int n_;
  std::deque<DecoratedLink> links_;
  std::map<Key, LinkId> link_index_;
  std::deque<Generator> gens_;
  std::map<std::tuple<int, LinkId, LinkId, int, int, int>, GenId> gen_index_;
  std::map<LinkId, std::vector<GenId>> from_;
  std::map<LinkId, std::map<LinkId, std::vector<Relation>>> rel_cache_;
  std::map<LinkId, std::map<LinkId, std::vector<Word>>> word_cache_;
  std::map<std::pair<LinkId, LinkId>, std::unique_ptr<Block>> blocks_;
  std::map<std::pair<LinkId, LinkId>, std::unique_ptr<Block>> blocks3_;
  std::vector<Relation> no_relations_;
  std::vector<Word> no_words_;
};

// Shared algebra per n; structures refer to its link and generator ids.
Algebra& algebra(int n);

}  // namespace kh
