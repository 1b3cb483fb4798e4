#pragma once

// Twisted type D structure of a right tangle over the cleaved-link algebra.

#include <map>
#include <string>
#include <vector>

#include "kh/cleaved.hpp"
#include "kh/diagram.hpp"

namespace kh {

// (left matching, resolution, decorations on the circles of m # rho)
struct DState {
  PlanarMatching m;
  ResolutionMask rho = 0;
  Decoration dec;
  bool operator<(const DState& o) const { return std::tie(m, rho, dec) < std::tie(o.m, o.rho, o.dec); }
  bool operator==(const DState& o) const { return m == o.m && rho == o.rho && dec == o.dec; }
};

std::string to_string(const DState& s);

struct TypeDStructure {
  int n = 1;
  VarRegistry vars;
  std::vector<DState> states;
  std::vector<LinkId> boundary;
  std::vector<int> zeta4;
  std::vector<std::map<int, AlgebraElement>> delta;  // target index -> coefficient

  std::vector<int> n_cleaved;  // per state
  // per state and circle: lowest axis point of a cleaved circle, -(1 + lowest arc) of a free one
  std::vector<std::vector<int>> circle_key;
  std::map<DState, int> index;

  int find(const DState& s) const;  // -1 when absent
  Algebra& alg() const { return algebra(n); }
  std::size_t num_terms() const;
};

struct Report {
  bool ok = true;
  std::vector<std::string> failures;
  void fail(std::string s) {
    ok = false;
    failures.push_back(std::move(s));
  }
};

// max_states = 0 means no budget; otherwise StateBudgetExceeded above it.
std::vector<DState> build_states(const TangleDiagram& t, std::size_t max_states = 0);
TypeDStructure build_delta_V(const TangleDiagram& t, std::size_t max_states = 0);
TypeDStructure build_Delta_T(const TangleDiagram& t, std::size_t max_states = 0);
TypeDStructure build_delta(const TangleDiagram& t, std::size_t max_states = 0);

// delta composed with itself plus d applied to coefficients vanishes blockwise.
Report verify_structure(const TypeDStructure& d);
Report verify_grading(const TypeDStructure& d);
// Mixed two-step sums of a and b (same states) vanish.
Report verify_anticommute(const TypeDStructure& a, const TypeDStructure& b);
// Substitution variables must already be registered in vars (defaults to d.vars).
TypeDStructure transport(const TypeDStructure& d, const Substitution& s);
TypeDStructure transport(const TypeDStructure& d, const Substitution& s, const VarRegistry& vars);
AlgebraElement substitute(const AlgebraElement& a, const Substitution& s);

// psi: from -> to, psi(x) = sum a (x) y
struct DMorphism {
  const TypeDStructure* from = nullptr;
  const TypeDStructure* to = nullptr;
  std::vector<std::map<int, AlgebraElement>> map;
  int degree4 = 0;
};

DMorphism identity_morphism(const TypeDStructure& d);
// mu2(I (x) delta') psi + mu2(I (x) psi) delta + mu1 psi = 0
Report verify_morphism(const DMorphism& psi);
// phi * psi = mu2(I (x) phi) psi; length-2 words are reduced when possible.
DMorphism compose(const DMorphism& phi, const DMorphism& psi);
// psi + phi = mu2(I (x) delta') H + mu2(I (x) H) delta + mu1 H
Report verify_homotopy(const DMorphism& psi, const DMorphism& phi, const DMorphism& h);
bool equal_morphisms(const DMorphism& a, const DMorphism& b);

nlohmann::json to_json(const TypeDStructure& d);

}  // namespace kh
