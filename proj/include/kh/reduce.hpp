#pragma once

// Cancellation of type D structures and the free-circle-free reduced structure.

#include <memory>
#include <vector>

#include "kh/type_d.hpp"

namespace kh {

struct CancellationData {
  std::shared_ptr<const TypeDStructure> original;
  std::shared_ptr<const TypeDStructure> reduced;
  std::vector<int> kept;  // reduced index -> original index
  DMorphism iota;         // reduced -> original
  DMorphism pi;           // original -> reduced
  DMorphism H;            // original -> original; empty when not tracked
  bool has_homotopy = true;
};

// x1 -> x2 must carry c * idempotent with c != 0 (NonInvertiblePivot otherwise).
CancellationData cancel(std::shared_ptr<const TypeDStructure> d, int x1, int x2);
CancellationData cancel(const TypeDStructure& d, int x1, int x2);

// Cancels (free circle +, free circle -) pairs on the first free circle, lowest
// state first, until no free circle is left. steps receives each cancellation.
CancellationData reduce_free_circles(const TypeDStructure& d, std::vector<CancellationData>* steps = nullptr,
                                     bool reverse_order = false);

// Reduced structure written down directly on free-circle-free states.
TypeDStructure closed_form(const TangleDiagram& t, std::size_t max_states = 0);

// Same states (matched by DState) and blockwise equal coefficients modulo relations.
bool equivalent(const TypeDStructure& a, const TypeDStructure& b, std::string* why = nullptr);

nlohmann::json to_json(const DMorphism& f);
nlohmann::json to_json(const CancellationData& c);

}  // namespace kh
