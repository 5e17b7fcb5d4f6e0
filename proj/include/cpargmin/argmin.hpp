#pragma once

#include <vector>

#include "cpargmin/box_union.hpp"
#include "cpargmin/cadlag.hpp"

namespace cpargmin {

// All points t where min over quadrant limits equals inf f. For a
// piecewise-constant f this is exactly the union of the closures of the
// cells attaining the infimum: any face or node whose envelope reaches the
// infimum is adjacent to such a cell.
BoxUnion argmin_set(const StepFunction1D& f);
BoxUnion argmin_set(const GridFunction& f);

// Lexicographically smallest / largest point. Throws EmptySet on an empty
// set and Unbounded when a needed coordinate runs off to infinity.
std::vector<double> sargmin(const BoxUnion& a);
std::vector<double> largmin(const BoxUnion& a);

bool hits(const BoxUnion& a, const BoxUnion& e);
BoxUnion intersect(const BoxUnion& a, const BoxUnion& b);

// A is a subset of G. One dimension uses an interval-cover sweep; higher
// dimensions test every elementary face of A against G.
bool contained_in_open(const BoxUnion& a, const OpenBoxUnion& g);
namespace detail {
bool contained_by_decomposition(const BoxUnion& a, const OpenBoxUnion& g);
}

// Closed set R^d \ G.
BoxUnion closed_complement(const OpenBoxUnion& g);

struct LemmaA1Check {
  bool hits_lower_orthant;       // A(f) meets (-inf, x]
  bool sargmin_below;            // sargmin <= x componentwise
  bool inside_open_orthant;      // A(f) is a subset of (-inf, x)
  bool largmin_strictly_below;   // largmin < x componentwise

  bool first_equivalence() const { return hits_lower_orthant == sargmin_below; }
  bool second_equivalence() const { return inside_open_orthant == largmin_strictly_below; }
};

// Throws NonCompact when A(f) is unbounded and EmptySet when it is empty.
LemmaA1Check check_lemma_a1(const BoxUnion& argmin, const std::vector<double>& x);
LemmaA1Check check_lemma_a1(const StepFunction1D& f, const std::vector<double>& x);
LemmaA1Check check_lemma_a1(const GridFunction& f, const std::vector<double>& x);

}  // namespace cpargmin
