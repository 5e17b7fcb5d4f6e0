#include "cpargmin/argmin.hpp"

#include <algorithm>
#include <set>

#include "cpargmin/error.hpp"

namespace cpargmin {

namespace {

Interval closed_cell(const std::vector<double>& axis, std::size_t c) {
  return Interval{c == 0 ? -kInf : axis[c - 1], c == axis.size() ? kInf : axis[c]};
}

bool boxes_meet(const Box& a, const Box& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::max(a[i].lo, b[i].lo) > std::min(a[i].hi, b[i].hi)) return false;
  }
  return true;
}

void require_same_dim(std::size_t a, std::size_t b, const char* what) {
  if (a != b) throw Error(ErrorCode::InvalidArgument, std::string(what) + ": dimension mismatch");
}

template <bool Smallest>
std::vector<double> lex_extreme(const BoxUnion& a) {
  if (a.empty()) throw Error(ErrorCode::EmptySet, Smallest ? "sargmin of an empty set" : "largmin of an empty set");
  std::vector<const Box*> live;
  for (const auto& b : a.boxes()) live.push_back(&b);
  std::vector<double> point;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    double best = Smallest ? kInf : -kInf;
    for (const Box* b : live) best = Smallest ? std::min(best, (*b)[i].lo) : std::max(best, (*b)[i].hi);
    if (best == -kInf || best == kInf) {
      throw Error(ErrorCode::Unbounded, "coordinate " + std::to_string(i + 1) + " is unbounded");
    }
    point.push_back(best);
    std::erase_if(live, [&](const Box* b) { return Smallest ? (*b)[i].lo != best : (*b)[i].hi != best; });
  }
  return point;
}

// Elementary pieces of [lo, hi] cut at the coordinates in `cuts`.
struct Piece {
  bool is_point;
  double a;  // point value, or open-gap lower end
  double b;  // open-gap upper end
};

std::vector<Piece> pieces_of(const Interval& iv, const std::set<double>& cuts) {
  // Finite endpoints of iv are members of cuts.
  std::vector<double> pts;
  for (double c : cuts) {
    if (iv.lo <= c && c <= iv.hi) pts.push_back(c);
  }
  std::vector<Piece> out;
  if (pts.empty()) {
    out.push_back(Piece{false, -kInf, kInf});
    return out;
  }
  if (iv.lo == -kInf) out.push_back(Piece{false, -kInf, pts.front()});
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i > 0) out.push_back(Piece{false, pts[i - 1], pts[i]});
    out.push_back(Piece{true, pts[i], pts[i]});
  }
  if (iv.hi == kInf) out.push_back(Piece{false, pts.back(), kInf});
  return out;
}

bool piece_inside(const Piece& p, const OpenInterval& g) {
  if (p.is_point) return g.contains(p.a);
  return g.lo <= p.a && p.b <= g.hi;
}

}  // namespace

BoxUnion argmin_set(const StepFunction1D& f) { return argmin_set(GridFunction::from_step(f)); }

BoxUnion argmin_set(const GridFunction& f) {
  const double inf_value = infimum(f);
  const std::size_t d = f.dim();
  std::vector<std::size_t> extents;
  for (std::size_t i = 0; i < d; ++i) extents.push_back(f.extent(i));

  std::vector<Box> boxes;
  std::vector<std::size_t> idx(d, 0);
  for (std::size_t flat = 0; flat < f.cell_count(); ++flat) {
    if (f.cells()[flat] == inf_value) {
      Box b;
      for (std::size_t i = 0; i < d; ++i) b.push_back(closed_cell(f.axis(i), idx[i]));
      boxes.push_back(std::move(b));
    }
    for (std::size_t i = d; i-- > 0;) {
      if (++idx[i] < extents[i]) break;
      idx[i] = 0;
    }
  }
  return BoxUnion(d, std::move(boxes));
}

std::vector<double> sargmin(const BoxUnion& a) { return lex_extreme<true>(a); }
std::vector<double> largmin(const BoxUnion& a) { return lex_extreme<false>(a); }

bool hits(const BoxUnion& a, const BoxUnion& e) {
  require_same_dim(a.dim(), e.dim(), "hits");
  for (const auto& x : a.boxes()) {
    for (const auto& y : e.boxes()) {
      if (boxes_meet(x, y)) return true;
    }
  }
  return false;
}

BoxUnion intersect(const BoxUnion& a, const BoxUnion& b) {
  require_same_dim(a.dim(), b.dim(), "intersect");
  std::vector<Box> out;
  for (const auto& x : a.boxes()) {
    for (const auto& y : b.boxes()) {
      if (!boxes_meet(x, y)) continue;
      Box z(a.dim());
      for (std::size_t i = 0; i < a.dim(); ++i) z[i] = Interval{std::max(x[i].lo, y[i].lo), std::min(x[i].hi, y[i].hi)};
      out.push_back(std::move(z));
    }
  }
  return BoxUnion(a.dim(), std::move(out));
}

bool contained_in_open(const BoxUnion& a, const OpenBoxUnion& g) {
  require_same_dim(a.dim(), g.dim(), "contained_in_open");
  if (a.dim() != 1) return detail::contained_by_decomposition(a, g);

  // Merge G into connected open components. Open intervals sharing only an
  // endpoint stay separate: that endpoint is not covered.
  std::vector<OpenInterval> parts;
  for (const auto& b : g.boxes()) parts.push_back(b[0]);
  std::sort(parts.begin(), parts.end(), [](const OpenInterval& x, const OpenInterval& y) { return x.lo < y.lo; });
  std::vector<OpenInterval> comps;
  for (const auto& p : parts) {
    if (!comps.empty() && p.lo < comps.back().hi) {
      comps.back().hi = std::max(comps.back().hi, p.hi);
    } else {
      comps.push_back(p);
    }
  }
  for (const auto& box : a.boxes()) {
    const Interval& iv = box[0];
    bool covered = false;
    for (const auto& c : comps) {
      bool lo_ok = c.lo < iv.lo || (c.lo == -kInf && iv.lo == -kInf);
      bool hi_ok = iv.hi < c.hi || (c.hi == kInf && iv.hi == kInf);
      if (lo_ok && hi_ok) {
        covered = true;
        break;
      }
    }
    if (!covered) return false;
  }
  return true;
}

namespace detail {

bool contained_by_decomposition(const BoxUnion& a, const OpenBoxUnion& g) {
  require_same_dim(a.dim(), g.dim(), "contained_in_open");
  const std::size_t d = a.dim();
  std::vector<std::set<double>> cuts(d);
  for (const auto& b : g.boxes()) {
    for (std::size_t i = 0; i < d; ++i) {
      if (b[i].lo > -kInf) cuts[i].insert(b[i].lo);
      if (b[i].hi < kInf) cuts[i].insert(b[i].hi);
    }
  }
  for (const auto& box : a.boxes()) {
    std::vector<std::set<double>> local = cuts;
    for (std::size_t i = 0; i < d; ++i) {
      if (box[i].lo > -kInf) local[i].insert(box[i].lo);
      if (box[i].hi < kInf) local[i].insert(box[i].hi);
    }
    std::vector<std::vector<Piece>> pieces(d);
    std::vector<std::size_t> extents(d);
    for (std::size_t i = 0; i < d; ++i) {
      pieces[i] = pieces_of(box[i], local[i]);
      extents[i] = pieces[i].size();
    }
    std::vector<std::size_t> idx(d, 0);
    while (true) {
      bool inside = false;
      for (const auto& gb : g.boxes()) {
        bool all = true;
        for (std::size_t i = 0; i < d && all; ++i) all = piece_inside(pieces[i][idx[i]], gb[i]);
        if (all) {
          inside = true;
          break;
        }
      }
      if (!inside) return false;
      std::size_t i = d;
      while (i-- > 0) {
        if (++idx[i] < extents[i]) break;
        idx[i] = 0;
      }
      if (i == static_cast<std::size_t>(-1)) break;
    }
  }
  return true;
}

}  // namespace detail

BoxUnion closed_complement(const OpenBoxUnion& g) {
  const std::size_t d = g.dim();
  BoxUnion acc = BoxUnion::everything(d);
  for (const auto& b : g.boxes()) {
    std::vector<Box> half_spaces;
    for (std::size_t i = 0; i < d; ++i) {
      if (b[i].lo > -kInf) {
        Box h(d);
        h[i] = Interval{-kInf, b[i].lo};
        half_spaces.push_back(std::move(h));
      }
      if (b[i].hi < kInf) {
        Box h(d);
        h[i] = Interval{b[i].hi, kInf};
        half_spaces.push_back(std::move(h));
      }
    }
    acc = intersect(acc, BoxUnion(d, std::move(half_spaces)));
    if (acc.empty()) break;
  }
  return acc;
}

LemmaA1Check check_lemma_a1(const BoxUnion& a, const std::vector<double>& x) {
  require_same_dim(a.dim(), x.size(), "check_lemma_a1");
  if (a.empty()) throw Error(ErrorCode::EmptySet, "argmin set is empty");
  if (!a.bounded()) throw Error(ErrorCode::NonCompact, "argmin set is unbounded");
  const std::size_t d = a.dim();
  Box lower(d);
  OpenBox open_lower(d);
  for (std::size_t i = 0; i < d; ++i) {
    lower[i] = Interval{-kInf, x[i]};
    open_lower[i] = OpenInterval{-kInf, x[i]};
  }
  const auto smin = sargmin(a);
  const auto lmax = largmin(a);
  LemmaA1Check r{};
  r.hits_lower_orthant = hits(a, BoxUnion(d, {lower}));
  r.sargmin_below = true;
  r.largmin_strictly_below = true;
  for (std::size_t i = 0; i < d; ++i) {
    r.sargmin_below = r.sargmin_below && smin[i] <= x[i];
    r.largmin_strictly_below = r.largmin_strictly_below && lmax[i] < x[i];
  }
  r.inside_open_orthant = contained_in_open(a, OpenBoxUnion(d, {open_lower}));
  return r;
}

LemmaA1Check check_lemma_a1(const StepFunction1D& f, const std::vector<double>& x) {
  return check_lemma_a1(argmin_set(f), x);
}

LemmaA1Check check_lemma_a1(const GridFunction& f, const std::vector<double>& x) {
  return check_lemma_a1(argmin_set(f), x);
}

}  // namespace cpargmin
