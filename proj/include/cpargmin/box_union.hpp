#pragma once

// Finite unions of axis-aligned boxes. BoxUnion holds closed boxes (possibly
// unbounded); OpenBoxUnion holds open boxes. Both are exact: no tolerance is
// used in any comparison.

#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace cpargmin {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Closed interval [lo, hi]; an infinite endpoint means the side is unbounded.
struct Interval {
  double lo = -kInf;
  double hi = kInf;

  bool contains(double t) const { return lo <= t && t <= hi; }
  bool bounded() const { return lo > -kInf && hi < kInf; }
  friend bool operator==(const Interval&, const Interval&) = default;
  friend auto operator<=>(const Interval&, const Interval&) = default;
};

// Open interval (lo, hi); lo = -inf or hi = +inf for half-lines.
struct OpenInterval {
  double lo = -kInf;
  double hi = kInf;

  bool contains(double t) const { return lo < t && t < hi; }
  friend bool operator==(const OpenInterval&, const OpenInterval&) = default;
};

using Box = std::vector<Interval>;
using OpenBox = std::vector<OpenInterval>;

class BoxUnion {
 public:
  explicit BoxUnion(std::size_t dim = 1) : dim_(dim) {}
  // Normalizes: in d = 1 overlapping or touching intervals are merged; in
  // higher dimension boxes contained in another box are dropped.
  BoxUnion(std::size_t dim, std::vector<Box> boxes);

  static BoxUnion everything(std::size_t dim) { return BoxUnion(dim, {Box(dim)}); }
  static BoxUnion point(std::span<const double> p);
  static BoxUnion interval(double lo, double hi) { return BoxUnion(1, {Box{Interval{lo, hi}}}); }

  std::size_t dim() const { return dim_; }
  const std::vector<Box>& boxes() const { return boxes_; }
  bool empty() const { return boxes_.empty(); }
  bool bounded() const;
  bool contains(std::span<const double> p) const;

  friend bool operator==(const BoxUnion&, const BoxUnion&) = default;

 private:
  std::size_t dim_;
  std::vector<Box> boxes_;
};

class OpenBoxUnion {
 public:
  explicit OpenBoxUnion(std::size_t dim = 1) : dim_(dim) {}
  OpenBoxUnion(std::size_t dim, std::vector<OpenBox> boxes);

  static OpenBoxUnion everything(std::size_t dim) { return OpenBoxUnion(dim, {OpenBox(dim)}); }
  static OpenBoxUnion interval(double lo, double hi) { return OpenBoxUnion(1, {OpenBox{OpenInterval{lo, hi}}}); }

  std::size_t dim() const { return dim_; }
  const std::vector<OpenBox>& boxes() const { return boxes_; }
  bool contains(std::span<const double> p) const;

 private:
  std::size_t dim_;
  std::vector<OpenBox> boxes_;
};

// One box per line, coordinates written as [lo,hi] separated by spaces.
std::string to_text(const BoxUnion& u);
BoxUnion box_union_from_text(const std::string& text, std::size_t dim);

// Compact one-dimensional set syntax used by configs and the CLI:
//   "all", "empty", or intervals joined by 'u', e.g. "[-inf,0] u [2,3]".
// Closed sets take [a,b]; a bracket next to an infinite endpoint may also
// be written as a parenthesis. Open sets take (a,b).
BoxUnion parse_closed_set_1d(const std::string& text);
OpenBoxUnion parse_open_set_1d(const std::string& text);
std::string describe(const BoxUnion& u);
std::string describe(const OpenBoxUnion& u);

}  // namespace cpargmin
