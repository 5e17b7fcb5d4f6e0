#pragma once

// Piecewise-constant right-continuous functions on the line and on
// rectangular grids in up to three dimensions.
//
// Cells are products of half-open intervals [b_{i-1}, b_i) with infinite
// outer tails, so every function here is cadlag by construction: all
// quadrant limits exist and the (>=,...,>=) limit is the value itself.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace cpargmin {

enum class Relation { Below, AtOrAbove };  // "<" and ">="

// One relation per coordinate; selects the quadrant a limit is taken in.
struct Quadrant {
  std::vector<Relation> relations;

  static Quadrant upper(std::size_t dim) { return {std::vector<Relation>(dim, Relation::AtOrAbove)}; }
  std::size_t dim() const { return relations.size(); }
};

class StepFunction1D {
 public:
  StepFunction1D() : values_{0.0} {}
  explicit StepFunction1D(double constant) : values_{constant} {}
  // Throws InvalidArgument unless breakpoints are strictly increasing and
  // finite, and values.size() == breakpoints.size() + 1.
  StepFunction1D(std::vector<double> breakpoints, std::vector<double> values);

  const std::vector<double>& breakpoints() const { return breakpoints_; }
  const std::vector<double>& values() const { return values_; }

  // Index of the cell [b_{i-1}, b_i) containing t.
  std::size_t cell_of(double t) const;
  double operator()(double t) const { return values_[cell_of(t)]; }
  double left_limit(double t) const;
  double quadrant_limit(double t, Relation r) const {
    return r == Relation::AtOrAbove ? (*this)(t) : left_limit(t);
  }

  friend bool operator==(const StepFunction1D&, const StepFunction1D&) = default;

 private:
  std::vector<double> breakpoints_;
  std::vector<double> values_;
};

class GridFunction {
 public:
  // cells are row-major with axis 0 varying slowest.
  GridFunction(std::vector<std::vector<double>> axes, std::vector<double> cells);
  static GridFunction from_step(const StepFunction1D& f);

  std::size_t dim() const { return axes_.size(); }
  const std::vector<double>& axis(std::size_t i) const { return axes_[i]; }
  const std::vector<std::vector<double>>& axes() const { return axes_; }
  std::size_t extent(std::size_t i) const { return axes_[i].size() + 1; }
  const std::vector<double>& cells() const { return cells_; }
  std::size_t cell_count() const { return cells_.size(); }

  std::size_t flat_index(std::span<const std::size_t> index) const;
  double cell(std::span<const std::size_t> index) const { return cells_[flat_index(index)]; }

  double operator()(std::span<const double> t) const;
  double quadrant_limit(std::span<const double> t, const Quadrant& q) const;

  // Resample onto a superset of the current breakpoints.
  GridFunction refine(const std::vector<std::vector<double>>& finer_axes) const;

  StepFunction1D to_step() const;  // dim() == 1 only

  friend bool operator==(const GridFunction&, const GridFunction&) = default;

 private:
  std::vector<std::vector<double>> axes_;
  std::vector<double> cells_;
  std::vector<std::size_t> strides_;
};

// Pointwise minimum over all 2^d quadrant limits, t -> min_R f(t+R).
// Stored as a table over faces: per axis, code 2c is the open interior of
// cell c and code 2j+1 is breakpoint j.
class LowerEnvelope {
 public:
  explicit LowerEnvelope(const GridFunction& f);
  explicit LowerEnvelope(const StepFunction1D& f) : LowerEnvelope(GridFunction::from_step(f)) {}

  double operator()(std::span<const double> t) const;
  double operator()(double t) const { return (*this)(std::span<const double>(&t, 1)); }
  const std::vector<double>& face_minima() const { return face_min_; }

 private:
  std::vector<std::vector<double>> axes_;
  std::vector<std::size_t> strides_;
  std::vector<double> face_min_;
};

double infimum(const StepFunction1D& f);
double infimum(const GridFunction& f);

// a*f + b*g on the common refinement of both breakpoint sets.
StepFunction1D add_scale(const StepFunction1D& f, const StepFunction1D& g, double a, double b);
GridFunction add_scale(const GridFunction& f, const GridFunction& g, double a, double b);

// Drop breakpoints whose neighbouring cells (slabs, for grids) are equal.
StepFunction1D normalize(const StepFunction1D& f);
GridFunction normalize(const GridFunction& f);

// Line 1: breakpoints, line 2: values; comma separated, 17 significant digits.
std::string to_text(const StepFunction1D& f);
StepFunction1D step_from_text(const std::string& text);
// Line 1: dim, then one line per axis, then the flattened cell array.
std::string to_text(const GridFunction& f);
GridFunction grid_from_text(const std::string& text);

std::string format_double(double v);
double parse_double(const std::string& token);
std::vector<double> parse_double_list(const std::string& line, char sep = ',');

}  // namespace cpargmin
