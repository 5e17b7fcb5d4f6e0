#include "cpargmin/cadlag.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <sstream>

#include "cpargmin/error.hpp"

namespace cpargmin {

namespace {

void check_axis(const std::vector<double>& axis, const char* what) {
  for (std::size_t i = 0; i < axis.size(); ++i) {
    if (!std::isfinite(axis[i])) {
      throw Error(ErrorCode::InvalidArgument, std::string(what) + ": breakpoints must be finite");
    }
    if (i > 0 && !(axis[i - 1] < axis[i])) {
      throw Error(ErrorCode::InvalidArgument, std::string(what) + ": breakpoints must be strictly increasing");
    }
  }
}

void check_values(const std::vector<double>& values, const char* what) {
  for (double v : values) {
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::InvalidArgument, std::string(what) + ": values must be finite");
    }
  }
}

std::vector<double> merge_axes(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::size_t cell_index(const std::vector<double>& axis, double t) {
  return static_cast<std::size_t>(std::upper_bound(axis.begin(), axis.end(), t) - axis.begin());
}

std::size_t left_cell_index(const std::vector<double>& axis, double t) {
  return static_cast<std::size_t>(std::lower_bound(axis.begin(), axis.end(), t) - axis.begin());
}

// Per-axis face code: 2c for the interior of cell c, 2j+1 for breakpoint j.
std::size_t face_code(const std::vector<double>& axis, double t) {
  auto it = std::lower_bound(axis.begin(), axis.end(), t);
  auto j = static_cast<std::size_t>(it - axis.begin());
  if (it != axis.end() && *it == t) return 2 * j + 1;
  return 2 * j;
}

std::vector<std::size_t> make_strides(const std::vector<std::size_t>& extents) {
  std::vector<std::size_t> strides(extents.size(), 1);
  for (std::size_t i = extents.size(); i-- > 1;) strides[i - 1] = strides[i] * extents[i];
  return strides;
}

std::vector<std::size_t> extents_of(const std::vector<std::vector<double>>& axes) {
  std::vector<std::size_t> e;
  for (const auto& a : axes) e.push_back(a.size() + 1);
  return e;
}

// Advance a mixed-radix counter; returns false once it wraps around.
bool next_index(std::vector<std::size_t>& idx, const std::vector<std::size_t>& extents) {
  for (std::size_t i = idx.size(); i-- > 0;) {
    if (++idx[i] < extents[i]) return true;
    idx[i] = 0;
  }
  return false;
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

// ---------------------------------------------------------------- StepFunction1D

StepFunction1D::StepFunction1D(std::vector<double> breakpoints, std::vector<double> values)
    : breakpoints_(std::move(breakpoints)), values_(std::move(values)) {
  check_axis(breakpoints_, "StepFunction1D");
  if (values_.size() != breakpoints_.size() + 1) {
    throw Error(ErrorCode::InvalidArgument, "StepFunction1D: need exactly one more value than breakpoints");
  }
  check_values(values_, "StepFunction1D");
}

std::size_t StepFunction1D::cell_of(double t) const { return cell_index(breakpoints_, t); }

double StepFunction1D::left_limit(double t) const { return values_[left_cell_index(breakpoints_, t)]; }

// ------------------------------------------------------------------ GridFunction

GridFunction::GridFunction(std::vector<std::vector<double>> axes, std::vector<double> cells)
    : axes_(std::move(axes)), cells_(std::move(cells)) {
  if (axes_.empty() || axes_.size() > 3) {
    throw Error(ErrorCode::InvalidArgument, "GridFunction: dimension must be 1, 2 or 3");
  }
  for (const auto& a : axes_) check_axis(a, "GridFunction");
  auto extents = extents_of(axes_);
  std::size_t total = 1;
  for (auto e : extents) total *= e;
  if (cells_.size() != total) {
    throw Error(ErrorCode::InvalidArgument, "GridFunction: cell array does not match axis shape");
  }
  check_values(cells_, "GridFunction");
  strides_ = make_strides(extents);
}

GridFunction GridFunction::from_step(const StepFunction1D& f) {
  return GridFunction({f.breakpoints()}, f.values());
}

std::size_t GridFunction::flat_index(std::span<const std::size_t> index) const {
  std::size_t flat = 0;
  for (std::size_t i = 0; i < index.size(); ++i) flat += index[i] * strides_[i];
  return flat;
}

double GridFunction::operator()(std::span<const double> t) const {
  if (t.size() != dim()) throw Error(ErrorCode::InvalidArgument, "GridFunction: point has wrong dimension");
  std::size_t flat = 0;
  for (std::size_t i = 0; i < t.size(); ++i) flat += cell_index(axes_[i], t[i]) * strides_[i];
  return cells_[flat];
}

double GridFunction::quadrant_limit(std::span<const double> t, const Quadrant& q) const {
  if (t.size() != dim() || q.dim() != dim()) {
    throw Error(ErrorCode::InvalidArgument, "GridFunction: point or quadrant has wrong dimension");
  }
  std::size_t flat = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    auto c = q.relations[i] == Relation::AtOrAbove ? cell_index(axes_[i], t[i]) : left_cell_index(axes_[i], t[i]);
    flat += c * strides_[i];
  }
  return cells_[flat];
}

GridFunction GridFunction::refine(const std::vector<std::vector<double>>& finer_axes) const {
  if (finer_axes.size() != dim()) throw Error(ErrorCode::InvalidArgument, "refine: dimension mismatch");
  // Map each new cell on each axis to the old cell containing it.
  std::vector<std::vector<std::size_t>> map(dim());
  for (std::size_t i = 0; i < dim(); ++i) {
    const auto& fine = finer_axes[i];
    if (!std::includes(fine.begin(), fine.end(), axes_[i].begin(), axes_[i].end())) {
      throw Error(ErrorCode::InvalidArgument, "refine: new axes must contain the old breakpoints");
    }
    map[i].push_back(0);
    for (double b : fine) map[i].push_back(cell_index(axes_[i], b));
  }
  auto extents = extents_of(finer_axes);
  std::vector<double> cells;
  std::size_t total = 1;
  for (auto e : extents) total *= e;
  cells.reserve(total);
  std::vector<std::size_t> idx(dim(), 0);
  do {
    std::size_t flat = 0;
    for (std::size_t i = 0; i < dim(); ++i) flat += map[i][idx[i]] * strides_[i];
    cells.push_back(cells_[flat]);
  } while (next_index(idx, extents));
  return GridFunction(finer_axes, std::move(cells));
}

StepFunction1D GridFunction::to_step() const {
  if (dim() != 1) throw Error(ErrorCode::InvalidArgument, "to_step: grid is not one-dimensional");
  return StepFunction1D(axes_[0], cells_);
}

// ----------------------------------------------------------------- LowerEnvelope

LowerEnvelope::LowerEnvelope(const GridFunction& f) : axes_(f.axes()) {
  const std::size_t d = f.dim();
  std::vector<std::size_t> face_extents;
  for (const auto& a : axes_) face_extents.push_back(2 * a.size() + 1);
  strides_ = make_strides(face_extents);
  std::size_t total = 1;
  for (auto e : face_extents) total *= e;
  face_min_.assign(total, std::numeric_limits<double>::infinity());

  std::vector<std::size_t> face(d, 0);
  std::vector<std::size_t> cell(d, 0);
  std::size_t flat_face = 0;
  do {
    // Adjacent cells: interior code 2c -> {c}; breakpoint code 2j+1 -> {j, j+1}.
    std::vector<std::size_t> lo(d), span(d);
    for (std::size_t i = 0; i < d; ++i) {
      lo[i] = face[i] / 2;
      span[i] = (face[i] % 2 == 1) ? 2 : 1;
    }
    double m = std::numeric_limits<double>::infinity();
    std::vector<std::size_t> off(d, 0);
    do {
      for (std::size_t i = 0; i < d; ++i) cell[i] = lo[i] + off[i];
      m = std::min(m, f.cell(cell));
    } while (next_index(off, span));
    face_min_[flat_face++] = m;
  } while (next_index(face, face_extents));
}

double LowerEnvelope::operator()(std::span<const double> t) const {
  if (t.size() != axes_.size()) throw Error(ErrorCode::InvalidArgument, "LowerEnvelope: wrong dimension");
  std::size_t flat = 0;
  for (std::size_t i = 0; i < t.size(); ++i) flat += face_code(axes_[i], t[i]) * strides_[i];
  return face_min_[flat];
}

// ---------------------------------------------------------------- free functions

double infimum(const StepFunction1D& f) { return *std::min_element(f.values().begin(), f.values().end()); }

double infimum(const GridFunction& f) { return *std::min_element(f.cells().begin(), f.cells().end()); }

StepFunction1D add_scale(const StepFunction1D& f, const StepFunction1D& g, double a, double b) {
  auto r = add_scale(GridFunction::from_step(f), GridFunction::from_step(g), a, b);
  return r.to_step();
}

GridFunction add_scale(const GridFunction& f, const GridFunction& g, double a, double b) {
  if (f.dim() != g.dim()) throw Error(ErrorCode::InvalidArgument, "add_scale: dimension mismatch");
  std::vector<std::vector<double>> axes;
  for (std::size_t i = 0; i < f.dim(); ++i) axes.push_back(merge_axes(f.axis(i), g.axis(i)));
  auto fr = f.refine(axes);
  auto gr = g.refine(axes);
  std::vector<double> cells(fr.cell_count());
  for (std::size_t i = 0; i < cells.size(); ++i) cells[i] = a * fr.cells()[i] + b * gr.cells()[i];
  return GridFunction(std::move(axes), std::move(cells));
}

StepFunction1D normalize(const StepFunction1D& f) {
  std::vector<double> bps;
  std::vector<double> vals{f.values().front()};
  for (std::size_t i = 0; i < f.breakpoints().size(); ++i) {
    if (f.values()[i + 1] != vals.back()) {
      bps.push_back(f.breakpoints()[i]);
      vals.push_back(f.values()[i + 1]);
    }
  }
  return StepFunction1D(std::move(bps), std::move(vals));
}

GridFunction normalize(const GridFunction& f) {
  GridFunction cur = f;
  for (std::size_t axis = 0; axis < cur.dim(); ++axis) {
    const auto extents = extents_of(cur.axes());
    const std::size_t m = cur.axis(axis).size();
    // keep[c] is true when cell c along this axis starts a new slab.
    std::vector<bool> keep(m + 1, true);
    for (std::size_t c = 1; c <= m; ++c) {
      bool same = true;
      std::vector<std::size_t> idx(cur.dim(), 0);
      auto others = extents;
      others[axis] = 1;
      do {
        auto a = idx;
        auto b = idx;
        a[axis] = c - 1;
        b[axis] = c;
        if (cur.cell(a) != cur.cell(b)) {
          same = false;
          break;
        }
      } while (next_index(idx, others));
      keep[c] = !same;
    }
    if (std::all_of(keep.begin(), keep.end(), [](bool k) { return k; })) continue;

    std::vector<double> new_axis;
    std::vector<std::size_t> kept_cells{0};
    for (std::size_t c = 1; c <= m; ++c) {
      if (keep[c]) {
        new_axis.push_back(cur.axis(axis)[c - 1]);
        kept_cells.push_back(c);
      }
    }
    auto axes = cur.axes();
    axes[axis] = new_axis;
    auto new_extents = extents_of(axes);
    std::vector<double> cells;
    std::vector<std::size_t> idx(cur.dim(), 0);
    do {
      auto src = idx;
      src[axis] = kept_cells[idx[axis]];
      cells.push_back(cur.cell(src));
    } while (next_index(idx, new_extents));
    cur = GridFunction(std::move(axes), std::move(cells));
  }
  return cur;
}

// ------------------------------------------------------------------ text format

std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_double(const std::string& token) {
  const std::string t = trim(token);
  if (t == "inf" || t == "+inf") return std::numeric_limits<double>::infinity();
  if (t == "-inf") return -std::numeric_limits<double>::infinity();
  if (t.empty()) throw Error(ErrorCode::Parse, "empty number");
  char* end = nullptr;
  double v = std::strtod(t.c_str(), &end);
  if (end != t.c_str() + t.size()) throw Error(ErrorCode::Parse, "not a number: '" + t + "'");
  return v;
}

std::vector<double> parse_double_list(const std::string& line, char sep) {
  std::vector<double> out;
  if (trim(line).empty()) return out;
  std::stringstream ss(line);
  std::string tok;
  while (std::getline(ss, tok, sep)) out.push_back(parse_double(tok));
  return out;
}

namespace {

std::string join(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += format_double(v[i]);
  }
  return s;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) lines.push_back(line);
  return lines;
}

}  // namespace

std::string to_text(const StepFunction1D& f) { return join(f.breakpoints()) + "\n" + join(f.values()) + "\n"; }

StepFunction1D step_from_text(const std::string& text) {
  auto lines = lines_of(text);
  if (lines.size() < 2) throw Error(ErrorCode::Parse, "step function needs two lines");
  return StepFunction1D(parse_double_list(lines[0]), parse_double_list(lines[1]));
}

std::string to_text(const GridFunction& f) {
  std::string s = std::to_string(f.dim()) + "\n";
  for (const auto& a : f.axes()) s += join(a) + "\n";
  s += join(f.cells()) + "\n";
  return s;
}

GridFunction grid_from_text(const std::string& text) {
  auto lines = lines_of(text);
  if (lines.empty()) throw Error(ErrorCode::Parse, "grid function is empty");
  auto d = static_cast<std::size_t>(parse_double(lines[0]));
  if (d < 1 || d > 3 || lines.size() < d + 2) throw Error(ErrorCode::Parse, "grid function header is malformed");
  std::vector<std::vector<double>> axes;
  for (std::size_t i = 0; i < d; ++i) axes.push_back(parse_double_list(lines[1 + i]));
  return GridFunction(std::move(axes), parse_double_list(lines[1 + d]));
}

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::EmptySet: return "EmptySet";
    case ErrorCode::Unbounded: return "Unbounded";
    case ErrorCode::NonCompact: return "NonCompact";
    case ErrorCode::InvalidSpec: return "InvalidSpec";
    case ErrorCode::TooManyRedraws: return "TooManyRedraws";
    case ErrorCode::EmptySamples: return "EmptySamples";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::EmptySegment: return "EmptySegment";
    case ErrorCode::TooFewDistinctX: return "TooFewDistinctX";
    case ErrorCode::BadBounds: return "BadBounds";
    case ErrorCode::NonpositiveJumpMean: return "NonpositiveJumpMean";
    case ErrorCode::CollapsedOrder: return "CollapsedOrder";
    case ErrorCode::Parse: return "Parse";
  }
  return "Unknown";
}

}  // namespace cpargmin
