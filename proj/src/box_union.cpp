#include "cpargmin/box_union.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cpargmin/cadlag.hpp"
#include "cpargmin/error.hpp"

namespace cpargmin {

namespace {

bool subset(const Box& a, const Box& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].lo < b[i].lo || a[i].hi > b[i].hi) return false;
  }
  return true;
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

// Split "[a,b] u [c,d]" into its interval tokens.
std::vector<std::string> split_union(const std::string& text) {
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : text) {
    if (ch == 'u' || ch == 'U' || ch == '|') {
      parts.push_back(trim(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  parts.push_back(trim(cur));
  return parts;
}

struct RawInterval {
  char open_bracket;
  double lo;
  double hi;
  char close_bracket;
};

RawInterval parse_raw_interval(const std::string& token) {
  const std::string t = trim(token);
  if (t.size() < 5) throw Error(ErrorCode::Parse, "malformed interval '" + t + "'");
  auto comma = t.find(',');
  if (comma == std::string::npos) throw Error(ErrorCode::Parse, "interval needs a comma: '" + t + "'");
  RawInterval r{t.front(), parse_double(t.substr(1, comma - 1)), parse_double(t.substr(comma + 1, t.size() - comma - 2)),
                t.back()};
  if ((r.open_bracket != '[' && r.open_bracket != '(') || (r.close_bracket != ']' && r.close_bracket != ')')) {
    throw Error(ErrorCode::Parse, "interval must use brackets: '" + t + "'");
  }
  if (std::isnan(r.lo) || std::isnan(r.hi) || r.lo > r.hi) {
    throw Error(ErrorCode::Parse, "interval endpoints out of order: '" + t + "'");
  }
  return r;
}

}  // namespace

BoxUnion::BoxUnion(std::size_t dim, std::vector<Box> boxes) : dim_(dim) {
  for (const auto& b : boxes) {
    if (b.size() != dim_) throw Error(ErrorCode::InvalidArgument, "BoxUnion: box has wrong dimension");
    for (const auto& iv : b) {
      if (std::isnan(iv.lo) || std::isnan(iv.hi) || iv.lo > iv.hi || iv.lo == kInf || iv.hi == -kInf) {
        throw Error(ErrorCode::InvalidArgument, "BoxUnion: empty or malformed interval");
      }
    }
  }
  std::sort(boxes.begin(), boxes.end());
  boxes.erase(std::unique(boxes.begin(), boxes.end()), boxes.end());
  if (dim_ == 1) {
    for (auto& b : boxes) {
      if (!boxes_.empty() && b[0].lo <= boxes_.back()[0].hi) {
        boxes_.back()[0].hi = std::max(boxes_.back()[0].hi, b[0].hi);
      } else {
        boxes_.push_back(b);
      }
    }
    return;
  }
  for (std::size_t i = 0; i < boxes.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < boxes.size() && !dominated; ++j) {
      if (i != j && subset(boxes[i], boxes[j])) dominated = true;
    }
    if (!dominated) boxes_.push_back(boxes[i]);
  }
}

BoxUnion BoxUnion::point(std::span<const double> p) {
  Box b;
  for (double v : p) b.push_back(Interval{v, v});
  return BoxUnion(p.size(), {b});
}

bool BoxUnion::bounded() const {
  return std::all_of(boxes_.begin(), boxes_.end(), [](const Box& b) {
    return std::all_of(b.begin(), b.end(), [](const Interval& iv) { return iv.bounded(); });
  });
}

bool BoxUnion::contains(std::span<const double> p) const {
  for (const auto& b : boxes_) {
    bool in = true;
    for (std::size_t i = 0; i < dim_ && in; ++i) in = b[i].contains(p[i]);
    if (in) return true;
  }
  return false;
}

OpenBoxUnion::OpenBoxUnion(std::size_t dim, std::vector<OpenBox> boxes) : dim_(dim) {
  for (const auto& b : boxes) {
    if (b.size() != dim_) throw Error(ErrorCode::InvalidArgument, "OpenBoxUnion: box has wrong dimension");
    bool empty = false;
    for (const auto& iv : b) {
      if (std::isnan(iv.lo) || std::isnan(iv.hi)) throw Error(ErrorCode::InvalidArgument, "OpenBoxUnion: NaN");
      if (!(iv.lo < iv.hi)) empty = true;
    }
    if (!empty) boxes_.push_back(b);
  }
}

bool OpenBoxUnion::contains(std::span<const double> p) const {
  for (const auto& b : boxes_) {
    bool in = true;
    for (std::size_t i = 0; i < dim_ && in; ++i) in = b[i].contains(p[i]);
    if (in) return true;
  }
  return false;
}

std::string to_text(const BoxUnion& u) {
  std::string s;
  for (const auto& b : u.boxes()) {
    for (std::size_t i = 0; i < b.size(); ++i) {
      if (i) s += ' ';
      s += "[" + format_double(b[i].lo) + "," + format_double(b[i].hi) + "]";
    }
    s += '\n';
  }
  return s;
}

BoxUnion box_union_from_text(const std::string& text, std::size_t dim) {
  std::vector<Box> boxes;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) {
    if (trim(line).empty()) continue;
    std::stringstream ls(line);
    std::string tok;
    Box b;
    while (ls >> tok) {
      auto r = parse_raw_interval(tok);
      b.push_back(Interval{r.lo, r.hi});
    }
    if (b.size() != dim) throw Error(ErrorCode::Parse, "box has " + std::to_string(b.size()) + " coordinates");
    boxes.push_back(std::move(b));
  }
  return BoxUnion(dim, std::move(boxes));
}

BoxUnion parse_closed_set_1d(const std::string& text) {
  const std::string t = trim(text);
  if (t == "all") return BoxUnion::everything(1);
  if (t == "empty") return BoxUnion(1);
  std::vector<Box> boxes;
  for (const auto& part : split_union(t)) {
    auto r = parse_raw_interval(part);
    if ((r.open_bracket == '(' && std::isfinite(r.lo)) || (r.close_bracket == ')' && std::isfinite(r.hi))) {
      throw Error(ErrorCode::Parse, "closed set cannot exclude a finite endpoint: '" + part + "'");
    }
    boxes.push_back(Box{Interval{r.lo, r.hi}});
  }
  return BoxUnion(1, std::move(boxes));
}

OpenBoxUnion parse_open_set_1d(const std::string& text) {
  const std::string t = trim(text);
  if (t == "all") return OpenBoxUnion::everything(1);
  if (t == "empty") return OpenBoxUnion(1);
  std::vector<OpenBox> boxes;
  for (const auto& part : split_union(t)) {
    auto r = parse_raw_interval(part);
    if (r.open_bracket != '(' || r.close_bracket != ')') {
      throw Error(ErrorCode::Parse, "open set must use parentheses: '" + part + "'");
    }
    boxes.push_back(OpenBox{OpenInterval{r.lo, r.hi}});
  }
  return OpenBoxUnion(1, std::move(boxes));
}

std::string describe(const BoxUnion& u) {
  if (u.empty()) return "empty";
  std::string s;
  for (std::size_t i = 0; i < u.boxes().size(); ++i) {
    if (i) s += " u ";
    for (std::size_t c = 0; c < u.dim(); ++c) {
      if (c) s += "x";
      const auto& iv = u.boxes()[i][c];
      s += "[" + format_double(iv.lo) + "," + format_double(iv.hi) + "]";
    }
  }
  return s;
}

std::string describe(const OpenBoxUnion& u) {
  if (u.boxes().empty()) return "empty";
  std::string s;
  for (std::size_t i = 0; i < u.boxes().size(); ++i) {
    if (i) s += " u ";
    for (std::size_t c = 0; c < u.dim(); ++c) {
      if (c) s += "x";
      const auto& iv = u.boxes()[i][c];
      s += "(" + format_double(iv.lo) + "," + format_double(iv.hi) + ")";
    }
  }
  return s;
}

}  // namespace cpargmin
