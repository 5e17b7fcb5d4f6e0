#include "cpargmin/keyvalue.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "cpargmin/cadlag.hpp"
#include "cpargmin/error.hpp"

namespace cpargmin {

std::string trim_copy(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_trimmed(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, sep)) out.push_back(trim_copy(part));
  if (!text.empty() && text.back() == sep) out.emplace_back();
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Parse, "cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

KeyValueFile KeyValueFile::parse(const std::string& text) {
  KeyValueFile kv;
  std::stringstream ss(text);
  std::string line;
  int number = 0;
  while (std::getline(ss, line)) {
    ++number;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim_copy(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::Parse, "line " + std::to_string(number) + ": expected 'key = value'");
    }
    std::string key = trim_copy(line.substr(0, eq));
    std::string value = trim_copy(line.substr(eq + 1));
    if (key.empty()) throw Error(ErrorCode::Parse, "line " + std::to_string(number) + ": empty key");
    if (kv.entries_.count(key)) {
      throw Error(ErrorCode::Parse, "line " + std::to_string(number) + ": duplicate key '" + key + "'");
    }
    kv.entries_[key] = value;
    kv.order_.push_back(key);
  }
  return kv;
}

KeyValueFile KeyValueFile::load(const std::string& path) { return parse(read_file(path)); }

std::optional<std::string> KeyValueFile::get(const std::string& key) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

const std::string& KeyValueFile::require(const std::string& key) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) throw Error(ErrorCode::Parse, "missing required key '" + key + "'");
  return it->second;
}

double KeyValueFile::require_double(const std::string& key) const {
  try {
    return parse_double(require(key));
  } catch (const Error& e) {
    if (!has(key)) throw;
    throw Error(ErrorCode::Parse, "key '" + key + "': " + e.what());
  }
}

double KeyValueFile::get_double(const std::string& key, double fallback) const {
  return has(key) ? require_double(key) : fallback;
}

long long KeyValueFile::require_int(const std::string& key) const {
  double v = require_double(key);
  if (v != std::floor(v) || std::abs(v) > 9e15) {
    throw Error(ErrorCode::Parse, "key '" + key + "' must be an integer");
  }
  return static_cast<long long>(v);
}

long long KeyValueFile::get_int(const std::string& key, long long fallback) const {
  return has(key) ? require_int(key) : fallback;
}

std::vector<std::string> KeyValueFile::keys_with_prefix(const std::string& prefix) const {
  std::vector<std::string> out;
  for (const auto& k : order_) {
    if (k.rfind(prefix, 0) == 0) out.push_back(k);
  }
  return out;
}

}  // namespace cpargmin
