#pragma once

// "key = value" text files. Blank lines and '#' comments are ignored; keys
// must be unique.

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace cpargmin {

class KeyValueFile {
 public:
  static KeyValueFile parse(const std::string& text);
  static KeyValueFile load(const std::string& path);

  bool has(const std::string& key) const { return entries_.count(key) != 0; }
  std::optional<std::string> get(const std::string& key) const;
  // Throws a Parse error naming the missing key.
  const std::string& require(const std::string& key) const;
  double require_double(const std::string& key) const;
  double get_double(const std::string& key, double fallback) const;
  long long require_int(const std::string& key) const;
  long long get_int(const std::string& key, long long fallback) const;

  // Keys beginning with `prefix`, in file order.
  std::vector<std::string> keys_with_prefix(const std::string& prefix) const;

 private:
  std::map<std::string, std::string> entries_;
  std::vector<std::string> order_;
};

std::string read_file(const std::string& path);
std::vector<std::string> split_trimmed(const std::string& text, char sep);
std::string trim_copy(const std::string& s);

}  // namespace cpargmin
