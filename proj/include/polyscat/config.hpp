// config.hpp -- line-oriented `key = value` scenario configuration files.
// Lines starting with '#' are comments; keys keep file order.

#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "polyscat/common.hpp"

namespace polyscat {

class KeyValueConfig {
public:
  static KeyValueConfig from_file(const std::string& path);
  static KeyValueConfig from_string(const std::string& text, const std::string& label = "<string>");

  bool has(const std::string& key) const;
  std::string get_string(const std::string& key) const;
  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key) const;
  double get_double(const std::string& key, double fallback) const;
  int get_int(const std::string& key) const;
  int get_int(const std::string& key, int fallback) const;
  // three keys `prefix.x`, `prefix.y`, `prefix.z`
  Vec3 get_vec3(const std::string& prefix) const;
  Vec3 get_vec3(const std::string& prefix, const Vec3& fallback) const;

  void set(const std::string& key, const std::string& value);
  const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }

private:
  std::optional<std::string> find(const std::string& key) const;
  std::vector<std::pair<std::string, std::string>> entries_;
  std::string label_;
};

}  // namespace polyscat
