#include "polyscat/config.hpp"

#include <fstream>
#include <sstream>

namespace polyscat {

KeyValueConfig KeyValueConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return from_string(ss.str(), path);
}

namespace {
std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}
}  // namespace

KeyValueConfig KeyValueConfig::from_string(const std::string& text, const std::string& label) {
  KeyValueConfig cfg;
  cfg.label_ = label;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw ParseError(label + ":" + std::to_string(line_no) + ": expected 'key = value': '" + t + "'");
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    if (key.empty())
      throw ParseError(label + ":" + std::to_string(line_no) + ": empty key");
    cfg.entries_.emplace_back(key, value);
  }
  return cfg;
}

std::optional<std::string> KeyValueConfig::find(const std::string& key) const {
  // last value wins so CLI overrides can append
  std::optional<std::string> result;
  for (const auto& [k, v] : entries_)
    if (k == key) result = v;
  return result;
}

bool KeyValueConfig::has(const std::string& key) const { return find(key).has_value(); }

std::string KeyValueConfig::get_string(const std::string& key) const {
  auto v = find(key);
  if (!v) throw ValidationError(label_ + ": missing required key '" + key + "'");
  return *v;
}

std::string KeyValueConfig::get_string(const std::string& key, const std::string& fallback) const {
  auto v = find(key);
  return v ? *v : fallback;
}

double KeyValueConfig::get_double(const std::string& key) const {
  const std::string v = get_string(key);
  size_t pos = 0;
  double out = 0.0;
  try {
    out = std::stod(v, &pos);
  } catch (const std::exception&) {
    throw ParseError(label_ + ": key '" + key + "' is not a number: '" + v + "'");
  }
  if (pos != v.size())
    throw ParseError(label_ + ": key '" + key + "' has trailing junk: '" + v + "'");
  return out;
}

double KeyValueConfig::get_double(const std::string& key, double fallback) const {
  return has(key) ? get_double(key) : fallback;
}

int KeyValueConfig::get_int(const std::string& key) const {
  const double d = get_double(key);
  const int i = static_cast<int>(d);
  if (static_cast<double>(i) != d)
    throw ParseError(label_ + ": key '" + key + "' is not an integer");
  return i;
}

int KeyValueConfig::get_int(const std::string& key, int fallback) const {
  return has(key) ? get_int(key) : fallback;
}

Vec3 KeyValueConfig::get_vec3(const std::string& prefix) const {
  return Vec3(get_double(prefix + ".x"), get_double(prefix + ".y"), get_double(prefix + ".z"));
}

Vec3 KeyValueConfig::get_vec3(const std::string& prefix, const Vec3& fallback) const {
  if (!has(prefix + ".x") && !has(prefix + ".y") && !has(prefix + ".z")) return fallback;
  return get_vec3(prefix);
}

void KeyValueConfig::set(const std::string& key, const std::string& value) {
  entries_.emplace_back(key, value);
}

}  // namespace polyscat
