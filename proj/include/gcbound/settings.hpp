#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"

namespace gcbound {

// Flat key/value configuration: declared defaults, then a JSON config file,
// then command-line overrides. Keys outside the declared set are rejected.
class Settings {
 public:
  struct Param {
    std::string key;
    nlohmann::json default_value;  // null means "unset"
    std::string help;
  };

  explicit Settings(std::vector<Param> params);

  const std::vector<Param>& params() const { return params_; }

  void load_file(const std::string& path);
  // Parses `text` as a JSON scalar or array when possible, else keeps it as a
  // string.
  void set_from_flag(const std::string& key, const std::string& text);

  bool has(const std::string& key) const;
  double get_double(const std::string& key) const;
  std::int64_t get_int(const std::string& key) const;
  std::size_t get_count(const std::string& key) const;
  bool get_bool(const std::string& key) const;
  std::string get_string(const std::string& key) const;
  std::vector<int> get_int_list(const std::string& key) const;

  const nlohmann::json& values() const { return values_; }

 private:
  const nlohmann::json& at(const std::string& key) const;

  std::vector<Param> params_;
  nlohmann::json values_;
};

// "c_tilde" -> "c-tilde"
std::string flag_name(const std::string& key);

}  // namespace gcbound
