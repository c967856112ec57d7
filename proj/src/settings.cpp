#include "gcbound/settings.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "gcbound/errors.hpp"

namespace gcbound {

Settings::Settings(std::vector<Param> params) : params_(std::move(params)), values_(nlohmann::json::object()) {
  for (const Param& p : params_) values_[p.key] = p.default_value;
}

void Settings::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config file '" + path + "' is not valid JSON: " + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config file '" + path + "' must hold a JSON object");
  for (const auto& [key, value] : doc.items()) {
    if (!values_.contains(key)) throw ConfigError("unknown config key '" + key + "' in '" + path + "'");
    if (value.is_object()) throw ConfigError("config key '" + key + "' must not be an object (flat schema)");
    values_[key] = value;
  }
}

void Settings::set_from_flag(const std::string& key, const std::string& text) {
  if (!values_.contains(key)) throw ConfigError("unknown option --" + flag_name(key));
  nlohmann::json parsed = nlohmann::json::parse(text, nullptr, false);
  if (parsed.is_discarded() || parsed.is_object() || parsed.is_null()) {
    values_[key] = text;
  } else {
    values_[key] = parsed;
  }
}

const nlohmann::json& Settings::at(const std::string& key) const {
  if (!values_.contains(key)) throw ConfigError("setting '" + key + "' is not declared");
  const auto& v = values_.at(key);
  if (v.is_null()) throw ConfigError("setting '" + key + "' is required");
  return v;
}

bool Settings::has(const std::string& key) const { return values_.contains(key) && !values_.at(key).is_null(); }

double Settings::get_double(const std::string& key) const {
  const auto& v = at(key);
  if (!v.is_number()) throw ConfigError("setting '" + key + "' must be a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw ConfigError("setting '" + key + "' must be finite");
  return d;
}

std::int64_t Settings::get_int(const std::string& key) const {
  const auto& v = at(key);
  if (v.is_number_integer()) return v.get<std::int64_t>();
  if (v.is_number_float()) {
    const double d = v.get<double>();
    if (std::floor(d) == d && std::abs(d) < 9e15) return static_cast<std::int64_t>(d);
  }
  throw ConfigError("setting '" + key + "' must be an integer");
}

std::size_t Settings::get_count(const std::string& key) const {
  const std::int64_t v = get_int(key);
  if (v < 0) throw ConfigError("setting '" + key + "' must be non-negative");
  return static_cast<std::size_t>(v);
}

bool Settings::get_bool(const std::string& key) const {
  const auto& v = at(key);
  if (v.is_boolean()) return v.get<bool>();
  throw ConfigError("setting '" + key + "' must be true or false");
}

std::string Settings::get_string(const std::string& key) const {
  const auto& v = at(key);
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number()) return v.dump();
  throw ConfigError("setting '" + key + "' must be a string");
}

std::vector<int> Settings::get_int_list(const std::string& key) const {
  const auto& v = at(key);
  std::vector<int> out;
  if (v.is_array()) {
    for (const auto& e : v) {
      if (!e.is_number_integer()) throw ConfigError("setting '" + key + "' must list integers");
      out.push_back(e.get<int>());
    }
    return out;
  }
  if (v.is_number_integer()) return {v.get<int>()};
  if (v.is_string()) {
    std::stringstream ss(v.get<std::string>());
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        std::size_t used = 0;
        out.push_back(std::stoi(item, &used));
        if (used != item.size()) throw std::invalid_argument(item);
      } catch (const std::exception&) {
        throw ConfigError("setting '" + key + "' must be a comma-separated integer list");
      }
    }
    return out;
  }
  throw ConfigError("setting '" + key + "' must be an integer list");
}

std::string flag_name(const std::string& key) {
  std::string out = key;
  std::replace(out.begin(), out.end(), '_', '-');
  return out;
}

}  // namespace gcbound
