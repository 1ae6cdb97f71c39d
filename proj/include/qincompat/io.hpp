// Copyright 2026 The qincompat Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef QINCOMPAT_IO_HPP_
#define QINCOMPAT_IO_HPP_

// Text and JSON formats used by the command-line tool.
//
//   directions: {"directions": [[x, y, z], ...], "labels": ["...", ...]}
//   state:      {"dim": 4, "re": [[...], ...], "im": [[...], ...]}   row-major, index 2*i_A + i_B
//   settings:   {"settings": [{"alice": [x, y, z], "bob": [x, y, z]}, ...]}

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "qincompat/criteria.hpp"
#include "qincompat/incompatibility.hpp"
#include "qincompat/oracle.hpp"
#include "qincompat/states.hpp"

namespace qincompat {

using nlohmann::json;

class ParseError : public ValidationError {
 public:
  ParseError(const std::string& what, std::size_t position)
      : ValidationError(what + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

namespace detail {

class AngleLexer {
 public:
  explicit AngleLexer(std::string_view text) : s_(text) {}

  void skip_ws() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t')) ++pos_;
  }
  bool done() {
    skip_ws();
    return pos_ >= s_.size();
  }
  bool accept(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  bool accept_pi() {
    skip_ws();
    if (s_.substr(pos_, 2) == "pi" || s_.substr(pos_, 2) == "PI") {
      pos_ += 2;
      return true;
    }
    return false;
  }
  bool at_number() {
    skip_ws();
    return pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.');
  }
  long double number() {
    skip_ws();
    const std::size_t start = pos_;
    bool digits = false;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_, digits = true;
    if (pos_ < s_.size() && s_[pos_] == '.') {
      ++pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_, digits = true;
    }
    if (digits && pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
      std::size_t p = pos_ + 1;
      if (p < s_.size() && (s_[p] == '-' || s_[p] == '+')) ++p;
      if (p < s_.size() && std::isdigit(static_cast<unsigned char>(s_[p]))) {
        pos_ = p;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      }
    }
    if (!digits) throw ParseError("expected a number", start);
    return std::stold(std::string(s_.substr(start, pos_ - start)));
  }
  std::size_t pos() const { return pos_; }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Accepts `k*pi/m`, `pi/m`, `k*pi`, `pi` (with an optional leading sign) or a
/// plain decimal number of radians.
inline double parse_angle(std::string_view text) {
  detail::AngleLexer lex(text);
  if (lex.done()) throw ParseError("empty angle", 0);

  long double value = 0.0L;
  long double sign = 1.0L;
  if (lex.accept('-')) sign = -1.0L;
  else lex.accept('+');

  if (lex.accept_pi()) {
    value = std::numbers::pi_v<long double>;
  } else if (lex.at_number()) {
    value = lex.number();
    if (lex.accept('*')) {
      if (!lex.accept_pi()) throw ParseError("expected 'pi' after '*'", lex.pos());
      value *= std::numbers::pi_v<long double>;
    } else {
      if (!lex.done()) throw ParseError("unexpected character", lex.pos());
      return static_cast<double>(sign * value);
    }
  } else {
    throw ParseError("expected a number or 'pi'", lex.pos());
  }

  if (lex.accept('/')) {
    const std::size_t at = lex.pos();
    const long double denom = lex.number();
    if (denom == 0.0L) throw ParseError("division by zero", at);
    value /= denom;
  }
  if (!lex.done()) throw ParseError("unexpected character", lex.pos());
  return static_cast<double>(sign * value);
}

/// Rounds half away from zero to five decimals and formats with exactly five.
inline std::string fixed5(double v) {
  double r = std::round(v * 1e5) / 1e5;
  if (r == 0.0) r = 0.0;  // drop the sign of negative zero
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.5f", r);
  return buf;
}

// ---------------------------------------------------------------------------
// Input files

struct DirectionFile {
  ObservableSet directions;
  std::vector<std::string> labels;
};

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

inline Vec3 vec3_from_json(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 3) throw ValidationError(where + ": expected [x, y, z]");
  Vec3 v;
  for (std::size_t k = 0; k < 3; ++k) {
    if (!j[k].is_number()) throw ValidationError(where + ": components must be numbers");
    v[k] = j[k].get<double>();
  }
  return v;
}

inline json vec3_to_json(Vec3 v) { return json::array({v.x, v.y, v.z}); }

inline DirectionFile parse_direction_file(const json& j) {
  if (!j.is_object() || !j.contains("directions") || !j["directions"].is_array())
    throw ValidationError("direction file needs a \"directions\" array");
  std::vector<Vec3> dirs;
  for (std::size_t i = 0; i < j["directions"].size(); ++i)
    dirs.push_back(vec3_from_json(j["directions"][i], "directions[" + std::to_string(i) + "]"));
  std::vector<std::string> labels;
  if (j.contains("labels")) {
    if (!j["labels"].is_array() || j["labels"].size() != dirs.size())
      throw ValidationError("\"labels\" must be an array with one entry per direction");
    for (const auto& l : j["labels"]) {
      if (!l.is_string()) throw ValidationError("labels must be strings");
      labels.push_back(l.get<std::string>());
    }
  }
  return {ObservableSet(std::move(dirs)), std::move(labels)};
}

inline json direction_file_to_json(const ObservableSet& set) {
  json dirs = json::array();
  for (const Vec3& n : set) dirs.push_back(vec3_to_json(n));
  return {{"directions", dirs}};
}

using AnyState = std::variant<QubitState, TwoQubitState>;

template <std::size_t D>
HermMat<D> hermmat_from_json(const json& j) {
  typename HermMat<D>::Plane re{}, im{};
  const auto fill = [&](const char* key, typename HermMat<D>::Plane& plane, bool required) {
    if (!j.contains(key)) {
      if (required) throw ValidationError(std::string("state file needs \"") + key + "\"");
      return;
    }
    const json& rows = j[key];
    if (!rows.is_array() || rows.size() != D)
      throw ValidationError(std::string("\"") + key + "\" must have " + std::to_string(D) + " rows");
    for (std::size_t r = 0; r < D; ++r) {
      if (!rows[r].is_array() || rows[r].size() != D)
        throw ValidationError(std::string("\"") + key + "\" rows must have " + std::to_string(D) + " entries");
      for (std::size_t c = 0; c < D; ++c) {
        if (!rows[r][c].is_number()) throw ValidationError("matrix entries must be numbers");
        plane[r * D + c] = rows[r][c].get<double>();
      }
    }
  };
  fill("re", re, true);
  fill("im", im, false);
  return HermMat<D>(re, im);
}

template <std::size_t D>
json hermmat_to_json(const HermMat<D>& m) {
  json re = json::array(), im = json::array();
  for (std::size_t r = 0; r < D; ++r) {
    json rr = json::array(), ri = json::array();
    for (std::size_t c = 0; c < D; ++c) {
      rr.push_back(m(r, c).real());
      ri.push_back(m(r, c).imag());
    }
    re.push_back(rr);
    im.push_back(ri);
  }
  return {{"dim", D}, {"re", re}, {"im", im}};
}

inline AnyState parse_state_file(const json& j) {
  if (!j.is_object() || !j.contains("dim") || !j["dim"].is_number_integer())
    throw ValidationError("state file needs an integer \"dim\"");
  const int dim = j["dim"].get<int>();
  if (dim == 4) return TwoQubitState(hermmat_from_json<4>(j));
  if (dim == 2) return qubit_state(DensityMatrix<2>(hermmat_from_json<2>(j)));
  throw ValidationError("\"dim\" must be 2 or 4");
}

namespace detail {

inline Vec3 parse_csv_vec3(std::string_view text, std::size_t offset) {
  Vec3 v;
  std::size_t start = 0;
  for (std::size_t k = 0; k < 3; ++k) {
    const std::size_t comma = text.find(',', start);
    const bool last = k == 2;
    if (last != (comma == std::string_view::npos)) throw ParseError("expected three comma-separated numbers", offset);
    const std::string piece(text.substr(start, last ? std::string_view::npos : comma - start));
    std::size_t used = 0;
    try {
      v[k] = std::stod(piece, &used);
    } catch (const std::exception&) {
      throw ParseError("invalid number '" + piece + "'", offset + start);
    }
    if (used != piece.size()) throw ParseError("invalid number '" + piece + "'", offset + start);
    start = comma + 1;
  }
  return v;
}

}  // namespace detail

/// `singlet`, `werner:p`, `product:ax,ay,az:bx,by,bz`; std::nullopt if the
/// text names none of these.
inline std::optional<TwoQubitState> parse_builtin_state(std::string_view text) {
  if (text == "singlet") return singlet();
  if (text.starts_with("werner:")) {
    const std::string p(text.substr(7));
    std::size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(p, &used);
    } catch (const std::exception&) {
      throw ParseError("invalid Werner parameter '" + p + "'", 7);
    }
    if (used != p.size()) throw ParseError("invalid Werner parameter '" + p + "'", 7);
    return werner(value);
  }
  if (text.starts_with("product:")) {
    const std::string_view rest = text.substr(8);
    const std::size_t colon = rest.find(':');
    if (colon == std::string_view::npos) throw ParseError("product state needs two Bloch vectors", 8);
    const Vec3 a = detail::parse_csv_vec3(rest.substr(0, colon), 8);
    const Vec3 b = detail::parse_csv_vec3(rest.substr(colon + 1), 8 + colon + 1);
    return product_state(a, b);
  }
  return std::nullopt;
}

inline std::vector<SteeringSetting> parse_settings_file(const json& j) {
  if (!j.is_object() || !j.contains("settings") || !j["settings"].is_array())
    throw ValidationError("settings file needs a \"settings\" array");
  std::vector<SteeringSetting> out;
  for (std::size_t i = 0; i < j["settings"].size(); ++i) {
    const json& s = j["settings"][i];
    const std::string where = "settings[" + std::to_string(i) + "]";
    if (!s.is_object() || !s.contains("alice") || !s.contains("bob"))
      throw ValidationError(where + " needs \"alice\" and \"bob\"");
    out.push_back({vec3_from_json(s["alice"], where + ".alice"), vec3_from_json(s["bob"], where + ".bob")});
  }
  if (out.empty()) throw ValidationError("settings file has no settings");
  return out;
}

// ---------------------------------------------------------------------------
// Reports

inline void to_json(json& j, const IncompatibilityResult& r) {
  j = {{"value", r.value},
       {"lambda_max", r.lambda_max},
       {"optimizer", vec3_to_json(r.optimizer)},
       {"alpha", r.coefficients.alpha},
       {"beta", r.coefficients.beta},
       {"traces", {{"tau1", r.traces.tau1}, {"tau2", r.traces.tau2}, {"tau3", r.traces.tau3}}},
       {"method", to_string(r.method)}};
}

inline void from_json(const json& j, IncompatibilityResult& r) {
  r.value = j.at("value").get<double>();
  r.lambda_max = j.at("lambda_max").get<double>();
  r.optimizer = vec3_from_json(j.at("optimizer"), "optimizer");
  r.coefficients.alpha = j.at("alpha").get<double>();
  r.coefficients.beta = j.at("beta").get<double>();
  const json& t = j.at("traces");
  r.traces = {t.at("tau1").get<double>(), t.at("tau2").get<double>(), t.at("tau3").get<double>()};
  const std::string m = j.at("method").get<std::string>();
  if (m == "closed_form") r.method = Method::closed_form;
  else if (m == "jacobi") r.method = Method::jacobi;
  else throw ValidationError("unknown method '" + m + "'");
}

inline void to_json(json& j, const OracleResult& r) {
  j = {{"value", r.value},
       {"argmin", vec3_to_json(r.argmin)},
       {"points_evaluated", r.points_evaluated},
       {"resolution_bound", r.resolution_bound}};
}

inline void from_json(const json& j, OracleResult& r) {
  r.value = j.at("value").get<double>();
  r.argmin = vec3_from_json(j.at("argmin"), "argmin");
  r.points_evaluated = j.at("points_evaluated").get<long>();
  r.resolution_bound = j.at("resolution_bound").get<double>();
}

inline void to_json(json& j, const WitnessReport& r) {
  j = {{"variance_sum", r.variance_sum}, {"bound", r.bound}, {"violated", r.violated}, {"margin", r.margin}};
}

inline void from_json(const json& j, WitnessReport& r) {
  r.variance_sum = j.at("variance_sum").get<double>();
  r.bound = j.at("bound").get<double>();
  r.violated = j.at("violated").get<bool>();
  r.margin = j.at("margin").get<double>();
}

inline void to_json(json& j, const SteeringReport& r) {
  j = {{"inference_variances", r.inference_variances},
       {"total", r.total},
       {"bound", r.bound},
       {"violated", r.violated},
       {"margin", r.margin}};
}

inline void from_json(const json& j, SteeringReport& r) {
  r.inference_variances = j.at("inference_variances").get<std::vector<double>>();
  r.total = j.at("total").get<double>();
  r.bound = j.at("bound").get<double>();
  r.violated = j.at("violated").get<bool>();
  r.margin = j.at("margin").get<double>();
}

}  // namespace qincompat

#endif  // QINCOMPAT_IO_HPP_
