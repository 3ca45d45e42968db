#pragma once

#include <fstream>
#include <variant>

#include <json.hpp>

#include "fictplay/game.hpp"

namespace fictplay {

using GameVariant = std::variant<BimatrixGame<mpq_class>, BimatrixGame<double>>;

// Game file schema:
// {"n":3,"m":3,"A":[[...]],"B":[[...]],"entry_kind":"rational"|"float","name":"..."}
// Rational entries are encoded as "p/q" strings (plain integers allowed).
inline GameVariant parse_game_json(const nlohmann::json& j) {
  if (!j.contains("n") || !j.contains("m") || !j.contains("A") || !j.contains("B"))
    throw input_error("game file needs fields n, m, A, B");
  int n = j.at("n").get<int>();
  int m = j.at("m").get<int>();
  std::string kind = j.value("entry_kind", "float");
  std::string name = j.value("name", "");
  auto shape_check = [&](const nlohmann::json& mat, const char* which) {
    if (!mat.is_array() || (int)mat.size() != n)
      throw input_error(std::string(which) + ": expected " + std::to_string(n) + " rows");
    for (auto& row : mat)
      if (!row.is_array() || (int)row.size() != m)
        throw input_error(std::string(which) + ": expected " + std::to_string(m) + " columns");
  };
  shape_check(j.at("A"), "A");
  shape_check(j.at("B"), "B");
  if (kind == "rational") {
    auto read = [&](const nlohmann::json& mat) {
      Mat<mpq_class> out(n, Vec<mpq_class>(m));
      for (int i = 0; i < n; ++i)
        for (int c = 0; c < m; ++c) {
          const auto& e = mat[i][c];
          if (e.is_string()) out[i][c] = parse_rational(e.get<std::string>());
          else if (e.is_number_integer()) out[i][c] = mpq_class((long)e.get<long>());
          else throw input_error("rational entries must be \"p/q\" strings or integers");
        }
      return out;
    };
    return BimatrixGame<mpq_class>(read(j.at("A")), read(j.at("B")), name);
  }
  if (kind != "float") throw input_error("entry_kind must be \"rational\" or \"float\"");
  auto read = [&](const nlohmann::json& mat) {
    Mat<double> out(n, Vec<double>(m));
    for (int i = 0; i < n; ++i)
      for (int c = 0; c < m; ++c) {
        if (!mat[i][c].is_number()) throw input_error("float entries must be numbers");
        out[i][c] = mat[i][c].get<double>();
      }
    return out;
  };
  return BimatrixGame<double>(read(j.at("A")), read(j.at("B")), name);
}

inline GameVariant load_game(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open game file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw input_error(std::string("game file parse error: ") + e.what());
  }
  return parse_game_json(j);
}

inline nlohmann::json game_to_json(const BimatrixGame<mpq_class>& g) {
  nlohmann::json j;
  j["n"] = g.rows;
  j["m"] = g.cols;
  j["entry_kind"] = "rational";
  j["name"] = g.name;
  auto write = [&](const Mat<mpq_class>& mat) {
    nlohmann::json rows = nlohmann::json::array();
    for (auto& r : mat) {
      nlohmann::json row = nlohmann::json::array();
      for (auto& e : r) row.push_back(format_rational(e));
      rows.push_back(row);
    }
    return rows;
  };
  j["A"] = write(g.a);
  j["B"] = write(g.b);
  return j;
}

inline nlohmann::json game_to_json(const BimatrixGame<double>& g) {
  nlohmann::json j;
  j["n"] = g.rows;
  j["m"] = g.cols;
  j["entry_kind"] = "float";
  j["name"] = g.name;
  j["A"] = g.a;
  j["B"] = g.b;
  return j;
}

}  // namespace fictplay
