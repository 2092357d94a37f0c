#include "hitmix/io.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "hitmix/error.hpp"

namespace hitmix {

using nlohmann::json;

json chain_to_json(const Chain& c) {
  json j;
  if (!c.labels().empty()) j["labels"] = c.labels();
  json rows = json::array();
  for (int x = 0; x < c.n(); ++x) {
    json row = json::array();
    for (int y = 0; y < c.n(); ++y) row.push_back(c.p()(x, y));
    rows.push_back(std::move(row));
  }
  j["P"] = std::move(rows);
  return j;
}

Chain chain_from_json(const json& j) {
  if (!j.is_object() || !j.contains("P") || !j["P"].is_array())
    fail(errc::bad_input, "chain JSON needs a \"P\" array of rows");
  const auto& rows = j["P"];
  const auto n = rows.size();
  Matrix p(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t x = 0; x < n; ++x) {
    if (!rows[x].is_array() || rows[x].size() != n)
      fail(errc::bad_input, "chain JSON rows must be square");
    for (std::size_t y = 0; y < n; ++y) {
      if (!rows[x][y].is_number()) fail(errc::bad_input, "chain JSON entries must be numbers");
      p(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y)) = rows[x][y].get<double>();
    }
  }
  std::vector<std::string> labels;
  if (j.contains("labels")) {
    if (!j["labels"].is_array()) fail(errc::bad_input, "labels must be an array of strings");
    for (const auto& l : j["labels"]) labels.push_back(l.get<std::string>());
  }
  return Chain::from_matrix(std::move(p), std::move(labels));
}

Chain load_chain(std::istream& in) {
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    fail(errc::bad_input, std::string("chain JSON parse error: ") + e.what());
  }
  return chain_from_json(j);
}

Chain load_chain_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(errc::bad_input, "cannot open chain file: " + path);
  return load_chain(in);
}

json spec_to_json(const HittableStepSpec& s) {
  return json{{"alphas", s.alphas}, {"lambdas", s.lambdas}, {"epsilon", s.epsilon},
              {"N", s.big_n}};
}

HittableStepSpec spec_from_json(const json& j) {
  HittableStepSpec s;
  try {
    s.alphas = j.at("alphas").get<std::vector<double>>();
    s.lambdas = j.at("lambdas").get<std::vector<double>>();
    s.epsilon = j.at("epsilon").get<double>();
    s.big_n = j.at("N").get<double>();
  } catch (const json::exception& e) {
    fail(errc::bad_input, std::string("spec JSON error: ") + e.what());
  }
  s.validate();
  return s;
}

std::string profile_to_csv(const HittingProfile& p) {
  std::ostringstream os;
  os << "alpha_threshold,value\n";
  char buf[64];
  for (const auto& bp : p.breakpoints()) {
    std::snprintf(buf, sizeof(buf), "%.17g", bp.measure);
    os << buf << ",";
    std::snprintf(buf, sizeof(buf), "%.17g", bp.value);
    os << buf << "\n";
  }
  return os.str();
}

json report_to_json(const InequalityReport& r) {
  json j{{"name", r.name}, {"lhs", r.lhs},           {"rhs", r.rhs},
         {"slack", r.slack}, {"holds", r.holds},      {"applicable", r.applicable}};
  if (!r.witness.empty()) j["witness"] = r.witness;
  return j;
}

}  // namespace hitmix
