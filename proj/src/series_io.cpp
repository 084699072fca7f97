#include "padic_tate/series_io.hpp"

#include <json.hpp>

#include "padic_tate/errors.hpp"
#include "padic_tate/parse.hpp"

namespace padic_tate {

using json = nlohmann::ordered_json;

StrictSeries series_from_json(std::string_view text, const Field& field, long prec) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::SyntaxError, std::string("series file is not valid JSON: ") + e.what());
  }
  try {
    const int m = doc.at("nvars").get<int>();
    const int D = doc.at("degree_cap").get<int>();
    StrictSeries s(field, m, D, prec);
    for (const auto& t : doc.at("terms")) {
      const auto exp = t.at("exp").get<Exponent>();
      const auto& c = t.at("coeff");
      const std::string literal = c.is_string() ? c.get<std::string>() : c.dump();
      s.add_term(exp, parse_element(literal, field, prec));
    }
    return s;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::SyntaxError, std::string("malformed series record: ") + e.what());
  }
}

std::string series_to_json(const StrictSeries& s) {
  json doc;
  doc["nvars"] = s.nvars();
  doc["degree_cap"] = s.degree_cap();
  json terms = json::array();
  for (const auto& [e, c] : s.terms()) {
    if (c.is_zero()) continue;
    terms.push_back(json{{"exp", e}, {"coeff", c.to_literal()}});
  }
  doc["terms"] = std::move(terms);
  return doc.dump();
}

}  // namespace padic_tate
