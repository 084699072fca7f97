#include "padic_tate/lattice_io.hpp"

#include <json.hpp>

#include "padic_tate/errors.hpp"

namespace padic_tate {

using json = nlohmann::ordered_json;

namespace {

json parse_doc(std::string_view text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::SyntaxError, std::string(what) + " is not valid JSON: " + e.what());
  }
}

mpz_class entry_of(const json& x) {
  if (x.is_number_integer()) return mpz_class(std::to_string(x.get<long long>()));
  if (x.is_string()) {
    mpz_class v;
    if (v.set_str(x.get<std::string>(), 10) != 0) {
      throw Error(ErrorKind::SyntaxError, "matrix entry '" + x.get<std::string>() + "' is not an integer");
    }
    return v;
  }
  throw Error(ErrorKind::SyntaxError, "matrix entry " + x.dump() + " is not an integer");
}

IntMatrix matrix_of(const json& doc) {
  try {
    const long r = doc.at("rows").get<long>();
    const long c = doc.at("cols").get<long>();
    const json& rows = doc.at("entries");
    if (r < 0 || c < 0) throw Error(ErrorKind::InvalidArgument, "negative matrix dimensions");
    // a matrix without columns may list no rows at all
    if (c == 0 && rows.is_array() && rows.empty()) return IntMatrix(r, 0);
    if (!rows.is_array() || static_cast<long>(rows.size()) != r) {
      throw Error(ErrorKind::DimensionMismatch, "entries must hold " + std::to_string(r) + " rows");
    }
    IntMatrix M(r, c);
    for (long i = 0; i < r; ++i) {
      const json& row = rows[static_cast<std::size_t>(i)];
      if (!row.is_array() || static_cast<long>(row.size()) != c) {
        throw Error(ErrorKind::DimensionMismatch, "row " + std::to_string(i) + " must hold " + std::to_string(c) +
                                                      " entries");
      }
      for (long j = 0; j < c; ++j) M(i, j) = entry_of(row[static_cast<std::size_t>(j)]);
    }
    return M;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::SyntaxError, std::string("malformed matrix record: ") + e.what());
  }
}

json matrix_doc(const IntMatrix& M) {
  json doc;
  doc["rows"] = M.rows();
  doc["cols"] = M.cols();
  json rows = json::array();
  for (long i = 0; i < M.rows(); ++i) {
    json row = json::array();
    for (long j = 0; j < M.cols(); ++j) {
      const mpz_class& x = M(i, j);
      if (x.fits_slong_p()) {
        row.push_back(x.get_si());
      } else {
        row.push_back(x.get_str());
      }
    }
    rows.push_back(std::move(row));
  }
  doc["entries"] = std::move(rows);
  return doc;
}

SubgroupLattice lattice_of(const json& doc) {
  try {
    SubgroupLattice T;
    T.n = doc.at("n").get<long>();
    if (T.n < 0) throw Error(ErrorKind::InvalidArgument, "negative ambient dimension");
    T.mult = doc.contains("mult") ? matrix_of(doc.at("mult")) : IntMatrix(T.n, 0);
    T.ell = doc.contains("ell") ? matrix_of(doc.at("ell")) : IntMatrix(T.n, 0);
    if (T.mult.rows() != T.n || T.ell.rows() != T.n) {
      throw Error(ErrorKind::DimensionMismatch, "lattice matrices must have n = " + std::to_string(T.n) + " rows");
    }
    return T;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::SyntaxError, std::string("malformed lattice record: ") + e.what());
  }
}

}  // namespace

IntMatrix matrix_from_json(std::string_view text) { return matrix_of(parse_doc(text, "matrix")); }

std::string matrix_to_json(const IntMatrix& M) { return matrix_doc(M).dump(); }

SubgroupLattice lattice_from_json(std::string_view text) { return lattice_of(parse_doc(text, "lattice")); }

std::string lattice_to_json(const SubgroupLattice& T) {
  json doc;
  doc["n"] = T.n;
  doc["mult"] = matrix_doc(T.mult);
  doc["ell"] = matrix_doc(T.ell);
  return doc.dump();
}

std::vector<SubgroupLattice> lattice_list_from_json(std::string_view text) {
  const json doc = parse_doc(text, "lattice list");
  if (!doc.is_array()) throw Error(ErrorKind::SyntaxError, "expected a JSON array of lattices");
  std::vector<SubgroupLattice> out;
  for (const json& item : doc) out.push_back(lattice_of(item));
  return out;
}

}  // namespace padic_tate
