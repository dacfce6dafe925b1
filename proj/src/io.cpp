#include "rrv/io.hpp"

#include <fstream>

#include "rrv/error.hpp"

namespace rrv::io {

namespace {

std::uint32_t reduce_entry(long long v, std::uint32_t p) {
  long long m = v % static_cast<long long>(p);
  if (m < 0) m += p;
  return static_cast<std::uint32_t>(m);
}

json parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw error(errc::usage_error, "cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw error(errc::usage_error, path + ": " + e.what());
  }
  return j;
}

std::uint32_t prime_of(const json& j) {
  if (!j.is_object() || !j.contains("p") || !j["p"].is_number_integer())
    throw error(errc::usage_error, "expected an object with an integer \"p\"");
  long long p = j["p"].get<long long>();
  if (p < 2 || p > 1000000) throw error(errc::usage_error, "p out of range");
  return static_cast<std::uint32_t>(p);
}

ff::Matrix rows_of(const json& j, const ff::PrimeField& f, int n, int expected_rows) {
  if (!j.contains("rows") || !j["rows"].is_array())
    throw error(errc::usage_error, "expected a \"rows\" array");
  const json& rows = j["rows"];
  int r = static_cast<int>(rows.size());
  if (expected_rows >= 0 && r != expected_rows)
    throw error(errc::usage_error, "wrong number of rows");
  if (r > n) throw error(errc::usage_error, "more rows than columns allowed by n");
  ff::Matrix m(r, n);
  for (int i = 0; i < r; ++i) {
    const json& row = rows[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<int>(row.size()) != n)
      throw error(errc::usage_error, "each row must list n entries");
    for (int k = 0; k < n; ++k) {
      const json& e = row[static_cast<std::size_t>(k)];
      if (!e.is_number_integer()) throw error(errc::usage_error, "row entries must be integers");
      m.at(i, k) = reduce_entry(e.get<long long>(), f.p());
    }
  }
  return m;
}

int dim_of(const json& j) {
  if (!j.contains("n") || !j["n"].is_number_integer())
    throw error(errc::usage_error, "expected an integer \"n\"");
  long long n = j["n"].get<long long>();
  if (n < 1 || n > 16) throw error(errc::usage_error, "n out of range");
  return static_cast<int>(n);
}

}  // namespace

json flag_to_json(const ff::Flag& fl) {
  json j;
  j["p"] = fl.field.p();
  j["n"] = fl.n;
  json rows = json::array();
  for (int i = 0; i < fl.n; ++i) {
    json row = json::array();
    for (int k = 0; k < fl.n; ++k) row.push_back(fl.rows.at(i, k));
    rows.push_back(std::move(row));
  }
  j["rows"] = std::move(rows);
  return j;
}

ff::Flag flag_from_json(const json& j) {
  ff::PrimeField f(prime_of(j));
  int n = dim_of(j);
  return ff::canonical_flag(f, rows_of(j, f, n, n));
}

ff::Flag load_flag(const std::string& path) { return flag_from_json(parse_file(path)); }

json matrix_to_json(const ff::PrimeField& f, int n, const ff::Matrix& m) {
  json j;
  j["p"] = f.p();
  j["n"] = n;
  json rows = json::array();
  for (int i = 0; i < m.rows; ++i) {
    json row = json::array();
    for (int k = 0; k < m.cols; ++k) row.push_back(m.at(i, k));
    rows.push_back(std::move(row));
  }
  j["rows"] = std::move(rows);
  return j;
}

std::pair<ff::PrimeField, ff::Matrix> matrix_from_json(const json& j) {
  ff::PrimeField f(prime_of(j));
  int n = dim_of(j);
  return {f, rows_of(j, f, n, -1)};
}

std::pair<ff::PrimeField, ff::Matrix> load_matrix(const std::string& path) {
  return matrix_from_json(parse_file(path));
}

namespace {

json poly_matrix_to_json(const std::vector<family::Poly>& entries, int n) {
  json rows = json::array();
  for (int i = 0; i < n; ++i) {
    json row = json::array();
    for (int k = 0; k < n; ++k) {
      json coeffs = json::array();
      for (std::uint32_t c : entries[static_cast<std::size_t>(i) * n + k].coeffs)
        coeffs.push_back(c);
      row.push_back(std::move(coeffs));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<family::Poly> poly_matrix_from_json(const json& j, const ff::PrimeField& f, int n,
                                                const char* key) {
  if (!j.contains(key) || !j[key].is_array() || static_cast<int>(j[key].size()) != n)
    throw error(errc::usage_error, std::string("expected \"") + key + "\" with n rows");
  std::vector<family::Poly> out(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const json& row = j[key][static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<int>(row.size()) != n)
      throw error(errc::usage_error, "each polynomial row must list n entries");
    for (int k = 0; k < n; ++k) {
      const json& coeffs = row[static_cast<std::size_t>(k)];
      if (!coeffs.is_array())
        throw error(errc::usage_error, "each entry must be a coefficient array");
      std::vector<std::uint32_t> c;
      for (const json& e : coeffs) {
        if (!e.is_number_integer())
          throw error(errc::usage_error, "polynomial coefficients must be integers");
        c.push_back(reduce_entry(e.get<long long>(), f.p()));
      }
      out[static_cast<std::size_t>(i) * n + k] = family::make_poly(f, std::move(c));
    }
  }
  return out;
}

}  // namespace

json family_to_json(const family::PolynomialFamily& fam) {
  json j;
  j["p"] = fam.field.p();
  j["n"] = fam.n;
  j["P"] = poly_matrix_to_json(fam.p_rows, fam.n);
  j["Q"] = poly_matrix_to_json(fam.q_rows, fam.n);
  return j;
}

family::PolynomialFamily family_from_json(const json& j) {
  ff::PrimeField f(prime_of(j));
  int n = dim_of(j);
  return family::make_family(f, n, poly_matrix_from_json(j, f, n, "P"),
                             poly_matrix_from_json(j, f, n, "Q"));
}

family::PolynomialFamily load_family(const std::string& path) {
  return family_from_json(parse_file(path));
}

}  // namespace rrv::io
