#pragma once

#include <string>
#include <utility>

#include <json.hpp>

#include "rrv/family.hpp"
#include "rrv/flag.hpp"
#include "rrv/matrix.hpp"

namespace rrv::io {

using json = nlohmann::ordered_json;

// Flag JSON form {"p": int, "n": int, "rows": [[int,...],...]}; rows are any
// basis of the flag and are canonicalized on load. Entries are reduced mod p,
// negative values allowed.
json flag_to_json(const ff::Flag& fl);
ff::Flag flag_from_json(const json& j);
ff::Flag load_flag(const std::string& path);

// Same keys with an arbitrary row count at most n (subspace bases).
json matrix_to_json(const ff::PrimeField& f, int n, const ff::Matrix& m);
std::pair<ff::PrimeField, ff::Matrix> matrix_from_json(const json& j);
std::pair<ff::PrimeField, ff::Matrix> load_matrix(const std::string& path);

// Family JSON form {"p": int, "n": int, "P": [[poly,...],...], "Q": ...}
// where poly is the coefficient sequence lowest degree first.
json family_to_json(const family::PolynomialFamily& fam);
family::PolynomialFamily family_from_json(const json& j);
family::PolynomialFamily load_family(const std::string& path);

}  // namespace rrv::io
