#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mtk/characters.hpp"
#include "mtk/ellcurve.hpp"
#include "mtk/modsym.hpp"

namespace mtk {

// Character specs: "trivial", or "m:x1,x2,..." with chi(g_i) = e(x_i / o_i)
// on the generators of (Z/m)^*.
DirichletChar parse_char(const std::string& spec);
std::string char_spec(const DirichletChar& chi);

// Field specs:
//   Q | trivial          the rationals
//   cyclo:p:n            Q_(n), the n-th layer of the cyclotomic Z_p-extension
//   cyclic:ell:d         degree-d subfield of Q(mu_ell)
//   gen:C1;C2;...        group generated by the characters
//   set:C1;C2;...        exactly these characters (must be a group)
CharGroup parse_field(const std::string& spec);

// Curve specs: a built-in Cremona label, or "a1,a2,a3,a4,a6/N" optionally
// followed by "/2=split,3=additive" for bad primes 2 and 3.
EllipticCurve parse_curve(const std::string& spec);

// "3" or "1-3" or "1,2,5".
std::vector<int> parse_int_list(const std::string& spec);

// Eigen-symbol of E at p, read from or written to cache_dir when given.
EigenSymbol cached_symbol(const EllipticCurve& E, i64 p, std::optional<i64> sturm_override,
                          const std::string& cache_dir);

}  // namespace mtk
