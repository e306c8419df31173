#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "qkm/laurent.hpp"
#include "qkm/scalar.hpp"

namespace qkm {

using Series = Laurent<Scalar>;

// lambda-series helpers
inline Series lam(int prec) { return Series::variable(Var::lambda, prec); }
inline Series cst(const Scalar& c, Var v = Var::lambda) { return Series::constant(c, v); }
Series from_coeffs(const std::vector<Scalar>& c, int prec, Var v = Var::lambda, int lo = 0);

// Square root for a series whose leading coefficient is a rational square (or minus one).
// The valuation must be even. Output precision is prec - val/2.
Series sqrt(const Series& a);
// ln(a) for a(0) = 1.
Series log1(const Series& a);
Series exp0(const Series& a);  // exp(a) for val(a) >= 1

// a(b(x)); b must have positive valuation.
Series compose(const Series& a, const Series& b);
// compositional inverse of a = c1 x + O(x^2).
Series revert(const Series& a);

inline Scalar residue(const Series& a) { return a.residue(); }

// Substitution lambda = h^2 and the inverse map. from_h throws on odd powers of h.
Series to_h(const Series& lam_series);
Series from_h(const Series& h_series);
bool has_odd_h(const Series& h_series);

bool is_real(const Series& a);
Series real_part(const Series& a);
Series imag_part(const Series& a);

// coefficients at indices [a, b)
std::vector<Scalar> coeff_range(const Series& s, int a, int b);

// exact equality on the overlap of both precisions
bool agree(const Series& a, const Series& b);
// first exponent in [from, upto) where the two series differ; upto when none
int first_difference(const Series& a, const Series& b, int from, int upto);

std::string to_string(const Series& s);

nlohmann::json to_json(const Series& s);
Series series_from_json(const nlohmann::json& j);

}  // namespace qkm
