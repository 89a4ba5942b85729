#pragma once

#include "eja/algebra.hpp"
#include "eja/spectral.hpp"

#include <optional>
#include <vector>

namespace eja {

/// Frobenius norm of L_a L_b - L_b L_a in canonical coordinates.
/// Zero iff a and b operator commute.
double commutator_norm(const Element& a, const Element& b);

/// commutator_norm(a,b) <= tol * (1 + |a||b|).
bool operator_commute(const Element& a, const Element& b, double tol = 1e-8);

/// Operator commutation plus equality in the trace inequality,
/// <a,b> = <lambda(a),lambda(b)>, the certificate of simultaneous ordered
/// diagonalizability.
bool strongly_operator_commute(const Element& a, const Element& b, double tol = 1e-8);

/// A single Jordan frame diagonalizing both a and b, when they operator
/// commute; absent otherwise. Built from a spectral decomposition of
/// a + t*b for a generic t, cross-checked by reconstructing both inputs.
std::optional<std::vector<Element>> common_frame(const Element& a, const Element& b,
                                                 double tol = 1e-8);

} // namespace eja
