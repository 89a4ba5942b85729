#pragma once

#include "eja/algebra.hpp"

#include <cstdint>
#include <vector>

namespace eja {

class Rng;

/// A derivation D(x o y) = D(x) o y + x o D(y); antisymmetric in canonical
/// coordinates. Commutators of L-operators are the inner derivations used
/// throughout.
struct Derivation {
    LinearMap map;
};

/// D = L_u L_v - L_v L_u.
Derivation derivation_from_pair(const Element& u, const Element& v);

/// Gaussian u, v; zero map on algebras with no inner derivations (R^n).
Derivation random_inner_derivation(const Algebra& algebra, Rng& rng);

/// Matrix exponential of t * D; an algebra automorphism, orthogonal in
/// canonical coordinates.
LinearMap exp_derivation(const Derivation& D, double t);

/// Invertibility plus A(x o y) = A(x) o A(y) on n_samples seeded random pairs.
bool is_automorphism(const LinearMap& A, double tol = 1e-8, int n_samples = 32,
                     std::uint64_t seed = 1);

/// Swap automorphism exchanging identical factors i and j of a product.
LinearMap factor_swap_map(const Algebra& algebra, int i, int j);

/// Coordinates lying in RealVector or SymMatrix(1) blocks, where the Jordan
/// product is plain componentwise multiplication. Any permutation of these
/// among themselves (including across blocks) is an automorphism.
std::vector<int> associative_coordinates(const Algebra& algebra);

/// Transposition of two associative coordinates p and q.
LinearMap coordinate_transposition(const Algebra& algebra, int p, int q);

/// Pairs (p,q) of coordinates exchangeable by coordinate_transposition.
std::vector<std::pair<int, int>> associative_transpositions(const Algebra& algebra);

/// Indices of SpinFactor blocks.
std::vector<int> spin_factor_blocks(const Algebra& algebra);

/// The automorphism negating the vector part of one spin block. For spin:2
/// this is the only automorphism beyond the identity, so orbit move sets
/// must include it; for larger spin blocks it is redundant but harmless.
LinearMap spin_reflection_map(const Algebra& algebra, int block);

/// Pairs (i,j) of identical factors exchangeable by factor_swap_map.
std::vector<std::pair<int, int>> swappable_factor_pairs(const Algebra& algebra);

/// n orbit points A(a), each A a product of n_factors inner-derivation
/// exponentials, composed with random factor swaps / coordinate
/// transpositions when include_swaps is set.
std::vector<Element> sample_orbit(const Element& a, int n, std::uint64_t seed,
                                  int n_factors = 3, bool include_swaps = true);

/// n points e^{tD} a with D a random inner derivation of unit operator norm
/// and |t| < eps.
std::vector<Element> sample_restricted_orbit(const Element& a, double eps, int n,
                                             std::uint64_t seed);

/// Dimension of the span of vectorized inner derivations over n_pairs random
/// (u, v) pairs. Recorded diagnostics; not asserted against a closed form.
int derivation_span_rank(const Algebra& algebra, int n_pairs, std::uint64_t seed);

} // namespace eja
