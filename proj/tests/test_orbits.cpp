#include "eja/orbits.hpp"

#include "eja/commute.hpp"
#include "eja/rng.hpp"
#include "eja/spectral.hpp"

#include <doctest.h>

#include <cmath>
#include <vector>

using namespace eja;

namespace {

Element sym2(double a11, double a12, double a22) {
    Eigen::MatrixXd m(2, 2);
    m << a11, a12, a12, a22;
    return element_from_sym(m);
}

} // namespace

TEST_CASE("derivations from degenerate pairs vanish") {
    Rng rng(53);
    for (const char* s : {"rn:4", "sym:3", "spin:4"}) {
        const Algebra alg = Algebra::parse(s);
        const Element u = random_element(alg, rng);
        CHECK(derivation_from_pair(u, u).map.matrix.norm() <= 1e-12);
        CHECK(derivation_from_pair(u, unit(alg)).map.matrix.norm() <= 1e-12);
    }
}

TEST_CASE("a concrete nonzero derivation is antisymmetric") {
    const Element u = sym2(1, 0, 0);
    const Element v = sym2(0, 1, 0);
    const Eigen::MatrixXd d = derivation_from_pair(u, v).map.matrix;
    CHECK(d.norm() > 0.1);
    CHECK((d + d.transpose()).norm() <= 1e-12);
}

TEST_CASE("derivation identity on random quadruples") {
    Rng rng(59);
    for (const char* s : {"sym:3", "spin:5", "prod(sym:2,spin:3)"}) {
        const Algebra alg = Algebra::parse(s);
        for (int t = 0; t < 25; ++t) {
            const Element u = random_element(alg, rng);
            const Element v = random_element(alg, rng);
            const Element x = random_element(alg, rng);
            const Element y = random_element(alg, rng);
            const Derivation D = derivation_from_pair(u, v);
            const Element lhs = D.map.apply(jordan_product(x, y));
            const Element rhs = jordan_product(D.map.apply(x), y) +
                                jordan_product(x, D.map.apply(y));
            const double scale = 1 + D.map.matrix.norm() * norm_of(x) * norm_of(y);
            CHECK((lhs.coords - rhs.coords).norm() <= 1e-8 * scale);
        }
    }
}

TEST_CASE("derivation exponentials are automorphisms") {
    Rng rng(61);
    for (const char* s : {"sym:3", "spin:4", "prod(sym:1,sym:2)"}) {
        const Algebra alg = Algebra::parse(s);
        const Derivation D = random_inner_derivation(alg, rng);
        const int n = alg.dim();

        CHECK((exp_derivation(D, 0.0).matrix - Eigen::MatrixXd::Identity(n, n)).norm() <=
              1e-12);
        const LinearMap A = exp_derivation(D, 0.7);
        const LinearMap Ainv = exp_derivation(D, -0.7);
        CHECK((A.matrix * Ainv.matrix - Eigen::MatrixXd::Identity(n, n)).norm() <= 1e-9);
        CHECK(is_automorphism(A));

        // Eigenvalues are invariant along the flow.
        const Element x = random_element(alg, rng);
        const Eigen::VectorXd lam = eigenvalue_map(x);
        for (double t : {0.3, 1.1, 2.9})
            CHECK((eigenvalue_map(exp_derivation(D, t).apply(x)) - lam).norm() <=
                  1e-7 * (1 + lam.norm()));

        // Automorphisms preserve the trace inner product.
        const Element y = random_element(alg, rng);
        CHECK(inner(A.apply(x), A.apply(y)) ==
              doctest::Approx(inner(x, y)).epsilon(1e-8));
    }
}

TEST_CASE("automorphism check rejects non-multiplicative maps") {
    const Algebra alg = Algebra::sym_matrix(2);
    CHECK(is_automorphism(identity_map(alg)));
    LinearMap twice = identity_map(alg);
    twice.matrix *= 2.0;
    CHECK_FALSE(is_automorphism(twice));
}

TEST_CASE("discrete automorphisms: swaps, transpositions, reflections") {
    const Algebra pair = Algebra::parse("prod(sym:2,sym:2)");
    const auto swaps = swappable_factor_pairs(pair);
    REQUIRE(swaps.size() == 1);
    CHECK(is_automorphism(factor_swap_map(pair, swaps[0].first, swaps[0].second)));

    const Algebra assoc = Algebra::parse("prod(rn:2,sym:1)");
    const auto trans = associative_transpositions(assoc);
    CHECK(trans.size() == 3);  // 3 componentwise coordinates, all exchangeable
    for (const auto& [p, q] : trans)
        CHECK(is_automorphism(coordinate_transposition(assoc, p, q)));

    const Algebra sp = Algebra::parse("prod(spin:3,sym:2)");
    const auto blocks = spin_factor_blocks(sp);
    REQUIRE(blocks.size() == 1);
    const LinearMap refl = spin_reflection_map(sp, blocks[0]);
    CHECK(is_automorphism(refl));
    // The reflection fixes the spin identity component and negates the rest.
    const Element e = unit(sp);
    CHECK((refl.apply(e).coords - e.coords).norm() <= 1e-12);

    CHECK(swappable_factor_pairs(Algebra::parse("prod(sym:1,sym:2)")).empty());
    CHECK(spin_factor_blocks(Algebra::parse("sym:3")).empty());
}

TEST_CASE("orbit samples stay on the orbit") {
    const Algebra alg = Algebra::parse("prod(sym:1,sym:2)");
    Rng rng(67);

    const Element e = unit(alg);
    for (const Element& p : sample_orbit(e, 5, 101))
        CHECK((p.coords - e.coords).norm() <= 1e-9);
    for (const Element& p : sample_orbit(zero(alg), 5, 103))
        CHECK(p.coords.norm() <= 1e-9);

    Eigen::MatrixXd m(2, 2);
    m << 3, 0, 0, 1;
    const Element x = element_from_sym(m);
    for (const Element& p : sample_orbit(x, 20, 107)) {
        CHECK((eigenvalue_map(p) - Eigen::Vector2d(3, 1)).norm() <= 1e-8);
        CHECK(set_contains(SetSpec::automorphism_orbit(x), p, 1e-7));
    }

    const Element y = random_element(alg, rng);
    for (const Element& p : sample_orbit(y, 20, 109))
        CHECK(set_contains(SetSpec::automorphism_orbit(y), p, 1e-7));
}

TEST_CASE("restricted orbit stays near the anchor with exact spectrum") {
    const Algebra alg = Algebra::sym_matrix(3);
    Rng rng(71);
    const Element a = random_element(alg, rng);
    const Eigen::VectorXd lam = eigenvalue_map(a);
    for (const Element& p : sample_restricted_orbit(a, 0.05, 20, 113)) {
        CHECK((eigenvalue_map(p) - lam).norm() <= 1e-7 * (1 + lam.norm()));
        CHECK((p.coords - a.coords).norm() <= 0.5 * (1 + norm_of(a)));
    }
    for (const Element& p : sample_restricted_orbit(unit(alg), 0.05, 5, 127))
        CHECK((p.coords - unit(alg).coords).norm() <= 1e-9);
}

TEST_CASE("derivation span rank is seed stable") {
    CHECK(derivation_span_rank(Algebra::real_vector(4), 64, 1) == 0);
    for (const char* s : {"sym:3", "spin:4", "prod(sym:1,sym:2)"}) {
        const Algebra alg = Algebra::parse(s);
        const int n_pairs = alg.dim() * alg.dim();
        const int r1 = derivation_span_rank(alg, n_pairs, 1);
        const int r2 = derivation_span_rank(alg, n_pairs, 2);
        CHECK(r1 == r2);
        CHECK(r1 >= 1);
        CHECK(r1 <= alg.dim() * alg.dim());
    }
}
