#include "eja/verify.hpp"

#include "eja/commute.hpp"
#include "eja/orbits.hpp"
#include "eja/rng.hpp"

#include <doctest.h>

#include <cmath>
#include <string>

using namespace eja;

namespace {

/// Softmax-weighted frame combination: gradient of log(sum exp(lambda_i)).
Element lse_gradient(const Element& x) {
    return spectral_gradient(
        [](const Eigen::VectorXd& lam) {
            const double m = lam.maxCoeff();
            Eigen::VectorXd w = (lam.array() - m).exp();
            w /= w.sum();
            return w;
        },
        x);
}

double lse_value(const Element& x) {
    return eval_spectral_function(
        [](const Eigen::VectorXd& lam) {
            const double m = lam.maxCoeff();
            return m + std::log((lam.array() - m).exp().sum());
        },
        x);
}

} // namespace

TEST_CASE("spectral gradient matches finite differences") {
    Rng rng(101);
    for (const char* s : {"rn:4", "sym:3", "spin:4", "prod(sym:1,sym:2)"}) {
        const Algebra alg = Algebra::parse(s);
        for (int t = 0; t < 5; ++t) {
            const Element x = random_element(alg, rng);
            const Element g = lse_gradient(x);
            const Element g_fd = finite_difference_gradient(lse_value, x);
            CHECK((g.coords - g_fd.coords).norm() <= 1e-6 * (1 + g.coords.norm()));
        }
    }
}

TEST_CASE("eigenvalue orbit alignment maximizes the linear functional") {
    Rng rng(103);
    for (const char* s : {"sym:3", "spin:4", "prod(sym:1,sym:2)"}) {
        const Algebra alg = Algebra::parse(s);
        const Element anchor = random_element(alg, rng);
        const Element d = random_element(alg, rng);
        const Element best = align_eigenvalue_orbit(anchor, d);
        // Alignment hits the trace-inequality bound...
        CHECK(inner(d, best) == doctest::Approx(eigenvalue_map(anchor).dot(eigenvalue_map(d)))
                                    .epsilon(1e-9));
        CHECK(set_contains(SetSpec::eigenvalue_orbit(anchor), best, 1e-8));
        // ...which dominates every sampled orbit point.
        for (const Element& p : sample_orbit(anchor, 50, 131))
            CHECK(inner(d, p) <= inner(d, best) + 1e-8 * (1 + norm_of(d) * norm_of(p)));
    }
}

TEST_CASE("automorphism orbit alignment stays factor-consistent") {
    const OptimizationProblem p42 = example_4_2_problem();
    const Element B = *p42.E.anchor;
    const Element C = p42.F_subgradient(B);
    const Element best = align_automorphism_orbit(B, C);
    CHECK(inner(C, best) == doctest::Approx(18.0).epsilon(1e-9));
    CHECK(set_contains(SetSpec::automorphism_orbit(B), best, 1e-8));
    // Strictly below the unconstrained spectral bound of 19.
    CHECK(eigenvalue_map(B).dot(eigenvalue_map(C)) == doctest::Approx(19.0).epsilon(1e-9));

    Rng rng(107);
    const Algebra alg = Algebra::parse("prod(spin:3,sym:2)");
    const Element anchor = random_element(alg, rng);
    const Element d = random_element(alg, rng);
    const Element a = align_automorphism_orbit(anchor, d);
    CHECK(set_contains(SetSpec::automorphism_orbit(anchor), a, 1e-8));
    for (const Element& p : sample_orbit(anchor, 50, 137))
        CHECK(inner(d, p) <= inner(d, a) + 1e-8 * (1 + norm_of(d) * norm_of(p)));
}

TEST_CASE("orbit search reaches the aligned optimum of a linear objective") {
    Rng rng(109);
    for (const char* s : {"sym:3", "prod(sym:1,sym:2)"}) {
        const Algebra alg = Algebra::parse(s);
        const Element anchor = random_element(alg, rng);
        const Element c = random_element(alg, rng);
        const double target = inner(c, align_automorphism_orbit(anchor, c));

        OrbitSearchOptions opt;
        Rng search_rng(113);
        const auto res = orbit_maximize([&c](const Element& x) { return inner(c, x); },
                                        [&c](const Element&) { return c; },
                                        anchor, opt, search_rng);
        CHECK(res.converged);
        CHECK(res.value == doctest::Approx(target).epsilon(1e-7));
        CHECK(commutator_norm(res.point, c) <=
              1e-6 * (1 + norm_of(res.point) * norm_of(c)));
    }
}

TEST_CASE("geometric principle verifies on closed-form families") {
    for (const char* s : {"sym:3", "spin:4"}) {
        const auto cone = verify_geometric_principle(Algebra::parse(s),
                                                     SetVariant::SymmetricCone,
                                                     60, 7, 1e-8);
        CHECK(cone.pass);
        CHECK(cone.max_commutator_norm <= 1e-8);
        CHECK(cone.max_strong_gap <= 1e-8);
        CHECK(cone.details["strong_asserted"].get<bool>());

        const auto orb = verify_geometric_principle(Algebra::parse(s),
                                                    SetVariant::EigenvalueOrbit,
                                                    60, 7, 1e-8);
        CHECK(orb.pass);
        CHECK(orb.trials == 60);
    }
    // Strong commutation is recorded but not asserted on the non-simple product.
    const auto prod = verify_geometric_principle(Algebra::parse("prod(sym:1,sym:2)"),
                                                 SetVariant::AutomorphismOrbit,
                                                 40, 7, 1e-8);
    CHECK(prod.pass);
    CHECK_FALSE(prod.details["strong_asserted"].get<bool>());
    CHECK(prod.details.contains("max_observed_strong_gap"));
    CHECK_THROWS_AS(verify_geometric_principle(Algebra::parse("rn:2"),
                                               SetVariant::FiniteSet, 1, 1, 1e-8),
                    std::invalid_argument);
}

TEST_CASE("idempotent normal cones verify") {
    for (const char* s : {"rn:4", "sym:3", "prod(sym:1,sym:2)"}) {
        const auto rep = verify_idempotent_normal_cones(Algebra::parse(s), 60, 11, 1e-8);
        CHECK(rep.pass);
        CHECK(rep.details["idempotent_candidates_checked"].get<int>() > 0);
        CHECK(rep.max_commutator_norm <= 1e-8);
    }
}

TEST_CASE("subgradient commutation verifies across the objective families") {
    for (const char* s : {"sym:3", "spin:4", "prod(spin:3,sym:2)"}) {
        const auto rep = verify_subgradient_commutation(Algebra::parse(s), 40, 13, 1e-8);
        CHECK(rep.pass);
        CHECK(rep.details["max_finite_difference_error"].get<double>() <= 1e-5);
        CHECK(rep.details["families"].size() == 3);
    }
}

TEST_CASE("optimization principle on canned problems") {
    const Algebra alg = Algebra::parse("sym:3");
    for (const auto& p : canned_optimization_problems(alg, 17)) {
        const auto rep = verify_optimization_principle(p, 6, 19, 1e-8);
        CHECK(rep.pass);
        CHECK(rep.details["converged_trials"].get<int>() > 0);
    }
    // The product-only weakly-spectral problem appears for products.
    const auto prods = canned_optimization_problems(Algebra::parse("prod(sym:1,sym:2)"), 17);
    bool has_weak = false;
    for (const auto& p : prods) has_weak = has_weak || p.phi_class == "weakly-spectral";
    CHECK(has_weak);
}

TEST_CASE("worked report 4.1 passes with the frozen values") {
    const auto rep = run_example_4_1();
    CHECK(rep.pass);
    CHECK(rep.failures.empty());
    CHECK(rep.details["F(3,0)"].get<double>() == 8.0);
    CHECK(rep.details["F(0,3)"].get<double>() == 2.0);
    CHECK(rep.details["gap_(0,3)_vs_(2,0)"].get<double>() == doctest::Approx(6.0));
}

TEST_CASE("worked report 4.2 passes with the frozen values") {
    const auto rep = run_example_4_2();
    CHECK(rep.pass);
    CHECK(rep.failures.empty());
    CHECK(rep.details["inner_A_C"].get<double>() == doctest::Approx(18.0));
    CHECK(rep.details["eigen_inner_A_C"].get<double>() == doctest::Approx(19.0));
    CHECK(rep.algebra == "prod(sym:1,sym:2)");
}

TEST_CASE("suites aggregate and expose their parts") {
    const Algebra alg = Algebra::parse("sym:2");
    const auto rep = run_suite("thm31a", alg, 20, 23, 1e-8);
    CHECK(rep.pass);
    CHECK(rep.id == "thm31a");
    CHECK(rep.trials == 20);
    CHECK(rep.details.contains("parts"));

    for (const char* suite : {"thm31b", "cor32", "cor33"}) {
        const auto r = run_suite(suite, alg, 10, 29, 1e-8);
        CHECK(r.pass);
        CHECK(r.id == suite);
    }
    const auto r34 = run_suite("thm34", alg, 8, 31, 1e-8);
    CHECK(r34.pass);
    CHECK_THROWS_AS(run_suite("nope", alg, 1, 1, 1e-8), std::invalid_argument);
}

TEST_CASE("reports serialize with the documented schema") {
    const auto rep = run_suite("cor32", Algebra::parse("rn:3"), 10, 37, 1e-8);
    const auto j = rep.to_json();
    for (const char* key : {"report_version", "id", "algebra", "trials", "seed", "tol",
                            "max_commutator_norm", "max_strong_gap", "inconclusive",
                            "failures", "pass", "details"})
        CHECK(j.contains(key));
    CHECK(j["report_version"].get<int>() == 1);
    CHECK(j["pass"].get<bool>());
    CHECK(j["failures"].empty());
    CHECK_FALSE(rep.text().empty());
    // Identical inputs give identical reports.
    const auto j2 = run_suite("cor32", Algebra::parse("rn:3"), 10, 37, 1e-8).to_json();
    CHECK(j.dump() == j2.dump());
    // Thread count does not change the result.
    const auto j4 = run_suite("cor32", Algebra::parse("rn:3"), 10, 37, 1e-8, 4).to_json();
    CHECK(j.dump() == j4.dump());
}
