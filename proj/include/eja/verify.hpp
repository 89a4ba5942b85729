#pragma once

#include "eja/commute.hpp"
#include "eja/cones.hpp"
#include "eja/orbits.hpp"
#include "eja/rng.hpp"

#include <json.hpp>

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace eja {

struct TrialFailure {
    int trial = 0;
    std::string diagnostic;
};

/// Aggregated outcome of one verification run. Commutator norms and trace
/// gaps are normalized by 1 + |a||d| per trial before taking maxima, so the
/// declared tolerances are scale-honest. pass <=> failures empty.
/// Non-converged searches count as inconclusive and are excluded from
/// pass/fail (the theorems speak only about actual maximizers).
struct VerificationReport {
    std::string id;
    std::string algebra;
    int trials = 0;
    std::uint64_t seed = 0;
    double tol = 0.0;
    double max_commutator_norm = 0.0;
    double max_strong_gap = 0.0;  // over trials where strong commutation is asserted
    int inconclusive = 0;
    std::vector<TrialFailure> failures;
    bool pass = true;
    nlohmann::ordered_json details = nlohmann::ordered_json::object();

    nlohmann::ordered_json to_json() const;  // "report_version": 1
    std::string text() const;
};

using GradFn = std::function<Element(const Element&)>;

/// Gradient of f applied through the eigenvalue map: sum_i df(lambda(x))_i e_i(x)
/// for a symmetric differentiable f with gradient oracle df.
Element spectral_gradient(const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& df,
                          const Element& x);

/// Central finite differences of F in canonical coordinates, returned as the
/// gradient element (coordinates premultiplied by the inverse Gram diagonal).
Element finite_difference_gradient(const ScalarFn& F, const Element& x, double h = 1e-5);

/// The point of the eigenvalue orbit [anchor] maximizing <d, .>: anchor's
/// eigenvalues loaded descending onto d's descending frame. By the trace
/// inequality this is a global maximizer, so d lies in the normal cone of
/// the orbit there.
Element align_eigenvalue_orbit(const Element& anchor, const Element& d);

/// The point of the automorphism orbit <anchor> maximizing <d, .>:
/// factor-wise frame alignment with the best assignment of anchor blocks
/// within groups of identical factors (global coordinate alignment when the
/// algebra is fully associative).
Element align_automorphism_orbit(const Element& anchor, const Element& d);

struct OrbitSearchOptions {
    SetVariant family = SetVariant::AutomorphismOrbit;  // move set: <x> or [x]
    int max_iters = 300;
    double step_floor = 1e-12;
    double stat_tol = 1e-9;        // on the normalized steepest ascent rate
    bool alignment_moves = true;   // propose closed-form frame alignments
};

struct OrbitSearchResult {
    Element point;
    double value = 0.0;
    bool converged = false;
    int iterations = 0;
    double stationarity = 0.0;  // last normalized steepest rate
};

/// Maximizes F over the orbit of `start` by steepest inner-derivation ascent
/// (direction from the top singular pair of [L_x, L_g], g the gradient at x,
/// which by the derivation identity carries the largest first-order rate),
/// interleaved with discrete automorphism moves: identical-factor swaps,
/// associative-coordinate transpositions, spin reflections, and - when the
/// move set is EigenvalueOrbit - eigenvalue reassignments within the moving
/// frame. Stationarity of all these moves at the result is exactly the
/// operator-commutation certificate of the commutation principle.
OrbitSearchResult orbit_maximize(const ScalarFn& F, const GradFn& grad, const Element& start,
                                 const OrbitSearchOptions& opt, Rng& rng);

/// Per-trial construction of certified normal-cone pairs (a, d in N_E(a))
/// for E drawn from the given family, asserting the commutation conclusions
/// of the geometric principle: operator commutation always; strong
/// commutation when the family is spectral, or on automorphism orbits whose
/// full automorphism group the move machinery covers (single-block algebras
/// and fully associative products). A subsample of trials cross-checks the
/// constructions by orbit search and by sampled normal-cone certificates.
VerificationReport verify_geometric_principle(const Algebra& algebra, SetVariant family,
                                              int trials, std::uint64_t seed, double tol,
                                              int jobs = 1);

/// Moreau projections onto the symmetric cone (-d in the cone, <d,a> = 0,
/// d operator commutes with a) plus the idempotent normal-cone
/// characterization, cross-validated bidirectionally against sampled
/// normal-cone tests on random idempotents.
VerificationReport verify_idempotent_normal_cones(const Algebra& algebra, int trials,
                                                  std::uint64_t seed, double tol, int jobs = 1);

/// Spectral functions F in {trace, lambda-max at simple-top points,
/// log-sum-exp of eigenvalues}: the frame-formula subgradient passes a
/// sampled subgradient test, strongly operator commutes with the base
/// point, and matches central finite differences where smooth.
VerificationReport verify_subgradient_commutation(const Algebra& algebra, int trials,
                                                  std::uint64_t seed, double tol, int jobs = 1);

/// A  max F(x) + Phi(x)  over E  instance, with the oracles the optimization
/// principle needs. F_subgradient must return a global subgradient of F
/// (hence an <a>-subgradient). phi/phi_gradient may be null (Phi = 0);
/// phi_class in {"none", "spectral", "weakly-spectral"} tags which
/// hypothesis variant the run exercises.
struct OptimizationProblem {
    std::string name;
    SetSpec E;
    ScalarFn F;
    GradFn F_subgradient;
    ScalarFn phi;
    GradFn phi_gradient;
    std::string phi_class = "none";
};

/// Per trial: orbit local search maximizing F + Phi over E from a sampled
/// start; at converged points, the validated subgradient of F must operator
/// commute with the point (strong commutation when E is spectral and the
/// trial certifies a global maximizer). Non-converged trials are counted
/// inconclusive.
VerificationReport verify_optimization_principle(const OptimizationProblem& problem, int trials,
                                                 std::uint64_t seed, double tol, int jobs = 1);

/// Canned optimization-principle instances over one algebra: linear
/// objectives over automorphism and eigenvalue orbits with Phi in {0, trace,
/// log-sum-exp, and a factor-wise weakly spectral term on products}.
std::vector<OptimizationProblem> canned_optimization_problems(const Algebra& algebra,
                                                              std::uint64_t seed);

/// The local-maximizer counterexample in R^2: F(x,y) = (x-1)^2 + (y-2)^2 on
/// the segment {x,y >= 0, x+y = 3}. Checks F(3,0)=8, F(0,3)=2, both exact
/// subdifferential halfspaces over the two-point orbit, the failing strong
/// commutation at the local maximizer, and the passing one at the global.
VerificationReport run_example_4_1();

/// The S^1 x S^2 counterexample: A operator commutes with C but not
/// strongly; <C,.> over the automorphism orbit of B attains 18 at A
/// (independent 1e4-point rotation sweep plus orbit search); the eigenvalue
/// orbit of B strictly contains the automorphism orbit.
VerificationReport run_example_4_2();

/// The fixed problem instance of run_example_4_2.
OptimizationProblem example_4_2_problem();

/// CLI/acceptance entry: suite in {thm31a, thm31b, cor32, cor33, thm34}.
VerificationReport run_suite(const std::string& suite, const Algebra& algebra, int trials,
                             std::uint64_t seed, double tol, int jobs = 1);

} // namespace eja
