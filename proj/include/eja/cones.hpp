#pragma once

#include "eja/spectral.hpp"

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

namespace eja {

using ScalarFn = std::function<double(const Element&)>;

/// Outcome of a sampled normal-cone or subgradient membership test.
/// max_violation is the largest <d, x-a> - [F(x) - F(a)] seen over the tested
/// x (the F terms are zero in normal-cone mode). A passing certificate is
/// evidence, not proof, except over finite sets where the test is exhaustive.
struct SubgradientCertificate {
    SetSpec set;
    Element point;      // a
    Element candidate;  // d
    int budget = 0;
    double max_violation = 0.0;
    double threshold = 0.0;  // resolved absolute acceptance bound
    bool pass = false;
};

/// Points of E probed by the sampled tests. Cone: projected gaussians at
/// random radii plus the deterministic probes 0, 2a and a + (frame
/// idempotents of d and of a), which pin down the Moreau characterization.
/// Orbits: orbit samplers seeded from the anchor. Finite sets: every point.
/// Eigenvalue regions: projected random eigenvalues on random frames
/// (requires the region projector).
std::vector<Element> sample_set(const SetSpec& E, const Element& a, const Element& d,
                                int budget, std::uint64_t seed);

/// Tests d in N_E(a): <d, x-a> <= 0 over sampled x in E.
/// Throws if a is not in E.
SubgradientCertificate normal_cone_test(const SetSpec& E, const Element& a, const Element& d,
                                        int budget, std::uint64_t seed, double tol);

/// Exact normal-cone pairs for convex E: a is the projection of p onto E and
/// d = p - a, so d in N_E(a) by convexity. Supports the symmetric cone and
/// eigenvalue regions equipped with a projector.
std::pair<Element, Element> normal_cone_sample_convex(const SetSpec& E, const Element& p);

/// y in N_{V+}(c) for an idempotent c, by the closed characterization:
/// -y in V+ and <y, c> = 0. Throws unless c o c == c within tol.
bool idempotent_normal_cone_check(const Element& c, const Element& y, double tol);

/// One linear constraint {d : <d, normal> <= offset} on subgradient
/// candidates at a fixed base point.
struct Halfspace {
    Element normal;  // x - a
    double offset;   // F(x) - F(a)

    bool admits(const Element& d, double tol) const;
};

/// The exact subdifferential of F over a finite set S at a point a of S:
/// one halfspace per other point of S, membership being their intersection.
/// Throws if a is not in S.
std::vector<Halfspace> finite_set_subdifferential(const ScalarFn& F, const SetSpec& S,
                                                  const Element& a);

/// Tests d in the S-subdifferential of F at a:
/// F(x) - F(a) >= <d, x-a> over sampled x in S. Throws if a is not in S.
SubgradientCertificate subgradient_test(const ScalarFn& F, const SetSpec& S, const Element& a,
                                        const Element& d, int budget, std::uint64_t seed,
                                        double tol);

} // namespace eja
