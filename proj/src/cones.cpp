#include "eja/cones.hpp"

#include "eja/orbits.hpp"
#include "eja/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace eja {

namespace {

// Random frame from the spectral decomposition of a gaussian element;
// generic draws have distinct eigenvalues, so the frame is well defined.
std::vector<Element> random_frame(const Algebra& algebra, Rng& rng) {
    Element g = random_element(algebra, rng);
    return spectral_decompose(g).frame;
}

Element combine(const Algebra& algebra, const std::vector<Element>& frame,
                const Eigen::VectorXd& mu) {
    Element acc = zero(algebra);
    for (size_t i = 0; i < frame.size(); ++i) acc.coords += mu[static_cast<int>(i)] * frame[i].coords;
    return acc;
}

void require_membership(const SetSpec& E, const Element& a, double tol, const char* who) {
    const double ctol = std::max(tol, 1e-7) * (1.0 + norm_of(a));
    if (!set_contains(E, a, ctol))
        throw std::invalid_argument(std::string(who) + ": base point is not in the set");
}

double acceptance_scale(const Element& a, const Element& d) {
    return 1.0 + norm_of(d) * (1.0 + norm_of(a));
}

SubgradientCertificate run_sampled_test(const ScalarFn& F, const SetSpec& E, const Element& a,
                                        const Element& d, int budget, std::uint64_t seed,
                                        double tol) {
    const std::vector<Element> xs = sample_set(E, a, d, budget, seed);
    const double Fa = F ? F(a) : 0.0;
    double worst = -std::numeric_limits<double>::infinity();
    for (const Element& x : xs) {
        double v = inner(d, x - a);
        if (F) v -= F(x) - Fa;
        worst = std::max(worst, v);
    }
    if (xs.empty()) worst = 0.0;

    SubgradientCertificate cert;
    cert.set = E;
    cert.point = a;
    cert.candidate = d;
    cert.budget = budget;
    cert.max_violation = worst;
    cert.threshold = tol * acceptance_scale(a, d);
    cert.pass = worst <= cert.threshold;
    return cert;
}

} // namespace

std::vector<Element> sample_set(const SetSpec& E, const Element& a, const Element& d,
                                int budget, std::uint64_t seed) {
    std::vector<Element> xs;
    Rng rng(seed);
    switch (E.variant) {
        case SetVariant::SymmetricCone: {
            // Deterministic probes mirror the two-sided idempotent argument:
            // 0 and 2a bracket <d,a> = 0, a + e_i(d) exposes any positive
            // eigenvalue of d, a + e_i(a) covers a's own eigenspaces.
            xs.push_back(zero(E.algebra));
            xs.push_back(2.0 * a);
            for (const Element& f : spectral_decompose(d).frame) xs.push_back(a + f);
            for (const Element& f : spectral_decompose(a).frame) xs.push_back(a + f);
            for (int i = 0; i < budget; ++i) {
                Element g = random_element(E.algebra, rng);
                xs.push_back(rng.uniform(0.0, 2.0) * project_symmetric_cone(g));
            }
            break;
        }
        case SetVariant::EigenvalueOrbit: {
            const Eigen::VectorXd lam = eigenvalue_map(*E.anchor);
            xs.push_back(*E.anchor);
            xs.push_back(a);
            std::vector<int> perm(lam.size());
            for (int i = 0; i < budget; ++i) {
                std::vector<Element> frame = random_frame(E.algebra, rng);
                std::iota(perm.begin(), perm.end(), 0);
                for (int k = static_cast<int>(perm.size()) - 1; k > 0; --k)
                    std::swap(perm[k], perm[rng.below(static_cast<std::uint64_t>(k) + 1)]);
                Eigen::VectorXd mu(lam.size());
                for (int k = 0; k < lam.size(); ++k) mu[k] = lam[perm[k]];
                xs.push_back(combine(E.algebra, frame, mu));
            }
            break;
        }
        case SetVariant::AutomorphismOrbit: {
            xs.push_back(*E.anchor);
            xs.push_back(a);
            for (Element& x : sample_orbit(*E.anchor, budget, seed)) xs.push_back(std::move(x));
            break;
        }
        case SetVariant::FiniteSet:
            xs = E.points;
            break;
        case SetVariant::EigenvalueRegion: {
            if (!E.region_project)
                throw std::invalid_argument("sample_set: eigenvalue region has no projector");
            xs.push_back(a);
            for (int i = 0; i < budget; ++i) {
                Element g = random_element(E.algebra, rng);
                SpectralDecomposition sd = spectral_decompose(g);
                xs.push_back(combine(E.algebra, sd.frame, E.region_project(sd.eigenvalues)));
            }
            break;
        }
    }
    return xs;
}

SubgradientCertificate normal_cone_test(const SetSpec& E, const Element& a, const Element& d,
                                        int budget, std::uint64_t seed, double tol) {
    require_membership(E, a, tol, "normal_cone_test");
    return run_sampled_test(nullptr, E, a, d, budget, seed, tol);
}

std::pair<Element, Element> normal_cone_sample_convex(const SetSpec& E, const Element& p) {
    if (E.variant == SetVariant::SymmetricCone) {
        Element a = project_symmetric_cone(p);
        return {a, p - a};
    }
    if (E.variant == SetVariant::EigenvalueRegion && E.region_project) {
        SpectralDecomposition sd = spectral_decompose(p);
        Eigen::VectorXd mu = E.region_project(sd.eigenvalues);
        if (mu.size() != sd.eigenvalues.size())
            throw std::invalid_argument("normal_cone_sample_convex: projector changed rank");
        Element a = zero(p.algebra);
        for (size_t i = 0; i < sd.frame.size(); ++i)
            a.coords += mu[static_cast<int>(i)] * sd.frame[i].coords;
        return {a, p - a};
    }
    throw std::invalid_argument("normal_cone_sample_convex: set is not a supported convex variant");
}

bool idempotent_normal_cone_check(const Element& c, const Element& y, double tol) {
    const double nc = norm_of(c);
    if (norm_of(jordan_product(c, c) - c) > tol * (1.0 + nc * nc))
        throw std::invalid_argument("idempotent_normal_cone_check: c is not idempotent");
    if (!in_symmetric_cone(-1.0 * y, tol * (1.0 + norm_of(y)))) return false;
    return std::abs(inner(y, c)) <= tol * (1.0 + norm_of(y) * nc);
}

bool Halfspace::admits(const Element& d, double tol) const {
    return inner(d, normal) <= offset + tol * (1.0 + norm_of(d) * norm_of(normal) + std::abs(offset));
}

std::vector<Halfspace> finite_set_subdifferential(const ScalarFn& F, const SetSpec& S,
                                                  const Element& a) {
    if (S.variant != SetVariant::FiniteSet)
        throw std::invalid_argument("finite_set_subdifferential: set is not finite");
    require_membership(S, a, 1e-9, "finite_set_subdifferential");
    const double Fa = F(a);
    std::vector<Halfspace> hs;
    for (const Element& x : S.points) {
        if ((x.coords - a.coords).norm() <= 1e-12 * (1.0 + a.coords.norm())) continue;
        hs.push_back(Halfspace{x - a, F(x) - Fa});
    }
    return hs;
}

SubgradientCertificate subgradient_test(const ScalarFn& F, const SetSpec& S, const Element& a,
                                        const Element& d, int budget, std::uint64_t seed,
                                        double tol) {
    require_membership(S, a, tol, "subgradient_test");
    return run_sampled_test(F, S, a, d, budget, seed, tol);
}

} // namespace eja
