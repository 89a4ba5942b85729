#pragma once

#include "eja/algebra.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace eja {

/// Descending eigenvalues plus a Jordan frame: rank-many primitive
/// idempotents summing to the unit, pairwise products zero, with
/// x = sum_i eigenvalues[i] * frame[i].
struct SpectralDecomposition {
    Eigen::VectorXd eigenvalues;
    std::vector<Element> frame;
};

SpectralDecomposition spectral_decompose(const Element& x);

/// sum_i eigenvalues[i] * frame[i].
Element reconstruct(const SpectralDecomposition& sd);

/// Eigenvalues of x, descending. Invariant under algebra automorphisms.
Eigen::VectorXd eigenvalue_map(const Element& x);

/// True iff min eigenvalue >= -tol.
bool in_symmetric_cone(const Element& x, double tol);

/// Nearest point of the symmetric cone: clamp negative eigenvalues to zero.
Element project_symmetric_cone(const Element& p);

/// <lambda(x), lambda(y)> - <x, y>. Nonnegative up to roundoff
/// (von Neumann-type trace inequality); zero iff x and y strongly
/// operator commute.
double trace_inequality_gap(const Element& x, const Element& y);

/// Evaluates F = f o lambda for a permutation-invariant f.
double eval_spectral_function(const std::function<double(const Eigen::VectorXd&)>& f,
                              const Element& x);

enum class SetVariant { SymmetricCone, EigenvalueOrbit, AutomorphismOrbit, FiniteSet, EigenvalueRegion };

/// Stable kebab-case name of a set variant ("symmetric-cone", ...).
const char* set_variant_name(SetVariant v);

/// A constraint set within one algebra. SymmetricCone, EigenvalueOrbit and
/// EigenvalueRegion are spectral sets; AutomorphismOrbit is weakly spectral.
struct SetSpec {
    SetVariant variant = SetVariant::SymmetricCone;
    Algebra algebra;
    std::optional<Element> anchor;
    std::vector<Element> points;

    // EigenvalueRegion only: membership predicate on the sorted eigenvalue
    // vector, optional projector onto the region, and the registered name
    // used by the JSON schema.
    std::function<bool(const Eigen::VectorXd&)> region_contains;
    std::function<Eigen::VectorXd(const Eigen::VectorXd&)> region_project;
    std::string region_name;

    static SetSpec symmetric_cone(Algebra algebra);
    static SetSpec eigenvalue_orbit(Element anchor);
    static SetSpec automorphism_orbit(Element anchor);
    static SetSpec finite_set(std::vector<Element> points);
    static SetSpec eigenvalue_region(Algebra algebra,
                                     std::function<bool(const Eigen::VectorXd&)> contains,
                                     std::function<Eigen::VectorXd(const Eigen::VectorXd&)> project = nullptr,
                                     std::string name = "");

    bool is_spectral() const { return variant != SetVariant::AutomorphismOrbit && variant != SetVariant::FiniteSet; }
};

/// Membership test. EigenvalueOrbit compares eigenvalue vectors;
/// AutomorphismOrbit additionally requires factor-wise eigenvalue equality
/// under permutations of identical factors (products only).
bool set_contains(const SetSpec& E, const Element& x, double tol);

/// Sorted per-factor eigenvalue vectors, in factor order (a single-factor
/// algebra yields one entry). Used for automorphism-orbit matching.
std::vector<Eigen::VectorXd> factor_eigenvalues(const Element& x);

} // namespace eja
