#include "eja/spectral.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace eja {

namespace {

SpectralDecomposition decompose_real_vector(const Element& x) {
    const int n = x.algebra.dim();
    std::vector<int> order(static_cast<size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int i, int j) { return x.coords[i] > x.coords[j]; });
    SpectralDecomposition sd;
    sd.eigenvalues.resize(n);
    sd.frame.reserve(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        sd.eigenvalues[i] = x.coords[order[static_cast<size_t>(i)]];
        sd.frame.push_back(basis_element(x.algebra, order[static_cast<size_t>(i)]));
    }
    return sd;
}

SpectralDecomposition decompose_sym(const Element& x) {
    const int n = x.algebra.size();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym_coords_to_matrix(n, x.coords));
    SpectralDecomposition sd;
    sd.eigenvalues.resize(n);
    sd.frame.reserve(static_cast<size_t>(n));
    // Eigen returns eigenvalues ascending; emit descending
    for (int i = 0; i < n; ++i) {
        const int src = n - 1 - i;
        sd.eigenvalues[i] = es.eigenvalues()[src];
        Eigen::VectorXd q = es.eigenvectors().col(src);
        sd.frame.push_back(Element{x.algebra, sym_matrix_to_coords(q * q.transpose())});
    }
    return sd;
}

SpectralDecomposition decompose_spin(const Element& x) {
    const int n = x.algebra.dim();
    const double x0 = x.coords[0];
    Eigen::VectorXd xbar = x.coords.tail(n - 1);
    const double r = xbar.norm();
    Eigen::VectorXd u(n - 1);
    if (r > 0.0) {
        u = xbar / r;
    } else {
        u.setZero();
        u[0] = 1.0; // fixed frame direction for xbar = 0
    }
    SpectralDecomposition sd;
    sd.eigenvalues.resize(2);
    sd.eigenvalues[0] = x0 + r;
    sd.eigenvalues[1] = x0 - r;
    Eigen::VectorXd cp(n), cm(n);
    cp[0] = 0.5;
    cp.tail(n - 1) = 0.5 * u;
    cm[0] = 0.5;
    cm.tail(n - 1) = -0.5 * u;
    sd.frame.push_back(Element{x.algebra, std::move(cp)});
    sd.frame.push_back(Element{x.algebra, std::move(cm)});
    return sd;
}

} // namespace

SpectralDecomposition spectral_decompose(const Element& x) {
    const Algebra& a = x.algebra;
    switch (a.kind()) {
        case Kind::RealVector: return decompose_real_vector(x);
        case Kind::SymMatrix: return decompose_sym(x);
        case Kind::SpinFactor: return decompose_spin(x);
        case Kind::Product: break;
    }
    // product: decompose factors, embed frames, merge-sort descending with
    // stable factor order on ties
    struct Entry {
        double value;
        int factor;
        int slot;
    };
    std::vector<Entry> entries;
    std::vector<SpectralDecomposition> parts;
    parts.reserve(static_cast<size_t>(a.block_count()));
    for (int b = 0; b < a.block_count(); ++b) {
        parts.push_back(spectral_decompose(block_of(x, b)));
        for (int i = 0; i < parts.back().eigenvalues.size(); ++i)
            entries.push_back({parts.back().eigenvalues[i], b, i});
    }
    std::stable_sort(entries.begin(), entries.end(),
                     [](const Entry& l, const Entry& r) { return l.value > r.value; });
    SpectralDecomposition sd;
    sd.eigenvalues.resize(a.rank());
    sd.frame.reserve(static_cast<size_t>(a.rank()));
    for (size_t i = 0; i < entries.size(); ++i) {
        sd.eigenvalues[static_cast<int>(i)] = entries[i].value;
        sd.frame.push_back(embed_block(a, entries[i].factor,
                                       parts[static_cast<size_t>(entries[i].factor)]
                                           .frame[static_cast<size_t>(entries[i].slot)]));
    }
    return sd;
}

Element reconstruct(const SpectralDecomposition& sd) {
    Element acc = zero(sd.frame.front().algebra);
    for (size_t i = 0; i < sd.frame.size(); ++i)
        acc.coords += sd.eigenvalues[static_cast<int>(i)] * sd.frame[i].coords;
    return acc;
}

Eigen::VectorXd eigenvalue_map(const Element& x) {
    return spectral_decompose(x).eigenvalues;
}

bool in_symmetric_cone(const Element& x, double tol) {
    const Eigen::VectorXd lam = eigenvalue_map(x);
    return lam[lam.size() - 1] >= -tol;
}

Element project_symmetric_cone(const Element& p) {
    SpectralDecomposition sd = spectral_decompose(p);
    Element acc = zero(p.algebra);
    for (size_t i = 0; i < sd.frame.size(); ++i) {
        const double lam = sd.eigenvalues[static_cast<int>(i)];
        if (lam > 0.0) acc.coords += lam * sd.frame[i].coords;
    }
    return acc;
}

double trace_inequality_gap(const Element& x, const Element& y) {
    if (x.algebra != y.algebra) throw std::invalid_argument("trace_inequality_gap: algebra mismatch");
    return eigenvalue_map(x).dot(eigenvalue_map(y)) - inner(x, y);
}

double eval_spectral_function(const std::function<double(const Eigen::VectorXd&)>& f,
                              const Element& x) {
    return f(eigenvalue_map(x));
}

SetSpec SetSpec::symmetric_cone(Algebra algebra) {
    SetSpec s;
    s.variant = SetVariant::SymmetricCone;
    s.algebra = std::move(algebra);
    return s;
}

SetSpec SetSpec::eigenvalue_orbit(Element anchor) {
    SetSpec s;
    s.variant = SetVariant::EigenvalueOrbit;
    s.algebra = anchor.algebra;
    s.anchor = std::move(anchor);
    return s;
}

SetSpec SetSpec::automorphism_orbit(Element anchor) {
    SetSpec s;
    s.variant = SetVariant::AutomorphismOrbit;
    s.algebra = anchor.algebra;
    s.anchor = std::move(anchor);
    return s;
}

SetSpec SetSpec::finite_set(std::vector<Element> points) {
    if (points.empty()) throw std::invalid_argument("finite_set: needs at least one point");
    SetSpec s;
    s.variant = SetVariant::FiniteSet;
    s.algebra = points.front().algebra;
    s.points = std::move(points);
    return s;
}

SetSpec SetSpec::eigenvalue_region(Algebra algebra,
                                   std::function<bool(const Eigen::VectorXd&)> contains,
                                   std::function<Eigen::VectorXd(const Eigen::VectorXd&)> project,
                                   std::string name) {
    SetSpec s;
    s.variant = SetVariant::EigenvalueRegion;
    s.algebra = std::move(algebra);
    s.region_contains = std::move(contains);
    s.region_project = std::move(project);
    s.region_name = std::move(name);
    return s;
}

std::vector<Eigen::VectorXd> factor_eigenvalues(const Element& x) {
    std::vector<Eigen::VectorXd> out;
    out.reserve(static_cast<size_t>(x.algebra.block_count()));
    for (int b = 0; b < x.algebra.block_count(); ++b)
        out.push_back(eigenvalue_map(block_of(x, b)));
    return out;
}

namespace {

bool vectors_close(const Eigen::VectorXd& a, const Eigen::VectorXd& b, double tol) {
    return a.size() == b.size() && (a - b).norm() <= tol;
}

// Permutation matching of identical-descriptor factor spectra; group sizes
// are small, so brute force over used-flags suffices.
bool match_group(const std::vector<const Eigen::VectorXd*>& xs,
                 const std::vector<const Eigen::VectorXd*>& as, std::vector<char>& used,
                 size_t i, double tol) {
    if (i == xs.size()) return true;
    for (size_t j = 0; j < as.size(); ++j) {
        if (used[j]) continue;
        if (vectors_close(*xs[i], *as[j], tol)) {
            used[j] = 1;
            if (match_group(xs, as, used, i + 1, tol)) return true;
            used[j] = 0;
        }
    }
    return false;
}

} // namespace

bool set_contains(const SetSpec& E, const Element& x, double tol) {
    if (x.algebra != E.algebra) return false;
    switch (E.variant) {
        case SetVariant::SymmetricCone:
            return in_symmetric_cone(x, tol);
        case SetVariant::EigenvalueOrbit:
            return (eigenvalue_map(x) - eigenvalue_map(*E.anchor)).norm() <= tol;
        case SetVariant::AutomorphismOrbit: {
            if ((eigenvalue_map(x) - eigenvalue_map(*E.anchor)).norm() > tol) return false;
            // For fully associative algebras every coordinate permutation is
            // an automorphism, so the global eigenvalue comparison above is
            // the whole membership test even across factors.
            if (fully_associative(x.algebra)) return true;
            const auto fx = factor_eigenvalues(x);
            const auto fa = factor_eigenvalues(*E.anchor);
            // group by factor descriptor, then match within groups
            const Algebra& alg = x.algebra;
            std::vector<char> grouped(fx.size(), 0);
            for (size_t i = 0; i < fx.size(); ++i) {
                if (grouped[i]) continue;
                std::vector<const Eigen::VectorXd*> xs, as;
                for (size_t j = i; j < fx.size(); ++j) {
                    if (alg.block(static_cast<int>(j)) == alg.block(static_cast<int>(i))) {
                        grouped[j] = 1;
                        xs.push_back(&fx[j]);
                        as.push_back(&fa[j]);
                    }
                }
                std::vector<char> used(as.size(), 0);
                if (!match_group(xs, as, used, 0, tol)) return false;
            }
            return true;
        }
        case SetVariant::FiniteSet: {
            for (const auto& p : E.points)
                if ((x.coords - p.coords).norm() <= tol) return true;
            return false;
        }
        case SetVariant::EigenvalueRegion:
            return E.region_contains && E.region_contains(eigenvalue_map(x));
    }
    return false;
}

const char* set_variant_name(SetVariant v) {
    switch (v) {
        case SetVariant::SymmetricCone: return "symmetric-cone";
        case SetVariant::EigenvalueOrbit: return "eigenvalue-orbit";
        case SetVariant::AutomorphismOrbit: return "automorphism-orbit";
        case SetVariant::FiniteSet: return "finite-set";
        case SetVariant::EigenvalueRegion: return "eigenvalue-region";
    }
    return "?";
}

} // namespace eja
