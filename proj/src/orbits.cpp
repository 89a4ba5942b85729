#include "eja/orbits.hpp"

#include "eja/rng.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>

namespace eja {

Derivation derivation_from_pair(const Element& u, const Element& v) {
    if (u.algebra != v.algebra) throw std::invalid_argument("derivation_from_pair: algebra mismatch");
    const Eigen::MatrixXd lu = lmap(u).matrix;
    const Eigen::MatrixXd lv = lmap(v).matrix;
    return Derivation{LinearMap{u.algebra, lu * lv - lv * lu}};
}

Derivation random_inner_derivation(const Algebra& algebra, Rng& rng) {
    return derivation_from_pair(random_element(algebra, rng), random_element(algebra, rng));
}

LinearMap exp_derivation(const Derivation& D, double t) {
    return LinearMap{D.map.algebra, (t * D.map.matrix).exp()};
}

bool is_automorphism(const LinearMap& A, double tol, int n_samples, std::uint64_t seed) {
    if (n_samples < 1) throw std::invalid_argument("is_automorphism: n_samples must be >= 1");
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(A.matrix);
    const double smax = svd.singularValues()[0];
    const double smin = svd.singularValues()[svd.singularValues().size() - 1];
    if (!(smin > 1e-10 * std::max(1.0, smax))) return false;
    Rng rng(seed);
    for (int i = 0; i < n_samples; ++i) {
        const Element x = random_element(A.algebra, rng);
        const Element y = random_element(A.algebra, rng);
        const Element lhs = A.apply(jordan_product(x, y));
        const Element rhs = jordan_product(A.apply(x), A.apply(y));
        if (norm_of(lhs - rhs) > tol * (1.0 + norm_of(x) * norm_of(y)) * std::max(1.0, smax * smax))
            return false;
    }
    return true;
}

LinearMap factor_swap_map(const Algebra& algebra, int i, int j) {
    if (algebra.kind() != Kind::Product)
        throw std::invalid_argument("factor_swap_map: not a product algebra");
    if (algebra.block(i) != algebra.block(j))
        throw std::invalid_argument("factor_swap_map: factors are not identical");
    const int d = algebra.dim();
    Eigen::MatrixXd m = Eigen::MatrixXd::Identity(d, d);
    const int oi = algebra.block_offset(i);
    const int oj = algebra.block_offset(j);
    const int len = algebra.block(i).dim();
    m.block(oi, oi, len, len).setZero();
    m.block(oj, oj, len, len).setZero();
    m.block(oi, oj, len, len).setIdentity();
    m.block(oj, oi, len, len).setIdentity();
    return LinearMap{algebra, std::move(m)};
}

std::vector<int> associative_coordinates(const Algebra& algebra) {
    std::vector<int> out;
    for (int b = 0; b < algebra.block_count(); ++b) {
        const Algebra& blk = algebra.block(b);
        const bool assoc = blk.kind() == Kind::RealVector ||
                           (blk.kind() == Kind::SymMatrix && blk.size() == 1);
        if (!assoc) continue;
        const int off = algebra.block_offset(b);
        for (int p = 0; p < blk.dim(); ++p) out.push_back(off + p);
    }
    return out;
}

LinearMap coordinate_transposition(const Algebra& algebra, int p, int q) {
    const auto assoc = associative_coordinates(algebra);
    const bool ok = std::find(assoc.begin(), assoc.end(), p) != assoc.end() &&
                    std::find(assoc.begin(), assoc.end(), q) != assoc.end();
    if (!ok)
        throw std::invalid_argument("coordinate_transposition: coordinates are not associative");
    const int d = algebra.dim();
    Eigen::MatrixXd m = Eigen::MatrixXd::Identity(d, d);
    m(p, p) = 0.0;
    m(q, q) = 0.0;
    m(p, q) = 1.0;
    m(q, p) = 1.0;
    return LinearMap{algebra, std::move(m)};
}

std::vector<std::pair<int, int>> associative_transpositions(const Algebra& algebra) {
    const auto assoc = associative_coordinates(algebra);
    std::vector<std::pair<int, int>> out;
    for (size_t i = 0; i < assoc.size(); ++i)
        for (size_t j = i + 1; j < assoc.size(); ++j) out.emplace_back(assoc[i], assoc[j]);
    return out;
}

std::vector<int> spin_factor_blocks(const Algebra& algebra) {
    std::vector<int> out;
    for (int b = 0; b < algebra.block_count(); ++b)
        if (algebra.block(b).kind() == Kind::SpinFactor) out.push_back(b);
    return out;
}

LinearMap spin_reflection_map(const Algebra& algebra, int block) {
    if (block < 0 || block >= algebra.block_count() ||
        algebra.block(block).kind() != Kind::SpinFactor)
        throw std::invalid_argument("spin_reflection_map: not a spin block");
    const int off = algebra.block_offset(block);
    Eigen::MatrixXd m = Eigen::MatrixXd::Identity(algebra.dim(), algebra.dim());
    for (int p = 1; p < algebra.block(block).dim(); ++p) m(off + p, off + p) = -1.0;
    return LinearMap{algebra, std::move(m)};
}

std::vector<std::pair<int, int>> swappable_factor_pairs(const Algebra& algebra) {
    std::vector<std::pair<int, int>> out;
    if (algebra.kind() != Kind::Product) return out;
    for (int i = 0; i < algebra.block_count(); ++i)
        for (int j = i + 1; j < algebra.block_count(); ++j)
            if (algebra.block(i) == algebra.block(j)) out.emplace_back(i, j);
    return out;
}

std::vector<Element> sample_orbit(const Element& a, int n, std::uint64_t seed, int n_factors,
                                  bool include_swaps) {
    if (n < 1) throw std::invalid_argument("sample_orbit: n must be >= 1");
    const Algebra& alg = a.algebra;
    const auto swaps = swappable_factor_pairs(alg);
    const auto transpositions = associative_transpositions(alg);
    const auto spins = spin_factor_blocks(alg);
    std::vector<Element> out;
    out.reserve(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k) {
        Rng rng(sub_seed(seed, static_cast<std::uint64_t>(k)));
        Element x = a;
        for (int f = 0; f < n_factors; ++f) {
            Derivation D = random_inner_derivation(alg, rng);
            const double dn = D.map.matrix.norm();
            if (dn > 1e-300) {
                D.map.matrix /= dn;
                x = exp_derivation(D, rng.uniform(-2.0, 2.0)).apply(x);
            }
            if (include_swaps && !swaps.empty() && rng.uniform() < 0.5) {
                const auto& [i, j] = swaps[rng.below(swaps.size())];
                x = factor_swap_map(alg, i, j).apply(x);
            }
            if (include_swaps && !transpositions.empty() && rng.uniform() < 0.5) {
                const auto& [p, q] = transpositions[rng.below(transpositions.size())];
                std::swap(x.coords[p], x.coords[q]);
            }
            if (include_swaps && !spins.empty() && rng.uniform() < 0.5) {
                const int b = static_cast<int>(spins[rng.below(spins.size())]);
                const int off = alg.block_offset(b);
                x.coords.segment(off + 1, alg.block(b).dim() - 1) *= -1.0;
            }
        }
        out.push_back(std::move(x));
    }
    return out;
}

std::vector<Element> sample_restricted_orbit(const Element& a, double eps, int n,
                                             std::uint64_t seed) {
    if (!(eps > 0)) throw std::invalid_argument("sample_restricted_orbit: eps must be > 0");
    std::vector<Element> out;
    out.reserve(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k) {
        Rng rng(sub_seed(seed, static_cast<std::uint64_t>(k)));
        Derivation D = random_inner_derivation(a.algebra, rng);
        const double opnorm = D.map.matrix.jacobiSvd().singularValues()[0];
        if (opnorm <= 1e-300) {
            out.push_back(a); // no inner derivations (e.g. R^n): identity component is trivial
            continue;
        }
        D.map.matrix /= opnorm;
        const double t = rng.uniform(-eps, eps);
        out.push_back(exp_derivation(D, t).apply(a));
    }
    return out;
}

int derivation_span_rank(const Algebra& algebra, int n_pairs, std::uint64_t seed) {
    const int d = algebra.dim();
    Rng rng(seed);
    Eigen::MatrixXd stacked(n_pairs, d * d);
    for (int i = 0; i < n_pairs; ++i) {
        const Derivation D = random_inner_derivation(algebra, rng);
        stacked.row(i) = Eigen::Map<const Eigen::VectorXd>(D.map.matrix.data(), d * d);
        const double rn = stacked.row(i).norm();
        if (rn > 1e-300) stacked.row(i) /= rn;
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(stacked);
    qr.setThreshold(1e-10);
    return static_cast<int>(qr.rank());
}

} // namespace eja
