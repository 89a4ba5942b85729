#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>
#include <vector>

namespace eja {

enum class Kind { RealVector, SymMatrix, SpinFactor, Product };

/// Identifies one of the supported Euclidean Jordan algebras: R^n with the
/// componentwise product, n x n real symmetric matrices, the Jordan spin
/// algebra on R x R^{n-1}, or a direct product of these. Nested products are
/// flattened at construction.
class Algebra {
public:
    /// Empty placeholder (dim 0), only fit for assignment; every usable
    /// descriptor comes from the factories below.
    Algebra() = default;

    static Algebra real_vector(int n);
    static Algebra sym_matrix(int n);
    static Algebra spin_factor(int n);
    static Algebra product(std::vector<Algebra> factors);

    /// Parses the compact descriptor syntax: "rn:5", "sym:3", "spin:4",
    /// "prod(sym:1,sym:2)". Throws std::invalid_argument on bad input.
    static Algebra parse(const std::string& text);

    Kind kind() const { return kind_; }
    int size() const { return n_; }
    int dim() const { return dim_; }
    int rank() const { return rank_; }
    const std::vector<Algebra>& factors() const { return factors_; }

    /// Uniform block iteration: a product has one block per factor, a simple
    /// algebra is a single block starting at coordinate 0.
    int block_count() const;
    const Algebra& block(int i) const;
    int block_offset(int i) const;

    /// Simple, or isomorphic to R^n (spin:2 counts: it is isomorphic to R^2).
    bool essentially_simple() const;

    std::string str() const;

    bool operator==(const Algebra& other) const;
    bool operator!=(const Algebra& other) const { return !(*this == other); }

private:
    Kind kind_ = Kind::RealVector;
    int n_ = 0;
    int dim_ = 0;
    int rank_ = 0;
    std::vector<Algebra> factors_;
    std::vector<int> offsets_;
};

/// A point of an algebra, as coordinates in the canonical basis.
/// RealVector: standard basis. SymMatrix: E_ii first, then (E_ij+E_ji)/sqrt(2)
/// for i<j in lexicographic order, so coordinates are orthonormal for the
/// trace inner product. SpinFactor: (x0, xbar). Product: factor coordinates
/// concatenated.
struct Element {
    Algebra algebra;
    Eigen::VectorXd coords;
};

/// A linear transformation of an algebra in canonical coordinates.
/// Houses L_x, derivations and automorphisms.
struct LinearMap {
    Algebra algebra;
    Eigen::MatrixXd matrix;

    Element apply(const Element& x) const;
};

/// True iff every block is RealVector or SymMatrix(1), i.e. the Jordan
/// product is componentwise over the whole coordinate vector. For such
/// algebras every coordinate permutation is an automorphism, across blocks.
bool fully_associative(const Algebra& algebra);

Element make_element(const Algebra& algebra, Eigen::VectorXd coords);
Element zero(const Algebra& algebra);
Element unit(const Algebra& algebra);
Element basis_element(const Algebra& algebra, int j);

/// x o y. Throws on algebra mismatch.
Element jordan_product(const Element& x, const Element& y);

/// tr(x) = sum of eigenvalues; computed directly per family.
double trace_of(const Element& x);

/// <x,y> = tr(x o y).
double inner(const Element& x, const Element& y);

/// sqrt(<x,x>).
double norm_of(const Element& x);

/// Diagonal Gram matrix of the canonical basis under the trace inner product
/// (all ones except spin blocks, which carry 2).
Eigen::VectorXd gram_diagonal(const Algebra& algebra);

/// L_x as a matrix: column j holds coords(x o basis_j). Symmetric, since L_x
/// is self-adjoint for the trace form and the Gram matrix is uniform per block.
LinearMap lmap(const Element& x);

LinearMap identity_map(const Algebra& algebra);

/// i.i.d. standard normal canonical coordinates.
Element random_element(const Algebra& algebra, class Rng& rng);

// Factor access on product algebras (on a simple algebra, block 0 is the
// element itself).
Element block_of(const Element& x, int i);
Element embed_block(const Algebra& product, int i, const Element& xi);

// SymMatrix coordinate conversions.
Eigen::MatrixXd sym_coords_to_matrix(int n, const Eigen::VectorXd& coords);
Eigen::VectorXd sym_matrix_to_coords(const Eigen::MatrixXd& m);

/// Element of sym:n from a dense symmetric matrix.
Element element_from_sym(const Eigen::MatrixXd& m);

inline Element operator+(const Element& x, const Element& y) {
    if (x.algebra != y.algebra) throw std::invalid_argument("algebra mismatch");
    return Element{x.algebra, x.coords + y.coords};
}
inline Element operator-(const Element& x, const Element& y) {
    if (x.algebra != y.algebra) throw std::invalid_argument("algebra mismatch");
    return Element{x.algebra, x.coords - y.coords};
}
inline Element operator*(double s, const Element& x) {
    return Element{x.algebra, s * x.coords};
}
inline Element operator-(const Element& x) {
    return Element{x.algebra, -x.coords};
}

} // namespace eja
