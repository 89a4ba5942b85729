#include "eja/algebra.hpp"

#include "eja/rng.hpp"

#include <cctype>
#include <cmath>

namespace eja {

namespace {

const double kSqrt2 = std::sqrt(2.0);

int checked_size(int n, int floor, const char* what) {
    if (n < floor) throw std::invalid_argument(std::string(what) + ": size too small");
    return n;
}

} // namespace

Algebra Algebra::real_vector(int n) {
    Algebra a;
    a.kind_ = Kind::RealVector;
    a.n_ = checked_size(n, 1, "rn");
    a.dim_ = n;
    a.rank_ = n;
    return a;
}

Algebra Algebra::sym_matrix(int n) {
    Algebra a;
    a.kind_ = Kind::SymMatrix;
    a.n_ = checked_size(n, 1, "sym");
    a.dim_ = n * (n + 1) / 2;
    a.rank_ = n;
    return a;
}

Algebra Algebra::spin_factor(int n) {
    Algebra a;
    a.kind_ = Kind::SpinFactor;
    a.n_ = checked_size(n, 2, "spin");
    a.dim_ = n;
    a.rank_ = 2;
    return a;
}

Algebra Algebra::product(std::vector<Algebra> factors) {
    std::vector<Algebra> flat;
    for (auto& f : factors) {
        if (f.kind_ == Kind::Product) {
            for (auto& g : f.factors_) flat.push_back(g);
        } else {
            flat.push_back(f);
        }
    }
    if (flat.size() < 2) throw std::invalid_argument("prod: needs at least 2 factors");
    Algebra a;
    a.kind_ = Kind::Product;
    a.factors_ = std::move(flat);
    a.offsets_.reserve(a.factors_.size());
    for (const auto& f : a.factors_) {
        a.offsets_.push_back(a.dim_);
        a.dim_ += f.dim_;
        a.rank_ += f.rank_;
    }
    return a;
}

int Algebra::block_count() const {
    return kind_ == Kind::Product ? static_cast<int>(factors_.size()) : 1;
}

const Algebra& Algebra::block(int i) const {
    return kind_ == Kind::Product ? factors_[static_cast<size_t>(i)] : *this;
}

int Algebra::block_offset(int i) const {
    return kind_ == Kind::Product ? offsets_[static_cast<size_t>(i)] : 0;
}

bool Algebra::essentially_simple() const {
    switch (kind_) {
        case Kind::RealVector:
        case Kind::SymMatrix:
            return true;
        case Kind::SpinFactor:
            return true; // spin:2 is isomorphic to R^2; spin:n>=3 is simple
        case Kind::Product:
            // a product is essentially simple exactly when it is isomorphic
            // to R^n, i.e. every factor is
            for (const auto& f : factors_) {
                const bool rn_like = f.kind_ == Kind::RealVector ||
                                     (f.kind_ == Kind::SymMatrix && f.n_ == 1) ||
                                     (f.kind_ == Kind::SpinFactor && f.n_ == 2);
                if (!rn_like) return false;
            }
            return true;
    }
    return false;
}

bool fully_associative(const Algebra& algebra) {
    for (int b = 0; b < algebra.block_count(); ++b) {
        const Algebra& blk = algebra.block(b);
        if (blk.kind() == Kind::RealVector) continue;
        if (blk.kind() == Kind::SymMatrix && blk.size() == 1) continue;
        return false;
    }
    return true;
}

std::string Algebra::str() const {
    switch (kind_) {
        case Kind::RealVector: return "rn:" + std::to_string(n_);
        case Kind::SymMatrix: return "sym:" + std::to_string(n_);
        case Kind::SpinFactor: return "spin:" + std::to_string(n_);
        case Kind::Product: {
            std::string s = "prod(";
            for (size_t i = 0; i < factors_.size(); ++i) {
                if (i) s += ",";
                s += factors_[i].str();
            }
            return s + ")";
        }
    }
    return {};
}

bool Algebra::operator==(const Algebra& other) const {
    if (kind_ != other.kind_) return false;
    if (kind_ == Kind::Product) return factors_ == other.factors_;
    return n_ == other.n_;
}

namespace {

struct Parser {
    const std::string& text;
    size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }

    bool eat(char c) {
        skip_ws();
        if (pos < text.size() && text[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    bool eat_word(const char* w) {
        skip_ws();
        size_t p = pos;
        for (const char* q = w; *q; ++q, ++p) {
            if (p >= text.size() || text[p] != *q) return false;
        }
        pos = p;
        return true;
    }

    int parse_int() {
        skip_ws();
        size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == start) throw std::invalid_argument("algebra parse: expected integer in '" + text + "'");
        return std::stoi(text.substr(start, pos - start));
    }

    Algebra parse_algebra() {
        if (eat_word("prod")) {
            if (!eat('(')) throw std::invalid_argument("algebra parse: expected '(' in '" + text + "'");
            std::vector<Algebra> factors;
            factors.push_back(parse_algebra());
            while (eat(',')) factors.push_back(parse_algebra());
            if (!eat(')')) throw std::invalid_argument("algebra parse: expected ')' in '" + text + "'");
            return Algebra::product(std::move(factors));
        }
        if (eat_word("rn")) {
            if (!eat(':')) throw std::invalid_argument("algebra parse: expected ':' in '" + text + "'");
            return Algebra::real_vector(parse_int());
        }
        if (eat_word("sym")) {
            if (!eat(':')) throw std::invalid_argument("algebra parse: expected ':' in '" + text + "'");
            return Algebra::sym_matrix(parse_int());
        }
        if (eat_word("spin")) {
            if (!eat(':')) throw std::invalid_argument("algebra parse: expected ':' in '" + text + "'");
            return Algebra::spin_factor(parse_int());
        }
        throw std::invalid_argument("algebra parse: unknown kind in '" + text + "'");
    }
};

} // namespace

Algebra Algebra::parse(const std::string& text) {
    Parser p{text};
    Algebra a = p.parse_algebra();
    p.skip_ws();
    if (p.pos != text.size())
        throw std::invalid_argument("algebra parse: trailing input in '" + text + "'");
    return a;
}

Element make_element(const Algebra& algebra, Eigen::VectorXd coords) {
    if (coords.size() != algebra.dim())
        throw std::invalid_argument("element: coords length " + std::to_string(coords.size()) +
                                    " does not match dim " + std::to_string(algebra.dim()));
    if (!coords.allFinite()) throw std::invalid_argument("element: non-finite coordinates");
    return Element{algebra, std::move(coords)};
}

Element zero(const Algebra& algebra) {
    return Element{algebra, Eigen::VectorXd::Zero(algebra.dim())};
}

Element unit(const Algebra& algebra) {
    Eigen::VectorXd c = Eigen::VectorXd::Zero(algebra.dim());
    for (int b = 0; b < algebra.block_count(); ++b) {
        const Algebra& blk = algebra.block(b);
        const int off = algebra.block_offset(b);
        switch (blk.kind()) {
            case Kind::RealVector:
                c.segment(off, blk.dim()).setOnes();
                break;
            case Kind::SymMatrix:
                c.segment(off, blk.size()).setOnes(); // diagonal coordinates first
                break;
            case Kind::SpinFactor:
                c[off] = 1.0;
                break;
            case Kind::Product:
                break; // flattened away
        }
    }
    return Element{algebra, std::move(c)};
}

Element basis_element(const Algebra& algebra, int j) {
    Eigen::VectorXd c = Eigen::VectorXd::Zero(algebra.dim());
    c[j] = 1.0;
    return Element{algebra, std::move(c)};
}

namespace {

// Jordan product of one simple block written into `out`.
void block_product(const Algebra& blk, const Eigen::Ref<const Eigen::VectorXd>& x,
                   const Eigen::Ref<const Eigen::VectorXd>& y, Eigen::Ref<Eigen::VectorXd> out) {
    switch (blk.kind()) {
        case Kind::RealVector:
            out = x.cwiseProduct(y);
            return;
        case Kind::SymMatrix: {
            const int n = blk.size();
            Eigen::MatrixXd X = sym_coords_to_matrix(n, x);
            Eigen::MatrixXd Y = sym_coords_to_matrix(n, y);
            out = sym_matrix_to_coords(0.5 * (X * Y + Y * X));
            return;
        }
        case Kind::SpinFactor: {
            const int n = blk.dim();
            const double x0 = x[0];
            const double y0 = y[0];
            out[0] = x0 * y0 + x.tail(n - 1).dot(y.tail(n - 1));
            out.tail(n - 1) = x0 * y.tail(n - 1) + y0 * x.tail(n - 1);
            return;
        }
        case Kind::Product:
            return;
    }
}

} // namespace

Element jordan_product(const Element& x, const Element& y) {
    if (x.algebra != y.algebra) throw std::invalid_argument("jordan_product: algebra mismatch");
    const Algebra& a = x.algebra;
    Eigen::VectorXd out(a.dim());
    for (int b = 0; b < a.block_count(); ++b) {
        const Algebra& blk = a.block(b);
        const int off = a.block_offset(b);
        block_product(blk, x.coords.segment(off, blk.dim()), y.coords.segment(off, blk.dim()),
                      out.segment(off, blk.dim()));
    }
    return Element{a, std::move(out)};
}

double trace_of(const Element& x) {
    const Algebra& a = x.algebra;
    double t = 0.0;
    for (int b = 0; b < a.block_count(); ++b) {
        const Algebra& blk = a.block(b);
        const int off = a.block_offset(b);
        switch (blk.kind()) {
            case Kind::RealVector:
                t += x.coords.segment(off, blk.dim()).sum();
                break;
            case Kind::SymMatrix:
                t += x.coords.segment(off, blk.size()).sum();
                break;
            case Kind::SpinFactor:
                t += 2.0 * x.coords[off];
                break;
            case Kind::Product:
                break;
        }
    }
    return t;
}

Eigen::VectorXd gram_diagonal(const Algebra& algebra) {
    Eigen::VectorXd g = Eigen::VectorXd::Ones(algebra.dim());
    for (int b = 0; b < algebra.block_count(); ++b) {
        const Algebra& blk = algebra.block(b);
        if (blk.kind() == Kind::SpinFactor)
            g.segment(algebra.block_offset(b), blk.dim()).setConstant(2.0);
    }
    return g;
}

double inner(const Element& x, const Element& y) {
    if (x.algebra != y.algebra) throw std::invalid_argument("inner: algebra mismatch");
    const Algebra& a = x.algebra;
    double s = 0.0;
    for (int b = 0; b < a.block_count(); ++b) {
        const Algebra& blk = a.block(b);
        const int off = a.block_offset(b);
        const double dot = x.coords.segment(off, blk.dim()).dot(y.coords.segment(off, blk.dim()));
        s += blk.kind() == Kind::SpinFactor ? 2.0 * dot : dot;
    }
    return s;
}

double norm_of(const Element& x) { return std::sqrt(inner(x, x)); }

Element LinearMap::apply(const Element& x) const {
    if (x.algebra != algebra) throw std::invalid_argument("LinearMap::apply: algebra mismatch");
    return Element{algebra, matrix * x.coords};
}

LinearMap lmap(const Element& x) {
    const Algebra& a = x.algebra;
    const int d = a.dim();
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(d, d);
    // block-diagonal: fill each factor block separately
    for (int b = 0; b < a.block_count(); ++b) {
        const Algebra& blk = a.block(b);
        const int off = a.block_offset(b);
        Eigen::VectorXd ej = Eigen::VectorXd::Zero(blk.dim());
        Eigen::VectorXd col(blk.dim());
        for (int j = 0; j < blk.dim(); ++j) {
            ej.setZero();
            ej[j] = 1.0;
            block_product(blk, x.coords.segment(off, blk.dim()), ej, col);
            m.col(off + j).segment(off, blk.dim()) = col;
        }
    }
    return LinearMap{a, std::move(m)};
}

LinearMap identity_map(const Algebra& algebra) {
    return LinearMap{algebra, Eigen::MatrixXd::Identity(algebra.dim(), algebra.dim())};
}

Element random_element(const Algebra& algebra, Rng& rng) {
    Eigen::VectorXd c(algebra.dim());
    for (int i = 0; i < algebra.dim(); ++i) c[i] = rng.normal();
    return Element{algebra, std::move(c)};
}

Element block_of(const Element& x, int i) {
    const Algebra& blk = x.algebra.block(i);
    return Element{blk, x.coords.segment(x.algebra.block_offset(i), blk.dim())};
}

Element embed_block(const Algebra& product, int i, const Element& xi) {
    if (product.block(i) != xi.algebra)
        throw std::invalid_argument("embed_block: factor mismatch");
    Eigen::VectorXd c = Eigen::VectorXd::Zero(product.dim());
    c.segment(product.block_offset(i), xi.algebra.dim()) = xi.coords;
    return Element{product, std::move(c)};
}

Eigen::MatrixXd sym_coords_to_matrix(int n, const Eigen::VectorXd& coords) {
    Eigen::MatrixXd m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = coords[i];
    int k = n;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j, ++k) {
            const double v = coords[k] / kSqrt2;
            m(i, j) = v;
            m(j, i) = v;
        }
    }
    return m;
}

Eigen::VectorXd sym_matrix_to_coords(const Eigen::MatrixXd& m) {
    const int n = static_cast<int>(m.rows());
    Eigen::VectorXd c(n * (n + 1) / 2);
    for (int i = 0; i < n; ++i) c[i] = m(i, i);
    int k = n;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j, ++k) c[k] = kSqrt2 * 0.5 * (m(i, j) + m(j, i));
    return c;
}

Element element_from_sym(const Eigen::MatrixXd& m) {
    return Element{Algebra::sym_matrix(static_cast<int>(m.rows())), sym_matrix_to_coords(m)};
}

} // namespace eja
