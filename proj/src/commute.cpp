#include "eja/commute.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace eja {

double commutator_norm(const Element& a, const Element& b) {
    if (a.algebra != b.algebra) throw std::invalid_argument("commutator_norm: algebra mismatch");
    const Eigen::MatrixXd la = lmap(a).matrix;
    const Eigen::MatrixXd lb = lmap(b).matrix;
    return (la * lb - lb * la).norm();
}

bool operator_commute(const Element& a, const Element& b, double tol) {
    if (tol < 0) throw std::invalid_argument("operator_commute: tol must be >= 0");
    return commutator_norm(a, b) <= tol * (1.0 + norm_of(a) * norm_of(b));
}

bool strongly_operator_commute(const Element& a, const Element& b, double tol) {
    if (tol < 0) throw std::invalid_argument("strongly_operator_commute: tol must be >= 0");
    if (!operator_commute(a, b, tol)) return false;
    return trace_inequality_gap(a, b) <= tol * (1.0 + norm_of(a) * norm_of(b));
}

namespace {

// Coefficients of x against a frame of primitive idempotents: <x, f_i>,
// using <f_i, f_i> = tr(f_i) = 1.
Eigen::VectorXd frame_coefficients(const Element& x, const std::vector<Element>& frame) {
    Eigen::VectorXd c(static_cast<int>(frame.size()));
    for (size_t i = 0; i < frame.size(); ++i) c[static_cast<int>(i)] = inner(x, frame[i]);
    return c;
}

double frame_residual(const Element& x, const std::vector<Element>& frame) {
    const Eigen::VectorXd c = frame_coefficients(x, frame);
    Element acc = zero(x.algebra);
    for (size_t i = 0; i < frame.size(); ++i)
        acc.coords += c[static_cast<int>(i)] * frame[i].coords;
    return norm_of(acc - x);
}

} // namespace

std::optional<std::vector<Element>> common_frame(const Element& a, const Element& b, double tol) {
    if (a.algebra != b.algebra) throw std::invalid_argument("common_frame: algebra mismatch");
    if (!operator_commute(a, b, std::max(tol, 1e-8))) return std::nullopt;

    const double na = norm_of(a);
    const double nb = norm_of(b);
    const double scale_a = tol * (1.0 + na);
    const double scale_b = tol * (1.0 + nb);
    // generic weights; bad values (where distinct joint eigenvalues of (a,b)
    // collide in a + t*b) form a finite set, so a handful of irrational
    // candidates suffices
    const double t0 = (1.0 + na) / (1.0 + nb);
    const double candidates[] = {0.6180339887498949, -0.3819660112501051, 0.4142135623730951,
                                 1.2599210498948732, -0.7320508075688772, 0.1584893192461113};

    std::optional<std::vector<Element>> best;
    double best_residual = std::numeric_limits<double>::infinity();
    for (double c : candidates) {
        const double t = c * t0;
        SpectralDecomposition sd = spectral_decompose(a + t * b);
        const double res = std::max(frame_residual(a, sd.frame), frame_residual(b, sd.frame));
        if (res < best_residual) {
            best_residual = res;
            best = sd.frame;
        }
        if (frame_residual(a, sd.frame) <= scale_a && frame_residual(b, sd.frame) <= scale_b)
            return sd.frame;
    }
    // accept the best candidate if it is within a looser bound; otherwise
    // report failure rather than returning a frame that fits neither input
    if (best && best_residual <= 10.0 * std::max(scale_a, scale_b)) return best;
    return std::nullopt;
}

} // namespace eja
