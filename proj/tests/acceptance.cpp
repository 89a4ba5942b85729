// End-to-end acceptance checks, one printed line per criterion. Exits
// nonzero if any criterion fails.

#include "eja/commute.hpp"
#include "eja/io.hpp"
#include "eja/orbits.hpp"
#include "eja/rng.hpp"
#include "eja/verify.hpp"

#include "support/oracles.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>
#include <unistd.h>

using namespace eja;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

const std::vector<std::string>& roster() {
    static const std::vector<std::string> algs = {
        "rn:6",  "sym:2",  "sym:3",  "sym:4",  "sym:5",
        "spin:3", "spin:4", "spin:5", "spin:6", "spin:7", "spin:8",
        "prod(sym:1,sym:2)", "prod(spin:3,sym:2)"};
    return algs;
}

struct Line {
    std::ostringstream msg;
    bool ok = true;

    void expect(bool cond, const std::string& what) {
        if (!cond) {
            msg << (ok ? "" : "; ") << what;
            ok = false;
        }
    }
};

bool report(int n, Line& line, const std::string& summary) {
    std::printf("Criterion %d: %s — %s\n", n, line.ok ? "PASS" : "FAIL",
                line.ok ? summary.c_str() : line.msg.str().c_str());
    std::fflush(stdout);
    return line.ok;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2e", v);
    return buf;
}

// ---- criterion 1: two-point example, exact values, < 1 s ----

bool criterion1() {
    Line line;
    const auto t0 = Clock::now();
    const VerificationReport rep = run_example_4_1();
    const double dt = seconds_since(t0);
    line.expect(rep.pass, "example 4.1 report failed: " + rep.text());
    line.expect(rep.details.at("F(3,0)").get<double>() == 8.0, "F(3,0) != 8");
    line.expect(rep.details.at("F(0,3)").get<double>() == 2.0, "F(0,3) != 2");
    const auto& hs = rep.details.at("halfspace_at_(0,3)");
    line.expect(hs.at("normal") == nlohmann::json({3.0, -3.0}) && hs.at("offset") == 6.0,
                "halfspace at (0,3) not coefficient-exact");
    const auto& hg = rep.details.at("halfspace_at_(3,0)");
    line.expect(hg.at("normal") == nlohmann::json({-3.0, 3.0}) && hg.at("offset") == -6.0,
                "halfspace at (3,0) not coefficient-exact");
    line.expect(dt < 1.0, "runtime " + fmt(dt) + " s >= 1 s");
    return report(1, line, "F(3,0)=8, F(0,3)=2, halfspaces exact, " + fmt(dt) + " s");
}

// ---- criterion 2: product example, value 18, < 10 s ----

bool criterion2() {
    Line line;
    const auto t0 = Clock::now();
    const VerificationReport rep = run_example_4_2();
    const double dt = seconds_since(t0);
    line.expect(rep.pass, "example 4.2 report failed: " + rep.text());
    line.expect(std::abs(rep.details.at("inner_A_C").get<double>() - 18.0) <= 1e-9,
                "<A,C> != 18");
    line.expect(std::abs(rep.details.at("trace_gap_A_C").get<double>() - 1.0) <= 1e-9,
                "trace gap != 1");
    line.expect(std::abs(rep.details.value("search_max", 0.0) - 18.0) <= 1e-6,
                "orbit search missed 18");
    line.expect(dt < 10.0, "runtime " + fmt(dt) + " s >= 10 s");
    return report(2, line, "lambda/inner/gap exact, search best 18 within 1e-6, " +
                               fmt(dt) + " s");
}

// ---- criterion 3: the commuting-but-not-strongly pair ----

bool criterion3() {
    Line line;
    Eigen::MatrixXd ma(2, 2), mb(2, 2);
    ma << 3, 1, 1, 3;
    mb << 2, -1, -1, 2;
    const Element a = element_from_sym(ma);
    const Element b = element_from_sym(mb);
    line.expect(operator_commute(a, b, 1e-10), "operator commute not detected");
    line.expect(!strongly_operator_commute(a, b, 1e-8), "strong commute misreported");
    line.expect(std::abs(trace_inequality_gap(a, b) - 4.0) <= 1e-9, "gap != 4");
    return report(3, line, "operator true, strong false, gap 4 within 1e-9");
}

// ---- criterion 4: theorem suites over the full roster, < 5 min ----

bool criterion4() {
    Line line;
    const auto t0 = Clock::now();
    double worst_comm = 0.0, worst_gap = 0.0;
    for (const std::string& name : roster()) {
        const Algebra alg = Algebra::parse(name);
        for (const char* suite : {"thm31a", "thm31b"}) {
            const VerificationReport rep = run_suite(suite, alg, 1000, 42, 1e-6);
            line.expect(rep.pass, name + "/" + suite + " failed: " + rep.text());
            line.expect(rep.max_commutator_norm <= 1e-6,
                        name + "/" + suite + " commutator " + fmt(rep.max_commutator_norm));
            line.expect(rep.max_strong_gap <= 1e-6,
                        name + "/" + suite + " strong gap " + fmt(rep.max_strong_gap));
            worst_comm = std::max(worst_comm, rep.max_commutator_norm);
            worst_gap = std::max(worst_gap, rep.max_strong_gap);
        }
    }
    const double dt = seconds_since(t0);
    line.expect(dt < 300.0, "runtime " + fmt(dt) + " s >= 5 min");
    return report(4, line, "13 algebras x 2 suites x 1000 trials, worst commutator " +
                               fmt(worst_comm) + ", worst asserted gap " + fmt(worst_gap) +
                               ", " + fmt(dt) + " s");
}

// ---- criterion 5: Moreau decompositions and idempotent normal cones ----

bool criterion5() {
    Line line;
    double worst_inner = 0.0;
    std::uint64_t alg_index = 0;
    for (const std::string& name : roster()) {
        const Algebra alg = Algebra::parse(name);
        const SetSpec cone = SetSpec::symmetric_cone(alg);
        Rng rng(sub_seed(42, ++alg_index));
        for (int t = 0; t < 1000; ++t) {
            const Element p = random_element(alg, rng);
            const auto [a, d] = normal_cone_sample_convex(cone, p);
            if (!in_symmetric_cone(-1.0 * d, 1e-9)) {
                line.expect(false, name + ": -d left the cone");
                break;
            }
            worst_inner = std::max(worst_inner, std::abs(inner(d, a)));
        }
        line.expect(worst_inner <= 1e-7,
                    name + ": |<d,a>| = " + fmt(worst_inner) + " > 1e-7");

        // 100 idempotents, 4 candidates each, sampled budget 1000 per check.
        const VerificationReport rep = verify_idempotent_normal_cones(alg, 1000, 42, 1e-8);
        line.expect(rep.pass, name + ": " + rep.text());
        line.expect(rep.details.at("idempotents").get<int>() == 100,
                    name + ": idempotent census off");
        if (!line.ok) break;
    }
    return report(5, line,
                  "13 algebras x 1000 Moreau pairs, worst |<d,a>| " + fmt(worst_inner) +
                      "; closed vs sampled cone tests agree on 100 idempotents each");
}

// ---- criterion 6: spectral subgradients commute strongly ----

bool criterion6() {
    Line line;
    double worst_fd = 0.0;
    for (const std::string& name : roster()) {
        const Algebra alg = Algebra::parse(name);
        const VerificationReport rep = verify_subgradient_commutation(alg, 1000, 42, 1e-6);
        line.expect(rep.pass, name + ": " + rep.text());
        line.expect(rep.max_strong_gap <= 1e-6,
                    name + ": gap " + fmt(rep.max_strong_gap));
        const double fd = rep.details.at("max_finite_difference_error").get<double>();
        line.expect(fd <= 1e-5, name + ": finite differences off by " + fmt(fd));
        worst_fd = std::max(worst_fd, fd);
        if (!line.ok) break;
    }
    return report(6, line,
                  "trace / top-eigenvalue / log-sum-exp over 13 algebras x 1000 trials, "
                  "worst finite-difference error " + fmt(worst_fd));
}

// ---- criterion 7: structural properties and brute-force oracles ----

bool criterion7() {
    Line line;

    // 10^4 samples per property, spread round-robin over the roster.
    std::vector<Algebra> algs;
    for (const std::string& name : roster()) algs.push_back(Algebra::parse(name));
    const int n_samples = 10000;

    double worst_recon = 0.0, worst_gap = -0.0, worst_deriv = 0.0;
    double worst_auto = 0.0, worst_eig = 0.0;
    Rng rng(4242);
    for (int t = 0; t < n_samples; ++t) {
        const Algebra& alg = algs[static_cast<size_t>(t) % algs.size()];

        const Element x = random_element(alg, rng);
        const Element y = random_element(alg, rng);
        worst_recon = std::max(worst_recon,
                               (reconstruct(spectral_decompose(x)).coords - x.coords).norm());
        worst_gap = std::min(worst_gap, trace_inequality_gap(x, y));

        const Element u = random_element(alg, rng);
        const Element v = random_element(alg, rng);
        const Derivation D = derivation_from_pair(u, v);
        const Element lhs = D.map.apply(jordan_product(x, y));
        const Element rhs = jordan_product(D.map.apply(x), y) +
                            jordan_product(x, D.map.apply(y));
        const double dscale = 1 + D.map.matrix.norm() * norm_of(x) * norm_of(y);
        worst_deriv = std::max(worst_deriv, (lhs.coords - rhs.coords).norm() / dscale);

        const LinearMap A = exp_derivation(D, 0.5);
        const Element ax = A.apply(x);
        const double ascale = 1 + norm_of(x) * norm_of(y);
        worst_auto = std::max(
            worst_auto,
            (A.apply(jordan_product(x, y)).coords -
             jordan_product(ax, A.apply(y)).coords).norm() / ascale);
        worst_eig = std::max(worst_eig,
                             (eigenvalue_map(ax) - eigenvalue_map(x)).norm() /
                                 (1 + norm_of(x)));
    }
    line.expect(worst_recon <= 1e-8, "frame reconstruction " + fmt(worst_recon));
    line.expect(worst_gap >= -1e-8, "trace gap " + fmt(worst_gap) + " < -1e-8");
    line.expect(worst_deriv <= 1e-8, "derivation identity " + fmt(worst_deriv));
    line.expect(worst_auto <= 1e-7, "automorphism preservation " + fmt(worst_auto));
    line.expect(worst_eig <= 1e-7, "eigenvalue invariance " + fmt(worst_eig));

    // Brute-force oracles, 10^3 instances each, zero disagreements allowed.
    int disagreements = 0;

    Rng orng(777);
    for (int t = 0; t < 1000; ++t) {
        const int n = 2 + static_cast<int>(orng.below(5));  // rn:2 .. rn:6
        const Algebra alg = Algebra::real_vector(n);
        Element a = random_element(alg, orng);
        Element b = random_element(alg, orng);
        if (t % 2 == 0) {
            // Comonotone pair: sort b's entries into a's ordering.
            std::vector<int> idx(static_cast<size_t>(n));
            std::iota(idx.begin(), idx.end(), 0);
            std::sort(idx.begin(), idx.end(),
                      [&a](int i, int j) { return a.coords[i] > a.coords[j]; });
            Eigen::VectorXd sorted = b.coords;
            std::sort(sorted.data(), sorted.data() + n, std::greater<double>());
            for (int k = 0; k < n; ++k) b.coords[idx[static_cast<size_t>(k)]] = sorted[k];
        }
        const bool lib = strongly_operator_commute(a, b, 1e-8);
        const bool oracle = oracles::rn_strongly_commute(a.coords, b.coords,
                                                         1e-8 * (1 + norm_of(a) * norm_of(b)));
        if (lib != oracle) ++disagreements;
    }
    line.expect(disagreements == 0,
                std::to_string(disagreements) + " rearrangement-oracle disagreements");

    int eig_disagreements = 0;
    for (int t = 0; t < 1000; ++t) {
        const int n = 2 + static_cast<int>(orng.below(3));  // sym:2 .. sym:4
        const Algebra alg = Algebra::sym_matrix(n);
        const Element x = random_element(alg, orng);
        const Eigen::MatrixXd m = sym_coords_to_matrix(n, x.coords);
        const Eigen::VectorXd lam = eigenvalue_map(x);
        const Eigen::VectorXd roots = oracles::charpoly_eigenvalues(m);
        if ((lam - roots).cwiseAbs().maxCoeff() > 1e-6 * (1 + lam.cwiseAbs().maxCoeff()))
            ++eig_disagreements;
    }
    line.expect(eig_disagreements == 0,
                std::to_string(eig_disagreements) + " characteristic-polynomial disagreements");

    int comm_disagreements = 0;
    for (int t = 0; t < 1000; ++t) {
        const int n = 2 + static_cast<int>(orng.below(2));  // sym:2 .. sym:3
        const Algebra alg = Algebra::sym_matrix(n);
        const Element a = random_element(alg, orng);
        Element b = random_element(alg, orng);
        if (t % 2 == 0) {
            // Polynomial in a: commutes with a by construction.
            const Eigen::MatrixXd ma = sym_coords_to_matrix(n, a.coords);
            b = element_from_sym(ma * ma + 3.0 * ma +
                                 Eigen::MatrixXd::Identity(n, n));
        }
        const Eigen::MatrixXd ma = sym_coords_to_matrix(n, a.coords);
        const Eigen::MatrixXd mb = sym_coords_to_matrix(n, b.coords);
        const double scale = 1 + norm_of(a) * norm_of(b);
        const bool lib = operator_commute(a, b, 1e-8);
        const bool oracle = oracles::matrix_commutator_norm(ma, mb) <= 1e-8 * scale;
        if (lib != oracle) ++comm_disagreements;
    }
    line.expect(comm_disagreements == 0,
                std::to_string(comm_disagreements) + " matrix-commutator disagreements");

    return report(7, line,
                  "5 structural properties x 10^4 samples (reconstruction " +
                      fmt(worst_recon) + ", derivation " + fmt(worst_deriv) +
                      "); 3 oracles x 10^3 instances, 0 disagreements");
}

// ---- criterion 8: byte-level determinism ----

std::string run_cli_capture(const std::string& args, int& code) {
    static int counter = 0;
    const auto tmp = std::filesystem::temp_directory_path() /
                     ("eja_accept_" + std::to_string(::getpid()) + "_" +
                      std::to_string(counter++) + ".out");
    const std::string cmd =
        std::string(EJA_CLI_PATH) + " " + args + " > \"" + tmp.string() + "\" 2>&1";
    const int rc = std::system(cmd.c_str());
    code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    std::ifstream f(tmp, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    std::filesystem::remove(tmp);
    return ss.str();
}

bool criterion8() {
    Line line;

    const std::string lib1 =
        run_suite("thm31a", Algebra::parse("sym:3"), 50, 11, 1e-8).to_json().dump();
    const std::string lib2 =
        run_suite("thm31a", Algebra::parse("sym:3"), 50, 11, 1e-8).to_json().dump();
    const std::string lib4 =
        run_suite("thm31a", Algebra::parse("sym:3"), 50, 11, 1e-8, 4).to_json().dump();
    line.expect(lib1 == lib2, "repeated library runs differ");
    line.expect(lib1 == lib4, "thread count changed the report");

    const std::string args =
        "verify cor33 --algebra spin:4 --trials 20 --seed 9 --deterministic";
    int c1 = 0, c2 = 0;
    const std::string out1 = run_cli_capture(args, c1);
    const std::string out2 = run_cli_capture(args, c2);
    line.expect(c1 == 0 && c2 == 0, "deterministic verify run failed");
    line.expect(!out1.empty() && out1 == out2, "CLI bytes differ between runs");

    int c3 = 0;
    const std::string out3 = run_cli_capture(
        "example 4.2 --deterministic", c3);
    const std::string out4 = run_cli_capture(
        "example 4.2 --deterministic", c3);
    line.expect(out3 == out4, "example output differs between runs");

    return report(8, line, "library dumps and CLI bytes identical across repeated runs");
}

} // namespace

int main() {
    bool ok = true;
    ok &= criterion1();
    ok &= criterion2();
    ok &= criterion3();
    ok &= criterion4();
    ok &= criterion5();
    ok &= criterion6();
    ok &= criterion7();
    ok &= criterion8();
    std::printf("%s\n", ok ? "acceptance: all criteria passed"
                           : "acceptance: FAILURES above");
    return ok ? 0 : 1;
}
