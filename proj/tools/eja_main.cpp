#include "eja/io.hpp"
#include "eja/verify.hpp"

#include <CLI11.hpp>

#include <cerrno>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace {

struct Opts {
    std::string algebra = "sym:3";
    int trials = 1000;
    std::uint64_t seed = 42;
    double tol = 1e-8;
    std::string output;
    std::string format = "json";
    bool deterministic = false;
    int jobs = 1;
    std::string input;
    std::vector<double> coords;
    std::string suite;
    std::string example_id;
};

std::string timestamp_utc() {
    const std::time_t tt = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&tt, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%FT%TZ", &tm);
    return buf;
}

void emit(const Opts& o, const nlohmann::ordered_json& j, const std::string& text) {
    std::string payload;
    if (o.format == "json") {
        nlohmann::ordered_json out = j;
        if (!o.deterministic) out["timestamp"] = timestamp_utc();
        payload = out.dump(2) + "\n";
    } else {
        payload = text;
    }
    if (o.output.empty()) {
        std::cout << payload;
    } else {
        std::ofstream f(o.output);
        if (!f) throw std::runtime_error("cannot open output file: " + o.output);
        f << payload;
    }
}

nlohmann::json load_json(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open input file: " + path);
    return nlohmann::json::parse(f);
}

eja::Element element_from_coords(const std::string& algebra, const std::vector<double>& coords) {
    const eja::Algebra alg = eja::Algebra::parse(algebra);
    if (static_cast<int>(coords.size()) != alg.dim())
        throw std::invalid_argument("expected " + std::to_string(alg.dim()) +
                                    " coordinates for " + alg.str() + ", got " +
                                    std::to_string(coords.size()));
    Eigen::VectorXd c(alg.dim());
    for (int i = 0; i < c.size(); ++i) c[i] = coords[static_cast<size_t>(i)];
    return eja::make_element(alg, std::move(c));
}

std::string join_doubles(const Eigen::VectorXd& v) {
    std::ostringstream os;
    os << std::setprecision(12) << "[";
    for (int i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
    os << "]";
    return os.str();
}

std::vector<double> to_vec(const Eigen::VectorXd& v) {
    return std::vector<double>(v.data(), v.data() + v.size());
}

int run_decompose(const Opts& o) {
    if (o.input.empty() && o.coords.empty())
        throw std::invalid_argument("provide coordinates after -- or a JSON file via --input");
    const eja::Element x = o.input.empty() ? element_from_coords(o.algebra, o.coords)
                                           : eja::element_from_json(load_json(o.input));
    const eja::SpectralDecomposition sd = eja::spectral_decompose(x);

    nlohmann::ordered_json j;
    j["element"] = eja::element_to_json(x);
    j["eigenvalues"] = to_vec(sd.eigenvalues);
    auto frame = nlohmann::ordered_json::array();
    for (const eja::Element& f : sd.frame) frame.push_back(to_vec(f.coords));
    j["frame"] = std::move(frame);

    std::ostringstream text;
    text << "algebra: " << x.algebra.str() << "\n";
    text << "eigenvalues: " << join_doubles(sd.eigenvalues) << "\n";
    for (size_t i = 0; i < sd.frame.size(); ++i)
        text << "frame[" << i << "]: " << join_doubles(sd.frame[i].coords) << "\n";
    emit(o, j, text.str());
    return 0;
}

int run_commute(const Opts& o) {
    eja::Element a = eja::zero(eja::Algebra::real_vector(1));
    eja::Element b = a;
    if (o.input.empty()) {
        const eja::Algebra alg = eja::Algebra::parse(o.algebra);
        const size_t dim = static_cast<size_t>(alg.dim());
        if (o.coords.size() != 2 * dim)
            throw std::invalid_argument("expected " + std::to_string(2 * dim) +
                                        " coordinates (a then b) for " + alg.str() + ", got " +
                                        std::to_string(o.coords.size()));
        a = element_from_coords(o.algebra, {o.coords.begin(), o.coords.begin() + static_cast<long>(dim)});
        b = element_from_coords(o.algebra, {o.coords.begin() + static_cast<long>(dim), o.coords.end()});
    } else {
        const nlohmann::json j = load_json(o.input);
        a = eja::element_from_json(j.at("a"));
        b = eja::element_from_json(j.at("b"));
        if (!(a.algebra == b.algebra)) throw std::invalid_argument("a and b live in different algebras");
    }

    const double comm = eja::commutator_norm(a, b);
    const bool op = eja::operator_commute(a, b, o.tol);
    const bool strong = eja::strongly_operator_commute(a, b, o.tol);
    const double gap = eja::trace_inequality_gap(a, b);

    nlohmann::ordered_json j;
    j["algebra"] = a.algebra.str();
    j["a"] = to_vec(a.coords);
    j["b"] = to_vec(b.coords);
    j["commutator_norm"] = comm;
    j["operator_commute"] = op;
    j["strongly_operator_commute"] = strong;
    j["trace_gap"] = gap;

    std::ostringstream text;
    text << std::setprecision(12) << "operator: " << (op ? "true" : "false")
         << ", strong: " << (strong ? "true" : "false") << ", gap: " << gap << "\n";
    text << "commutator norm: " << comm << "\n";
    emit(o, j, text.str());
    return 0;
}

int run_verify(const Opts& o) {
    const eja::Algebra alg = eja::Algebra::parse(o.algebra);
    const eja::VerificationReport rep = eja::run_suite(o.suite, alg, o.trials, o.seed, o.tol, o.jobs);
    emit(o, rep.to_json(), rep.text());
    return rep.pass ? 0 : 1;
}

int run_example(const Opts& o) {
    const eja::VerificationReport rep =
        o.example_id == "4.1" ? eja::run_example_4_1() : eja::run_example_4_2();
    emit(o, rep.to_json(), rep.text());
    return rep.pass ? 0 : 1;
}

void add_output_opts(CLI::App* sub, Opts& o) {
    sub->add_option("--output,-o", o.output, "write the result to this file instead of stdout");
    sub->add_option("--format,-f", o.format, "output format (json is the stable contract)")
        ->check(CLI::IsMember({"json", "text"}));
    sub->add_flag("--deterministic", o.deterministic,
                  "suppress the timestamp for byte-identical output");
}

void add_element_opts(CLI::App* sub, Opts& o, const char* coords_help) {
    sub->add_option("--algebra,-a", o.algebra,
                    "algebra descriptor: rn:N, sym:N, spin:N, prod(...)");
    auto* in = sub->add_option("--input,-i", o.input, "JSON file with the element(s)")
                   ->check(CLI::ExistingFile);
    auto* co = sub->add_option("coords", o.coords, coords_help);
    in->excludes(co);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Euclidean Jordan algebras: spectral decompositions, commutation verdicts, "
                 "and randomized verification of commutation principles"};
    app.require_subcommand(1);

    Opts o;
    if (const char* env = std::getenv("EJA_SEED")) {
        errno = 0;
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (env[0] == '\0' || env[0] == '-' || errno != 0 || *end != '\0') {
            std::cerr << "error: EJA_SEED is not an unsigned integer: '" << env << "'\n";
            return 2;
        }
        o.seed = v;
    }

    CLI::App* dec = app.add_subcommand("decompose", "print the spectral decomposition of an element");
    add_element_opts(dec, o, "element coordinates (place them after --)");
    add_output_opts(dec, o);

    CLI::App* com = app.add_subcommand("commute", "commutation verdicts for a pair of elements");
    add_element_opts(com, o, "coordinates of a then b (place them after --)");
    com->add_option("--tol", o.tol, "verdict tolerance")->check(CLI::PositiveNumber);
    add_output_opts(com, o);

    CLI::App* ver = app.add_subcommand("verify", "run a verification suite");
    ver->add_option("suite", o.suite, "one of thm31a, thm31b, cor32, cor33, thm34")
        ->required()
        ->check(CLI::IsMember({"thm31a", "thm31b", "cor32", "cor33", "thm34"}));
    ver->add_option("--algebra,-a", o.algebra, "algebra descriptor: rn:N, sym:N, spin:N, prod(...)");
    ver->add_option("--trials,-n", o.trials, "number of randomized trials")
        ->check(CLI::Range(1, 1000000000));
    ver->add_option("--seed,-s", o.seed, "base RNG seed (EJA_SEED overrides the default)");
    ver->add_option("--tol", o.tol, "assertion tolerance")->check(CLI::PositiveNumber);
    ver->add_option("--jobs,-j", o.jobs, "worker threads (results are independent of this)")
        ->check(CLI::Range(1, 4096));
    add_output_opts(ver, o);

    CLI::App* ex = app.add_subcommand("example", "reproduce a worked counterexample");
    ex->add_option("id", o.example_id, "4.1 or 4.2")
        ->required()
        ->check(CLI::IsMember({"4.1", "4.2"}));
    add_output_opts(ex, o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;  // help/version exit 0; usage errors exit 2
    }

    try {
        if (dec->parsed()) return run_decompose(o);
        if (com->parsed()) return run_commute(o);
        if (ver->parsed()) return run_verify(o);
        return run_example(o);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
