#include "eja/io.hpp"

#include <stdexcept>

namespace eja {

nlohmann::ordered_json element_to_json(const Element& x) {
    nlohmann::ordered_json j;
    j["algebra"] = x.algebra.str();
    j["coords"] = std::vector<double>(x.coords.data(), x.coords.data() + x.coords.size());
    return j;
}

Element element_from_json(const nlohmann::json& j) {
    const Algebra alg = Algebra::parse(j.at("algebra").get<std::string>());
    const auto vals = j.at("coords").get<std::vector<double>>();
    Eigen::VectorXd c(static_cast<int>(vals.size()));
    for (int i = 0; i < c.size(); ++i) c[i] = vals[static_cast<size_t>(i)];
    return make_element(alg, std::move(c));
}

nlohmann::ordered_json setspec_to_json(const SetSpec& E) {
    nlohmann::ordered_json j;
    j["variant"] = set_variant_name(E.variant);
    j["algebra"] = E.algebra.str();
    if (E.anchor) j["anchor"] = element_to_json(*E.anchor);
    if (E.variant == SetVariant::FiniteSet) {
        auto pts = nlohmann::ordered_json::array();
        for (const Element& p : E.points) pts.push_back(element_to_json(p));
        j["points"] = std::move(pts);
    }
    if (E.variant == SetVariant::EigenvalueRegion) j["region"] = E.region_name;
    return j;
}

SetSpec region_by_name(const Algebra& algebra, const std::string& name) {
    if (name == "nonnegative-orthant") {
        return SetSpec::eigenvalue_region(
            algebra, [](const Eigen::VectorXd& lam) { return lam.minCoeff() >= 0.0; },
            [](const Eigen::VectorXd& lam) { return lam.cwiseMax(0.0).eval(); }, name);
    }
    if (name == "all") {
        return SetSpec::eigenvalue_region(
            algebra, [](const Eigen::VectorXd&) { return true; },
            [](const Eigen::VectorXd& lam) { return lam; }, name);
    }
    throw std::invalid_argument("region_by_name: unknown region '" + name + "'");
}

nlohmann::ordered_json certificate_to_json(const SubgradientCertificate& cert) {
    nlohmann::ordered_json j;
    j["set"] = setspec_to_json(cert.set);
    j["point"] = element_to_json(cert.point);
    j["candidate"] = element_to_json(cert.candidate);
    j["budget"] = cert.budget;
    j["max_violation"] = cert.max_violation;
    j["pass"] = cert.pass;
    return j;
}

} // namespace eja
