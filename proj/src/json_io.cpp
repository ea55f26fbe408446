#include "dirichlet/json_io.hpp"

#include <cstdio>
#include <stdexcept>

namespace dirichlet::json_io {

using nlohmann::json;

json series_to_json(const dseries::DirichletCoeffs& f) {
    json coeffs = json::array();
    for (uint64_t n = 1; n <= f.size(); ++n) {
        const auto a = f.at(n);
        if (a != dseries::cplx(0.0))
            coeffs.push_back({n, a.real(), a.imag()});
    }
    return json{{"N", f.size()}, {"coeffs", std::move(coeffs)}};
}

dseries::DirichletCoeffs series_from_json(const json& j) {
    if (!j.contains("N") || !j.contains("coeffs"))
        throw std::invalid_argument("series JSON needs fields N and coeffs");
    const uint64_t n_max = j.at("N").get<uint64_t>();
    dseries::DirichletCoeffs f(n_max);
    uint64_t prev = 0;
    for (const auto& entry : j.at("coeffs")) {
        if (!entry.is_array() || entry.size() < 2 || entry.size() > 3)
            throw std::invalid_argument("series coeff entries are [n, re, im]");
        const uint64_t n = entry[0].get<uint64_t>();
        if (n == 0 || n > n_max)
            throw std::invalid_argument("series coeff index out of range");
        if (n <= prev)
            throw std::invalid_argument("series coeff indices must ascend");
        prev = n;
        const double re = entry[1].get<double>();
        const double im = entry.size() == 3 ? entry[2].get<double>() : 0.0;
        f.at(n) = dseries::cplx(re, im);
    }
    return f;
}

json symbol_to_json(const bohr::Symbol& sym) {
    json j = series_to_json(sym.phi0);
    json out{{"c0", sym.c0}, {"coeffs", j.at("coeffs")}, {"tol", sym.tol}};
    return out;
}

bohr::Symbol symbol_from_json(const json& j) {
    bohr::Symbol sym;
    sym.c0 = j.value("c0", 0);
    sym.tol = j.value("tol", 1e-6);
    if (!j.contains("coeffs"))
        throw std::invalid_argument("symbol JSON needs field coeffs");
    uint64_t n_max = 1;
    for (const auto& entry : j.at("coeffs"))
        n_max = std::max(n_max, entry[0].get<uint64_t>());
    json series{{"N", n_max}, {"coeffs", j.at("coeffs")}};
    sym.phi0 = series_from_json(series);
    return sym;
}

json estimate_to_json(const sampling::MeasureEstimate& est, double epsilon) {
    return json{{"epsilon", epsilon},
                {"mean", est.mean},
                {"stderr", est.std_error},
                {"n", est.n_samples},
                {"seed", est.seed}};
}

std::string config_hash(const json& config) {
    const std::string canon = config.dump();  // nlohmann objects iterate sorted
    uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char c : canon) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

} // namespace dirichlet::json_io
