#include "isotoda/json_io.hpp"

#include <cmath>
#include <cstdio>

#include "json.hpp"

namespace isotoda::json_io {

using nlohmann::json;

namespace {

json parse_or_throw(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw validation_error("malformed JSON input");
    return j;
}

std::vector<double> number_array(const json& j, const std::string& key) {
    if (!j.contains(key) || !j[key].is_array())
        throw validation_error("missing or non-array field \"" + key + "\"");
    std::vector<double> out;
    for (const auto& v : j[key]) {
        if (!v.is_number())
            throw validation_error("field \"" + key + "\" must contain numbers");
        out.push_back(v.get<double>());
    }
    return out;
}

} // namespace

spectrum::Spectrum parse_spectrum(const std::string& text) {
    const json j = parse_or_throw(text);
    std::vector<double> lambda = number_array(j, "lambda");
    for (size_t i = 0; i + 1 < lambda.size(); ++i)
        if (!(lambda[i] < lambda[i + 1]))
            throw validation_error("spectrum must be strictly increasing");
    if (lambda.size() < 3)
        throw validation_error("spectrum must have at least 3 eigenvalues");
    return spectrum::Spectrum(std::move(lambda));
}

matrix::PeriodicJacobi parse_matrix(const std::string& text) {
    const json j = parse_or_throw(text);
    std::vector<double> a = number_array(j, "a");
    if (!j.contains("b") || !j["b"].is_array())
        throw validation_error("missing or non-array field \"b\"");
    std::vector<matrix::cplx> b;
    for (const auto& v : j["b"]) {
        if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
            throw validation_error("field \"b\" must contain [re, im] pairs");
        b.emplace_back(v[0].get<double>(), v[1].get<double>());
    }
    if (a.size() != b.size())
        throw validation_error("fields \"a\" and \"b\" must have equal length");
    if (a.size() < 3) throw validation_error("matrix size must be at least 3");
    return matrix::PeriodicJacobi(std::move(a), std::move(b));
}

std::string spectrum_to_json(const spectrum::Spectrum& s) {
    json j;
    j["lambda"] = json::array();
    for (double v : s.lambda) j["lambda"].push_back(round12(v));
    return j.dump();
}

std::string matrix_to_json(const matrix::PeriodicJacobi& L) {
    json j;
    j["a"] = json::array();
    for (double v : L.a) j["a"].push_back(round12(v));
    j["b"] = json::array();
    for (matrix::cplx v : L.b)
        j["b"].push_back(json::array({round12(v.real()), round12(v.imag())}));
    return j.dump();
}

double round12(double x) {
    if (!std::isfinite(x)) return x;
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return std::strtod(buf, nullptr);
}

std::string fmt12(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

} // namespace isotoda::json_io
