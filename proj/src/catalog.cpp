#include "qspec/catalog.hpp"

#include "qspec/eigenvalues.hpp"
#include "qspec/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <string>

namespace qspec {

namespace {

[[noreturn]] void bad_name(std::string_view name, const std::string& why)
{
    throw Error(ErrorCode::InvalidArgument, "catalog function '" + std::string(name) + "': " + why);
}

nlohmann::json parse_bracket(std::string_view name, std::string_view text)
{
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error&) {
        bad_name(name, "cannot parse '" + std::string(text) + "'");
    }
}

std::vector<double> parse_coefficients(std::string_view name, std::string_view text)
{
    const nlohmann::json j = parse_bracket(name, text);
    if (!j.is_array() || j.empty()) {
        bad_name(name, "expected a non-empty coefficient list");
    }
    std::vector<double> out;
    for (const auto& v : j) {
        if (!v.is_number()) {
            bad_name(name, "coefficients must be real numbers");
        }
        out.push_back(v.get<double>());
    }
    return out;
}

// Drops trailing zero coefficients.
std::vector<double> trimmed(std::vector<double> c)
{
    while (c.size() > 1 && c.back() == 0.0) {
        c.pop_back();
    }
    return c;
}

SliceComplex integer_power(SliceComplex z, long exponent)
{
    const bool invert = exponent < 0;
    unsigned long e = invert ? static_cast<unsigned long>(-exponent) : static_cast<unsigned long>(exponent);
    SliceComplex result{1.0, 0.0};
    SliceComplex base = z;
    while (e > 0) {
        if (e & 1UL) {
            result *= base;
        }
        e >>= 1UL;
        if (e > 0) {
            base *= base;
        }
    }
    return invert ? 1.0 / result : result;
}

StemFunction monomial(std::string_view name, std::string_view text, SliceKind kind)
{
    const nlohmann::json j = parse_bracket(name, text);
    if (!j.is_array() || j.size() != 2 || !j[1].is_number_integer() || j[1].get<long>() < 0) {
        bad_name(name, "expected [a, n] with n a non-negative integer");
    }
    Quaternion a;
    if (j[0].is_number()) {
        a = Quaternion{j[0].get<double>()};
    } else if (j[0].is_array() && j[0].size() == 4 &&
               std::all_of(j[0].begin(), j[0].end(), [](const auto& v) { return v.is_number(); })) {
        a = {j[0][0].get<double>(), j[0][1].get<double>(), j[0][2].get<double>(), j[0][3].get<double>()};
    } else {
        bad_name(name, "coefficient must be a real or [a,b,c,d]");
    }
    const long n = j[1].get<long>();
    // q^n = u + I v, so q^n a = u a + I (v a) and a q^n = a u + (a v) I.
    auto f0 = [a, n](double alpha, double beta) { return integer_power({alpha, beta}, n).real() * a; };
    auto f1 = [a, n](double alpha, double beta) { return integer_power({alpha, beta}, n).imag() * a; };
    return {f0, f1, AxSymDomain(ParameterBox{}, "H"), kind, std::string(name)};
}

AxSymDomain cut_domain()
{
    AxSymDomain d(ParameterBox{}, "H minus (-inf, 0]");
    d.exclude_ray(0.0, kCatalogBuffer);
    return d;
}

} // namespace

SliceComplex polynomial_value(const std::vector<double>& coefficients, SliceComplex z)
{
    SliceComplex acc{0.0, 0.0};
    for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) {
        acc = acc * z + *it;
    }
    return acc;
}

std::vector<SliceComplex> polynomial_roots(const std::vector<double>& coefficients)
{
    const std::vector<double> c = trimmed(coefficients);
    const auto degree = static_cast<Eigen::Index>(c.size()) - 1;
    if (degree <= 0) {
        return {};
    }
    ComplexMatrix companion = ComplexMatrix::Zero(degree, degree);
    for (Eigen::Index r = 1; r < degree; ++r) {
        companion(r, r - 1) = 1.0;
    }
    for (Eigen::Index r = 0; r < degree; ++r) {
        companion(r, degree - 1) = -c[static_cast<std::size_t>(r)] / c.back();
    }
    return eigenvalues_unchecked(companion);
}

StemFunction catalog_function(std::string_view name)
{
    const auto colon = name.find(':');
    const std::string_view head = name.substr(0, colon);
    const std::string_view arg = colon == std::string_view::npos ? std::string_view{} : name.substr(colon + 1);
    const std::string label(name);

    if (name == "exp") {
        return from_holomorphic_intrinsic([](SliceComplex z) { return std::exp(z); }, AxSymDomain(ParameterBox{}, "H"),
                                          label);
    }
    if (name == "log") {
        return from_holomorphic_intrinsic([](SliceComplex z) { return std::log(z); }, cut_domain(), label);
    }
    if (name == "sqrt") {
        return from_holomorphic_intrinsic([](SliceComplex z) { return std::sqrt(z); }, cut_domain(), label);
    }
    if (head == "pow") {
        long n = 0;
        try {
            std::size_t used = 0;
            n = std::stol(std::string(arg), &used);
            if (used != arg.size()) {
                bad_name(name, "trailing characters after exponent");
            }
        } catch (const std::logic_error&) {
            bad_name(name, "exponent must be an integer");
        }
        AxSymDomain domain(ParameterBox{}, "H");
        if (n < 0) {
            domain = AxSymDomain(ParameterBox{}, "H minus {0}");
            domain.exclude_point({0.0, 0.0}, kCatalogBuffer);
        }
        return from_holomorphic_intrinsic([n](SliceComplex z) { return integer_power(z, n); }, std::move(domain),
                                          label);
    }
    if (head == "poly") {
        const std::vector<double> c = parse_coefficients(name, arg);
        return from_holomorphic_intrinsic([c](SliceComplex z) { return polynomial_value(c, z); },
                                          AxSymDomain(ParameterBox{}, "H"), label);
    }
    if (head == "ratpoly") {
        const auto split = arg.find("]/[");
        if (split == std::string_view::npos) {
            bad_name(name, "expected ratpoly:[p]/[q]");
        }
        const std::vector<double> p = parse_coefficients(name, arg.substr(0, split + 1));
        const std::vector<double> q = trimmed(parse_coefficients(name, arg.substr(split + 2)));
        if (q.size() == 1 && q[0] == 0.0) {
            bad_name(name, "denominator is the zero polynomial");
        }
        AxSymDomain domain(ParameterBox{}, "H minus poles");
        for (const SliceComplex& pole : polynomial_roots(q)) {
            domain.exclude_point(pole, kCatalogBuffer);
        }
        return from_holomorphic_intrinsic(
            [p, q](SliceComplex z) { return polynomial_value(p, z) / polynomial_value(q, z); }, std::move(domain),
            label);
    }
    if (head == "monoL") {
        return monomial(name, arg, SliceKind::Left);
    }
    if (head == "monoR") {
        return monomial(name, arg, SliceKind::Right);
    }
    bad_name(name, "unknown function");
}

} // namespace qspec
