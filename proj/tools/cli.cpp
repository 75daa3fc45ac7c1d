#include "qspec/cli.hpp"

#include "qspec/calculus.hpp"
#include "qspec/catalog.hpp"
#include "qspec/spectrum.hpp"
#include "qspec/theorems.hpp"

#include <CLI11.hpp>
#include <openssl/evp.h>

#include <array>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

namespace qspec::cli {

namespace {

using json = nlohmann::ordered_json;

constexpr const char* kNonFinite = "__nonfinite__";
constexpr double kSeriesTol = 1e-14;

bool is_word_char(char ch) { return std::isalpha(static_cast<unsigned char>(ch)) != 0; }

// Bare NaN / Infinity tokens are not JSON; turn them into a marker string so
// the document still parses and the offending entry can be reported.
std::string mark_non_finite(std::string_view text)
{
    std::string out;
    out.reserve(text.size());
    bool in_string = false;
    for (std::size_t p = 0; p < text.size(); ++p) {
        const char ch = text[p];
        if (in_string) {
            out += ch;
            if (ch == '\\' && p + 1 < text.size()) {
                out += text[++p];
            } else if (ch == '"') {
                in_string = false;
            }
            continue;
        }
        if (ch == '"') {
            in_string = true;
            out += ch;
            continue;
        }
        const bool sign = (ch == '-' || ch == '+') && p + 1 < text.size() && is_word_char(text[p + 1]);
        if (sign || is_word_char(ch)) {
            std::size_t end = p + (sign ? 1 : 0);
            while (end < text.size() && is_word_char(text[end])) {
                ++end;
            }
            std::string word(text.substr(p + (sign ? 1 : 0), end - p - (sign ? 1 : 0)));
            for (auto& c : word) {
                c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
            }
            if (word == "nan" || word == "inf" || word == "infinity") {
                out += '"';
                out += kNonFinite;
                out += '"';
            } else {
                out.append(text.substr(p, end - p));
            }
            p = end - 1;
            continue;
        }
        out += ch;
    }
    return out;
}

[[noreturn]] void parse_fail(const std::string& why) { throw Error(ErrorCode::ParseError, why); }

double entry_component(const json& v, std::size_t r, std::size_t c)
{
    if (v.is_string() && v.get<std::string>() == kNonFinite) {
        throw Error(ErrorCode::NonFiniteEntry, "entry (" + std::to_string(r) + ", " + std::to_string(c) +
                                                   ") has a non-finite component");
    }
    if (!v.is_number()) {
        parse_fail("entry (" + std::to_string(r) + ", " + std::to_string(c) + ") has a non-numeric component");
    }
    const double x = v.get<double>();
    if (!std::isfinite(x)) {
        throw Error(ErrorCode::NonFiniteEntry, "entry (" + std::to_string(r) + ", " + std::to_string(c) +
                                                   ") has a non-finite component");
    }
    return x;
}

void write_string(std::ostream& os, const std::string& s) { os << json(s).dump(); }

std::string format_double(double x)
{
    if (std::isnan(x)) {
        return "\"nan\"";
    }
    if (std::isinf(x)) {
        return x > 0 ? "\"inf\"" : "\"-inf\"";
    }
    std::array<char, 40> buf{};
    std::snprintf(buf.data(), buf.size(), "%.17g", x);
    std::string s(buf.data());
    // Keep floats recognisable as floats.
    if (s.find_first_of(".eEn") == std::string::npos) {
        s += ".0";
    }
    return s;
}

bool is_flat(const json& v)
{
    return std::all_of(v.begin(), v.end(), [](const json& e) { return e.is_primitive(); });
}

void write_json(std::ostream& os, const json& v, int depth)
{
    const std::string pad(static_cast<std::size_t>(2 * (depth + 1)), ' ');
    const std::string close_pad(static_cast<std::size_t>(2 * depth), ' ');
    switch (v.type()) {
    case json::value_t::object: {
        if (v.empty()) {
            os << "{}";
            return;
        }
        os << "{\n";
        bool first = true;
        for (auto it = v.begin(); it != v.end(); ++it) {
            os << (first ? "" : ",\n") << pad;
            first = false;
            write_string(os, it.key());
            os << ": ";
            write_json(os, it.value(), depth + 1);
        }
        os << "\n" << close_pad << "}";
        return;
    }
    case json::value_t::array: {
        if (v.empty()) {
            os << "[]";
            return;
        }
        // Short arrays of scalars (quaternions, rows) stay on one line.
        const bool inline_array = is_flat(v) || std::all_of(v.begin(), v.end(), [](const json& e) {
            return e.is_array() && is_flat(e);
        });
        if (inline_array) {
            os << "[";
            bool first = true;
            for (const auto& e : v) {
                os << (first ? "" : ", ");
                first = false;
                write_json(os, e, depth + 1);
            }
            os << "]";
            return;
        }
        os << "[\n";
        bool first = true;
        for (const auto& e : v) {
            os << (first ? "" : ",\n") << pad;
            first = false;
            write_json(os, e, depth + 1);
        }
        os << "\n" << close_pad << "]";
        return;
    }
    case json::value_t::number_float:
        os << format_double(v.get<double>());
        return;
    default:
        os << v.dump();
        return;
    }
}

json quaternion_json(const Quaternion& q) { return json::array({q.a, q.b, q.c, q.d}); }

std::optional<double> parse_real(std::string_view text)
{
    double x = 0.0;
    const auto* first = text.data();
    const auto* last = text.data() + text.size();
    if (!text.empty() && *first == '+') {
        ++first;
    }
    const auto [ptr, ec] = std::from_chars(first, last, x);
    if (ec != std::errc{} || ptr != last || !std::isfinite(x)) {
        return std::nullopt;
    }
    return x;
}

Quaternion parse_quaternion(const std::string& text)
{
    std::array<double, 4> v{};
    std::size_t start = 0;
    for (std::size_t m = 0; m < 4; ++m) {
        const std::size_t comma = text.find(',', start);
        if ((m < 3) == (comma == std::string::npos)) {
            throw Error(ErrorCode::InvalidArgument, "--at expects four comma-separated reals, got '" + text + "'");
        }
        const auto value = parse_real(std::string_view(text).substr(start, comma == std::string::npos
                                                                                ? std::string::npos
                                                                                : comma - start));
        if (!value) {
            throw Error(ErrorCode::InvalidArgument, "--at component " + std::to_string(m) + " is not a finite real");
        }
        v[m] = *value;
        start = comma + 1;
    }
    return {v[0], v[1], v[2], v[3]};
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::ParseError, "cannot read '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct Options {
    std::string command;
    std::string input;
    double tol = 1e-8;
    std::string method;
    std::string fn;
    std::string at;
    std::string side = "L";
    std::optional<double> alpha;
    std::optional<int> n;
    std::string suite;
};

template <class T>
const T& require(const std::optional<T>& v, const char* flag, const std::string& command)
{
    if (!v) {
        throw Error(ErrorCode::InvalidArgument, command + " needs " + flag);
    }
    return *v;
}

const std::string& require(const std::string& v, const char* flag, const std::string& command)
{
    if (v.empty()) {
        throw Error(ErrorCode::InvalidArgument, command + " needs " + flag);
    }
    return v;
}

std::string method_or(const Options& o, const std::string& fallback, std::initializer_list<const char*> allowed)
{
    const std::string m = o.method.empty() ? fallback : o.method;
    for (const char* a : allowed) {
        if (m == a) {
            return m;
        }
    }
    std::string list;
    for (const char* a : allowed) {
        list += (list.empty() ? "" : ", ") + std::string(a);
    }
    throw Error(ErrorCode::InvalidArgument, o.command + ": unknown --method '" + m + "' (expected " + list + ")");
}

Side parse_side(const std::string& s)
{
    if (s == "L" || s == "l") {
        return Side::Left;
    }
    if (s == "R" || s == "r") {
        return Side::Right;
    }
    throw Error(ErrorCode::InvalidArgument, "--side must be L or R, got '" + s + "'");
}

struct Outcome {
    json payload;
    json tolerances;
    bool success = true;
};

Outcome dispatch(const Options& o, const QMatrix& a)
{
    Outcome r;
    r.tolerances = {{"tol", o.tol}};
    const std::string& cmd = o.command;

    if (cmd == "spectrum") {
        const double cluster = o.tol * (1.0 + a.norm());
        const SphereSet set = s_spectrum(a, cluster);
        json spheres = json::array();
        for (const auto& e : set.entries()) {
            spheres.push_back({{"re", e.sphere.re}, {"im_norm", e.sphere.im_norm}, {"mult", e.multiplicity}});
        }
        r.payload = {{"spheres", spheres}};
        r.tolerances["cluster"] = cluster;
    } else if (cmd == "radius") {
        const std::string m = method_or(o, "eig", {"eig", "power"});
        if (m == "power") {
            const PowerRadius p = power_spectral_radius(a);
            r.payload = {{"radius", p.estimate}, {"method", m}, {"squarings", p.squarings}};
            r.tolerances["successive_relative_change"] = 0.01;
        } else {
            r.payload = {{"radius", s_spectral_radius(a, RadiusMethod::Eig)}, {"method", m}};
        }
    } else if (cmd == "resolvent") {
        const Quaternion s = parse_quaternion(require(o.at, "--at", cmd));
        const Side side = parse_side(o.side);
        const std::string m = method_or(o, "formula", {"formula", "series"});
        r.payload = {{"side", side == Side::Left ? "L" : "R"}, {"method", m}, {"at", quaternion_json(s)}};
        if (m == "series") {
            const SeriesResult sr = s_resolvent_series(a, s, side, kSeriesTol);
            r.payload["matrix"] = matrix_to_json(sr.value);
            r.payload["terms"] = sr.terms;
            r.tolerances["series"] = kSeriesTol;
        } else {
            r.payload["matrix"] = matrix_to_json(s_resolvent(a, s, side, ResolventMethod::Formula));
        }
    } else if (cmd == "pencil-inverse") {
        const Quaternion q = parse_quaternion(require(o.at, "--at", cmd));
        const std::string m = method_or(o, "direct", {"direct", "neumann"});
        r.payload = {{"method", m}, {"at", quaternion_json(q)}};
        if (m == "neumann") {
            const SeriesResult sr = q_pencil_inverse_series(a, q, kSeriesTol);
            r.payload["matrix"] = matrix_to_json(sr.value);
            r.payload["terms"] = sr.terms;
            r.payload["max_coefficient_imag"] = sr.max_coefficient_imag;
            r.tolerances["series"] = kSeriesTol;
        } else {
            r.payload["matrix"] = matrix_to_json(q_pencil_inverse(a, q, PencilMethod::Direct));
        }
    } else if (cmd == "calculus") {
        const StemFunction f = catalog_function(require(o.fn, "--fn", cmd));
        r.payload = {{"function", f.name()}, {"kind", std::string(to_string(f.kind()))}};
        if (f.kind() == SliceKind::Intrinsic) {
            const std::string m = method_or(o, "complex_path", {"complex_path", "s_contour"});
            const CalculusResult c = calculus_intrinsic_detailed(
                a, f, m == "s_contour" ? CalculusMethod::SContour : CalculusMethod::ComplexPath);
            r.payload["method"] = m;
            r.payload["matrix"] = matrix_to_json(c.value);
            r.payload["nodes_per_circle"] = c.nodes;
            r.payload["circles"] = c.contour.circles.size();
            r.payload["margin"] = c.margin;
        } else {
            const std::string m = method_or(o, "decomposition", {"decomposition", "s_contour"});
            r.payload["method"] = m;
            r.payload["matrix"] = matrix_to_json(calculus_sided(
                a, f, f.kind(), m == "s_contour" ? SidedMethod::SContour : SidedMethod::Decomposition));
        }
        r.tolerances["quadrature_relative"] = QuadratureOptions{}.rel_tol;
    } else if (cmd == "exp") {
        r.payload = {{"matrix", matrix_to_json(op_exp(a))}};
        r.tolerances["taylor_truncation"] = 1e-16;
    } else if (cmd == "log") {
        r.payload = {{"matrix", matrix_to_json(op_log(a))}};
        r.tolerances["quadrature_relative"] = QuadratureOptions{}.rel_tol;
        r.tolerances["cut_buffer"] = kCatalogBuffer;
    } else if (cmd == "root") {
        const int m = require(o.n, "--n", cmd);
        r.payload = {{"n", m}, {"matrix", matrix_to_json(op_nth_root(a, m))}};
        r.tolerances["quadrature_relative"] = QuadratureOptions{}.rel_tol;
        r.tolerances["cut_buffer"] = kCatalogBuffer;
    } else if (cmd == "distance") {
        const double alpha = require(o.alpha, "--alpha", cmd);
        const DistanceReport d = distance_to_spectrum(a, alpha);
        r.payload = {{"alpha", alpha},
                     {"geometric", d.geometric},
                     {"via_resolvent", d.via_resolvent},
                     {"difference", std::abs(d.geometric - d.via_resolvent)}};
    } else if (cmd == "verify") {
        const std::string& name = require(o.suite, "--suite", cmd);
        const auto suite = parse_suite(name);
        if (!suite) {
            throw Error(ErrorCode::InvalidArgument, "unknown suite '" + name + "'");
        }
        const TheoremReport report = verify_theorems(a, *suite, o.tol);
        json cases = json::array();
        for (const auto& c : report.cases) {
            cases.push_back({{"label", c.label},
                             {"discrepancy", c.discrepancy},
                             {"expected_mismatch", c.expected_mismatch},
                             {"pass", c.pass}});
        }
        r.payload = {{"suite", report.suite}, {"cases", cases}, {"pass", report.pass}};
        r.success = report.pass;
    } else {
        throw Error(ErrorCode::InvalidArgument, "unknown command '" + cmd + "'");
    }
    return r;
}

} // namespace

QMatrix parse_matrix_text(std::string_view text)
{
    json doc;
    try {
        doc = json::parse(mark_non_finite(text));
    } catch (const json::out_of_range& e) {
        // Literals such as 1e400 overflow a double.
        throw Error(ErrorCode::NonFiniteEntry, e.what());
    } catch (const json::exception& e) {
        parse_fail(e.what());
    }
    if (!doc.is_object() || !doc.contains("entries") || !doc["entries"].is_array()) {
        parse_fail("expected an object with an \"entries\" array");
    }
    const json& rows = doc["entries"];
    std::size_t n = rows.size();
    if (doc.contains("n")) {
        if (!doc["n"].is_number_unsigned()) {
            parse_fail("\"n\" must be a non-negative integer");
        }
        n = doc["n"].get<std::size_t>();
    }
    if (n == 0) {
        parse_fail("matrix must have at least one row");
    }
    if (rows.size() != n) {
        throw Error(ErrorCode::NonSquare, "n = " + std::to_string(n) + " but " + std::to_string(rows.size()) +
                                              " rows given");
    }
    std::vector<Quaternion> entries;
    entries.reserve(n * n);
    for (std::size_t r = 0; r < n; ++r) {
        if (!rows[r].is_array()) {
            parse_fail("row " + std::to_string(r) + " is not an array");
        }
        if (rows[r].size() != n) {
            throw Error(ErrorCode::NonSquare, "row " + std::to_string(r) + " has " + std::to_string(rows[r].size()) +
                                                  " entries, expected " + std::to_string(n));
        }
        for (std::size_t c = 0; c < n; ++c) {
            const json& q = rows[r][c];
            if (!q.is_array() || q.size() != 4) {
                parse_fail("entry (" + std::to_string(r) + ", " + std::to_string(c) + ") is not [a, b, c, d]");
            }
            entries.push_back({entry_component(q[0], r, c), entry_component(q[1], r, c), entry_component(q[2], r, c),
                               entry_component(q[3], r, c)});
        }
    }
    return {n, std::move(entries)};
}

QMatrix parse_matrix(const std::filesystem::path& path) { return parse_matrix_text(read_file(path.string())); }

nlohmann::ordered_json matrix_to_json(const QMatrix& a)
{
    json rows = json::array();
    for (std::size_t r = 0; r < a.size(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < a.size(); ++c) {
            row.push_back(quaternion_json(a(r, c)));
        }
        rows.push_back(std::move(row));
    }
    return {{"n", a.size()}, {"entries", std::move(rows)}};
}

std::string dump(const nlohmann::ordered_json& value)
{
    std::ostringstream os;
    write_json(os, value, 0);
    return os.str();
}

std::string digest(std::string_view bytes)
{
    std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), md.data(), &len, EVP_sha256(), nullptr) != 1) {
        throw Error(ErrorCode::InvalidArgument, "SHA-256 digest failed");
    }
    std::ostringstream hex;
    hex << "sha256:" << std::hex << std::setfill('0');
    for (unsigned int k = 0; k < len; ++k) {
        hex << std::setw(2) << static_cast<int>(md[k]);
    }
    return hex.str();
}

int exit_code(ErrorCode code) noexcept
{
    switch (code) {
    case ErrorCode::Singular:
    case ErrorCode::BranchCut:
    case ErrorCode::AlphaInSpectrum:
    case ErrorCode::SeriesDiverges:
    case ErrorCode::OutOfDomain:
    case ErrorCode::DomainTooTight:
    case ErrorCode::ZeroDivisor:
        return 2;
    case ErrorCode::NoConvergence:
    case ErrorCode::QuadratureStalled:
    case ErrorCode::StructureViolation:
    case ErrorCode::SingularNode:
    case ErrorCode::OddRealMultiplicity:
        return 3;
    case ErrorCode::ParseError:
    case ErrorCode::NonSquare:
    case ErrorCode::NonFiniteEntry:
    case ErrorCode::InvalidArgument:
    case ErrorCode::DimensionMismatch:
    case ErrorCode::NotIntrinsic:
        return 1;
    }
    return 1;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    Options o;
    CLI::App app{"Quaternionic matrix S-spectrum and S-functional calculus", "qspec"};
    app.add_option("command", o.command,
                   "spectrum | radius | resolvent | pencil-inverse | calculus | exp | log | root | distance | verify")
        ->required();
    app.add_option("--input", o.input, "matrix file")->required();
    app.add_option("--tol", o.tol, "tolerance (default 1e-8)");
    app.add_option("--method", o.method, "eig|power, formula|series, direct|neumann, complex_path|s_contour");
    app.add_option("--fn", o.fn, "catalog function, e.g. exp, log, sqrt, pow:3, poly:[1,0,1], monoL:[[0,1,0,0],2]");
    app.add_option("--at", o.at, "quaternion a,b,c,d");
    app.add_option("--side", o.side, "L or R (default L)");
    app.add_option("--alpha", o.alpha, "real point for distance");
    app.add_option("--n", o.n, "root order");
    app.add_option("--suite", o.suite, "product | mapping | composition | polynomial | distance | resolvent_series");

    json arg_echo = args;
    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: InvalidArgument: " << e.what() << "\n";
        out << dump({{"command", o.command},
                     {"args", arg_echo},
                     {"error", {{"code", "InvalidArgument"}, {"message", e.what()}}}})
            << "\n";
        return 1;
    }

    const auto start = std::chrono::steady_clock::now();
    try {
        if (!(o.tol > 0.0) || !std::isfinite(o.tol)) {
            throw Error(ErrorCode::InvalidArgument, "--tol must be a positive real");
        }
        const std::string bytes = read_file(o.input);
        const QMatrix a = parse_matrix_text(bytes);
        const Outcome r = dispatch(o, a);
        const double elapsed =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        out << dump({{"command", o.command},
                     {"args", arg_echo},
                     {"input_digest", digest(bytes)},
                     {"payload", r.payload},
                     {"tolerances", r.tolerances},
                     {"timing_ms", elapsed}})
            << "\n";
        if (!r.success) {
            err << "verification suite '" << o.suite << "' did not pass\n";
            return 3;
        }
        return 0;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        out << dump({{"command", o.command},
                     {"args", arg_echo},
                     {"error", {{"code", std::string(to_string(e.code()))}, {"message", e.what()}}}})
            << "\n";
        return exit_code(e.code());
    }
}

} // namespace qspec::cli
