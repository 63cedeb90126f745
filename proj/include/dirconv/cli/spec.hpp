#pragma once

// Problem specifications: the JSON input of `dirconv run`.

#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "dirconv/exact_complex.hpp"
#include "dirconv/semigroup.hpp"

namespace dirconv::cli {

using json = nlohmann::json;

/// Invalid or unreadable specification. `where` is a JSON pointer to the
/// offending field, or "line L, column C" for syntax errors.
class spec_error : public std::runtime_error {
public:
    spec_error(std::string where, const std::string& what)
        : std::runtime_error(where + ": " + what), where_(std::move(where)) {}
    const std::string& where() const { return where_; }

private:
    std::string where_;
};

enum class task_kind { solve, solve_all, invert, certify, eval, verify };

inline const char* task_name(task_kind t) {
    switch (t) {
        case task_kind::solve: return "solve";
        case task_kind::solve_all: return "solve-all";
        case task_kind::invert: return "invert";
        case task_kind::certify: return "certify";
        case task_kind::eval: return "eval";
        case task_kind::verify: return "verify";
    }
    return "?";
}

/// A complex input value with exact rational parts.
using exact_value = exact_complex;

/// Element reference: backend identity or exact coordinates.
struct element_ref {
    std::optional<element_id> id;
    std::optional<std::vector<rational>> coords;
    std::string path;
};

struct function_spec {
    enum class kind { zero, unit, one, constant, indicator, table } type = kind::zero;
    exact_value value = exact_value(1);  // const c / indicator value
    exact_value scale = exact_value(1);
    element_ref at;                                        // indicator
    std::vector<std::pair<element_ref, exact_value>> entries;  // table
    std::string path;
};

struct semigroup_spec {
    backend_kind kind = backend_kind::lattice;
    std::size_t k = 1;
    std::vector<std::vector<rational>> generators;
    truncation trunc;
};

enum class certificate_choice { uniform, sharpened, lowest };
enum class norm_choice { automatic, window };

struct task_spec {
    task_kind kind = task_kind::solve_all;
    /// nullopt means every simple root.
    std::optional<exact_value> root;
    std::vector<std::vector<exact_value>> points;
    double rho = 0;
    certificate_choice certificate = certificate_choice::uniform;
    std::optional<double> r;
    norm_choice norms = norm_choice::automatic;
    /// Caller bounds on ||a_j||_rho (valid for every r >= rho).
    std::vector<double> norm_bounds;
};

struct problem_spec {
    semigroup_spec semigroup;
    bool exact = true;
    double tolerance = 1e-10;
    std::vector<function_spec> coefficients;
    task_spec task;
    std::string hash;
};

namespace detail {

inline std::string fnv1a(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    std::ostringstream os;
    os << std::hex;
    os.width(16);
    os.fill('0');
    os << h;
    return os.str();
}

inline std::string line_col(const std::string& text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

inline const json& field(const json& j, const std::string& key, const std::string& path) {
    if (!j.is_object()) throw spec_error(path, "expected an object");
    if (!j.contains(key)) throw spec_error(path + "/" + key, "missing required field");
    return j.at(key);
}

inline rational to_rational(const json& j, const std::string& path) {
    try {
        if (j.is_string()) return parse_rational(j.get<std::string>());
        if (j.is_number_integer()) return rational(j.get<long>());
        if (j.is_number_float()) return parse_rational(j.dump());
    } catch (const std::exception& e) {
        throw spec_error(path, std::string("not a rational: ") + e.what());
    }
    throw spec_error(path, "expected a rational as \"p/q\" or a number");
}

inline exact_value to_value(const json& j, const std::string& path) {
    if (j.is_object()) {
        rational re = j.contains("re") ? to_rational(j.at("re"), path + "/re") : rational(0);
        rational im = j.contains("im") ? to_rational(j.at("im"), path + "/im") : rational(0);
        return {re, im};
    }
    return exact_value(to_rational(j, path));
}

inline std::int64_t to_int(const json& j, const std::string& path, std::int64_t lo) {
    if (!j.is_number_integer()) throw spec_error(path, "expected an integer");
    auto v = j.get<std::int64_t>();
    if (v < lo) throw spec_error(path, "must be at least " + std::to_string(lo));
    return v;
}

inline double to_real(const json& j, const std::string& path) {
    if (j.is_number()) return j.get<double>();
    return to_double(to_rational(j, path));
}

inline element_ref to_element(const json& j, const std::string& path) {
    element_ref e;
    e.path = path;
    if (j.is_array()) {
        element_id id;
        for (std::size_t i = 0; i < j.size(); ++i) id.push_back(to_int(j[i], path + "/" + std::to_string(i), 0));
        e.id = id;
        return e;
    }
    if (j.is_object() && j.contains("coords")) {
        std::vector<rational> c;
        const auto& a = j.at("coords");
        if (!a.is_array()) throw spec_error(path + "/coords", "expected an array");
        for (std::size_t i = 0; i < a.size(); ++i) c.push_back(to_rational(a[i], path + "/coords/" + std::to_string(i)));
        e.coords = c;
        return e;
    }
    if (j.is_object() && j.contains("id")) return to_element(j.at("id"), path + "/id");
    if (j.is_number_integer()) {
        e.id = element_id{to_int(j, path, 0)};
        return e;
    }
    throw spec_error(path, "expected an element: an integer tuple, or {\"coords\": [...]}");
}

inline function_spec to_function(const json& j, const std::string& path, const std::string& base_dir);

inline function_spec load_file(const json& j, const std::string& path, const std::string& base_dir) {
    std::string file = field(j, "path", path).get<std::string>();
    if (!file.empty() && file.front() != '/' && !base_dir.empty()) file = base_dir + "/" + file;
    std::ifstream in(file);
    if (!in) throw spec_error(path + "/path", "cannot read " + file);
    json inner;
    try {
        inner = json::parse(in);
    } catch (const json::parse_error& e) {
        throw spec_error(path + "/path", file + ": " + e.what());
    }
    auto f = to_function(inner, path + "(" + file + ")", base_dir);
    if (j.contains("scale")) f.scale = f.scale * to_value(j.at("scale"), path + "/scale");
    return f;
}

inline function_spec to_function(const json& j, const std::string& path, const std::string& base_dir) {
    function_spec f;
    f.path = path;
    const std::string kind = field(j, "kind", path).get<std::string>();
    if (kind == "file") return load_file(j, path, base_dir);
    if (kind == "zero") f.type = function_spec::kind::zero;
    else if (kind == "unit") f.type = function_spec::kind::unit;
    else if (kind == "one") f.type = function_spec::kind::one;
    else if (kind == "const") {
        f.type = function_spec::kind::constant;
        f.value = to_value(field(j, "value", path), path + "/value");
    } else if (kind == "indicator") {
        f.type = function_spec::kind::indicator;
        f.at = to_element(field(j, "at", path), path + "/at");
        if (j.contains("value")) f.value = to_value(j.at("value"), path + "/value");
    } else if (kind == "table") {
        f.type = function_spec::kind::table;
        const auto& entries = field(j, "entries", path);
        if (!entries.is_array()) throw spec_error(path + "/entries", "expected an array");
        for (std::size_t i = 0; i < entries.size(); ++i) {
            const std::string p = path + "/entries/" + std::to_string(i);
            const auto& e = entries[i];
            element_ref ref = e.contains("coords") ? to_element(e, p) : to_element(field(e, "id", p), p + "/id");
            f.entries.emplace_back(ref, to_value(field(e, "value", p), p + "/value"));
        }
    } else {
        throw spec_error(path + "/kind", "unknown function kind '" + kind + "'");
    }
    if (j.contains("scale")) f.scale = to_value(j.at("scale"), path + "/scale");
    return f;
}

inline semigroup_spec to_semigroup(const json& j, const std::string& path) {
    semigroup_spec s;
    const std::string kind = field(j, "kind", path).get<std::string>();
    if (kind == "lattice") s.kind = backend_kind::lattice;
    else if (kind == "ordinary-dirichlet") s.kind = backend_kind::ordinary_dirichlet;
    else if (kind == "rational-generators") s.kind = backend_kind::rational_generators;
    else throw spec_error(path + "/kind", "unknown semigroup kind '" + kind + "'");

    if (s.kind == backend_kind::rational_generators) {
        const auto& gens = field(j, "generators", path);
        if (!gens.is_array() || gens.empty()) throw spec_error(path + "/generators", "expected a non-empty array");
        for (std::size_t i = 0; i < gens.size(); ++i) {
            const std::string p = path + "/generators/" + std::to_string(i);
            std::vector<rational> g;
            if (gens[i].is_array()) {
                for (std::size_t c = 0; c < gens[i].size(); ++c) g.push_back(to_rational(gens[i][c], p + "/" + std::to_string(c)));
            } else {
                g.push_back(to_rational(gens[i], p));
            }
            if (!s.generators.empty() && g.size() != s.generators.front().size())
                throw spec_error(p, "generator dimension differs from the first generator");
            s.generators.push_back(std::move(g));
        }
        s.k = s.generators.front().size();
        if (j.contains("k") && static_cast<std::size_t>(to_int(j.at("k"), path + "/k", 1)) != s.k)
            throw spec_error(path + "/k", "k does not match the generator dimension");
    } else {
        s.k = static_cast<std::size_t>(to_int(field(j, "k", path), path + "/k", 1));
    }

    int given = j.contains("size_bound") + j.contains("index_bound") + j.contains("max_elements");
    if (given != 1) throw spec_error(path, "give exactly one of size_bound, index_bound, max_elements");
    if (j.contains("max_elements")) {
        s.trunc = truncation::by_count(static_cast<std::size_t>(to_int(j.at("max_elements"), path + "/max_elements", 1)));
    } else if (j.contains("index_bound")) {
        if (s.kind != backend_kind::ordinary_dirichlet)
            throw spec_error(path + "/index_bound", "index_bound applies to ordinary-dirichlet only");
        s.trunc = truncation::by_index(to_int(j.at("index_bound"), path + "/index_bound", 1));
    } else {
        const auto& b = j.at("size_bound");
        // "log N" names the ordinary-Dirichlet bound exactly
        if (b.is_string() && b.get<std::string>().rfind("log ", 0) == 0) {
            if (s.kind != backend_kind::ordinary_dirichlet)
                throw spec_error(path + "/size_bound", "\"log N\" bounds apply to ordinary-dirichlet only");
            try {
                s.trunc = truncation::by_index(std::stoll(b.get<std::string>().substr(4)));
            } catch (const std::exception&) {
                throw spec_error(path + "/size_bound", "expected \"log N\" with an integer N");
            }
        } else {
            s.trunc = truncation::by_size(to_rational(b, path + "/size_bound"));
        }
    }
    return s;
}

inline task_spec to_task(const json& j, const std::string& path) {
    task_spec t;
    const std::string kind = field(j, "kind", path).get<std::string>();
    if (kind == "solve") t.kind = task_kind::solve;
    else if (kind == "solve-all") t.kind = task_kind::solve_all;
    else if (kind == "invert") t.kind = task_kind::invert;
    else if (kind == "certify") t.kind = task_kind::certify;
    else if (kind == "eval") t.kind = task_kind::eval;
    else if (kind == "verify") t.kind = task_kind::verify;
    else throw spec_error(path + "/kind", "unknown task '" + kind + "'");

    if (j.contains("root")) {
        const auto& r = j.at("root");
        if (!(r.is_string() && r.get<std::string>() == "all")) t.root = to_value(r, path + "/root");
    } else if (t.kind == task_kind::solve) {
        throw spec_error(path + "/root", "solve needs a root value or \"all\"");
    }
    if (j.contains("points")) {
        const auto& pts = j.at("points");
        if (!pts.is_array()) throw spec_error(path + "/points", "expected an array");
        for (std::size_t i = 0; i < pts.size(); ++i) {
            const std::string p = path + "/points/" + std::to_string(i);
            std::vector<exact_value> s;
            if (pts[i].is_array()) {
                for (std::size_t c = 0; c < pts[i].size(); ++c) s.push_back(to_value(pts[i][c], p + "/" + std::to_string(c)));
            } else {
                s.push_back(to_value(pts[i], p));
            }
            t.points.push_back(std::move(s));
        }
    }
    if ((t.kind == task_kind::eval || t.kind == task_kind::verify) && t.points.empty())
        throw spec_error(path + "/points", "eval and verify need at least one point");
    if (j.contains("rho")) t.rho = to_real(j.at("rho"), path + "/rho");
    if (t.rho < 0) throw spec_error(path + "/rho", "rho must be non-negative");
    if (j.contains("certificate")) {
        const std::string c = j.at("certificate").get<std::string>();
        if (c == "uniform") t.certificate = certificate_choice::uniform;
        else if (c == "sharpened") t.certificate = certificate_choice::sharpened;
        else if (c == "lowest") t.certificate = certificate_choice::lowest;
        else throw spec_error(path + "/certificate", "expected uniform, sharpened or lowest");
    }
    if (j.contains("r")) t.r = to_real(j.at("r"), path + "/r");
    if (t.certificate == certificate_choice::sharpened && !t.r)
        throw spec_error(path + "/r", "a sharpened certificate needs the level r");
    if (j.contains("norms")) {
        const auto& n = j.at("norms");
        if (n.is_string() && n.get<std::string>() == "window") t.norms = norm_choice::window;
        else if (n.is_string() && n.get<std::string>() == "auto") t.norms = norm_choice::automatic;
        else if (n.is_array()) {
            for (std::size_t i = 0; i < n.size(); ++i) t.norm_bounds.push_back(to_real(n[i], path + "/norms/" + std::to_string(i)));
        } else {
            throw spec_error(path + "/norms", "expected \"auto\", \"window\" or an array of bounds");
        }
    }
    return t;
}

}  // namespace detail

/// Parses and validates the shape of a specification. Semantic checks that
/// need the enumerated window (element membership) happen when it is built.
inline problem_spec parse_spec(const std::string& text, const std::string& base_dir = {}) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw spec_error(detail::line_col(text, e.byte == 0 ? 0 : e.byte - 1), "JSON syntax error");
    }
    problem_spec s;
    s.hash = detail::fnv1a(text);
    if (!j.is_object()) throw spec_error("/", "expected an object");
    try {
        s.semigroup = detail::to_semigroup(detail::field(j, "semigroup", ""), "/semigroup");
        if (j.contains("arithmetic")) {
            const auto& a = j.at("arithmetic");
            if (a.contains("mode")) {
                const std::string m = a.at("mode").get<std::string>();
                if (m == "exact") s.exact = true;
                else if (m == "double") s.exact = false;
                else throw spec_error("/arithmetic/mode", "expected exact or double");
            }
            if (a.contains("tolerance")) s.tolerance = detail::to_real(a.at("tolerance"), "/arithmetic/tolerance");
            if (!(s.tolerance > 0)) throw spec_error("/arithmetic/tolerance", "tolerance must be positive");
        }
        const auto& eq = detail::field(j, "equation", "");
        const auto& coeffs = detail::field(eq, "coefficients", "/equation");
        if (!coeffs.is_array() || coeffs.empty())
            throw spec_error("/equation/coefficients", "expected a non-empty array of functions");
        for (std::size_t i = 0; i < coeffs.size(); ++i)
            s.coefficients.push_back(detail::to_function(coeffs[i], "/equation/coefficients/" + std::to_string(i), base_dir));
        s.task = detail::to_task(detail::field(j, "task", ""), "/task");
        if (s.task.kind == task_kind::invert) {
            if (s.coefficients.size() != 1)
                throw spec_error("/equation/coefficients", "invert takes exactly one function");
        } else if (s.coefficients.size() < 2) {
            throw spec_error("/equation/coefficients", "need d + 1 coefficients with d >= 1");
        }
        if (!s.task.norm_bounds.empty() && s.task.norm_bounds.size() != s.coefficients.size())
            throw spec_error("/task/norms", "need one norm bound per coefficient");
        for (std::size_t i = 0; i < s.task.points.size(); ++i)
            if (s.task.points[i].size() != s.semigroup.k)
                throw spec_error("/task/points/" + std::to_string(i), "point dimension differs from the semigroup dimension");
    } catch (const json::exception& e) {
        throw spec_error("/", std::string("malformed field: ") + e.what());
    }
    return s;
}

inline problem_spec load_spec(const std::string& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw spec_error(file, "cannot open specification");
    std::stringstream ss;
    ss << in.rdbuf();
    auto slash = file.find_last_of('/');
    return parse_spec(ss.str(), slash == std::string::npos ? std::string{} : file.substr(0, slash));
}

}  // namespace dirconv::cli
