#pragma once

// The result document of a batch run and its JSON form. Exact values travel as
// "p/q" strings, double values as JSON numbers, complex values as {"re", "im"}.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "dirconv/exact_complex.hpp"
#include "dirconv/scalar.hpp"
#include "dirconv/semigroup.hpp"

namespace dirconv::cli {

using json = nlohmann::json;

/// A real number that is either an exact rational (kept as text) or a double.
struct number {
    bool exact = false;
    std::string text;
    double value = 0;

    static number of(const rational& q) { return {true, to_string(q), to_double(q)}; }
    static number of(double d) { return {false, {}, d}; }

    friend bool operator==(const number&, const number&) = default;
};

struct complex_number {
    number re;
    number im;

    static complex_number of(const exact_complex& z) { return {number::of(z.real()), number::of(z.imag())}; }
    static complex_number of(const approx_complex& z) { return {number::of(z.real()), number::of(z.imag())}; }

    friend bool operator==(const complex_number&, const complex_number&) = default;
};

struct solution_row {
    element_id id;
    std::vector<std::string> coords;
    std::string size;
    complex_number value;

    friend bool operator==(const solution_row&, const solution_row&) = default;
};

struct solution_table {
    std::string label;
    complex_number root;
    std::vector<solution_row> rows;

    friend bool operator==(const solution_table&, const solution_table&) = default;
};

struct root_doc {
    complex_number approx;
    std::optional<complex_number> exact;
    unsigned multiplicity = 1;
    bool simple = true;
    std::string note;

    friend bool operator==(const root_doc&, const root_doc&) = default;
};

struct root_report_doc {
    std::vector<complex_number> f;
    std::vector<complex_number> f_prime;
    std::vector<root_doc> roots;
    double tau_root = 0;
    double tau_simple = 0;
    std::vector<std::string> skipped;

    friend bool operator==(const root_report_doc&, const root_report_doc&) = default;
};

struct validation_doc {
    double bound_margin = 0;
    double recursive_margin = 0;
    std::size_t levels = 0;

    friend bool operator==(const validation_doc&, const validation_doc&) = default;
};

struct certificate_doc {
    std::string kind;
    double rho = 0;
    std::string m1;
    double m1_lower = 0;
    complex_number z0;
    std::vector<double> P;
    std::vector<double> Q;
    double t_star = 0;
    double C = 0;
    double r = 0;
    double damping = 1;
    double norm_bound = 0;
    std::string scope;
    std::vector<double> coefficient_norms;
    std::optional<validation_doc> validation;

    friend bool operator==(const certificate_doc&, const certificate_doc&) = default;
};

struct residual_doc {
    std::string label;
    double max_abs = 0;
    bool exact_zero = false;

    friend bool operator==(const residual_doc&, const residual_doc&) = default;
};

struct series_doc {
    std::string label;
    std::vector<complex_number> s;
    complex_number value;
    std::string size_bound;
    std::optional<double> tail_bound;
    std::string note;

    friend bool operator==(const series_doc&, const series_doc&) = default;
};

struct check_doc {
    std::string label;
    std::vector<complex_number> s;
    double residual = 0;
    double bound = 0;
    bool ok = false;

    friend bool operator==(const check_doc&, const check_doc&) = default;
};

struct obstruction_doc {
    element_id q;
    complex_number root;
    complex_number value;

    friend bool operator==(const obstruction_doc&, const obstruction_doc&) = default;
};

struct diagnostic_doc {
    std::string code;
    std::string message;
    std::vector<obstruction_doc> obstructions;

    friend bool operator==(const diagnostic_doc&, const diagnostic_doc&) = default;
};

struct result_document {
    std::string spec_hash;
    std::string task;
    std::string mode;
    std::string semigroup;
    std::size_t window_size = 0;
    std::string size_bound;
    std::string status = "ok";
    std::optional<diagnostic_doc> diagnostic;
    std::optional<root_report_doc> roots;
    std::vector<solution_table> solutions;
    std::vector<residual_doc> residuals;
    std::vector<certificate_doc> certificates;
    std::vector<series_doc> series;
    std::vector<check_doc> checks;
    double timing_ms = 0;

    friend bool operator==(const result_document&, const result_document&) = default;
};

// JSON conversions. Optional members are omitted when empty.

inline void to_json(json& j, const number& n) {
    if (n.exact) j = n.text;
    else j = n.value;
}
inline void from_json(const json& j, number& n) {
    if (j.is_string()) n = number::of(parse_rational(j.get<std::string>()));
    else n = number::of(j.get<double>());
}

inline void to_json(json& j, const complex_number& z) { j = json{{"re", z.re}, {"im", z.im}}; }
inline void from_json(const json& j, complex_number& z) {
    j.at("re").get_to(z.re);
    j.at("im").get_to(z.im);
}

template <class T>
void put_optional(json& j, const char* key, const std::optional<T>& v) {
    if (v) j[key] = *v;
}
template <class T>
void get_optional(const json& j, const char* key, std::optional<T>& v) {
    if (j.contains(key) && !j.at(key).is_null()) v = j.at(key).get<T>();
    else v.reset();
}

NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(solution_row, id, coords, size, value)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(solution_table, label, root, rows)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(validation_doc, bound_margin, recursive_margin, levels)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(residual_doc, label, max_abs, exact_zero)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(check_doc, label, s, residual, bound, ok)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(obstruction_doc, q, root, value)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(diagnostic_doc, code, message, obstructions)

inline void to_json(json& j, const root_doc& r) {
    j = json{{"approx", r.approx}, {"multiplicity", r.multiplicity}, {"simple", r.simple}, {"note", r.note}};
    put_optional(j, "exact", r.exact);
}
inline void from_json(const json& j, root_doc& r) {
    j.at("approx").get_to(r.approx);
    j.at("multiplicity").get_to(r.multiplicity);
    j.at("simple").get_to(r.simple);
    j.at("note").get_to(r.note);
    get_optional(j, "exact", r.exact);
}

NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(root_report_doc, f, f_prime, roots, tau_root, tau_simple, skipped)

inline void to_json(json& j, const certificate_doc& c) {
    j = json{{"kind", c.kind}, {"rho", c.rho},   {"m1", c.m1},         {"m1_lower", c.m1_lower},
             {"z0", c.z0},     {"P", c.P},       {"Q", c.Q},           {"t_star", c.t_star},
             {"C", c.C},       {"r", c.r},       {"damping", c.damping}, {"norm_bound", c.norm_bound},
             {"scope", c.scope}, {"coefficient_norms", c.coefficient_norms}};
    put_optional(j, "validation", c.validation);
}
inline void from_json(const json& j, certificate_doc& c) {
    j.at("kind").get_to(c.kind);
    j.at("rho").get_to(c.rho);
    j.at("m1").get_to(c.m1);
    j.at("m1_lower").get_to(c.m1_lower);
    j.at("z0").get_to(c.z0);
    j.at("P").get_to(c.P);
    j.at("Q").get_to(c.Q);
    j.at("t_star").get_to(c.t_star);
    j.at("C").get_to(c.C);
    j.at("r").get_to(c.r);
    j.at("damping").get_to(c.damping);
    j.at("norm_bound").get_to(c.norm_bound);
    j.at("scope").get_to(c.scope);
    j.at("coefficient_norms").get_to(c.coefficient_norms);
    get_optional(j, "validation", c.validation);
}

inline void to_json(json& j, const series_doc& s) {
    j = json{{"label", s.label}, {"s", s.s}, {"value", s.value}, {"size_bound", s.size_bound}, {"note", s.note}};
    put_optional(j, "tail_bound", s.tail_bound);
}
inline void from_json(const json& j, series_doc& s) {
    j.at("label").get_to(s.label);
    j.at("s").get_to(s.s);
    j.at("value").get_to(s.value);
    j.at("size_bound").get_to(s.size_bound);
    j.at("note").get_to(s.note);
    get_optional(j, "tail_bound", s.tail_bound);
}

inline void to_json(json& j, const result_document& d) {
    j = json{{"spec_hash", d.spec_hash},
             {"task", d.task},
             {"mode", d.mode},
             {"semigroup", d.semigroup},
             {"window_size", d.window_size},
             {"size_bound", d.size_bound},
             {"status", d.status},
             {"solutions", d.solutions},
             {"residuals", d.residuals},
             {"certificates", d.certificates},
             {"series", d.series},
             {"checks", d.checks},
             {"timing_ms", d.timing_ms}};
    put_optional(j, "diagnostic", d.diagnostic);
    put_optional(j, "roots", d.roots);
}
inline void from_json(const json& j, result_document& d) {
    j.at("spec_hash").get_to(d.spec_hash);
    j.at("task").get_to(d.task);
    j.at("mode").get_to(d.mode);
    j.at("semigroup").get_to(d.semigroup);
    j.at("window_size").get_to(d.window_size);
    j.at("size_bound").get_to(d.size_bound);
    j.at("status").get_to(d.status);
    j.at("solutions").get_to(d.solutions);
    j.at("residuals").get_to(d.residuals);
    j.at("certificates").get_to(d.certificates);
    j.at("series").get_to(d.series);
    j.at("checks").get_to(d.checks);
    j.at("timing_ms").get_to(d.timing_ms);
    get_optional(j, "diagnostic", d.diagnostic);
    get_optional(j, "roots", d.roots);
}

}  // namespace dirconv::cli
