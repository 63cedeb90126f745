#pragma once

// Text renderings of a result document.

#include <algorithm>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include "dirconv/cli/document.hpp"

namespace dirconv::cli {

enum class format { table, json };

namespace detail {

inline std::string text(const number& n) {
    if (n.exact) return n.text;
    std::ostringstream os;
    os << std::setprecision(12) << n.value;
    return os.str();
}

inline bool is_zero(const number& n) { return n.exact ? n.text == "0" : n.value == 0; }

inline std::string text(const complex_number& z) {
    if (is_zero(z.im)) return text(z.re);
    std::string im = text(z.im);
    if (is_zero(z.re)) return im + "i";
    if (im.front() != '-') im = "+" + im;
    return text(z.re) + im + "i";
}

inline std::string text(const std::vector<complex_number>& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + text(v[i]);
    return s + ")";
}

inline std::string text(const element_id& id) {
    std::string s = id.size() == 1 ? "" : "(";
    for (std::size_t i = 0; i < id.size(); ++i) s += (i ? "," : "") + std::to_string(id[i]);
    return id.size() == 1 ? s : s + ")";
}

inline std::string real(double v, int precision = 10) {
    std::ostringstream os;
    os << std::setprecision(precision) << v;
    return os.str();
}

inline std::string poly(const std::vector<double>& c) {
    std::string s;
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i] == 0) continue;
        if (!s.empty()) s += " + ";
        s += real(c[i], 8);
        if (i == 1) s += " t";
        if (i > 1) s += " t^" + std::to_string(i);
    }
    return s.empty() ? "0" : s;
}

/// Fixed-width columns, left aligned, two spaces apart.
inline void columns(std::ostream& os, const std::vector<std::vector<std::string>>& rows) {
    if (rows.empty()) return;
    std::vector<std::size_t> width(rows.front().size(), 0);
    for (const auto& r : rows)
        for (std::size_t c = 0; c < r.size(); ++c) width[c] = std::max(width[c], r[c].size());
    for (const auto& r : rows) {
        std::string line = "  ";
        for (std::size_t c = 0; c < r.size(); ++c) {
            line += r[c];
            if (c + 1 < r.size()) line += std::string(width[c] - r[c].size() + 2, ' ');
        }
        os << line << '\n';
    }
}

inline std::string render_table(const result_document& d) {
    std::ostringstream os;
    os << "task " << d.task << "  mode " << d.mode << "  semigroup " << d.semigroup << '\n';
    os << "window " << d.window_size << " elements, |x| <= " << d.size_bound << "  spec " << d.spec_hash << '\n';
    os << "status " << d.status << '\n';
    if (d.diagnostic) {
        os << "\n" << d.diagnostic->code << ": " << d.diagnostic->message << '\n';
        for (const auto& o : d.diagnostic->obstructions)
            os << "  at g(0) = " << text(o.root) << ": (T g)(" << text(o.q) << ") = " << text(o.value) << '\n';
    }
    if (d.roots) {
        os << "\ninitial polynomial f(z) coefficients " << text(d.roots->f) << '\n';
        std::vector<std::vector<std::string>> rows{{"root", "multiplicity", "simple", "note"}};
        for (const auto& r : d.roots->roots)
            rows.push_back({r.exact ? text(*r.exact) : text(r.approx), std::to_string(r.multiplicity), r.simple ? "yes" : "no", r.note});
        columns(os, rows);
        for (const auto& s : d.roots->skipped) os << "  skipped " << s << '\n';
    }
    for (const auto& t : d.solutions) {
        os << "\n" << t.label << ": g(0) = " << text(t.root) << '\n';
        auto coord_text = [](const solution_row& r) {
            std::string c = "(";
            for (std::size_t i = 0; i < r.coords.size(); ++i) c += (i ? "," : "") + r.coords[i];
            return c + ")";
        };
        // coordinates only add information when they differ from the id
        const bool show_coords = std::any_of(t.rows.begin(), t.rows.end(), [&](const solution_row& r) {
            return r.coords.size() > 1 && coord_text(r) != text(r.id);
        });
        std::vector<std::vector<std::string>> rows;
        rows.push_back(show_coords ? std::vector<std::string>{"id", "coords", "size", "value"}
                                   : std::vector<std::string>{"id", "size", "value"});
        for (const auto& r : t.rows) {
            std::vector<std::string> row{text(r.id)};
            if (show_coords) row.push_back(coord_text(r));
            row.push_back(r.size);
            row.push_back(text(r.value));
            rows.push_back(std::move(row));
        }
        columns(os, rows);
    }
    if (!d.residuals.empty()) {
        os << "\nresiduals\n";
        std::vector<std::vector<std::string>> rows{{"of", "max |.|", "exactly zero"}};
        for (const auto& r : d.residuals) rows.push_back({r.label, real(r.max_abs, 3), r.exact_zero ? "yes" : "no"});
        columns(os, rows);
    }
    for (const auto& c : d.certificates) {
        os << "\ncertificate (" << c.kind << ", scope " << c.scope << ")\n";
        std::vector<std::vector<std::string>> rows{
            {"rho", real(c.rho)},           {"m1", c.m1},
            {"z0", text(c.z0)},             {"P(t)", poly(c.P)},
            {"Q(t)", poly(c.Q)},            {"t*", real(c.t_star)},
            {"C", real(c.C)},               {"r", real(c.r)},
            {"||g||_r <=", real(c.norm_bound)}};
        if (c.validation) {
            rows.push_back({"validated levels", std::to_string(c.validation->levels)});
            rows.push_back({"margin t* - S_r", real(c.validation->bound_margin, 4)});
            rows.push_back({"recursive margin", real(c.validation->recursive_margin, 4)});
        }
        columns(os, rows);
    }
    if (!d.series.empty()) {
        os << "\nseries values\n";
        std::vector<std::vector<std::string>> rows{{"of", "s", "value", "tail bound", "note"}};
        for (const auto& s : d.series)
            rows.push_back({s.label, text(s.s), text(s.value), s.tail_bound ? real(*s.tail_bound, 4) : "-", s.note});
        columns(os, rows);
    }
    if (!d.checks.empty()) {
        os << "\nscalar equation checks\n";
        std::vector<std::vector<std::string>> rows{{"of", "s", "|sum a_j g^j|", "bound", "ok"}};
        for (const auto& c : d.checks) rows.push_back({c.label, text(c.s), real(c.residual, 4), real(c.bound, 4), c.ok ? "yes" : "no"});
        columns(os, rows);
    }
    os << "\ntime " << real(d.timing_ms, 4) << " ms\n";
    return os.str();
}

}  // namespace detail

inline std::string render(const result_document& doc, format f) {
    if (f == format::json) return json(doc).dump(2) + "\n";
    return detail::render_table(doc);
}

inline result_document parse_document(const std::string& text) { return json::parse(text).get<result_document>(); }

}  // namespace dirconv::cli
