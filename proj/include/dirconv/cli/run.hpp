#pragma once

// Executes a problem specification and fills a result document.

#include <chrono>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "dirconv/algebra.hpp"
#include "dirconv/certificate.hpp"
#include "dirconv/cli/document.hpp"
#include "dirconv/cli/spec.hpp"
#include "dirconv/norms.hpp"
#include "dirconv/series.hpp"
#include "dirconv/solver.hpp"

namespace dirconv::cli {

struct run_options {
    unsigned threads = 1;
    std::optional<double> tolerance;
};

struct run_result {
    result_document doc;
    int exit_code = 0;
};

/// Refusals that are mathematical outcomes rather than bad input.
inline bool is_refusal(errc c) {
    switch (c) {
        case errc::no_simple_roots:
        case errc::not_invertible:
        case errc::no_positive_r:
        case errc::degenerate_constant:
        case errc::zero_polynomial:
        case errc::not_a_simple_root:
        case errc::zero_derivative:
        case errc::all_coefficients_zero:
        case errc::out_of_half_plane: return true;
        default: return false;
    }
}

namespace detail {

inline window_ptr build_window(const semigroup_spec& s) {
    switch (s.kind) {
        case backend_kind::lattice: return window::make(semigroup::lattice(s.k), s.trunc);
        case backend_kind::ordinary_dirichlet: return window::make(semigroup::ordinary_dirichlet(s.k), s.trunc);
        case backend_kind::rational_generators: return window::make(semigroup::rational_generators(s.generators), s.trunc);
    }
    throw spec_error("/semigroup/kind", "unknown backend");
}

inline std::size_t resolve(const window& w, const element_ref& ref) {
    const auto& g = w.group();
    element_id id;
    if (ref.coords) {
        if (ref.coords->size() != g.dim())
            throw spec_error(ref.path, "element has " + std::to_string(ref.coords->size()) + " coordinates, the semigroup has " +
                                           std::to_string(g.dim()));
        auto found = g.id_from_coords(*ref.coords);
        if (!found) throw spec_error(ref.path, "coordinates do not name an element of this semigroup");
        id = *found;
    } else {
        id = *ref.id;
        if (id.size() != g.dim())
            throw spec_error(ref.path, "element has " + std::to_string(id.size()) + " components, the semigroup has " +
                                           std::to_string(g.dim()));
    }
    auto idx = w.find(id);
    if (!idx) throw spec_error(ref.path, "element is not in the enumerated window");
    return *idx;
}

template <scalar S>
S lift(const exact_complex& z) {
    return scalar_traits<S>::from_parts(z.real(), z.imag());
}

template <scalar S>
arithmetic_function<S> build_function(const window_ptr& w, const function_spec& f) {
    using A = arithmetic_function<S>;
    A out(w);
    switch (f.type) {
        case function_spec::kind::zero: break;
        case function_spec::kind::unit: out = A::unit(w); break;
        case function_spec::kind::one: out = A::one(w); break;
        case function_spec::kind::constant: out = A::constant(w, lift<S>(f.value)); break;
        case function_spec::kind::indicator: out[resolve(*w, f.at)] = lift<S>(f.value); break;
        case function_spec::kind::table:
            for (const auto& [ref, v] : f.entries) out[resolve(*w, ref)] += lift<S>(v);
            break;
    }
    out *= lift<S>(f.scale);
    return out;
}

/// Whether the function vanishes outside the window by construction.
inline bool finitely_supported(const function_spec& f) {
    return f.type != function_spec::kind::one && f.type != function_spec::kind::constant;
}

template <scalar S>
coefficient_norms choose_norms(const problem_spec& spec, const conv_polynomial<S>& T) {
    coefficient_norms n;
    const auto& coeffs = spec.coefficients;
    const bool all_finite = std::all_of(coeffs.begin(), coeffs.end(), [](const auto& f) { return finitely_supported(f); });
    if (!spec.task.norm_bounds.empty()) {
        n.scope = norm_scope::user_bound;
        const double rho = spec.task.rho;
        for (double b : spec.task.norm_bounds)
            n.bounds.push_back([b, rho](double r) { return r >= rho ? b : std::numeric_limits<double>::infinity(); });
        return n;
    }
    if (spec.task.norms == norm_choice::window) return window_norms(T, all_finite);
    n.scope = all_finite ? norm_scope::window_exact : norm_scope::user_bound;
    const semigroup group = T.win().group();
    for (std::size_t j = 0; j < coeffs.size(); ++j) {
        const auto& f = coeffs[j];
        if (finitely_supported(f)) {
            auto a = T.coefficient(j);
            n.bounds.push_back([a](double r) { return window_norm(a, r); });
        } else {
            exact_complex c = f.type == function_spec::kind::one ? f.scale : f.value * f.scale;
            const double mag = rounding::abs_up(c);
            n.bounds.push_back([mag, group](double r) { return rounding::mul_up(mag, norms::constant_one(group, r)); });
        }
    }
    return n;
}

inline std::string size_text(const window& w) {
    if (w.size() == 0) return "";
    return w.size_of(w.size() - 1).to_string();
}

template <scalar S>
solution_table make_table(const std::string& label, const arithmetic_function<S>& g) {
    solution_table t;
    t.label = label;
    t.root = complex_number::of(g[0]);
    const window& w = g.win();
    const auto& grp = w.group();
    for (std::size_t i = 0; i < g.size(); ++i) {
        solution_row row;
        row.id = w[i].id;
        if (grp.kind() == backend_kind::ordinary_dirichlet) {
            for (auto v : row.id) row.coords.push_back(v == 1 ? "0" : "log " + std::to_string(v));
        } else {
            for (const auto& c : grp.coords(row.id)) row.coords.push_back(to_string(c));
        }
        row.size = w.size_of(i).to_string();
        row.value = complex_number::of(g[i]);
        t.rows.push_back(std::move(row));
    }
    return t;
}

template <scalar S>
residual_doc make_residual(const std::string& label, const arithmetic_function<S>& res) {
    return {label, res.max_abs(), !res.is_nonzero(0.0)};
}

template <scalar S>
root_report_doc make_roots(const root_report<S>& rep, const std::vector<std::pair<approx_complex, std::string>>& skipped) {
    root_report_doc d;
    for (const auto& c : rep.f) d.f.push_back(complex_number::of(c));
    for (const auto& c : rep.f_prime) d.f_prime.push_back(complex_number::of(c));
    for (const auto& r : rep.roots) {
        root_doc rd;
        rd.approx = complex_number::of(r.approx);
        if (scalar_traits<S>::exact && r.value) rd.exact = complex_number::of(*r.value);
        rd.multiplicity = r.multiplicity;
        rd.simple = r.simple;
        rd.note = r.note;
        d.roots.push_back(std::move(rd));
    }
    d.tau_root = rep.tau_root;
    d.tau_simple = rep.tau_simple;
    for (const auto& [z, why] : skipped) d.skipped.push_back(dirconv::detail::format_root(z) + ": " + why);
    return d;
}

inline certificate_doc make_certificate(const norm_certificate& c) {
    certificate_doc d;
    d.kind = c.kind == certificate_kind::uniform ? "uniform" : "sharpened";
    d.rho = c.rho;
    d.m1 = c.m1_text;
    d.m1_lower = c.m1;
    d.z0 = complex_number::of(c.z0);
    d.P = c.P;
    d.Q = c.Q;
    d.t_star = c.t_star;
    d.C = c.C;
    d.r = c.r;
    d.damping = c.damping;
    d.norm_bound = c.norm_bound();
    d.scope = scope_name(c.scope);
    d.coefficient_norms = c.coefficient_norms;
    return d;
}

template <scalar S>
norm_certificate make_cert(const problem_spec& spec, const conv_polynomial<S>& T, const S& z0, const coefficient_norms& n) {
    switch (spec.task.certificate) {
        case certificate_choice::uniform: return certify(T, z0, spec.task.rho, n);
        case certificate_choice::sharpened: return certify_sharpened(T, z0, *spec.task.r, n);
        case certificate_choice::lowest: {
            double hi = spec.task.r.value_or(0);
            std::optional<norm_certificate> uniform;
            if (hi <= spec.task.rho) {
                uniform = certify(T, z0, spec.task.rho, n);
                hi = uniform->r;
            }
            try {
                return lowest_sharpened(T, z0, spec.task.rho, hi, n, 1e-6);
            } catch (const error& e) {
                if (!uniform || e.code() != errc::no_positive_r) throw;
                return *uniform;
            }
        }
    }
    throw error(errc::invalid_argument, "unknown certificate choice");
}

inline diagnostic_doc diagnose(const error& e) { return {errc_name(e.code()), e.message(), {}}; }

template <scalar S>
point to_point(const std::vector<exact_complex>& s) {
    point p;
    for (const auto& v : s) p.push_back(v.to_complex());
    return p;
}

template <scalar S>
int execute(const problem_spec& spec, const run_options& opt, result_document& doc) {
    using A = arithmetic_function<S>;
    const double tol = opt.tolerance.value_or(spec.tolerance);
    const solver_options sopt{tol, opt.threads};

    auto w = build_window(spec.semigroup);
    doc.semigroup = w->group().describe();
    doc.window_size = w->size();
    doc.size_bound = size_text(*w);

    std::vector<A> coeffs;
    for (const auto& f : spec.coefficients) coeffs.push_back(build_function<S>(w, f));

    if (spec.task.kind == task_kind::invert) {
        auto g = invert(coeffs[0], tol, opt.threads);
        doc.solutions.push_back(make_table("inverse", g));
        doc.residuals.push_back(make_residual("f * g - u", convolve(coeffs[0], g, opt.threads) - A::unit(w)));
        return 0;
    }

    if (!coeffs.back().is_nonzero(tol)) throw spec_error("/equation/coefficients", "leading coefficient a_d is zero");
    conv_polynomial<S> T(coeffs, tol);

    std::vector<solution<S>> sols;
    if (spec.task.root) {
        S z0 = lift<S>(*spec.task.root);
        try {
            auto rep = initial_polynomial(T, tol);
            doc.roots = make_roots(rep, {});
        } catch (const error&) {
        }
        sols.push_back({z0, solve(T, z0, sopt)});
    } else {
        auto all = solve_all(T, sopt);
        doc.roots = make_roots(all.report, all.skipped);
        sols = std::move(all.solutions);
    }
    for (std::size_t k = 0; k < sols.size(); ++k) {
        const std::string label = "g" + std::to_string(k + 1);
        doc.solutions.push_back(make_table(label, sols[k].g));
        doc.residuals.push_back(make_residual("T " + label, residual(T, sols[k].g, opt.threads)));
    }
    if (spec.task.kind == task_kind::solve || spec.task.kind == task_kind::solve_all) return 0;

    const auto n = choose_norms(spec, T);
    std::vector<std::optional<norm_certificate>> certs;
    std::optional<error> cert_error;
    for (const auto& s : sols) {
        try {
            auto c = make_cert(spec, T, s.root, n);
            auto d = make_certificate(c);
            auto v = validate(c, s.g);
            d.validation = validation_doc{v.bound_margin, v.recursive_margin, v.levels_checked};
            doc.certificates.push_back(std::move(d));
            certs.push_back(c);
        } catch (const error& e) {
            if (!is_refusal(e.code())) throw;
            if (spec.task.kind != task_kind::eval) throw;
            cert_error = e;
            certs.push_back(std::nullopt);
        }
    }

    if (spec.task.kind == task_kind::eval) {
        for (std::size_t k = 0; k < sols.size(); ++k) {
            for (const auto& s : spec.task.points) {
                const point p = to_point<S>(s);
                auto v = evaluate_series(sols[k].g, p);
                series_doc sd;
                sd.label = "g" + std::to_string(k + 1);
                for (const auto& z : p) sd.s.push_back(complex_number::of(z));
                sd.value = complex_number::of(v.value);
                sd.size_bound = v.size_bound;
                if (!certs[k]) {
                    sd.note = cert_error ? std::string("no certificate: ") + cert_error->what() : "no certificate";
                } else if (min_real_part(p) < certs[k]->r) {
                    sd.note = "Re s below the certified r; tail bound unavailable";
                } else if (certs[k]->scope == norm_scope::window_truncated) {
                    sd.note = "window-truncated norms; tail bound unavailable";
                } else {
                    sd.tail_bound = tail_bound(sols[k].g, *certs[k], p);
                }
                doc.series.push_back(std::move(sd));
            }
        }
    }

    if (spec.task.kind == task_kind::verify) {
        std::vector<point> pts;
        for (const auto& s : spec.task.points) pts.push_back(to_point<S>(s));
        bool all_ok = true;
        for (std::size_t k = 0; k < sols.size(); ++k) {
            auto rep = verify_scalar_equation(T, sols[k].g, *certs[k], n, pts);
            for (const auto& c : rep.points) {
                check_doc cd;
                cd.label = "g" + std::to_string(k + 1);
                for (const auto& z : c.s) cd.s.push_back(complex_number::of(z));
                cd.residual = c.residual;
                cd.bound = c.bound;
                cd.ok = c.ok;
                doc.checks.push_back(std::move(cd));
            }
            all_ok = all_ok && rep.ok;
        }
        if (!all_ok) {
            doc.status = "failed";
            doc.diagnostic = diagnostic_doc{"VerificationFailed", "the scalar equation exceeded its propagated bound", {}};
            return 2;
        }
    }
    return 0;
}

template <scalar S>
void attach_obstructions(const no_simple_roots_error<S>& e, diagnostic_doc& d) {
    for (const auto& o : e.obstructions()) d.obstructions.push_back({o.q, complex_number::of(o.root), complex_number::of(o.value)});
}

template <scalar S>
run_result run_mode(const problem_spec& spec, const run_options& opt) {
    run_result out;
    out.doc.spec_hash = spec.hash;
    out.doc.task = task_name(spec.task.kind);
    out.doc.mode = scalar_traits<S>::name;
    const auto start = std::chrono::steady_clock::now();
    try {
        out.exit_code = execute<S>(spec, opt, out.doc);
    } catch (const no_simple_roots_error<S>& e) {
        out.doc.status = "refused";
        out.doc.diagnostic = diagnose(e);
        attach_obstructions(e, *out.doc.diagnostic);
        out.doc.roots = make_roots(e.report(), {});
        out.exit_code = 2;
    } catch (const spec_error&) {
        throw;
    } catch (const error& e) {
        if (!is_refusal(e.code())) throw spec_error("/", e.what());
        out.doc.status = "refused";
        out.doc.diagnostic = diagnose(e);
        out.exit_code = 2;
    }
    out.doc.timing_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return out;
}

}  // namespace detail

/// Runs a parsed specification. Throws spec_error for input problems; returns
/// exit code 2 with a diagnostic for mathematical refusals.
inline run_result run(const problem_spec& spec, const run_options& opt = {}) {
    return spec.exact ? detail::run_mode<exact_complex>(spec, opt) : detail::run_mode<approx_complex>(spec, opt);
}

}  // namespace dirconv::cli
