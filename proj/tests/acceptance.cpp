// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "dirconv/dirconv.hpp"
#include "oracles.hpp"

using namespace dirconv;
using F = arithmetic_function<exact_complex>;
using A = arithmetic_function<approx_complex>;
using P = conv_polynomial<exact_complex>;

namespace {

struct outcome {
    bool pass = false;
    std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

window_ptr od(std::int64_t n) { return window::make(semigroup::ordinary_dirichlet(1), truncation::by_index(n)); }

// Every solved instance reports here for criterion 6.
struct residual_log {
    std::size_t exact_checked = 0, exact_failed = 0;
    std::size_t double_checked = 0, double_failed = 0;
    double worst_ratio = 0;

    void exact(const P& T, const F& g) {
        ++exact_checked;
        if (residual(T, g).is_nonzero()) ++exact_failed;
    }

    void approx(const conv_polynomial<approx_complex>& T, const A& g) {
        ++double_checked;
        const double gmax = std::max(1.0, g.max_abs());
        double scale = 0;
        for (unsigned j = 0; j <= T.degree(); ++j) scale = std::max(scale, T.coefficient(j).max_abs() * std::pow(gmax, j));
        const double r = residual(T, g).max_abs();
        const double ratio = r / (1e-10 * std::max(1.0, scale));
        worst_ratio = std::max(worst_ratio, ratio);
        if (ratio > 1) ++double_failed;
    }
};

residual_log residuals;

P zeta_half_equation(const window_ptr& w) { return P({-F::one(w), F::zero(w), F::unit(w)}); }

outcome moebius() {
    const std::int64_t n = 10000;
    auto t0 = std::chrono::steady_clock::now();
    auto mu = invert(F::one(od(n)));
    const double secs = seconds_since(t0);
    auto sieve = oracle::mobius(n);
    std::size_t bad = 0;
    for (std::int64_t k = 1; k <= n; ++k)
        if (mu[static_cast<std::size_t>(k - 1)] != exact_complex(sieve[static_cast<std::size_t>(k)])) ++bad;
    return {bad == 0 && secs < 10.0, std::to_string(bad) + " mismatches over n <= 10^4, " + fmt("%.3f s", secs)};
}

outcome zeta_half() {
    const std::size_t n = 1000;
    auto w = od(static_cast<std::int64_t>(n));
    auto T = zeta_half_equation(w);
    auto g = solve(T, exact_complex(1));
    residuals.exact(T, g);
    auto spf = oracle::smallest_factor(n);
    auto at = [&](std::size_t k) { return g[k - 1]; };
    std::size_t primes = 0, squares = 0, pairs = 0, bad = 0;
    for (std::size_t p = 2; p <= n; ++p) {
        if (spf[p] != p) continue;
        ++primes;
        if (at(p) != exact_complex(rational(1, 2))) ++bad;
        if (p * p <= n) {
            ++squares;
            if (at(p * p) != exact_complex(rational(3, 8))) ++bad;
        }
    }
    for (std::size_t a = 2; a <= n; ++a)
        for (std::size_t b = 2; a * b <= n; ++b)
            if (std::gcd(a, b) == 1) {
                ++pairs;
                if (at(a * b) != at(a) * at(b)) ++bad;
            }
    return {bad == 0, std::to_string(primes) + " primes, " + std::to_string(squares) + " prime squares, " +
                          std::to_string(pairs) + " coprime pairs, " + std::to_string(bad) + " failures"};
}

outcome binomial_series() {
    auto w = window::make(semigroup::lattice(1), truncation::by_size(rational(50)));
    F a0(w);
    a0[0] = exact_complex(-1);
    a0[1] = exact_complex(-1);
    P T({a0, F::zero(w), F::unit(w)});
    auto g = solve(T, exact_complex(1));
    residuals.exact(T, g);
    std::size_t bad = 0;
    for (unsigned k = 0; k <= 50; ++k)
        if (g[k] != exact_complex(oracle::binomial(rational(1, 2), k))) ++bad;

    conv_polynomial<approx_complex> Td({to_approx(a0), A::zero(w), A::unit(w)});
    auto gd = solve(Td, approx_complex{1, 0});
    residuals.approx(Td, gd);
    double err = 0;
    for (unsigned k = 0; k <= 50; ++k) err = std::max(err, std::abs(gd[k] - oracle::binomial(rational(1, 2), k).get_d()));
    return {bad == 0 && err <= 1e-12, std::to_string(bad) + " exact mismatches, double max error " + fmt("%.2e", err)};
}

outcome unsolvability() {
    std::vector<window_ptr> windows{
        window::make(semigroup::lattice(2), truncation::by_size(rational(5))),
        od(200),
        window::make(semigroup::rational_generators({{rational(2)}, {rational(3)}}), truncation::by_size(rational(20)))};
    std::size_t ok = 0;
    std::string names;
    for (const auto& w : windows) {
        oracle::rng R(w->size());
        F a = R.function(w);
        a[0] = exact_complex(0);
        exact_complex aq(rational(7, 3), rational(-1));
        a[1] = aq;
        try {
            solve_all(P({-a, F::zero(w), F::unit(w)}));
        } catch (const no_simple_roots_error<exact_complex>& e) {
            if (e.unsolvable() && e.obstructions().size() == 1 && e.obstructions()[0].value == -aq &&
                e.obstructions()[0].q == (*w)[1].id)
                ++ok;
        }
        names += (names.empty() ? "" : ", ") + w->group().describe();
    }
    return {ok == windows.size(), std::to_string(ok) + "/3 refused with obstruction -a(q) (" + names + ")"};
}

outcome factorization() {
    oracle::rng R(5);
    std::size_t held = 0, total = 25;
    for (std::size_t i = 0; i < total; ++i) {
        window_ptr w;
        switch (i % 3) {
            case 0: w = od(120); break;
            case 1: w = window::make(semigroup::lattice(2), truncation::by_size(rational(5))); break;
            default: w = window::make(semigroup::rational_generators({{rational(1, 2)}, {rational(2, 3)}}), truncation::by_size(rational(5)));
        }
        const unsigned d = 2 + (i % 2);
        auto T = oracle::random_instance(R, w, oracle::distinct_roots(R, d));
        auto res = solve_all(T);
        std::vector<F> gs;
        for (const auto& s : res.solutions) {
            residuals.exact(T, s.g);
            gs.push_back(s.g);
        }
        if (gs.size() == d && factorization_check(T, gs).holds) ++held;
    }
    return {held == total, std::to_string(held) + "/" + std::to_string(total) + " random instances factor exactly"};
}

outcome certificates() {
    oracle::rng R(77);
    std::size_t certified = 0, violations = 0, refused = 0, attempts = 0;
    while (certified < 25 && attempts < 200) {
        ++attempts;
        window_ptr w;
        switch (attempts % 4) {
            case 0: w = od(300); break;
            case 1: w = window::make(semigroup::lattice(1), truncation::by_size(rational(40))); break;
            case 2: w = window::make(semigroup::lattice(2), truncation::by_size(rational(7))); break;
            default: w = window::make(semigroup::rational_generators({{rational(1, 2), rational(0)}, {rational(1, 3), rational(1, 3)}}), truncation::by_size(rational(4)));
        }
        const unsigned d = 1 + attempts % 3;
        auto T = oracle::random_instance(R, w, oracle::distinct_roots(R, d), 0.3);
        auto res = solve_all(T);
        for (const auto& s : res.solutions) {
            residuals.exact(T, s.g);
            try {
                auto c = certify(T, s.root, (attempts % 2) ? 0.5 : 0.0, window_norms(T, true));
                ++certified;
                try {
                    validate(c, s.g);
                } catch (const error&) {
                    ++violations;
                }
            } catch (const error& e) {
                if (e.code() != errc::no_positive_r) throw;
                ++refused;
            }
            if (certified >= 25) break;
        }
    }
    return {certified >= 25 && violations == 0, std::to_string(certified) + " certified instances, " + std::to_string(violations) +
                                                     " violations, " + std::to_string(refused) + " NoPositiveR refusals"};
}

outcome half_plane() {
    auto w = od(1000);
    auto T = zeta_half_equation(w);
    auto g = solve(T, exact_complex(1));
    coefficient_norms n;
    n.scope = norm_scope::user_bound;
    n.bounds = {[](double r) { return norms::zeta_upper(r); }, [](double) { return 0.0; }, [](double) { return 1.0; }};
    auto c = certify_sharpened(T, exact_complex(1), 2.0, n);
    validate(c, g);
    auto rep = verify_scalar_equation(T, g, c, n, {{{2, 0}}, {{3, 0}}, {{5, 0}}, {{2, 10}}});
    std::string detail = "sharpened certificate r = 2, t* = " + fmt("%.4f", c.t_star) + "; E/eps per point:";
    for (const auto& p : rep.points) detail += fmt(" %.2e", p.residual / p.bound);
    auto uniform = certify(T, exact_complex(1), 2.0, n);
    detail += "; uniform certificate alone reaches r = " + fmt("%.3f", uniform.r);
    return {rep.ok, detail};
}

outcome algebra_laws() {
    oracle::rng R(9);
    std::size_t cases = 0, bad = 0;
    std::vector<window_ptr> ws{od(64), window::make(semigroup::lattice(1), truncation::by_size(rational(16))),
                               window::make(semigroup::lattice(2), truncation::by_size(rational(5))),
                               window::make(semigroup::rational_generators({{rational(2)}, {rational(3)}}), truncation::by_size(rational(18)))};
    for (int i = 0; i < 50; ++i) {
        for (const auto& w : ws) {
            auto f = R.function(w), g = R.function(w), h = R.function(w);
            ++cases;
            bool ok = convolve(g, h) == convolve(h, g) && convolve(convolve(g, h), f) == convolve(g, convolve(h, f)) &&
                      convolve(g, h + f) == convolve(g, h) + convolve(g, f) && convolve(F::unit(w), g) == g;
            g[0] = exact_complex(R.integer(1, 5), R.integer(-2, 2));
            auto gi = invert(g);
            ok = ok && convolve(g, gi) == F::unit(w) && invert(gi) == g;
            if (!ok) ++bad;
        }
    }
    return {cases >= 200 && bad == 0, std::to_string(cases) + " random cases, " + std::to_string(bad) + " failures"};
}

outcome determinism() {
    auto w = od(10000);
    oracle::rng R(10);
    std::vector<A> c;
    for (int j = 0; j <= 3; ++j) {
        A a(w);
        for (std::size_t i = 0; i < a.size(); ++i) a[i] = {R.real(-1, 1), R.real(-1, 1)};
        c.push_back(a);
    }
    // f(z) = z^3 - 2z^2 - z + 2 = (z - 1)(z + 1)(z - 2)
    c[3][0] = 1.0;
    c[2][0] = -2.0;
    c[1][0] = -1.0;
    c[0][0] = 2.0;
    conv_polynomial<approx_complex> T(c);
    auto t0 = std::chrono::steady_clock::now();
    auto g1 = solve(T, approx_complex{2, 0}, {default_tolerance, 1});
    const double secs = seconds_since(t0);
    auto g4 = solve(T, approx_complex{2, 0}, {default_tolerance, 4});
    auto g8 = solve(T, approx_complex{2, 0}, {default_tolerance, 8});
    residuals.approx(T, g1);
    const bool same = g1.values() == g4.values() && g1.values() == g8.values();
    return {same && secs < 60.0, std::to_string(g1.size()) + " entries, " + fmt("max |g| %.3g, ", g1.max_abs()) +
                                     fmt("single-thread solve %.3f s, ", secs) + (same ? "bit-identical" : "DIFFERENT") +
                                     " for 1/4/8 threads"};
}

outcome residual_exactness() {
    return {residuals.exact_failed == 0 && residuals.double_failed == 0 && residuals.exact_checked > 0,
            std::to_string(residuals.exact_failed) + " non-zero exact residuals among " +
                std::to_string(residuals.exact_checked) + " exact solutions, " + std::to_string(residuals.double_checked) +
                " double solutions, worst residual / (1e-10 scale) = " + fmt("%.2e", residuals.worst_ratio)};
}

}  // namespace

int main() {
    struct criterion {
        int id;
        const char* name;
        std::function<outcome()> run;
    };
    // criterion 6 collects residuals from the others, so it runs last
    std::vector<criterion> order{{1, "Moebius oracle", moebius},
                                 {2, "zeta^(1/2) oracle", zeta_half},
                                 {3, "binomial series", binomial_series},
                                 {4, "unsolvability obstruction", unsolvability},
                                 {5, "factorization", factorization},
                                 {7, "certificate soundness", certificates},
                                 {8, "half-plane verification", half_plane},
                                 {9, "algebra laws", algebra_laws},
                                 {10, "determinism and performance", determinism},
                                 {6, "residual exactness", residual_exactness}};
    std::vector<std::pair<int, std::string>> lines;
    bool all = true;
    for (const auto& c : order) {
        outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        all = all && o.pass;
        lines.emplace_back(c.id, std::string(o.pass ? "PASS" : "FAIL") + "  criterion " + std::to_string(c.id) + " (" + c.name +
                                     "): " + o.detail);
    }
    std::sort(lines.begin(), lines.end());
    for (const auto& [id, text] : lines) std::printf("%s\n", text.c_str());
    return all ? 0 : 1;
}
