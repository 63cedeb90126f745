#pragma once

// Discrete additive semigroups X in [0,inf)^k and their size-ordered windows.
//
// Every element carries an exact integer identity:
//   lattice              the coordinates themselves
//   ordinary Dirichlet   the index tuple (n_1,...,n_k); coordinates are log n_i
//   rational generators  coordinates multiplied by the common denominator D
// Sizes are compared through an integer key that is monotone in |x|:
// the coordinate sum for lattice and generator backends (|x| = key / D) and the
// product n_1*...*n_k for ordinary Dirichlet (|x| = log key). The key is
// additive (resp. multiplicative) under the semigroup operation.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <numeric>
#include <optional>
#include <queue>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "dirconv/errors.hpp"
#include "dirconv/exact_complex.hpp"
#include "dirconv/rounding.hpp"

namespace dirconv {

enum class backend_kind { lattice, ordinary_dirichlet, rational_generators };

inline const char* backend_name(backend_kind k) {
    switch (k) {
        case backend_kind::lattice: return "lattice";
        case backend_kind::ordinary_dirichlet: return "ordinary-dirichlet";
        case backend_kind::rational_generators: return "rational-generators";
    }
    return "?";
}

using element_id = std::vector<std::int64_t>;

struct element_id_hash {
    std::size_t operator()(const element_id& id) const noexcept {
        std::size_t h = 0xcbf29ce484222325ull;
        for (auto v : id) {
            h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        }
        return h;
    }
};

/// Exact size |x| of an element.
class element_size {
public:
    element_size() = default;
    element_size(backend_kind kind, std::int64_t key, std::int64_t scale)
        : kind_(kind), key_(key), scale_(scale) {}

    std::int64_t key() const { return key_; }
    bool is_log() const { return kind_ == backend_kind::ordinary_dirichlet; }

    /// Exact value for lattice and generator backends.
    rational exact() const {
        if (is_log()) throw error(errc::invalid_argument, "size of an ordinary-Dirichlet element is log-valued");
        rational q(key_, scale_);
        q.canonicalize();
        return q;
    }

    double approx() const { return is_log() ? std::log(static_cast<double>(key_)) : static_cast<double>(key_) / scale_; }

    double lower() const {
        if (is_log()) return key_ <= 1 ? 0.0 : std::max(0.0, rounding::log_down(static_cast<double>(key_)));
        return std::max(0.0, rounding::rational_down(exact()));
    }
    double upper() const {
        if (is_log()) return key_ <= 1 ? 0.0 : rounding::log_up(static_cast<double>(key_));
        return rounding::rational_up(exact());
    }

    std::string to_string() const {
        if (is_log()) return key_ == 1 ? "0" : "log " + std::to_string(key_);
        return dirconv::to_string(exact());
    }

    friend bool operator==(const element_size& a, const element_size& b) { return a.key_ == b.key_; }
    friend auto operator<=>(const element_size& a, const element_size& b) { return a.key_ <=> b.key_; }

private:
    backend_kind kind_ = backend_kind::lattice;
    std::int64_t key_ = 0;
    std::int64_t scale_ = 1;
};

/// How far to enumerate.
struct truncation {
    /// Bound on |x| for lattice and generator backends; for ordinary Dirichlet a
    /// log-size bound, converted to index_bound = floor(exp(B)).
    std::optional<rational> size_bound;
    /// Ordinary Dirichlet only: keep n_1*...*n_k <= index_bound.
    std::optional<std::int64_t> index_bound;
    /// Keep only the first max_elements elements in size/lex order.
    std::optional<std::size_t> max_elements;

    static truncation by_size(rational b) { return {std::move(b), std::nullopt, std::nullopt}; }
    static truncation by_index(std::int64_t n) { return {std::nullopt, n, std::nullopt}; }
    static truncation by_count(std::size_t n) { return {std::nullopt, std::nullopt, n}; }
};

/// The semigroup X itself (without truncation).
class semigroup {
public:
    static semigroup lattice(std::size_t k) {
        if (k == 0) throw error(errc::invalid_argument, "lattice dimension must be >= 1");
        semigroup g;
        g.kind_ = backend_kind::lattice;
        g.dim_ = k;
        return g;
    }

    static semigroup ordinary_dirichlet(std::size_t k) {
        if (k == 0) throw error(errc::invalid_argument, "ordinary-Dirichlet dimension must be >= 1");
        semigroup g;
        g.kind_ = backend_kind::ordinary_dirichlet;
        g.dim_ = k;
        return g;
    }

    /// Additive semigroup generated by the given non-negative rational vectors.
    static semigroup rational_generators(const std::vector<std::vector<rational>>& gens) {
        if (gens.empty()) throw error(errc::invalid_argument, "at least one generator is required");
        semigroup g;
        g.kind_ = backend_kind::rational_generators;
        g.dim_ = gens.front().size();
        if (g.dim_ == 0) throw error(errc::invalid_argument, "generators must have dimension >= 1");
        mpz_class lcm = 1;
        for (const auto& v : gens) {
            if (v.size() != g.dim_) throw error(errc::invalid_argument, "generators must share one dimension");
            bool positive = false;
            for (const auto& c : v) {
                if (sgn(c) < 0) throw error(errc::invalid_argument, "generator coordinates must be non-negative");
                if (sgn(c) > 0) positive = true;
                mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den_mpz_t());
            }
            if (!positive) throw error(errc::invalid_argument, "zero generator");
        }
        if (!lcm.fits_slong_p()) throw error(errc::invalid_argument, "generator denominators too large");
        g.scale_ = lcm.get_si();
        std::set<element_id> seen;
        for (const auto& v : gens) {
            element_id id;
            for (const auto& c : v) {
                rational s = c * g.scale_;
                if (!s.get_num().fits_slong_p()) throw error(errc::invalid_argument, "generator too large");
                id.push_back(s.get_num().get_si());
            }
            if (seen.insert(id).second) {
                g.generators_.push_back(id);
                g.rational_generators_.push_back(v);
            }
        }
        return g;
    }

    backend_kind kind() const { return kind_; }
    std::size_t dim() const { return dim_; }
    std::int64_t scale() const { return scale_; }
    const std::vector<std::vector<rational>>& generators() const { return rational_generators_; }

    element_id zero() const {
        return element_id(dim_, kind_ == backend_kind::ordinary_dirichlet ? 1 : 0);
    }

    std::int64_t key(const element_id& id) const {
        if (kind_ == backend_kind::ordinary_dirichlet) {
            std::int64_t p = 1;
            for (auto v : id) p = checked_mul(p, v);
            return p;
        }
        return std::accumulate(id.begin(), id.end(), std::int64_t{0});
    }

    element_size size_of(std::int64_t key) const { return {kind_, key, scale_}; }

    /// The key of x+y given the keys of x and y.
    std::int64_t combine_keys(std::int64_t a, std::int64_t b) const {
        return kind_ == backend_kind::ordinary_dirichlet ? checked_mul(a, b) : a + b;
    }

    element_id add(const element_id& a, const element_id& b) const {
        element_id r(dim_);
        for (std::size_t i = 0; i < dim_; ++i) r[i] = kind_ == backend_kind::ordinary_dirichlet ? a[i] * b[i] : a[i] + b[i];
        return r;
    }

    /// x - y when it lies in the ambient lattice of identities (membership in X is checked by the window).
    std::optional<element_id> subtract(const element_id& x, const element_id& y) const {
        element_id r(dim_);
        for (std::size_t i = 0; i < dim_; ++i) {
            if (kind_ == backend_kind::ordinary_dirichlet) {
                if (y[i] == 0 || x[i] % y[i] != 0) return std::nullopt;
                r[i] = x[i] / y[i];
            } else {
                if (x[i] < y[i]) return std::nullopt;
                r[i] = x[i] - y[i];
            }
        }
        return r;
    }

    /// Exact rational coordinates (lattice and generator backends).
    std::vector<rational> coords(const element_id& id) const {
        if (kind_ == backend_kind::ordinary_dirichlet)
            throw error(errc::invalid_argument, "ordinary-Dirichlet coordinates are log-valued");
        std::vector<rational> c;
        c.reserve(id.size());
        for (auto v : id) {
            rational q(v, scale_);
            q.canonicalize();
            c.push_back(q);
        }
        return c;
    }

    /// Coordinates as doubles (log n_i for ordinary Dirichlet).
    std::vector<double> coords_approx(const element_id& id) const {
        std::vector<double> c;
        for (auto v : id) {
            c.push_back(kind_ == backend_kind::ordinary_dirichlet ? std::log(static_cast<double>(v))
                                                                   : static_cast<double>(v) / scale_);
        }
        return c;
    }

    /// Identity of the element with the given exact coordinates; nullopt if the
    /// coordinates are off the identity lattice.
    std::optional<element_id> id_from_coords(const std::vector<rational>& c) const {
        if (kind_ == backend_kind::ordinary_dirichlet || c.size() != dim_) return std::nullopt;
        element_id id;
        for (const auto& v : c) {
            rational s = v * scale_;
            if (s.get_den() != 1 || sgn(s) < 0 || !s.get_num().fits_slong_p()) return std::nullopt;
            id.push_back(s.get_num().get_si());
        }
        return id;
    }

    std::string describe() const {
        std::string s = backend_name(kind_);
        s += "(" + std::to_string(dim_) + ")";
        if (kind_ == backend_kind::rational_generators) {
            s += "{";
            for (std::size_t i = 0; i < rational_generators_.size(); ++i) {
                if (i) s += ";";
                for (std::size_t j = 0; j < dim_; ++j) s += (j ? "," : "") + to_string(rational_generators_[i][j]);
            }
            s += "}";
        }
        return s;
    }

    friend bool operator==(const semigroup& a, const semigroup& b) {
        return a.kind_ == b.kind_ && a.dim_ == b.dim_ && a.scale_ == b.scale_ && a.generators_ == b.generators_;
    }

    /// Integer generators (scaled by D) for the rational-generator backend.
    const std::vector<element_id>& integer_generators() const { return generators_; }

    static std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
        std::int64_t r;
        if (__builtin_mul_overflow(a, b, &r)) return std::numeric_limits<std::int64_t>::max();
        return r;
    }

private:
    semigroup() = default;

    backend_kind kind_ = backend_kind::lattice;
    std::size_t dim_ = 1;
    std::int64_t scale_ = 1;
    std::vector<element_id> generators_;
    std::vector<std::vector<rational>> rational_generators_;
};

struct element {
    element_id id;
    std::int64_t key;
};

/// Ordered pair of window indices (x', x'') with x' + x'' = x.
struct decomposition {
    std::uint32_t left;
    std::uint32_t right;
};

/// All elements of X up to a truncation, sorted by (size, lexicographic identity),
/// with precomputed additive decompositions. Immutable once built.
class window {
public:
    static std::shared_ptr<const window> make(const semigroup& group, const truncation& trunc) {
        return std::shared_ptr<const window>(new window(group, trunc));
    }

    const semigroup& group() const { return group_; }
    std::size_t size() const { return elements_.size(); }
    const element& operator[](std::size_t i) const { return elements_[i]; }
    const std::vector<element>& elements() const { return elements_; }

    element_size size_of(std::size_t i) const { return group_.size_of(elements_[i].key); }

    /// Largest key for which every element of X of that key or smaller is present.
    std::int64_t complete_key() const { return complete_key_; }

    /// Largest key present.
    std::int64_t max_key() const { return elements_.back().key; }

    std::optional<std::size_t> find(const element_id& id) const {
        auto it = index_.find(id);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    /// Index of an element; NotEnumerated when it lies beyond the complete part of the window.
    std::size_t index_of(const element_id& id) const {
        if (id.size() != group_.dim()) throw error(errc::invalid_argument, "element has the wrong dimension");
        if (auto i = find(id)) return *i;
        std::int64_t k = group_.key(id);
        if (k > complete_key_) throw error(errc::not_enumerated, "element lies beyond the enumerated window");
        throw error(errc::invalid_argument, "identity is not an element of the semigroup");
    }

    std::span<const decomposition> decompositions(std::size_t i) const {
        return {pairs_.data() + offsets_[i], pairs_.data() + offsets_[i + 1]};
    }

    /// Decompositions looked up by identity.
    std::vector<std::pair<element_id, element_id>> decompositions_of(const element_id& id) const {
        std::size_t i = index_of(id);
        std::vector<std::pair<element_id, element_id>> out;
        for (auto d : decompositions(i)) out.emplace_back(elements_[d.left].id, elements_[d.right].id);
        return out;
    }

    /// Start indices of the size levels, plus size() as a sentinel.
    const std::vector<std::size_t>& level_starts() const { return levels_; }
    std::size_t level_count() const { return levels_.size() - 1; }

    /// m_1 = min{|x| : x != 0}.
    element_size min_positive_size() const {
        if (elements_.size() < 2) throw error(errc::only_zero, "window contains no non-zero element");
        return size_of(1);
    }

    std::size_t total_decompositions() const { return pairs_.size(); }

    std::string describe() const {
        return group_.describe() + " up to " + size_of(size() - 1).to_string() + " (" + std::to_string(size()) +
               " elements)";
    }

private:
    window(const semigroup& group, const truncation& trunc) : group_(group) {
        enumerate(trunc);
        levels_.push_back(0);
        for (std::size_t i = 1; i < elements_.size(); ++i) {
            if (elements_[i].key != elements_[i - 1].key) levels_.push_back(i);
        }
        levels_.push_back(elements_.size());
        index_.reserve(elements_.size() * 2);
        for (std::size_t i = 0; i < elements_.size(); ++i) index_.emplace(elements_[i].id, i);
        build_decompositions();
    }

    static bool order_less(const element& a, const element& b) {
        if (a.key != b.key) return a.key < b.key;
        return a.id < b.id;
    }

    std::int64_t key_bound_from(const truncation& t) const {
        if (group_.kind() == backend_kind::ordinary_dirichlet) {
            if (t.index_bound) {
                if (*t.index_bound < 1) throw error(errc::empty_truncation, "index bound must be >= 1");
                return *t.index_bound;
            }
            if (t.size_bound) {
                if (sgn(*t.size_bound) < 0) throw error(errc::empty_truncation, "size bound is negative");
                double e = std::exp(t.size_bound->get_d());
                if (e > 9e15) throw error(errc::invalid_argument, "size bound too large");
                return static_cast<std::int64_t>(std::floor(e));
            }
        } else if (t.size_bound) {
            if (sgn(*t.size_bound) < 0) throw error(errc::empty_truncation, "size bound is negative");
            rational s = *t.size_bound * group_.scale();
            mpz_class f;
            mpz_fdiv_q(f.get_mpz_t(), s.get_num_mpz_t(), s.get_den_mpz_t());
            if (!f.fits_slong_p()) throw error(errc::invalid_argument, "size bound too large");
            return f.get_si();
        } else if (t.index_bound) {
            throw error(errc::invalid_argument, "index_bound applies to the ordinary-Dirichlet backend only");
        }
        return -1;
    }

    void enumerate(const truncation& t) {
        std::int64_t bound = key_bound_from(t);
        if (bound < 0 && !t.max_elements) throw error(errc::empty_truncation, "no truncation given");
        if (t.max_elements && *t.max_elements == 0) throw error(errc::empty_truncation, "max_elements is zero");

        if (bound >= 0) {
            elements_ = enumerate_up_to(bound);
            complete_key_ = bound;
        }
        if (t.max_elements) {
            std::size_t cap = *t.max_elements;
            if (bound < 0) {
                // grow the bound until the window holds enough elements
                std::int64_t b = group_.kind() == backend_kind::rational_generators ? min_generator_key() : 2;
                while (true) {
                    elements_ = enumerate_up_to(b);
                    complete_key_ = b;
                    if (elements_.size() >= cap) break;
                    if (b > (std::int64_t{1} << 40)) throw error(errc::invalid_argument, "max_elements too large");
                    b *= 2;
                }
            }
            if (elements_.size() > cap) {
                std::int64_t cut = elements_[cap].key;
                elements_.resize(cap);
                // the level of the first dropped element may be partially present
                complete_key_ = std::min(complete_key_, cut - 1);
            }
        }
    }

    std::int64_t min_generator_key() const {
        std::int64_t m = std::numeric_limits<std::int64_t>::max();
        for (const auto& g : group_.integer_generators()) m = std::min(m, group_.key(g));
        return m;
    }

    std::vector<element> enumerate_up_to(std::int64_t bound) const {
        std::vector<element> out;
        const std::size_t k = group_.dim();
        switch (group_.kind()) {
            case backend_kind::lattice: {
                element_id cur(k, 0);
                std::function<void(std::size_t, std::int64_t)> rec = [&](std::size_t pos, std::int64_t left) {
                    if (pos == k) {
                        out.push_back({cur, bound - left});
                        return;
                    }
                    for (std::int64_t v = 0; v <= left; ++v) {
                        cur[pos] = v;
                        rec(pos + 1, left - v);
                    }
                };
                rec(0, bound);
                break;
            }
            case backend_kind::ordinary_dirichlet: {
                element_id cur(k, 1);
                std::function<void(std::size_t, std::int64_t)> rec = [&](std::size_t pos, std::int64_t prod) {
                    if (pos == k) {
                        out.push_back({cur, prod});
                        return;
                    }
                    for (std::int64_t v = 1; prod * v <= bound; ++v) {
                        cur[pos] = v;
                        rec(pos + 1, prod * v);
                    }
                };
                rec(0, 1);
                break;
            }
            case backend_kind::rational_generators: {
                // best-first expansion, one generator at a time, merged on exact identity
                auto cmp = [](const element& a, const element& b) { return order_less(b, a); };
                std::priority_queue<element, std::vector<element>, decltype(cmp)> frontier(cmp);
                std::unordered_map<element_id, bool, element_id_hash> visited;
                element zero{group_.zero(), 0};
                frontier.push(zero);
                visited.emplace(zero.id, true);
                std::int64_t last_key = -1;
                std::size_t same_level = 0;
                while (!frontier.empty()) {
                    element e = frontier.top();
                    frontier.pop();
                    if (e.key == last_key) {
                        ++same_level;
                    } else {
                        last_key = e.key;
                        same_level = 1;
                    }
                    if (same_level > (std::size_t{1} << 24)) throw error(errc::invalid_argument, "size level is not finite");
                    out.push_back(e);
                    for (const auto& g : group_.integer_generators()) {
                        element_id n = group_.add(e.id, g);
                        std::int64_t nk = e.key + group_.key(g);
                        if (nk > bound) continue;
                        if (visited.emplace(n, true).second) frontier.push({std::move(n), nk});
                    }
                }
                break;
            }
        }
        std::sort(out.begin(), out.end(), order_less);
        return out;
    }

    void build_decompositions() {
        const std::size_t n = elements_.size();
        std::vector<std::vector<decomposition>> lists(n);
        const std::int64_t top = max_key();
        const bool od1 = group_.kind() == backend_kind::ordinary_dirichlet && group_.dim() == 1;
        const bool lat1 = group_.kind() == backend_kind::lattice && group_.dim() == 1;
        if (od1 || lat1) {
            // identity n (or n itself) sits at a fixed index; divisor / Cauchy pairs directly
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = 0; j < n; ++j) {
                    std::int64_t s = group_.combine_keys(elements_[i].key, elements_[j].key);
                    if (s > top) break;
                    std::size_t idx = static_cast<std::size_t>(od1 ? s - 1 : s);
                    lists[idx].push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j)});
                }
            }
        } else {
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = 0; j < n; ++j) {
                    std::int64_t s = group_.combine_keys(elements_[i].key, elements_[j].key);
                    if (s > top) break;
                    auto hit = index_.find(group_.add(elements_[i].id, elements_[j].id));
                    if (hit == index_.end()) continue;
                    lists[hit->second].push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j)});
                }
            }
        }
        offsets_.assign(n + 1, 0);
        for (std::size_t i = 0; i < n; ++i) offsets_[i + 1] = offsets_[i] + lists[i].size();
        pairs_.reserve(offsets_[n]);
        for (auto& l : lists) pairs_.insert(pairs_.end(), l.begin(), l.end());
    }

    semigroup group_;
    std::vector<element> elements_;
    std::int64_t complete_key_ = 0;
    std::vector<std::size_t> levels_;
    std::unordered_map<element_id, std::size_t, element_id_hash> index_;
    std::vector<std::size_t> offsets_;
    std::vector<decomposition> pairs_;
};

using window_ptr = std::shared_ptr<const window>;

}  // namespace dirconv
