#pragma once

// Curve configurations (weighted dual intersection graphs), effective divisors
// on them, and the intersection pairing with its Riemann-Roch numerics.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <iterator>
#include <limits>
#include <memory>
#include <optional>
#include <queue>
#include <span>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "curvelike/error.hpp"

namespace curvelike {

using Int = std::int64_t;

inline constexpr std::size_t npos = static_cast<std::size_t>(-1);

/// One curve of a configuration: its label, self-intersection and genus.
struct Curve {
    std::string label;
    Int weight = 0;
    Int genus = 0;
};

/// An intersection number between two distinct curves.
struct Intersection {
    std::string a;
    std::string b;
    Int count = 1;
};

/// The Gram data of a dual intersection graph: per-curve self-intersection and
/// genus, and a dense symmetric matrix of pairwise intersection numbers whose
/// diagonal holds the weights.
class CurveConfig {
public:
    CurveConfig() = default;

    CurveConfig(const std::vector<Curve>& curves, const std::vector<Intersection>& pairs) {
        const std::size_t n = curves.size();
        labels_.reserve(n);
        genus_.reserve(n);
        pairs_.assign(n * n, 0);
        for (std::size_t i = 0; i < n; ++i) {
            labels_.push_back(curves[i].label);
            genus_.push_back(curves[i].genus);
            pairs_[i * n + i] = curves[i].weight;
        }
        std::vector<bool> declared(n * n, false);
        for (const auto& p : pairs) {
            const auto i = index_of(p.a);
            const auto j = index_of(p.b);
            if (!i || !j) {
                throw InvalidInput("intersection references unknown curve '" + (i ? p.b : p.a) + "'");
            }
            if (*i == *j) {
                throw InvalidInput("self-intersection of '" + p.a + "' must be given as its weight");
            }
            if (declared[*i * n + *j] && pairs_[*i * n + *j] != p.count) {
                throw InvalidInput("conflicting intersection numbers for '" + p.a + "' and '" + p.b + "'");
            }
            declared[*i * n + *j] = declared[*j * n + *i] = true;
            pairs_[*i * n + *j] = pairs_[*j * n + *i] = p.count;
        }
        validate();
    }

    /// Builds a configuration from a full symmetric matrix (diagonal = weights).
    static CurveConfig from_matrix(std::vector<std::string> labels, std::vector<Int> genus,
                                   std::vector<Int> matrix) {
        CurveConfig c;
        c.labels_ = std::move(labels);
        c.genus_ = std::move(genus);
        c.pairs_ = std::move(matrix);
        if (c.genus_.size() != c.labels_.size() || c.pairs_.size() != c.labels_.size() * c.labels_.size()) {
            throw InvalidInput("configuration data has inconsistent dimensions");
        }
        c.validate();
        return c;
    }

    std::size_t size() const noexcept { return labels_.size(); }
    const std::string& label(std::size_t i) const { return labels_.at(i); }
    const std::vector<std::string>& labels() const noexcept { return labels_; }
    Int weight(std::size_t i) const { return pairs_[i * size() + i]; }
    Int genus(std::size_t i) const { return genus_.at(i); }
    Int pair(std::size_t i, std::size_t j) const { return pairs_[i * size() + j]; }

    /// K.C_i by adjunction.
    Int canonical_degree(std::size_t i) const { return 2 * genus(i) - 2 - weight(i); }

    std::optional<std::size_t> index_of(const std::string& label) const {
        const auto it = std::find(labels_.begin(), labels_.end(), label);
        if (it == labels_.end()) return std::nullopt;
        return static_cast<std::size_t>(it - labels_.begin());
    }

    std::size_t require_index(const std::string& label) const {
        if (auto i = index_of(label)) return *i;
        throw InvalidInput("unknown curve '" + label + "'");
    }

    /// Curves meeting curve i (pair > 0), ascending.
    std::vector<std::size_t> neighbors(std::size_t i) const {
        std::vector<std::size_t> out;
        for (std::size_t j = 0; j < size(); ++j) {
            if (j != i && pair(i, j) > 0) out.push_back(j);
        }
        return out;
    }

    /// Returns a label not yet used, of the form <stem><k>.
    std::string fresh_label(const std::string& stem) const {
        for (std::size_t k = 1;; ++k) {
            std::string candidate = stem + std::to_string(k);
            if (!index_of(candidate)) return candidate;
        }
    }

    bool operator==(const CurveConfig&) const = default;

private:
    void validate() const {
        const std::size_t n = size();
        std::unordered_set<std::string> seen;
        for (std::size_t i = 0; i < n; ++i) {
            if (labels_[i].empty()) throw InvalidInput("empty curve label");
            if (!seen.insert(labels_[i]).second) throw InvalidInput("duplicate curve label '" + labels_[i] + "'");
            if (genus_[i] < 0) throw InvalidInput("negative genus for curve '" + labels_[i] + "'");
            for (std::size_t j = 0; j < n; ++j) {
                if (i == j) continue;
                if (pairs_[i * n + j] != pairs_[j * n + i]) throw InvalidInput("intersection matrix is not symmetric");
                if (pairs_[i * n + j] < 0) throw InvalidInput("negative intersection number between distinct curves");
            }
        }
    }

    std::vector<std::string> labels_;
    std::vector<Int> genus_;
    std::vector<Int> pairs_;
};

using ConfigPtr = std::shared_ptr<const CurveConfig>;

inline ConfigPtr share(CurveConfig config) { return std::make_shared<const CurveConfig>(std::move(config)); }

/// A non-negative integer combination of the curves of a configuration.
class Divisor {
public:
    Divisor(ConfigPtr config, std::vector<Int> mult) : config_(std::move(config)), mult_(std::move(mult)) {
        if (!config_) throw InvalidInput("divisor without configuration");
        if (mult_.size() != config_->size()) throw InvalidInput("multiplicity vector has wrong length");
        for (Int c : mult_) {
            if (c < 0) throw InvalidInput("negative multiplicity");
        }
    }

    static Divisor zero(ConfigPtr config) {
        const std::size_t n = config->size();
        return Divisor(std::move(config), std::vector<Int>(n, 0));
    }

    static Divisor curve(ConfigPtr config, std::size_t i, Int multiplicity = 1) {
        Divisor d = zero(std::move(config));
        d.mult_.at(i) = multiplicity;
        return d;
    }

    /// Every curve of the configuration with multiplicity one.
    static Divisor reduced(ConfigPtr config) {
        const std::size_t n = config->size();
        return Divisor(std::move(config), std::vector<Int>(n, 1));
    }

    const CurveConfig& config() const noexcept { return *config_; }
    const ConfigPtr& config_ptr() const noexcept { return config_; }
    std::span<const Int> mult() const noexcept { return mult_; }
    Int operator[](std::size_t i) const { return mult_.at(i); }
    std::size_t size() const noexcept { return mult_.size(); }

    bool is_zero() const {
        return std::all_of(mult_.begin(), mult_.end(), [](Int c) { return c == 0; });
    }
    bool is_effective() const { return !is_zero(); }

    Int total() const {
        Int t = 0;
        for (Int c : mult_) t += c;
        return t;
    }

    bool is_reduced() const {
        return std::all_of(mult_.begin(), mult_.end(), [](Int c) { return c <= 1; });
    }

    std::vector<std::size_t> support() const {
        std::vector<std::size_t> s;
        for (std::size_t i = 0; i < mult_.size(); ++i) {
            if (mult_[i] > 0) s.push_back(i);
        }
        return s;
    }

    /// Single curve with multiplicity one, if this divisor is one.
    std::optional<std::size_t> as_single_curve() const {
        const auto s = support();
        if (s.size() == 1 && mult_[s[0]] == 1) return s[0];
        return std::nullopt;
    }

    Divisor with(std::size_t i, Int value) const {
        Divisor d = *this;
        if (value < 0) throw InvalidInput("negative multiplicity");
        d.mult_.at(i) = value;
        return d;
    }

    Divisor reduced_part() const {
        Divisor d = *this;
        for (Int& c : d.mult_) c = c > 0 ? 1 : 0;
        return d;
    }

    /// Componentwise A <= D.
    bool is_subdivisor_of(const Divisor& other) const;

    /// "C=2 E=1" style listing of the nonzero multiplicities.
    std::string to_string() const {
        std::string out;
        for (std::size_t i = 0; i < mult_.size(); ++i) {
            if (mult_[i] == 0) continue;
            if (!out.empty()) out += ' ';
            out += config_->label(i) + "=" + std::to_string(mult_[i]);
        }
        return out.empty() ? "0" : out;
    }

    friend bool operator==(const Divisor& a, const Divisor& b) {
        return (a.config_ == b.config_ || *a.config_ == *b.config_) && a.mult_ == b.mult_;
    }

    friend Divisor operator+(const Divisor& a, const Divisor& b);
    friend Divisor operator-(const Divisor& a, const Divisor& b);
    friend Divisor operator*(Int k, const Divisor& a);

private:
    ConfigPtr config_;
    std::vector<Int> mult_;
};

inline bool same_config(const Divisor& a, const Divisor& b) {
    return a.config_ptr() == b.config_ptr() || a.config() == b.config();
}

inline void require_same_config(const Divisor& a, const Divisor& b) {
    if (!same_config(a, b)) throw ConfigMismatch();
}

inline bool Divisor::is_subdivisor_of(const Divisor& other) const {
    require_same_config(*this, other);
    for (std::size_t i = 0; i < mult_.size(); ++i) {
        if (mult_[i] > other.mult_[i]) return false;
    }
    return true;
}

inline Divisor operator+(const Divisor& a, const Divisor& b) {
    require_same_config(a, b);
    Divisor d = a;
    for (std::size_t i = 0; i < d.mult_.size(); ++i) d.mult_[i] += b.mult_[i];
    return d;
}

inline Divisor operator-(const Divisor& a, const Divisor& b) {
    require_same_config(a, b);
    Divisor d = a;
    for (std::size_t i = 0; i < d.mult_.size(); ++i) {
        d.mult_[i] -= b.mult_[i];
        if (d.mult_[i] < 0) throw InvalidInput("difference is not effective");
    }
    return d;
}

inline Divisor operator*(Int k, const Divisor& a) {
    if (k < 0) throw InvalidInput("negative scalar");
    Divisor d = a;
    for (Int& c : d.mult_) c *= k;
    return d;
}

namespace detail {

// Raw-vector kernels shared by the search routines.

inline Int curve_dot(const CurveConfig& cfg, std::size_t i, std::span<const Int> b) {
    const std::size_t n = cfg.size();
    Int s = 0;
    for (std::size_t j = 0; j < n; ++j) {
        if (b[j] != 0) s += cfg.pair(i, j) * b[j];
    }
    return s;
}

inline Int pairing(const CurveConfig& cfg, std::span<const Int> a, std::span<const Int> b) {
    Int s = 0;
    for (std::size_t i = 0; i < cfg.size(); ++i) {
        if (a[i] != 0) s += a[i] * curve_dot(cfg, i, b);
    }
    return s;
}

inline Int k_degree(const CurveConfig& cfg, std::span<const Int> a) {
    Int s = 0;
    for (std::size_t i = 0; i < cfg.size(); ++i) s += a[i] * cfg.canonical_degree(i);
    return s;
}

struct VectorHash {
    std::size_t operator()(const std::vector<Int>& v) const noexcept {
        std::size_t h = v.size();
        for (Int x : v) h ^= std::hash<Int>{}(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        return h;
    }
};

}  // namespace detail

inline Int pairing(const Divisor& a, const Divisor& b) {
    require_same_config(a, b);
    return detail::pairing(a.config(), a.mult(), b.mult());
}

inline Int self_intersection(const Divisor& d) { return detail::pairing(d.config(), d.mult(), d.mult()); }

/// D.K computed from adjunction on each curve.
inline Int k_degree(const Divisor& d) { return detail::k_degree(d.config(), d.mult()); }

/// chi(O_D) = -(D^2 + D.K)/2.
inline Int euler_char(const Divisor& d) {
    const Int s = self_intersection(d) + k_degree(d);
    if (s % 2 != 0) throw InvalidInput("D^2 + D.K is odd; genus or weight data is corrupt");
    return -s / 2;
}

/// chi(O_D(L)) = chi(O_D) + D.L.
inline Int euler_char_twisted(const Divisor& d, const Divisor& twist) { return euler_char(d) + pairing(d, twist); }

/// Checks A.B = chi(A) + chi(B) - chi(A+B). Both divisors must be effective.
inline bool chi_additivity_check(const Divisor& a, const Divisor& b) {
    require_same_config(a, b);
    if (!a.is_effective() || !b.is_effective()) throw InvalidInput("chi additivity needs effective divisors");
    return pairing(a, b) == euler_char(a) + euler_char(b) - euler_char(a + b);
}

inline constexpr std::size_t kDefaultSubdivisorCap = 10'000'000;

/// Number of divisors 0 <= A <= D; throws if it exceeds `cap`.
inline std::size_t subdivisor_space(const Divisor& d, std::size_t cap = kDefaultSubdivisorCap) {
    std::size_t count = 1;
    for (Int c : d.mult()) {
        const auto factor = static_cast<std::size_t>(c + 1);
        if (count > cap / factor) {
            throw SearchSpaceTooLarge("subdivisor space of " + d.to_string() + " exceeds cap " + std::to_string(cap));
        }
        count *= factor;
    }
    return count;
}

namespace detail {

/// Calls fn(a) for every 0 < a <= mult (a != mult when proper) in lexicographic
/// order; stops early when fn returns false. Returns false iff stopped early.
template <class Fn>
bool for_each_subvector(std::span<const Int> mult, bool proper, Fn&& fn) {
    const std::size_t n = mult.size();
    std::vector<Int> a(n, 0);
    while (true) {
        std::size_t k = n;
        while (k > 0 && a[k - 1] == mult[k - 1]) {
            a[k - 1] = 0;
            --k;
        }
        if (k == 0) return true;
        ++a[k - 1];
        if (proper && std::equal(a.begin(), a.end(), mult.begin())) continue;
        if (!fn(std::span<const Int>(a))) return false;
    }
}

}  // namespace detail

/// Lazily enumerates every 0 < A <= D (A != D when proper) in lexicographic
/// multiplicity order.
class SubdivisorRange {
public:
    SubdivisorRange(Divisor d, bool proper, std::size_t cap = kDefaultSubdivisorCap)
        : d_(std::move(d)), proper_(proper) {
        if (!d_.is_effective()) throw InvalidInput("subdivisors of the zero divisor");
        subdivisor_space(d_, cap);
    }

    class iterator {
    public:
        using iterator_category = std::input_iterator_tag;
        using value_type = Divisor;
        using difference_type = std::ptrdiff_t;
        using reference = Divisor;
        using pointer = void;

        iterator() = default;
        explicit iterator(const SubdivisorRange* range) : range_(range), cur_(range->d_.size(), 0), done_(false) {
            advance();
        }

        Divisor operator*() const { return Divisor(range_->d_.config_ptr(), cur_); }
        iterator& operator++() {
            advance();
            return *this;
        }
        iterator operator++(int) {
            iterator old = *this;
            advance();
            return old;
        }
        bool operator==(const iterator& o) const { return done_ == o.done_ && (done_ || cur_ == o.cur_); }

    private:
        void advance() {
            const auto m = range_->d_.mult();
            const std::size_t n = m.size();
            while (true) {
                std::size_t k = n;
                while (k > 0 && cur_[k - 1] == m[k - 1]) {
                    cur_[k - 1] = 0;
                    --k;
                }
                if (k == 0) {
                    done_ = true;
                    return;
                }
                ++cur_[k - 1];
                if (!(range_->proper_ && std::equal(cur_.begin(), cur_.end(), m.begin()))) return;
            }
        }

        const SubdivisorRange* range_ = nullptr;
        std::vector<Int> cur_;
        bool done_ = true;
    };

    iterator begin() const { return iterator(this); }
    iterator end() const { return iterator(); }

private:
    Divisor d_;
    bool proper_;
};

inline SubdivisorRange subdivisors(const Divisor& d, bool proper, std::size_t cap = kDefaultSubdivisorCap) {
    return SubdivisorRange(d, proper, cap);
}

/// Connectivity of the support graph (edge iff the intersection number is positive).
inline bool is_connected(const Divisor& d) {
    const auto supp = d.support();
    if (supp.empty()) return false;
    const auto& cfg = d.config();
    std::vector<bool> seen(d.size(), false);
    std::queue<std::size_t> q;
    q.push(supp.front());
    seen[supp.front()] = true;
    std::size_t reached = 1;
    while (!q.empty()) {
        const std::size_t i = q.front();
        q.pop();
        for (std::size_t j : supp) {
            if (!seen[j] && j != i && cfg.pair(i, j) > 0) {
                seen[j] = true;
                ++reached;
                q.push(j);
            }
        }
    }
    return reached == supp.size();
}

/// Connected, and the intersection points on the support number exactly |supp|-1.
inline bool is_tree(const Divisor& d) {
    if (!is_connected(d)) return false;
    const auto supp = d.support();
    Int edges = 0;
    for (std::size_t a = 0; a < supp.size(); ++a) {
        for (std::size_t b = a + 1; b < supp.size(); ++b) edges += d.config().pair(supp[a], supp[b]);
    }
    return edges == static_cast<Int>(supp.size()) - 1;
}

/// The configuration restricted to the support of d, with d carried over.
inline Divisor restrict_to_support(const Divisor& d) {
    const auto supp = d.support();
    const auto& cfg = d.config();
    std::vector<std::string> labels;
    std::vector<Int> genus, matrix, mult;
    for (std::size_t i : supp) {
        labels.push_back(cfg.label(i));
        genus.push_back(cfg.genus(i));
        mult.push_back(d[i]);
        for (std::size_t j : supp) matrix.push_back(cfg.pair(i, j));
    }
    return Divisor(share(CurveConfig::from_matrix(std::move(labels), std::move(genus), std::move(matrix))),
                   std::move(mult));
}

/// Sub-configuration on the given curve indices, in the given order.
inline CurveConfig subconfig(const CurveConfig& cfg, std::span<const std::size_t> curves) {
    std::vector<std::string> labels;
    std::vector<Int> genus, matrix;
    for (std::size_t i : curves) {
        labels.push_back(cfg.label(i));
        genus.push_back(cfg.genus(i));
        for (std::size_t j : curves) matrix.push_back(cfg.pair(i, j));
    }
    return CurveConfig::from_matrix(std::move(labels), std::move(genus), std::move(matrix));
}

/// True when both configurations carry the same labelled data, irrespective of
/// the order in which curves are stored.
inline bool same_presentation(const CurveConfig& a, const CurveConfig& b) {
    if (a.size() != b.size()) return false;
    std::vector<std::size_t> map(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        const auto j = b.index_of(a.label(i));
        if (!j) return false;
        map[i] = *j;
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a.genus(i) != b.genus(map[i])) return false;
        for (std::size_t j = 0; j < a.size(); ++j) {
            if (a.pair(i, j) != b.pair(map[i], map[j])) return false;
        }
    }
    return true;
}

}  // namespace curvelike
