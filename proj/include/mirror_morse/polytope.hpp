#pragma once

// The closed dual polytope of CP^n,
//     P_n = { x in R^n : x^j >= 0, x^1 + ... + x^n <= 2 },
// and finite products P_{n_1} x ... x P_{n_r}.

#include "mirror_morse/rational.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mirror_morse {

/// Side length of every simplex factor (Fubini-Study normalization).
inline const Rational kSimplexScale{2};

struct SimplexFactor {
    int dim = 1;
};

class ProductPolytope {
public:
    explicit ProductPolytope(std::vector<SimplexFactor> factors) : factors_(std::move(factors)) {
        if (factors_.empty()) throw std::invalid_argument("a product polytope needs at least one factor");
        int off = 0;
        for (const auto& f : factors_) {
            if (f.dim < 1) throw std::invalid_argument("simplex factor dimension must be positive");
            offsets_.push_back(off);
            off += f.dim;
        }
        total_dim_ = off;
    }

    static ProductPolytope simplex(int n) { return ProductPolytope({SimplexFactor{n}}); }

    /// Parses "P2", "P1xP2", "P1xP1xP3", ... (whitespace ignored).
    static ProductPolytope parse(std::string_view descriptor) {
        std::string s;
        for (char c : descriptor)
            if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
        if (s.empty()) throw std::invalid_argument("empty space descriptor");
        std::vector<SimplexFactor> factors;
        std::size_t pos = 0;
        while (pos <= s.size()) {
            const auto next = s.find_first_of("xX", pos);
            const std::string tok = s.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
            if (tok.size() < 2 || (tok[0] != 'P' && tok[0] != 'p'))
                throw std::invalid_argument("malformed space descriptor: " + std::string(descriptor));
            int n = 0;
            for (std::size_t i = 1; i < tok.size(); ++i) {
                if (!std::isdigit(static_cast<unsigned char>(tok[i])))
                    throw std::invalid_argument("malformed space descriptor: " + std::string(descriptor));
                n = n * 10 + (tok[i] - '0');
                if (n > 64) throw std::invalid_argument("factor dimension too large in: " + std::string(descriptor));
            }
            if (n < 1) throw std::invalid_argument("factor dimension must be positive in: " + std::string(descriptor));
            factors.push_back(SimplexFactor{n});
            if (next == std::string::npos) break;
            pos = next + 1;
        }
        return ProductPolytope(std::move(factors));
    }

    std::string descriptor() const {
        std::string out;
        for (std::size_t k = 0; k < factors_.size(); ++k) {
            if (k) out += "x";
            out += "P" + std::to_string(factors_[k].dim);
        }
        return out;
    }

    const std::vector<SimplexFactor>& factors() const { return factors_; }
    std::size_t factor_count() const { return factors_.size(); }
    int dim(std::size_t k) const { return factors_.at(k).dim; }
    int offset(std::size_t k) const { return offsets_.at(k); }
    int total_dim() const { return total_dim_; }

    /// Coordinates of factor k inside a full point.
    std::span<const Rational> slice(const RationalPoint& x, std::size_t k) const {
        return std::span<const Rational>(x).subspan(static_cast<std::size_t>(offset(k)), static_cast<std::size_t>(dim(k)));
    }

    friend bool operator==(const ProductPolytope& a, const ProductPolytope& b) { return a.descriptor() == b.descriptor(); }

private:
    std::vector<SimplexFactor> factors_;
    std::vector<int> offsets_;
    int total_dim_ = 0;
};

/// Active constraints of one simplex factor at a point.
struct FactorFace {
    std::vector<int> zero_coords;  // 1-based j with x^j = 0
    bool sum_at_scale = false;     // x^1 + ... + x^n = 2

    bool empty() const { return zero_coords.empty() && !sum_at_scale; }

    /// All n coordinate facets together with the sum facet have no common point.
    bool feasible(int n) const {
        for (int j : zero_coords)
            if (j < 1 || j > n) return false;
        return !(sum_at_scale && static_cast<int>(zero_coords.size()) == n);
    }

    friend bool operator==(const FactorFace&, const FactorFace&) = default;
};

struct FaceDescriptor {
    std::vector<FactorFace> factors;

    bool interior() const {
        return std::all_of(factors.begin(), factors.end(), [](const FactorFace& f) { return f.empty(); });
    }

    /// "f1:x1=0", "f2:sum=2", ... ; sorted by factor then constraint.
    std::vector<std::string> labels() const {
        std::vector<std::string> out;
        for (std::size_t k = 0; k < factors.size(); ++k) {
            const std::string pre = "f" + std::to_string(k + 1) + ":";
            for (int j : factors[k].zero_coords) out.push_back(pre + "x" + std::to_string(j) + "=0");
            if (factors[k].sum_at_scale) out.push_back(pre + "sum=2");
        }
        return out;
    }

    friend bool operator==(const FaceDescriptor&, const FaceDescriptor&) = default;
};

enum class Location { Interior, Boundary, Outside };

struct Classification {
    Location location = Location::Interior;
    FaceDescriptor face;  // active constraints; empty unless Boundary
};

namespace detail {

inline void check_dim(const ProductPolytope& P, const RationalPoint& x) {
    if (static_cast<int>(x.size()) != P.total_dim())
        throw std::invalid_argument("point dimension " + std::to_string(x.size()) + " does not match polytope dimension " +
                                    std::to_string(P.total_dim()));
}

}  // namespace detail

/// Location of a point of R^n relative to a single closed simplex P_n.
/// Returns nullopt when outside.
inline std::optional<FactorFace> factor_face(std::span<const Rational> x) {
    FactorFace face;
    Rational sum = 0;
    for (std::size_t j = 0; j < x.size(); ++j) {
        if (x[j] < 0) return std::nullopt;
        if (x[j] == 0) face.zero_coords.push_back(static_cast<int>(j + 1));
        sum += x[j];
    }
    if (sum > kSimplexScale) return std::nullopt;
    face.sum_at_scale = sum == kSimplexScale;
    return face;
}

inline Classification classify(const ProductPolytope& P, const RationalPoint& x) {
    detail::check_dim(P, x);
    Classification out;
    for (std::size_t k = 0; k < P.factor_count(); ++k) {
        auto face = factor_face(P.slice(x, k));
        if (!face) return Classification{Location::Outside, {}};
        out.face.factors.push_back(std::move(*face));
    }
    out.location = out.face.interior() ? Location::Interior : Location::Boundary;
    if (out.location == Location::Interior) out.face.factors.clear();
    return out;
}

inline bool on_boundary(const ProductPolytope& P, const RationalPoint& x) {
    return classify(P, x).location == Location::Boundary;
}

/// Vertices {0, 2e_1, ..., 2e_n} of a single simplex factor.
inline std::vector<RationalPoint> simplex_vertices(int n) {
    std::vector<RationalPoint> out;
    out.emplace_back(static_cast<std::size_t>(n), Rational(0));
    for (int j = 0; j < n; ++j) {
        RationalPoint v(static_cast<std::size_t>(n), Rational(0));
        v[static_cast<std::size_t>(j)] = kSimplexScale;
        out.push_back(std::move(v));
    }
    return out;
}

/// All products of factor vertices, first factor varying slowest.
inline std::vector<RationalPoint> vertices(const ProductPolytope& P) {
    std::vector<RationalPoint> out{RationalPoint{}};
    for (const auto& f : P.factors()) {
        std::vector<RationalPoint> next;
        for (const auto& head : out)
            for (const auto& tail : simplex_vertices(f.dim)) {
                RationalPoint v = head;
                v.insert(v.end(), tail.begin(), tail.end());
                next.push_back(std::move(v));
            }
        out = std::move(next);
    }
    return out;
}

/// lambda in [0,1] with c = lambda a + (1 - lambda) b, if one exists.
inline std::optional<Rational> segment_parameter(const RationalPoint& a, const RationalPoint& b, const RationalPoint& c) {
    if (a.size() != b.size() || a.size() != c.size()) throw std::invalid_argument("segment_contains: dimension mismatch");
    std::optional<Rational> lambda;
    for (std::size_t j = 0; j < a.size(); ++j) {
        const Rational diff = a[j] - b[j];
        if (diff == 0) {
            if (c[j] != b[j]) return std::nullopt;
            continue;
        }
        const Rational l = (c[j] - b[j]) / diff;
        if (lambda && *lambda != l) return std::nullopt;
        lambda = l;
    }
    if (!lambda) return Rational(1);  // a == b == c
    if (*lambda < 0 || *lambda > 1) return std::nullopt;
    return lambda;
}

inline bool segment_contains(const RationalPoint& a, const RationalPoint& b, const RationalPoint& c) {
    return segment_parameter(a, b, c).has_value();
}

/// A closed segment of P_n lies in the boundary iff its endpoints share an
/// active facet (faces of a convex polytope are exposed).
inline bool segment_on_boundary(std::span<const Rational> a, std::span<const Rational> b) {
    const auto fa = factor_face(a);
    const auto fb = factor_face(b);
    if (!fa || !fb) return false;
    if (fa->sum_at_scale && fb->sum_at_scale) return true;
    for (int j : fa->zero_coords)
        if (std::find(fb->zero_coords.begin(), fb->zero_coords.end(), j) != fb->zero_coords.end()) return true;
    return false;
}

}  // namespace mirror_morse
