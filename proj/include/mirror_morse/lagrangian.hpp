#pragma once

// Affine Lagrangian sections L_a : y = (a/2) x over the dual simplex and the
// data attached to an ordered pair (L_a, L_b) on a single simplex factor:
// intersection points v_{ab;I} = 2I/(b-a), degrees, the normalized magnitude
// |e_{ab;I}| and the potential f_{ab;I} = log |e_{ab;I}|.

#include "mirror_morse/exact_weight.hpp"
#include "mirror_morse/polytope.hpp"

#include <compare>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace mirror_morse {

/// L_{(a_1,...,a_r)}: one integer label per polytope factor.
struct LineObject {
    std::vector<int> labels;

    std::string to_string() const {
        std::string out = "(";
        for (std::size_t k = 0; k < labels.size(); ++k) out += (k ? "," : "") + std::to_string(labels[k]);
        return out + ")";
    }

    friend auto operator<=>(const LineObject&, const LineObject&) = default;
};

using MultiIndex = std::vector<int>;

inline int total(const MultiIndex& I) {
    int s = 0;
    for (int i : I) s += i;
    return s;
}

/// One generator of Mo(P_n)(L_a, L_b) on a single simplex factor.
struct FactorGenerator {
    MultiIndex index;
    std::optional<RationalPoint> point;  // nullopt: the whole factor (a == b)
    int degree = 0;
};

/// v_{ab;I} = 2I/(b-a); requires a != b.
inline RationalPoint intersection_point(int a, int b, const MultiIndex& I) {
    if (a == b) throw std::invalid_argument("intersection_point: L_a and L_a intersect in the whole factor");
    RationalPoint v;
    v.reserve(I.size());
    for (int i : I) v.push_back(make_rational(2LL * i, b - a));
    return v;
}

namespace detail {

// All J in Z^n_{>=0} with |J| <= bound, ordered by |J| then lexicographically
// descending ((1,0) before (0,1)).
inline void graded_indices(int n, int bound, std::vector<MultiIndex>& out) {
    for (int d = 0; d <= bound; ++d) {
        MultiIndex J(static_cast<std::size_t>(n), 0);
        // enumerate compositions of d into n parts, lexicographically descending
        auto rec = [&](auto&& self, int pos, int remaining) -> void {
            if (pos == n - 1) {
                J[static_cast<std::size_t>(pos)] = remaining;
                out.push_back(J);
                return;
            }
            for (int v = remaining; v >= 0; --v) {
                J[static_cast<std::size_t>(pos)] = v;
                self(self, pos + 1, remaining - v);
            }
        };
        rec(rec, 0, d);
    }
}

}  // namespace detail

/// Generators of Mo(P_n)(L_a, L_b).
///  a < b : I >= 0, |I| <= b-a, point 2I/(b-a), degree 0.
///  a = b : the whole factor, index 0, degree 0.
///  a > b : I <= -1, sum(-I) <= a-b-1 (v interior), degree n.
inline std::vector<FactorGenerator> hom_indices(int a, int b, int n) {
    if (n < 1) throw std::invalid_argument("hom_indices: dimension must be positive");
    std::vector<FactorGenerator> out;
    if (a == b) {
        out.push_back(FactorGenerator{MultiIndex(static_cast<std::size_t>(n), 0), std::nullopt, 0});
        return out;
    }
    std::vector<MultiIndex> shapes;
    if (a < b) {
        detail::graded_indices(n, b - a, shapes);
        for (auto& I : shapes) {
            auto v = intersection_point(a, b, I);
            out.push_back(FactorGenerator{std::move(I), std::move(v), 0});
        }
        return out;
    }
    const int bound = a - b - 1 - n;
    if (bound < 0) return out;
    detail::graded_indices(n, bound, shapes);
    for (auto& J : shapes) {
        MultiIndex I(J.size());
        for (std::size_t j = 0; j < J.size(); ++j) I[j] = -J[j] - 1;
        auto v = intersection_point(a, b, I);
        out.push_back(FactorGenerator{std::move(I), std::move(v), n});
    }
    return out;
}

/// The degree-0 data of a pair a < b on one simplex factor: base point and
/// potential f_{ab;I} = log |e_{ab;I}|, normalized so that f(v_{ab;I}) = 0.
class PairPotential {
public:
    PairPotential(int a, int b, MultiIndex I) : a_(a), b_(b), index_(std::move(I)) {
        if (a_ >= b_) throw std::invalid_argument("PairPotential requires a < b");
        if (index_.empty()) throw std::invalid_argument("PairPotential requires a non-empty multi-index");
        for (int i : index_)
            if (i < 0) throw std::invalid_argument("PairPotential: negative index entry");
        if (total(index_) > b_ - a_) throw std::invalid_argument("PairPotential: |I| exceeds b - a");
        base_ = intersection_point(a_, b_, index_);
        peak_ = *unnormalized(base_);
    }

    int source() const { return a_; }
    int target() const { return b_; }
    const MultiIndex& index() const { return index_; }
    const RationalPoint& base_point() const { return base_; }
    int dim() const { return static_cast<int>(index_.size()); }

    /// |e_{ab;I}(x)|, or nullopt where it vanishes (a boundary factor raised
    /// to a positive power).
    std::optional<PosExact> magnitude_at(std::span<const Rational> x) const {
        auto u = unnormalized(x);
        if (!u) return std::nullopt;
        return *u / peak_;
    }

    /// f_{ab;I}(x) as an exact formal log-combination; nullopt means -infinity.
    std::optional<LogExact> value_at(std::span<const Rational> x) const {
        auto m = magnitude_at(x);
        if (!m) return std::nullopt;
        return log(*m);
    }

    /// -grad f_{ab;I} in dual coordinates: ((b-a)/2) x^j - i_j.
    RationalPoint minus_grad(std::span<const Rational> x) const {
        check(x);
        const Rational rate = make_rational(b_ - a_, 2);
        RationalPoint g;
        g.reserve(x.size());
        for (std::size_t j = 0; j < x.size(); ++j) g.push_back(rate * x[j] - index_[j]);
        return g;
    }

private:
    void check(std::span<const Rational> x) const {
        if (x.size() != index_.size())
            throw std::invalid_argument("point dimension does not match multi-index length");
    }

    // ((2 - sum x)/2)^{(b-a-|I|)/2} * prod (x^j/2)^{i_j/2}, with 0^0 = 1.
    std::optional<PosExact> unnormalized(std::span<const Rational> x) const {
        check(x);
        if (!factor_face(x)) throw std::invalid_argument("magnitude requested outside the closed polytope");
        PosExact out;
        Rational sum = 0;
        for (std::size_t j = 0; j < x.size(); ++j) {
            sum += x[j];
            if (index_[j] == 0) continue;
            if (x[j] == 0) return std::nullopt;
            out *= PosExact::from_rational(x[j] / 2).pow(make_rational(index_[j], 2));
        }
        const int rest = b_ - a_ - total(index_);
        if (rest > 0) {
            const Rational slack = (kSimplexScale - sum) / 2;
            if (slack == 0) return std::nullopt;
            out *= PosExact::from_rational(slack).pow(make_rational(rest, 2));
        }
        return out;
    }

    int a_;
    int b_;
    MultiIndex index_;
    RationalPoint base_;
    PosExact peak_;
};

inline std::optional<PosExact> magnitude_at(int a, int b, const MultiIndex& I, const RationalPoint& x) {
    return PairPotential(a, b, I).magnitude_at(x);
}

inline std::optional<LogExact> potential_value(int a, int b, const MultiIndex& I, const RationalPoint& x) {
    return PairPotential(a, b, I).value_at(x);
}

/// Linear field ((b-a)/2) x - I; defined for any a, b and any x in R^n.
inline RationalPoint minus_grad(int a, int b, const MultiIndex& I, const RationalPoint& x) {
    if (x.size() != I.size()) throw std::invalid_argument("minus_grad: dimension mismatch");
    const Rational rate = make_rational(b - a, 2);
    RationalPoint g;
    g.reserve(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) g.push_back(rate * x[j] - I[j]);
    return g;
}

}  // namespace mirror_morse
