#pragma once

// The weighted Morse homotopy category Mo(P) on a product of dual simplices:
// hom spaces spanned by clean intersections of Lagrangian sections, and the
// product m_2 counted by two-input gradient trees with weight e^{-A(gamma)}.
// Everything is componentwise over the simplex factors.

#include "mirror_morse/exact_weight.hpp"
#include "mirror_morse/lagrangian.hpp"
#include "mirror_morse/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace mirror_morse {

/// The slice of a generator living on one simplex factor.
struct FactorPiece {
    int source = 0;
    int target = 0;
    MultiIndex index;
    std::optional<RationalPoint> point;  // nullopt: the whole factor
    int degree = 0;

    bool whole_factor() const { return !point.has_value(); }
    friend bool operator==(const FactorPiece&, const FactorPiece&) = default;
};

struct HomGenerator {
    LineObject source;
    LineObject target;
    std::vector<FactorPiece> pieces;

    /// Concatenated multi-index (the Z^n-grading sector).
    MultiIndex index() const {
        MultiIndex I;
        for (const auto& p : pieces) I.insert(I.end(), p.index.begin(), p.index.end());
        return I;
    }

    int degree() const {
        int d = 0;
        for (const auto& p : pieces) d += p.degree;
        return d;
    }

    bool is_identity() const {
        return std::all_of(pieces.begin(), pieces.end(), [](const FactorPiece& p) { return p.whole_factor(); });
    }

    std::string to_string() const {
        std::string out = "V[" + source.to_string() + "->" + target.to_string() + ";";
        const auto I = index();
        for (std::size_t j = 0; j < I.size(); ++j) out += (j ? "," : "") + std::to_string(I[j]);
        return out + "]";
    }

    friend bool operator==(const HomGenerator&, const HomGenerator&) = default;
};

class HomSpace {
public:
    HomSpace(LineObject source, LineObject target, std::vector<HomGenerator> generators)
        : source_(std::move(source)), target_(std::move(target)), generators_(std::move(generators)) {
        for (std::size_t i = 0; i < generators_.size(); ++i) {
            by_degree_[generators_[i].degree()].push_back(i);
            by_sector_[generators_[i].index()].push_back(i);
        }
    }

    const LineObject& source() const { return source_; }
    const LineObject& target() const { return target_; }
    const std::vector<HomGenerator>& generators() const& { return generators_; }
    std::vector<HomGenerator> generators() && { return std::move(generators_); }
    std::size_t size() const { return generators_.size(); }
    bool empty() const { return generators_.empty(); }

    std::size_t rank(int degree) const {
        auto it = by_degree_.find(degree);
        return it == by_degree_.end() ? 0 : it->second.size();
    }

    const std::map<int, std::vector<std::size_t>>& by_degree() const { return by_degree_; }
    const std::map<MultiIndex, std::vector<std::size_t>>& by_sector() const { return by_sector_; }

private:
    LineObject source_;
    LineObject target_;
    std::vector<HomGenerator> generators_;
    std::map<int, std::vector<std::size_t>> by_degree_;
    std::map<MultiIndex, std::vector<std::size_t>> by_sector_;
};

namespace detail {

inline void check_labels(const ProductPolytope& P, const LineObject& L) {
    if (L.labels.size() != P.factor_count())
        throw std::invalid_argument("object " + L.to_string() + " has " + std::to_string(L.labels.size()) +
                                    " labels but the space has " + std::to_string(P.factor_count()) + " factors");
}

}  // namespace detail

/// Tensor product of per-factor generator lists; first factor varies slowest.
inline HomSpace hom_space(const ProductPolytope& P, const LineObject& from, const LineObject& to) {
    detail::check_labels(P, from);
    detail::check_labels(P, to);
    std::vector<std::vector<FactorPiece>> partial{{}};
    for (std::size_t k = 0; k < P.factor_count(); ++k) {
        const int a = from.labels[k], b = to.labels[k];
        const auto factor_gens = hom_indices(a, b, P.dim(k));
        std::vector<std::vector<FactorPiece>> next;
        for (const auto& head : partial)
            for (const auto& fg : factor_gens) {
                auto pieces = head;
                pieces.push_back(FactorPiece{a, b, fg.index, fg.point, fg.degree});
                next.push_back(std::move(pieces));
            }
        partial = std::move(next);
    }
    std::vector<HomGenerator> gens;
    gens.reserve(partial.size());
    for (auto& pieces : partial) gens.push_back(HomGenerator{from, to, std::move(pieces)});
    return HomSpace(from, to, std::move(gens));
}

/// The unit P in Mo(P)(L, L).
inline HomGenerator identity(const ProductPolytope& P, const LineObject& L) {
    detail::check_labels(P, L);
    HomGenerator g{L, L, {}};
    for (std::size_t k = 0; k < P.factor_count(); ++k)
        g.pieces.push_back(FactorPiece{L.labels[k], L.labels[k], MultiIndex(static_cast<std::size_t>(P.dim(k)), 0), std::nullopt, 0});
    return g;
}

/// A composition outside the degree-0 regime; the library computes no trees there.
struct Unsupported {
    std::string reason;
};

enum class FactorTreeKind {
    Segment,    // a < b < c : two straight edges meeting at v_ac
    LeftUnit,   // a = b < c : the first input is the whole factor
    RightUnit,  // a < b = c : the second input is the whole factor
    Constant,   // a = b = c : everything is the whole factor
};

/// Projection of a two-input gradient tree to one simplex factor.
struct FactorTree {
    FactorTreeKind kind = FactorTreeKind::Constant;
    std::optional<RationalPoint> left_input;   // nullopt: whole factor
    std::optional<RationalPoint> right_input;  // nullopt: whole factor
    std::optional<RationalPoint> output;       // nullopt: whole factor
    std::optional<Rational> lambda;            // Segment: output = lambda*left + (1-lambda)*right
    LogExact area;                             // -(f_ab + f_bc)(output) >= 0
};

struct GradientTree2 {
    std::vector<FactorTree> factors;
    LogExact area;  // sum over factors
};

struct ScaledGenerator {
    PosExact weight;  // e^{-A(gamma)}, in (0, 1]
    HomGenerator generator;
};

using TreeOutcome = std::variant<GradientTree2, Unsupported>;
using ComposeOutcome = std::variant<ScaledGenerator, Unsupported>;

namespace detail {

inline void check_composable(const HomGenerator& left, const HomGenerator& right) {
    if (left.target != right.source)
        throw std::invalid_argument("non-composable generators: " + left.to_string() + " then " + right.to_string());
    if (left.pieces.size() != right.pieces.size())
        throw std::invalid_argument("generators live on different spaces");
}

inline std::optional<std::string> regime_violation(const HomGenerator& left, const HomGenerator& right) {
    for (std::size_t k = 0; k < left.pieces.size(); ++k) {
        const int a = left.pieces[k].source, b = left.pieces[k].target, c = right.pieces[k].target;
        if (a > b || b > c)
            return "factor " + std::to_string(k + 1) + " has labels " + std::to_string(a) + "," + std::to_string(b) + "," +
                   std::to_string(c) + " outside the degree-0 regime a <= b <= c";
    }
    return std::nullopt;
}

inline LogExact finite_potential(int a, int b, const MultiIndex& I, const RationalPoint& x) {
    auto f = potential_value(a, b, I, x);
    if (!f) throw std::logic_error("tree output hits a zero of a basis magnitude");
    return *f;
}

}  // namespace detail

/// The tree computing m_2(g_ab, g_bc), built factor by factor.
inline TreeOutcome gradient_tree(const HomGenerator& g_ab, const HomGenerator& g_bc) {
    detail::check_composable(g_ab, g_bc);
    if (auto why = detail::regime_violation(g_ab, g_bc)) return Unsupported{*why};
    GradientTree2 tree;
    for (std::size_t k = 0; k < g_ab.pieces.size(); ++k) {
        const auto& left = g_ab.pieces[k];
        const auto& right = g_bc.pieces[k];
        const int a = left.source, b = left.target, c = right.target;
        FactorTree ft;
        ft.left_input = left.point;
        ft.right_input = right.point;
        if (a < b && b < c) {
            ft.kind = FactorTreeKind::Segment;
            const auto& vab = *left.point;
            const auto& vbc = *right.point;
            RationalPoint out(vab.size());
            for (std::size_t j = 0; j < vab.size(); ++j)
                out[j] = (Rational(b - a) * vab[j] + Rational(c - b) * vbc[j]) / Rational(c - a);
            ft.lambda = make_rational(b - a, c - a);
            ft.area = -(detail::finite_potential(a, b, left.index, out) + detail::finite_potential(b, c, right.index, out));
            ft.output = std::move(out);
        } else if (a == b && b < c) {
            ft.kind = FactorTreeKind::LeftUnit;
            ft.output = right.point;
            ft.area = -detail::finite_potential(b, c, right.index, *right.point);
        } else if (a < b && b == c) {
            ft.kind = FactorTreeKind::RightUnit;
            ft.output = left.point;
            ft.area = -detail::finite_potential(a, b, left.index, *left.point);
        } else {
            ft.kind = FactorTreeKind::Constant;
        }
        tree.area += ft.area;
        tree.factors.push_back(std::move(ft));
    }
    return tree;
}

/// m_2(g_ab, g_bc) = e^{-A(gamma)} V_{ac; I+K}; all signs are +1.
inline ComposeOutcome compose(const HomGenerator& g_ab, const HomGenerator& g_bc) {
    auto outcome = gradient_tree(g_ab, g_bc);
    if (auto* u = std::get_if<Unsupported>(&outcome)) return *u;
    const auto& tree = std::get<GradientTree2>(outcome);
    HomGenerator result{g_ab.source, g_bc.target, {}};
    for (std::size_t k = 0; k < tree.factors.size(); ++k) {
        const auto& left = g_ab.pieces[k];
        const auto& right = g_bc.pieces[k];
        FactorPiece piece{left.source, right.target, left.index, tree.factors[k].output, 0};
        for (std::size_t j = 0; j < piece.index.size(); ++j) piece.index[j] += right.index[j];
        if (piece.point && *piece.point != intersection_point(piece.source, piece.target, piece.index))
            throw std::logic_error("tree output is not the intersection point of the composite sector");
        result.pieces.push_back(std::move(piece));
    }
    return ScaledGenerator{(-tree.area).exp(), std::move(result)};
}

/// Unwraps a composition expected to lie in the degree-0 regime.
inline ScaledGenerator compose_supported(const HomGenerator& g_ab, const HomGenerator& g_bc) {
    auto outcome = compose(g_ab, g_bc);
    if (auto* u = std::get_if<Unsupported>(&outcome)) throw std::domain_error("unsupported composition: " + u->reason);
    return std::get<ScaledGenerator>(std::move(outcome));
}

struct HigherProductResult {
    int arity = 0;
    int target_degree = 0;
    bool zero = true;
    std::string reason;
};

/// m_l for l >= 3 on degree-0 inputs: the output would need degree
/// sum|V_i| + 2 - l < 0, and no generator has negative degree.
inline HigherProductResult higher_product(const std::vector<HomGenerator>& args) {
    const int l = static_cast<int>(args.size());
    if (l < 3) throw std::invalid_argument("higher_product needs at least three arguments");
    int deg = 0;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (i + 1 < args.size()) detail::check_composable(args[i], args[i + 1]);
        if (args[i].degree() != 0) throw std::invalid_argument("higher_product: argument outside the degree-0 regime");
        deg += args[i].degree();
    }
    HigherProductResult out;
    out.arity = l;
    out.target_degree = deg + 2 - l;
    if (out.target_degree >= 0) throw std::logic_error("higher_product: non-negative target degree from degree-0 inputs");
    out.zero = true;
    out.reason = "target degree " + std::to_string(out.target_degree);
    return out;
}

enum class ProductCase { C0, C1, C2, C2Prime, C2DoublePrime, C3, C4 };

inline std::string to_string(ProductCase c) {
    switch (c) {
        case ProductCase::C0: return "(0)";
        case ProductCase::C1: return "(1)";
        case ProductCase::C2: return "(2)";
        case ProductCase::C2Prime: return "(2')";
        case ProductCase::C2DoublePrime: return "(2'')";
        case ProductCase::C3: return "(3)";
        case ProductCase::C4: return "(4)";
    }
    return "?";
}

/// The 4x4 classification of products on a two-factor space by the
/// equalities among a_k <= b_k <= c_k.
inline ProductCase classify_product_case(const LineObject& a, const LineObject& b, const LineObject& c) {
    if (a.labels.size() != 2 || b.labels.size() != 2 || c.labels.size() != 2)
        throw std::invalid_argument("product cases are defined for two-factor spaces");
    // per factor: 0 = a<b<c, 1 = a=b<c, 2 = a<b=c, 3 = a=b=c
    int type[2];
    int equalities = 0;
    for (int k = 0; k < 2; ++k) {
        const int x = a.labels[static_cast<std::size_t>(k)], y = b.labels[static_cast<std::size_t>(k)],
                  z = c.labels[static_cast<std::size_t>(k)];
        if (x > y || y > z) throw std::invalid_argument("product cases require a_k <= b_k <= c_k");
        type[k] = (x == y ? 1 : 0) + (y == z ? 2 : 0);
        equalities += (x == y) + (y == z);
    }
    switch (equalities) {
        case 0: return ProductCase::C0;
        case 1: return ProductCase::C1;
        case 3: return ProductCase::C3;
        case 4: return ProductCase::C4;
        default: break;
    }
    if (type[0] == 3 || type[1] == 3) return ProductCase::C2DoublePrime;
    return type[0] == type[1] ? ProductCase::C2 : ProductCase::C2Prime;
}

inline ProductCase classify_product_case(const HomGenerator& g_ab, const HomGenerator& g_bc) {
    detail::check_composable(g_ab, g_bc);
    return classify_product_case(g_ab.source, g_ab.target, g_bc.target);
}

/// True when the generator's locus (a product of points and whole factors)
/// lies in the boundary of P.
inline bool generator_on_boundary(const HomGenerator& g) {
    for (const auto& p : g.pieces)
        if (p.point) {
            auto face = factor_face(*p.point);
            if (face && !face->empty()) return true;
        }
    return false;
}

/// True when the image of the tree lies in the boundary of P.
inline bool tree_on_boundary(const GradientTree2& tree) {
    for (const auto& ft : tree.factors) {
        switch (ft.kind) {
            case FactorTreeKind::Segment:
                if (segment_on_boundary(*ft.left_input, *ft.right_input)) return true;
                break;
            case FactorTreeKind::LeftUnit:
            case FactorTreeKind::RightUnit: {
                auto face = factor_face(*ft.output);
                if (face && !face->empty()) return true;
                break;
            }
            case FactorTreeKind::Constant: break;
        }
    }
    return false;
}

struct BoundaryReport {
    bool pass = true;
    std::size_t generators_checked = 0;
    std::size_t trees_checked = 0;
    std::vector<std::string> witnesses;  // failures
    std::vector<std::string> notes;
    bool extension = false;  // more than two factors
};

/// Generators between distinct objects and trees of composable triples that
/// are not all one object must lie in the boundary of P.
inline BoundaryReport boundary_report(const ProductPolytope& P, const std::vector<LineObject>& collection) {
    BoundaryReport rep;
    rep.extension = P.factor_count() > 2;
    if (rep.extension) rep.notes.push_back("products of more than two projective spaces are handled componentwise");
    std::map<std::pair<std::size_t, std::size_t>, HomSpace> homs;
    for (std::size_t i = 0; i < collection.size(); ++i)
        for (std::size_t j = 0; j < collection.size(); ++j) homs.emplace(std::make_pair(i, j), hom_space(P, collection[i], collection[j]));

    for (std::size_t i = 0; i < collection.size(); ++i)
        for (std::size_t j = 0; j < collection.size(); ++j) {
            if (collection[i] == collection[j]) continue;
            for (const auto& g : homs.at({i, j}).generators()) {
                ++rep.generators_checked;
                if (!generator_on_boundary(g)) {
                    rep.pass = false;
                    rep.witnesses.push_back("interior generator " + g.to_string());
                    for (std::size_t k = 0; k < P.factor_count(); ++k) {
                        const int gap = std::abs(g.target.labels[k] - g.source.labels[k]);
                        if (gap >= P.dim(k) + 1)
                            rep.notes.push_back("factor " + std::to_string(k + 1) + " of " + g.source.to_string() + "->" +
                                                g.target.to_string() + " has |b-a| = " + std::to_string(gap) +
                                                " >= n+1: outside every strongly exceptional collection");
                    }
                }
            }
        }

    for (std::size_t i = 0; i < collection.size(); ++i)
        for (std::size_t j = 0; j < collection.size(); ++j)
            for (std::size_t k = 0; k < collection.size(); ++k) {
                if (collection[i] == collection[j] && collection[j] == collection[k]) continue;
                for (const auto& u : homs.at({i, j}).generators())
                    for (const auto& v : homs.at({j, k}).generators()) {
                        auto t = gradient_tree(u, v);
                        const auto* tree = std::get_if<GradientTree2>(&t);
                        if (!tree) continue;
                        ++rep.trees_checked;
                        if (!tree_on_boundary(*tree)) {
                            rep.pass = false;
                            rep.witnesses.push_back("tree of " + u.to_string() + " * " + v.to_string() + " leaves the boundary");
                        }
                    }
            }
    std::sort(rep.notes.begin(), rep.notes.end());
    rep.notes.erase(std::unique(rep.notes.begin(), rep.notes.end()), rep.notes.end());
    return rep;
}

struct AssociativityReport {
    bool pass = true;
    std::size_t triples_checked = 0;
    double max_discrepancy = 0.0;  // |log(left weight / right weight)|
    std::vector<std::string> failures;
};

/// m_2(m_2(u,v),w) == m_2(u,m_2(v,w)) exactly for all basis triples along a
/// chain L0 -> L1 -> L2 -> L3 with labels non-decreasing in every factor.
inline AssociativityReport associativity_check(const ProductPolytope& P, const std::vector<LineObject>& chain) {
    if (chain.size() != 4) throw std::invalid_argument("associativity_check expects a chain of four objects");
    for (const auto& L : chain) detail::check_labels(P, L);
    for (std::size_t k = 0; k < P.factor_count(); ++k)
        for (std::size_t i = 0; i + 1 < chain.size(); ++i)
            if (chain[i].labels[k] > chain[i + 1].labels[k])
                throw std::invalid_argument("associativity_check: chain leaves the degree-0 regime");
    AssociativityReport rep;
    const auto h01 = hom_space(P, chain[0], chain[1]);
    const auto h12 = hom_space(P, chain[1], chain[2]);
    const auto h23 = hom_space(P, chain[2], chain[3]);
    for (const auto& u : h01.generators())
        for (const auto& v : h12.generators())
            for (const auto& w : h23.generators()) {
                ++rep.triples_checked;
                const auto uv = compose_supported(u, v);
                const auto uv_w = compose_supported(uv.generator, w);
                const auto vw = compose_supported(v, w);
                const auto u_vw = compose_supported(u, vw.generator);
                const PosExact left = uv.weight * uv_w.weight;
                const PosExact right = vw.weight * u_vw.weight;
                const double disc = std::abs(log(left / right).to_double());
                rep.max_discrepancy = std::max(rep.max_discrepancy, disc);
                if (left != right || uv_w.generator != u_vw.generator) {
                    rep.pass = false;
                    if (rep.failures.size() < 16)
                        rep.failures.push_back(u.to_string() + " " + v.to_string() + " " + w.to_string() + ": " + left.to_string() +
                                               " vs " + right.to_string());
                }
            }
    return rep;
}

}  // namespace mirror_morse
