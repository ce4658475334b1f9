#pragma once

// Full composition tables for a collection of objects, built once from the
// Morse side and once from the monomial (DG) side, in one shared JSON schema
// so the two can be diffed mechanically.

#include "mirror_morse/dg_model.hpp"
#include "mirror_morse/json_io.hpp"
#include "mirror_morse/morse_category.hpp"

#include <json.hpp>

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <cctype>
#include <tuple>
#include <vector>

namespace mirror_morse {

struct LabelRange {
    int lo = 0;
    int hi = 0;
};

/// Parses "0..2" or "0..1,0..2" (one range per factor).
inline std::vector<LabelRange> parse_ranges(const std::string& text) {
    std::vector<LabelRange> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto comma = text.find(',', pos);
        std::string tok = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        std::erase_if(tok, [](unsigned char c) { return std::isspace(c); });
        const auto dots = tok.find("..");
        try {
            if (dots == std::string::npos) {
                std::size_t used = 0;
                const int v = std::stoi(tok, &used);
                if (used != tok.size()) throw std::invalid_argument(tok);
                out.push_back({v, v});
            } else {
                std::size_t used = 0;
                const std::string lo = tok.substr(0, dots), hi = tok.substr(dots + 2);
                LabelRange r{std::stoi(lo, &used), 0};
                if (used != lo.size()) throw std::invalid_argument(tok);
                r.hi = std::stoi(hi, &used);
                if (used != hi.size()) throw std::invalid_argument(tok);
                out.push_back(r);
            }
        } catch (const std::logic_error&) {
            throw std::invalid_argument("malformed label range: " + text);
        }
        if (out.back().lo > out.back().hi) throw std::invalid_argument("empty label range: " + tok);
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

/// {O(a_1,...,a_r)} over the given ranges, in lexicographic order.
inline std::vector<LineObject> lexicographic_collection(const std::vector<LabelRange>& ranges) {
    if (ranges.empty()) throw std::invalid_argument("at least one label range is required");
    std::vector<LineObject> out{LineObject{}};
    for (const auto& r : ranges) {
        if (r.lo > r.hi) throw std::invalid_argument("empty label range");
        std::vector<LineObject> next;
        for (const auto& head : out)
            for (int v = r.lo; v <= r.hi; ++v) {
                auto L = head;
                L.labels.push_back(v);
                next.push_back(std::move(L));
            }
        out = std::move(next);
    }
    return out;
}

struct GeneratorRef {
    LineObject from;
    LineObject to;
    MultiIndex index;
};

struct TableGenerator {
    GeneratorRef ref;
    std::vector<std::optional<RationalPoint>> point;  // per factor; nullopt = whole factor ("*" in JSON)
    int degree = 0;
    std::vector<std::string> boundary_faces;
};

struct TableHom {
    LineObject from;
    LineObject to;
    std::vector<TableGenerator> generators;
};

struct TableProduct {
    GeneratorRef left;
    GeneratorRef right;
    GeneratorRef result;
    PosExact weight;
    std::optional<std::string> case_label;
};

struct StructureTable {
    std::string space;
    std::string side;  // "morse" | "dg"
    std::vector<LineObject> objects;
    std::vector<TableHom> homs;
    std::vector<TableProduct> products;
};

namespace detail {

inline std::vector<std::string> face_labels(const std::vector<std::optional<RationalPoint>>& point) {
    std::vector<std::string> out;
    for (std::size_t k = 0; k < point.size(); ++k) {
        if (!point[k]) continue;
        const auto face = factor_face(*point[k]);
        if (!face) throw std::logic_error("generator point outside the polytope");
        FaceDescriptor fd;
        fd.factors.resize(point.size());
        fd.factors[k] = *face;
        for (auto& s : fd.labels()) out.push_back(std::move(s));
    }
    return out;
}

inline std::optional<std::string> case_label(const ProductPolytope& P, const LineObject& a, const LineObject& b, const LineObject& c) {
    if (P.factor_count() != 2) return std::nullopt;
    return to_string(classify_product_case(a, b, c));
}

inline GeneratorRef ref_of(const HomGenerator& g) { return {g.source, g.target, g.index()}; }
inline GeneratorRef ref_of(const MonomialClass& m) { return {m.source(), m.target(), m.index()}; }

}  // namespace detail

/// Hom tables and m_2 over every composable pair in the collection, computed
/// from intersection points and gradient trees.
inline StructureTable morse_structure_table(const ProductPolytope& P, const std::vector<LineObject>& collection) {
    StructureTable t{P.descriptor(), "morse", collection, {}, {}};
    const std::size_t N = collection.size();
    std::vector<std::vector<HomSpace>> homs(N);
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) homs[i].push_back(hom_space(P, collection[i], collection[j]));

    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) {
            if (homs[i][j].empty()) continue;
            TableHom th{collection[i], collection[j], {}};
            for (const auto& g : homs[i][j].generators()) {
                TableGenerator tg{detail::ref_of(g), {}, g.degree(), {}};
                for (const auto& p : g.pieces) tg.point.push_back(p.point);
                tg.boundary_faces = detail::face_labels(tg.point);
                th.generators.push_back(std::move(tg));
            }
            std::sort(th.generators.begin(), th.generators.end(),
                      [](const auto& x, const auto& y) { return x.ref.index < y.ref.index; });
            t.homs.push_back(std::move(th));
        }

    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j)
            for (std::size_t k = 0; k < N; ++k) {
                std::vector<TableProduct> block;
                for (const auto& u : homs[i][j].generators())
                    for (const auto& v : homs[j][k].generators()) {
                        auto c = compose(u, v);
                        const auto* sg = std::get_if<ScaledGenerator>(&c);
                        if (!sg) continue;
                        block.push_back(TableProduct{detail::ref_of(u), detail::ref_of(v), detail::ref_of(sg->generator), sg->weight,
                                                     detail::case_label(P, collection[i], collection[j], collection[k])});
                    }
                std::sort(block.begin(), block.end(), [](const auto& x, const auto& y) {
                    return std::tie(x.left.index, x.right.index) < std::tie(y.left.index, y.right.index);
                });
                for (auto& p : block) t.products.push_back(std::move(p));
            }
    return t;
}

/// The same table from monomial bases, their maximizers and c_u c_v / c_w.
inline StructureTable dg_structure_table(const ProductPolytope& P, const std::vector<LineObject>& collection) {
    StructureTable t{P.descriptor(), "dg", collection, {}, {}};
    const std::size_t N = collection.size();
    std::vector<std::vector<std::vector<MonomialClass>>> basis(N);
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) basis[i].push_back(monomial_basis(P, collection[i], collection[j]));

    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) {
            if (basis[i][j].empty()) continue;
            TableHom th{collection[i], collection[j], {}};
            for (const auto& m : basis[i][j]) {
                TableGenerator tg{detail::ref_of(m), {}, 0, {}};
                for (const auto& f : m.factors) tg.point.push_back(maximizer(f));
                tg.boundary_faces = detail::face_labels(tg.point);
                th.generators.push_back(std::move(tg));
            }
            std::sort(th.generators.begin(), th.generators.end(),
                      [](const auto& x, const auto& y) { return x.ref.index < y.ref.index; });
            t.homs.push_back(std::move(th));
        }

    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j)
            for (std::size_t k = 0; k < N; ++k) {
                std::vector<TableProduct> block;
                for (const auto& u : basis[i][j])
                    for (const auto& v : basis[j][k]) {
                        const auto prod = multiply_bases(normalize(u), normalize(v));
                        block.push_back(TableProduct{detail::ref_of(u), detail::ref_of(v), detail::ref_of(prod.result), prod.coefficient,
                                                     detail::case_label(P, collection[i], collection[j], collection[k])});
                    }
                std::sort(block.begin(), block.end(), [](const auto& x, const auto& y) {
                    return std::tie(x.left.index, x.right.index) < std::tie(y.left.index, y.right.index);
                });
                for (auto& p : block) t.products.push_back(std::move(p));
            }
    return t;
}

inline nlohmann::json to_json(const GeneratorRef& r) {
    return {{"from", r.from.labels}, {"to", r.to.labels}, {"index", r.index}};
}

inline nlohmann::json to_json(const StructureTable& t, unsigned precision_bits) {
    const auto P = ProductPolytope::parse(t.space);
    nlohmann::json j;
    j["space"] = t.space;
    j["side"] = t.side;
    j["objects"] = nlohmann::json::array();
    for (const auto& L : t.objects) j["objects"].push_back(L.labels);
    j["homs"] = nlohmann::json::array();
    for (const auto& h : t.homs) {
        nlohmann::json jh{{"from", h.from.labels}, {"to", h.to.labels}, {"generators", nlohmann::json::array()}};
        for (const auto& g : h.generators) {
            nlohmann::json pt = nlohmann::json::array();
            for (std::size_t k = 0; k < g.point.size(); ++k) {
                if (g.point[k])
                    for (const auto& q : *g.point[k]) pt.push_back(to_string(q));
                else
                    for (int d = 0; d < P.dim(k); ++d) pt.push_back("*");
            }
            jh["generators"].push_back({{"index", g.ref.index}, {"point", pt}, {"degree", g.degree}, {"boundary_faces", g.boundary_faces}});
        }
        j["homs"].push_back(std::move(jh));
    }
    j["products"] = nlohmann::json::array();
    for (const auto& p : t.products) {
        nlohmann::json jp{{"left", to_json(p.left)},
                          {"right", to_json(p.right)},
                          {"result", to_json(p.result)},
                          {"weight", to_json(p.weight, precision_bits)}};
        jp["case"] = p.case_label ? nlohmann::json(*p.case_label) : nlohmann::json(nullptr);
        j["products"].push_back(std::move(jp));
    }
    return j;
}

namespace detail {

inline void diff_into(const nlohmann::json& a, const nlohmann::json& b, const std::string& path, nlohmann::json& out) {
    if (a.type() != b.type()) {
        out.push_back({{"path", path}, {"morse", a}, {"dg", b}});
        return;
    }
    if (a.is_object()) {
        for (auto it = a.begin(); it != a.end(); ++it) {
            if (path.empty() && it.key() == "side") continue;
            const std::string p = path + "/" + it.key();
            if (!b.contains(it.key())) out.push_back({{"path", p}, {"morse", it.value()}, {"dg", nullptr}});
            else diff_into(it.value(), b.at(it.key()), p, out);
        }
        for (auto it = b.begin(); it != b.end(); ++it)
            if (!a.contains(it.key()) && !(path.empty() && it.key() == "side"))
                out.push_back({{"path", path + "/" + it.key()}, {"morse", nullptr}, {"dg", it.value()}});
        return;
    }
    if (a.is_array()) {
        const std::size_t n = std::min(a.size(), b.size());
        for (std::size_t i = 0; i < n; ++i) diff_into(a[i], b[i], path + "/" + std::to_string(i), out);
        for (std::size_t i = n; i < a.size(); ++i) out.push_back({{"path", path + "/" + std::to_string(i)}, {"morse", a[i]}, {"dg", nullptr}});
        for (std::size_t i = n; i < b.size(); ++i) out.push_back({{"path", path + "/" + std::to_string(i)}, {"morse", nullptr}, {"dg", b[i]}});
        return;
    }
    if (a != b) out.push_back({{"path", path}, {"morse", a}, {"dg", b}});
}

}  // namespace detail

/// Structural difference between two serialized tables, ignoring "side".
/// Each entry is {"path", "morse", "dg"}; empty array when the tables agree.
inline nlohmann::json diff_tables(const nlohmann::json& morse, const nlohmann::json& dg) {
    nlohmann::json out = nlohmann::json::array();
    detail::diff_into(morse, dg, "", out);
    return out;
}

}  // namespace mirror_morse
