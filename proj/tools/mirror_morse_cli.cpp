// Command-line front end: hom, compose, table, verify, plot, dims.
// Exit codes: 0 pass, 1 verification failure, 2 usage error.

#include "mirror_morse/mirror_morse.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace mm = mirror_morse;
using nlohmann::json;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

std::vector<int> parse_ints(const std::string& text, char sep) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, sep)) {
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(item, &used);
        } catch (const std::exception&) {
            throw UsageError("not an integer: '" + item + "' in '" + text + "'");
        }
        if (used != item.size()) throw UsageError("not an integer: '" + item + "' in '" + text + "'");
        out.push_back(v);
    }
    if (out.empty()) throw UsageError("empty integer list");
    return out;
}

mm::LineObject parse_object(const mm::ProductPolytope& P, const std::string& text, char sep) {
    mm::LineObject L{parse_ints(text, sep)};
    if (L.labels.size() != P.factor_count())
        throw UsageError("object '" + text + "' needs " + std::to_string(P.factor_count()) + " labels for " + P.descriptor());
    return L;
}

// "0,1,2" on a single factor; "0:0,1:0,1:1" on products.
std::vector<mm::LineObject> parse_objects(const mm::ProductPolytope& P, const std::string& text) {
    std::vector<mm::LineObject> out;
    if (P.factor_count() == 1) {
        for (int a : parse_ints(text, ',')) out.push_back(mm::LineObject{{a}});
        return out;
    }
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_object(P, item, ':'));
    return out;
}

std::string point_text(const mm::ProductPolytope& P, const mm::HomGenerator& g) {
    std::string s = "(";
    bool first = true;
    for (std::size_t k = 0; k < g.pieces.size(); ++k)
        for (int j = 0; j < P.dim(k); ++j) {
            s += first ? "" : ",";
            first = false;
            s += g.pieces[k].point ? mm::to_string((*g.pieces[k].point)[static_cast<std::size_t>(j)]) : "*";
        }
    return s + ")";
}

std::string index_text(const mm::MultiIndex& I) {
    std::string s = "(";
    for (std::size_t j = 0; j < I.size(); ++j) s += (j ? "," : "") + std::to_string(I[j]);
    return s + ")";
}

std::vector<std::string> generator_faces(const mm::HomGenerator& g) {
    std::vector<std::optional<mm::RationalPoint>> pt;
    for (const auto& p : g.pieces) pt.push_back(p.point);
    return mm::detail::face_labels(pt);
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
    std::string s;
    for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? sep : "") + parts[i];
    return s;
}

void check_format(const std::string& f) {
    if (f != "json" && f != "csv" && f != "pretty") throw UsageError("unknown format '" + f + "' (json|csv|pretty)");
}

int cmd_hom(const std::string& space, const std::string& from, const std::string& to, const std::string& format) {
    check_format(format);
    const auto P = mm::ProductPolytope::parse(space);
    const auto a = parse_object(P, from, ',');
    const auto b = parse_object(P, to, ',');
    const auto h = mm::hom_space(P, a, b);
    std::uint64_t serre = 1;
    for (std::size_t k = 0; k < P.factor_count(); ++k) serre *= mm::serre_rank(a.labels[k], b.labels[k], P.dim(k));
    bool backward = false;
    for (std::size_t k = 0; k < P.factor_count(); ++k) backward = backward || a.labels[k] > b.labels[k];
    const std::string note = backward ? "serre_rank=" + std::to_string(serre) : "";

    if (format == "json") {
        json j{{"space", P.descriptor()}, {"from", a.labels}, {"to", b.labels}, {"generators", json::array()}};
        for (const auto& g : h.generators())
            j["generators"].push_back({{"index", g.index()}, {"point", point_text(P, g)}, {"degree", g.degree()}, {"boundary_faces", generator_faces(g)}});
        if (!note.empty()) j["note"] = note;
        std::cout << j.dump(2) << "\n";
    } else if (format == "csv") {
        std::cout << "index,point,degree,boundary_faces\n";
        for (const auto& g : h.generators())
            std::cout << '"' << index_text(g.index()) << "\",\"" << point_text(P, g) << "\"," << g.degree() << ",\"" << join(generator_faces(g), ";")
                      << "\"\n";
        if (!note.empty()) std::cout << "# " << note << "\n";
    } else {
        std::cout << "Hom(" << a.to_string() << ", " << b.to_string() << ") on " << P.descriptor() << ": " << h.size() << " generator(s)\n";
        for (const auto& g : h.generators())
            std::cout << "  " << index_text(g.index()) << " @ " << point_text(P, g) << "  degree " << g.degree() << "  faces "
                      << (g.is_identity() ? "-" : join(generator_faces(g), " ")) << "\n";
        if (!note.empty()) std::cout << "  note: " << note << "\n";
    }
    return kExitPass;
}

mm::HomGenerator find_generator(const mm::ProductPolytope& P, const mm::LineObject& a, const mm::LineObject& b, const mm::MultiIndex& I) {
    for (const auto& g : mm::hom_space(P, a, b).generators())
        if (g.index() == I) return g;
    throw UsageError("no generator with index " + index_text(I) + " in Hom(" + a.to_string() + ", " + b.to_string() + ")");
}

int cmd_compose(const std::string& space, const std::string& objects, const std::string& left, const std::string& right,
                const std::string& format, unsigned bits) {
    check_format(format);
    const auto P = mm::ProductPolytope::parse(space);
    const auto objs = parse_objects(P, objects);
    if (objs.size() != 3) throw UsageError("--objects needs exactly three objects");
    const auto gl = find_generator(P, objs[0], objs[1], parse_ints(left, ','));
    const auto gr = find_generator(P, objs[1], objs[2], parse_ints(right, ','));
    const auto outcome = mm::compose(gl, gr);

    json j{{"space", P.descriptor()}, {"left", gl.to_string()}, {"right", gr.to_string()}};
    if (const auto* u = std::get_if<mm::Unsupported>(&outcome)) {
        j["unsupported"] = u->reason;
    } else {
        const auto& s = std::get<mm::ScaledGenerator>(outcome);
        j["result"] = s.generator.to_string();
        j["index"] = s.generator.index();
        j["degree"] = s.generator.degree();
        j["weight"] = mm::to_json(s.weight, bits);
        if (P.factor_count() == 2) j["case"] = mm::to_string(mm::classify_product_case(gl, gr));
    }
    if (format == "json") {
        std::cout << j.dump(2) << "\n";
    } else if (format == "csv") {
        std::cout << "left,right,result,weight,approx\n";
        if (j.contains("result"))
            std::cout << '"' << gl.to_string() << "\",\"" << gr.to_string() << "\",\"" << j["result"].get<std::string>() << "\",\""
                      << std::get<mm::ScaledGenerator>(outcome).weight.to_string() << "\"," << j["weight"]["approx"].get<std::string>() << "\n";
        else
            std::cout << "# unsupported: " << j["unsupported"].get<std::string>() << "\n";
    } else {
        std::cout << "m2(" << gl.to_string() << ", " << gr.to_string() << ") = ";
        if (j.contains("result"))
            std::cout << std::get<mm::ScaledGenerator>(outcome).weight.to_string() << " * " << j["result"].get<std::string>() << "  ~ "
                      << j["weight"]["approx"].get<std::string>() << "\n";
        else
            std::cout << "unsupported (" << j["unsupported"].get<std::string>() << ")\n";
    }
    return kExitPass;
}

std::string table_csv(const json& t) {
    std::ostringstream os;
    os << "left,right,result,weight,approx,case\n";
    auto ref = [](const json& r) { return r["from"].dump() + "->" + r["to"].dump() + ":" + r["index"].dump(); };
    for (const auto& p : t["products"]) {
        std::string w;
        for (auto it = p["weight"]["factors"].begin(); it != p["weight"]["factors"].end(); ++it)
            w += (w.empty() ? "" : " ") + it.key() + "^" + it.value().get<std::string>();
        os << '"' << ref(p["left"]) << "\",\"" << ref(p["right"]) << "\",\"" << ref(p["result"]) << "\",\"" << w << "\","
           << p["weight"]["approx"].get<std::string>() << "," << (p["case"].is_null() ? "" : p["case"].get<std::string>()) << "\n";
    }
    return os.str();
}

int cmd_table(const std::string& space, const std::string& range, const std::string& out_dir, const std::string& format, unsigned bits) {
    check_format(format);
    const auto P = mm::ProductPolytope::parse(space);
    std::vector<mm::LabelRange> ranges;
    try {
        ranges = mm::parse_ranges(range);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    if (ranges.size() != P.factor_count())
        throw UsageError("--range needs one range per factor of " + P.descriptor());
    for (std::size_t k = 0; k < ranges.size(); ++k)
        if (ranges[k].hi - ranges[k].lo > P.dim(k))
            std::cerr << "warning: range on factor " << k + 1 << " exceeds the strongly exceptional window; the diff may be nonempty\n";
    const auto coll = mm::lexicographic_collection(ranges);
    const json morse = mm::to_json(mm::morse_structure_table(P, coll), bits);
    const json dg = mm::to_json(mm::dg_structure_table(P, coll), bits);
    const json diff = mm::diff_tables(morse, dg);

    if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        const std::filesystem::path dir(out_dir);
        std::ofstream(dir / "morse.json") << morse.dump(2) << "\n";
        std::ofstream(dir / "dg.json") << dg.dump(2) << "\n";
        std::ofstream(dir / "diff.json") << diff.dump(2) << "\n";
        if (format == "csv") {
            std::ofstream(dir / "morse.csv") << table_csv(morse);
            std::ofstream(dir / "dg.csv") << table_csv(dg);
        }
        std::cout << "wrote " << (dir / "morse.json").string() << ", " << (dir / "dg.json").string() << ", " << (dir / "diff.json").string()
                  << "; " << diff.size() << " difference(s)\n";
    } else if (format == "json") {
        std::cout << json{{"morse", morse}, {"dg", dg}, {"diff", diff}}.dump(2) << "\n";
    } else if (format == "csv") {
        std::cout << table_csv(morse);
    } else {
        std::cout << P.descriptor() << ", " << coll.size() << " objects, " << morse["products"].size() << " products\n";
        for (const auto& p : morse["products"])
            std::cout << "  " << p["left"]["index"].dump() << " * " << p["right"]["index"].dump() << " -> " << p["result"]["index"].dump() << "  "
                      << p["weight"]["approx"].get<std::string>() << (p["case"].is_null() ? "" : "  case " + p["case"].get<std::string>()) << "\n";
        std::cout << "diff: " << diff.size() << " difference(s)\n";
    }
    return diff.empty() ? kExitPass : kExitFailure;
}

int cmd_verify(const std::string& suite, int n_max, const std::string& format) {
    check_format(format);
    if (suite != "exact" && suite != "numeric" && suite != "all") throw UsageError("unknown suite '" + suite + "' (exact|numeric|all)");
    if (n_max < 1) throw UsageError("--n-max must be at least 1");
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<mm::CheckResult> results;
    if (suite != "numeric") {
        auto r = mm::run_exact_suite(n_max);
        results.insert(results.end(), r.begin(), r.end());
    }
    if (suite != "exact") {
        auto r = mm::run_numeric_suite(n_max);
        results.insert(results.end(), r.begin(), r.end());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool pass = true;
    for (const auto& r : results) pass = pass && r.pass;
    if (format == "json") {
        json j{{"suite", suite}, {"n_max", n_max}, {"pass", pass}, {"checks", json::array()}};
        for (const auto& r : results) j["checks"].push_back({{"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
        std::cout << j.dump(2) << "\n";
    } else if (format == "csv") {
        std::cout << "name,pass,detail\n";
        for (const auto& r : results) std::cout << '"' << r.name << "\"," << (r.pass ? "true" : "false") << ",\"" << r.detail << "\"\n";
    } else {
        for (const auto& r : results) std::cout << (r.pass ? "PASS  " : "FAIL  ") << r.name << "  (" << r.detail << ")\n";
        std::cout << (pass ? "all checks passed" : "verification FAILED") << " in " << secs << " s\n";
    }
    return pass ? kExitPass : kExitFailure;
}

int cmd_plot(const std::string& space, const std::string& triple, const std::string& out, unsigned bits) {
    const auto P = mm::ProductPolytope::parse(space);
    if (P.total_dim() > 2) throw UsageError("plot: total dimension " + std::to_string(P.total_dim()) + " > 2 is not supported");
    const auto objs = parse_objects(P, triple);
    if (objs.size() != 3) throw UsageError("--triple needs exactly three objects");
    const std::string svg = mm::plot_triple_svg(P, {objs[0], objs[1], objs[2]}, bits);
    if (out.empty()) {
        std::cout << svg;
    } else {
        std::ofstream f(out);
        if (!f) throw std::runtime_error("cannot write " + out);
        f << svg;
    }
    return kExitPass;
}

int cmd_dims(const std::string& space, const std::string& range, const std::string& format) {
    check_format(format);
    const auto P = mm::ProductPolytope::parse(space);
    std::vector<mm::LabelRange> ranges;
    try {
        ranges = mm::parse_ranges(range);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    if (ranges.size() != P.factor_count()) throw UsageError("--range needs one range per factor of " + P.descriptor());
    const auto coll = mm::lexicographic_collection(ranges);
    json rows = json::array();
    for (const auto& a : coll)
        for (const auto& b : coll) {
            const auto h = mm::hom_space(P, a, b);
            json ranks = json::object();
            for (const auto& [d, idx] : h.by_degree()) ranks[std::to_string(d)] = idx.size();
            json expected = json::object();
            for (const auto& [d, r] : mm::hom_ranks(P, a, b)) expected[std::to_string(d)] = r;
            rows.push_back({{"from", a.labels}, {"to", b.labels}, {"ranks", ranks}, {"expected", expected}});
        }
    bool agree = true;
    for (const auto& r : rows) agree = agree && r["ranks"] == r["expected"];
    if (format == "json") {
        std::cout << json{{"space", P.descriptor()}, {"pairs", rows}, {"agree", agree}}.dump(2) << "\n";
    } else if (format == "csv") {
        std::cout << "from,to,ranks,expected\n";
        for (const auto& r : rows)
            std::cout << '"' << r["from"].dump() << "\",\"" << r["to"].dump() << "\",\"" << r["ranks"].dump() << "\",\"" << r["expected"].dump() << "\"\n";
    } else {
        for (const auto& r : rows) std::cout << "  " << r["from"].dump() << " -> " << r["to"].dump() << "  " << r["ranks"].dump() << "\n";
        std::cout << (agree ? "ranks agree with the dimension formulas\n" : "rank MISMATCH\n");
    }
    return agree ? kExitPass : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Weighted Morse category of CP^n polytopes and its monomial model"};
    app.require_subcommand(1);
    std::string format = "pretty";
    unsigned bits = mm::precision_from_env();
    app.add_option("--format", format, "Output format: json|csv|pretty");
    app.add_option("--precision", bits, "Bits for decimal approximations (default: MIRROR_MORSE_PRECISION or 64)")->check(CLI::Range(24u, 100000u));

    std::string space, from, to, objects, left, right, range, out, suite = "all", triple;
    int n_max = 2;

    auto* hom = app.add_subcommand("hom", "List the generators of a hom space");
    hom->add_option("--space", space, "Space descriptor, e.g. P2 or P1xP2")->required();
    hom->add_option("--from", from, "Source labels, comma separated per factor")->required();
    hom->add_option("--to", to, "Target labels, comma separated per factor")->required();

    auto* compose = app.add_subcommand("compose", "Compute m2 of two generators");
    compose->add_option("--space", space)->required();
    compose->add_option("--objects", objects, "Three objects, e.g. 0,1,2 or 0:0,1:0,1:1")->required();
    compose->add_option("--left", left, "Multi-index of the first generator")->required();
    compose->add_option("--right", right, "Multi-index of the second generator")->required();

    auto* table = app.add_subcommand("table", "Morse and monomial structure tables with their diff");
    table->add_option("--space", space)->required();
    table->add_option("--range", range, "Label range per factor, e.g. 0..2 or 0..1,0..2")->required();
    table->add_option("--out", out, "Directory for morse.json, dg.json and diff.json");

    auto* verify = app.add_subcommand("verify", "Run verification suites");
    verify->add_option("--suite", suite, "exact|numeric|all");
    verify->add_option("--n-max", n_max, "Largest projective dimension to check");

    auto* plot = app.add_subcommand("plot", "SVG of a composable triple");
    plot->add_option("--space", space)->required();
    plot->add_option("--triple", triple, "Three objects, e.g. 0,1,2 or 0:0,1:0,1:1")->required();
    plot->add_option("--out", out, "Output SVG file (stdout when omitted)");

    auto* dims = app.add_subcommand("dims", "Hom ranks by degree over a collection");
    dims->add_option("--space", space)->required();
    dims->add_option("--range", range, "Label range per factor")->required();

    for (auto* sub : {hom, compose, table, verify, plot, dims}) {
        sub->add_option("--format", format, "Output format: json|csv|pretty");
        sub->add_option("--precision", bits, "Bits for decimal approximations")->check(CLI::Range(24u, 100000u));
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*hom) return cmd_hom(space, from, to, format);
        if (*compose) return cmd_compose(space, objects, left, right, format, bits);
        if (*table) return cmd_table(space, range, out, format, bits);
        if (*verify) return cmd_verify(suite, n_max, format);
        if (*plot) return cmd_plot(space, triple, out, bits);
        if (*dims) return cmd_dims(space, range, format);
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitUsage;
}
