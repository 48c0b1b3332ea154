#include "tribill/service.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "tribill/acceptance.hpp"
#include "tribill/families.hpp"
#include "tribill/homology.hpp"
#include "tribill/rescaling.hpp"
#include "tribill/tiles.hpp"
#include "tribill/unfolding.hpp"
#include "tribill/veech.hpp"
#include "tribill/word.hpp"

namespace tribill {

namespace {

const char* kVersion = "1.0.0";

json pt(cplx z) { return json::array({z.real(), z.imag()}); }
json pt(Vec2i v) { return json::array({v.x, v.y}); }
json pt(const ParameterPoint& X) { return json::array({X.x1, X.x2}); }

template <size_t N>
json arr(const std::array<double, N>& a) {
    json j = json::array();
    for (double v : a) j.push_back(v);
    return j;
}

// Parameters shared by every operation that takes a word.
std::vector<ParamSpec> word_params() {
    return {
        {"word", ParamType::String, false, nullptr, "word over {1,2,3}; exclusive with family", {}},
        {"family", ParamType::String, false, nullptr, "family kind; exclusive with word", {"A", "B", "C", "Y", "U", "W"}},
        {"n", ParamType::Integer, false, nullptr, "family index n", {}},
        {"m", ParamType::Integer, false, 1, "Y family index m", {}},
        {"k", ParamType::Integer, false, 0, "W family index k", {}},
    };
}

std::vector<ParamSpec> point_params() {
    return {
        {"x1", ParamType::Number, false, nullptr, "first small angle", {}},
        {"x2", ParamType::Number, false, nullptr, "second small angle", {}},
        {"at", ParamType::String, false, nullptr, "named point, veech:N; exclusive with x1, x2", {}},
    };
}

template <class... V>
std::vector<ParamSpec> concat(V... parts) {
    std::vector<ParamSpec> out;
    (out.insert(out.end(), parts.begin(), parts.end()), ...);
    return out;
}

FamilyId family_of(const json& p) {
    if (!p.contains("n")) fail_arg("family requires n");
    std::string kind = p["family"];
    int n = p["n"];
    if (kind == "Y") return parse_family(fmt::format("Y:{}:{}", n, p.value("m", 1)));
    if (kind == "W") return parse_family(fmt::format("W:{}:{}", n, p.value("k", 0)));
    return parse_family(fmt::format("{}:{}", kind, n));
}

Word word_of(const json& p) {
    bool has_word = p.contains("word"), has_family = p.contains("family");
    if (has_word == has_family) fail_arg("exactly one of word and family is required");
    if (has_word) {
        Word w = p["word"];
        validate_word(w);
        return w;
    }
    return gen_family(family_of(p));
}

std::string word_name(const json& p) { return p.contains("word") ? std::string(p["word"]) : family_name(family_of(p)); }

ParameterPoint point_of(const json& p, bool general = false) {
    bool has_xy = p.contains("x1") || p.contains("x2"), has_at = p.contains("at");
    if (has_xy == has_at) fail_arg("give either x1 and x2 or at");
    ParameterPoint X;
    if (has_at) {
        std::string at = p["at"];
        if (at.rfind("veech:", 0) != 0) fail_arg("at must look like veech:N");
        int n = 0;
        try {
            size_t used = 0;
            n = std::stoi(at.substr(6), &used);
            if (used != at.size() - 6) throw std::invalid_argument(at);
        } catch (const std::exception&) {
            fail_arg("at must look like veech:N");
        }
        if (n < 2) fail_arg("veech:N needs N >= 2");
        X = ParameterPoint::veech(n);
    } else {
        if (!p.contains("x1") || !p.contains("x2")) fail_arg("both x1 and x2 are required");
        X = {p["x1"].get<double>(), p["x2"].get<double>()};
    }
    check_point(X, general);
    return X;
}

int need_int(const json& p, const char* name) {
    if (!p.contains(name)) fail_arg(fmt::format("{} is required", name));
    return p[name];
}

void check_range(int v, int lo, int hi, const char* name) {
    if (v < lo || v > hi) fail_arg(fmt::format("{} must be in [{}, {}]", name, lo, hi));
}

Reply json_reply(json j) { return {std::move(j), {}, {}}; }

Reply op_stability(const json& p) {
    Word w = word_of(p);
    bool parity = is_stable_parity(w), hex = is_stable_hexpath(w);
    if (parity != hex) throw Error(ErrorKind::Internal, "stability tests disagree");
    return json_reply({{"word", w}, {"length", w.size()}, {"stable", parity}});
}

json family_entry(const FamilyId& id) {
    Word w = gen_family(id);
    return {{"name", family_name(id)}, {"word", w}, {"length", w.size()}, {"stable", is_stable_parity(w)}};
}

Reply op_families(const json& p) {
    if (p.contains("family")) return json_reply(family_entry(family_of(p)));
    int n = need_int(p, "n");
    check_range(n, 2, 64, "n");
    int count = p["count"];
    check_range(count, 1, 16, "count");
    json list = json::array();
    auto add = [&](FamilyKind kind, int idx) { list.push_back(family_entry({kind, n, idx})); };
    add(FamilyKind::A, 0);
    add(FamilyKind::U, 0);
    for (int m = 1; m <= count; ++m) add(FamilyKind::Y, m);
    if (n >= 4) {
        add(FamilyKind::B, 0);
        add(FamilyKind::C, 0);
    }
    if (n >= 3)
        for (int k = 0; k < count; ++k) add(FamilyKind::W, k);
    return json_reply({{"n", n}, {"families", list}});
}

Reply op_membership(const json& p) {
    Word w = word_of(p);
    ParameterPoint X = point_of(p);
    Membership m = membership_geometric(w, X, p["raw"]);
    double tol = p["tolerance"];
    return json_reply({{"word", word_name(p)},
                       {"point", pt(X)},
                       {"member", m.member && m.separation > tol},
                       {"separation", m.separation}});
}

Reply op_unfold(const json& p) {
    Word w = word_of(p);
    ParameterPoint X = point_of(p, p["general"]);
    UnfoldOptions opt;
    opt.periods = p["periods"];
    check_range(opt.periods, 1, 12, "periods");
    opt.general_region = p["general"];
    Unfolding u(w, X, opt);
    if (p["format"] == "svg") return {{}, unfolding_svg(u), "image/svg+xml"};
    json verts = json::array(), corners = json::array(), tris = json::array(), labels = json::array();
    for (size_t v = 0; v < u.vertex_count(); ++v) {
        verts.push_back(pt(u.normalized(int(v))));
        corners.push_back(std::string(1, "ABC"[u.corner_type(int(v))]));
    }
    for (size_t i = 0; i < u.triangle_count(); ++i) {
        const auto& t = u.triangle(i);
        tris.push_back(json::array({t[0], t[1], t[2]}));
        labels.push_back(pt(u.long_label(i)));
    }
    json out = {{"word", u.word()},
                {"point", pt(X)},
                {"period", u.period()},
                {"periods", u.periods()},
                {"stable", u.stable()},
                {"holonomy", pt(u.holonomy())},
                {"vertices", verts},
                {"corners", corners},
                {"triangles", tris},
                {"long_labels", labels},
                {"top", u.top()},
                {"bottom", u.bottom()}};
    if (u.stable()) {
        Membership m = membership(u);
        out["member"] = m.member;
        out["separation"] = m.separation;
    }
    return json_reply(out);
}

json tableau_json(const FourierTableau& t) {
    json j = json::array();
    for (const auto& [v, w] : t.terms()) j.push_back(json::array({v.x, v.y, w}));
    return j;
}

Reply op_defining(const json& p) {
    std::string kind = p["kind"];
    int n = need_int(p, "n");
    if (kind == "a_line") {
        check_range(n, 2, 64, "n");
        ALineCheck c = a_line_check(n, p["samples"]);
        return json_reply({{"n", n}, {"scale", c.scale}, {"max_error", c.max_error}, {"sign_ok", c.sign_ok}});
    }
    if (kind == "b_master") {
        check_range(n, 4, 256, "n");
        MasterLists m = master_lists(n);
        cplx q = master_holonomy(n);
        cplx w = TrigConstants(n).omega;
        cplx want = 8.0 * w + 4.0 * std::pow(w, 3) + 6.0 / w + 2.0 / std::pow(w, 3);
        json L = json::array(), V = json::array();
        for (int i = 0; i < 20; ++i) {
            L.push_back(m.L[size_t(i)]);
            V.push_back(pt(m.vertex[size_t(i)]));
        }
        return json_reply({{"n", n}, {"L", L}, {"vertices", V}, {"Q", pt(q)}, {"closed_form_error", std::abs(q - want)}});
    }
    if (kind == "b_leaders") {
        check_range(n, 4, 64, "n");
        LeaderReport r = leaders_B(n);
        json ls = json::array();
        for (const Leader& l : r.leaders)
            ls.push_back({{"vertex", l.vertex},
                          {"top", l.top},
                          {"height", l.height},
                          {"beta", l.beta},
                          {"delta", l.delta},
                          {"addresses", l.addresses}});
        return json_reply({{"n", n},
                           {"leaders", ls},
                           {"spread", r.spread},
                           {"separation", r.separation},
                           {"superior_count", r.superior_count}});
    }
    if (kind == "b_derivatives") {
        check_range(n, 4, 64, "n");
        FinalDerivatives d = final_derivatives(n);
        auto mat = [](const std::array<std::array<double, 3>, 3>& m) {
            json j = json::array();
            for (const auto& row : m) j.push_back(arr(row));
            return j;
        };
        return json_reply({{"n", n},
                           {"d1", mat(d.d1)},
                           {"d2", mat(d.d2)},
                           {"signs_ok", d.signs_ok},
                           {"max_fd_rel_error", d.max_fd_rel_error}});
    }
    if (kind == "h11") {
        check_range(n, 4, 64, "n");
        const double v = kPi / (2.0 * n);
        int samples = p["samples"];
        check_range(samples, 2, 100000, "samples");
        std::vector<double> ys;
        for (int i = 0; i < samples; ++i) ys.push_back(v * (0.5 + double(i) / (samples - 1)));
        H11Report h = H11_on_line(n, ys);
        return json_reply({{"n", n}, {"max_residual", h.max_residual}, {"off_line", h.off_line}, {"bijection", h.bijection}});
    }
    // w_pair
    check_range(n, 3, 32, "n");
    int k = p["k"];
    check_range(k, 0, 64, "k");
    std::string pair = p["pair"];
    DefiningFunction df = w_pair_function(n, k, pair);
    json out = {{"n", n}, {"k", k}, {"pair", pair}, {"d", df.d}, {"P", tableau_json(df.P)}, {"Q", tableau_json(df.Q)}};
    if (p.contains("x1") || p.contains("at")) {
        ParameterPoint X = point_of(p);
        out["point"] = pt(X);
        out["F"] = df.F(X);
        out["F_normalized"] = df.F_normalized(X);
        out["dF"] = json::array({df.dF(X, 1), df.dF(X, 2)});
    }
    return json_reply(out);
}

Reply op_tile(const json& p) {
    Word w = word_of(p);
    Region r{p["x1min"], p["x1max"], p["x2min"], p["x2max"]};
    if (!(r.x1max > r.x1min) || !(r.x2max > r.x2min)) fail_arg("region must have positive area");
    int nx = p["nx"], ny = p["ny"];
    check_range(nx, 1, 4096, "nx");
    check_range(ny, 1, 4096, "ny");
    TileRaster t = scan(w, r, nx, ny);
    if (p["format"] == "svg") return {{}, raster_svg(t), "image/svg+xml"};
    if (p["format"] == "png") return {{}, raster_png_bytes(t), "image/png"};
    json rows = json::array();
    for (int j = 0; j < ny; ++j) {
        std::string row;
        for (int i = 0; i < nx; ++i) row += t.at(i, j) ? '1' : '0';
        rows.push_back(row);
    }
    json out = {{"word", word_name(p)},
                {"region", {r.x1min, r.x1max, r.x2min, r.x2max}},
                {"nx", nx},
                {"ny", ny},
                {"rows", rows},
                {"count", t.count()},
                {"area", double(t.count()) * t.cell_width() * t.cell_height()}};
    if (p["boundary"]) {
        json lines = json::array();
        for (const Polyline& l : boundary_polyline(t)) {
            json pl = json::array();
            for (const ParameterPoint& q : l) pl.push_back(pt(q));
            lines.push_back(pl);
        }
        out["boundary"] = lines;
    }
    return json_reply(out);
}

Reply op_coverage(const json& p) {
    int n = need_int(p, "n");
    check_range(n, 2, 64, "n");
    if (!p.contains("x")) fail_arg("x is required");
    double x = p["x"];
    int m_max = p["m_max"];
    check_range(m_max, 1, 1024, "m_max");
    std::optional<int> m = coverage_Y(n, x, m_max);
    json out = {{"n", n}, {"x", x}, {"covered", bool(m)}};
    out["m"] = m ? json(*m) : json(nullptr);
    return json_reply(out);
}

Reply op_quadrant(const json& p) {
    int n = need_int(p, "n");
    check_range(n, 3, 64, "n");
    Word w = p.contains("word") || p.contains("family") ? word_of(p) : Word{};
    Quadrant q{p["s1"], p["s2"]};
    if (std::abs(q.s1) != 1 || std::abs(q.s2) != 1) fail_arg("s1 and s2 must be +1 or -1");
    if (w.empty()) {
        if (q.s1 > 0 && q.s2 > 0) fail_arg("the (+,+) quadrant has no single covering word");
        w = q.s1 < 0 && q.s2 < 0 ? gen_A(n) : q.s1 < 0 ? gen_B(n) : gen_C(n);
    }
    int res = p["res"];
    check_range(res, 8, 2048, "res");
    QuadrantCoverage c = quadrant_epsilon(w, n, q, res);
    return json_reply({{"n", n},
                       {"quadrant", {q.s1, q.s2}},
                       {"epsilon", c.epsilon},
                       {"halvings", c.halvings},
                       {"cells_checked", c.cells_checked},
                       {"misses_at_start", c.misses_at_start}});
}

json quad_json(const LimitQuadrilateral& q) {
    json f = json::array(), v = json::array(), d = json::array();
    for (const auto& r : q.functions) f.push_back(arr(r));
    for (const auto& r : q.vertices) v.push_back(arr(r));
    for (const auto& r : q.dot) d.push_back(arr(r));
    PivotStrip s = pivot_strip(q.n);
    return {{"n", q.n},     {"zeta", q.zeta},  {"a", q.a},          {"mu", q.mu},       {"sigma", q.sigma},
            {"beta", q.beta}, {"functions", f}, {"vertices", v},     {"dot", d},         {"area", q.area()},
            {"strip_C", s.C}};
}

Reply op_omega(const json& p) {
    int n = need_int(p, "n");
    check_range(n, 3, 256, "n");
    json out = quad_json(omega(n));
    OmegaChecks c = check_omega(n);
    out["checks"] = {{"pattern", c.pattern}, {"touches_strip", c.touches_strip}, {"symmetric", c.symmetric}};
    return json_reply(out);
}

Reply op_rescale(const json& p) {
    std::string what = p["what"];
    int n = need_int(p, "n");
    check_range(n, 3, 32, "n");
    if (what == "qrt") {
        std::string pair = p["pair"];
        QrtReport r = qrt_report(n, pair);
        json sup = json::array();
        for (auto [k, e] : r.sup_errors) sup.push_back({{"k", k}, {"sup_error", e}});
        return json_reply({{"n", n},
                           {"pair", pair},
                           {"G", {r.result.g0, r.result.g1, r.result.g2}},
                           {"expected", arr(expected_limit(n, pair))},
                           {"Delta", {r.result.Delta1, r.result.Delta2}},
                           {"fd_delta", arr(r.fd_delta)},
                           {"sup_errors", sup}});
    }
    if (what == "strip") return json_reply({{"n", n}, {"C", pivot_strip(n).C}});
    int k = p["k"];
    check_range(k, 1, 400, "k");
    int res = p["res"];
    check_range(res, 8, 2000, "res");
    OmegaComparison c = omega_comparison(n, k, res);
    return json_reply({{"n", n},
                       {"k", k},
                       {"res", res},
                       {"omega_area", c.omega_area},
                       {"tile_area", c.tile_area},
                       {"sym_diff_area", c.sym_diff_area},
                       {"ratio", c.ratio()}});
}

json class_json(const ClassVector& v) {
    json g = json::object();
    for (int k = 1 - v.n; k <= v.n - 1; ++k) g[std::to_string(k)] = v.g(k);
    return {{"b1", v.b(1)}, {"b-1", v.b(-1)}, {"g", g}};
}

json bfs_json(const BfsReport& b) {
    json j = {{"n", b.n},
              {"depth", b.depth},
              {"distinct", b.distinct},
              {"distinct_mod_2n", b.distinct_mod_2n},
              {"invariant_holds", b.invariant_holds},
              {"stable_found", b.stable_found}};
    if (b.stable) j["stable"] = {{"word", to_string(b.stable->first)}, {"k", b.stable->second}};
    return j;
}

Reply op_homology(const json& p) {
    std::string what = p["what"];
    int n = need_int(p, "n");
    check_range(n, 2, 64, "n");
    CohomologyReading reading = p["reading"] == "substitution" ? CohomologyReading::Substitution : CohomologyReading::Dual;
    int depth = p["depth"];
    check_range(depth, 0, 14, "depth");
    if (what == "certificate") {
        Certificate c = certificate(n, depth);
        json out = {{"n", n}, {"power_of_two", c.power_of_two}};
        if (!c.power_of_two) {
            out["formula"] = {{"word", to_string(c.formula_word)},
                              {"k", c.formula_k},
                              {"coefficients", c.formula_coefficients},
                              {"coefficients_substitution", c.formula_coefficients_substitution},
                              {"verified", c.formula_verified}};
        }
        if (c.witness) {
            out["witness"] = {{"word", to_string(c.witness->first)},
                              {"k", c.witness->second},
                              {"class", class_json(c.witness_class)},
                              {"phi", c.witness_phi}};
        } else {
            out["witness"] = nullptr;
        }
        if (c.bfs) out["bfs"] = bfs_json(*c.bfs);
        return json_reply(out);
    }
    if (what == "bfs") return json_reply(bfs_json(homology_bfs(n, depth)));
    if (!p.contains("word")) fail_arg("word is required");
    GeneratorWord w = parse_generator_word(p["word"]);
    if (what == "stable") {
        int k = p["k"];
        if (k <= -n || k >= n) fail_arg(fmt::format("k must be in ({}, {})", -n, n));
        auto c = stability_coefficients(w, k, n, reading);
        return json_reply({{"n", n}, {"word", to_string(w)}, {"k", k}, {"coefficients", c}, {"stable", c[0] == 0 && c[1] == 0}});
    }
    InvariantCheck ic = instability_invariant(w, n);
    json rs = json::array();
    for (const RS& a : ic.rs) rs.push_back({a.r, a.s});
    FoldingClass phi = phi_star(n);
    return json_reply({{"n", n},
                       {"word", to_string(w)},
                       {"holds", ic.holds},
                       {"rs", rs},
                       {"violation", ic.violation},
                       {"image", {class_json(act_word_star(w, phi.phi1)), class_json(act_word_star(w, phi.phim1))}}});
}

Reply op_verify(const json& p) {
    std::vector<int> ids;
    std::string list = p["criteria"];
    if (list != "all") {
        std::stringstream ss(list);
        std::string item;
        while (std::getline(ss, item, ',')) {
            try {
                size_t used = 0;
                int id = std::stoi(item, &used);
                if (used != item.size()) throw std::invalid_argument(item);
                check_range(id, 1, kCriterionCount, "criterion");
                ids.push_back(id);
            } catch (const std::invalid_argument&) {
                fail_arg("criteria must be 'all' or a comma-separated list of numbers");
            } catch (const std::out_of_range&) {
                fail_arg("criteria must be 'all' or a comma-separated list of numbers");
            }
        }
    }
    json res = json::array();
    int passed = 0;
    for (const CriterionResult& r : run_acceptance(ids)) {
        res.push_back({{"id", r.id}, {"title", r.title}, {"pass", r.pass}, {"details", r.details}});
        passed += r.pass;
    }
    return json_reply({{"suite", "primary"}, {"results", res}, {"passed", passed}, {"total", res.size()}});
}

std::vector<OpSpec> build_registry() {
    const ParamSpec tolerance{"tolerance", ParamType::Number, false, kHeightTol, "separation margin for membership", {}};
    std::vector<OpSpec> ops;
    ops.push_back({"stability", "Stability of a word by letter parity and hexpath closure", word_params(), op_stability});
    ops.push_back({"families",
                   "Family words; a single family or every family at n",
                   concat(word_params(), std::vector<ParamSpec>{{"count", ParamType::Integer, false, 3,
                                                                 "number of Y and W members listed", {}}}),
                   [](const json& p) {
                       if (p.contains("word")) fail_arg("families takes no word");
                       return op_families(p);
                   }});
    ops.push_back({"membership",
                   "Whether a parameter point lies in the orbit tile of a word",
                   concat(word_params(), point_params(),
                          std::vector<ParamSpec>{
                              {"raw", ParamType::Boolean, false, false, "do not square odd words", {}}, tolerance}),
                   op_membership});
    ops.push_back({"unfold",
                   "Unfolding of a word at a parameter point",
                   concat(word_params(), point_params(),
                          std::vector<ParamSpec>{
                              {"periods", ParamType::Integer, false, 3, "number of periods unfolded", {}},
                              {"general", ParamType::Boolean, false, false, "allow x1 + x2 up to pi", {}},
                              {"format", ParamType::String, false, "json", "output format", {"json", "svg"}}}),
                   op_unfold});
    ops.push_back({"defining",
                   "Defining functions and the identities near Veech points",
                   concat(std::vector<ParamSpec>{
                              {"kind", ParamType::String, true, nullptr, "quantity",
                               {"a_line", "b_master", "b_leaders", "b_derivatives", "h11", "w_pair"}},
                              {"n", ParamType::Integer, true, nullptr, "Veech index", {}},
                              {"k", ParamType::Integer, false, 0, "W family index", {}},
                              {"pair", ParamType::String, false, "a1:b2", "W pair",
                               {"a1:b2", "b2:b3", "b3:a4", "a1:b1", "a2:b2", "a3:b3", "a4:b4"}},
                              {"samples", ParamType::Integer, false, 200, "grid size", {}}},
                          point_params()),
                   op_defining});
    ops.push_back({"tile",
                   "Raster of an orbit tile over a region",
                   concat(word_params(),
                          std::vector<ParamSpec>{
                              {"x1min", ParamType::Number, true, nullptr, "region", {}},
                              {"x1max", ParamType::Number, true, nullptr, "region", {}},
                              {"x2min", ParamType::Number, true, nullptr, "region", {}},
                              {"x2max", ParamType::Number, true, nullptr, "region", {}},
                              {"nx", ParamType::Integer, false, 128, "columns", {}},
                              {"ny", ParamType::Integer, false, 128, "rows", {}},
                              {"boundary", ParamType::Boolean, false, false, "include boundary polylines", {}},
                              {"format", ParamType::String, false, "json", "output format", {"json", "svg", "png"}}}),
                   op_tile});
    ops.push_back({"coverage",
                   "Smallest m with (x, x) in the tile of the squared Y_{n,m}",
                   {{"n", ParamType::Integer, true, nullptr, "index", {}},
                    {"x", ParamType::Number, true, nullptr, "diagonal coordinate", {}},
                    {"m_max", ParamType::Integer, false, 64, "largest m tried", {}}},
                   op_coverage});
    ops.push_back({"quadrant",
                   "Largest working epsilon for a quadrant of V_n",
                   concat(word_params(), std::vector<ParamSpec>{{"s1", ParamType::Integer, true, nullptr, "sign", {}},
                                                                {"s2", ParamType::Integer, true, nullptr, "sign", {}},
                                                                {"res", ParamType::Integer, false, 256, "raster", {}}}),
                   op_quadrant});
    ops.push_back({"rescale",
                   "Quadratic rescaling limits and tile convergence",
                   {{"what", ParamType::String, true, nullptr, "quantity", {"qrt", "compare", "strip"}},
                    {"n", ParamType::Integer, true, nullptr, "Veech index", {}},
                    {"pair", ParamType::String, false, "a1:b2", "W pair",
                     {"a1:b2", "b2:b3", "b3:a4", "a1:b1", "a2:b2", "a3:b3", "a4:b4"}},
                    {"k", ParamType::Integer, false, 20, "W family index", {}},
                    {"res", ParamType::Integer, false, 200, "raster", {}}},
                   op_rescale});
    ops.push_back({"omega",
                   "Limit quadrilateral Omega_n",
                   {{"n", ParamType::Integer, true, nullptr, "Veech index", {}}},
                   op_omega});
    ops.push_back({"homology",
                   "Homology actions, stability certificates and the power-of-two search",
                   {{"what", ParamType::String, false, "certificate", "quantity", {"certificate", "bfs", "stable", "invariant"}},
                    {"n", ParamType::Integer, true, nullptr, "Veech index", {}},
                    {"word", ParamType::String, false, nullptr, "generator word, e.g. e^-1 o", {}},
                    {"k", ParamType::Integer, false, 1, "class index", {}},
                    {"depth", ParamType::Integer, false, 12, "search depth", {}},
                    {"reading", ParamType::String, false, "dual", "cohomology reading", {"dual", "substitution"}}},
                   op_homology});
    ops.push_back({"verify",
                   "Acceptance suite",
                   {{"suite", ParamType::String, false, "primary", "suite", {"primary"}},
                    {"criteria", ParamType::String, false, "all", "all or a list like 1,2,5", {}}},
                   op_verify});
    ops.push_back({"spec", "OpenAPI description", {}, [](const json&) { return json_reply(openapi()); }});
    return ops;
}

const char* type_name(ParamType t) {
    switch (t) {
        case ParamType::String: return "string";
        case ParamType::Integer: return "integer";
        case ParamType::Number: return "number";
        case ParamType::Boolean: return "boolean";
    }
    return "string";
}

bool type_ok(ParamType t, const json& v) {
    switch (t) {
        case ParamType::String: return v.is_string();
        case ParamType::Integer: return v.is_number_integer();
        case ParamType::Number: return v.is_number();
        case ParamType::Boolean: return v.is_boolean();
    }
    return false;
}

void write_canonical(const json& j, std::string& out) {
    switch (j.type()) {
        case json::value_t::object: {
            out += '{';
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) out += ',';
                first = false;
                out += json(it.key()).dump();
                out += ':';
                write_canonical(it.value(), out);
            }
            out += '}';
            break;
        }
        case json::value_t::array: {
            out += '[';
            for (size_t i = 0; i < j.size(); ++i) {
                if (i) out += ',';
                write_canonical(j[i], out);
            }
            out += ']';
            break;
        }
        case json::value_t::number_float: {
            double v = j.get<double>();
            if (!std::isfinite(v))
                out += "null";
            else if (v == 0)
                out += '0';
            else
                out += fmt::format("{:.12g}", v);
            break;
        }
        default: out += j.dump(); break;
    }
}

std::string cache_key(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) h = (h ^ c) * 1099511628211ULL;
    return fmt::format("{:016x}", h);
}

}  // namespace

const std::vector<OpSpec>& operations() {
    static const std::vector<OpSpec> ops = build_registry();
    return ops;
}

const OpSpec& find_op(const std::string& name) {
    for (const OpSpec& op : operations())
        if (op.name == name) return op;
    fail_arg("unknown operation " + name);
}

json validate_params(const OpSpec& op, const json& params) {
    if (params.is_null()) return validate_params(op, json::object());
    if (!params.is_object()) fail_arg("params must be an object");
    for (auto it = params.begin(); it != params.end(); ++it) {
        auto spec = std::find_if(op.params.begin(), op.params.end(), [&](const ParamSpec& s) { return s.name == it.key(); });
        if (spec == op.params.end()) fail_arg(fmt::format("unknown field '{}' for {}", it.key(), op.name));
        if (!type_ok(spec->type, it.value()))
            fail_arg(fmt::format("field '{}' must be of type {}", it.key(), type_name(spec->type)));
        if (spec->type == ParamType::Integer &&
            (it.value().get<double>() > 1e9 || it.value().get<double>() < -1e9))
            fail_arg(fmt::format("field '{}' is out of range", it.key()));
        if (!spec->choices.empty() &&
            std::find(spec->choices.begin(), spec->choices.end(), it.value().get<std::string>()) == spec->choices.end())
            fail_arg(fmt::format("field '{}' must be one of {}", it.key(), fmt::join(spec->choices, ", ")));
    }
    json out = params;
    for (const ParamSpec& s : op.params) {
        if (out.contains(s.name)) continue;
        if (s.required) fail_arg(fmt::format("missing required field '{}'", s.name));
        if (!s.fallback.is_null()) out[s.name] = s.fallback;
    }
    return out;
}

json coerce_params(const OpSpec& op, const std::map<std::string, std::string>& raw) {
    json out = json::object();
    for (const auto& [key, text] : raw) {
        auto spec = std::find_if(op.params.begin(), op.params.end(), [&](const ParamSpec& s) { return s.name == key; });
        if (spec == op.params.end()) fail_arg(fmt::format("unknown field '{}' for {}", key, op.name));
        switch (spec->type) {
            case ParamType::String: out[key] = text; break;
            case ParamType::Boolean:
                if (text == "true" || text == "1" || text.empty())
                    out[key] = true;
                else if (text == "false" || text == "0")
                    out[key] = false;
                else
                    fail_arg(fmt::format("field '{}' must be true or false", key));
                break;
            case ParamType::Integer:
            case ParamType::Number: {
                size_t used = 0;
                try {
                    if (spec->type == ParamType::Integer)
                        out[key] = std::stoll(text, &used);
                    else
                        out[key] = std::stod(text, &used);
                } catch (const std::exception&) {
                    used = 0;
                }
                if (used == 0 || used != text.size())
                    fail_arg(fmt::format("field '{}' must be {}", key, spec->type == ParamType::Integer ? "an integer" : "a number"));
                break;
            }
        }
    }
    return out;
}

Reply run_op(const std::string& name, const json& params) {
    const OpSpec& op = find_op(name);
    json p = validate_params(op, params);
    try {
        return op.run(p);
    } catch (const Error&) {
        throw;
    } catch (const json::exception& e) {
        fail_arg(e.what());
    } catch (const std::exception& e) {
        throw Error(ErrorKind::Internal, e.what());
    }
}

Reply run_request(const json& envelope, bool text_params) {
    if (!envelope.is_object()) fail_arg("request must be an object");
    for (auto it = envelope.begin(); it != envelope.end(); ++it)
        if (it.key() != "op" && it.key() != "params" && it.key() != "tolerance" && it.key() != "format")
            fail_arg(fmt::format("unknown field '{}' in request", it.key()));
    if (!envelope.contains("op") || !envelope["op"].is_string()) fail_arg("request needs a string op");
    const OpSpec& op = find_op(envelope["op"]);
    json params = envelope.value("params", json::object());
    if (!params.is_object()) fail_arg("params must be an object");
    if (text_params) {
        std::map<std::string, std::string> raw;
        for (auto it = params.begin(); it != params.end(); ++it) {
            if (!it.value().is_string()) fail_arg(fmt::format("field '{}' must be given as text", it.key()));
            raw[it.key()] = it.value();
        }
        params = coerce_params(op, raw);
    }
    auto has_param = [&](const char* name) {
        return std::any_of(op.params.begin(), op.params.end(), [&](const ParamSpec& s) { return s.name == name; });
    };
    if (envelope.contains("tolerance")) {
        if (!envelope["tolerance"].is_number()) fail_arg("tolerance must be a number");
        if (!has_param("tolerance")) fail_arg(fmt::format("{} takes no tolerance", op.name));
        params["tolerance"] = envelope["tolerance"];
    }
    if (envelope.contains("format")) {
        if (!envelope["format"].is_string()) fail_arg("format must be a string");
        std::string f = envelope["format"];
        if (f != "json" && f != "svg" && f != "png") fail_arg("format must be json, svg or png");
        if (has_param("format"))
            params["format"] = f;
        else if (f != "json")
            fail_arg(fmt::format("{} only answers json", op.name));
    }

    const char* dir = std::getenv("TRIBILL_CACHE_DIR");
    std::filesystem::path file;
    if (dir && *dir && op.name != "verify" && op.name != "spec") {
        json key = {{"op", op.name}, {"params", validate_params(op, params)}, {"version", kVersion}};
        file = std::filesystem::path(dir) / (op.name + "-" + cache_key(canonical_json(key)) + ".json");
        std::ifstream in(file);
        if (in) {
            try {
                json cached = json::parse(in);
                Reply r;
                r.body = cached.value("body", json());
                r.content_type = cached.value("content_type", "");
                r.bytes = cached.value("bytes", "");
                if (r.content_type != "image/png") return r;
            } catch (const json::exception&) {
            }
        }
    }
    Reply r = run_op(op.name, params);
    if (!file.empty() && r.content_type != "image/png") {
        std::error_code ec;
        std::filesystem::create_directories(file.parent_path(), ec);
        std::ofstream out(file);
        if (out) out << json{{"body", r.body}, {"bytes", r.bytes}, {"content_type", r.content_type}}.dump();
    }
    return r;
}

std::string canonical_json(const json& j) {
    std::string out;
    write_canonical(j, out);
    return out;
}

int http_status(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidArgument: return 400;
        case ErrorKind::Precondition:
        case ErrorKind::Unsupported: return 422;
        case ErrorKind::Internal: return 500;
    }
    return 500;
}

json error_body(ErrorKind kind, const std::string& message) {
    const char* names[] = {"invalid_argument", "precondition", "unsupported", "internal"};
    return {{"error", names[int(kind)]}, {"message", message}, {"status", http_status(kind)}};
}

json openapi() {
    json paths = json::object();
    auto path_for = [&](const OpSpec& op) {
        json params = json::array();
        for (const ParamSpec& s : op.params) {
            json schema = {{"type", type_name(s.type)}};
            if (!s.choices.empty()) schema["enum"] = s.choices;
            if (!s.fallback.is_null()) schema["default"] = s.fallback;
            params.push_back({{"name", s.name}, {"in", "query"}, {"required", s.required}, {"description", s.doc}, {"schema", schema}});
        }
        json responses = {{"200", {{"description", "result"}}},
                          {"400", {{"description", "schema violation"}}},
                          {"422", {{"description", "precondition failure"}}}};
        return json{{"get", {{"operationId", op.name}, {"summary", op.summary}, {"parameters", params}, {"responses", responses}}}};
    };
    for (const OpSpec& op : operations()) paths["/" + op.name] = path_for(op);
    paths["/unfolding"] = path_for(find_op("unfold"));
    paths["/unfolding"]["get"]["operationId"] = "unfolding";
    json cert = path_for(find_op("homology"));
    cert["get"]["operationId"] = "homology_certificate";
    paths["/homology/certificate"] = cert;
    return {{"openapi", "3.0.3"},
            {"info", {{"title", "tribill"}, {"version", kVersion}, {"description", "Periodic billiard paths in triangles near the Veech points"}}},
            {"paths", paths}};
}

}  // namespace tribill
