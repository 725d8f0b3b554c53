#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ffcurve/bc.hpp"
#include "ffcurve/cocycle.hpp"
#include "ffcurve/complex.hpp"
#include "ffcurve/derham.hpp"
#include "ffcurve/expr.hpp"
#include "ffcurve/io.hpp"
#include "ffcurve/tilt.hpp"

namespace ffcurve::cli {

inline constexpr int kSchemaVersion = 1;

enum ExitCode : int { ok = 0, internal_error = 1, input_error = 2 };

/// Every verb accepted by the front end, in help order.
inline const std::vector<std::string>& verbs() {
    static const std::vector<std::string> v{"info", "hn",      "hom", "ext1",    "ext2",   "chi",   "k0",
                                            "tilt", "untilt",  "hnminus", "bc", "present", "breen", "koszul",
                                            "eta",  "cohom",   "derham",  "cocycle"};
    return v;
}

namespace detail {

using nlohmann::json;

struct Reply {
    json doc = json::object();
    std::string text;
};

inline json bc_json(const BCInvariant& v) { return {{"dim", v.dim}, {"ht", v.ht}}; }

inline json object_block(const CoherentSheaf& f) {
    auto inv = numeric_invariants(f);
    json pieces = json::array();
    if (!f.is_zero())
        for (const auto& p : hn(f))
            pieces.push_back({{"slope", p.slope.str()},
                              {"object", print(p.piece)},
                              {"rank", p.piece.rank()},
                              {"degree", p.piece.degree()}});
    return {{"object", print(f)},
            {"kind", "sheaf"},
            {"invariants",
             {{"rank", inv.rank}, {"degree", inv.degree}, {"slope", inv.slope ? json(inv.slope->str()) : json(nullptr)}}},
            {"bc", bc_json(dim_ht(ShiftedSum{f}))},
            {"pieces", pieces}};
}

inline json object_block(const TiltedObject& t) {
    auto inv = tilted_invariants(t);
    json pieces = json::array();
    if (!t.is_zero())
        for (const auto& p : hn_minus(t)) {
            auto pi = tilted_invariants(p.piece);
            pieces.push_back(
                {{"slope", p.slope.str()}, {"object", print(p.piece)}, {"rank", pi.rank}, {"degree", pi.degree}});
        }
    return {{"object", print(t)},
            {"kind", "tilted"},
            {"invariants",
             {{"rank", inv.rank}, {"degree", inv.degree}, {"slope", inv.slope ? json(inv.slope->str()) : json(nullptr)}}},
            {"bc", bc_json(dim_ht(t))},
            {"pieces", pieces}};
}

inline json object_block(const Expression& e) {
    return std::visit([](const auto& x) { return object_block(x); }, e);
}

inline std::string slope_text(const std::optional<Slope>& s) { return s ? s->str() : "undefined"; }
inline std::string slope_text(const std::optional<TiltSlope>& s) { return s ? s->str() : "undefined"; }

inline Expression parse_joined(const std::vector<std::string>& tokens) {
    std::string text;
    for (const auto& t : tokens)
        text += (text.empty() ? "" : " ") + t;
    return parse_expression(text);
}

inline CoherentSheaf require_sheaf(const Expression& e, const std::string& verb) {
    if (auto* f = std::get_if<CoherentSheaf>(&e))
        return *f;
    throw Error(verb + " expects a sheaf expression, not a tilted object");
}

inline TiltedObject as_tilted(const Expression& e) {
    if (auto* f = std::get_if<CoherentSheaf>(&e))
        return tilt(*f);
    return std::get<TiltedObject>(e);
}

inline std::string read_source(const std::string& arg) {
    if (!arg.starts_with("@"))
        return arg;
    std::ifstream in(arg.substr(1));
    if (!in)
        throw Error("cannot read file '" + arg.substr(1) + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline json parse_json_text(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(std::string("invalid JSON: ") + e.what());
    }
}

// --- verb implementations -------------------------------------------------------

inline Reply info(const Expression& e) {
    Reply r;
    r.doc = object_block(e);
    std::ostringstream os;
    os << "object: " << print(e) << "\n";
    if (auto* f = std::get_if<CoherentSheaf>(&e)) {
        auto inv = numeric_invariants(*f);
        auto k = k0_class(*f);
        os << "rank: " << inv.rank << "\ndegree: " << inv.degree << "\nslope: " << slope_text(inv.slope) << "\n";
        os << "h0: " << h0(*f).str() << "\nh1: " << h1(*f).str() << "\nchi: " << chi(*f).str() << "\n";
        os << "k0: (" << k.a << "," << k.b << ")\n";
        r.doc["h0"] = bc_json(h0(*f));
        r.doc["h1"] = bc_json(h1(*f));
        r.doc["chi"] = bc_json(chi(*f));
        r.doc["k0"] = {{"a", k.a}, {"b", k.b}};
    } else {
        const auto& t = std::get<TiltedObject>(e);
        auto inv = tilted_invariants(t);
        auto k = t.k0();
        os << "deg-: " << inv.degree << "\nrg-: " << inv.rank << "\nmu-: " << slope_text(inv.slope) << "\n";
        os << "dim_ht: " << dim_ht(t).str() << "\nk0: (" << k.a << "," << k.b << ")\n";
        r.doc["k0"] = {{"a", k.a}, {"b", k.b}};
    }
    r.text = os.str();
    return r;
}

inline Reply hn_verb(const CoherentSheaf& f, const std::string& svg_path) {
    if (f.is_zero())
        throw Error("HN filtration of the zero sheaf is undefined");
    Reply r;
    r.doc = object_block(f);
    json verts = json::array();
    for (auto [x, y] : hn_polygon(f))
        verts.push_back({x, y});
    r.doc["polygon"] = verts;
    std::ostringstream os;
    for (const auto& p : hn(f))
        os << p.slope.str() << "\t" << print(p.piece) << "\n";
    os << "polygon:";
    for (auto [x, y] : hn_polygon(f))
        os << " (" << x << "," << y << ")";
    os << "\n";
    if (!svg_path.empty()) {
        std::ofstream out(svg_path);
        if (!out)
            throw Error("cannot write '" + svg_path + "'");
        out << hn_svg(f);
        r.doc["svg"] = svg_path;
    }
    r.text = os.str();
    return r;
}

inline Reply pairing(const std::string& verb, const Expression& a, const Expression& b) {
    Reply r;
    r.doc["objects"] = {object_block(a), object_block(b)};
    const auto* fa = std::get_if<CoherentSheaf>(&a);
    const auto* fb = std::get_if<CoherentSheaf>(&b);
    BCInvariant value;
    if (fa && fb) {
        value = verb == "hom" ? hom(*fa, *fb) : verb == "ext1" ? ext1(*fa, *fb) : ext2(*fa, *fb);
        r.doc["category"] = "coh";
    } else {
        auto ta = as_tilted(a), tb = as_tilted(b);
        r.doc["category"] = "tilted";
        if (verb == "hom") {
            auto m = hom_tilted(ta, tb);
            value = m.total();
            r.doc["matrix"] = {{bc_json(m.top_left), bc_json(m.top_right)}, {bc_json(m.bottom_left), bc_json(m.bottom_right)}};
        } else {
            value = derived_hom(ta.as_shifted_sum(), tb.as_shifted_sum(), verb == "ext1" ? 1 : 2);
        }
    }
    r.doc["result"] = bc_json(value);
    r.text = value.str() + "\n";
    return r;
}

inline Reply breen() {
    auto t = breen_tables();
    const char* labels[] = {"G_a", "Q_p"};
    auto table_json = [&](const BreenTables::Table& tab) {
        json rows = json::array();
        for (const auto& row : tab)
            rows.push_back({bc_json(row[0]), bc_json(row[1])});
        return rows;
    };
    Reply r;
    r.doc["labels"] = {labels[0], labels[1]};
    r.doc["tables"] = {{"hom", table_json(t.hom)}, {"ext1", table_json(t.ext1)}, {"ext2", table_json(t.ext2)}};
    r.doc["matches_reference"] = t == breen_reference();
    std::ostringstream os;
    auto name = [](const BCInvariant& v) {
        if (v == kC)
            return std::string("C");
        if (v == kQp)
            return std::string("Q_p");
        return v == BCInvariant{} ? std::string("0") : v.str();
    };
    auto emit = [&](const char* title, const BreenTables::Table& tab) {
        os << title << "\t" << labels[0] << "\t" << labels[1] << "\n";
        for (std::size_t i = 0; i < 2; ++i)
            os << labels[i] << "\t" << name(tab[i][0]) << "\t" << name(tab[i][1]) << "\n";
    };
    emit("Hom", t.hom);
    emit("Ext1", t.ext1);
    emit("Ext2", t.ext2);
    r.text = os.str();
    return r;
}

inline Reply bc_verb(const TiltedObject& t) {
    auto d = r0tau(t);
    Reply r;
    r.doc = object_block(t);
    json atoms = json::array();
    std::ostringstream os;
    os << "object: " << print(t) << "\natoms:";
    for (const auto& a : d.atoms) {
        atoms.push_back({{"atom", a.str()}, {"invariant", bc_json(a.invariant())}});
        os << " " << a.str();
    }
    if (d.atoms.empty())
        os << " none";
    r.doc["atoms"] = atoms;
    r.doc["invariant"] = bc_json(d.invariant);
    r.doc["consistent"] = d.consistent() && d.invariant == dim_ht(t);
    os << "\n(dim,ht): " << dim_ht(t).str() << "\n";
    r.text = os.str();
    return r;
}

inline Reply present(const TiltedObject& t) {
    auto p = effective_presentation(t);
    auto problems = check_presentation(p);
    Reply r;
    r.doc = object_block(t);
    json steps = json::array();
    for (const auto& s : p.steps)
        steps.push_back({{"sequence", print(s.sequence)}, {"tag", to_string(s.sequence.tag)}, {"level", s.level}});
    r.doc["kernel_rank"] = p.kernel_rank;
    r.doc["middle"] = print(p.middle);
    r.doc["sequence"] = print(p.total());
    r.doc["steps"] = steps;
    r.doc["problems"] = problems;
    std::ostringstream os;
    os << print(p.total()) << "\n";
    for (const auto& s : p.steps)
        os << "  " << to_string(s.sequence.tag) << " (level " << s.level << "): " << print(s.sequence) << "\n";
    for (const auto& msg : problems)
        os << "problem: " << msg << "\n";
    r.text = os.str();
    return r;
}

template <class R>
std::vector<R> parse_elements(const std::vector<std::string>& tokens) {
    std::vector<R> out;
    for (const auto& t : tokens)
        out.push_back(Euclidean<R>::parse(t));
    return out;
}

template <class R>
R random_element(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> coeff(-3, 3);
    if constexpr (std::is_same_v<R, algebra::Poly>) {
        std::uniform_int_distribution<int> deg(0, 2);
        std::vector<Rational> c(static_cast<std::size_t>(deg(rng)) + 1);
        for (auto& x : c)
            x = coeff(rng);
        if (c.back() == 0)
            c.back() = 1;
        return algebra::Poly(std::move(c));
    } else {
        int v = 0;
        while (v == 0)
            v = coeff(rng);
        return R(v);
    }
}

template <class R>
Reply complex_reply(const BoundedComplex<R>& c) {
    auto h = cohomology(c);
    Reply r;
    r.doc["ring"] = Euclidean<R>::name;
    r.doc["complex"] = complex_to_json(c);
    r.doc["cohomology"] = cohomology_to_json(h);
    r.doc["acyclic"] = is_acyclic(c);
    r.text = cohomology_text(h);
    return r;
}

struct KoszulArgs {
    std::vector<std::string> elements;
    std::string ring = "poly";
    std::size_t random = 0;
};

inline Reply koszul_verb(const KoszulArgs& a, std::uint64_t seed) {
    return algebra::visit_domain(algebra::parse_domain(a.ring), [&](auto tag) {
        using R = decltype(tag);
        std::vector<R> g;
        if (a.random > 0) {
            if (!a.elements.empty())
                throw Error("give either elements or --random, not both");
            std::mt19937_64 rng(seed);
            for (std::size_t i = 0; i < a.random; ++i)
                g.push_back(random_element<R>(rng));
        } else {
            g = parse_elements<R>(a.elements);
        }
        auto r = complex_reply(koszul(g));
        json el = json::array();
        std::string head = "Koszul(";
        for (std::size_t i = 0; i < g.size(); ++i) {
            el.push_back(Euclidean<R>::str(g[i]));
            head += (i ? ", " : "") + Euclidean<R>::str(g[i]);
        }
        r.doc["elements"] = el;
        r.text = head + ")\n" + r.text;
        return r;
    });
}

inline ShiftProfile parse_profile(const std::string& text) {
    // "lo:v0,v1,..." or "v0,v1,..." (lo = 0)
    int lo = 0;
    std::string body = text;
    if (auto colon = text.find(':'); colon != std::string::npos) {
        try {
            lo = std::stoi(text.substr(0, colon));
        } catch (const std::exception&) {
            throw Error("bad shift profile start '" + text.substr(0, colon) + "'");
        }
        body = text.substr(colon + 1);
    }
    std::vector<unsigned> values;
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos)
            throw Error("shift profile values must be non-negative integers, got '" + item + "'");
        values.push_back(static_cast<unsigned>(std::stoul(item)));
    }
    if (values.empty())
        throw Error("empty shift profile");
    return {lo, std::move(values)};
}

struct EtaArgs {
    std::vector<std::string> elements;
    std::string complex;
    std::string ring = "poly";
    std::string f;
    std::string delta;
};

inline Reply eta_verb(const EtaArgs& a) {
    auto domain = algebra::parse_domain(a.ring);
    json source;
    if (!a.complex.empty()) {
        source = parse_json_text(read_source(a.complex));
        if (source.contains("ring"))
            domain = algebra::parse_domain(source.at("ring").get<std::string>());
    } else if (a.elements.empty()) {
        throw Error("eta needs Koszul elements or --complex");
    }
    return algebra::visit_domain(domain, [&](auto tag) {
        using R = decltype(tag);
        auto k = a.complex.empty() ? koszul(parse_elements<R>(a.elements)) : complex_from_json<R>(source);
        std::string f_text = a.f;
        if (f_text.empty()) {
            if constexpr (!std::is_same_v<R, algebra::Poly>)
                throw Error("--f is required outside the polynomial ring");
            f_text = "t";
        }
        R f = Euclidean<R>::parse(f_text);
        ShiftProfile delta;
        if (a.delta.empty()) {
            if (k.lowest() < 0)
                throw Error("default profile delta(j) = j needs a complex in degrees >= 0; pass --delta");
            delta = ShiftProfile::identity(k.lowest(), k.highest());
        } else {
            delta = parse_profile(a.delta);
        }
        if (!delta.non_decreasing())
            throw Error("shift profile must be non-decreasing");
        auto res = decalage(k, f, delta);
        auto r = complex_reply(res.complex);
        r.doc["f"] = Euclidean<R>::str(f);
        r.doc["exponents"] = res.exponents;
        r.doc["input"] = complex_to_json(k);
        r.doc["input_cohomology"] = cohomology_to_json(cohomology(k));
        r.text = "eta_" + Euclidean<R>::str(f) + " cohomology:\n" + r.text;
        return r;
    });
}

inline Reply cohom_verb(const std::string& complex, const std::string& ring) {
    if (complex.empty())
        throw Error("cohom needs --complex JSON or @file");
    auto source = parse_json_text(read_source(complex));
    auto domain = algebra::parse_domain(source.contains("ring") ? source.at("ring").get<std::string>() : ring);
    return algebra::visit_domain(domain, [&](auto tag) {
        using R = decltype(tag);
        return complex_reply(complex_from_json<R>(source));
    });
}

inline Reply derham_verb(std::size_t n, unsigned d, int only_i) {
    if (n == 0 || d == 0)
        throw Error("derham needs n >= 1 and D >= 1");
    if (n > 6 || d > 16)
        throw Error("derham is limited to n <= 6 and D <= 16");
    auto ga = ga_cohomology(n, d);
    auto qp = qp_cohomology(n, d);
    Reply r;
    r.doc["n"] = n;
    r.doc["D"] = d;
    json pieces = json::array();
    for (const auto& p : qp.pieces) {
        if (only_i >= 0 && p.form_degree != static_cast<std::size_t>(only_i))
            continue;
        pieces.push_back({{"i", p.form_degree},
                          {"e", p.poly_degree},
                          {"dim", p.dim},
                          {"kernel", p.kernel},
                          {"image", p.image},
                          {"boundary", p.boundary},
                          {"exact", p.form_degree == 0 || p.exact()}});
    }
    json ga_json = json::array();
    for (std::size_t i = 0; i < ga.size(); ++i)
        if (only_i < 0 || i == static_cast<std::size_t>(only_i))
            ga_json.push_back({{"i", i}, {"dims", ga[i]}});
    r.doc["ga"] = ga_json;
    r.doc["qp"] = pieces;
    r.doc["closed"] = qp.closed;
    r.doc["poincare"] = qp.poincare_lemma_holds();
    r.doc["h0_constants"] = qp.h0_is_constants();
    std::ostringstream os;
    os << "i\te\tdim\tker\tim\n";
    for (const auto& p : qp.pieces)
        if (only_i < 0 || p.form_degree == static_cast<std::size_t>(only_i))
            os << p.form_degree << "\t" << p.poly_degree << "\t" << p.dim << "\t" << p.kernel << "\t"
               << (p.form_degree == 0 ? std::string("-") : std::to_string(p.image)) << "\n";
    os << "d o d = 0: " << (qp.closed ? "yes" : "no") << ", Ker = Im: " << (qp.poincare_lemma_holds() ? "yes" : "no")
       << "\n";
    r.text = os.str();
    return r;
}

inline Reply cocycle_verb(unsigned q, bool report, unsigned trunc) {
    Reply r;
    std::ostringstream os;
    if (report) {
        unsigned poly = trunc ? trunc : 6, mahler = trunc ? trunc : 4;
        auto rep = hom_column_checks(poly, mahler);
        json levels = json::array();
        for (const auto& h : rep.mahler)
            levels.push_back({{"level", h.level}, {"kernel", h.kernel}, {"image", h.image}, {"homology", h.homology()}});
        r.doc["report"] = {{"poly_degree", rep.poly_degree},
                           {"mahler_degree", rep.mahler_degree},
                           {"poly_kernel_dim", rep.poly_kernel_dim},
                           {"poly_kernel_is_identity", rep.poly_kernel_is_identity},
                           {"constants_injective", rep.constants_injective},
                           {"mahler", levels},
                           {"mahler_exact", rep.mahler_exact},
                           {"ok", rep.ok()}};
        os << "kernel of d1* on polynomials of degree <= " << rep.poly_degree << ": dim " << rep.poly_kernel_dim
           << (rep.poly_kernel_is_identity ? ", spanned by x" : "") << "\n";
        os << "constants: c -> -c " << (rep.constants_injective ? "injective" : "NOT injective") << "\n";
        for (const auto& h : rep.mahler)
            os << "Mahler level " << h.level << " (degree <= " << rep.mahler_degree << "): homology " << h.homology()
               << "\n";
    } else {
        if (q == 0)
            throw Error("cocycle needs a degree q >= 1 or --report");
        if (q > 24)
            throw Error("cocycle degree is limited to q <= 24");
        auto s = symmetric_2cocycle_quotient(q);
        r.doc["degree"] = q;
        r.doc["cocycles"] = s.cocycles;
        r.doc["coboundaries"] = s.coboundaries;
        r.doc["quotient"] = s.quotient();
        os << "q = " << q << ": cocycles " << s.cocycles << ", coboundaries " << s.coboundaries << ", quotient "
           << s.quotient() << "\n";
    }
    r.text = os.str();
    return r;
}

/// Splits a batch line into arguments; single and double quotes group.
inline std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    bool have = false;
    char quote = 0;
    for (char c : line) {
        if (quote) {
            if (c == quote)
                quote = 0;
            else
                cur += c;
        } else if (c == '"' || c == '\'') {
            quote = c;
            have = true;
        } else if (std::isspace(static_cast<unsigned char>(c))) {
            if (have || !cur.empty())
                out.push_back(cur);
            cur.clear();
            have = false;
        } else {
            cur += c;
        }
    }
    if (quote)
        throw Error("unterminated quote in batch line");
    if (have || !cur.empty())
        out.push_back(cur);
    return out;
}

}  // namespace detail

int run(std::vector<std::string> args, std::ostream& out, std::ostream& err);

namespace detail {

inline int run_batch(const std::string& path, const std::vector<std::string>& inherited, std::ostream& out,
                     std::ostream& err) {
    std::ifstream in(path);
    if (!in) {
        err << "error: cannot read batch file '" << path << "'\n";
        return input_error;
    }
    int worst = ok;
    std::string line;
    while (std::getline(in, line)) {
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#')
            continue;
        std::vector<std::string> args;
        try {
            args = split_line(line);
        } catch (const Error& e) {
            err << "error: " << e.what() << "\n";
            worst = std::max(worst, static_cast<int>(input_error));
            continue;
        }
        args.insert(args.end(), inherited.begin(), inherited.end());
        worst = std::max(worst, run(args, out, err));
    }
    return worst;
}

}  // namespace detail

/// Runs one command line (without the program name). Returns 0 on success,
/// 2 on input errors and 1 on internal failures.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    using detail::Reply;
    CLI::App app{"Coherent sheaves on the curve, tilted hearts and Banach-Colmez invariants", "ffc"};
    app.fallthrough();
    bool as_json = false;
    std::string svg, batch;
    unsigned trunc = 0;
    std::uint64_t seed = 0;
    app.add_flag("--json", as_json, "machine-readable output");
    app.add_option("--svg", svg, "write the HN polygon to this file (hn)");
    app.add_option("--trunc", trunc, "truncation degree (derham, cocycle)");
    app.add_option("--seed", seed, "seed for randomized commands");
    app.add_option("--batch", batch, "run one command per line of this file");

    std::vector<std::string> exprs;
    auto* info_cmd = app.add_subcommand("info", "normal form and numeric invariants");
    auto* hn_cmd = app.add_subcommand("hn", "Harder-Narasimhan filtration and polygon");
    auto* chi_cmd = app.add_subcommand("chi", "Euler characteristic (dim, ht)");
    auto* k0_cmd = app.add_subcommand("k0", "class in K0 as (a, b), rank a+b, degree b");
    auto* tilt_cmd = app.add_subcommand("tilt", "torsion-pair split into the tilted heart");
    auto* untilt_cmd = app.add_subcommand("untilt", "forget the shift of a tilted object");
    auto* hnminus_cmd = app.add_subcommand("hnminus", "HN filtration for mu^- in the tilted heart");
    auto* bc_cmd = app.add_subcommand("bc", "Banach-Colmez descriptor and (dim, ht)");
    auto* present_cmd = app.add_subcommand("present", "effective presentation 0 -> O^a -> F' -> T -> 0");
    for (auto* sub : {info_cmd, hn_cmd, chi_cmd, k0_cmd, tilt_cmd, untilt_cmd, hnminus_cmd, bc_cmd, present_cmd})
        sub->add_option("expr", exprs, "sheaf or tilted expression")->required();

    std::vector<std::string> pair;
    auto* hom_cmd = app.add_subcommand("hom", "Hom(A, B) as (dim, ht)");
    auto* ext1_cmd = app.add_subcommand("ext1", "Ext^1(A, B) as (dim, ht)");
    auto* ext2_cmd = app.add_subcommand("ext2", "Ext^2(A, B) as (dim, ht)");
    for (auto* sub : {hom_cmd, ext1_cmd, ext2_cmd})
        sub->add_option("objects", pair, "two expressions (quote each)")->required()->expected(2);

    auto* breen_cmd = app.add_subcommand("breen", "Hom/Ext tables between G_a and Q_p");

    detail::KoszulArgs kz;
    auto* koszul_cmd = app.add_subcommand("koszul", "Koszul complex and its cohomology");
    koszul_cmd->add_option("elements", kz.elements, "ring elements g_1 ... g_n");
    koszul_cmd->add_option("--ring", kz.ring, "Z, Q or poly (default poly)");
    koszul_cmd->add_option("--random", kz.random, "use n random elements (see --seed)");

    detail::EtaArgs et;
    auto* eta_cmd = app.add_subcommand("eta", "decalage of a complex");
    eta_cmd->add_option("elements", et.elements, "Koszul elements (when no --complex)");
    eta_cmd->add_option("--complex", et.complex, "complex JSON or @file");
    eta_cmd->add_option("--ring", et.ring, "Z, Q or poly (default poly)");
    eta_cmd->add_option("--f", et.f, "the element f (default t)");
    eta_cmd->add_option("--delta", et.delta, "shift profile lo:v0,v1,... (default delta(j) = j)");

    std::string complex_src, cohom_ring = "Z";
    auto* cohom_cmd = app.add_subcommand("cohom", "cohomology of a complex");
    cohom_cmd->add_option("--complex", complex_src, "complex JSON or @file")->required();
    cohom_cmd->add_option("--ring", cohom_ring, "ring when the JSON does not name one (default Z)");

    std::size_t dr_n = 0;
    unsigned dr_d = 0;
    int dr_i = -1;
    auto* derham_cmd = app.add_subcommand("derham", "graded de Rham cohomology of affine n-space");
    derham_cmd->add_option("n", dr_n, "number of variables")->required();
    derham_cmd->add_option("D", dr_d, "truncation degree (or --trunc)");
    derham_cmd->add_option("--i", dr_i, "only form degree i");

    unsigned cq = 0;
    bool report = false;
    auto* cocycle_cmd = app.add_subcommand("cocycle", "symmetric 2-cocycles and the Hom column checks");
    cocycle_cmd->add_option("q", cq, "homogeneous degree");
    cocycle_cmd->add_flag("--report", report, "run the Hom column checks");

    try {
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return input_error;
    }

    if (!batch.empty()) {
        if (!app.get_subcommands().empty()) {
            err << "error: --batch does not combine with a command\n";
            return input_error;
        }
        std::vector<std::string> inherited;
        if (as_json)
            inherited.push_back("--json");
        if (trunc)
            inherited.insert(inherited.end(), {"--trunc", std::to_string(trunc)});
        if (seed)
            inherited.insert(inherited.end(), {"--seed", std::to_string(seed)});
        return detail::run_batch(batch, inherited, out, err);
    }
    if (app.get_subcommands().empty()) {
        err << "error: a command is required\n" << app.help();
        return input_error;
    }

    auto* sub = app.get_subcommands().front();
    const std::string verb = sub->get_name();
    Reply reply;
    try {
        if (sub == info_cmd) {
            reply = detail::info(detail::parse_joined(exprs));
        } else if (sub == hn_cmd) {
            reply = detail::hn_verb(detail::require_sheaf(detail::parse_joined(exprs), verb), svg);
        } else if (sub == chi_cmd || sub == k0_cmd) {
            auto e = detail::parse_joined(exprs);
            reply.doc = detail::object_block(e);
            if (auto* f = std::get_if<CoherentSheaf>(&e)) {
                auto value = chi(*f);
                auto c = k0_class(*f);
                if (sub == chi_cmd) {
                    reply.doc["result"] = detail::bc_json(value);
                    reply.text = value.str() + "\n";
                } else {
                    reply.doc["result"] = {{"a", c.a}, {"b", c.b}, {"rank", c.rank()}, {"degree", c.degree()}};
                    reply.text = "(" + std::to_string(c.a) + "," + std::to_string(c.b) + ")\n";
                }
            } else {
                const auto& t = std::get<TiltedObject>(e);
                auto c = t.k0();
                if (sub == chi_cmd) {
                    auto value = dim_ht(t);
                    reply.doc["result"] = detail::bc_json(value);
                    reply.text = value.str() + "\n";
                } else {
                    reply.doc["result"] = {{"a", c.a}, {"b", c.b}, {"rank", c.rank()}, {"degree", c.degree()}};
                    reply.text = "(" + std::to_string(c.a) + "," + std::to_string(c.b) + ")\n";
                }
            }
        } else if (sub == tilt_cmd) {
            auto t = tilt(detail::require_sheaf(detail::parse_joined(exprs), verb));
            reply.doc = detail::object_block(t);
            reply.text = print(t) + "\n";
        } else if (sub == untilt_cmd) {
            auto e = detail::parse_joined(exprs);
            if (!std::holds_alternative<TiltedObject>(e))
                throw Error("untilt expects a tilted(...; ...) expression");
            auto f = untilt(std::get<TiltedObject>(e));
            reply.doc = detail::object_block(f);
            reply.text = print(f) + "\n";
        } else if (sub == hnminus_cmd) {
            auto t = detail::as_tilted(detail::parse_joined(exprs));
            if (t.is_zero())
                throw Error("HN^- filtration of the zero object is undefined");
            reply.doc = detail::object_block(t);
            for (const auto& p : hn_minus(t))
                reply.text += p.slope.str() + "\t" + print(p.piece) + "\n";
        } else if (sub == bc_cmd) {
            reply = detail::bc_verb(detail::as_tilted(detail::parse_joined(exprs)));
        } else if (sub == present_cmd) {
            reply = detail::present(detail::as_tilted(detail::parse_joined(exprs)));
        } else if (sub == hom_cmd || sub == ext1_cmd || sub == ext2_cmd) {
            reply = detail::pairing(verb, parse_expression(pair[0]), parse_expression(pair[1]));
        } else if (sub == breen_cmd) {
            reply = detail::breen();
        } else if (sub == koszul_cmd) {
            if (kz.elements.empty() && kz.random == 0)
                throw Error("koszul needs elements or --random n");
            reply = detail::koszul_verb(kz, seed);
            if (kz.random > 0)
                reply.doc["seed"] = seed;
        } else if (sub == eta_cmd) {
            reply = detail::eta_verb(et);
        } else if (sub == cohom_cmd) {
            reply = detail::cohom_verb(complex_src, cohom_ring);
        } else if (sub == derham_cmd) {
            unsigned d = dr_d ? dr_d : trunc;
            if (d == 0)
                throw Error("derham needs a truncation degree D (positional or --trunc)");
            reply = detail::derham_verb(dr_n, d, dr_i);
        } else if (sub == cocycle_cmd) {
            reply = detail::cocycle_verb(cq, report, trunc);
        }
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return input_error;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return input_error;
    } catch (const nlohmann::json::exception& e) {
        err << "error: " << e.what() << "\n";
        return input_error;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return internal_error;
    }

    if (as_json) {
        nlohmann::json doc = {{"schema_version", kSchemaVersion}, {"command", verb}};
        doc.update(reply.doc);
        out << doc.dump(2) << "\n";
    } else {
        out << reply.text;
    }
    return ok;
}

inline int run(int argc, char** argv) { return run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr); }

}  // namespace ffcurve::cli
