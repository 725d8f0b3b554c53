#pragma once

#include <algorithm>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ffcurve/complex.hpp"
#include "ffcurve/expr.hpp"

namespace ffcurve {

using nlohmann::json;

// --- complexes ---------------------------------------------------------------------

/// Complex as JSON: {"ring", "lowest", "ranks", "differentials"}, with matrix
/// entries written as strings so big integers and polynomials survive.
template <class R>
json complex_to_json(const BoundedComplex<R>& c) {
    json diffs = json::array();
    for (const auto& d : c.differentials()) {
        json rows = json::array();
        for (std::size_t i = 0; i < d.rows(); ++i) {
            json row = json::array();
            for (std::size_t j = 0; j < d.cols(); ++j)
                row.push_back(Euclidean<R>::str(d(i, j)));
            rows.push_back(std::move(row));
        }
        diffs.push_back(std::move(rows));
    }
    return {{"ring", Euclidean<R>::name}, {"lowest", c.lowest()}, {"ranks", c.ranks()}, {"differentials", diffs}};
}

namespace detail {

template <class R>
R entry_from_json(const json& e) {
    if (e.is_string())
        return Euclidean<R>::parse(e.get<std::string>());
    if (e.is_number_integer())
        return Euclidean<R>::parse(std::to_string(e.get<long long>()));
    throw Error("matrix entries must be strings or integers");
}

}  // namespace detail

/// Inverse of complex_to_json. `ranks` may be omitted when every term touches a differential.
template <class R>
BoundedComplex<R> complex_from_json(const json& j) {
    if (!j.is_object() || !j.contains("differentials"))
        throw Error("complex JSON needs a 'differentials' array");
    const int lowest = j.value("lowest", 0);
    std::vector<Matrix<R>> diffs;
    for (const auto& d : j.at("differentials")) {
        if (!d.is_array())
            throw Error("each differential must be an array of rows");
        std::size_t cols = d.empty() ? 0 : d.front().size();
        Matrix<R> m(d.size(), cols);
        for (std::size_t r = 0; r < d.size(); ++r) {
            if (!d[r].is_array() || d[r].size() != cols)
                throw Error("ragged differential rows");
            for (std::size_t c = 0; c < cols; ++c)
                m(r, c) = detail::entry_from_json<R>(d[r][c]);
        }
        diffs.push_back(std::move(m));
    }
    std::vector<std::size_t> ranks;
    if (j.contains("ranks")) {
        ranks = j.at("ranks").get<std::vector<std::size_t>>();
    } else {
        if (diffs.empty())
            throw Error("complex JSON without differentials needs 'ranks'");
        ranks.push_back(diffs.front().cols());
        for (const auto& d : diffs)
            ranks.push_back(d.rows());
    }
    // an all-empty differential parsed from [] has lost its column count
    for (std::size_t k = 0; k < diffs.size() && k + 1 < ranks.size(); ++k)
        if (diffs[k].rows() == 0 && diffs[k].cols() == 0)
            diffs[k] = Matrix<R>(ranks[k + 1], ranks[k]);
    return {lowest, std::move(ranks), std::move(diffs)};
}

template <class R>
json cohomology_to_json(const std::vector<CohomologyGroup<R>>& groups) {
    json out = json::array();
    for (const auto& h : groups) {
        json tors = json::array();
        for (const auto& t : h.torsion)
            tors.push_back(Euclidean<R>::str(t));
        out.push_back({{"degree", h.degree}, {"free_rank", h.free_rank}, {"torsion", tors}});
    }
    return out;
}

template <class R>
std::string cohomology_text(const std::vector<CohomologyGroup<R>>& groups) {
    std::ostringstream os;
    for (const auto& h : groups) {
        os << "H^" << h.degree << " = ";
        std::vector<std::string> parts;
        if (h.free_rank > 0)
            parts.push_back(std::string(Euclidean<R>::name) + "^" + std::to_string(h.free_rank));
        for (const auto& t : h.torsion)
            parts.push_back("R/(" + Euclidean<R>::str(t) + ")");
        if (parts.empty())
            os << "0";
        for (std::size_t i = 0; i < parts.size(); ++i)
            os << (i ? " + " : "") << parts[i];
        os << "\n";
    }
    return os.str();
}

// --- HN polygon --------------------------------------------------------------------

/// Vertices (rank, degree) of the HN polygon, pieces in decreasing slope.
inline std::vector<std::pair<std::int64_t, std::int64_t>> hn_polygon(const CoherentSheaf& f) {
    std::vector<std::pair<std::int64_t, std::int64_t>> v{{0, 0}};
    if (f.is_zero())
        return v;
    for (const auto& piece : hn(f)) {
        auto [r, d] = v.back();
        v.emplace_back(r + piece.piece.rank(), d + piece.piece.degree());
    }
    return v;
}

inline std::string hn_svg(const CoherentSheaf& f) {
    auto pts = hn_polygon(f);
    std::int64_t min_x = 0, max_x = 0, min_y = 0, max_y = 0;
    for (auto [x, y] : pts) {
        min_x = std::min(min_x, x);
        max_x = std::max(max_x, x);
        min_y = std::min(min_y, y);
        max_y = std::max(max_y, y);
    }
    const int unit = 40, margin = 20;
    const auto width = (max_x - min_x) * unit + 2 * margin;
    const auto height = (max_y - min_y) * unit + 2 * margin;
    // y grows downwards in SVG
    auto sx = [&](std::int64_t x) { return margin + (x - min_x) * unit; };
    auto sy = [&](std::int64_t y) { return margin + (max_y - y) * unit; };
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\">\n";
    os << "  <title>HN polygon of " << print(f) << "</title>\n";
    os << "  <line x1=\"" << sx(min_x) << "\" y1=\"" << sy(0) << "\" x2=\"" << sx(max_x) << "\" y2=\"" << sy(0)
       << "\" stroke=\"#999\"/>\n";
    os << "  <polyline fill=\"none\" stroke=\"black\" stroke-width=\"2\" data-vertices=\"";
    for (std::size_t i = 0; i < pts.size(); ++i)
        os << (i ? " " : "") << pts[i].first << "," << pts[i].second;
    os << "\" points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i)
        os << (i ? " " : "") << sx(pts[i].first) << "," << sy(pts[i].second);
    os << "\"/>\n";
    for (auto [x, y] : pts)
        os << "  <circle cx=\"" << sx(x) << "\" cy=\"" << sy(y) << "\" r=\"3\"/>\n";
    os << "</svg>\n";
    return os.str();
}

}  // namespace ffcurve
