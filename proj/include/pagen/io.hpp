#pragma once

#include <charconv>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pagen/analysis.hpp"
#include "pagen/graph.hpp"

namespace pagen {

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

template <class Int>
bool parse_int(std::string_view text, Int& value) {
    const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    return res.ec == std::errc{} && res.ptr == text.data() + text.size();
}

} // namespace detail

/// Reads `tail<TAB>head` lines (any blank separator; `#` comments and blank
/// lines skipped). Node ids become dense 0..max id; edges are retained.
inline Graph read_edge_list(std::istream& in) {
    std::vector<Edge> edges;
    NodeId max_id = 0;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto text = detail::trim(line);
        if (text.empty() || text.front() == '#')
            continue;
        const auto split = text.find_first_of(" \t");
        Edge e{};
        if (split == std::string_view::npos || !detail::parse_int(text.substr(0, split), e.tail) ||
            !detail::parse_int(detail::trim(text.substr(split + 1)), e.head))
            throw ParseError("edge list: expected 'tail<TAB>head' with non-negative integer ids", line_no);
        max_id = std::max({max_id, e.tail, e.head});
        edges.push_back(e);
    }
    if (edges.empty())
        throw ParseError("edge list: no edges", line_no);
    Graph g;
    g.retain_edges(true);
    g.reserve(static_cast<std::size_t>(max_id) + 1);
    for (std::uint64_t v = 0; v <= max_id; ++v)
        g.add_node();
    for (const Edge& e : edges)
        g.add_edge(e.tail, e.head);
    return g;
}

/// Reads a `degree,count` CSV as written by write_histogram_csv.
inline DegreeHistogram read_histogram_csv(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    DegreeHistogram histogram;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        const auto text = detail::trim(line);
        if (text.empty())
            continue;
        if (!header_seen) {
            header_seen = true;
            if (text == "degree,count")
                continue;
        }
        const auto comma = text.find(',');
        std::uint64_t degree = 0, count = 0;
        if (comma == std::string_view::npos || !detail::parse_int(detail::trim(text.substr(0, comma)), degree) ||
            !detail::parse_int(detail::trim(text.substr(comma + 1)), count))
            throw ParseError("histogram csv: expected 'degree,count'", line_no);
        histogram[degree] += count;
    }
    if (histogram.empty())
        throw ParseError("histogram csv: no rows", line_no);
    return histogram;
}

/// `degree,ccdf`, ascending.
inline void write_ccdf_csv(std::ostream& out, std::span<const CcdfPoint> points) {
    out << "degree,ccdf\n";
    const auto old_precision = out.precision(17);
    for (const CcdfPoint& pt : points)
        out << pt.degree << ',' << pt.ccdf << '\n';
    out.precision(old_precision);
}

} // namespace pagen
