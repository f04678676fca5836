#pragma once

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <limits>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "pagen/errors.hpp"
#include "pagen/index/common.hpp"

namespace pagen {

struct NodeRecord {
    std::uint64_t in_degree = 0;
    std::uint64_t out_degree = 0;
    double fitness_in = 0.0;
    double fitness_out = 0.0;
    std::uint32_t self_loops = 0;

    std::uint64_t total_degree() const noexcept { return in_degree + out_degree; }
    /// Edges touching this node; a self-loop counts once.
    std::uint64_t incident_edges() const noexcept { return in_degree + out_degree - self_loops; }
};

struct Edge {
    NodeId tail;
    NodeId head;
    friend bool operator==(const Edge&, const Edge&) = default;
};

enum class DegreeAttribute { in, out, total };

using DegreeHistogram = std::map<std::uint64_t, std::uint64_t>;

/// Writes `tail<TAB>head\n` lines through a local buffer.
class EdgeWriter {
public:
    explicit EdgeWriter(std::ostream& out) : out_(&out) { buffer_.reserve(kFlushAt + 32); }
    EdgeWriter(const EdgeWriter&) = delete;
    EdgeWriter& operator=(const EdgeWriter&) = delete;
    ~EdgeWriter() { flush(); }

    void write(NodeId tail, NodeId head) {
        append(tail);
        buffer_.push_back('\t');
        append(head);
        buffer_.push_back('\n');
        if (buffer_.size() >= kFlushAt)
            flush();
    }

    void flush() {
        if (!buffer_.empty()) {
            out_->write(buffer_.data(), static_cast<std::streamsize>(buffer_.size()));
            buffer_.clear();
        }
    }

private:
    void append(NodeId id) {
        char digits[16];
        const auto end = std::to_chars(digits, digits + sizeof digits, id).ptr;
        buffer_.append(digits, end);
    }

    static constexpr std::size_t kFlushAt = 1 << 16;
    std::ostream* out_;
    std::string buffer_;
};

/// Directed multigraph holding only per-node counters. Edges are optionally
/// retained in memory and/or streamed to an EdgeWriter as they are added.
class Graph {
public:
    Graph() = default;

    void reserve(std::size_t nodes) { nodes_.reserve(nodes); }
    void retain_edges(bool on) { retain_ = on; }
    bool retains_edges() const noexcept { return retain_; }
    /// Not owned; must outlive the graph's mutation phase.
    void stream_edges_to(EdgeWriter* writer) noexcept { writer_ = writer; }

    NodeId add_node(double fitness_in = 0.0, double fitness_out = 0.0) {
        if (nodes_.size() >= std::numeric_limits<NodeId>::max())
            throw UsageError("graph: node id space exhausted");
        nodes_.push_back(NodeRecord{0, 0, fitness_in, fitness_out, 0});
        return static_cast<NodeId>(nodes_.size() - 1);
    }

    void add_edge(NodeId tail, NodeId head) {
        if (tail >= nodes_.size() || head >= nodes_.size())
            throw UsageError("graph: edge " + std::to_string(tail) + "->" + std::to_string(head) +
                             " references an unknown node");
        NodeRecord& t = nodes_[tail];
        NodeRecord& h = nodes_[head];
        ++t.out_degree;
        ++h.in_degree;
        if (tail == head)
            ++t.self_loops;
        ++edge_count_;
        max_in_ = std::max(max_in_, h.in_degree);
        max_out_ = std::max(max_out_, t.out_degree);
        max_total_ = std::max({max_total_, t.total_degree(), h.total_degree()});
        if (retain_)
            edges_.push_back({tail, head});
        if (writer_)
            writer_->write(tail, head);
    }

    std::size_t node_count() const noexcept { return nodes_.size(); }
    std::uint64_t edge_count() const noexcept { return edge_count_; }
    const NodeRecord& node(NodeId id) const { return nodes_.at(id); }
    const std::vector<NodeRecord>& nodes() const noexcept { return nodes_; }
    const std::vector<Edge>& edges() const noexcept { return edges_; }

    std::uint64_t max_in_degree() const noexcept { return max_in_; }
    std::uint64_t max_out_degree() const noexcept { return max_out_; }
    std::uint64_t max_total_degree() const noexcept { return max_total_; }

    std::uint64_t degree(NodeId id, DegreeAttribute attribute) const {
        const NodeRecord& r = node(id);
        switch (attribute) {
        case DegreeAttribute::in: return r.in_degree;
        case DegreeAttribute::out: return r.out_degree;
        case DegreeAttribute::total: return r.total_degree();
        }
        return 0;
    }

private:
    std::vector<NodeRecord> nodes_;
    std::vector<Edge> edges_;
    EdgeWriter* writer_ = nullptr;
    std::uint64_t edge_count_ = 0;
    std::uint64_t max_in_ = 0;
    std::uint64_t max_out_ = 0;
    std::uint64_t max_total_ = 0;
    bool retain_ = false;
};

inline DegreeHistogram degree_histogram(const Graph& g, DegreeAttribute attribute) {
    DegreeHistogram histogram;
    for (const NodeRecord& r : g.nodes()) {
        switch (attribute) {
        case DegreeAttribute::in: ++histogram[r.in_degree]; break;
        case DegreeAttribute::out: ++histogram[r.out_degree]; break;
        case DegreeAttribute::total: ++histogram[r.total_degree()]; break;
        }
    }
    return histogram;
}

/// `degree,count` with one row per occupied degree, ascending.
inline void write_histogram_csv(std::ostream& out, const DegreeHistogram& histogram) {
    out << "degree,count\n";
    for (const auto& [degree, count] : histogram)
        out << degree << ',' << count << '\n';
}

} // namespace pagen
