#include "expertrank/citation_graph.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "expertrank/kernels.hpp"

namespace expertrank {

namespace {

constexpr double kJump = 0.5;
constexpr double kDamping = 0.5;

}  // namespace

std::string_view to_string(EdgeWeighting weighting) {
    switch (weighting) {
        case EdgeWeighting::citing:
            return "citing";
        case EdgeWeighting::cited:
            return "cited";
        case EdgeWeighting::unit:
            return "unit";
    }
    return "citing";
}

EdgeWeighting edge_weighting_from_string(std::string_view text) {
    if (text == "citing") {
        return EdgeWeighting::citing;
    }
    if (text == "cited") {
        return EdgeWeighting::cited;
    }
    if (text == "unit") {
        return EdgeWeighting::unit;
    }
    throw ConfigError("edge weighting must be citing, cited or unit, got: " + std::string(text));
}

CitationGraph CitationGraph::from_edges(std::size_t nodes, std::span<const Edge> edges) {
    std::vector<Edge> sorted(edges.begin(), edges.end());
    for (const auto& e : sorted) {
        if (e.source >= nodes || e.target >= nodes) {
            throw std::invalid_argument("edge endpoint out of range");
        }
        if (!(e.weight > 0.0)) {
            throw std::invalid_argument("edge weight must be positive");
        }
    }
    std::stable_sort(sorted.begin(), sorted.end(), [](const Edge& a, const Edge& b) {
        return a.target != b.target ? a.target < b.target : a.source < b.source;
    });
    sorted.erase(std::unique(sorted.begin(), sorted.end(),
                             [](const Edge& a, const Edge& b) {
                                 return a.source == b.source && a.target == b.target;
                             }),
                 sorted.end());

    CitationGraph g;
    g.out_degree_.assign(nodes, 0);
    g.offsets_.assign(nodes + 1, 0);
    g.sources_.reserve(sorted.size());
    g.weights_.reserve(sorted.size());
    for (const auto& e : sorted) {
        ++g.offsets_[e.target + 1];
        ++g.out_degree_[e.source];
        g.sources_.push_back(e.source);
        g.weights_.push_back(e.weight);
    }
    for (std::size_t i = 0; i < nodes; ++i) {
        g.offsets_[i + 1] += g.offsets_[i];
    }
    return g;
}

CitationGraph build_citation_graph(const Corpus& corpus, EdgeWeighting weighting) {
    std::vector<CitationGraph::Edge> edges;
    edges.reserve(corpus.stats().citation_links);
    const auto pubs = corpus.publications();
    for (std::size_t d = 0; d < pubs.size(); ++d) {
        for (const auto ref : pubs[d].references) {
            double weight = 1.0;
            if (weighting == EdgeWeighting::citing) {
                weight = 1.0 / static_cast<double>(pubs[d].author_ids.size());
            } else if (weighting == EdgeWeighting::cited) {
                weight = 1.0 / static_cast<double>(pubs[ref.index()].author_ids.size());
            }
            edges.push_back({static_cast<std::uint32_t>(d), ref.value(), weight});
        }
    }
    return CitationGraph::from_edges(pubs.size(), edges);
}

PageRankResult pagerank(const CitationGraph& graph, const PageRankOptions& options) {
    if (!(options.tolerance > 0.0)) {
        throw std::invalid_argument("pagerank tolerance must be positive");
    }
    if (options.max_iterations < 1) {
        throw std::invalid_argument("pagerank max_iterations must be at least 1");
    }
    PageRankResult result;
    const std::size_t n = graph.node_count();
    if (n == 0) {
        result.converged = true;
        return result;
    }

    // Per-edge coefficient alpha_j / outdeg(j).
    const auto sources = graph.in_sources();
    const auto weights = graph.in_edge_weights();
    const auto degree = graph.out_degrees();
    std::vector<double> coef(sources.size());
    for (std::size_t e = 0; e < sources.size(); ++e) {
        coef[e] = weights[e] / static_cast<double>(degree[sources[e]]);
    }

    const double jump = kJump / static_cast<double>(n);
    std::vector<double> prev(n, 1.0 / static_cast<double>(n));
    std::vector<double> next(n, 0.0);
    for (int it = 1; it <= options.max_iterations; ++it) {
        kernels::propagate(graph.in_offsets(), sources, coef, prev, jump, kDamping, next);
        result.last_change = kernels::l1_distance(next, prev);
        result.iterations = it;
        prev.swap(next);
        if (result.last_change < options.tolerance) {
            result.converged = true;
            break;
        }
    }
    result.scores = std::move(prev);
    return result;
}

void write_pagerank(std::ostream& out, const Corpus& corpus, const PageRankResult& result) {
    char buf[64];
    const auto pubs = corpus.publications();
    for (std::size_t d = 0; d < pubs.size() && d < result.scores.size(); ++d) {
        std::snprintf(buf, sizeof buf, "%.17g", result.scores[d]);
        out << pubs[d].pub_id << '\t' << buf << '\n';
    }
}

}  // namespace expertrank
