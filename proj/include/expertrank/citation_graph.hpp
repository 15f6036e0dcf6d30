#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

#include "expertrank/corpus.hpp"

namespace expertrank {

/// Which paper's author count sets the weight of a citation link.
enum class EdgeWeighting {
    citing,  // alpha = 1 / |authors(citing paper)|
    cited,   // alpha = 1 / |authors(cited paper)|
    unit,    // alpha = 1
};

std::string_view to_string(EdgeWeighting weighting);
EdgeWeighting edge_weighting_from_string(std::string_view text);

/// Directed citation graph, citing -> cited, stored as CSR over in-edges.
class CitationGraph {
public:
    struct Edge {
        std::uint32_t source;
        std::uint32_t target;
        double weight;
    };

    /// Duplicate (source, target) pairs collapse into one edge, first weight kept.
    /// Throws std::invalid_argument on out-of-range endpoints or non-positive weights.
    static CitationGraph from_edges(std::size_t nodes, std::span<const Edge> edges);

    [[nodiscard]] std::size_t node_count() const { return out_degree_.size(); }
    [[nodiscard]] std::size_t edge_count() const { return sources_.size(); }

    /// Number of papers citing `doc`.
    [[nodiscard]] std::uint32_t citation_count(DocId doc) const {
        return offsets_[doc.index() + 1] - offsets_[doc.index()];
    }
    [[nodiscard]] std::uint32_t out_degree(DocId doc) const { return out_degree_.at(doc.index()); }
    [[nodiscard]] std::span<const std::uint32_t> citing(DocId doc) const {
        return std::span(sources_).subspan(offsets_[doc.index()], citation_count(doc));
    }
    [[nodiscard]] std::span<const double> in_weights(DocId doc) const {
        return std::span(weights_).subspan(offsets_[doc.index()], citation_count(doc));
    }

    [[nodiscard]] std::span<const std::uint32_t> in_offsets() const { return offsets_; }
    [[nodiscard]] std::span<const std::uint32_t> in_sources() const { return sources_; }
    [[nodiscard]] std::span<const double> in_edge_weights() const { return weights_; }
    [[nodiscard]] std::span<const std::uint32_t> out_degrees() const { return out_degree_; }

private:
    std::vector<std::uint32_t> offsets_{0};
    std::vector<std::uint32_t> sources_;
    std::vector<double> weights_;
    std::vector<std::uint32_t> out_degree_;
};

/// One node per publication, one edge per resolved reference.
CitationGraph build_citation_graph(const Corpus& corpus, EdgeWeighting weighting = EdgeWeighting::citing);

struct PageRankOptions {
    double tolerance = 1e-10;
    int max_iterations = 100;
};

struct PageRankResult {
    std::vector<double> scores;  // indexed by DocId
    int iterations = 0;
    double last_change = 0.0;  // L1 distance between the last two iterates
    bool converged = false;
};

/// Fixed-point iteration of
///   Pr_i = 0.5 / N + 0.5 * sum_{j -> i} alpha_j * Pr_j / outdeg(j)
/// from the uniform vector. Mass reaching nodes with no out-links is not
/// redistributed. Stops when the L1 change drops below the tolerance; otherwise
/// returns the last iterate with converged == false.
PageRankResult pagerank(const CitationGraph& graph, const PageRankOptions& options = {});

/// `pub_id<TAB>score` per publication, in corpus order.
void write_pagerank(std::ostream& out, const Corpus& corpus, const PageRankResult& result);

}  // namespace expertrank
