#pragma once

#include <array>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "expertrank/aggregate.hpp"
#include "expertrank/citation_graph.hpp"
#include "expertrank/corpus.hpp"
#include "expertrank/features.hpp"
#include "expertrank/graph_metrics.hpp"
#include "expertrank/text_index.hpp"

namespace expertrank {

struct EngineOptions {
    Bm25Settings bm25;
    AuthorAggregation aggregation = AuthorAggregation::sum;
    EdgeWeighting weighting = EdgeWeighting::citing;
    PageRankOptions pagerank;
    AgeWeighting age;
    int now_year = 0;
};

/// Everything about a query that does not depend on the candidate.
struct QueryEvidence {
    std::string text;
    std::vector<std::string> terms;
    StreamScores title;
    StreamScores abstract;
    std::vector<std::uint8_t> topical;  // query term in title or abstract
    std::vector<DocId> topical_docs;
    std::uint32_t hb_index = 0;
};

using FeatureVector = std::array<double, kFeatureCount>;

/// Indexes, citation graph and PageRank built once over a corpus; every query
/// method is const and safe to call from several threads.
class ExpertSearchEngine {
public:
    /// The corpus must outlive the engine.
    ExpertSearchEngine(const Corpus& corpus, EngineOptions options);

    [[nodiscard]] const Corpus& corpus() const { return corpus_; }
    [[nodiscard]] const EngineOptions& options() const { return options_; }
    [[nodiscard]] const InvertedIndex& index(Stream stream) const {
        return stream == Stream::title ? title_ : abstract_;
    }
    [[nodiscard]] const CitationGraph& graph() const { return graph_; }
    [[nodiscard]] const PageRankResult& pagerank() const { return pagerank_; }
    [[nodiscard]] const InstitutionMetrics& institutions() const { return institutions_; }

    [[nodiscard]] bool available(Feature feature) const;

    [[nodiscard]] QueryEvidence evidence(std::string_view query) const;

    /// All raw feature values for one candidate.
    [[nodiscard]] FeatureVector features(AuthorId candidate, const QueryEvidence& evidence) const;

    /// Matrix over the requested features; unavailable ones are left out and listed.
    [[nodiscard]] FeatureMatrix extract(std::string query_id, const QueryEvidence& evidence,
                                        std::span<const AuthorId> candidates,
                                        std::span<const Feature> enabled) const;

    /// Throws DataError on an empty pool.
    [[nodiscard]] RankedList rank(std::string query_id, std::string_view query, std::span<const AuthorId> candidates,
                                  std::span<const Feature> enabled, FusionMethod method) const;

    /// Author-level BM25 over both streams, one score per author.
    [[nodiscard]] std::vector<double> author_bm25_scores(const QueryEvidence& evidence) const;
    /// Every corpus author, best BM25 first, ties by id.
    [[nodiscard]] std::vector<AuthorId> authors_by_bm25(std::string_view query) const;

private:
    const Corpus& corpus_;
    EngineOptions options_;
    InvertedIndex title_;
    InvertedIndex abstract_;
    CitationGraph graph_;
    PageRankResult pagerank_;
    InstitutionMetrics institutions_;
};

}  // namespace expertrank
