#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "expertrank/citation_graph.hpp"
#include "expertrank/corpus.hpp"

namespace expertrank {

// Bibliometric indexes over citation-count vectors. Inputs may be in any order;
// every function sorts a copy.

/// Largest h such that h entries are >= h.
std::uint32_t h_index(std::span<const std::uint32_t> citations);
/// Same threshold over real-valued paper scores.
std::uint32_t h_index(std::span<const double> scores);
/// Largest g <= size such that the top g entries sum to at least g^2.
std::uint32_t g_index(std::span<const std::uint32_t> citations);
/// total / h^2, 0 when h = 0.
double a_index(std::span<const std::uint32_t> citations);
/// sqrt(sum of the top h entries - h^2), 0 when h = 0.
double e_index(std::span<const std::uint32_t> citations);

/// Citation record of one author, papers ordered by citations descending
/// (ties by corpus order).
struct AuthorCitationStats {
    std::vector<std::uint32_t> citations;
    std::vector<std::uint32_t> author_counts;  // co-author count of the same paper
    std::uint64_t total = 0;
};

AuthorCitationStats author_citation_stats(const Author& author, const Corpus& corpus,
                                          const CitationGraph& graph);

double a_index(const AuthorCitationStats& stats);
/// h divided by the mean author count over the h-core papers; 0 when h = 0.
double individual_h_index(const AuthorCitationStats& stats);

struct AgeWeighting {
    double gamma = 4.0;
    double delta = 1.0;
};

/// Age in years counted inclusively (a paper from now_year has age 1). Unknown
/// years count as now_year; future years clamp to 1.
double publication_age(std::optional<int> year, int now_year);

/// gamma * age(paper)^-delta * citations(paper)
double contemporary_score(DocId doc, const Corpus& corpus, const CitationGraph& graph, int now_year,
                          const AgeWeighting& weighting = {});
/// gamma * sum over citing papers x of age(x)^-delta. A citing paper without a
/// year takes the cited paper's age.
double trend_score(DocId doc, const Corpus& corpus, const CitationGraph& graph, int now_year,
                   const AgeWeighting& weighting = {});

std::uint32_t contemporary_h_index(const Author& author, const Corpus& corpus, const CitationGraph& graph,
                                   int now_year, const AgeWeighting& weighting = {});
std::uint32_t trend_h_index(const Author& author, const Corpus& corpus, const CitationGraph& graph,
                            int now_year, const AgeWeighting& weighting = {});

/// h-index over every corpus paper matching the query (candidate-independent).
std::uint32_t hb_index(std::span<const DocId> matching_docs, const CitationGraph& graph);

/// h/a/g indexes per institution, over papers with at least one author from it.
class InstitutionMetrics {
public:
    struct Indexes {
        std::uint32_t h = 0;
        double a = 0.0;
        std::uint32_t g = 0;
    };

    static InstitutionMetrics build(const Corpus& corpus, const CitationGraph& graph);

    /// False when no author in the corpus has an institution.
    [[nodiscard]] bool available() const { return available_; }
    [[nodiscard]] std::optional<Indexes> lookup(const std::string& institution) const;
    [[nodiscard]] std::size_t size() const { return by_name_.size(); }

private:
    bool available_ = false;
    std::unordered_map<std::string, Indexes> by_name_;
};

struct CitationCountFeatures {
    double total_topic = 0.0;  // over the author's query-matching papers
    double avg_topic = 0.0;
    double max_topic = 0.0;
    double per_year = 0.0;       // all citations / (career span + 1)
    double collaborators = 0.0;  // distinct co-authors over all papers
};

/// `topical` is indexed by DocId: non-zero for papers matching the query.
CitationCountFeatures citation_count_features(const Author& author, std::span<const std::uint8_t> topical,
                                              const Corpus& corpus, const CitationGraph& graph);

struct PageRankFeatures {
    double sum = 0.0;
    double mean = 0.0;
};

PageRankFeatures pagerank_features(const Author& author, std::span<const std::uint8_t> topical,
                                   std::span<const double> scores);

/// max year - min year over the author's papers with a known year.
int career_span(const Author& author, const Corpus& corpus);

}  // namespace expertrank
