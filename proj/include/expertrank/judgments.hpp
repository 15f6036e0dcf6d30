#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "expertrank/corpus.hpp"

namespace expertrank {

struct Topic {
    std::string id;     // filesystem-safe slug of the query text
    std::string query;
    std::vector<AuthorId> positives;  // in file order, deduplicated
    std::vector<AuthorId> negatives;  // BM25-selected first, then random
    std::size_t bm25_negatives = 0;

    /// Positives followed by negatives.
    [[nodiscard]] std::vector<AuthorId> pool() const;
};

struct JudgmentSet {
    std::vector<Topic> topics;

    [[nodiscard]] bool empty() const { return topics.empty(); }
    [[nodiscard]] const Topic* find(std::string_view topic_id) const;
};

struct JudgmentDiagnostics {
    struct Unresolved {
        std::string topic;
        std::string entry;
    };
    std::vector<Unresolved> unresolved;
    std::vector<std::string> excluded_topics;  // no resolvable positive
    std::size_t case_folded_matches = 0;

    void write(std::ostream& out) const;
};

struct LoadedJudgments {
    JudgmentSet judgments;
    JudgmentDiagnostics diagnostics;
};

/// Blocks separated by blank lines: `Q<TAB>query text`, then one author per
/// line. An all-digit line is an author id, anything else a name. Names match
/// exactly after whitespace normalization, then case-insensitively.
LoadedJudgments read_judgments(std::istream& in, const Corpus& corpus);
LoadedJudgments load_judgments(const std::filesystem::path& path, const Corpus& corpus);

std::string topic_slug(std::string_view query);

/// Ranks every corpus author for a query text, best first.
using AuthorRanker = std::function<std::vector<AuthorId>(std::string_view query)>;

/// Adds n negatives to every topic with n positives: the ceil(n/2) best-ranked
/// non-positive authors, then floor(n/2) drawn uniformly from the remaining
/// non-positive authors. Throws DataError naming the topic when the corpus has
/// fewer than 2n authors.
JudgmentSet augment_negatives(const JudgmentSet& judgments, const Corpus& corpus, const AuthorRanker& ranker,
                              std::uint64_t seed);

/// Tab-separated `topic_id author_id label role` rows (label 1 positive, 0 negative;
/// role positive|bm25|random).
void write_pools(std::ostream& out, const JudgmentSet& judgments);

}  // namespace expertrank
