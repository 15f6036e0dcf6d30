#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "expertrank/corpus.hpp"

namespace expertrank {

enum class Stream { title, abstract };

std::string_view to_string(Stream stream);

/// Inverted index over one text stream. Documents without the stream (no
/// abstract, or a title with no tokens) have length 0 and appear in no postings.
class InvertedIndex {
public:
    struct Posting {
        DocId doc;
        std::uint32_t freq;
    };

    static InvertedIndex build(const Corpus& corpus, Stream stream);

    [[nodiscard]] Stream stream() const { return stream_; }
    /// Postings sorted by document; empty for unseen terms.
    [[nodiscard]] std::span<const Posting> postings(std::string_view term) const;
    [[nodiscard]] std::uint32_t frequency(std::string_view term, DocId doc) const;
    [[nodiscard]] std::size_t document_frequency(std::string_view term) const { return postings(term).size(); }
    [[nodiscard]] std::uint32_t doc_length(DocId doc) const { return lengths_.at(doc.index()); }
    /// |D|: documents with a non-empty stream.
    [[nodiscard]] std::size_t document_count() const { return documents_; }
    /// Mean |d| over documents with a non-empty stream.
    [[nodiscard]] double average_length() const { return average_length_; }
    [[nodiscard]] std::size_t corpus_size() const { return lengths_.size(); }
    [[nodiscard]] std::size_t vocabulary_size() const { return postings_.size(); }

private:
    Stream stream_ = Stream::title;
    std::unordered_map<std::string, std::uint32_t> terms_;
    std::vector<std::vector<Posting>> postings_;
    std::vector<std::uint32_t> lengths_;
    std::size_t documents_ = 0;
    double average_length_ = 0.0;
};

struct Bm25Settings {
    double k1 = 1.2;
    double b = 0.75;
};

enum class AuthorAggregation { sum, max };

std::string_view to_string(AuthorAggregation aggregation);
AuthorAggregation author_aggregation_from_string(std::string_view text);

/// log((N - df + 0.5) / (df + 0.5)), floored at 0. The floor is what keeps every
/// per-term BM25 contribution non-negative for terms in more than half the documents.
double bm25_idf(std::size_t documents, std::size_t document_frequency);

/// BM25 of one document. `terms` are distinct query terms (see query_terms()).
double bm25_doc(std::span<const std::string> terms, DocId doc, const InvertedIndex& index,
                const Bm25Settings& settings = {});

/// Sum over query terms of log(|D| / df); unseen terms count as df = 1.
double query_idf(std::span<const std::string> terms, const InvertedIndex& index);

/// Per-document evidence for one query over one stream.
struct StreamScores {
    std::vector<double> bm25;           // indexed by DocId, 0 for non-matching documents
    std::vector<double> tf;             // sum over terms of freq / |d|
    std::vector<std::uint8_t> matched;  // at least one query term present
    std::vector<DocId> matched_docs;    // ascending
    double idf = 0.0;                   // query_idf for the stream
};

StreamScores score_stream(std::span<const std::string> terms, const InvertedIndex& index,
                          const Bm25Settings& settings = {});

double author_bm25(const Author& author, const StreamScores& scores,
                   AuthorAggregation aggregation = AuthorAggregation::sum);
double author_tf(const Author& author, const StreamScores& scores);

struct SimpleTextFeatures {
    double unique_authors = 0.0;  // distinct authors over the author's matching documents
    double year_range = 0.0;      // last - first year among them
    double doc_length = 0.0;      // total stream tokens over them
};

SimpleTextFeatures simple_text_features(const Author& author, const StreamScores& scores,
                                        const InvertedIndex& index, const Corpus& corpus);

}  // namespace expertrank
