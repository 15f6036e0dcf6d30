#include "expertrank/text_index.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "expertrank/kernels.hpp"
#include "expertrank/tokenizer.hpp"

namespace expertrank {

std::string_view to_string(Stream stream) { return stream == Stream::title ? "title" : "abstract"; }

std::string_view to_string(AuthorAggregation aggregation) {
    return aggregation == AuthorAggregation::sum ? "sum" : "max";
}

AuthorAggregation author_aggregation_from_string(std::string_view text) {
    if (text == "sum") {
        return AuthorAggregation::sum;
    }
    if (text == "max") {
        return AuthorAggregation::max;
    }
    throw ConfigError("author aggregation must be sum or max, got: " + std::string(text));
}

InvertedIndex InvertedIndex::build(const Corpus& corpus, Stream stream) {
    InvertedIndex index;
    index.stream_ = stream;
    index.lengths_.assign(corpus.size(), 0);
    std::uint64_t total = 0;
    std::unordered_map<std::string, std::uint32_t> counts;
    for (std::size_t d = 0; d < corpus.size(); ++d) {
        const auto& pub = corpus.publications()[d];
        const std::string_view text =
            stream == Stream::title ? std::string_view(pub.title)
                                    : (pub.abstract ? std::string_view(*pub.abstract) : std::string_view{});
        auto tokens = tokenize(text);
        if (tokens.empty()) {
            continue;
        }
        index.lengths_[d] = static_cast<std::uint32_t>(tokens.size());
        total += tokens.size();
        ++index.documents_;
        counts.clear();
        // First-occurrence order keeps term ids independent of hash iteration order.
        std::vector<std::string_view> order;
        for (const auto& t : tokens) {
            if (counts[t]++ == 0) {
                order.push_back(t);
            }
        }
        for (const auto term : order) {
            const std::string key(term);
            auto [it, inserted] =
                index.terms_.try_emplace(key, static_cast<std::uint32_t>(index.postings_.size()));
            if (inserted) {
                index.postings_.emplace_back();
            }
            index.postings_[it->second].push_back({DocId(static_cast<std::uint32_t>(d)), counts[key]});
        }
    }
    index.average_length_ =
        index.documents_ == 0 ? 0.0 : static_cast<double>(total) / static_cast<double>(index.documents_);
    return index;
}

std::span<const InvertedIndex::Posting> InvertedIndex::postings(std::string_view term) const {
    const auto it = terms_.find(std::string(term));
    if (it == terms_.end()) {
        return {};
    }
    return postings_[it->second];
}

std::uint32_t InvertedIndex::frequency(std::string_view term, DocId doc) const {
    const auto list = postings(term);
    const auto it = std::lower_bound(list.begin(), list.end(), doc,
                                     [](const Posting& p, DocId d) { return p.doc < d; });
    return (it != list.end() && it->doc == doc) ? it->freq : 0;
}

double bm25_idf(std::size_t documents, std::size_t document_frequency) {
    const double n = static_cast<double>(documents);
    const double df = static_cast<double>(document_frequency);
    return std::max(0.0, std::log((n - df + 0.5) / (df + 0.5)));
}

double bm25_doc(std::span<const std::string> terms, DocId doc, const InvertedIndex& index,
                const Bm25Settings& settings) {
    const auto len = index.doc_length(doc);
    if (len == 0) {
        return 0.0;
    }
    const kernels::Bm25Params params{settings.k1, settings.b, index.average_length()};
    const double length = static_cast<double>(len);
    double score = 0.0;
    for (const auto& term : terms) {
        const auto freq = index.frequency(term, doc);
        if (freq == 0) {
            continue;
        }
        const double idf = bm25_idf(index.document_count(), index.document_frequency(term));
        const double f = static_cast<double>(freq);
        double weight = 0.0;
        kernels::bm25_term_weights({&f, 1}, {&length, 1}, idf, params, {&weight, 1});
        score += weight;
    }
    return score;
}

double query_idf(std::span<const std::string> terms, const InvertedIndex& index) {
    if (index.document_count() == 0) {
        return 0.0;
    }
    const double n = static_cast<double>(index.document_count());
    double sum = 0.0;
    for (const auto& term : terms) {
        const auto df = std::max<std::size_t>(1, index.document_frequency(term));
        sum += std::log(n / static_cast<double>(df));
    }
    return sum;
}

StreamScores score_stream(std::span<const std::string> terms, const InvertedIndex& index,
                          const Bm25Settings& settings) {
    StreamScores out;
    const std::size_t n = index.corpus_size();
    out.bm25.assign(n, 0.0);
    out.tf.assign(n, 0.0);
    out.matched.assign(n, 0);
    out.idf = query_idf(terms, index);

    const kernels::Bm25Params params{settings.k1, settings.b, index.average_length()};
    std::vector<double> freq;
    std::vector<double> len;
    std::vector<double> weight;
    for (const auto& term : terms) {
        const auto list = index.postings(term);
        if (list.empty()) {
            continue;
        }
        freq.resize(list.size());
        len.resize(list.size());
        weight.resize(list.size());
        for (std::size_t k = 0; k < list.size(); ++k) {
            freq[k] = static_cast<double>(list[k].freq);
            len[k] = static_cast<double>(index.doc_length(list[k].doc));
        }
        const double idf = bm25_idf(index.document_count(), list.size());
        kernels::bm25_term_weights(freq, len, idf, params, weight);
        for (std::size_t k = 0; k < list.size(); ++k) {
            const auto d = list[k].doc.index();
            out.bm25[d] += weight[k];
            out.tf[d] += freq[k] / len[k];
            out.matched[d] = 1;
        }
    }
    for (std::size_t d = 0; d < n; ++d) {
        if (out.matched[d]) {
            out.matched_docs.emplace_back(static_cast<std::uint32_t>(d));
        }
    }
    return out;
}

double author_bm25(const Author& author, const StreamScores& scores, AuthorAggregation aggregation) {
    double result = 0.0;
    for (const auto doc : author.pub_ids) {
        const double s = scores.bm25[doc.index()];
        result = aggregation == AuthorAggregation::sum ? result + s : std::max(result, s);
    }
    return result;
}

double author_tf(const Author& author, const StreamScores& scores) {
    double sum = 0.0;
    for (const auto doc : author.pub_ids) {
        sum += scores.tf[doc.index()];
    }
    return sum;
}

SimpleTextFeatures simple_text_features(const Author& author, const StreamScores& scores,
                                        const InvertedIndex& index, const Corpus& corpus) {
    SimpleTextFeatures f;
    std::unordered_set<AuthorId> people;
    std::optional<int> first;
    std::optional<int> last;
    for (const auto doc : author.pub_ids) {
        if (!scores.matched[doc.index()]) {
            continue;
        }
        const auto& pub = corpus.publication(doc);
        people.insert(pub.author_ids.begin(), pub.author_ids.end());
        if (pub.year) {
            first = first ? std::min(*first, *pub.year) : *pub.year;
            last = last ? std::max(*last, *pub.year) : *pub.year;
        }
        f.doc_length += index.doc_length(doc);
    }
    f.unique_authors = static_cast<double>(people.size());
    f.year_range = first ? static_cast<double>(*last - *first) : 0.0;
    return f;
}

}  // namespace expertrank
