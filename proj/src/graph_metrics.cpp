#include "expertrank/graph_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <unordered_set>

namespace expertrank {

namespace {

template <typename T>
std::vector<T> sorted_descending(std::span<const T> values) {
    std::vector<T> v(values.begin(), values.end());
    std::sort(v.begin(), v.end(), std::greater<>());
    return v;
}

template <typename T>
std::uint32_t threshold(const std::vector<T>& desc) {
    std::uint32_t h = 0;
    while (h < desc.size() && desc[h] >= static_cast<T>(h + 1)) {
        ++h;
    }
    return h;
}

}  // namespace

std::uint32_t h_index(std::span<const std::uint32_t> citations) {
    return threshold(sorted_descending(citations));
}

std::uint32_t h_index(std::span<const double> scores) { return threshold(sorted_descending(scores)); }

std::uint32_t g_index(std::span<const std::uint32_t> citations) {
    const auto desc = sorted_descending(citations);
    std::uint64_t cumulative = 0;
    std::uint32_t g = 0;
    for (std::size_t i = 0; i < desc.size(); ++i) {
        cumulative += desc[i];
        const auto candidate = static_cast<std::uint64_t>(i + 1);
        if (cumulative >= candidate * candidate) {
            g = static_cast<std::uint32_t>(candidate);
        }
    }
    return g;
}

double a_index(std::span<const std::uint32_t> citations) {
    const auto h = h_index(citations);
    if (h == 0) {
        return 0.0;
    }
    const auto total = std::accumulate(citations.begin(), citations.end(), std::uint64_t{0});
    return static_cast<double>(total) / (static_cast<double>(h) * static_cast<double>(h));
}

double e_index(std::span<const std::uint32_t> citations) {
    const auto desc = sorted_descending(citations);
    const auto h = threshold(desc);
    if (h == 0) {
        return 0.0;
    }
    const auto core = std::accumulate(desc.begin(), desc.begin() + h, std::uint64_t{0});
    const auto excess = core - static_cast<std::uint64_t>(h) * h;
    return std::sqrt(static_cast<double>(excess));
}

AuthorCitationStats author_citation_stats(const Author& author, const Corpus& corpus,
                                          const CitationGraph& graph) {
    std::vector<DocId> docs = author.pub_ids;
    std::sort(docs.begin(), docs.end());
    std::stable_sort(docs.begin(), docs.end(), [&](DocId a, DocId b) {
        return graph.citation_count(a) > graph.citation_count(b);
    });
    AuthorCitationStats stats;
    for (const auto d : docs) {
        const auto c = graph.citation_count(d);
        stats.citations.push_back(c);
        stats.author_counts.push_back(static_cast<std::uint32_t>(corpus.publication(d).author_ids.size()));
        stats.total += c;
    }
    return stats;
}

double a_index(const AuthorCitationStats& stats) { return a_index(std::span(stats.citations)); }

double individual_h_index(const AuthorCitationStats& stats) {
    const auto h = threshold(stats.citations);
    if (h == 0) {
        return 0.0;
    }
    const auto authors = std::accumulate(stats.author_counts.begin(), stats.author_counts.begin() + h,
                                         std::uint64_t{0});
    const double mean = static_cast<double>(authors) / static_cast<double>(h);
    return static_cast<double>(h) / mean;
}

double publication_age(std::optional<int> year, int now_year) {
    const int y = year.value_or(now_year);
    return static_cast<double>(std::max(1, now_year - y + 1));
}

double contemporary_score(DocId doc, const Corpus& corpus, const CitationGraph& graph, int now_year,
                          const AgeWeighting& weighting) {
    const double age = publication_age(corpus.publication(doc).year, now_year);
    return weighting.gamma * std::pow(age, -weighting.delta) * static_cast<double>(graph.citation_count(doc));
}

double trend_score(DocId doc, const Corpus& corpus, const CitationGraph& graph, int now_year,
                   const AgeWeighting& weighting) {
    const auto cited_year = corpus.publication(doc).year;
    double sum = 0.0;
    for (const auto source : graph.citing(doc)) {
        auto year = corpus.publication(DocId(source)).year;
        const double age = publication_age(year ? year : cited_year, now_year);
        sum += std::pow(age, -weighting.delta);
    }
    return weighting.gamma * sum;
}

std::uint32_t contemporary_h_index(const Author& author, const Corpus& corpus, const CitationGraph& graph,
                                   int now_year, const AgeWeighting& weighting) {
    std::vector<double> scores;
    scores.reserve(author.pub_ids.size());
    for (const auto d : author.pub_ids) {
        scores.push_back(contemporary_score(d, corpus, graph, now_year, weighting));
    }
    return h_index(std::span<const double>(scores));
}

std::uint32_t trend_h_index(const Author& author, const Corpus& corpus, const CitationGraph& graph,
                            int now_year, const AgeWeighting& weighting) {
    std::vector<double> scores;
    scores.reserve(author.pub_ids.size());
    for (const auto d : author.pub_ids) {
        scores.push_back(trend_score(d, corpus, graph, now_year, weighting));
    }
    return h_index(std::span<const double>(scores));
}

std::uint32_t hb_index(std::span<const DocId> matching_docs, const CitationGraph& graph) {
    std::vector<std::uint32_t> counts;
    counts.reserve(matching_docs.size());
    for (const auto d : matching_docs) {
        counts.push_back(graph.citation_count(d));
    }
    return h_index(std::span<const std::uint32_t>(counts));
}

InstitutionMetrics InstitutionMetrics::build(const Corpus& corpus, const CitationGraph& graph) {
    InstitutionMetrics m;
    std::unordered_map<std::string, std::vector<std::uint32_t>> counts;
    const auto pubs = corpus.publications();
    for (std::size_t d = 0; d < pubs.size(); ++d) {
        std::unordered_set<std::string_view> seen;
        for (const auto a : pubs[d].author_ids) {
            const auto& inst = corpus.author(a).institution;
            if (inst && seen.insert(*inst).second) {
                counts[*inst].push_back(graph.citation_count(DocId(static_cast<std::uint32_t>(d))));
            }
        }
    }
    m.available_ = corpus.has_institutions();
    for (const auto& [name, cites] : counts) {
        const std::span<const std::uint32_t> v(cites);
        m.by_name_.emplace(name, Indexes{h_index(v), a_index(v), g_index(v)});
    }
    return m;
}

std::optional<InstitutionMetrics::Indexes> InstitutionMetrics::lookup(const std::string& institution) const {
    if (const auto it = by_name_.find(institution); it != by_name_.end()) {
        return it->second;
    }
    return std::nullopt;
}

int career_span(const Author& author, const Corpus& corpus) {
    std::optional<int> first;
    std::optional<int> last;
    for (const auto d : author.pub_ids) {
        if (const auto y = corpus.publication(d).year) {
            first = first ? std::min(*first, *y) : *y;
            last = last ? std::max(*last, *y) : *y;
        }
    }
    return first ? *last - *first : 0;
}

CitationCountFeatures citation_count_features(const Author& author, std::span<const std::uint8_t> topical,
                                              const Corpus& corpus, const CitationGraph& graph) {
    CitationCountFeatures f;
    std::size_t matching = 0;
    std::uint64_t all = 0;
    std::unordered_set<AuthorId> collaborators;
    for (const auto d : author.pub_ids) {
        const auto c = graph.citation_count(d);
        all += c;
        if (topical[d.index()]) {
            ++matching;
            f.total_topic += c;
            f.max_topic = std::max(f.max_topic, static_cast<double>(c));
        }
        for (const auto a : corpus.publication(d).author_ids) {
            if (a != author.id) {
                collaborators.insert(a);
            }
        }
    }
    f.avg_topic = matching == 0 ? 0.0 : f.total_topic / static_cast<double>(matching);
    f.per_year = static_cast<double>(all) / static_cast<double>(career_span(author, corpus) + 1);
    f.collaborators = static_cast<double>(collaborators.size());
    return f;
}

PageRankFeatures pagerank_features(const Author& author, std::span<const std::uint8_t> topical,
                                   std::span<const double> scores) {
    PageRankFeatures f;
    std::size_t matching = 0;
    for (const auto d : author.pub_ids) {
        if (topical[d.index()]) {
            ++matching;
            f.sum += scores[d.index()];
        }
    }
    f.mean = matching == 0 ? 0.0 : f.sum / static_cast<double>(matching);
    return f;
}

}  // namespace expertrank
