#include "expertrank/engine.hpp"

#include <algorithm>
#include <numeric>

#include "expertrank/profile.hpp"
#include "expertrank/tokenizer.hpp"

namespace expertrank {

ExpertSearchEngine::ExpertSearchEngine(const Corpus& corpus, EngineOptions options)
    : corpus_(corpus),
      options_(options),
      title_(InvertedIndex::build(corpus, Stream::title)),
      abstract_(InvertedIndex::build(corpus, Stream::abstract)),
      graph_(build_citation_graph(corpus, options.weighting)),
      pagerank_(expertrank::pagerank(graph_, options.pagerank)),
      institutions_(InstitutionMetrics::build(corpus, graph_)) {}

bool ExpertSearchEngine::available(Feature feature) const {
    switch (feature) {
        case Feature::institution_h_index:
        case Feature::institution_a_index:
        case Feature::institution_g_index:
            return institutions_.available();
        default:
            return true;
    }
}

QueryEvidence ExpertSearchEngine::evidence(std::string_view query) const {
    QueryEvidence ev;
    ev.text = std::string(query);
    ev.terms = query_terms(query);
    ev.title = score_stream(ev.terms, title_, options_.bm25);
    ev.abstract = score_stream(ev.terms, abstract_, options_.bm25);
    ev.topical.assign(corpus_.size(), 0);
    for (std::size_t d = 0; d < corpus_.size(); ++d) {
        if (ev.title.matched[d] || ev.abstract.matched[d]) {
            ev.topical[d] = 1;
            ev.topical_docs.emplace_back(static_cast<std::uint32_t>(d));
        }
    }
    ev.hb_index = hb_index(ev.topical_docs, graph_);
    return ev;
}

FeatureVector ExpertSearchEngine::features(AuthorId candidate, const QueryEvidence& ev) const {
    using F = Feature;
    FeatureVector v{};
    const auto put = [&](Feature f, double value) { v[static_cast<std::size_t>(f)] = value; };
    const Author& author = corpus_.author(candidate);

    const auto text = [&](const StreamScores& scores, const InvertedIndex& index, F bm25, F tf, F idf, F people,
                          F years, F length) {
        put(bm25, author_bm25(author, scores, options_.aggregation));
        put(tf, author_tf(author, scores));
        put(idf, scores.idf);
        const auto simple = simple_text_features(author, scores, index, corpus_);
        put(people, simple.unique_authors);
        put(years, simple.year_range);
        put(length, simple.doc_length);
    };
    text(ev.title, title_, F::bm25_title, F::tf_title, F::idf_title, F::unique_authors_title, F::year_range_title,
         F::doc_length_title);
    text(ev.abstract, abstract_, F::bm25_abstract, F::tf_abstract, F::idf_abstract, F::unique_authors_abstract,
         F::year_range_abstract, F::doc_length_abstract);

    const auto profile = profile_features(author, ev.topical, corpus_);
    put(F::conf_pubs_topic, profile.conf_pubs_with_topic);
    put(F::journal_pubs_topic, profile.journal_pubs_with_topic);
    put(F::conf_pubs_total, profile.conf_pubs_total);
    put(F::journal_pubs_total, profile.journal_pubs_total);
    put(F::avg_pubs_per_year, profile.avg_pubs_per_year);
    put(F::career_span, profile.career_span_years);

    const auto counts = citation_count_features(author, ev.topical, corpus_, graph_);
    put(F::citations_total_topic, counts.total_topic);
    put(F::citations_avg_topic, counts.avg_topic);
    put(F::citations_max_topic, counts.max_topic);
    put(F::citations_per_year, counts.per_year);
    put(F::collaborators, counts.collaborators);

    const auto stats = author_citation_stats(author, corpus_, graph_);
    const std::span<const std::uint32_t> cites(stats.citations);
    put(F::h_index, h_index(cites));
    put(F::hb_index, ev.hb_index);
    put(F::contemporary_h_index, contemporary_h_index(author, corpus_, graph_, options_.now_year, options_.age));
    put(F::trend_h_index, trend_h_index(author, corpus_, graph_, options_.now_year, options_.age));
    put(F::individual_h_index, individual_h_index(stats));
    put(F::a_index, a_index(stats));
    put(F::g_index, g_index(cites));
    put(F::e_index, e_index(cites));

    if (author.institution) {
        if (const auto inst = institutions_.lookup(*author.institution)) {
            put(F::institution_h_index, inst->h);
            put(F::institution_a_index, inst->a);
            put(F::institution_g_index, inst->g);
        }
    }

    const auto pr = pagerank_features(author, ev.topical, pagerank_.scores);
    put(F::pagerank_sum_topic, pr.sum);
    put(F::pagerank_avg_topic, pr.mean);
    return v;
}

FeatureMatrix ExpertSearchEngine::extract(std::string query_id, const QueryEvidence& ev,
                                          std::span<const AuthorId> candidates,
                                          std::span<const Feature> enabled) const {
    std::vector<Feature> columns;
    std::vector<Feature> missing;
    for (const auto f : enabled) {
        (available(f) ? columns : missing).push_back(f);
    }
    FeatureMatrix matrix(std::move(query_id), {candidates.begin(), candidates.end()}, columns);
    matrix.set_unavailable(std::move(missing));
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        const auto values = features(candidates[i], ev);
        for (std::size_t j = 0; j < columns.size(); ++j) {
            matrix.set(i, j, values[static_cast<std::size_t>(columns[j])]);
        }
    }
    return matrix;
}

RankedList ExpertSearchEngine::rank(std::string query_id, std::string_view query,
                                    std::span<const AuthorId> candidates, std::span<const Feature> enabled,
                                    FusionMethod method) const {
    if (candidates.empty()) {
        throw DataError("query " + query_id + ": empty candidate pool");
    }
    const auto ev = evidence(query);
    return fuse_and_rank(extract(std::move(query_id), ev, candidates, enabled), method);
}

std::vector<double> ExpertSearchEngine::author_bm25_scores(const QueryEvidence& ev) const {
    std::vector<double> scores(corpus_.authors().size(), 0.0);
    std::vector<std::uint8_t> touched(scores.size(), 0);
    for (const auto d : ev.topical_docs) {
        for (const auto a : corpus_.publication(d).author_ids) {
            touched[a.index()] = 1;
        }
    }
    for (std::size_t a = 0; a < scores.size(); ++a) {
        if (touched[a]) {
            const auto& author = corpus_.authors()[a];
            scores[a] = author_bm25(author, ev.title, options_.aggregation) +
                        author_bm25(author, ev.abstract, options_.aggregation);
        }
    }
    return scores;
}

std::vector<AuthorId> ExpertSearchEngine::authors_by_bm25(std::string_view query) const {
    const auto scores = author_bm25_scores(evidence(query));
    std::vector<AuthorId> order(scores.size());
    for (std::size_t a = 0; a < order.size(); ++a) {
        order[a] = AuthorId(static_cast<std::uint32_t>(a));
    }
    std::stable_sort(order.begin(), order.end(),
                     [&](AuthorId x, AuthorId y) { return scores[x.index()] > scores[y.index()]; });
    return order;
}

}  // namespace expertrank
