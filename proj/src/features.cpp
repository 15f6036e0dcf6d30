#include "expertrank/features.hpp"

#include <algorithm>
#include <set>

namespace expertrank {

std::string_view to_string(FeatureGroup group) {
    switch (group) {
        case FeatureGroup::text:
            return "text";
        case FeatureGroup::profile:
            return "profile";
        case FeatureGroup::network:
            return "network";
    }
    return "text";
}

FeatureCatalog::FeatureCatalog() {
    using F = Feature;
    using G = FeatureGroup;
    specs_ = {
        {F::bm25_title, "bm25_title", G::text},
        {F::tf_title, "tf_title", G::text},
        {F::idf_title, "idf_title", G::text},
        {F::unique_authors_title, "unique_authors_title", G::text},
        {F::year_range_title, "year_range_title", G::text},
        {F::doc_length_title, "doc_length_title", G::text},
        {F::bm25_abstract, "bm25_abstract", G::text},
        {F::tf_abstract, "tf_abstract", G::text},
        {F::idf_abstract, "idf_abstract", G::text},
        {F::unique_authors_abstract, "unique_authors_abstract", G::text},
        {F::year_range_abstract, "year_range_abstract", G::text},
        {F::doc_length_abstract, "doc_length_abstract", G::text},
        {F::conf_pubs_topic, "conf_pubs_topic", G::profile},
        {F::journal_pubs_topic, "journal_pubs_topic", G::profile},
        {F::conf_pubs_total, "conf_pubs_total", G::profile},
        {F::journal_pubs_total, "journal_pubs_total", G::profile},
        {F::avg_pubs_per_year, "avg_pubs_per_year", G::profile},
        {F::career_span, "career_span", G::profile},
        {F::citations_total_topic, "citations_total_topic", G::network},
        {F::citations_avg_topic, "citations_avg_topic", G::network},
        {F::citations_max_topic, "citations_max_topic", G::network},
        {F::citations_per_year, "citations_per_year", G::network},
        {F::collaborators, "collaborators", G::network},
        {F::h_index, "h_index", G::network},
        {F::hb_index, "hb_index", G::network},
        {F::contemporary_h_index, "contemporary_h_index", G::network},
        {F::trend_h_index, "trend_h_index", G::network},
        {F::individual_h_index, "individual_h_index", G::network},
        {F::a_index, "a_index", G::network},
        {F::g_index, "g_index", G::network},
        {F::e_index, "e_index", G::network},
        {F::institution_h_index, "institution_h_index", G::network},
        {F::institution_a_index, "institution_a_index", G::network},
        {F::institution_g_index, "institution_g_index", G::network},
        {F::pagerank_sum_topic, "pagerank_sum_topic", G::network},
        {F::pagerank_avg_topic, "pagerank_avg_topic", G::network},
    };
}

const FeatureCatalog& FeatureCatalog::standard() {
    static const FeatureCatalog catalog;
    return catalog;
}

std::optional<Feature> FeatureCatalog::find(std::string_view id) const {
    const auto it = std::find_if(specs_.begin(), specs_.end(), [&](const FeatureSpec& s) { return s.id == id; });
    if (it == specs_.end()) {
        return std::nullopt;
    }
    return it->feature;
}

std::vector<Feature> FeatureCatalog::select(std::string_view expression) const {
    std::set<std::size_t> enabled;
    std::vector<std::string> unknown;
    std::size_t start = 0;
    while (start <= expression.size()) {
        auto end = expression.find(',', start);
        if (end == std::string_view::npos) {
            end = expression.size();
        }
        auto token = expression.substr(start, end - start);
        while (!token.empty() && token.front() == ' ') {
            token.remove_prefix(1);
        }
        while (!token.empty() && token.back() == ' ') {
            token.remove_suffix(1);
        }
        start = end + 1;
        if (token.empty()) {
            continue;
        }
        bool matched = false;
        for (const auto& s : specs_) {
            if (token == "all" || token == to_string(s.group) || token == s.id) {
                enabled.insert(static_cast<std::size_t>(s.feature));
                matched = true;
            }
        }
        if (!matched) {
            unknown.emplace_back(token);
        }
    }
    if (!unknown.empty()) {
        std::string msg = "unknown feature or group:";
        for (const auto& u : unknown) {
            msg += " " + u;
        }
        throw ConfigError(msg);
    }
    if (enabled.empty()) {
        throw ConfigError("no features selected");
    }
    std::vector<Feature> out;
    for (const auto i : enabled) {
        out.push_back(static_cast<Feature>(i));
    }
    return out;
}

FeatureMatrix::FeatureMatrix(std::string query_id, std::vector<AuthorId> candidates, std::vector<Feature> columns)
    : query_id_(std::move(query_id)),
      candidates_(std::move(candidates)),
      columns_(std::move(columns)),
      values_(candidates_.size() * columns_.size(), 0.0) {}

}  // namespace expertrank
