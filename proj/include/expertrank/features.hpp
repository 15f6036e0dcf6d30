#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "expertrank/common.hpp"

namespace expertrank {

enum class FeatureGroup { text, profile, network };

std::string_view to_string(FeatureGroup group);

/// Every expertise estimator the engine can compute, in catalog order.
enum class Feature : std::size_t {
    // text, title stream
    bm25_title,
    tf_title,
    idf_title,
    unique_authors_title,
    year_range_title,
    doc_length_title,
    // text, abstract stream
    bm25_abstract,
    tf_abstract,
    idf_abstract,
    unique_authors_abstract,
    year_range_abstract,
    doc_length_abstract,
    // profile
    conf_pubs_topic,
    journal_pubs_topic,
    conf_pubs_total,
    journal_pubs_total,
    avg_pubs_per_year,
    career_span,
    // network: citation counts
    citations_total_topic,
    citations_avg_topic,
    citations_max_topic,
    citations_per_year,
    collaborators,
    // network: academic indexes
    h_index,
    hb_index,
    contemporary_h_index,
    trend_h_index,
    individual_h_index,
    a_index,
    g_index,
    e_index,
    institution_h_index,
    institution_a_index,
    institution_g_index,
    // network: PageRank
    pagerank_sum_topic,
    pagerank_avg_topic,
};

inline constexpr std::size_t kFeatureCount = static_cast<std::size_t>(Feature::pagerank_avg_topic) + 1;

struct FeatureSpec {
    Feature feature;
    std::string_view id;
    FeatureGroup group;
};

class FeatureCatalog {
public:
    static const FeatureCatalog& standard();

    [[nodiscard]] std::span<const FeatureSpec> features() const { return specs_; }
    [[nodiscard]] const FeatureSpec& spec(Feature f) const { return specs_[static_cast<std::size_t>(f)]; }
    [[nodiscard]] std::optional<Feature> find(std::string_view id) const;

    /// Comma-separated list of `all`, group names (text, profile, network) and
    /// feature ids. Returns the enabled features in catalog order. Throws
    /// ConfigError naming every unknown token.
    [[nodiscard]] std::vector<Feature> select(std::string_view expression) const;

private:
    FeatureCatalog();
    std::vector<FeatureSpec> specs_;
};

/// Raw feature values for one query: rows are candidates, columns the enabled
/// and available features. Stored column-major.
class FeatureMatrix {
public:
    FeatureMatrix(std::string query_id, std::vector<AuthorId> candidates, std::vector<Feature> columns);

    [[nodiscard]] const std::string& query_id() const { return query_id_; }
    [[nodiscard]] const std::vector<AuthorId>& candidates() const { return candidates_; }
    [[nodiscard]] const std::vector<Feature>& columns() const { return columns_; }
    [[nodiscard]] std::size_t rows() const { return candidates_.size(); }
    [[nodiscard]] std::size_t cols() const { return columns_.size(); }

    [[nodiscard]] std::span<double> column(std::size_t j) {
        return std::span(values_).subspan(j * rows(), rows());
    }
    [[nodiscard]] std::span<const double> column(std::size_t j) const {
        return std::span(values_).subspan(j * rows(), rows());
    }
    [[nodiscard]] double at(std::size_t row, std::size_t col) const { return values_[col * rows() + row]; }
    void set(std::size_t row, std::size_t col, double v) { values_[col * rows() + row] = v; }

    /// Enabled features dropped because their input data is missing.
    [[nodiscard]] const std::vector<Feature>& unavailable() const { return unavailable_; }
    void set_unavailable(std::vector<Feature> features) { unavailable_ = std::move(features); }

private:
    std::string query_id_;
    std::vector<AuthorId> candidates_;
    std::vector<Feature> columns_;
    std::vector<double> values_;
    std::vector<Feature> unavailable_;
};

}  // namespace expertrank
