#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "expertrank/features.hpp"

namespace expertrank {

enum class FusionMethod { combsum, combmnz };

std::string_view to_string(FusionMethod method);
FusionMethod fusion_method_from_string(std::string_view text);

/// (v - min) / (max - min); a constant column maps to all zeros.
std::vector<double> minmax_normalize(std::span<const double> column);

struct RankedEntry {
    AuthorId expert;
    double score = 0.0;

    friend bool operator==(const RankedEntry&, const RankedEntry&) = default;
};

/// Candidates ordered by score descending, then expert id ascending.
struct RankedList {
    std::string query_id;
    std::vector<RankedEntry> entries;
};

/// Per-candidate intermediate values of a fusion run, aligned with the matrix rows.
struct FusionTrace {
    std::vector<double> comb_sum;   // sum of normalized columns
    std::vector<double> nonzero;    // r_e: columns with a non-zero raw value
    std::vector<double> score;      // fused score for the chosen method
    std::vector<double> normalized; // column-major normalized matrix
};

/// Throws DataError when the matrix has no rows or no columns, or holds a
/// non-finite value.
FusionTrace fuse(const FeatureMatrix& matrix, FusionMethod method);

RankedList comb_sum(const FeatureMatrix& matrix);
RankedList comb_mnz(const FeatureMatrix& matrix);
RankedList fuse_and_rank(const FeatureMatrix& matrix, FusionMethod method);

RankedList rank_by_score(std::string query_id, std::span<const AuthorId> candidates,
                         std::span<const double> scores);

/// Tab-separated `query_id rank expert_id score` with a header row; rank is 1-based.
void write_ranked_list(std::ostream& out, const RankedList& list);
/// Reads what write_ranked_list produced. Throws DataError on malformed input.
RankedList read_ranked_list(std::istream& in);

/// Raw and normalized values per candidate and feature, for auditing a run.
void write_feature_dump(std::ostream& out, const FeatureMatrix& matrix, const FusionTrace& trace);

}  // namespace expertrank
