#pragma once

#include <cstdint>
#include <span>

#include "expertrank/corpus.hpp"

namespace expertrank {

/// Productivity record of an author. Venues of unknown kind count as conferences.
struct ProfileFeatures {
    std::uint32_t conf_pubs_with_topic = 0;
    std::uint32_t journal_pubs_with_topic = 0;
    std::uint32_t conf_pubs_total = 0;
    std::uint32_t journal_pubs_total = 0;
    double avg_pubs_per_year = 0.0;  // publications / (career span + 1)
    std::uint32_t career_span_years = 0;

    friend bool operator==(const ProfileFeatures&, const ProfileFeatures&) = default;
};

/// `topical` is indexed by DocId: non-zero where a query term occurs in the
/// title or the abstract.
ProfileFeatures profile_features(const Author& author, std::span<const std::uint8_t> topical,
                                 const Corpus& corpus);

}  // namespace expertrank
