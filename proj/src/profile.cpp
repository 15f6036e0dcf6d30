#include "expertrank/profile.hpp"

#include "expertrank/graph_metrics.hpp"

namespace expertrank {

ProfileFeatures profile_features(const Author& author, std::span<const std::uint8_t> topical,
                                 const Corpus& corpus) {
    ProfileFeatures f;
    if (author.pub_ids.empty()) {
        return f;
    }
    for (const auto d : author.pub_ids) {
        const auto& pub = corpus.publication(d);
        const bool on_topic = topical[d.index()] != 0;
        if (counts_as_conference(pub.venue_kind)) {
            ++f.conf_pubs_total;
            f.conf_pubs_with_topic += on_topic ? 1 : 0;
        } else {
            ++f.journal_pubs_total;
            f.journal_pubs_with_topic += on_topic ? 1 : 0;
        }
    }
    const int span = career_span(author, corpus);
    f.career_span_years = static_cast<std::uint32_t>(span);
    f.avg_pubs_per_year = static_cast<double>(author.pub_ids.size()) / static_cast<double>(span + 1);
    return f;
}

}  // namespace expertrank
