#include "expertrank/judgments.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <optional>
#include <istream>
#include <ostream>
#include <random>
#include <unordered_set>

#include "expertrank/random.hpp"

namespace expertrank {

namespace {

bool all_digits(std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}


}  // namespace

std::vector<AuthorId> Topic::pool() const {
    std::vector<AuthorId> out = positives;
    out.insert(out.end(), negatives.begin(), negatives.end());
    return out;
}

const Topic* JudgmentSet::find(std::string_view topic_id) const {
    const auto it = std::find_if(topics.begin(), topics.end(), [&](const Topic& t) { return t.id == topic_id; });
    return it == topics.end() ? nullptr : &*it;
}

void JudgmentDiagnostics::write(std::ostream& out) const {
    out << "unresolved_entries: " << unresolved.size() << '\n';
    for (const auto& u : unresolved) {
        out << "unresolved: " << u.topic << '\t' << u.entry << '\n';
    }
    out << "case_folded_matches: " << case_folded_matches << '\n';
    out << "excluded_topics: " << excluded_topics.size() << '\n';
    for (const auto& t : excluded_topics) {
        out << "excluded: " << t << '\n';
    }
}

std::string topic_slug(std::string_view query) {
    std::string slug;
    bool gap = false;
    for (const char raw : query) {
        const auto c = static_cast<unsigned char>(raw);
        const bool keep = (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || (c >= 'A' && c <= 'Z');
        if (!keep) {
            gap = !slug.empty();
            continue;
        }
        if (gap) {
            slug.push_back('_');
            gap = false;
        }
        slug.push_back(static_cast<char>(c >= 'A' && c <= 'Z' ? c - 'A' + 'a' : c));
    }
    return slug.empty() ? "topic" : slug;
}

LoadedJudgments read_judgments(std::istream& in, const Corpus& corpus) {
    LoadedJudgments result;
    auto& diag = result.diagnostics;
    std::unordered_set<std::string> used_ids;

    std::optional<Topic> current;
    std::unordered_set<AuthorId> seen;
    const auto close = [&] {
        if (!current) {
            return;
        }
        if (current->positives.empty()) {
            diag.excluded_topics.push_back(current->id);
        } else {
            result.judgments.topics.push_back(std::move(*current));
        }
        current.reset();
        seen.clear();
    };

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        const auto text = normalize_name(line);
        if (text.empty()) {
            close();
            continue;
        }
        if (line.starts_with("Q\t")) {
            close();
            Topic topic;
            topic.query = normalize_name(std::string_view(line).substr(2));
            auto id = topic_slug(topic.query);
            for (int k = 2; !used_ids.insert(id).second; ++k) {
                id = topic_slug(topic.query) + "_" + std::to_string(k);
            }
            topic.id = std::move(id);
            current = std::move(topic);
            continue;
        }
        if (!current) {
            throw DataError("judgments line " + std::to_string(line_no) + ": author entry before any Q<TAB> line");
        }
        std::optional<AuthorId> resolved;
        if (all_digits(text)) {
            std::uint64_t id = 0;
            std::from_chars(text.data(), text.data() + text.size(), id);
            if (id < corpus.authors().size()) {
                resolved = AuthorId(static_cast<std::uint32_t>(id));
            }
        } else if (auto exact = corpus.find_author(text)) {
            resolved = exact;
        } else if (auto folded = corpus.find_author_folded(text)) {
            resolved = folded;
            ++diag.case_folded_matches;
        }
        if (!resolved) {
            diag.unresolved.push_back({current->id, text});
        } else if (seen.insert(*resolved).second) {
            current->positives.push_back(*resolved);
        }
    }
    close();
    return result;
}

LoadedJudgments load_judgments(const std::filesystem::path& path, const Corpus& corpus) {
    std::ifstream in(path);
    if (!in) {
        throw IngestError("cannot open judgments file: " + path.string());
    }
    return read_judgments(in, corpus);
}

JudgmentSet augment_negatives(const JudgmentSet& judgments, const Corpus& corpus, const AuthorRanker& ranker,
                              std::uint64_t seed) {
    JudgmentSet out = judgments;
    const std::size_t total_authors = corpus.authors().size();
    for (std::size_t t = 0; t < out.topics.size(); ++t) {
        auto& topic = out.topics[t];
        const std::size_t n = topic.positives.size();
        if (total_authors < 2 * n) {
            throw DataError("topic " + topic.id + ": corpus has " + std::to_string(total_authors) +
                            " authors, negative augmentation needs at least " + std::to_string(2 * n));
        }
        std::vector<std::uint8_t> taken(total_authors, 0);
        for (const auto a : topic.positives) {
            taken[a.index()] = 1;
        }
        topic.negatives.clear();
        const std::size_t from_bm25 = (n + 1) / 2;
        const std::size_t from_random = n / 2;

        const auto ranking = ranker(topic.query);
        for (const auto a : ranking) {
            if (topic.negatives.size() == from_bm25) {
                break;
            }
            if (a.index() < total_authors && !taken[a.index()]) {
                taken[a.index()] = 1;
                topic.negatives.push_back(a);
            }
        }
        if (topic.negatives.size() != from_bm25) {
            throw DataError("topic " + topic.id + ": ranker returned too few authors");
        }
        topic.bm25_negatives = from_bm25;

        std::vector<AuthorId> eligible;
        eligible.reserve(total_authors);
        for (std::size_t a = 0; a < total_authors; ++a) {
            if (!taken[a]) {
                eligible.emplace_back(static_cast<std::uint32_t>(a));
            }
        }
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(t)};
        std::mt19937_64 rng(seq);
        for (std::size_t k = 0; k < from_random; ++k) {
            const auto pick = k + uniform_below(rng, eligible.size() - k);
            std::swap(eligible[k], eligible[pick]);
            topic.negatives.push_back(eligible[k]);
        }
    }
    return out;
}

void write_pools(std::ostream& out, const JudgmentSet& judgments) {
    out << "topic_id\tauthor_id\tlabel\trole\n";
    for (const auto& t : judgments.topics) {
        for (const auto a : t.positives) {
            out << t.id << '\t' << a.value() << "\t1\tpositive\n";
        }
        for (std::size_t k = 0; k < t.negatives.size(); ++k) {
            out << t.id << '\t' << t.negatives[k].value() << "\t0\t" << (k < t.bm25_negatives ? "bm25" : "random")
                << '\n';
        }
    }
}

}  // namespace expertrank
