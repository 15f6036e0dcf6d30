#include "expertrank/synthetic.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "expertrank/common.hpp"
#include "expertrank/random.hpp"

namespace expertrank {

namespace {

struct TopicSpec {
    const char* query;
    const char* venue;
    std::array<const char*, 6> vocabulary;
};

constexpr std::array<TopicSpec, 5> kTopics{{
    {"boosting", "Ensemble Learning", {"ensemble", "adaboost", "weak", "learners", "margin", "classifiers"}},
    {"computer vision", "Visual Computing", {"image", "segmentation", "object", "recognition", "camera", "stereo"}},
    {"data mining", "Knowledge Discovery", {"association", "rules", "frequent", "patterns", "clustering", "databases"}},
    {"semantic web", "Knowledge Graphs", {"ontology", "rdf", "reasoning", "linked", "owl", "metadata"}},
    {"neural networks", "Connectionist Models", {"backpropagation", "neurons", "training", "layers", "recurrent", "perceptron"}},
}};

constexpr std::array<const char*, 12> kGeneric{"analysis", "approach", "method",   "system",  "novel",   "study",
                                               "framework", "efficient", "evaluation", "scalable", "towards", "improved"};

constexpr std::array<const char*, 10> kFirstNames{"Ana",   "Bruno",  "Carla", "Diego", "Elena",
                                                  "Filipe", "Gina", "Hugo",  "Ines",  "Joao"};
constexpr std::array<const char*, 5> kLastNames{"Almeida", "Barros", "Costa", "Duarte", "Esteves"};

struct Paper {
    std::int64_t key = 0;
    std::size_t topic = 0;
    int year = 0;
    std::string title;
    std::string abstract;
    std::string venue;
    std::vector<std::size_t> authors;  // global author index
    std::vector<std::int64_t> refs;    // as written, duplicates and external ids included
};

std::string sentence(std::vector<std::string> words) {
    std::string s;
    for (std::size_t i = 0; i < words.size(); ++i) {
        if (i) {
            s += ' ';
        }
        s += words[i];
    }
    if (!s.empty() && s[0] >= 'a' && s[0] <= 'z') {
        s[0] = static_cast<char>(s[0] - 'a' + 'A');
    }
    return s;
}

}  // namespace

SyntheticFixture generate_synthetic(const SyntheticOptions& opt) {
    if (opt.positives_per_topic == 0 || opt.positives_per_topic >= opt.authors_per_topic) {
        throw ConfigError("synthetic corpus needs 0 < positives_per_topic < authors_per_topic");
    }
    std::mt19937_64 rng(opt.seed);
    const auto pick = [&](std::size_t n) { return static_cast<std::size_t>(uniform_below(rng, n)); };
    const auto chance = [&](double p) { return uniform_unit(rng) < p; };

    const std::size_t group = opt.authors_per_topic;
    const std::size_t n_topics = kTopics.size();
    std::vector<std::string> names;
    std::vector<std::string> institutions;
    for (std::size_t t = 0; t < n_topics; ++t) {
        for (std::size_t k = 0; k < group; ++k) {
            names.push_back(std::string(kFirstNames[k % kFirstNames.size()]) + " " + kLastNames[t % kLastNames.size()] +
                            (k >= kFirstNames.size() ? " " + std::to_string(k / kFirstNames.size() + 1) : ""));
            institutions.push_back("University " + std::string(1, static_cast<char>('A' + (k + t) % 6)));
        }
    }

    // The planted expert leads ~45% of the topic's papers, all of them on topic.
    const std::size_t planted_papers = opt.papers_per_topic * 9 / 20;
    std::vector<Paper> papers;
    for (std::size_t t = 0; t < n_topics; ++t) {
        const auto& theme = kTopics[t];
        for (std::size_t i = 0; i < opt.papers_per_topic; ++i) {
            Paper p;
            p.topic = t;
            p.key = 1000 + static_cast<std::int64_t>(papers.size()) * 3;
            const bool planted = i < planted_papers;
            const std::size_t base = t * group;
            if (planted) {
                p.authors.push_back(base);
                p.year = 1996 + static_cast<int>(i * 14 / planted_papers);
            } else {
                // positives weigh 3, the rest of the group 2
                std::vector<std::size_t> pool;
                for (std::size_t k = 1; k < group; ++k) {
                    const std::size_t w = k < opt.positives_per_topic ? 3 : 2;
                    pool.insert(pool.end(), w, base + k);
                }
                p.authors.push_back(pool[pick(pool.size())]);
                p.year = 1998 + static_cast<int>(pick(13));
            }
            const std::size_t coauthors = pick(3);
            for (std::size_t c = 0; c < coauthors; ++c) {
                std::size_t a = chance(0.1) ? pick(names.size()) : base + 1 + pick(group - 1);
                if (a % group == 0) {
                    continue;  // planted experts only appear on their own papers
                }
                if (std::find(p.authors.begin(), p.authors.end(), a) == p.authors.end()) {
                    p.authors.push_back(a);
                }
            }

            const bool topical = planted || chance(0.7);
            std::vector<std::string> words;
            if (topical) {
                words.emplace_back(theme.query);
            }
            const std::size_t extra = 2 + pick(3);
            for (std::size_t w = 0; w < extra; ++w) {
                words.emplace_back(chance(0.5) ? theme.vocabulary[pick(theme.vocabulary.size())]
                                               : kGeneric[pick(kGeneric.size())]);
            }
            std::shuffle(words.begin(), words.end(), rng);
            p.title = sentence(words);
            if (chance(0.5)) {
                std::vector<std::string> body;
                const std::size_t len = 12 + pick(12);
                for (std::size_t w = 0; w < len; ++w) {
                    if (topical && w % 7 == 0) {
                        body.emplace_back(theme.query);
                    } else {
                        body.emplace_back(chance(0.5) ? theme.vocabulary[pick(theme.vocabulary.size())]
                                                      : kGeneric[pick(kGeneric.size())]);
                    }
                }
                p.abstract = sentence(body) + ".";
            }
            switch (pick(4)) {
                case 0:
                    p.venue = std::string("Proceedings of the International Conference on ") + theme.venue;
                    break;
                case 1:
                    p.venue = std::string("Journal of ") + theme.venue + " Research";
                    break;
                case 2:
                    p.venue = std::string("Workshop on ") + theme.venue;
                    break;
                default:
                    p.venue = std::string(1, theme.venue[0]) + "CML" + std::to_string(t);
                    break;
            }
            papers.push_back(std::move(p));
        }
    }

    // Citations point to papers from the same or an earlier year, mostly within
    // the topic, with the planted expert's papers five times as likely.
    SyntheticManifest m;
    std::set<std::pair<std::size_t, std::size_t>> distinct;
    for (std::size_t d = 0; d < papers.size(); ++d) {
        auto& p = papers[d];
        std::vector<std::size_t> pool;
        for (std::size_t c = 0; c < papers.size(); ++c) {
            if (c == d || papers[c].year > p.year) {
                continue;
            }
            const bool same_topic = papers[c].topic == p.topic;
            const bool by_planted = papers[c].authors.front() % group == 0;
            const std::size_t w = same_topic ? (by_planted ? 10 : 2) : 1;
            pool.insert(pool.end(), w, c);
        }
        if (pool.empty()) {
            continue;
        }
        const std::size_t draws = static_cast<std::size_t>(opt.references_per_paper) +
                                  (chance(opt.references_per_paper - static_cast<double>(
                                                                         static_cast<std::size_t>(opt.references_per_paper)))
                                       ? 1
                                       : 0);
        for (std::size_t r = 0; r < draws; ++r) {
            const std::size_t c = pool[pick(pool.size())];
            p.refs.push_back(papers[c].key);
            if (!distinct.emplace(d, c).second) {
                ++m.duplicate_references;
            }
        }
        if (d % 25 == 0) {
            p.refs.push_back(900000 + static_cast<std::int64_t>(d));
            ++m.external_references;
        }
    }

    std::ostringstream corpus;
    for (std::size_t d = 0; d < papers.size(); ++d) {
        const auto& p = papers[d];
        corpus << "#*" << p.title << '\n';
        corpus << "#@";
        for (std::size_t k = 0; k < p.authors.size(); ++k) {
            corpus << (k ? ";" : "") << names[p.authors[k]];
        }
        corpus << '\n';
        corpus << "#o";
        for (std::size_t k = 0; k < p.authors.size(); ++k) {
            corpus << (k ? ";" : "") << institutions[p.authors[k]];
        }
        corpus << '\n';
        corpus << "#t" << p.year << '\n';
        corpus << "#c" << p.venue << '\n';
        corpus << "#index" << p.key << '\n';
        for (const auto r : p.refs) {
            corpus << "#%" << r << '\n';
        }
        if (!p.abstract.empty()) {
            corpus << "#!" << p.abstract << '\n';
            ++m.with_abstract;
        }
        corpus << '\n';
        if (d == papers.size() / 2) {
            // no #index: must be skipped and counted
            corpus << "#*Orphan record without identifier\n#@" << names[1] << "\n#t2001\n#cNowhere\n\n";
            ++m.skipped_records;
        }
    }

    std::ostringstream judgments;
    for (std::size_t t = 0; t < n_topics; ++t) {
        SyntheticTopic topic;
        topic.query = kTopics[t].query;
        topic.planted_expert = names[t * group];
        judgments << "Q\t" << topic.query << '\n';
        for (std::size_t k = 0; k < opt.positives_per_topic; ++k) {
            topic.positives.push_back(names[t * group + k]);
            judgments << names[t * group + k] << '\n';
        }
        if (t == 1) {
            judgments << "Unlisted Person\n";
            ++m.unresolved_judgments;
        }
        judgments << '\n';
        m.topics.push_back(std::move(topic));
    }

    m.records = papers.size() + m.skipped_records;
    m.publications = papers.size();
    m.authors = names.size();
    m.citation_links = distinct.size();
    return SyntheticFixture{corpus.str(), judgments.str(), std::move(m)};
}

std::string manifest_json(const SyntheticManifest& m) {
    nlohmann::json topics = nlohmann::json::array();
    for (const auto& t : m.topics) {
        topics.push_back({{"query", t.query}, {"planted_expert", t.planted_expert}, {"positives", t.positives}});
    }
    const nlohmann::json j = {{"records", m.records},
                              {"publications", m.publications},
                              {"authors", m.authors},
                              {"citation_links", m.citation_links},
                              {"skipped_records", m.skipped_records},
                              {"external_references", m.external_references},
                              {"duplicate_references", m.duplicate_references},
                              {"with_abstract", m.with_abstract},
                              {"unresolved_judgments", m.unresolved_judgments},
                              {"topics", topics}};
    return j.dump(2) + "\n";
}

void write_synthetic(const SyntheticFixture& fixture, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    const auto write = [&](const char* name, const std::string& text) {
        std::ofstream out(dir / name, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw IngestError("cannot write " + (dir / name).string());
        }
        out << text;
    };
    write("corpus.txt", fixture.corpus_text);
    write("judgments.txt", fixture.judgments_text);
    write("manifest.json", manifest_json(fixture.manifest));
}

}  // namespace expertrank
