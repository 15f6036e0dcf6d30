#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace expertrank {

/// Small deterministic corpus with planted experts, written in the Arnetminer
/// flat format together with a judgments file and a manifest of ground-truth
/// counts. Five topics of ten authors each; in every topic one author writes
/// most of the topical papers and collects most of the topical citations.
struct SyntheticOptions {
    std::uint64_t seed = 7;
    std::size_t authors_per_topic = 10;
    std::size_t papers_per_topic = 40;
    std::size_t positives_per_topic = 6;
    double references_per_paper = 3.3;
};

struct SyntheticTopic {
    std::string query;
    std::string planted_expert;
    std::vector<std::string> positives;  // planted expert first
};

struct SyntheticManifest {
    std::size_t records = 0;            // including the deliberately malformed one
    std::size_t publications = 0;
    std::size_t authors = 0;
    std::size_t citation_links = 0;     // distinct resolvable (citing, cited) pairs
    std::size_t skipped_records = 0;
    std::size_t external_references = 0;
    std::size_t duplicate_references = 0;
    std::size_t with_abstract = 0;
    std::size_t unresolved_judgments = 0;
    std::vector<SyntheticTopic> topics;
};

struct SyntheticFixture {
    std::string corpus_text;
    std::string judgments_text;
    SyntheticManifest manifest;
};

SyntheticFixture generate_synthetic(const SyntheticOptions& options = {});

/// Writes corpus.txt, judgments.txt and manifest.json into `dir`.
void write_synthetic(const SyntheticFixture& fixture, const std::filesystem::path& dir);

std::string manifest_json(const SyntheticManifest& manifest);

}  // namespace expertrank
