#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "expertrank/common.hpp"

namespace expertrank {

enum class VenueKind { conference, journal, unknown };

std::string_view to_string(VenueKind kind);
VenueKind venue_kind_from_string(std::string_view text);

/// Conference venues and unknown venues are pooled for the productivity features.
inline bool counts_as_conference(VenueKind kind) { return kind != VenueKind::journal; }

struct Publication {
    std::int64_t pub_id = 0;  // the dump's #index key
    std::string title;
    std::optional<std::string> abstract;
    std::optional<int> year;
    std::string venue_name;
    VenueKind venue_kind = VenueKind::unknown;
    std::vector<AuthorId> author_ids;
    std::vector<DocId> references;  // resolved, deduplicated, no self-reference
};

struct Author {
    AuthorId id;
    std::string name;
    std::vector<DocId> pub_ids;
    std::optional<std::string> institution;
};

struct StreamStats {
    std::size_t documents = 0;  // documents whose stream has at least one token
    std::uint64_t total_tokens = 0;
    double average_length = 0.0;
};

struct CorpusStats {
    std::size_t publications = 0;
    std::size_t authors = 0;
    std::size_t with_abstract = 0;
    std::size_t conference_pubs = 0;
    std::size_t journal_pubs = 0;
    std::size_t unknown_venue_pubs = 0;
    std::size_t citation_links = 0;
    std::size_t unknown_years = 0;
    StreamStats title;
    StreamStats abstract;
};

/// Immutable publication store. Built once, then shared read-only.
class Corpus {
public:
    Corpus() = default;

    /// Derives Author::pub_ids from Publication::author_ids, validates ids and
    /// references, then computes stats. Throws DataError on any inconsistency.
    static Corpus assemble(std::vector<Publication> publications, std::vector<Author> authors);

    [[nodiscard]] std::span<const Publication> publications() const { return publications_; }
    [[nodiscard]] std::span<const Author> authors() const { return authors_; }
    [[nodiscard]] const Publication& publication(DocId id) const { return publications_.at(id.index()); }
    [[nodiscard]] const Author& author(AuthorId id) const { return authors_.at(id.index()); }
    [[nodiscard]] std::size_t size() const { return publications_.size(); }
    [[nodiscard]] const CorpusStats& stats() const { return stats_; }

    [[nodiscard]] std::optional<DocId> find_publication(std::int64_t pub_id) const;
    /// Exact match on the whitespace-normalized name.
    [[nodiscard]] std::optional<AuthorId> find_author(std::string_view name) const;
    /// Case-insensitive fallback; the lowest id wins among case variants.
    [[nodiscard]] std::optional<AuthorId> find_author_folded(std::string_view name) const;

    /// True when at least one author carries an institution.
    [[nodiscard]] bool has_institutions() const;

private:
    std::vector<Publication> publications_;
    std::vector<Author> authors_;
    std::unordered_map<std::int64_t, DocId> by_pub_id_;
    std::unordered_map<std::string, AuthorId> by_name_;
    std::unordered_map<std::string, AuthorId> by_folded_name_;
    CorpusStats stats_;
};

/// Trims and collapses internal whitespace runs to one space.
std::string normalize_name(std::string_view name);
std::string fold_case(std::string_view text);

/// Substring rules deciding journal vs conference from a venue string.
/// Journal rules are tried first; a venue matching neither is unknown.
class VenueClassifier {
public:
    /// Built-in rules covering common English venue naming.
    static VenueClassifier defaults();
    /// Lines `journal:<substring>` or `conference:<substring>`; `#` starts a comment.
    static VenueClassifier from_file(const std::filesystem::path& path);

    void add_journal_pattern(std::string pattern);
    void add_conference_pattern(std::string pattern);

    [[nodiscard]] VenueKind classify(std::string_view venue) const;

private:
    std::vector<std::string> journal_;
    std::vector<std::string> conference_;
};

/// Counters reported after ingestion. Nothing is dropped without being counted here.
struct IngestDiagnostics {
    std::size_t records_seen = 0;
    std::size_t records_accepted = 0;
    std::map<std::string, std::size_t> skipped;  // reason -> count
    std::size_t references_seen = 0;
    std::size_t references_external = 0;
    std::size_t references_self = 0;
    std::size_t references_duplicate = 0;
    std::size_t references_invalid = 0;
    std::size_t invalid_years = 0;
    std::size_t duplicate_author_entries = 0;
    std::size_t unknown_lines = 0;

    [[nodiscard]] std::size_t skipped_total() const;
    /// `key: value` lines, stable order.
    void write(std::ostream& out) const;
};

struct IngestResult {
    Corpus corpus;
    IngestDiagnostics diagnostics;
};

enum class CorpusFormat { arnetminer_flat };

/// Throws IngestError if the file cannot be opened.
IngestResult parse_corpus(const std::filesystem::path& path, CorpusFormat format = CorpusFormat::arnetminer_flat,
                          const VenueClassifier& venues = VenueClassifier::defaults());
IngestResult parse_arnetminer(std::istream& in, const VenueClassifier& venues = VenueClassifier::defaults());

// Persisted form: line-delimited JSON, a header line then one line per publication
// and one per author. Serialization is a pure function of the corpus contents.
void write_corpus(const Corpus& corpus, std::ostream& out);
void save_corpus(const Corpus& corpus, const std::filesystem::path& path);
Corpus read_corpus(std::istream& in);
Corpus load_corpus(const std::filesystem::path& path);

/// True if the file starts with the persisted-corpus header line.
bool is_persisted_corpus(const std::filesystem::path& path);

/// Loads either a persisted corpus or an Arnetminer flat file.
IngestResult open_corpus(const std::filesystem::path& path, const VenueClassifier& venues = VenueClassifier::defaults());

/// 64-bit FNV-1a over the persisted serialization, as 16 hex digits.
std::string corpus_fingerprint(const Corpus& corpus);

}  // namespace expertrank
