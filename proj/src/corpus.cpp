#include "expertrank/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "expertrank/tokenizer.hpp"

namespace expertrank {

using nlohmann::json;

namespace {

constexpr std::string_view kPersistedFormat = "expertrank-corpus";
constexpr int kPersistedVersion = 1;

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' || c == '\v'; }

std::string_view trim(std::string_view s) {
    while (!s.empty() && is_space(s.front())) {
        s.remove_prefix(1);
    }
    while (!s.empty() && is_space(s.back())) {
        s.remove_suffix(1);
    }
    return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = s.find(sep, start);
        if (pos == std::string_view::npos) {
            parts.push_back(s.substr(start));
            break;
        }
        parts.push_back(s.substr(start, pos - start));
        start = pos + 1;
    }
    return parts;
}

template <typename Int>
std::optional<Int> parse_int(std::string_view s) {
    s = trim(s);
    Int value{};
    const auto* end = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(s.data(), end, value);
    if (s.empty() || ec != std::errc{} || ptr != end) {
        return std::nullopt;
    }
    return value;
}

bool valid_utf8(std::string_view s) {
    std::size_t i = 0;
    while (i < s.size()) {
        const auto c = static_cast<unsigned char>(s[i]);
        std::size_t extra = 0;
        std::uint32_t cp = 0;
        if (c < 0x80) {
            ++i;
            continue;
        } else if ((c & 0xE0) == 0xC0) {
            extra = 1;
            cp = c & 0x1F;
        } else if ((c & 0xF0) == 0xE0) {
            extra = 2;
            cp = c & 0x0F;
        } else if ((c & 0xF8) == 0xF0) {
            extra = 3;
            cp = c & 0x07;
        } else {
            return false;
        }
        if (i + extra >= s.size()) {
            return false;
        }
        for (std::size_t k = 1; k <= extra; ++k) {
            const auto cc = static_cast<unsigned char>(s[i + k]);
            if ((cc & 0xC0) != 0x80) {
                return false;
            }
            cp = (cp << 6) | (cc & 0x3F);
        }
        const bool overlong = (extra == 1 && cp < 0x80) || (extra == 2 && cp < 0x800) ||
                              (extra == 3 && cp < 0x10000);
        if (overlong || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
            return false;
        }
        i += extra + 1;
    }
    return true;
}

}  // namespace

std::string_view to_string(VenueKind kind) {
    switch (kind) {
        case VenueKind::conference:
            return "conference";
        case VenueKind::journal:
            return "journal";
        case VenueKind::unknown:
            return "unknown";
    }
    return "unknown";
}

VenueKind venue_kind_from_string(std::string_view text) {
    if (text == "conference") {
        return VenueKind::conference;
    }
    if (text == "journal") {
        return VenueKind::journal;
    }
    if (text == "unknown") {
        return VenueKind::unknown;
    }
    throw DataError("unknown venue kind: " + std::string(text));
}

std::string normalize_name(std::string_view name) {
    std::string out;
    out.reserve(name.size());
    bool pending_space = false;
    for (const char c : trim(name)) {
        if (is_space(c)) {
            pending_space = true;
            continue;
        }
        if (pending_space) {
            out.push_back(' ');
            pending_space = false;
        }
        out.push_back(c);
    }
    return out;
}

std::string fold_case(std::string_view text) {
    std::string out(text);
    for (auto& c : out) {
        if (c >= 'A' && c <= 'Z') {
            c = static_cast<char>(c - 'A' + 'a');
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Corpus

Corpus Corpus::assemble(std::vector<Publication> publications, std::vector<Author> authors) {
    Corpus c;
    for (std::size_t i = 0; i < authors.size(); ++i) {
        if (authors[i].id.index() != i) {
            throw DataError("author ids must be dense and in order");
        }
        authors[i].pub_ids.clear();
    }
    for (std::size_t d = 0; d < publications.size(); ++d) {
        const auto& p = publications[d];
        if (!c.by_pub_id_.emplace(p.pub_id, DocId(static_cast<std::uint32_t>(d))).second) {
            throw DataError("duplicate pub_id " + std::to_string(p.pub_id));
        }
        if (p.author_ids.empty()) {
            throw DataError("publication " + std::to_string(p.pub_id) + " has no authors");
        }
        std::unordered_set<AuthorId> seen;
        for (const auto a : p.author_ids) {
            if (a.index() >= authors.size() || !seen.insert(a).second) {
                throw DataError("publication " + std::to_string(p.pub_id) + " has invalid author list");
            }
            authors[a.index()].pub_ids.push_back(DocId(static_cast<std::uint32_t>(d)));
        }
    }
    for (std::size_t d = 0; d < publications.size(); ++d) {
        const auto& p = publications[d];
        std::unordered_set<DocId> seen;
        for (const auto r : p.references) {
            if (r.index() >= publications.size() || r.index() == d || !seen.insert(r).second) {
                throw DataError("publication " + std::to_string(p.pub_id) + " has invalid references");
            }
        }
    }
    for (const auto& a : authors) {
        if (!c.by_name_.emplace(a.name, a.id).second) {
            throw DataError("duplicate author name: " + a.name);
        }
        c.by_folded_name_.emplace(fold_case(a.name), a.id);
    }

    auto& s = c.stats_;
    s.publications = publications.size();
    s.authors = authors.size();
    for (const auto& p : publications) {
        s.with_abstract += p.abstract.has_value() ? 1 : 0;
        s.conference_pubs += p.venue_kind == VenueKind::conference ? 1 : 0;
        s.journal_pubs += p.venue_kind == VenueKind::journal ? 1 : 0;
        s.unknown_venue_pubs += p.venue_kind == VenueKind::unknown ? 1 : 0;
        s.citation_links += p.references.size();
        s.unknown_years += p.year.has_value() ? 0 : 1;
        if (const auto n = count_tokens(p.title); n > 0) {
            ++s.title.documents;
            s.title.total_tokens += n;
        }
        if (p.abstract) {
            if (const auto n = count_tokens(*p.abstract); n > 0) {
                ++s.abstract.documents;
                s.abstract.total_tokens += n;
            }
        }
    }
    for (auto* stream : {&s.title, &s.abstract}) {
        stream->average_length = stream->documents == 0
                                     ? 0.0
                                     : static_cast<double>(stream->total_tokens) /
                                           static_cast<double>(stream->documents);
    }
    c.publications_ = std::move(publications);
    c.authors_ = std::move(authors);
    return c;
}

std::optional<DocId> Corpus::find_publication(std::int64_t pub_id) const {
    if (const auto it = by_pub_id_.find(pub_id); it != by_pub_id_.end()) {
        return it->second;
    }
    return std::nullopt;
}

std::optional<AuthorId> Corpus::find_author(std::string_view name) const {
    if (const auto it = by_name_.find(normalize_name(name)); it != by_name_.end()) {
        return it->second;
    }
    return std::nullopt;
}

std::optional<AuthorId> Corpus::find_author_folded(std::string_view name) const {
    if (const auto it = by_folded_name_.find(fold_case(normalize_name(name))); it != by_folded_name_.end()) {
        return it->second;
    }
    return std::nullopt;
}

bool Corpus::has_institutions() const {
    return std::any_of(authors_.begin(), authors_.end(),
                       [](const Author& a) { return a.institution.has_value(); });
}

// ---------------------------------------------------------------------------
// Venue classification

VenueClassifier VenueClassifier::defaults() {
    VenueClassifier v;
    for (const char* p : {"journal", "transactions", "trans.", "letters", "magazine", "review",
                          "bulletin", "annals", "acta ", "quarterly", "commun.", "communications of",
                          "j. ", "sigmod record", "sigkdd explorations"}) {
        v.add_journal_pattern(p);
    }
    for (const char* p : {"proceedings", "proc.", "conference", "conf.", "symposium", "symp.",
                          "workshop", "congress", "colloquium", "meeting", "summit"}) {
        v.add_conference_pattern(p);
    }
    return v;
}

VenueClassifier VenueClassifier::from_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IngestError("cannot open venue pattern file: " + path.string());
    }
    VenueClassifier v;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto text = trim(line);
        if (text.empty() || text.front() == '#') {
            continue;
        }
        const auto colon = text.find(':');
        const auto kind = colon == std::string_view::npos ? std::string_view{} : trim(text.substr(0, colon));
        const auto pattern = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
        if (kind == "journal" && !trim(pattern).empty()) {
            v.add_journal_pattern(std::string(pattern));
        } else if (kind == "conference" && !trim(pattern).empty()) {
            v.add_conference_pattern(std::string(pattern));
        } else {
            throw ConfigError(path.string() + ":" + std::to_string(line_no) +
                              ": expected journal:<pattern> or conference:<pattern>");
        }
    }
    return v;
}

void VenueClassifier::add_journal_pattern(std::string pattern) { journal_.push_back(fold_case(pattern)); }

void VenueClassifier::add_conference_pattern(std::string pattern) {
    conference_.push_back(fold_case(pattern));
}

VenueKind VenueClassifier::classify(std::string_view venue) const {
    const std::string folded = fold_case(venue);
    const auto contains = [&](const std::string& p) { return folded.find(p) != std::string::npos; };
    if (std::any_of(journal_.begin(), journal_.end(), contains)) {
        return VenueKind::journal;
    }
    if (std::any_of(conference_.begin(), conference_.end(), contains)) {
        return VenueKind::conference;
    }
    return VenueKind::unknown;
}

// ---------------------------------------------------------------------------
// Diagnostics

std::size_t IngestDiagnostics::skipped_total() const {
    std::size_t n = 0;
    for (const auto& [reason, count] : skipped) {
        n += count;
    }
    return n;
}

void IngestDiagnostics::write(std::ostream& out) const {
    out << "records_seen: " << records_seen << '\n';
    out << "records_accepted: " << records_accepted << '\n';
    out << "records_skipped: " << skipped_total() << '\n';
    for (const auto& [reason, count] : skipped) {
        out << "records_skipped." << reason << ": " << count << '\n';
    }
    out << "references_seen: " << references_seen << '\n';
    out << "references_dropped.external: " << references_external << '\n';
    out << "references_dropped.self: " << references_self << '\n';
    out << "references_dropped.duplicate: " << references_duplicate << '\n';
    out << "references_dropped.invalid: " << references_invalid << '\n';
    out << "invalid_years: " << invalid_years << '\n';
    out << "duplicate_author_entries: " << duplicate_author_entries << '\n';
    out << "unknown_lines: " << unknown_lines << '\n';
}

// ---------------------------------------------------------------------------
// Arnetminer flat format

namespace {

struct ParsedRecord {
    std::int64_t pub_id = 0;
    Publication pub;
    std::vector<std::string> author_names;
    std::vector<std::optional<std::string>> affiliations;  // aligned with author_names
    std::vector<std::string> reference_texts;
};

class FlatParser {
public:
    FlatParser(const VenueClassifier& venues, IngestDiagnostics& diag) : venues_(venues), diag_(diag) {}

    void consume(const std::vector<std::string>& lines) {
        ++diag_.records_seen;
        auto reason = parse(lines);
        if (reason) {
            ++diag_.skipped[*reason];
        }
    }

    IngestResult finish() {
        std::unordered_map<std::int64_t, DocId> index;
        for (std::size_t d = 0; d < records_.size(); ++d) {
            index.emplace(records_[d].pub_id, DocId(static_cast<std::uint32_t>(d)));
        }

        std::vector<Author> authors;
        std::unordered_map<std::string, AuthorId> by_name;
        std::vector<Publication> pubs;
        pubs.reserve(records_.size());
        for (std::size_t d = 0; d < records_.size(); ++d) {
            auto& rec = records_[d];
            for (std::size_t k = 0; k < rec.author_names.size(); ++k) {
                auto [it, inserted] = by_name.try_emplace(
                    rec.author_names[k], AuthorId(static_cast<std::uint32_t>(authors.size())));
                if (inserted) {
                    authors.push_back(Author{it->second, rec.author_names[k], {}, std::nullopt});
                }
                auto& author = authors[it->second.index()];
                if (!author.institution && rec.affiliations[k]) {
                    author.institution = rec.affiliations[k];
                }
                rec.pub.author_ids.push_back(it->second);
            }

            std::unordered_set<DocId> seen;
            for (const auto& text : rec.reference_texts) {
                ++diag_.references_seen;
                const auto key = parse_int<std::int64_t>(text);
                if (!key) {
                    ++diag_.references_invalid;
                    continue;
                }
                const auto it = index.find(*key);
                if (it == index.end()) {
                    ++diag_.references_external;
                } else if (it->second.index() == d) {
                    ++diag_.references_self;
                } else if (!seen.insert(it->second).second) {
                    ++diag_.references_duplicate;
                } else {
                    rec.pub.references.push_back(it->second);
                }
            }
            pubs.push_back(std::move(rec.pub));
        }
        diag_.records_accepted = pubs.size();
        return IngestResult{Corpus::assemble(std::move(pubs), std::move(authors)), diag_};
    }

private:
    std::optional<std::string> parse(const std::vector<std::string>& lines) {
        for (const auto& line : lines) {
            if (!valid_utf8(line)) {
                return "invalid_utf8";
            }
        }
        ParsedRecord rec;
        bool have_index = false;
        bool have_title = false;
        bool have_authors = false;
        std::vector<std::string> raw_affiliations;
        bool have_affiliations = false;
        for (const auto& raw : lines) {
            const std::string_view line = raw;
            const auto field = [&](std::string_view prefix) { return line.substr(prefix.size()); };
            if (line.starts_with("#index")) {
                if (have_index) {
                    return "duplicate_field";
                }
                const auto key = parse_int<std::int64_t>(field("#index"));
                if (!key) {
                    return "invalid_index";
                }
                rec.pub_id = *key;
                have_index = true;
            } else if (line.starts_with("#*")) {
                if (have_title) {
                    return "duplicate_field";
                }
                rec.pub.title = std::string(trim(field("#*")));
                have_title = true;
            } else if (line.starts_with("#@")) {
                if (have_authors) {
                    return "duplicate_field";
                }
                have_authors = true;
                for (const auto part : split(field("#@"), ';')) {
                    rec.author_names.push_back(normalize_name(part));
                }
            } else if (line.starts_with("#o")) {
                if (have_affiliations) {
                    return "duplicate_field";
                }
                have_affiliations = true;
                for (const auto part : split(field("#o"), ';')) {
                    raw_affiliations.push_back(normalize_name(part));
                }
            } else if (line.starts_with("#t")) {
                const auto year = parse_int<int>(field("#t"));
                if (year && *year > 0) {
                    rec.pub.year = *year;
                } else if (!trim(field("#t")).empty()) {
                    ++diag_.invalid_years;
                }
            } else if (line.starts_with("#citation")) {
                // citation-count hint shipped by some dump versions; recomputed from #% lines
            } else if (line.starts_with("#c")) {
                rec.pub.venue_name = normalize_name(field("#c"));
            } else if (line.starts_with("#%")) {
                rec.reference_texts.emplace_back(trim(field("#%")));
            } else if (line.starts_with("#!")) {
                const auto text = trim(field("#!"));
                if (!text.empty()) {
                    rec.pub.abstract = std::string(text);
                }
            } else {
                ++diag_.unknown_lines;
            }
        }
        if (!have_index) {
            return "missing_index";
        }
        if (!seen_ids_.insert(rec.pub_id).second) {
            return "duplicate_index";
        }
        if (rec.pub.title.empty()) {
            seen_ids_.erase(rec.pub_id);
            return "missing_title";
        }

        // Deduplicate authors, keeping the affiliation at the first position.
        std::vector<std::string> names;
        std::vector<std::optional<std::string>> affiliations;
        for (std::size_t k = 0; k < rec.author_names.size(); ++k) {
            auto& name = rec.author_names[k];
            if (name.empty()) {
                continue;
            }
            if (std::find(names.begin(), names.end(), name) != names.end()) {
                ++diag_.duplicate_author_entries;
                continue;
            }
            std::optional<std::string> inst;
            if (k < raw_affiliations.size() && !raw_affiliations[k].empty()) {
                inst = raw_affiliations[k];
            }
            names.push_back(std::move(name));
            affiliations.push_back(std::move(inst));
        }
        if (names.empty()) {
            seen_ids_.erase(rec.pub_id);
            return "missing_authors";
        }
        rec.author_names = std::move(names);
        rec.affiliations = std::move(affiliations);
        rec.pub.pub_id = rec.pub_id;
        rec.pub.venue_kind = venues_.classify(rec.pub.venue_name);
        records_.push_back(std::move(rec));
        return std::nullopt;
    }

    const VenueClassifier& venues_;
    IngestDiagnostics& diag_;
    std::vector<ParsedRecord> records_;
    std::unordered_set<std::int64_t> seen_ids_;
};

}  // namespace

IngestResult parse_arnetminer(std::istream& in, const VenueClassifier& venues) {
    IngestDiagnostics diag;
    FlatParser parser(venues, diag);
    std::vector<std::string> block;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (trim(line).empty()) {
            if (!block.empty()) {
                parser.consume(block);
                block.clear();
            }
            continue;
        }
        block.push_back(line);
    }
    if (!block.empty()) {
        parser.consume(block);
    }
    return parser.finish();
}

IngestResult parse_corpus(const std::filesystem::path& path, CorpusFormat format, const VenueClassifier& venues) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IngestError("cannot open corpus file: " + path.string());
    }
    switch (format) {
        case CorpusFormat::arnetminer_flat:
            return parse_arnetminer(in, venues);
    }
    throw IngestError("unsupported corpus format");
}

// ---------------------------------------------------------------------------
// Persistence

void write_corpus(const Corpus& corpus, std::ostream& out) {
    json header = {{"format", kPersistedFormat},
                   {"version", kPersistedVersion},
                   {"publications", corpus.publications().size()},
                   {"authors", corpus.authors().size()}};
    out << header.dump() << '\n';
    for (const auto& p : corpus.publications()) {
        json authors = json::array();
        for (const auto a : p.author_ids) {
            authors.push_back(a.value());
        }
        json refs = json::array();
        for (const auto r : p.references) {
            refs.push_back(r.value());
        }
        json line = {{"kind", "pub"},
                     {"pub_id", p.pub_id},
                     {"title", p.title},
                     {"abstract", p.abstract ? json(*p.abstract) : json(nullptr)},
                     {"year", p.year ? json(*p.year) : json(nullptr)},
                     {"venue", p.venue_name},
                     {"venue_kind", to_string(p.venue_kind)},
                     {"authors", std::move(authors)},
                     {"refs", std::move(refs)}};
        out << line.dump() << '\n';
    }
    for (const auto& a : corpus.authors()) {
        json line = {{"kind", "author"},
                     {"id", a.id.value()},
                     {"name", a.name},
                     {"institution", a.institution ? json(*a.institution) : json(nullptr)}};
        out << line.dump() << '\n';
    }
}

void save_corpus(const Corpus& corpus, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IngestError("cannot write corpus file: " + path.string());
    }
    write_corpus(corpus, out);
    if (!out) {
        throw IngestError("write failed: " + path.string());
    }
}

Corpus read_corpus(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) {
        throw IngestError("persisted corpus is empty");
    }
    try {
        const auto header = json::parse(line);
        if (header.value("format", "") != kPersistedFormat) {
            throw IngestError("not a persisted corpus");
        }
        if (header.at("version").get<int>() != kPersistedVersion) {
            throw IngestError("unsupported persisted corpus version " + header.at("version").dump());
        }
        const auto n_pubs = header.at("publications").get<std::size_t>();
        const auto n_authors = header.at("authors").get<std::size_t>();
        std::vector<Publication> pubs;
        std::vector<Author> authors;
        pubs.reserve(n_pubs);
        authors.reserve(n_authors);
        while (std::getline(in, line)) {
            if (line.empty()) {
                continue;
            }
            const auto j = json::parse(line);
            const auto kind = j.at("kind").get<std::string>();
            if (kind == "pub") {
                Publication p;
                p.pub_id = j.at("pub_id").get<std::int64_t>();
                p.title = j.at("title").get<std::string>();
                if (!j.at("abstract").is_null()) {
                    p.abstract = j.at("abstract").get<std::string>();
                }
                if (!j.at("year").is_null()) {
                    p.year = j.at("year").get<int>();
                }
                p.venue_name = j.at("venue").get<std::string>();
                p.venue_kind = venue_kind_from_string(j.at("venue_kind").get<std::string>());
                for (const auto& a : j.at("authors")) {
                    p.author_ids.emplace_back(a.get<std::uint32_t>());
                }
                for (const auto& r : j.at("refs")) {
                    p.references.emplace_back(r.get<std::uint32_t>());
                }
                pubs.push_back(std::move(p));
            } else if (kind == "author") {
                Author a;
                a.id = AuthorId(j.at("id").get<std::uint32_t>());
                a.name = j.at("name").get<std::string>();
                if (!j.at("institution").is_null()) {
                    a.institution = j.at("institution").get<std::string>();
                }
                authors.push_back(std::move(a));
            } else {
                throw IngestError("unknown record kind in persisted corpus: " + kind);
            }
        }
        if (pubs.size() != n_pubs || authors.size() != n_authors) {
            throw IngestError("persisted corpus is truncated");
        }
        return Corpus::assemble(std::move(pubs), std::move(authors));
    } catch (const json::exception& e) {
        throw IngestError(std::string("malformed persisted corpus: ") + e.what());
    } catch (const DataError& e) {
        throw IngestError(std::string("inconsistent persisted corpus: ") + e.what());
    }
}

Corpus load_corpus(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IngestError("cannot open persisted corpus: " + path.string());
    }
    return read_corpus(in);
}

bool is_persisted_corpus(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::string line;
    if (!in || !std::getline(in, line)) {
        return false;
    }
    return line.starts_with("{") && line.find(kPersistedFormat) != std::string::npos;
}

IngestResult open_corpus(const std::filesystem::path& path, const VenueClassifier& venues) {
    if (!std::filesystem::exists(path)) {
        throw IngestError("corpus file does not exist: " + path.string());
    }
    if (is_persisted_corpus(path)) {
        IngestResult result{load_corpus(path), {}};
        result.diagnostics.records_seen = result.corpus.size();
        result.diagnostics.records_accepted = result.corpus.size();
        return result;
    }
    return parse_corpus(path, CorpusFormat::arnetminer_flat, venues);
}

std::string corpus_fingerprint(const Corpus& corpus) {
    std::ostringstream buf;
    write_corpus(corpus, buf);
    std::uint64_t hash = 1469598103934665603ULL;
    for (const unsigned char c : buf.view()) {
        hash ^= c;
        hash *= 1099511628211ULL;
    }
    char hex[17];
    std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(hash));
    return hex;
}

}  // namespace expertrank
