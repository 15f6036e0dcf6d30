#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "expertrank/eval.hpp"
#include "expertrank/judgments.hpp"

namespace expertrank {

/// Settings for one rank run. Strings are validated lazily by validate() so
/// that every problem can be reported at once.
struct RunConfig {
    std::filesystem::path corpus;
    std::filesystem::path judgments;
    std::filesystem::path out;
    std::filesystem::path venue_patterns;  // empty: built-in rules
    std::string method = "combmnz";
    std::string features = "all";
    std::optional<std::uint64_t> seed;
    std::optional<int> now_year;  // default: latest publication year in the corpus
    double pagerank_tolerance = 1e-10;
    int pagerank_max_iterations = 100;
    std::string edge_weighting = "citing";
    std::string bm25_aggregation = "sum";
    bool augment_negatives = true;
    std::string label;  // default: "<method> <features>"
    bool dump_pagerank = false;
};

/// Reads a JSON object whose keys mirror RunConfig fields. Unknown keys and
/// wrongly typed values raise ConfigError.
RunConfig load_run_config(const std::filesystem::path& path);
RunConfig parse_run_config(std::string_view json_text);

/// Relative paths are looked up under $EXPERTRANK_DATA_DIR when it is set.
std::filesystem::path resolve_data_path(const std::filesystem::path& path);

/// Every problem with the config, without touching any input file contents.
std::vector<std::string> validate(const RunConfig& config);

/// The label a report row gets for this config.
std::string run_label(const RunConfig& config);

struct IngestSummary {
    std::size_t publications = 0;
    std::size_t authors = 0;
    std::size_t citation_links = 0;
    std::size_t skipped_records = 0;
    std::filesystem::path corpus_file;
    std::filesystem::path diagnostics_file;
};

/// Parses a flat dump and writes the persisted corpus to `out` and the ingest
/// counters next to it (`<out>.diagnostics.txt`).
IngestSummary run_ingest(const std::filesystem::path& corpus, const std::filesystem::path& out,
                         const std::filesystem::path& venue_patterns = {});
void write_summary(std::ostream& out, const IngestSummary& summary);

struct RankSummary {
    std::size_t topics = 0;
    std::size_t candidates = 0;
    std::vector<std::string> unavailable_features;
    bool pagerank_converged = false;
    int pagerank_iterations = 0;
};

/// Augments pools, extracts features, fuses and writes under config.out:
/// manifest.json, pools.tsv, diagnostics.txt, ranked/<topic>.tsv and
/// features/<topic>.tsv. Throws ConfigError listing every validation failure
/// before reading any input.
RankSummary run_rank(const RunConfig& config);

/// Inverse of write_pools. Query texts are not stored and come back empty.
JudgmentSet read_pools(std::istream& in);

struct EvalOptions {
    std::vector<std::filesystem::path> runs;  // directories written by run_rank
    std::filesystem::path judgments;          // optional raw judgments file
    std::filesystem::path corpus;             // required with `judgments`
    std::filesystem::path out;                // optional: report.tsv and per_query.tsv
};

/// One report per run directory. Judgments come from each run's pools.tsv
/// unless a raw judgments file is given.
std::vector<EvaluationReport> run_eval(const EvalOptions& options);

}  // namespace expertrank
