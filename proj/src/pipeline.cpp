#include "expertrank/pipeline.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "expertrank/engine.hpp"
#include "expertrank/kernels.hpp"

namespace expertrank {

namespace {

using nlohmann::json;

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IngestError("cannot write " + path.string());
    }
    return out;
}

std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError("cannot open " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

template <class T>
T get_field(const json& j, const std::string& key, const char* type) {
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError("config key '" + key + "' must be " + type);
    }
}

VenueClassifier venues_for(const std::filesystem::path& patterns) {
    return patterns.empty() ? VenueClassifier::defaults() : VenueClassifier::from_file(resolve_data_path(patterns));
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
    std::string s;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) {
            s += sep;
        }
        s += parts[i];
    }
    return s;
}

std::vector<std::string> feature_ids(std::span<const Feature> features) {
    std::vector<std::string> ids;
    for (const auto f : features) {
        ids.emplace_back(FeatureCatalog::standard().spec(f).id);
    }
    return ids;
}

json config_json(const RunConfig& c) {
    json j = {{"corpus", c.corpus.generic_string()},
              {"judgments", c.judgments.generic_string()},
              {"method", c.method},
              {"features", c.features},
              {"pagerank_tolerance", c.pagerank_tolerance},
              {"pagerank_max_iterations", c.pagerank_max_iterations},
              {"edge_weighting", c.edge_weighting},
              {"bm25_aggregation", c.bm25_aggregation},
              {"augment_negatives", c.augment_negatives},
              {"label", run_label(c)},
              {"dump_pagerank", c.dump_pagerank}};
    if (!c.venue_patterns.empty()) {
        j["venue_patterns"] = c.venue_patterns.generic_string();
    }
    if (c.seed) {
        j["seed"] = *c.seed;
    }
    if (c.now_year) {
        j["now_year"] = *c.now_year;
    }
    return j;
}

int latest_year(const Corpus& corpus) {
    int best = 0;
    for (const auto& p : corpus.publications()) {
        if (p.year) {
            best = std::max(best, *p.year);
        }
    }
    return best;
}

}  // namespace

RunConfig parse_run_config(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) {
        throw ConfigError("config must be a JSON object");
    }
    static const std::set<std::string> known{"corpus",       "judgments",          "out",
                                             "venue_patterns", "method",           "features",
                                             "seed",         "now_year",           "pagerank_tolerance",
                                             "pagerank_max_iterations", "edge_weighting", "bm25_aggregation",
                                             "augment_negatives", "label",          "dump_pagerank"};
    std::vector<std::string> unknown;
    for (const auto& [key, _] : j.items()) {
        if (!known.contains(key)) {
            unknown.push_back(key);
        }
    }
    if (!unknown.empty()) {
        throw ConfigError("unknown config keys: " + join(unknown, ", "));
    }
    RunConfig c;
    const auto path = [&](const char* key, std::filesystem::path& dst) {
        if (j.contains(key)) {
            dst = get_field<std::string>(j, key, "a string");
        }
    };
    const auto str = [&](const char* key, std::string& dst) {
        if (j.contains(key)) {
            dst = get_field<std::string>(j, key, "a string");
        }
    };
    path("corpus", c.corpus);
    path("judgments", c.judgments);
    path("out", c.out);
    path("venue_patterns", c.venue_patterns);
    str("method", c.method);
    str("edge_weighting", c.edge_weighting);
    str("bm25_aggregation", c.bm25_aggregation);
    str("label", c.label);
    if (j.contains("features")) {
        const auto& f = j.at("features");
        if (f.is_array()) {
            std::vector<std::string> parts;
            for (const auto& e : f) {
                if (!e.is_string()) {
                    throw ConfigError("config key 'features' must be a string or a list of strings");
                }
                parts.push_back(e.get<std::string>());
            }
            c.features = join(parts, ",");
        } else {
            c.features = get_field<std::string>(j, "features", "a string or a list of strings");
        }
    }
    if (j.contains("seed")) {
        if (!j.at("seed").is_number_unsigned()) {
            throw ConfigError("config key 'seed' must be a non-negative integer");
        }
        c.seed = j.at("seed").get<std::uint64_t>();
    }
    if (j.contains("now_year")) {
        if (!j.at("now_year").is_number_integer()) {
            throw ConfigError("config key 'now_year' must be an integer");
        }
        c.now_year = j.at("now_year").get<int>();
    }
    if (j.contains("pagerank_tolerance")) {
        if (!j.at("pagerank_tolerance").is_number()) {
            throw ConfigError("config key 'pagerank_tolerance' must be a number");
        }
        c.pagerank_tolerance = j.at("pagerank_tolerance").get<double>();
    }
    if (j.contains("pagerank_max_iterations")) {
        if (!j.at("pagerank_max_iterations").is_number_integer()) {
            throw ConfigError("config key 'pagerank_max_iterations' must be an integer");
        }
        c.pagerank_max_iterations = j.at("pagerank_max_iterations").get<int>();
    }
    if (j.contains("augment_negatives")) {
        c.augment_negatives = get_field<bool>(j, "augment_negatives", "a boolean");
    }
    if (j.contains("dump_pagerank")) {
        c.dump_pagerank = get_field<bool>(j, "dump_pagerank", "a boolean");
    }
    return c;
}

RunConfig load_run_config(const std::filesystem::path& path) { return parse_run_config(read_text(path)); }

std::filesystem::path resolve_data_path(const std::filesystem::path& path) {
    if (path.empty() || path.is_absolute()) {
        return path;
    }
    if (const char* dir = std::getenv("EXPERTRANK_DATA_DIR"); dir && *dir) {
        return std::filesystem::path(dir) / path;
    }
    return path;
}

std::vector<std::string> validate(const RunConfig& c) {
    std::vector<std::string> errors;
    const auto check = [&](auto&& fn) {
        try {
            fn();
        } catch (const ConfigError& e) {
            errors.emplace_back(e.what());
        }
    };
    if (c.corpus.empty()) {
        errors.emplace_back("corpus path is required");
    } else if (!std::filesystem::is_regular_file(resolve_data_path(c.corpus))) {
        errors.push_back("corpus file not found: " + resolve_data_path(c.corpus).string());
    }
    if (c.judgments.empty()) {
        errors.emplace_back("judgments path is required");
    } else if (!std::filesystem::is_regular_file(resolve_data_path(c.judgments))) {
        errors.push_back("judgments file not found: " + resolve_data_path(c.judgments).string());
    }
    if (c.out.empty()) {
        errors.emplace_back("output directory is required");
    }
    if (!c.venue_patterns.empty()) {
        check([&] { (void)VenueClassifier::from_file(resolve_data_path(c.venue_patterns)); });
    }
    check([&] { (void)fusion_method_from_string(c.method); });
    check([&] {
        if (FeatureCatalog::standard().select(c.features).empty()) {
            throw ConfigError("no features enabled");
        }
    });
    check([&] { (void)edge_weighting_from_string(c.edge_weighting); });
    check([&] { (void)author_aggregation_from_string(c.bm25_aggregation); });
    if (c.augment_negatives && !c.seed) {
        errors.emplace_back("seed is required when negatives are augmented");
    }
    if (!(c.pagerank_tolerance > 0.0)) {
        errors.emplace_back("pagerank_tolerance must be positive");
    }
    if (c.pagerank_max_iterations < 1) {
        errors.emplace_back("pagerank_max_iterations must be at least 1");
    }
    if (c.now_year && (*c.now_year < 1 || *c.now_year > 9999)) {
        errors.emplace_back("now_year out of range: " + std::to_string(*c.now_year));
    }
    return errors;
}

std::string run_label(const RunConfig& c) { return c.label.empty() ? c.method + " " + c.features : c.label; }

IngestSummary run_ingest(const std::filesystem::path& corpus, const std::filesystem::path& out,
                         const std::filesystem::path& venue_patterns) {
    const auto venues = venues_for(venue_patterns);
    const auto result = parse_corpus(resolve_data_path(corpus), CorpusFormat::arnetminer_flat, venues);
    if (out.has_parent_path()) {
        std::filesystem::create_directories(out.parent_path());
    }
    save_corpus(result.corpus, out);
    IngestSummary s;
    s.publications = result.corpus.stats().publications;
    s.authors = result.corpus.stats().authors;
    s.citation_links = result.corpus.stats().citation_links;
    s.skipped_records = result.diagnostics.skipped_total();
    s.corpus_file = out;
    s.diagnostics_file = out;
    s.diagnostics_file += ".diagnostics.txt";
    auto diag = open_out(s.diagnostics_file);
    result.diagnostics.write(diag);
    return s;
}

void write_summary(std::ostream& out, const IngestSummary& s) {
    out << "publications " << s.publications << " authors " << s.authors << " citation_links " << s.citation_links
        << " skipped " << s.skipped_records << '\n';
}

RankSummary run_rank(const RunConfig& config) {
    if (const auto errors = validate(config); !errors.empty()) {
        throw ConfigError(join(errors, "\n"));
    }
    const auto method = fusion_method_from_string(config.method);
    const auto enabled = FeatureCatalog::standard().select(config.features);

    const auto ingest = open_corpus(resolve_data_path(config.corpus), venues_for(config.venue_patterns));
    const Corpus& corpus = ingest.corpus;
    if (corpus.size() == 0) {
        throw DataError("corpus has no publications");
    }
    const auto loaded = load_judgments(resolve_data_path(config.judgments), corpus);
    if (loaded.judgments.empty()) {
        throw DataError("no judged topic has a resolvable positive");
    }

    EngineOptions options;
    options.aggregation = author_aggregation_from_string(config.bm25_aggregation);
    options.weighting = edge_weighting_from_string(config.edge_weighting);
    options.pagerank.tolerance = config.pagerank_tolerance;
    options.pagerank.max_iterations = config.pagerank_max_iterations;
    options.now_year = config.now_year.value_or(latest_year(corpus));
    if (options.now_year == 0) {
        throw DataError("corpus has no publication years; set now_year");
    }
    const ExpertSearchEngine engine(corpus, options);

    const JudgmentSet judgments =
        config.augment_negatives
            ? augment_negatives(loaded.judgments, corpus,
                                [&](std::string_view q) { return engine.authors_by_bm25(q); }, *config.seed)
            : loaded.judgments;

    const auto out = config.out;
    std::filesystem::create_directories(out / "ranked");
    std::filesystem::create_directories(out / "features");

    RankSummary summary;
    json topics = json::array();
    std::vector<Feature> unavailable;
    for (const auto& topic : judgments.topics) {
        const auto pool = topic.pool();
        const auto ev = engine.evidence(topic.query);
        const auto matrix = engine.extract(topic.id, ev, pool, enabled);
        const auto trace = fuse(matrix, method);
        const auto ranked = rank_by_score(topic.id, matrix.candidates(), trace.score);
        {
            auto f = open_out(out / "ranked" / (topic.id + ".tsv"));
            write_ranked_list(f, ranked);
        }
        {
            auto f = open_out(out / "features" / (topic.id + ".tsv"));
            write_feature_dump(f, matrix, trace);
        }
        unavailable = matrix.unavailable();
        summary.candidates += pool.size();
        topics.push_back({{"id", topic.id},
                          {"query", topic.query},
                          {"positives", topic.positives.size()},
                          {"negatives", topic.negatives.size()},
                          {"bm25_negatives", topic.bm25_negatives}});
    }
    summary.topics = judgments.topics.size();
    summary.unavailable_features = feature_ids(unavailable);
    summary.pagerank_converged = engine.pagerank().converged;
    summary.pagerank_iterations = engine.pagerank().iterations;

    {
        auto f = open_out(out / "pools.tsv");
        write_pools(f, judgments);
    }
    {
        auto f = open_out(out / "diagnostics.txt");
        f << "[ingest]\n";
        ingest.diagnostics.write(f);
        f << "[judgments]\n";
        loaded.diagnostics.write(f);
        f << "[features]\n";
        for (const auto& id : summary.unavailable_features) {
            f << "unavailable: " << id << '\n';
        }
        if (!engine.pagerank().converged) {
            f << "[pagerank]\nnot converged after " << engine.pagerank().iterations << " iterations, change "
              << engine.pagerank().last_change << '\n';
        }
    }
    if (config.dump_pagerank) {
        auto f = open_out(out / "pagerank.tsv");
        write_pagerank(f, corpus, engine.pagerank());
    }

    std::vector<Feature> used;
    for (const auto f : enabled) {
        if (std::find(unavailable.begin(), unavailable.end(), f) == unavailable.end()) {
            used.push_back(f);
        }
    }
    const auto& stats = corpus.stats();
    json manifest = {
        {"config", config_json(config)},
        {"corpus",
         {{"fingerprint", corpus_fingerprint(corpus)},
          {"publications", stats.publications},
          {"authors", stats.authors},
          {"citation_links", stats.citation_links},
          {"with_abstract", stats.with_abstract}}},
        {"now_year", options.now_year},
        {"isa", std::string(kernels::isa_name(kernels::active_isa()))},
        {"features", {{"enabled", feature_ids(used)}, {"unavailable", summary.unavailable_features}}},
        {"pagerank",
         {{"converged", engine.pagerank().converged},
          {"iterations", engine.pagerank().iterations},
          {"last_change", engine.pagerank().last_change}}},
        {"topics", topics},
    };
    auto f = open_out(out / "manifest.json");
    f << manifest.dump(2) << '\n';
    return summary;
}

JudgmentSet read_pools(std::istream& in) {
    JudgmentSet set;
    std::string line;
    if (!std::getline(in, line) || line != "topic_id\tauthor_id\tlabel\trole") {
        throw DataError("pools: missing header");
    }
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) {
            continue;
        }
        std::vector<std::string> fields;
        std::stringstream ss(line);
        for (std::string field; std::getline(ss, field, '\t');) {
            fields.push_back(field);
        }
        std::uint32_t author = 0;
        const auto [p, ec] = std::from_chars(fields.size() > 1 ? fields[1].data() : nullptr,
                                             fields.size() > 1 ? fields[1].data() + fields[1].size() : nullptr, author);
        const bool ok_id = fields.size() == 4 && ec == std::errc{} && p == fields[1].data() + fields[1].size();
        const bool positive = fields.size() == 4 && fields[2] == "1" && fields[3] == "positive";
        const bool negative = fields.size() == 4 && fields[2] == "0" && (fields[3] == "bm25" || fields[3] == "random");
        if (!ok_id || !(positive || negative)) {
            throw DataError("pools line " + std::to_string(line_no) + ": malformed");
        }
        if (set.topics.empty() || set.topics.back().id != fields[0]) {
            if (set.find(fields[0])) {
                throw DataError("pools line " + std::to_string(line_no) + ": topic " + fields[0] + " is not contiguous");
            }
            set.topics.push_back(Topic{fields[0], {}, {}, {}, 0});
        }
        auto& t = set.topics.back();
        if (positive) {
            t.positives.emplace_back(author);
        } else {
            t.negatives.emplace_back(author);
            t.bm25_negatives += fields[3] == "bm25" ? 1 : 0;
        }
    }
    return set;
}

std::vector<EvaluationReport> run_eval(const EvalOptions& options) {
    if (options.runs.empty()) {
        throw ConfigError("no run directories given");
    }
    std::optional<IngestResult> ingest;
    std::optional<JudgmentSet> judgments;
    if (!options.judgments.empty()) {
        if (options.corpus.empty()) {
            throw ConfigError("a raw judgments file needs --corpus to resolve author names");
        }
        ingest = open_corpus(resolve_data_path(options.corpus));
        judgments = load_judgments(resolve_data_path(options.judgments), ingest->corpus).judgments;
    }

    std::vector<EvaluationReport> reports;
    for (const auto& dir : options.runs) {
        const auto ranked_dir = dir / "ranked";
        std::map<std::string, RankedList> ranked;
        if (std::filesystem::is_directory(ranked_dir)) {
            for (const auto& entry : std::filesystem::directory_iterator(ranked_dir)) {
                if (entry.path().extension() != ".tsv") {
                    continue;
                }
                std::ifstream in(entry.path(), std::ios::binary);
                auto list = read_ranked_list(in);
                const auto id = entry.path().stem().string();
                if (!list.entries.empty() && list.query_id != id) {
                    throw DataError(entry.path().string() + ": holds query " + list.query_id);
                }
                list.query_id = id;
                ranked.emplace(id, std::move(list));
            }
        }
        if (ranked.empty()) {
            throw DataError("no ranked lists in " + ranked_dir.string());
        }

        std::string label = dir.filename().string();
        std::map<std::string, std::string> metadata;
        if (std::ifstream m(dir / "manifest.json", std::ios::binary); m) {
            try {
                const auto j = json::parse(m);
                const auto& c = j.at("config");
                label = c.at("label").get<std::string>();
                metadata["method"] = c.at("method").get<std::string>();
                metadata["features"] = c.at("features").get<std::string>();
                if (c.contains("seed")) {
                    metadata["seed"] = std::to_string(c.at("seed").get<std::uint64_t>());
                }
            } catch (const json::exception& e) {
                throw DataError((dir / "manifest.json").string() + ": " + e.what());
            }
        }

        JudgmentSet pools;
        if (!judgments) {
            std::ifstream in(dir / "pools.tsv", std::ios::binary);
            if (!in) {
                throw DataError("missing " + (dir / "pools.tsv").string() + " and no judgments file given");
            }
            pools = read_pools(in);
        }
        auto report = evaluate_run(ranked, judgments ? *judgments : pools, label);
        report.metadata = std::move(metadata);
        for (const auto& s : report.skipped) {
            std::cerr << "warning: " << label << ": query " << s << " has no relevant expert, skipped\n";
        }
        reports.push_back(std::move(report));
    }

    if (!options.out.empty()) {
        std::filesystem::create_directories(options.out);
        auto table = open_out(options.out / "report.tsv");
        write_report_table(table, reports);
        auto breakdown = open_out(options.out / "per_query.tsv");
        write_query_breakdown(breakdown, reports);
    }
    return reports;
}

}  // namespace expertrank
