#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "expertrank/common.hpp"
#include "expertrank/pipeline.hpp"
#include "expertrank/synthetic.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kData = 2;

}  // namespace

int main(int argc, char** argv) {
    using namespace expertrank;

    CLI::App app{"Unsupervised expert ranking over a publication corpus"};
    app.require_subcommand(1);

    std::string ingest_corpus, ingest_out, ingest_venues;
    auto* ingest = app.add_subcommand("ingest", "parse a flat dump into a persisted corpus");
    ingest->add_option("--corpus", ingest_corpus, "Arnetminer flat file")->required();
    ingest->add_option("--out", ingest_out, "persisted corpus path")->required();
    ingest->add_option("--venues", ingest_venues, "venue pattern file");

    std::string config_path, corpus, judgments, method, features, out, weighting, venues;
    std::uint64_t seed = 0;
    int now_year = 0, max_iter = 0;
    double tol = 0.0;
    bool no_augment = false, dump_pagerank = false;
    auto* rank = app.add_subcommand("rank", "build pools, extract features, fuse and write ranked lists");
    rank->add_option("--config", config_path, "JSON run config; flags override it");
    rank->add_option("--corpus", corpus, "persisted corpus or flat dump");
    rank->add_option("--judgments", judgments, "judgments file");
    rank->add_option("--method", method, "combsum or combmnz");
    rank->add_option("--features", features, "comma-separated groups or feature ids, or all");
    auto* seed_opt = rank->add_option("--seed", seed, "seed for random negatives");
    auto* year_opt = rank->add_option("--now-year", now_year, "reference year for age discounting");
    auto* tol_opt = rank->add_option("--pagerank-tolerance", tol, "L1 convergence threshold");
    auto* iter_opt = rank->add_option("--pagerank-max-iterations", max_iter, "iteration cap");
    rank->add_option("--edge-weighting", weighting, "citing, cited or unit");
    rank->add_option("--venues", venues, "venue pattern file");
    rank->add_option("--out", out, "output directory");
    rank->add_flag("--no-augment", no_augment, "rank only the judged authors");
    rank->add_flag("--dump-pagerank", dump_pagerank, "also write pagerank.tsv");

    std::vector<std::string> eval_runs;
    std::string eval_judgments, eval_corpus, eval_out;
    auto* eval = app.add_subcommand("eval", "score run directories against judgments");
    eval->add_option("runs", eval_runs, "directories written by rank")->required();
    eval->add_option("--judgments", eval_judgments, "raw judgments file (default: each run's pools.tsv)");
    eval->add_option("--corpus", eval_corpus, "corpus used to resolve a raw judgments file");
    eval->add_option("--out", eval_out, "directory for report.tsv and per_query.tsv");

    std::string synth_out;
    std::uint64_t synth_seed = SyntheticOptions{}.seed;
    auto* synth = app.add_subcommand("synth", "write the synthetic fixture");
    synth->add_option("--out", synth_out, "output directory")->required();
    synth->add_option("--seed", synth_seed, "generator seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*ingest) {
            write_summary(std::cout, run_ingest(ingest_corpus, ingest_out, ingest_venues));
        } else if (*rank) {
            RunConfig c = config_path.empty() ? RunConfig{} : load_run_config(config_path);
            if (!corpus.empty()) c.corpus = corpus;
            if (!judgments.empty()) c.judgments = judgments;
            if (!method.empty()) c.method = method;
            if (!features.empty()) c.features = features;
            if (!out.empty()) c.out = out;
            if (!weighting.empty()) c.edge_weighting = weighting;
            if (!venues.empty()) c.venue_patterns = venues;
            if (*seed_opt) c.seed = seed;
            if (*year_opt) c.now_year = now_year;
            if (*tol_opt) c.pagerank_tolerance = tol;
            if (*iter_opt) c.pagerank_max_iterations = max_iter;
            if (no_augment) c.augment_negatives = false;
            if (dump_pagerank) c.dump_pagerank = true;
            const auto s = run_rank(c);
            std::cout << "topics " << s.topics << " candidates " << s.candidates << " pagerank_iterations "
                      << s.pagerank_iterations << (s.pagerank_converged ? "" : " (not converged)") << '\n';
            for (const auto& f : s.unavailable_features) {
                std::cerr << "unavailable feature: " << f << '\n';
            }
        } else if (*eval) {
            EvalOptions o;
            o.runs.assign(eval_runs.begin(), eval_runs.end());
            o.judgments = eval_judgments;
            o.corpus = eval_corpus;
            o.out = eval_out;
            const auto reports = run_eval(o);
            write_report_table(std::cout, reports);
        } else if (*synth) {
            SyntheticOptions o;
            o.seed = synth_seed;
            const auto fixture = generate_synthetic(o);
            write_synthetic(fixture, synth_out);
            std::cout << manifest_json(fixture.manifest);
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kUsage;
    } catch (const DataError& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return kData;
    } catch (const IngestError& e) {
        std::cerr << "ingest error: " << e.what() << '\n';
        return kData;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kData;
    }
    return kOk;
}
