// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any fails.
//
// Oracles here are written independently of the library: brute-force scans,
// dense power iteration, direct formula evaluation.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "expertrank/aggregate.hpp"
#include "expertrank/citation_graph.hpp"
#include "expertrank/engine.hpp"
#include "expertrank/eval.hpp"
#include "expertrank/graph_metrics.hpp"
#include "expertrank/judgments.hpp"
#include "expertrank/kernels.hpp"
#include "expertrank/pipeline.hpp"
#include "expertrank/synthetic.hpp"

using namespace expertrank;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

// Collects the first few failure messages of a criterion.
struct Check {
    bool ok = true;
    int failures = 0;
    std::ostringstream log;

    void expect(bool cond, const std::string& what) {
        if (cond) {
            return;
        }
        ok = false;
        if (++failures <= 3) {
            log << (failures > 1 ? "; " : "") << what;
        }
    }
    [[nodiscard]] Outcome outcome(const std::string& summary) const {
        if (ok) {
            return {true, summary};
        }
        return {false, log.str() + (failures > 3 ? " (+" + std::to_string(failures - 3) + " more)" : "")};
    }
};

bool rel_close(double a, double b, double tol) { return std::abs(a - b) <= tol * std::max(1.0, std::abs(b)); }

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

fs::path scratch(const std::string& name) {
    const auto p = fs::temp_directory_path() / ("expertrank-acceptance-" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

// ---------------------------------------------------------------------------

std::uint32_t oracle_h(const std::vector<std::uint32_t>& c) {
    std::uint32_t best = 0;
    for (std::uint32_t h = 0; h <= c.size(); ++h) {
        std::uint32_t at_least = 0;
        for (const auto x : c) {
            at_least += x >= h ? 1 : 0;
        }
        if (at_least >= h) {
            best = h;
        }
    }
    return best;
}

std::uint32_t oracle_g(const std::vector<std::uint32_t>& c) {
    auto sorted = c;
    std::sort(sorted.rbegin(), sorted.rend());
    std::uint32_t best = 0;
    for (std::size_t g = 1; g <= sorted.size(); ++g) {
        std::uint64_t top = 0;
        for (std::size_t i = 0; i < g; ++i) {
            top += sorted[i];
        }
        if (top >= g * g) {
            best = static_cast<std::uint32_t>(g);
        }
    }
    return best;
}

std::vector<std::uint32_t> random_citations(std::mt19937_64& rng) {
    std::vector<std::uint32_t> c(rng() % 60);
    for (auto& x : c) {
        // mixture of small counts and a heavy tail
        x = static_cast<std::uint32_t>(rng() % 4 == 0 ? rng() % 300 : rng() % 12);
    }
    return c;
}

Outcome formula_oracles() {
    Check chk;
    std::mt19937_64 rng(20240601);
    for (int i = 0; i < 1000; ++i) {
        const auto c = random_citations(rng);
        chk.expect(h_index(c) == oracle_h(c), "h mismatch on vector " + std::to_string(i));
        chk.expect(g_index(c) == oracle_g(c), "g mismatch on vector " + std::to_string(i));
    }
    for (int i = 0; i < 100; ++i) {
        auto c = random_citations(rng);
        std::sort(c.rbegin(), c.rend());
        const auto h = oracle_h(c);
        const double total = std::accumulate(c.begin(), c.end(), 0.0);
        const double core = std::accumulate(c.begin(), c.begin() + h, 0.0);
        const double hh = static_cast<double>(h) * h;
        const double a = h == 0 ? 0.0 : total / hh;
        const double e = h == 0 ? 0.0 : std::sqrt(core - hh);

        AuthorCitationStats s;
        s.citations = c;
        double core_authors = 0;
        for (std::size_t k = 0; k < c.size(); ++k) {
            s.author_counts.push_back(static_cast<std::uint32_t>(1 + rng() % 8));
            if (k < h) {
                core_authors += s.author_counts.back();
            }
        }
        s.total = static_cast<std::uint64_t>(total);
        const double individual = h == 0 ? 0.0 : hh / core_authors;

        chk.expect(rel_close(a_index(c), a, 1e-12), "a-index on vector " + std::to_string(i));
        chk.expect(rel_close(a_index(s), a, 1e-12), "a-index(stats) on vector " + std::to_string(i));
        chk.expect(rel_close(e_index(c), e, 1e-12), "e-index on vector " + std::to_string(i));
        chk.expect(rel_close(individual_h_index(s), individual, 1e-12),
                   "individual h on vector " + std::to_string(i));
    }
    return chk.outcome("1000 h/g vectors exact, 100 e/a/individual-h vectors within 1e-12");
}

// ---------------------------------------------------------------------------

// One cited paper plus its citing papers; returns the corpus and the cited doc.
Corpus single_paper(std::optional<int> year, const std::vector<std::optional<int>>& citing_years) {
    std::ostringstream s;
    s << "#*cited\n#@Cited Author\n#index1\n";
    if (year) {
        s << "#t" << *year << '\n';
    }
    s << '\n';
    for (std::size_t i = 0; i < citing_years.size(); ++i) {
        s << "#*citing\n#@Citer " << i << "\n#index" << i + 2 << "\n#%1\n";
        if (citing_years[i]) {
            s << "#t" << *citing_years[i] << '\n';
        }
        s << '\n';
    }
    std::istringstream in(s.str());
    return parse_arnetminer(in).corpus;
}

Outcome age_weighted_scores() {
    Check chk;
    const int now = 2010;
    const auto score = [&](const Corpus& c, bool trend, const AgeWeighting& w = {}) {
        const auto g = build_citation_graph(c);
        const auto d = *c.find_publication(1);
        return trend ? trend_score(d, c, g, now, w) : contemporary_score(d, c, g, now, w);
    };
    const auto c1 = single_paper(now, {now, now, now});
    chk.expect(rel_close(score(c1, false), 12.0, 1e-12), "current-year paper, 3 citations: S^c != 12");
    const auto c2 = single_paper(now - 3, {now, now, now, now});
    chk.expect(rel_close(score(c2, false), 4.0, 1e-12), "4-year-old paper, 4 citations: S^c != 4");
    const auto c3 = single_paper(2000, {now});
    chk.expect(rel_close(score(c3, true), 4.0, 1e-12), "one current-year citation: S^t != 4");
    const auto c4 = single_paper(2000, {now - 3, now - 3, now - 3});
    chk.expect(rel_close(score(c4, true), 3.0, 1e-12), "three 4-year-old citations: S^t != 3");
    const auto c5 = single_paper(2004, {});
    chk.expect(score(c5, false) == 0.0 && score(c5, true) == 0.0, "uncited paper scores non-zero");

    // direct evaluation for arbitrary gamma, delta and ages
    std::mt19937_64 rng(8);
    for (int i = 0; i < 200; ++i) {
        const AgeWeighting w{1.0 + static_cast<double>(rng() % 50) / 10.0, static_cast<double>(rng() % 30) / 10.0};
        const int y = 1990 + static_cast<int>(rng() % 21);
        std::vector<std::optional<int>> cy;
        double trend = 0;
        const std::size_t cites = rng() % 6;
        for (std::size_t k = 0; k < cites; ++k) {
            const int yy = y + static_cast<int>(rng() % static_cast<unsigned>(now - y + 1));
            cy.emplace_back(yy);
            trend += w.gamma * std::pow(static_cast<double>(now - yy + 1), -w.delta);
        }
        const double cont = w.gamma * std::pow(static_cast<double>(now - y + 1), -w.delta) * cy.size();
        const auto c = single_paper(y, cy);
        chk.expect(rel_close(score(c, false, w), cont, 1e-12), "S^c direct evaluation, case " + std::to_string(i));
        chk.expect(rel_close(score(c, true, w), trend, 1e-12), "S^t direct evaluation, case " + std::to_string(i));
    }
    return chk.outcome("worked cases 12, 4, 4, 3 and 200 direct evaluations within 1e-12");
}

// ---------------------------------------------------------------------------

std::vector<double> oracle_pagerank(std::size_t n, const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges) {
    std::vector<std::vector<std::uint32_t>> out(n);
    for (const auto& [s, t] : edges) {
        out[s].push_back(t);
    }
    std::vector<double> pr(n, 1.0 / static_cast<double>(n)), next(n);
    for (int it = 0; it < 10000; ++it) {
        std::fill(next.begin(), next.end(), 0.5 / static_cast<double>(n));
        for (std::size_t j = 0; j < n; ++j) {
            for (const auto t : out[j]) {
                next[t] += 0.5 * pr[j] / static_cast<double>(out[j].size());
            }
        }
        double diff = 0;
        for (std::size_t i = 0; i < n; ++i) {
            diff += std::abs(next[i] - pr[i]);
        }
        pr.swap(next);
        if (diff < 1e-15) {
            break;
        }
    }
    return pr;
}

Outcome pagerank_fidelity() {
    Check chk;
    std::mt19937_64 rng(77);
    int iterations = 0;
    for (int g = 0; g < 100; ++g) {
        const std::size_t n = 2 + rng() % 199;
        std::set<std::pair<std::uint32_t, std::uint32_t>> edges;
        for (std::uint32_t s = 0; s < n; ++s) {
            const std::size_t deg = 1 + rng() % 5;
            for (std::size_t k = 0; k < deg; ++k) {
                auto t = static_cast<std::uint32_t>(rng() % (n - 1));
                t += t >= s ? 1 : 0;  // no self-loops
                edges.emplace(s, t);
            }
        }
        std::vector<CitationGraph::Edge> list;
        std::vector<std::pair<std::uint32_t, std::uint32_t>> plain(edges.begin(), edges.end());
        for (const auto& [s, t] : plain) {
            list.push_back({s, t, 1.0});
        }
        const auto graph = CitationGraph::from_edges(n, list);
        const auto r = pagerank(graph);
        iterations = std::max(iterations, r.iterations);
        const auto expect = oracle_pagerank(n, plain);
        const double sum = std::accumulate(r.scores.begin(), r.scores.end(), 0.0);
        chk.expect(r.converged, "graph " + std::to_string(g) + " did not converge");
        chk.expect(std::abs(sum - 1.0) < 1e-8, "graph " + std::to_string(g) + ": sum " + fmt("%.12g", sum));
        double worst = 0;
        for (std::size_t i = 0; i < n; ++i) {
            worst = std::max(worst, std::abs(r.scores[i] - expect[i]));
        }
        chk.expect(worst < 1e-8, "graph " + std::to_string(g) + ": max deviation " + fmt("%.3g", worst));
    }
    const std::vector<CitationGraph::Edge> cycle{{0, 1, 1.0}, {1, 0, 1.0}};
    const auto two = pagerank(CitationGraph::from_edges(2, cycle));
    chk.expect(std::abs(two.scores[0] - 0.5) < 1e-10 && std::abs(two.scores[1] - 0.5) < 1e-10,
               "2-cycle is not (0.5, 0.5)");
    return chk.outcome("100 dangling-free graphs: sum within 1e-8, per-node within 1e-8 of oracle, max " +
                       std::to_string(iterations) + " iterations; 2-cycle (0.5, 0.5)");
}

// ---------------------------------------------------------------------------

FeatureMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols) {
    const auto all = FeatureCatalog::standard().select("all");
    std::vector<AuthorId> ids;
    for (std::uint32_t i = 0; i < rows; ++i) {
        ids.emplace_back(i * 7 + static_cast<std::uint32_t>(rng() % 7));
    }
    FeatureMatrix m("q", ids, std::vector<Feature>(all.begin(), all.begin() + static_cast<long>(cols)));
    for (std::size_t j = 0; j < cols; ++j) {
        const auto kind = rng() % 6;
        for (std::size_t i = 0; i < rows; ++i) {
            // dyadic grid of step 1/1024, so scaled and shifted copies stay exact
            double v = static_cast<double>(rng() % 102400) / 1024.0;
            if (kind == 0) {
                v = 3.5;  // constant column
            } else if (kind == 1) {
                v = 0.0;
            } else if (rng() % 3 == 0) {
                v = 0.0;
            } else if (kind == 2) {
                v = std::floor(v / 10);  // many ties
            }
            m.set(i, j, v);
        }
    }
    return m;
}

std::vector<std::uint32_t> order_of(const RankedList& l) {
    std::vector<std::uint32_t> ids;
    for (const auto& e : l.entries) {
        ids.push_back(e.expert.value());
    }
    return ids;
}

Outcome fusion_correctness() {
    Check chk;
    std::mt19937_64 rng(99);
    for (int i = 0; i < 1000; ++i) {
        const std::size_t rows = 1 + rng() % 40;
        const std::size_t cols = 1 + rng() % 12;
        const auto m = random_matrix(rng, rows, cols);
        const auto sum = fuse(m, FusionMethod::combsum);
        const auto mnz = fuse(m, FusionMethod::combmnz);
        for (std::size_t r = 0; r < rows; ++r) {
            double nonzero = 0;
            for (std::size_t j = 0; j < cols; ++j) {
                nonzero += m.at(r, j) != 0.0 ? 1.0 : 0.0;
            }
            chk.expect(mnz.score[r] == sum.score[r] * nonzero, "matrix " + std::to_string(i) + ": MNZ != SUM * r_e");
        }

        // Positive affine transform of one column. With a = m * 2^j and integer b
        // every step is exact in binary floating point, so the order must not move.
        const std::size_t col = rng() % cols;
        const auto transformed = [&](double a, double b) {
            auto t = m;
            for (std::size_t r = 0; r < rows; ++r) {
                t.set(r, col, a * m.at(r, col) + b);
            }
            return t;
        };
        const double exact_a = std::ldexp(static_cast<double>(1 + rng() % 15), static_cast<int>(rng() % 9) - 4);
        const double exact_b = static_cast<double>(rng() % 2001) - 1000.0;
        const auto base_order = comb_sum(m);
        chk.expect(order_of(comb_sum(transformed(exact_a, exact_b))) == order_of(base_order),
                   "matrix " + std::to_string(i) + ": CombSUM order changed under exact affine transform");

        // Arbitrary real a, b: rounding may only reorder rows whose scores tie.
        const double a = 0.01 + static_cast<double>(rng() % 1000) / 37.0;
        const double b = static_cast<double>(rng() % 2001) / 7.0 - 140.0;
        const auto moved = fuse(transformed(a, b), FusionMethod::combsum).score;
        const auto base = fuse(m, FusionMethod::combsum).score;
        std::vector<std::size_t> idx(rows);
        std::iota(idx.begin(), idx.end(), std::size_t{0});
        std::sort(idx.begin(), idx.end(), [&](std::size_t x, std::size_t y) {
            return moved[x] != moved[y] ? moved[x] > moved[y] : m.candidates()[x] < m.candidates()[y];
        });
        for (std::size_t r = 1; r < rows; ++r) {
            const double hi = base[idx[r - 1]], lo = base[idx[r]];
            chk.expect(hi >= lo || rel_close(hi, lo, 1e-12),
                       "matrix " + std::to_string(i) + ": real affine transform inverted distinct scores");
        }
    }

    // a constant column adds nothing to the normalized sum
    for (int i = 0; i < 100; ++i) {
        const auto m = random_matrix(rng, 2 + rng() % 20, 3);
        const auto all = FeatureCatalog::standard().select("all");
        auto cols = m.columns();
        cols.push_back(all[10]);
        FeatureMatrix wider(m.query_id(), m.candidates(), cols);
        const double constant = static_cast<double>(rng() % 5);
        for (std::size_t r = 0; r < m.rows(); ++r) {
            for (std::size_t j = 0; j < m.cols(); ++j) {
                wider.set(r, j, m.at(r, j));
            }
            wider.set(r, m.cols(), constant);
        }
        chk.expect(fuse(wider, FusionMethod::combsum).score == fuse(m, FusionMethod::combsum).score,
                   "constant column changed CombSUM");
        const auto norm = minmax_normalize(wider.column(m.cols()));
        chk.expect(std::all_of(norm.begin(), norm.end(), [](double v) { return v == 0.0; }),
                   "constant column normalizes to non-zero");
    }

    FeatureMatrix ex("q", {AuthorId(0), AuthorId(1)}, {Feature::bm25_title, Feature::h_index});
    ex.set(0, 0, 0.4);
    ex.set(0, 1, 0.0);
    ex.set(1, 0, 0.2);
    ex.set(1, 1, 0.3);
    const auto t = fuse(ex, FusionMethod::combmnz);
    const auto ranked = comb_mnz(ex);
    chk.expect(t.comb_sum == std::vector<double>{1.0, 1.0}, "worked example CombSUM != (1, 1)");
    chk.expect(t.score == std::vector<double>{1.0, 2.0}, "worked example CombMNZ != (1, 2)");
    chk.expect(ranked.entries.front().expert == AuthorId(1), "worked example: B not first");
    return chk.outcome("1000 matrices: MNZ = SUM * r_e exactly, CombSUM order invariant under exact affine "
                       "transforms (real ones reorder only tied scores); constant column inert; worked example "
                       "B=2.0 > A=1.0");
}

// ---------------------------------------------------------------------------

Outcome metrics() {
    Check chk;
    const auto list = [](const std::vector<std::uint32_t>& ids) {
        RankedList l{"q", {}};
        for (std::size_t i = 0; i < ids.size(); ++i) {
            l.entries.push_back({AuthorId(ids[i]), static_cast<double>(ids.size() - i)});
        }
        return l;
    };
    const RelevantSet odd{AuthorId(1), AuthorId(3)};
    const auto ap = average_precision(list({1, 2, 3}), odd);
    chk.expect(ap && std::abs(*ap - 5.0 / 6.0) < 1e-12, "AP of [1,0,1] != 5/6");

    std::mt19937_64 rng(5);
    for (int i = 0; i < 2000; ++i) {
        const std::size_t n = 1 + rng() % 30;
        std::vector<std::uint32_t> ids(n);
        std::iota(ids.begin(), ids.end(), 0u);
        std::shuffle(ids.begin(), ids.end(), rng);
        RelevantSet rel;
        std::vector<bool> is_rel(n);
        for (std::uint32_t k = 0; k < n; ++k) {
            if (rng() % 2) {
                rel.insert(AuthorId(k));
                is_rel[k] = true;
            }
        }
        const auto l = list(ids);
        for (int k = 1; k <= 25; ++k) {
            const double scaled = precision_at_k(l, rel, k) * k;
            chk.expect(std::abs(scaled - std::round(scaled)) < 1e-9, "P@k * k not integral");
        }
        const auto a = average_precision(l, rel);
        if (rel.empty()) {
            chk.expect(!a.has_value(), "AP defined without relevant items");
            continue;
        }
        bool prefix = true;
        for (std::size_t r = 0; r < rel.size(); ++r) {
            prefix = prefix && is_rel[ids[r]];
        }
        chk.expect((*a == 1.0) == prefix, "AP = 1 disagrees with perfect-prefix test");
    }

    // random shuffles of a 200-candidate pool, half relevant
    const std::size_t pool = 200, positives = 100;
    RelevantSet rel;
    for (std::uint32_t k = 0; k < positives; ++k) {
        rel.insert(AuthorId(k));
    }
    double total = 0;
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        std::mt19937_64 shuffle_rng(seed);
        std::vector<std::uint32_t> ids(pool);
        std::iota(ids.begin(), ids.end(), 0u);
        std::shuffle(ids.begin(), ids.end(), shuffle_rng);
        JudgmentSet j;
        j.topics.push_back(Topic{"q", "q", std::vector<AuthorId>(rel.begin(), rel.end()), {}, 0});
        std::map<std::string, RankedList> runs{{"q", list(ids)}};
        total += evaluate_run(runs, j).map;
    }
    const double mean = total / 1000.0;
    double expected = 0;  // closed form for a uniformly random order
    for (std::size_t k = 1; k <= pool; ++k) {
        expected += (1.0 + (k - 1.0) * (positives - 1.0) / (pool - 1.0)) / static_cast<double>(k);
    }
    expected /= static_cast<double>(pool);
    chk.expect(mean >= 0.45 && mean <= 0.55, "random-shuffle MAP " + fmt("%.4f", mean) + " outside [0.45, 0.55]");
    return chk.outcome("AP([1,0,1]) = 5/6; P@k*k integral; AP=1 iff perfect prefix; random MAP " + fmt("%.4f", mean) +
                       " (closed form " + fmt("%.4f", expected) + ")");
}

// ---------------------------------------------------------------------------

struct FixtureRun {
    fs::path dir;
    RunConfig config;
};

FixtureRun fixture_run(const fs::path& base, const std::string& name, const std::string& method,
                       const std::string& features = "all") {
    FixtureRun r;
    r.dir = base / name;
    r.config.corpus = base / "fixture" / "corpus.txt";
    r.config.judgments = base / "fixture" / "judgments.txt";
    r.config.out = r.dir;
    r.config.method = method;
    r.config.features = features;
    r.config.seed = 1234;
    run_rank(r.config);
    return r;
}

Outcome augmentation(const fs::path& base) {
    Check chk;
    std::istringstream in(slurp(base / "fixture" / "corpus.txt"));
    const auto corpus = parse_arnetminer(in).corpus;
    const auto loaded = load_judgments(base / "fixture" / "judgments.txt", corpus);
    EngineOptions opt;
    opt.now_year = 2010;
    const ExpertSearchEngine engine(corpus, opt);
    const AuthorRanker ranker = [&](std::string_view q) { return engine.authors_by_bm25(q); };
    const auto a = augment_negatives(loaded.judgments, corpus, ranker, 1234);
    const auto b = augment_negatives(loaded.judgments, corpus, ranker, 1234);
    for (const auto& t : a.topics) {
        const std::size_t n = t.positives.size();
        chk.expect(t.negatives.size() == n, t.id + ": negatives != positives");
        chk.expect(t.bm25_negatives == (n + 1) / 2, t.id + ": BM25 share != ceil(n/2)");
        const std::set<AuthorId> pos(t.positives.begin(), t.positives.end());
        const std::set<AuthorId> neg(t.negatives.begin(), t.negatives.end());
        chk.expect(neg.size() == t.negatives.size(), t.id + ": duplicate negatives");
        for (const auto x : neg) {
            chk.expect(!pos.contains(x), t.id + ": negative is a positive");
        }
        // the BM25 share is the top of the engine's ranking with positives removed
        std::vector<AuthorId> top;
        for (const auto x : engine.authors_by_bm25(t.query)) {
            if (!pos.contains(x) && top.size() < (n + 1) / 2) {
                top.push_back(x);
            }
        }
        chk.expect(std::equal(top.begin(), top.end(), t.negatives.begin()),
                   t.id + ": BM25 negatives are not the top-ranked non-positives");
    }
    std::ostringstream pa, pb;
    write_pools(pa, a);
    write_pools(pb, b);
    chk.expect(pa.str() == pb.str(), "pools differ between two runs with one seed");
    const auto r1 = fixture_run(base, "aug1", "combmnz");
    const auto r2 = fixture_run(base, "aug2", "combmnz");
    chk.expect(slurp(r1.dir / "pools.tsv") == slurp(r2.dir / "pools.tsv"), "pools.tsv differs across runs");
    return chk.outcome(std::to_string(a.topics.size()) +
                       " topics: n negatives, ceil(n/2) from BM25 top, disjoint, byte-identical pools");
}

Outcome end_to_end(const fs::path& base) {
    Check chk;
    const auto start = std::chrono::steady_clock::now();
    std::vector<std::string> reports;
    std::vector<fs::path> dirs;
    for (int round = 0; round < 2; ++round) {
        const auto a = fixture_run(base, "e2e_mnz_" + std::to_string(round), "combmnz");
        const auto b = fixture_run(base, "e2e_sum_" + std::to_string(round), "combsum");
        const auto out = base / ("e2e_report_" + std::to_string(round));
        run_eval(EvalOptions{{a.dir, b.dir}, {}, {}, out});
        reports.push_back(slurp(out / "report.tsv") + slurp(out / "per_query.tsv"));
        dirs.push_back(a.dir);
        dirs.push_back(b.dir);
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    chk.expect(reports[0] == reports[1], "report bytes differ");
    std::size_t files = 0;
    for (std::size_t k = 0; k < 2; ++k) {
        for (const auto& e : fs::directory_iterator(dirs[k] / "ranked")) {
            ++files;
            const auto other = dirs[k + 2] / "ranked" / e.path().filename();
            chk.expect(slurp(e.path()) == slurp(other), "ranked list differs: " + e.path().filename().string());
        }
    }
    chk.expect(files == 10, "expected 10 ranked lists, found " + std::to_string(files));
    chk.expect(seconds < 60.0, "took " + fmt("%.1f", seconds) + " s");
    return chk.outcome(std::to_string(files) + " ranked lists and report byte-identical across two runs, " +
                       fmt("%.2f", seconds) + " s");
}

Outcome planted_experts(const fs::path& base, const SyntheticManifest& manifest) {
    Check chk;
    std::istringstream in(slurp(base / "fixture" / "corpus.txt"));
    const auto corpus = parse_arnetminer(in).corpus;
    std::ostringstream ranks;
    for (const auto* method : {"combsum", "combmnz"}) {
        const auto run = fixture_run(base, std::string("planted_") + method, method);
        for (const auto& topic : manifest.topics) {
            const auto expert = corpus.find_author(topic.planted_expert);
            const auto list_path = run.dir / "ranked" / (topic_slug(topic.query) + ".tsv");
            std::ifstream f(list_path);
            const auto list = read_ranked_list(f);
            std::size_t rank = 0;
            for (std::size_t i = 0; i < list.entries.size(); ++i) {
                if (expert && list.entries[i].expert == *expert) {
                    rank = i + 1;
                }
            }
            ranks << (ranks.tellp() > 0 ? " " : "") << rank;
            chk.expect(rank >= 1 && rank <= 3,
                       std::string(method) + " " + topic.query + ": planted expert at rank " + std::to_string(rank));
        }
    }
    return chk.outcome("planted expert ranks (combsum then combmnz): " + ranks.str());
}

// ---------------------------------------------------------------------------

Outcome dblp_scale(bool& skipped) {
    const char* corpus = std::getenv("EXPERTRANK_DBLP_CORPUS");
    const char* judgments = std::getenv("EXPERTRANK_DBLP_JUDGMENTS");
    if (!corpus || !judgments || !*corpus || !*judgments) {
        skipped = true;
        return {true, "EXPERTRANK_DBLP_CORPUS / EXPERTRANK_DBLP_JUDGMENTS not set"};
    }
    Check chk;
    const auto base = scratch("dblp");
    const auto s = run_ingest(corpus, base / "corpus.jsonl");
    const auto within = [](double v, double target) { return std::abs(v - target) <= 0.01 * target; };
    chk.expect(within(static_cast<double>(s.publications), 1632440.0),
               "publications " + std::to_string(s.publications) + " not within 1% of 1632440");
    chk.expect(within(static_cast<double>(s.citation_links), 2327450.0),
               "citation links " + std::to_string(s.citation_links) + " not within 1% of 2327450");

    // ablation rows in the shape of the feature-group comparison
    const std::vector<std::pair<std::string, std::string>> rows{
        {"combsum", "all"},          {"combmnz", "all"},           {"combmnz", "text,profile"},
        {"combmnz", "text,network"}, {"combmnz", "profile,network"}, {"combmnz", "text"},
        {"combmnz", "profile"},      {"combmnz", "network"}};
    EvalOptions eval;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        RunConfig c;
        c.corpus = base / "corpus.jsonl";
        c.judgments = judgments;
        c.out = base / ("run" + std::to_string(i));
        c.method = rows[i].first;
        c.features = rows[i].second;
        c.seed = 1234;
        run_rank(c);
        eval.runs.push_back(c.out);
    }
    eval.out = base / "report";
    const auto reports = run_eval(eval);
    chk.expect(reports.size() == rows.size(), "report rows missing");
    std::fputs(slurp(eval.out / "report.tsv").c_str(), stdout);
    return chk.outcome(std::to_string(s.publications) + " publications, " + std::to_string(s.citation_links) +
                       " citation links; report at " + (eval.out / "report.tsv").string());
}

}  // namespace

int main() {
    int failed = 0;
    const auto report = [&](const char* name, const std::function<Outcome()>& fn, double budget_seconds = 0) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = fn();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (budget_seconds > 0 && seconds >= budget_seconds) {
            o = {false, o.detail + "; runtime " + fmt("%.2f", seconds) + " s over " + fmt("%.0f", budget_seconds) + " s"};
        }
        std::printf("%s  %-28s %s [%.2f s]\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str(), seconds);
        std::fflush(stdout);
        failed += o.pass ? 0 : 1;
    };

    std::printf("kernels: %s\n", std::string(kernels::isa_name(kernels::active_isa())).c_str());

    report("formula-oracles", formula_oracles, 5.0);
    report("age-weighted-scores", age_weighted_scores);
    report("pagerank", pagerank_fidelity, 10.0);
    report("fusion", fusion_correctness);
    report("metrics", metrics);

    const auto base = scratch("fixture");
    const auto fixture = generate_synthetic();
    write_synthetic(fixture, base / "fixture");
    report("negative-augmentation", [&] { return augmentation(base); });
    report("end-to-end-determinism", [&] { return end_to_end(base); }, 60.0);
    report("planted-expert-top3", [&] { return planted_experts(base, fixture.manifest); });

    bool skipped = false;
    const auto start = std::chrono::steady_clock::now();
    Outcome dblp;
    try {
        dblp = dblp_scale(skipped);
    } catch (const std::exception& e) {
        dblp = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s  %-28s %s [%.2f s]\n", skipped ? "SKIP" : (dblp.pass ? "PASS" : "FAIL"), "dblp-scale (conditional)",
                dblp.detail.c_str(), seconds);
    failed += dblp.pass ? 0 : 1;

    std::error_code ec;
    fs::remove_all(base, ec);
    return failed == 0 ? 0 : 1;
}
