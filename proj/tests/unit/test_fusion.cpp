#include <catch_amalgamated.hpp>

#include <random>
#include <sstream>

#include "expertrank/aggregate.hpp"
#include "expertrank/engine.hpp"
#include "expertrank/features.hpp"
#include "test_support.hpp"

using namespace expertrank;
using F = Feature;

namespace {

FeatureMatrix matrix(const std::vector<std::vector<double>>& rows, std::vector<Feature> cols) {
    std::vector<AuthorId> ids;
    for (std::uint32_t i = 0; i < rows.size(); ++i) {
        ids.emplace_back(i);
    }
    FeatureMatrix m("q", ids, cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < cols.size(); ++j) {
            m.set(i, j, rows[i][j]);
        }
    }
    return m;
}

std::vector<std::uint32_t> order(const RankedList& l) {
    std::vector<std::uint32_t> ids;
    for (const auto& e : l.entries) {
        ids.push_back(e.expert.value());
    }
    return ids;
}

}  // namespace

TEST_CASE("min-max normalization") {
    CHECK(minmax_normalize(std::vector<double>{2, 4, 6}) == std::vector<double>{0, 0.5, 1});
    CHECK(minmax_normalize(std::vector<double>{5, 5, 5}) == std::vector<double>{0, 0, 0});
    CHECK(minmax_normalize(std::vector<double>{0, 10}) == std::vector<double>{0, 1});
    CHECK(minmax_normalize(std::vector<double>{}).empty());
}

TEST_CASE("combsum and combmnz worked examples") {
    // columns already span [0, 1], so normalization leaves them unchanged
    const auto sum = comb_sum(matrix({{0.2, 1.0}, {1.0, 0.0}, {0.0, 0.0}}, {F::tf_title, F::h_index}));
    CHECK(order(sum) == std::vector<std::uint32_t>{0, 1, 2});
    CHECK(sum.entries[1].score == 1.0);
    CHECK(sum.entries[0].score == Catch::Approx(1.2));

    const auto m = matrix({{0.4, 0.0}, {0.2, 0.3}}, {F::tf_title, F::h_index});
    const auto t = fuse(m, FusionMethod::combmnz);
    CHECK(t.comb_sum == std::vector<double>{1.0, 1.0});
    CHECK(t.nonzero == std::vector<double>{1.0, 2.0});
    const auto mnz = comb_mnz(m);
    CHECK(order(mnz) == std::vector<std::uint32_t>{1, 0});
    CHECK(mnz.entries[0].score == 2.0);
    CHECK(mnz.entries[1].score == 1.0);
    // CombSUM ties, broken by id
    CHECK(order(comb_sum(m)) == std::vector<std::uint32_t>{0, 1});
}

TEST_CASE("fusion degenerate cases") {
    const auto zeros = comb_mnz(matrix({{0, 0}, {0, 0}, {0, 0}}, {F::tf_title, F::h_index}));
    CHECK(order(zeros) == std::vector<std::uint32_t>{0, 1, 2});
    for (const auto& e : zeros.entries) {
        CHECK(e.score == 0.0);
    }
    // constant positive column: no normalized contribution, but it still counts in r_e
    const auto t = fuse(matrix({{3, 1}, {3, 2}}, {F::tf_title, F::h_index}), FusionMethod::combmnz);
    CHECK(t.comb_sum == std::vector<double>{0.0, 1.0});
    CHECK(t.nonzero == std::vector<double>{2.0, 2.0});
    CHECK(t.score == std::vector<double>{0.0, 2.0});

    const auto single = matrix({{0.3}, {0.9}, {0.1}}, {F::tf_title});
    CHECK(order(comb_sum(single)) == order(comb_mnz(single)));
    CHECK(order(comb_sum(single)) == std::vector<std::uint32_t>{1, 0, 2});

    CHECK_THROWS_AS(fuse(matrix({}, {F::tf_title}), FusionMethod::combsum), DataError);
    CHECK_THROWS_AS(fuse(matrix({{1.0}}, {}), FusionMethod::combsum), DataError);
    CHECK_THROWS_AS(fuse(matrix({{1.0}, {std::nan("")}}, {F::tf_title}), FusionMethod::combsum), DataError);
}

TEST_CASE("ranked list text round trip") {
    RankedList l{"topic_x", {{AuthorId(4), 0.1 + 0.2}, {AuthorId(2), 1e-300}, {AuthorId(9), 0.0}}};
    std::ostringstream out;
    write_ranked_list(out, l);
    CHECK(out.str().rfind("query_id\trank\texpert_id\tscore\ntopic_x\t1\t4\t", 0) == 0);
    std::istringstream in(out.str());
    const auto back = read_ranked_list(in);
    CHECK(back.query_id == "topic_x");
    CHECK(back.entries == l.entries);

    std::istringstream bad("query_id\trank\texpert_id\tscore\nq\t2\t1\t0.5\n");
    CHECK_THROWS_AS(read_ranked_list(bad), DataError);
    CHECK(fusion_method_from_string("combsum") == FusionMethod::combsum);
    CHECK_THROWS_AS(fusion_method_from_string("borda"), ConfigError);
}

TEST_CASE("feature catalog selection") {
    const auto& cat = FeatureCatalog::standard();
    CHECK(cat.features().size() == kFeatureCount);
    CHECK(cat.select("all").size() == kFeatureCount);
    CHECK(cat.select("text").size() == 12);
    CHECK(cat.select("profile").size() == 6);
    CHECK(cat.select("network").size() == 18);
    CHECK(cat.select("h_index, text").size() == 13);
    CHECK(cat.select("h_index,bm25_title").front() == F::bm25_title);  // catalog order
    CHECK(cat.select("network,h_index").size() == 18);
    CHECK(cat.find("g_index") == F::g_index);
    CHECK_FALSE(cat.find("nope"));
    try {
        (void)cat.select("text,bogus,worse");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("bogus") != std::string::npos);
        CHECK(std::string(e.what()).find("worse") != std::string::npos);
    }
}

TEST_CASE("engine ranks the author of every topical paper first") {
    std::ostringstream s;
    for (int i = 0; i < 6; ++i) {
        s << "#*graph mining method " << i << "\n#@Expert One\n#t" << 2000 + i << "\n#cJournal of Graphs\n#index"
          << i + 1 << "\n";
        if (i > 0) {
            s << "#%" << i << "\n";
        }
        s << "\n";
    }
    s << "#*cooking recipes\n#@Casual Two\n#t2003\n#index50\n#%1\n\n";
    s << "#*gardening\n#@Casual Two;Expert One\n#t2004\n#index51\n\n";
    const auto c = testsupport::corpus_from(s.str());
    EngineOptions opt;
    opt.now_year = 2006;
    const ExpertSearchEngine engine(c, opt);
    const auto expert = testsupport::author(c, "Expert One");
    const auto casual = testsupport::author(c, "Casual Two");
    const std::vector<AuthorId> pool{casual, expert};
    const auto all = FeatureCatalog::standard().select("all");
    for (const auto m : {FusionMethod::combsum, FusionMethod::combmnz}) {
        const auto r = engine.rank("graph_mining", "graph mining", pool, all, m);
        CHECK(r.entries.front().expert == expert);
    }
    // institutions are missing in this corpus
    CHECK_FALSE(engine.available(F::institution_h_index));
    CHECK(engine.available(F::h_index));
    const auto ev = engine.evidence("graph mining");
    const auto mat = engine.extract("q", ev, pool, all);
    CHECK(mat.cols() == kFeatureCount - 3);
    CHECK(mat.unavailable().size() == 3);
    CHECK(ev.topical_docs.size() == 6);
    CHECK(ev.hb_index == 1);

    const auto fv = engine.features(expert, ev);
    CHECK(fv[static_cast<std::size_t>(F::journal_pubs_topic)] == 6);
    CHECK(fv[static_cast<std::size_t>(F::conf_pubs_total)] == 1);
    CHECK(fv[static_cast<std::size_t>(F::citations_total_topic)] == 6);
    CHECK(fv[static_cast<std::size_t>(F::collaborators)] == 1);

    const auto ranked = engine.authors_by_bm25("graph mining");
    CHECK(ranked.size() == 2);
    CHECK(ranked.front() == expert);
    CHECK_THROWS_AS(engine.rank("q", "graph", std::vector<AuthorId>{}, all, FusionMethod::combsum), DataError);
}
