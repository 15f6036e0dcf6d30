#include "expertrank/aggregate.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <numeric>
#include <ostream>

#include "expertrank/kernels.hpp"

namespace expertrank {

namespace {

std::string format_real(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<std::string_view> split_tabs(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find('\t', start);
        fields.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) {
            break;
        }
        start = pos + 1;
    }
    return fields;
}

}  // namespace

std::string_view to_string(FusionMethod method) { return method == FusionMethod::combsum ? "combsum" : "combmnz"; }

FusionMethod fusion_method_from_string(std::string_view text) {
    if (text == "combsum") {
        return FusionMethod::combsum;
    }
    if (text == "combmnz") {
        return FusionMethod::combmnz;
    }
    throw ConfigError("method must be combsum or combmnz, got: " + std::string(text));
}

std::vector<double> minmax_normalize(std::span<const double> column) {
    std::vector<double> out(column.size());
    kernels::minmax_normalize(column, out);
    return out;
}

FusionTrace fuse(const FeatureMatrix& matrix, FusionMethod method) {
    if (matrix.rows() == 0) {
        throw DataError("query " + matrix.query_id() + ": empty candidate pool");
    }
    if (matrix.cols() == 0) {
        throw DataError("query " + matrix.query_id() + ": no available feature columns");
    }
    const std::size_t n = matrix.rows();
    FusionTrace trace;
    trace.comb_sum.assign(n, 0.0);
    trace.nonzero.assign(n, 0.0);
    trace.normalized.assign(n * matrix.cols(), 0.0);
    for (std::size_t j = 0; j < matrix.cols(); ++j) {
        const auto raw = matrix.column(j);
        if (!std::all_of(raw.begin(), raw.end(), [](double v) { return std::isfinite(v); })) {
            throw DataError("query " + matrix.query_id() + ": non-finite value in feature column " +
                            std::string(FeatureCatalog::standard().spec(matrix.columns()[j]).id));
        }
        const std::span<double> norm(trace.normalized.data() + j * n, n);
        kernels::minmax_normalize(raw, norm);
        kernels::accumulate(trace.comb_sum, norm);
        kernels::count_nonzero(trace.nonzero, raw);
    }
    if (method == FusionMethod::combsum) {
        trace.score = trace.comb_sum;
    } else {
        trace.score.assign(n, 0.0);
        kernels::multiply(trace.comb_sum, trace.nonzero, trace.score);
    }
    return trace;
}

RankedList rank_by_score(std::string query_id, std::span<const AuthorId> candidates, std::span<const double> scores) {
    RankedList list;
    list.query_id = std::move(query_id);
    list.entries.reserve(candidates.size());
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        list.entries.push_back({candidates[i], scores[i]});
    }
    std::sort(list.entries.begin(), list.entries.end(), [](const RankedEntry& a, const RankedEntry& b) {
        return a.score != b.score ? a.score > b.score : a.expert < b.expert;
    });
    return list;
}

RankedList fuse_and_rank(const FeatureMatrix& matrix, FusionMethod method) {
    const auto trace = fuse(matrix, method);
    return rank_by_score(matrix.query_id(), matrix.candidates(), trace.score);
}

RankedList comb_sum(const FeatureMatrix& matrix) { return fuse_and_rank(matrix, FusionMethod::combsum); }

RankedList comb_mnz(const FeatureMatrix& matrix) { return fuse_and_rank(matrix, FusionMethod::combmnz); }

void write_ranked_list(std::ostream& out, const RankedList& list) {
    out << "query_id\trank\texpert_id\tscore\n";
    for (std::size_t i = 0; i < list.entries.size(); ++i) {
        const auto& e = list.entries[i];
        out << list.query_id << '\t' << (i + 1) << '\t' << e.expert.value() << '\t' << format_real(e.score) << '\n';
    }
}

RankedList read_ranked_list(std::istream& in) {
    RankedList list;
    std::string line;
    if (!std::getline(in, line) || line != "query_id\trank\texpert_id\tscore") {
        throw DataError("ranked list: missing header");
    }
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) {
            continue;
        }
        const auto fields = split_tabs(line);
        const auto bad = [&] { return DataError("ranked list line " + std::to_string(line_no) + ": malformed"); };
        if (fields.size() != 4) {
            throw bad();
        }
        if (list.entries.empty()) {
            list.query_id = std::string(fields[0]);
        } else if (fields[0] != list.query_id) {
            throw DataError("ranked list line " + std::to_string(line_no) + ": mixed query ids");
        }
        std::size_t rank = 0;
        std::uint32_t expert = 0;
        const auto parse = [](std::string_view s, auto& v) {
            const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
            return ec == std::errc{} && p == s.data() + s.size();
        };
        if (!parse(fields[1], rank) || !parse(fields[2], expert) || rank != list.entries.size() + 1) {
            throw bad();
        }
        char* end = nullptr;
        const std::string score_text(fields[3]);
        const double score = std::strtod(score_text.c_str(), &end);
        if (end != score_text.c_str() + score_text.size()) {
            throw bad();
        }
        list.entries.push_back({AuthorId(expert), score});
    }
    return list;
}

void write_feature_dump(std::ostream& out, const FeatureMatrix& matrix, const FusionTrace& trace) {
    const auto& catalog = FeatureCatalog::standard();
    out << "query_id\texpert_id";
    for (const auto f : matrix.columns()) {
        out << '\t' << catalog.spec(f).id << ":raw\t" << catalog.spec(f).id << ":norm";
    }
    out << "\tcomb_sum\tnonzero\tscore\n";
    const std::size_t n = matrix.rows();
    for (std::size_t i = 0; i < n; ++i) {
        out << matrix.query_id() << '\t' << matrix.candidates()[i].value();
        for (std::size_t j = 0; j < matrix.cols(); ++j) {
            out << '\t' << format_real(matrix.at(i, j)) << '\t' << format_real(trace.normalized[j * n + i]);
        }
        out << '\t' << format_real(trace.comb_sum[i]) << '\t' << format_real(trace.nonzero[i]) << '\t'
            << format_real(trace.score[i]) << '\n';
    }
}

}  // namespace expertrank
