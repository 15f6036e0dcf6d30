#include "expertrank/eval.hpp"

#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace expertrank {

namespace {

std::string fixed4(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

}  // namespace

double precision_at_k(const RankedList& ranked, const RelevantSet& relevant, int k) {
    if (k < 1) {
        throw std::invalid_argument("precision_at_k: k must be at least 1");
    }
    const auto limit = std::min<std::size_t>(static_cast<std::size_t>(k), ranked.entries.size());
    std::size_t hits = 0;
    for (std::size_t i = 0; i < limit; ++i) {
        hits += relevant.contains(ranked.entries[i].expert) ? 1 : 0;
    }
    return static_cast<double>(hits) / static_cast<double>(k);
}

std::optional<double> average_precision(const RankedList& ranked, const RelevantSet& relevant) {
    std::size_t hits = 0;
    double sum = 0.0;
    for (std::size_t i = 0; i < ranked.entries.size(); ++i) {
        if (relevant.contains(ranked.entries[i].expert)) {
            ++hits;
            sum += static_cast<double>(hits) / static_cast<double>(i + 1);
        }
    }
    if (hits == 0) {
        return std::nullopt;
    }
    return sum / static_cast<double>(hits);
}

EvaluationReport evaluate_run(const std::map<std::string, RankedList>& ranked, const JudgmentSet& judgments,
                              std::string label) {
    EvaluationReport report;
    report.label = std::move(label);
    for (const auto& topic : judgments.topics) {
        const auto it = ranked.find(topic.id);
        if (it == ranked.end()) {
            throw DataError("no ranked list for judged query " + topic.id);
        }
        const RelevantSet relevant(topic.positives.begin(), topic.positives.end());
        const auto ap = average_precision(it->second, relevant);
        if (!ap) {
            report.skipped.push_back(topic.id);
            continue;
        }
        QueryEvaluation q;
        q.query_id = topic.id;
        q.pool_size = it->second.entries.size();
        q.relevant = relevant.size();
        for (std::size_t c = 0; c < kCutoffs.size(); ++c) {
            q.precision[c] = precision_at_k(it->second, relevant, kCutoffs[c]);
        }
        q.average_precision = *ap;
        report.queries.push_back(q);
    }
    if (!report.queries.empty()) {
        const double n = static_cast<double>(report.queries.size());
        for (const auto& q : report.queries) {
            for (std::size_t c = 0; c < kCutoffs.size(); ++c) {
                report.precision[c] += q.precision[c];
            }
            report.map += q.average_precision;
        }
        for (auto& p : report.precision) {
            p /= n;
        }
        report.map /= n;
    }
    return report;
}

void write_report_table(std::ostream& out, std::span<const EvaluationReport> reports) {
    out << "run\tP@5\tP@10\tP@15\tP@20\tMAP\tqueries\n";
    for (const auto& r : reports) {
        out << r.label;
        for (const auto p : r.precision) {
            out << '\t' << fixed4(p);
        }
        out << '\t' << fixed4(r.map) << '\t' << r.queries.size() << '\n';
    }
}

void write_query_breakdown(std::ostream& out, std::span<const EvaluationReport> reports) {
    out << "run\tquery_id\tpool\trelevant\tP@5\tP@10\tP@15\tP@20\tAP\n";
    for (const auto& r : reports) {
        for (const auto& q : r.queries) {
            out << r.label << '\t' << q.query_id << '\t' << q.pool_size << '\t' << q.relevant;
            for (const auto p : q.precision) {
                out << '\t' << fixed4(p);
            }
            out << '\t' << fixed4(q.average_precision) << '\n';
        }
        for (const auto& s : r.skipped) {
            out << r.label << '\t' << s << "\tskipped\n";
        }
    }
}

}  // namespace expertrank
