#pragma once

#include <array>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "expertrank/aggregate.hpp"
#include "expertrank/judgments.hpp"

namespace expertrank {

using RelevantSet = std::unordered_set<AuthorId>;

/// r(k) / k. A list shorter than k counts the missing slots as misses.
/// Throws std::invalid_argument for k < 1.
double precision_at_k(const RankedList& ranked, const RelevantSet& relevant, int k);

/// Mean of P@k over the ranks k holding a relevant expert, divided by the number
/// of relevant experts present in the list. nullopt when none is present.
std::optional<double> average_precision(const RankedList& ranked, const RelevantSet& relevant);

inline constexpr std::array<int, 4> kCutoffs{5, 10, 15, 20};

struct QueryEvaluation {
    std::string query_id;
    std::size_t pool_size = 0;
    std::size_t relevant = 0;
    std::array<double, 4> precision{};  // at kCutoffs
    double average_precision = 0.0;
};

struct EvaluationReport {
    std::string label;                   // e.g. "combmnz text+network"
    std::map<std::string, std::string> metadata;
    std::vector<QueryEvaluation> queries;  // evaluated queries only
    std::vector<std::string> skipped;      // judged queries without a relevant expert in the list
    std::array<double, 4> precision{};     // macro-averaged
    double map = 0.0;
};

/// Throws DataError naming the first judged query missing from `ranked`.
EvaluationReport evaluate_run(const std::map<std::string, RankedList>& ranked, const JudgmentSet& judgments,
                              std::string label = {});

/// One row per run: label, P@5, P@10, P@15, P@20, MAP.
void write_report_table(std::ostream& out, std::span<const EvaluationReport> reports);
/// One row per (run, query).
void write_query_breakdown(std::ostream& out, std::span<const EvaluationReport> reports);

}  // namespace expertrank
