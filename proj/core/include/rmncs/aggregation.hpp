#ifndef RMNCS_AGGREGATION_HPP_
#define RMNCS_AGGREGATION_HPP_

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rmncs/dataset.hpp"
#include "rmncs/recursion.hpp"

namespace rmncs {

enum class CountingMode { fractional, full };

std::string_view to_string(CountingMode mode);
std::optional<CountingMode> parse_counting_mode(std::string_view text);

enum class UnitKind { journal, institute };

std::string_view to_string(UnitKind kind);
std::optional<UnitKind> parse_unit_kind(std::string_view text);

/// Share of each (pub_id, institute_id) pair: 1 / number of institutes on
/// the publication. Publications without institutes contribute nothing.
std::map<std::pair<std::string, std::string>, double> fractional_shares(const Dataset& dataset);

struct InstituteScore {
    double score = 0.0;
    double effective_count = 0.0;
};

/// Weighted mean NCS per institute. Fractional counting weighs each
/// publication by its share; full counting weighs it by 1. Institutes with a
/// zero effective count are omitted.
std::map<std::string, InstituteScore> institute_mncs(std::span<const double> ncs,
                                                     const Dataset& dataset,
                                                     CountingMode counting);

/// Scores of one unit at several orders.
struct UnitScores {
    double effective_count = 0.0;
    std::map<int, double> score_by_order;
};

struct RankingRow {
    std::size_t rank = 0;
    std::string unit_id;
    double effective_count = 0.0;
    std::map<int, double> score_by_order;

    bool operator==(const RankingRow&) const = default;
};

struct RankingTable {
    UnitKind unit_kind = UnitKind::journal;
    double threshold = 0.0;
    int sort_order = 1;
    std::vector<RankingRow> rows;
};

/// Drops units whose effective count is below `threshold`, then sorts by
/// the score at `sort_order` descending, ties by unit_id ascending. Ranks
/// are 1..n. Throws ConfigError if some unit lacks a score at `sort_order`.
RankingTable rank_units(const std::map<std::string, UnitScores>& scores, UnitKind kind,
                        double threshold, int sort_order);

/// Journal scores at order 1 and at the final order of `result`. The
/// effective count of a journal is its publication count.
std::map<std::string, UnitScores> journal_unit_scores(const Dataset& dataset,
                                                      const RecursionResult& result);

/// Institute scores at order 1 and at the final order of `result`.
std::map<std::string, UnitScores> institute_unit_scores(const Dataset& dataset,
                                                        const RecursionResult& result,
                                                        CountingMode counting);

} // namespace rmncs

#endif // RMNCS_AGGREGATION_HPP_
