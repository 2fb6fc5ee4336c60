#include "rmncs/aggregation.hpp"

#include <algorithm>

#include "rmncs/error.hpp"

namespace rmncs {

std::string_view to_string(CountingMode mode) {
    return mode == CountingMode::fractional ? "fractional" : "full";
}

std::optional<CountingMode> parse_counting_mode(std::string_view text) {
    if (text == "fractional") {
        return CountingMode::fractional;
    }
    if (text == "full") {
        return CountingMode::full;
    }
    return std::nullopt;
}

std::string_view to_string(UnitKind kind) {
    return kind == UnitKind::journal ? "journal" : "institute";
}

std::optional<UnitKind> parse_unit_kind(std::string_view text) {
    if (text == "journal") {
        return UnitKind::journal;
    }
    if (text == "institute") {
        return UnitKind::institute;
    }
    return std::nullopt;
}

std::map<std::pair<std::string, std::string>, double> fractional_shares(const Dataset& dataset) {
    std::map<std::pair<std::string, std::string>, double> shares;
    for (const auto& pub : dataset.publications()) {
        if (pub.institute_ids.empty()) {
            continue;
        }
        const double share = 1.0 / static_cast<double>(pub.institute_ids.size());
        for (const auto& inst : pub.institute_ids) {
            shares.emplace(std::make_pair(pub.pub_id, inst), share);
        }
    }
    return shares;
}

std::map<std::string, InstituteScore> institute_mncs(std::span<const double> ncs,
                                                     const Dataset& dataset,
                                                     CountingMode counting) {
    if (ncs.size() != dataset.size()) {
        throw ConfigError("NCS vector does not match the dataset size");
    }
    struct Accumulator {
        double weighted = 0.0;
        double weight = 0.0;
    };
    std::map<std::string, Accumulator> acc;
    for (std::size_t i = 0; i < dataset.size(); ++i) {
        const auto& institutes = dataset.publication(i).institute_ids;
        if (institutes.empty()) {
            continue;
        }
        const double weight = counting == CountingMode::fractional
                                  ? 1.0 / static_cast<double>(institutes.size())
                                  : 1.0;
        for (const auto& inst : institutes) {
            Accumulator& a = acc[inst];
            a.weighted += weight * ncs[i];
            a.weight += weight;
        }
    }
    std::map<std::string, InstituteScore> out;
    for (const auto& [inst, a] : acc) {
        if (a.weight > 0.0) {
            out.emplace(inst, InstituteScore{a.weighted / a.weight, a.weight});
        }
    }
    return out;
}

RankingTable rank_units(const std::map<std::string, UnitScores>& scores, UnitKind kind,
                        double threshold, int sort_order) {
    RankingTable table;
    table.unit_kind = kind;
    table.threshold = threshold;
    table.sort_order = sort_order;

    struct Entry {
        const std::string* id;
        const UnitScores* scores;
        double key;
    };
    std::vector<Entry> entries;
    for (const auto& [id, unit] : scores) {
        const auto it = unit.score_by_order.find(sort_order);
        if (it == unit.score_by_order.end()) {
            throw ConfigError("unit '" + id + "' has no score at order " +
                              std::to_string(sort_order));
        }
        if (unit.effective_count >= threshold) {
            entries.push_back({&id, &unit, it->second});
        }
    }
    std::ranges::sort(entries, [](const Entry& a, const Entry& b) {
        if (a.key != b.key) {
            return a.key > b.key;
        }
        return *a.id < *b.id;
    });

    table.rows.reserve(entries.size());
    for (std::size_t r = 0; r < entries.size(); ++r) {
        table.rows.push_back({r + 1, *entries[r].id, entries[r].scores->effective_count,
                              entries[r].scores->score_by_order});
    }
    return table;
}

std::map<std::string, UnitScores> journal_unit_scores(const Dataset& dataset,
                                                      const RecursionResult& result) {
    std::vector<std::size_t> counts(dataset.journals().size(), 0);
    for (std::size_t j : dataset.journal_of()) {
        ++counts[j];
    }
    std::map<std::string, UnitScores> out;
    for (std::size_t j = 0; j < dataset.journals().size(); ++j) {
        UnitScores& unit = out[dataset.journals()[j]];
        unit.effective_count = static_cast<double>(counts[j]);
        unit.score_by_order[result.first.order] = result.first.journal_mncs[j];
        unit.score_by_order[result.final.order] = result.final.journal_mncs[j];
    }
    return out;
}

std::map<std::string, UnitScores> institute_unit_scores(const Dataset& dataset,
                                                        const RecursionResult& result,
                                                        CountingMode counting) {
    const auto first = institute_mncs(result.first.ncs, dataset, counting);
    const auto final = institute_mncs(result.final.ncs, dataset, counting);
    std::map<std::string, UnitScores> out;
    for (const auto& [inst, score] : first) {
        UnitScores& unit = out[inst];
        unit.effective_count = score.effective_count;
        unit.score_by_order[result.first.order] = score.score;
        unit.score_by_order[result.final.order] = final.at(inst).score;
    }
    return out;
}

} // namespace rmncs
