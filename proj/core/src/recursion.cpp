#include "rmncs/recursion.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rmncs/error.hpp"

namespace rmncs {

namespace {

std::vector<double> group_means(std::span<const double> values,
                                std::span<const std::size_t> group_of, std::size_t group_count) {
    if (values.size() != group_of.size()) {
        throw ConfigError("value and group vectors differ in length");
    }
    std::vector<double> sums(group_count, 0.0);
    std::vector<std::size_t> counts(group_count, 0);
    for (std::size_t i = 0; i < values.size(); ++i) {
        const std::size_t g = group_of[i];
        if (g >= group_count) {
            throw ConfigError("group index " + std::to_string(g) + " out of range");
        }
        sums[g] += values[i];
        ++counts[g];
    }
    for (std::size_t g = 0; g < group_count; ++g) {
        sums[g] = counts[g] == 0 ? 0.0 : sums[g] / static_cast<double>(counts[g]);
    }
    return sums;
}

void require_finite(std::span<const double> values, const char* what, int order) {
    for (double v : values) {
        if (!std::isfinite(v)) {
            throw NumericError(std::string("non-finite ") + what + " at order " +
                                   std::to_string(order),
                               order);
        }
    }
}

ConvergenceDelta delta_between(std::span<const double> previous, std::span<const double> current,
                               int order) {
    ConvergenceDelta d{order, 0.0, 0.0};
    for (std::size_t j = 0; j < current.size(); ++j) {
        const double abs_change = std::abs(current[j] - previous[j]);
        d.max_abs = std::max(d.max_abs, abs_change);
        d.max_rel = std::max(d.max_rel, abs_change / std::max(previous[j], kRelativeDeltaFloor));
    }
    return d;
}

} // namespace

void RecursionConfig::validate() const {
    if (target_order && *target_order < 1) {
        throw ConfigError("target order must be a positive integer");
    }
    if (!(convergence_tolerance > 0.0) || !std::isfinite(convergence_tolerance)) {
        throw ConfigError("convergence tolerance must be a positive real");
    }
    if (max_iterations < 1) {
        throw ConfigError("max iterations must be a positive integer");
    }
}

std::vector<double> stratum_mean_scores(std::span<const double> citation_scores,
                                        std::span<const std::size_t> stratum_of,
                                        std::size_t stratum_count) {
    return group_means(citation_scores, stratum_of, stratum_count);
}

std::vector<double> normalized_scores(std::span<const double> citation_scores,
                                      std::span<const double> stratum_means,
                                      std::span<const std::size_t> stratum_of) {
    if (citation_scores.size() != stratum_of.size()) {
        throw ConfigError("score and stratum vectors differ in length");
    }
    std::vector<double> ncs(citation_scores.size(), 0.0);
    for (std::size_t i = 0; i < ncs.size(); ++i) {
        if (stratum_of[i] >= stratum_means.size()) {
            throw ConfigError("stratum index " + std::to_string(stratum_of[i]) + " has no mean");
        }
        const double expected = stratum_means[stratum_of[i]];
        // A zero stratum mean implies every score in it is zero; define 0/0 as 0.
        ncs[i] = expected > 0.0 ? citation_scores[i] / expected : 0.0;
    }
    return ncs;
}

std::vector<double> journal_mncs(std::span<const double> ncs,
                                 std::span<const std::size_t> journal_of,
                                 std::size_t journal_count) {
    return group_means(ncs, journal_of, journal_count);
}

std::vector<double> next_weights(std::span<const double> journal_mncs,
                                 std::span<const std::size_t> journal_of) {
    std::vector<double> weights(journal_of.size());
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (journal_of[i] >= journal_mncs.size()) {
            throw ConfigError("journal index " + std::to_string(journal_of[i]) + " has no MNCS");
        }
        weights[i] = journal_mncs[journal_of[i]];
    }
    return weights;
}

OrderState compute_order(const CitationGraph& graph, const Dataset& dataset,
                         std::span<const double> weights, int order) {
    if (graph.size() != dataset.size()) {
        throw ConfigError("citation graph and dataset differ in size");
    }
    OrderState state;
    state.order = order;
    state.weights.assign(weights.begin(), weights.end());
    state.citation_scores = weighted_citation_scores(graph, weights);
    require_finite(state.citation_scores, "citation score", order);
    state.stratum_means = stratum_mean_scores(state.citation_scores, dataset.stratum_of(),
                                              dataset.strata().size());
    state.ncs = normalized_scores(state.citation_scores, state.stratum_means, dataset.stratum_of());
    require_finite(state.ncs, "normalized citation score", order);
    state.journal_mncs = journal_mncs(state.ncs, dataset.journal_of(), dataset.journals().size());
    require_finite(state.journal_mncs, "journal MNCS", order);
    return state;
}

RecursionResult run_recursion(const CitationGraph& graph, const Dataset& dataset,
                              const RecursionConfig& config) {
    config.validate();

    RecursionResult result;
    const std::vector<double> unit(dataset.size(), 1.0);
    OrderState current = compute_order(graph, dataset, unit, 1);
    result.first = current;
    if (config.track_history) {
        result.history.push_back(current);
    }

    const int last_order = config.target_order.value_or(config.max_iterations);
    for (int order = 2; order <= last_order; ++order) {
        const std::vector<double> weights = next_weights(current.journal_mncs, dataset.journal_of());
        OrderState next = compute_order(graph, dataset, weights, order);
        const ConvergenceDelta delta = delta_between(current.journal_mncs, next.journal_mncs, order);
        result.deltas.push_back(delta);
        current = std::move(next);
        if (config.track_history) {
            result.history.push_back(current);
        }
        if (!config.target_order && delta.max_rel < config.convergence_tolerance) {
            break;
        }
    }

    result.converged =
        !result.deltas.empty() && result.deltas.back().max_rel < config.convergence_tolerance;
    result.final = std::move(current);
    return result;
}

} // namespace rmncs
