#ifndef RMNCS_RECURSION_HPP_
#define RMNCS_RECURSION_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "rmncs/citation_graph.hpp"
#include "rmncs/dataset.hpp"

namespace rmncs {

/// Stopping rule for the recursion. With `target_order` set, exactly that
/// many orders are computed. Otherwise the loop runs until the maximum
/// relative change of the journal MNCS vector drops below
/// `convergence_tolerance`, or `max_iterations` orders have been computed.
struct RecursionConfig {
    std::optional<int> target_order;
    double convergence_tolerance = 1e-9;
    int max_iterations = 100;
    bool track_history = false;

    /// Throws ConfigError on a non-positive order, tolerance or cap.
    void validate() const;
};

/// Everything computed at one order. `stratum_means` is aligned with
/// Dataset::strata(), `journal_mncs` with Dataset::journals(); the other
/// vectors are per publication.
struct OrderState {
    int order = 0;
    std::vector<double> weights;
    std::vector<double> citation_scores;
    std::vector<double> stratum_means;
    std::vector<double> ncs;
    std::vector<double> journal_mncs;

    bool operator==(const OrderState&) const = default;
};

/// Change of the journal MNCS vector from order - 1 to order.
struct ConvergenceDelta {
    int order = 0;
    double max_abs = 0.0;
    double max_rel = 0.0;

    bool operator==(const ConvergenceDelta&) const = default;
};

struct RecursionResult {
    OrderState first;
    OrderState final;
    /// Every order from 1 to final.order when track_history is set.
    std::vector<OrderState> history;
    bool converged = false;
    std::vector<ConvergenceDelta> deltas;

    bool operator==(const RecursionResult&) const = default;
};

/// Relative-change floor used by the convergence metric.
inline constexpr double kRelativeDeltaFloor = 1e-12;

/// Mean score per stratum: means[k] = sum of scores in k / |k|, summed in
/// ascending publication order. Strata without publications get 0.
std::vector<double> stratum_mean_scores(std::span<const double> citation_scores,
                                        std::span<const std::size_t> stratum_of,
                                        std::size_t stratum_count);

/// ncs[i] = scores[i] / means[stratum_of[i]], or 0 when that mean is 0.
std::vector<double> normalized_scores(std::span<const double> citation_scores,
                                      std::span<const double> stratum_means,
                                      std::span<const std::size_t> stratum_of);

/// Mean NCS per journal. Journals without publications get 0.
std::vector<double> journal_mncs(std::span<const double> ncs,
                                 std::span<const std::size_t> journal_of,
                                 std::size_t journal_count);

/// Citation weight of each publication: the MNCS of the journal it appeared in.
std::vector<double> next_weights(std::span<const double> journal_mncs,
                                 std::span<const std::size_t> journal_of);

/// One order of the indicator for a given citation weight vector.
OrderState compute_order(const CitationGraph& graph, const Dataset& dataset,
                         std::span<const double> weights, int order);

/// Runs the recursion from order 1 (unit weights). Throws NumericError if a
/// non-finite value appears, ConfigError on an invalid config or a graph
/// that does not match the dataset.
RecursionResult run_recursion(const CitationGraph& graph, const Dataset& dataset,
                              const RecursionConfig& config);

} // namespace rmncs

#endif // RMNCS_RECURSION_HPP_
