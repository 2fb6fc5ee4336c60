#ifndef RMNCS_CITATION_GRAPH_HPP_
#define RMNCS_CITATION_GRAPH_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "rmncs/dataset.hpp"

namespace rmncs {

enum class SelfCitationPolicy {
    none,
    author_overlap,    ///< drop citations between publications sharing an author
    institute_overlap, ///< drop citations between publications sharing an institute
};

std::string_view to_string(SelfCitationPolicy policy);
/// Accepts "none", "author", "author_overlap", "institute", "institute_overlap".
std::optional<SelfCitationPolicy> parse_self_citation_policy(std::string_view text);

/// author_overlap when the dataset carries author data, otherwise none
/// (logs a warning in that case).
SelfCitationPolicy default_policy(const Dataset& dataset);

/// Self-citation-filtered citation structure over the dataset's publications.
///
/// Stored in compressed sparse column form keyed by the cited publication;
/// each column lists its citing publications in ascending index order.
class CitationGraph {
public:
    std::size_t size() const { return ids_.size(); }
    std::size_t edge_count() const { return citing_.size(); }
    std::size_t filtered_count() const { return filtered_count_; }
    SelfCitationPolicy policy() const { return policy_; }

    /// Citing publications of `cited`, ascending.
    std::span<const std::size_t> citers_of(std::size_t cited) const;

    /// All edges as (citing, cited), sorted.
    std::vector<std::pair<std::size_t, std::size_t>> edges() const;

    const std::string& id(std::size_t index) const { return ids_.at(index); }
    std::optional<std::size_t> index_of(const std::string& pub_id) const;

private:
    friend CitationGraph build_graph(const Dataset&, SelfCitationPolicy);

    std::vector<std::string> ids_;
    std::unordered_map<std::string, std::size_t> index_;
    std::vector<std::size_t> offsets_; // size() + 1 entries
    std::vector<std::size_t> citing_;
    std::size_t filtered_count_ = 0;
    SelfCitationPolicy policy_ = SelfCitationPolicy::none;
};

/// Throws ConfigError when the policy needs author or affiliation data the
/// dataset does not have.
CitationGraph build_graph(const Dataset& dataset, SelfCitationPolicy policy);

/// result[i] = sum of weights[c] over publications c citing i, accumulated in
/// ascending c. Throws ConfigError on a size mismatch or a negative or
/// non-finite weight.
std::vector<double> weighted_citation_scores(const CitationGraph& graph,
                                             std::span<const double> weights);

} // namespace rmncs

#endif // RMNCS_CITATION_GRAPH_HPP_
