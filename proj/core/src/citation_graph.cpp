#include "rmncs/citation_graph.hpp"

#include <algorithm>
#include <cmath>

#include <spdlog/spdlog.h>

#include "rmncs/error.hpp"

namespace rmncs {

namespace {

bool overlaps(std::vector<std::string> a, std::vector<std::string> b) {
    if (a.empty() || b.empty()) {
        return false;
    }
    std::ranges::sort(a);
    std::ranges::sort(b);
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
        if (*ia < *ib) {
            ++ia;
        } else if (*ib < *ia) {
            ++ib;
        } else {
            return true;
        }
    }
    return false;
}

} // namespace

std::string_view to_string(SelfCitationPolicy policy) {
    switch (policy) {
    case SelfCitationPolicy::none:
        return "none";
    case SelfCitationPolicy::author_overlap:
        return "author";
    case SelfCitationPolicy::institute_overlap:
        return "institute";
    }
    return "none";
}

std::optional<SelfCitationPolicy> parse_self_citation_policy(std::string_view text) {
    if (text == "none") {
        return SelfCitationPolicy::none;
    }
    if (text == "author" || text == "author_overlap") {
        return SelfCitationPolicy::author_overlap;
    }
    if (text == "institute" || text == "institute_overlap") {
        return SelfCitationPolicy::institute_overlap;
    }
    return std::nullopt;
}

SelfCitationPolicy default_policy(const Dataset& dataset) {
    if (dataset.has_authors()) {
        return SelfCitationPolicy::author_overlap;
    }
    spdlog::warn("no author data supplied; self citations are not excluded "
                 "(supply authors.csv or choose a policy explicitly)");
    return SelfCitationPolicy::none;
}

std::span<const std::size_t> CitationGraph::citers_of(std::size_t cited) const {
    if (cited >= size()) {
        throw ConfigError("publication index " + std::to_string(cited) + " out of range");
    }
    return std::span<const std::size_t>(citing_).subspan(offsets_[cited],
                                                         offsets_[cited + 1] - offsets_[cited]);
}

std::vector<std::pair<std::size_t, std::size_t>> CitationGraph::edges() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    out.reserve(edge_count());
    for (std::size_t cited = 0; cited < size(); ++cited) {
        for (std::size_t citing : citers_of(cited)) {
            out.emplace_back(citing, cited);
        }
    }
    std::ranges::sort(out);
    return out;
}

std::optional<std::size_t> CitationGraph::index_of(const std::string& pub_id) const {
    const auto it = index_.find(pub_id);
    if (it == index_.end()) {
        return std::nullopt;
    }
    return it->second;
}

CitationGraph build_graph(const Dataset& dataset, SelfCitationPolicy policy) {
    if (policy == SelfCitationPolicy::author_overlap && !dataset.has_authors()) {
        throw ConfigError("self-citation policy 'author' needs author data; "
                          "supply authors.csv or use --self-citations none|institute");
    }
    if (policy == SelfCitationPolicy::institute_overlap && !dataset.has_affiliations()) {
        throw ConfigError("self-citation policy 'institute' needs affiliation data; "
                          "supply affiliations.csv or use --self-citations none|author");
    }

    CitationGraph graph;
    graph.policy_ = policy;
    const std::size_t n = dataset.size();
    graph.ids_.reserve(n);
    graph.index_.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        graph.ids_.push_back(dataset.publication(i).pub_id);
        graph.index_.emplace(graph.ids_.back(), i);
    }

    std::vector<CitationPair> kept;
    kept.reserve(dataset.citations().size());
    for (const CitationPair& c : dataset.citations()) {
        const Publication& from = dataset.publication(c.citing);
        const Publication& to = dataset.publication(c.cited);
        bool self = false;
        switch (policy) {
        case SelfCitationPolicy::none:
            break;
        case SelfCitationPolicy::author_overlap:
            self = overlaps(from.author_ids, to.author_ids);
            break;
        case SelfCitationPolicy::institute_overlap:
            self = overlaps(from.institute_ids, to.institute_ids);
            break;
        }
        if (self) {
            ++graph.filtered_count_;
        } else {
            kept.push_back(c);
        }
    }

    // Counting sort by cited index. Input is sorted by (citing, cited), so
    // each column receives its citers in ascending order.
    graph.offsets_.assign(n + 1, 0);
    for (const CitationPair& c : kept) {
        ++graph.offsets_[c.cited + 1];
    }
    for (std::size_t i = 0; i < n; ++i) {
        graph.offsets_[i + 1] += graph.offsets_[i];
    }
    graph.citing_.resize(kept.size());
    std::vector<std::size_t> cursor(graph.offsets_.begin(), graph.offsets_.end() - 1);
    for (const CitationPair& c : kept) {
        graph.citing_[cursor[c.cited]++] = c.citing;
    }
    return graph;
}

std::vector<double> weighted_citation_scores(const CitationGraph& graph,
                                             std::span<const double> weights) {
    if (weights.size() != graph.size()) {
        throw ConfigError("weight vector has " + std::to_string(weights.size()) +
                          " entries, graph has " + std::to_string(graph.size()) + " publications");
    }
    for (double w : weights) {
        if (!std::isfinite(w) || w < 0.0) {
            throw ConfigError("citation weights must be finite and non-negative");
        }
    }
    std::vector<double> scores(graph.size(), 0.0);
    for (std::size_t cited = 0; cited < graph.size(); ++cited) {
        double sum = 0.0;
        for (std::size_t citing : graph.citers_of(cited)) {
            sum += weights[citing];
        }
        scores[cited] = sum;
    }
    return scores;
}

} // namespace rmncs
