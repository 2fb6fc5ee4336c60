// Test-only reference implementations. Nothing here calls into the engine:
// the oracle evaluates the indicator from dense 0/1 matrices by direct
// definition, so agreement with run_recursion is an independent check.
#ifndef RMNCS_TESTS_ORACLE_HPP_
#define RMNCS_TESTS_ORACLE_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <filesystem>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "rmncs/dataset.hpp"

namespace rmncs::oracle {

/// Small random corpus described by plain indices.
struct Instance {
    std::size_t n = 0;
    std::size_t journals = 0;
    std::size_t strata = 0;
    std::vector<std::size_t> journal_of;
    std::vector<std::size_t> stratum_of;
    /// (citing, cited), no self loops, no duplicates.
    std::vector<std::pair<std::size_t, std::size_t>> edges;
};

inline std::string pub_name(std::size_t i) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "p%03zu", i);
    return buf;
}
inline std::string journal_name(std::size_t j) { return "j" + std::to_string(j); }
inline std::string field_name(std::size_t k) { return "f" + std::to_string(k); }

/// Every journal and stratum index is used at least once, so the dataset's
/// sorted journal/stratum lists line up with the instance indices (all
/// counts stay below 10).
inline Instance random_instance(std::mt19937_64& rng, std::size_t max_n = 50,
                                std::size_t max_journals = 5, std::size_t max_strata = 3,
                                double edge_probability = -1.0) {
    Instance inst;
    inst.journals = std::uniform_int_distribution<std::size_t>(1, max_journals)(rng);
    inst.strata = std::uniform_int_distribution<std::size_t>(1, max_strata)(rng);
    const std::size_t min_n = std::max(inst.journals, inst.strata);
    inst.n = std::uniform_int_distribution<std::size_t>(std::max<std::size_t>(min_n, 2), max_n)(rng);
    std::uniform_int_distribution<std::size_t> pick_j(0, inst.journals - 1);
    std::uniform_int_distribution<std::size_t> pick_k(0, inst.strata - 1);
    for (std::size_t i = 0; i < inst.n; ++i) {
        inst.journal_of.push_back(i < inst.journals ? i : pick_j(rng));
        inst.stratum_of.push_back(i < inst.strata ? i : pick_k(rng));
    }
    const double p = edge_probability > 0.0
                         ? edge_probability
                         : std::uniform_real_distribution<double>(0.02, 0.25)(rng);
    std::bernoulli_distribution coin(p);
    for (std::size_t a = 0; a < inst.n; ++a) {
        for (std::size_t b = 0; b < inst.n; ++b) {
            if (a != b && coin(rng)) {
                inst.edges.emplace_back(a, b);
            }
        }
    }
    return inst;
}

/// Dataset for an instance: strata are encoded as publication-level fields
/// in a single year; the scheme maps every journal to field f0.
inline Dataset to_dataset(const Instance& inst) {
    std::vector<Publication> pubs;
    for (std::size_t i = 0; i < inst.n; ++i) {
        Publication p;
        p.pub_id = pub_name(i);
        p.journal_id = journal_name(inst.journal_of[i]);
        p.year = 2000;
        p.field_id = field_name(inst.stratum_of[i]);
        pubs.push_back(std::move(p));
    }
    std::vector<std::pair<std::string, std::string>> cites;
    for (const auto& [a, b] : inst.edges) {
        cites.emplace_back(pub_name(a), pub_name(b));
    }
    ClassificationScheme scheme{"oracle", {}};
    for (std::size_t j = 0; j < inst.journals; ++j) {
        scheme.journal_to_field[journal_name(j)] = field_name(0);
    }
    return Dataset::create(std::move(pubs), cites, scheme);
}

struct OracleOrder {
    std::vector<double> weights;
    std::vector<double> cs;
    std::vector<double> mcs;
    std::vector<double> ncs;
    std::vector<double> mncs;
};

/// Straight-line evaluation of orders 1..max_order from the c, p and b
/// matrices. `initial_weights`, when non-empty, replaces the unit weights of
/// order 1.
inline std::vector<OracleOrder> oracle_orders(const Instance& inst, int max_order,
                                              std::vector<double> initial_weights = {}) {
    const std::size_t n = inst.n;
    std::vector<std::vector<int>> c(n, std::vector<int>(n, 0));
    for (const auto& [a, b] : inst.edges) {
        c[a][b] = 1;
    }
    std::vector<std::vector<int>> p(n, std::vector<int>(inst.journals, 0));
    std::vector<std::vector<int>> b(n, std::vector<int>(inst.strata, 0));
    for (std::size_t i = 0; i < n; ++i) {
        p[i][inst.journal_of[i]] = 1;
        b[i][inst.stratum_of[i]] = 1;
    }

    std::vector<OracleOrder> out;
    std::vector<double> w = initial_weights.empty() ? std::vector<double>(n, 1.0) : initial_weights;
    for (int order = 1; order <= max_order; ++order) {
        OracleOrder o;
        o.weights = w;
        o.cs.assign(n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t src = 0; src < n; ++src) {
                o.cs[i] += w[src] * c[src][i];
            }
        }
        o.mcs.assign(inst.strata, 0.0);
        for (std::size_t k = 0; k < inst.strata; ++k) {
            double num = 0.0;
            double den = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                num += b[i][k] * o.cs[i];
                den += b[i][k];
            }
            o.mcs[k] = den > 0.0 ? num / den : 0.0;
        }
        o.ncs.assign(n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            double ecs = 0.0;
            for (std::size_t k = 0; k < inst.strata; ++k) {
                ecs += b[i][k] * o.mcs[k];
            }
            o.ncs[i] = ecs > 0.0 ? o.cs[i] / ecs : 0.0;
        }
        o.mncs.assign(inst.journals, 0.0);
        for (std::size_t j = 0; j < inst.journals; ++j) {
            double num = 0.0;
            double den = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                num += p[i][j] * o.ncs[i];
                den += p[i][j];
            }
            o.mncs[j] = den > 0.0 ? num / den : 0.0;
        }
        std::vector<double> next(n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < inst.journals; ++j) {
                next[i] += p[i][j] * o.mncs[j];
            }
        }
        w = std::move(next);
        out.push_back(std::move(o));
    }
    return out;
}

/// |a - b| <= tol * max(|a|, |b|).
inline bool close_rel(double a, double b, double tol) {
    const double scale = std::max(std::abs(a), std::abs(b));
    return std::abs(a - b) <= tol * scale;
}

/// Fresh scratch directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / ("rmncs_test_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

inline std::filesystem::path source_dir() { return RMNCS_SOURCE_DIR; }

} // namespace rmncs::oracle

#endif // RMNCS_TESTS_ORACLE_HPP_
