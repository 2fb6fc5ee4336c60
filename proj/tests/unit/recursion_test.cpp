#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "oracle.hpp"
#include "rmncs/error.hpp"
#include "rmncs/recursion.hpp"

using namespace rmncs;

namespace {

double round2(double v) { return std::round(v * 100.0) / 100.0; }

// Five publications, journals J1 = {p0, p1, p2} and J2 = {p3, p4}, one stratum.
oracle::Instance five_pub_instance() {
    oracle::Instance inst;
    inst.n = 5;
    inst.journals = 2;
    inst.strata = 1;
    inst.journal_of = {0, 0, 0, 1, 1};
    inst.stratum_of = {0, 0, 0, 0, 0};
    inst.edges = {{0, 3}, {1, 3}, {2, 4}, {3, 0}, {4, 0}, {4, 1}};
    return inst;
}

// Ring of 12 publications in 3 journals: each publication is cited exactly once.
Dataset symmetric_ring() {
    std::vector<Publication> pubs;
    std::vector<std::pair<std::string, std::string>> cites;
    for (int i = 0; i < 12; ++i) {
        pubs.push_back({oracle::pub_name(i), "J" + std::to_string(i % 3), 2005, std::nullopt, {}, {}});
        cites.emplace_back(oracle::pub_name(i), oracle::pub_name((i + 1) % 12));
    }
    return Dataset::create(pubs, cites, {"s", {{"J0", "F"}, {"J1", "F"}, {"J2", "F"}}});
}

} // namespace

TEST(StratumMeanTest, WorkedValues) {
    const std::vector<double> scores = {3, 8, 7};
    const std::vector<std::size_t> strata = {0, 0, 1};
    EXPECT_EQ(stratum_mean_scores(scores, strata, 2), (std::vector<double>{5.5, 7.0}));
    // A stratum index with no publications has mean 0.
    EXPECT_EQ(stratum_mean_scores(scores, strata, 3)[2], 0.0);
    EXPECT_THROW(stratum_mean_scores(scores, strata, 1), ConfigError);
}

TEST(StratumMeanTest, MatchesSortAndScanGroupBy) {
    std::mt19937_64 rng(40);
    std::uniform_real_distribution<double> u(0.0, 20.0);
    for (int round = 0; round < 25; ++round) {
        const std::size_t n = 40;
        const std::size_t k = 1 + rng() % 6;
        std::vector<double> scores(n);
        std::vector<std::size_t> strata(n);
        for (std::size_t i = 0; i < n; ++i) {
            scores[i] = u(rng);
            strata[i] = i < k ? i : rng() % k;
        }
        std::vector<std::size_t> order(n);
        std::iota(order.begin(), order.end(), 0);
        std::ranges::stable_sort(order, {}, [&](std::size_t i) { return strata[i]; });
        std::vector<double> expected(k, 0.0);
        for (std::size_t pos = 0; pos < n;) {
            const std::size_t group = strata[order[pos]];
            double sum = 0.0;
            std::size_t count = 0;
            for (; pos < n && strata[order[pos]] == group; ++pos, ++count) {
                sum += scores[order[pos]];
            }
            expected[group] = sum / static_cast<double>(count);
        }
        const auto got = stratum_mean_scores(scores, strata, k);
        for (std::size_t g = 0; g < k; ++g) {
            EXPECT_TRUE(oracle::close_rel(got[g], expected[g], 1e-12));
        }
    }
}

TEST(NormalizedScoreTest, WorkedExampleWithInjectedExpectations) {
    const std::vector<double> scores = {3, 8, 10};
    const std::vector<std::size_t> strata = {0, 0, 1};
    const std::vector<double> expected = {4.32, 12.17};
    const auto ncs = normalized_scores(scores, expected, strata);
    EXPECT_EQ(round2(ncs[0]), 0.69);
    EXPECT_EQ(round2(ncs[1]), 1.85);
    EXPECT_EQ(round2(ncs[2]), 0.82);
}

TEST(NormalizedScoreTest, ZeroMeanStratumGivesZero) {
    const auto ncs = normalized_scores(std::vector<double>{0, 0, 4}, std::vector<double>{0, 4},
                                       std::vector<std::size_t>{0, 0, 1});
    EXPECT_EQ(ncs, (std::vector<double>{0, 0, 1}));
}

TEST(NormalizedScoreTest, MatchesElementwiseDivision) {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> u(0.1, 20.0);
    std::vector<double> scores(30), means(4);
    std::vector<std::size_t> strata(30);
    for (auto& m : means) {
        m = u(rng);
    }
    for (std::size_t i = 0; i < 30; ++i) {
        scores[i] = u(rng);
        strata[i] = rng() % 4;
    }
    const auto ncs = normalized_scores(scores, means, strata);
    for (std::size_t i = 0; i < 30; ++i) {
        EXPECT_EQ(ncs[i], scores[i] / means[strata[i]]);
    }
}

TEST(JournalMncsTest, WorkedValues) {
    const auto mncs = journal_mncs(std::vector<double>{0.69, 1.85, 0.82}, std::vector<std::size_t>{0, 0, 0}, 1);
    EXPECT_EQ(round2(mncs[0]), 1.12);
    EXPECT_EQ(journal_mncs(std::vector<double>{2.5}, std::vector<std::size_t>{0}, 1)[0], 2.5);
}

TEST(JournalMncsTest, MatchesGroupBy) {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> u(0.0, 4.0);
    std::vector<double> ncs(50);
    std::vector<std::size_t> journal(50);
    for (std::size_t i = 0; i < 50; ++i) {
        ncs[i] = u(rng);
        journal[i] = i < 5 ? i : rng() % 5;
    }
    const auto got = journal_mncs(ncs, journal, 5);
    for (std::size_t j = 0; j < 5; ++j) {
        double sum = 0.0;
        int count = 0;
        for (std::size_t i = 0; i < 50; ++i) {
            if (journal[i] == j) {
                sum += ncs[i];
                ++count;
            }
        }
        EXPECT_TRUE(oracle::close_rel(got[j], sum / count, 1e-12));
    }
}

TEST(NextWeightsTest, LooksUpCitingJournal) {
    EXPECT_EQ(next_weights(std::vector<double>{2.0}, std::vector<std::size_t>{0}), (std::vector<double>{2.0}));
    EXPECT_EQ(next_weights(std::vector<double>{1.0, 1.0, 1.0}, std::vector<std::size_t>{2, 0, 1, 1}),
              (std::vector<double>(4, 1.0)));
    const std::vector<double> mncs = {0.5, 1.5, 3.0};
    const std::vector<std::size_t> journal = {2, 2, 0, 1, 0, 1};
    const auto w = next_weights(mncs, journal);
    for (std::size_t i = 0; i < journal.size(); ++i) {
        EXPECT_EQ(w[i], mncs[journal[i]]);
    }
    EXPECT_THROW(next_weights(mncs, std::vector<std::size_t>{3}), ConfigError);
}

TEST(RunRecursionTest, SymmetricNetworkIsAFixedPoint) {
    const Dataset ds = symmetric_ring();
    const CitationGraph g = build_graph(ds, SelfCitationPolicy::none);
    RecursionConfig config;
    config.track_history = true;
    const RecursionResult r = run_recursion(g, ds, config);
    EXPECT_TRUE(r.converged);
    EXPECT_EQ(r.final.order, 2);
    ASSERT_EQ(r.deltas.size(), 1u);
    EXPECT_EQ(r.deltas[0].max_abs, 0.0);
    for (const auto& state : r.history) {
        for (double v : state.journal_mncs) {
            EXPECT_EQ(v, 1.0);
        }
    }
}

// Values hand-derived with exact fractions for five_pub_instance().
TEST(RunRecursionTest, FivePublicationsThirdOrderMatchesHandComputation) {
    const oracle::Instance inst = five_pub_instance();
    const Dataset ds = oracle::to_dataset(inst);
    const CitationGraph g = build_graph(ds, SelfCitationPolicy::none);
    RecursionConfig config;
    config.target_order = 3;
    config.track_history = true;
    const RecursionResult r = run_recursion(g, ds, config);
    ASSERT_EQ(r.history.size(), 3u);

    const OrderState& o1 = r.history[0];
    EXPECT_EQ(o1.citation_scores, (std::vector<double>{2, 1, 0, 2, 1}));
    EXPECT_DOUBLE_EQ(o1.stratum_means[0], 1.2);
    EXPECT_DOUBLE_EQ(o1.journal_mncs[0], 5.0 / 6.0);
    EXPECT_DOUBLE_EQ(o1.journal_mncs[1], 5.0 / 4.0);

    const OrderState& o2 = r.history[1];
    const std::vector<double> cs2 = {5.0 / 2, 5.0 / 4, 0, 5.0 / 3, 5.0 / 6};
    const std::vector<double> ncs2 = {2, 1, 0, 4.0 / 3, 2.0 / 3};
    for (std::size_t i = 0; i < 5; ++i) {
        EXPECT_DOUBLE_EQ(o2.weights[i], i < 3 ? 5.0 / 6.0 : 5.0 / 4.0);
        EXPECT_DOUBLE_EQ(o2.citation_scores[i], cs2[i]);
        EXPECT_DOUBLE_EQ(o2.ncs[i], ncs2[i]);
    }
    EXPECT_DOUBLE_EQ(o2.stratum_means[0], 5.0 / 4.0);
    EXPECT_DOUBLE_EQ(o2.journal_mncs[0], 1.0);
    EXPECT_DOUBLE_EQ(o2.journal_mncs[1], 1.0);

    // Order-2 MNCS is uniform, so order 3 repeats order 1.
    EXPECT_EQ(r.final.order, 3);
    EXPECT_DOUBLE_EQ(r.final.journal_mncs[0], 5.0 / 6.0);
    EXPECT_DOUBLE_EQ(r.final.journal_mncs[1], 5.0 / 4.0);
}

TEST(RunRecursionTest, OscillatingInstanceReportsNonConvergence) {
    const Dataset ds = oracle::to_dataset(five_pub_instance());
    const CitationGraph g = build_graph(ds, SelfCitationPolicy::none);
    RecursionConfig config;
    config.max_iterations = 30;
    const RecursionResult r = run_recursion(g, ds, config);
    EXPECT_FALSE(r.converged);
    EXPECT_EQ(r.final.order, 30);
    EXPECT_EQ(r.deltas.size(), 29u);
    EXPECT_TRUE(r.history.empty());
}

TEST(RunRecursionTest, MaxIterationsOneStopsAfterFirstOrder) {
    const Dataset ds = symmetric_ring();
    const CitationGraph g = build_graph(ds, SelfCitationPolicy::none);
    RecursionConfig config;
    config.max_iterations = 1;
    const RecursionResult r = run_recursion(g, ds, config);
    EXPECT_EQ(r.final.order, 1);
    EXPECT_TRUE(r.deltas.empty());
    EXPECT_FALSE(r.converged);
    EXPECT_EQ(r.first, r.final);
}

TEST(RunRecursionTest, ConfigValidation) {
    const Dataset ds = symmetric_ring();
    const CitationGraph g = build_graph(ds, SelfCitationPolicy::none);
    RecursionConfig bad;
    bad.target_order = 0;
    EXPECT_THROW(run_recursion(g, ds, bad), ConfigError);
    bad = {};
    bad.convergence_tolerance = 0.0;
    EXPECT_THROW(run_recursion(g, ds, bad), ConfigError);
    bad = {};
    bad.max_iterations = 0;
    EXPECT_THROW(run_recursion(g, ds, bad), ConfigError);
}

TEST(RunRecursionTest, OverflowReportsOrder) {
    const Dataset ds = symmetric_ring();
    // Give one publication two citers so a sum of two huge weights overflows.
    const Dataset dense = Dataset::create(ds.publications(),
                                          {{oracle::pub_name(0), oracle::pub_name(2)},
                                           {oracle::pub_name(1), oracle::pub_name(2)}},
                                          ds.scheme());
    const CitationGraph g = build_graph(dense, SelfCitationPolicy::none);
    const std::vector<double> huge(dense.size(), std::numeric_limits<double>::max());
    try {
        compute_order(g, dense, huge, 7);
        FAIL() << "expected NumericError";
    } catch (const NumericError& e) {
        EXPECT_EQ(e.order(), 7);
    }
}

TEST(RunRecursionTest, MatchesDenseOracleOnRandomInstances) {
    std::mt19937_64 rng(43);
    for (int round = 0; round < 40; ++round) {
        const oracle::Instance inst = oracle::random_instance(rng);
        const Dataset ds = oracle::to_dataset(inst);
        const CitationGraph g = build_graph(ds, SelfCitationPolicy::none);
        RecursionConfig config;
        config.target_order = 5;
        config.track_history = true;
        const RecursionResult r = run_recursion(g, ds, config);
        const auto expected_orders = oracle::oracle_orders(inst, 5);
        for (int o = 0; o < 5; ++o) {
            for (std::size_t i = 0; i < inst.n; ++i) {
                ASSERT_TRUE(oracle::close_rel(r.history[o].ncs[i], expected_orders[o].ncs[i], 1e-12));
            }
            for (std::size_t j = 0; j < inst.journals; ++j) {
                ASSERT_TRUE(oracle::close_rel(r.history[o].journal_mncs[j], expected_orders[o].mncs[j], 1e-12));
            }
        }
    }
}

// Ordinary citation counts divided by the stratum's mean count, averaged per journal.
TEST(RunRecursionTest, FirstOrderIsTheOrdinaryIndicator) {
    std::mt19937_64 rng(44);
    for (int round = 0; round < 20; ++round) {
        const oracle::Instance inst = oracle::random_instance(rng);
        const Dataset ds = oracle::to_dataset(inst);
        RecursionConfig config;
        config.target_order = 1;
        const RecursionResult r = run_recursion(build_graph(ds, SelfCitationPolicy::none), ds, config);

        std::vector<double> count(inst.n, 0.0);
        for (const auto& e : inst.edges) {
            count[e.second] += 1.0;
        }
        for (std::size_t j = 0; j < inst.journals; ++j) {
            double total = 0.0;
            int members = 0;
            for (std::size_t i = 0; i < inst.n; ++i) {
                if (inst.journal_of[i] != j) {
                    continue;
                }
                double stratum_total = 0.0;
                int stratum_size = 0;
                for (std::size_t x = 0; x < inst.n; ++x) {
                    if (inst.stratum_of[x] == inst.stratum_of[i]) {
                        stratum_total += count[x];
                        ++stratum_size;
                    }
                }
                const double expected = stratum_total / stratum_size;
                total += expected > 0 ? count[i] / expected : 0.0;
                ++members;
            }
            EXPECT_TRUE(oracle::close_rel(r.final.journal_mncs[j], total / members, 1e-12));
        }
    }
}

TEST(RunRecursionTest, InvariantsHoldAtEveryOrder) {
    std::mt19937_64 rng(45);
    for (int round = 0; round < 40; ++round) {
        const oracle::Instance inst = oracle::random_instance(rng);
        const Dataset ds = oracle::to_dataset(inst);
        const CitationGraph g = build_graph(ds, SelfCitationPolicy::none);
        RecursionConfig config;
        config.max_iterations = 15;
        config.track_history = true;
        const RecursionResult r = run_recursion(g, ds, config);
        EXPECT_EQ(r, run_recursion(g, ds, config)); // determinism
        EXPECT_EQ(r.deltas.size(), r.history.size() - 1);
        if (r.converged) {
            EXPECT_LT(r.deltas.back().max_rel, config.convergence_tolerance);
        }
        for (const OrderState& s : r.history) {
            for (const auto* v : {&s.weights, &s.citation_scores, &s.stratum_means, &s.ncs, &s.journal_mncs}) {
                for (double x : *v) {
                    EXPECT_GE(x, 0.0);
                }
            }
            std::vector<double> sum(ds.strata().size(), 0.0);
            std::vector<int> count(ds.strata().size(), 0);
            for (std::size_t i = 0; i < ds.size(); ++i) {
                sum[ds.stratum_of()[i]] += s.ncs[i];
                ++count[ds.stratum_of()[i]];
            }
            for (std::size_t k = 0; k < sum.size(); ++k) {
                if (s.stratum_means[k] > 0.0) {
                    EXPECT_NEAR(sum[k] / count[k], 1.0, 1e-12);
                }
            }
        }
    }
}

TEST(RunRecursionTest, WeightScaleCancelsWithinOneOrder) {
    std::mt19937_64 rng(46);
    std::uniform_real_distribution<double> u(0.1, 3.0);
    for (int round = 0; round < 30; ++round) {
        const oracle::Instance inst = oracle::random_instance(rng);
        const Dataset ds = oracle::to_dataset(inst);
        const CitationGraph g = build_graph(ds, SelfCitationPolicy::none);
        std::vector<double> mncs(ds.journals().size());
        for (auto& m : mncs) {
            m = u(rng);
        }
        const auto w = next_weights(mncs, ds.journal_of());
        const OrderState base = compute_order(g, ds, w, 2);
        for (double c : {0.1, 7.0, 1000.0}) {
            std::vector<double> scaled_mncs = mncs;
            for (auto& m : scaled_mncs) {
                m *= c;
            }
            const OrderState scaled = compute_order(g, ds, next_weights(scaled_mncs, ds.journal_of()), 2);
            for (std::size_t i = 0; i < ds.size(); ++i) {
                EXPECT_TRUE(oracle::close_rel(scaled.ncs[i], base.ncs[i], 1e-12));
            }
            for (std::size_t j = 0; j < mncs.size(); ++j) {
                EXPECT_TRUE(oracle::close_rel(scaled.journal_mncs[j], base.journal_mncs[j], 1e-12));
            }
        }
    }
}
