#include <gtest/gtest.h>

#include <fstream>
#include <set>
#include <sstream>

#include "oracle.hpp"
#include "rmncs/csv.hpp"
#include "rmncs/error.hpp"
#include "rmncs/synth.hpp"

using namespace rmncs;

namespace {

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

SynthConfig small_config(std::uint64_t seed, double density) {
    SynthConfig config;
    config.seed = seed;
    config.institute_count = 20;
    config.institutes_per_pub_mean = 1.4;
    for (int s = 0; s < 2; ++s) {
        SubfieldSpec spec;
        spec.name = "s" + std::to_string(s);
        spec.journal_count = 3;
        spec.pubs_per_journal_mean = 40;
        spec.first_year = 2001;
        spec.last_year = 2003;
        spec.citation_density = density;
        config.subfields.push_back(spec);
    }
    return config;
}

const SynthCorpus& lis_corpus() {
    static const SynthCorpus corpus = generate(lis_preset(2024));
    return corpus;
}

} // namespace

TEST(SynthRngTest, SamplersStayInRange) {
    SynthRng rng(7);
    double sum = 0.0;
    for (int i = 0; i < 20000; ++i) {
        EXPECT_LT(rng.uniform_index(13), 13u);
        const double u = rng.uniform01();
        EXPECT_GE(u, 0.0);
        EXPECT_LT(u, 1.0);
        sum += static_cast<double>(rng.poisson(3.5));
    }
    EXPECT_NEAR(sum / 20000, 3.5, 0.1);
    std::uint64_t big = 0;
    for (int i = 0; i < 200; ++i) {
        big += rng.poisson(1000.0);
    }
    EXPECT_NEAR(static_cast<double>(big) / 200, 1000.0, 10.0);
    EXPECT_EQ(rng.poisson(0.0), 0u);
}

TEST(SynthRngTest, SeedDeterminesStream) {
    SynthRng a(99), b(99), c(100);
    bool differs = false;
    for (int i = 0; i < 100; ++i) {
        const auto x = a.next_u64();
        EXPECT_EQ(x, b.next_u64());
        differs = differs || x != c.next_u64();
    }
    EXPECT_TRUE(differs);
}

TEST(GenerateTest, SameSeedGivesIdenticalFiles) {
    const auto dir_a = oracle::scratch_dir("synth_a");
    const auto dir_b = oracle::scratch_dir("synth_b");
    write_dataset(generate(small_config(5, 3.0)).dataset, dir_a);
    write_dataset(generate(small_config(5, 3.0)).dataset, dir_b);
    for (const char* name : {"publications.csv", "citations.csv", "affiliations.csv"}) {
        EXPECT_EQ(slurp(dir_a / name), slurp(dir_b / name)) << name;
    }
    const SynthCorpus other = generate(small_config(6, 3.0));
    EXPECT_NE(other.dataset.citations(), generate(small_config(5, 3.0)).dataset.citations());
}

TEST(GenerateTest, ZeroDensityGivesNoCitations) {
    const SynthCorpus corpus = generate(small_config(1, 0.0));
    EXPECT_GT(corpus.dataset.size(), 0u);
    EXPECT_TRUE(corpus.dataset.citations().empty());
}

TEST(GenerateTest, InvalidConfigThrows) {
    SynthConfig config = small_config(1, 1.0);
    config.subfields[0].within_subfield_fraction = 1.5;
    EXPECT_THROW(generate(config), ConfigError);
    EXPECT_THROW(generate(SynthConfig{}), ConfigError);
}

TEST(GenerateTest, WriteLoadRoundTrip) {
    const SynthCorpus corpus = generate(small_config(3, 2.0));
    const auto dir = oracle::scratch_dir("synth_roundtrip");
    write_dataset(corpus.dataset, dir);
    write_scheme(corpus.split, dir / "scheme_split.csv");
    DatasetFiles files;
    files.publications = dir / "publications.csv";
    files.citations = dir / "citations.csv";
    files.affiliations = dir / "affiliations.csv";
    files.scheme = dir / "scheme_split.csv";
    const Dataset loaded = load_dataset(files);
    EXPECT_EQ(loaded.publications(), corpus.dataset.publications());
    EXPECT_EQ(loaded.citations(), corpus.dataset.citations());
    EXPECT_EQ(loaded.scheme().journal_to_field, corpus.split.journal_to_field);
}

TEST(LisPresetTest, CorpusShape) {
    const SynthCorpus& corpus = lis_corpus();
    const Dataset& ds = corpus.dataset;
    EXPECT_EQ(ds.size(), 12202u);
    EXPECT_EQ(ds.journals().size(), 48u);
    std::map<std::string, std::set<std::string>> journals_by_field;
    for (const auto& [journal, field] : corpus.split.journal_to_field) {
        journals_by_field[field].insert(journal);
    }
    EXPECT_EQ(journals_by_field["library_science"].size(), 27u);
    EXPECT_EQ(journals_by_field["information_science"].size(), 14u);
    EXPECT_EQ(journals_by_field["scientometrics"].size(), 7u);
    for (const auto& [journal, field] : corpus.single_field.journal_to_field) {
        EXPECT_EQ(field, "lis");
    }
    for (const auto& p : ds.publications()) {
        EXPECT_GE(p.year, 2000);
        EXPECT_LE(p.year, 2009);
        EXPECT_FALSE(p.institute_ids.empty());
    }
}

TEST(LisPresetTest, RealizedOutDegreeTracksDensity) {
    const SynthCorpus& corpus = lis_corpus();
    const Dataset& ds = corpus.dataset;
    std::map<std::string, double> out_degree;
    std::map<std::string, double> pubs;
    for (const auto& p : ds.publications()) {
        pubs[corpus.split.journal_to_field.at(p.journal_id)] += 1;
    }
    for (const auto& c : ds.citations()) {
        out_degree[corpus.split.journal_to_field.at(ds.publication(c.citing).journal_id)] += 1;
    }
    const std::map<std::string, double> planted = {
        {"library_science", 2.0}, {"information_science", 4.0}, {"scientometrics", 6.0}};
    for (const auto& [field, density] : planted) {
        EXPECT_NEAR(out_degree[field] / pubs[field], density, 0.1 * density) << field;
    }
}

TEST(LisPresetTest, SchemeFixturesMatchPreset) {
    const auto dir = oracle::scratch_dir("lis_schemes");
    write_scheme(lis_corpus().split, dir / "split.csv");
    write_scheme(lis_corpus().single_field, dir / "single.csv");
    const auto fixtures = oracle::source_dir() / "fixtures";
    EXPECT_EQ(slurp(dir / "split.csv"), slurp(fixtures / "lis_scheme_three_clusters.csv"));
    EXPECT_EQ(slurp(dir / "single.csv"), slurp(fixtures / "lis_scheme_single.csv"));
}

TEST(MeasureBiasTest, LisCorpusAmplifiesUnderSingleField) {
    const SynthCorpus& corpus = lis_corpus();
    const BiasReport report = measure_bias(corpus.dataset, corpus.single_field, corpus.split, {});
    ASSERT_TRUE(report.amplification_ratio);
    EXPECT_GT(*report.amplification_ratio, 1.0);
    EXPECT_EQ(report.high_density_subfield, "scientometrics");
    EXPECT_EQ(report.low_density_subfield, "library_science");
    EXPECT_EQ(report.journals.size(), 48u);
    EXPECT_EQ(report.subfields.size(), 3u);
}

TEST(MeasureBiasTest, FlatCorpusShowsNoAmplification) {
    const SynthCorpus corpus = generate(flat_preset(2024));
    const BiasReport report = measure_bias(corpus.dataset, corpus.single_field, corpus.split, {});
    ASSERT_TRUE(report.amplification_ratio);
    EXPECT_GE(*report.amplification_ratio, 0.9);
    EXPECT_LE(*report.amplification_ratio, 1.1);
}

TEST(MeasureBiasTest, SplitSchemeNormalizesEachSubfieldAtOrderOne) {
    const SynthCorpus& corpus = lis_corpus();
    const Dataset split = corpus.dataset.with_scheme(corpus.split);
    RecursionConfig config;
    config.target_order = 1;
    const RecursionResult r = run_recursion(build_graph(split, SelfCitationPolicy::none), split, config);
    std::vector<double> sum(split.strata().size(), 0.0);
    std::vector<double> count(split.strata().size(), 0.0);
    for (std::size_t i = 0; i < split.size(); ++i) {
        sum[split.stratum_of()[i]] += r.final.ncs[i];
        count[split.stratum_of()[i]] += 1;
    }
    for (std::size_t k = 0; k < sum.size(); ++k) {
        EXPECT_NEAR(sum[k] / count[k], 1.0, 1e-12);
    }
}
