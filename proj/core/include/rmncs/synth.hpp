#ifndef RMNCS_SYNTH_HPP_
#define RMNCS_SYNTH_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "rmncs/citation_graph.hpp"
#include "rmncs/dataset.hpp"
#include "rmncs/recursion.hpp"

namespace rmncs {

/// Random source for corpus generation ("rmncs-synth v1").
///
/// Raw bits come from std::mt19937_64, whose output sequence is fixed by the
/// C++ standard. The distributions are implemented here rather than taken
/// from <random> so that a seed reproduces the same corpus with any standard
/// library.
class SynthRng {
public:
    explicit SynthRng(std::uint64_t seed);

    std::uint64_t next_u64();
    /// Uniform integer in [0, bound), bound > 0. Unbiased (rejection).
    std::uint64_t uniform_index(std::uint64_t bound);
    /// Uniform double in [0, 1) with 53 random bits.
    double uniform01();
    bool bernoulli(double p);
    /// Poisson(mean) via Knuth's product method; means above 200 are split
    /// into equal chunks and the draws summed.
    std::uint64_t poisson(double mean);

private:
    std::mt19937_64 engine_;
};

struct SubfieldSpec {
    std::string name;
    int journal_count = 1;
    double pubs_per_journal_mean = 100.0;
    int first_year = 2000;
    int last_year = 2000;
    /// Mean number of out-citations per publication.
    double citation_density = 1.0;
    /// Probability that a citation targets the citing publication's own subfield.
    double within_subfield_fraction = 0.8;
    /// Journal IDs; generated as "<name>-J01", ... when empty.
    std::vector<std::string> journal_ids;
};

struct SynthConfig {
    std::uint64_t seed = 0;
    std::vector<SubfieldSpec> subfields;
    int institute_count = 1;
    double institutes_per_pub_mean = 1.0;
    /// Exact corpus size. When unset each journal draws its size from
    /// Poisson(pubs_per_journal_mean), minimum 1.
    std::optional<std::size_t> total_publications;
    /// Field name used by the single-field scheme.
    std::string single_field_name = "all";

    /// Throws ConfigError on an empty subfield list or out-of-range values.
    void validate() const;
};

/// Generated corpus with its two classification schemes.
struct SynthCorpus {
    /// Carries `split` as its scheme.
    Dataset dataset;
    /// Every journal in the single field SynthConfig::single_field_name.
    ClassificationScheme single_field;
    /// Every journal in its subfield.
    ClassificationScheme split;
};

/// Deterministic in the config (seed included). Throws ConfigError when the
/// config would produce no publications.
SynthCorpus generate(const SynthConfig& config);

/// The 48 journals of the library and information science corpus grouped as
/// library science (27), information science (14), scientometrics (7).
struct JournalCluster {
    std::string field_id;
    std::vector<std::string> journals;
};
const std::vector<JournalCluster>& lis_journal_clusters();

/// LIS-shaped preset: the 48 journals above, 2000-2009, 12,202 publications,
/// citation densities 2/4/6 (ratio 1:2:3), within-subfield fraction 0.8,
/// 300 institutes, 1.5 institutes per publication.
SynthConfig lis_preset(std::uint64_t seed);

/// Same shape as lis_preset but every subfield has citation density 4.
SynthConfig flat_preset(std::uint64_t seed);

/// Returns the named preset ("lis" or "flat"), or nullopt.
std::optional<SynthConfig> preset(const std::string& name, std::uint64_t seed);

/// Side-by-side journal MNCS under two schemes.
struct JournalComparison {
    std::string journal_id;
    /// Field of the journal under the split scheme.
    std::string subfield;
    double single_order1 = 0.0;
    double single_final = 0.0;
    double split_order1 = 0.0;
    double split_final = 0.0;
};

struct SubfieldBias {
    std::string subfield;
    std::size_t journal_count = 0;
    std::size_t publication_count = 0;
    /// Mean in-set citations received per publication.
    double citation_density = 0.0;
    /// Unweighted means of journal MNCS over the subfield's journals.
    double single_order1 = 0.0;
    double single_final = 0.0;
    double split_order1 = 0.0;
    double split_final = 0.0;
};

struct BiasReport {
    std::vector<JournalComparison> journals;
    std::vector<SubfieldBias> subfields;
    std::string high_density_subfield;
    std::string low_density_subfield;
    /// (high / low mean journal MNCS at the final order) divided by the same
    /// ratio at order 1, under the single-field scheme. Unset when a
    /// denominator is not positive or fewer than two subfields exist.
    std::optional<double> amplification_ratio;
    bool converged_single = false;
    bool converged_split = false;
    int final_order_single = 0;
    int final_order_split = 0;
};

/// Runs the recursion under both schemes on the same citation graph and
/// summarizes per journal and per subfield (subfields are the fields of the
/// split scheme). Non-convergence is reported, not thrown.
BiasReport measure_bias(const Dataset& dataset, const ClassificationScheme& scheme_single,
                        const ClassificationScheme& scheme_split, const RecursionConfig& config,
                        SelfCitationPolicy policy = SelfCitationPolicy::none);

} // namespace rmncs

#endif // RMNCS_SYNTH_HPP_
