#include "rmncs/synth.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <unordered_set>

#include "rmncs/error.hpp"

namespace rmncs {

SynthRng::SynthRng(std::uint64_t seed) : engine_(seed) {}

std::uint64_t SynthRng::next_u64() { return engine_(); }

std::uint64_t SynthRng::uniform_index(std::uint64_t bound) {
    if (bound == 0) {
        throw ConfigError("uniform_index bound must be positive");
    }
    // Reject the low (2^64 mod bound) values so every residue is equally likely.
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
        const std::uint64_t x = next_u64();
        if (x >= threshold) {
            return x % bound;
        }
    }
}

double SynthRng::uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

bool SynthRng::bernoulli(double p) { return uniform01() < p; }

std::uint64_t SynthRng::poisson(double mean) {
    if (!(mean > 0.0)) {
        return 0;
    }
    constexpr double kChunk = 200.0;
    const auto chunks = static_cast<std::uint64_t>(std::ceil(mean / kChunk));
    const double part = mean / static_cast<double>(chunks);
    const double limit = std::exp(-part);
    std::uint64_t total = 0;
    for (std::uint64_t c = 0; c < chunks; ++c) {
        double product = uniform01();
        while (product > limit) {
            ++total;
            product *= uniform01();
        }
    }
    return total;
}

void SynthConfig::validate() const {
    if (subfields.empty()) {
        throw ConfigError("synth config needs at least one subfield");
    }
    for (const auto& s : subfields) {
        if (s.name.empty()) {
            throw ConfigError("subfield name must not be empty");
        }
        if (s.journal_count < 1) {
            throw ConfigError("subfield '" + s.name + "' needs at least one journal");
        }
        if (!s.journal_ids.empty() && s.journal_ids.size() != static_cast<std::size_t>(s.journal_count)) {
            throw ConfigError("subfield '" + s.name + "' lists " + std::to_string(s.journal_ids.size()) +
                              " journal ids for " + std::to_string(s.journal_count) + " journals");
        }
        if (!(s.pubs_per_journal_mean >= 0.0) || !std::isfinite(s.pubs_per_journal_mean)) {
            throw ConfigError("subfield '" + s.name + "': pubs_per_journal_mean must be >= 0");
        }
        if (s.first_year > s.last_year) {
            throw ConfigError("subfield '" + s.name + "': empty year range");
        }
        if (!(s.citation_density >= 0.0) || !std::isfinite(s.citation_density)) {
            throw ConfigError("subfield '" + s.name + "': citation_density must be >= 0");
        }
        if (!(s.within_subfield_fraction >= 0.0 && s.within_subfield_fraction <= 1.0)) {
            throw ConfigError("subfield '" + s.name + "': within_subfield_fraction must be in [0, 1]");
        }
    }
    if (institute_count < 1) {
        throw ConfigError("institute_count must be positive");
    }
    if (!(institutes_per_pub_mean > 0.0) || !std::isfinite(institutes_per_pub_mean)) {
        throw ConfigError("institutes_per_pub_mean must be positive");
    }
    if (single_field_name.empty()) {
        throw ConfigError("single_field_name must not be empty");
    }
}

namespace {

std::string numbered(const std::string& prefix, std::size_t n, int width) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%0*zu", width, n);
    return prefix + buf;
}

struct JournalSlot {
    std::string id;
    std::size_t subfield;
};

} // namespace

SynthCorpus generate(const SynthConfig& config) {
    config.validate();
    SynthRng rng(config.seed);

    std::vector<JournalSlot> journals;
    for (std::size_t s = 0; s < config.subfields.size(); ++s) {
        const SubfieldSpec& spec = config.subfields[s];
        for (int j = 0; j < spec.journal_count; ++j) {
            journals.push_back({spec.journal_ids.empty()
                                    ? numbered(spec.name + "-J", static_cast<std::size_t>(j + 1), 2)
                                    : spec.journal_ids[static_cast<std::size_t>(j)],
                                s});
        }
    }

    std::vector<std::size_t> pubs_per_journal(journals.size(), 0);
    if (config.total_publications) {
        std::vector<double> cumulative;
        double total = 0.0;
        for (const auto& j : journals) {
            total += config.subfields[j.subfield].pubs_per_journal_mean;
            cumulative.push_back(total);
        }
        if (!(total > 0.0)) {
            throw ConfigError("all journals have zero expected publications");
        }
        for (std::size_t p = 0; p < *config.total_publications; ++p) {
            const double u = rng.uniform01() * total;
            auto it = std::ranges::upper_bound(cumulative, u);
            if (it == cumulative.end()) {
                --it;
            }
            ++pubs_per_journal[static_cast<std::size_t>(it - cumulative.begin())];
        }
    } else {
        for (std::size_t j = 0; j < journals.size(); ++j) {
            const double mean = config.subfields[journals[j].subfield].pubs_per_journal_mean;
            pubs_per_journal[j] = std::max<std::uint64_t>(1, rng.poisson(mean));
        }
    }

    std::size_t total_pubs = 0;
    for (std::size_t n : pubs_per_journal) {
        total_pubs += n;
    }
    if (total_pubs == 0) {
        throw ConfigError("synth config yields zero publications");
    }
    const int id_width = std::max(6, static_cast<int>(std::to_string(total_pubs).size()));

    // Publications are emitted journal by journal, so each subfield occupies a
    // contiguous index range.
    std::vector<Publication> pubs;
    pubs.reserve(total_pubs);
    std::vector<std::size_t> subfield_of;
    subfield_of.reserve(total_pubs);
    std::vector<std::pair<std::size_t, std::size_t>> subfield_range(config.subfields.size(),
                                                                    {total_pubs, 0});
    for (std::size_t j = 0; j < journals.size(); ++j) {
        const SubfieldSpec& spec = config.subfields[journals[j].subfield];
        for (std::size_t k = 0; k < pubs_per_journal[j]; ++k) {
            Publication pub;
            pub.pub_id = numbered("P", pubs.size() + 1, id_width);
            pub.journal_id = journals[j].id;
            const auto span = static_cast<std::uint64_t>(spec.last_year - spec.first_year + 1);
            pub.year = spec.first_year + static_cast<int>(rng.uniform_index(span));
            auto& range = subfield_range[journals[j].subfield];
            range.first = std::min(range.first, pubs.size());
            range.second = pubs.size() + 1;
            subfield_of.push_back(journals[j].subfield);
            pubs.push_back(std::move(pub));
        }
    }

    // Institute pools: contiguous blocks sized by each subfield's journal share.
    const std::size_t institutes = static_cast<std::size_t>(config.institute_count);
    std::vector<std::pair<std::size_t, std::size_t>> pool(config.subfields.size());
    {
        std::size_t cum_journals = 0;
        std::size_t begin = 0;
        for (std::size_t s = 0; s < config.subfields.size(); ++s) {
            cum_journals += static_cast<std::size_t>(config.subfields[s].journal_count);
            const std::size_t end = institutes * cum_journals / journals.size();
            pool[s] = end > begin ? std::pair<std::size_t, std::size_t>{begin, end}
                                  : std::pair<std::size_t, std::size_t>{0, institutes};
            begin = std::max(begin, end);
        }
    }
    const int inst_width = std::max(4, static_cast<int>(std::to_string(institutes).size()));
    for (std::size_t i = 0; i < pubs.size(); ++i) {
        const auto [lo, hi] = pool[subfield_of[i]];
        const std::size_t pool_size = hi - lo;
        std::size_t k = 0;
        if (config.institutes_per_pub_mean < 1.0) {
            k = rng.bernoulli(config.institutes_per_pub_mean) ? 1 : 0;
        } else {
            k = 1 + rng.poisson(config.institutes_per_pub_mean - 1.0);
        }
        k = std::min(k, pool_size);
        std::vector<std::size_t> chosen;
        while (chosen.size() < k) {
            const std::size_t inst = lo + rng.uniform_index(pool_size);
            if (std::ranges::find(chosen, inst) == chosen.end()) {
                chosen.push_back(inst);
            }
        }
        for (std::size_t inst : chosen) {
            pubs[i].institute_ids.push_back(numbered("I", inst + 1, inst_width));
        }
    }

    std::vector<std::pair<std::string, std::string>> citations;
    std::unordered_set<std::size_t> targets;
    for (std::size_t i = 0; i < pubs.size(); ++i) {
        const SubfieldSpec& spec = config.subfields[subfield_of[i]];
        const auto [lo, hi] = subfield_range[subfield_of[i]];
        const std::size_t within_available = hi - lo - 1;
        const std::size_t k =
            std::min<std::uint64_t>(rng.poisson(spec.citation_density), total_pubs - 1);
        targets.clear();
        std::size_t within_taken = 0;
        std::vector<std::size_t> ordered;
        while (ordered.size() < k) {
            const bool within = rng.bernoulli(spec.within_subfield_fraction);
            std::size_t target = 0;
            if (within && within_taken < within_available) {
                target = lo + rng.uniform_index(hi - lo);
            } else {
                target = rng.uniform_index(total_pubs);
            }
            if (target == i || !targets.insert(target).second) {
                continue;
            }
            if (target >= lo && target < hi) {
                ++within_taken;
            }
            ordered.push_back(target);
        }
        for (std::size_t target : ordered) {
            citations.emplace_back(pubs[i].pub_id, pubs[target].pub_id);
        }
    }

    ClassificationScheme single{"scheme_single", {}};
    ClassificationScheme split{"scheme_split", {}};
    for (const auto& j : journals) {
        single.journal_to_field[j.id] = config.single_field_name;
        split.journal_to_field[j.id] = config.subfields[j.subfield].name;
    }

    Dataset dataset = Dataset::create(std::move(pubs), citations, split, /*has_affiliations=*/true);
    return SynthCorpus{std::move(dataset), std::move(single), std::move(split)};
}

const std::vector<JournalCluster>& lis_journal_clusters() {
    static const std::vector<JournalCluster> clusters = {
        {"library_science",
         {"African Journal of Library Archives and Information Science",
          "Australian Library Journal",
          "College & Research Libraries",
          "Electronic Library",
          "Information Technology and Libraries",
          "Interlending & Document Supply",
          "International Information & Library Review",
          "Journal of Academic Librarianship",
          "Journal of Librarianship and Information Science",
          "Journal of Scholarly Publishing",
          "Law Library Journal",
          "Learned Publishing",
          "Library & Information Science Research",
          "Library and Information Science",
          "Library Collections Acquisitions & Technical Services",
          "Library Hi Tech",
          "Library Quarterly",
          "Library Resources & Technical Services",
          "Library Trends",
          "Libri",
          "Malaysian Journal of Library & Information Science",
          "Portal-Libraries and the Academy",
          "Program-Electronic Library and Information Systems",
          "Reference & User Services Quarterly",
          "Science & Technology Libraries",
          "Serials Librarian",
          "Serials Review"}},
        {"information_science",
         {"Annual Review of Information Science and Technology",
          "Aslib Proceedings",
          "Canadian Journal of Information and Library Science",
          "Information Processing & Management",
          "Information Research",
          "Journal of Documentation",
          "Journal of Information Science",
          "Journal of the American Society for Information Science",
          "Journal of the American Society for Information Science and Technology",
          "Knowledge Organization",
          "Online Information Review",
          "Perspectivas Em Ciencia Da Informacao",
          "Proceedings of the ASIST Annual Meeting",
          "Profesional De La Informacion"}},
        {"scientometrics",
         {"ASIST Monograph Series",
          "Australian Academic & Research Libraries",
          "Investigacion Bibliotecologica",
          "Journal of Informetrics",
          "Research Evaluation",
          "Revista Espanola De Documentacion Cientifica",
          "Scientometrics"}},
    };
    return clusters;
}

namespace {

SynthConfig lis_shaped(std::uint64_t seed, const std::array<double, 3>& densities) {
    constexpr std::size_t kPublications = 12202;
    SynthConfig config;
    config.seed = seed;
    config.single_field_name = "lis";
    config.institute_count = 300;
    config.institutes_per_pub_mean = 1.5;
    config.total_publications = kPublications;
    const auto& clusters = lis_journal_clusters();
    for (std::size_t c = 0; c < clusters.size(); ++c) {
        SubfieldSpec spec;
        spec.name = clusters[c].field_id;
        spec.journal_count = static_cast<int>(clusters[c].journals.size());
        spec.pubs_per_journal_mean = static_cast<double>(kPublications) / 48.0;
        spec.first_year = 2000;
        spec.last_year = 2009;
        spec.citation_density = densities[c];
        spec.within_subfield_fraction = 0.8;
        spec.journal_ids = clusters[c].journals;
        config.subfields.push_back(std::move(spec));
    }
    return config;
}

} // namespace

SynthConfig lis_preset(std::uint64_t seed) { return lis_shaped(seed, {2.0, 4.0, 6.0}); }

SynthConfig flat_preset(std::uint64_t seed) { return lis_shaped(seed, {4.0, 4.0, 4.0}); }

std::optional<SynthConfig> preset(const std::string& name, std::uint64_t seed) {
    if (name == "lis") {
        return lis_preset(seed);
    }
    if (name == "flat") {
        return flat_preset(seed);
    }
    return std::nullopt;
}

BiasReport measure_bias(const Dataset& dataset, const ClassificationScheme& scheme_single,
                        const ClassificationScheme& scheme_split, const RecursionConfig& config,
                        SelfCitationPolicy policy) {
    const CitationGraph graph = build_graph(dataset, policy);
    const Dataset single = dataset.with_scheme(scheme_single);
    const Dataset split = dataset.with_scheme(scheme_split);
    const RecursionResult res_single = run_recursion(graph, single, config);
    const RecursionResult res_split = run_recursion(graph, split, config);

    BiasReport report;
    report.converged_single = res_single.converged;
    report.converged_split = res_split.converged;
    report.final_order_single = res_single.final.order;
    report.final_order_split = res_split.final.order;

    const auto& journal_ids = dataset.journals();
    const auto journal_of = dataset.journal_of();

    // Subfield of a journal: split-scheme field of its first publication.
    std::vector<std::string> subfield_of_journal(journal_ids.size());
    std::vector<bool> seen(journal_ids.size(), false);
    for (std::size_t i = 0; i < dataset.size(); ++i) {
        const std::size_t j = journal_of[i];
        if (!seen[j]) {
            seen[j] = true;
            subfield_of_journal[j] = resolve_field(dataset.publication(i), scheme_split);
        }
    }

    std::map<std::string, SubfieldBias> by_subfield;
    for (std::size_t j = 0; j < journal_ids.size(); ++j) {
        report.journals.push_back({journal_ids[j], subfield_of_journal[j],
                                   res_single.first.journal_mncs[j],
                                   res_single.final.journal_mncs[j],
                                   res_split.first.journal_mncs[j],
                                   res_split.final.journal_mncs[j]});
        SubfieldBias& s = by_subfield[subfield_of_journal[j]];
        s.subfield = subfield_of_journal[j];
        ++s.journal_count;
        s.single_order1 += res_single.first.journal_mncs[j];
        s.single_final += res_single.final.journal_mncs[j];
        s.split_order1 += res_split.first.journal_mncs[j];
        s.split_final += res_split.final.journal_mncs[j];
    }
    for (std::size_t i = 0; i < dataset.size(); ++i) {
        SubfieldBias& s = by_subfield[resolve_field(dataset.publication(i), scheme_split)];
        ++s.publication_count;
        s.citation_density += static_cast<double>(graph.citers_of(i).size());
    }
    for (auto& [name, s] : by_subfield) {
        s.subfield = name;
        if (s.journal_count > 0) {
            const auto n = static_cast<double>(s.journal_count);
            s.single_order1 /= n;
            s.single_final /= n;
            s.split_order1 /= n;
            s.split_final /= n;
        }
        if (s.publication_count > 0) {
            s.citation_density /= static_cast<double>(s.publication_count);
        }
        report.subfields.push_back(s);
    }

    if (report.subfields.size() >= 2) {
        auto by_density = [](const SubfieldBias& a, const SubfieldBias& b) {
            return a.citation_density < b.citation_density;
        };
        const SubfieldBias& high = *std::ranges::max_element(report.subfields, by_density);
        const SubfieldBias& low = *std::ranges::min_element(report.subfields, by_density);
        report.high_density_subfield = high.subfield;
        report.low_density_subfield = low.subfield;
        if (high.subfield != low.subfield && low.single_order1 > 0.0 && low.single_final > 0.0 &&
            high.single_order1 > 0.0) {
            const double ratio_first = high.single_order1 / low.single_order1;
            const double ratio_final = high.single_final / low.single_final;
            report.amplification_ratio = ratio_final / ratio_first;
        }
    }
    return report;
}

} // namespace rmncs
