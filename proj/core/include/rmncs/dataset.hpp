#ifndef RMNCS_DATASET_HPP_
#define RMNCS_DATASET_HPP_

#include <compare>
#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace rmncs {

struct Publication {
    std::string pub_id;
    std::string journal_id;
    int year = 0;
    /// Publication-level field; takes precedence over the scheme's journal
    /// mapping when set.
    std::optional<std::string> field_id;
    std::vector<std::string> institute_ids;
    std::vector<std::string> author_ids;

    bool operator==(const Publication&) const = default;
};

/// Assignment of journals to non-overlapping fields.
struct ClassificationScheme {
    std::string name;
    std::map<std::string, std::string> journal_to_field;
};

/// Normalization reference set: a field in a given publication year.
struct Stratum {
    std::string field_id;
    int year = 0;

    auto operator<=>(const Stratum&) const = default;
};

/// Rows removed or collapsed while building a Dataset.
struct IngestionReport {
    std::size_t citations_out_of_set = 0;
    std::size_t self_citation_pairs = 0;
    std::size_t duplicate_citations = 0;
    std::size_t duplicate_affiliations = 0;
    std::size_t duplicate_authors = 0;

    bool operator==(const IngestionReport&) const = default;
};

/// Citation between two publications, as dense indices into
/// Dataset::publications().
struct CitationPair {
    std::size_t citing = 0;
    std::size_t cited = 0;

    auto operator<=>(const CitationPair&) const = default;
};

/// A validated closed corpus. Immutable once built.
///
/// Publications keep their input order; that order defines the dense index
/// used throughout the engine. Journals and strata are indexed by their
/// position in the sorted lists journals() and strata().
class Dataset {
public:
    /// Validates and builds a dataset.
    ///
    /// Citations whose endpoints are not both in `publications` are dropped
    /// (closed set), (A, A) pairs are dropped, duplicate pairs collapse to
    /// one; all three are counted in the report. Throws DataError on a
    /// duplicate pub_id, duplicate institute/author on one publication, or
    /// a publication whose field cannot be resolved.
    static Dataset create(std::vector<Publication> publications,
                          const std::vector<std::pair<std::string, std::string>>& citations,
                          ClassificationScheme scheme,
                          bool has_affiliations = false,
                          bool has_authors = false,
                          IngestionReport report = {});

    /// Same corpus under another classification scheme.
    Dataset with_scheme(ClassificationScheme scheme) const;

    std::size_t size() const { return publications_.size(); }
    const std::vector<Publication>& publications() const { return publications_; }
    const Publication& publication(std::size_t index) const { return publications_.at(index); }
    std::optional<std::size_t> index_of(const std::string& pub_id) const;

    /// Sorted by (citing, cited).
    const std::vector<CitationPair>& citations() const { return citations_; }

    const ClassificationScheme& scheme() const { return scheme_; }
    const IngestionReport& report() const { return report_; }
    bool has_affiliations() const { return has_affiliations_; }
    bool has_authors() const { return has_authors_; }

    const std::vector<std::string>& journals() const { return journals_; }
    std::span<const std::size_t> journal_of() const { return journal_of_; }

    const std::vector<Stratum>& strata() const { return strata_; }
    std::span<const std::size_t> stratum_of() const { return stratum_of_; }

    /// Sorted unique institute IDs across all publications.
    std::vector<std::string> institutes() const;

private:
    Dataset() = default;
    void index_strata();

    std::vector<Publication> publications_;
    std::unordered_map<std::string, std::size_t> index_;
    std::vector<CitationPair> citations_;
    ClassificationScheme scheme_;
    IngestionReport report_;
    bool has_affiliations_ = false;
    bool has_authors_ = false;

    std::vector<std::string> journals_;
    std::vector<std::size_t> journal_of_;
    std::vector<Stratum> strata_;
    std::vector<std::size_t> stratum_of_;
};

struct DatasetFiles {
    std::filesystem::path publications;
    std::filesystem::path citations;
    std::optional<std::filesystem::path> affiliations;
    std::optional<std::filesystem::path> authors;
    std::filesystem::path scheme;
};

/// Reads a scheme CSV (`journal_id,field_id`). The scheme name is the file
/// stem. A journal listed twice with different fields is a DataError.
ClassificationScheme load_scheme(const std::filesystem::path& path);

/// Reads and validates a corpus from the CSV files described in the README.
/// Structural problems are fatal (DataError with file and line); citations
/// leaving the corpus are dropped and counted.
Dataset load_dataset(const DatasetFiles& files);

/// Field for a publication: its own field_id if present, else the scheme's
/// mapping of its journal. Throws DataError when neither exists.
const std::string& resolve_field(const Publication& pub, const ClassificationScheme& scheme);

/// Stratum (field, year) of every publication, keyed by pub_id.
std::map<std::string, Stratum> assign_strata(const Dataset& dataset);

/// Writes publications.csv, citations.csv, affiliations.csv and, when the
/// dataset carries author data, authors.csv into `directory`.
void write_dataset(const Dataset& dataset, const std::filesystem::path& directory);

void write_scheme(const ClassificationScheme& scheme, const std::filesystem::path& path);

} // namespace rmncs

#endif // RMNCS_DATASET_HPP_
