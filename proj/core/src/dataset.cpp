#include "rmncs/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>

#include "rmncs/csv.hpp"
#include "rmncs/error.hpp"

namespace rmncs {

namespace {

template <class T>
std::vector<T> sorted_unique(std::vector<T> values) {
    std::ranges::sort(values);
    const auto tail = std::ranges::unique(values);
    values.erase(tail.begin(), tail.end());
    return values;
}

std::size_t position_in(const auto& sorted, const auto& key) {
    return static_cast<std::size_t>(std::ranges::lower_bound(sorted, key) - sorted.begin());
}

[[noreturn]] void row_error(const csv::Table& table, const csv::Record& row, const std::string& what) {
    throw DataError(table.source() + ":" + std::to_string(row.line) + ": " + what);
}

const std::string& require_value(const csv::Table& table, const csv::Record& row,
                                 std::string_view column) {
    const std::string& value = table.get(row, column);
    if (value.empty()) {
        row_error(table, row, "empty " + std::string(column));
    }
    return value;
}

int parse_year(const csv::Table& table, const csv::Record& row) {
    const std::string& text = require_value(table, row, "year");
    int year = 0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), year);
    if (ec != std::errc{} || end != text.data() + text.size()) {
        row_error(table, row, "year '" + text + "' is not an integer");
    }
    return year;
}

std::ofstream open_for_write(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw DataError("cannot write " + path.string());
    }
    return out;
}

} // namespace

const std::string& resolve_field(const Publication& pub, const ClassificationScheme& scheme) {
    if (pub.field_id && !pub.field_id->empty()) {
        return *pub.field_id;
    }
    const auto it = scheme.journal_to_field.find(pub.journal_id);
    if (it == scheme.journal_to_field.end()) {
        throw DataError("publication '" + pub.pub_id + "': journal '" + pub.journal_id +
                        "' has no field in scheme '" + scheme.name + "'");
    }
    return it->second;
}

Dataset Dataset::create(std::vector<Publication> publications,
                        const std::vector<std::pair<std::string, std::string>>& citations,
                        ClassificationScheme scheme, bool has_affiliations, bool has_authors,
                        IngestionReport report) {
    Dataset ds;
    ds.publications_ = std::move(publications);
    ds.scheme_ = std::move(scheme);
    ds.has_affiliations_ = has_affiliations;
    ds.has_authors_ = has_authors;

    ds.index_.reserve(ds.publications_.size());
    for (std::size_t i = 0; i < ds.publications_.size(); ++i) {
        const Publication& pub = ds.publications_[i];
        if (pub.pub_id.empty()) {
            throw DataError("publication at position " + std::to_string(i) + " has an empty pub_id");
        }
        if (!ds.index_.emplace(pub.pub_id, i).second) {
            throw DataError("duplicate pub_id '" + pub.pub_id + "'");
        }
        if (sorted_unique(pub.institute_ids).size() != pub.institute_ids.size()) {
            throw DataError("publication '" + pub.pub_id + "' lists an institute twice");
        }
        if (sorted_unique(pub.author_ids).size() != pub.author_ids.size()) {
            throw DataError("publication '" + pub.pub_id + "' lists an author twice");
        }
    }

    std::vector<CitationPair> pairs;
    pairs.reserve(citations.size());
    for (const auto& [citing, cited] : citations) {
        const auto from = ds.index_of(citing);
        const auto to = ds.index_of(cited);
        if (!from || !to) {
            ++report.citations_out_of_set;
            continue;
        }
        if (*from == *to) {
            ++report.self_citation_pairs;
            continue;
        }
        pairs.push_back({*from, *to});
    }
    const std::size_t before = pairs.size();
    ds.citations_ = sorted_unique(std::move(pairs));
    report.duplicate_citations += before - ds.citations_.size();
    ds.report_ = report;

    std::vector<std::string> journals;
    journals.reserve(ds.publications_.size());
    for (const auto& pub : ds.publications_) {
        journals.push_back(pub.journal_id);
    }
    ds.journals_ = sorted_unique(std::move(journals));
    ds.journal_of_.reserve(ds.publications_.size());
    for (const auto& pub : ds.publications_) {
        ds.journal_of_.push_back(position_in(ds.journals_, pub.journal_id));
    }

    ds.index_strata();
    return ds;
}

void Dataset::index_strata() {
    std::vector<Stratum> per_pub;
    per_pub.reserve(publications_.size());
    for (const auto& pub : publications_) {
        per_pub.push_back({resolve_field(pub, scheme_), pub.year});
    }
    strata_ = sorted_unique(per_pub);
    stratum_of_.clear();
    stratum_of_.reserve(per_pub.size());
    for (const auto& s : per_pub) {
        stratum_of_.push_back(position_in(strata_, s));
    }
}

Dataset Dataset::with_scheme(ClassificationScheme scheme) const {
    Dataset copy = *this;
    copy.scheme_ = std::move(scheme);
    copy.index_strata();
    return copy;
}

std::optional<std::size_t> Dataset::index_of(const std::string& pub_id) const {
    const auto it = index_.find(pub_id);
    if (it == index_.end()) {
        return std::nullopt;
    }
    return it->second;
}

std::vector<std::string> Dataset::institutes() const {
    std::vector<std::string> all;
    for (const auto& pub : publications_) {
        all.insert(all.end(), pub.institute_ids.begin(), pub.institute_ids.end());
    }
    return sorted_unique(std::move(all));
}

ClassificationScheme load_scheme(const std::filesystem::path& path) {
    csv::Table table(csv::read_file(path), path.string(), {"journal_id", "field_id"});
    ClassificationScheme scheme;
    scheme.name = path.stem().string();
    for (const auto& row : table.rows()) {
        const std::string& journal = require_value(table, row, "journal_id");
        const std::string& field = require_value(table, row, "field_id");
        const auto [it, inserted] = scheme.journal_to_field.emplace(journal, field);
        if (!inserted && it->second != field) {
            row_error(table, row,
                      "journal '" + journal + "' assigned to both '" + it->second + "' and '" +
                          field + "'; fields must not overlap");
        }
    }
    return scheme;
}

Dataset load_dataset(const DatasetFiles& files) {
    ClassificationScheme scheme = load_scheme(files.scheme);

    csv::Table pubs(csv::read_file(files.publications), files.publications.string(),
                    {"pub_id", "journal_id", "year"}, {"field_id"});
    std::vector<Publication> publications;
    publications.reserve(pubs.rows().size());
    std::unordered_map<std::string, std::size_t> index;
    for (const auto& row : pubs.rows()) {
        Publication pub;
        pub.pub_id = require_value(pubs, row, "pub_id");
        pub.journal_id = require_value(pubs, row, "journal_id");
        pub.year = parse_year(pubs, row);
        if (const std::string& field = pubs.get(row, "field_id"); !field.empty()) {
            pub.field_id = field;
        }
        if (!index.emplace(pub.pub_id, publications.size()).second) {
            row_error(pubs, row, "duplicate pub_id '" + pub.pub_id + "'");
        }
        if (!pub.field_id && !scheme.journal_to_field.contains(pub.journal_id)) {
            row_error(pubs, row,
                      "journal '" + pub.journal_id + "' of publication '" + pub.pub_id +
                          "' has no field in scheme '" + scheme.name +
                          "' and the publication has no field_id");
        }
        publications.push_back(std::move(pub));
    }

    IngestionReport report;

    // Attaches (pub_id, value) rows to each publication's list, deduplicating.
    auto attach = [&](const std::filesystem::path& path, const char* column,
                      std::vector<std::string> Publication::*member, std::size_t& duplicates) {
        csv::Table table(csv::read_file(path), path.string(), {"pub_id", column});
        std::set<std::pair<std::size_t, std::string>> seen;
        for (const auto& row : table.rows()) {
            const std::string& pub_id = require_value(table, row, "pub_id");
            const std::string& value = require_value(table, row, column);
            const auto it = index.find(pub_id);
            if (it == index.end()) {
                row_error(table, row, "unknown pub_id '" + pub_id + "'");
            }
            if (!seen.emplace(it->second, value).second) {
                ++duplicates;
                continue;
            }
            (publications[it->second].*member).push_back(value);
        }
    };
    if (files.affiliations) {
        attach(*files.affiliations, "institute_id", &Publication::institute_ids,
               report.duplicate_affiliations);
    }
    if (files.authors) {
        attach(*files.authors, "author_id", &Publication::author_ids, report.duplicate_authors);
    }

    csv::Table cites(csv::read_file(files.citations), files.citations.string(),
                     {"citing_pub_id", "cited_pub_id"});
    std::vector<std::pair<std::string, std::string>> citations;
    citations.reserve(cites.rows().size());
    for (const auto& row : cites.rows()) {
        citations.emplace_back(require_value(cites, row, "citing_pub_id"),
                               require_value(cites, row, "cited_pub_id"));
    }

    return Dataset::create(std::move(publications), citations, std::move(scheme),
                           files.affiliations.has_value(), files.authors.has_value(), report);
}

std::map<std::string, Stratum> assign_strata(const Dataset& dataset) {
    std::map<std::string, Stratum> out;
    const auto stratum_of = dataset.stratum_of();
    for (std::size_t i = 0; i < dataset.size(); ++i) {
        out.emplace(dataset.publication(i).pub_id, dataset.strata()[stratum_of[i]]);
    }
    return out;
}

void write_dataset(const Dataset& dataset, const std::filesystem::path& directory) {
    std::filesystem::create_directories(directory);

    auto pubs = open_for_write(directory / "publications.csv");
    csv::write_row(pubs, {"pub_id", "journal_id", "year", "field_id"});
    for (const auto& pub : dataset.publications()) {
        csv::write_row(pubs, {pub.pub_id, pub.journal_id, std::to_string(pub.year),
                              pub.field_id.value_or("")});
    }

    auto cites = open_for_write(directory / "citations.csv");
    csv::write_row(cites, {"citing_pub_id", "cited_pub_id"});
    for (const auto& c : dataset.citations()) {
        csv::write_row(cites, {dataset.publication(c.citing).pub_id,
                               dataset.publication(c.cited).pub_id});
    }

    auto affs = open_for_write(directory / "affiliations.csv");
    csv::write_row(affs, {"pub_id", "institute_id"});
    for (const auto& pub : dataset.publications()) {
        for (const auto& inst : pub.institute_ids) {
            csv::write_row(affs, {pub.pub_id, inst});
        }
    }

    if (dataset.has_authors()) {
        auto authors = open_for_write(directory / "authors.csv");
        csv::write_row(authors, {"pub_id", "author_id"});
        for (const auto& pub : dataset.publications()) {
            for (const auto& author : pub.author_ids) {
                csv::write_row(authors, {pub.pub_id, author});
            }
        }
    }
}

void write_scheme(const ClassificationScheme& scheme, const std::filesystem::path& path) {
    auto out = open_for_write(path);
    csv::write_row(out, {"journal_id", "field_id"});
    for (const auto& [journal, field] : scheme.journal_to_field) {
        csv::write_row(out, {journal, field});
    }
}

} // namespace rmncs
