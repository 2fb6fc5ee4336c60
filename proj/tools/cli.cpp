#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>
#include <openssl/evp.h>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "rmncs/aggregation.hpp"
#include "rmncs/citation_graph.hpp"
#include "rmncs/csv.hpp"
#include "rmncs/dataset.hpp"
#include "rmncs/error.hpp"
#include "rmncs/recursion.hpp"
#include "rmncs/synth.hpp"

namespace rmncs::cli {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

class UsageError : public Error {
public:
    using Error::Error;
};

struct InputFlags {
    std::string publications;
    std::string citations;
    std::string affiliations;
    std::string authors;
    std::vector<std::string> schemes;
    std::string self_citations;
};

struct RecursionFlags {
    std::optional<int> order;
    bool converge = false;
    double tol = 1e-9;
    int max_iter = 100;
    bool require_convergence = false;
};

struct ComputeFlags {
    std::string unit = "journal";
    std::string counting = "fractional";
    double min_pubs = 0.0;
};

struct SynthFlags {
    std::optional<std::uint64_t> seed;
    std::string preset;
    std::string config;
};

std::string sha256_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw DataError("cannot read " + path.string());
    }
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
    EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr);
    std::vector<char> buffer(1 << 16);
    while (in) {
        in.read(buffer.data(), static_cast<std::streamsize>(buffer.size()));
        EVP_DigestUpdate(ctx.get(), buffer.data(), static_cast<std::size_t>(in.gcount()));
    }
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int length = 0;
    EVP_DigestFinal_ex(ctx.get(), digest, &length);
    std::ostringstream hex;
    for (unsigned int i = 0; i < length; ++i) {
        hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
    }
    return hex.str();
}

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::ostringstream out;
    out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return out.str();
}

json file_entry(const std::string& role, const fs::path& path) {
    return json{{"role", role}, {"path", path.string()}, {"sha256", sha256_file(path)}};
}

void write_manifest(const fs::path& path, json manifest) {
    manifest["tool"] = "rmncs";
    manifest["version"] = kToolVersion;
    manifest["timestamp"] = utc_timestamp();
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw DataError("cannot write " + path.string());
    }
    out << manifest.dump(2) << '\n';
}

std::ofstream open_output(const fs::path& path) {
    if (path.has_parent_path()) {
        fs::create_directories(path.parent_path());
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw DataError("cannot write " + path.string());
    }
    return out;
}

void add_input_flags(CLI::App& cmd, InputFlags& in, bool multiple_schemes) {
    cmd.add_option("--publications", in.publications, "publications.csv")->required();
    cmd.add_option("--citations", in.citations, "citations.csv")->required();
    cmd.add_option("--affiliations", in.affiliations, "affiliations.csv");
    cmd.add_option("--authors", in.authors, "authors.csv");
    auto* scheme = cmd.add_option("--scheme", in.schemes,
                                  multiple_schemes ? "scheme A then scheme B (give twice)"
                                                   : "scheme.csv")
                       ->required();
    scheme->expected(1)->multi_option_policy(multiple_schemes ? CLI::MultiOptionPolicy::TakeAll
                                                              : CLI::MultiOptionPolicy::Throw);
    cmd.add_option("--self-citations", in.self_citations, "none|author|institute")
        ->check(CLI::IsMember({"none", "author", "institute"}));
}

void add_recursion_flags(CLI::App& cmd, RecursionFlags& rec) {
    auto* order = cmd.add_option("--order", rec.order, "compute exactly N orders")
                      ->check(CLI::PositiveNumber);
    auto* converge = cmd.add_flag("--converge", rec.converge, "iterate until converged (default)");
    order->excludes(converge);
    converge->excludes(order);
    cmd.add_option("--tol", rec.tol, "relative convergence tolerance")->check(CLI::PositiveNumber);
    cmd.add_option("--max-iter", rec.max_iter, "maximum number of orders")->check(CLI::PositiveNumber);
    cmd.add_flag("--require-convergence", rec.require_convergence,
                 "exit with code 3 when the recursion did not converge");
}

DatasetFiles dataset_files(const InputFlags& in, const std::string& scheme) {
    DatasetFiles files;
    files.publications = in.publications;
    files.citations = in.citations;
    if (!in.affiliations.empty()) {
        files.affiliations = fs::path(in.affiliations);
    }
    if (!in.authors.empty()) {
        files.authors = fs::path(in.authors);
    }
    files.scheme = scheme;
    return files;
}

json input_entries(const InputFlags& in) {
    json inputs = json::array();
    inputs.push_back(file_entry("publications", in.publications));
    inputs.push_back(file_entry("citations", in.citations));
    if (!in.affiliations.empty()) {
        inputs.push_back(file_entry("affiliations", in.affiliations));
    }
    if (!in.authors.empty()) {
        inputs.push_back(file_entry("authors", in.authors));
    }
    for (std::size_t i = 0; i < in.schemes.size(); ++i) {
        inputs.push_back(file_entry(in.schemes.size() == 1 ? "scheme" : (i == 0 ? "scheme_a" : "scheme_b"),
                                    in.schemes[i]));
    }
    return inputs;
}

SelfCitationPolicy resolve_policy(const InputFlags& in, const Dataset& dataset) {
    if (in.self_citations.empty()) {
        return default_policy(dataset);
    }
    return *parse_self_citation_policy(in.self_citations);
}

RecursionConfig recursion_config(const RecursionFlags& rec, bool track_history = false) {
    RecursionConfig config;
    config.target_order = rec.order;
    config.convergence_tolerance = rec.tol;
    config.max_iterations = rec.max_iter;
    config.track_history = track_history;
    return config;
}

json recursion_json(const RecursionFlags& rec) {
    json j;
    if (rec.order) {
        j["mode"] = "order";
        j["order"] = *rec.order;
    } else {
        j["mode"] = "converge";
    }
    j["tolerance"] = rec.tol;
    j["max_iterations"] = rec.max_iter;
    return j;
}

std::string optional_number(const std::optional<double>& v) {
    return v ? csv::format_double(*v) : std::string("undefined");
}

void log_report(const Dataset& dataset, const CitationGraph& graph) {
    const IngestionReport& r = dataset.report();
    spdlog::info("loaded {} publications, {} citations ({} out of set, {} self pairs, {} duplicates dropped); "
                 "{} removed by self-citation policy '{}'",
                 dataset.size(), dataset.citations().size(), r.citations_out_of_set,
                 r.self_citation_pairs, r.duplicate_citations, graph.filtered_count(),
                 to_string(graph.policy()));
}

int cmd_compute(const InputFlags& in, const RecursionFlags& rec, const ComputeFlags& cf,
                const fs::path& out_path) {
    const UnitKind unit = *parse_unit_kind(cf.unit);
    const CountingMode counting = *parse_counting_mode(cf.counting);
    if (cf.min_pubs < 0.0) {
        throw UsageError("--min-pubs must be non-negative");
    }
    if (unit == UnitKind::institute && in.affiliations.empty()) {
        throw UsageError("--unit institute needs --affiliations");
    }

    const Dataset dataset = load_dataset(dataset_files(in, in.schemes.front()));
    const SelfCitationPolicy policy = resolve_policy(in, dataset);
    const CitationGraph graph = build_graph(dataset, policy);
    log_report(dataset, graph);
    const RecursionResult result = run_recursion(graph, dataset, recursion_config(rec));

    const auto scores = unit == UnitKind::journal ? journal_unit_scores(dataset, result)
                                                  : institute_unit_scores(dataset, result, counting);
    const RankingTable table = rank_units(scores, unit, cf.min_pubs, result.final.order);

    {
        auto out = open_output(out_path);
        csv::write_row(out, {"rank", "unit_id", "effective_pubs", "mncs_order_1", "mncs_order_final"});
        for (const auto& row : table.rows) {
            csv::write_row(out, {std::to_string(row.rank), row.unit_id,
                                 csv::format_double(row.effective_count),
                                 csv::format_double(row.score_by_order.at(result.first.order)),
                                 csv::format_double(row.score_by_order.at(result.final.order))});
        }
    }

    json manifest;
    manifest["command"] = "compute";
    manifest["inputs"] = input_entries(in);
    manifest["scheme"] = dataset.scheme().name;
    manifest["self_citations"] = to_string(policy);
    manifest["unit"] = to_string(unit);
    manifest["counting"] = to_string(counting);
    manifest["min_pubs"] = cf.min_pubs;
    manifest["recursion"] = recursion_json(rec);
    manifest["final_order"] = result.final.order;
    manifest["converged"] = result.converged;
    manifest["outputs"] = json::array({file_entry("ranking", out_path)});
    write_manifest(out_path.string() + ".manifest.json", manifest);

    return rec.require_convergence && !result.converged ? kNotConverged : kOk;
}

int cmd_converge(const InputFlags& in, const RecursionFlags& rec, const fs::path& out_path) {
    const Dataset dataset = load_dataset(dataset_files(in, in.schemes.front()));
    const SelfCitationPolicy policy = resolve_policy(in, dataset);
    const CitationGraph graph = build_graph(dataset, policy);
    log_report(dataset, graph);
    const RecursionResult result = run_recursion(graph, dataset, recursion_config(rec));

    {
        auto out = open_output(out_path);
        csv::write_row(out, {"order", "max_abs_delta", "max_rel_delta"});
        csv::write_row(out, {std::to_string(result.first.order), "", ""});
        for (const auto& d : result.deltas) {
            csv::write_row(out, {std::to_string(d.order), csv::format_double(d.max_abs),
                                 csv::format_double(d.max_rel)});
        }
        csv::write_row(out, {"converged", result.converged ? "true" : "false"});
    }
    spdlog::info("final order {}, converged={}", result.final.order, result.converged);

    json manifest;
    manifest["command"] = "converge";
    manifest["inputs"] = input_entries(in);
    manifest["scheme"] = dataset.scheme().name;
    manifest["self_citations"] = to_string(policy);
    manifest["recursion"] = recursion_json(rec);
    manifest["final_order"] = result.final.order;
    manifest["converged"] = result.converged;
    manifest["outputs"] = json::array({file_entry("convergence", out_path)});
    write_manifest(out_path.string() + ".manifest.json", manifest);

    return rec.require_convergence && !result.converged ? kNotConverged : kOk;
}

int cmd_compare(const InputFlags& in, const RecursionFlags& rec, const fs::path& out_path) {
    if (in.schemes.size() != 2) {
        throw UsageError("compare needs exactly two --scheme files (A then B)");
    }
    const Dataset dataset = load_dataset(dataset_files(in, in.schemes[0]));
    const ClassificationScheme scheme_b = load_scheme(in.schemes[1]);
    const SelfCitationPolicy policy = resolve_policy(in, dataset);
    const BiasReport report =
        measure_bias(dataset, dataset.scheme(), scheme_b, recursion_config(rec), policy);

    {
        auto out = open_output(out_path);
        csv::write_row(out, {"journal_id", "subfield", "mncs_a_order1", "mncs_a_final",
                             "mncs_b_order1", "mncs_b_final"});
        for (const auto& j : report.journals) {
            csv::write_row(out, {j.journal_id, j.subfield, csv::format_double(j.single_order1),
                                 csv::format_double(j.single_final),
                                 csv::format_double(j.split_order1),
                                 csv::format_double(j.split_final)});
        }
        out << '\n';
        csv::write_row(out, {"subfield", "journals", "publications", "citation_density",
                             "mean_a_order1", "mean_a_final", "mean_b_order1", "mean_b_final"});
        for (const auto& s : report.subfields) {
            csv::write_row(out, {s.subfield, std::to_string(s.journal_count),
                                 std::to_string(s.publication_count),
                                 csv::format_double(s.citation_density),
                                 csv::format_double(s.single_order1),
                                 csv::format_double(s.single_final),
                                 csv::format_double(s.split_order1),
                                 csv::format_double(s.split_final)});
        }
        out << '\n';
        csv::write_row(out, {"key", "value"});
        csv::write_row(out, {"high_density_subfield", report.high_density_subfield});
        csv::write_row(out, {"low_density_subfield", report.low_density_subfield});
        csv::write_row(out, {"amplification_ratio", optional_number(report.amplification_ratio)});
        csv::write_row(out, {"final_order_a", std::to_string(report.final_order_single)});
        csv::write_row(out, {"final_order_b", std::to_string(report.final_order_split)});
        csv::write_row(out, {"converged_a", report.converged_single ? "true" : "false"});
        csv::write_row(out, {"converged_b", report.converged_split ? "true" : "false"});
    }

    json manifest;
    manifest["command"] = "compare";
    manifest["inputs"] = input_entries(in);
    manifest["scheme_a"] = dataset.scheme().name;
    manifest["scheme_b"] = scheme_b.name;
    manifest["self_citations"] = to_string(policy);
    manifest["recursion"] = recursion_json(rec);
    manifest["converged_a"] = report.converged_single;
    manifest["converged_b"] = report.converged_split;
    manifest["outputs"] = json::array({file_entry("compare", out_path)});
    write_manifest(out_path.string() + ".manifest.json", manifest);

    const bool converged = report.converged_single && report.converged_split;
    return rec.require_convergence && !converged ? kNotConverged : kOk;
}

SynthConfig synth_config_from_json(const json& j) {
    SynthConfig config;
    config.seed = j.value("seed", std::uint64_t{0});
    config.institute_count = j.value("institute_count", 1);
    config.institutes_per_pub_mean = j.value("institutes_per_pub_mean", 1.0);
    config.single_field_name = j.value("single_field_name", std::string("all"));
    if (j.contains("total_publications")) {
        config.total_publications = j.at("total_publications").get<std::size_t>();
    }
    for (const auto& s : j.at("subfields")) {
        SubfieldSpec spec;
        spec.name = s.at("name").get<std::string>();
        spec.journal_count = s.value("journal_count", 1);
        spec.pubs_per_journal_mean = s.value("pubs_per_journal_mean", 100.0);
        if (s.contains("years")) {
            spec.first_year = s.at("years").at(0).get<int>();
            spec.last_year = s.at("years").at(1).get<int>();
        }
        spec.citation_density = s.value("citation_density", 1.0);
        spec.within_subfield_fraction = s.value("within_subfield_fraction", 0.8);
        spec.journal_ids = s.value("journal_ids", std::vector<std::string>{});
        config.subfields.push_back(std::move(spec));
    }
    return config;
}

json synth_config_to_json(const SynthConfig& config) {
    json j;
    j["seed"] = config.seed;
    j["institute_count"] = config.institute_count;
    j["institutes_per_pub_mean"] = config.institutes_per_pub_mean;
    j["single_field_name"] = config.single_field_name;
    if (config.total_publications) {
        j["total_publications"] = *config.total_publications;
    }
    j["subfields"] = json::array();
    for (const auto& s : config.subfields) {
        j["subfields"].push_back({{"name", s.name},
                                  {"journal_count", s.journal_count},
                                  {"pubs_per_journal_mean", s.pubs_per_journal_mean},
                                  {"years", {s.first_year, s.last_year}},
                                  {"citation_density", s.citation_density},
                                  {"within_subfield_fraction", s.within_subfield_fraction}});
    }
    return j;
}

int cmd_synth(const SynthFlags& sf, const fs::path& out_dir) {
    if (sf.preset.empty() == sf.config.empty()) {
        throw UsageError("synth needs exactly one of --preset or --config");
    }
    SynthConfig config;
    if (!sf.preset.empty()) {
        auto p = preset(sf.preset, sf.seed.value_or(0));
        if (!p) {
            throw UsageError("unknown preset '" + sf.preset + "' (known: lis, flat)");
        }
        config = std::move(*p);
    } else {
        std::ifstream in(sf.config);
        if (!in) {
            throw UsageError("cannot read config " + sf.config);
        }
        try {
            config = synth_config_from_json(json::parse(in));
        } catch (const json::exception& e) {
            throw UsageError("invalid config " + sf.config + ": " + e.what());
        }
        if (sf.seed) {
            config.seed = *sf.seed;
        }
    }

    SynthCorpus corpus = [&] {
        try {
            return generate(config);
        } catch (const ConfigError& e) {
            throw UsageError(e.what());
        }
    }();
    write_dataset(corpus.dataset, out_dir);
    write_scheme(corpus.single_field, out_dir / "scheme_single.csv");
    write_scheme(corpus.split, out_dir / "scheme_split.csv");
    spdlog::info("generated {} publications, {} citations in {}", corpus.dataset.size(),
                 corpus.dataset.citations().size(), out_dir.string());

    json manifest;
    manifest["command"] = "synth";
    manifest["preset"] = sf.preset;
    manifest["config"] = synth_config_to_json(config);
    manifest["rng"] = "rmncs-synth v1 (mt19937_64)";
    json outputs = json::array();
    for (const char* name : {"publications.csv", "citations.csv", "affiliations.csv",
                             "scheme_single.csv", "scheme_split.csv"}) {
        outputs.push_back(file_entry(name, out_dir / name));
    }
    manifest["outputs"] = outputs;
    write_manifest(out_dir / "manifest.json", manifest);
    return kOk;
}

} // namespace

void configure_logging() {
    auto logger = spdlog::stderr_color_mt("rmncs");
    spdlog::set_default_logger(logger);
    spdlog::set_pattern("%l: %v");
    spdlog::level::level_enum level = spdlog::level::warn;
    if (const char* env = std::getenv("RMNCS_LOG")) {
        const std::string value = env;
        if (value == "error") {
            level = spdlog::level::err;
        } else if (value == "warn") {
            level = spdlog::level::warn;
        } else if (value == "info") {
            level = spdlog::level::info;
        } else if (value == "debug") {
            level = spdlog::level::debug;
        }
    }
    spdlog::set_level(level);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Recursive mean normalized citation score (MNCS) toolkit", "rmncs"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolVersion);

    InputFlags in;
    RecursionFlags rec;
    ComputeFlags cf;
    SynthFlags sf;
    std::string out_path;

    auto* compute = app.add_subcommand("compute", "rank journals or institutes");
    add_input_flags(*compute, in, false);
    add_recursion_flags(*compute, rec);
    compute->add_option("--unit", cf.unit, "journal|institute")
        ->check(CLI::IsMember({"journal", "institute"}));
    compute->add_option("--counting", cf.counting, "fractional|full")
        ->check(CLI::IsMember({"fractional", "full"}));
    compute->add_option("--min-pubs", cf.min_pubs, "minimum effective publication count");
    compute->add_option("--out", out_path, "ranking CSV path")->default_val("ranking.csv");

    auto* converge = app.add_subcommand("converge", "report per-order convergence deltas");
    add_input_flags(*converge, in, false);
    add_recursion_flags(*converge, rec);
    converge->add_option("--out", out_path, "convergence CSV path")->default_val("convergence.csv");

    auto* compare = app.add_subcommand("compare", "compare journal MNCS under two schemes");
    add_input_flags(*compare, in, true);
    add_recursion_flags(*compare, rec);
    compare->add_option("--out", out_path, "comparison CSV path")->default_val("compare.csv");

    auto* synth = app.add_subcommand("synth", "generate a synthetic corpus");
    synth->add_option("--seed", sf.seed, "64-bit seed");
    synth->add_option("--preset", sf.preset, "lis|flat");
    synth->add_option("--config", sf.config, "JSON synth config");
    synth->add_option("--out", out_path, "output directory")->default_val(".");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::CallForVersion&) {
        out << kToolVersion << '\n';
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    }

    try {
        if (*compute) {
            return cmd_compute(in, rec, cf, out_path);
        }
        if (*converge) {
            return cmd_converge(in, rec, out_path);
        }
        if (*compare) {
            return cmd_compare(in, rec, out_path);
        }
        return cmd_synth(sf, out_path);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const DataError& e) {
        err << "error: " << e.what() << '\n';
        return kDataError;
    } catch (const NumericError& e) {
        err << "error: " << e.what() << '\n';
        return kDataError;
    } catch (const fs::filesystem_error& e) {
        err << "error: " << e.what() << '\n';
        return kDataError;
    }
}

} // namespace rmncs::cli
