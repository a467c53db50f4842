#include "lifespan/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include <CLI11.hpp>
#include <json.hpp>

#include "lifespan/csv.hpp"
#include "lifespan/features.hpp"
#include "lifespan/ingest.hpp"
#include "lifespan/lifespan.hpp"
#include "lifespan/model.hpp"
#include "lifespan/parallel.hpp"
#include "lifespan/reference.hpp"
#include "lifespan/syngen.hpp"
#include "lifespan/validate.hpp"

namespace lifespan {

namespace {

namespace fs = std::filesystem;

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open input file: " + path);
    return in;
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open output file: " + path.string());
    out << content;
    if (!out.good()) throw IoError("failed writing: " + path.string());
}

// ---------------------------------------------------------------------------
// shared option bundles

struct InputOptions {
    std::string projects_path;
    std::string commits_path;
    std::string developers_path;
    std::string ids_path;  // optional restriction to a filter output
};

void add_input_options(CLI::App* cmd, InputOptions& opts, bool developers_required) {
    cmd->add_option("--projects", opts.projects_path, "projects JSONL file")->required();
    cmd->add_option("--commits", opts.commits_path, "commits JSONL file")->required();
    auto* dev = cmd->add_option("--developers", opts.developers_path, "developers JSONL file");
    if (developers_required) dev->required();
    cmd->add_option("--ids", opts.ids_path,
                    "only analyze the project ids listed in this file (one per line)");
}

struct GapOptions {
    int threshold = 6;
    bool exclusive = false;

    GapPolicy policy() const { return {threshold, exclusive}; }
};

void add_gap_options(CLI::App* cmd, GapOptions& opts) {
    cmd->add_option("--gap-threshold", opts.threshold,
                    "commit gaps longer than this many days count as non-working")
        ->default_val(6);
    cmd->add_flag("--gap-exclusive", opts.exclusive,
                  "count a gap as its interior days only (gap length minus one)");
}

struct AggOption {
    std::string name = "sum";

    FollowerAggregation value() const {
        if (name == "mean") return FollowerAggregation::mean;
        if (name == "max") return FollowerAggregation::max;
        return FollowerAggregation::sum;
    }
};

void add_agg_option(CLI::App* cmd, AggOption& opt) {
    cmd->add_option("--follower-agg", opt.name, "aggregate developer followers into m")
        ->check(CLI::IsMember({"sum", "mean", "max"}))
        ->default_val("sum");
}

struct QuantileOption {
    std::string name = "linear";

    QuantileMethod value() const {
        return name == "nearest" ? QuantileMethod::nearest_rank
                                 : QuantileMethod::linear_interpolation;
    }
};

void add_quantile_option(CLI::App* cmd, QuantileOption& opt) {
    cmd->add_option("--quantile-method", opt.name, "quartile rule for the language table")
        ->check(CLI::IsMember({"linear", "nearest"}))
        ->default_val("linear");
}

// ---------------------------------------------------------------------------
// dataset loading

struct Dataset {
    std::vector<ProjectRecord> projects;
    std::map<std::string, CommitTimeline> timelines;
    std::map<std::string, DeveloperProfile> developers;
};

Dataset load_dataset(const InputOptions& opts, bool with_developers) {
    Dataset data;
    {
        auto in = open_input(opts.projects_path);
        data.projects = parse_projects(in);
    }
    {
        auto in = open_input(opts.commits_path);
        data.timelines = parse_commits(in);
    }
    if (with_developers && !opts.developers_path.empty()) {
        auto in = open_input(opts.developers_path);
        data.developers = parse_developers(in);
    }
    if (!opts.ids_path.empty()) {
        auto in = open_input(opts.ids_path);
        std::unordered_set<std::string> wanted;
        std::string line;
        while (std::getline(in, line)) {
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (!line.empty()) wanted.insert(line);
        }
        std::erase_if(data.projects,
                      [&wanted](const ProjectRecord& p) { return !wanted.count(p.id); });
    }
    return data;
}

// Exits the caller with 3 when the dataset violates its invariants.
// Developer resolution is skipped when no developers file was supplied.
int check_dataset(const Dataset& data, bool developers_loaded) {
    std::vector<Violation> report = validate_dataset(data.projects, data.timelines,
                                                     data.developers);
    if (!developers_loaded) {
        std::erase_if(report, [](const Violation& v) {
            return v.message.rfind("unresolved core developer", 0) == 0;
        });
    }
    if (report.empty()) return 0;
    std::size_t shown = 0;
    for (const auto& v : report) {
        if (++shown > 20) {
            std::cerr << "... and " << report.size() - 20 << " more violations\n";
            break;
        }
        std::cerr << "violation: " << v.subject << ": " << v.message << "\n";
    }
    return 3;
}

struct JoinedRow {
    const ProjectRecord* project = nullptr;
    FeatureVector features;
    LifespanRecord span;
};

std::vector<JoinedRow> join_rows(const Dataset& data, const GapPolicy& gaps,
                                 FollowerAggregation agg) {
    static const CommitTimeline kEmpty{};
    std::vector<JoinedRow> rows(data.projects.size());
    parallel_for(data.projects.size(), [&](std::size_t i) {
        const ProjectRecord& p = data.projects[i];
        auto it = data.timelines.find(p.id);
        const CommitTimeline& timeline = it != data.timelines.end() ? it->second : kEmpty;
        rows[i] = {&p, extract_features(p, data.developers, agg),
                   compute_lifespan(p, timeline, gaps)};
    });
    return rows;
}

// ---------------------------------------------------------------------------
// small flag parsers

std::vector<std::pair<std::string, double>> parse_weight_list(const std::string& text,
                                                              const char* what) {
    std::vector<std::pair<std::string, double>> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto colon = item.rfind(':');
        if (colon == std::string::npos || colon == 0)
            throw CLI::ValidationError(std::string(what), "expected name:value pairs");
        out.emplace_back(item.substr(0, colon), std::stod(item.substr(colon + 1)));
    }
    return out;
}

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
    return out;
}

std::vector<std::int64_t> parse_int_list(const std::string& text) {
    std::vector<std::int64_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stoll(item));
    return out;
}

ModelParams load_params_or_default(const std::string& path) {
    if (path.empty()) return default_model_params();
    auto in = open_input(path);
    try {
        return load_model_params(in);
    } catch (const std::runtime_error& e) {
        throw ParseError(0, std::string(e.what()) + " (" + path + ")");
    }
}

std::string join_labels(const std::set<std::string>& labels) {
    std::string out;
    for (const auto& label : labels) {
        if (!out.empty()) out.push_back('|');
        out += label;
    }
    return out;
}

// ---------------------------------------------------------------------------
// gen

struct GenCli {
    std::string out_dir;
    std::uint64_t seed = 42;
    std::int64_t count = 1000;
    double noise_sd = 0.0;
    double ratio_min = 0.0;
    double ratio_max = 0.6;
    std::int64_t file_min = 32;
    std::int64_t file_max = 4096;
    std::int64_t follower_min = 16;
    std::int64_t follower_max = 1024;
    std::string languages;
    std::string labels;
    std::string params_path;
};

int cmd_gen(const GenCli& cli) {
    GenConfig cfg = default_gen_config();
    cfg.seed = cli.seed;
    cfg.project_count = cli.count;
    cfg.noise_sd = cli.noise_sd;
    cfg.target_nonworking_ratio_range = {cli.ratio_min, cli.ratio_max};
    cfg.file_count_range = {cli.file_min, cli.file_max};
    cfg.follower_range = {cli.follower_min, cli.follower_max};
    if (!cli.languages.empty())
        cfg.language_weights = parse_weight_list(cli.languages, "--languages");
    if (!cli.labels.empty()) cfg.label_pool = parse_weight_list(cli.labels, "--labels");
    cfg.params = load_params_or_default(cli.params_path);

    GeneratedDataset files = generate(cfg);
    fs::path dir(cli.out_dir);
    fs::create_directories(dir);
    write_file(dir / "projects.jsonl", files.projects_jsonl);
    write_file(dir / "commits.jsonl", files.commits_jsonl);
    write_file(dir / "developers.jsonl", files.developers_jsonl);
    write_file(dir / "truth.jsonl", files.truth_jsonl);
    std::cout << "generated " << cfg.project_count << " projects into " << dir.string() << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// validate

int cmd_validate(const InputOptions& inputs) {
    Dataset data = load_dataset(inputs, true);
    int rc = check_dataset(data, !inputs.developers_path.empty());
    if (rc != 0) return rc;
    std::cout << "dataset OK: " << data.projects.size() << " projects, " << data.timelines.size()
              << " timelines, " << data.developers.size() << " developers\n";
    return 0;
}

// ---------------------------------------------------------------------------
// filter

struct FilterCli {
    InputOptions inputs;
    std::string out_dir = ".";
    std::string cutoff;
    int quiescence = 180;
    bool keep_forks = false;
    bool keep_deleted = false;
    std::int64_t min_lifespan = 0;
    GapOptions gaps;
};

int cmd_filter(const FilterCli& cli) {
    auto cutoff = parse_date(cli.cutoff);
    if (!cutoff) {
        std::cerr << "error: --cutoff must be a YYYY-MM-DD date, got '" << cli.cutoff << "'\n";
        return 2;
    }

    Dataset data = load_dataset(cli.inputs, true);
    int rc = check_dataset(data, !cli.inputs.developers_path.empty());
    if (rc != 0) return rc;

    StudyFilterConfig cfg;
    cfg.cutoff = *cutoff;
    cfg.quiescence_days = cli.quiescence;
    cfg.exclude_forks = !cli.keep_forks;
    cfg.exclude_deleted = !cli.keep_deleted;
    cfg.min_lifespan_days = cli.min_lifespan;
    cfg.gaps = cli.gaps.policy();

    FilterSummary summary;
    std::vector<ProjectRecord> kept = apply_study_filter(data.projects, data.timelines, cfg,
                                                         &summary);
    if (summary.threshold_precedes_all_commits)
        std::cerr << "warning: cutoff minus quiescence window precedes every commit date; "
                     "every active project fails the recency rule\n";

    fs::path dir(cli.out_dir);
    fs::create_directories(dir);
    std::string ids;
    for (const auto& p : kept) ids += p.id + "\n";
    write_file(dir / "kept_ids.txt", ids);

    nlohmann::json doc{{"total", summary.total},
                       {"kept", summary.kept},
                       {"dropped",
                        {{"recent_activity", summary.failed_recent_activity},
                         {"forked", summary.failed_fork},
                         {"deleted", summary.failed_deleted},
                         {"short_lifespan", summary.failed_min_lifespan}}}};
    write_file(dir / "filter_summary.json", doc.dump(2) + "\n");

    std::cout << "kept " << summary.kept << "/" << summary.total
              << " (dropped per rule: recent_activity=" << summary.failed_recent_activity
              << " forked=" << summary.failed_fork << " deleted=" << summary.failed_deleted
              << " short_lifespan=" << summary.failed_min_lifespan << ")\n";
    return 0;
}

// ---------------------------------------------------------------------------
// stats

struct StatsCli {
    InputOptions inputs;
    std::string out_dir = ".";
    std::string bin_edges;
    double desc_bin_width = 100.0;
    double file_bin_width = 50.0;
    std::int64_t min_language_count = 1;
    QuantileOption quantiles;
    AggOption agg;
    GapOptions gaps;
};

nlohmann::json correlation_or_undefined(const std::vector<double>& x,
                                        const std::vector<double>& y) {
    try {
        return pearson(x, y);
    } catch (const std::invalid_argument&) {
        return "undefined";
    }
}

int cmd_stats(const StatsCli& cli) {
    Dataset data = load_dataset(cli.inputs, true);
    int rc = check_dataset(data, true);
    if (rc != 0) return rc;

    HistogramSpec hist_spec;
    if (!cli.bin_edges.empty()) hist_spec.bin_edges = parse_int_list(cli.bin_edges);
    std::string spec_problem = hist_spec.check();
    if (!spec_problem.empty()) {
        std::cerr << "error: --bin-edges: " << spec_problem << "\n";
        return 2;
    }

    std::vector<JoinedRow> rows = join_rows(data, cli.gaps.policy(), cli.agg.value());

    fs::path dir(cli.out_dir);
    fs::create_directories(dir);

    // life-spans + histogram
    std::string lifespans = "project_id,born,died,days,nonworking_days,ratio\n";
    std::vector<LifespanRecord> spans;
    spans.reserve(rows.size());
    for (const auto& row : rows) {
        spans.push_back(row.span);
        lifespans += csv_escape(row.span.project_id) + "," + format_date(row.span.born) + "," +
                     format_date(row.span.died) + "," + std::to_string(row.span.days) + "," +
                     std::to_string(row.span.non_working_days) + "," +
                     format_real(row.span.non_working_ratio) + "\n";
    }
    write_file(dir / "lifespans.csv", lifespans);

    std::string histogram = "bin,count\n";
    for (const auto& [bin, count] : lifespan_histogram(spans, hist_spec))
        histogram += csv_escape(bin) + "," + std::to_string(count) + "\n";
    write_file(dir / "lifespan_histogram.csv", histogram);

    // feature table
    std::string features = "project_id,n,language,m,core_dev_count,labels,description_words\n";
    for (const auto& row : rows) {
        features += csv_escape(row.project->id) + "," + std::to_string(row.features.n) + "," +
                    csv_escape(row.features.language) + "," + std::to_string(row.features.m) +
                    "," + std::to_string(row.features.core_dev_count) + "," +
                    csv_escape(join_labels(row.features.labels)) + "," +
                    std::to_string(row.features.description_word_count) + "\n";
    }
    write_file(dir / "features.csv", features);

    // per-language life-span table
    std::vector<std::pair<std::string, double>> language_days;
    for (const auto& row : rows) {
        if (!row.features.language.empty())
            language_days.emplace_back(row.features.language,
                                       static_cast<double>(row.span.days));
    }
    std::string language_table = "language,average,q1,median,q3,count\n";
    for (const auto& r :
         language_lifespan_table(language_days, cli.min_language_count, cli.quantiles.value())) {
        language_table += csv_escape(r.language) + "," + format_real(r.average) + "," +
                          format_real(r.q1) + "," + format_real(r.median) + "," +
                          format_real(r.q3) + "," + std::to_string(r.count) + "\n";
    }
    write_file(dir / "language_table.csv", language_table);

    // per-label life-span table
    std::vector<std::pair<std::set<std::string>, double>> label_days;
    for (const auto& row : rows)
        label_days.emplace_back(row.features.labels, static_cast<double>(row.span.days));
    std::string label_table = "label,average,count\n";
    for (const auto& r : label_lifespan_table(label_days))
        label_table += csv_escape(r.label) + "," + format_real(r.average) + "," +
                       std::to_string(r.count) + "\n";
    write_file(dir / "label_table.csv", label_table);

    // language usage shares
    std::string usage = "language,share\n";
    for (const auto& [language, share] : language_usage(data.projects))
        usage += csv_escape(language) + "," + format_real(share) + "\n";
    write_file(dir / "language_usage.csv", usage);

    // core developer count distribution
    std::string distribution = "core_developers,projects\n";
    for (const auto& [devs, projects] : core_dev_count_distribution(data.projects))
        distribution += std::to_string(devs) + "," + std::to_string(projects) + "\n";
    write_file(dir / "core_dev_distribution.csv", distribution);

    // plot series: mean life-span vs description words and vs file count
    std::vector<double> words, files, devs_m, days;
    for (const auto& row : rows) {
        words.push_back(static_cast<double>(row.features.description_word_count));
        files.push_back(static_cast<double>(row.features.n));
        devs_m.push_back(static_cast<double>(row.features.m));
        days.push_back(static_cast<double>(row.span.days));
    }
    auto series_tsv = [](const std::vector<BinnedPoint>& points) {
        std::string out;
        for (const auto& p : points)
            out += format_real(p.center) + "\t" + format_real(p.mean) + "\n";
        return out;
    };
    write_file(dir / "description_series.tsv",
               rows.empty() ? "" : series_tsv(binned_mean_series(words, days,
                                                                 cli.desc_bin_width)));
    write_file(dir / "filecount_series.tsv",
               rows.empty() ? "" : series_tsv(binned_mean_series(files, days,
                                                                 cli.file_bin_width)));

    // correlation summary
    nlohmann::json correlations;
    correlations["file_number_r"] = correlation_or_undefined(files, days);

    std::map<std::string, std::pair<std::vector<double>, std::vector<double>>> by_language;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const std::string& language = rows[i].features.language;
        if (language.empty()) continue;
        by_language[language].first.push_back(devs_m[i]);
        by_language[language].second.push_back(days[i]);
    }
    nlohmann::json follower_r = nlohmann::json::object();
    for (const auto& [language, xy] : by_language)
        follower_r[language] = correlation_or_undefined(xy.first, xy.second);
    correlations["follower_r_by_language"] = follower_r;

    auto band_r = [&](double lo, double hi) {
        std::vector<double> bx, by;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (words[i] >= lo && words[i] < hi) {
                bx.push_back(words[i]);
                by.push_back(days[i]);
            }
        }
        return correlation_or_undefined(bx, by);
    };
    correlations["description_band_r"] = {{"0-500", band_r(0, 500)},
                                          {"500-1000", band_r(500, 1000)},
                                          {">1000", band_r(1000, 1e300)}};
    write_file(dir / "correlations.json", correlations.dump(2) + "\n");

    std::cout << "wrote statistics for " << rows.size() << " projects to " << dir.string()
              << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// calibrate

struct CalibrateCli {
    InputOptions inputs;
    std::string out_dir = ".";
    double beta = kDefaultBeta;
    std::string baseline = kDefaultBaselineLanguage;
    double train_fraction = 1.0;
    QuantileOption quantiles;
    AggOption agg;
    GapOptions gaps;
};

// Seedless deterministic split: a project trains iff the FNV-1a hash of its
// id falls below the requested fraction of the hash space.
bool in_train_split(const std::string& id, double fraction) {
    if (fraction >= 1.0) return true;
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : id) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return static_cast<double>(h) < fraction * 18446744073709551616.0;
}

int cmd_calibrate(const CalibrateCli& cli) {
    Dataset data = load_dataset(cli.inputs, true);
    int rc = check_dataset(data, true);
    if (rc != 0) return rc;

    std::vector<JoinedRow> rows = join_rows(data, cli.gaps.policy(), cli.agg.value());
    std::vector<JoinedRow> train;
    std::string holdout_ids;
    for (auto& row : rows) {
        if (in_train_split(row.project->id, cli.train_fraction))
            train.push_back(row);
        else
            holdout_ids += row.project->id + "\n";
    }

    std::vector<std::pair<FeatureVector, double>> alpha_records;
    std::vector<std::pair<std::string, double>> language_days;
    std::vector<std::pair<std::set<std::string>, double>> label_days;
    double day_sum = 0.0;
    for (const auto& row : train) {
        double actual = static_cast<double>(row.span.days);
        alpha_records.emplace_back(row.features, actual);
        if (!row.features.language.empty())
            language_days.emplace_back(row.features.language, actual);
        label_days.emplace_back(row.features.labels, actual);
        day_sum += actual;
    }

    ModelParams params;
    params.alpha = calibrate_alpha(alpha_records);
    params.beta = cli.beta;
    params.baseline = cli.baseline;
    params.global_mean_lifespan = train.empty() ? 0.0 : day_sum / train.size();

    auto language_table =
        language_lifespan_table(language_days, 1, cli.quantiles.value());
    try {
        params.language_factors = derive_language_factors(language_table, cli.baseline);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
    params.label_offsets = derive_label_offsets(label_lifespan_table(label_days),
                                                params.global_mean_lifespan);

    std::string problem = params.check();
    if (!problem.empty()) {
        std::cerr << "error: calibrated params invalid: " << problem << "\n";
        return 3;
    }

    fs::path dir(cli.out_dir);
    fs::create_directories(dir);
    std::ostringstream out;
    save_model_params(out, params);
    write_file(dir / "params.json", out.str());
    if (cli.train_fraction < 1.0) write_file(dir / "holdout_ids.txt", holdout_ids);

    std::cout << "alpha=" << format_real(params.alpha) << " beta=" << format_real(params.beta)
              << " baseline=" << params.baseline << " languages="
              << params.language_factors.size() << " labels=" << params.label_offsets.size()
              << " global_mean=" << format_real(params.global_mean_lifespan) << " (trained on "
              << train.size() << "/" << rows.size() << " projects)\n";
    return 0;
}

// ---------------------------------------------------------------------------
// predict

struct PredictCli {
    std::string params_path;
    std::string features_path;
    std::string out_path = "predictions.csv";
};

std::vector<std::pair<std::string, FeatureVector>> read_feature_table(std::istream& in) {
    static const std::string kHeader =
        "project_id,n,language,m,core_dev_count,labels,description_words";
    std::vector<std::pair<std::string, FeatureVector>> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line_no == 1) {
            if (line != kHeader)
                throw ParseError(1, "unexpected feature table header: '" + line + "'");
            continue;
        }
        std::vector<std::string> fields = csv_split(line);
        if (fields.size() != 7)
            throw ParseError(line_no, "expected 7 feature columns, got " +
                                          std::to_string(fields.size()));
        try {
            FeatureVector fv;
            fv.n = std::stoll(fields[1]);
            fv.language = fields[2];
            fv.m = std::stoll(fields[3]);
            fv.core_dev_count = std::stoll(fields[4]);
            std::stringstream labels(fields[5]);
            std::string label;
            while (std::getline(labels, label, '|'))
                if (!label.empty()) fv.labels.insert(label);
            fv.description_word_count = std::stoll(fields[6]);
            out.emplace_back(fields[0], std::move(fv));
        } catch (const std::logic_error&) {
            throw ParseError(line_no, "malformed numeric field");
        }
    }
    return out;
}

int cmd_predict(const PredictCli& cli) {
    ModelParams params = load_params_or_default(cli.params_path);
    auto in = open_input(cli.features_path);
    auto features = read_feature_table(in);

    std::string out =
        "project_id,lp,log2_n,log2_m,language_factor,label_offset,base_term,label_term\n";
    for (const auto& [id, fv] : features) {
        PredictionBreakdown b = predict_breakdown(fv, params);
        if (b.unknown_language)
            std::cerr << "warning: unknown language '" << fv.language << "' for project '" << id
                      << "'; baseline factor 1.0 used\n";
        out += csv_escape(id) + "," + format_real(b.lp, 12) + "," + format_real(b.log2_n, 12) +
               "," + format_real(b.log2_m, 12) + "," + format_real(b.language_factor, 12) + "," +
               format_real(b.label_offset, 12) + "," + format_real(b.base_term, 12) + "," +
               format_real(b.label_term, 12) + "\n";
    }
    if (!cli.out_path.empty()) {
        fs::path path(cli.out_path);
        if (path.has_parent_path()) fs::create_directories(path.parent_path());
        write_file(path, out);
    }
    std::cout << "predicted " << features.size() << " projects -> " << cli.out_path << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// evaluate

struct EvaluateCli {
    InputOptions inputs;
    std::string params_path;
    std::string out_dir = ".";
    double max_ratio = 0.3;
    std::string thresholds;
    AggOption agg;
    GapOptions gaps;
};

int cmd_evaluate(const EvaluateCli& cli) {
    ModelParams params = load_params_or_default(cli.params_path);
    Dataset data = load_dataset(cli.inputs, true);
    int rc = check_dataset(data, true);
    if (rc != 0) return rc;

    std::vector<double> thresholds = cli.thresholds.empty()
                                         ? default_error_thresholds()
                                         : parse_double_list(cli.thresholds);

    std::vector<JoinedRow> rows = join_rows(data, cli.gaps.policy(), cli.agg.value());
    std::vector<std::pair<FeatureVector, LifespanRecord>> dataset;
    dataset.reserve(rows.size());
    for (const auto& row : rows) dataset.emplace_back(row.features, row.span);

    EvaluationReport report;
    try {
        report = evaluate(dataset, params, cli.max_ratio, thresholds);
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 5;
    }

    fs::path dir(cli.out_dir);
    fs::create_directories(dir);
    std::string rows_csv = "project_id,predicted,actual,relative_error\n";
    for (const auto& row : report.rows) {
        rows_csv += csv_escape(row.project_id) + "," + format_real(row.predicted, 12) + "," +
                    std::to_string(static_cast<std::int64_t>(row.actual)) + "," +
                    format_real(row.relative_error, 12) + "\n";
    }
    write_file(dir / "evaluation.csv", rows_csv);

    nlohmann::json cdf{{"max_ratio", cli.max_ratio},
                       {"projects", report.rows.size()},
                       {"cdf_points", nlohmann::json::array()}};
    for (const auto& [threshold, fraction] : report.cdf_points)
        cdf["cdf_points"].push_back({{"threshold", threshold}, {"fraction", fraction}});
    write_file(dir / "cdf.json", cdf.dump(2) + "\n");

    std::cout << "fraction of projects with relative error <= 0.1: "
              << format_real(report.fraction_below(0.1), 2) << "\n";
    std::cout << "fraction of projects with relative error <= 0.3: "
              << format_real(report.fraction_below(0.3), 2) << "\n";
    return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"project life-span mining and prediction toolkit"};
    app.require_subcommand(1);

    GenCli gen;
    auto* gen_cmd = app.add_subcommand("gen", "generate a seeded synthetic dataset");
    gen_cmd->add_option("--out-dir", gen.out_dir, "directory for the canonical files")
        ->required();
    gen_cmd->add_option("--seed", gen.seed)->default_val(42);
    gen_cmd->add_option("--count", gen.count, "number of projects")->default_val(1000);
    gen_cmd->add_option("--noise-sd", gen.noise_sd, "gaussian noise (days) on planted life-spans")
        ->default_val(0.0);
    gen_cmd->add_option("--ratio-min", gen.ratio_min)->default_val(0.0);
    gen_cmd->add_option("--ratio-max", gen.ratio_max)->default_val(0.6);
    gen_cmd->add_option("--file-min", gen.file_min)->default_val(32);
    gen_cmd->add_option("--file-max", gen.file_max)->default_val(4096);
    gen_cmd->add_option("--follower-min", gen.follower_min)->default_val(16);
    gen_cmd->add_option("--follower-max", gen.follower_max)->default_val(1024);
    gen_cmd->add_option("--languages", gen.languages, "language:weight,... pool");
    gen_cmd->add_option("--labels", gen.labels, "label:probability,... pool");
    gen_cmd->add_option("--params", gen.params_path, "planted model params JSON");

    InputOptions validate_inputs;
    auto* validate_cmd = app.add_subcommand("validate", "check dataset invariants");
    add_input_options(validate_cmd, validate_inputs, true);

    FilterCli filter;
    auto* filter_cmd = app.add_subcommand("filter", "apply the study selection rules");
    add_input_options(filter_cmd, filter.inputs, false);
    filter_cmd->add_option("--out-dir", filter.out_dir)->default_val(".");
    filter_cmd->add_option("--cutoff", filter.cutoff, "dataset snapshot date (YYYY-MM-DD)")
        ->required();
    filter_cmd
        ->add_option("--quiescence", filter.quiescence,
                     "days without commits before the cutoff required for death")
        ->default_val(180);
    filter_cmd->add_flag("--keep-forks", filter.keep_forks, "retain forked projects");
    filter_cmd->add_flag("--keep-deleted", filter.keep_deleted, "retain deleted projects");
    filter_cmd
        ->add_option("--min-lifespan", filter.min_lifespan,
                     "minimum life-span in days (10 selects natural deaths)")
        ->default_val(0);
    add_gap_options(filter_cmd, filter.gaps);

    StatsCli stats;
    auto* stats_cmd = app.add_subcommand("stats", "descriptive statistics and plot series");
    add_input_options(stats_cmd, stats.inputs, true);
    stats_cmd->add_option("--out-dir", stats.out_dir)->default_val(".");
    stats_cmd->add_option("--bin-edges", stats.bin_edges,
                          "histogram day edges, e.g. 1,10,30,90,180,365,1095");
    stats_cmd->add_option("--desc-bin-width", stats.desc_bin_width)->default_val(100.0);
    stats_cmd->add_option("--file-bin-width", stats.file_bin_width)->default_val(50.0);
    stats_cmd
        ->add_option("--min-language-count", stats.min_language_count,
                     "minimum projects per language table row")
        ->default_val(1);
    add_quantile_option(stats_cmd, stats.quantiles);
    add_agg_option(stats_cmd, stats.agg);
    add_gap_options(stats_cmd, stats.gaps);

    CalibrateCli calibrate;
    auto* calibrate_cmd = app.add_subcommand("calibrate", "fit model params from a dataset");
    add_input_options(calibrate_cmd, calibrate.inputs, true);
    calibrate_cmd->add_option("--out-dir", calibrate.out_dir)->default_val(".");
    calibrate_cmd->add_option("--beta", calibrate.beta, "label adjustment weight")
        ->default_val(kDefaultBeta);
    calibrate_cmd->add_option("--baseline", calibrate.baseline, "baseline language (factor 1.0)")
        ->default_val(kDefaultBaselineLanguage);
    calibrate_cmd
        ->add_option("--train-fraction", calibrate.train_fraction,
                     "train on this id-hash share; the rest goes to holdout_ids.txt")
        ->default_val(1.0)
        ->check(CLI::Range(0.0, 1.0));
    add_quantile_option(calibrate_cmd, calibrate.quantiles);
    add_agg_option(calibrate_cmd, calibrate.agg);
    add_gap_options(calibrate_cmd, calibrate.gaps);

    PredictCli predict;
    auto* predict_cmd = app.add_subcommand("predict", "predict life-spans for a feature table");
    predict_cmd->add_option("--params", predict.params_path,
                            "model params JSON (shipped defaults when omitted)");
    predict_cmd->add_option("--features", predict.features_path, "feature table CSV")
        ->required();
    predict_cmd->add_option("--out", predict.out_path, "predictions CSV path")
        ->default_val("predictions.csv");

    EvaluateCli evaluate;
    auto* evaluate_cmd =
        app.add_subcommand("evaluate", "relative-error report with the non-working-ratio filter");
    add_input_options(evaluate_cmd, evaluate.inputs, true);
    evaluate_cmd->add_option("--params", evaluate.params_path,
                             "model params JSON (shipped defaults when omitted)");
    evaluate_cmd->add_option("--out-dir", evaluate.out_dir)->default_val(".");
    evaluate_cmd
        ->add_option("--max-ratio", evaluate.max_ratio,
                     "keep projects with non-working ratio strictly below this")
        ->default_val(0.3);
    evaluate_cmd->add_option("--thresholds", evaluate.thresholds,
                             "relative-error CDF thresholds, e.g. 0.1,0.3");
    add_agg_option(evaluate_cmd, evaluate.agg);
    add_gap_options(evaluate_cmd, evaluate.gaps);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (*gen_cmd) return cmd_gen(gen);
        if (*validate_cmd) return cmd_validate(validate_inputs);
        if (*filter_cmd) return cmd_filter(filter);
        if (*stats_cmd) return cmd_stats(stats);
        if (*calibrate_cmd) return cmd_calibrate(calibrate);
        if (*predict_cmd) return cmd_predict(predict);
        if (*evaluate_cmd) return cmd_evaluate(evaluate);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}

}  // namespace lifespan
