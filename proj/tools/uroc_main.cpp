// Command-line front end: CSV in, JSON/CSV reports out, frame/curve exports.

#include <cctype>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "uroc/uroc.hpp"

namespace fs = std::filesystem;
using uroc::detail::num17;

namespace {

struct DataOpts {
    std::string path;
    std::string outcome;
    std::vector<std::string> features;
    std::vector<std::string> negate;
};

void add_data_options(CLI::App* cmd, DataOpts& opts) {
    cmd->add_option("input", opts.path, "input CSV file")->required();
    cmd->add_option("--outcome", opts.outcome, "outcome column name")->required();
    cmd->add_option("--features", opts.features, "feature column names")->required();
    cmd->add_option("--negate", opts.negate,
                    "feature columns whose orientation is reversed on load");
}

uroc::Dataset load(const DataOpts& opts) {
    uroc::Dataset d = uroc::load_csv(opts.path, opts.outcome, opts.features, opts.negate);
    if (d.size() < 2)
        throw uroc::Error(uroc::ErrorCode::TooFewInstances,
                          "fewer than two usable rows after rejection");
    bool distinct = false;
    for (double v : d.outcomes)
        if (v != d.outcomes.front()) distinct = true;
    if (!distinct)
        throw uroc::Error(uroc::ErrorCode::DegenerateOutcomes,
                          "outcome column has a single distinct value");
    return d;
}

std::string sanitize(const std::string& name) {
    std::string out;
    for (char c : name)
        out += (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_') ? c : '_';
    return out.empty() ? "feature" : out;
}

std::string quote(const std::string& s) { return '"' + uroc::detail::json_escape(s) + '"'; }

int run_report(const DataOpts& opts, const std::vector<uroc::Metric>& metrics,
               const std::string& format) {
    const uroc::Dataset d = load(opts);
    const uroc::MetricsReport report = uroc::run_metrics(d, metrics);
    std::cout << (format == "csv" ? uroc::to_csv(report) : uroc::to_json(report));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Generalized ROC analysis: ROC curves and movies, UROC curves, CPA"};
    app.require_subcommand(1);

    DataOpts data;
    std::string format = "json";
    std::string out_dir = ".";
    std::int64_t grid = 1000;
    std::int64_t thin_a = 400, thin_b = 100, thin_cap = 500;
    bool svg = false;
    std::int64_t sim_n = 400;
    std::uint64_t sim_seed = 1;

    auto* cmd_cpa = app.add_subcommand("cpa", "CPA and companion metrics per feature");
    add_data_options(cmd_cpa, data);
    cmd_cpa->add_option("--format", format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));

    auto* cmd_assoc = app.add_subcommand("assoc", "Spearman rank association measures");
    add_data_options(cmd_assoc, data);
    cmd_assoc->add_option("--format", format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));

    auto* cmd_roc = app.add_subcommand("roc", "classical ROC curves for a binary outcome");
    add_data_options(cmd_roc, data);
    cmd_roc->add_option("--out-dir", out_dir, "directory for curve files");
    cmd_roc->add_flag("--svg", svg, "also write an SVG plot per curve");

    auto* cmd_movie = app.add_subcommand("movie", "export the ROC movie frame by frame");
    add_data_options(cmd_movie, data);
    cmd_movie->add_option("--out-dir", out_dir, "directory for frame files");
    cmd_movie->add_option("--thin-a", thin_a, "thinning grid size");
    cmd_movie->add_option("--thin-b", thin_b, "thinning class-share parameter");
    cmd_movie->add_option("--thin-cap", thin_cap,
                          "apply default thinning when the movie exceeds this many frames");
    cmd_movie->add_flag("--svg", svg, "also write an SVG plot per frame");

    auto* cmd_uroc = app.add_subcommand("uroc", "UROC curve on a uniform grid");
    add_data_options(cmd_uroc, data);
    cmd_uroc->add_option("--out-dir", out_dir, "directory for curve files");
    cmd_uroc->add_option("--grid", grid, "number of grid subintervals");

    auto* cmd_table = app.add_subcommand("auc-table", "AUC and weight per threshold");
    add_data_options(cmd_table, data);
    cmd_table->add_option("--format", format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));

    auto* cmd_sim = app.add_subcommand("simulate", "draw the four-variate Gaussian sample");
    cmd_sim->add_option("--n", sim_n, "sample size");
    cmd_sim->add_option("--seed", sim_seed, "RNG seed");
    cmd_sim->add_option("--out-dir", out_dir,
                        "write simulated.csv here instead of standard output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (cmd_sim->parsed()) {
            uroc::GaussianSpec spec;
            spec.sample_size = sim_n;
            spec.seed = sim_seed;
            const uroc::GaussianSample sample = uroc::sample_gaussian(spec);
            if (cmd_sim->count("--out-dir") != 0) {
                fs::create_directories(out_dir);
                const std::string path = out_dir + "/simulated.csv";
                std::ofstream os(path);
                if (!os)
                    throw uroc::Error(uroc::ErrorCode::IoFailure, "cannot write '" + path + "'");
                uroc::write_gaussian_csv(os, sample);
                std::cout << "{\"written\": " << quote(path)
                          << ", \"n\": " << sim_n << ", \"seed\": " << sim_seed << "}\n";
            } else {
                uroc::write_gaussian_csv(std::cout, sample);
            }
            return 0;
        }

        if (cmd_cpa->parsed())
            return run_report(data, uroc::default_metrics(), format);

        if (cmd_assoc->parsed())
            return run_report(
                data, {uroc::Metric::spearman_rho, uroc::Metric::spearman_rho_mid}, format);

        if (cmd_roc->parsed()) {
            const uroc::Dataset d = load(data);
            for (double v : d.outcomes)
                if (v != 0.0 && v != 1.0)
                    throw uroc::Error(uroc::ErrorCode::NotBinaryOutcome,
                                      "the roc subcommand needs a 0/1 outcome column");
            fs::create_directories(out_dir);
            std::cout << "{";
            for (std::size_t i = 0; i < d.feature_columns.size(); ++i) {
                const std::string& name = d.feature_columns[i];
                const uroc::RocCurve curve = uroc::roc_curve(d.feature_values[i], d.outcomes);
                const std::string base = out_dir + "/roc_" + sanitize(name);
                {
                    std::ofstream os(base + ".csv");
                    os << "# auc=" << num17(curve.auc) << "\n# n_pos=" << curve.n_pos
                       << "\n# n_neg=" << curve.n_neg << "\nfpr,tpr\n";
                    for (std::size_t k = 0; k < curve.vertex_count(); ++k)
                        os << num17(curve.fpr[k]) << ',' << num17(curve.tpr[k]) << '\n';
                    if (!os)
                        throw uroc::Error(uroc::ErrorCode::IoFailure,
                                          "write failed for '" + base + ".csv'");
                }
                if (svg) {
                    std::ofstream os(base + ".svg");
                    uroc::write_curve_svg(os, curve.fpr, curve.tpr, name,
                                          {{"auc", num17(curve.auc)}});
                }
                std::cout << (i == 0 ? "\n" : ",\n");
                std::cout << "  " << quote(name) << ": {\"auc\": " << num17(curve.auc)
                          << ", \"file\": " << quote(base + ".csv") << "}";
            }
            std::cout << "\n}\n";
            return 0;
        }

        if (cmd_movie->parsed()) {
            const uroc::Dataset d = load(data);
            fs::create_directories(out_dir);
            std::cout << "{";
            for (std::size_t i = 0; i < d.feature_columns.size(); ++i) {
                const std::string& name = d.feature_columns[i];
                const uroc::PairedSample sample(d.feature_values[i], d.outcomes);
                uroc::RocMovie movie = uroc::build_movie(sample);
                const bool user_thinning = cmd_movie->count("--thin-a") != 0 ||
                                           cmd_movie->count("--thin-b") != 0;
                if (user_thinning) {
                    movie = movie.with_thinning(thin_a, thin_b);
                } else if (movie.frame_count() > static_cast<std::size_t>(thin_cap)) {
                    const auto m1 = static_cast<std::int64_t>(movie.frame_count());
                    movie = movie.with_thinning(std::min(thin_a, m1), thin_b);
                }
                const std::string dir = out_dir + "/" + sanitize(name);
                const auto written = uroc::export_frames(movie, {dir, svg});
                std::cout << (i == 0 ? "\n" : ",\n");
                std::cout << "  " << quote(name) << ": {\"frames\": " << movie.frame_count()
                          << ", \"exported\": " << movie.display_indices().size()
                          << ", \"cpa\": " << num17(uroc::cpa_fast(sample).value)
                          << ", \"directory\": " << quote(dir) << "}";
            }
            std::cout << "\n}\n";
            return 0;
        }

        if (cmd_uroc->parsed()) {
            const uroc::Dataset d = load(data);
            fs::create_directories(out_dir);
            std::cout << "{";
            for (std::size_t i = 0; i < d.feature_columns.size(); ++i) {
                const std::string& name = d.feature_columns[i];
                const uroc::PairedSample sample(d.feature_values[i], d.outcomes);
                const uroc::UrocCurve curve = uroc::uroc_curve(sample, grid);
                const std::string path = out_dir + "/uroc_" + sanitize(name) + ".csv";
                {
                    std::ofstream os(path);
                    uroc::write_uroc_csv(os, curve);
                    if (!os)
                        throw uroc::Error(uroc::ErrorCode::IoFailure,
                                          "write failed for '" + path + "'");
                }
                std::cout << (i == 0 ? "\n" : ",\n");
                std::cout << "  " << quote(name)
                          << ": {\"cpa\": " << num17(uroc::cpa_fast(sample).value)
                          << ", \"cpa_from_area\": " << num17(curve.cpa_from_area)
                          << ", \"file\": " << quote(path) << "}";
            }
            std::cout << "\n}\n";
            return 0;
        }

        if (cmd_table->parsed()) {
            const uroc::Dataset d = load(data);
            if (format == "csv") {
                std::cout << "feature,threshold,weight,auc\n";
                for (std::size_t i = 0; i < d.feature_columns.size(); ++i) {
                    const uroc::PairedSample sample(d.feature_values[i], d.outcomes);
                    for (const auto& row : uroc::auc_by_threshold(sample))
                        std::cout << d.feature_columns[i] << ',' << num17(row.threshold) << ','
                                  << num17(row.weight) << ',' << num17(row.auc) << '\n';
                }
            } else {
                std::cout << "{";
                for (std::size_t i = 0; i < d.feature_columns.size(); ++i) {
                    const uroc::PairedSample sample(d.feature_values[i], d.outcomes);
                    std::cout << (i == 0 ? "\n" : ",\n");
                    std::cout << "  " << quote(d.feature_columns[i]) << ": "
                              << uroc::to_json(uroc::auc_by_threshold(sample));
                }
                std::cout << "}\n";
            }
            return 0;
        }
    } catch (const uroc::Error& e) {
        std::cerr << "error: " << uroc::error_code_name(e.code()) << ": " << e.what() << "\n";
        return uroc::exit_code_for(e.code());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
