#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "support/oracles.hpp"
#include "uroc/cpa.hpp"
#include "uroc/csv.hpp"
#include "uroc/gaussian.hpp"
#include "uroc/report.hpp"
#include "uroc/roc.hpp"

using namespace uroc;
namespace fs = std::filesystem;

namespace {

fs::path temp_file(const std::string& name, const std::string& content) {
    const fs::path dir = fs::temp_directory_path() / "uroc_csv_tests";
    fs::create_directories(dir);
    const fs::path p = dir / name;
    std::ofstream os(p);
    os << content;
    return p;
}

}  // namespace

TEST_CASE("load_csv basics") {
    const fs::path p = temp_file("basic.csv", "y,x\n1,10\n2,20\n3,30\n");
    const Dataset d = load_csv(p.string(), "y", {"x"});
    CHECK(d.size() == 3);
    CHECK(d.outcomes == std::vector<double>{1, 2, 3});
    CHECK(d.feature("x") == std::vector<double>{10, 20, 30});
    CHECK(d.skipped_rows.empty());
}

TEST_CASE("load_csv structured errors") {
    const fs::path p = temp_file("basic2.csv", "y,x\n1,10\n");
    CHECK_THROWS_AS(load_csv(p.string(), "z", {"x"}), Error);
    CHECK_THROWS_AS(load_csv(p.string(), "y", {"nope"}), Error);
    CHECK_THROWS_AS(load_csv(p.string(), "y", {"x"}, {"y"}), Error);  // negate not a feature

    const fs::path empty = temp_file("empty.csv", "");
    CHECK_THROWS_AS(load_csv(empty.string(), "y", {"x"}), Error);
    const fs::path header_only = temp_file("header_only.csv", "y,x\n");
    CHECK_THROWS_AS(load_csv(header_only.string(), "y", {"x"}), Error);

    CHECK_THROWS_AS(load_csv("/nonexistent/file.csv", "y", {"x"}), Error);

    // structural damage: wrong field count
    const fs::path ragged = temp_file("ragged.csv", "y,x\n1,2\n3\n");
    try {
        load_csv(ragged.string(), "y", {"x"});
        FAIL("expected ParseError");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ParseError);
        CHECK(e.index() == 2);
    }
}

TEST_CASE("rows with missing or non-numeric referenced cells are rejected") {
    const fs::path p = temp_file(
        "reject.csv", "y,x,junk\n1,10,oops\n2,,text\n3,abc,1\n4,40,5\nnan,50,6\ninf,60,7\n");
    const Dataset d = load_csv(p.string(), "y", {"x"});
    CHECK(d.size() == 2);  // rows 1 and 4 survive
    CHECK(d.outcomes == std::vector<double>{1, 4});
    CHECK(d.feature("x") == std::vector<double>{10, 40});
    CHECK(d.skipped_rows == std::vector<std::size_t>{2, 3, 5, 6});
}

TEST_CASE("negation is applied once at ingestion and flips CPA") {
    const fs::path p = temp_file("neg.csv", "y,x\n1,4\n2,1\n3,3\n4,2\n5,9\n");
    const Dataset plain = load_csv(p.string(), "y", {"x"});
    const Dataset neg = load_csv(p.string(), "y", {"x"}, {"x"});
    for (std::size_t i = 0; i < plain.size(); ++i)
        CHECK(neg.feature("x")[i] == -plain.feature("x")[i]);
    const double cpa_plain = cpa_fast(PairedSample(plain.feature("x"), plain.outcomes)).value;
    const double cpa_neg = cpa_fast(PairedSample(neg.feature("x"), neg.outcomes)).value;
    CHECK(cpa_neg == 1.0 - cpa_plain);
}

TEST_CASE("quoted fields and CRLF line endings parse") {
    const fs::path p = temp_file("quoted.csv", "\"y\",\"x\"\r\n\"1\",\"10\"\r\n2,20\r\n");
    const Dataset d = load_csv(p.string(), "y", {"x"});
    CHECK(d.size() == 2);
    CHECK(d.feature("x") == std::vector<double>{10, 20});
}

TEST_CASE("run_metrics reports per feature with isolation and stable order") {
    const fs::path p = temp_file("metrics.csv",
                                 "y,b,a\n"
                                 "1,4,7\n"
                                 "2,1,7\n"
                                 "3,3,7\n"
                                 "4,2,7\n"
                                 "5,9,7\n");
    const Dataset d = load_csv(p.string(), "y", {"b", "a"});
    const MetricsReport report = run_metrics(d, default_metrics());
    REQUIRE(report.features.size() == 2);
    CHECK(report.features[0].feature == "a");  // sorted by name
    CHECK(report.features[1].feature == "b");

    // feature a is constant: cpa/c_index legal (one half), spearman_rho fails
    const FeatureMetrics& fa = report.features[0];
    const FeatureMetrics& fb = report.features[1];
    auto value_of = [](const FeatureMetrics& fm, Metric m) {
        for (const auto& [k, v] : fm.values)
            if (k == m) return v;
        return std::optional<double>{};
    };
    CHECK(value_of(fa, Metric::cpa) == 0.5);
    CHECK(!value_of(fa, Metric::spearman_rho).has_value());
    CHECK(value_of(fb, Metric::cpa).has_value());
    CHECK(value_of(fb, Metric::spearman_rho).has_value());
    // outcomes are not binary: auc and somers_d are null, with notes
    CHECK(!value_of(fb, Metric::auc).has_value());
    CHECK(!fb.notes.empty());
}

TEST_CASE("json report is valid, deterministic and round-trips at full precision") {
    const fs::path p = temp_file("json.csv", "y,x\n1,4\n2,1\n3,3\n4,2\n5,9\n");
    const Dataset d = load_csv(p.string(), "y", {"x"});
    const MetricsReport report = run_metrics(d, default_metrics());
    const std::string j1 = to_json(report);
    const std::string j2 = to_json(run_metrics(d, default_metrics()));
    CHECK(j1 == j2);

    const nlohmann::json parsed = nlohmann::json::parse(j1);
    CHECK(parsed["outcome"] == "y");
    CHECK(parsed["n_rows"] == 5);
    CHECK(parsed["n_skipped"] == 0);
    const double cpa = cpa_fast(PairedSample(d.feature("x"), d.outcomes)).value;
    CHECK(parsed["features"]["x"]["cpa"].get<double>() == cpa);  // %.17g round-trip
    CHECK(parsed["features"]["x"]["auc"].is_null());

    // schema stability: same keys for the same metric set
    const nlohmann::json again = nlohmann::json::parse(j2);
    CHECK(parsed["features"]["x"].items().begin().key() ==
          again["features"]["x"].items().begin().key());

    const std::string csv = to_csv(report);
    CHECK(csv.rfind("feature,metric,value,note\n", 0) == 0);
    CHECK(csv.find("x,cpa,") != std::string::npos);
}

TEST_CASE("report bytes are independent of the worker pool size") {
    GaussianSpec spec;
    spec.sample_size = 300;
    spec.seed = 555;
    const GaussianSample g = sample_gaussian(spec);
    const fs::path p = fs::temp_directory_path() / "uroc_csv_tests" / "workers.csv";
    fs::create_directories(p.parent_path());
    {
        std::ofstream os(p);
        write_gaussian_csv(os, g);
    }
    const Dataset d = load_csv(p.string(), "y", {"x1", "x2", "x3"});
    const std::string serial = to_json(run_metrics(d, default_metrics(), 1));
    const std::string pooled = to_json(run_metrics(d, default_metrics(), 8));
    CHECK(serial == pooled);
}

TEST_CASE("binary outcomes make the report's auc equal its cpa") {
    const fs::path p = temp_file("binary.csv", "y,x\n0,0.1\n0,0.4\n1,0.35\n1,0.8\n");
    const Dataset d = load_csv(p.string(), "y", {"x"});
    const MetricsReport report = run_metrics(d, default_metrics());
    const FeatureMetrics& fx = report.features[0];
    std::optional<double> auc, cpa;
    for (const auto& [k, v] : fx.values) {
        if (k == Metric::auc) auc = v;
        if (k == Metric::cpa) cpa = v;
    }
    REQUIRE(auc.has_value());
    REQUIRE(cpa.has_value());
    CHECK(*auc == *cpa);
    CHECK(*cpa == 0.75);
}

TEST_CASE("auc_by_threshold tables") {
    // binary outcome: single row with unit weight
    {
        const auto rows = auc_by_threshold(
            validate(std::vector<double>{1, 2, 3, 4}, std::vector<double>{0, 0, 1, 1}));
        REQUIRE(rows.size() == 1);
        CHECK(rows[0].weight == 1.0);
        CHECK(rows[0].auc == 1.0);
        CHECK(rows[0].threshold == 1.0);
    }
    // perfect feature: every AUC is one
    {
        const auto rows = auc_by_threshold(
            validate(std::vector<double>{1, 2, 3, 4, 5}, std::vector<double>{1, 2, 3, 4, 5}));
        REQUIRE(rows.size() == 4);
        for (const auto& r : rows) CHECK(r.auc == 1.0);
        const std::string csv = to_csv(rows);
        CHECK(csv.rfind("threshold,weight,auc\n", 0) == 0);
        CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);
    }
}

TEST_CASE("survival fixture: threshold 1462 recovers the classical AUCs") {
    const Dataset d = load_csv("data/pbc_survival.csv", "survival_days",
                               {"albumin", "bilirubin"}, {"bilirubin"});
    REQUIRE(d.size() == 161);
    const auto rows = auc_by_threshold(PairedSample(d.feature("albumin"), d.outcomes));
    REQUIRE(rows.size() == 155);  // m - 1 thresholds
    const auto it = std::find_if(rows.begin(), rows.end(),
                                 [](const ThresholdTableRow& r) { return r.threshold == 1462.0; });
    REQUIRE(it != rows.end());
    const std::vector<double> binary = threshold_event(d.outcomes, 1462.0);
    CHECK(it->auc == roc_curve(d.feature("albumin"), binary).auc);
    // frozen from the independent rational oracle on the genuine records
    CHECK(std::abs(it->auc - 0.7302459016393442) <= 1e-15);
    const auto rows_b = auc_by_threshold(PairedSample(d.feature("bilirubin"), d.outcomes));
    const auto it_b = std::find_if(rows_b.begin(), rows_b.end(), [](const ThresholdTableRow& r) {
        return r.threshold == 1462.0;
    });
    REQUIRE(it_b != rows_b.end());
    CHECK(std::abs(it_b->auc - 0.7757377049180327) <= 1e-15);
}

TEST_CASE("survival fixture: exact CPA rationals") {
    const Dataset d = load_csv("data/pbc_survival.csv", "survival_days",
                               {"albumin", "bilirubin"}, {"bilirubin"});
    REQUIRE(d.size() == 161);
    const ClassDecomposition dec =
        decompose(PairedSample(d.feature("albumin"), d.outcomes));
    CHECK(dec.class_count() == 156);  // unique survival times

    const CpaResult alb = cpa_fast(PairedSample(d.feature("albumin"), d.outcomes));
    CHECK(alb.numerator == 980774);
    CHECK(alb.denominator == 1350716);
    CHECK(std::abs(alb.value - 0.7261141498286835) <= 1e-15);

    const CpaResult bili = cpa_fast(PairedSample(d.feature("bilirubin"), d.outcomes));
    CHECK(bili.numerator == 960677);
    CHECK(bili.denominator == 1350716);
    CHECK(std::abs(bili.value - 0.711235374423639) <= 1e-15);
}

TEST_CASE("simulate -> load -> metrics round-trip is deterministic per seed") {
    GaussianSpec spec;
    spec.sample_size = 500;
    spec.seed = 31337;
    const GaussianSample g = sample_gaussian(spec);
    const fs::path p = fs::temp_directory_path() / "uroc_csv_tests" / "sim.csv";
    fs::create_directories(p.parent_path());
    {
        std::ofstream os(p);
        write_gaussian_csv(os, g);
    }
    const Dataset d1 = load_csv(p.string(), "y", {"x1", "x2", "x3"});
    const std::string r1 = to_json(run_metrics(d1, default_metrics()));
    {
        std::ofstream os(p);
        write_gaussian_csv(os, sample_gaussian(spec));
    }
    const Dataset d2 = load_csv(p.string(), "y", {"x1", "x2", "x3"});
    const std::string r2 = to_json(run_metrics(d2, default_metrics()));
    CHECK(r1 == r2);
    CHECK(d1.size() == 500);
}
