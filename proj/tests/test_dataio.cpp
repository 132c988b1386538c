#include <doctest.h>

#include <sstream>

#include "gmfuse/dataio.hpp"
#include "gmfuse/error.hpp"

using namespace gmfuse;

TEST_CASE("iris loads with the expected shape") {
    const auto loaded = data::load_dataset("data/iris.csv", "class");
    const data::Dataset& d = loaded.dataset;
    CHECK(d.name == "iris");
    CHECK(d.n_rows() == 150);
    CHECK(d.n_features() == 4);
    CHECK(d.class_labels.size() == 3);
    for (const auto& f : d.features) CHECK(f.kind == data::FeatureKind::numeric);
    CHECK(loaded.warnings.empty());
    CHECK(d.majority_class_fraction() == doctest::Approx(1.0 / 3));
}

TEST_CASE("mixed file: types, missing markers, dropped all-missing column") {
    const auto loaded = data::load_dataset("tests/data/toy_mixed.csv", "species");
    const data::Dataset& d = loaded.dataset;
    REQUIRE(loaded.warnings.size() == 1);
    CHECK(loaded.warnings[0].find("dead_col") != std::string::npos);
    REQUIRE(d.n_features() == 3);  // dead_col dropped
    CHECK(d.features[0].name == "height");
    CHECK(d.features[0].kind == data::FeatureKind::numeric);
    CHECK(d.features[1].name == "color");
    CHECK(d.features[1].kind == data::FeatureKind::categorical);
    CHECK(d.features[1].categories.size() == 3);  // red, blue, green
    CHECK(d.features[2].kind == data::FeatureKind::numeric);
    CHECK(d.n_rows() == 6);
    CHECK(data::Dataset::is_missing(d.row(2)[0]));  // '?' height
    CHECK(data::Dataset::is_missing(d.row(3)[1]));  // empty color
    CHECK(data::Dataset::is_missing(d.row(3)[2]));  // empty weight
    CHECK(d.class_labels == std::vector<std::string>{"cat", "dog"});
}

TEST_CASE("missing label column error names the available columns") {
    try {
        data::load_dataset("tests/data/toy_mixed.csv", "label");
        FAIL("expected DataError");
    } catch (const DataError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("label") != std::string::npos);
        CHECK(msg.find("height") != std::string::npos);
        CHECK(msg.find("species") != std::string::npos);
    }
}

TEST_CASE("ingestion errors carry row numbers") {
    std::istringstream bad_width("a,b,class\n1,2,x\n3,4\n");
    CHECK_THROWS_WITH_AS(data::parse_dataset(bad_width, "t", "class"),
                         doctest::Contains("row 3"), DataError);

    std::istringstream missing_label("a,class\n1,x\n2,?\n");
    CHECK_THROWS_WITH_AS(data::parse_dataset(missing_label, "t", "class"),
                         doctest::Contains("row 3"), DataError);

    std::istringstream single_class("a,class\n1,x\n2,x\n");
    CHECK_THROWS_AS(data::parse_dataset(single_class, "t", "class"), DataError);

    std::istringstream empty("");
    CHECK_THROWS_AS(data::parse_dataset(empty, "t", "class"), DataError);
}

TEST_CASE("score files parse with and without headers") {
    const auto with_header = data::load_score_file("tests/data/example52.scores", false);
    CHECK(with_header.scores.members() == 3);
    CHECK(with_header.scores.classes() == 2);
    CHECK(with_header.class_names == std::vector<std::string>{"class 1", "class 2"});
    CHECK(with_header.scores.row(0)[0] == 0.9);

    const auto bare = data::load_score_file("tests/data/example41.scores", false);
    CHECK(bare.class_names.empty());
    CHECK(bare.scores.members() == 3);
}

TEST_CASE("rows that do not sum to one are rejected unless normalized") {
    CHECK_THROWS_AS(data::load_score_file("tests/data/unnormalized.scores", false), DataError);
    const auto normalized = data::load_score_file("tests/data/unnormalized.scores", true);
    CHECK(normalized.scores.row(0)[0] == doctest::Approx(0.5));
    CHECK(normalized.scores.row(1)[2] == doctest::Approx(0.5));
}

TEST_CASE("score file structural errors") {
    std::istringstream ragged("0.5,0.5\n0.3,0.3,0.4\n");
    CHECK_THROWS_AS(data::parse_score_file(ragged, "t", false), DataError);
    std::istringstream not_numeric("0.5,half\n");
    CHECK_THROWS_AS(data::parse_score_file(not_numeric, "t", false), DataError);
    std::istringstream empty("# only, a, header\n");
    CHECK_THROWS_AS(data::parse_score_file(empty, "t", false), DataError);
    std::istringstream zero_row("0,0\n1,0\n");
    CHECK_THROWS_AS(data::parse_score_file(zero_row, "t", true), DataError);
}
