#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "gyrohap/errors.hpp"
#include "gyrohap/ratings.hpp"

using namespace gyrohap;

namespace {

std::filesystem::path write_temp_csv(const char* name, const std::string& body) {
    const auto dir = std::filesystem::temp_directory_path() / "gyrohap_tests";
    std::filesystem::create_directories(dir);
    const auto path = dir / name;
    std::ofstream out(path, std::ios::binary);
    out << body;
    return path;
}

}  // namespace

TEST_SUITE_BEGIN("ratings");

TEST_CASE("well-formed file loads with matching shape") {
    const auto path = write_temp_csv("ok.csv",
                                     "participant,condition,repetition,Heavy-Light,Hard-Soft\n"
                                     "p1,a,1,4,5\n"
                                     "p1,b,1,2,1\n"
                                     "p2,a,1,7,6\n"
                                     "p2,b,1,3,3\n");
    const RatingMatrix m = load_ratings(path);
    CHECK(m.pair_labels == std::vector<std::string>{"Heavy-Light", "Hard-Soft"});
    CHECK(m.records.size() == 4);
    CHECK(m.participants() == std::vector<std::string>{"p1", "p2"});
    CHECK(m.conditions() == std::vector<std::string>{"a", "b"});
}

TEST_CASE("out-of-range Likert value is rejected naming the cell") {
    const auto path = write_temp_csv("range.csv",
                                     "participant,condition,repetition,Heavy-Light\n"
                                     "p1,a,1,4\n"
                                     "p1,b,1,9\n");
    CHECK_THROWS_WITH_AS(load_ratings(path), doctest::Contains("Heavy-Light"), ConfigError);
    CHECK_THROWS_WITH_AS(load_ratings(path), doctest::Contains("line 3"), ConfigError);
}

TEST_CASE("duplicate key is rejected") {
    const auto path = write_temp_csv("dup.csv",
                                     "participant,condition,repetition,Heavy-Light\n"
                                     "p1,a,1,4\n"
                                     "p1,a,1,5\n");
    CHECK_THROWS_WITH_AS(load_ratings(path), doctest::Contains("duplicate"), ConfigError);
}

TEST_CASE("malformed header is rejected") {
    const auto path = write_temp_csv("hdr.csv", "who,condition,repetition,Heavy-Light\np1,a,1,4\n");
    CHECK_THROWS_AS(load_ratings(path), ConfigError);
}

TEST_CASE("averaging repetitions") {
    const auto path = write_temp_csv("reps.csv",
                                     "participant,condition,repetition,Heavy-Light\n"
                                     "p1,a,1,3\n"
                                     "p1,a,2,4\n"
                                     "p1,a,3,5\n"
                                     "p1,b,1,1\n"
                                     "p1,b,2,1\n"
                                     "p1,b,3,7\n");
    const ObservationMatrix obs = average_repetitions(load_ratings(path));
    REQUIRE(obs.values.rows() == 2);
    CHECK(obs.values(0, 0) == doctest::Approx(4.0));
    CHECK(obs.values(1, 0) == doctest::Approx(3.0));
    CHECK(obs.row_condition[0] == "a");
    CHECK(obs.row_condition[1] == "b");
}

TEST_CASE("single repetition is the identity") {
    const auto path = write_temp_csv("single.csv",
                                     "participant,condition,repetition,Heavy-Light\n"
                                     "p1,a,1,6\n");
    const ObservationMatrix obs = average_repetitions(load_ratings(path));
    CHECK(obs.values(0, 0) == 6.0);
}

TEST_CASE("full design has participants x conditions rows") {
    std::string body = "participant,condition,repetition,A-B,C-D\n";
    for (int p = 0; p < 16; ++p) {
        for (int c = 0; c < 5; ++c) {
            for (int r = 1; r <= 3; ++r) {
                body += "p" + std::to_string(p) + ",cond" + std::to_string(c) + "," +
                        std::to_string(r) + ",4,4\n";
            }
        }
    }
    const auto path = write_temp_csv("full.csv", body);
    const ObservationMatrix obs = average_repetitions(load_ratings(path));
    CHECK(obs.values.rows() == 16 * 5);
}

TEST_CASE("uneven repetition counts are rejected") {
    const auto path = write_temp_csv("uneven.csv",
                                     "participant,condition,repetition,A-B\n"
                                     "p1,a,1,4\n"
                                     "p1,a,2,4\n"
                                     "p1,b,1,4\n");
    CHECK_THROWS_WITH_AS(average_repetitions(load_ratings(path)),
                         doctest::Contains("incomplete"), ConfigError);
}

TEST_CASE("ratings round-trip through save and load") {
    const auto path = write_temp_csv("rt.csv",
                                     "participant,condition,repetition,A-B,C-D\n"
                                     "p1,a,1,4,2\n"
                                     "p2,a,1,6,7\n");
    const RatingMatrix m = load_ratings(path);
    const auto path2 = write_temp_csv("rt2.csv", "");
    save_ratings(m, path2);
    const RatingMatrix m2 = load_ratings(path2);
    REQUIRE(m2.records.size() == m.records.size());
    CHECK(m2.records[1].values == m.records[1].values);
    CHECK(m2.pair_labels == m.pair_labels);
}

TEST_CASE("default pair labels are the seven instrument pairs") {
    CHECK(default_pair_labels().size() == 7);
    CHECK(default_pair_labels()[0] == "Long-Short");
    CHECK(default_pair_labels()[6] == "Sticky-Smooth");
}

TEST_SUITE_END();
