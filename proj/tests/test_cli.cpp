#include <cstdio>
#include <filesystem>
#include <fstream>

#include <catch2/catch_amalgamated.hpp>

#include "flk/verify.hpp"

using namespace flk;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& tag) {
    fs::path d = fs::temp_directory_path() / ("flk_test_" + tag);
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
}

bool same_algebra(const BasedAlgebra& a, const BasedAlgebra& b) {
    if (a.dim() != b.dim() || a.kind != b.kind || a.labels != b.labels ||
        a.unit_index != b.unit_index || a.filtration != b.filtration ||
        a.internal_degree != b.internal_degree)
        return false;
    for (size_t i = 0; i < a.dim(); ++i) {
        if (a.weights[i] != b.weights[i]) return false;
        if (a.augmentation[i] != b.augmentation[i]) return false;
        for (size_t j = 0; j < a.dim(); ++j)
            if (a.mul(i, j) != b.mul(i, j)) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("algebra dumps round-trip") {
    FieldPtr F = make_field(3, 5);
    RootDatum R1 = build_root_datum('A', 1);
    BasedAlgebra A = build_small_quantum(R1, F, 'u').algebra();
    json recipe{{"builder", "small_quantum"}, {"type", "A1"}, {"part", "u"}};

    SECTION("materialized export reproduces every product") {
        json j = algebra_to_json(A, recipe);
        REQUIRE(j.at("format") == "flk.alg");
        REQUIRE(j.at("version") == 1);
        REQUIRE(j.at("materialized").get<bool>());
        BasedAlgebra B = algebra_from_json(j);
        CHECK(same_algebra(A, B));
    }

    SECTION("files written to disk read back identically") {
        fs::path d = fresh_dir("roundtrip");
        std::string path = (d / "a1u.json").string();
        write_json_file(algebra_to_json(A, recipe), path);
        BasedAlgebra B = algebra_from_json(read_json_file(path));
        CHECK(same_algebra(A, B));
        fs::remove_all(d);
    }

    SECTION("rational coefficients survive the character-zero mode") {
        FieldPtr F0 = make_field(0, 5);
        BasedAlgebra A0 = build_small_quantum(R1, F0, 'b').algebra();
        BasedAlgebra B0 = algebra_from_json(algebra_to_json(A0, recipe));
        CHECK(same_algebra(A0, B0));
    }

    SECTION("a tampered minimal polynomial is rejected") {
        json j = algebra_to_json(A, recipe);
        auto poly = j.at("field").at("min_poly").get<std::vector<long>>();
        REQUIRE_FALSE(poly.empty());
        poly[0] += 1;
        j["field"]["min_poly"] = poly;
        CHECK_THROWS_AS(algebra_from_json(j), FieldMismatch);
    }

    SECTION("wrong format or version is rejected") {
        json j = algebra_to_json(A, recipe);
        json bad_format = j;
        bad_format["format"] = "flk.other";
        CHECK_THROWS_AS(algebra_from_json(bad_format), VersionMismatch);
        json bad_version = j;
        bad_version["version"] = 99;
        CHECK_THROWS_AS(algebra_from_json(bad_version), VersionMismatch);
        CHECK_THROWS_AS(algebra_from_json(json::object()), VersionMismatch);
    }
}

TEST_CASE("lazy dumps store cached products plus a rebuild recipe") {
    FieldPtr F = make_field(0, 5);
    RootDatum R2 = build_root_datum('A', 2);
    BasedAlgebra A = build_small_quantum(R2, F, 'u').algebra();
    REQUIRE(A.dim() == 125);
    A.clear_cache();
    A.mul(1, 5);
    A.mul(5, 1);
    A.mul(7, 7);
    json recipe{{"builder", "small_quantum"}, {"type", "A2"}, {"part", "u"}};
    json j = algebra_to_json(A, recipe, /*materialize_limit=*/50);
    REQUIRE_FALSE(j.at("materialized").get<bool>());
    CHECK(j.at("products").size() == A.cached_products().size());

    SECTION("the recipe rebuild matches the original") {
        BasedAlgebra B = algebra_from_json(j);
        CHECK(B.dim() == A.dim());
        CHECK(B.mul(1, 5) == A.mul(1, 5));
        CHECK(B.mul(2, 3) == A.mul(2, 3));
    }

    SECTION("a corrupted recorded product is detected on import") {
        json bad = j;
        REQUIRE_FALSE(bad.at("products").empty());
        auto& terms = bad.at("products").at(0).at(2);
        if (terms.empty())
            terms.push_back(json::array({0, json::array({"1"})}));
        else
            terms.erase(terms.begin());
        CHECK_THROWS_AS(algebra_from_json(bad), Error);
    }

    SECTION("an unknown builder in the recipe is rejected") {
        json bad = j;
        bad["recipe"]["builder"] = "mystery";
        CHECK_THROWS_AS(algebra_from_json(bad), VersionMismatch);
    }
}

TEST_CASE("verification config files use the documented grammar") {
    fs::path d = fresh_dir("config");
    auto write = [&](const std::string& name, const std::string& text) {
        std::ofstream(d / name) << text;
        return (d / name).string();
    };

    SECTION("keys, comments, and check lists parse") {
        auto path = write("good.cfg",
                          "# verification run\n"
                          "ell = 5\n"
                          "p = 3   # characteristic\n"
                          "checks = 14, 15\n"
                          "seed = 7\n"
                          "cache_dir = /tmp/flk-cache\n"
                          "\n");
        VerifySuiteConfig cfg = parse_config_file(path);
        CHECK(cfg.ell == 5);
        CHECK(cfg.p == 3);
        CHECK(cfg.checks == std::vector<int>{14, 15});
        CHECK(cfg.seed == 7);
        CHECK(cfg.cache_dir == "/tmp/flk-cache");
        CHECK_NOTHROW(cfg.validate());
    }

    SECTION("an even order of the root of unity is rejected") {
        VerifySuiteConfig cfg = parse_config_file(write("even.cfg", "ell = 4\n"));
        CHECK_THROWS_AS(cfg.validate(), ConfigInvalid);
    }

    SECTION("unsupported parameters and check ids are rejected") {
        VerifySuiteConfig other = parse_config_file(write("other.cfg", "ell = 7\np = 3\n"));
        CHECK_THROWS_AS(other.validate(), ConfigInvalid);
        VerifySuiteConfig badp = parse_config_file(write("badp.cfg", "p = 10\n"));
        CHECK_THROWS_AS(badp.validate(), ConfigInvalid);
        VerifySuiteConfig badc = parse_config_file(write("badc.cfg", "checks = 16\n"));
        CHECK_THROWS_AS(badc.validate(), ConfigInvalid);
    }

    SECTION("unknown keys are rejected") {
        auto path = write("unknown.cfg", "degree = 8\n");
        CHECK_THROWS_AS(parse_config_file(path), ConfigInvalid);
    }

    SECTION("a missing file is rejected") {
        CHECK_THROWS_AS(parse_config_file((d / "absent.cfg").string()), ConfigInvalid);
    }
    fs::remove_all(d);
}

TEST_CASE("the algebra cache is deterministic") {
    fs::path d = fresh_dir("cache");
    VerifySuiteConfig cfg;
    cfg.cache_dir = d.string();
    auto cold = verify_detail::nilpotent_algebra_cached(cfg, "A1");
    REQUIRE(fs::exists(d / "u_A1_l5.json"));
    auto warm = verify_detail::nilpotent_algebra_cached(cfg, "A1");
    CHECK(same_algebra(*cold, *warm));
    // the dump itself is byte-for-byte stable across regenerations
    json j1 = read_json_file((d / "u_A1_l5.json").string());
    fs::remove(d / "u_A1_l5.json");
    auto again = verify_detail::nilpotent_algebra_cached(cfg, "A1");
    CHECK(same_algebra(*cold, *again));
    json j2 = read_json_file((d / "u_A1_l5.json").string());
    CHECK(j1 == j2);
    fs::remove_all(d);
}

TEST_CASE("verification reports are well-formed JSON") {
    VerifySuiteConfig cfg;
    cfg.checks = {14, 15};
    auto results = run_verify(cfg);
    REQUIRE(results.size() == 2);
    CHECK(results[0].id == 14);
    CHECK(results[1].id == 15);
    json report = report_to_json(results, cfg);
    CHECK(report.at("suite") == "flk.verify");
    CHECK(report.at("ell") == 5);
    CHECK(report.at("p") == 3);
    CHECK(report.at("checks").size() == 2);
    for (const auto& c : report.at("checks")) {
        CHECK(c.contains("id"));
        CHECK(c.contains("name"));
        CHECK((c.at("status") == "pass" || c.at("status") == "fail"));
        CHECK(c.contains("detail"));
        CHECK(c.contains("millis"));
    }
    CHECK(report.at("all_pass").get<bool>() ==
          (results[0].pass && results[1].pass));

    SECTION("a filter with an invalid id never runs") {
        VerifySuiteConfig bad;
        bad.checks = {0};
        CHECK_THROWS_AS(run_verify(bad), ConfigInvalid);
    }
}
