#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "plasmoscan/io.hpp"
#include "plasmoscan/report_json.hpp"
#include "plasmoscan/synth.hpp"

using namespace plasmoscan;
namespace fs = std::filesystem;

namespace {

std::string binary() {
    const char* bin = std::getenv("PLASMOSCAN_BIN");
    REQUIRE_MESSAGE(bin != nullptr, "PLASMOSCAN_BIN must point at the CLI");
    return bin;
}

int run(const std::string& args) {
    const std::string cmd = binary() + " " + args + " >/dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    REQUIRE(rc != -1);
    return WEXITSTATUS(rc);
}

fs::path fresh_dir(const std::string& name) {
    const fs::path dir =
        fs::temp_directory_path() / "plasmoscan_cli_tests" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::map<std::string, std::string> dir_contents(const fs::path& dir) {
    std::map<std::string, std::string> files;
    for (const auto& entry : fs::recursive_directory_iterator(dir))
        if (entry.is_regular_file())
            files[fs::relative(entry.path(), dir).string()] =
                read_text_file(entry.path().string());
    return files;
}

nlohmann::json summary_of(const fs::path& out_dir) {
    return nlohmann::json::parse(
        read_text_file((out_dir / "summary.json").string()));
}

}  // namespace

TEST_CASE("bare invocations are usage errors") {
    CHECK(run("") == 2);
    CHECK(run("scan") == 2);
    CHECK(run("frobnicate") == 2);
    CHECK(run("overlay just_one_arg") == 2);
}

TEST_CASE("synth writes deterministic image and truth pairs") {
    const fs::path a = fresh_dir("synth_a");
    const fs::path b = fresh_dir("synth_b");
    const std::string args = "--count 3 --seed 5 --width 160 --height 160 "
                             "--rbc-count 4 --parasite-count 1";
    CHECK(run("synth " + args + " --out-dir " + a.string()) == 0);
    CHECK(run("synth " + args + " --out-dir " + b.string()) == 0);

    for (const char* name : {"sample_0000.png", "sample_0001.png",
                             "sample_0002.png", "sample_0000.gt.json",
                             "sample_0001.gt.json", "sample_0002.gt.json"})
        CHECK(fs::exists(a / name));

    CHECK(dir_contents(a) == dir_contents(b));

    const GroundTruth gt =
        parse_ground_truth(read_text_file((a / "sample_0001.gt.json").string()));
    CHECK(gt.width == 160);
    CHECK(gt.seed == 6);  // base seed plus index
    CHECK(gt.parasite_count() == 1);

    CHECK(run("synth --count 0 --out-dir " + a.string()) == 2);
}

TEST_CASE("scan reports a positive smear and honors fail-on-detect") {
    const fs::path imgs = fresh_dir("scan_pos_imgs");
    const fs::path out = fresh_dir("scan_pos_out");
    REQUIRE(run("synth --count 1 --seed 301 --parasite-count 2 --out-dir " +
                imgs.string()) == 0);
    const std::string img = (imgs / "sample_0000.png").string();

    CHECK(run("scan " + img + " --out-dir " + out.string()) == 0);
    const DetectionReport rep = parse_report(
        read_text_file((out / "sample_0000.report.json").string()));
    CHECK(rep.image == "sample_0000.png");
    CHECK(rep.width == 256);
    CHECK(rep.plasmodium_found);

    const nlohmann::json summary = summary_of(out);
    CHECK(summary.at("images") == 1);
    CHECK(summary.at("failed") == 0);
    CHECK(summary.at("detections") == 1);
    CHECK(summary.at("items").size() == 1);
    CHECK(summary.at("items")[0].at("plasmodium_found") == true);
    CHECK(summary.at("errors").empty());

    CHECK(run("scan " + img + " --fail-on-detect --out-dir " +
              fresh_dir("scan_pos_fod").string()) == 3);
}

TEST_CASE("scan passes a clean smear under fail-on-detect") {
    const fs::path imgs = fresh_dir("scan_neg_imgs");
    REQUIRE(run("synth --count 1 --seed 302 --out-dir " + imgs.string()) == 0);
    CHECK(run("scan " + (imgs / "sample_0000.png").string() +
              " --fail-on-detect --out-dir " +
              fresh_dir("scan_neg_out").string()) == 0);
}

TEST_CASE("scan expands directories and keeps going after bad files") {
    const fs::path imgs = fresh_dir("scan_dir_imgs");
    const fs::path out = fresh_dir("scan_dir_out");
    REQUIRE(run("synth --count 2 --seed 310 --out-dir " + imgs.string()) == 0);
    std::ofstream((imgs / "broken.png").string()) << "not a png at all";
    std::ofstream((imgs / "notes.txt").string()) << "ignored extension";

    CHECK(run("scan " + imgs.string() + " --out-dir " + out.string()) == 0);
    CHECK(fs::exists(out / "sample_0000.report.json"));
    CHECK(fs::exists(out / "sample_0001.report.json"));

    const nlohmann::json summary = summary_of(out);
    CHECK(summary.at("images") == 2);
    CHECK(summary.at("failed") == 1);
    REQUIRE(summary.at("errors").size() == 1);
    const std::string failing = summary.at("errors")[0].at("input");
    CHECK(failing.find("broken.png") != std::string::npos);
}

TEST_CASE("scan with nothing usable exits 1") {
    const fs::path empty = fresh_dir("scan_empty");
    CHECK(run("scan " + empty.string() + " --out-dir " +
              fresh_dir("scan_empty_out").string()) == 1);
    CHECK(run("scan " + (empty / "ghost.png").string() + " --out-dir " +
              fresh_dir("scan_ghost_out").string()) == 1);
}

TEST_CASE("config files steer the scan and bad ones are usage errors") {
    const fs::path imgs = fresh_dir("scan_cfg_imgs");
    const fs::path out = fresh_dir("scan_cfg_out");
    REQUIRE(run("synth --count 1 --seed 303 --parasite-count 1 --out-dir " +
                imgs.string()) == 0);
    const std::string img = (imgs / "sample_0000.png").string();

    const fs::path good = imgs / "good.json";
    std::ofstream(good.string()) << R"({"ratio_factor": 1000000})";
    CHECK(run("scan " + img + " --config " + good.string() + " --out-dir " +
              out.string()) == 0);
    const DetectionReport rep = parse_report(
        read_text_file((out / "sample_0000.report.json").string()));
    CHECK(!rep.plasmodium_found);  // the absurd bar suppresses every contour
    CHECK(rep.config.ratio_factor == 1000000.0);

    const fs::path bad = imgs / "bad.json";
    std::ofstream(bad.string()) << R"({"mystery_knob": 1})";
    CHECK(run("scan " + img + " --config " + bad.string() + " --out-dir " +
              out.string()) == 2);
    CHECK(run("scan " + img + " --config " + (imgs / "absent.json").string() +
              " --out-dir " + out.string()) == 2);
}

TEST_CASE("tiling walks the frame in raster order with edge remainders") {
    const fs::path imgs = fresh_dir("tile_imgs");
    const fs::path out = fresh_dir("tile_out");
    REQUIRE(run("synth --count 1 --seed 304 --width 300 --height 200 "
                "--rbc-count 6 --out-dir " + imgs.string()) == 0);
    const std::string img = (imgs / "sample_0000.png").string();

    CHECK(run("scan " + img + " --tile 128x96 --out-dir " + out.string()) == 0);

    const nlohmann::json summary = summary_of(out);
    CHECK(summary.at("images") == 1);
    CHECK(summary.at("items").size() == 9);
    std::vector<std::string> names;
    for (const auto& item : summary.at("items"))
        names.push_back(item.at("image").get<std::string>());
    const std::vector<std::string> want = {
        "sample_0000_tile_r000_c000", "sample_0000_tile_r000_c001",
        "sample_0000_tile_r000_c002", "sample_0000_tile_r001_c000",
        "sample_0000_tile_r001_c001", "sample_0000_tile_r001_c002",
        "sample_0000_tile_r002_c000", "sample_0000_tile_r002_c001",
        "sample_0000_tile_r002_c002"};
    CHECK(names == want);

    // remainder tiles carry their true dimensions
    const DetectionReport corner = parse_report(read_text_file(
        (out / "sample_0000_tile_r002_c002.report.json").string()));
    CHECK(corner.width == 44);
    CHECK(corner.height == 8);

    CHECK(run("scan " + img + " --tile 32x32 --out-dir " + out.string()) == 2);
    CHECK(run("scan " + img + " --tile 128 --out-dir " + out.string()) == 2);
    CHECK(run("scan " + img + " --tile nonsense --out-dir " + out.string()) == 2);
    CHECK(run("scan " + img + " --tile 128x0 --out-dir " + out.string()) == 2);
}

TEST_CASE("parallel scans are byte-identical to serial ones") {
    const fs::path imgs = fresh_dir("jobs_imgs");
    REQUIRE(run("synth --count 2 --seed 305 --parasite-count 1 --out-dir " +
                imgs.string()) == 0);
    REQUIRE(run("synth --count 2 --seed 320 --out-dir " +
                (imgs / "neg").string()) == 0);

    const fs::path o1 = fresh_dir("jobs_serial");
    const fs::path o8 = fresh_dir("jobs_parallel");
    const std::string inputs =
        imgs.string() + " " + (imgs / "neg").string();
    CHECK(run("scan " + inputs + " --overlay --jobs 1 --out-dir " +
              o1.string()) == 0);
    CHECK(run("scan " + inputs + " --overlay --jobs 8 --out-dir " +
              o8.string()) == 0);

    const auto serial = dir_contents(o1);
    CHECK(serial.size() >= 9);  // four reports, four overlays, a summary
    CHECK(serial == dir_contents(o8));

    CHECK(run("scan " + inputs + " --jobs 0 --out-dir " +
              fresh_dir("jobs_zero").string()) == 2);
}

TEST_CASE("duplicate stems get distinct outputs") {
    const fs::path imgs = fresh_dir("dup_imgs");
    const fs::path out = fresh_dir("dup_out");
    REQUIRE(run("synth --count 1 --seed 306 --width 96 --height 96 "
                "--rbc-count 3 --out-dir " + imgs.string()) == 0);
    fs::create_directories(imgs / "again");
    fs::copy_file(imgs / "sample_0000.png", imgs / "again" / "sample_0000.png");

    CHECK(run("scan " + (imgs / "sample_0000.png").string() + " " +
              (imgs / "again" / "sample_0000.png").string() + " --out-dir " +
              out.string()) == 0);
    CHECK(fs::exists(out / "sample_0000.report.json"));
    CHECK(fs::exists(out / "sample_0000_2.report.json"));
}

TEST_CASE("overlay subcommand re-renders from a report") {
    const fs::path imgs = fresh_dir("ov_imgs");
    const fs::path out = fresh_dir("ov_out");
    const fs::path ov = fresh_dir("ov_render");
    REQUIRE(run("synth --count 1 --seed 307 --parasite-count 1 --out-dir " +
                imgs.string()) == 0);
    const std::string img = (imgs / "sample_0000.png").string();
    REQUIRE(run("scan " + img + " --overlay --out-dir " + out.string()) == 0);
    CHECK(fs::exists(out / "sample_0000.overlay.png"));

    CHECK(run("overlay " + img + " " +
              (out / "sample_0000.report.json").string() + " --out-dir " +
              ov.string()) == 0);
    CHECK(fs::exists(ov / "sample_0000.overlay.png"));

    // the scan-time overlay and the re-rendered one agree byte for byte
    CHECK(read_text_file((out / "sample_0000.overlay.png").string()) ==
          read_text_file((ov / "sample_0000.overlay.png").string()));

    // a report from a different frame size is rejected
    const fs::path other = fresh_dir("ov_other");
    REQUIRE(run("synth --count 1 --seed 308 --width 128 --height 128 "
                "--rbc-count 3 --out-dir " + other.string()) == 0);
    CHECK(run("overlay " + (other / "sample_0000.png").string() + " " +
              (out / "sample_0000.report.json").string() + " --out-dir " +
              ov.string()) == 2);

    // a missing image is an input failure, not a usage error
    CHECK(run("overlay " + (other / "nope.png").string() + " " +
              (out / "sample_0000.report.json").string() + " --out-dir " +
              ov.string()) == 1);
}
