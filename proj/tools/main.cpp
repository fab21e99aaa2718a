#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "plasmoscan/batch.hpp"
#include "plasmoscan/report_json.hpp"

namespace {

bool parse_tile(const std::string& text, int& w, int& h) {
    char extra = '\0';
    return std::sscanf(text.c_str(), "%dx%d%c", &w, &h, &extra) == 2 && w > 0 &&
           h > 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Stained-smear parasite scanner"};
    app.require_subcommand(1);

    // scan
    auto* scan_cmd =
        app.add_subcommand("scan", "Analyze images or raster-tiled slides");
    std::vector<std::string> inputs;
    std::string config_path;
    std::string tile_text;
    plasmoscan::ScanJob job;
    scan_cmd->add_option("inputs", inputs, "Image files or directories")
        ->required();
    scan_cmd->add_option("--config", config_path, "Pipeline config JSON");
    scan_cmd->add_option("--out-dir", job.out_dir, "Output directory");
    scan_cmd->add_option("--tile", tile_text,
                         "Tile size WxH; omit to scan whole images");
    scan_cmd->add_flag("--overlay", job.write_overlays,
                       "Write an annotated PNG next to each report");
    scan_cmd->add_flag("--fail-on-detect", job.fail_on_detect,
                       "Exit 3 when any parasite is found");
    scan_cmd->add_option("--jobs", job.jobs, "Worker threads");

    // synth
    auto* synth_cmd =
        app.add_subcommand("synth", "Generate a synthetic smear corpus");
    plasmoscan::SynthJob synth;
    synth_cmd->add_option("--count", synth.count, "Number of images");
    synth_cmd->add_option("--seed", synth.spec.seed, "Seed of the first image");
    synth_cmd->add_option("--out-dir", synth.out_dir, "Output directory");
    synth_cmd->add_option("--width", synth.spec.width, "Image width");
    synth_cmd->add_option("--height", synth.spec.height, "Image height");
    synth_cmd->add_option("--rbc-count", synth.spec.rbc_count,
                          "Red cells per image");
    synth_cmd->add_option("--parasite-count", synth.spec.parasite_count,
                          "Parasites per image");

    // overlay
    auto* overlay_cmd =
        app.add_subcommand("overlay", "Re-render the overlay for a report");
    std::string image_path;
    std::string report_path;
    std::string overlay_out = ".";
    overlay_cmd->add_option("image", image_path, "Scanned image")->required();
    overlay_cmd->add_option("report", report_path, "Its report JSON")->required();
    overlay_cmd->add_option("--out-dir", overlay_out, "Output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? plasmoscan::kExitOk : plasmoscan::kExitUsage;
    }

    if (scan_cmd->parsed()) {
        if (!config_path.empty()) {
            try {
                job.config = plasmoscan::load_config_file(config_path);
            } catch (const std::exception& e) {
                std::fprintf(stderr, "scan: %s\n", e.what());
                return plasmoscan::kExitUsage;
            }
        }
        if (!tile_text.empty() &&
            !parse_tile(tile_text, job.tile_width, job.tile_height)) {
            std::fprintf(stderr, "scan: --tile expects WxH, e.g. 256x256\n");
            return plasmoscan::kExitUsage;
        }
        job.inputs = inputs;
        return plasmoscan::scan(job);
    }
    if (synth_cmd->parsed()) return plasmoscan::run_synth(synth);
    return plasmoscan::run_overlay(image_path, report_path, overlay_out);
}
