#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "plasmoscan/detect.hpp"
#include "plasmoscan/synth.hpp"

namespace plasmoscan {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitAllInputsFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitDetected = 3;

/// One batch run: plain files and/or directories, optional tiling that
/// walks each image in row-major raster order like a motorized stage.
struct ScanJob {
    std::vector<std::string> inputs;
    int tile_width = 0;   // 0 = whole image
    int tile_height = 0;
    std::string out_dir = ".";
    bool write_overlays = false;
    bool fail_on_detect = false;
    int jobs = 1;
    PipelineConfig config;
};

/// Runs the job, writing one <name>.report.json per image or tile plus
/// summary.json. Returns the process exit code.
int scan(const ScanJob& job);

struct SynthJob {
    SmearSpec spec;
    int count = 1;
    std::string out_dir = ".";
};

/// Writes count image + ground-truth pairs, seeded spec.seed + index.
int run_synth(const SynthJob& job);

/// Re-renders the overlay for an existing report. The pipeline is rerun
/// with the report's config echo to recover the label map.
int run_overlay(const std::string& image_path, const std::string& report_path,
                const std::string& out_dir);

}  // namespace plasmoscan
