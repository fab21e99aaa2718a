#include "plasmoscan/batch.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cstdio>
#include <filesystem>
#include <map>
#include <thread>

#include <json.hpp>
#ifdef _OPENMP
#include <omp.h>
#endif

#include "plasmoscan/io.hpp"
#include "plasmoscan/overlay.hpp"
#include "plasmoscan/report_json.hpp"

namespace plasmoscan {

namespace fs = std::filesystem;

namespace {

bool has_image_extension(const fs::path& p) {
    std::string ext = p.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return ext == ".png" || ext == ".ppm" || ext == ".pgm";
}

struct WorkItem {
    std::string path;
    std::string display;   // basename, used as the report's image name
    std::string out_stem;  // collision-free output prefix
};

struct TileRow {
    std::string image;
    std::string report_file;
    std::string overlay_file;
    bool found = false;
};

struct ItemOutcome {
    bool ok = false;
    std::string error;
    std::vector<TileRow> rows;
};

ColorImage crop(const ColorImage& img, int x0, int y0, int w, int h) {
    ColorImage out(w, h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            const std::size_t src = img.r.idx(x0 + x, y0 + y);
            const std::size_t dst = out.r.idx(x, y);
            out.r.data[dst] = img.r.data[src];
            out.g.data[dst] = img.g.data[src];
            out.b.data[dst] = img.b.data[src];
        }
    return out;
}

void process_item(const WorkItem& item, const ScanJob& job, ItemOutcome& out) {
    ColorImage img;
    try {
        img = load_color(item.path);
    } catch (const std::exception& e) {
        out.error = e.what();
        return;
    }

    const int tw = job.tile_width > 0 ? job.tile_width : img.width();
    const int th = job.tile_height > 0 ? job.tile_height : img.height();
    const bool tiled = job.tile_width > 0;
    const int rows = (img.height() + th - 1) / th;
    const int cols = (img.width() + tw - 1) / tw;

    try {
        for (int r = 0; r < rows; ++r) {
            for (int c = 0; c < cols; ++c) {
                const int x0 = c * tw;
                const int y0 = r * th;
                const int w = std::min(tw, img.width() - x0);
                const int h = std::min(th, img.height() - y0);

                std::string name = item.display;
                std::string stem = item.out_stem;
                if (tiled) {
                    char suffix[32];
                    std::snprintf(suffix, sizeof suffix, "_tile_r%03d_c%03d", r, c);
                    name = item.out_stem + suffix;
                    stem = name;
                }

                const ColorImage tile =
                    tiled ? crop(img, x0, y0, w, h) : std::move(img);
                PipelineResult res = run_pipeline_traced(tile, job.config);
                res.report.image = name;

                TileRow row;
                row.image = name;
                row.found = res.report.plasmodium_found;
                row.report_file = stem + ".report.json";
                write_text_file((fs::path(job.out_dir) / row.report_file).string(),
                                serialize_report(res.report));
                if (job.write_overlays) {
                    row.overlay_file = stem + ".overlay.png";
                    const ColorImage painted =
                        render_overlay(tile, res.label_map, res.report.contours);
                    save_png((fs::path(job.out_dir) / row.overlay_file).string(),
                             painted);
                }
                out.rows.push_back(std::move(row));
            }
        }
        out.ok = true;
    } catch (const std::exception& e) {
        out.error = e.what();
        out.rows.clear();
    }
}

}  // namespace

int scan(const ScanJob& job) {
    if ((job.tile_width > 0) != (job.tile_height > 0)) {
        std::fprintf(stderr, "scan: tile width and height must be given together\n");
        return kExitUsage;
    }
    if (job.tile_width > 0 && (job.tile_width < 64 || job.tile_height < 64)) {
        std::fprintf(stderr, "scan: tiles must be at least 64x64\n");
        return kExitUsage;
    }
    if (job.jobs < 1) {
        std::fprintf(stderr, "scan: jobs must be at least 1\n");
        return kExitUsage;
    }

    std::error_code ec;
    fs::create_directories(job.out_dir, ec);
    if (ec) {
        std::fprintf(stderr, "scan: cannot create %s: %s\n", job.out_dir.c_str(),
                     ec.message().c_str());
        return kExitUsage;
    }

    // expand directories in place, entries sorted for reproducibility
    std::vector<std::string> paths;
    std::vector<std::string> unreadable;
    for (const std::string& input : job.inputs) {
        if (fs::is_directory(input, ec)) {
            std::vector<std::string> entries;
            for (const auto& e : fs::directory_iterator(input, ec))
                if (e.is_regular_file() && has_image_extension(e.path()))
                    entries.push_back(e.path().string());
            std::sort(entries.begin(), entries.end());
            paths.insert(paths.end(), entries.begin(), entries.end());
        } else if (fs::is_regular_file(input, ec)) {
            paths.push_back(input);
        } else {
            unreadable.push_back(input);
        }
    }

    std::vector<WorkItem> items;
    std::map<std::string, int> stem_uses;
    for (const std::string& p : paths) {
        WorkItem item;
        item.path = p;
        item.display = fs::path(p).filename().string();
        std::string stem = fs::path(p).stem().string();
        const int n = ++stem_uses[stem];
        item.out_stem = n == 1 ? stem : stem + "_" + std::to_string(n);
        items.push_back(std::move(item));
    }

    std::vector<ItemOutcome> outcomes(items.size());
    const int workers =
        std::max(1, std::min<int>(job.jobs, static_cast<int>(items.size())));
    if (workers == 1) {
        for (std::size_t i = 0; i < items.size(); ++i)
            process_item(items[i], job, outcomes[i]);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int t = 0; t < workers; ++t) {
            pool.emplace_back([&] {
#ifdef _OPENMP
                // thread pool already saturates the cores
                omp_set_num_threads(1);
#endif
                for (;;) {
                    const std::size_t i = next.fetch_add(1);
                    if (i >= items.size()) break;
                    process_item(items[i], job, outcomes[i]);
                }
            });
        }
        for (auto& t : pool) t.join();
    }

    nlohmann::ordered_json summary;
    int ok_images = 0;
    int failed = 0;
    int detections = 0;
    auto jitems = nlohmann::ordered_json::array();
    auto jerrors = nlohmann::ordered_json::array();

    for (const std::string& input : unreadable) {
        nlohmann::ordered_json je;
        je["input"] = input;
        je["error"] = "not a readable file or directory";
        jerrors.push_back(std::move(je));
        ++failed;
    }
    for (std::size_t i = 0; i < items.size(); ++i) {
        const ItemOutcome& o = outcomes[i];
        if (!o.ok) {
            nlohmann::ordered_json je;
            je["input"] = items[i].path;
            je["error"] = o.error;
            jerrors.push_back(std::move(je));
            ++failed;
            continue;
        }
        ++ok_images;
        for (const TileRow& row : o.rows) {
            nlohmann::ordered_json jr;
            jr["image"] = row.image;
            jr["report"] = row.report_file;
            if (!row.overlay_file.empty()) jr["overlay"] = row.overlay_file;
            jr["plasmodium_found"] = row.found;
            if (row.found) ++detections;
            jitems.push_back(std::move(jr));
        }
    }

    summary["images"] = ok_images;
    summary["failed"] = failed;
    summary["detections"] = detections;
    summary["items"] = std::move(jitems);
    summary["errors"] = std::move(jerrors);
    write_text_file((fs::path(job.out_dir) / "summary.json").string(),
                    summary.dump(2) + "\n");

    if (ok_images == 0) return kExitAllInputsFailed;
    if (job.fail_on_detect && detections > 0) return kExitDetected;
    return kExitOk;
}

int run_synth(const SynthJob& job) {
    if (job.count < 1) {
        std::fprintf(stderr, "synth: count must be at least 1\n");
        return kExitUsage;
    }
    std::error_code ec;
    fs::create_directories(job.out_dir, ec);
    if (ec) {
        std::fprintf(stderr, "synth: cannot create %s: %s\n", job.out_dir.c_str(),
                     ec.message().c_str());
        return kExitUsage;
    }

    try {
        for (int i = 0; i < job.count; ++i) {
            SmearSpec spec = job.spec;
            spec.seed = job.spec.seed + static_cast<std::uint64_t>(i);
            const auto [img, gt] = generate(spec);

            char name[32];
            std::snprintf(name, sizeof name, "sample_%04d", i);
            save_png((fs::path(job.out_dir) / (std::string(name) + ".png")).string(),
                     img);
            write_text_file(
                (fs::path(job.out_dir) / (std::string(name) + ".gt.json")).string(),
                serialize_ground_truth(gt));
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "synth: %s\n", e.what());
        return kExitAllInputsFailed;
    }
    return kExitOk;
}

int run_overlay(const std::string& image_path, const std::string& report_path,
                const std::string& out_dir) {
    ColorImage img;
    DetectionReport report;
    try {
        img = load_color(image_path);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "overlay: %s\n", e.what());
        return kExitAllInputsFailed;
    }
    try {
        report = parse_report(read_text_file(report_path));
    } catch (const std::exception& e) {
        std::fprintf(stderr, "overlay: %s\n", e.what());
        return kExitUsage;
    }
    if (report.width != img.width() || report.height != img.height()) {
        std::fprintf(stderr, "overlay: report does not match image dimensions\n");
        return kExitUsage;
    }

    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) {
        std::fprintf(stderr, "overlay: cannot create %s: %s\n", out_dir.c_str(),
                     ec.message().c_str());
        return kExitUsage;
    }

    try {
        const PipelineResult res = run_pipeline_traced(img, report.config);
        const ColorImage painted =
            render_overlay(img, res.label_map, report.contours);
        const std::string stem = fs::path(image_path).stem().string();
        save_png((fs::path(out_dir) / (stem + ".overlay.png")).string(), painted);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "overlay: %s\n", e.what());
        return kExitAllInputsFailed;
    }
    return kExitOk;
}

}  // namespace plasmoscan
