#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "plasmoscan/detect.hpp"
#include "plasmoscan/enhance.hpp"
#include "plasmoscan/morph.hpp"
#include "plasmoscan/rng.hpp"
#include "plasmoscan/serial.hpp"
#include "plasmoscan/synth.hpp"
#include "plasmoscan/texture.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double best_of(int reps, const std::function<void()>& fn) {
    double best = 1e300;
    for (int i = 0; i < reps; ++i) {
        const auto t0 = Clock::now();
        fn();
        const auto t1 = Clock::now();
        best = std::min(best,
                        std::chrono::duration<double, std::milli>(t1 - t0).count());
    }
    return best;
}

void row(const std::string& name, double serial_ms, double parallel_ms,
         bool match) {
    std::printf("%-22s %10.2f ms %10.2f ms %7.2fx   %s\n", name.c_str(),
                serial_ms, parallel_ms, serial_ms / parallel_ms,
                match ? "identical" : "MISMATCH");
}

}  // namespace

int main() {
    using namespace plasmoscan;

    const int n = 1024;
    GrayImage img(n, n);
    SplitMix64 rng(7);
    for (auto& v : img.data) v = static_cast<std::uint8_t>(rng.next_below(256));
    BinaryImage mask(n, n);
    for (auto& v : mask.data) v = static_cast<std::uint8_t>(rng.next_below(2));
    const StructuringElement se = StructuringElement::square(3);
    const Kernel lap = laplacian_kernel();

    std::printf("%-22s %13s %13s %9s\n", "kernel (1024x1024)", "serial",
                "parallel", "speedup");

    {
        SignedImage a, b;
        const double ts = best_of(3, [&] { a = serial::convolve(img, lap); });
        const double tp = best_of(3, [&] { b = convolve(img, lap); });
        row("convolve 3x3", ts, tp, a == b);
    }
    {
        Histogram a, b;
        const double ts = best_of(3, [&] { a = serial::histogram(img); });
        const double tp = best_of(3, [&] { b = histogram(img); });
        row("histogram", ts, tp, a == b);
    }
    {
        BinaryImage a, b;
        const double ts = best_of(3, [&] { a = serial::dilate(mask, se); });
        const double tp = best_of(3, [&] { b = dilate(mask, se); });
        row("dilate 3x3", ts, tp, a == b);
    }
    {
        BinaryImage a, b;
        const double ts = best_of(3, [&] { a = serial::erode(mask, se); });
        const double tp = best_of(3, [&] { b = erode(mask, se); });
        row("erode 3x3", ts, tp, a == b);
    }
    {
        GradientMap a, b;
        const double ts = best_of(3, [&] { a = serial::gradient_magnitude(img); });
        const double tp = best_of(3, [&] { b = gradient_magnitude(img); });
        row("sobel magnitude", ts, tp, a == b);
    }
    {
        SmearSpec spec;
        spec.width = n;
        spec.height = n;
        spec.rbc_count = 170;
        spec.parasite_count = 6;
        spec.seed = 11;
        const auto [smear, gt] = generate(spec);
        (void)gt;
        DetectionReport report;
        const double tp =
            best_of(3, [&] { report = run_pipeline(smear, PipelineConfig{}); });
        std::printf("%-22s %13s %10.2f ms           (%zu contours)\n",
                    "full pipeline", "", tp, report.contours.size());
    }
    return 0;
}
