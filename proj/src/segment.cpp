#include "plasmoscan/segment.hpp"

#include <cmath>

namespace plasmoscan {

// Runs on the histogram: each pass splits the 256 bins at floor(T) and
// recomputes the two class means from exact integer sums, so the result
// depends only on the intensity distribution.
ThresholdResult iterative_threshold(const GrayImage& img, double t0) {
    if (img.empty()) throw std::invalid_argument("iterative_threshold: empty image");
    if (!(t0 > 0.0)) throw std::invalid_argument("iterative_threshold: t0 must be > 0");

    const Histogram h = histogram(img);

    // prefix counts / value sums over bins 0..v
    std::array<std::uint64_t, 256> cum_count{};
    std::array<std::uint64_t, 256> cum_sum{};
    std::uint64_t count = 0, sum = 0;
    for (int v = 0; v < 256; ++v) {
        count += h.bins[v];
        sum += h.bins[v] * static_cast<std::uint64_t>(v);
        cum_count[v] = count;
        cum_sum[v] = sum;
    }

    double t = static_cast<double>(sum) / static_cast<double>(count);
    constexpr int kMaxIterations = 256;
    for (int iter = 1; iter <= kMaxIterations; ++iter) {
        int cutoff = static_cast<int>(std::floor(t));
        if (cutoff < 0) cutoff = 0;
        if (cutoff > 255) cutoff = 255;

        const std::uint64_t n2 = cum_count[cutoff];
        const std::uint64_t s2 = cum_sum[cutoff];
        const std::uint64_t n1 = count - n2;
        const std::uint64_t s1 = sum - s2;
        if (n1 == 0 || n2 == 0)
            throw DegenerateImageError(
                "iterative_threshold: split produced an empty class (constant image?)");

        const double mu1 = static_cast<double>(s1) / static_cast<double>(n1);
        const double mu2 = static_cast<double>(s2) / static_cast<double>(n2);
        const double next = 0.5 * (mu1 + mu2);
        const bool converged = std::fabs(next - t) < t0;
        t = next;
        if (converged) return {t, iter, true};
    }
    return {t, kMaxIterations, false};
}

BinaryImage binarize(const GrayImage& img, double threshold) {
    BinaryImage out(img.width, img.height);
    const std::size_t count = img.data.size();
    for (std::size_t i = 0; i < count; ++i)
        out.data[i] = img.data[i] > threshold ? 1 : 0;
    return out;
}

}  // namespace plasmoscan
