#include "ssct/metrics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace ssct {

namespace {
void check_pair(const Image& a, const Image& b) {
    if (a.size != b.size)
        throw std::invalid_argument("metric: image sizes differ, " + std::to_string(a.size) +
                                    " vs " + std::to_string(b.size));
}
} // namespace

double psnr(const Image& reference, const Image& test, double peak) {
    check_pair(reference, test);
    double acc = 0.0;
    std::size_t n = 0;
    for (int y = 0; y < reference.size; ++y)
        for (int x = 0; x < reference.size; ++x) {
            if (!inside_circle(reference.size, y, x)) continue;
            const double d = static_cast<double>(reference.at(y, x)) - test.at(y, x);
            acc += d * d;
            ++n;
        }
    const double mse = acc / static_cast<double>(n);
    if (mse == 0.0) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(peak * peak / mse);
}

double ssim(const Image& reference, const Image& test) {
    check_pair(reference, test);
    const int n = reference.size;
    if (n < 16) throw std::invalid_argument("ssim: image size must be >= 16");
    constexpr int win = 11;
    constexpr int half = win / 2;
    constexpr double sigma = 1.5;
    constexpr double k1 = 0.01, k2 = 0.03, range = 1.0;
    const double c1 = (k1 * range) * (k1 * range);
    const double c2 = (k2 * range) * (k2 * range);

    double wsum = 0.0;
    double w[win][win];
    for (int i = 0; i < win; ++i)
        for (int j = 0; j < win; ++j) {
            const double dy = i - half, dx = j - half;
            w[i][j] = std::exp(-(dx * dx + dy * dy) / (2.0 * sigma * sigma));
            wsum += w[i][j];
        }
    for (int i = 0; i < win; ++i)
        for (int j = 0; j < win; ++j) w[i][j] /= wsum;

    double acc = 0.0;
    std::size_t count = 0;
    for (int y = half; y < n - half; ++y)
        for (int x = half; x < n - half; ++x) {
            if (!inside_circle(n, y, x)) continue;
            double mx = 0, my = 0;
            for (int i = 0; i < win; ++i)
                for (int j = 0; j < win; ++j) {
                    mx += w[i][j] * reference.at(y + i - half, x + j - half);
                    my += w[i][j] * test.at(y + i - half, x + j - half);
                }
            double vx = 0, vy = 0, cov = 0;
            for (int i = 0; i < win; ++i)
                for (int j = 0; j < win; ++j) {
                    const double dx = reference.at(y + i - half, x + j - half) - mx;
                    const double dy = test.at(y + i - half, x + j - half) - my;
                    vx += w[i][j] * dx * dx;
                    vy += w[i][j] * dy * dy;
                    cov += w[i][j] * dx * dy;
                }
            const double num = (2.0 * mx * my + c1) * (2.0 * cov + c2);
            const double den = (mx * mx + my * my + c1) * (vx + vy + c2);
            acc += num / den;
            ++count;
        }
    return acc / static_cast<double>(count);
}

} // namespace ssct
