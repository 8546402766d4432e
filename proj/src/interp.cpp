#include "critchemo/interp.hpp"

#include <algorithm>
#include <cmath>

namespace critchemo {

MonotoneInterp::MonotoneInterp(const std::vector<double>& x, const std::vector<double>& y)
    : x_(x), y_(y) {
    const std::size_t n = x.size();
    slope_.assign(n, 0.0);
    if (n < 2) return;
    std::vector<double> h(n - 1), delta(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        h[i] = x[i + 1] - x[i];
        delta[i] = (y[i + 1] - y[i]) / h[i];
    }
    slope_[0] = delta[0];
    slope_[n - 1] = delta[n - 2];
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (delta[i - 1] * delta[i] <= 0.0) {
            slope_[i] = 0.0;
        } else {
            // weighted harmonic mean keeps the interpolant monotone
            const double w1 = 2.0 * h[i] + h[i - 1];
            const double w2 = h[i] + 2.0 * h[i - 1];
            slope_[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
        }
    }
}

double MonotoneInterp::operator()(double xq) const {
    const std::size_t n = x_.size();
    if (n == 0) return 0.0;
    if (xq <= x_.front()) return y_.front();
    if (xq > x_.back()) return 0.0;
    const auto it = std::upper_bound(x_.begin(), x_.end(), xq);
    const std::size_t i = std::size_t(it - x_.begin()) - 1;
    const double h = x_[i + 1] - x_[i];
    const double t = (xq - x_[i]) / h;
    const double t2 = t * t, t3 = t2 * t;
    const double h00 = 2 * t3 - 3 * t2 + 1;
    const double h10 = t3 - 2 * t2 + t;
    const double h01 = -2 * t3 + 3 * t2;
    const double h11 = t3 - t2;
    return h00 * y_[i] + h10 * h * slope_[i] + h01 * y_[i + 1] + h11 * h * slope_[i + 1];
}

}  // namespace critchemo
