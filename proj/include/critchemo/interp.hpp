// interp.hpp -- monotone cubic (Fritsch-Carlson) interpolation of radial
// profiles, used by the scaling transform and gauge alignment.
#ifndef CRITCHEMO_INTERP_HPP
#define CRITCHEMO_INTERP_HPP

#include <cstddef>
#include <vector>

namespace critchemo {

class MonotoneInterp {
public:
    // x strictly increasing. Queries left of x.front() clamp to y.front();
    // queries right of x.back() return 0 (radial profiles vanish off-grid).
    MonotoneInterp(const std::vector<double>& x, const std::vector<double>& y);

    double operator()(double xq) const;

private:
    const std::vector<double>& x_;
    std::vector<double> y_;
    std::vector<double> slope_;  // endpoint derivatives per node
};

}  // namespace critchemo

#endif
