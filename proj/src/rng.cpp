#include "brownwind/rng.hpp"

#include <cmath>
#include <numbers>

namespace brownwind {

double RngStream::normal() noexcept {
    if (spare_) {
        double z = *spare_;
        spare_.reset();
        return z;
    }
    // 1 - uniform() lies in (0, 1], so the log is finite.
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double phi = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(phi);
    return r * std::cos(phi);
}

}  // namespace brownwind
