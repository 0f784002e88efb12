#include "vp/util.hpp"

namespace vp {

double pairwise_sum(std::span<const double> a) {
    const std::size_t n = a.size();
    if (n <= 32) {
        double s = 0.0;
        for (double x : a) s += x;
        return s;
    }
    const std::size_t half = n / 2;
    return pairwise_sum(a.subspan(0, half)) + pairwise_sum(a.subspan(half));
}

} // namespace vp
