#include "copt/sampling.hpp"

#include <numeric>
#include <stdexcept>

namespace copt {

std::vector<Vector> uniform_sample(const Box& box, std::size_t count, Rng& rng) {
    validate_box(box);
    std::vector<Vector> out(count, Vector(box.dim()));
    for (auto& p : out) {
        for (std::size_t i = 0; i < box.dim(); ++i) {
            p[i] = rng.uniform(box.lower[i], box.upper[i]);
        }
    }
    return out;
}

std::vector<Vector> lhs_sample(const Box& box, std::size_t count, Rng& rng) {
    validate_box(box);
    if (count == 0) return {};
    const std::size_t d = box.dim();

    std::vector<std::vector<std::size_t>> strata(d, std::vector<std::size_t>(count));
    for (std::size_t axis = 0; axis < d; ++axis) {
        auto& perm = strata[axis];
        std::iota(perm.begin(), perm.end(), std::size_t{0});
        for (std::size_t k = count - 1; k > 0; --k) {
            std::size_t j = rng.next_below(k + 1);
            std::swap(perm[k], perm[j]);
        }
    }

    std::vector<Vector> out(count, Vector(d));
    for (std::size_t k = 0; k < count; ++k) {
        for (std::size_t axis = 0; axis < d; ++axis) {
            double cell = (static_cast<double>(strata[axis][k]) + rng.next_double()) /
                          static_cast<double>(count);
            out[k][axis] = box.lower[axis] + cell * (box.upper[axis] - box.lower[axis]);
        }
    }
    return out;
}

} // namespace copt
