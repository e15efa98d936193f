#include <doctest.h>

#include <cmath>

#include "dqcalc/kernels.hpp"

using namespace dqcalc;

TEST_CASE("parallel block sum is bit-identical to the serial reference") {
    auto term = [](std::size_t i, double* out) {
        out[0] = std::sin(0.001 * static_cast<double>(i));
        out[1] = 1.0 / (1.0 + static_cast<double>(i));
    };
    // sizes straddling the block boundary
    for (std::size_t n : {0u, 1u, 2047u, 2048u, 2049u, 65536u, 100001u}) {
        auto a = kernels::block_sum_serial(n, 2, term);
        auto b = kernels::block_sum_parallel(n, 2, term);
        CHECK(a == b);
    }
}

TEST_CASE("parallel map is bit-identical to the serial reference") {
    auto op = [](std::size_t i) { return std::exp(-0.001 * static_cast<double>(i)); };
    for (std::size_t n : {0u, 1u, 2048u, 40000u}) {
        std::vector<double> a, b;
        kernels::map_serial(n, op, a);
        kernels::map_parallel(n, op, b);
        CHECK(a == b);
    }
}

TEST_CASE("block sum result does not depend on thread count twice over") {
    auto term = [](std::size_t i, double* out) {
        out[0] = std::cos(0.01 * static_cast<double>(i));
    };
    auto first = kernels::block_sum_parallel(123457, 1, term);
    auto second = kernels::block_sum_parallel(123457, 1, term);
    CHECK(first == second);
}
