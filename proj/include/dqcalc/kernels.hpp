#pragma once

/**
 * @file kernels.hpp
 * @brief Data-parallel inner loops with serial reference versions.
 *
 * The parallel kernels split work into fixed-size blocks and combine
 * block results in index order, so output is bit-identical to the
 * serial reference regardless of thread count.  The serial versions are
 * kept for testing and for the kernel benchmark.
 */

#include <cstddef>
#include <functional>
#include <vector>

namespace dqcalc::kernels {

inline constexpr std::size_t kBlock = 2048;

/// sum_{i in [0,n)} term(i), componentwise, dim components per term.
/// Serial reference: plain blocked left-to-right accumulation.
std::vector<double> block_sum_serial(std::size_t n, std::size_t dim,
                                     const std::function<void(std::size_t, double*)>& term);

/// OpenMP version; same blocking, blocks reduced in index order.
std::vector<double> block_sum_parallel(std::size_t n, std::size_t dim,
                                       const std::function<void(std::size_t, double*)>& term);

/// out[i] = op(i) for i in [0,n); serial reference.
void map_serial(std::size_t n, const std::function<double(std::size_t)>& op,
                std::vector<double>& out);

/// OpenMP version of map_serial (embarrassingly parallel, exact match).
void map_parallel(std::size_t n, const std::function<double(std::size_t)>& op,
                  std::vector<double>& out);

}  // namespace dqcalc::kernels
