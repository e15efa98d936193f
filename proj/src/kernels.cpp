#include "dqcalc/kernels.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace dqcalc::kernels {

namespace {

void block_partial(std::size_t lo, std::size_t hi, std::size_t dim,
                   const std::function<void(std::size_t, double*)>& term, double* acc,
                   double* scratch) {
    for (std::size_t d = 0; d < dim; ++d) acc[d] = 0.0;
    for (std::size_t i = lo; i < hi; ++i) {
        term(i, scratch);
        for (std::size_t d = 0; d < dim; ++d) acc[d] += scratch[d];
    }
}

}  // namespace

std::vector<double> block_sum_serial(std::size_t n, std::size_t dim,
                                     const std::function<void(std::size_t, double*)>& term) {
    const std::size_t nblocks = (n + kBlock - 1) / kBlock;
    std::vector<double> partial(nblocks * dim, 0.0);
    std::vector<double> scratch(dim);
    for (std::size_t b = 0; b < nblocks; ++b) {
        std::size_t lo = b * kBlock;
        std::size_t hi = std::min(n, lo + kBlock);
        block_partial(lo, hi, dim, term, &partial[b * dim], scratch.data());
    }
    std::vector<double> out(dim, 0.0);
    for (std::size_t b = 0; b < nblocks; ++b)
        for (std::size_t d = 0; d < dim; ++d) out[d] += partial[b * dim + d];
    return out;
}

std::vector<double> block_sum_parallel(std::size_t n, std::size_t dim,
                                       const std::function<void(std::size_t, double*)>& term) {
    const std::size_t nblocks = (n + kBlock - 1) / kBlock;
    std::vector<double> partial(nblocks * dim, 0.0);
#ifdef _OPENMP
#pragma omp parallel
    {
        std::vector<double> scratch(dim);
#pragma omp for schedule(static)
        for (long long b = 0; b < static_cast<long long>(nblocks); ++b) {
            std::size_t lo = static_cast<std::size_t>(b) * kBlock;
            std::size_t hi = std::min(n, lo + kBlock);
            block_partial(lo, hi, dim, term, &partial[static_cast<std::size_t>(b) * dim],
                          scratch.data());
        }
    }
#else
    std::vector<double> scratch(dim);
    for (std::size_t b = 0; b < nblocks; ++b) {
        std::size_t lo = b * kBlock;
        std::size_t hi = std::min(n, lo + kBlock);
        block_partial(lo, hi, dim, term, &partial[b * dim], scratch.data());
    }
#endif
    // fixed index-order reduction keeps the result deterministic
    std::vector<double> out(dim, 0.0);
    for (std::size_t b = 0; b < nblocks; ++b)
        for (std::size_t d = 0; d < dim; ++d) out[d] += partial[b * dim + d];
    return out;
}

void map_serial(std::size_t n, const std::function<double(std::size_t)>& op,
                std::vector<double>& out) {
    out.resize(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = op(i);
}

void map_parallel(std::size_t n, const std::function<double(std::size_t)>& op,
                  std::vector<double>& out) {
    out.resize(n);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < static_cast<long long>(n); ++i)
        out[static_cast<std::size_t>(i)] = op(static_cast<std::size_t>(i));
#else
    for (std::size_t i = 0; i < n; ++i) out[i] = op(i);
#endif
}

}  // namespace dqcalc::kernels
