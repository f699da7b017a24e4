#pragma once

// Counter-based random substreams: stream (seed, k1, k2, ...) is a pure function
// of its key, so trials can run in any order or on any thread.

#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

#include "gpolar/matcore.hpp"

namespace gpolar {

enum class Distribution { UniformReal, ComplexGaussian };

using Rng = std::mt19937_64;

inline Rng substream(std::uint64_t seed, std::initializer_list<std::uint64_t> key) {
    std::vector<std::uint32_t> words;
    words.reserve(2 * (key.size() + 1));
    auto push = [&](std::uint64_t v) {
        words.push_back(static_cast<std::uint32_t>(v & 0xffffffffu));
        words.push_back(static_cast<std::uint32_t>(v >> 32));
    };
    push(seed);
    for (auto k : key) push(k);
    std::seed_seq seq(words.begin(), words.end());
    return Rng(seq);
}

/// Entries i.i.d. uniform on [0, 1) with zero imaginary part.
inline ComplexMatrix random_uniform_real(Rng& rng, Index rows, Index cols) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    ComplexMatrix M(rows, cols);
    for (Index j = 0; j < cols; ++j)
        for (Index i = 0; i < rows; ++i) M(i, j) = Complex(u(rng), 0.0);
    return M;
}

/// Entries i.i.d. standard complex normal, E|z|^2 = 1.
inline ComplexMatrix random_complex_gaussian(Rng& rng, Index rows, Index cols) {
    std::normal_distribution<double> g(0.0, std::sqrt(0.5));
    ComplexMatrix M(rows, cols);
    for (Index j = 0; j < cols; ++j)
        for (Index i = 0; i < rows; ++i) {
            const double re = g(rng);
            M(i, j) = Complex(re, g(rng));
        }
    return M;
}

inline ComplexMatrix random_matrix(Rng& rng, Index rows, Index cols, Distribution dist) {
    return dist == Distribution::UniformReal ? random_uniform_real(rng, rows, cols)
                                             : random_complex_gaussian(rng, rows, cols);
}

/// Complex Gaussian m x n matrix of rank exactly min(rank, m, n) (generically).
inline ComplexMatrix random_low_rank(Rng& rng, Index rows, Index cols, Index rank) {
    if (rank <= 0) {
        return ComplexMatrix::Zero(rows, cols);
    }
    return random_complex_gaussian(rng, rows, rank) * random_complex_gaussian(rng, rank, cols);
}

} // namespace gpolar
