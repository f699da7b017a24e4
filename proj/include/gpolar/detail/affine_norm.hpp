#pragma once

#include <utility>
#include <vector>

#include "gpolar/matcore.hpp"

namespace gpolar::detail {

// Which scalar multiplies a piece: 1, s, conj(s), t or conj(t).
enum class Coef { One, S, SBar, T, TBar };

inline Complex coef_value(Coef c, Complex s, Complex t) {
    switch (c) {
    case Coef::One: return {1.0, 0.0};
    case Coef::S: return s;
    case Coef::SBar: return std::conj(s);
    case Coef::T: return t;
    case Coef::TBar: return std::conj(t);
    }
    return {0.0, 0.0};
}

// ||sum_k c_k(s, t) M_k||_F^2 evaluated through the Gram matrix of the pieces,
// so each evaluation costs O(k^2) instead of a matrix assembly.
class AffineNormSquared {
public:
    AffineNormSquared() = default;

    explicit AffineNormSquared(std::vector<std::pair<Coef, ComplexMatrix>> pieces) {
        const auto k = static_cast<Index>(pieces.size());
        coefs_.reserve(pieces.size());
        gram_ = ComplexMatrix::Zero(k, k);
        for (Index i = 0; i < k; ++i) {
            coefs_.push_back(pieces[static_cast<std::size_t>(i)].first);
            for (Index j = i; j < k; ++j) {
                const auto& Mi = pieces[static_cast<std::size_t>(i)].second;
                const auto& Mj = pieces[static_cast<std::size_t>(j)].second;
                gram_(i, j) = Mi.conjugate().cwiseProduct(Mj).sum();
                gram_(j, i) = std::conj(gram_(i, j));
            }
        }
    }

    double operator()(Complex s, Complex t) const {
        const auto k = static_cast<Index>(coefs_.size());
        Eigen::VectorXcd c(k);
        for (Index i = 0; i < k; ++i) {
            c(i) = coef_value(coefs_[static_cast<std::size_t>(i)], s, t);
        }
        return (c.adjoint() * gram_ * c)(0, 0).real();
    }

private:
    std::vector<Coef> coefs_;
    ComplexMatrix gram_;
};

} // namespace gpolar::detail
