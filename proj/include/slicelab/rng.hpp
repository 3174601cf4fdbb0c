#pragma once

#include <cstdint>
#include <vector>

#include "slicelab/rational.hpp"
#include "slicelab/seqspace.hpp"
#include "slicelab/tree.hpp"

namespace slicelab::rng {

/// 64-bit linear congruential generator, constants fixed so campaigns are
/// reproducible across builds:  s <- s * 6364136223846793005 + 1442695040888963407.
class Lcg64 {
  public:
    explicit Lcg64(std::uint64_t seed) : state_(seed) {
        for (int i = 0; i < 8; ++i) next();  // decorrelate near seeds
    }

    std::uint64_t next() {
        state_ = state_ * 6364136223846793005ULL + 1442695040888963407ULL;
        return state_ >> 16;
    }

    /// Uniform in [0, n).
    std::uint64_t below(std::uint64_t n) { return next() % n; }

    int range(int lo, int hi) {  // inclusive
        return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    bool coin() { return (next() & 1) != 0; }

    /// Small nonzero rational: numerator in [-9,9]\{0}, denominator in [1,9].
    Rational small_nonzero() {
        int num = range(1, 9) * (coin() ? 1 : -1);
        int den = range(1, 9);
        return make_rat(num, den);
    }

    /// Small rational allowing zero: numerator in [-9,9].
    Rational small() {
        int num = range(-9, 9);
        if (num == 0) return Rational(0);
        return make_rat(num, range(1, 9));
    }

    /// Derived stream for case `index` of a campaign.
    Lcg64 fork(std::uint64_t index) const {
        return Lcg64(state_ ^ (0x9E3779B97F4A7C15ULL * (index + 1)));
    }

  private:
    std::uint64_t state_;
};

/// Random dual-norm-one functional obeying the margin rule: coordinate
/// support on distinct nodes of depth <= max_depth - 1, never exhausting
/// the children of a parent, coefficients and limit coefficient drawn as
/// small rationals, then normalized in the c* norm.
seq::Functional margin_functional(const tree::Encoding& enc, Lcg64& gen,
                                  int support_size, bool with_limit = true);

}  // namespace slicelab::rng
