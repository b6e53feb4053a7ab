#pragma once

// Seeded sample generation for the numeric checks. Draws go through an
// explicit 53-bit mapping of mt19937_64 output rather than
// std::uniform_real_distribution, whose output is implementation-defined;
// report determinism depends on these streams being bit-identical
// everywhere.

#include <complex>
#include <cstdint>
#include <vector>

#include "virasoro/errors.hpp"
#include "virasoro/rational.hpp"

#include <random>

namespace virasoro {

class SampleGen {
  public:
    explicit SampleGen(std::uint64_t seed) : rng_(seed) {}

    double uniform01() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // Closed range [lo, hi]. Modulo bias is irrelevant here; determinism is
    // what matters.
    long pick_int(long lo, long hi) {
        return lo + static_cast<long>(rng_() % static_cast<std::uint64_t>(hi - lo + 1));
    }

    std::complex<double> disc(double radius) {
        for (;;) {
            double x = uniform(-radius, radius);
            double y = uniform(-radius, radius);
            if (x * x + y * y <= radius * radius)
                return {x, y};
        }
    }

    std::complex<double> annulus(double r_min, double r_max) {
        for (;;) {
            std::complex<double> p = disc(r_max);
            if (std::abs(p) >= r_min)
                return p;
        }
    }

    // n points in the disc with pairwise separation at least min_sep.
    // Restarts the whole configuration when a draw gets stuck, so the
    // result depends only on the seed.
    std::vector<std::complex<double>> separated_points(int n, double radius, double min_sep) {
        for (int attempt = 0; attempt < 200; ++attempt) {
            std::vector<std::complex<double>> pts;
            bool ok = true;
            for (int i = 0; i < n && ok; ++i) {
                int tries = 0;
                for (;;) {
                    std::complex<double> c = disc(radius);
                    bool clear = true;
                    for (const auto& p : pts)
                        if (std::abs(c - p) < min_sep) {
                            clear = false;
                            break;
                        }
                    if (clear) {
                        pts.push_back(c);
                        break;
                    }
                    if (++tries > 500) {
                        ok = false;
                        break;
                    }
                }
            }
            if (ok)
                return pts;
        }
        throw Error("separation constraints unsatisfiable for requested point count");
    }

    Rational rational(long num_lo, long num_hi, long den_max) {
        return make_rational(pick_int(num_lo, num_hi), pick_int(1, den_max));
    }

    std::vector<Rational> distinct_rationals(int n, long num_lo = -50, long num_hi = 50,
                                             long den_max = 20) {
        std::vector<Rational> pts;
        int guard = 0;
        while (static_cast<int>(pts.size()) < n) {
            Rational r = rational(num_lo, num_hi, den_max);
            bool fresh = true;
            for (const auto& p : pts)
                if (p == r) {
                    fresh = false;
                    break;
                }
            if (fresh)
                pts.push_back(r);
            if (++guard > 100000)
                throw Error("could not draw distinct rational points");
        }
        return pts;
    }

  private:
    std::mt19937_64 rng_;
};

} // namespace virasoro
