#pragma once

#include <random>

#include "dn/dn_matrix.hpp"
#include "dn/weyl.hpp"

namespace dn {

/// Seeded generator for the property suites; every report records the seed.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    int uniform(int lo, int hi) {  // inclusive
        return std::uniform_int_distribution<int>(lo, hi)(eng_);
    }
    double real01() { return std::uniform_real_distribution<double>(0.0, 1.0)(eng_); }

    Rational rational(int num_bound = 9, int den_bound = 4) {
        int num = uniform(-num_bound, num_bound);
        int den = uniform(1, den_bound);
        Rational r(num, den);
        r.canonicalize();
        return r;
    }

    Gaussian gaussian(int num_bound = 9, int den_bound = 4, bool allow_imag = false) {
        Gaussian g(rational(num_bound, den_bound));
        if (allow_imag && uniform(0, 3) == 0) g.im = rational(num_bound, den_bound);
        return g;
    }

    WeylElement weyl(int max_y = 2, int max_x = 2, int terms = 3, bool allow_imag = false);

    /// Random exact defining matrix; when symmetric, entries come in
    /// tau-orbits a_ij = a_{n-j,n-i}.
    DNMatrix dn_matrix(int n, bool symmetric, int num_bound = 9, int den_bound = 4);

    std::mt19937_64& engine() { return eng_; }

  private:
    std::mt19937_64 eng_;
};

}  // namespace dn
