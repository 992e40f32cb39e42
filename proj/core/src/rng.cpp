#include "dn/rng.hpp"

namespace dn {

WeylElement Rng::weyl(int max_y, int max_x, int terms, bool allow_imag) {
    WeylElement e;
    for (int k = 0; k < terms; ++k) {
        Gaussian c = gaussian(5, 3, allow_imag);
        if (c.is_zero()) continue;
        e += WeylElement::monomial(uniform(0, max_y), uniform(0, max_x), c);
    }
    return e;
}

DNMatrix Rng::dn_matrix(int n, bool symmetric, int num_bound, int den_bound) {
    DNMatrix a(n, true);
    for (int i = 0; i <= n; ++i) {
        for (int j = i; j <= n; ++j) {
            if (symmetric) {
                // Fill each tau orbit {(i,j), (n-j,n-i)} once.
                int oi = n - j, oj = n - i;
                bool representative = (i < oi) || (i == oi && j <= oj);
                if (!representative) continue;
                Gaussian v = rational(num_bound, den_bound);
                a.set(i, j, v);
                a.set(oi, oj, v);
            } else {
                a.set(i, j, rational(num_bound, den_bound));
            }
        }
    }
    return a;
}

}  // namespace dn
