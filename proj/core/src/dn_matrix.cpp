#include "dn/dn_matrix.hpp"

#include "dn/errors.hpp"

namespace dn {

DNMatrix::DNMatrix(int n, bool exact) : n_(n), exact_(exact) {
    if (n < 0) throw MalformedMatrix("DNMatrix needs n >= 0");
    std::size_t count = static_cast<std::size_t>(n + 1) * (n + 2) / 2;
    upper_.assign(count, Gaussian());
    upper_c_.assign(count, {0.0, 0.0});
}

int DNMatrix::upper_index(int i, int j) const {
    if (i < 0 || j < i || j > n_) throw MalformedMatrix("upper-triangle index out of range");
    return i * (n_ + 1) - i * (i - 1) / 2 + (j - i);
}

Gaussian DNMatrix::entry(int i, int j) const {
    if (!exact_) throw InexactInput("exact entry requested from a numeric matrix");
    if (i == j + 1) return Gaussian(1);
    if (i > j) return Gaussian();
    return upper_[static_cast<std::size_t>(upper_index(i, j))];
}

std::complex<double> DNMatrix::entry_c(int i, int j) const {
    if (i == j + 1) return {1.0, 0.0};
    if (i > j) return {0.0, 0.0};
    return upper_c_[static_cast<std::size_t>(upper_index(i, j))];
}

void DNMatrix::set(int i, int j, const Gaussian& v) {
    int k = upper_index(i, j);
    upper_[static_cast<std::size_t>(k)] = v;
    upper_c_[static_cast<std::size_t>(k)] = v.to_complex();
}

void DNMatrix::set(int i, int j, std::complex<double> v) {
    int k = upper_index(i, j);
    upper_c_[static_cast<std::size_t>(k)] = v;
    exact_ = false;
}

DNMatrix DNMatrix::tau() const {
    DNMatrix r(n_, exact_);
    for (int i = 0; i <= n_; ++i) {
        for (int j = i; j <= n_; ++j) {
            if (exact_)
                r.set(n_ - j, n_ - i, entry(i, j));
            else
                r.set(n_ - j, n_ - i, entry_c(i, j));
        }
    }
    return r;
}

bool DNMatrix::is_tau_symmetric() const {
    for (int i = 0; i <= n_; ++i)
        for (int j = i; j <= n_; ++j) {
            if (exact_) {
                if (!(entry(i, j) == entry(n_ - j, n_ - i))) return false;
            } else {
                if (entry_c(i, j) != entry_c(n_ - j, n_ - i)) return false;
            }
        }
    return true;
}

bool operator==(const DNMatrix& a, const DNMatrix& b) {
    if (a.n_ != b.n_ || a.exact_ != b.exact_) return false;
    return a.exact_ ? a.upper_ == b.upper_ : a.upper_c_ == b.upper_c_;
}

}  // namespace dn
