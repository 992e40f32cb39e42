#pragma once

#include <complex>
#include <vector>

#include "dn/rational.hpp"

namespace dn {

/// (n+1)x(n+1) matrix A with free upper-triangular entries, subdiagonal
/// entries fixed to 1 and zeros below.  Entries are exact Gaussian rationals
/// or plain complex floats; the exact() flag says which.
class DNMatrix {
  public:
    explicit DNMatrix(int n, bool exact = true);

    int n() const { return n_; }
    int size() const { return n_ + 1; }
    bool exact() const { return exact_; }

    /// Full-matrix read access (handles the fixed 1/0 part).
    Gaussian entry(int i, int j) const;
    std::complex<double> entry_c(int i, int j) const;

    /// Upper-triangle write access, i <= j only.
    void set(int i, int j, const Gaussian& v);
    void set(int i, int j, std::complex<double> v);  // drops exactness

    /// Transpose across the anti-diagonal.
    DNMatrix tau() const;
    bool is_tau_symmetric() const;

    friend bool operator==(const DNMatrix& a, const DNMatrix& b);

  private:
    int upper_index(int i, int j) const;
    int n_;
    bool exact_;
    std::vector<Gaussian> upper_;                  // valid iff exact_
    std::vector<std::complex<double>> upper_c_;    // always maintained
};

}  // namespace dn
