#pragma once

#include <vector>

#include "dn/weyl.hpp"

namespace dn {

/// Square matrix over the Weyl algebra, row-major.
class OperatorMatrix {
  public:
    explicit OperatorMatrix(int size)
        : size_(size), e_(static_cast<std::size_t>(size) * size) {
        if (size < 1) throw Error("OperatorMatrix needs size >= 1");
    }

    int size() const { return size_; }
    WeylElement& at(int i, int j) { return e_[static_cast<std::size_t>(i) * size_ + j]; }
    const WeylElement& at(int i, int j) const {
        return e_[static_cast<std::size_t>(i) * size_ + j];
    }

    friend bool operator==(const OperatorMatrix& a, const OperatorMatrix& b) {
        return a.size_ == b.size_ && a.e_ == b.e_;
    }

  private:
    int size_;
    std::vector<WeylElement> e_;
};

/// Zero below the first subdiagonal and every subdiagonal entry equal to -1.
bool is_almost_triangular(const OperatorMatrix& m);

/// Validating wrapper for matrices the inductive algorithms accept.
class AlmostTriangularMatrix {
  public:
    explicit AlmostTriangularMatrix(OperatorMatrix m);
    const OperatorMatrix& matrix() const { return m_; }

  private:
    OperatorMatrix m_;
};

/// Right principal minors P_0..P_{size}: P_0 = 1, P_{j+1} = sum_i M_ij P_i.
std::vector<WeylElement> right_principal_minors(const AlmostTriangularMatrix& m);

/// det_right via the forward minor recursion; equals P_{size}.
WeylElement detright_forward(const AlmostTriangularMatrix& m);

/// det_right via the mirrored recursion Q_{j+1} = sum_i Q_i M_{n-j,n-i}.
WeylElement detright_reverse(const AlmostTriangularMatrix& m);

/// Full signed permutation expansion sum sign(s) M_{s(n),n} ... M_{s(0),0}.
/// Factorial cost; the independent oracle.  Throws SizeExceeded above the
/// bound.
WeylElement detright_permutation(const OperatorMatrix& m, int max_size = 7);

/// Transpose across the anti-diagonal: result(i,j) = m(n-j, n-i).
OperatorMatrix tau(const OperatorMatrix& m);

/// Entry scaling m(i,j) -> (-1)^{j-i+1} m(i,j); flips det_right by
/// (-1)^{size}.
OperatorMatrix sign_conjugate(const OperatorMatrix& m);

/// Entrywise adjoint.
OperatorMatrix adjoint_entrywise(const OperatorMatrix& m);

}  // namespace dn
