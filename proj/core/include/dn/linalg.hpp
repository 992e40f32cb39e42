#pragma once

#include <complex>
#include <vector>

#include "dn/errors.hpp"

namespace dn {

using cx = std::complex<double>;

/// Dense complex matrix, row-major.  Sized for the small systems this
/// toolkit handles; no attempt at blocking or views.
class CMat {
  public:
    CMat() = default;
    CMat(int rows, int cols) : r_(rows), c_(cols), a_(static_cast<std::size_t>(rows) * cols) {}

    static CMat identity(int n);
    static CMat zeros(int rows, int cols) { return CMat(rows, cols); }

    int rows() const { return r_; }
    int cols() const { return c_; }
    cx& at(int i, int j) { return a_[static_cast<std::size_t>(i) * c_ + j]; }
    const cx& at(int i, int j) const { return a_[static_cast<std::size_t>(i) * c_ + j]; }
    const std::vector<cx>& data() const { return a_; }

    CMat operator-() const;
    CMat& operator+=(const CMat& o);
    CMat& operator-=(const CMat& o);
    friend CMat operator+(CMat a, const CMat& b) { return a += b; }
    friend CMat operator-(CMat a, const CMat& b) { return a -= b; }
    friend CMat operator*(const CMat& a, const CMat& b);
    CMat operator*(cx s) const;

    CMat transpose() const;
    CMat ctranspose() const;

    double norm_fro() const;
    double max_abs() const;

  private:
    int r_ = 0, c_ = 0;
    std::vector<cx> a_;
};

std::vector<cx> matvec(const CMat& m, const std::vector<cx>& v);

/// LU with partial pivoting.
struct LU {
    explicit LU(CMat m);
    std::vector<cx> solve(std::vector<cx> b) const;
    CMat solve(CMat b) const;
    CMat inverse() const;
    cx det() const;
    double min_pivot() const;

  private:
    CMat lu_;
    std::vector<int> perm_;
    int sign_ = 1;
};

CMat mat_pow(const CMat& m, int e);

/// Singular values (descending) and right singular vectors by one-sided
/// Jacobi; requires rows >= cols (pad or transpose first if not).
struct SVD {
    std::vector<double> s;
    CMat v;  // cols are right singular vectors
};
SVD svd_jacobi(CMat m, int max_sweeps = 60);

/// Null-space basis vectors of m (columns).  A singular value counts as zero
/// below rel_tol * max(largest singular value, scale_floor); pass a positive
/// scale_floor when the whole system may degenerate to numerical noise.
std::vector<std::vector<cx>> null_space(const CMat& m, double rel_tol,
                                        double scale_floor = 0.0);

/// Numerical rank at a relative tolerance.
int rank(const CMat& m, double rel_tol);

/// All eigenvalues by Hessenberg reduction + shifted QR.  Backward-stable;
/// intended for the small monodromy matrices.
std::vector<cx> eigenvalues_qr(CMat m, int max_iter = 2000);

/// QR eigenvalues with nearby values merged into their cluster mean.  For a
/// defective multiple eigenvalue the individual values scatter like the
/// square root of the data error while the cluster mean stays first-order
/// accurate, so compare means when the spectrum is known to be multiple.
std::vector<cx> clustered_eigenvalues(const CMat& m, double cluster_radius);

}  // namespace dn
