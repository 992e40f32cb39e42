#include "dn/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace dn {

CMat CMat::identity(int n) {
    CMat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
    return m;
}

CMat CMat::operator-() const {
    CMat r = *this;
    for (auto& v : r.a_) v = -v;
    return r;
}

CMat& CMat::operator+=(const CMat& o) {
    if (r_ != o.r_ || c_ != o.c_) throw Error("CMat shape mismatch");
    for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
    return *this;
}

CMat& CMat::operator-=(const CMat& o) {
    if (r_ != o.r_ || c_ != o.c_) throw Error("CMat shape mismatch");
    for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
    return *this;
}

CMat operator*(const CMat& a, const CMat& b) {
    if (a.c_ != b.r_) throw Error("CMat shape mismatch in product");
    CMat r(a.r_, b.c_);
    for (int i = 0; i < a.r_; ++i) {
        for (int k = 0; k < a.c_; ++k) {
            cx f = a.at(i, k);
            if (f == 0.0) continue;
            for (int j = 0; j < b.c_; ++j) r.at(i, j) += f * b.at(k, j);
        }
    }
    return r;
}

CMat CMat::operator*(cx s) const {
    CMat r = *this;
    for (auto& v : r.a_) v *= s;
    return r;
}

CMat CMat::transpose() const {
    CMat r(c_, r_);
    for (int i = 0; i < r_; ++i)
        for (int j = 0; j < c_; ++j) r.at(j, i) = at(i, j);
    return r;
}

CMat CMat::ctranspose() const {
    CMat r(c_, r_);
    for (int i = 0; i < r_; ++i)
        for (int j = 0; j < c_; ++j) r.at(j, i) = std::conj(at(i, j));
    return r;
}

double CMat::norm_fro() const {
    double s = 0;
    for (const auto& v : a_) s += std::norm(v);
    return std::sqrt(s);
}

double CMat::max_abs() const {
    double s = 0;
    for (const auto& v : a_) s = std::max(s, std::abs(v));
    return s;
}

std::vector<cx> matvec(const CMat& m, const std::vector<cx>& v) {
    if (static_cast<int>(v.size()) != m.cols()) throw Error("matvec shape mismatch");
    std::vector<cx> r(static_cast<std::size_t>(m.rows()), 0.0);
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) r[static_cast<std::size_t>(i)] += m.at(i, j) * v[static_cast<std::size_t>(j)];
    return r;
}

LU::LU(CMat m) : lu_(std::move(m)) {
    const int n = lu_.rows();
    if (n != lu_.cols()) throw Error("LU needs a square matrix");
    perm_.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) perm_[static_cast<std::size_t>(i)] = i;
    for (int col = 0; col < n; ++col) {
        int piv = col;
        double best = std::abs(lu_.at(col, col));
        for (int r = col + 1; r < n; ++r) {
            double v = std::abs(lu_.at(r, col));
            if (v > best) {
                best = v;
                piv = r;
            }
        }
        if (best == 0.0) throw NearSingularity("LU pivot is exactly zero");
        if (piv != col) {
            for (int j = 0; j < n; ++j) std::swap(lu_.at(piv, j), lu_.at(col, j));
            std::swap(perm_[static_cast<std::size_t>(piv)], perm_[static_cast<std::size_t>(col)]);
            sign_ = -sign_;
        }
        cx inv = 1.0 / lu_.at(col, col);
        for (int r = col + 1; r < n; ++r) {
            cx f = lu_.at(r, col) * inv;
            lu_.at(r, col) = f;
            if (f == 0.0) continue;
            for (int j = col + 1; j < n; ++j) lu_.at(r, j) -= f * lu_.at(col, j);
        }
    }
}

std::vector<cx> LU::solve(std::vector<cx> b) const {
    const int n = lu_.rows();
    std::vector<cx> x(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) x[static_cast<std::size_t>(i)] = b[static_cast<std::size_t>(perm_[static_cast<std::size_t>(i)])];
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < i; ++j) x[static_cast<std::size_t>(i)] -= lu_.at(i, j) * x[static_cast<std::size_t>(j)];
    for (int i = n - 1; i >= 0; --i) {
        for (int j = i + 1; j < n; ++j) x[static_cast<std::size_t>(i)] -= lu_.at(i, j) * x[static_cast<std::size_t>(j)];
        x[static_cast<std::size_t>(i)] /= lu_.at(i, i);
    }
    return x;
}

CMat LU::solve(CMat b) const {
    const int n = lu_.rows();
    CMat out(n, b.cols());
    for (int col = 0; col < b.cols(); ++col) {
        std::vector<cx> rhs(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) rhs[static_cast<std::size_t>(i)] = b.at(i, col);
        auto x = solve(std::move(rhs));
        for (int i = 0; i < n; ++i) out.at(i, col) = x[static_cast<std::size_t>(i)];
    }
    return out;
}

CMat LU::inverse() const { return solve(CMat::identity(lu_.rows())); }

cx LU::det() const {
    cx d = static_cast<double>(sign_);
    for (int i = 0; i < lu_.rows(); ++i) d *= lu_.at(i, i);
    return d;
}

double LU::min_pivot() const {
    double m = std::abs(lu_.at(0, 0));
    for (int i = 1; i < lu_.rows(); ++i) m = std::min(m, std::abs(lu_.at(i, i)));
    return m;
}

CMat mat_pow(const CMat& m, int e) {
    CMat r = CMat::identity(m.rows());
    CMat base = m;
    for (; e > 0; e >>= 1) {
        if (e & 1) r = r * base;
        if (e > 1) base = base * base;
    }
    return r;
}

SVD svd_jacobi(CMat m, int max_sweeps) {
    const int rows = m.rows(), cols = m.cols();
    if (rows < cols) throw Error("svd_jacobi needs rows >= cols");
    CMat v = CMat::identity(cols);
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < cols - 1; ++p) {
            for (int q = p + 1; q < cols; ++q) {
                double app = 0, aqq = 0;
                cx apq = 0;
                for (int i = 0; i < rows; ++i) {
                    app += std::norm(m.at(i, p));
                    aqq += std::norm(m.at(i, q));
                    apq += std::conj(m.at(i, p)) * m.at(i, q);
                }
                double mag = std::abs(apq);
                off = std::max(off, mag / (std::sqrt(app * aqq) + 1e-300));
                if (mag < 1e-15 * std::sqrt(app * aqq) || mag == 0.0) continue;
                // Unitary 2x2 rotation diagonalizing [[app, apq],[conj, aqq]].
                cx phase = apq / mag;
                double tau = (aqq - app) / (2.0 * mag);
                double t = (tau >= 0 ? 1.0 : -1.0) /
                           (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                double cth = 1.0 / std::sqrt(1.0 + t * t);
                double sth = cth * t;
                for (int i = 0; i < rows; ++i) {
                    cx mp = m.at(i, p), mq = m.at(i, q);
                    m.at(i, p) = cth * mp - sth * std::conj(phase) * mq;
                    m.at(i, q) = sth * phase * mp + cth * mq;
                }
                for (int i = 0; i < cols; ++i) {
                    cx vp = v.at(i, p), vq = v.at(i, q);
                    v.at(i, p) = cth * vp - sth * std::conj(phase) * vq;
                    v.at(i, q) = sth * phase * vp + cth * vq;
                }
            }
        }
        if (off < 1e-14) break;
    }
    SVD out;
    out.s.resize(static_cast<std::size_t>(cols));
    std::vector<int> idx(static_cast<std::size_t>(cols));
    for (int j = 0; j < cols; ++j) {
        double s = 0;
        for (int i = 0; i < rows; ++i) s += std::norm(m.at(i, j));
        out.s[static_cast<std::size_t>(j)] = std::sqrt(s);
        idx[static_cast<std::size_t>(j)] = j;
    }
    std::sort(idx.begin(), idx.end(), [&](int a, int b) {
        return out.s[static_cast<std::size_t>(a)] > out.s[static_cast<std::size_t>(b)];
    });
    SVD sorted;
    sorted.s.resize(static_cast<std::size_t>(cols));
    sorted.v = CMat(cols, cols);
    for (int j = 0; j < cols; ++j) {
        sorted.s[static_cast<std::size_t>(j)] = out.s[static_cast<std::size_t>(idx[static_cast<std::size_t>(j)])];
        for (int i = 0; i < cols; ++i)
            sorted.v.at(i, j) = v.at(i, idx[static_cast<std::size_t>(j)]);
    }
    return sorted;
}

std::vector<std::vector<cx>> null_space(const CMat& m, double rel_tol, double scale_floor) {
    CMat work = m;
    if (work.rows() < work.cols()) {
        // Pad with zero rows; singular structure is unchanged.
        CMat padded(work.cols(), work.cols());
        for (int i = 0; i < work.rows(); ++i)
            for (int j = 0; j < work.cols(); ++j) padded.at(i, j) = work.at(i, j);
        work = padded;
    }
    SVD s = svd_jacobi(work);
    double smax = s.s.empty() ? 0.0 : s.s.front();
    smax = std::max(smax, scale_floor);
    std::vector<std::vector<cx>> basis;
    for (int j = 0; j < work.cols(); ++j) {
        if (s.s[static_cast<std::size_t>(j)] <= rel_tol * std::max(smax, 1e-300)) {
            std::vector<cx> vv(static_cast<std::size_t>(work.cols()));
            for (int i = 0; i < work.cols(); ++i) vv[static_cast<std::size_t>(i)] = s.v.at(i, j);
            basis.push_back(std::move(vv));
        }
    }
    return basis;
}

int rank(const CMat& m, double rel_tol) {
    CMat work = m;
    if (work.rows() < work.cols()) work = work.ctranspose();
    SVD s = svd_jacobi(work);
    double smax = s.s.empty() ? 0.0 : s.s.front();
    int r = 0;
    for (double sv : s.s)
        if (sv > rel_tol * std::max(smax, 1e-300)) ++r;
    return r;
}

std::vector<cx> clustered_eigenvalues(const CMat& m, double cluster_radius) {
    std::vector<cx> e = eigenvalues_qr(m);
    const std::size_t n = e.size();
    std::vector<int> group(n);
    for (std::size_t i = 0; i < n; ++i) group[i] = static_cast<int>(i);
    auto root = [&](int i) {
        while (group[static_cast<std::size_t>(i)] != i) i = group[static_cast<std::size_t>(i)];
        return i;
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (std::abs(e[i] - e[j]) <= cluster_radius)
                group[static_cast<std::size_t>(root(static_cast<int>(j)))] =
                    root(static_cast<int>(i));
    std::vector<cx> sums(n, 0.0);
    std::vector<int> counts(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        int r = root(static_cast<int>(i));
        sums[static_cast<std::size_t>(r)] += e[i];
        counts[static_cast<std::size_t>(r)] += 1;
    }
    std::vector<cx> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        int r = root(static_cast<int>(i));
        out[i] = sums[static_cast<std::size_t>(r)] / static_cast<double>(counts[static_cast<std::size_t>(r)]);
    }
    return out;
}

std::vector<cx> eigenvalues_qr(CMat m, int max_iter) {
    const int n = m.rows();
    if (n != m.cols()) throw Error("eigenvalues_qr needs a square matrix");
    if (n == 0) return {};
    if (n == 1) return {m.at(0, 0)};

    // Householder reduction to upper Hessenberg.
    for (int k = 0; k < n - 2; ++k) {
        double scale = 0;
        for (int i = k + 1; i < n; ++i) scale += std::norm(m.at(i, k));
        scale = std::sqrt(scale);
        if (scale == 0.0) continue;
        cx x0 = m.at(k + 1, k);
        cx alpha = (std::abs(x0) == 0.0) ? cx(-scale) : -(x0 / std::abs(x0)) * scale;
        std::vector<cx> v(static_cast<std::size_t>(n), 0.0);
        v[static_cast<std::size_t>(k) + 1] = x0 - alpha;
        for (int i = k + 2; i < n; ++i) v[static_cast<std::size_t>(i)] = m.at(i, k);
        double vnorm2 = 0;
        for (const auto& val : v) vnorm2 += std::norm(val);
        if (vnorm2 == 0.0) continue;
        // m <- (I - 2 v v^H / |v|^2) m (I - 2 v v^H / |v|^2)
        for (int j = 0; j < n; ++j) {
            cx dot = 0;
            for (int i = k + 1; i < n; ++i) dot += std::conj(v[static_cast<std::size_t>(i)]) * m.at(i, j);
            dot *= 2.0 / vnorm2;
            for (int i = k + 1; i < n; ++i) m.at(i, j) -= dot * v[static_cast<std::size_t>(i)];
        }
        for (int i = 0; i < n; ++i) {
            cx dot = 0;
            for (int j = k + 1; j < n; ++j) dot += m.at(i, j) * v[static_cast<std::size_t>(j)];
            dot *= 2.0 / vnorm2;
            for (int j = k + 1; j < n; ++j) m.at(i, j) -= dot * std::conj(v[static_cast<std::size_t>(j)]);
        }
    }

    // Shifted QR on the Hessenberg form with deflation, via Givens rotations.
    std::vector<cx> eig(static_cast<std::size_t>(n));
    int hi = n - 1;
    int iter_since_deflate = 0;
    for (int it = 0; it < max_iter && hi >= 0; ++it) {
        if (hi == 0) {
            eig[0] = m.at(0, 0);
            break;
        }
        // Deflate small subdiagonals.
        bool deflated = false;
        for (int k = hi; k >= 1; --k) {
            double small = 1e-16 * (std::abs(m.at(k - 1, k - 1)) + std::abs(m.at(k, k)));
            if (std::abs(m.at(k, k - 1)) <= small) {
                m.at(k, k - 1) = 0.0;
                if (k == hi) {
                    eig[static_cast<std::size_t>(hi)] = m.at(hi, hi);
                    --hi;
                    deflated = true;
                    iter_since_deflate = 0;
                }
                break;
            }
        }
        if (deflated) continue;
        ++iter_since_deflate;

        // Wilkinson shift from the trailing 2x2 block.
        cx a = m.at(hi - 1, hi - 1), b = m.at(hi - 1, hi);
        cx c = m.at(hi, hi - 1), d = m.at(hi, hi);
        cx tr = a + d, det = a * d - b * c;
        cx disc = std::sqrt(tr * tr - 4.0 * det);
        cx l1 = (tr + disc) * 0.5, l2 = (tr - disc) * 0.5;
        cx shift = (std::abs(l1 - d) < std::abs(l2 - d)) ? l1 : l2;
        if (iter_since_deflate % 12 == 11) {
            // Exceptional shift to break cycles.
            shift = d + cx(std::abs(m.at(hi, hi - 1)), 0.0);
        }

        for (int i = 0; i <= hi; ++i) m.at(i, i) -= shift;
        // QR by Givens on the Hessenberg band, then RQ.
        std::vector<cx> cs(static_cast<std::size_t>(hi)), sn(static_cast<std::size_t>(hi));
        for (int k = 0; k < hi; ++k) {
            cx f = m.at(k, k), g = m.at(k + 1, k);
            double r = std::sqrt(std::norm(f) + std::norm(g));
            if (r == 0.0) {
                cs[static_cast<std::size_t>(k)] = 1.0;
                sn[static_cast<std::size_t>(k)] = 0.0;
                continue;
            }
            cx cck = std::conj(f) / r, ssk = std::conj(g) / r;
            cs[static_cast<std::size_t>(k)] = cck;
            sn[static_cast<std::size_t>(k)] = ssk;
            for (int j = k; j <= hi; ++j) {
                cx t1 = m.at(k, j), t2 = m.at(k + 1, j);
                m.at(k, j) = cck * t1 + ssk * t2;
                m.at(k + 1, j) = -std::conj(ssk) * t1 + std::conj(cck) * t2;
            }
        }
        for (int k = 0; k < hi; ++k) {
            cx cck = cs[static_cast<std::size_t>(k)], ssk = sn[static_cast<std::size_t>(k)];
            for (int i = 0; i <= std::min(k + 2, hi); ++i) {
                cx t1 = m.at(i, k), t2 = m.at(i, k + 1);
                m.at(i, k) = t1 * std::conj(cck) + t2 * std::conj(ssk);
                m.at(i, k + 1) = -t1 * ssk + t2 * cck;
            }
        }
        for (int i = 0; i <= hi; ++i) m.at(i, i) += shift;
    }
    if (hi > 0) {
        // Convergence stalled; take the diagonal as the best estimate.
        for (int i = 0; i <= hi; ++i) eig[static_cast<std::size_t>(i)] = m.at(i, i);
    }
    return eig;
}

}  // namespace dn
