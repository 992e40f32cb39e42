#pragma once

#include <complex>
#include <vector>

#include "dn/detright.hpp"
#include "dn/dn_matrix.hpp"
#include "dn/polynomial.hpp"
#include "dn/weyl.hpp"

namespace dn {

/// det_right(t d/dt - A~) / (d/dt) with A~(i,j) = a_ij (d/dt)^{j-i+1}.
/// Requires exact entries.
WeylElement build_l_infinity(const DNMatrix& a);

/// The matrix t d/dt * I - A~ itself (almost triangular by construction).
OperatorMatrix connection_operator_matrix(const DNMatrix& a);

/// g_p(x) == (-1)^{n-p+1} g_p(-x-p) for every p, exactly.  Works for either
/// chart of the canonical form (the G_p satisfy the same equation).
bool check_symmetry(const CanonicalDN& c);

/// adjoint(L) == (-1)^n L, exactly.
bool check_adjoint(const WeylElement& l, int n);

/// Small exact matrix over the rationals, row-major.
struct QMatrix {
    int size = 0;
    std::vector<Rational> a;
    Rational& at(int i, int j) { return a[static_cast<std::size_t>(i) * size + j]; }
    const Rational& at(int i, int j) const {
        return a[static_cast<std::size_t>(i) * size + j];
    }
};

/// Change-of-variable matrix between the degree-p expansion coefficients and
/// the p-th antidiagonal entries; invertible for every 1 <= p <= n+1.
QMatrix k_matrix(int n, int p);

/// Exact linear solve; throws SingularSolve.
std::vector<Gaussian> solve_exact(const QMatrix& k, std::vector<Gaussian> rhs);

/// Expansion coefficients x^{(p)}_k of det_right(u u* - B~) in the basis
/// u^p (u u*)^k, indexed [p-1][k], p = 1..n+1, k = 0..n+1-p.
std::vector<std::vector<Gaussian>> weyl_expansion(const DNMatrix& b);

/// Sign dictionary from canonical coefficients to expansion coefficients:
/// x^{(p)}_k = (-1)^{n+k+p-1} [theta^k] g_p.
std::vector<std::vector<Gaussian>> canonical_to_x(const CanonicalDN& c);

/// Recovers the defining matrix from the canonical form, one antidiagonal at
/// a time; build_l_infinity(result) == from_canonical(c) exactly.
DNMatrix reconstruct(const CanonicalDN& c);

/// Chart swap g <-> G via G_p(x) = (-1)^{n-p+1} g_p(-x-p); involutive.
CanonicalDN to_dn0(const CanonicalDN& c);

/// Coefficients c_k(t) of L = sum c_k(t) (d/dt)^k, index k.
std::vector<Poly> ode_coefficients(const WeylElement& l);

/// Ratio of univariate polynomials, gcd-reduced, denominator nonzero.
struct RationalFunction {
    Poly num, den;
    RationalFunction(Poly n, Poly d);
};

struct ResidueEntry {
    std::complex<double> point;
    std::complex<double> residue;
    bool exact = false;
    Gaussian exact_point;    // valid iff exact
    Gaussian exact_residue;  // valid iff exact
};

struct ResidueReport {
    std::vector<ResidueEntry> finite;
    Gaussian infinity_residue;       // always exact (series at infinity)
    double sum_residual = 0.0;       // |sum of all residues|
};

/// Residues of c_{n-1}/c_n dt at the roots of c_n and at infinity.
/// Exact where the singularity is Gaussian-rational, numeric otherwise.
/// Throws RepeatedSingularity if c_n has a multiple root.
ResidueReport residues(const WeylElement& l, int n);

enum class PointClass { regular, irregular };

struct FuchsPoint {
    bool at_infinity = false;
    std::complex<double> point{0.0, 0.0};
    PointClass cls = PointClass::regular;
};

struct FuchsReport {
    std::vector<FuchsPoint> points;
    bool all_regular() const;
};

/// Pole-order test at every finite singularity and at infinity (via t = 1/w).
FuchsReport fuchs_test(const WeylElement& l, int n);

}  // namespace dn
