#pragma once

#include <vector>

#include "dn/dn_matrix.hpp"
#include "dn/linalg.hpp"
#include "dn/series.hpp"

namespace dn {

CMat t_matrix(int n);  // diag(0, 1, ..., n)
CMat j_matrix(int n);  // anti-diagonal ones
CMat to_cmat(const DNMatrix& a);

/// Monic characteristic polynomial det(t - A), ascending coefficients,
/// computed by the minor recursion along the columns (valid because the
/// subdiagonal of A is 1 and everything below vanishes).
std::vector<cx> char_poly(const DNMatrix& a);

/// Eigen data of the defining matrix together with the residue matrices of
/// the partial-fraction connection.
struct ConnectionSpectrum {
    int n = 0;
    CMat a;                   // dense copy of the matrix
    std::vector<cx> lambdas;  // distinct eigenvalues
    CMat c;                   // columns are eigenvectors
    std::vector<CMat> s;      // residue matrices, filled by residue_matrices()
    bool normalized = false;
};

/// Eigenvalues by the characteristic polynomial + Aberth-Ehrlich, eigenvectors
/// by the last-coordinate back-substitution the matrix shape guarantees.
/// Throws DegenerateSpectrum when two eigenvalues come within tol.
ConnectionSpectrum eigendecompose(const DNMatrix& a, double tol = 1e-10);

/// Scales every eigenvector column so that C^t J C = I (principal square
/// root branch).  Throws NullVector if a diagonal entry of C^t J C is
/// numerically zero.
void normalize_basis(ConnectionSpectrum& spec, double tol = 1e-10);

/// S_j = -T C E_j C^{-1} via the rank-one form -(T u_j)(J u_j)^t available
/// after normalization.
void residue_matrices(ConnectionSpectrum& spec);

/// T (A - t)^{-1}; throws NearSingularity if t is within tol of a singular
/// point.
CMat connection_rhs(const ConnectionSpectrum& spec, cx t, double tol = 1e-12);

/// The same right-hand side summed as sum_j S_j / (t - lambda_j).
CMat connection_rhs_partial_fractions(const ConnectionSpectrum& spec, cx t);

/// A - (I + T)/z, kept as (constant, pole) parts.
struct FirstModelConnection {
    CMat constant;
    CMat pole;  // coefficient of 1/z
    CMat eval(cx z) const;
};
FirstModelConnection first_model_connection(const DNMatrix& a);

/// Constant matrix of the sheared connection at infinity plus the nilpotency
/// certificate N^n != 0, N^{n+1} == 0.
struct NilpotencyCertificate {
    CMat n_matrix;
    int index = 0;           // least k with N^k == 0
    double pow_n_norm = 0;   // Frobenius norm of N^n
    double pow_np1_norm = 0; // Frobenius norm of N^{n+1}
    int truncation = 0;
};
NilpotencyCertificate infinity_exponents(const DNMatrix& a, int truncation);

}  // namespace dn
