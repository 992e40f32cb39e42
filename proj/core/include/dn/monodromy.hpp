#pragma once

#include <optional>
#include <vector>

#include "dn/dn_matrix.hpp"
#include "dn/ode.hpp"
#include "dn/spectral.hpp"
#include "dn/weyl.hpp"

namespace dn {

/// Loop around one singularity (or infinity), conjugated to the common base
/// point by a straight spoke.
struct Loop {
    cx base{0.0};
    bool at_infinity = false;
    int index = -1;  // position in the singularity list
    cx center{0.0};
    double radius = 0.0;
    Path path;  // spoke + full circle + spoke back
};

/// Deterministic loop system: base point on a ray clear of all singularity
/// directions, keyhole loops, and the traversal order that makes the
/// composite contractible.
struct LoopPlan {
    cx base{0.0};
    std::vector<Loop> finite;        // one per singularity, same order as input
    Loop infinity;
    std::vector<int> traversal;      // finite-loop indices, first-traversed first
    double clearance = 0.0;          // min distance from spokes to foreign singularities
};

LoopPlan plan_loops(const std::vector<cx>& points, std::optional<cx> forced_base = std::nullopt);

/// Parallel transport of the fundamental matrix (identity at the path start)
/// along an arbitrary path, with local error per step below tol.
CMat continue_solution(const DNMatrix& a, const Path& path, double tol = 1e-12);
CMat continue_solution(const MatrixRhs& rhs, const Path& path, double tol = 1e-12);

/// End value of the loop around points[j] (or infinity), base at plan.base.
CMat local_monodromy(const DNMatrix& a, const LoopPlan& plan, int j, double tol = 1e-12);
CMat local_monodromy_infinity(const DNMatrix& a, const LoopPlan& plan, double tol = 1e-12);

struct PolarizationForm {
    enum class Symmetry { symmetric, skew, none };
    CMat g;
    int dimension = 0;
    Symmetry symmetry = Symmetry::none;
    double residual = 0.0;
};

/// Common solution space of M^t G M = G over all given matrices; if it is a
/// line, G is normalized (unit Frobenius norm, first sizeable entry rotated
/// positive-real) and classified.
PolarizationForm solve_polarization(const std::vector<CMat>& ms, double tol = 1e-8);

struct MonodromyOptions {
    double ode_tol = 1e-12;
    double spectral_tol = 1e-10;
    bool error_estimate = true;  // repeat at half tolerance and compare
};

struct MonodromyReport {
    int n = 0;
    cx base{0.0};
    std::vector<cx> lambdas;
    std::vector<CMat> local;                 // loop end matrices, one per eigenvalue
    CMat infinity;
    std::vector<int> traversal;
    double product_residual = 0.0;           // || M_inf * ordered product - I ||
    double unipotent_pow_np1 = 0.0;          // || (M_inf - I)^{n+1} ||
    double unipotent_pow_n = 0.0;            // || (M_inf - I)^n ||
    std::vector<std::vector<cx>> local_eigenvalues;

    std::vector<cx> constants_direction;     // fixed line of the dual action
    double quotient_conditioning = 0.0;      // max || P c - c || / || c ||
    std::vector<CMat> reduced;               // operator-level matrices, per eigenvalue
    CMat reduced_infinity;
    double reduced_pow_n = 0.0;              // || (R_inf - I)^n ||
    double reduced_pow_nm1 = 0.0;            // || (R_inf - I)^{n-1} ||

    PolarizationForm polarization;
    double ode_error_estimate = 0.0;
};

/// Full numeric monodromy study of the second-model system attached to A.
MonodromyReport monodromy(const DNMatrix& a, const MonodromyOptions& opt = {});

/// D^n - w^{n+1} (D+1)(D+2)...(D+n) in the w-chart Weyl algebra, D = w d/dw.
WeylElement hypergeom_operator(int n);

/// Monodromy data of the degree-n hypergeometric companion system with
/// singularities at 0, 1, infinity: U around infinity, S around 1, M0 around
/// 0, with U * S * M0 == I up to the reported residual.
struct HypergeomMonodromy {
    CMat u, s, m0;
    double product_residual = 0.0;
};
HypergeomMonodromy hypergeom_prime_monodromy(int n, double ode_tol = 1e-12);

/// Extracts v from a form-compatible pseudoreflection S x = x - (x,v) v,
/// (x,y) = x^t G y.  Returns the vector and the reconstruction residual.
std::pair<std::vector<cx>, double> reflection_vector(const CMat& s, const CMat& g);

struct RrvResult {
    double residual = 0.0;
    std::vector<cx> bracket_series;      // 1 + sum (U^i v, v) t^i coefficients
    std::vector<cx> determinant_series;  // det(1 - tUS)/det(1 - tU) coefficients
};

/// Compares the bracket generating series against the determinant ratio up to
/// the given order.
RrvResult rrv_check(const CMat& u, const CMat& s, const std::vector<cx>& v, const CMat& g,
                    int order);

}  // namespace dn
