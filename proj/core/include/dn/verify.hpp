#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dn/rng.hpp"

namespace dn {

struct SuiteResult {
    std::string name;
    bool pass = false;
    int cases = 0;
    double worst = 0.0;  // worst residual where meaningful
    std::string detail;
};

struct VerifyConfig {
    std::uint64_t seed = 1;
    int samples = 10;         // per size where a suite loops
    int max_n = 4;            // largest matrix order exercised
    int max_det_size = 4;     // largest matrix size for determinant suites
    bool heavy = false;       // include the integration-heavy suites
    bool corrupt_symmetry = false;  // deliberately break the symmetric sampler
    double tol_spectral = 1e-10;
    double tol_ode = 1e-12;
    double tol_mono = 1e-6;
};

// Exact-algebra suites.
SuiteResult suite_ring_axioms(const VerifyConfig&);
SuiteResult suite_normal_order_confluence(const VerifyConfig&);
SuiteResult suite_adjoint(const VerifyConfig&);
SuiteResult suite_right_division(const VerifyConfig&);
SuiteResult suite_canonical_roundtrip(const VerifyConfig&);
SuiteResult suite_det_agreement(const VerifyConfig&);
SuiteResult suite_det_anti_involution(const VerifyConfig&);
SuiteResult suite_det_sign_rule(const VerifyConfig&);
SuiteResult suite_symmetry_adjoint(const VerifyConfig&);
SuiteResult suite_dual_symmetry(const VerifyConfig&);
SuiteResult suite_reconstruction(const VerifyConfig&);
SuiteResult suite_expansion_dictionary(const VerifyConfig&);
SuiteResult suite_k_matrix(const VerifyConfig&);
SuiteResult suite_residue_values(const VerifyConfig&);

// Numeric suites.
SuiteResult suite_spectral_basis(const VerifyConfig&);
SuiteResult suite_residue_matrices(const VerifyConfig&);
SuiteResult suite_partial_fraction(const VerifyConfig&);
SuiteResult suite_shearing(const VerifyConfig&);
SuiteResult suite_solution_annihilation(const VerifyConfig&);

// Integration-heavy suites.
SuiteResult suite_monodromy_local(const VerifyConfig&);
SuiteResult suite_operator_monodromy(const VerifyConfig&);
SuiteResult suite_polarization_parity(const VerifyConfig&);
SuiteResult suite_hypergeometric(const VerifyConfig&);

std::vector<SuiteResult> run_verification(const VerifyConfig& cfg);

/// Draws symmetric matrices until the spectrum is simple and well separated;
/// used by every suite that feeds the connection machinery.  When
/// cap_transport is set, a cheap low-precision continuation pass rejects
/// draws whose loop matrices are too large for absolute certificates in
/// double precision.
DNMatrix sample_diagonalizable(Rng& rng, int n, bool symmetric = true,
                               double min_gap_ratio = 0.15, int max_tries = 200,
                               bool cap_transport = false, double transport_bound = 5e2);

}  // namespace dn
