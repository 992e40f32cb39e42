#include "dn/verify.hpp"

#include <cmath>
#include <sstream>

#include "dn/dn_ops.hpp"
#include "dn/monodromy.hpp"
#include "dn/roots.hpp"
#include "dn/series.hpp"
#include "dn/spectral.hpp"

namespace dn {

namespace {

SuiteResult make_result(const std::string& name, bool pass, int cases, double worst,
                        const std::string& detail = "") {
    return SuiteResult{name, pass, cases, worst, detail};
}

OperatorMatrix random_almost_triangular(Rng& rng, int size, int max_deg) {
    OperatorMatrix m(size);
    for (int i = 0; i < size; ++i) {
        for (int j = 0; j < size; ++j) {
            if (i == j + 1)
                m.at(i, j) = -WeylElement::one();
            else if (i <= j)
                m.at(i, j) = rng.weyl(max_deg, max_deg, 2);
        }
    }
    return m;
}

double binom(int n, int k) {
    double r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

}  // namespace

DNMatrix sample_diagonalizable(Rng& rng, int n, bool symmetric, double min_gap_ratio,
                               int max_tries, bool cap_transport, double transport_bound) {
    for (int t = 0; t < max_tries; ++t) {
        DNMatrix a = rng.dn_matrix(n, symmetric, 6, 3);
        try {
            ConnectionSpectrum spec = eigendecompose(a, 1e-10);
            double scale = 0, gap = 1e300;
            for (auto l : spec.lambdas) scale = std::max(scale, std::abs(l));
            for (std::size_t i = 0; i < spec.lambdas.size(); ++i)
                for (std::size_t j = i + 1; j < spec.lambdas.size(); ++j)
                    gap = std::min(gap, std::abs(spec.lambdas[i] - spec.lambdas[j]));
            if (scale == 0.0 || gap < min_gap_ratio * scale) continue;
            LoopPlan plan = plan_loops(spec.lambdas);
            if (plan.clearance < 0.05 * scale) continue;
            // Nearly isotropic eigenvectors make the normalized basis, and
            // with it every residue and monodromy matrix, blow up; double
            // precision cannot certify those runs, so reject the draw.
            normalize_basis(spec, 1e-10);
            residue_matrices(spec);
            double worst = 0;
            for (const auto& s : spec.s) worst = std::max(worst, s.norm_fro());
            if (worst > 25.0) continue;
            // Absolute certificates die once the loop matrices or the
            // partial products of the contractibility relation get large:
            // the cancellation to the identity then eats all the precision.
            // Screen both with one cheap low-precision pass.
            if (cap_transport) {
                std::vector<CMat> loops;
                double peak = 0;
                for (const auto& loop : plan.finite) {
                    loops.push_back(continue_solution(a, loop.path, 1e-6));
                    peak = std::max(peak, loops.back().norm_fro());
                }
                CMat part = CMat::identity(n + 1);
                for (int idx : plan.traversal) {
                    part = loops[static_cast<std::size_t>(idx)] * part;
                    peak = std::max(peak, part.norm_fro());
                }
                peak = std::max(peak,
                                continue_solution(a, plan.infinity.path, 1e-6).norm_fro());
                if (peak > transport_bound) continue;
            }
            return a;
        } catch (const DegenerateSpectrum&) {
            continue;
        } catch (const NullVector&) {
            continue;
        }
    }
    throw Error("sample_diagonalizable exhausted its draw budget");
}

SuiteResult suite_ring_axioms(const VerifyConfig& cfg) {
    Rng rng(cfg.seed ^ 0x11);
    int cases = 0;
    for (int k = 0; k < cfg.samples; ++k) {
        WeylElement a = rng.weyl(3, 3, 3, true);
        WeylElement b = rng.weyl(3, 3, 3, true);
        WeylElement c = rng.weyl(3, 3, 3, true);
        if (!((a * b) * c == a * (b * c))) return make_result("ring axioms", false, cases, 1, "associativity");
        if (!(a * (b + c) == a * b + a * c)) return make_result("ring axioms", false, cases, 1, "left distributivity");
        if (!((a + b) * c == a * c + b * c)) return make_result("ring axioms", false, cases, 1, "right distributivity");
        if (!(a * WeylElement::one() == a && WeylElement::one() * a == a))
            return make_result("ring axioms", false, cases, 1, "unit");
        cases += 4;
    }
    return make_result("ring axioms", true, cases, 0);
}

SuiteResult suite_normal_order_confluence(const VerifyConfig& cfg) {
    Rng rng(cfg.seed ^ 0x12);
    int cases = 0;
    for (int k = 0; k < cfg.samples; ++k) {
        // Multiply four factors in every association order.
        std::vector<WeylElement> f;
        for (int i = 0; i < 4; ++i) f.push_back(rng.weyl(2, 2, 2, true));
        WeylElement r1 = ((f[0] * f[1]) * f[2]) * f[3];
        WeylElement r2 = (f[0] * (f[1] * f[2])) * f[3];
        WeylElement r3 = f[0] * ((f[1] * f[2]) * f[3]);
        WeylElement r4 = f[0] * (f[1] * (f[2] * f[3]));
        WeylElement r5 = (f[0] * f[1]) * (f[2] * f[3]);
        if (!(r1 == r2 && r2 == r3 && r3 == r4 && r4 == r5))
            return make_result("normal order confluence", false, cases, 1);
        ++cases;
    }
    return make_result("normal order confluence", true, cases, 0);
}

SuiteResult suite_adjoint(const VerifyConfig& cfg) {
    Rng rng(cfg.seed ^ 0x13);
    int cases = 0;
    for (int k = 0; k < cfg.samples; ++k) {
        WeylElement a = rng.weyl(3, 3, 3, true);
        WeylElement b = rng.weyl(3, 3, 3, true);
        if (!(a.adjoint().adjoint() == a))
            return make_result("adjoint involution and reversal", false, cases, 1, "involution");
        if (!((a * b).adjoint() == b.adjoint() * a.adjoint()))
            return make_result("adjoint involution and reversal", false, cases, 1, "reversal");
        cases += 2;
    }
    return make_result("adjoint involution and reversal", true, cases, 0);
}

SuiteResult suite_right_division(const VerifyConfig& cfg) {
    Rng rng(cfg.seed ^ 0x14);
    int cases = 0;
    for (int k = 0; k < cfg.samples; ++k) {
        WeylElement l = rng.weyl(3, 3, 3, true);
        if (!((l * WeylElement::x()).right_divide_by_x() == l))
            return make_result("right division by the derivation", false, cases, 1);
        ++cases;
    }
    bool threw = false;
    try {
        (WeylElement::theta() + WeylElement::one()).right_divide_by_x();
    } catch (const NotDivisible&) {
        threw = true;
    }
    if (!threw) return make_result("right division by the derivation", false, cases, 1, "missing error");
    return make_result("right division by the derivation", true, cases + 1, 0);
}

SuiteResult suite_canonical_roundtrip(const VerifyConfig& cfg) {
    Rng rng(cfg.seed ^ 0x15);
    int cases = 0;
    for (int k = 0; k < cfg.samples; ++k) {
        int n = rng.uniform(0, cfg.max_n);
        CanonicalDN c;
        c.n = n;
        c.chart = CanonicalDN::Chart::t_infinity;
        for (int p = 1; p <= n + 1; ++p) {
            std::vector<Gaussian> coeffs;
            for (int d = 0; d <= n - p + 1; ++d) coeffs.push_back(rng.gaussian(6, 3, true));
            c.g.emplace_back(std::move(coeffs));
        }
        CanonicalDN back = to_canonical(from_canonical(c), n);
        bool same = true;
        for (int p = 0; p <= n; ++p)
            if (!(back.g[static_cast<std::size_t>(p)] == c.g[static_cast<std::size_t>(p)])) same = false;
        if (!same) return make_result("canonical form round trip", false, cases, 1);
        ++cases;
    }
    return make_result("canonical form round trip", true, cases, 0);
}

SuiteResult suite_det_agreement(const VerifyConfig& cfg) {
    Rng rng(cfg.seed ^ 0x16);
    int cases = 0;
    for (int size = 2; size <= cfg.max_det_size; ++size) {
        for (int k = 0; k < cfg.samples; ++k) {
            OperatorMatrix m = random_almost_triangular(rng, size, 2);
            AlmostTriangularMatrix atm(m);
            WeylElement f = detright_forward(atm);
            WeylElement r = detright_reverse(atm);
            if (!(f == r)) return make_result("determinant recursion agreement", false, cases, 1, "forward vs reverse");
            if (size <= 6) {
                WeylElement p = detright_permutation(m);
                if (!(f == p))
                    return make_result("determinant recursion agreement", false, cases, 1, "forward vs permutation");
            }
            ++cases;
        }
    }
    return make_result("determinant recursion agreement", true, cases, 0);
}

SuiteResult suite_det_anti_involution(const VerifyConfig& cfg) {
    Rng rng(cfg.seed ^ 0x17);
    int cases = 0;
    for (int k = 0; k < cfg.samples; ++k) {
        int size = rng.uniform(2, cfg.max_det_size);
        OperatorMatrix m = random_almost_triangular(rng, size, 2);
        WeylElement lhs = detright_forward(AlmostTriangularMatrix(m)).adjoint();
        WeylElement rhs = detright_forward(AlmostTriangularMatrix(adjoint_entrywise(tau(m))));
        if (!(lhs == rhs)) return make_result("determinant anti-involution", false, cases, 1);
        ++cases;
    }
    return make_result("determinant anti-involution", true, cases, 0);
}

SuiteResult suite_det_sign_rule(const VerifyConfig& cfg) {
    Rng rng(cfg.seed ^ 0x18);
    int cases = 0;
    for (int k = 0; k < cfg.samples; ++k) {
        int size = rng.uniform(1, 3);
        OperatorMatrix m(size);
        for (int i = 0; i < size; ++i)
            for (int j = 0; j < size; ++j) m.at(i, j) = rng.weyl(2, 2, 2);
        WeylElement lhs = detright_permutation(sign_conjugate(m));
        WeylElement rhs = detright_permutation(m);
        if (size % 2 != 0) rhs = -rhs;  // (-1)^{size}
        if (!(lhs == rhs)) return make_result("determinant sign rule", false, cases, 1);
        ++cases;
    }
    return make_result("determinant sign rule", true, cases, 0);
}

SuiteResult suite_symmetry_adjoint(const VerifyConfig& cfg) {
    Rng rng(cfg.seed ^ 0x19);
    int cases = 0;
    for (int n = 1; n <= cfg.max_n; ++n) {
        for (int k = 0; k < cfg.samples; ++k) {
            DNMatrix a = rng.dn_matrix(n, true);
            if (cfg.corrupt_symmetry) {
                // Deliberate fixture corruption off the anti-diagonal.
                a.set(0, n - 1, a.entry(0, n - 1) + Gaussian(1));
            }
            WeylElement l = build_l_infinity(a);
            CanonicalDN c = to_canonical(l, n);
            bool sym = check_symmetry(c);
            bool adj = check_adjoint(l, n);
            if (sym != adj) return make_result("self-adjointness equivalence", false, cases, 1, "verdicts disagree");
            if (!sym) return make_result("self-adjointness equivalence", false, cases, 1, "symmetric input rejected");
            // Perturb one off-antidiagonal entry; both verdicts must flip.
            int i = 0, j = 0;
            bool found = false;
            for (int ii = 0; ii <= n && !found; ++ii)
                for (int jj = ii; jj <= n && !found; ++jj)
                    if (ii + jj != n) {
                        i = ii;
                        j = jj;
                        found = true;
                    }
            if (found) {
                DNMatrix b = a;
                b.set(i, j, b.entry(i, j) + Gaussian(Rational(1, 2)));
                WeylElement lb = build_l_infinity(b);
                if (check_symmetry(to_canonical(lb, n)) || check_adjoint(lb, n))
                    return make_result("self-adjointness equivalence", false, cases, 1,
                                       "perturbation not detected");
            }
            cases += 2;
        }
    }
    return make_result("self-adjointness equivalence", true, cases, 0);
}

SuiteResult suite_dual_symmetry(const VerifyConfig& cfg) {
    Rng rng(cfg.seed ^ 0x1a);
    int cases = 0;
    for (int n = 1; n <= cfg.max_n; ++n) {
        for (int k = 0; k < cfg.samples; ++k) {
            DNMatrix a = rng.dn_matrix(n, true);
            CanonicalDN c = to_canonical(build_l_infinity(a), n);
            CanonicalDN w = to_dn0(c);
            if (!check_symmetry(w)) return make_result("dual chart symmetry", false, cases, 1);
            // Round trip back to the original coefficients.
            CanonicalDN back = to_dn0(w);
            for (int p = 0; p <= n; ++p)
                if (!(back.g[static_cast<std::size_t>(p)] == c.g[static_cast<std::size_t>(p)]))
                    return make_result("dual chart symmetry", false, cases, 1, "chart swap not involutive");
            ++cases;
        }
    }
    return make_result("dual chart symmetry", true, cases, 0);
}

SuiteResult suite_reconstruction(const VerifyConfig& cfg) {
    Rng rng(cfg.seed ^ 0x1b);
    int cases = 0;
    for (int n = 1; n <= cfg.max_n; ++n) {
        for (int k = 0; k < cfg.samples; ++k) {
            DNMatrix a = rng.dn_matrix(n, rng.uniform(0, 1) == 0);
            DNMatrix back = reconstruct(to_canonical(build_l_infinity(a), n));
            if (!(back == a)) return make_result("matrix reconstruction round trip", false, cases, 1);
            ++cases;
        }
    }
    return make_result("matrix reconstruction round trip", true, cases, 0);
}

SuiteResult suite_expansion_dictionary(const VerifyConfig& cfg) {
    Rng rng(cfg.seed ^ 0x1c);
    int cases = 0;
    for (int n = 1; n <= cfg.max_n; ++n) {
        for (int k = 0; k < cfg.samples; ++k) {
            DNMatrix a = rng.dn_matrix(n, false);
            auto lhs = weyl_expansion(a.tau());
            auto rhs = canonical_to_x(to_canonical(build_l_infinity(a), n));
            if (lhs != rhs) return make_result("expansion sign dictionary", false, cases, 1);
            ++cases;
        }
    }
    return make_result("expansion sign dictionary", true, cases, 0);
}

SuiteResult suite_k_matrix(const VerifyConfig& cfg) {
    int cases = 0;
    for (int n = 0; n <= 8; ++n) {
        for (int p = 1; p <= n + 1; ++p) {
            QMatrix k = k_matrix(n, p);
            // Invertibility via the exact solve against every unit vector.
            try {
                for (int col = 0; col < k.size; ++col) {
                    std::vector<Gaussian> e(static_cast<std::size_t>(k.size));
                    e[static_cast<std::size_t>(col)] = Gaussian(1);
                    solve_exact(k, std::move(e));
                }
            } catch (const SingularSolve&) {
                return make_result("expansion matrix invertibility", false, cases, 1,
                                   "singular at n=" + std::to_string(n) + " p=" + std::to_string(p));
            }
            ++cases;
        }
    }
    (void)cfg;
    return make_result("expansion matrix invertibility", true, cases, 0);
}

SuiteResult suite_residue_values(const VerifyConfig& cfg) {
    Rng rng(cfg.seed ^ 0x1d);
    int cases = 0;
    double worst = 0;
    for (int n = 2; n <= std::max(2, cfg.max_n); ++n) {
        for (int k = 0; k < cfg.samples; ++k) {
            DNMatrix a = sample_diagonalizable(rng, n);
            WeylElement l = build_l_infinity(a);
            ResidueReport rep;
            try {
                rep = residues(l, n);
            } catch (const RepeatedSingularity&) {
                continue;
            }
            double half_n = n / 2.0;
            for (const auto& e : rep.finite) {
                double err = std::abs(e.residue - cx(half_n, 0.0));
                worst = std::max(worst, err);
                if (e.exact && !(e.exact_residue == Gaussian(frac(n, 2))))
                    return make_result("residue values", false, cases, 1, "exact finite residue");
                if (err > 1e-9) return make_result("residue values", false, cases, err, "finite residue");
            }
            if (!(rep.infinity_residue == Gaussian(frac(-n * (n + 1), 2))))
                return make_result("residue values", false, cases, 1, "residue at infinity");
            worst = std::max(worst, rep.sum_residual);
            if (rep.sum_residual > 1e-9)
                return make_result("residue values", false, cases, rep.sum_residual, "residue sum");
            ++cases;
        }
    }
    return make_result("residue values", true, cases, worst);
}

SuiteResult suite_spectral_basis(const VerifyConfig& cfg) {
    Rng rng(cfg.seed ^ 0x1e);
    int cases = 0;
    double worst = 0;
    for (int n = 1; n <= cfg.max_n; ++n) {
        for (int k = 0; k < cfg.samples; ++k) {
            DNMatrix a = sample_diagonalizable(rng, n);
            ConnectionSpectrum spec = eigendecompose(a, cfg.tol_spectral);
            normalize_basis(spec, cfg.tol_spectral);
            // A C = C diag(lambda)
            CMat ac = spec.a * spec.c;
            double scale = spec.c.norm_fro();
            for (int col = 0; col <= n; ++col)
                for (int i = 0; i <= n; ++i) {
                    cx want = spec.lambdas[static_cast<std::size_t>(col)] * spec.c.at(i, col);
                    worst = std::max(worst, std::abs(ac.at(i, col) - want) / scale);
                }
            // C^t J C = I
            CMat ctjc = spec.c.transpose() * j_matrix(n) * spec.c;
            worst = std::max(worst, (ctjc - CMat::identity(n + 1)).norm_fro());
            if (worst > 1e-9) return make_result("normalized eigenbasis", false, cases, worst);
            ++cases;
        }
    }
    return make_result("normalized eigenbasis", true, cases, worst);
}

SuiteResult suite_residue_matrices(const VerifyConfig& cfg) {
    Rng rng(cfg.seed ^ 0x1f);
    int cases = 0;
    double worst = 0;
    for (int n = 1; n <= cfg.max_n; ++n) {
        for (int k = 0; k < cfg.samples; ++k) {
            DNMatrix a = sample_diagonalizable(rng, n);
            ConnectionSpectrum spec = eigendecompose(a, cfg.tol_spectral);
            normalize_basis(spec, cfg.tol_spectral);
            residue_matrices(spec);
            double half_n = n / 2.0;
            cx trace_sum = 0;
            for (int j = 0; j <= n; ++j) {
                const CMat& s = spec.s[static_cast<std::size_t>(j)];
                cx tr = 0;
                for (int i = 0; i <= n; ++i) tr += s.at(i, i);
                trace_sum += tr;
                worst = std::max(worst, std::abs(tr - cx(-half_n, 0.0)));
                // rank 1: second singular value tiny
                SVD sv = svd_jacobi(s);
                if (sv.s.size() > 1) worst = std::max(worst, sv.s[1] / std::max(sv.s[0], 1e-300));
                // eigen-structure
                for (int i = 0; i <= n; ++i) {
                    std::vector<cx> u(static_cast<std::size_t>(n) + 1);
                    for (int r = 0; r <= n; ++r) u[static_cast<std::size_t>(r)] = spec.c.at(r, i);
                    auto su = matvec(s, u);
                    double unorm = 0, resid = 0;
                    if (i == j) {
                        // S_j (T u_j) = -(n/2) T u_j
                        std::vector<cx> tu(static_cast<std::size_t>(n) + 1);
                        for (int r = 0; r <= n; ++r) tu[static_cast<std::size_t>(r)] = static_cast<double>(r) * u[static_cast<std::size_t>(r)];
                        auto stu = matvec(s, tu);
                        for (int r = 0; r <= n; ++r) {
                            resid += std::norm(stu[static_cast<std::size_t>(r)] + half_n * tu[static_cast<std::size_t>(r)]);
                            unorm += std::norm(tu[static_cast<std::size_t>(r)]);
                        }
                    } else {
                        for (int r = 0; r <= n; ++r) {
                            resid += std::norm(su[static_cast<std::size_t>(r)]);
                            unorm += std::norm(u[static_cast<std::size_t>(r)]);
                        }
                    }
                    worst = std::max(worst, std::sqrt(resid) / std::max(std::sqrt(unorm), 1e-300));
                }
            }
            worst = std::max(worst, std::abs(trace_sum - cx(-n * (n + 1) / 2.0, 0.0)));
            if (worst > 1e-8)
                return make_result("residue matrix structure", false, cases, worst);
            ++cases;
        }
    }
    return make_result("residue matrix structure", true, cases, worst);
}

SuiteResult suite_partial_fraction(const VerifyConfig& cfg) {
    Rng rng(cfg.seed ^ 0x20);
    int cases = 0;
    double worst = 0;
    for (int n = 1; n <= cfg.max_n; ++n) {
        for (int k = 0; k < cfg.samples; ++k) {
            DNMatrix a = sample_diagonalizable(rng, n);
            ConnectionSpectrum spec = eigendecompose(a, cfg.tol_spectral);
            normalize_basis(spec, cfg.tol_spectral);
            residue_matrices(spec);
            double scale = 0;
            for (auto l : spec.lambdas) scale = std::max(scale, std::abs(l));
            for (int s = 0; s < 20; ++s) {
                double ang = 2 * M_PI * rng.real01();
                double rad = scale * (1.2 + 2.0 * rng.real01());
                cx t = rad * cx(std::cos(ang), std::sin(ang));
                CMat direct = connection_rhs(spec, t);
                CMat pf = connection_rhs_partial_fractions(spec, t);
                worst = std::max(worst, (direct - pf).norm_fro() /
                                            std::max(direct.norm_fro(), 1e-300));
                // top row vanishes
                for (int j = 0; j <= n; ++j) worst = std::max(worst, std::abs(direct.at(0, j)));
            }
            if (worst > 1e-9) return make_result("partial fraction connection", false, cases, worst);
            ++cases;
        }
    }
    return make_result("partial fraction connection", true, cases, worst);
}

SuiteResult suite_shearing(const VerifyConfig& cfg) {
    Rng rng(cfg.seed ^ 0x21);
    int cases = 0;
    double worst = 0;
    for (int n = 1; n <= cfg.max_n; ++n) {
        for (int k = 0; k < cfg.samples; ++k) {
            DNMatrix a = rng.dn_matrix(n, rng.uniform(0, 1) == 0);
            NilpotencyCertificate cert = infinity_exponents(a, n + 3);
            if (cert.index != n + 1)
                return make_result("shearing nilpotency", false, cases, 1,
                                   "index " + std::to_string(cert.index));
            if (cert.pow_np1_norm != 0.0)
                return make_result("shearing nilpotency", false, cases, cert.pow_np1_norm, "power n+1");
            double expected = 1;
            for (int i = 1; i <= n; ++i) expected *= i;  // the (n,0) entry of N^n is n!
            if (cert.pow_n_norm < expected * 0.999)
                return make_result("shearing nilpotency", false, cases, cert.pow_n_norm, "power n");
            ++cases;
        }
    }
    return make_result("shearing nilpotency", true, cases, worst);
}

SuiteResult suite_solution_annihilation(const VerifyConfig& cfg) {
    Rng rng(cfg.seed ^ 0x22);
    int cases = 0;
    double worst = 0;
    for (int n = 1; n <= std::min(cfg.max_n, 3); ++n) {
        for (int k = 0; k < cfg.samples; ++k) {
            DNMatrix a = sample_diagonalizable(rng, n);
            // det_right(t d/dt - A~) annihilates every entry of Phi^{-1} e_0.
            // In Taylor coefficients at t0 that reads sum_k c_k(t0+s) v_k(s) = 0
            // with v_0 = e_0 and v_{k+1} = v_k' - T (A - t)^{-1} v_k.
            WeylElement det = build_l_infinity(a) * WeylElement::x();
            auto cs = ode_coefficients(det);
            const int dim = n + 1;
            const int ord = n + 5;
            double scale = 0;
            ConnectionSpectrum spec = eigendecompose(a, cfg.tol_spectral);
            for (auto l : spec.lambdas) scale = std::max(scale, std::abs(l));
            Gaussian t0(Rational(3 * static_cast<long>(std::ceil(scale)) + 2 + k, 1));
            SeriesMatrix res = SeriesMatrix::resolvent_taylor(spec.a, t0.to_complex(), ord);

            // r[m] = coefficient matrix of T (A-t)^{-1} at order m
            std::vector<CMat> r(static_cast<std::size_t>(ord), CMat(dim, dim));
            for (int m = 0; m < ord; ++m) {
                CMat rm = res.coeff(m);
                for (int i = 0; i < dim; ++i)
                    for (int j = 0; j < dim; ++j) rm.at(i, j) *= static_cast<double>(i);
                r[static_cast<std::size_t>(m)] = rm;
            }
            // series vectors: v[k][m] is the order-m Taylor vector coefficient
            std::vector<std::vector<std::vector<cx>>> v(static_cast<std::size_t>(n) + 2);
            v[0].assign(static_cast<std::size_t>(ord), std::vector<cx>(static_cast<std::size_t>(dim), 0.0));
            v[0][0][0] = 1.0;
            for (int kk = 0; kk <= n; ++kk) {
                auto& cur = v[static_cast<std::size_t>(kk)];
                auto& nxt = v[static_cast<std::size_t>(kk) + 1];
                nxt.assign(static_cast<std::size_t>(ord), std::vector<cx>(static_cast<std::size_t>(dim), 0.0));
                for (int m = 0; m + 1 < ord; ++m) {
                    for (int i = 0; i < dim; ++i)
                        nxt[static_cast<std::size_t>(m)][static_cast<std::size_t>(i)] =
                            static_cast<double>(m + 1) * cur[static_cast<std::size_t>(m) + 1][static_cast<std::size_t>(i)];
                    for (int l = 0; l <= m; ++l) {
                        const CMat& rl = r[static_cast<std::size_t>(l)];
                        for (int i = 0; i < dim; ++i) {
                            cx acc = 0;
                            for (int j = 0; j < dim; ++j)
                                acc += rl.at(i, j) * cur[static_cast<std::size_t>(m - l)][static_cast<std::size_t>(j)];
                            nxt[static_cast<std::size_t>(m)][static_cast<std::size_t>(i)] -= acc;
                        }
                    }
                }
            }
            // combo(s) = sum_k c_k(t0+s) v_k(s), valid to order ord-(n+1)
            int valid = ord - (n + 1);
            std::vector<std::vector<cx>> combo(static_cast<std::size_t>(valid),
                                               std::vector<cx>(static_cast<std::size_t>(dim), 0.0));
            double combo_scale = 0;
            for (int kk = 0; kk < static_cast<int>(cs.size()); ++kk) {
                if (cs[static_cast<std::size_t>(kk)].is_zero()) continue;
                Poly shifted = cs[static_cast<std::size_t>(kk)].compose_affine(Gaussian(1), t0);
                for (int m = 0; m < valid; ++m)
                    for (int l = 0; l <= std::min(m, shifted.degree()); ++l) {
                        cx cl = shifted.coeff(l).to_complex();
                        combo_scale = std::max(combo_scale, std::abs(cl));
                        for (int i = 0; i < dim; ++i)
                            combo[static_cast<std::size_t>(m)][static_cast<std::size_t>(i)] +=
                                cl * v[static_cast<std::size_t>(kk)][static_cast<std::size_t>(m - l)][static_cast<std::size_t>(i)];
                    }
            }
            for (int m = 0; m < valid; ++m)
                for (int i = 0; i < dim; ++i)
                    worst = std::max(worst, std::abs(combo[static_cast<std::size_t>(m)][static_cast<std::size_t>(i)]) /
                                                std::max(combo_scale, 1.0));
            if (worst > 1e-8) return make_result("solution annihilation", false, cases, worst);
            ++cases;
        }
    }
    return make_result("solution annihilation", true, cases, worst);
}

SuiteResult suite_monodromy_local(const VerifyConfig& cfg) {
    Rng rng(cfg.seed ^ 0x23);
    int cases = 0;
    double worst = 0;
    MonodromyOptions mo;
    mo.ode_tol = cfg.tol_ode;
    mo.spectral_tol = cfg.tol_spectral;
    mo.error_estimate = false;
    for (int n = 1; n <= std::min(cfg.max_n, 3); ++n) {
        for (int k = 0; k < std::max(1, cfg.samples / 3); ++k) {
            DNMatrix a = sample_diagonalizable(rng, n, true, 0.25, 500, true);
            MonodromyReport rep = monodromy(a, mo);
            worst = std::max(worst, rep.product_residual);
            worst = std::max(worst, rep.unipotent_pow_np1);
            if (rep.unipotent_pow_n < 1e-3) return make_result("local monodromy", false, cases, rep.unipotent_pow_n, "degenerate at infinity");
            cx target = (n % 2 == 0) ? cx(1.0) : cx(-1.0);
            for (const auto& m : rep.local) {
                auto eigs = clustered_eigenvalues(m, 1e-3);
                int near_target = 0, near_one = 0;
                for (auto e : eigs) {
                    if (std::abs(e - target) < 1e-6) ++near_target;
                    if (std::abs(e - cx(1.0)) < 1e-6) ++near_one;
                }
                bool ok = (n % 2 == 0) ? (near_one == n + 1) : (near_one == n && near_target == 1);
                if (!ok) return make_result("local monodromy", false, cases, 1, "finite loop spectrum");
                // the fixed part has codimension at most one
                int r = rank(m - CMat::identity(n + 1), 1e-6);
                bool rank_ok = (n % 2 == 0) ? (r <= 1) : (r == 1);
                if (!rank_ok) return make_result("local monodromy", false, cases, 1, "fixed space dimension");
            }
            if (worst > cfg.tol_mono) return make_result("local monodromy", false, cases, worst);
            ++cases;
        }
    }
    return make_result("local monodromy", true, cases, worst);
}

SuiteResult suite_operator_monodromy(const VerifyConfig& cfg) {
    Rng rng(cfg.seed ^ 0x24);
    int cases = 0;
    double worst = 0;
    MonodromyOptions mo;
    mo.ode_tol = cfg.tol_ode;
    mo.spectral_tol = cfg.tol_spectral;
    mo.error_estimate = false;
    for (int n = 1; n <= std::min(cfg.max_n, 3); ++n) {
        for (int k = 0; k < std::max(1, cfg.samples / 3); ++k) {
            DNMatrix a = sample_diagonalizable(rng, n, true, 0.25, 500, true);
            MonodromyReport rep = monodromy(a, mo);
            worst = std::max(worst, rep.reduced_pow_n);
            if (n >= 2 && rep.reduced_pow_nm1 < 1e-3)
                return make_result("operator level monodromy", false, cases, rep.reduced_pow_nm1,
                                   "reduced loop at infinity degenerates");
            for (const auto& m : rep.reduced) {
                auto eigs = clustered_eigenvalues(m, 1e-3);
                int near_one = 0, near_minus = 0;
                for (auto e : eigs) {
                    if (std::abs(e - cx(1.0)) < 1e-6) ++near_one;
                    if (std::abs(e + cx(1.0)) < 1e-6) ++near_minus;
                }
                bool ok = (n % 2 == 0) ? (near_one == n) : (near_one == n - 1 && near_minus == 1);
                if (!ok) return make_result("operator level monodromy", false, cases, 1, "reduced spectrum");
            }
            if (worst > cfg.tol_mono) return make_result("operator level monodromy", false, cases, worst);
            ++cases;
        }
    }
    return make_result("operator level monodromy", true, cases, worst);
}

SuiteResult suite_polarization_parity(const VerifyConfig& cfg) {
    Rng rng(cfg.seed ^ 0x25);
    int cases = 0;
    double worst = 0;
    MonodromyOptions mo;
    mo.ode_tol = cfg.tol_ode;
    mo.spectral_tol = cfg.tol_spectral;
    mo.error_estimate = false;
    for (int n = 1; n <= std::min(cfg.max_n, 3); ++n) {
        for (int k = 0; k < std::max(1, cfg.samples / 3); ++k) {
            DNMatrix a = sample_diagonalizable(rng, n, true, 0.25, 500, true);
            MonodromyReport rep = monodromy(a, mo);
            const PolarizationForm& f = rep.polarization;
            if (f.dimension != 1)
                return make_result("polarization parity", false, cases, 1,
                                   "dimension " + std::to_string(f.dimension));
            bool want_skew = (n % 2 == 0);
            bool got_skew = f.symmetry == PolarizationForm::Symmetry::skew;
            bool got_sym = f.symmetry == PolarizationForm::Symmetry::symmetric;
            if (want_skew ? !got_skew : !got_sym)
                return make_result("polarization parity", false, cases, 1, "wrong symmetry class");
            worst = std::max(worst, f.residual);
            if (f.residual > cfg.tol_mono) return make_result("polarization parity", false, cases, f.residual);
            ++cases;
        }
    }
    return make_result("polarization parity", true, cases, worst);
}

SuiteResult suite_hypergeometric(const VerifyConfig& cfg) {
    int cases = 0;
    double worst = 0;
    for (int n = 2; n <= std::min(std::max(cfg.max_n, 2), 4); ++n) {
        WeylElement h = hypergeom_operator(n);
        CanonicalDN c = to_canonical_w(h, n);
        for (int p = 1; p <= n; ++p)
            if (!c.g[static_cast<std::size_t>(p) - 1].is_zero())
                return make_result("hypergeometric family", false, cases, 1, "extra canonical block");
        if (!(c.g[static_cast<std::size_t>(n)] == Poly(Gaussian(-1))))
            return make_result("hypergeometric family", false, cases, 1, "leading canonical block");
        if (!check_symmetry(c)) return make_result("hypergeometric family", false, cases, 1, "symmetry");
        // Transport to the t-chart: singularities are the (n+1)-th roots of unity.
        CanonicalDN tform = to_dn0(c);
        WeylElement lt = from_canonical(tform);
        auto cs = ode_coefficients(lt);
        Poly expect = Poly::monomial(n + 1, Gaussian(1)) - Poly(Gaussian(1));
        if (!(cs[static_cast<std::size_t>(n)] == expect))
            return make_result("hypergeometric family", false, cases, 1, "singular locus");
        DNMatrix a = reconstruct(tform);
        if (!a.is_tau_symmetric())
            return make_result("hypergeometric family", false, cases, 1, "reconstructed matrix asymmetric");
        cases += 4;

        HypergeomMonodromy hm = hypergeom_prime_monodromy(n, cfg.tol_ode);
        worst = std::max(worst, hm.product_residual);
        if (hm.product_residual > cfg.tol_mono)
            return make_result("hypergeometric family", false, cases, hm.product_residual, "loop relation");
        auto ueigs = eigenvalues_qr(hm.u);
        for (auto e : ueigs) {
            double best = 1e300;
            for (int k = 1; k <= n; ++k) {
                cx root = std::polar(1.0, 2 * M_PI * k / (n + 1.0));
                best = std::min(best, std::abs(e - root));
            }
            worst = std::max(worst, best);
            if (best > 1e-6) return make_result("hypergeometric family", false, cases, best, "infinity spectrum");
        }
        if (rank(hm.s - CMat::identity(n), 1e-8) != 1)
            return make_result("hypergeometric family", false, cases, 1, "loop at 1 is not a pseudoreflection");
        PolarizationForm pf = solve_polarization({hm.u, hm.s}, 1e-8);
        if (pf.dimension != 1)
            return make_result("hypergeometric family", false, cases, 1, "invariant form dimension");
        auto [v, refl_resid] = reflection_vector(hm.s, pf.g);
        worst = std::max(worst, refl_resid);
        if (refl_resid > 1e-6)
            return make_result("hypergeometric family", false, cases, refl_resid, "reflection vector");
        RrvResult rrv = rrv_check(hm.u, hm.s, v, pf.g, n + 2);
        worst = std::max(worst, rrv.residual);
        if (rrv.residual > 1e-8)
            return make_result("hypergeometric family", false, cases, rrv.residual, "determinant series");
        for (int k = 1; k <= n; ++k) {
            double want = binom(n + 1, k);
            double got = std::abs(rrv.bracket_series[static_cast<std::size_t>(k)]);
            worst = std::max(worst, std::abs(got - want));
            if (std::abs(got - want) > 1e-6)
                return make_result("hypergeometric family", false, cases, std::abs(got - want),
                                   "bracket magnitude");
        }
        cases += 5;
    }
    return make_result("hypergeometric family", true, cases, worst);
}

std::vector<SuiteResult> run_verification(const VerifyConfig& cfg) {
    std::vector<SuiteResult> out;
    out.push_back(suite_ring_axioms(cfg));
    out.push_back(suite_normal_order_confluence(cfg));
    out.push_back(suite_adjoint(cfg));
    out.push_back(suite_right_division(cfg));
    out.push_back(suite_canonical_roundtrip(cfg));
    out.push_back(suite_det_agreement(cfg));
    out.push_back(suite_det_anti_involution(cfg));
    out.push_back(suite_det_sign_rule(cfg));
    out.push_back(suite_symmetry_adjoint(cfg));
    out.push_back(suite_dual_symmetry(cfg));
    out.push_back(suite_reconstruction(cfg));
    out.push_back(suite_expansion_dictionary(cfg));
    out.push_back(suite_k_matrix(cfg));
    out.push_back(suite_residue_values(cfg));
    out.push_back(suite_spectral_basis(cfg));
    out.push_back(suite_residue_matrices(cfg));
    out.push_back(suite_partial_fraction(cfg));
    out.push_back(suite_shearing(cfg));
    out.push_back(suite_solution_annihilation(cfg));
    if (cfg.heavy) {
        out.push_back(suite_monodromy_local(cfg));
        out.push_back(suite_operator_monodromy(cfg));
        out.push_back(suite_polarization_parity(cfg));
        out.push_back(suite_hypergeometric(cfg));
    }
    return out;
}

}  // namespace dn
