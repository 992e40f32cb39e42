#include "dn/monodromy.hpp"

#include <algorithm>
#include <cmath>

#include "dn/dn_ops.hpp"
#include "dn/errors.hpp"

namespace dn {

namespace {

double wrap_angle(double a) {
    while (a <= -M_PI) a += 2 * M_PI;
    while (a > M_PI) a -= 2 * M_PI;
    return a;
}

double point_segment_distance(cx p, cx a, cx b) {
    cx d = b - a;
    double len2 = std::norm(d);
    if (len2 == 0.0) return std::abs(p - a);
    double t = std::clamp(((p - a) * std::conj(d)).real() / len2, 0.0, 1.0);
    return std::abs(p - (a + t * d));
}

MatrixRhs second_model_rhs(const CMat& a) {
    return [a](cx t) {
        CMat shifted = a;
        for (int i = 0; i < a.rows(); ++i) shifted.at(i, i) -= t;
        CMat inv = LU(shifted).inverse();
        CMat r(a.rows(), a.cols());
        for (int i = 0; i < a.rows(); ++i)
            for (int j = 0; j < a.cols(); ++j) r.at(i, j) = static_cast<double>(i) * inv.at(i, j);
        return r;
    };
}

CMat unit_offset_pow(const CMat& m, int e) {
    CMat d = m - CMat::identity(m.rows());
    return mat_pow(d, e);
}

// Householder basis of the orthogonal complement of c.
CMat complement_basis(const std::vector<cx>& c) {
    const int n = static_cast<int>(c.size());
    double norm = 0;
    for (const auto& v : c) norm += std::norm(v);
    norm = std::sqrt(norm);
    // u = c/|c| adjusted so that U e_0 = u with U = I - 2 w w^H.
    std::vector<cx> u(c.begin(), c.end());
    for (auto& v : u) v /= norm;
    cx phase = (std::abs(u[0]) > 0) ? u[0] / std::abs(u[0]) : cx(1.0);
    std::vector<cx> w = u;
    w[0] += phase;
    double wn = 0;
    for (const auto& v : w) wn += std::norm(v);
    CMat q(n, n - 1);
    for (int col = 1; col < n; ++col) {
        // column col of -phase * (I - 2 w w^H / |w|^2)
        for (int i = 0; i < n; ++i) {
            cx e = (i == col) ? cx(1.0) : cx(0.0);
            e -= 2.0 * w[static_cast<std::size_t>(i)] * std::conj(w[static_cast<std::size_t>(col)]) / wn;
            q.at(i, col - 1) = -phase * e;
        }
    }
    return q;
}

std::vector<cx> poly_from_eigenvalues(const std::vector<cx>& mu) {
    // prod (1 - t mu_i), ascending in t.
    std::vector<cx> p{1.0};
    for (auto m : mu) {
        std::vector<cx> q(p.size() + 1, 0.0);
        for (std::size_t k = 0; k < p.size(); ++k) {
            q[k] += p[k];
            q[k + 1] -= m * p[k];
        }
        p = std::move(q);
    }
    return p;
}

}  // namespace

LoopPlan plan_loops(const std::vector<cx>& points, std::optional<cx> forced_base) {
    const int m = static_cast<int>(points.size());
    if (m == 0) throw Error("plan_loops needs at least one singularity");
    double scale = 0;
    for (auto p : points) scale = std::max(scale, std::abs(p));
    if (scale == 0.0) scale = 1.0;

    auto spoke_clearance = [&](cx b) {
        double clear = 1e300;
        for (int j = 0; j < m; ++j)
            for (int l = 0; l < m; ++l)
                if (l != j)
                    clear = std::min(clear,
                                     point_segment_distance(points[static_cast<std::size_t>(l)],
                                                            b, points[static_cast<std::size_t>(j)]));
        return (m == 1) ? std::abs(b) : clear;
    };

    // Base point: scan directions, keep spokes clear of foreign singularities.
    double base_radius = 1.5 * scale;
    cx best_base = base_radius;
    double best_clear = -1.0;
    if (forced_base) {
        best_base = *forced_base;
        best_clear = spoke_clearance(best_base);
    } else {
        for (int k = 0; k < 720; ++k) {
            double ang = 2 * M_PI * k / 720.0;
            cx b = base_radius * cx(std::cos(ang), std::sin(ang));
            double clear = spoke_clearance(b);
            if (clear > best_clear) {
                best_clear = clear;
                best_base = b;
            }
        }
    }

    LoopPlan plan;
    plan.base = best_base;
    plan.clearance = best_clear;

    for (int j = 0; j < m; ++j) {
        double gap = 1e300;
        for (int l = 0; l < m; ++l)
            if (l != j) gap = std::min(gap, std::abs(points[static_cast<std::size_t>(j)] - points[static_cast<std::size_t>(l)]));
        if (m == 1) gap = scale;
        Loop loop;
        loop.base = plan.base;
        loop.index = j;
        loop.center = points[static_cast<std::size_t>(j)];
        loop.radius = 0.4 * gap;
        // Keep the circle away from the base point and from foreign spokes so
        // the keyholes stay disjoint.
        loop.radius = std::min(loop.radius, 0.5 * std::abs(plan.base - loop.center));
        for (int l = 0; l < m; ++l)
            if (l != j)
                loop.radius = std::min(loop.radius,
                                       0.8 * point_segment_distance(loop.center, plan.base,
                                                                    points[static_cast<std::size_t>(l)]));
        cx dir = plan.base - loop.center;
        double entry_ang = std::arg(dir);
        cx entry = loop.center + loop.radius * dir / std::abs(dir);
        loop.path.push_back(line_segment(plan.base, entry));
        loop.path.push_back(arc_segment(loop.center, loop.radius, entry_ang, entry_ang + 2 * M_PI));
        loop.path.push_back(line_segment(entry, plan.base));
        plan.finite.push_back(std::move(loop));
    }

    Loop inf;
    inf.base = plan.base;
    inf.at_infinity = true;
    inf.radius = 2.0 * scale;
    double base_ang = std::arg(plan.base);
    cx out = inf.radius * cx(std::cos(base_ang), std::sin(base_ang));
    inf.path.push_back(line_segment(plan.base, out));
    // Positively oriented around infinity = clockwise in the finite chart.
    inf.path.push_back(arc_segment(0.0, inf.radius, base_ang, base_ang - 2 * M_PI));
    inf.path.push_back(line_segment(out, plan.base));
    plan.infinity = std::move(inf);

    // Traversal order: spokes sorted by angle around the base, sweeping from
    // the inward direction; the composite of the keyholes in this order is
    // the counterclockwise circle around everything.
    double inward = std::arg(-plan.base);
    std::vector<int> order(static_cast<std::size_t>(m));
    for (int j = 0; j < m; ++j) order[static_cast<std::size_t>(j)] = j;
    std::sort(order.begin(), order.end(), [&](int x, int y) {
        double dx = wrap_angle(std::arg(points[static_cast<std::size_t>(x)] - plan.base) - inward);
        double dy = wrap_angle(std::arg(points[static_cast<std::size_t>(y)] - plan.base) - inward);
        return dx < dy;
    });
    plan.traversal = std::move(order);
    return plan;
}

CMat continue_solution(const MatrixRhs& rhs, const Path& path, double tol) {
    OdeOptions opt;
    opt.rtol = tol;
    opt.atol = tol * 1e-2;
    int dim = 1;
    // probe dimension from the rhs at the path start
    CMat probe = rhs(path.front().start());
    dim = probe.rows();
    return integrate_path(rhs, path, CMat::identity(dim), opt);
}

CMat continue_solution(const DNMatrix& a, const Path& path, double tol) {
    return continue_solution(second_model_rhs(to_cmat(a)), path, tol);
}

CMat local_monodromy(const DNMatrix& a, const LoopPlan& plan, int j, double tol) {
    return continue_solution(a, plan.finite[static_cast<std::size_t>(j)].path, tol);
}

CMat local_monodromy_infinity(const DNMatrix& a, const LoopPlan& plan, double tol) {
    return continue_solution(a, plan.infinity.path, tol);
}

PolarizationForm solve_polarization(const std::vector<CMat>& ms, double tol) {
    if (ms.empty()) throw Error("solve_polarization needs at least one matrix");
    const int n = ms.front().rows();
    const int nn = n * n;
    CMat sys(static_cast<int>(ms.size()) * nn, nn);
    int row = 0;
    for (const auto& mmat : ms) {
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                for (int k = 0; k < n; ++k)
                    for (int l = 0; l < n; ++l) {
                        cx coeff = mmat.at(k, i) * mmat.at(l, j);
                        if (k == i && l == j) coeff -= 1.0;
                        sys.at(row, k * n + l) = coeff;
                    }
                ++row;
            }
        }
    }
    double scale = 0;
    for (const auto& mmat : ms) scale = std::max(scale, mmat.norm_fro());
    auto basis = null_space(sys, tol, std::max(1.0, scale * scale));
    PolarizationForm form;
    form.dimension = static_cast<int>(basis.size());
    if (form.dimension != 1) {
        form.symmetry = PolarizationForm::Symmetry::none;
        if (form.dimension == 0) return form;
    }
    const auto& vec = basis.front();
    form.g = CMat(n, n);
    for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) form.g.at(k, l) = vec[static_cast<std::size_t>(k * n + l)];
    double fro = form.g.norm_fro();
    form.g = form.g * (1.0 / fro);
    double big = form.g.max_abs();
    for (int k = 0; k < n * n; ++k) {
        cx e = form.g.at(k / n, k % n);
        if (std::abs(e) > 0.5 * big) {
            form.g = form.g * (std::conj(e) / std::abs(e));
            break;
        }
    }
    double sym = (form.g - form.g.transpose()).norm_fro();
    double skew = (form.g + form.g.transpose()).norm_fro();
    if (form.dimension == 1) {
        if (sym <= 1e-6) form.symmetry = PolarizationForm::Symmetry::symmetric;
        else if (skew <= 1e-6) form.symmetry = PolarizationForm::Symmetry::skew;
        else form.symmetry = PolarizationForm::Symmetry::none;
    }
    for (const auto& mmat : ms)
        form.residual = std::max(form.residual,
                                 (mmat.transpose() * form.g * mmat - form.g).norm_fro());
    return form;
}

MonodromyReport monodromy(const DNMatrix& a, const MonodromyOptions& opt) {
    MonodromyReport rep;
    rep.n = a.n();
    if (rep.n < 1) throw Error("monodromy study needs order >= 1");
    const int dim = rep.n + 1;

    ConnectionSpectrum spec = eigendecompose(a, opt.spectral_tol);
    rep.lambdas = spec.lambdas;
    LoopPlan plan = plan_loops(spec.lambdas);
    rep.base = plan.base;
    rep.traversal = plan.traversal;

    MatrixRhs rhs = second_model_rhs(spec.a);
    auto run_all = [&](double tol) {
        std::vector<CMat> out;
        for (int j = 0; j < dim; ++j)
            out.push_back(continue_solution(rhs, plan.finite[static_cast<std::size_t>(j)].path, tol));
        out.push_back(continue_solution(rhs, plan.infinity.path, tol));
        return out;
    };
    std::vector<CMat> mats = run_all(opt.ode_tol);
    if (opt.error_estimate) {
        std::vector<CMat> refined = run_all(opt.ode_tol * 0.5);
        for (std::size_t k = 0; k < mats.size(); ++k)
            rep.ode_error_estimate =
                std::max(rep.ode_error_estimate, (mats[k] - refined[k]).norm_fro());
    }
    rep.local.assign(mats.begin(), mats.end() - 1);
    rep.infinity = mats.back();

    // Contractibility of the composite loop.
    CMat prod = rep.infinity;
    for (auto it = plan.traversal.rbegin(); it != plan.traversal.rend(); ++it)
        prod = prod * rep.local[static_cast<std::size_t>(*it)];
    rep.product_residual = (prod - CMat::identity(dim)).norm_fro();

    rep.unipotent_pow_np1 = unit_offset_pow(rep.infinity, rep.n + 1).norm_fro();
    rep.unipotent_pow_n = unit_offset_pow(rep.infinity, rep.n).norm_fro();
    for (const auto& m : rep.local) rep.local_eigenvalues.push_back(eigenvalues_qr(m));

    // Constants direction: sample f(t) = Phi(t)^{-1} e_0 along a short outward
    // path; the combination that stays constant spans the fixed line of the
    // dual action.
    {
        Path sample_path;
        std::vector<cx> samples;
        cx prev = plan.base;
        for (int k = 1; k <= dim + 1; ++k) {
            double r = 1.0 + 0.25 * static_cast<double>(k) / (dim + 1);
            double ang = 0.35 * static_cast<double>(k) / (dim + 1);
            cx p = plan.base * r * cx(std::cos(ang), std::sin(ang));
            sample_path.push_back(line_segment(prev, p));
            samples.push_back(p);
            prev = p;
        }
        OdeOptions oo;
        oo.rtol = opt.ode_tol;
        oo.atol = opt.ode_tol * 1e-2;
        auto states = integrate_collect(rhs, sample_path, CMat::identity(dim), oo);
        std::vector<std::vector<cx>> fs;
        fs.reserve(states.size());
        for (const auto& phi : states) {
            CMat inv = LU(phi).inverse();
            std::vector<cx> f(static_cast<std::size_t>(dim));
            for (int i = 0; i < dim; ++i) f[static_cast<std::size_t>(i)] = inv.at(i, 0);
            fs.push_back(std::move(f));
        }
        // f at the base itself is e_0 (Phi = I there).
        std::vector<cx> f0(static_cast<std::size_t>(dim), 0.0);
        f0[0] = 1.0;
        CMat diff(dim, static_cast<int>(fs.size()));
        for (int col = 0; col < static_cast<int>(fs.size()); ++col)
            for (int i = 0; i < dim; ++i)
                diff.at(i, col) = fs[static_cast<std::size_t>(col)][static_cast<std::size_t>(i)] - f0[static_cast<std::size_t>(i)];
        auto kernel = null_space(diff.transpose(), 1e-7);
        if (kernel.size() != 1)
            throw QuotientIllConditioned("constants direction is not a clean line (dim " +
                                         std::to_string(kernel.size()) + ")");
        rep.constants_direction = kernel.front();
    }

    // Operator-level action: coordinates transform by M^{-t}; quotient by the
    // constants line.
    std::vector<CMat> duals;
    for (const auto& m : rep.local) duals.push_back(LU(m.transpose()).inverse());
    CMat dual_inf = LU(rep.infinity.transpose()).inverse();
    const auto& c = rep.constants_direction;
    double cnorm = 0;
    for (const auto& v : c) cnorm += std::norm(v);
    cnorm = std::sqrt(cnorm);
    for (const auto& d : duals) {
        auto pc = matvec(d, c);
        double resid = 0;
        for (int i = 0; i < dim; ++i) resid += std::norm(pc[static_cast<std::size_t>(i)] - c[static_cast<std::size_t>(i)]);
        rep.quotient_conditioning = std::max(rep.quotient_conditioning, std::sqrt(resid) / cnorm);
    }
    {
        auto pc = matvec(dual_inf, c);
        double resid = 0;
        for (int i = 0; i < dim; ++i) resid += std::norm(pc[static_cast<std::size_t>(i)] - c[static_cast<std::size_t>(i)]);
        rep.quotient_conditioning = std::max(rep.quotient_conditioning, std::sqrt(resid) / cnorm);
    }
    if (rep.quotient_conditioning > 1e-4)
        throw QuotientIllConditioned("constants line drifts under the dual action");

    CMat q = complement_basis(c);
    CMat qh = q.ctranspose();
    for (const auto& d : duals) rep.reduced.push_back(qh * d * q);
    rep.reduced_infinity = qh * dual_inf * q;
    if (rep.n >= 1) {
        rep.reduced_pow_n = unit_offset_pow(rep.reduced_infinity, rep.n).norm_fro();
        rep.reduced_pow_nm1 = unit_offset_pow(rep.reduced_infinity, rep.n - 1).norm_fro();
    }

    std::vector<CMat> all_reduced = rep.reduced;
    all_reduced.push_back(rep.reduced_infinity);
    rep.polarization = solve_polarization(all_reduced, 1e-8);
    return rep;
}

WeylElement hypergeom_operator(int n) {
    if (n < 1) throw Error("hypergeom_operator needs n >= 1");
    Poly prod{Gaussian(1)};
    Poly theta = Poly::x();
    for (int l = 1; l <= n; ++l) prod *= (theta + Poly(Gaussian(static_cast<long>(l))));
    return WeylElement::theta().pow(n) - WeylElement::y(n + 1) * theta_to_grade0(prod);
}

HypergeomMonodromy hypergeom_prime_monodromy(int n, double ode_tol) {
    if (n < 1) throw Error("hypergeom_prime_monodromy needs n >= 1");
    // D^n f = u/(1-u) sum_m e_m D^m f with prod_k (D + k/(n+1)) = sum e_m D^m.
    Poly prod{Gaussian(1)};
    Poly x = Poly::x();
    for (int k = 1; k <= n; ++k)
        prod *= (x + Poly(Gaussian(Rational(k, n + 1))));
    std::vector<cx> e(static_cast<std::size_t>(n), 0.0);
    for (int m = 0; m < n; ++m) e[static_cast<std::size_t>(m)] = prod.coeff(m).to_complex();

    MatrixRhs rhs = [n, e](cx u) {
        CMat b(n, n);
        for (int i = 0; i + 1 < n; ++i) b.at(i, i + 1) = 1.0 / u;
        for (int m = 0; m < n; ++m) b.at(n - 1, m) += e[static_cast<std::size_t>(m)] / (1.0 - u);
        return b;
    };

    // Base above the real axis so that traversal order is (0-loop, 1-loop)
    // and the contractible composite reads U * S * M0.
    std::vector<cx> sing{cx(0.0), cx(1.0)};
    LoopPlan plan = plan_loops(sing, cx(0.0, 1.5));
    HypergeomMonodromy hm;
    hm.m0 = continue_solution(rhs, plan.finite[0].path, ode_tol);
    hm.s = continue_solution(rhs, plan.finite[1].path, ode_tol);
    hm.u = continue_solution(rhs, plan.infinity.path, ode_tol);
    // Contractibility in the planned order, then the named relation.
    CMat prod_mat = hm.u;
    for (auto it = plan.traversal.rbegin(); it != plan.traversal.rend(); ++it) {
        prod_mat = prod_mat * (*it == 0 ? hm.m0 : hm.s);
    }
    hm.product_residual = (prod_mat - CMat::identity(n)).norm_fro();
    return hm;
}

std::pair<std::vector<cx>, double> reflection_vector(const CMat& s, const CMat& g) {
    const int n = s.rows();
    // With (x,y) = x^t G y the reflection is S = I - v (G v)^t.
    CMat r = CMat::identity(n) - s;
    int best_col = 0;
    double best = -1;
    for (int j = 0; j < n; ++j) {
        double cn = 0;
        for (int i = 0; i < n; ++i) cn += std::norm(r.at(i, j));
        if (cn > best) {
            best = cn;
            best_col = j;
        }
    }
    std::vector<cx> v0(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) v0[static_cast<std::size_t>(i)] = r.at(i, best_col);
    // r = alpha^2 v0 (G v0)^t; read alpha^2 off the largest entry.
    auto gtv0 = matvec(g, v0);
    CMat model(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) model.at(i, j) = v0[static_cast<std::size_t>(i)] * gtv0[static_cast<std::size_t>(j)];
    cx num = 0, den = 0;
    double heavy = -1;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double wgt = std::abs(model.at(i, j));
            if (wgt > heavy) {
                heavy = wgt;
                num = r.at(i, j);
                den = model.at(i, j);
            }
        }
    if (heavy <= 0) throw Error("reflection_vector: S - I vanishes");
    cx alpha2 = num / den;
    cx alpha = std::sqrt(alpha2);
    std::vector<cx> v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = alpha * v0[static_cast<std::size_t>(i)];
    double resid = (r - model * alpha2).norm_fro() / std::max(1.0, r.norm_fro());
    return {v, resid};
}

RrvResult rrv_check(const CMat& u, const CMat& s, const std::vector<cx>& v, const CMat& g,
                    int order) {
    RrvResult out;
    const int n = u.rows();
    // Brackets (U^i v, v) = (U^i v)^t G v.
    auto gv = matvec(g, v);
    out.bracket_series.assign(static_cast<std::size_t>(order) + 1, 0.0);
    out.bracket_series[0] = 1.0;
    std::vector<cx> w = v;
    for (int i = 1; i <= order; ++i) {
        w = matvec(u, w);
        cx dot = 0;
        for (int k = 0; k < n; ++k) dot += w[static_cast<std::size_t>(k)] * gv[static_cast<std::size_t>(k)];
        out.bracket_series[static_cast<std::size_t>(i)] = dot;
    }
    // det(1 - t U S) / det(1 - t U) as a power series.
    auto num = poly_from_eigenvalues(eigenvalues_qr(u * s));
    auto den = poly_from_eigenvalues(eigenvalues_qr(u));
    out.determinant_series.assign(static_cast<std::size_t>(order) + 1, 0.0);
    for (int k = 0; k <= order; ++k) {
        cx acc = (k < static_cast<int>(num.size())) ? num[static_cast<std::size_t>(k)] : cx(0.0);
        for (int j = 1; j <= k; ++j) {
            cx dj = (j < static_cast<int>(den.size())) ? den[static_cast<std::size_t>(j)] : cx(0.0);
            acc -= dj * out.determinant_series[static_cast<std::size_t>(k - j)];
        }
        out.determinant_series[static_cast<std::size_t>(k)] = acc / den[0];
    }
    for (int k = 0; k <= order; ++k)
        out.residual = std::max(out.residual,
                                std::abs(out.bracket_series[static_cast<std::size_t>(k)] -
                                         out.determinant_series[static_cast<std::size_t>(k)]));
    return out;
}

}  // namespace dn
