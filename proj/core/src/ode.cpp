#include "dn/ode.hpp"

#include <cmath>

namespace dn {

std::pair<cx, cx> Segment::eval(double u) const {
    if (kind == Kind::line) return {a + u * (b - a), b - a};
    double ang = ang0 + u * (ang1 - ang0);
    cx e(std::cos(ang), std::sin(ang));
    return {center + radius * e, radius * (ang1 - ang0) * cx(0, 1) * e};
}

double Segment::length() const {
    if (kind == Kind::line) return std::abs(b - a);
    return radius * std::abs(ang1 - ang0);
}

cx Segment::start() const { return eval(0.0).first; }
cx Segment::end() const { return eval(1.0).first; }

Segment line_segment(cx a, cx b) {
    Segment s;
    s.kind = Segment::Kind::line;
    s.a = a;
    s.b = b;
    return s;
}

Segment arc_segment(cx center, double radius, double ang0, double ang1) {
    Segment s;
    s.kind = Segment::Kind::arc;
    s.center = center;
    s.radius = radius;
    s.ang0 = ang0;
    s.ang1 = ang1;
    return s;
}

double path_length(const Path& p) {
    double l = 0;
    for (const auto& s : p) l += s.length();
    return l;
}

Path reversed(const Path& p) {
    Path r;
    for (auto it = p.rbegin(); it != p.rend(); ++it) {
        Segment s = *it;
        if (s.kind == Segment::Kind::line)
            std::swap(s.a, s.b);
        else
            std::swap(s.ang0, s.ang1);
        r.push_back(s);
    }
    return r;
}

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double C2 = 1.0 / 5, C3 = 3.0 / 10, C4 = 4.0 / 5, C5 = 8.0 / 9;
constexpr double A21 = 1.0 / 5;
constexpr double A31 = 3.0 / 40, A32 = 9.0 / 40;
constexpr double A41 = 44.0 / 45, A42 = -56.0 / 15, A43 = 32.0 / 9;
constexpr double A51 = 19372.0 / 6561, A52 = -25360.0 / 2187, A53 = 64448.0 / 6561,
                 A54 = -212.0 / 729;
constexpr double A61 = 9017.0 / 3168, A62 = -355.0 / 33, A63 = 46732.0 / 5247,
                 A64 = 49.0 / 176, A65 = -5103.0 / 18656;
constexpr double B1 = 35.0 / 384, B3 = 500.0 / 1113, B4 = 125.0 / 192, B5 = -2187.0 / 6784,
                 B6 = 11.0 / 84;
constexpr double E1 = 71.0 / 57600, E3 = -71.0 / 16695, E4 = 71.0 / 1920,
                 E5 = -17253.0 / 339200, E6 = 22.0 / 525, E7 = -1.0 / 40;

}  // namespace

CMat integrate_path(const MatrixRhs& rhs, const Path& path, CMat y0, const OdeOptions& opt,
                    OdeStats* stats) {
    auto ends = integrate_collect(rhs, path, std::move(y0), opt, stats);
    return ends.back();
}

std::vector<CMat> integrate_collect(const MatrixRhs& rhs, const Path& path, CMat y0,
                                    const OdeOptions& opt, OdeStats* stats) {
    std::vector<CMat> ends;
    CMat y = std::move(y0);
    OdeStats local;
    for (const auto& seg : path) {
        auto f = [&](double u, const CMat& state) {
            auto [t, dt] = seg.eval(u);
            return (rhs(t) * state) * dt;
        };
        double u = 0.0;
        double h = 0.05;
        CMat k1 = f(u, y);
        bool have_k1 = true;
        while (u < 1.0) {
            if (u + h > 1.0) h = 1.0 - u;
            if (h < 1e-14) break;
            if (!have_k1) {
                k1 = f(u, y);
                have_k1 = true;
            }
            CMat k2 = f(u + C2 * h, y + k1 * (A21 * h));
            CMat k3 = f(u + C3 * h, y + k1 * (A31 * h) + k2 * (A32 * h));
            CMat k4 = f(u + C4 * h, y + k1 * (A41 * h) + k2 * (A42 * h) + k3 * (A43 * h));
            CMat k5 = f(u + C5 * h,
                        y + k1 * (A51 * h) + k2 * (A52 * h) + k3 * (A53 * h) + k4 * (A54 * h));
            CMat k6 = f(u + h, y + k1 * (A61 * h) + k2 * (A62 * h) + k3 * (A63 * h) +
                                   k4 * (A64 * h) + k5 * (A65 * h));
            CMat ynew = y + k1 * (B1 * h) + k3 * (B3 * h) + k4 * (B4 * h) + k5 * (B5 * h) +
                        k6 * (B6 * h);
            CMat k7 = f(u + h, ynew);
            CMat err = k1 * (E1 * h) + k3 * (E3 * h) + k4 * (E4 * h) + k5 * (E5 * h) +
                       k6 * (E6 * h) + k7 * (E7 * h);

            double worst = 0.0;
            for (int i = 0; i < err.rows(); ++i) {
                for (int j = 0; j < err.cols(); ++j) {
                    double scale =
                        opt.atol + opt.rtol * std::max(std::abs(y.at(i, j)),
                                                       std::abs(ynew.at(i, j)));
                    worst = std::max(worst, std::abs(err.at(i, j)) / scale);
                }
            }
            if (++local.steps > opt.max_steps)
                throw StepUnderflow("step budget exhausted along the path");
            if (worst <= 1.0) {
                u += h;
                y = std::move(ynew);
                k1 = std::move(k7);  // first-same-as-last
                have_k1 = true;
                local.peak_norm = std::max(local.peak_norm, y.norm_fro());
            } else {
                ++local.rejected;
                have_k1 = true;  // k1 still valid at unchanged u
            }
            double factor = (worst == 0.0) ? 5.0 : 0.9 * std::pow(worst, -0.2);
            factor = std::min(5.0, std::max(0.2, factor));
            h *= factor;
            if (h < 1e-13 && u < 1.0)
                throw StepUnderflow("step size collapsed; path runs too close to a singularity");
        }
        ends.push_back(y);
    }
    if (stats) *stats = local;
    return ends;
}

}  // namespace dn
