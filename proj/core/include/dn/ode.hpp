#pragma once

#include <functional>
#include <vector>

#include "dn/linalg.hpp"

namespace dn {

/// Piece of an integration contour, parametrized over u in [0,1].
struct Segment {
    enum class Kind { line, arc } kind = Kind::line;
    cx a{0.0}, b{0.0};        // line endpoints
    cx center{0.0};           // arc data
    double radius = 0.0, ang0 = 0.0, ang1 = 0.0;

    std::pair<cx, cx> eval(double u) const;  // (t, dt/du)
    double length() const;
    cx start() const;
    cx end() const;
};

Segment line_segment(cx a, cx b);
Segment arc_segment(cx center, double radius, double ang0, double ang1);

using Path = std::vector<Segment>;

double path_length(const Path& p);
Path reversed(const Path& p);

struct OdeOptions {
    double rtol = 1e-12;
    double atol = 1e-14;
    int max_steps = 4000000;
};

struct OdeStats {
    long steps = 0;
    long rejected = 0;
    double peak_norm = 0.0;  // largest state norm seen along the path
};

using MatrixRhs = std::function<CMat(cx)>;

/// Integrates Y' = R(t) Y along the path with the Dormand-Prince 5(4)
/// embedded pair and proportional step control.  Throws StepUnderflow when
/// the step collapses.
CMat integrate_path(const MatrixRhs& rhs, const Path& path, CMat y0,
                    const OdeOptions& opt = {}, OdeStats* stats = nullptr);

/// Same, but also returns the state at the end of every segment.
std::vector<CMat> integrate_collect(const MatrixRhs& rhs, const Path& path, CMat y0,
                                    const OdeOptions& opt = {}, OdeStats* stats = nullptr);

}  // namespace dn
