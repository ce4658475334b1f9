#pragma once

// Floating-point checks of the differential-geometric picture behind the
// exact tables: the Hessian potential and its Legendre dual coordinates,
// straight-line gradient flows, tree meeting points, symplectic areas as line
// integrals, the max-at-one-point property of basis magnitudes, and the
// Landau-Ginzburg critical points.

#include "mirror_morse/lagrangian.hpp"
#include "mirror_morse/morse_category.hpp"

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace mirror_morse {

using Vec = std::vector<double>;

/// Outcome of one numeric check; serialized as {check, params, residuals, pass}.
struct Report {
    std::string check;
    nlohmann::json params = nlohmann::json::object();
    std::map<std::string, double> residuals;
    bool pass = true;
    nlohmann::json info = nlohmann::json::object();
};

inline nlohmann::json to_json(const Report& r) {
    nlohmann::json j{{"check", r.check}, {"params", r.params}, {"residuals", r.residuals}, {"pass", r.pass}};
    if (!r.info.empty()) j["info"] = r.info;
    return j;
}

/// phi(x) = log(1 + e^{2x_1} + ... + e^{2x_n}) in the original coordinates x_i.
class HessianChart {
public:
    explicit HessianChart(int n) : n_(n) {
        if (n < 1) throw std::invalid_argument("HessianChart: dimension must be positive");
    }

    int dim() const { return n_; }

    double potential(const Vec& x) const {
        check(x);
        double m = 0.0;
        for (double xi : x) m = std::max(m, 2 * xi);
        double s = std::exp(-m);
        for (double xi : x) s += std::exp(2 * xi - m);
        return m + std::log(s);
    }

    /// x^i = d phi / d x_i = 2 e^{2x_i} / (1 + sum e^{2x_j}).
    Vec dual(const Vec& x) const {
        check(x);
        double m = 0.0;
        for (double xi : x) m = std::max(m, 2 * xi);
        double s = std::exp(-m);
        for (double xi : x) s += std::exp(2 * xi - m);
        Vec out(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) out[i] = 2 * std::exp(2 * x[i] - m) / s;
        return out;
    }

    /// x_i = (1/2) log(x^i / (2 - sum x^j)).
    Vec original(const Vec& xd) const {
        check(xd);
        double slack = 2.0;
        for (double v : xd) slack -= v;
        Vec out(xd.size());
        for (std::size_t i = 0; i < xd.size(); ++i) out[i] = 0.5 * std::log(xd[i] / slack);
        return out;
    }

    /// g^{ij} = d^2 phi / dx_i dx_j = 2 x^i delta_ij - x^i x^j.
    Eigen::MatrixXd metric(const Vec& x) const {
        const Vec xd = dual(x);
        Eigen::MatrixXd g(n_, n_);
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) {
                const double xi = xd[static_cast<std::size_t>(i)], xj = xd[static_cast<std::size_t>(j)];
                g(i, j) = (i == j ? 2 * xi : 0.0) - xi * xj;
            }
        return g;
    }

    /// Central second differences of the potential.
    Eigen::MatrixXd metric_fd(const Vec& x, double h = 1e-4) const {
        Eigen::MatrixXd g(n_, n_);
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) {
                auto at = [&](double di, double dj) {
                    Vec y = x;
                    y[static_cast<std::size_t>(i)] += di;
                    y[static_cast<std::size_t>(j)] += dj;
                    return potential(y);
                };
                g(i, j) = (at(h, h) - at(h, -h) - at(-h, h) + at(-h, -h)) / (4 * h * h);
            }
        return g;
    }

private:
    void check(const Vec& x) const {
        if (static_cast<int>(x.size()) != n_) throw std::invalid_argument("HessianChart: dimension mismatch");
    }
    int n_;
};

/// Forward map lands in the open polytope, inverse recovers the input, and
/// the closed-form metric agrees with finite differences and is positive definite.
inline Report legendre_check(const Vec& x_orig, double tol) {
    const HessianChart chart(static_cast<int>(x_orig.size()));
    Report r{"legendre", {{"x", x_orig}, {"tol", tol}}, {}, true, {}};
    const Vec xd = chart.dual(x_orig);
    const Vec back = chart.original(xd);
    double rt = 0.0;
    for (std::size_t i = 0; i < xd.size(); ++i) rt = std::max(rt, std::abs(back[i] - x_orig[i]));
    double sum = 0.0;
    bool interior = true;
    for (double v : xd) {
        interior = interior && v > 0.0;
        sum += v;
    }
    interior = interior && sum < 2.0;
    const Eigen::MatrixXd g = chart.metric(x_orig);
    const double fd = (g - chart.metric_fd(x_orig)).cwiseAbs().maxCoeff();
    const double min_eig = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(g).eigenvalues().minCoeff();
    r.residuals = {{"roundtrip", rt}, {"hessian_fd", fd}, {"min_eigenvalue", min_eig}, {"interior", interior ? 1.0 : 0.0}};
    r.info["dual"] = xd;
    r.pass = rt < tol && interior && fd < 1e-5 && min_eig > 0.0;
    return r;
}

struct TrajectorySample {
    std::vector<double> times;
    std::vector<Vec> points;
    double step = 0.0;
    bool truncated = false;       // left the guard band around P
    double max_deviation = 0.0;   // against v + e^{rate t}(start - v)
};

/// Guard band around P for boundary trajectories.
inline constexpr double kGuardBand = 1e-9;

inline bool within_guard(const Vec& x) {
    double s = 0.0;
    for (double v : x) {
        if (v < -kGuardBand) return false;
        s += v;
    }
    return s <= 2.0 + kGuardBand;
}

namespace detail {

inline Vec to_vec(const RationalPoint& p) { return to_doubles(p); }

inline Vec rk4_step(const Vec& x, double h, double rate, const Vec& v) {
    auto f = [&](const Vec& y) {
        Vec d(y.size());
        for (std::size_t j = 0; j < y.size(); ++j) d[j] = rate * (y[j] - v[j]);
        return d;
    };
    auto axpy = [](const Vec& y, double s, const Vec& d) {
        Vec o(y.size());
        for (std::size_t j = 0; j < y.size(); ++j) o[j] = y[j] + s * d[j];
        return o;
    };
    const Vec k1 = f(x), k2 = f(axpy(x, h / 2, k1)), k3 = f(axpy(x, h / 2, k2)), k4 = f(axpy(x, h, k3));
    Vec out(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) out[j] = x[j] + h / 6 * (k1[j] + 2 * k2[j] + 2 * k3[j] + k4[j]);
    return out;
}

inline double dist(const Vec& a, const Vec& b) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) s += (a[j] - b[j]) * (a[j] - b[j]);
    return std::sqrt(s);
}

// Flow of ((b-a)/2)(x - center) from start over time T (negative: backward).
inline TrajectorySample integrate_linear(double rate, const Vec& center, const Vec& start, double T, int steps, bool guard) {
    if (steps < 1) throw std::invalid_argument("integrate: steps must be positive");
    TrajectorySample s;
    s.step = T / steps;
    Vec x = start;
    s.times.push_back(0.0);
    s.points.push_back(x);
    for (int k = 1; k <= steps; ++k) {
        x = rk4_step(x, s.step, rate, center);
        const double t = k * s.step;
        if (guard && !within_guard(x)) {
            s.truncated = true;
            break;
        }
        double dev = 0.0;
        const double g = std::exp(rate * t);
        for (std::size_t j = 0; j < x.size(); ++j) dev = std::max(dev, std::abs(x[j] - (center[j] + g * (start[j] - center[j]))));
        s.max_deviation = std::max(s.max_deviation, dev);
        s.times.push_back(t);
        s.points.push_back(x);
    }
    return s;
}

}  // namespace detail

/// RK4 for -grad f_{ab;I} = ((b-a)/2)(x - v_{ab;I}) in dual coordinates,
/// cross-checked against the exact exponential solution.
inline TrajectorySample integrate_pair_flow(int a, int b, const MultiIndex& I, const Vec& start, double T, int steps) {
    if (a >= b) throw std::invalid_argument("integrate_pair_flow requires a < b");
    if (start.size() != I.size()) throw std::invalid_argument("integrate_pair_flow: dimension mismatch");
    if (!within_guard(start)) throw std::invalid_argument("integrate_pair_flow: start outside P");
    return detail::integrate_linear((b - a) / 2.0, detail::to_vec(intersection_point(a, b, I)), start, T, steps, true);
}

namespace detail {

// Integral of sum_j (s_a^j - s_b^j + i_j) dx_j (original coordinates x_j)
// along the straight segment from p to q in dual coordinates. For the pair
// (a, b; I) this equals f_{ab;I}(q) - f_{ab;I}(p).
inline double form_integral(int a, int b, const MultiIndex& I, const Vec& p, const Vec& q) {
    const double rate = (b - a) / 2.0;
    const int deg = total(I);
    Vec dx(p.size());
    double dsum = 0.0;
    for (std::size_t j = 0; j < p.size(); ++j) {
        dx[j] = q[j] - p[j];
        dsum += dx[j];
    }
    auto integrand = [&](double t) {
        double val = 0.0, sum = 0.0;
        for (std::size_t j = 0; j < p.size(); ++j) {
            const double x = p[j] + t * dx[j];
            sum += x;
            if (I[j] == 0) val += -rate * dx[j] / 2;  // (-rate x) * dx/(2x)
            else val += (I[j] - rate * x) * dx[j] / (2 * x);
        }
        // sum_j c_j = |I| - rate sum x ; equals rate (2 - sum x) when |I| = b - a
        if (deg == b - a) val += rate * dsum / 2;
        else val += (deg - rate * sum) * dsum / (2 * (2 - sum));
        return val;
    };
    return boost::math::quadrature::gauss<double, 30>::integrate(integrand, 0.0, 1.0);
}

}  // namespace detail

/// Numeric reconstruction of the tree of m_2(g_ab, g_bc): flow lines from the
/// input points reach the output point, the area recomputed as a line
/// integral of the connection form matches the exact value, and the output
/// sits on the segment between the inputs.
inline Report verify_tree_numeric(const HomGenerator& g_ab, const HomGenerator& g_bc, double tol) {
    Report r{"tree", {{"left", g_ab.to_string()}, {"right", g_bc.to_string()}, {"tol", tol}}, {}, true, {}};
    auto outcome = gradient_tree(g_ab, g_bc);
    if (const auto* u = std::get_if<Unsupported>(&outcome)) {
        r.pass = false;
        r.info["unsupported"] = u->reason;
        return r;
    }
    const auto& tree = std::get<GradientTree2>(outcome);
    double meet_err = 0.0, backward_err = 0.0, area_num = 0.0;
    bool on_segment = true;
    constexpr double kOffset = 1e-6;
    constexpr int kSteps = 4000;
    for (std::size_t k = 0; k < tree.factors.size(); ++k) {
        const auto& ft = tree.factors[k];
        if (ft.kind != FactorTreeKind::Segment) continue;
        const auto& L = g_ab.pieces[k];
        const auto& R = g_bc.pieces[k];
        const Vec out = detail::to_vec(*ft.output);
        on_segment = on_segment && segment_contains(*ft.left_input, *ft.right_input, *ft.output);
        struct Edge {
            int a, b;
            const MultiIndex* I;
            Vec v;
        };
        const Edge edges[2] = {{L.source, L.target, &L.index, detail::to_vec(*ft.left_input)},
                               {R.source, R.target, &R.index, detail::to_vec(*ft.right_input)}};
        for (const auto& e : edges) {
            const double rate = (e.b - e.a) / 2.0;
            const double gap = detail::dist(e.v, out);
            if (gap > 0) {
                // forward from just off v along the ray through the output
                Vec start(e.v.size());
                for (std::size_t j = 0; j < start.size(); ++j) start[j] = e.v[j] + kOffset * (out[j] - e.v[j]);
                const double T = std::log(1.0 / kOffset) / rate;
                const auto fwd = detail::integrate_linear(rate, e.v, start, T, kSteps, false);
                meet_err = std::max(meet_err, detail::dist(fwd.points.back(), out));
                // backward from the output: converges to v along the same ray
                const auto bwd = detail::integrate_linear(rate, e.v, out, -T, kSteps, false);
                backward_err = std::max(backward_err, detail::dist(bwd.points.back(), start));
            }
            area_num -= detail::form_integral(e.a, e.b, *e.I, e.v, out);
        }
    }
    const double area_exact = tree.area.to_double();
    const double area_err = area_exact == 0.0 ? std::abs(area_num) : std::abs(area_num - area_exact) / std::abs(area_exact);
    r.residuals = {{"meeting_point", meet_err},
                   {"backward_flow", backward_err},
                   {"area_error", area_err},
                   {"area_numeric", area_num},
                   {"area_exact", area_exact}};
    r.info["area_exact_symbolic"] = tree.area.to_string();
    r.info["on_segment"] = on_segment;
    r.pass = meet_err < tol && backward_err < tol && area_err < tol && on_segment;
    return r;
}

/// Double-precision |e_{ab;I}(x)| from the closed form.
inline double magnitude_double(int a, int b, const MultiIndex& I, const Vec& x) {
    const int d = b - a;
    auto unnorm = [&](const Vec& y) {
        double s = 0.0, m = 1.0;
        for (std::size_t j = 0; j < y.size(); ++j) {
            s += y[j];
            if (I[j] > 0) m *= std::pow(std::max(y[j], 0.0) / 2, I[j] / 2.0);
        }
        const int rest = d - total(I);
        if (rest > 0) m *= std::pow(std::max(2 - s, 0.0) / 2, rest / 2.0);
        return m;
    };
    return unnorm(x) / unnorm(detail::to_vec(intersection_point(a, b, I)));
}

/// Evaluates |e_{ab;I}| on the grid {x in P : x^j in spacing * Z} and checks
/// that it never exceeds 1 + tol and exceeds 1 - eps only within one grid
/// step (sup norm) of v_{ab;I}.
inline Report grid_max_check(int a, int b, const MultiIndex& I, double spacing, double tol, double eps = 1e-7) {
    if (a >= b) throw std::invalid_argument("grid_max_check requires a < b");
    const int n = static_cast<int>(I.size());
    const int per_axis = static_cast<int>(std::lround(2.0 / spacing));
    Report r{"grid_max", {{"a", a}, {"b", b}, {"I", I}, {"spacing", spacing}, {"tol", tol}, {"eps", eps}}, {}, true, {}};
    const Vec v = detail::to_vec(intersection_point(a, b, I));
    double best = -1.0, far_best = -1.0;
    Vec argmax;
    std::size_t near_count = 0, stray = 0;
    std::vector<int> k(static_cast<std::size_t>(n), 0);
    auto visit = [&](auto&& self, int pos, int budget) -> void {
        if (pos == n) {
            Vec x(static_cast<std::size_t>(n));
            double cheb = 0.0;
            for (int j = 0; j < n; ++j) {
                x[static_cast<std::size_t>(j)] = k[static_cast<std::size_t>(j)] * spacing;
                cheb = std::max(cheb, std::abs(x[static_cast<std::size_t>(j)] - v[static_cast<std::size_t>(j)]));
            }
            const double m = magnitude_double(a, b, I, x);
            const bool near = cheb <= spacing * (1 + 1e-9);
            if (m > best) {
                best = m;
                argmax = x;
            }
            if (!near) far_best = std::max(far_best, m);
            if (m > 1 - eps) {
                ++near_count;
                if (!near) ++stray;
            }
            return;
        }
        for (int t = 0; t <= budget; ++t) {
            k[static_cast<std::size_t>(pos)] = t;
            self(self, pos + 1, budget - t);
        }
    };
    visit(visit, 0, per_axis);
    const double arg_dist = detail::dist(argmax, v);
    r.residuals = {{"max_value", best},
                   {"excess_over_one", std::max(0.0, best - 1)},
                   {"far_max", far_best},
                   {"near_max_points", static_cast<double>(near_count)},
                   {"stray_near_max_points", static_cast<double>(stray)},
                   {"argmax_distance", arg_dist}};
    r.pass = best <= 1 + tol && stray == 0 && arg_dist <= spacing * std::sqrt(static_cast<double>(n)) * (1 + 1e-9);
    return r;
}

/// W(z) = z^1 + ... + z^n + e^{-2} / (z^1 ... z^n).
inline std::vector<std::complex<double>> lg_gradient(const std::vector<std::complex<double>>& z) {
    std::complex<double> prod = 1.0;
    for (const auto& zi : z) prod *= zi;
    const double q = std::exp(-2.0);
    std::vector<std::complex<double>> g(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) g[i] = 1.0 - q / (prod * z[i]);
    return g;
}

inline double lg_gradient_residual(const std::vector<std::complex<double>>& z) {
    double s = 0.0;
    for (const auto& gi : lg_gradient(z)) s += std::norm(gi);
    return std::sqrt(s);
}

/// How a point of (C^x)^n is read as (base point, fiber angle).
enum class FiberConvention {
    Literal,      // x^j = log|z^j|, y^j = arg z^j (period 2 pi)
    Barycentric,  // x^j = -log|z^j|, y^j = arg z^j / (2 pi) (period 1)
};

inline std::string to_string(FiberConvention c) { return c == FiberConvention::Literal ? "literal" : "barycentric"; }

struct LgCriticalPoint {
    int a = 0;
    std::vector<std::complex<double>> z;
    double gradient_residual = 0.0;
    std::map<std::string, bool> on_section;  // per convention
};

/// Whether z lies over the open polytope on the section y = (a/2) x.
inline bool on_section(const std::vector<std::complex<double>>& z, int a, FiberConvention c) {
    const double two_pi = 2 * std::numbers::pi;
    double sum = 0.0;
    for (const auto& zj : z) {
        const double x = c == FiberConvention::Literal ? std::log(std::abs(zj)) : -std::log(std::abs(zj));
        if (!(x > 0)) return false;
        sum += x;
        double y = std::arg(zj);
        const double period = c == FiberConvention::Literal ? two_pi : 1.0;
        if (c == FiberConvention::Barycentric) y /= two_pi;
        double diff = std::fmod(y - a * x / 2, period);
        if (diff < 0) diff += period;
        if (std::min(diff, period - diff) > 1e-9) return false;
    }
    return sum < 2;
}

/// c_a = (e^{-2/(n+1)} w^a, ..., e^{-2/(n+1)} w^a), w = e^{2 pi i/(n+1)}, a = 0..n.
inline std::vector<LgCriticalPoint> lg_critical_points(int n) {
    if (n < 1) throw std::invalid_argument("lg_critical_points: n must be positive");
    std::vector<LgCriticalPoint> out;
    const double mod = std::exp(-2.0 / (n + 1));
    for (int a = 0; a <= n; ++a) {
        LgCriticalPoint c;
        c.a = a;
        const std::complex<double> w = std::polar(1.0, 2 * std::numbers::pi * a / (n + 1));
        c.z.assign(static_cast<std::size_t>(n), mod * w);
        c.gradient_residual = lg_gradient_residual(c.z);
        for (auto conv : {FiberConvention::Literal, FiberConvention::Barycentric})
            c.on_section[to_string(conv)] = on_section(c.z, a, conv);
        out.push_back(std::move(c));
    }
    return out;
}

/// Residual check is asserted; section membership is informational.
inline Report lg_report(int n, double tol = 1e-12) {
    Report r{"lg_critical_points", {{"n", n}, {"tol", tol}}, {}, true, {}};
    double worst = 0.0;
    nlohmann::json pts = nlohmann::json::array();
    for (const auto& c : lg_critical_points(n)) {
        worst = std::max(worst, c.gradient_residual);
        pts.push_back({{"a", c.a}, {"modulus", std::abs(c.z[0])}, {"arg", std::arg(c.z[0])}, {"on_section", c.on_section}});
    }
    r.residuals = {{"max_gradient", worst}};
    r.info["points"] = pts;
    r.pass = worst < tol;
    return r;
}

}  // namespace mirror_morse
