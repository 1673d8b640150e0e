#include "srbb/greenlab.hpp"

#include "srbb/errors.hpp"
#include "srbb/heat_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace srbb::greenlab {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

int GridSpec::half_points() const
{
    const double k = extent / h;
    const double rounded = std::round(k);
    if (extent <= 0.0 || h <= 0.0 || std::abs(k - rounded) > 1e-9 || rounded < 1.0)
        throw invalid_argument("GridSpec: extent must be a positive multiple of h");
    if (d < 1 || d > 3) throw invalid_argument("GridSpec: d must be 1, 2 or 3");
    return static_cast<int>(rounded);
}

int GridSpec::points_per_axis() const { return 2 * half_points() + 1; }

std::size_t GridSpec::total_points() const
{
    std::size_t t = 1;
    for (int i = 0; i < d; ++i) t *= static_cast<std::size_t>(points_per_axis());
    return t;
}

double GridFn::integral() const
{
    double s = 0.0;
    for (double v : values) s += v;
    return s * std::pow(spec.h, spec.d);
}

double GridFn::l1_norm() const
{
    double s = 0.0;
    for (double v : values) s += std::abs(v);
    return s * std::pow(spec.h, spec.d);
}

double GridFn::max_abs() const
{
    double s = 0.0;
    for (double v : values) s = std::max(s, std::abs(v));
    return s;
}

namespace {

// Iterates all grid multi-indices; idx runs over axes, coordinate = (i-K)*h.
template <typename Fn>
void for_each_point(const GridSpec& spec, Fn&& fn)
{
    const int n = spec.points_per_axis();
    const int K = spec.half_points();
    std::vector<int> idx(static_cast<std::size_t>(spec.d), 0);
    std::vector<double> x(static_cast<std::size_t>(spec.d), 0.0);
    const std::size_t total = spec.total_points();
    for (std::size_t flat = 0; flat < total; ++flat) {
        std::size_t rem = flat;
        for (int a = spec.d - 1; a >= 0; --a) {
            idx[static_cast<std::size_t>(a)] = static_cast<int>(rem % static_cast<std::size_t>(n));
            rem /= static_cast<std::size_t>(n);
        }
        for (int a = 0; a < spec.d; ++a)
            x[static_cast<std::size_t>(a)] = (idx[static_cast<std::size_t>(a)] - K) * spec.h;
        fn(flat, x);
    }
}

} // namespace

GridFn make_grid(const GridSpec& spec, const std::function<double(const std::vector<double>&)>& f)
{
    GridFn g{spec, std::vector<double>(spec.total_points(), 0.0)};
    for_each_point(spec, [&](std::size_t flat, const std::vector<double>& x) { g.values[flat] = f(x); });
    return g;
}

GridFn make_radial_grid(const GridSpec& spec, const std::function<double(double)>& f)
{
    return make_grid(spec, [&](const std::vector<double>& x) {
        double r2 = 0.0;
        for (double c : x) r2 += c * c;
        return f(std::sqrt(r2));
    });
}

GridFn heat_kernel_grid(const GridSpec& spec, double t)
{
    if (t <= 0.0) throw invalid_argument("heat_kernel_grid: t must be > 0");
    const int d = spec.d;
    return make_radial_grid(spec, [&](double r) { return heat_kernel(d, t, r * r); });
}

namespace {

void check_same_spec(const GridFn& a, const GridFn& b, const char* who)
{
    if (!(a.spec == b.spec) || a.values.size() != b.values.size())
        throw invalid_argument(std::string(who) + ": grid mismatch");
}

} // namespace

GridFn add(const GridFn& a, const GridFn& b)
{
    check_same_spec(a, b, "add");
    GridFn out = a;
    for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] += b.values[i];
    return out;
}

GridFn subtract(const GridFn& a, const GridFn& b)
{
    check_same_spec(a, b, "subtract");
    GridFn out = a;
    for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] -= b.values[i];
    return out;
}

GridFn scale(const GridFn& a, double c)
{
    GridFn out = a;
    for (double& v : out.values) v *= c;
    return out;
}

double banach_norm(const GridFn& f)
{
    const double hd = std::pow(f.spec.h, f.spec.d);
    double l1 = 0.0, linf = 0.0, weighted = 0.0;
    for_each_point(f.spec, [&](std::size_t flat, const std::vector<double>& x) {
        const double av = std::abs(f.values[flat]);
        l1 += av;
        linf = std::max(linf, av);
        double r2 = 0.0;
        for (double c : x) r2 += c * c;
        weighted = std::max(weighted, std::pow(std::sqrt(r2), f.spec.d) * av);
    });
    return std::max({l1 * hd, linf, weighted});
}

GridFn convolve(const GridFn& f, const GridFn& g)
{
    check_same_spec(f, g, "convolve");
    const GridSpec& spec = f.spec;
    const int n = spec.points_per_axis();
    const int K = spec.half_points();
    const double hd = std::pow(spec.h, spec.d);
    GridFn out{spec, std::vector<double>(spec.total_points(), 0.0)};

    if (spec.d == 1) {
        for (int a = 0; a < n; ++a) {
            double acc = 0.0;
            // g argument index a - b + K must stay inside [0, n)
            const int blo = std::max(0, a - K);
            const int bhi = std::min(n - 1, a + K);
            for (int b = blo; b <= bhi; ++b)
                acc += f.values[static_cast<std::size_t>(b)] * g.values[static_cast<std::size_t>(a - b + K)];
            out.values[static_cast<std::size_t>(a)] = acc * hd;
        }
        return out;
    }

    if (spec.d == 2) {
        auto at = [n](const GridFn& fn, int i, int j) {
            return fn.values[static_cast<std::size_t>(i) * n + static_cast<std::size_t>(j)];
        };
        for (int ai = 0; ai < n; ++ai)
            for (int aj = 0; aj < n; ++aj) {
                double acc = 0.0;
                for (int bi = std::max(0, ai - (n - 1 - K)); bi < n; ++bi) {
                    const int gi = ai - bi + K;
                    if (gi < 0 || gi >= n) continue;
                    for (int bj = 0; bj < n; ++bj) {
                        const int gj = aj - bj + K;
                        if (gj < 0 || gj >= n) continue;
                        acc += at(f, bi, bj) * at(g, gi, gj);
                    }
                }
                out.values[static_cast<std::size_t>(ai) * n + static_cast<std::size_t>(aj)] = acc * hd;
            }
        return out;
    }

    // d == 3: cubic cost, intended for small grids only.
    auto at3 = [n](const GridFn& fn, int i, int j, int k) {
        return fn.values[(static_cast<std::size_t>(i) * n + static_cast<std::size_t>(j)) * n +
                         static_cast<std::size_t>(k)];
    };
    for (int ai = 0; ai < n; ++ai)
        for (int aj = 0; aj < n; ++aj)
            for (int ak = 0; ak < n; ++ak) {
                double acc = 0.0;
                for (int bi = 0; bi < n; ++bi) {
                    const int gi = ai - bi + K;
                    if (gi < 0 || gi >= n) continue;
                    for (int bj = 0; bj < n; ++bj) {
                        const int gj = aj - bj + K;
                        if (gj < 0 || gj >= n) continue;
                        for (int bk = 0; bk < n; ++bk) {
                            const int gk = ak - bk + K;
                            if (gk < 0 || gk >= n) continue;
                            acc += at3(f, bi, bj, bk) * at3(g, gi, gj, gk);
                        }
                    }
                }
                out.values[(static_cast<std::size_t>(ai) * n + static_cast<std::size_t>(aj)) * n +
                           static_cast<std::size_t>(ak)] = acc * hd;
            }
    return out;
}

namespace {

// sum_{n > m} n^(-s) by Euler-Maclaurin at a = m+1; accurate to ~1e-15
// relative for a >= 32.
double zeta_tail(double s, double a)
{
    double t = std::pow(a, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(a, -s);
    // Bernoulli corrections B_2k/(2k)! * (s)(s+1)...(s+2k-2) * a^(1-s-2k)
    static const double bern[] = {1.0 / 12.0, -1.0 / 720.0, 1.0 / 30240.0, -1.0 / 1209600.0};
    double rising = s; // (s)(s+1)...(s+2k-2), updated per k
    double apow = std::pow(a, -s - 1.0);
    for (int k = 0; k < 4; ++k) {
        t += bern[k] * rising * apow;
        rising *= (s + 2.0 * k + 1.0) * (s + 2.0 * k + 2.0);
        apow /= a * a;
    }
    return t;
}

} // namespace

double green_asymptotic_constant(int d)
{
    if (d < 3) throw invalid_argument("green_asymptotic_constant: d >= 3 required");
    return std::tgamma(0.5 * d - 1.0) / (2.0 * std::pow(3.14159265358979323846, 0.5 * d));
}

double green_G(double r, int d, double tol)
{
    if (d <= 2) throw divergence_error("green_G: series diverges for d <= 2");
    if (tol <= 0.0) throw invalid_argument("green_G: tol must be > 0");
    if (r < 0.0) throw invalid_argument("green_G: radius must be >= 0");

    const double r2 = r * r;
    const auto n0 = static_cast<long>(std::max(64.0, std::ceil(r2)));

    // Direct part, Kahan-compensated.
    double sum = 0.0, comp = 0.0;
    for (long n = 1; n <= n0; ++n) {
        const double term = heat_kernel(d, static_cast<double>(n), r2) - comp;
        const double next = sum + term;
        comp = (next - sum) - term;
        sum = next;
    }

    // Tail: expand exp(-r^2/2n) in powers of r^2/2n against zeta tails.
    // Terms alternate and decrease (n0 >= r^2), so the first omitted term
    // bounds the remainder.
    const double a = static_cast<double>(n0) + 1.0;
    const double pref = std::pow(kTwoPi, -0.5 * d);
    double coeff = 1.0; // (-r^2/2)^j / j!
    double tail = 0.0;
    const double goal = 0.01 * std::min(tol, 1e-12);
    for (int j = 0;; ++j) {
        tail += coeff * zeta_tail(0.5 * d + j, a);
        const double next_coeff = std::abs(coeff) * (0.5 * r2) / (j + 1.0);
        if (next_coeff * zeta_tail(0.5 * d + j + 1.0, a) < goal / pref || j > 200) break;
        coeff *= -(0.5 * r2) / (j + 1.0);
    }
    return sum + pref * tail;
}

double g_mu_point(double r, double mu, int d, double tol)
{
    if (tol <= 0.0) throw invalid_argument("g_mu: tol must be > 0");
    if (mu < 0.0) throw invalid_argument("g_mu: mu must be >= 0");
    if (mu == 0.0) return 0.0;
    if (mu >= 1.0) {
        if (mu == 1.0 && d >= 3) return green_G(r, d, tol);
        throw divergence_error("g_mu: series diverges for mu >= 1 in d <= 2");
    }
    const double r2 = r * r;
    double sum = 0.0;
    double w = 1.0;
    for (long n = 1; n < 1000000; ++n) {
        w *= mu;
        sum += w * heat_kernel(d, static_cast<double>(n), r2);
        // remaining mass <= mu^(n+1)/(1-mu) * (2 pi (n+1))^(-d/2)
        const double bound = w * mu / (1.0 - mu) * std::pow(kTwoPi * (n + 1.0), -0.5 * d);
        if (bound < tol) return sum;
    }
    throw numeric_error("g_mu: tail bound not reached");
}

GridFn g_mu_grid(const GridSpec& spec, double mu, double tol)
{
    if (mu >= 1.0 && spec.d <= 2) throw divergence_error("g_mu: mu >= 1 diverges in d <= 2");
    return make_radial_grid(spec, [&](double r) { return g_mu_point(r, mu, spec.d, tol); });
}

DeconvolveResult neumann_deconvolve(const GridFn& g_pi, const GridFn& phi, double tol)
{
    check_same_spec(g_pi, phi, "neumann_deconvolve");
    if (tol <= 0.0) throw invalid_argument("neumann_deconvolve: tol must be > 0");

    DeconvolveResult out;
    out.mu = g_pi.integral();
    if (out.mu >= 1.0)
        throw numeric_error("neumann_deconvolve: supercritical input, mu = " +
                            std::to_string(out.mu));
    if (out.mu < 0.0)
        throw numeric_error("neumann_deconvolve: negative mass, mu = " + std::to_string(out.mu));

    const GridFn rho = subtract(scale(phi, out.mu), g_pi);
    const GridFn gmu = g_mu_grid(g_pi.spec, out.mu, std::min(tol, 1e-13));
    const GridFn kappa = add(convolve(rho, gmu), rho);

    out.kappa_norm = banach_norm(kappa);
    if (out.kappa_norm >= 1.0)
        throw numeric_error("neumann_deconvolve: contraction failed, |kappa| = " +
                            std::to_string(out.kappa_norm));

    GridFn term = scale(kappa, -1.0);
    GridFn q = term;
    double tn = banach_norm(term);
    const double t0 = tn;
    int grew = 0;
    out.terms = 1;
    for (int n = 2; n <= 500; ++n) {
        term = scale(convolve(kappa, term), -1.0);
        q = add(q, term);
        const double tn_next = banach_norm(term);
        const double ratio = tn > 0.0 ? std::min(tn_next / tn, 0.999) : 0.0;
        tn = tn_next;
        ++out.terms;
        grew = tn_next > t0 ? grew + 1 : 0;
        if (grew >= 3)
            throw numeric_error("neumann_deconvolve: series diverging, term norm " +
                                std::to_string(tn_next));
        out.tail_bound = tn * ratio / (1.0 - ratio);
        if (out.tail_bound < tol && tn < tol) break;
    }

    out.S = add(add(q, gmu), convolve(q, gmu));
    const GridFn resid = subtract(subtract(out.S, g_pi), convolve(g_pi, out.S));
    out.residual_l1 = resid.l1_norm();
    return out;
}

double radial_convolution(int d, const std::function<double(double)>& f,
                          const std::function<double(double)>& g, double r, double s_max,
                          int n_s, int n_theta)
{
    if (d < 1) throw invalid_argument("radial_convolution: d must be >= 1");
    if (n_s % 2 != 0 || n_theta % 2 != 0)
        throw invalid_argument("radial_convolution: Simpson needs even panel counts");

    auto simpson = [](int n, double a, double b, const std::function<double(double)>& fn) {
        const double h = (b - a) / n;
        double acc = fn(a) + fn(b);
        for (int i = 1; i < n; ++i) acc += fn(a + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
        return acc * h / 3.0;
    };

    if (d == 1) {
        return simpson(n_s, 0.0, s_max,
                       [&](double s) { return f(s) * (g(std::abs(r - s)) + g(r + s)); });
    }

    const double sphere = 2.0 * std::pow(3.14159265358979323846, 0.5 * (d - 1)) /
                          std::tgamma(0.5 * (d - 1));
    return sphere * simpson(n_s, 0.0, s_max, [&](double s) {
        const double radial = f(s) * std::pow(s, d - 1);
        if (radial == 0.0) return 0.0;
        const double angular = simpson(n_theta, 0.0, 3.14159265358979323846, [&](double th) {
            const double dist2 = s * s + r * r - 2.0 * s * r * std::cos(th);
            const double w = d > 2 ? std::pow(std::sin(th), d - 2) : 1.0;
            return w * g(std::sqrt(std::max(0.0, dist2)));
        });
        return radial * angular;
    });
}

namespace {

RadialCheck ratio_check(int d, const std::function<double(double)>& f,
                        const std::function<double(double)>& g,
                        const std::function<double(double)>& reference, double r_max, int n_r,
                        double s_max, int n_s, int n_theta)
{
    RadialCheck out;
    out.min_ratio = 1e300;
    out.max_ratio = -1e300;
    for (int i = 0; i <= n_r; ++i) {
        const double r = r_max * i / n_r;
        const double v = radial_convolution(d, f, g, r, s_max, n_s, n_theta);
        const double ratio = v / reference(r);
        out.radius.push_back(r);
        out.value.push_back(v);
        out.ratio.push_back(ratio);
        out.min_ratio = std::min(out.min_ratio, ratio);
        out.max_ratio = std::max(out.max_ratio, ratio);
    }
    return out;
}

} // namespace

RadialCheck gauss_power_ratio(int d, int m, double h, double r_max, int n_r)
{
    if (m < 0 || h <= 0.0) throw invalid_argument("gauss_power_ratio: need m >= 0, h > 0");
    auto f = [m](double s) { return std::pow(1.0 + s, -m); };
    auto g = [h](double u) { return std::exp(-h * u * u); };
    auto ref = [m](double r) { return std::pow(1.0 + r, -m); };
    const double s_max = r_max + std::max(20.0, 10.0 / std::sqrt(h));
    // the Gaussian ridge in theta narrows like 1/(r sqrt(h)); refine with r
    const int n_theta = 200 + 2 * (static_cast<int>(24.0 * r_max * std::sqrt(h)) / 2);
    return ratio_check(d, f, g, ref, r_max, n_r, s_max, 3000, n_theta);
}

RadialCheck fd_self_convolution(int d, double r_max, int n_r)
{
    const double expo = 6.0 - 3.0 * d; // F_d = f_d^3
    auto f = [expo](double s) { return std::pow(1.0 + s, expo); };
    auto ref = f;
    const double s_max = r_max + 120.0;
    return ratio_check(d, f, f, ref, r_max, n_r, s_max, 6000, 240);
}

double gaussian_mass_by_quadrature(int d, double h, double r)
{
    auto one = [](double) { return 1.0; };
    auto g = [h](double u) { return std::exp(-h * u * u); };
    const double s_max = r + std::max(20.0, 10.0 / std::sqrt(h));
    const int n_theta = 200 + 2 * (static_cast<int>(60.0 * r * std::sqrt(h)) / 2);
    return radial_convolution(d, one, g, r, s_max, 4000, n_theta);
}

FdCheckReport fd_convolution_checks(int d, int m, double h_gauss, double r_max, int n_r)
{
    FdCheckReport rep;
    const double want = std::pow(3.14159265358979323846 / h_gauss, 0.5 * d);
    double worst = 0.0;
    for (double r : {0.0, 0.5 * r_max, r_max})
        worst = std::max(worst,
                         std::abs(gaussian_mass_by_quadrature(d, h_gauss, r) - want) / want);
    rep.mass_relative_error = worst;
    rep.power_ratio = gauss_power_ratio(d, m, h_gauss, r_max, n_r);
    rep.fd_ratio = fd_self_convolution(d, std::min(r_max, 12.0), std::min(n_r, 8));
    rep.fitted_gamma = rep.fd_ratio.max_ratio;
    return rep;
}

double sup_ratio_vs_green(const GridFn& f, double tol)
{
    if (f.spec.d < 3) throw invalid_argument("sup_ratio_vs_green: needs d >= 3");
    double sup = 0.0;
    for_each_point(f.spec, [&](std::size_t flat, const std::vector<double>& x) {
        double r2 = 0.0;
        for (double c : x) r2 += c * c;
        sup = std::max(sup, f.values[flat] / green_G(std::sqrt(r2), f.spec.d, tol));
    });
    return sup;
}

} // namespace srbb::greenlab
