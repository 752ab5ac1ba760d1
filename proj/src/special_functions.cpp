// SPDX-License-Identifier: Apache-2.0
#include "bbkit/special_functions.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace bbkit::specfun {

double gamma_int(int n) {
    if (n < 1) throw std::domain_error("gamma_int: argument must be a positive integer");
    double f = 1.0;
    for (int k = 2; k < n; ++k) f *= k;
    return f;
}

namespace {

// B_{2j}/(2j)! for j = 1..8
constexpr double kBernoulliOverFact[8] = {
    1.0 / 12.0,                     // B2/2!
    -1.0 / 720.0,                   // B4/4!
    1.0 / 30240.0,                  // B6/6!
    -1.0 / 1209600.0,               // B8/8!
    1.0 / 47900160.0,               // B10/10!
    -691.0 / 1307674368000.0,       // B12/12!
    1.0 / 74724249600.0,            // B14/14!
    -3617.0 / 10670622842880000.0,  // B16/16!
};

}  // namespace

double riemann_zeta(double s) {
    if (!(s >= 2.0)) throw std::domain_error("riemann_zeta: requires s >= 2");

    constexpr int kBase = 20;
    double sum = 0.0;
    for (int n = kBase - 1; n >= 1; --n) sum += std::pow(n, -s);

    const double ns = std::pow(kBase, -s);
    sum += kBase * ns / (s - 1.0);  // integral tail N^(1-s)/(s-1)
    sum += 0.5 * ns;

    // Euler-Maclaurin corrections: B_{2j}/(2j)! * s(s+1)...(s+2j-2) * N^(-s-2j+1)
    double rising = s;
    double npow = ns / kBase;  // N^(-s-1)
    for (int j = 1; j <= 8; ++j) {
        if (j > 1) {
            rising *= (s + 2 * j - 3) * (s + 2 * j - 2);
            npow /= double(kBase) * double(kBase);
        }
        sum += kBernoulliOverFact[j - 1] * rising * npow;
    }
    return sum;
}

namespace detail {

namespace {

double simpson(double a, double fa, double fm, double b, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_step(const std::function<double(double)>& f, double a, double fa, double b,
                     double fb, double m, double fm, double whole, double tol, int depth) {
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = simpson(a, fa, flm, m, fm);
    const double right = simpson(m, fm, frm, b, fb);
    const double refined = left + right;
    const double err = (refined - whole) / 15.0;
    if (depth <= 0 || std::fabs(err) <= tol) return refined + err;
    return adaptive_step(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
           adaptive_step(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double abs_tol, int max_depth) {
    const double fa = f(a);
    const double fb = f(b);
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    const double whole = simpson(a, fa, fm, b, fb);
    return adaptive_step(f, a, fa, b, fb, m, fm, whole, abs_tol, max_depth);
}

double upper_incomplete_gamma(double s, double a) {
    if (!(a >= 10.0)) throw std::domain_error("upper_incomplete_gamma: requires a >= 10");
    double term = 1.0;
    double sum = 1.0;
    for (int j = 1; j <= 40; ++j) {
        term *= (s - j) / a;
        if (std::fabs(term) < 1e-17 * std::fabs(sum)) break;
        sum += term;
    }
    return std::exp(-a + (s - 1.0) * std::log(a)) * sum;
}

}  // namespace detail

namespace {

bool is_integral(double s) { return s == std::floor(s); }

// Bernoulli expansion coefficients of x/(e^x - 1) = sum b_k x^k; only k = 0, 1
// and even k survive.
double head_series(double s, double a) {
    // integral_0^a x^(s-2) * (1 - x/2 + x^2/12 - x^4/720 + x^6/30240
    //                           - x^8/1209600 + x^10/47900160) dx
    const double c[] = {1.0,           -0.5,           1.0 / 12.0,     -1.0 / 720.0,
                        1.0 / 30240.0, -1.0 / 1209600.0, 1.0 / 47900160.0};
    const int pw[] = {0, 1, 2, 4, 6, 8, 10};
    double sum = 0.0;
    for (int i = 0; i < 7; ++i) {
        const double p = s - 1.0 + pw[i];
        sum += c[i] * std::pow(a, p) / p;
    }
    return sum;
}

}  // namespace

double bose_einstein_integral(double s, IntegralMethod method, double x_max) {
    if (!(s >= 2.0)) throw std::domain_error("bose_einstein_integral: requires s >= 2");

    if (method == IntegralMethod::closed_form) {
        if (!is_integral(s))
            throw std::invalid_argument(
                "bose_einstein_integral: closed_form supports integer orders only");
        return gamma_int(int(s)) * riemann_zeta(s);
    }

    if (!(x_max >= 10.0))
        throw std::domain_error("bose_einstein_integral: quadrature requires x_max >= 10");

    const double x_lo = 0.5;
    const auto integrand = [s](double x) { return std::pow(x, s - 1.0) / std::expm1(x); };

    const double head = head_series(s, x_lo);
    const double body =
        detail::adaptive_simpson(integrand, x_lo, x_max, 1e-13 * (head + 1.0), 40);
    const double tail = detail::upper_incomplete_gamma(s, x_max);
    return head + body + tail;
}

BoseEinsteinIntegral evaluate_bose_einstein(double s, IntegralMethod method, double x_max) {
    return BoseEinsteinIntegral{s, bose_einstein_integral(s, method, x_max), method};
}

double bose_einstein_partial(double s, double x_cut) {
    if (!(s >= 2.0)) throw std::domain_error("bose_einstein_partial: requires s >= 2");
    if (!(x_cut > 0.0)) throw std::domain_error("bose_einstein_partial: requires x_cut > 0");
    const auto integrand = [s](double x) { return std::pow(x, s - 1.0) / std::expm1(x); };
    const double x_lo = std::min(0.5, 0.5 * x_cut);
    const double head = head_series(s, x_lo);
    if (x_cut <= x_lo) return head_series(s, x_cut);
    const double body =
        detail::adaptive_simpson(integrand, x_lo, x_cut, 1e-13 * (head + 1.0), 40);
    return head + body;
}

}  // namespace bbkit::specfun
