// SPDX-License-Identifier: Apache-2.0
//
// dasrate: downlink rate analysis for co-located and distributed antenna layouts
// Copyright (C) 2026 The dasrate authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "dasrate/special.hpp"
#include "dasrate/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <string>

namespace dasrate
{

namespace
{
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = 1e-300;
constexpr int kMaxIterations = 100000;

// Series sum for the lower incomplete gamma: gamma(s, x) = e^-x x^s * sum. Returns log(sum).
double log_gamma_series(double s, double x)
{
    double ap = s;
    double del = 1.0 / s;
    double sum = del;
    for (int n = 0; n < kMaxIterations; ++n)
    {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::abs(del) < std::abs(sum) * kEps)
            return std::log(sum);
    }
    throw AccuracyError("incomplete gamma series did not converge", sum, std::abs(del));
}

// Continued fraction for the upper incomplete gamma: Gamma(s, x) = e^-x x^s * cf (modified Lentz).
double log_gamma_fraction(double s, double x)
{
    double b = x + 1.0 - s;
    double c = 1.0 / kTiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < kMaxIterations; ++i)
    {
        const double an = -i * (i - s);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < kTiny)
            d = kTiny;
        c = b + an / c;
        if (std::abs(c) < kTiny)
            c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < kEps)
            return std::log(h);
    }
    throw AccuracyError("incomplete gamma continued fraction did not converge", h, 0.0);
}

void check_gamma_args(double s, double x)
{
    if (!(s > 0.0))
        throw DomainError("incomplete gamma: shape s must be positive, got " + std::to_string(s));
    if (!(x >= 0.0))
        throw DomainError("incomplete gamma: x must be nonnegative, got " + std::to_string(x));
}

// QUADPACK qk15 abscissae and weights
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment
{
    double a, b, value, error;
    bool operator<(const Segment &o) const { return error < o.error; }
};

Segment gauss_kronrod15(const std::function<double(double)> &f, double a, double b)
{
    const double centre = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double abs_half = std::abs(half);

    auto eval = [&](double x) {
        const double v = f(x);
        if (!std::isfinite(v))
            throw DomainError("integrand is not finite at x = " + std::to_string(x));
        return v;
    };

    const double fc = eval(centre);
    double resg = fc * kWg[3];
    double resk = fc * kWgk[7];
    double resabs = std::abs(resk);
    std::array<double, 7> fv1{}, fv2{};

    for (int j = 0; j < 3; ++j)
    {
        const int jtw = 2 * j + 1;
        const double dx = half * kXgk[jtw];
        const double f1 = eval(centre - dx);
        const double f2 = eval(centre + dx);
        fv1[jtw] = f1;
        fv2[jtw] = f2;
        resg += kWg[j] * (f1 + f2);
        resk += kWgk[jtw] * (f1 + f2);
        resabs += kWgk[jtw] * (std::abs(f1) + std::abs(f2));
    }
    for (int j = 0; j < 4; ++j)
    {
        const int jtwm1 = 2 * j;
        const double dx = half * kXgk[jtwm1];
        const double f1 = eval(centre - dx);
        const double f2 = eval(centre + dx);
        fv1[jtwm1] = f1;
        fv2[jtwm1] = f2;
        resk += kWgk[jtwm1] * (f1 + f2);
        resabs += kWgk[jtwm1] * (std::abs(f1) + std::abs(f2));
    }

    const double reskh = resk * 0.5;
    double resasc = kWgk[7] * std::abs(fc - reskh);
    for (int j = 0; j < 7; ++j)
        resasc += kWgk[j] * (std::abs(fv1[j] - reskh) + std::abs(fv2[j] - reskh));

    const double result = resk * half;
    resabs *= abs_half;
    resasc *= abs_half;
    double err = std::abs((resk - resg) * half);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    if (resabs > std::numeric_limits<double>::min() / (50.0 * kEps))
        err = std::max(50.0 * kEps * resabs, err);
    return {a, b, result, err};
}

} // namespace

void QuadratureSpec::validate() const
{
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0))
        throw std::invalid_argument("QuadratureSpec: tolerances must be positive");
    if (max_subdivisions < 1)
        throw std::invalid_argument("QuadratureSpec: max_subdivisions must be at least 1");
    if (fixed_nodes < 1)
        throw std::invalid_argument("QuadratureSpec: fixed_nodes must be at least 1");
}

double exp_e1(double x)
{
    if (!(x > 0.0))
        throw DomainError("exp_e1: argument must be positive, got " + std::to_string(x));

    if (x > 1e8)
    {
        // Asymptotic series; the next term is below 1e-40 relative
        const double r = 1.0 / x;
        return r * (1.0 - r * (1.0 - 2.0 * r * (1.0 - 3.0 * r)));
    }
    if (x < 1.0)
    {
        // E1(x) = -euler_gamma - ln x - sum_{n>=1} (-x)^n / (n n!)
        double term = 1.0;
        double sum = 0.0;
        for (int n = 1; n < 200; ++n)
        {
            term *= -x / n;
            const double add = term / n;
            sum += add;
            if (std::abs(add) < std::abs(sum) * kEps * 0.5)
                break;
        }
        const double e1 = -std::numbers::egamma - std::log(x) - sum;
        return std::exp(x) * e1;
    }

    // e^x E1(x) = 1 / (x + 1 - 1 / (x + 3 - 4 / (x + 5 - ...)))
    double b = x + 1.0;
    double c = 1.0 / kTiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < kMaxIterations; ++i)
    {
        const double an = -static_cast<double>(i) * i;
        b += 2.0;
        d = 1.0 / (an * d + b);
        c = b + an / c;
        const double del = c * d;
        h *= del;
        if (std::abs(del - 1.0) < kEps)
            return h;
    }
    throw AccuracyError("exp_e1: continued fraction did not converge", h, 0.0);
}

double log_upper_incomplete_gamma(double s, double x)
{
    check_gamma_args(s, x);
    if (x == 0.0)
        return std::lgamma(s);
    if (x < s + 1.0)
    {
        // Gamma(s, x) = Gamma(s) (1 - P)
        const double log_lower = -x + s * std::log(x) + log_gamma_series(s, x);
        const double p = std::exp(log_lower - std::lgamma(s));
        return std::lgamma(s) + std::log1p(-std::min(p, 1.0));
    }
    return -x + s * std::log(x) + log_gamma_fraction(s, x);
}

double upper_incomplete_gamma(double s, double x)
{
    return std::exp(log_upper_incomplete_gamma(s, x));
}

double lower_incomplete_gamma(double s, double x)
{
    check_gamma_args(s, x);
    if (x == 0.0)
        return 0.0;
    if (x < s + 1.0)
        return std::exp(-x + s * std::log(x) + log_gamma_series(s, x));
    const double q = std::exp(-x + s * std::log(x) + log_gamma_fraction(s, x) - std::lgamma(s));
    return std::exp(std::lgamma(s)) * (1.0 - q);
}

QuadratureResult integrate_adaptive(const std::function<double(double)> &f, double a, double b,
                                    const QuadratureSpec &spec)
{
    spec.validate();
    if (std::isnan(a) || std::isnan(b) || std::isinf(a))
        throw DomainError("integrate_adaptive: lower bound must be finite");
    if (a == b)
        return {};
    if (b < a)
    {
        QuadratureResult r = integrate_adaptive(f, b, a, spec);
        r.value = -r.value;
        return r;
    }

    std::size_t evaluations = 0;
    std::function<double(double)> g;
    double lo = a, hi = b;
    if (std::isinf(b))
    {
        g = [&](double t) {
            ++evaluations;
            const double one_minus = 1.0 - t;
            return f(a + t / one_minus) / (one_minus * one_minus);
        };
        lo = 0.0;
        hi = 1.0;
    }
    else
    {
        g = [&](double x) {
            ++evaluations;
            return f(x);
        };
    }

    // A semi-infinite range starts out split at x - a = 2^j, j = -10..40, so that a narrow peak far
    // from a is sampled by at least one segment of comparable width
    std::vector<double> edges = {lo};
    if (std::isinf(b))
        for (int j = -10; j <= 40; ++j)
        {
            const double s = std::ldexp(1.0, j);
            edges.push_back(s / (1.0 + s));
        }
    edges.push_back(hi);

    std::priority_queue<Segment> heap;
    double total = 0.0;
    double total_error = 0.0;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i)
    {
        const Segment seg = gauss_kronrod15(g, edges[i], edges[i + 1]);
        total += seg.value;
        total_error += seg.error;
        heap.push(seg);
    }

    auto converged = [&] { return total_error <= std::max(spec.abs_tol, spec.rel_tol * std::abs(total)); };

    while (!converged())
    {
        if (heap.size() >= spec.max_subdivisions)
            throw AccuracyError("integrate_adaptive: tolerance not reached within " +
                                    std::to_string(spec.max_subdivisions) + " subdivisions",
                                total, total_error);

        Segment worst = heap.top();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b) ||
            (worst.b - worst.a) < 100.0 * kEps * std::max(std::abs(worst.a), std::abs(worst.b)))
            throw AccuracyError("integrate_adaptive: roundoff limit reached", total, total_error);

        heap.pop();
        const Segment left = gauss_kronrod15(g, worst.a, mid);
        const Segment right = gauss_kronrod15(g, mid, worst.b);
        total += left.value + right.value - worst.value;
        total_error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);

        // Re-sum occasionally; the running update drifts when many segments are replaced
        if (heap.size() % 64 == 0)
        {
            auto copy = heap;
            total = 0.0;
            total_error = 0.0;
            while (!copy.empty())
            {
                total += copy.top().value;
                total_error += copy.top().error;
                copy.pop();
            }
        }
    }

    return {total, total_error, evaluations, heap.size()};
}

QuadratureResult expect_gamma(double shape, double scale, const std::function<double(double)> &g,
                              const QuadratureSpec &spec)
{
    if (!(shape > 0.0) || !(scale > 0.0))
        throw DomainError("expect_gamma: shape and scale must be positive");
    const double log_norm = std::lgamma(shape) + shape * std::log(scale);
    auto integrand = [&](double x) {
        if (x <= 0.0)
            return 0.0;
        const double log_density = (shape - 1.0) * std::log(x) - x / scale - log_norm;
        return std::exp(log_density) * g(x);
    };

    const double mean = shape * scale;
    const double sd = std::sqrt(shape) * scale;
    const double lo = std::max(0.0, mean - 12.0 * sd);
    const double hi = mean + 12.0 * sd;

    QuadratureResult total;
    auto add = [&](double a, double b) {
        const QuadratureResult r = integrate_adaptive(integrand, a, b, spec);
        total.value += r.value;
        total.error += r.error;
        total.evaluations += r.evaluations;
        total.subdivisions += r.subdivisions;
    };
    if (lo > 0.0)
        add(0.0, lo);
    add(lo, hi);
    add(hi, std::numeric_limits<double>::infinity());
    return total;
}

GaussRule gauss_legendre(std::size_t n)
{
    if (n == 0)
        throw std::invalid_argument("gauss_legendre: n must be positive");
    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const std::size_t m = (n + 1) / 2;
    for (std::size_t i = 0; i < m; ++i)
    {
        double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter)
        {
            double p1 = 1.0, p2 = 0.0;
            for (std::size_t j = 0; j < n; ++j)
            {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
            }
            dp = n * (z * p1 - p2) / (z * z - 1.0);
            const double z_prev = z;
            z = z_prev - p1 / dp;
            if (std::abs(z - z_prev) < 1e-15)
                break;
        }
        // recompute derivative at the converged root
        double p1 = 1.0, p2 = 0.0;
        for (std::size_t j = 0; j < n; ++j)
        {
            const double p3 = p2;
            p2 = p1;
            p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
        }
        dp = n * (z * p1 - p2) / (z * z - 1.0);
        const double w = 2.0 / ((1.0 - z * z) * dp * dp);
        rule.nodes[i] = -z;
        rule.nodes[n - 1 - i] = z;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    return rule;
}

double integrate_fixed(const std::function<double(double)> &f, double a, double b, const GaussRule &rule)
{
    const double centre = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        sum += rule.weights[i] * f(centre + half * rule.nodes[i]);
    return sum * half;
}

} // namespace dasrate
