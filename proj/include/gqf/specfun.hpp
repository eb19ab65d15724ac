// SPDX-License-Identifier: Apache-2.0
#pragma once

// Modified Bessel functions of the first kind and the first-order Marcum Q
// function, to the accuracy the probability formulas need (absolute 1e-12 by
// default). Self-contained on purpose: the test suite pins these against
// independently computed references, and the closed-form probability must not
// silently change behavior with a third-party library version bump.

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "gqf/errors.hpp"

namespace gqf {

struct Accuracy {
    double abs_tol = 1e-12;
    std::int64_t max_terms = 2'000'000;
};

// exp(-x) I_k(x) for k = 0..n_max, x >= 0, by the downward (Miller) recurrence
//   I_{k-1}(x) = I_{k+1}(x) + (2k/x) I_k(x)
// started above the decay turning point with an arbitrary seed and normalized
// with I_0(x) + 2 sum_{k>=1} I_k(x) = e^x. The scaled values never overflow
// and feed directly into forms like exp(-(a-b)^2/2) * Itilde_k(ab).
inline std::vector<double> bessel_i_scaled_sequence(int n_max, double x,
                                                    const Accuracy& acc = {}) {
    if (n_max < 0) throw ValidationError("bessel_i_scaled_sequence: n_max < 0");
    if (!(x >= 0.0)) throw ValidationError("bessel_i_scaled_sequence: x must be >= 0");

    std::vector<double> vals(static_cast<std::size_t>(n_max) + 1, 0.0);
    if (x == 0.0) {
        vals[0] = 1.0;
        return vals;
    }

    // Start where exp(-x) I_m(x) is far below the seed's relative error
    // target: past max(n_max, x) by a margin that scales like sqrt(x).
    const double turn = std::max(static_cast<double>(n_max), x);
    const std::int64_t m =
        static_cast<std::int64_t>(turn + 15.0 * std::sqrt(turn)) + 40;
    if (m > acc.max_terms)
        throw ConvergenceError("bessel_i_scaled_sequence: start index " +
                               std::to_string(m) + " exceeds term budget");

    double t_up = 0.0;      // trial value at index k+1
    double t_cur = 1e-300;  // trial value at index k, k = m at entry
    double tail = t_cur;    // sum of trial values for indices >= 1
    double t_zero = 0.0;    // trial value at index 0, set on the last step
    for (std::int64_t k = m; k >= 1; --k) {
        const double t_down = t_up + (2.0 * static_cast<double>(k) / x) * t_cur;
        t_up = t_cur;
        t_cur = t_down;
        const std::int64_t idx = k - 1;
        if (idx <= n_max) vals[static_cast<std::size_t>(idx)] = t_down;
        if (idx >= 1)
            tail += t_down;
        else
            t_zero = t_down;
        if (t_cur > 1e250) {
            // Renormalize before the trial solution overflows.
            constexpr double shrink = 1e-250;
            t_up *= shrink;
            t_cur *= shrink;
            tail *= shrink;
            t_zero *= shrink;
            for (double& v : vals) v *= shrink;
        }
    }
    // Index 0 gets weight 1, every higher index weight 2.
    const double norm = t_zero + 2.0 * tail;
    for (double& v : vals) v /= norm;
    return vals;
}

// I_n(x), n >= 0, x >= 0, by the ascending power series
//   I_n(x) = sum_{k>=0} (x/2)^{n+2k} / (k! (n+k)!),
// each term obtained from the previous by one multiply. Overflows of the true
// value raise; the series itself is stable (all terms positive).
inline double bessel_i(int n, double x, const Accuracy& acc = {}) {
    if (n < 0) throw ValidationError("bessel_i: order must be >= 0");
    if (!(x >= 0.0)) throw ValidationError("bessel_i: x must be >= 0");
    if (x == 0.0) return n == 0 ? 1.0 : 0.0;

    double term = 1.0; // (x/2)^n / n!
    for (int i = 1; i <= n; ++i) term *= 0.5 * x / static_cast<double>(i);
    const double q = 0.25 * x * x;
    double sum = term;
    for (std::int64_t k = 1; k <= acc.max_terms; ++k) {
        term *= q / (static_cast<double>(k) * static_cast<double>(k + n));
        sum += term;
        if (std::isinf(sum))
            throw OverflowError("bessel_i: I_" + std::to_string(n) + "(" +
                                std::to_string(x) + ") overflows double range");
        if (term <= sum * 1e-17) return sum;
    }
    throw ConvergenceError("bessel_i: series did not converge within term budget");
}

// Unscaled sequence I_0..I_n_max at one x. Overflows (x beyond ~709) raise.
inline std::vector<double> bessel_i_sequence(int n_max, double x,
                                             const Accuracy& acc = {}) {
    std::vector<double> vals = bessel_i_scaled_sequence(n_max, x, acc);
    const double ex = std::exp(x);
    if (std::isinf(ex))
        throw OverflowError("bessel_i_sequence: exp(" + std::to_string(x) +
                            ") overflows double range");
    for (double& v : vals) v *= ex;
    return vals;
}

// First-order Marcum Q function
//   Q1(a, b) = integral_b^inf t exp(-(t^2 + a^2)/2) I_0(a t) dt,
// via the Bessel series in the smaller of the two tail directions:
//   b >= a:  Q1 = exp(-(a-b)^2/2) sum_{k>=0} (a/b)^k Itilde_k(ab)
//   b <  a:  Q1 = 1 - exp(-(a-b)^2/2) sum_{k>=1} (b/a)^k Itilde_k(ab)
// with Itilde_k = exp(-ab) I_k(ab). Choosing the branch keeps the summed part
// below 1/2-ish, so the subtraction in the second branch never cancels badly.
inline double marcum_q1(double a, double b, const Accuracy& acc = {}) {
    if (!(a >= 0.0) || !(b >= 0.0))
        throw ValidationError("marcum_q1: arguments must be >= 0");
    if (b == 0.0) return 1.0;
    if (a == 0.0) return std::exp(-0.5 * b * b);

    const double x = a * b;
    // Scaled I_k(x) is negligible beyond x + O(sqrt(x)); the sequence budget
    // already covers it, so cap the sum there.
    const int k_max =
        static_cast<int>(x + 15.0 * std::sqrt(x)) + 40;
    const std::vector<double> it = bessel_i_scaled_sequence(k_max, x, acc);
    const double front = std::exp(-0.5 * (a - b) * (a - b));

    double val;
    if (b >= a) {
        const double q = a / b;
        double pw = 1.0;
        double sum = it[0];
        for (int k = 1; k <= k_max; ++k) {
            pw *= q;
            const double term = pw * it[static_cast<std::size_t>(k)];
            sum += term;
            if (term <= 1e-4 * acc.abs_tol && k > 8) break;
        }
        val = front * sum;
    } else {
        const double q = b / a;
        double pw = 1.0;
        double sum = 0.0;
        for (int k = 1; k <= k_max; ++k) {
            pw *= q;
            const double term = pw * it[static_cast<std::size_t>(k)];
            sum += term;
            if (term <= 1e-4 * acc.abs_tol && k > 8) break;
        }
        val = 1.0 - front * sum;
    }
    // Rounding guard only; the value is a probability by construction.
    if (val < 0.0) val = 0.0;
    if (val > 1.0) val = 1.0;
    return val;
}

} // namespace gqf
