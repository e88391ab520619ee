#pragma once

#include "flk/generic_scalar.hpp"

namespace flk {

/// [a] in the variable q^d:  (q^{ad} - q^{-ad}) / (q^d - q^{-d}).
inline GenericScalar quantum_integer(long a, long d = 1) {
    if (a == 0) return GenericScalar(0);
    Laurent num = Laurent::monomial(a * d) - Laurent::monomial(-a * d);
    Laurent den = Laurent::monomial(d) - Laurent::monomial(-d);
    return GenericScalar(num, den);
}

/// [n]! in the variable q^d.
inline GenericScalar quantum_factorial(long n, long d = 1) {
    if (n < 0) throw BadParameters("quantum_factorial: n < 0");
    GenericScalar r(1);
    for (long a = 2; a <= n; ++a) r *= quantum_integer(a, d);
    return r;
}

/// Exact division of Laurent polynomials (shift-normalize, divide, shift back).
inline Laurent laurent_divide_exact(const Laurent& num, const Laurent& den) {
    if (den.is_zero()) throw Error("laurent_divide_exact: division by zero");
    if (num.is_zero()) return Laurent::zero();
    long shift = num.min_deg() - den.min_deg();
    return Laurent::divide_exact(num.shifted(-num.min_deg()), den.shifted(-den.min_deg()))
        .shifted(shift);
}

/// Gaussian binomial [n choose k] in the variable q^d.  Computed by the
/// multiplicative recurrence with stepwise exact division so coefficients stay
/// small integers; a failed division signals an arithmetic bug upstream.
inline GenericScalar quantum_binomial(long n, long k, long d = 1) {
    if (k < 0 || n < 0) throw BadParameters("quantum_binomial: negative argument");
    if (k > n) throw BadParameters("quantum_binomial: k > n");
    Laurent b = Laurent::one();
    for (long i = 1; i <= k; ++i) {
        // b_i = b_{i-1} * [n-k+i] / [i]; every partial product is the Gaussian
        // binomial [n-k+i choose i], a Laurent polynomial, so division is exact.
        b = b * quantum_integer(n - k + i, d).num();
        try {
            b = laurent_divide_exact(b, quantum_integer(i, d).num());
        } catch (const Error&) {
            throw NonIntegral("quantum_binomial(" + std::to_string(n) + "," +
                              std::to_string(k) + ") not a Laurent polynomial");
        }
    }
    return GenericScalar(b);
}

/// Gaussian binomial [n choose k] for arbitrary integer n (k >= 0): the
/// product prod_{i=1..k} [n-k+i]/[i], always a Laurent polynomial.
inline GenericScalar quantum_binomial_z(long n, long k, long d = 1) {
    if (k < 0) throw BadParameters("quantum_binomial_z: k < 0");
    if (n >= 0 && k <= n) return quantum_binomial(n, k, d);
    GenericScalar b(1);
    for (long i = 1; i <= k; ++i) b = b * quantum_integer(n - k + i, d) / quantum_integer(i, d);
    return b;
}

}  // namespace flk
