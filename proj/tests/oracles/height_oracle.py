#!/usr/bin/env python3
"""Standalone doubling-limit oracle for canonical heights.

Computes 4^-N log max(|u|, v) for x(2^N P) = u/v by exact rational doubling
on y^2 = x^3 + A x + B. Shares no code with the C++ library.

usage: height_oracle.py A B x y N [expected tol]
"""
import math
import sys

import gmpy2
from gmpy2 import mpq


def double_x(x, a, b):
    # x(2P) = (x^4 - 2 a x^2 - 8 b x + a^2) / (4 (x^3 + a x + b))
    x2 = x * x
    return (x2 * x2 - 2 * a * x2 - 8 * b * x + a * a) / (4 * (x2 * x + a * x + b))


def log_mpz(n):
    n = abs(n)
    bits = int(gmpy2.bit_length(n))
    shift = max(bits - 60, 0)
    return math.log(int(n >> shift)) + shift * math.log(2)


def doubling_limit(a, b, x, n):
    for _ in range(n):
        x = double_x(x, a, b)
    h = max(log_mpz(x.numerator), log_mpz(x.denominator))
    return h / 4**n


def main(argv):
    a, b, x, y = (mpq(v) for v in argv[1:5])
    n = int(argv[5])
    if y * y != x**3 + a * x + b:
        print("point is not on the curve", file=sys.stderr)
        return 2
    value = doubling_limit(a, b, x, n)
    print(f"{value:.10f}")
    if len(argv) > 7:
        expected, tol = float(argv[6]), float(argv[7])
        if abs(value - expected) > tol:
            print(f"mismatch: {value} vs {expected}", file=sys.stderr)
            return 1
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv))
