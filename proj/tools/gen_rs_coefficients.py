#!/usr/bin/env python3
"""Generate the Riemann-Siegel correction table used by src/zeta/rs_coefficients.inc.

The Hardy function is written as

    Z(t) = 2 sum_{n<=N} n^{-1/2} cos(theta(t) - t log n)
           + (-1)^{N-1} a^{-1/2} sum_k C_k(p) a^{-k},

with a = sqrt(t / 2 pi), N = floor(a), p = a - N.  The C_k are obtained from
the complex form of the remainder used by Arias de Reyna (Math. Comp. 80,
2011) as implemented in mpmath.functions.rszeta:

    R(s) ~ sum_k a^{-k} sum_l d[k,l] F^{(3k-2l)}(1 - 2p) / (pi^{2k-l} (2i)^l),
    F(z) = (exp(pi i (z^2/2 + 3/8)) - i sqrt(2) cos(pi z / 2)) / (2 cos(pi z)),

combined with the Stirling tail theta(t) - (t/2 log(t/2pi) - t/2 - pi/8),
expanded in powers of 1/a.  Each C_k is emitted as a Taylor series in
w = p - 1/2 (only the powers matching the parity of k are nonzero).  The first four agree with Gabcke's closed forms
C_0 = Psi, C_1 = -Psi'''/(96 pi^2), ... (checked below).

Usage: gen_rs_coefficients.py > src/zeta/rs_coefficients.inc
"""
import sys

import mpmath as mp
from mpmath.functions import rszeta

mp.mp.dps = 60
ORDERS = 12
TAYLOR = 60
CUTOFF = mp.mpf(10) ** -19


def taylor_of_f():
    c, _ = rszeta.coef(mp.mp, TAYLOR, mp.mpf(10) ** -60)
    return [c.get(n, 0) for n in range(2 * TAYLOR)]


def d_table():
    d = {(0, 0): mp.mpf(1)}

    def get(n, k):
        return d.get((n, k), 0)

    for n in range(1, ORDERS + 1):
        for k in range(0, 3 * n // 2 + 1):
            m = 3 * n - 2 * k
            if m != 0:
                d[(n, k)] = -(m + 1) * get(n - 1, k - 2) + get(n - 1, k) / (4 * m)
            else:
                v = mp.mpf(0)
                for r in range(0, k):
                    v -= (-1) ** (k - r) * get(n, r) * mp.factorial(2 * k - 2 * r) / mp.factorial(k - r)
                d[(n, k)] = v
    return get


def main():
    cf = taylor_of_f()
    d = d_table()
    nw = 2 * TAYLOR - 40
    pi = mp.pi

    def fm_series(m):
        out = [mp.mpc(0)] * nw
        for n in range(m, 2 * TAYLOR):
            j = n - m
            if j < nw:
                out[j] += cf[n] * mp.factorial(n) / mp.factorial(n - m) * (-2) ** j
        return out

    rem = []
    for k in range(ORDERS + 1):
        s = [mp.mpc(0)] * nw
        for l in range(0, 3 * k // 2 + 1):
            f = fm_series(3 * k - 2 * l)
            fac = d(k, l) / pi ** (2 * k - l) / (2j) ** l
            for i in range(nw):
                s[i] += fac * f[i]
        rem.append(s)

    # theta tail: 1/(48t) + 7/(5760t^3) + 31/(80640t^5) + 127/(430080t^7) + 511/(1216512t^9)
    tail = [mp.mpf(1) / 48, mp.mpf(7) / 5760, mp.mpf(31) / 80640,
            mp.mpf(127) / 430080, mp.mpf(511) / 1216512]
    phi = [mp.mpc(0)] * (ORDERS + 1)
    for j, v in enumerate(tail):
        if 4 * j + 2 <= ORDERS:
            phi[4 * j + 2] = v / (2 * pi) ** (2 * j + 1)
    ephi = [mp.mpc(0)] * (ORDERS + 1)
    ephi[0] = mp.mpc(1)
    for n in range(1, ORDERS + 1):
        ephi[n] = sum(k * phi[k] * ephi[n - k] for k in range(1, n + 1)) * 1j / n

    table = []
    for k in range(ORDERS + 1):
        s = [mp.mpf(0)] * nw
        for j in range(0, k + 1):
            if ephi[j] == 0:
                continue
            for i in range(nw):
                s[i] += 2 * mp.re(ephi[j] * rem[k - j][i])
        last = max(i for i in range(nw) if abs(s[i]) * mp.mpf(0.5) ** i > CUTOFF)
        table.append(s[: last + 1])

    def psi(p):
        return mp.cos(2 * pi * (p * p - p - mp.mpf(1) / 16)) / mp.cos(2 * pi * p)

    for p in (mp.mpf("0.13"), mp.mpf("0.71")):
        w = p - mp.mpf(1) / 2
        got = [sum(c * w ** i for i, c in enumerate(table[k])) for k in range(3)]
        ref = [psi(p), -mp.diff(psi, p, 3) / (96 * pi ** 2),
               mp.diff(psi, p, 2) / (64 * pi ** 2) + mp.diff(psi, p, 6) / (18432 * pi ** 4)]
        for g, r in zip(got, ref):
            if abs(g - r) > mp.mpf(10) ** -25:
                sys.exit("closed-form check failed")

    # C_k has the parity of k in w, so store C_k(w) = w^(k mod 2) sum_j c_j w^(2j).
    packed = []
    for k, s in enumerate(table):
        if any(s[i] != 0 and abs(s[i]) > mp.mpf(10) ** -40 for i in range(1 - k % 2, len(s), 2)):
            sys.exit("unexpected parity in C_%d" % k)
        packed.append(s[k % 2::2])

    out = sys.stdout
    out.write("// Generated by tools/gen_rs_coefficients.py; do not edit.\n")
    out.write("// Riemann-Siegel corrections C_k(p), k = 0..%d, in w = p - 1/2:\n" % ORDERS)
    out.write("//   C_k = w^(k mod 2) * sum_j kRsC<k>[j] * w^(2j).\n")
    out.write("// Source: Arias de Reyna's remainder expansion (mpmath.functions.rszeta),\n")
    out.write("// reduced to the real Hardy-function form; terms below 1e-19 on |w| <= 1/2 dropped.\n\n")
    out.write("inline constexpr int kRsOrders = %d;\n" % (ORDERS + 1))
    out.write("inline constexpr int kRsTerms[kRsOrders] = {%s};\n" %
              ", ".join(str(len(s)) for s in packed))
    out.write("// max over |w| <= 1/2 of |C_k|, bounded termwise\n")
    out.write("inline constexpr double kRsNorm[kRsOrders] = {%s};\n" %
              ", ".join(mp.nstr(sum(abs(c) * mp.mpf(0.5) ** i for i, c in enumerate(s)), 3, min_fixed=1, max_fixed=0)
                        for s in table))
    for k, s in enumerate(packed):
        out.write("inline constexpr double kRsC%d[] = {\n" % k)
        for i in range(0, len(s), 3):
            out.write("    " + ", ".join(mp.nstr(c, 20, min_fixed=1, max_fixed=0) for c in s[i:i + 3]) + ",\n")
        out.write("};\n")
    out.write("inline constexpr const double* kRsCoeffs[kRsOrders] = {%s};\n" %
              ", ".join("kRsC%d" % k for k in range(ORDERS + 1)))


if __name__ == "__main__":
    main()
