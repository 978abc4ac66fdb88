#!/usr/bin/env python3
"""Standalone Weil-Petersson volume table generator.

Independent reference implementation of Mirzakhani's topological recursion
over exact rationals (fractions.Fraction), used to produce the frozen
reference table the C++ engine is tested against.  Shares no code with the
C++ implementation; only the on-disk format is common.

Coefficients are stored in the intersection-number normalization
    [tau_d] = c_d * 4^{|d|} * prod_i (2 d_i + 1)!
where V_{g,n}(L) = sum_d c_d prod_i L_i^{2 d_i}, and every coefficient is an
exact rational multiple of pi^(2*(3g-3+n-|d|)).

Usage: gen_reference.py [gmax] [nmax] [outfile]
"""
import itertools
import sys
from collections import defaultdict
from fractions import Fraction as Fr
from math import comb, factorial

# ---------------- Bernoulli numbers and zeta(2i) ----------------

def bernoulli_list(N):
    B = [Fr(0)] * (N + 1)
    B[0] = Fr(1)
    for m in range(1, N + 1):
        s = Fr(0)
        for j in range(m):
            s += comb(m + 1, j) * B[j]
        B[m] = -s / (m + 1)
    return B

_B = bernoulli_list(64)

def zeta2_rat(i):
    """zeta(2i) = zeta2_rat(i) * pi^(2i); zeta(0) = -1/2."""
    if i == 0:
        return Fr(-1, 2)
    return Fr((-1) ** (i + 1) * 2 ** (2 * i - 1), factorial(2 * i)) * _B[2 * i]

# ---------------- F_{2k+1} moment polynomials ----------------
# F_{2k+1}(t) = (2k+1)! sum_{i=0}^{k+1} zeta(2i) (2^{2i+1} - 4)
#               t^{2(k+1-i)} / (2(k+1-i))!
# as the x-moments of the kernel H(x,t) of the recursion.

_F_CACHE = {}

def F_terms(k):
    if k in _F_CACHE:
        return _F_CACHE[k]
    out = []
    for i in range(0, k + 2):
        m = k + 1 - i
        rat = (Fr(factorial(2 * k + 1)) * zeta2_rat(i) *
               (2 ** (2 * i + 1) - 4) / factorial(2 * m))
        if rat != 0:
            out.append((m, rat))
    _F_CACHE[k] = out
    return out

# ---------------- the recursion ----------------

def dim(g, n):
    return 3 * g - 3 + n

def stable(g, n):
    return g >= 0 and n >= 0 and 2 * g - 2 + n > 0

_MEMO = {}

def V(g, n):
    """Symmetric coefficient dict: exponent tuple d (len n) -> c_d."""
    key = (g, n)
    if key in _MEMO:
        return _MEMO[key]
    if not stable(g, n):
        raise ValueError(f"unstable ({g},{n})")
    if key == (0, 3):
        res = {(0, 0, 0): Fr(1)}
    elif key == (1, 1):
        res = {(1,): Fr(1, 48), (0,): Fr(1, 12)}
    elif n == 0:
        res = _from_dilaton(g)
    else:
        res = _recurse(g, n)
    _MEMO[key] = res
    return res

def _from_dilaton(g):
    # dV_{g,1}/dL at L = 2 pi i equals 2 pi i (2g-2) V_{g,0}.
    acc = Fr(0)
    for (k,), c in V(g, 1).items():
        if k >= 1:
            acc += 2 * k * c * Fr((-4) ** (k - 1))
    val = acc / (2 * g - 2)
    assert val > 0, f"V_{g},0 came out non-positive: {val}"
    return {(): val}

def _recurse(g, n):
    W = defaultdict(Fr)
    half = Fr(1, 2)

    # Non-separating term: V_{g-1,n+1}(x, y, L_2..L_n).
    if stable(g - 1, n + 1):
        for d, gam in V(g - 1, n + 1).items():
            a, b, e = d[0], d[1], d[2:]
            fac = Fr(factorial(2 * a + 1) * factorial(2 * b + 1),
                     factorial(2 * a + 2 * b + 3))
            coef = half * gam * fac
            for (m, rat) in F_terms(a + b + 1):
                W[(m,) + e] += coef * rat

    # Separating term: ordered stable splittings of (g, boundary set).
    rest = tuple(range(2, n + 1))
    for g1 in range(0, g + 1):
        g2 = g - g1
        for r in range(0, len(rest) + 1):
            for I in itertools.combinations(rest, r):
                J = tuple(p for p in rest if p not in I)
                if not stable(g1, len(I) + 1) or not stable(g2, len(J) + 1):
                    continue
                for d1, gam1 in V(g1, len(I) + 1).items():
                    for d2, gam2 in V(g2, len(J) + 1).items():
                        a, b = d1[0], d2[0]
                        fac = Fr(factorial(2 * a + 1) * factorial(2 * b + 1),
                                 factorial(2 * a + 2 * b + 3))
                        coef = half * gam1 * gam2 * fac
                        e = [0] * (n - 1)
                        for pos, dv in zip(I, d1[1:]):
                            e[pos - 2] = dv
                        for pos, dv in zip(J, d2[1:]):
                            e[pos - 2] = dv
                        for (m, rat) in F_terms(a + b + 1):
                            W[(m,) + tuple(e)] += coef * rat

    # Boundary-pairing term: V_{g,n-1}(x, L minus one slot).
    if n >= 2 and stable(g, n - 1):
        for j in range(2, n + 1):
            others = [p for p in range(2, n + 1) if p != j]
            for d, gam in V(g, n - 1).items():
                k, e = d[0], d[1:]
                for (m, rat) in F_terms(k):
                    base = gam * rat
                    for p in range(0, m + 1):
                        idx = [0] * (n - 1)
                        idx[j - 2] = p
                        for pos, dv in zip(others, e):
                            idx[pos - 2] = dv
                        W[(m - p,) + tuple(idx)] += base * comb(2 * m, 2 * p)

    # Left side is d/dL1 (L1 V): divide by (2 d_1 + 1) and audit.
    res = {}
    dmax = dim(g, n)
    for d, w in W.items():
        if w == 0:
            continue
        assert sum(d) <= dmax, f"degree overflow {d} for ({g},{n})"
        res[d] = w / (2 * d[0] + 1)
    for d, c in res.items():
        sd = tuple(sorted(d, reverse=True))
        assert res.get(sd) == c, f"asymmetric ({g},{n}) at {d}"
    return res

# ---------------- emission ----------------

def emit(gmax, nmax, out):
    out.write("# weil-petersson volume coefficient table\n")
    out.write("# format: g n | d1 ... dn | num/den | piexp   "
              "(coefficient [tau_d] = num/den * pi^(2*piexp))\n")
    for g in range(0, gmax + 1):
        for n in range(0, nmax + 1):
            if not stable(g, n):
                continue
            poly = V(g, n)
            for d in sorted(poly.keys()):
                c = poly[d]
                tau = c * Fr(4) ** sum(d)
                for di in d:
                    tau *= factorial(2 * di + 1)
                piexp = dim(g, n) - sum(d)
                dcol = "".join(f"{di} " for di in d) if any(d) else ""
                out.write(f"{g} {n} | {dcol}| "
                          f"{tau.numerator}/{tau.denominator} | {piexp}\n")

def main():
    gmax = int(sys.argv[1]) if len(sys.argv) > 1 else 4
    nmax = int(sys.argv[2]) if len(sys.argv) > 2 else 4
    if len(sys.argv) > 3:
        with open(sys.argv[3], "w") as fh:
            emit(gmax, nmax, fh)
    else:
        emit(gmax, nmax, sys.stdout)

if __name__ == "__main__":
    main()
