#!/usr/bin/env python3
"""Derive the three-term recurrence for h_n(t) = c_n exp(pi t^2) (d/dt)^n exp(-2 pi t^2).

c_n is fixed by unit L2 norm and a positive leading coefficient. Prints the
table h_{n+1} = a_n t h_n - b_n h_{n-1} frozen in src/hermite.cpp.
"""
import sympy as sp

t = sp.symbols("t", real=True)
N_MAX = 12


def rodrigues(n):
    raw = sp.simplify(sp.exp(sp.pi * t**2) * sp.diff(sp.exp(-2 * sp.pi * t**2), t, n))
    norm2 = sp.integrate(raw**2, (t, -sp.oo, sp.oo))
    poly = sp.Poly(sp.simplify(raw * sp.exp(sp.pi * t**2)), t)
    sign = sp.sign(poly.LC())
    return sp.simplify(sign * raw / sp.sqrt(norm2))


h = [rodrigues(n) for n in range(N_MAX + 1)]
print("h0 =", h[0])
for n in range(N_MAX):
    prev = h[n - 1] if n > 0 else 0
    a = sp.simplify(sp.limit((h[n + 1]) / (t * h[n]), t, sp.oo))
    b = sp.simplify((a * t * h[n] - h[n + 1]) / prev) if n > 0 else sp.Integer(0)
    assert sp.simplify(h[n + 1] - (a * t * h[n] - b * prev)) == 0
    print(f"{n:2d}  a={sp.nsimplify(a)}  ({float(a):.17g})  b={sp.nsimplify(b)}  ({float(b):.17g})")
