#!/usr/bin/env python3
"""Regenerate the reference values under tests/data.

hermite_rodrigues.csv: h_n(t) = c_n exp(pi t^2) (d/dt)^n exp(-2 pi t^2), unit norm,
  positive leading coefficient, evaluated symbolically.
ekm_weighted.csv: exp(-pi |z|^2 / 2) e_{k,m}(z) from the derivative definition
  e_{k,m} = (pi^k k!)^(-1/2) exp(pi z zb) d^k/dz^k [exp(-pi z zb) e_m(z)], at 40 digits.
s0_formula.csv: 2^(n/2+1) Gamma(n/2+1) / sqrt(n!).
"""
import pathlib

import mpmath as mp
import sympy as sp

mp.mp.dps = 40
OUT = pathlib.Path(__file__).resolve().parent.parent / "data"

t = sp.symbols("t", real=True)
z, zb = sp.symbols("z zb")


def hermite(n):
    raw = sp.exp(sp.pi * t**2) * sp.diff(sp.exp(-2 * sp.pi * t**2), t, n)
    poly = sp.Poly(sp.simplify(raw * sp.exp(sp.pi * t**2)), t)
    norm2 = sp.integrate(sp.expand(raw**2), (t, -sp.oo, sp.oo))
    return sp.sign(poly.LC()) * raw / sp.sqrt(norm2)


def ekm(k, m):
    em = sp.sqrt(sp.pi**m / sp.factorial(m)) * z**m
    expr = sp.exp(sp.pi * z * zb) * sp.diff(sp.exp(-sp.pi * z * zb) * em, z, k)
    return sp.expand(sp.simplify(expr / sp.sqrt(sp.pi**k * sp.factorial(k))))


def main():
    OUT.mkdir(exist_ok=True)
    rows = ["n,t,value"]
    for n in range(9):
        h = hermite(n)
        for tv in ["-1.3", "-0.4", "0", "0.25", "0.9", "2.1"]:
            v = sp.N(h.subs(t, sp.Rational(tv)), 30)
            rows.append(f"{n},{tv},{mp.nstr(mp.mpf(str(v)), 20)}")
    (OUT / "hermite_rodrigues.csv").write_text("\n".join(rows) + "\n")

    rows = ["k,m,x,omega,re,im"]
    points = [("0.3", "-0.2"), ("1.1", "0.7"), ("-2.0", "1.5"), ("3.2", "-2.4"), ("0", "4.5")]
    for k in range(4):
        for m in [0, 1, 2, 5, 9, 17, 30, 45]:
            f = sp.lambdify((z, zb), ekm(k, m), "mpmath")
            for xs, ws in points:
                zz = mp.mpc(mp.mpf(xs), mp.mpf(ws))
                v = f(zz, mp.conj(zz)) * mp.exp(-mp.pi * abs(zz) ** 2 / 2)
                rows.append(f"{k},{m},{xs},{ws},{mp.nstr(mp.re(v), 20)},{mp.nstr(mp.im(v), 20)}")
    (OUT / "ekm_weighted.csv").write_text("\n".join(rows) + "\n")

    rows = ["n,value"]
    for n in range(9):
        v = mp.power(2, mp.mpf(n) / 2 + 1) * mp.gamma(mp.mpf(n) / 2 + 1) / mp.sqrt(mp.factorial(n))
        rows.append(f"{n},{mp.nstr(v, 20)}")
    (OUT / "s0_formula.csv").write_text("\n".join(rows) + "\n")


if __name__ == "__main__":
    main()
