#!/usr/bin/env python3
"""Regenerate assets/ekm_coeffs.csv by symbolic differentiation.

e_{k,m}(z) = (pi^k k!)^(-1/2) exp(pi z zb) d^k/dz^k [exp(-pi z zb) e_m(z)],
e_m(z) = (pi^m / m!)^(1/2) z^m, with z and zb treated as independent symbols.
Each output row is the coefficient of z^i zb^j.
"""
import argparse
import sympy as sp

K_MAX = 4
M_MAX = 8


def ekm_polynomial(k, m, z, zb):
    em = sp.sqrt(sp.pi**m / sp.factorial(m)) * z**m
    expr = sp.exp(sp.pi * z * zb) * sp.diff(sp.exp(-sp.pi * z * zb) * em, z, k)
    expr = sp.simplify(expr / sp.sqrt(sp.pi**k * sp.factorial(k)))
    return sp.Poly(sp.expand(expr), z, zb)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("out")
    args = ap.parse_args()
    z, zb = sp.symbols("z zb")
    lines = ["# ekm_coeffs v1: e_{k,m}(z) = sum re+i*im * z^i * conj(z)^j",
             "k,m,i,j,re,im"]
    for k in range(K_MAX + 1):
        for m in range(M_MAX + 1):
            poly = ekm_polynomial(k, m, z, zb)
            for (i, j), c in sorted(poly.terms()):
                val = sp.N(c, 30)
                re, im = sp.re(val), sp.im(val)
                lines.append(f"{k},{m},{i},{j},{float(re):.17g},{float(im):.17g}")
    with open(args.out, "w") as fh:
        fh.write("\n".join(lines) + "\n")


if __name__ == "__main__":
    main()
