#!/usr/bin/env python3
"""Regenerate the bundled newform tables from PARI/GP (via cypari).

Writes one file per Galois orbit of newforms into data/newforms/ together
with spaces.txt, the list of cusp-form spaces S_K(Gamma0(N), chi) that the
obstruction solver needs and their dimensions.
"""
import argparse
import itertools
import os
from fractions import Fraction

import cypari

pari = cypari.pari
TERMS = 120


def primes(n):
    return [int(p) for p in pari(f"factor({n})[,1]")] if n > 1 else []


def squarefree(n):
    return n == 1 or all(int(e) == 1 for e in pari(f"factor({n})[,2]"))


def fmt_rat(q):
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def fmt_poly(coeffs):
    # coeffs[i] is the coefficient of y^i
    terms = []
    for e in range(len(coeffs) - 1, -1, -1):
        c = Fraction(coeffs[e])
        if c == 0:
            continue
        mag = abs(c)
        if e == 0:
            body = fmt_rat(mag)
        else:
            mono = "y" if e == 1 else f"y^{e}"
            body = mono if mag == 1 else f"{fmt_rat(mag)}*{mono}"
        terms.append(("-" if c < 0 else "+", body))
    if not terms:
        return "0"
    out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
    for s, b in terms[1:]:
        out += f" {s} {b}"
    return out


def gen_to_coeffs(x, deg):
    lifted = pari.lift(x)
    out = []
    for i in range(deg):
        c = pari.polcoef(lifted, i, "y")
        out.append(Fraction(int(pari.numerator(c)), int(pari.denominator(c))))
    return out


def needed_spaces():
    spaces = []
    for k in range(-1, -13, -1):
        K = 2 - k
        for N in range(1, 200):
            if not squarefree(N):
                continue
            ps = primes(N)
            prod = 1
            for p in ps:
                prod *= p + 1
            if prod * (-k) > 2 ** len(ps) * 12:
                continue
            odd = [p for p in ps if p % 2]
            for r in range(len(odd) + 1):
                for S in itertools.combinations(odd, r):
                    D = 1
                    for p in S:
                        D *= p if p % 4 == 1 else -p
                    if (1 if D > 0 else -1) != (-1) ** K:
                        continue
                    spaces.append((N, K, D))
    return spaces


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default=os.path.join(os.path.dirname(__file__), "..", "data", "newforms"))
    args = ap.parse_args()
    pari.allocatemem(2 * 10**9)
    os.makedirs(args.out, exist_ok=True)
    spaces = needed_spaces()
    done = set()
    with open(os.path.join(args.out, "spaces.txt"), "w") as sp:
        sp.write("# level weight discriminant dim\n")
        for N, K, D in spaces:
            dim = int(pari(f"mfdim([{N},{K},{D}],1)"))
            sp.write(f"{N} {K} {D} {dim}\n")
            for M in range(1, N + 1):
                if N % M or (D != 1 and M % abs(D)) or (M, K, D) in done:
                    continue
                done.add((M, K, D))
                mf = pari(f"mfinit([{M},{K},{D}],0)")
                if int(pari.mfdim(mf)) == 0:
                    continue
                basis = pari.mfeigenbasis(mf)
                for idx, f in enumerate(basis, start=1):
                    field = pari.mfparams(f)[3]
                    deg = int(pari.poldegree(field))
                    fcoef = [Fraction(int(pari.polcoef(field, i, "y"))) for i in range(deg + 1)]
                    an = pari.mfcoefs(f, TERMS)
                    odd = {abs(p) for p in primes(abs(D))}
                    chars = " ".join(f"{p}:{'legendre' if p in odd else 'trivial'}" for p in primes(M))
                    name = f"M{M}_k{K}_d{D}_{idx}.txt"
                    with open(os.path.join(args.out, name), "w") as fh:
                        fh.write(f"level {M}\nweight {K}\n")
                        fh.write(f"character {chars if chars else 'none'}\n")
                        fh.write(f"field {fmt_poly(fcoef)}\nterms {TERMS}\n")
                        for n in range(1, TERMS + 1):
                            fh.write(f"{n} {fmt_poly(gen_to_coeffs(an[n], deg))}\n")


if __name__ == "__main__":
    main()
