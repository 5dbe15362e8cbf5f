#!/usr/bin/env python3
"""Writes the QPS fixtures under tests/fixtures/maros_meszaros.

The Hock-Schittkowski family instances are written from their published
problem statements. LOTSCHDS and DUAL1S..DUAL4S are seeded synthetic
stand-ins with the dimensions and structure of the corpus instances they
are named after (the corpus data files are not redistributed here).
"""
import argparse
import os
import random
from fractions import Fraction

INF = None


def fmt(v):
    f = Fraction(v).limit_denominator(10**12) if isinstance(v, float) else Fraction(v)
    if f.denominator == 1:
        return f"{f.numerator}"
    s = f"{float(f):.12g}"
    assert Fraction(s) == f, (v, s)
    return s


class Qps:
    def __init__(self, name, ncols, colnames=None):
        self.name = name
        self.cols = colnames or [f"X{j + 1}" for j in range(ncols)]
        self.obj = {}
        self.constant = 0
        self.rows = []  # (name, sense, coefs{col:val}, rhs, range)
        self.lower = {}
        self.upper = {}
        self.fixed = {}
        self.free = set()
        self.quad = {}  # (i, j) i >= j -> val

    def row(self, name, sense, coefs, rhs, rng=None):
        self.rows.append((name, sense, coefs, rhs, rng))

    def write(self, path):
        out = [f"NAME          {self.name}", "ROWS", " N  OBJ"]
        for r in self.rows:
            out.append(f" {r[1]}  {r[0]}")
        out.append("COLUMNS")
        for j, c in enumerate(self.cols):
            entries = []
            if self.obj.get(j, 0) != 0:
                entries.append(("OBJ", self.obj[j]))
            for r in self.rows:
                if r[2].get(j, 0) != 0:
                    entries.append((r[0], r[2][j]))
            for rn, v in entries:
                out.append(f"    {c:<10}{rn:<10}{fmt(v)}")
        out.append("RHS")
        if self.constant != 0:
            out.append(f"    RHS       OBJ       {fmt(-self.constant)}")
        for r in self.rows:
            if r[3] != 0:
                out.append(f"    RHS       {r[0]:<10}{fmt(r[3])}")
        if any(r[4] is not None for r in self.rows):
            out.append("RANGES")
            for r in self.rows:
                if r[4] is not None:
                    out.append(f"    RNG       {r[0]:<10}{fmt(r[4])}")
        bounds = []
        for j, c in enumerate(self.cols):
            if j in self.free:
                bounds.append(f" FR BND       {c}")
            elif j in self.fixed:
                bounds.append(f" FX BND       {c:<10}{fmt(self.fixed[j])}")
            else:
                if j in self.lower:
                    if self.lower[j] is INF:
                        bounds.append(f" MI BND       {c}")
                    else:
                        bounds.append(f" LO BND       {c:<10}{fmt(self.lower[j])}")
                if j in self.upper:
                    bounds.append(f" UP BND       {c:<10}{fmt(self.upper[j])}")
        if bounds:
            out.append("BOUNDS")
            out.extend(bounds)
        if self.quad:
            out.append("QUADOBJ")
            for (i, j) in sorted(self.quad, key=lambda p: (p[1], p[0])):
                v = self.quad[(i, j)]
                if v != 0:
                    out.append(f"    {self.cols[j]:<10}{self.cols[i]:<10}{fmt(v)}")
        out.append("ENDATA")
        with open(path, "w") as fh:
            fh.write("\n".join(out) + "\n")


def set_quad(p, dense):
    n = len(dense)
    for i in range(n):
        for j in range(i + 1):
            if dense[i][j] != 0:
                p.quad[(i, j)] = dense[i][j]


def hs51_family(name, q11, q12, rhs1, box):
    p = Qps(name, 5)
    # (a x1 - x2)^2 + (x2 + x3 - 2)^2 + (x4 - 1)^2 + (x5 - 1)^2
    q = [[q11, q12, 0, 0, 0], [q12, 4, 2, 0, 0], [0, 2, 2, 0, 0], [0, 0, 0, 2, 0], [0, 0, 0, 0, 2]]
    set_quad(p, q)
    p.obj = {1: -4, 2: -4, 3: -2, 4: -2}
    p.constant = 6
    p.row("C1", "E", {0: 1, 1: 3}, rhs1)
    p.row("C2", "E", {2: 1, 3: 1, 4: -2}, 0)
    p.row("C3", "E", {1: 1, 4: -1}, 0)
    for j in range(5):
        if box:
            p.lower[j] = -10
            p.upper[j] = 10
        else:
            p.free.add(j)
    return p


def hs76():
    p = Qps("HS76", 4)
    set_quad(p, [[2, 0, -1, 0], [0, 1, 0, 0], [-1, 0, 2, 1], [0, 0, 1, 1]])
    p.obj = {0: -1, 1: -3, 2: 1, 3: -1}
    p.row("C1", "G", {0: -1, 1: -2, 2: -1, 3: -1}, -5)
    p.row("C2", "G", {0: -3, 1: -1, 2: -2, 3: 1}, -4)
    p.row("C3", "G", {1: 1, 2: 4}, Fraction(3, 2))
    return p


def hs118():
    p = Qps("HS118", 15)
    lin = [2.3, 1.7, 2.2]
    quad = [Fraction(1, 10000), Fraction(1, 10000), Fraction(15, 100000)]
    q = [[0] * 15 for _ in range(15)]
    for k in range(5):
        for t in range(3):
            j = 3 * k + t
            p.obj[j] = Fraction(str(lin[t]))
            q[j][j] = 2 * quad[t]
    set_quad(p, q)
    # ramping rows: -7 <= x_{3j+t} - x_{3(j-1)+t} <= hi - 7
    his = [13, 14, 13]
    r = 0
    for j in range(1, 5):
        for t in range(3):
            r += 1
            a, b = 3 * j + t, 3 * (j - 1) + t
            p.row(f"R{r}", "G", {a: 1, b: -1}, -7, his[t])
    for k, rhs in enumerate([60, 50, 70, 85, 100]):
        r += 1
        p.row(f"R{r}", "G", {3 * k: 1, 3 * k + 1: 1, 3 * k + 2: 1}, rhs)
    first = [(8, 21), (43, 57), (3, 16)]
    rest = [(0, 90), (0, 120), (0, 60)]
    for k in range(5):
        for t in range(3):
            lo, hi = (first if k == 0 else rest)[t]
            if lo != 0:
                p.lower[3 * k + t] = lo
            p.upper[3 * k + t] = hi
    return p


def hs268(name):
    p = Qps(name, 5)
    d = [[10197, -12454, -1013, 1948, 329],
         [-12454, 20909, -1733, -4914, -186],
         [-1013, -1733, 1755, 1089, -174],
         [1948, -4914, 1089, 1515, -22],
         [329, -186, -174, -22, 27]]
    dv = [-9170, 17099, -2271, -4336, -43]
    set_quad(p, [[2 * v for v in row] for row in d])
    p.obj = {j: -2 * dv[j] for j in range(5)}
    p.constant = 14463
    rows = [([-1, -1, -1, -1, -1], -5), ([10, 10, -3, 5, 4], 20), ([-8, 1, -2, -5, 3], -40),
            ([8, -1, 2, 5, -3], 11), ([-4, -2, 3, -5, 1], -30)]
    for i, (a, rhs) in enumerate(rows):
        p.row(f"C{i + 1}", "G", {j: v for j, v in enumerate(a) if v}, rhs)
    for j in range(5):
        p.free.add(j)
    return p


def genhs28():
    n = 10
    p = Qps("GENHS28", n)
    q = [[0] * n for _ in range(n)]
    for i in range(n - 1):
        # (x_i + x_{i+1})^2
        q[i][i] += 2
        q[i + 1][i + 1] += 2
        q[i][i + 1] += 2
        q[i + 1][i] += 2
    set_quad(p, q)
    for i in range(n - 2):
        p.row(f"C{i + 1}", "E", {i: 1, i + 1: 2, i + 2: 3}, 1)
    for j in range(n):
        p.free.add(j)
    return p


def lotschd_like(rng):
    """12 columns, 7 rows: lot sizing with inventory balance and capacity."""
    p = Qps("LOTSCHDS", 12)
    periods = 6
    # columns: production P1..P6 (0..5), inventory I1..I6 (6..11)
    q = [[0] * 12 for _ in range(12)]
    for t in range(periods):
        q[t][t] = rng.randint(2, 9)
        p.obj[t] = rng.randint(1, 20)
        p.obj[6 + t] = rng.randint(1, 5)
    set_quad(p, q)
    demand = [rng.randint(10, 40) for _ in range(periods)]
    for t in range(periods):
        coefs = {t: 1, 6 + t: -1}
        if t > 0:
            coefs[6 + t - 1] = 1
        p.row(f"BAL{t + 1}", "E", coefs, demand[t])
    p.row("CAP", "L", {t: 1 for t in range(periods)}, sum(demand) + 25)
    for t in range(periods):
        p.upper[t] = 60
    return p


def dual_like(name, n, rng):
    """Dense Gram-type Hessian over the unit simplex box: sum x = 1, 0 <= x <= 1."""
    p = Qps(name, n)
    k = 6
    g = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(k)]
    q = [[Fraction(sum(g[t][i] * g[t][j] for t in range(k)), 100) for j in range(n)] for i in range(n)]
    for i in range(n):
        q[i][i] += Fraction(1, 10)
    set_quad(p, q)
    for j in range(n):
        p.obj[j] = Fraction(rng.randint(-50, 50), 100)
        p.upper[j] = 1
    p.row("SUM", "E", {j: 1 for j in range(n)}, 1)
    return p


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("outdir")
    ap.add_argument("--seed", type=int, default=20170601)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    probs = [
        hs51_family("HS51", 2, -2, 4, False),
        hs51_family("HS52", 32, -8, 0, False),
        hs51_family("HS53", 2, -2, 0, True),
        hs76(),
        hs118(),
        hs268("HS268"),
        hs268("S268"),
        genhs28(),
        lotschd_like(rng),
        dual_like("DUAL1S", 85, rng),
        dual_like("DUAL2S", 96, rng),
        dual_like("DUAL3S", 111, rng),
        dual_like("DUAL4S", 75, rng),
    ]
    for p in probs:
        p.write(os.path.join(args.outdir, p.name.lower() + ".qps"))


if __name__ == "__main__":
    main()
