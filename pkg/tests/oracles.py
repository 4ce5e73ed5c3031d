"""Slow, independent reference computations used only by the tests.

Nothing here imports the library's linear algebra or polynomial code.
Polynomials are expanded with sympy, elimination is plain Fraction Gauss,
and membership in powers of linear primes is decided by vanishing order
along the linear subspace instead of by building the power ideal.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, product

import sympy


# ---------------------------------------------------------------------------
# linear algebra over Q


def frac_rref(rows, ncols=None):
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    m = [[Fraction(x) for x in r] for r in rows]
    if ncols is None:
        ncols = len(m[0]) if m else 0
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return [row for row in m[:r]], pivots


def frac_rank(rows, ncols=None) -> int:
    return len(frac_rref(rows, ncols)[1])


def frac_nullspace(rows, ncols):
    """Basis of {v : rows @ v = 0}."""
    red, piv = frac_rref(rows, ncols)
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(red, piv):
            v[p] = -row[f]
        basis.append(v)
    return basis


# ---------------------------------------------------------------------------
# polynomials via sympy


def variables(nv):
    return sympy.symbols(f"v0:{nv}")


def monomials(nv, d):
    """All exponent vectors of degree d (any fixed order is fine here)."""
    if nv == 1:
        return [(d,)]
    return [(k,) + rest for k in range(d, -1, -1) for rest in monomials(nv - 1, d - k)]


def sym_form(coeffs, xs):
    return sum(sympy.Rational(str(Fraction(c))) * x for c, x in zip(coeffs, xs))


def sym_product(forms, t, xs):
    out = sympy.Integer(1)
    for f, k in zip(forms, t):
        out *= sym_form(f, xs) ** k
    return sympy.expand(out)


def coeff_vector(expr, xs, d):
    poly = sympy.Poly(expr, *xs)
    lookup = {m: Fraction(str(c)) for m, c in zip(poly.monoms(), poly.coeffs())}
    return [lookup.get(m, Fraction(0)) for m in monomials(len(xs), d)]


def piece_rows(polys, xs, d):
    """Coefficient rows spanning the degree-d part of the ideal (polys homogeneous)."""
    nv = len(xs)
    rows = []
    for f in polys:
        e = sympy.Poly(f, *xs).total_degree()
        if e > d:
            continue
        for mono in monomials(nv, d - e):
            g = f
            for x, k in zip(xs, mono):
                g *= x ** k
            rows.append(coeff_vector(sympy.expand(g), xs, d))
    return rows


def piece_dim(polys, xs, d) -> int:
    rows = piece_rows(polys, xs, d)
    return frac_rank(rows, len(monomials(len(xs), d))) if rows else 0


def fold_polys(forms, mults, a, xs):
    """a-fold products by brute force over multiset index choices."""
    flat = [i for i, m in enumerate(mults) for _ in range(m)]
    seen = {}
    for choice in combinations(range(len(flat)), a):
        t = [0] * len(forms)
        for j in choice:
            t[flat[j]] += 1
        seen[tuple(t)] = None
    return [sym_product(forms, t, xs) for t in seen]


# ---------------------------------------------------------------------------
# powers of linear primes by vanishing order


def _subspace_params(gen_rows, nv):
    """Basis vectors of the common zero set of the linear forms in gen_rows."""
    return frac_nullspace(gen_rows, nv)


def vanishing_conditions(gen_rows, e, d, xs):
    """Rows of linear conditions on degree-d coefficient vectors for membership in P^e.

    f lies in P^e exactly when every derivative of order < e vanishes on V(P).
    """
    nv = len(xs)
    basis = _subspace_params(gen_rows, nv)
    k = len(basis)
    ts = sympy.symbols(f"u0:{max(k, 1)}")[:k]
    point = {x: sum(sympy.Rational(str(b[i])) * t for b, t in zip(basis, ts)) for i, x in enumerate(xs)}
    monos = monomials(nv, d)
    conds: dict = {}
    for order in range(min(e, d + 1)):
        for beta in monomials(nv, order):
            for col, alpha in enumerate(monos):
                if any(b > a for a, b in zip(alpha, beta)):
                    continue
                g = sympy.Integer(1)
                for x, a_, b_ in zip(xs, alpha, beta):
                    g *= x ** a_
                g = sympy.diff(g, *[v for x, b_ in zip(xs, beta) for v in [x] * b_]) if order else g
                val = sympy.expand(g.subs(point, simultaneous=True))
                if val == 0:
                    continue
                if k == 0:
                    terms = {(): val}
                else:
                    p = sympy.Poly(val, *ts)
                    terms = dict(zip(p.monoms(), p.coeffs()))
                for mono_t, c in terms.items():
                    key = (beta, mono_t)
                    conds.setdefault(key, [Fraction(0)] * len(monos))
                    conds[key][col] += Fraction(str(c))
    return list(conds.values())


def intersection_dim(components, d, xs):
    """dim of (∩ P_i^{e_i})_d, components given as (generator rows, exponent)."""
    nv = len(xs)
    rows = []
    for gen_rows, e in components:
        rows.extend(vanishing_conditions(gen_rows, e, d, xs))
    n = len(monomials(nv, d))
    return n - (frac_rank(rows, n) if rows else 0)


def in_intersection(vec, components, d, xs) -> bool:
    for gen_rows, e in components:
        for row in vanishing_conditions(gen_rows, e, d, xs):
            if sum(a * b for a, b in zip(row, vec)) != 0:
                return False
    return True


# ---------------------------------------------------------------------------
# coordinate-monomial star model, brute force


def brute_symbolic_member(t, c, m) -> bool:
    """z^t in the intersection over all c-subsets S of (z_S)^m."""
    return all(sum(t[i] for i in S) >= m for S in combinations(range(len(t)), c))


def brute_power_member(t, c, r) -> bool:
    """z^t divisible by some product of r generators of the star ideal."""
    s = len(t)
    fold = s - c + 1
    need = r * fold
    for k in product(*(range(min(x, r) + 1) for x in t)):
        if sum(k) == need:
            return True
    return False


def brute_symbolic_min_gens(s, c, m):
    members = [t for t in product(range(m + 1), repeat=s) if brute_symbolic_member(t, c, m)]
    mem = set(members)
    out = []
    for t in members:
        if all(t[i] == 0 or t[:i] + (t[i] - 1,) + t[i + 1:] not in mem for i in range(s)):
            out.append(t)
    return sorted(out)


def brute_containment(s, c, m, r) -> bool:
    return all(brute_power_member(t, c, r) for t in brute_symbolic_min_gens(s, c, m))


# ---------------------------------------------------------------------------
# subset ranks


def brute_ghw(columns, k):
    """Weights from subset ranks: d_r is the least |T| such that the columns
    outside T have rank at most k - r."""
    n = len(columns)
    out = []
    for r in range(1, k + 1):
        best = None
        for size in range(n + 1):
            for S in combinations(range(n), size):
                rest = [columns[j] for j in range(n) if j not in S]
                rk = frac_rank([list(col) for col in rest], k) if rest else 0
                if rk <= k - r:
                    best = size
                    break
            if best is not None:
                break
        out.append(best)
    return out
