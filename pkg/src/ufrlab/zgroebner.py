"""Strong Groebner bases over the integers.

Used to realize Z[v1..vk]/(n, r1..rm) as a finite ring: once a strong basis
is known, every residue class has a unique normal form whose coefficient at
a standard monomial lies in [0, d) for a computable modulus d.
"""

from __future__ import annotations

from math import gcd

from .dsl import monomial_order_key


def _lt(f: dict):
    e = max(f, key=monomial_order_key)
    return e, f[e]


def _divides(a: tuple, b: tuple) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _sub_scaled(f: dict, g: dict, k: int, shift: tuple) -> dict:
    """f - k * X^shift * g"""
    out = dict(f)
    for e, c in g.items():
        e2 = tuple(a + b for a, b in zip(e, shift))
        v = out.get(e2, 0) - k * c
        if v:
            out[e2] = v
        else:
            out.pop(e2, None)
    return out


def _lin(a: int, f: dict, sa: tuple, b: int, g: dict, sb: tuple) -> dict:
    """a*X^sa*f + b*X^sb*g"""
    out: dict = {}
    for e, c in f.items():
        e2 = tuple(x + y for x, y in zip(e, sa))
        out[e2] = out.get(e2, 0) + a * c
    for e, c in g.items():
        e2 = tuple(x + y for x, y in zip(e, sb))
        out[e2] = out.get(e2, 0) + b * c
    return {e: c for e, c in out.items() if c}


def _xgcd(a: int, b: int):
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


class StrongBasis:
    def __init__(self, polys: list[dict]):
        self.polys = polys
        self.heads = [_lt(p) for p in polys]

    def reducer(self, e: tuple):
        """Basis element with the smallest leading coefficient whose leading monomial divides e."""
        best = None
        for i, (lm, lc) in enumerate(self.heads):
            if _divides(lm, e) and (best is None or lc < self.heads[best][1]):
                best = i
        return best

    def modulus(self, e: tuple) -> int:
        i = self.reducer(e)
        return 0 if i is None else self.heads[i][1]

    def normal_form(self, f: dict) -> dict:
        f = {e: c for e, c in f.items() if c}
        result: dict = {}
        while f:
            e, c = _lt(f)
            i = self.reducer(e)
            if i is None:
                result[e] = c
                del f[e]
                continue
            lm, lc = self.heads[i]
            q = c // lc
            if q:
                shift = tuple(a - b for a, b in zip(e, lm))
                f = _sub_scaled(f, self.polys[i], q, shift)
            r = f.pop(e, 0)
            if r:
                result[e] = r
        return result


def _normalize_sign(f: dict) -> dict:
    _, c = _lt(f)
    return {e: -v for e, v in f.items()} if c < 0 else f


def strong_groebner(gens: list[dict]) -> StrongBasis:
    basis = StrongBasis([])
    for g in gens:
        r = basis.normal_form(g)
        if r:
            basis = StrongBasis(basis.polys + [_normalize_sign(r)])
    pairs = [(i, j) for j in range(len(basis.polys)) for i in range(j)]
    while pairs:
        i, j = pairs.pop()
        f, g = basis.polys[i], basis.polys[j]
        (a_e, a), (b_e, b) = basis.heads[i], basis.heads[j]
        lcm_e = tuple(max(x, y) for x, y in zip(a_e, b_e))
        sa = tuple(x - y for x, y in zip(lcm_e, a_e))
        sb = tuple(x - y for x, y in zip(lcm_e, b_e))
        L = a * b // gcd(a, b)
        cands = [_lin(L // a, f, sa, -(L // b), g, sb)]
        if a % b and b % a:
            d, s, t = _xgcd(a, b)
            cands.append(_lin(s, f, sa, t, g, sb))
        for h in cands:
            r = basis.normal_form(h)
            if r:
                r = _normalize_sign(r)
                k = len(basis.polys)
                basis = StrongBasis(basis.polys + [r])
                pairs.extend((m, k) for m in range(k))
    return basis
