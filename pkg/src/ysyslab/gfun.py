"""The exponent function coupling a T/Y relation to its neighbour variables.

For the relation centered at (a, m, u) the second exchange monomial is a
product of variables T^{(b)}_k(u + dv); g_factors returns those (b, k, dv)
triples with boundary factors (index 0, component 0, or top row t_b*level)
already dropped.  transpose_factors inverts the table: it lists the
(b, k, dv) with (1 + Y^{(b)}_k(u + dv)) in the numerator of the Y-relation
at (a, m, u).
"""

from __future__ import annotations

from fractions import Fraction

from .builders import cartan_data

HALF = Fraction(1, 2)
THIRD = Fraction(1, 3)


def g_factors(family, rank, level, a, m):
    """Neighbour factors (b, k, dv) of the relation centered at (a, m, u)."""
    cd = cartan_data(family, rank)
    out = []

    def add(b, k, dv=Fraction(0)):
        if b < 1 or k < 1 or k > cd["t_a"][b] * level - 1:
            return
        out.append((b, k, dv))

    if family == "C":
        r = rank
        if a <= r - 2:
            add(a - 1, m)
            add(a + 1, m)
        elif a == r - 1:
            if m % 2 == 0:
                add(r - 2, m)
                add(r, m // 2, -HALF)
                add(r, m // 2, +HALF)
            else:
                add(r - 2, m)
                add(r, (m - 1) // 2)
                add(r, (m + 1) // 2)
        else:
            add(r - 1, 2 * m)
    elif family == "F4":
        if a == 1:
            add(2, m)
        elif a == 2:
            add(1, m)
            add(3, 2 * m)
        elif a == 3:
            if m % 2 == 0:
                add(2, m // 2, -HALF)
                add(2, m // 2, +HALF)
                add(4, m)
            else:
                add(2, (m - 1) // 2)
                add(2, (m + 1) // 2)
                add(4, m)
        else:
            add(3, m)
    elif family == "G2":
        if a == 1:
            add(2, 3 * m)
        else:
            q, rem = divmod(m, 3)
            if rem == 0:
                add(1, q, -2 * THIRD)
                add(1, q)
                add(1, q, +2 * THIRD)
            elif rem == 1:
                add(1, q, -THIRD)
                add(1, q, +THIRD)
                add(1, q + 1)
            else:
                add(1, q)
                add(1, q + 1, -THIRD)
                add(1, q + 1, +THIRD)
    else:
        raise ValueError(f"unknown family {family!r}")
    return out


def g_exponent(family, rank, level, b, k, dv, a, m):
    """Multiplicity of T^{(b)}_k(u+dv) in the relation at (a, m, u)."""
    return g_factors(family, rank, level, a, m).count((b, k, Fraction(dv)))


def transpose_factors(family, rank, level, a, m):
    """(b, k, dv) with (1+Y^{(b)}_k(u+dv)) in the Y-relation numerator at (a, m, u)."""
    cd = cartan_data(family, rank)
    out = []
    for b in range(1, rank + 1):
        for k in range(1, cd["t_a"][b] * level):
            for (c, m2, dv) in g_factors(family, rank, level, b, k):
                if c == a and m2 == m:
                    out.append((b, k, -dv))
    return out
