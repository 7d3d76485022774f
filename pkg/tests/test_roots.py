from fractions import Fraction

import numpy as np
import pytest

from tests.conftest import cached_tropical
from ysyslab.roots import (
    RootSystem,
    SigmaMap,
    _D4Outer,
    alpha_domain,
    alpha_of,
    apart_mismatches_C,
    d_part_signs_C,
    format_d_symbol,
    neg_simple,
    parse_d_symbol,
    rho_C,
    rho_conjugation_mismatches,
    rho_orbit_targets,
    sigma_C,
    sigma_C_apart,
    sigma_F4,
    sigma_G2,
    tvector_mismatches,
)

# ---------------------------------------------------------------------------
# piecewise-linear reflections

ALL_SYSTEMS = [
    RootSystem("A", 5),
    RootSystem("D", 5),
    RootSystem("E6", 6),
    _D4Outer(),
]


@pytest.mark.parametrize("rs", ALL_SYSTEMS, ids=lambda r: f"{r.family}{r.rank}")
def test_sigma_is_involution_exhaustive(rs):
    elements = list(rs.positive_roots) + [neg_simple(rs, i) for i in range(1, rs.rank + 1)]
    for i in range(1, rs.rank + 1):
        for alpha in elements:
            image = rs.sigma(i, alpha)
            assert rs.is_almost_positive(image)
            assert rs.sigma(i, image) == tuple(alpha)


def test_sigma_on_negative_simples():
    rs = RootSystem("D", 5)
    assert rs.sigma(1, neg_simple(rs, 2)) == neg_simple(rs, 2)
    assert rs.sigma(2, neg_simple(rs, 2)) == rs.simple(2)


def test_sigma_rejects_non_roots():
    rs = RootSystem("A", 3)
    with pytest.raises(ValueError):
        rs.sigma(1, (1, 0, 1))


# ---------------------------------------------------------------------------
# orbit decompositions partition the positive roots

@pytest.mark.parametrize(
    "sig,count",
    [
        (sigma_C(4), 20),
        (sigma_C(5), 30),
        (sigma_F4(), 36),
        (sigma_G2(), 12),
    ],
    ids=["C4", "C5", "F4", "G2"],
)
def test_orbits_partition_positive_roots(sig, count):
    orbits = sig.orbit_decomposition()
    positives = [v for orb in orbits for v in orb if sig.rs.is_positive_root(v)]
    assert len(positives) == len(set(positives)) == count
    assert set(positives) == set(sig.rs.positive_roots)


def test_orbit_guard_fires_on_wrong_word():
    rs = RootSystem("A", 3)
    broken = SigmaMap(rs, [1])  # sigma_1 alone fixes -a2, fine; orbits still close
    broken.orbit_decomposition()  # involution: closes in <= 2 steps


# ---------------------------------------------------------------------------
# the printed D4 and E6 orbits, verbatim

def _e6(text):
    """Parse entries like "[1,2,3^2,4,5]" into an E6 coefficient vector."""
    vec = [0] * 6
    for tok in text.strip("[]").split(","):
        if "^" in tok:
            node, mult = tok.split("^")
        else:
            node, mult = tok, 1
        vec[int(node) - 1] = int(mult)
    return tuple(vec)


E6_ORBITS = [
    ("-a1", ["[1,2,3]", "[2,3,4,5,6]", "[1,2,3^2,4,5]", "[5,6]"], "-a6"),
    ("-a2", ["[2,3]", "[1,2^2,3^2,4,5,6]", "[1,2^2,3^3,4^2,5^2,6]", "[1,2,3^2,4,5^2,6]", "[5]"], "-a5"),
    ("-a3", ["[2,3,4]", "[1,2,3^2,4,5,6]", "[2,3^2,4,5^2,6]", "[1,2,3,5]"], "-a3"),
    ("+a3", ["[2,3,5,6]", "[1,2^2,3^2,4,5]", "[1,2,3,4,5,6]", "[3,4,5]"], "+a3"),
    ("-a4", ["[2]", "[1,2,3,4]", "[3,4,5,6]", "[3,5]"], "-a4"),
    ("+a4", ["[3,4]", "[3,5,6]", "[2,3,5]", "[1,2]"], "+a4"),
    ("-a5", ["[2,3^2,4,5,6]", "[1,2^2,3^3,4,5^2,6]", "[1,2^2,3^2,4,5^2,6]", "[1,2,3,4,5]"], "-a2"),
    ("-a6", ["[6]", "[2,3^2,4,5]", "[1,2,3,5,6]", "[2,3,4,5]", "[1]"], "-a1"),
]


def _signed_simple(rs, token):
    i = int(token[2:])
    return rs.simple(i) if token[0] == "+" else neg_simple(rs, i)


def test_e6_orbits_verbatim():
    sig = sigma_F4()
    rs = sig.rs
    for start, chain, end in E6_ORBITS:
        cur = _signed_simple(rs, start)
        for entry in chain:
            cur = sig(cur)
            assert cur == _e6(entry), (start, entry)
        assert sig(cur) == _signed_simple(rs, end)


D4_ORBITS = [
    ("-a1", [(1, 0, 1, 1), (1, 1, 0, 1)], "-a1"),
    ("-a2", [(1, 1, 1, 1), (0, 1, 0, 1)], "-a2"),
    ("-a3", [(0, 0, 1, 0), (1, 1, 1, 2)], "-a3"),
    ("-a4", [(0, 1, 1, 1), (0, 0, 0, 1), (1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 1), (1, 0, 0, 1)], "-a4"),
]


def test_d4_orbits_verbatim():
    sig = sigma_G2()
    rs = sig.rs
    for start, chain, end in D4_ORBITS:
        cur = _signed_simple(rs, start)
        for entry in chain:
            cur = sig(cur)
            assert cur == entry, (start, entry)
        assert sig(cur) == _signed_simple(rs, end)


# ---------------------------------------------------------------------------
# the two big orbit tables (rank 10 and rank 9), verbatim

TABLE_R10 = {
    1: "[1] [2,3] [4,5] [6,7] [8,9] {11} [9,10] [7,8] [5,6] [3,4] [1,2]",
    2: "[1,3] [2,5] [4,7] [6,9] {8,11} {9,10} [7,10] [5,8] [3,6] [1,4] [2]",
    3: "[3] [1,5] [2,7] [4,9] {6,11} {8,9} {7,10} [5,10] [3,8] [1,6] [2,4]",
    4: "[3,5] [1,7] [2,9] {4,11} {6,9} {7,8} {5,10} [3,10] [1,8] [2,6] [4]",
    5: "[5] [3,7] [1,9] {2,11} {4,9} {6,7} {5,8} {3,10} [1,10] [2,8] [4,6]",
    6: "[5,7] [3,9] {1,11} {2,9} {4,7} {5,6} {3,8} {1,10} [2,10] [4,8] [6]",
    7: "[7] [5,9] {3,11} {1,9} {2,7} {4,5} {3,6} {1,8} {2,10} [4,10] [6,8]",
    8: "[7,9] {5,11} {3,9} {1,7} {2,5} {3,4} {1,6} {2,8} {4,10} [6,10] [8]",
    9: "[9] {7,11} {5,9} {3,7} {1,5} {2,3} {1,4} {2,6} {4,8} {6,10} [8,10]",
}
TABLE_R10_LAST = "{9,11} {7,9} {5,7} {3,5} {1,3} {1,2} {2,4} {4,6} {6,8} {8,10} [10]"

TABLE_R9 = {
    1: "[1,2] [3,4] [5,6] [7,8] {10} [8,9] [6,7] [4,5] [2,3] [1]",
    2: "[2] [1,4] [3,6] [5,8] {7,10} {8,9} [6,9] [4,7] [2,5] [1,3]",
    3: "[2,4] [1,6] [3,8] {5,10} {7,8} {6,9} [4,9] [2,7] [1,5] [3]",
    4: "[4] [2,6] [1,8] {3,10} {5,8} {6,7} {4,9} [2,9] [1,7] [3,5]",
    5: "[4,6] [2,8] {1,10} {3,8} {5,6} {4,7} {2,9} [1,9] [3,7] [5]",
    6: "[6] [4,8] {2,10} {1,8} {3,6} {4,5} {2,7} {1,9} [3,9] [5,7]",
    7: "[6,8] {4,10} {2,8} {1,6} {3,4} {2,5} {1,7} {3,9} [5,9] [7]",
    8: "[8] {6,10} {4,8} {2,6} {1,4} {2,3} {1,5} {3,7} {5,9} [7,9]",
}
TABLE_R9_LAST = "{8,10} {6,8} {4,6} {2,4} {1,2} {1,3} {3,5} {5,7} {7,9} [9]"


def _check_table(rank, rows, last_row):
    plus, _ = d_part_signs_C(rank)
    h_dual = rank + 1
    seen = []
    for i, entries in rows.items():
        cells = entries.split()
        assert len(cells) == h_dual
        if i in plus:
            us = [Fraction(-k) for k in range(1, h_dual + 1)]
        else:
            us = [Fraction(-2 * k + 1, 2) for k in range(1, h_dual + 1)]
        for u, cell in zip(us, cells):
            got = alpha_of("C", rank, i, u)
            assert got == parse_d_symbol(rank, cell), (i, u, cell)
            seen.append(got)
    cells = last_row.split()
    for k, cell in enumerate(cells, start=1):
        u = Fraction(-k)
        i = rank + 1 if k % 2 == 1 else rank
        got = alpha_of("C", rank, i, u)
        assert got == parse_d_symbol(rank, cell), (i, u, cell)
        seen.append(got)
    assert len(seen) == len(set(seen)) == rank * (rank + 1)


def test_orbit_table_rank10():
    _check_table(10, TABLE_R10, TABLE_R10_LAST)


def test_orbit_table_rank9():
    _check_table(9, TABLE_R9, TABLE_R9_LAST)


# ---------------------------------------------------------------------------
# general structure of the composite orbit map for type C

@pytest.mark.parametrize("rank", [4, 6])
def test_corbit_structure_even(rank):
    sig = sigma_C(rank)
    rs = sig.rs
    half = rank // 2
    for i in range(1, rank):
        assert all(rs.is_positive_root(sig(neg_simple(rs, i), power=k)) for k in range(1, half + 1))
        assert sig(neg_simple(rs, i), power=half + 1) == neg_simple(rs, i)
        assert all(rs.is_positive_root(sig(rs.simple(i), power=k)) for k in range(half + 1))
        assert sig(rs.simple(i), power=half + 1) == rs.simple(i)
    assert sig(neg_simple(rs, rank), power=half + 1) == neg_simple(rs, rank + 1)
    assert sig(neg_simple(rs, rank + 1), power=half + 2) == neg_simple(rs, rank)


@pytest.mark.parametrize("rank", [5, 9])
def test_corbit_structure_odd(rank):
    sig = sigma_C(rank)
    rs = sig.rs
    plus, minus = d_part_signs_C(rank)
    for i in plus:
        assert sig(neg_simple(rs, i), power=(rank + 1) // 2) == rs.simple(i)
        assert sig(neg_simple(rs, i), power=rank + 2) == neg_simple(rs, i)
    for i in minus:
        assert sig(neg_simple(rs, i), power=(rank + 3) // 2) == rs.simple(i)
        assert sig(neg_simple(rs, i), power=rank + 2) == neg_simple(rs, i)
    for i in (rank, rank + 1):
        assert sig(neg_simple(rs, i), power=(rank + 3) // 2) == neg_simple(rs, i)


# ---------------------------------------------------------------------------
# bracket notation and the companion-type bijection

@pytest.mark.parametrize("rank", [3, 4, 5])
def test_d_symbol_round_trip(rank):
    rs = RootSystem("D", rank + 1)
    for vec in rs.positive_roots:
        assert parse_d_symbol(rank, format_d_symbol(rank, vec)) == vec


@pytest.mark.parametrize("rank", [3, 4, 5])
def test_rho_bijection(rank):
    rsD = sigma_C(rank).rs
    images = [rho_C(rank, vec) for vec in rsD.positive_roots]
    assert len(set(images)) == len(images)
    assert set(images) == rho_orbit_targets(rank)


def test_rho_special_value():
    # the central brace goes to the middle two-box interval
    r = 4
    vec = parse_d_symbol(r, "{5}")
    assert rho_C(r, vec) == tuple(
        1 if k in (r - 1, r) else 0 for k in range(2 * r + 1)
    )


@pytest.mark.parametrize("rank", [2, 3, 4, 5])
def test_rho_conjugates_sigma_to_coxeter_square(rank):
    assert rho_conjugation_mismatches(rank) == []


# ---------------------------------------------------------------------------
# the alpha table: recurrences and spot values

def test_alpha_covers_positive_roots():
    for family, rank in [("C", 2), ("C", 5), ("F4", 4), ("G2", 2)]:
        dom = alpha_domain(family, rank)
        roots = [alpha_of(family, rank, i, u) for i, u in dom]
        rs = {"C": lambda: sigma_C(rank).rs, "F4": lambda: sigma_F4().rs, "G2": lambda: sigma_G2().rs}[family]()
        assert len(set(roots)) == len(roots)
        assert set(roots) == set(rs.positive_roots)


def test_alpha_spot_values():
    assert alpha_of("G2", 2, 4, -2) == (0, 1, 1, 1)
    assert alpha_of("C", 10, 1, Fraction(-1, 2)) == parse_d_symbol(10, "[1]")
    assert alpha_of("F4", 4, 4, -1) == _e6("[3,4]")


def test_alpha_rejects_outside_domain():
    with pytest.raises(ValueError):
        alpha_of("C", 4, 1, Fraction(-1, 2) if 1 in d_part_signs_C(4)[0] else -1)


def _resolve(family, rank, i, u):
    try:
        return np.array(alpha_of(family, rank, i, u))
    except ValueError:
        return None


@pytest.mark.parametrize("rank", [2, 3, 4, 5])
def test_alpha_recurrences_C(rank):
    h, hd = Fraction(1, 2), rank + 1
    zero = np.zeros(rank + 1, dtype=int)
    checked = 0
    grid = [Fraction(s, 2) for s in range(-2 * hd + 1, 0)]
    for u in grid:
        for i in range(1, rank - 1):
            terms = (
                _resolve("C", rank, i, u - h),
                _resolve("C", rank, i, u + h),
                _resolve("C", rank, i - 1, u) if i > 1 else zero,
                _resolve("C", rank, i + 1, u),
            )
            if any(t is None for t in terms):
                continue
            assert np.array_equal(terms[0] + terms[1], terms[2] + terms[3])
            checked += 1
        lhs = (_resolve("C", rank, rank - 1, u - h), _resolve("C", rank, rank - 1, u + h))
        partner = rank if u % 2 == 0 else rank + 1
        rhs = (
            _resolve("C", rank, rank - 2, u) if rank > 2 else zero,
            _resolve("C", rank, partner, u),
        )
        if all(t is not None for t in lhs + rhs):
            assert np.array_equal(lhs[0] + lhs[1], rhs[0] + rhs[1])
            checked += 1
        if u % 2 in (0, 1):
            i = rank + 1 if u % 2 == 0 else rank  # the circle row away from its slot
            terms = (
                _resolve("C", rank, i, u - 1),
                _resolve("C", rank, i, u + 1),
                _resolve("C", rank, rank - 1, u - h),
                _resolve("C", rank, rank - 1, u + h),
            )
            if all(t is not None for t in terms):
                assert np.array_equal(terms[0] + terms[1], terms[2] + terms[3])
                checked += 1
    assert checked >= rank


# ---------------------------------------------------------------------------
# the exponent-vector identities at level 2

@pytest.mark.parametrize("family,rank", [("C", 2), ("C", 3), ("C", 4), ("C", 5), ("C", 6), ("F4", 4), ("G2", 2)])
def test_tvectors_level2(family, rank):
    run = cached_tropical(family, rank, 2)
    assert tvector_mismatches(run) == []
    if family == "C":
        assert apart_mismatches_C(run) == []


def test_tvectors_require_level2():
    with pytest.raises(ValueError):
        tvector_mismatches(cached_tropical("C", 2, 3))


def test_apart_exceptional_positive_rows():
    # at u = -h_dual/2 (or a half-step later) the thin-row vector is a plain
    # positive simple root: the only positive entries of the whole pattern
    rank = 5
    sig = sigma_C_apart(rank)
    rs = sig.rs
    hd = rank + 1
    plus = [i for i in range(1, rank) if (i + rank) % 2 == 1]
    for i in range(1, rank):
        u = Fraction(-hd, 2) if i in plus else Fraction(-hd, 2) - Fraction(1, 2)
        power = int(-u) if i in plus else int(Fraction(1, 2) - u)
        tvec = tuple(-c for c in sig(neg_simple(rs, i), power=power))
        assert tvec == rs.simple(rank - i)
