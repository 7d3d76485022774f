"""Time-indexed mutation schedules, parity bookkeeping, and label bijections.

Time u runs over (1/t)*Z and is stored as the exact scaled integer s = t*u.
One period of the quiver sequence is two time units, i.e. 2t steps:

* types C/F4 (t=2): the four-step cycle
      mu_bullet+ mu_circle+ | mu_bullet- | mu_bullet+ mu_circle- | mu_bullet-
  after which the quiver returns to itself, passing through its opposite
  and its left-right reflection on the way;
* type G2 (t=3): the six-step cycle that pairs mu_bullet+/- with the
  circle regions I..VI, passing through column-permuted (and opposite)
  copies of the quiver.

The expected quiver at every intermediate step is asserted during a run;
a failure means a transcription or sign-convention fault in the builders.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .builders import ROMAN, involutions
from .quiver import FILL_BULLET, FILL_CIRCLE


@dataclass(frozen=True)
class GridPoint:
    """Triple (a, m, u) with u = s/t kept as an exact scaled integer."""

    a: int
    m: int
    s: int
    t: int

    @property
    def u(self):
        return Fraction(self.s, self.t)


# -- parity conditions on grid triplets --------------------------------------


def parity_plus(family, rank, a, m, s, prime=False):
    """Membership of (a, m, u=s/t) in the forward parity class (P+ or P'+)."""
    if family == "C":
        if a == rank:
            return s % 2 == 0
        odd = (rank + a + m + s) % 2 == 1
        return odd if not prime else not odd
    if family == "F4":
        if a in (1, 2):
            return s % 2 == 0
        odd = (a + m + s) % 2 == 1
        return odd if not prime else not odd
    if family == "G2":
        even = (a + m + s) % 2 == 0
        return even if not prime else not even
    raise ValueError(f"unknown family {family!r}")


def vertex_parity(model, v, s):
    """Forward/backward mutation membership of (vertex, time s/t).

    Returns "p+" when the vertex is mutated by the step leaving time s,
    "p-" when it was mutated by the step arriving there, and None when the
    schedule never touches it at that time.
    """
    t = model.cartan["t"]
    sets = slot_sets(model)
    if v in sets[s % (2 * t)]:
        return "p+"
    if v in sets[(s - 1) % (2 * t)]:
        return "p-"
    return None


def grid_points(family, rank, level, s_lo, s_hi, prime=False):
    """All (a, m, s) in the given class with s_lo <= s < s_hi."""
    from .builders import cartan_data

    cd = cartan_data(family, rank)
    out = []
    for s in range(s_lo, s_hi):
        for a in range(1, rank + 1):
            for m in range(1, cd["t_a"][a] * level):
                if parity_plus(family, rank, a, m, s, prime=prime):
                    out.append((a, m, s))
    return out


# -- mutation slots ------------------------------------------------------------


def slot_sets(model):
    """Vertex sets mutated at each of the 2t schedule slots."""
    q = model.quiver
    fam = model.spec.family
    bullets_plus = [v for v in range(q.n) if q.meta[v].fill == FILL_BULLET and q.meta[v].tag == "+"]
    bullets_minus = [v for v in range(q.n) if q.meta[v].fill == FILL_BULLET and q.meta[v].tag == "-"]
    if fam in ("C", "F4"):
        circ_plus = [v for v in range(q.n) if q.meta[v].fill == FILL_CIRCLE and q.meta[v].tag == "+"]
        circ_minus = [v for v in range(q.n) if q.meta[v].fill == FILL_CIRCLE and q.meta[v].tag == "-"]
        return [
            tuple(sorted(circ_plus + bullets_plus)),
            tuple(bullets_minus),
            tuple(sorted(circ_minus + bullets_plus)),
            tuple(bullets_minus),
        ]
    if fam == "G2":
        sets = []
        for k, tag in enumerate(ROMAN):
            circ = [v for v in range(q.n) if q.meta[v].tag == tag]
            sets.append(tuple(sorted(circ + (bullets_plus if k % 2 == 0 else bullets_minus))))
        return sets
    raise ValueError(f"no schedule for family {fam!r}")


def expected_quivers(model):
    """Expected exchange matrix at each slot, relative to the initial quiver."""
    B0 = model.quiver.B
    invs = involutions(model)

    def permuted(perm):
        Bp = np.zeros_like(B0)
        p = np.asarray(perm)
        Bp[np.ix_(p, p)] = B0
        return Bp

    if model.spec.family in ("C", "F4"):
        rB = permuted(invs["r"])
        return [B0, -B0, rB, -rB]
    # G2: the six-step cycle alternates opposite copies with column 3-cycles.
    nu = {name: permuted(invs[name]) for name in ("nu_132", "nu_213", "nu_321", "nu_231", "nu_312")}
    return [B0, -nu["nu_132"], nu["nu_312"], -nu["nu_321"], nu["nu_231"], -nu["nu_213"]]


def expected_transform_names(family):
    if family in ("C", "F4"):
        return [("id", False), ("id", True), ("r", False), ("r", True)]
    return [
        ("id", False),
        ("nu_132", True),
        ("nu_312", False),
        ("nu_321", True),
        ("nu_231", False),
        ("nu_213", True),
    ]


@dataclass(frozen=True)
class ScheduleStep:
    u_from: Fraction
    u_to: Fraction
    vertices: tuple
    expected_perm: str
    expected_op: bool


def schedule_steps(model, u_from, u_to):
    """The composite-mutation steps covering [u_from, u_to]."""
    t = model.cartan["t"]
    s_from, s_to = Fraction(u_from) * t, Fraction(u_to) * t
    if s_from.denominator != 1 or s_to.denominator != 1:
        raise ValueError("schedule endpoints must be multiples of 1/t")
    sets = slot_sets(model)
    names = expected_transform_names(model.spec.family)
    steps = []
    for s in range(int(s_from), int(s_to)):
        slot_next = (s + 1) % (2 * t)
        perm, op = names[slot_next]
        steps.append(
            ScheduleStep(
                Fraction(s, t),
                Fraction(s + 1, t),
                tuple(model.position(v) for v in sets[s % (2 * t)]),
                perm,
                op,
            )
        )
    return steps


# -- label bijections ---------------------------------------------------------


def _c_column(rank, m, u_int):
    return rank + 1 if (m + u_int) % 2 == 0 else rank


def label_g_prime(model, a, m, s):
    """Coefficient label: grid point (a, m, u=s/t) in P'+ -> (vertex, s)."""
    fam, rank = model.spec.family, model.spec.rank
    t = model.cartan["t"]
    if not parity_plus(fam, rank, a, m, s, prime=True):
        raise ValueError(f"({a},{m},{s}/{t}) violates the P'+ parity condition")
    if fam == "C":
        col = a if a != rank else _c_column(rank, m, s // 2)
    elif fam == "F4":
        if a in (1, 2):
            col = a if (a + m + s // 2) % 2 == 0 else 7 - a
        else:
            col = a
    else:  # G2
        if a == 1:
            col = {0: 1, 4: 2, 2: 3}[(3 * m + s) % 6]
        else:
            col = 4
    return model.vid(col, m), s


def label_g(model, a, m, s_w):
    """Cluster-variable label: (a, m, w=s_w/t) in P+ -> (vertex, s_w + t/t_a)."""
    fam, rank = model.spec.family, model.spec.rank
    t = model.cartan["t"]
    if not parity_plus(fam, rank, a, m, s_w, prime=False):
        raise ValueError(f"({a},{m},{s_w}/{t}) violates the P+ parity condition")
    s = s_w + t // model.cartan["t_a"][a]
    if fam == "C":
        col = a if a != rank else _c_column(rank, m, s // 2)
    elif fam == "F4":
        if a in (1, 2):
            col = a if (a + m + s // 2) % 2 == 0 else 7 - a
        else:
            col = a
    else:
        if a == 1:
            col = {0: 1, 4: 2, 2: 3}[(3 * m + s) % 6]
        else:
            col = 4
    return model.vid(col, m), s


# -- the runner ----------------------------------------------------------------


class ScheduleError(AssertionError):
    """A step produced a quiver different from the expected transform."""


def run_schedule(model, s_lo, s_hi, payload=None, check_quiver=True, record=None):
    """Drive the seed from time 0 forward to s_hi and backward to s_lo.

    payload, when given, must provide copy() and mutate(k, B) and is carried
    along; record(s, payload) is called at every visited grid time.  Returns
    the dict of recorded values when record is None (snapshot per time).
    """
    t = model.cartan["t"]
    sets = slot_sets(model)
    expected = expected_quivers(model) if check_quiver else None
    snapshots = {}

    def emit(s, pl):
        if record is not None:
            record(s, pl)
        elif pl is not None:
            snapshots[s] = pl.snapshot()

    def advance(Q, pl, s, direction):
        if direction > 0:
            slot = s % (2 * t)
            s_next = s + 1
        else:
            s_next = s - 1
            slot = s_next % (2 * t)
        for k in sets[slot]:
            if pl is not None:
                pl.mutate(k, Q.B)
            Q = Q.mutate(k)
        if expected is not None and not np.array_equal(Q.B, expected[s_next % (2 * t)]):
            raise ScheduleError(
                f"quiver mismatch after step to u={Fraction(s_next, t)} "
                f"(family {model.spec.family}, rank {model.spec.rank}, "
                f"level {model.spec.level})"
            )
        return Q, s_next

    pl = payload.copy() if payload is not None else None
    emit(0, pl)
    Q, s = model.quiver, 0
    while s < s_hi:
        Q, s = advance(Q, pl, s, +1)
        emit(s, pl)
    pl = payload.copy() if payload is not None else None
    Q, s = model.quiver, 0
    while s > s_lo:
        Q, s = advance(Q, pl, s, -1)
        emit(s, pl)
    return snapshots
