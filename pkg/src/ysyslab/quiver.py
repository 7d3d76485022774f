"""Exact quivers as skew-symmetric integer matrices, with mutation,
isomorphism testing, and vertex-permutation actions.

Every quiver handled here has entries in {-1, 0, 1} (no multiple arrows,
no loops).  The arrow convention is fixed globally:

    i --> j   <=>   B[i, j] = 1
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import permutations

import numpy as np

FILL_CIRCLE = "circle"
FILL_BULLET = "bullet"


@dataclass(frozen=True)
class Vertex:
    """Vertex bookkeeping: grid position plus figure decorations.

    col/row are the 1-based column and row indices of the defining figure;
    fill is "circle" or "bullet"; tag is a sign "+"/"-" or one of the

    region labels "I".."VI" (empty string when the vertex carries none).
    """

    col: int
    row: int
    fill: str = FILL_BULLET
    tag: str = ""


class Quiver:
    """Immutable quiver on n vertices with exchange matrix B.

    strict quivers (the default, and everything the builders produce)
    additionally assert entries in {-1,0,1}; free mutation-class search
    relaxes that bound, since general mutation creates multiple arrows.
    """

    def __init__(self, B, meta=None, strict=True):
        B = np.asarray(B, dtype=np.int64)
        if B.ndim != 2 or B.shape[0] != B.shape[1]:
            raise ValueError("B must be a square matrix")
        self.n = B.shape[0]
        self.B = B
        self.B.setflags(write=False)
        self.strict = strict
        if meta is None:
            meta = tuple(Vertex(0, k + 1) for k in range(self.n))
        self.meta = tuple(meta)
        if len(self.meta) != self.n:
            raise ValueError("meta length must equal vertex count")
        if not np.array_equal(self.B, -self.B.T):
            raise ValueError("B is not skew-symmetric")
        if strict and np.abs(self.B).max(initial=0) > 1:
            raise ValueError("entries outside {-1,0,1}")

    def relaxed(self):
        return Quiver(self.B, self.meta, strict=False)

    # -- basic queries ----------------------------------------------------

    def arrows(self):
        """List of (i, j) with an arrow i -> j."""
        src, dst = np.nonzero(self.B > 0)
        return list(zip(src.tolist(), dst.tolist()))

    def adjacent(self, i, j):
        return self.B[i, j] != 0

    def __eq__(self, other):
        return isinstance(other, Quiver) and np.array_equal(self.B, other.B)

    def __hash__(self):
        return hash(self.B.tobytes())

    # -- mutation ----------------------------------------------------------

    def mutate(self, k):
        """Fomin-Zelevinsky matrix mutation at vertex k.

        B'_ij = -B_ij if i == k or j == k, otherwise
        B'_ij = B_ij + sgn(B_ik) * max(B_ik * B_kj, 0).
        """
        if not 0 <= k < self.n:
            raise IndexError(f"vertex {k} out of range for n={self.n}")
        B = self.B
        col = B[:, k]
        row = B[k, :]
        Bp = B + np.sign(col)[:, None] * np.maximum(np.outer(col, row), 0)
        Bp[k, :] = -B[k, :]
        Bp[:, k] = -B[:, k]
        return Quiver(Bp, self.meta, strict=self.strict)

    def composite_mutate(self, vertices):
        """Mutate simultaneously at a pairwise disconnected vertex set.

        The vertices must be pairwise non-adjacent, so the order of the
        individual mutations is immaterial; this is asserted.
        """
        vs = list(vertices)
        for a in range(len(vs)):
            for b in range(a + 1, len(vs)):
                if self.adjacent(vs[a], vs[b]):
                    raise ValueError(
                        f"composite mutation set contains adjacent vertices "
                        f"{vs[a]} and {vs[b]}"
                    )
        Q = self
        for k in vs:
            Q = Q.mutate(k)
        return Q

    # -- symmetry actions --------------------------------------------------

    def opposite(self):
        return Quiver(-self.B, self.meta, strict=self.strict)

    def apply_perm(self, perm):
        """Relabel vertices by the bijection perm: B'[p(i), p(j)] = B[i, j]."""
        p = np.asarray(list(perm), dtype=np.int64)
        if sorted(p.tolist()) != list(range(self.n)):
            raise ValueError("perm is not a bijection on vertex indices")
        Bp = np.zeros_like(self.B)
        Bp[np.ix_(p, p)] = self.B
        meta = [None] * self.n
        for i in range(self.n):
            meta[p[i]] = self.meta[i]
        return Quiver(Bp, meta, strict=self.strict)

    # -- serialization -----------------------------------------------------

    def to_json(self):
        return json.dumps(
            {
                "n": self.n,
                "edges": self.arrows(),
                "meta": [
                    {"col": v.col, "row": v.row, "fill": v.fill, "tag": v.tag}
                    for v in self.meta
                ],
            }
        )

    @classmethod
    def from_json(cls, text):
        data = json.loads(text)
        n = data["n"]
        B = np.zeros((n, n), dtype=np.int64)
        for i, j in data["edges"]:
            B[i, j] = 1
            B[j, i] = -1
        meta = [Vertex(m["col"], m["row"], m["fill"], m["tag"]) for m in data["meta"]]
        return cls(B, meta)


def compose_perms(p, q):
    """Composition acting as i -> p[q[i]]."""
    return tuple(p[q[i]] for i in range(len(q)))


def invert_perm(p):
    inv = [0] * len(p)
    for i, pi in enumerate(p):
        inv[pi] = i
    return tuple(inv)


def _refine_colors(B, colors):
    """Iterative color refinement on the directed {-1,0,1} graph."""
    n = B.shape[0]
    while True:
        sigs = []
        for i in range(n):
            out_sig = sorted((colors[j], int(B[i, j])) for j in range(n) if B[i, j])
            sigs.append((colors[i], tuple(out_sig)))
        order = sorted(set(sigs))
        lookup = {s: c for c, s in enumerate(order)}
        new = [lookup[s] for s in sigs]
        if new == colors:
            return colors
        colors = new


def find_isomorphism(Q1, Q2):
    """Permutation p with Q1.apply_perm(p) == Q2, or None.

    Backtracking over refinement color classes; intended for the n <= 40
    quivers this project builds.
    """
    if Q1.n != Q2.n:
        return None
    n = Q1.n
    B1, B2 = Q1.B, Q2.B
    c1 = _refine_colors(B1, [0] * n)
    c2 = _refine_colors(B2, [0] * n)
    if sorted(c1) != sorted(c2):
        return None

    # Map vertices of Q1 in order of ascending color-class size.
    class_size = {c: c1.count(c) for c in set(c1)}
    order = sorted(range(n), key=lambda i: (class_size[c1[i]], c1[i], i))
    candidates = [[j for j in range(n) if c2[j] == c1[i]] for i in order]

    assignment = [-1] * n  # Q1 vertex -> Q2 vertex
    used = [False] * n

    def place(pos):
        if pos == n:
            return True
        i = order[pos]
        for j in candidates[pos]:
            if used[j]:
                continue
            ok = True
            for qpos in range(pos):
                i2 = order[qpos]
                j2 = assignment[i2]
                if B1[i, i2] != B2[j, j2] or B1[i2, i] != B2[j2, j]:
                    ok = False
                    break
            if ok:
                assignment[i] = j
                used[j] = True
                if place(pos + 1):
                    return True
                assignment[i] = -1
                used[j] = False
        return False

    if not place(0):
        return None
    return tuple(assignment)


def exhaustive_isomorphism(Q1, Q2):
    """Brute-force isomorphism search; oracle for find_isomorphism tests."""
    if Q1.n != Q2.n:
        return None
    for p in permutations(range(Q1.n)):
        if Q1.apply_perm(p) == Q2:
            return p
    return None
