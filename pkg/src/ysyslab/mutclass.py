"""Mutation-equivalence certification by bidirectional search.

Quivers are deduplicated up to isomorphism through a canonical key
(iterative color refinement plus individualization backtracking on the
directed {-1,0,1} graph).  The search itself is a bidirectional BFS over
mutation classes; a returned path replays from the left quiver to an
isomorphic copy of the right one, and the final isomorphism is recomputed
independently, so spurious key collisions cannot produce a false result.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

from .quiver import Quiver, find_isomorphism, invert_perm

SIZE_CAP = 24


def _refine(B, colors):
    n = len(colors)
    nbrs = [np.nonzero(B[i])[0] for i in range(n)]
    while True:
        sigs = [
            (colors[i], tuple(sorted((colors[j], int(B[i, j])) for j in nbrs[i])))
            for i in range(n)
        ]
        lookup = {s: c for c, s in enumerate(sorted(set(sigs)))}
        new = [lookup[s] for s in sigs]
        if new == colors:
            return colors
        colors = new


def canonical_key(Q):
    """Permutation-invariant byte encoding of a quiver (n <= 24)."""
    n = Q.n
    if n > SIZE_CAP:
        raise ValueError(f"canonical_key supports at most {SIZE_CAP} vertices")
    B = Q.B
    best = None

    def encode(colors):
        order = np.array(sorted(range(n), key=lambda v: colors[v]))
        return B[np.ix_(order, order)].astype(np.int16).tobytes()

    def search(colors):
        nonlocal best
        cells = {}
        for v, c in enumerate(colors):
            cells.setdefault(c, []).append(v)
        # the branch cell must be chosen isomorphism-invariantly: refinement
        # color values are canonical, so (size, color) is a safe key
        branch = min(
            (vs for vs in cells.values() if len(vs) > 1),
            key=lambda vs: (len(vs), colors[vs[0]]),
            default=None,
        )
        if branch is None:
            key = encode(colors)
            if best is None or key < best:
                best = key
            return
        fresh = max(colors) + 1
        for v in branch:
            child = list(colors)
            child[v] = fresh
            search(_refine(B, child))

    search(_refine(B, [0] * n))
    return best


@dataclass
class MutationPath:
    """A replayable vertex sequence from start to (an isomorph of) a target."""

    start: Quiver
    moves: tuple

    def replay(self):
        Q = self.start.relaxed()
        for k in self.moves:
            Q = Q.mutate(k)
        return Q


def search_equivalence(Q1, Q2, depth_cap=12, node_cap=10**6):
    """Bidirectional BFS for a mutation path from Q1 to an isomorph of Q2.

    Returns (MutationPath, isomorphism) or None when the caps are exhausted
    (which proves nothing: the search cannot certify inequivalence).
    """
    if Q1.n != Q2.n:
        return None
    Q1r, Q2r = Q1.relaxed(), Q2.relaxed()
    key1, key2 = canonical_key(Q1r), canonical_key(Q2r)

    # store per side: key -> (representative, parent key, vertex mutated)
    sides = [
        {key1: (Q1r, None, None)},
        {key2: (Q2r, None, None)},
    ]
    frontiers = [deque([key1]), deque([key2])]
    depths = [0, 0]
    nodes = 2

    def path_to_root(side, key):
        moves = []
        while True:
            _, parent, k = sides[side][key]
            if parent is None:
                return list(reversed(moves))
            moves.append(k)
            key = parent

    def stitch(meet_key):
        pa = path_to_root(0, meet_key)
        pb = path_to_root(1, meet_key)
        Ma = sides[0][meet_key][0]
        Mb = sides[1][meet_key][0]
        sigma = find_isomorphism(Ma, Mb)
        if sigma is None:  # key collision; treat the meet as spurious
            return None
        inv = invert_perm(sigma)
        moves = tuple(pa) + tuple(inv[k] for k in reversed(pb))
        path = MutationPath(Q1, moves)
        iso = find_isomorphism(path.replay(), Q2)
        if iso is None:
            return None
        return path, iso

    if key1 == key2:
        result = stitch(key1)
        if result is not None:
            return result

    while any(frontiers):
        side = 0 if (frontiers[0] and (not frontiers[1] or len(frontiers[0]) <= len(frontiers[1]))) else 1
        if depths[side] >= depth_cap:
            if depths[1 - side] >= depth_cap or not frontiers[1 - side]:
                return None
            side = 1 - side
        depths[side] += 1
        nxt = deque()
        while frontiers[side]:
            key = frontiers[side].popleft()
            rep = sides[side][key][0]
            for k in range(rep.n):
                child = rep.mutate(k)
                ckey = canonical_key(child)
                if ckey in sides[side]:
                    continue
                sides[side][ckey] = (child, key, k)
                nodes += 1
                if ckey in sides[1 - side]:
                    result = stitch(ckey)
                    if result is not None:
                        return result
                if nodes > node_cap:
                    return None
                nxt.append(ckey)
        frontiers[side] = nxt
    return None
