"""Coefficient and cluster dynamics over positive reals along the schedule.

A run carries a cluster tuple x and (in tracked mode) a coefficient tuple
y through the mutation schedule, records the full tuples at every grid
time, and exposes the labelled values via the grid bijections.  Residual
checks then certify the recursion relations and the periodicity claims
on those labelled values; they are initialization-free in the sense that
any positive starting data must satisfy them.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .builders import cartan_data, model
from .gfun import g_factors, transpose_factors
from .schedule import label_g, label_g_prime, parity_plus, run_schedule


class NumericSeedPayload:
    """Seed payload (x, y) mutated by the exchange rules.

    tracked=False drops the coefficients: x then follows the plain
    two-monomial exchange (the coefficient-free cluster dynamics).
    """

    def __init__(self, x, y=None, tracked=True):
        self.x = None if x is None else np.array(x, dtype=float)
        self.y = None if y is None else np.array(y, dtype=float)
        self.tracked = tracked

    def copy(self):
        return NumericSeedPayload(self.x, self.y, self.tracked)

    def mutate(self, k, B):
        if self.x is not None:
            col = B[:, k]
            mon_in = float(np.prod(self.x[col > 0]))
            mon_out = float(np.prod(self.x[col < 0]))
            if self.tracked:
                yk = self.y[k]
                self.x[k] = (yk * mon_in + mon_out) / ((1.0 + yk) * self.x[k])
            else:
                self.x[k] = (mon_in + mon_out) / self.x[k]
        if self.y is not None:
            row = B[k, :]
            yk = self.y[k]
            self.y *= yk ** np.maximum(row, 0) * (1.0 + yk) ** (-row)
            self.y[k] = 1.0 / yk
        if self.x is not None and not np.all(np.isfinite(self.x)):
            raise FloatingPointError("cluster value left the representable range")

    def snapshot(self):
        return (
            None if self.x is None else self.x.copy(),
            None if self.y is None else self.y.copy(),
        )


class NumericRun:
    """Labelled values of one schedule run over a window around one period."""

    def __init__(self, family, rank, level, seed=0, tracked=True, margin_units=3):
        self.model = model(family, rank, level)
        cd = self.model.cartan
        self.t = cd["t"]
        self.full_s = 2 * (cd["h_dual"] + level) * self.t
        lo_s = -margin_units * self.t
        hi_s = self.full_s + (2 + margin_units) * self.t
        rng = np.random.default_rng(seed)
        x0 = rng.uniform(0.5, 2.0, self.model.n)
        y0 = rng.uniform(0.5, 2.0, self.model.n) if tracked else None
        self.tracked = tracked
        payload = NumericSeedPayload(x0, y0, tracked)
        self.snaps = run_schedule(self.model, lo_s, hi_s, payload)
        self.lo_s, self.hi_s = lo_s, hi_s

    @property
    def spec(self):
        return self.model.spec

    def X(self, a, m, s_w):
        """Labelled cluster value at grid point (a, m, w = s_w/t); boundary 1."""
        if a == 0 or m == 0:
            return 1.0
        if m == self.model.cartan["t_a"][a] * self.model.spec.level:
            return 1.0
        v, s = label_g(self.model, a, m, s_w)
        return float(self.snaps[s][0][v])

    def Y(self, a, m, s):
        v, s2 = label_g_prime(self.model, a, m, s)
        return float(self.snaps[s2][1][v])

    # -- relation residuals -------------------------------------------------

    def _relation_centers(self, prime, s_lo, s_hi):
        fam, rank = self.spec.family, self.spec.rank
        cd = self.model.cartan
        for s in range(s_lo, s_hi):
            for a in range(1, rank + 1):
                for m in range(1, cd["t_a"][a] * self.spec.level):
                    if parity_plus(fam, rank, a, m, s, prime=prime):
                        yield a, m, s

    def t_residuals(self):
        """Relative residuals of the cluster-variable recursion at all P'+
        centers inside one period (coefficient-free in untracked mode)."""
        fam, rank, lev = self.spec.family, self.spec.rank, self.spec.level
        cd = self.model.cartan
        out = []
        for a, m, s in self._relation_centers(True, 0, self.full_s):
            dt = self.t // cd["t_a"][a]
            lhs = self.X(a, m, s - dt) * self.X(a, m, s + dt)
            adj = self.X(a, m - 1, s) * self.X(a, m + 1, s)
            mon = 1.0
            for b, k, dv in g_factors(fam, rank, lev, a, m):
                mon *= self.X(b, k, s + int(dv * self.t))
            if self.tracked:
                yk = self.Y(a, m, s)
                rhs = (yk * mon + adj) / (1.0 + yk)
            else:
                rhs = adj + mon
            out.append(abs(lhs - rhs) / max(abs(lhs), abs(rhs)))
        return np.array(out)

    def y_residuals(self):
        """Relative residuals of the coefficient recursion at all P+ centers."""
        if not self.tracked:
            raise ValueError("coefficient residuals need a tracked run")
        fam, rank, lev = self.spec.family, self.spec.rank, self.spec.level
        cd = self.model.cartan
        out = []
        for a, m, s in self._relation_centers(False, 0, self.full_s):
            dt = self.t // cd["t_a"][a]
            lhs = self.Y(a, m, s - dt) * self.Y(a, m, s + dt)
            num = 1.0
            for b, k, dv in transpose_factors(fam, rank, lev, a, m):
                num *= 1.0 + self.Y(b, k, s + int(dv * self.t))
            den = 1.0
            top = cd["t_a"][a] * lev
            if m - 1 >= 1:
                den *= 1.0 + 1.0 / self.Y(a, m - 1, s)
            if m + 1 <= top - 1:
                den *= 1.0 + 1.0 / self.Y(a, m + 1, s)
            rhs = num / den
            out.append(abs(lhs - rhs) / max(abs(lhs), abs(rhs)))
        return np.array(out)

    # -- periodicity ----------------------------------------------------------

    def t_periodicity_errors(self):
        """Relative half/full periodicity errors of the labelled T values.

        The half statement is checked as T_{top-m}(u + half) = T_m(u); the
        row flip compensates the parity-class swap of the half shift, so
        both ends carry labels of the realized parity class.
        """
        cd = self.model.cartan
        half = self.full_s // 2
        errs = []
        for a, m, s in self._relation_centers(False, 0, 2 * self.t):
            base = self.X(a, m, s)
            top = cd["t_a"][a] * self.spec.level
            errs.append(abs(self.X(a, m, s + self.full_s) - base) / abs(base))
            errs.append(abs(self.X(a, top - m, s + half) - base) / abs(base))
        return np.array(errs)

    def y_periodicity_errors(self):
        cd = self.model.cartan
        half = self.full_s // 2
        errs = []
        for a, m, s in self._relation_centers(True, 0, 2 * self.t):
            base = self.Y(a, m, s)
            top = cd["t_a"][a] * self.spec.level
            errs.append(abs(self.Y(a, m, s + self.full_s) - base) / abs(base))
            errs.append(abs(self.Y(a, top - m, s + half) - base) / abs(base))
        return np.array(errs)

    def labelled_coefficients(self, s_lo, s_hi):
        """(a, m, s, y) over the P'+ grid points in the window."""
        for a, m, s in self._relation_centers(True, s_lo, s_hi):
            yield a, m, s, self.Y(a, m, s)


def run_numeric(family, rank, level, seed=0, tracked=True):
    return NumericRun(family, rank, level, seed=seed, tracked=tracked)


def positivity_violations(run):
    """Times at which any cluster or coefficient entry fails to be positive."""
    bad = []
    for s, (x, y) in run.snaps.items():
        if x is not None and not (x > 0).all():
            bad.append(("x", s))
        if y is not None and not (y > 0).all():
            bad.append(("y", s))
    return bad


# -- tropical shadow -----------------------------------------------------------


class _LogCoefficientPayload:
    """Coefficient dynamics in log space (overflow-free)."""

    def __init__(self, logy):
        self.logy = np.array(logy, dtype=float)

    def copy(self):
        return _LogCoefficientPayload(self.logy)

    def mutate(self, k, B):
        row = B[k, :]
        lk = self.logy[k]
        self.logy += np.maximum(row, 0) * lk - row * np.logaddexp(0.0, lk)
        self.logy[k] = -lk

    def snapshot(self):
        return self.logy.copy()


def tropical_shadow_mismatches(family, rank, level, seed=0, n_points=20, eps=1e-12):
    """Compare tropical exponents against small-parameter numeric slopes.

    Coefficients are started at y_v = eps**(e_v) for a random integer
    direction e; after running the schedule, log(y_i(u)) / log(eps) must
    approach the pairing of the tropical exponent vector with e.
    """
    from .tropical import TropicalRun

    trop = TropicalRun(family, rank, level)
    mdl = trop.model
    rng = np.random.default_rng(seed)
    e = rng.integers(1, 4, mdl.n)
    logy0 = e * np.log(eps)
    t = trop.t
    snaps = run_schedule(mdl, -2 * t, 2 * t, _LogCoefficientPayload(logy0))
    points = list(trop.p_plus_points(-2 * t, 2 * t))
    rng.shuffle(points)
    bad = []
    for v, s in points[:n_points]:
        slope = snaps[s][v] / np.log(eps)
        want = int(trop.monomial(v, s) @ e)
        if abs(slope - want) > 0.3:
            bad.append((mdl.position(v), Fraction(s, t), slope, want))
    return bad


class _TrivialSemifieldPayload(NumericSeedPayload):
    """The tracked exchange rule evaluated in the one-element semifield,
    where every coefficient is 1 and 1 (+) 1 = 1."""

    def __init__(self, x):
        super().__init__(x, np.ones(len(x)), tracked=True)

    def copy(self):
        return _TrivialSemifieldPayload(self.x)

    def mutate(self, k, B):
        col = B[:, k]
        mon_in = float(np.prod(self.x[col > 0]))
        mon_out = float(np.prod(self.x[col < 0]))
        # y_k = 1 and (y_k (+) 1) = 1, so both exchange terms keep weight 1;
        # the coefficient tuple itself never moves.
        self.x[k] = (1.0 * mon_in + mon_out) / (1.0 * self.x[k])


def trivial_matches_projected(family, rank, level, seed=0, tol=1e-12):
    """The coefficient-free mode agrees with the tracked exchange rule
    projected to the trivial semifield, value for value."""
    mdl = model(family, rank, level)
    rng = np.random.default_rng(seed)
    x0 = rng.uniform(0.5, 2.0, mdl.n)
    t = cartan_data(family, rank)["t"]
    plain = run_schedule(mdl, -2 * t, 2 * t, NumericSeedPayload(x0, None, tracked=False))
    projected = run_schedule(mdl, -2 * t, 2 * t, _TrivialSemifieldPayload(x0))
    worst = 0.0
    for s in plain:
        worst = max(worst, float(np.max(np.abs(plain[s][0] - projected[s][0]))))
    return worst <= tol
