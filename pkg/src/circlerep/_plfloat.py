"""Fast certified sign test for PL lifts, in floating point.

Decides the sign of G(x) = F^q(x) - x - p.  Each float step of F is pushed
down (or up) by a margin that dominates its rounding error, so computed
orbits are true lower and upper bounds of F^j(x).  Since F is increasing,
on a cell [a, b]

    L_q(a) - b - p  <=  G  <=  U_q(b) - a - p.

All cells positive (negative) certifies the sign; a cell that is surely
positive together with one that is surely negative certifies a zero.
Undecided cells are subdivided a few times.

A second test needs no cells at all.  G is piecewise linear and its
breakpoints are the points F^-j(b), 0 <= j < q, for breakpoints b of F;
there G = F^(q-j)(b) - F^-j(b) - p, so forward and backward orbit bounds
of the breakpoints of F decide the sign.  If neither test settles the
question the caller falls back to exact arithmetic.
"""

import numpy as np

EPS = np.finfo(float).eps
GRID = 256
SPLIT = 16
ROUNDS = 6
MAX_CELLS = 4096
MAX_Q = 1 << 16


class FloatSign:
    def __init__(self, f, inverse=None):
        self.inverse = inverse
        self._inv = None
        self._orbit = None
        self.breaks = np.array([float(x) for x in f.xs])
        xs = [float(x) for x in f.xs]
        ys = [float(y) for y in f.ys]
        self.X = np.array(xs + [xs[0] + 1.0])
        self.Y = np.array(ys + [ys[0] + 1.0])
        self.S = np.diff(self.Y) / np.diff(self.X)
        # piece i is y = C[i] + S[i] x; inner breakpoints select the piece
        self.C = self.Y[:-1] - self.S * self.X[:-1]
        self.inner = self.X[1:-1]
        self.x0 = xs[0]
        smax = float(self.S.max())
        yabs = max(abs(y) for y in ys) + float(np.abs(self.C).max()) + 2.0 * smax + 2.0
        # generous bound on the rounding error of one evaluation
        self.margin = 64 * EPS * (1.0 + smax) * yabs
        self.grid = np.arange(GRID + 1) / GRID
        self.states = {}

    def _run(self, ints, frac, shift, steps):
        inner, S, C, x0 = self.inner, self.S, self.C, self.x0
        for _ in range(steps):
            m = np.floor(frac - x0)
            u = frac - m
            i = np.searchsorted(inner, u, side="right")
            y = C[i] + S[i] * u + m + shift
            c = np.floor(y)
            ints += c
            frac = y - c
        return ints, frac

    def _start(self, lower_at, upper_at):
        n, m = len(lower_at), len(upper_at)
        ints = np.zeros(n + m)
        frac = np.concatenate([lower_at, upper_at])
        shift = np.concatenate([np.full(n, -self.margin), np.full(m, self.margin)])
        return ints, frac, shift

    def _grid_bounds(self, q):
        """Lower and upper bounds of F^q on the base grid (cached, incremental)."""
        if q in self.states:
            return self.states[q]
        done = [j for j in self.states if j < q]
        ints, frac, shift = self._start(self.grid, self.grid)
        j = 0
        if done:
            j = max(done)
            ints, frac = (a.copy() for a in self.states[j])
        ints, frac = self._run(ints, frac, shift, q - j)
        self.states[q] = (ints, frac)
        return ints, frac

    def breakpoint_orbit(self, steps):
        """Bounds of F^m(b), m = 0..steps, for the breakpoints b (cached, extended on demand).

        Returns arrays (ints, frac) of shape (steps + 1, 2n): lower bounds
        then upper bounds.
        """
        if self._orbit is None:
            b = self.breaks
            ints, frac, shift = self._start(np.nextafter(b, -np.inf), np.nextafter(b, np.inf))
            self._orbit = ([ints.copy()], [frac.copy()], shift)
        rows_i, rows_f, shift = self._orbit
        while len(rows_i) <= steps:
            ints, frac = self._run(rows_i[-1].copy(), rows_f[-1], shift, 1)
            rows_i.append(ints)
            rows_f.append(frac)
        return np.array(rows_i[:steps + 1]), np.array(rows_f[:steps + 1])

    def sign_breakpoints(self, p, q):
        """Sign from the breakpoints of F^q; needs the inverse map."""
        if self.inverse is None or q > MAX_Q:
            return None
        if self._inv is None:
            self._inv = FloatSign(self.inverse)
            # backward orbits start at the breakpoints of F, not of F^-1
            self._inv.breaks = self.breaks
        n = len(self.breaks)
        fi, ff = self.breakpoint_orbit(q)
        bi, bf = self._inv.breakpoint_orbit(q - 1)
        # row j pairs F^-j(b) with F^(q-j)(b)
        zi, zf = fi[q:0:-1], ff[q:0:-1]
        lower = (zi[:, :n] - bi[:, n:] - p) + (zf[:, :n] - bf[:, n:])
        upper = (zi[:, n:] - bi[:, :n] - p) + (zf[:, n:] - bf[:, :n])
        slack = 4 * EPS * (abs(p) + q + 2)
        if not (np.all(np.isfinite(lower)) and np.all(np.isfinite(upper))):
            return None
        if (lower > slack).all():
            return 1
        if (upper < -slack).all():
            return -1
        if (lower > slack).any() and (upper < -slack).any():
            return 0
        return None

    def sign(self, p, q):
        """+1, -1, 0, or None when undecided."""
        if q > MAX_Q:
            return None
        slack = 4 * EPS * (abs(p) + q + 2)
        n = GRID + 1
        ints, frac = self._grid_bounds(q)
        if ((ints[n:] + frac[n:]) - (ints[:n] + frac[:n])).max() > 0.25:
            return self.sign_breakpoints(p, q)
        a, b = self.grid[:-1], self.grid[1:]
        lo_n, lo = ints[:n - 1], frac[:n - 1]
        hi_n, hi = ints[n + 1:], frac[n + 1:]
        any_pos = any_neg = False
        t = np.arange(SPLIT + 1) / SPLIT
        for depth in range(ROUNDS + 1):
            lower = (lo_n - p) + (lo - b) - slack
            upper = (hi_n - p) + (hi - a) + slack
            pos = lower > 0
            neg = upper < 0
            any_pos = any_pos or bool(pos.any())
            any_neg = any_neg or bool(neg.any())
            if any_pos and any_neg:
                return 0
            undecided = ~(pos | neg)
            if not undecided.any():
                return 1 if any_pos else -1
            if depth == 0:
                # cheaper and sharper than subdividing, when available
                s = self.sign_breakpoints(p, q)
                if s is not None:
                    return s
            if depth == ROUNDS:
                return None
            a, b = a[undecided], b[undecided]
            if len(a) * SPLIT > MAX_CELLS:
                return None
            pts = a[:, None] + (b - a)[:, None] * t[None, :]
            a, b = pts[:, :-1].ravel(), pts[:, 1:].ravel()
            ints, frac, shift = self._start(a, b)
            ints, frac = self._run(ints, frac, shift, q)
            k = len(a)
            lo_n, lo, hi_n, hi = ints[:k], frac[:k], ints[k:], frac[k:]
        return None
