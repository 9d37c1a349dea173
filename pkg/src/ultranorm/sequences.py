"""Weight sequences M_p, their growth certificates, and associated functions.

Everything is stored and compared in log space: a sequence holds log M_p,
consecutive log ratios log(M_p / M_{p-1}), and the associated function

    assoc(t) = sup_p log(t^p M_0 / M_p),   assoc(0) = 0,

is returned as a log quantity as well.  Linear-space helpers exponentiate
at the edge.  Sequences are lazily materialized: generator-backed ones
grow geometrically on demand (the sup for slowly growing sequences can sit
near p ~ 1e6), finite tables refuse to extend and raise LocalizationError
when a supremum cannot be bracketed inside them.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

from .errors import ExtensionError, LocalizationError

INITIAL_CAPACITY = 512
HARD_CAP = 1 << 24
# A sup scan may stop only after this many consecutive strictly decreasing
# terms past the running maximum.
DECREASE_RUN = 8
_SCAN_CHUNK = 1 << 16


class WeightSequence:
    """A positive sequence M_p, p = 0, 1, 2, ..., kept as log M_p.

    Parameters
    ----------
    log_table : array_like, optional
        Explicit log M_p values, p = 0..len-1.  Table-backed sequences are
        finite: asking past the end raises ExtensionError.
    generator : callable, optional
        Vectorized map from an integer index array to log M_p.  Generator
        sequences extend lazily up to ``hard_cap`` indices.
    log_convex : bool
        Declared (M.1)-style convexity of log M_p.  When True it is
        verified on every materialized block and unlocks the O(log P)
        associated-function path.
    """

    def __init__(self, log_table=None, generator=None, log_convex=False,
                 name="", hard_cap=HARD_CAP):
        if (log_table is None) == (generator is None):
            raise ValueError("give exactly one of log_table or generator")
        self.name = name
        self.log_convex = bool(log_convex)
        self.hard_cap = int(hard_cap)
        self._generator = generator
        if log_table is not None:
            table = np.asarray(log_table, dtype=float)
            if table.ndim != 1 or table.size < 1:
                raise ValueError("log_table must be a nonempty 1-D array")
            if not np.all(np.isfinite(table)):
                raise ValueError("log_table must be finite")
            self._log = table.copy()
            self._limit = table.size
        else:
            first = np.asarray(generator(np.arange(INITIAL_CAPACITY)), dtype=float)
            if first.shape != (INITIAL_CAPACITY,) or not np.all(np.isfinite(first)):
                raise ValueError("generator must return finite log values")
            self._log = first
            self._limit = self.hard_cap
        self._ratios = np.diff(self._log)
        self._lock = threading.Lock()
        if self.log_convex:
            self._check_convex_block(0)

    # -- storage ------------------------------------------------------------

    @property
    def materialized(self):
        """Largest index p currently stored."""
        return self._log.size - 1

    @property
    def extendable(self):
        return self._generator is not None

    @property
    def max_index(self):
        """Largest index this sequence can ever produce."""
        return self._limit - 1

    def _check_convex_block(self, start):
        # diff-of-diffs on [start-1, end]; slack covers float noise in the
        # generator, genuine concavity is orders of magnitude larger.
        lo = max(start - 1, 0)
        seg = self._ratios[lo:]
        if seg.size >= 2:
            second = np.diff(seg)
            bad = second < -1e-9
            if np.any(bad):
                p = lo + 1 + int(np.argmax(bad))
                raise ValueError(
                    f"sequence {self.name or '<anon>'} declared log-convex but "
                    f"log M ratios decrease at p={p}")

    def extend_to(self, p):
        """Materialize log M_q for all q <= p.

        Raises ExtensionError beyond a table's end or the generator cap.
        Extension swaps in fresh arrays under a lock, so concurrent readers
        holding the old buffers stay consistent.
        """
        if p <= self.materialized:
            return
        if p > self.max_index:
            raise ExtensionError(
                f"sequence {self.name or '<anon>'} has no terms past "
                f"p={self.max_index} (asked for p={p})")
        with self._lock:
            if p <= self.materialized:
                return
            old = self._log.size
            new = max(p + 1, min(2 * old, self._limit))
            block = np.asarray(self._generator(np.arange(old, new)),
                               dtype=float)
            if not np.all(np.isfinite(block)):
                raise ValueError("generator returned non-finite log values")
            log = np.concatenate([self._log, block])
            ratios = np.concatenate([self._ratios, np.diff(log[old - 1:])])
            self._log = log
            self._ratios = ratios
        if self.log_convex:
            self._check_convex_block(old)

    # -- access -------------------------------------------------------------

    def log_value(self, p):
        """log M_p for scalar or array p (materializing as needed)."""
        idx = np.asarray(p)
        if idx.size and idx.min() < 0:
            raise ValueError("indices must be nonnegative")
        if idx.size:
            self.extend_to(int(idx.max()))
        out = self._log[idx]
        return float(out) if np.isscalar(p) or idx.ndim == 0 else out

    def value(self, p):
        v = self.log_value(p)
        return np.exp(v)

    def log_values_upto(self, p):
        """View of [log M_0, ..., log M_p]."""
        self.extend_to(p)
        return self._log[:p + 1]

    def log_ratios_upto(self, p):
        """View of [log m_1, ..., log m_p], m_p = M_p / M_{p-1}."""
        self.extend_to(p)
        return self._ratios[:p]

    @property
    def log_m0(self):
        return self._log[0]

    def __repr__(self):
        kind = "generator" if self.extendable else f"table[{self._limit}]"
        return (f"WeightSequence({self.name or '<anon>'}, {kind}, "
                f"log_convex={self.log_convex})")

    # -- constructors -------------------------------------------------------

    @classmethod
    def from_values(cls, values, log_convex=None, name=""):
        """Finite table from linear-space values (all positive)."""
        arr = np.asarray(values, dtype=float)
        if np.any(arr <= 0):
            raise ValueError("sequence values must be positive")
        log = np.log(arr)
        if log_convex is None:
            log_convex = bool(arr.size < 3 or np.all(np.diff(log, 2) >= -1e-12))
        return cls(log_table=log, log_convex=log_convex, name=name)

    @classmethod
    def from_log_generator(cls, fn, log_convex, name=""):
        return cls(generator=fn, log_convex=log_convex, name=name)

    @classmethod
    def gevrey(cls, s, m0=1.0):
        """M_p = m0 * (p!)^s.  Log-convex for every s > 0."""
        if s <= 0:
            raise ValueError("gevrey order s must be positive")
        logm0 = np.log(float(m0))

        def gen(p):
            return logm0 + s * gammaln(np.asarray(p, dtype=float) + 1.0)

        seq = cls(generator=gen, log_convex=True, name=f"gevrey({s})")
        seq.gevrey_order = s
        return seq

    @classmethod
    def constant(cls, value=1.0):
        logv = np.log(float(value))

        def gen(p):
            return np.full(np.asarray(p).shape, logv)

        return cls(generator=gen, log_convex=True, name=f"constant({value})")

    @classmethod
    def log_power(cls):
        """M_p = (log(p + 2))^p, the classical slow log-convex scale."""

        def gen(p):
            q = np.asarray(p, dtype=float)
            return q * np.log(np.log(q + 2.0))

        return cls(generator=gen, log_convex=True, name="log_power")


# -- associated function ----------------------------------------------------


def log_associated(seq, t):
    """assoc(t) = sup_p log(t^p M_0 / M_p) for t >= 0 (assoc(0) = 0).

    Log-convex sequences use the exact localization p* = #{p : m_p <= t}
    (ratio bisection, O(log P) per point after materialization).  General
    sequences fall back to a chunked scan that stops only after
    DECREASE_RUN consecutive strictly decreasing terms past the running
    maximum; if a finite table ends before that, LocalizationError.
    """
    arr = np.asarray(t, dtype=float)
    scalar = arr.ndim == 0
    flat = np.atleast_1d(arr).astype(float)
    if np.any(flat < 0):
        raise ValueError("associated function takes nonnegative arguments")
    out = np.zeros(flat.shape)
    pos = flat > 0
    if np.any(pos):
        if seq.log_convex:
            out[pos] = _assoc_convex(seq, flat[pos])
        else:
            out[pos] = np.array([_assoc_scan(seq, x) for x in flat[pos]])
    return float(out[0]) if scalar else out.reshape(arr.shape)


def associated(seq, t):
    """exp(log_associated); may overflow to inf for large t by design."""
    return np.exp(log_associated(seq, t))


def _cover_index(seq, log_t_max):
    """Smallest materialized P with log m_P > log_t_max, growing as needed."""
    while True:
        ratios = seq.log_ratios_upto(seq.materialized)
        if ratios.size and ratios[-1] > log_t_max:
            # bisect for the first ratio above the threshold
            return int(np.searchsorted(ratios, log_t_max, side="right")) + 1
        if seq.materialized >= seq.max_index:
            if not ratios.size or ratios[-1] <= log_t_max:
                raise LocalizationError(
                    "supremum not localized: sequence ends at "
                    f"p={seq.materialized} with ratio still below t",
                    argument=float(np.exp(log_t_max)),
                    inspected=seq.materialized)
            return seq.materialized
        try:
            seq.extend_to(min(2 * seq.materialized + 1, seq.max_index))
        except ExtensionError as exc:  # pragma: no cover - guarded above
            raise LocalizationError(str(exc)) from exc


def _assoc_convex(seq, t):
    log_t = np.log(t)
    cover = _cover_index(seq, float(log_t.max()))
    ratios = seq.log_ratios_upto(cover)
    logs = seq.log_values_upto(cover)
    pstar = np.searchsorted(ratios, log_t, side="right")
    vals = pstar * log_t + logs[0] - logs[pstar]
    return np.maximum(vals, 0.0)


def _assoc_scan(seq, t):
    log_t = np.log(t)
    log_m0 = seq.log_m0
    best = 0.0  # p = 0 term
    prev_term = 0.0
    run = 0
    p = 1
    while True:
        hi = min(p + _SCAN_CHUNK - 1, seq.max_index)
        if hi < p:
            raise LocalizationError(
                "supremum not localized: table exhausted while terms were "
                "still eligible", argument=t, inspected=seq.materialized)
        logs = seq.log_values_upto(hi)[p:hi + 1]
        ps = np.arange(p, hi + 1, dtype=float)
        terms = ps * log_t + log_m0 - logs
        # run lengths of consecutive strict decreases, carried across chunks
        dec = np.diff(np.concatenate(([prev_term], terms))) < 0.0
        idx = np.arange(terms.size)
        last_rise = np.where(~dec, idx, -1)
        np.maximum.accumulate(last_rise, out=last_rise)
        runs = np.where(last_rise >= 0, idx - last_rise, idx + 1 + run)
        best_acc = np.maximum.accumulate(terms)
        np.maximum(best_acc, best, out=best_acc)
        stop = (runs >= DECREASE_RUN) & (terms < best_acc)
        if np.any(stop):
            cut = int(np.argmax(stop))
            return max(best, float(best_acc[cut]))
        best = max(best, float(best_acc[-1]))
        prev_term = float(terms[-1])
        run = int(runs[-1])
        p = hi + 1
        if p > seq.max_index:
            raise LocalizationError(
                "supremum not localized within the index budget",
                argument=t, inspected=seq.max_index)


def log_associated_radial(seq, points):
    """assoc(|x|) over an (N, dim) point array (log space)."""
    pts = np.asarray(points, dtype=float)
    if pts.ndim == 1:
        pts = pts[:, None]
    return log_associated(seq, np.sqrt(np.sum(pts * pts, axis=1)))


# -- growth certificates ----------------------------------------------------


def check_log_convexity(seq, upto):
    """Verify M_p^2 <= M_{p-1} M_{p+1} for 1 <= p <= upto.

    Returns (ok, first_bad_index) with first_bad_index None when ok.
    """
    ratios = seq.log_ratios_upto(upto + 1)
    second = np.diff(ratios)
    bad = second < -1e-9
    if np.any(bad):
        return False, int(np.argmax(bad)) + 1
    return True, None


@dataclass(frozen=True)
class RatioGrowthWitness:
    """Constants (c0, h) with M_{p+1} <= c0 * h^p * M_p for p <= checked_upto.

    Both are the minimal admissible values >= 1 on the checked range, so the
    witness doubles as a measurement of the sequence's ratio growth.  The
    certificate is truncation-relative: nothing is claimed past checked_upto.
    """

    c0: float
    h: float
    checked_upto: int

    def as_record(self):
        return {"c0": self.c0, "h": self.h, "checked_upto": self.checked_upto}


def fit_ratio_growth(seq, upto):
    """Fit the minimal (c0 >= 1, h >= 1) ratio-growth witness through p = upto."""
    if upto < 1:
        raise ValueError("need upto >= 1")
    ratios = seq.log_ratios_upto(upto + 1)
    log_c0 = max(0.0, float(ratios[0]))
    ps = np.arange(1, upto + 1, dtype=float)
    log_h = max(0.0, float(np.max((ratios[1:] - log_c0) / ps)))
    return RatioGrowthWitness(c0=float(np.exp(log_c0)), h=float(np.exp(log_h)),
                              checked_upto=upto)


def verify_ratio_growth(seq, witness, upto=None):
    """Check the witness inequality termwise; returns (ok, worst_margin).

    worst_margin is min over p of log(c0 h^p M_p / M_{p+1}); ok iff it is
    >= -1e-9 (float slack for the exp/log roundtrip of stored constants).
    """
    upto = witness.checked_upto if upto is None else upto
    ratios = seq.log_ratios_upto(upto + 1)
    ps = np.arange(0, upto + 1, dtype=float)
    margins = np.log(witness.c0) + ps * np.log(witness.h) - ratios
    worst = float(margins.min())
    return worst >= -1e-9, worst


@dataclass(frozen=True)
class DecayCheckResult:
    ok: bool
    max_ratio: float        # max over the grid of lhs/rhs for the decay bound
    min_margin: float       # min over grid and k of the lower-bound slack
    worst_t: float

    def as_record(self):
        return {"ok": self.ok, "max_ratio": self.max_ratio,
                "min_margin": self.min_margin, "worst_t": self.worst_t}


def witness_decay_check(seq, witness, dim, t_grid, tol=1e-9):
    """Grid-check the two consequences of a ratio-growth witness.

    Upper bound:   exp(assoc(t) - assoc(h^{dim+1} t)) <= (2 c0)^{dim+1} / (1 + t^{dim+1})
    Lower bounds:  assoc(h^k t) - assoc(t) >= k * log(t / c0),  k = 1..dim+1.

    Both hold for every admissible witness; the grid check guards the
    implementation, not the mathematics.
    """
    t = np.asarray(t_grid, dtype=float)
    if np.any(t <= 0):
        raise ValueError("t_grid must be positive")
    k_top = dim + 1
    base = log_associated(seq, t)
    log_lhs = base - log_associated(seq, (witness.h ** k_top) * t)
    log_rhs = k_top * np.log(2.0 * witness.c0) - np.log1p(t ** k_top)
    gap = log_lhs - log_rhs
    worst = int(np.argmax(gap))
    max_ratio = float(np.exp(gap[worst]))
    min_margin = np.inf
    for k in range(1, k_top + 1):
        lower = log_associated(seq, (witness.h ** k) * t) - base \
            - k * (np.log(t) - np.log(witness.c0))
        min_margin = min(min_margin, float(lower.min()))
    ok = bool(np.all(gap <= tol) and min_margin >= -tol)
    return DecayCheckResult(ok=ok, max_ratio=max_ratio,
                            min_margin=min_margin, worst_t=float(t[worst]))


@dataclass(frozen=True)
class LogPowerComparison:
    """Truncated probe of whether M_p eventually dominates (log p)^p."""

    verdict: bool
    increasing_tail: bool
    last_quotient: float
    threshold: float
    checked_upto: int

    def as_record(self):
        return {"verdict": self.verdict, "increasing_tail": self.increasing_tail,
                "last_quotient": self.last_quotient, "threshold": self.threshold,
                "checked_upto": self.checked_upto}


def outgrows_log_power(seq, upto, threshold=2.0, tail=10):
    """Heuristic test of (log p)^p -< M_p via q_p = M_p^{1/p} / log p.

    The true statement is asymptotic, so this is explicitly a truncated
    trend test: verdict True iff q_p is strictly increasing over the last
    ``tail`` checked indices and its final value exceeds ``threshold``.
    """
    if upto < tail + 2:
        raise ValueError("upto too small for the requested tail")
    ps = np.arange(2, upto + 1)
    logs = seq.log_values_upto(upto)[2:]
    q = np.exp(logs / ps) / np.log(ps)
    tail_q = q[-tail:]
    increasing = bool(np.all(np.diff(tail_q) > 0))
    verdict = increasing and float(q[-1]) > threshold
    return LogPowerComparison(verdict=verdict, increasing_tail=increasing,
                              last_quotient=float(q[-1]), threshold=threshold,
                              checked_upto=upto)


# -- canonical operation names ----------------------------------------------
# The literature-standard names used by the CLI, configs, and reports.  The
# descriptive names above stay available; these are the stable spellings.

check_m1 = check_log_convexity
fit_m2prime = fit_ratio_growth
verify_m2prime = verify_ratio_growth
M2PrimeWitness = RatioGrowthWitness
associated_function = log_associated
radial_extension = log_associated_radial
check_m2prime_decay = witness_decay_check
precedes_log_growth = outgrows_log_power
