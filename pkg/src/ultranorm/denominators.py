"""Diverging denominator sequences r_j and their running products.

These are the per-order denominators of the projective seminorms: positive,
non-decreasing, tending to infinity.  Divergence is not decidable from a
finite table, so table-backed sequences must carry an explicit attestation;
generator-backed constructors attest for themselves.  Products are kept in
log space (a length-700 prefix product overflows double precision long
before any shipped check stops caring about it).
"""

from __future__ import annotations

import threading
from dataclasses import dataclass

import numpy as np

from .errors import ExtensionError
from .sequences import WeightSequence, fit_ratio_growth, log_associated, verify_ratio_growth

# values live in linear space, so speculative materialization can hit
# overflow for fast generators; probe a short block and extend exactly
_INITIAL = 8


class DivergingSequence:
    """A sequence r_j (j >= 0) that is positive, non-decreasing, unbounded.

    Monotonicity and positivity are enforced on every materialized block.
    Unboundedness is taken from ``diverges``: constructors that know their
    closed form set it; raw tables must attest it explicitly (and a table
    whose values never move is rejected even then).
    """

    def __init__(self, table=None, generator=None, diverges=False, name=""):
        if (table is None) == (generator is None):
            raise ValueError("give exactly one of table or generator")
        self.name = name
        self._generator = generator
        if table is not None:
            vals = np.asarray(table, dtype=float)
            if vals.ndim != 1 or vals.size < 1:
                raise ValueError("table must be a nonempty 1-D array")
            if not diverges:
                raise ValueError(
                    "finite tables cannot certify divergence; pass "
                    "diverges=True to attest that the tail is unbounded")
            if vals.size > 1 and vals.max() <= vals.min():
                raise ValueError("a constant table cannot tend to infinity")
            self._vals = vals.copy()
            self._finite = True
        else:
            if not diverges:
                raise ValueError("generator constructors must attest divergence")
            self._vals = np.asarray(generator(np.arange(_INITIAL)), dtype=float)
            self._finite = False
        self._validate_block(0)
        self._log_prefix = None  # cumulative sums of log r_j, built lazily
        self._product_cache = {}
        self._lock = threading.Lock()

    def _validate_block(self, start):
        seg = self._vals[max(start - 1, 0):]
        # +inf from a generator means "past float range", which min-style
        # consumers (regularization) handle fine; tables must stay finite
        if np.any(np.isnan(seg)) or np.any(seg <= 0):
            raise ValueError(f"sequence {self.name or '<anon>'} must be positive")
        if self._finite and np.any(np.isinf(seg)):
            raise ValueError(f"sequence {self.name or '<anon>'} table must "
                             "be finite")
        with np.errstate(invalid="ignore"):
            diffs = np.diff(seg)
            bad = diffs < -1e-12 * np.abs(seg[:-1])
        bad[np.isnan(diffs)] = False    # inf - inf: not a decrease
        if np.any(bad):
            j = max(start - 1, 0) + int(np.argmax(bad))
            raise ValueError(
                f"sequence {self.name or '<anon>'} decreases at j={j}")

    @property
    def finite(self):
        return self._finite

    @property
    def max_index(self):
        return self._vals.size - 1 if self._finite else (1 << 24)

    def _extend_to(self, j):
        if j < self._vals.size:
            return
        if self._finite:
            raise ExtensionError(
                f"sequence {self.name or '<anon>'} ends at j={self.max_index}")
        with self._lock:
            if j < self._vals.size:
                return
            old = self._vals.size
            new = j + 1
            block = np.asarray(self._generator(np.arange(old, new)), dtype=float)
            vals = np.concatenate([self._vals, block])
            self._vals = vals
            self._log_prefix = None
        self._validate_block(old)

    def value(self, j):
        idx = np.asarray(j)
        if idx.size:
            self._extend_to(int(idx.max()))
        out = self._vals[idx]
        return float(out) if np.isscalar(j) or idx.ndim == 0 else out

    def values_upto(self, j):
        self._extend_to(j)
        return self._vals[:j + 1]

    def log_prefix(self, p):
        """log(r_0 * r_1 * ... * r_p) for scalar or array p."""
        idx = np.asarray(p)
        if idx.size and int(idx.min()) < 0:
            raise ValueError("prefix index must be non-negative")
        top = int(idx.max()) if idx.size else 0
        self._extend_to(top)
        prefix = self._log_prefix
        if prefix is None or prefix.size <= top:
            prefix = np.cumsum(np.log(self._vals))
            self._log_prefix = prefix
        out = prefix[idx]
        return float(out) if np.isscalar(p) or idx.ndim == 0 else out

    def scaled(self, factor):
        """The sequence factor * r_j (factor > 0 keeps all class properties)."""
        if factor <= 0:
            raise ValueError("factor must be positive")
        if self._finite:
            return DivergingSequence(table=self._vals * factor, diverges=True,
                                     name=f"{factor}*{self.name}")
        gen = self._generator
        return DivergingSequence(generator=lambda j: factor * np.asarray(gen(j), dtype=float),
                                 diverges=True, name=f"{factor}*{self.name}")

    def __repr__(self):
        kind = f"table[{self._vals.size}]" if self._finite else "generator"
        return f"DivergingSequence({self.name or '<anon>'}, {kind})"

    # -- constructors -------------------------------------------------------

    @classmethod
    def linear(cls, slope=1.0, offset=1.0):
        """r_j = slope * j + offset (slope > 0)."""
        if slope <= 0 or offset <= 0:
            raise ValueError("need slope > 0 and offset > 0")
        return cls(generator=lambda j: slope * np.asarray(j, dtype=float) + offset,
                   diverges=True, name=f"linear({slope},{offset})")

    @classmethod
    def power(cls, exponent, offset=1.0):
        """r_j = (j + offset)^exponent (exponent > 0)."""
        if exponent <= 0 or offset <= 0:
            raise ValueError("need exponent > 0 and offset > 0")
        return cls(generator=lambda j: (np.asarray(j, dtype=float) + offset) ** exponent,
                   diverges=True, name=f"power({exponent},{offset})")

    @classmethod
    def geometric(cls, base=2.0, scale=1.0):
        """r_j = scale * base^j (base > 1)."""
        if base <= 1 or scale <= 0:
            raise ValueError("need base > 1 and scale > 0")
        log_base = np.log(base)
        log_scale = np.log(scale)
        return cls(generator=lambda j: np.exp(log_scale + np.asarray(j, dtype=float) * log_base),
                   diverges=True, name=f"geometric({base},{scale})")

    @classmethod
    def from_table(cls, values, diverges=False, name="table"):
        return cls(table=values, diverges=diverges, name=name)


# -- running products and the shifted scale ---------------------------------


def log_running_product(denoms, p):
    """log(r_0 ... r_p); the safe form for long prefixes."""
    return denoms.log_prefix(p)


def running_product(denoms, p):
    """r_0 * ... * r_p in linear space (overflows to inf when it must)."""
    return np.exp(denoms.log_prefix(p))


def product_sequence(seq, denoms):
    """The sequence N_p = M_p * (r_0 ... r_p) as a WeightSequence.

    Log-convexity of M plus monotonicity of r makes N log-convex, so the
    fast associated-function path stays available.  Results are cached on
    the denominator object (the pair is rebuilt constantly inside suites).
    """
    key = id(seq)
    cached = denoms._product_cache.get(key)
    if cached is not None:
        return cached
    # builds may race; setdefault below keeps one winner per key
    if denoms.finite:
        top = denoms.max_index
        logs = seq.log_values_upto(top) + denoms.log_prefix(np.arange(top + 1))
        prod = WeightSequence(log_table=logs, log_convex=seq.log_convex,
                              name=f"{seq.name}*prod({denoms.name})")
    else:
        def gen(p):
            idx = np.asarray(p)
            return seq.log_value(idx) + denoms.log_prefix(idx)

        prod = WeightSequence(generator=gen, log_convex=seq.log_convex,
                              name=f"{seq.name}*prod({denoms.name})")
    return denoms._product_cache.setdefault(key, prod)


def log_shifted_associated(seq, denoms, t):
    """Associated function of N_p = M_p * prod(r), in log space."""
    return log_associated(product_sequence(seq, denoms), t)


# -- regularization ---------------------------------------------------------


def regularize(denoms, J=None):
    """Clip r against a geometric envelope: r'_j = min(r_j, c * 2^j), c = min(1, r_0).

    The result stays in the diverging class, never exceeds r, satisfies
    r'_{j+1} <= 2^{j+1} r'_j, and (for log-convex M) makes the product
    sequence M_p * prod(r') admit a ratio-growth witness.  Applying it
    twice is a no-op.  The construction is global, so ``J`` only sets how
    far the output is materialized eagerly (properties hold at every j).
    """
    if J is not None and J < 1:
        raise ValueError("J must be >= 1")
    c = min(1.0, denoms.value(0))
    log2 = np.log(2.0)

    if denoms.finite:
        j = np.arange(denoms.max_index + 1, dtype=float)
        vals = np.minimum(denoms.values_upto(denoms.max_index),
                          np.exp(np.log(c) + j * log2))
        return DivergingSequence(table=vals, diverges=True,
                                 name=f"reg({denoms.name})")

    def gen(j):
        idx = np.asarray(j)
        return np.minimum(denoms.value(idx),
                          np.exp(np.log(c) + idx.astype(float) * log2))

    out = DivergingSequence(generator=gen, diverges=True,
                            name=f"reg({denoms.name})")
    if J is not None:
        out.values_upto(J)
    return out


@dataclass(frozen=True)
class RegularizationCertificate:
    """Grid evidence that a regularized sequence has the advertised properties."""

    dominated: bool          # r'_j <= r_j for all checked j
    monotone: bool           # r' non-decreasing
    tempered: bool           # r'_{j+1} <= 2^{j+1} r'_j
    product_witnessed: bool  # M * prod(r') admits a ratio-growth witness
    witness: object
    checked_upto: int

    @property
    def ok(self):
        return self.dominated and self.monotone and self.tempered \
            and self.product_witnessed

    def as_record(self):
        return {"dominated": self.dominated, "monotone": self.monotone,
                "tempered": self.tempered,
                "product_witnessed": self.product_witnessed,
                "witness": self.witness.as_record() if self.witness else None,
                "checked_upto": self.checked_upto}


def certify_regularization(seq, denoms, reg, upto):
    """Check the four regularization properties through index ``upto``."""
    r = denoms.values_upto(upto)
    rp = reg.values_upto(upto)
    dominated = bool(np.all(rp <= r * (1 + 1e-12)))
    monotone = bool(np.all(np.diff(rp) >= -1e-12 * rp[:-1]))
    js = np.arange(1, upto + 1, dtype=float)
    tempered = bool(np.all(np.log(rp[1:]) - np.log(rp[:-1])
                           <= js * np.log(2.0) + 1e-9))
    prod = product_sequence(seq, reg)
    witness = fit_ratio_growth(prod, upto - 1)
    witnessed, _ = verify_ratio_growth(prod, witness)
    return RegularizationCertificate(dominated=dominated, monotone=monotone,
                                     tempered=tempered,
                                     product_witnessed=bool(witnessed),
                                     witness=witness, checked_upto=upto)


# -- domination of the base scale -------------------------------------------


@dataclass(frozen=True)
class DominationResult:
    """Grid profile of assoc_N(t) - assoc_M(t / n) for the shifted scale."""

    ok: bool
    max_gap: float
    tail_nonincreasing: bool
    n: int
    t_max: float

    def as_record(self):
        return {"ok": self.ok, "max_gap": self.max_gap,
                "tail_nonincreasing": self.tail_nonincreasing,
                "n": self.n, "t_max": self.t_max}


def domination_check(seq, denoms, n, t_grid, tail=None):
    """Check assoc of M*prod(r) against assoc(M(. / n)) on a positive grid.

    The shifted scale should dominate: the gap must stay bounded above and
    be non-increasing over the tail of the grid.  Returns the profile
    verdict; a rising tail names the offending n in the failure.
    """
    t = np.sort(np.asarray(t_grid, dtype=float))
    if np.any(t <= 0):
        raise ValueError("t_grid must be positive")
    gap = log_shifted_associated(seq, denoms, t) - log_associated(seq, t / n)
    k = tail if tail is not None else max(3, t.size // 10)
    tail_ok = bool(np.all(np.diff(gap[-k:]) <= 1e-9))
    return DominationResult(ok=tail_ok, max_gap=float(gap.max()),
                            tail_nonincreasing=tail_ok, n=int(n),
                            t_max=float(t[-1]))


# -- canonical operation names ----------------------------------------------

RSequence = DivergingSequence
shifted_associated_function = log_shifted_associated
nachbin_domination_check = domination_check
