"""Hermite-Gaussian test functions with exact derivatives and seminorms.

The test-function class is finite sums of terms

    amplitude * P_1(u_1) ... P_d(u_d) * exp(2 pi i xi . x) * exp(-a |u|^2),

u = x - center, with polynomial factors per axis.  The class is closed
under partial differentiation (the product rule only touches one axis's
polynomial), under translation and modulation, and has closed-form L2
inner products via Gaussian moment recursions.  That makes it an exact
oracle layer: no quadrature enters a derivative or a norm.

The weighted sup seminorms at the bottom evaluate

    sup_alpha sup_x  h^|alpha| |d^alpha f(x)| v(x) / M_|alpha|        (inductive)
    sup_alpha sup_x  |d^alpha f(x)| v(x) / (M_|alpha| r_0...r_|alpha|) (projective)

over a BoxGrid with an explicit derivative-order budget, reporting where
the sup was attained and whether it hit the budget or the box edge (in
which case the value is only a lower bound).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.polynomial import polynomial as npoly
from scipy.special import gammaln

DERIVATIVE_BUDGET = 60


def _rebase(coeffs, c):
    """Rewrite P(u), u = x - c, as coefficients in x (Horner synthesis)."""
    out = np.array([coeffs[-1]], dtype=complex)
    for k in range(len(coeffs) - 2, -1, -1):
        out = np.convolve(out, np.array([-c, 1.0], dtype=complex))
        out[0] += coeffs[k]
    return out


def _axis_integral(p_coeffs, c1, a, q_coeffs, c2, b, dmod):
    """integral P(x-c1) Q(x-c2) exp(2 pi i dmod x) exp(-a(x-c1)^2 - b(x-c2)^2) dx.

    Q arrives already conjugated by the caller.  Exact up to rounding: the
    polynomial product is expanded in x and integrated against the
    completed-square Gaussian with the two-term moment recursion.
    """
    alpha = a + b
    beta = 2.0 * a * c1 + 2.0 * b * c2 + 2j * np.pi * dmod
    gamma = -(a * c1 * c1 + b * c2 * c2)
    # real part of gamma + beta^2/(4 alpha) is -(ab/(a+b))(c1-c2)^2 - pi^2 dmod^2/alpha
    prefactor = np.sqrt(np.pi / alpha) * np.exp(gamma + beta * beta / (4.0 * alpha))
    coeffs = np.convolve(_rebase(p_coeffs, c1), _rebase(q_coeffs, c2))
    moments = np.empty(len(coeffs), dtype=complex)
    moments[0] = 1.0
    if len(coeffs) > 1:
        moments[1] = beta / (2.0 * alpha)
    for k in range(2, len(coeffs)):
        moments[k] = ((k - 1) * moments[k - 2] + beta * moments[k - 1]) / (2.0 * alpha)
    return prefactor * np.sum(coeffs * moments)


@dataclass(frozen=True)
class GaussTerm:
    """One polynomial-times-Gaussian summand; immutable."""

    amplitude: complex
    center: tuple
    modulation: tuple
    rate: float
    polys: tuple  # one ascending complex coefficient array per axis

    @property
    def dim(self):
        return len(self.center)

    def degree(self):
        return max(len(p) - 1 for p in self.polys)


class HermiteGaussian:
    """A finite sum of GaussTerms on R^dim, closed under differentiation."""

    def __init__(self, terms, dim=None, derivative_order=0):
        self.terms = list(terms)
        if not self.terms and dim is None:
            raise ValueError("empty sum needs an explicit dim")
        self.dim = dim if dim is not None else self.terms[0].dim
        if any(t.dim != self.dim for t in self.terms):
            raise ValueError("terms must share a dimension")
        self.derivative_order = derivative_order

    # -- constructors -------------------------------------------------------

    @classmethod
    def gaussian(cls, rate=np.pi, center=0.0, modulation=0.0, amplitude=1.0,
                 dim=1):
        """amplitude * exp(2 pi i modulation . x) * exp(-rate |x - center|^2)."""
        if rate <= 0:
            raise ValueError("rate must be positive")
        c = tuple(np.broadcast_to(np.asarray(center, dtype=float), (dim,)))
        m = tuple(np.broadcast_to(np.asarray(modulation, dtype=float), (dim,)))
        polys = tuple(np.ones(1, dtype=complex) for _ in range(dim))
        return cls([GaussTerm(complex(amplitude), c, m, float(rate), polys)],
                   dim=dim)

    @classmethod
    def hermite(cls, axis_degrees, rate=np.pi, center=0.0, amplitude=1.0,
                dim=1):
        """Monomial-profile Gaussian: u_1^k1 ... u_d^kd exp(-rate |u|^2)."""
        base = cls.gaussian(rate=rate, center=center, amplitude=amplitude,
                            dim=dim)
        term = base.terms[0]
        degrees = np.broadcast_to(np.asarray(axis_degrees, dtype=int), (dim,))
        polys = []
        for k in degrees:
            p = np.zeros(int(k) + 1, dtype=complex)
            p[int(k)] = 1.0
            polys.append(p)
        return cls([GaussTerm(term.amplitude, term.center, term.modulation,
                              term.rate, tuple(polys))], dim=dim)

    # -- algebra ------------------------------------------------------------

    def __add__(self, other):
        if other.dim != self.dim:
            raise ValueError("dimension mismatch")
        order = max(self.derivative_order, other.derivative_order)
        return HermiteGaussian(self.terms + other.terms, dim=self.dim,
                               derivative_order=order)

    def __mul__(self, scalar):
        terms = [GaussTerm(t.amplitude * complex(scalar), t.center,
                           t.modulation, t.rate, t.polys) for t in self.terms]
        return HermiteGaussian(terms, dim=self.dim,
                               derivative_order=self.derivative_order)

    __rmul__ = __mul__

    def __sub__(self, other):
        return self + (other * (-1.0))

    def conjugate(self):
        terms = [GaussTerm(np.conj(t.amplitude), t.center,
                           tuple(-m for m in t.modulation), t.rate,
                           tuple(np.conj(p) for p in t.polys))
                 for t in self.terms]
        return HermiteGaussian(terms, dim=self.dim,
                               derivative_order=self.derivative_order)

    def translate(self, shift):
        """f(. - shift); the modulation picks up a constant phase."""
        s = np.broadcast_to(np.asarray(shift, dtype=float), (self.dim,))
        terms = []
        for t in self.terms:
            phase = np.exp(-2j * np.pi * np.dot(t.modulation, s))
            terms.append(GaussTerm(t.amplitude * phase,
                                   tuple(np.asarray(t.center) + s),
                                   t.modulation, t.rate, t.polys))
        return HermiteGaussian(terms, dim=self.dim,
                               derivative_order=self.derivative_order)

    def modulate(self, freq):
        """exp(2 pi i freq . x) f(x)."""
        q = np.broadcast_to(np.asarray(freq, dtype=float), (self.dim,))
        terms = [GaussTerm(t.amplitude, t.center,
                           tuple(np.asarray(t.modulation) + q), t.rate,
                           t.polys) for t in self.terms]
        return HermiteGaussian(terms, dim=self.dim,
                               derivative_order=self.derivative_order)

    # -- calculus -----------------------------------------------------------

    def partial(self, axis):
        """Exact partial derivative along one axis (product rule on P)."""
        if not 0 <= axis < self.dim:
            raise ValueError("axis out of range")
        if self.derivative_order + 1 > DERIVATIVE_BUDGET:
            raise ValueError(
                f"derivative budget {DERIVATIVE_BUDGET} exhausted")
        terms = []
        for t in self.terms:
            p = t.polys[axis]
            new = np.zeros(len(p) + 1, dtype=complex)
            new[:max(len(p) - 1, 1)] += npoly.polyder(p) if len(p) > 1 else 0.0
            new[:len(p)] += 2j * np.pi * t.modulation[axis] * p
            new[1:len(p) + 1] += -2.0 * t.rate * p
            polys = list(t.polys)
            polys[axis] = np.trim_zeros(new, "b") if np.any(new) else new[:1]
            terms.append(GaussTerm(t.amplitude, t.center, t.modulation,
                                   t.rate, tuple(polys)))
        return HermiteGaussian(terms, dim=self.dim,
                               derivative_order=self.derivative_order + 1)

    def derivative(self, alpha):
        """d^alpha f for a multi-index alpha (tuple of per-axis orders)."""
        alpha = tuple(int(a) for a in np.atleast_1d(alpha))
        if len(alpha) != self.dim or any(a < 0 for a in alpha):
            raise ValueError("alpha must be a nonnegative multi-index")
        if self.derivative_order + sum(alpha) > DERIVATIVE_BUDGET:
            raise ValueError(
                f"derivative budget {DERIVATIVE_BUDGET} exhausted")
        out = self
        for axis, k in enumerate(alpha):
            for _ in range(k):
                out = out.partial(axis)
        return out

    # -- evaluation ---------------------------------------------------------

    def evaluate(self, points):
        """Complex values at an (N, dim) point array."""
        pts = np.asarray(points, dtype=float)
        if pts.ndim == 0:
            if self.dim != 1:
                raise ValueError("scalar point given in dim > 1")
            pts = pts.reshape(1, 1)
        elif pts.ndim == 1:
            pts = pts[:, None] if self.dim == 1 else pts[None, :]
        out = np.zeros(len(pts), dtype=complex)
        for t in self.terms:
            u = pts - np.asarray(t.center)
            val = np.full(len(pts), t.amplitude, dtype=complex)
            for axis in range(self.dim):
                val *= npoly.polyval(u[:, axis], t.polys[axis])
            phase = pts @ np.asarray(t.modulation)
            val *= np.exp(2j * np.pi * phase - t.rate * np.sum(u * u, axis=1))
            out += val
        return out

    def __call__(self, x):
        return self.evaluate(np.asarray(x, dtype=float))

    # -- exact L2 pairing ---------------------------------------------------

    def inner(self, other):
        """L2 inner product integral f conj(g), closed form, no quadrature."""
        if other.dim != self.dim:
            raise ValueError("dimension mismatch")
        total = 0.0 + 0.0j
        for t in self.terms:
            for s in other.terms:
                val = t.amplitude * np.conj(s.amplitude)
                for axis in range(self.dim):
                    val *= _axis_integral(
                        t.polys[axis], t.center[axis], t.rate,
                        np.conj(s.polys[axis]), s.center[axis], s.rate,
                        t.modulation[axis] - s.modulation[axis])
                total += val
        return total

    def norm(self):
        """L2 norm, closed form."""
        return float(np.sqrt(max(self.inner(self).real, 0.0)))

    # -- support bookkeeping ------------------------------------------------

    def envelope(self, s):
        """Radial upper bound: |f(x)| <= envelope(|x|), monotone machinery.

        Per term the polynomial part is bounded by its absolute-coefficient
        value at s + |center| and the Gaussian by the closest point of the
        sphere of radius s to the center.
        """
        s = np.asarray(s, dtype=float)
        out = np.zeros(s.shape)
        for t in self.terms:
            cnorm = float(np.linalg.norm(t.center))
            val = np.full(s.shape, np.abs(t.amplitude))
            for axis in range(self.dim):
                val *= npoly.polyval(s + cnorm, np.abs(t.polys[axis]))
            val *= np.exp(-t.rate * np.maximum(s - cnorm, 0.0) ** 2)
            out += val
        return out

    def sup_bound(self):
        """Upper bound for sup |f| from the radial envelope."""
        s = np.linspace(0.0, 64.0, 4097)
        return float(self.envelope(s).max())

    def decay_radius(self, tol=1e-14):
        """Radius beyond which the envelope stays below tol * sup_bound."""
        s = np.linspace(0.0, 64.0, 4097)
        env = self.envelope(s)
        cut = tol * float(env.max())
        suffix = np.maximum.accumulate(env[::-1])[::-1]
        idx = np.argmax(suffix <= cut)
        if suffix[idx] > cut:
            return float(s[-1])
        return float(s[idx])

    def describe(self):
        """Stable short description used in report metadata."""
        bits = []
        for t in self.terms:
            deg = t.degree()
            bits.append(f"deg{deg}@a={t.rate:.6g}"
                        f",c={np.round(t.center, 6).tolist()}"
                        f",xi={np.round(t.modulation, 6).tolist()}")
        return " + ".join(bits)

    def __repr__(self):
        return f"HermiteGaussian({len(self.terms)} terms, dim={self.dim})"


# -- shipped family ---------------------------------------------------------


def check_gaussian_compat(seq, upto=80, tail=10):
    """Decide whether Gaussians have finite norms against the sequence M_p.

    Gaussian derivative sups grow like c^p sqrt(p!), so the sequence must
    dominate sqrt(p!) up to a geometric factor.  Gevrey generators answer
    exactly (order >= 1/2); anything else gets a truncated trend probe on
    q_p = (M_p / sqrt(p!))^{1/p} and is accepted unless the tail decays.
    """
    order = getattr(seq, "gevrey_order", None)
    if order is not None:
        return order >= 0.5
    ps = np.arange(2, upto + 1)
    logs = seq.log_values_upto(upto)[2:]
    q = (logs - 0.5 * gammaln(ps + 1.0)) / ps
    tail_q = q[-tail:]
    return not bool(np.all(np.diff(tail_q) < 0) and tail_q[-1] < 0)


def hermite_gaussian_family(seq=None, dim=1):
    """The shipped 12-member family: 3 widths x 4 variants.

    Variants per width w in {1/2, 1, 2} (rate = pi * w): plain Gaussian, a
    translate by 1, a modulate by 1, and a first-order Hermite profile.
    With ``seq`` given, incompatible target scales are rejected up front.
    """
    if seq is not None and not check_gaussian_compat(seq):
        raise ValueError(
            "sequence grows slower than sqrt(p!): Gaussian-family seminorms "
            "diverge, choose a faster weight sequence")
    family = []
    for w in (0.5, 1.0, 2.0):
        rate = np.pi * w
        family.append(HermiteGaussian.gaussian(rate=rate, dim=dim))
        family.append(HermiteGaussian.gaussian(rate=rate, dim=dim).translate(
            np.ones(dim)))
        family.append(HermiteGaussian.gaussian(rate=rate, dim=dim).modulate(
            np.ones(dim)))
        family.append(HermiteGaussian.hermite([1] + [0] * (dim - 1),
                                              rate=rate, dim=dim))
    return family


# -- seminorms --------------------------------------------------------------


@dataclass(frozen=True)
class SeminormResult:
    """A grid/budget-truncated weighted sup seminorm.

    value is exact for the truncation; it is a lower bound of the true
    seminorm whenever a flag is set, and the suites treat flagged values
    as inconclusive rather than evidence.
    """

    value: float
    log_value: float
    argmax_alpha: tuple
    argmax_point: tuple
    alpha_budget_hit: bool
    grid_edge_hit: bool
    level_table: tuple  # (level, log of per-level max term)

    @property
    def conclusive(self):
        return not (self.alpha_budget_hit or self.grid_edge_hit)

    def as_record(self):
        return {"value": self.value, "argmax_alpha": list(self.argmax_alpha),
                "argmax_point": list(self.argmax_point),
                "alpha_budget_hit": self.alpha_budget_hit,
                "grid_edge_hit": self.grid_edge_hit,
                "conclusive": self.conclusive}


def _seminorm_core(f, weight, grid, level_log_denominator, alpha_max):
    pts = grid.points()
    log_w = weight.log_eval(pts)
    w = np.exp(log_w)
    boundary = grid.on_boundary()
    best = -np.inf
    best_alpha = (0,) * f.dim
    best_point = pts[0]
    best_edge = False
    levels = []
    # derivative chains: level k built from level k-1 by one partial each
    current = {(0,) * f.dim: f}
    for k in range(alpha_max + 1):
        level_best = -np.inf
        for alpha, fa in current.items():
            mag = np.abs(fa.evaluate(pts)) * w
            i = int(np.argmax(mag))
            with np.errstate(divide="ignore"):
                cand = np.log(mag[i]) - level_log_denominator[k]
            if cand > level_best:
                level_best = cand
            if cand > best:
                best = cand
                best_alpha = alpha
                best_point = pts[i]
                best_edge = bool(boundary[i])
        levels.append((k, float(level_best)))
        if k < alpha_max:
            nxt = {}
            for alpha, fa in current.items():
                for ax in range(f.dim):
                    child = tuple(a + (1 if i == ax else 0)
                                  for i, a in enumerate(alpha))
                    if child not in nxt:
                        nxt[child] = fa.partial(ax)
            current = nxt
    return SeminormResult(
        value=float(np.exp(best)), log_value=float(best),
        argmax_alpha=best_alpha, argmax_point=tuple(best_point),
        alpha_budget_hit=bool(sum(best_alpha) == alpha_max),
        grid_edge_hit=best_edge, level_table=tuple(levels))


def sup_seminorm(f, seq, h, weight, grid, alpha_max=40):
    """Inductive seminorm sup_alpha sup_x h^|a| |d^a f| v / M_|a|."""
    if h <= 0:
        raise ValueError("h must be positive")
    ks = np.arange(alpha_max + 1, dtype=float)
    denom = seq.log_values_upto(alpha_max) - ks * np.log(h)
    return _seminorm_core(f, weight, grid, denom, alpha_max)


def projective_seminorm(f, seq, denoms, weight, grid, alpha_max=40):
    """Projective seminorm sup_alpha sup_x |d^a f| v / (M_|a| r_0..r_|a|)."""
    ks = np.arange(alpha_max + 1)
    denom = seq.log_values_upto(alpha_max) + denoms.log_prefix(ks)
    return _seminorm_core(f, weight, grid, denom, alpha_max)


# -- finiteness agreement ---------------------------------------------------


@dataclass(frozen=True)
class FinitenessVerdict:
    """Truncated comparison of inductive vs projective finiteness.

    A level profile T_k "settles" when its running max is attained away
    from the truncation tail; the inductive verdict asks for some h that
    settles under log(bound), the projective one asks it of every supplied
    denominator sequence.
    """

    inductive: bool
    projective: bool
    h_used: float | None
    per_denominator: tuple

    @property
    def agree(self):
        return self.inductive == self.projective

    def as_record(self):
        return {"inductive": self.inductive, "projective": self.projective,
                "agree": self.agree, "h_used": self.h_used,
                "per_denominator": list(self.per_denominator)}


def _settles(profile, log_bound, tail):
    finite = profile[np.isfinite(profile)]
    if finite.size == 0:
        return True
    top = int(np.argmax(profile))
    return bool(profile[top] <= log_bound and top < len(profile) - tail)


def finiteness_agreement(level_sups, seq, denom_list, h_grid=None,
                         bound=1e12, tail=5):
    """Compare the two finiteness readings of a level-sup profile A_k.

    level_sups: log of A_k = sup over |alpha| = k (and x) of the weighted
    derivative magnitudes, k = 0..K.  Inductive: exists h in h_grid with
    log A_k + k log h - log M_k settled under log(bound).  Projective:
    for every denominator sequence r, log A_k - log M_k - log(r_0..r_k)
    settles.  Both sides are truncated statements and say so.
    """
    logs = np.asarray(level_sups, dtype=float)
    K = logs.size - 1
    if K < tail + 2:
        raise ValueError("profile too short for the requested tail")
    ks = np.arange(K + 1, dtype=float)
    log_m = seq.log_values_upto(K)
    log_bound = np.log(bound)
    h_grid = h_grid if h_grid is not None else np.geomspace(1e-3, 1e3, 25)
    inductive = False
    h_used = None
    for h in h_grid:
        if _settles(logs + ks * np.log(h) - log_m, log_bound, tail):
            inductive = True
            h_used = float(h)
            break
    per = []
    for denoms in denom_list:
        prof = logs - log_m - denoms.log_prefix(np.arange(K + 1))
        per.append(bool(_settles(prof, log_bound, tail)))
    projective = all(per) if per else inductive
    return FinitenessVerdict(inductive=inductive, projective=projective,
                             h_used=h_used, per_denominator=tuple(per))


def level_sups(f, weight, grid, alpha_max=40):
    """log of sup_{|alpha|=k, x} |d^alpha f(x)| v(x), k = 0..alpha_max."""
    pts = grid.points()
    w = np.exp(weight.log_eval(pts))
    out = np.empty(alpha_max + 1)
    current = {(0,) * f.dim: f}
    for k in range(alpha_max + 1):
        m = max(float(np.max(np.abs(fa.evaluate(pts)) * w))
                for fa in current.values())
        with np.errstate(divide="ignore"):
            out[k] = np.log(m)
        if k < alpha_max:
            nxt = {}
            for alpha, fa in current.items():
                for ax in range(f.dim):
                    child = tuple(a + (1 if i == ax else 0)
                                  for i, a in enumerate(alpha))
                    if child not in nxt:
                        nxt[child] = fa.partial(ax)
            current = nxt
    return out


def roumieu_sequence_equivalence(a, seq, h_grid=None, r_list=(), bound=1e12,
                                 tail=5):
    """Finiteness agreement for a raw level profile a_k (linear scale).

    Thin wrapper over finiteness_agreement for callers that hold the
    profile as values rather than logs.
    """
    with np.errstate(divide="ignore"):
        logs = np.log(np.asarray(a, dtype=float))
    return finiteness_agreement(logs, seq, list(r_list), h_grid=h_grid,
                                bound=bound, tail=tail)
