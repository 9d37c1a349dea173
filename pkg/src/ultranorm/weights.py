"""Weights, decreasing weight systems, and Nachbin-style domination checks.

A weight is a strictly positive function on R^d evaluated primarily in log
space (the interesting ones behave like exp of an associated function and
overflow doubles long before the checks stop needing them).  A weight
system is a non-increasing family v_1 >= v_2 >= ... of weights; the checks
below probe membership of a candidate weight in the system's dominated
cone, quotient vanishing at infinity, translation admissibility against a
growth scale, and the infimum construction that turns an admissibility
chain into a single dominating weight.

Every verdict here is computed over a finite BoxGrid and is therefore a
grid certificate: sups are lower bounds, and edge behavior is classified
along coordinate rays to catch divergence the box cannot contain.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .grids import as_points
from .sequences import log_associated

_SLACK = 1e-9


# -- weights ----------------------------------------------------------------


class WeightFunction:
    """Base class: strictly positive function with log-space evaluation."""

    dim = 1

    def log_eval(self, points):
        """log v at an (N, dim) point array; subclasses implement this."""
        raise NotImplementedError

    def __call__(self, x):
        return np.exp(self.log_eval(as_points(x, self.dim)))

    def log_at(self, x):
        return self.log_eval(as_points(x, self.dim))


class ConstantWeight(WeightFunction):
    def __init__(self, value=1.0, dim=1):
        if value <= 0:
            raise ValueError("weights are strictly positive")
        self.dim = dim
        self.log_value = float(np.log(value))

    def log_eval(self, points):
        return np.full(len(points), self.log_value)

    def __repr__(self):
        return f"ConstantWeight({np.exp(self.log_value)}, dim={self.dim})"


class AssociatedExpWeight(WeightFunction):
    """v(x) = exp(assoc(scale * |x|)) for a log-convex weight sequence."""

    def __init__(self, seq, scale=1.0, dim=1):
        if scale <= 0:
            raise ValueError("scale must be positive")
        self.seq = seq
        self.scale = float(scale)
        self.dim = dim

    def log_eval(self, points):
        r = np.sqrt(np.sum(np.asarray(points, dtype=float) ** 2, axis=1))
        return log_associated(self.seq, self.scale * r)

    def __repr__(self):
        return f"AssociatedExpWeight({self.seq.name}, scale={self.scale}, dim={self.dim})"


class GaussianWeight(WeightFunction):
    """v(x) = exp(-rate * |x|^2); rate < 0 gives the growing reciprocal."""

    def __init__(self, rate, dim=1):
        self.rate = float(rate)
        self.dim = dim

    def log_eval(self, points):
        return -self.rate * np.sum(np.asarray(points, dtype=float) ** 2, axis=1)


class PolynomialDecayWeight(WeightFunction):
    """v(x) = (1 + |x|)^(-power)."""

    def __init__(self, power, dim=1):
        self.power = float(power)
        self.dim = dim

    def log_eval(self, points):
        r = np.sqrt(np.sum(np.asarray(points, dtype=float) ** 2, axis=1))
        return -self.power * np.log1p(r)


class ExponentialWeight(WeightFunction):
    """v(x) = exp(rate * |x|); positive rate grows, negative decays."""

    def __init__(self, rate, dim=1):
        self.rate = float(rate)
        self.dim = dim

    def log_eval(self, points):
        r = np.sqrt(np.sum(np.asarray(points, dtype=float) ** 2, axis=1))
        return self.rate * r


class ScaledWeight(WeightFunction):
    """coefficient * base for a positive coefficient."""

    def __init__(self, coefficient, base):
        if coefficient <= 0:
            raise ValueError("coefficient must be positive")
        self.log_coefficient = float(np.log(coefficient))
        self.base = base
        self.dim = base.dim

    def log_eval(self, points):
        return self.log_coefficient + self.base.log_eval(points)


class TranslatedWeight(WeightFunction):
    """base(x - shift)."""

    def __init__(self, base, shift):
        self.base = base
        self.dim = base.dim
        self.shift = np.broadcast_to(np.asarray(shift, dtype=float),
                                     (self.dim,)).copy()

    def log_eval(self, points):
        return self.base.log_eval(np.asarray(points, dtype=float) - self.shift)


class TensorWeight(WeightFunction):
    """(v (x) w)(x, y) = v(x) * w(y); dims concatenate."""

    def __init__(self, parts):
        self.parts = list(parts)
        self.dim = sum(p.dim for p in self.parts)

    def log_eval(self, points):
        pts = np.asarray(points, dtype=float)
        out = np.zeros(len(pts))
        col = 0
        for part in self.parts:
            out += part.log_eval(pts[:, col:col + part.dim])
            col += part.dim
        return out


class InfimumWeight(WeightFunction):
    """Pointwise infimum of finitely many scaled weights.

    terms is a list of (log_coefficient, weight); the value is
    min_j coefficient_j * w_j(x).  This is the shape every dominating
    weight built from an admissibility chain takes.
    """

    def __init__(self, terms):
        if not terms:
            raise ValueError("need at least one term")
        self.terms = [(float(lc), w) for lc, w in terms]
        self.dim = self.terms[0][1].dim
        if any(w.dim != self.dim for _, w in self.terms):
            raise ValueError("all terms must share a dimension")

    def log_eval(self, points):
        stack = np.stack([lc + w.log_eval(points) for lc, w in self.terms])
        return stack.min(axis=0)


class InterpolatedWeight(WeightFunction):
    """1-D weight given by log-linear interpolation of a sample table.

    Queries outside the table range clamp to the edge values (np.interp
    semantics); mollified weights are only trusted on their sampled box.
    """

    def __init__(self, x, log_values):
        x = np.asarray(x, dtype=float)
        log_values = np.asarray(log_values, dtype=float)
        if x.ndim != 1 or x.shape != log_values.shape or x.size < 2:
            raise ValueError("need matching 1-D tables with >= 2 nodes")
        if np.any(np.diff(x) <= 0):
            raise ValueError("x nodes must be strictly increasing")
        self.x = x
        self.log_values = log_values
        self.dim = 1

    def log_eval(self, points):
        q = np.asarray(points, dtype=float)[:, 0]
        return np.interp(q, self.x, self.log_values)


# -- systems ----------------------------------------------------------------


class WeightSystem:
    """Indexed family v_1, v_2, ... of weights on a common R^dim."""

    dim = 1
    max_member = None  # None = unbounded index range

    def member(self, n):
        raise NotImplementedError

    def members(self, n_max):
        return [self.member(n) for n in range(1, n_max + 1)]


class AssociatedExpSystem(WeightSystem):
    """v_n(x) = exp(assoc(|x| / n)); the canonical decreasing system."""

    def __init__(self, seq, dim=1):
        self.seq = seq
        self.dim = dim

    def member(self, n):
        if n < 1:
            raise ValueError("members are indexed from 1")
        return AssociatedExpWeight(self.seq, scale=1.0 / n, dim=self.dim)

    def __repr__(self):
        return f"AssociatedExpSystem({self.seq.name}, dim={self.dim})"


class ConstantSystem(WeightSystem):
    """v_n = omega for every n; the degenerate-system regime."""

    def __init__(self, weight):
        self.weight = weight
        self.dim = weight.dim

    def member(self, n):
        if n < 1:
            raise ValueError("members are indexed from 1")
        return self.weight

    @classmethod
    def flat(cls, value=1.0, dim=1):
        return cls(ConstantWeight(value, dim=dim))


class GaussianDecaySystem(WeightSystem):
    """v_n(x) = exp(-n |x|^2)."""

    def __init__(self, dim=1):
        self.dim = dim

    def member(self, n):
        if n < 1:
            raise ValueError("members are indexed from 1")
        return GaussianWeight(float(n), dim=self.dim)


class PolynomialDecaySystem(WeightSystem):
    """v_n(x) = (1 + |x|)^(-n)."""

    def __init__(self, dim=1):
        self.dim = dim

    def member(self, n):
        if n < 1:
            raise ValueError("members are indexed from 1")
        return PolynomialDecayWeight(float(n), dim=self.dim)


class ExplicitSystem(WeightSystem):
    """A finite, explicitly listed family (for counterexample fixtures)."""

    def __init__(self, weights):
        if not weights:
            raise ValueError("need at least one weight")
        self.weights = list(weights)
        self.dim = self.weights[0].dim
        self.max_member = len(self.weights)

    def member(self, n):
        if not 1 <= n <= len(self.weights):
            raise ValueError(f"system has members 1..{len(self.weights)}")
        return self.weights[n - 1]


class TensorSystem(WeightSystem):
    """Memberwise tensor product of two systems on a product space."""

    def __init__(self, left, right):
        self.left = left
        self.right = right
        self.dim = left.dim + right.dim
        if left.max_member or right.max_member:
            self.max_member = min(m for m in (left.max_member, right.max_member)
                                  if m is not None)

    def member(self, n):
        return TensorWeight([self.left.member(n), self.right.member(n)])


def tensor_system(left, right):
    return TensorSystem(left, right)


# -- edge-trend classification ----------------------------------------------


def _tail_trend(values, k, slack=_SLACK):
    """Classify the last k samples of a ray profile.

    'nonincreasing' when no step rises beyond slack; 'rising' when every
    step is non-negative and the net movement is a genuine increase;
    'mixed' otherwise (treated as inconclusive by callers).
    """
    seg = np.asarray(values[-k:], dtype=float)
    steps = np.diff(seg)
    if np.all(steps <= slack):
        return "nonincreasing"
    if np.all(steps >= -slack) and seg[-1] - seg[0] > 10 * slack:
        return "rising"
    return "mixed"


# -- checks -----------------------------------------------------------------


@dataclass(frozen=True)
class DecreasingCheck:
    ok: bool
    worst_gap: float      # max over n, x of log v_{n+1} - log v_n
    worst_n: int
    worst_point: tuple

    def as_record(self):
        return {"ok": self.ok, "worst_gap": self.worst_gap,
                "worst_n": self.worst_n, "worst_point": list(self.worst_point)}


def check_decreasing(system, n_max, grid):
    """Verify v_{n+1} <= v_n (1 + 1e-12 slack) on the grid, n = 1..n_max-1."""
    pts = grid.points()
    worst = -np.inf
    worst_n, worst_pt = 1, pts[0]
    prev = system.member(1).log_eval(pts)
    for n in range(1, n_max):
        cur = system.member(n + 1).log_eval(pts)
        gap = cur - prev
        i = int(np.argmax(gap))
        if gap[i] > worst:
            worst, worst_n, worst_pt = float(gap[i]), n, pts[i]
        prev = cur
    return DecreasingCheck(ok=worst <= 1e-12, worst_gap=worst,
                           worst_n=worst_n, worst_point=tuple(worst_pt))


@dataclass(frozen=True)
class MembershipResult:
    """Grid evidence for sup v / v_n < infinity, n = 1..n_max."""

    status: str                 # pass | fail | inconclusive
    constants: list             # per-n sup of v / v_n over the grid (log)
    diverging_n: int | None
    mixed_n: int | None

    @property
    def ok(self):
        return self.status == "pass"

    def as_record(self):
        return {"status": self.status, "log_constants": list(self.constants),
                "diverging_n": self.diverging_n, "mixed_n": self.mixed_n}


def nachbin_membership(candidate, system, n_max, grid):
    """Probe whether candidate belongs to the cone dominated by the system.

    For each n the quotient candidate / v_n must look bounded: the grid sup
    is recorded, and the quotient's trend along every boundary ray decides
    the verdict.  A monotonically rising edge means the sup lives outside
    any box (fail); an ambiguous edge is inconclusive; otherwise the grid
    sup is an honest constant and the verdict is pass.
    """
    pts = grid.points()
    rays = grid.rays()
    log_v = candidate.log_eval(pts)
    constants = []
    diverging_n = None
    mixed_n = None
    for n in range(1, n_max + 1):
        g = log_v - system.member(n).log_eval(pts)
        constants.append(float(g.max()))
        for ray in rays:
            k = min(8, max(3, ray.size // 5))
            trend = _tail_trend(g[ray], k)
            if trend == "rising" and diverging_n is None:
                diverging_n = n
            elif trend == "mixed" and mixed_n is None:
                mixed_n = n
    if diverging_n is not None:
        status = "fail"
    elif mixed_n is not None:
        status = "inconclusive"
    else:
        status = "pass"
    return MembershipResult(status=status, constants=constants,
                            diverging_n=diverging_n, mixed_n=mixed_n)


@dataclass(frozen=True)
class ConditionSResult:
    """Quotient-vanishing certificate for a member pair (n, m), m > n."""

    ok: bool
    monotone_beyond: bool
    dropped: bool
    worst_step: float
    boundary_drop: float     # log(v_m/v_n at boundary) - log(at radius)
    radius: float

    def as_record(self):
        return {"ok": self.ok, "monotone_beyond": self.monotone_beyond,
                "dropped": self.dropped, "worst_step": self.worst_step,
                "boundary_drop": self.boundary_drop, "radius": self.radius}


def check_condition_s(system, n, m, grid, radius=5.0, drop=0.5):
    """Check that v_m / v_n decays along every ray beyond ``radius``.

    Operational form of "the quotient vanishes at infinity": beyond the
    radius the quotient must be non-increasing on each coordinate ray and
    the boundary value must be <= drop * (value at the radius).  Constant
    quotients survive the monotonicity clause and are caught by the drop
    clause.
    """
    if m <= n:
        raise ValueError("need m > n for a vanishing quotient")
    pts = grid.points()
    radii = grid.radii()
    g = system.member(m).log_eval(pts) - system.member(n).log_eval(pts)
    log_drop = np.log(drop)
    monotone = True
    dropped = True
    worst_step = -np.inf
    boundary_drop = np.inf
    for ray in grid.rays():
        beyond = ray[radii[ray] >= radius]
        if beyond.size < 3:
            raise ValueError("grid too small for the requested radius")
        prof = g[beyond]
        worst_step = max(worst_step, float(np.diff(prof).max()))
        if np.any(np.diff(prof) > _SLACK):
            monotone = False
        fall = float(prof[-1] - prof[0])
        boundary_drop = min(boundary_drop, fall)
        if fall > log_drop:
            dropped = False
    return ConditionSResult(ok=monotone and dropped, monotone_beyond=monotone,
                            dropped=dropped, worst_step=worst_step,
                            boundary_drop=boundary_drop, radius=radius)


@dataclass(frozen=True)
class ConditionVResult:
    """Pointwise witness check min_j lambda_j v_j <= max(v_n / n, v)."""

    ok: bool
    max_violation: float
    worst_point: tuple

    def as_record(self):
        return {"ok": self.ok, "max_violation": self.max_violation,
                "worst_point": list(self.worst_point)}


def check_condition_v(system, n, coefficients, floor_weight, grid):
    """Verify a supplied (V)-witness for index n on the grid.

    coefficients is (lambda_1, ..., lambda_N); the check is
    min_j lambda_j v_j(x) <= max(v_n(x) / n, floor_weight(x)) pointwise.
    Witness synthesis is out of scope; this only audits a given witness.
    """
    if len(coefficients) < 1 or any(c <= 0 for c in coefficients):
        raise ValueError("coefficients must be positive and nonempty")
    pts = grid.points()
    lhs = np.stack([np.log(c) + system.member(j + 1).log_eval(pts)
                    for j, c in enumerate(coefficients)]).min(axis=0)
    rhs = np.maximum(system.member(n).log_eval(pts) - np.log(n),
                     floor_weight.log_eval(pts))
    gap = lhs - rhs
    i = int(np.argmax(gap))
    return ConditionVResult(ok=bool(gap[i] <= _SLACK),
                            max_violation=float(gap[i]),
                            worst_point=tuple(pts[i]))


def condition_v_witness_check(system, lambdas, floor_weight, depth_of_n, grid):
    """Audit a condition (V) witness across several indices at once.

    depth_of_n maps each tested n to the truncation depth N of the
    infimum on the left; for every entry the pointwise inequality
    min_{j <= N} lambda_j v_j <= max(v_n / n, floor_weight) must hold.
    Returns (all_ok, {n: ConditionVResult}).
    """
    lambdas = list(lambdas)
    results = {}
    for n in sorted(depth_of_n):
        depth = int(depth_of_n[n])
        if depth < 1 or depth > len(lambdas):
            raise ValueError(f"depth {depth} for n={n} outside lambda range")
        results[int(n)] = check_condition_v(system, int(n), lambdas[:depth],
                                            floor_weight, grid)
    ok = all(r.ok for r in results.values())
    return ok, results


# -- translation admissibility ----------------------------------------------


@dataclass(frozen=True)
class AdmissibilityResult:
    """Measured constants for v_m(x+y) <= C v_n(x) exp(assoc(tau |y|))."""

    ok: bool
    pairs: list          # [(n, m, measured_C)]
    worst_c: float
    tau: float
    bound: float | None

    def as_record(self):
        return {"ok": self.ok, "tau": self.tau, "bound": self.bound,
                "worst_c": self.worst_c,
                "pairs": [{"n": n, "m": m, "c": c} for n, m, c in self.pairs]}


def admissibility_check(system, growth_seq, pairs, tau, grid_x, grid_y,
                        bound=None):
    """Measure translation constants of the system against a growth scale.

    For each (n, m) pair the sup over the (x, y) product grid of
    v_m(x + y) / (v_n(x) exp(assoc(tau |y|))) is recorded.  With ``bound``
    given, ok means every measured constant stays within it (slack 1e-9);
    otherwise ok just means every constant is finite on the grid.
    """
    if tau <= 0:
        raise ValueError("tau must be positive")
    X = grid_x.points()
    Y = grid_y.points()
    growth = log_associated(growth_seq,
                            tau * np.sqrt(np.sum(Y * Y, axis=1)))
    measured = []
    worst = -np.inf
    for n, m in pairs:
        if m < n:
            raise ValueError("pairs must have m >= n")
        shifted = (X[:, None, :] + Y[None, :, :]).reshape(-1, X.shape[1])
        lhs = system.member(m).log_eval(shifted).reshape(len(X), len(Y))
        rhs = system.member(n).log_eval(X)[:, None] + growth[None, :]
        log_c = float(np.max(lhs - rhs))
        measured.append((int(n), int(m), float(np.exp(log_c))))
        worst = max(worst, log_c)
    worst_c = float(np.exp(worst))
    if bound is None:
        ok = np.isfinite(worst_c)
    else:
        ok = worst_c <= bound * (1 + 1e-9)
    return AdmissibilityResult(ok=bool(ok), pairs=measured, worst_c=worst_c,
                               tau=tau, bound=bound)


@dataclass(frozen=True)
class ChainLink:
    """One admissibility step: index, step constant, membership constant."""

    n: int
    step_constant: float        # C with v_next(x+y) <= C v_n(x) e^{assoc}
    membership_constant: float  # C' with v <= C' v_next

    def as_record(self):
        return {"n": self.n, "step_constant": self.step_constant,
                "membership_constant": self.membership_constant}


def measure_membership_constant(candidate, weight, grid):
    """Grid sup of candidate / weight, in linear space."""
    pts = grid.points()
    return float(np.exp(np.max(candidate.log_eval(pts) - weight.log_eval(pts))))


def measure_chain(system, indices, candidate, growth_seq, tau, grid_x, grid_y,
                  member_grid=None):
    """Measure the admissibility chain along ``indices`` toward ``candidate``.

    indices = (n_0, ..., n_J); for each j < J the step constant C_j is the
    admissibility constant of (n_j, n_{j+1}) and the membership constant
    C'_{j+1} bounds candidate / v_{n_{j+1}} on member_grid (grid_x when
    omitted).  Returns the list of ChainLinks feeding
    build_dominating_weight.
    """
    if len(indices) < 2:
        raise ValueError("a chain needs at least two indices")
    member_grid = member_grid if member_grid is not None else grid_x
    links = []
    for j in range(len(indices) - 1):
        n, nxt = indices[j], indices[j + 1]
        adm = admissibility_check(system, growth_seq, [(n, nxt)], tau,
                                  grid_x, grid_y)
        memb = measure_membership_constant(candidate, system.member(nxt),
                                           member_grid)
        links.append(ChainLink(n=int(n), step_constant=adm.pairs[0][2],
                               membership_constant=memb))
    return links


def build_dominating_weight(system, links):
    """Assemble vbar = inf_j C_j C'_{j+1} v_{n_j} from a measured chain."""
    if not links:
        raise ValueError("need at least one chain link")
    terms = []
    for link in links:
        coef = np.log(link.step_constant) + np.log(link.membership_constant)
        terms.append((coef, system.member(link.n)))
    return InfimumWeight(terms)


@dataclass(frozen=True)
class TranslationDominationResult:
    """Grid check of v(x + y) <= vbar(x) exp(assoc(tau |y|))."""

    ok: bool
    max_log_gap: float
    worst_x: tuple
    worst_y: tuple

    def as_record(self):
        return {"ok": self.ok, "max_log_gap": self.max_log_gap,
                "worst_x": list(self.worst_x), "worst_y": list(self.worst_y)}


def check_translation_domination(candidate, vbar, growth_seq, tau,
                                 grid_x, grid_y, tol=_SLACK):
    """Verify the defining inequality of a dominating weight on a product grid."""
    X = grid_x.points()
    Y = grid_y.points()
    growth = log_associated(growth_seq, tau * np.sqrt(np.sum(Y * Y, axis=1)))
    shifted = (X[:, None, :] + Y[None, :, :]).reshape(-1, X.shape[1])
    lhs = candidate.log_eval(shifted).reshape(len(X), len(Y))
    rhs = vbar.log_eval(X)[:, None] + growth[None, :]
    gap = lhs - rhs
    i, j = np.unravel_index(int(np.argmax(gap)), gap.shape)
    return TranslationDominationResult(ok=bool(gap[i, j] <= tol),
                                       max_log_gap=float(gap[i, j]),
                                       worst_x=tuple(X[i]), worst_y=tuple(Y[j]))


# -- mollification ----------------------------------------------------------


def standard_bump(radius=1.0):
    """The C-infinity bump c * exp(-1/(1 - (u/R)^2)) on (-R, R), unit mass."""
    if radius <= 0:
        raise ValueError("radius must be positive")
    u = np.linspace(-radius, radius, 4001)
    with np.errstate(divide="ignore", over="ignore"):
        core = np.where(np.abs(u) < radius,
                        np.exp(-1.0 / np.maximum(1.0 - (u / radius) ** 2, 1e-300)),
                        0.0)
    mass = np.trapezoid(core, u)

    def bump(t):
        t = np.asarray(t, dtype=float)
        inside = np.abs(t) < radius
        out = np.zeros(t.shape)
        with np.errstate(divide="ignore", over="ignore"):
            out[inside] = np.exp(-1.0 / (1.0 - (t[inside] / radius) ** 2)) / mass
        return out

    bump.radius = radius
    return bump


def mollify_weight(x, values, bump, radius=None, nodes=401):
    """Smooth a sampled 1-D weight by convolution with a unit-mass bump.

    x, values: the sample table (values > 0).  bump: callable supported in
    [-radius, radius]; its mass is re-quadratured and must be 1 within
    1e-8.  The convolution uses the trapezoid rule with linear resampling
    of the table (edge values clamp), and the result comes back as an
    InterpolatedWeight on the same nodes.  Near the edges the clamped
    extension leaks in; trust the interior.
    """
    x = np.asarray(x, dtype=float)
    values = np.asarray(values, dtype=float)
    if np.any(values <= 0):
        raise ValueError("weights are strictly positive")
    radius = radius if radius is not None else getattr(bump, "radius", None)
    if radius is None or radius <= 0:
        raise ValueError("bump support radius required")
    u = np.linspace(-radius, radius, nodes)
    phi = np.asarray(bump(u), dtype=float)
    mass = np.trapezoid(phi, u)
    if abs(mass - 1.0) > 1e-8:
        raise ValueError(f"bump mass {mass} differs from 1 beyond 1e-8")
    shifted = x[:, None] - u[None, :]
    samples = np.interp(shifted, x, values)
    conv = np.trapezoid(phi[None, :] * samples, u, axis=1)
    return InterpolatedWeight(x, np.log(conv))


# -- canonical operation names ----------------------------------------------

NachbinWeight = InfimumWeight
condition_s_check = check_condition_s
build_vbar = build_dominating_weight
