"""Verification suites: named certificate chains over one configuration.

A suite is a fixed, ordered list of checks.  Each check reads the shared
SuiteContext (config objects plus memoized intermediates), measures its
constants, and emits a CheckRecord carrying a plain-text statement of the
inequality it certifies and a pass / fail / inconclusive status.  Verdicts
never claim more than the grids resolve: saturated derivative budgets and
boundary suprema downgrade to inconclusive instead of passing.

Runs are deterministic for a given config and seed regardless of the
thread count: randomness is drawn from per-check generators with fixed
offsets, memoized values are value-identical under races, and records are
assembled in registry order.
"""

import threading
from concurrent.futures import ThreadPoolExecutor

import numpy as np
from scipy.ndimage import maximum_filter1d, minimum_filter1d

from . import denominators as dn
from . import functions as fn
from . import sequences as sq
from . import stft as st
from . import weights as wt
from .errors import UltranormError
from .report import CheckRecord, VerificationReport

# fixed rng offsets so thread scheduling cannot reorder draws
_RNG_GRID_NODES = 101
_RNG_COVARIANCE = 202


class SuiteContext:
    """Materialized config objects and memoized intermediates."""

    def __init__(self, cfg):
        self.cfg = cfg
        self.dim = cfg.dimension
        self.seq = cfg.sequence("M")
        self.growth = cfg.sequence("A")
        self.system = cfg.system("V")
        self.r_names = list(cfg.r_sequences)
        self.r_list = cfg.r_list()
        self.h = cfg.h
        self.tau = cfg.tau
        self.pairs = list(cfg.pairs)
        self.chain = list(cfg.chain)
        self.tol = cfg.tolerance
        self.seed = cfg.seed if cfg.seed is not None else 0
        self.functions = cfg.functions()
        self.window = fn.HermiteGaussian.gaussian(dim=self.dim)
        self.phase = cfg.grid("phase")
        self.space = cfg.grid("space")
        self.norm_grid = cfg.grid("norm")
        self.time_grid = cfg.grid("time")
        self.product_grid = cfg.grid("product")
        self.witness = sq.fit_m2prime(self.seq, 200)
        self._lock = threading.Lock()
        self._memo = {}

    def memo(self, key, build):
        got = self._memo.get(key)
        if got is None:
            val = build()   # concurrent builds yield identical values
            with self._lock:
                got = self._memo.setdefault(key, val)
        return got

    def field(self, idx):
        """Cached STFT of family member idx against the Gaussian window."""
        return self.memo(("stft", idx),
                        lambda: st.stft_grid(self.functions[idx], self.window,
                                             self.phase, return_t_axis=True))

    def regularized(self, name):
        """Cached (r, r', certificate) triple for the named r sequence."""
        def build():
            r = self.cfg.r_sequence(name)
            reg = dn.regularize(r)
            cert = dn.certify_regularization(self.seq, r, reg, 200)
            return r, reg, cert
        return self.memo(("reg", name), build)

    def chain_bundle(self):
        """Cached (candidate, links, vbar, domination, membership)."""
        def build():
            cand = self.system.member(self.chain[0])
            links = wt.measure_chain(self.system, self.chain, cand,
                                     self.growth, self.tau,
                                     self.product_grid, self.product_grid)
            vbar = wt.build_vbar(self.system, links)
            dom = wt.check_translation_domination(
                cand, vbar, self.growth, self.tau,
                self.product_grid, self.product_grid,
                tol=self.tol("domination"))
            # a finite chain certifies membership only up to its own
            # depth: vbar / v_n can genuinely diverge past the last link
            depth = max(link.n for link in links)
            memb = wt.nachbin_membership(vbar, self.system, depth,
                                         self.product_grid)
            return cand, links, vbar, dom, memb
        return self.memo(("chain",), build)

    def grid_note(self, *kinds):
        return {k: dict(self.cfg.grid_decls[k]) for k in kinds}


def _aggregate(statuses):
    """fail dominates, then inconclusive, then pass."""
    if any(s == "fail" for s in statuses):
        return "fail"
    if any(s == "inconclusive" for s in statuses):
        return "inconclusive"
    return "pass"


def _status(ok):
    return "pass" if ok else "fail"


# -- sequence_checks --------------------------------------------------------


def check_seq_log_convexity(ctx):
    upto = 200
    ok, first_bad = sq.check_m1(ctx.seq, upto)
    return CheckRecord(
        name="seq_log_convexity",
        statement="M_p^2 <= M_{p-1} M_{p+1} for 1 <= p < P",
        status=_status(ok),
        constants={"checked_upto": upto,
                   "first_violation": -1 if first_bad is None else first_bad})


def check_seq_ratio_growth(ctx):
    w = ctx.witness
    ok_fit, worst = sq.verify_m2prime(ctx.seq, w)
    t = np.geomspace(1e-2, 1e3, 200)
    decays = [sq.check_m2prime_decay(ctx.seq, w, d, t)
              for d in range(1, ctx.dim + 1)]
    top = decays[-1]
    return CheckRecord(
        name="seq_ratio_growth",
        statement=("M_{p+1} <= C0 H^p M_p with minimal C0, H; "
                   "exp(M(t) - M(H^{d+1} t)) <= (2 C0)^{d+1} / (1 + t^{d+1}) "
                   "and M(H^k t) - M(t) >= k log(t / C0)"),
        status=_status(ok_fit and all(r.ok for r in decays)),
        constants={"c0": w.c0, "h": w.h, "worst_margin": worst,
                   "max_ratio": top.max_ratio, "min_margin": top.min_margin,
                   "dim": ctx.dim},
        tolerances={"slack": 1e-9})


def check_seq_associated(ctx):
    t = np.geomspace(1e-2, 1e3, 200)
    vals = sq.associated_function(ctx.seq, t)
    at_zero = sq.associated_function(ctx.seq, np.array([0.0]))[0]
    monotone = bool(np.all(np.diff(vals) >= -1e-12))
    ok = monotone and at_zero == 0.0 and bool(np.all(np.isfinite(vals)))
    return CheckRecord(
        name="seq_associated",
        statement="M(t) = sup_p log(t^p M_0 / M_p) is finite, "
                  "non-decreasing, and M(0) = 0",
        status=_status(ok),
        constants={"max_value": float(vals[-1]), "at_zero": float(at_zero),
                   "points": int(t.size)},
        table={"t": [float(x) for x in t],
               "assoc": [float(x) for x in vals]})


def check_seq_log_power_gap(ctx):
    res = sq.precedes_log_growth(ctx.seq, 200)
    return CheckRecord(
        name="seq_log_power_gap",
        statement="M_p^{1/p} / log p increases without bound "
                  "(truncated tail heuristic)",
        status=_status(res.verdict),
        constants={"last_quotient": res.last_quotient,
                   "threshold": res.threshold,
                   "increasing_tail": res.increasing_tail,
                   "checked_upto": res.checked_upto},
        notes="finite-window evidence only; divergence is asserted from the "
              "tail trend, not proved")


def check_seq_shifted_domination(ctx):
    t = np.geomspace(1e-1, 1e3, 200)
    rows = {"r": [], "max_gap": [], "tail_nonincreasing": []}
    statuses = []
    for name in ctx.r_names:
        r, _, _ = ctx.regularized(name)
        dom = dn.nachbin_domination_check(ctx.seq, r, 1, t)
        rows["r"].append(name)
        rows["max_gap"].append(dom.max_gap)
        rows["tail_nonincreasing"].append(dom.tail_nonincreasing)
        statuses.append(_status(dom.ok))
    return CheckRecord(
        name="seq_shifted_domination",
        statement="M_r(t) - M(t / n) stays bounded above with a "
                  "non-increasing tail at n = 1 for every configured r",
        status=_aggregate(statuses),
        constants={"worst_gap": max(rows["max_gap"])},
        table=rows)


def check_seq_regularization(ctx):
    rows = {"r": [], "c0": [], "h": [], "ok": []}
    statuses = []
    for name in ctx.r_names:
        r, reg, cert = ctx.regularized(name)
        again = dn.regularize(reg)
        idem = bool(np.allclose(again.values_upto(200), reg.values_upto(200),
                                rtol=0.0, atol=0.0))
        rows["r"].append(name)
        rows["c0"].append(cert.witness.c0)
        rows["h"].append(cert.witness.h)
        rows["ok"].append(cert.ok and idem)
        statuses.append(_status(cert.ok and idem))
    return CheckRecord(
        name="seq_regularization",
        statement="r'_j = min(r_j, c 2^j) satisfies r' <= r, non-decreasing "
                  "and unbounded, r'_{j+1} <= 2^{j+1} r'_j, M_p prod r'_j "
                  "admits a ratio-growth witness, and regularizing twice is "
                  "the identity",
        status=_aggregate(statuses),
        constants={"checked_upto": 200},
        table=rows)


# -- weight_checks ----------------------------------------------------------


def check_wt_decreasing(ctx):
    n_max = max(max(ctx.chain), max(m for _, m in ctx.pairs))
    res = wt.check_decreasing(ctx.system, n_max, ctx.product_grid)
    return CheckRecord(
        name="wt_decreasing",
        statement="v_{n+1}(x) <= v_n(x) up to slack for 1 <= n < n_max",
        status=_status(res.ok),
        constants={"worst_gap": res.worst_gap, "worst_n": res.worst_n,
                   "n_max": n_max},
        tolerances={"decreasing": ctx.tol("decreasing")},
        grid=ctx.grid_note("product"))


def check_wt_condition_s(ctx):
    rows = {"n": [], "m": [], "monotone_beyond": [], "dropped": []}
    statuses = []
    for n, m in ctx.pairs:
        if m <= n:
            continue
        res = wt.condition_s_check(ctx.system, n, m, ctx.space)
        rows["n"].append(n)
        rows["m"].append(m)
        rows["monotone_beyond"].append(res.monotone_beyond)
        rows["dropped"].append(res.dropped)
        statuses.append(_status(res.ok))
    return CheckRecord(
        name="wt_condition_s",
        statement="v_m / v_n decays monotonically along rays beyond a fixed "
                  "radius and falls below 1/2 by the boundary",
        status=_aggregate(statuses) if statuses else "inconclusive",
        constants={"pairs_checked": len(statuses)},
        grid=ctx.grid_note("space"),
        table=rows)


def check_wt_admissibility(ctx):
    res = wt.admissibility_check(ctx.system, ctx.growth, ctx.pairs, ctx.tau,
                                 ctx.product_grid, ctx.product_grid)
    rows = {"n": [p[0] for p in res.pairs],
            "m": [p[1] for p in res.pairs],
            "c": [p[2] for p in res.pairs]}
    return CheckRecord(
        name="wt_admissibility",
        statement="v_m(x + y) <= C v_n(x) exp(A(tau |y|)) with finite "
                  "measured C for every configured pair",
        status=_status(res.ok),
        constants={"worst_c": res.worst_c, "tau": res.tau},
        tolerances={"admissibility": ctx.tol("admissibility")},
        grid=ctx.grid_note("product"),
        table=rows)


def check_wt_chain_vbar(ctx):
    cand, links, vbar, dom, memb = ctx.chain_bundle()
    statuses = [_status(dom.ok), memb.status]
    rows = {"n": [l.n for l in links],
            "step_constant": [l.step_constant for l in links],
            "membership_constant": [l.membership_constant for l in links]}
    return CheckRecord(
        name="wt_chain_vbar",
        statement="vbar = inf_j C_j C'_{j+1} v_{n_j} from the measured chain "
                  "satisfies v(x + y) <= vbar(x) exp(A(tau |y|)) on the "
                  "product grid, and vbar stays dominated by the system",
        status=_aggregate(statuses),
        constants={"max_log_gap": dom.max_log_gap,
                   "chain": list(ctx.chain),
                   "membership_status": memb.status},
        tolerances={"domination": ctx.tol("domination")},
        grid=ctx.grid_note("product"),
        table=rows)


def check_wt_mollification(ctx):
    radius = 0.5
    axis = ctx.space.axis
    member = ctx.system.member(1)
    vals = np.exp(member.log_eval(axis[:, None]))
    smooth = wt.mollify_weight(axis, vals, wt.standard_bump(radius))
    sm = np.exp(smooth.log_eval(axis[:, None]))
    step = axis[1] - axis[0]
    half = int(np.ceil((radius + step) / step))
    hi = maximum_filter1d(vals, 2 * half + 1)
    lo = minimum_filter1d(vals, 2 * half + 1)
    interior = np.abs(axis) <= axis[-1] - (radius + step)
    ok = bool(np.all(sm[interior] <= hi[interior] * (1 + 1e-6))
              and np.all(sm[interior] >= lo[interior] * (1 - 1e-6)))
    dev = float(np.max(np.abs(sm[interior] / vals[interior] - 1.0)))
    return CheckRecord(
        name="wt_mollification",
        statement="the mollified weight stays inside the local min / max "
                  "band of the original over the bump support",
        status=_status(ok),
        constants={"bump_radius": radius, "max_rel_deviation": dev},
        grid=ctx.grid_note("space"))


# -- transform_checks -------------------------------------------------------


def _random_mesh_nodes(ctx, rng, count):
    """Sampled (x, xi) grid nodes as index tuples plus coordinate arrays."""
    g = ctx.phase
    d = ctx.dim
    ix = rng.integers(0, g.x_points, size=(count, d))
    iq = rng.integers(0, g.xi_points, size=(count, d))
    x = g.x_axis[ix]
    xi = g.xi_axis[iq]
    return ix, iq, x, xi


def check_tf_grid_vs_direct(ctx):
    rng = np.random.default_rng(ctx.seed + _RNG_GRID_NODES)
    f = ctx.functions[0]
    S, _ = ctx.field(0)
    count = 50 if ctx.dim == 1 else 12
    ix, iq, x, xi = _random_mesh_nodes(ctx, rng, count)
    direct = st.stft_direct(f, ctx.window, x, xi)
    d = ctx.dim
    flat = S.flat
    xflat = np.ravel_multi_index(ix.T, (ctx.phase.x_points,) * d)
    qflat = np.ravel_multi_index(iq.T, (ctx.phase.xi_points,) * d)
    on_grid = flat[xflat, qflat]
    scale = float(np.abs(S.values).max())
    err = float(np.abs(on_grid - direct).max() / scale)
    tol = ctx.tol("grid_vs_direct")
    return CheckRecord(
        name="tf_grid_vs_direct",
        statement="chirp-z grid values of V_psi f match adaptive direct "
                  "quadrature at randomly sampled nodes",
        status=_status(err <= tol),
        constants={"max_rel_error": err, "nodes": count},
        tolerances={"grid_vs_direct": tol},
        grid=ctx.grid_note("phase"))


def check_tf_covariance(ctx):
    rng = np.random.default_rng(ctx.seed + _RNG_COVARIANCE)
    f = ctx.functions[0]
    d = ctx.dim
    count = 20 if d == 1 else 8
    x = rng.uniform(-2.0, 2.0, size=(count, d))
    xi = rng.uniform(-2.0, 2.0, size=(count, d))
    u = rng.uniform(-1.0, 1.0, size=(d,))
    shifted = f.translate(u)
    lhs = st.stft_direct(shifted, ctx.window, x, xi)
    rhs = np.exp(-2j * np.pi * xi @ u) * st.stft_direct(f, ctx.window,
                                                        x - u, xi)
    scale = max(float(np.abs(lhs).max()), 1e-30)
    err = float(np.abs(lhs - rhs).max() / scale)
    tol = ctx.tol("covariance")
    return CheckRecord(
        name="tf_covariance",
        statement="V(T_u f)(x, xi) = e^{-2 pi i xi . u} V f(x - u, xi)",
        status=_status(err <= tol),
        constants={"max_rel_error": err, "points": count,
                   "shift": [float(v) for v in u]},
        tolerances={"covariance": tol})


def check_tf_isometry(ctx):
    tol = ctx.tol("isometry")
    rows = {"function": [], "ratio": [], "edge_mass": []}
    statuses = []
    for idx in range(min(5, len(ctx.functions))):
        res = st.isometry_check(ctx.functions[idx], ctx.window, ctx.phase,
                                tol=tol)
        rows["function"].append(ctx.functions[idx].describe())
        rows["ratio"].append(res.ratio)
        rows["edge_mass"].append(res.edge_mass)
        statuses.append(_status(res.ok))
    worst = max(abs(r - 1.0) for r in rows["ratio"])
    return CheckRecord(
        name="tf_isometry",
        statement="||V_psi f||_2 = ||psi||_2 ||f||_2 on the phase-space grid",
        status=_aggregate(statuses),
        constants={"worst_deviation": worst},
        tolerances={"isometry": tol},
        grid=ctx.grid_note("phase"),
        table=rows)


def check_tf_reconstruction(ctx):
    tol = ctx.tol("reconstruction")
    res = st.reconstruction_check(ctx.window, ctx.window, ctx.window,
                                  ctx.phase, ctx.time_grid.axis, tol=tol)
    return CheckRecord(
        name="tf_reconstruction",
        statement="(gamma, psi)^{-1} V*_gamma V_psi phi = phi on the time "
                  "axis for the Gaussian triple",
        status=_status(res.ok),
        constants={"max_rel_error": res.max_rel_error,
                   "pairing_re": float(res.pairing.real),
                   "pairing_im": float(res.pairing.imag),
                   "edge_mass": res.edge_mass},
        tolerances={"reconstruction": tol},
        grid=ctx.grid_note("phase", "time"))


# -- prop_stft_gg -----------------------------------------------------------


def check_gg_hypothesis(ctx):
    res = wt.admissibility_check(ctx.system, ctx.growth, ctx.pairs, ctx.tau,
                                 ctx.product_grid, ctx.product_grid)
    return CheckRecord(
        name="gg_hypothesis_admissibility",
        statement="hypothesis: v_m(x + y) <= C v_n(x) exp(A(tau |y|)) holds "
                  "with finite C for the configured pairs",
        status=_status(res.ok),
        constants={"worst_c": res.worst_c, "tau": res.tau},
        grid=ctx.grid_note("product"))


def check_gg_decay_bound(ctx):
    n0, m0 = ctx.pairs[0]
    w = ctx.system.member(n0)
    v = ctx.system.member(m0)
    rows = {"function": [], "c": [], "status": []}
    statuses = []
    for idx, phi in enumerate(ctx.functions):
        res = st.decay_bound_check(phi, ctx.window, ctx.seq, ctx.h, v, w,
                                   ctx.phase, ctx.norm_grid,
                                   tol=ctx.tol("moment"))
        rows["function"].append(phi.describe())
        rows["c"].append(res.c_measured)
        rows["status"].append(res.status)
        statuses.append(res.status)
    return CheckRecord(
        name="gg_decay_bound",
        statement="|V_psi phi(x, xi)| v_m(x) e^{M(pi h |xi| / sqrt d)} <= "
                  "C M_0 ||phi||_{M, h, v_n} with an interior profile max "
                  "and consistent moment reads up to |alpha| = 10",
        status=_aggregate(statuses),
        constants={"worst_c": max(rows["c"]), "h": ctx.h,
                   "pair": [n0, m0]},
        tolerances={"moment": ctx.tol("moment")},
        grid=ctx.grid_note("phase", "norm"),
        table=rows)


def check_gg_adjoint_bound(ctx):
    n0, m0 = ctx.pairs[0]
    w = ctx.system.member(n0)
    v = ctx.system.member(m0)
    rows = {"function": [], "ratio": [], "status": []}
    statuses = []
    for idx, phi in enumerate(ctx.functions):
        S, _ = ctx.field(idx)
        res = st.adjoint_bound_check(S, ctx.window, ctx.seq, ctx.h, v, w,
                                     ctx.witness, ctx.time_grid,
                                     tol=ctx.tol("moment"))
        rows["function"].append(phi.describe())
        rows["ratio"].append(res.ratio)
        rows["status"].append(res.status)
        statuses.append(res.status)
    k_out = ctx.h / (4.0 * ctx.witness.h ** (ctx.dim + 1) * np.pi)
    return CheckRecord(
        name="gg_adjoint_bound",
        statement="||V* F||_{M, k, v_m} <= C sup |F| v_n(x) e^{M(h |xi|)} "
                  "at k = h / (4 H^{d+1} pi), on the family's transforms",
        status=_aggregate(statuses),
        constants={"worst_ratio": max(rows["ratio"]), "k_out": k_out,
                   "pair": [n0, m0]},
        grid=ctx.grid_note("phase", "time"),
        table=rows)


def check_gg_roundtrip(ctx):
    tol = ctx.tol("reconstruction")
    rows = {"function": [], "max_rel_error": []}
    statuses = []
    for phi in ctx.functions:
        res = st.reconstruction_check(phi, ctx.window, ctx.window, ctx.phase,
                                      ctx.time_grid.axis, tol=tol)
        rows["function"].append(phi.describe())
        rows["max_rel_error"].append(res.max_rel_error)
        statuses.append(_status(res.ok))
    return CheckRecord(
        name="gg_roundtrip",
        statement="phi is recovered from V* V phi / (psi, psi) for every "
                  "family member",
        status=_aggregate(statuses),
        constants={"worst_error": max(rows["max_rel_error"])},
        tolerances={"reconstruction": tol},
        grid=ctx.grid_note("phase", "time"),
        table=rows)


# -- prop_stft_projective ---------------------------------------------------


def check_proj_regularization(ctx):
    rows = {"r": [], "dominated": [], "monotone": [], "tempered": [],
            "product_witnessed": []}
    statuses = []
    for name in ctx.r_names:
        _, reg, cert = ctx.regularized(name)
        rows["r"].append(name)
        rows["dominated"].append(cert.dominated)
        rows["monotone"].append(cert.monotone)
        rows["tempered"].append(cert.tempered)
        rows["product_witnessed"].append(cert.product_witnessed)
        statuses.append(_status(cert.ok))
    return CheckRecord(
        name="proj_regularization",
        statement="every configured r admits the tempered regularization "
                  "r' with its four-point certificate",
        status=_aggregate(statuses),
        constants={"checked_upto": 200},
        table=rows)


def check_proj_vbar(ctx):
    cand, links, vbar, dom, memb = ctx.chain_bundle()
    return CheckRecord(
        name="proj_vbar_domination",
        statement="the chain-built vbar dominates translates of v: "
                  "v(x + y) <= vbar(x) exp(A(tau |y|))",
        status=_aggregate([_status(dom.ok), memb.status]),
        constants={"max_log_gap": dom.max_log_gap,
                   "membership_status": memb.status},
        grid=ctx.grid_note("product"))


def check_proj_inequality(ctx):
    cand, links, vbar, dom, memb = ctx.chain_bundle()
    d = ctx.dim
    xi_r = np.sqrt(np.sum(ctx.phase.xi_mesh_points() ** 2, axis=1))
    log_vx = cand.log_eval(ctx.phase.x_mesh_points())
    rows = {"function": [], "r": [], "c": [], "conclusive": []}
    statuses = []
    for name in ctx.r_names:
        _, reg, _ = ctx.regularized(name)
        assoc_xi = dn.shifted_associated_function(
            ctx.seq, reg, np.pi * xi_r / np.sqrt(d))
        for idx, phi in enumerate(ctx.functions):
            S, _ = ctx.field(idx)
            with np.errstate(divide="ignore"):
                lhs = np.log(np.abs(S.flat))
            lhs = float((lhs + log_vx[:, None] + assoc_xi[None, :]).max())
            semi = fn.projective_seminorm(phi, ctx.seq, reg, vbar,
                                          ctx.norm_grid)
            if semi.value == 0.0:
                c = 0.0 if not np.isfinite(lhs) else np.inf
            else:
                c = float(np.exp(lhs - ctx.seq.log_m0 - semi.log_value))
            rows["function"].append(phi.describe())
            rows["r"].append(name)
            rows["c"].append(c)
            rows["conclusive"].append(bool(semi.conclusive))
            if not np.isfinite(c):
                statuses.append("fail")
            elif semi.conclusive:
                statuses.append("pass")
            else:
                statuses.append("inconclusive")
    return CheckRecord(
        name="proj_inequality",
        statement="sup |V phi| v(x) e^{M_{r'}(pi |xi| / sqrt d)} <= "
                  "C M_0 ||phi||_{M, r', vbar} with finite C for every "
                  "phi and r",
        status=_aggregate(statuses),
        constants={"worst_c": max(rows["c"]) if rows["c"] else 0.0},
        grid=ctx.grid_note("phase", "norm"),
        table=rows)


def check_seminorm_table(ctx):
    """Seminorm survey used by the CLI; not part of any suite."""
    w = ctx.system.member(ctx.pairs[0][0])
    cand, links, vbar, dom, memb = ctx.chain_bundle()
    rows = {"function": [], "inductive": []}
    for name in ctx.r_names:
        rows["projective_" + name] = []
    statuses = []
    for phi in ctx.functions:
        a = fn.sup_seminorm(phi, ctx.seq, ctx.h, w, ctx.norm_grid)
        rows["function"].append(phi.describe())
        rows["inductive"].append(a.value)
        good = a.conclusive and np.isfinite(a.value)
        for name in ctx.r_names:
            _, reg, _ = ctx.regularized(name)
            semi = fn.projective_seminorm(phi, ctx.seq, reg, vbar,
                                          ctx.norm_grid)
            rows["projective_" + name].append(semi.value)
            good = good and semi.conclusive and np.isfinite(semi.value)
        statuses.append("pass" if good else "inconclusive")
    return CheckRecord(
        name="seminorm_table",
        statement="the inductive seminorm ||phi||_{M, h, v_n} and the "
                  "projective seminorms ||phi||_{M, r', vbar} are finite "
                  "with interior, budget-respecting suprema",
        status=_aggregate(statuses),
        constants={"h": ctx.h},
        grid=ctx.grid_note("norm"),
        table=rows)


# -- theorem_diagram --------------------------------------------------------


def check_diagram_nontrivial(ctx):
    gap = sq.precedes_log_growth(ctx.seq, 200)
    compat = fn.check_gaussian_compat(ctx.seq)
    return CheckRecord(
        name="diagram_nontrivial",
        statement="the class is nontrivial: M outgrows the log-power scale "
                  "and admits Gaussian-type members",
        status=_status(gap.verdict and compat),
        constants={"last_quotient": gap.last_quotient,
                   "gaussian_compatible": compat})


def check_diagram_dual_window(ctx):
    pairing = ctx.window.inner(ctx.window)
    gamma = ctx.window * (1.0 / pairing)
    renorm = gamma.inner(ctx.window)
    tol = ctx.tol("pairing")
    err = abs(renorm - 1.0)
    return CheckRecord(
        name="diagram_dual_window",
        statement="gamma = psi / (psi, psi) satisfies (gamma, psi) = 1",
        status=_status(err <= tol),
        constants={"pairing_re": float(renorm.real),
                   "pairing_im": float(renorm.imag), "error": float(err)},
        tolerances={"pairing": tol})


def check_diagram_inclusions(ctx):
    n0, m0 = ctx.pairs[0]
    w = ctx.system.member(n0)
    v = ctx.system.member(m0)
    cand, links, vbar, dom, memb = ctx.chain_bundle()
    d = ctx.dim
    xi_r = np.sqrt(np.sum(ctx.phase.xi_mesh_points() ** 2, axis=1))
    assoc_xi = sq.associated_function(ctx.seq,
                                      np.pi * ctx.h * xi_r / np.sqrt(d))
    log_vx = v.log_eval(ctx.phase.x_mesh_points())
    rows = {"function": [], "seminorm": [], "transform_bound": [],
            "projective_max": []}
    statuses = []
    c1 = 0.0
    c2 = 0.0
    for idx, phi in enumerate(ctx.functions):
        a = fn.sup_seminorm(phi, ctx.seq, ctx.h, w, ctx.norm_grid)
        S, _ = ctx.field(idx)
        with np.errstate(divide="ignore"):
            wv = np.log(np.abs(S.flat)) + log_vx[:, None] + assoc_xi[None, :]
        top = int(np.argmax(wv))
        ix, iq = np.unravel_index(top, wv.shape)
        interior = not (st._mesh_index_on_edge(ix, ctx.phase.x_points, d)
                        or st._mesh_index_on_edge(iq, ctx.phase.xi_points, d))
        b = float(np.exp(wv[ix, iq]))
        projs = []
        proj_ok = True
        for name in ctx.r_names:
            _, reg, _ = ctx.regularized(name)
            semi = fn.projective_seminorm(phi, ctx.seq, reg, vbar,
                                          ctx.norm_grid)
            projs.append(semi.value)
            proj_ok = proj_ok and semi.conclusive and np.isfinite(semi.value)
        if a.value > 0:
            c1 = max(c1, b / (np.exp(ctx.seq.log_m0) * a.value))
        if b > 0:
            c2 = max(c2, max(projs) / b)
        good = a.conclusive and interior and proj_ok
        rows["function"].append(phi.describe())
        rows["seminorm"].append(a.value)
        rows["transform_bound"].append(b)
        rows["projective_max"].append(max(projs))
        statuses.append("pass" if good else "inconclusive")
    return CheckRecord(
        name="diagram_inclusions",
        statement="the inclusion chain composes with finite measured "
                  "constants: inductive seminorm -> weighted transform "
                  "bound -> projective seminorms",
        status=_aggregate(statuses),
        constants={"c_transform_per_seminorm": float(c1),
                   "c_projective_per_transform": float(c2),
                   "pair": [n0, m0]},
        grid=ctx.grid_note("phase", "norm"),
        table=rows)


def check_diagram_commutes(ctx):
    tol = ctx.tol("reconstruction")
    rows = {"function": [], "max_rel_error": []}
    statuses = []
    for phi in ctx.functions:
        res = st.reconstruction_check(phi, ctx.window, ctx.window, ctx.phase,
                                      ctx.time_grid.axis, tol=tol)
        rows["function"].append(phi.describe())
        rows["max_rel_error"].append(res.max_rel_error)
        statuses.append(_status(res.ok))
    return CheckRecord(
        name="diagram_commutes",
        statement="analysis then synthesis is the identity on the family, "
                  "so the diagram commutes",
        status=_aggregate(statuses),
        constants={"worst_error": max(rows["max_rel_error"])},
        tolerances={"reconstruction": tol},
        grid=ctx.grid_note("phase", "time"),
        table=rows)


def check_diagram_roumieu(ctx):
    bound = ctx.tol("agreement_bound")
    flat = wt.ConstantWeight(1.0, ctx.dim)
    rows = {"function": [], "inductive": [], "projective": []}
    statuses = []
    regs = [ctx.regularized(name)[1] for name in ctx.r_names]
    for phi in ctx.functions:
        prof = fn.level_sups(phi, flat, ctx.norm_grid, alpha_max=30)
        verdict = fn.finiteness_agreement(prof, ctx.seq, regs, bound=bound)
        rows["function"].append(phi.describe())
        rows["inductive"].append(verdict.inductive)
        rows["projective"].append(verdict.projective)
        statuses.append(_status(verdict.agree))
    return CheckRecord(
        name="diagram_roumieu_agreement",
        statement="the inductive and projective finiteness readings agree "
                  "on the family for every r'",
        status=_aggregate(statuses),
        constants={"bound": bound, "alpha_max": 30},
        grid=ctx.grid_note("norm"),
        table=rows)


# -- registry and runner ----------------------------------------------------


def _always(ctx):
    return True


def _not_constant_system(ctx):
    # condition (S) concerns genuinely decreasing families; a constant
    # system never drops and the check would report a vacuous fail
    return not isinstance(ctx.system, wt.ConstantSystem)


def _one_dimensional(ctx):
    return ctx.dim == 1


REGISTRY = (
    ("sequence_checks", "seq_log_convexity", check_seq_log_convexity, _always),
    ("sequence_checks", "seq_ratio_growth", check_seq_ratio_growth, _always),
    ("sequence_checks", "seq_associated", check_seq_associated, _always),
    ("sequence_checks", "seq_log_power_gap", check_seq_log_power_gap, _always),
    ("sequence_checks", "seq_shifted_domination",
     check_seq_shifted_domination, _always),
    ("sequence_checks", "seq_regularization", check_seq_regularization,
     _always),
    ("weight_checks", "wt_decreasing", check_wt_decreasing, _always),
    ("weight_checks", "wt_condition_s", check_wt_condition_s,
     _not_constant_system),
    ("weight_checks", "wt_admissibility", check_wt_admissibility, _always),
    ("weight_checks", "wt_chain_vbar", check_wt_chain_vbar, _always),
    ("weight_checks", "wt_mollification", check_wt_mollification,
     _one_dimensional),
    ("transform_checks", "tf_grid_vs_direct", check_tf_grid_vs_direct,
     _always),
    ("transform_checks", "tf_covariance", check_tf_covariance, _always),
    ("transform_checks", "tf_isometry", check_tf_isometry, _always),
    ("transform_checks", "tf_reconstruction", check_tf_reconstruction,
     _always),
    ("prop_stft_gg", "gg_hypothesis_admissibility", check_gg_hypothesis,
     _always),
    ("prop_stft_gg", "gg_decay_bound", check_gg_decay_bound, _always),
    ("prop_stft_gg", "gg_adjoint_bound", check_gg_adjoint_bound, _always),
    ("prop_stft_gg", "gg_roundtrip", check_gg_roundtrip, _always),
    ("prop_stft_projective", "proj_regularization",
     check_proj_regularization, _always),
    ("prop_stft_projective", "proj_vbar_domination", check_proj_vbar,
     _always),
    ("prop_stft_projective", "proj_inequality", check_proj_inequality,
     _always),
    ("theorem_diagram", "diagram_nontrivial", check_diagram_nontrivial,
     _always),
    ("theorem_diagram", "diagram_dual_window", check_diagram_dual_window,
     _always),
    ("theorem_diagram", "diagram_inclusions", check_diagram_inclusions,
     _always),
    ("theorem_diagram", "diagram_commutes", check_diagram_commutes, _always),
    ("theorem_diagram", "diagram_roumieu_agreement", check_diagram_roumieu,
     _always),
)


def _run_one(name, f, ctx):
    # a certificate that cannot be computed is a failed certificate, not
    # a crashed run; genuine bugs (non-package errors) still propagate
    try:
        return f(ctx)
    except UltranormError as exc:
        return CheckRecord(name=name, statement="(aborted)", status="fail",
                           notes=f"aborted: {exc}")


def _execute(cfg, ctx, selected, threads):
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            futures = [pool.submit(_run_one, name, f, ctx)
                       for name, f in selected]
            checks = [fut.result() for fut in futures]
    else:
        checks = [_run_one(name, f, ctx) for name, f in selected]
    return VerificationReport(config=cfg.resolved(), checks=checks,
                              seed=cfg.seed)


def run_suites(cfg, threads=1, suites=None):
    """Run the selected suites and assemble a VerificationReport.

    suites defaults to the config's list.  The thread count only changes
    wall time; records come back in registry order with identical values.
    """
    wanted = list(suites) if suites is not None else list(cfg.suites)
    known = {suite for suite, _, _, _ in REGISTRY}
    unknown = sorted(set(wanted) - known)
    if unknown:
        raise ValueError(f"unknown suites {unknown} (known: {sorted(known)})")
    ctx = SuiteContext(cfg)
    selected = [(name, f) for suite, name, f, guard in REGISTRY
                if suite in wanted and guard(ctx)]
    return _execute(cfg, ctx, selected, threads)


def run_named(cfg, names, threads=1, extra=()):
    """Run specific registry checks by record name, plus optional extras.

    extra holds (name, builder) pairs outside the registry, appended after
    the named checks.  Guards still apply, so a name can drop out (for
    example condition (S) on a constant system).
    """
    ctx = SuiteContext(cfg)
    table = {name: (f, guard) for _, name, f, guard in REGISTRY}
    selected = []
    for name in names:
        f, guard = table[name]
        if guard(ctx):
            selected.append((name, f))
    selected.extend(extra)
    return _execute(cfg, ctx, selected, threads)
