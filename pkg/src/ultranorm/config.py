"""Experiment configuration: strict parsing and object construction.

Configs are plain JSON.  Validation is deliberately unforgiving: unknown
keys are errors at every level, and every omitted field is filled from the
defaults below so the resolved dictionary that lands in the report carries
full provenance.  Builder methods hand out the numeric objects.
"""

from __future__ import annotations

import json

import numpy as np

from .errors import ConfigError
from .grids import BoxGrid
from .sequences import WeightSequence
from .denominators import DivergingSequence
from .weights import (AssociatedExpSystem, AssociatedExpWeight,
                      ConstantSystem, ConstantWeight, ExponentialWeight,
                      GaussianDecaySystem, GaussianWeight,
                      PolynomialDecaySystem, PolynomialDecayWeight)
from .functions import HermiteGaussian, hermite_gaussian_family
from .stft import PhaseSpaceGrid, default_phase_grid

SUITE_NAMES = ("sequence_checks", "weight_checks", "transform_checks",
               "prop_stft_gg", "prop_stft_projective", "theorem_diagram")

DEFAULT_TOLERANCES = {
    "isometry": 1e-6,
    "reconstruction": 1e-6,
    "pairing": 1e-8,
    "moment": 1e-9,
    "drift": 0.05,
    "decreasing": 1e-12,
    "membership": 1e-9,
    "admissibility": 1e-9,
    "domination": 1e-9,
    "covariance": 1e-9,
    "grid_vs_direct": 1e-8,
    "agreement_bound": 1e12,
}

_DEFAULTS_D1 = {
    "space": {"extent": 20.0, "points": 2001},
    "norm": {"extent": 6.0, "points": 601},
    "time": {"extent": 10.0, "points": 501},
    "product": {"extent": 20.0, "points": 201},
}
_DEFAULTS_D2 = {
    "space": {"extent": 10.0, "points": 201},
    "norm": {"extent": 4.0, "points": 81},
    "time": {"extent": 6.0, "points": 61},
    "product": {"extent": 10.0, "points": 41},
}


def _require_keys(d, allowed, where, required=()):
    if not isinstance(d, dict):
        raise ConfigError(f"{where}: expected an object, got {type(d).__name__}")
    unknown = set(d) - set(allowed)
    if unknown:
        raise ConfigError(f"{where}: unknown keys {sorted(unknown)} "
                          f"(allowed: {sorted(allowed)})")
    missing = set(required) - set(d)
    if missing:
        raise ConfigError(f"{where}: missing required keys {sorted(missing)}")


def _one_of(d, forms, where):
    hits = [k for k in forms if k in d]
    if len(hits) != 1:
        raise ConfigError(f"{where}: give exactly one of {sorted(forms)}")
    return hits[0]


class ExperimentConfig:
    """Validated configuration with builders for every declared object."""

    TOP_KEYS = ("dimension", "sequences", "r_sequences", "weight_systems",
                "functions", "grids", "tolerances", "suites", "h", "tau",
                "pairs", "chain", "seed")

    def __init__(self, raw):
        _require_keys(raw, self.TOP_KEYS, "config")
        self.dimension = raw.get("dimension", 1)
        if self.dimension not in (1, 2):
            raise ConfigError("dimension must be 1 or 2")

        self.sequences = dict(raw.get("sequences", {"M": {"gevrey": 1.0}}))
        if "M" not in self.sequences:
            raise ConfigError("sequences: an entry named 'M' is required")
        if "A" not in self.sequences:
            self.sequences["A"] = dict(self.sequences["M"])
        for name, decl in self.sequences.items():
            self._check_sequence(decl, f"sequences.{name}")

        self.r_sequences = dict(raw.get("r_sequences", {
            "linear": {"linear": {"slope": 1.0, "offset": 1.0}},
            "sqrt": {"power": {"exponent": 0.5, "offset": 1.0}},
            "geometric": {"geometric": {"base": 1.5, "scale": 1.0}},
        }))
        for name, decl in self.r_sequences.items():
            self._check_r(decl, f"r_sequences.{name}")

        self.weight_systems = dict(raw.get("weight_systems", {
            "V": {"assoc_exp": {"seq": "A"}},
        }))
        for name, decl in self.weight_systems.items():
            self._check_system(decl, f"weight_systems.{name}")
        if "V" not in self.weight_systems:
            raise ConfigError("weight_systems: an entry named 'V' is required")

        self.functions_decl = raw.get("functions", {"family": "hermite_gaussian"})
        self._check_functions(self.functions_decl, "functions")

        grids = dict(raw.get("grids", {}))
        _require_keys(grids, ("space", "norm", "time", "product", "phase"),
                      "grids")
        base = _DEFAULTS_D1 if self.dimension == 1 else _DEFAULTS_D2
        self.grid_decls = {}
        for kind in ("space", "norm", "time", "product"):
            decl = dict(grids.get(kind, base[kind]))
            _require_keys(decl, ("extent", "points"), f"grids.{kind}",
                          required=("extent", "points"))
            self.grid_decls[kind] = decl
        phase_default = default_phase_grid(self.dimension)
        phase = dict(grids.get("phase", {
            "x_extent": phase_default.x_extent,
            "x_points": phase_default.x_points,
            "xi_extent": phase_default.xi_extent,
            "xi_points": phase_default.xi_points,
        }))
        _require_keys(phase, ("x_extent", "x_points", "xi_extent", "xi_points"),
                      "grids.phase",
                      required=("x_extent", "x_points", "xi_extent", "xi_points"))
        self.grid_decls["phase"] = phase

        tols = dict(raw.get("tolerances", {}))
        _require_keys(tols, tuple(DEFAULT_TOLERANCES), "tolerances")
        self.tolerances = dict(DEFAULT_TOLERANCES)
        for k, v in tols.items():
            self.tolerances[k] = float(v)

        self.suites = list(raw.get("suites", ["sequence_checks",
                                              "weight_checks",
                                              "transform_checks",
                                              "theorem_diagram"]))
        for s in self.suites:
            if s not in SUITE_NAMES:
                raise ConfigError(f"suites: unknown suite {s!r} "
                                  f"(known: {list(SUITE_NAMES)})")

        self.h = float(raw.get("h", 1.0))
        if self.h <= 0:
            raise ConfigError("h must be positive")
        self.tau = float(raw.get("tau", 1.0))
        if self.tau <= 0:
            raise ConfigError("tau must be positive")
        self.pairs = [tuple(int(v) for v in p)
                      for p in raw.get("pairs", [[1, 2], [2, 4], [3, 6], [4, 8]])]
        for n, m in self.pairs:
            if not 1 <= n <= m:
                raise ConfigError(f"pairs: bad pair ({n}, {m})")
        self.chain = [int(v) for v in raw.get("chain", [1, 2, 4, 8])]
        if len(self.chain) < 1:
            raise ConfigError("chain must be nonempty")
        self.seed = raw.get("seed")
        if self.seed is not None:
            self.seed = int(self.seed)

    # -- declaration validators ---------------------------------------------

    @staticmethod
    def _check_sequence(decl, where):
        _require_keys(decl, ("gevrey", "table", "expr", "s", "value",
                             "log_convex"), where)
        form = _one_of(decl, ("gevrey", "table", "expr"), where)
        if form == "gevrey":
            if float(decl["gevrey"]) <= 0:
                raise ConfigError(f"{where}: gevrey order must be positive")
        elif form == "table":
            if not decl["table"] or any(v <= 0 for v in decl["table"]):
                raise ConfigError(f"{where}: table must be positive and nonempty")
        else:
            expr = decl["expr"]
            if expr == "factorial_power":
                if "s" not in decl:
                    raise ConfigError(f"{where}: factorial_power needs 's'")
            elif expr == "constant":
                if "value" not in decl:
                    raise ConfigError(f"{where}: constant needs 'value'")
            elif expr != "log_power":
                raise ConfigError(f"{where}: unknown expr {expr!r}")

    @staticmethod
    def _check_r(decl, where):
        _require_keys(decl, ("linear", "power", "geometric", "table",
                             "diverges"), where)
        form = _one_of(decl, ("linear", "power", "geometric", "table"), where)
        if form == "table" and not decl.get("diverges", False):
            raise ConfigError(f"{where}: table r-sequences need "
                              f"\"diverges\": true attestation")
        if form in ("linear", "power", "geometric"):
            _require_keys(decl[form],
                          {"linear": ("slope", "offset"),
                           "power": ("exponent", "offset"),
                           "geometric": ("base", "scale")}[form],
                          f"{where}.{form}")

    def _check_system(self, decl, where):
        _require_keys(decl, ("assoc_exp", "constant", "poly_decay",
                             "gaussian_decay"), where)
        form = _one_of(decl, ("assoc_exp", "constant", "poly_decay",
                              "gaussian_decay"), where)
        if form == "assoc_exp":
            _require_keys(decl["assoc_exp"], ("seq",), f"{where}.assoc_exp",
                          required=("seq",))
            if decl["assoc_exp"]["seq"] not in self.sequences:
                raise ConfigError(f"{where}: unknown sequence reference "
                                  f"{decl['assoc_exp']['seq']!r}")
        elif form == "constant":
            _require_keys(decl["constant"], ("weight",), f"{where}.constant",
                          required=("weight",))
            self._check_weight(decl["constant"]["weight"], f"{where}.weight")
        elif form == "gaussian_decay":
            _require_keys(decl["gaussian_decay"], (), f"{where}.gaussian_decay")

    def _check_weight(self, decl, where):
        _require_keys(decl, ("flat", "exponential", "gaussian", "poly",
                             "assoc_exp"), where)
        form = _one_of(decl, ("flat", "exponential", "gaussian", "poly",
                              "assoc_exp"), where)
        if form == "exponential":
            _require_keys(decl["exponential"], ("rate",),
                          f"{where}.exponential", required=("rate",))
        elif form == "gaussian":
            _require_keys(decl["gaussian"], ("rate",), f"{where}.gaussian",
                          required=("rate",))
        elif form == "poly":
            _require_keys(decl["poly"], ("power",), f"{where}.poly",
                          required=("power",))
        elif form == "assoc_exp":
            _require_keys(decl["assoc_exp"], ("seq", "scale"),
                          f"{where}.assoc_exp", required=("seq",))
            if decl["assoc_exp"]["seq"] not in self.sequences:
                raise ConfigError(f"{where}: unknown sequence reference")

    @staticmethod
    def _check_functions(decl, where):
        _require_keys(decl, ("family", "terms"), where)
        form = _one_of(decl, ("family", "terms"), where)
        if form == "family" and decl["family"] != "hermite_gaussian":
            raise ConfigError(f"{where}: unknown family {decl['family']!r}")
        if form == "terms":
            for i, t in enumerate(decl["terms"]):
                _require_keys(t, ("amplitude", "center", "modulation",
                                  "width", "degrees"), f"{where}.terms[{i}]",
                              required=("width",))
                if float(t["width"]) <= 0:
                    raise ConfigError(f"{where}.terms[{i}]: width must be "
                                      f"positive")

    # -- builders -----------------------------------------------------------

    def sequence(self, name="M"):
        decl = self.sequences[name]
        if "gevrey" in decl:
            return WeightSequence.gevrey(float(decl["gevrey"]))
        if "table" in decl:
            return WeightSequence.from_values(
                decl["table"], log_convex=decl.get("log_convex"), name=name)
        expr = decl["expr"]
        if expr == "factorial_power":
            return WeightSequence.gevrey(float(decl["s"]))
        if expr == "constant":
            return WeightSequence.constant(float(decl["value"]))
        return WeightSequence.log_power()

    def r_sequence(self, name):
        decl = self.r_sequences[name]
        if "linear" in decl:
            p = decl["linear"]
            return DivergingSequence.linear(float(p.get("slope", 1.0)),
                                            float(p.get("offset", 1.0)))
        if "power" in decl:
            p = decl["power"]
            return DivergingSequence.power(float(p["exponent"]),
                                           float(p.get("offset", 1.0)))
        if "geometric" in decl:
            p = decl["geometric"]
            return DivergingSequence.geometric(float(p.get("base", 2.0)),
                                               float(p.get("scale", 1.0)))
        return DivergingSequence.from_table(decl["table"], diverges=True,
                                            name=name)

    def r_list(self):
        return [self.r_sequence(name) for name in self.r_sequences]

    def weight(self, decl):
        d = self.dimension
        if "flat" in decl:
            return ConstantWeight(float(decl["flat"]), d)
        if "exponential" in decl:
            return ExponentialWeight(float(decl["exponential"]["rate"]), d)
        if "gaussian" in decl:
            return GaussianWeight(float(decl["gaussian"]["rate"]), d)
        if "poly" in decl:
            return PolynomialDecayWeight(float(decl["poly"]["power"]), d)
        p = decl["assoc_exp"]
        return AssociatedExpWeight(self.sequence(p["seq"]),
                                   float(p.get("scale", 1.0)), d)

    def system(self, name="V"):
        decl = self.weight_systems[name]
        if "assoc_exp" in decl:
            return AssociatedExpSystem(self.sequence(decl["assoc_exp"]["seq"]),
                                       self.dimension)
        if "constant" in decl:
            return ConstantSystem(self.weight(decl["constant"]["weight"]))
        if "poly_decay" in decl:
            return PolynomialDecaySystem(self.dimension)
        return GaussianDecaySystem(self.dimension)

    def functions(self):
        decl = self.functions_decl
        if "family" in decl:
            try:
                return hermite_gaussian_family(self.sequence("M"),
                                               self.dimension)
            except ValueError as exc:
                raise ConfigError(f"functions: {exc}") from exc
        out = []
        for t in decl["terms"]:
            amp = t.get("amplitude", 1.0)
            if isinstance(amp, (list, tuple)):
                amp = complex(amp[0], amp[1])
            center = t.get("center", [0.0] * self.dimension)
            mod = t.get("modulation", [0.0] * self.dimension)
            degrees = t.get("degrees")
            if degrees is not None:
                f = HermiteGaussian.hermite(degrees, rate=float(t["width"]),
                                            center=center, amplitude=amp,
                                            dim=self.dimension)
            else:
                f = HermiteGaussian.gaussian(rate=float(t["width"]),
                                             center=center, amplitude=amp,
                                             dim=self.dimension)
            if np.any(np.asarray(mod, dtype=float) != 0.0):
                f = f.modulate(mod)
            out.append(f)
        return out

    def grid(self, kind):
        decl = self.grid_decls[kind]
        if kind == "phase":
            return PhaseSpaceGrid(self.dimension, float(decl["x_extent"]),
                                  int(decl["x_points"]),
                                  float(decl["xi_extent"]),
                                  int(decl["xi_points"]))
        return BoxGrid(float(decl["extent"]), int(decl["points"]),
                       self.dimension)

    def tolerance(self, name):
        return self.tolerances[name]

    def override_tolerances(self, overrides):
        """Apply CLI --tol name=value pairs; unknown names are config errors."""
        for item in overrides:
            if "=" not in item:
                raise ConfigError(f"--tol expects name=value, got {item!r}")
            name, _, val = item.partition("=")
            if name not in self.tolerances:
                raise ConfigError(f"--tol: unknown tolerance {name!r} "
                                  f"(known: {sorted(self.tolerances)})")
            try:
                self.tolerances[name] = float(val)
            except ValueError as exc:
                raise ConfigError(f"--tol {name}: bad value {val!r}") from exc

    def resolved(self):
        """The full config dictionary with every default filled in."""
        return {
            "dimension": self.dimension,
            "sequences": self.sequences,
            "r_sequences": self.r_sequences,
            "weight_systems": self.weight_systems,
            "functions": self.functions_decl,
            "grids": self.grid_decls,
            "tolerances": self.tolerances,
            "suites": self.suites,
            "h": self.h,
            "tau": self.tau,
            "pairs": [list(p) for p in self.pairs],
            "chain": list(self.chain),
            "seed": self.seed,
        }


def parse_config(path):
    try:
        with open(path) as fh:
            raw = json.load(fh)
    except FileNotFoundError as exc:
        raise ConfigError(f"config file not found: {path}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from exc
    return ExperimentConfig(raw)
