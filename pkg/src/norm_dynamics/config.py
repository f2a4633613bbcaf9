"""Flat key=value run configuration: parsing, defaults, fail-fast validation.

The config format is a plain text file of `key = value` (or `key: value`)
lines, full-line comments starting with `#` or `;`, and nothing nested.  All
fields are validated against the library's own parameter invariants before
any computation starts, so a bad config never produces a partial run.
"""

from dataclasses import dataclass, field, replace
from typing import Dict, Optional, Tuple

import numpy as np

from .collaboration import NORMS
from .credit import PAYOFF_MODES, BiasParams
from .dynamics import IntegratorConfig
from .errors import ConfigParseError, ConfigValidationError, ParameterError
from .priors import BetaPrior, stats_from_explicit

MODELS = (
    "phase",
    "basin",
    "basin-sweep",
    "m2-failure",
    "m2-compare",
    "m2-preference",
    "derive-prior",
)

# Models that integrate over the contribution density and therefore cannot
# run from explicit stats alone.
_DENSITY_MODELS = ("m2-failure", "derive-prior")

_WJ_MODE_ALIASES = {"exact": "exact", "mean": "mean", "paper-mean": "mean"}

DEFAULT_A_VALUES = tuple(float(a) for a in range(10, 100, 10))


@dataclass(frozen=True)
class RunConfig:
    """Fully resolved settings for one CLI run."""

    model: str
    alpha: float = 2.0
    beta: float = 2.0
    w_j: Optional[float] = None
    b_j: Optional[float] = None
    b_s: Optional[float] = None
    epsilon: float = 0.1
    chi: float = 0.05
    c_hat: float = 1.0
    wj_mode: str = "exact"
    payoff_mode: str = "substitution"
    resolution: int = 21
    a_values: Tuple[float, ...] = DEFAULT_A_VALUES
    mu_min: float = 0.05
    mu_max: float = 0.95
    mu_steps: int = 19
    c_hat_min: float = 0.01
    c_hat_max: float = 0.5
    c_hat_steps: int = 19
    family_sum: float = 7.0
    norm: str = "I-norm"
    mc_samples: int = 0
    step: float = 0.01
    max_time: float = 2000.0
    convergence_tol: float = 1e-7
    corner_tol: float = 1e-3
    seed: int = 0
    output: Optional[str] = None

    @property
    def uses_explicit_stats(self) -> bool:
        return self.w_j is not None

    @property
    def output_base(self) -> str:
        return self.output if self.output else self.model

    def integrator(self) -> IntegratorConfig:
        return IntegratorConfig(self.step, self.max_time, self.convergence_tol, self.corner_tol)

    def resolved(self) -> Dict[str, object]:
        """Flat mapping of every effective setting, for artifact metadata."""
        out: Dict[str, object] = {
            "model": self.model,
            "epsilon": self.epsilon,
            "chi": self.chi,
            "c_hat": self.c_hat,
            "wj_mode": self.wj_mode,
            "payoff_mode": self.payoff_mode,
            "resolution": self.resolution,
            "a_values": list(self.a_values),
            "mu_min": self.mu_min,
            "mu_max": self.mu_max,
            "mu_steps": self.mu_steps,
            "c_hat_min": self.c_hat_min,
            "c_hat_max": self.c_hat_max,
            "c_hat_steps": self.c_hat_steps,
            "family_sum": self.family_sum,
            "norm": self.norm,
            "mc_samples": self.mc_samples,
            "step": self.step,
            "max_time": self.max_time,
            "convergence_tol": self.convergence_tol,
            "corner_tol": self.corner_tol,
            "seed": self.seed,
            "output": self.output_base,
        }
        if self.uses_explicit_stats:
            out.update({"w_j": self.w_j, "b_j": self.b_j, "b_s": self.b_s})
        else:
            out.update({"alpha": self.alpha, "beta": self.beta})
        return out


# ---------------------------------------------------------------------------
# parsing

_KEY_CHARS = set("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789_")


def parse_config_text(text: str) -> Dict[str, str]:
    """Parse `key = value` lines into an ordered mapping of raw strings."""
    values: Dict[str, str] = {}
    for lineno, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.strip()
        if not line or line.startswith("#") or line.startswith(";"):
            continue
        cut_eq = line.find("=")
        cut_colon = line.find(":")
        cuts = [c for c in (cut_eq, cut_colon) if c >= 0]
        if not cuts:
            raise ConfigParseError(f"expected 'key = value', got {line!r}", line=lineno)
        cut = min(cuts)
        key = line[:cut].strip()
        value = line[cut + 1 :].strip()
        if not key or not set(key) <= _KEY_CHARS:
            raise ConfigParseError(f"bad key {key!r}", line=lineno)
        if key in values:
            raise ConfigParseError(f"duplicate key {key!r}", line=lineno)
        if not value:
            raise ConfigParseError(f"key {key!r} has no value", line=lineno)
        values[key] = value
    return values


# ---------------------------------------------------------------------------
# validation

_FLOAT_KEYS = (
    "alpha", "beta", "w_j", "b_j", "b_s", "epsilon", "chi", "c_hat",
    "mu_min", "mu_max", "c_hat_min", "c_hat_max", "family_sum",
    "step", "max_time", "convergence_tol", "corner_tol",
)
_INT_KEYS = ("resolution", "mu_steps", "c_hat_steps", "mc_samples", "seed")
_STRING_KEYS = ("model", "wj_mode", "payoff_mode", "norm", "output")
_LIST_KEYS = ("a_values",)

KNOWN_KEYS = frozenset(_FLOAT_KEYS + _INT_KEYS + _STRING_KEYS + _LIST_KEYS)


def _parse_float(key: str, raw: str) -> float:
    try:
        return float(raw)
    except ValueError:
        raise ConfigValidationError(f"{key}: expected a number, got {raw!r}") from None


def _parse_int(key: str, raw: str) -> int:
    try:
        return int(raw)
    except ValueError:
        raise ConfigValidationError(f"{key}: expected an integer, got {raw!r}") from None


def _parse_list(key: str, raw: str) -> Tuple[float, ...]:
    tokens = [tok for tok in raw.replace(",", " ").split() if tok]
    if not tokens:
        raise ConfigValidationError(f"{key}: expected a list of numbers")
    return tuple(_parse_float(key, tok) for tok in tokens)


def validate_config(raw: Dict[str, str]) -> RunConfig:
    """Turn raw strings into a RunConfig, failing on the first bad field."""
    unknown = sorted(set(raw) - KNOWN_KEYS)
    if unknown:
        raise ConfigValidationError(f"unknown config key(s): {', '.join(unknown)}")
    if "model" not in raw:
        raise ConfigValidationError("model: required; pick one of " + ", ".join(MODELS))

    kwargs: Dict[str, object] = {}
    for key, value in raw.items():
        if key in _FLOAT_KEYS:
            kwargs[key] = _parse_float(key, value)
        elif key in _INT_KEYS:
            kwargs[key] = _parse_int(key, value)
        elif key in _LIST_KEYS:
            kwargs[key] = _parse_list(key, value)
        else:
            kwargs[key] = value

    config = RunConfig(**kwargs)

    if config.model not in MODELS:
        raise ConfigValidationError(f"model: must be one of {', '.join(MODELS)}, got {config.model!r}")

    explicit_given = [k for k in ("w_j", "b_j", "b_s") if raw.get(k) is not None]
    prior_given = [k for k in ("alpha", "beta") if raw.get(k) is not None]
    if explicit_given:
        if len(explicit_given) != 3:
            raise ConfigValidationError("explicit stats need all three of w_j, b_j, b_s")
        if prior_given:
            raise ConfigValidationError(
                "w_j/b_j/b_s and alpha/beta are mutually exclusive prior descriptions"
            )
        if config.model in _DENSITY_MODELS:
            raise ConfigValidationError(
                f"{config.model}: needs a Beta prior (alpha/beta); explicit stats carry no density"
            )
        try:
            stats_from_explicit(config.w_j, config.b_j, config.b_s)
        except ParameterError as exc:
            raise ConfigValidationError(f"w_j/b_j/b_s: {exc}") from None
    else:
        if config.w_j is not None or config.b_j is not None or config.b_s is not None:
            raise ConfigValidationError("explicit stats need all three of w_j, b_j, b_s")
        try:
            BetaPrior(config.alpha, config.beta)
        except ParameterError as exc:
            raise ConfigValidationError(f"alpha/beta: {exc}") from None

    try:
        BiasParams(config.epsilon, config.chi)
    except ParameterError as exc:
        raise ConfigValidationError(f"epsilon/chi: {exc}") from None

    if not np.isfinite(config.c_hat) or config.c_hat < 0:
        raise ConfigValidationError(f"c_hat: must be finite and nonnegative, got {config.c_hat}")

    if config.wj_mode not in _WJ_MODE_ALIASES:
        raise ConfigValidationError(
            f"wj_mode: must be one of {sorted(set(_WJ_MODE_ALIASES))}, got {config.wj_mode!r}"
        )
    config = replace(config, wj_mode=_WJ_MODE_ALIASES[config.wj_mode])

    if config.payoff_mode not in PAYOFF_MODES:
        raise ConfigValidationError(
            f"payoff_mode: must be one of {PAYOFF_MODES}, got {config.payoff_mode!r}"
        )
    if config.norm not in NORMS:
        raise ConfigValidationError(f"norm: must be one of {NORMS}, got {config.norm!r}")

    if config.resolution < 2:
        raise ConfigValidationError(f"resolution: must be at least 2, got {config.resolution}")
    if not config.a_values:
        raise ConfigValidationError("a_values: must list at least one family member")
    if not (0.0 < config.mu_min <= config.mu_max < 1.0):
        raise ConfigValidationError(
            f"mu_min/mu_max: need 0 < mu_min <= mu_max < 1, got {config.mu_min}, {config.mu_max}"
        )
    if config.mu_steps < 1:
        raise ConfigValidationError(f"mu_steps: must be at least 1, got {config.mu_steps}")
    if not (0.0 <= config.c_hat_min <= config.c_hat_max):
        raise ConfigValidationError(
            f"c_hat_min/c_hat_max: need 0 <= min <= max, got {config.c_hat_min}, {config.c_hat_max}"
        )
    if config.c_hat_steps < 1:
        raise ConfigValidationError(f"c_hat_steps: must be at least 1, got {config.c_hat_steps}")
    if not np.isfinite(config.family_sum) or config.family_sum <= 0:
        raise ConfigValidationError(f"family_sum: must be positive, got {config.family_sum}")
    if config.mc_samples < 0:
        raise ConfigValidationError(f"mc_samples: must be nonnegative, got {config.mc_samples}")
    if config.seed < 0:
        raise ConfigValidationError(f"seed: must be nonnegative, got {config.seed}")

    try:
        config.integrator()
    except ParameterError as exc:
        raise ConfigValidationError(f"integrator settings: {exc}") from None

    if config.output is not None:
        bad = "/" in config.output or "\\" in config.output or config.output in (".", "..")
        if bad or not config.output.strip():
            raise ConfigValidationError(f"output: must be a bare file stem, got {config.output!r}")

    return config


def load_config(path) -> RunConfig:
    """Read, parse, and validate a run configuration file."""
    with open(path, "r") as fh:
        text = fh.read()
    return validate_config(parse_config_text(text))
