"""Two-population replicator dynamics over authorship-norm adoption.

The state is a pair of population shares: ``p_j`` is the fraction of juniors
insisting on junior-first listing, ``p_s`` the fraction of seniors willing to
grant it.  Each share grows in proportion to the payoff advantage of the pure
strategy it tracks,

    dp_j/dt = p_j (1 - p_j) (pi_j_I - pi_j_C)
    dp_s/dt = p_s (1 - p_s) (pi_s_I - pi_s_C)

with the pure-strategy payoffs taken from :mod:`norm_dynamics.credit`.  All
four corners of the unit square are rest points; trajectories are integrated
with a fixed-step RK4 scheme and classified by which corner they settle into.
"""

from dataclasses import dataclass, field
from typing import NamedTuple, Optional, Sequence

import numpy as np

# The field evaluation reuses the stacked pure-strategy payoff kernel rather
# than going back through the public wrappers, which would re-validate state
# on every RK stage.
from .credit import GameParams, BiasParams, PopulationState, _pair, _pure_strategy_payoffs_raw
from .errors import DegenerateDistributionError, ParameterError
from .priors import BetaPrior, derive_contribution_stats

# ---------------------------------------------------------------------------
# outcome labels

LABEL_C_NORM = "C-norm"
LABEL_I_NORM = "I-norm"
LABEL_NO_COLLABORATION = "no-collaboration"
LABEL_OTHER = "interior/other"

OUTCOME_LABELS = (LABEL_C_NORM, LABEL_I_NORM, LABEL_NO_COLLABORATION, LABEL_OTHER)

# Stable numeric encoding used by basin grids and the CLI exports.
OUTCOME_CODES = {label: code for code, label in enumerate(OUTCOME_LABELS)}

# (p_j, p_s) corner attached to each absorbing label.
_CORNERS = (
    (LABEL_C_NORM, 0.0, 0.0),
    (LABEL_I_NORM, 1.0, 1.0),
    (LABEL_NO_COLLABORATION, 1.0, 0.0),
)


@dataclass(frozen=True)
class IntegratorConfig:
    """Fixed-step integrator settings.

    ``convergence_tol`` is compared against the Euclidean norm of the field
    at the current state, so boundary rest points terminate immediately.
    ``corner_tol`` bounds the distance at which a terminal state is credited
    to a corner; it must stay well below the corner spacing.
    """

    step: float = 0.01
    max_time: float = 2000.0
    convergence_tol: float = 1e-7
    corner_tol: float = 1e-3

    def __post_init__(self):
        for name in ("step", "max_time", "convergence_tol", "corner_tol"):
            value = getattr(self, name)
            if not np.isfinite(value) or value <= 0:
                raise ParameterError(f"{name} must be finite and positive, got {value!r}")
        if self.corner_tol >= 0.5:
            raise ParameterError("corner_tol must be below half the corner spacing")


DEFAULT_INTEGRATOR = IntegratorConfig()


@dataclass(frozen=True)
class Outcome:
    """Where a trajectory ended up and when it got there."""

    label: str
    terminal: PopulationState
    time: float


@dataclass(frozen=True)
class BasinReport:
    """Basin-of-attraction fractions over a midpoint lattice.

    ``fraction_other`` absorbs every cell that did not settle on the two
    norm corners, including interior stalls, timeouts, and the
    no-collaboration corner.  ``labels[i, j]`` is the OUTCOME_CODES entry for
    the start ((i + 0.5)/R, (j + 0.5)/R).
    """

    grid_resolution: int
    fraction_C: float
    fraction_I: float
    fraction_other: float
    labels: np.ndarray = field(compare=False, repr=False)


@dataclass(frozen=True)
class BasinSweepPoint:
    """One prior family member in a basin sweep.

    ``error`` is None for a completed run; otherwise the fractions are NaN
    and the message records why the member was skipped.
    """

    a: float
    delta: float
    fraction_I: float
    fraction_C: float
    fraction_other: float
    error: Optional[str] = None


class FieldGrid(NamedTuple):
    p_j: np.ndarray
    p_s: np.ndarray
    dp_j: np.ndarray
    dp_s: np.ndarray


# ---------------------------------------------------------------------------
# the field

def _field_raw(p_j, p_s, params, mode):
    # RK stages can poke slightly outside the square; payoffs are only
    # meaningful inside it, so clamp before evaluating.
    p_j = np.clip(p_j, 0.0, 1.0)
    p_s = np.clip(p_s, 0.0, 1.0)
    pi_j_I, pi_j_C, pi_s_I, pi_s_C = _pure_strategy_payoffs_raw(p_j, p_s, params, mode)
    return p_j * (1.0 - p_j) * (pi_j_I - pi_j_C), p_s * (1.0 - p_s) * (pi_s_I - pi_s_C)


def replicator_field(state: PopulationState, params: GameParams, mode: str = "substitution"):
    """Time derivative (dp_j, dp_s) of the population shares."""
    p_j, p_s, scalar = _pair(state)
    dp_j, dp_s = _field_raw(p_j, p_s, params, mode)
    if scalar:
        return float(dp_j), float(dp_s)
    return dp_j, dp_s


def stream_field_grid(params: GameParams, resolution: int = 21, mode: str = "substitution") -> FieldGrid:
    """Sample the field on a uniform lattice including the boundary."""
    if resolution < 2:
        raise ParameterError("resolution must be at least 2")
    axis = np.linspace(0.0, 1.0, resolution)
    p_j, p_s = np.meshgrid(axis, axis, indexing="ij")
    dp_j, dp_s = _field_raw(p_j, p_s, params, mode)
    return FieldGrid(p_j, p_s, dp_j, dp_s)


# ---------------------------------------------------------------------------
# integration

def _classify(p_j, p_s, corner_tol):
    """Outcome codes for terminal states, vectorised over arrays."""
    p_j = np.asarray(p_j, dtype=float)
    p_s = np.asarray(p_s, dtype=float)
    codes = np.full(p_j.shape, OUTCOME_CODES[LABEL_OTHER], dtype=np.int8)
    for label, cj, cs in _CORNERS:
        hit = np.hypot(p_j - cj, p_s - cs) < corner_tol
        codes[hit] = OUTCOME_CODES[label]
    return codes


def _advance(p_j, p_s, params, cfg, mode, record=None):
    """March a batch of states with RK4 until convergence or timeout.

    Returns terminal (p_j, p_s, times, converged).  The field value at the
    current state doubles as the first RK stage, so convergence costs no
    extra evaluation.  Converged points are dropped from the working set.
    If ``record`` is a list, (t, p_j, p_s) rows for the first point are
    appended to it (only sensible for single-point batches).
    """
    h = cfg.step
    tol = cfg.convergence_tol
    n_steps = int(np.floor(cfg.max_time / h + 1e-9))

    pj = np.asarray(p_j, dtype=float).ravel().copy()
    ps = np.asarray(p_s, dtype=float).ravel().copy()
    n = pj.size
    times = np.zeros(n)
    converged = np.zeros(n, dtype=bool)

    fj, fs = _field_raw(pj, ps, params, mode)
    fj = np.atleast_1d(fj)
    fs = np.atleast_1d(fs)
    done = np.hypot(fj, fs) < tol
    converged[done] = True

    if record is not None:
        record.append((0.0, pj[0], ps[0]))

    idx = np.flatnonzero(~converged)
    aj, as_, afj, afs = pj[idx], ps[idx], fj[idx], fs[idx]
    t = 0.0
    for k in range(n_steps):
        if idx.size == 0:
            break
        k2j, k2s = _field_raw(aj + 0.5 * h * afj, as_ + 0.5 * h * afs, params, mode)
        k3j, k3s = _field_raw(aj + 0.5 * h * k2j, as_ + 0.5 * h * k2s, params, mode)
        k4j, k4s = _field_raw(aj + h * k3j, as_ + h * k3s, params, mode)
        aj = np.clip(aj + (h / 6.0) * (afj + 2.0 * k2j + 2.0 * k3j + k4j), 0.0, 1.0)
        as_ = np.clip(as_ + (h / 6.0) * (afs + 2.0 * k2s + 2.0 * k3s + k4s), 0.0, 1.0)
        t = (k + 1) * h
        afj, afs = _field_raw(aj, as_, params, mode)

        if record is not None:
            record.append((t, aj[0], as_[0]))

        hit = np.hypot(afj, afs) < tol
        if hit.any():
            g = idx[hit]
            pj[g], ps[g] = aj[hit], as_[hit]
            times[g] = t
            converged[g] = True
            keep = ~hit
            idx, aj, as_, afj, afs = idx[keep], aj[keep], as_[keep], afj[keep], afs[keep]

    if idx.size:
        pj[idx], ps[idx] = aj, as_
        times[idx] = t
    return pj, ps, times, converged


def integrate_trajectory(
    start: PopulationState,
    params: GameParams,
    cfg: IntegratorConfig = DEFAULT_INTEGRATOR,
    mode: str = "substitution",
):
    """Integrate a single start until the field dies out or time runs out.

    Returns ``(trajectory, outcome)`` where trajectory rows are
    (t, p_j, p_s).  Non-convergence is not an error: the outcome simply
    carries the interior/other label and the final state.
    """
    p_j, p_s, scalar = _pair(start)
    if not scalar:
        raise ParameterError("integrate_trajectory expects a scalar start state")
    rows = []
    pj, ps, times, _ = _advance(p_j, p_s, params, cfg, mode, record=rows)
    terminal = PopulationState(float(pj[0]), float(ps[0]))
    code = int(_classify(pj[:1], ps[:1], cfg.corner_tol)[0])
    outcome = Outcome(OUTCOME_LABELS[code], terminal, float(times[0]))
    return np.array(rows, dtype=float), outcome


def basin_fractions(
    params: GameParams,
    cfg: IntegratorConfig = DEFAULT_INTEGRATOR,
    resolution: int = 21,
    mode: str = "substitution",
) -> BasinReport:
    """Classify a midpoint lattice of starts into basins of attraction.

    Starts are ((i + 0.5)/R, (j + 0.5)/R) so no trajectory begins on a
    boundary rest point.
    """
    if resolution < 1:
        raise ParameterError("resolution must be at least 1")
    axis = (np.arange(resolution) + 0.5) / resolution
    p_j, p_s = np.meshgrid(axis, axis, indexing="ij")
    pj, ps, _, _ = _advance(p_j.ravel(), p_s.ravel(), params, cfg, mode)
    codes = _classify(pj, ps, cfg.corner_tol).reshape(resolution, resolution)
    n = float(resolution * resolution)
    frac_c = float(np.count_nonzero(codes == OUTCOME_CODES[LABEL_C_NORM])) / n
    frac_i = float(np.count_nonzero(codes == OUTCOME_CODES[LABEL_I_NORM])) / n
    return BasinReport(resolution, frac_c, frac_i, 1.0 - frac_c - frac_i, codes)


def basin_sweep(
    a_values: Sequence[float],
    bias: BiasParams,
    c_hat: float,
    cfg: IntegratorConfig = DEFAULT_INTEGRATOR,
    resolution: int = 21,
    wj_mode: str = "exact",
    mode: str = "substitution",
):
    """Basin fractions across the Beta(a, 100 - a) prior family.

    Members whose prior puts essentially no mass on one side of 1/2 cannot
    support the conditional means; they are recorded as gap points rather
    than aborting the sweep.  Results are ordered by the credit asymmetry
    delta = 1 - 2 mu_j, with gap points sorted to the end.
    """
    points = []
    for a in a_values:
        try:
            stats = derive_contribution_stats(BetaPrior(a, 100.0 - a), wj_mode=wj_mode)
            report = basin_fractions(GameParams(stats, bias, c_hat), cfg, resolution, mode)
        except (DegenerateDistributionError, ParameterError) as exc:
            points.append(BasinSweepPoint(a, np.nan, np.nan, np.nan, np.nan, str(exc)))
            continue
        delta = 1.0 - 2.0 * stats.mu_j
        points.append(
            BasinSweepPoint(a, delta, report.fraction_I, report.fraction_C, report.fraction_other)
        )
    good = sorted((p for p in points if p.error is None), key=lambda p: p.delta)
    gaps = sorted((p for p in points if p.error is not None), key=lambda p: p.a)
    return good + gaps


# ---------------------------------------------------------------------------
# interior rest point

def _strategy_gaps(x, params, mode):
    pj = np.asarray(np.clip(x[0], 0.0, 1.0))
    ps = np.asarray(np.clip(x[1], 0.0, 1.0))
    pi_j_I, pi_j_C, pi_s_I, pi_s_C = _pure_strategy_payoffs_raw(pj, ps, params, mode)
    return np.array([float(pi_j_I - pi_j_C), float(pi_s_I - pi_s_C)])


def find_interior_equilibrium(
    params: GameParams,
    cfg: IntegratorConfig = DEFAULT_INTEGRATOR,
    mode: str = "substitution",
) -> Optional[PopulationState]:
    """Locate a rest point with both strategy gaps zero, away from the edges.

    Damped Newton iteration with a finite-difference Jacobian, started from
    a coarse seed grid.  A root counts as interior only if it keeps at least
    ``cfg.corner_tol`` distance from every edge; returns None when no seed
    produces one at gap tolerance 1e-9.
    """
    tol = 1e-9
    fd = 1e-6
    margin = cfg.corner_tol
    seeds = [(a, b) for a in np.linspace(0.1, 0.9, 5) for b in np.linspace(0.1, 0.9, 5)]
    for seed in seeds:
        x = np.array(seed, dtype=float)
        g = _strategy_gaps(x, params, mode)
        for _ in range(60):
            gn = np.linalg.norm(g)
            if gn < tol:
                break
            jac = np.empty((2, 2))
            for col in range(2):
                bump = np.zeros(2)
                bump[col] = fd
                jac[:, col] = (
                    _strategy_gaps(x + bump, params, mode)
                    - _strategy_gaps(x - bump, params, mode)
                ) / (2 * fd)
            try:
                dx = np.linalg.solve(jac, -g)
            except np.linalg.LinAlgError:
                break
            lam = 1.0
            while lam > 1e-6:
                candidate = np.clip(x + lam * dx, 0.0, 1.0)
                g_new = _strategy_gaps(candidate, params, mode)
                if np.linalg.norm(g_new) < (1.0 - 0.25 * lam) * gn:
                    x, g = candidate, g_new
                    break
                lam *= 0.5
            else:
                break
        if np.linalg.norm(g) < tol and np.all(x > margin) and np.all(x < 1.0 - margin):
            return PopulationState(float(x[0]), float(x[1]))
    return None
