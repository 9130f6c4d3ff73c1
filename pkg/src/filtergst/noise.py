"""Stochastic noise processes for the driving field.

The workhorse is the Ornstein-Uhlenbeck (OU) process, a Gaussian stationary
process fully specified by a correlation time ``tau_c`` and a diffusion
constant ``c``.  Its exact-discretization update

    x(t + dt) = x(t) exp(-dt/tau_c) + sqrt(c tau_c/2 (1 - exp(-2 dt/tau_c))) u

with independent standard normals ``u`` samples the process without
integration error at any step size.  The stationary variance is
``c tau_c / 2``, the covariance decays as ``exp(-|lag|/tau_c)`` and the
power spectral density is the Lorentzian ``c tau_c^2 / (1 + (omega tau_c)^2)``.

Reproducibility contract: every trajectory draws from its own counter-based
stream derived from ``(master seed, trajectory index)``, so ensembles
generated serially or in parallel (or in any order) are bit-identical.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import InvalidParameterError

__all__ = [
    "OUParams",
    "TimeGrid",
    "PSDModel",
    "substream",
    "ou_trajectory",
    "ou_ensemble",
    "covariance",
    "psd_eval",
]


@dataclass(frozen=True)
class OUParams:
    """Ornstein-Uhlenbeck parameters.

    tau_c : correlation time in seconds (> 0)
    c     : diffusion constant in s^-3 (>= 0)
    """

    tau_c: float
    c: float

    def __post_init__(self):
        if not self.tau_c > 0:
            raise InvalidParameterError(f"tau_c must be positive, got {self.tau_c}")
        if self.c < 0:
            raise InvalidParameterError(f"c must be nonnegative, got {self.c}")

    @property
    def stationary_variance(self) -> float:
        return 0.5 * self.c * self.tau_c


@dataclass(frozen=True)
class TimeGrid:
    """Uniform discretization t_n = t0 + n*dt for n = 0..n_steps."""

    t0: float
    dt: float
    n_steps: int

    def __post_init__(self):
        if not self.dt > 0:
            raise InvalidParameterError(f"dt must be positive, got {self.dt}")
        if self.n_steps < 1:
            raise InvalidParameterError(f"n_steps must be >= 1, got {self.n_steps}")

    def times(self) -> np.ndarray:
        return self.t0 + self.dt * np.arange(self.n_steps + 1)


def substream(master_seed: int, *key: int) -> np.random.Generator:
    """Deterministic counter-based RNG stream for ``(master_seed, *key)``.

    Streams with distinct keys are statistically independent, and a stream
    depends only on its key, never on how many other streams were created.
    """
    ss = np.random.SeedSequence(entropy=int(master_seed), spawn_key=tuple(int(k) for k in key))
    return np.random.Generator(np.random.Philox(ss))


def ou_trajectory(
    params: OUParams,
    grid: TimeGrid,
    stream: np.random.Generator,
    start: str = "stationary",
) -> np.ndarray:
    """Sample one OU trajectory on ``grid`` via the exact discretization.

    ``start`` is ``"stationary"`` (draw x(t0) from N(0, c tau_c/2), the
    default, consistent with the stationary PSD) or ``"zero"`` (x(t0) = 0,
    useful for diagnostics).  Returns an array of n_steps + 1 samples.
    """
    if start not in ("stationary", "zero"):
        raise InvalidParameterError(f"unknown start mode {start!r}")
    decay = np.exp(-grid.dt / params.tau_c)
    step_sigma = np.sqrt(params.stationary_variance * (1.0 - decay**2))
    u = stream.standard_normal(grid.n_steps + 1)
    out = np.empty(grid.n_steps + 1)
    if start == "stationary":
        out[0] = np.sqrt(params.stationary_variance) * u[0]
    else:
        out[0] = 0.0
    for n in range(grid.n_steps):
        out[n + 1] = out[n] * decay + step_sigma * u[n + 1]
    return out


def ou_ensemble(
    params: OUParams,
    grid: TimeGrid,
    master_seed: int,
    n_traj: int,
    start: str = "stationary",
    stream_key: Sequence[int] = (),
) -> np.ndarray:
    """Sample ``n_traj`` independent OU trajectories, shape (n_traj, n_steps+1).

    Trajectory ``i`` uses the stream ``substream(master_seed, *stream_key, i)``;
    the per-row draws reproduce ``ou_trajectory`` on that stream exactly.
    """
    if start not in ("stationary", "zero"):
        raise InvalidParameterError(f"unknown start mode {start!r}")
    if n_traj < 1:
        raise InvalidParameterError(f"n_traj must be >= 1, got {n_traj}")
    decay = np.exp(-grid.dt / params.tau_c)
    step_sigma = np.sqrt(params.stationary_variance * (1.0 - decay**2))
    u = np.empty((n_traj, grid.n_steps + 1))
    root = np.random.SeedSequence(entropy=int(master_seed), spawn_key=tuple(int(k) for k in stream_key))
    for i, child in enumerate(root.spawn(n_traj)):
        u[i] = np.random.Generator(np.random.Philox(child)).standard_normal(grid.n_steps + 1)
    out = np.empty_like(u)
    out[:, 0] = np.sqrt(params.stationary_variance) * u[:, 0] if start == "stationary" else 0.0
    for n in range(grid.n_steps):
        out[:, n + 1] = out[:, n] * decay + step_sigma * u[:, n + 1]
    return out


def covariance(params: OUParams, lag: float) -> float:
    """Stationary covariance C(lag) = (c tau_c / 2) exp(-|lag|/tau_c)."""
    return params.stationary_variance * np.exp(-abs(lag) / params.tau_c)


@dataclass(frozen=True)
class PSDModel:
    """Two-sided power spectral density S(omega), omega in rad/s.

    Supported kinds:
      lorentzian : OU spectrum c tau_c^2 / (1 + (omega tau_c)^2)
      white      : constant level
      tabulated  : linear interpolation on a symmetric-extended grid,
                   zero outside the grid (no invented spectral weight)
    """

    kind: str
    ou: Optional[OUParams] = None
    level: float = 0.0
    omega_grid: Optional[np.ndarray] = None
    s_grid: Optional[np.ndarray] = None

    def __post_init__(self):
        if self.kind not in ("lorentzian", "white", "tabulated"):
            raise InvalidParameterError(f"unknown PSD kind {self.kind!r}")
        if self.kind == "lorentzian" and self.ou is None:
            raise InvalidParameterError("lorentzian PSD requires OUParams")
        if self.kind == "white" and self.level < 0:
            raise InvalidParameterError("white PSD level must be nonnegative")
        if self.kind == "tabulated":
            if self.omega_grid is None or self.s_grid is None:
                raise InvalidParameterError("tabulated PSD requires omega and s arrays")
            om = np.asarray(self.omega_grid, dtype=float)
            sv = np.asarray(self.s_grid, dtype=float)
            if om.ndim != 1 or om.shape != sv.shape or om.size < 2:
                raise InvalidParameterError("tabulated PSD grids must be 1-d, equal length >= 2")
            if np.any(np.diff(om) <= 0):
                raise InvalidParameterError("tabulated omega grid must be strictly increasing")
            if np.any(sv < 0):
                raise InvalidParameterError("tabulated PSD values must be nonnegative")
            object.__setattr__(self, "omega_grid", om)
            object.__setattr__(self, "s_grid", sv)

    @classmethod
    def lorentzian(cls, params: OUParams) -> "PSDModel":
        return cls(kind="lorentzian", ou=params)

    @classmethod
    def white(cls, level: float) -> "PSDModel":
        return cls(kind="white", level=level)

    @classmethod
    def tabulated(cls, omega: np.ndarray, s: np.ndarray) -> "PSDModel":
        return cls(kind="tabulated", omega_grid=np.asarray(omega), s_grid=np.asarray(s))

    def to_dict(self) -> dict:
        if self.kind == "lorentzian":
            return {"type": "lorentzian", "tau_c": self.ou.tau_c, "c": self.ou.c}
        if self.kind == "white":
            return {"type": "white", "level": self.level}
        return {
            "type": "tabulated",
            "omega": self.omega_grid.tolist(),
            "s": self.s_grid.tolist(),
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "PSDModel":
        kind = doc.get("type")
        if kind == "lorentzian":
            return cls.lorentzian(OUParams(tau_c=float(doc["tau_c"]), c=float(doc["c"])))
        if kind == "white":
            return cls.white(float(doc["level"]))
        if kind == "tabulated":
            return cls.tabulated(np.asarray(doc["omega"], dtype=float), np.asarray(doc["s"], dtype=float))
        raise InvalidParameterError(f"unknown PSD type {kind!r}")

    def __call__(self, omega):
        return psd_eval(self, omega)


def psd_eval(model: PSDModel, omega):
    """Evaluate S(omega); symmetric in omega for every supported model."""
    omega = np.asarray(omega, dtype=float)
    if model.kind == "lorentzian":
        tc = model.ou.tau_c
        out = model.ou.c * tc**2 / (1.0 + (omega * tc) ** 2)
    elif model.kind == "white":
        out = np.full_like(omega, model.level)
    else:
        # Tabulated grids are one-sided or two-sided; evaluate at |omega| when the
        # grid starts at omega >= 0, otherwise interpolate directly.
        x = np.abs(omega) if model.omega_grid[0] >= 0 else omega
        out = np.interp(x, model.omega_grid, model.s_grid, left=0.0, right=0.0)
    return out if out.ndim else float(out)
