"""Lattice-side evolution of a two-component unitary walk on the integers.

The walker carries a two-dimensional internal ("coin") state at each
site.  One time step of the full walk is a banded unitary that factors
into four local passes: a site-wise coin, a conditional shift of the
first component to the right, a second site-wise coin, and a conditional
shift of the second component to the left.  Removing the per-site
component swap from the step leaves the banded factor alone, exposed
here as the ``cmv_only`` variant.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "VARIANTS",
    "WalkParams",
    "CoinSpinor",
    "WaveState",
    "Distribution",
    "initial_state",
    "step_full",
    "step_cmv_only",
    "swap_coin",
    "evolve",
    "distribution",
]

#: Recognised evolution variants: the full walk and the swap-free walk.
VARIANTS = ("full", "cmv_only")

_COIN_NORM_TOL = 1e-9


@dataclass(frozen=True)
class WalkParams:
    """Parameters ``(rho, nu)`` of the walk unitary.

    ``rho`` in (0, 1) is the reflection weight and ``nu`` a phase angle
    in radians.  The complementary weight ``rho0 = sqrt(1 - rho**2)``
    and the complex coefficient ``alpha0 = rho * exp(1j * nu)`` are
    derived once at construction and cached.

    Raises
    ------
    ValueError
        If ``rho`` does not lie strictly between 0 and 1.
    """

    rho: float
    nu: float
    rho0: float = field(init=False, repr=False, compare=False)
    alpha0: complex = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if not 0.0 < self.rho < 1.0:
            raise ValueError(
                f"rho must lie strictly between 0 and 1, got {self.rho}"
            )
        object.__setattr__(self, "rho0", math.sqrt(1.0 - self.rho * self.rho))
        object.__setattr__(self, "alpha0", self.rho * cmath.exp(1j * self.nu))


@dataclass(frozen=True)
class CoinSpinor:
    """Internal two-component amplitude pair ``(a0, a1)``."""

    a0: complex
    a1: complex

    def norm_sq(self) -> float:
        return abs(self.a0) ** 2 + abs(self.a1) ** 2

    def as_array(self) -> np.ndarray:
        return np.array([self.a0, self.a1], dtype=np.complex128)


@dataclass(frozen=True, eq=False)
class WaveState:
    """Walker amplitudes on a contiguous window of lattice sites.

    ``amps[i, c]`` is the amplitude of component ``c`` at position
    ``x_min + i``.  The window always contains the support of the
    state; sites outside it carry amplitude zero.
    """

    time: int
    x_min: int
    amps: np.ndarray

    @property
    def x_max(self) -> int:
        return self.x_min + len(self.amps) - 1

    def positions(self) -> np.ndarray:
        return np.arange(self.x_min, self.x_min + len(self.amps))

    def norm_sq(self) -> float:
        return float(np.sum(np.abs(self.amps) ** 2))


@dataclass(frozen=True, eq=False)
class Distribution:
    """Position distribution ``P(x)`` on a contiguous window of sites."""

    x_min: int
    probs: np.ndarray

    def positions(self) -> np.ndarray:
        return np.arange(self.x_min, self.x_min + len(self.probs))

    def total(self) -> float:
        return float(np.sum(self.probs))


def _coin_factors(params: WalkParams) -> tuple[np.ndarray, np.ndarray]:
    """Site-wise coin matrices of the four-factor step, first-applied first."""
    rho, rho0 = params.rho, params.rho0
    half = cmath.exp(0.5j * params.nu)
    halfc = half.conjugate()
    first = np.array(
        [[-rho * half, rho0 * halfc], [-rho0 * half, -rho * halfc]],
        dtype=np.complex128,
    )
    second = np.array(
        [[rho0 * half, rho * half], [rho * halfc, -rho0 * halfc]],
        dtype=np.complex128,
    )
    return first, second


def initial_state(coin: CoinSpinor) -> WaveState:
    """Point mass at the origin carrying ``coin`` as internal state.

    Raises
    ------
    ValueError
        If the coin amplitudes are not normalised to 1 within 1e-9.
    """
    if abs(coin.norm_sq() - 1.0) > _COIN_NORM_TOL:
        raise ValueError("initial coin state must have unit norm")
    return WaveState(time=0, x_min=0, amps=coin.as_array().reshape(1, 2))


def step_full(state: WaveState, params: WalkParams) -> WaveState:
    """Advance one step of the full walk.

    Applies the four factors of the step unitary in order: first coin,
    shift of component 0 to ``x + 1``, second coin, shift of component 1
    to ``x - 1``.  The window grows by one site on each side.
    """
    first, second = _coin_factors(params)
    mid = state.amps @ first.T
    n = len(mid)
    wide = np.zeros((n + 2, 2), dtype=np.complex128)
    wide[2:, 0] = mid[:, 0]
    wide[1:-1, 1] = mid[:, 1]
    wide = wide @ second.T
    out = np.empty_like(wide)
    out[:, 0] = wide[:, 0]
    out[:-1, 1] = wide[1:, 1]
    out[-1, 1] = 0.0
    return WaveState(time=state.time + 1, x_min=state.x_min - 1, amps=out)


def step_cmv_only(state: WaveState, params: WalkParams) -> WaveState:
    """Advance one step of the swap-free walk (the banded factor alone).

    The three-band stencil feeding site ``y`` reads, with ``a``/``b`` the
    two input components:

    ``a'(y) = rho0^2 a(y-1) - alpha0 rho0 b(y-1) - rho^2 a(y) - alpha0 rho0 b(y)``
    ``b'(y) = conj(alpha0) rho0 a(y+1) + rho0^2 b(y+1) + conj(alpha0) rho0 a(y) - rho^2 b(y)``
    """
    rho, rho0 = params.rho, params.rho0
    ar0 = params.alpha0 * rho0
    ac0 = params.alpha0.conjugate() * rho0
    a = state.amps[:, 0]
    b = state.amps[:, 1]
    n = len(a)
    out = np.zeros((n + 2, 2), dtype=np.complex128)
    out[2:, 0] += rho0 * rho0 * a - ar0 * b
    out[1:-1, 0] += -(rho * rho) * a - ar0 * b
    out[:-2, 1] += ac0 * a + rho0 * rho0 * b
    out[1:-1, 1] += ac0 * a - (rho * rho) * b
    return WaveState(time=state.time + 1, x_min=state.x_min - 1, amps=out)


def swap_coin(state: WaveState) -> WaveState:
    """Exchange the two amplitude components at every site."""
    return WaveState(
        time=state.time, x_min=state.x_min, amps=state.amps[:, ::-1].copy()
    )


_STEP_FUNCS = {"full": step_full, "cmv_only": step_cmv_only}


def evolve(
    coin: CoinSpinor, params: WalkParams, t: int, variant: str = "full"
) -> WaveState:
    """Evolve the point-mass initial condition for ``t`` steps.

    Parameters
    ----------
    coin:
        Normalised initial internal state, placed at the origin.
    params:
        Walk parameters.
    t:
        Number of steps, ``t >= 0``.
    variant:
        ``"full"`` for the complete walk or ``"cmv_only"`` for the
        variant without the per-site component swap.

    Returns
    -------
    WaveState
        The state at time ``t``, on the window ``[-t, t]``.
    """
    if t < 0:
        raise ValueError("step count must be nonnegative")
    try:
        step = _STEP_FUNCS[variant]
    except KeyError:
        raise ValueError(f"unknown variant {variant!r}") from None
    state = initial_state(coin)
    for _ in range(t):
        state = step(state, params)
    return state


def distribution(state: WaveState) -> Distribution:
    """Position distribution ``P(x) = |amp0(x)|^2 + |amp1(x)|^2``."""
    probs = np.sum(np.abs(state.amps) ** 2, axis=1)
    return Distribution(x_min=state.x_min, probs=probs)
