"""Signals on finite abelian groups and the basic time-frequency shifts.

A Signal stores complex values over the canonical element order of its group.
Translation acts by T_t f(x) = f(x - t), modulation by M_s f(x) = chi_s(x) f(x),
and the time-frequency shift is the composition M_s T_t (modulate after
translate); the two orders differ by the phase chi_s(t).

WeightedComb represents measures supported on a subgroup: weights attached to
the lattice points in element order.  SubgroupSignal and QuotientSignal hold
values indexed by a subgroup's element list and a quotient's representative
list; they are what sampling and periodization produce.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

import numpy as np

from .errors import GroupMismatchError, SupportViolation
from .groups import (
    GroupElement,
    GroupSpec,
    QuotientSpec,
    Subgroup,
    character_vector,
)

__all__ = [
    "Signal",
    "SubgroupSignal",
    "QuotientSignal",
    "WeightedComb",
    "dirac",
    "pure_frequency",
    "dirac_comb",
    "comb_to_signal",
    "signal_to_comb",
    "translate",
    "modulate",
    "tf_shift",
    "finite_gaussian",
    "random_signal",
]


def _as_values(values, size: int) -> np.ndarray:
    vals = np.asarray(values, dtype=np.complex128)
    if vals.ndim != 1:
        vals = vals.reshape(-1)
    if vals.size != size:
        raise ValueError(f"expected {size} values, got {vals.size}")
    if not np.all(np.isfinite(vals)):
        raise ValueError("signal values must be finite")
    vals = vals.copy()
    vals.setflags(write=False)
    return vals


@dataclass(frozen=True, eq=False)
class Signal:
    """Complex-valued function on a group, canonical element order."""

    group: GroupSpec
    values: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "values", _as_values(self.values, self.group.order))

    def grid(self) -> np.ndarray:
        """Values reshaped to one axis per group factor (read-only view)."""
        return self.values.reshape(self.group.moduli)

    @property
    def norm1(self) -> float:
        return float(np.sum(np.abs(self.values)))

    @property
    def norm2(self) -> float:
        return float(np.linalg.norm(self.values))

    @property
    def norm_inf(self) -> float:
        return float(np.max(np.abs(self.values)))

    def __add__(self, other: "Signal") -> "Signal":
        if not isinstance(other, Signal):
            return NotImplemented
        if other.group != self.group:
            raise GroupMismatchError("signals live on different groups")
        return Signal(self.group, self.values + other.values)

    def __sub__(self, other: "Signal") -> "Signal":
        if not isinstance(other, Signal):
            return NotImplemented
        if other.group != self.group:
            raise GroupMismatchError("signals live on different groups")
        return Signal(self.group, self.values - other.values)

    def __mul__(self, scalar) -> "Signal":
        if isinstance(scalar, (int, float, complex, np.number)):
            return Signal(self.group, self.values * scalar)
        return NotImplemented

    __rmul__ = __mul__

    def __neg__(self) -> "Signal":
        return Signal(self.group, -self.values)

    def __repr__(self) -> str:
        return f"Signal(on {self.group!r})"


@dataclass(frozen=True, eq=False)
class SubgroupSignal:
    """Values attached to a subgroup's elements, in sorted element order."""

    subgroup: Subgroup
    values: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "values", _as_values(self.values, self.subgroup.order))

    def as_signal(self) -> Signal:
        """Reinterpret on the reduced spec when the subgroup is a per-axis grid.

        The grid a_1 Z x ... x a_d Z is isomorphic to Z_{N_1/a_1} x ... via
        k |-> a k, and the sorted element order matches the canonical order of
        the reduced spec, so the value array carries over unchanged.
        """
        steps = self.subgroup.axis_steps
        if steps is None:
            raise GroupMismatchError(
                "only per-axis grid subgroups can be reindexed as signals"
            )
        moduli = tuple(
            n // a for n, a in zip(self.subgroup.parent.moduli, steps)
        )
        return Signal(GroupSpec(moduli), self.values)

    def __repr__(self) -> str:
        return f"SubgroupSignal(on {self.subgroup!r})"


@dataclass(frozen=True, eq=False)
class QuotientSignal:
    """Values attached to a quotient's coset representatives, in rep order."""

    quotient: QuotientSpec
    values: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "values", _as_values(self.values, self.quotient.size))

    def __repr__(self) -> str:
        return f"QuotientSignal(on {self.quotient!r})"


@dataclass(frozen=True, eq=False)
class WeightedComb:
    """Measure supported on a lattice: one weight per lattice element."""

    lattice: Subgroup
    weights: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "weights", _as_values(self.weights, self.lattice.order))

    @property
    def weight_bound(self) -> float:
        return float(np.max(np.abs(self.weights)))

    def to_signal(self) -> Signal:
        return comb_to_signal(self)

    def items(self) -> Iterator[tuple[GroupElement, complex]]:
        for e, w in zip(self.lattice.elements, self.weights):
            yield e, complex(w)

    def __repr__(self) -> str:
        return f"WeightedComb(on {self.lattice!r})"


def dirac(group: GroupSpec, x) -> Signal:
    """Unit point mass at x (indicator normalization, no 1/|G| factor)."""
    vals = np.zeros(group.order, dtype=np.complex128)
    vals[group.index(x)] = 1.0
    return Signal(group, vals)


def pure_frequency(group: GroupSpec, s) -> Signal:
    """The character chi_s as a signal."""
    return Signal(group, character_vector(group, s))


def dirac_comb(lattice: Subgroup) -> Signal:
    """Indicator of the lattice: unit mass at every lattice point."""
    return Signal(lattice.parent, lattice.mask.astype(np.complex128))


def comb_to_signal(comb: WeightedComb) -> Signal:
    """Embed a weighted comb as a signal that vanishes off the lattice."""
    vals = np.zeros(comb.lattice.parent.order, dtype=np.complex128)
    vals[comb.lattice.indices] = comb.weights
    return Signal(comb.lattice.parent, vals)


def signal_to_comb(f: Signal, lattice: Subgroup, eps: float = 1e-10) -> WeightedComb:
    """Read lattice weights off a signal, certifying it vanishes elsewhere.

    Raises SupportViolation at the first canonical position where |f| exceeds
    the absolute threshold eps off the lattice.
    """
    if lattice.parent != f.group:
        raise GroupMismatchError("lattice belongs to a different group")
    mags = np.abs(f.values)
    off = mags * ~lattice.mask
    worst = int(np.argmax(off))
    if off[worst] > eps:
        raise SupportViolation(f.group.element_at(worst), off[worst])
    return WeightedComb(lattice, f.values[lattice.indices])


def translate(f: Signal, t) -> Signal:
    """T_t f(x) = f(x - t)."""
    t = f.group.check(t)
    rolled = np.roll(f.grid(), shift=t.coords, axis=tuple(range(f.group.ndim)))
    return Signal(f.group, rolled.reshape(-1))


def modulate(f: Signal, s) -> Signal:
    """M_s f(x) = chi_s(x) f(x)."""
    return Signal(f.group, f.values * character_vector(f.group, s))


def tf_shift(f: Signal, t, s) -> Signal:
    """Time-frequency shift pi(t, s) = M_s T_t (modulate after translate)."""
    return modulate(translate(f, t), s)


@lru_cache(maxsize=None)
def _axis_gaussian(n: int, radius: int) -> tuple[float, ...]:
    vals = []
    for k in range(n):
        acc = 0.0
        for m in range(-radius, radius + 1):
            acc += math.exp(-math.pi * (k + m * n) ** 2 / n)
        vals.append(acc)
    return tuple(vals)


@lru_cache(maxsize=None)
def _finite_gaussian(moduli: tuple[int, ...], radius: int) -> Signal:
    grid = np.array(1.0)
    for n in moduli:
        axis = np.array(_axis_gaussian(n, radius), dtype=np.float64)
        grid = np.multiply.outer(grid, axis)
    return Signal(GroupSpec(moduli), grid.reshape(-1))


def finite_gaussian(group: GroupSpec, radius: int = 8) -> Signal:
    """Periodized Gaussian, the canonical window.

    Per axis g[k] = sum_{|m| <= radius} exp(-pi (k + m N)^2 / N), tensorized
    across axes.  The omitted tail is below exp(-pi * (radius+1)^2 * N), far
    under double precision for the default radius 8, which makes the window
    an eigenvector of the Fourier transform: dft(g) = sqrt(|G|) g to machine
    accuracy under the counting convention.
    """
    if radius < 1:
        raise ValueError("truncation radius must be >= 1")
    return _finite_gaussian(group.moduli, radius)


def random_signal(group: GroupSpec, rng: np.random.Generator, real: bool = False) -> Signal:
    """Standard-normal test signal (complex by default)."""
    if real:
        return Signal(group, rng.standard_normal(group.order).astype(np.complex128))
    re = rng.standard_normal(group.order)
    im = rng.standard_normal(group.order)
    return Signal(group, re + 1j * im)
