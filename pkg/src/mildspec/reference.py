"""Slow reference implementations used as oracles.

Everything here is written from the defining sums, with exact integer
character phases and no FFT shortcuts; the fast paths are tested against
these at small sizes and the runtime verify suites reuse them.
"""

from __future__ import annotations

import math

import numpy as np

from .fourier import COUNTING, FourierConvention
from .gabor import GaborSystem, TFLattice
from .groups import GroupSpec, _character_block
from .signals import Signal

__all__ = [
    "naive_dft",
    "naive_idft",
    "stft_direct",
    "synthesis_matrix",
    "frame_apply_direct",
]


def _dft_matrix(group: GroupSpec) -> np.ndarray:
    return np.conj(_character_block(group, group._coords, group._coords))


def naive_dft(f: Signal, convention: FourierConvention = COUNTING) -> Signal:
    """O(|G|^2) transform straight from the definition."""
    out = _dft_matrix(f.group) @ f.values
    if convention.normalization == "unitary":
        out = out / math.sqrt(f.group.order)
    return Signal(f.group, out)


def naive_idft(f: Signal, convention: FourierConvention = COUNTING) -> Signal:
    out = np.conj(_dft_matrix(f.group)) @ f.values
    if convention.normalization == "unitary":
        out = out / math.sqrt(f.group.order)
    else:
        out = out / f.group.order
    return Signal(f.group, out)


def stft_direct(f: Signal, window: Signal) -> np.ndarray:
    """Full STFT grid by the double sum; O(|G|^3), small groups only."""
    group = f.group
    n = group.order
    W = _dft_matrix(group)
    out = np.empty((n, n), dtype=np.complex128)
    wgrid = window.grid()
    axes = tuple(range(group.ndim))
    for ti in range(n):
        t = group.element_at(ti)
        shifted = np.roll(wgrid, shift=t.coords, axis=axes).reshape(-1)
        out[ti] = W @ (f.values * np.conj(shifted))
    return out


def synthesis_matrix(window: Signal, lattice: TFLattice) -> np.ndarray:
    """Dense synthesis operator: columns are pi(lambda) g in lattice order."""
    from .signals import tf_shift

    group = window.group
    cols = [
        tf_shift(window, t, s).values for t, s in lattice.points()
    ]
    return np.array(cols, dtype=np.complex128).T


def frame_apply_direct(system: GaborSystem, f: Signal) -> Signal:
    """Frame operator straight from the definition, one atom at a time."""
    from .signals import tf_shift

    out = np.zeros(f.group.order, dtype=np.complex128)
    for t, s in system.lattice.points():
        atom = tf_shift(system.window, t, s).values
        out += np.vdot(atom, f.values) * atom
    return Signal(f.group, out)
