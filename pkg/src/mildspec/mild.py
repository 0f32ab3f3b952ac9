"""Weak-star convergence surrogates, support certificates, and periodicity.

On a finite group every linear functional is itself a signal, so weak-star
(distributional) convergence has to be measured, not defined; this module
offers three computable deviation metrics between a signal sigma and a
candidate limit sigma0:

  * d_pair:  max over a probe set of |pair(sigma - sigma0, f)| / (1 + s0_norm(f)),
  * d_stft:  max pointwise STFT deviation against a fixed window,
  * d_coeff: max deviation of canonical Gabor coefficients on a lattice.

The three vanish together, and along refining comb sequences they decrease
together; their measured ratios are reported, never asserted.

The module also certifies structural facts: the support of a signal, comb
form for measures on a lattice, and the periodicity law saying a signal is
pZ-periodic iff its spectrum lives on the annihilator (N/p)Z, with comb
weights |H| times the one-period DFT coefficients (H = pZ the period
lattice).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import GroupMismatchError, NotPeriodic
from .fourier import dft
from .gabor import GaborSystem, _lattice_analysis, stft
from .groups import (
    GroupElement,
    GroupSpec,
    Subgroup,
    _character_block,
    annihilator,
    grid_subgroup,
)
from .signals import (
    Signal,
    WeightedComb,
    dirac,
    dirac_comb,
    finite_gaussian,
    signal_to_comb,
    tf_shift,
)

__all__ = [
    "support",
    "comb_characterization",
    "PeriodicReport",
    "periodize_analysis",
    "default_probes",
    "mild_deviation_pairing",
    "mild_deviation_stft",
    "mild_deviation_coeff",
    "DistributionSequence",
    "ConvergenceReport",
    "convergence_report",
    "refining_comb_sequence",
]


def support(sigma: Signal, eps: float = 1e-10) -> frozenset[GroupElement]:
    """Elements where |sigma| exceeds eps relative to its peak.

    The zero signal has empty support.
    """
    mags = np.abs(sigma.values)
    peak = float(mags.max())
    if peak == 0.0:
        return frozenset()
    hit = np.nonzero(mags > eps * peak)[0]
    return frozenset(sigma.group.element_at(int(i)) for i in hit)


def comb_characterization(sigma: Signal, lattice: Subgroup, eps: float = 1e-10) -> WeightedComb:
    """Certify that sigma is a measure on the lattice and return its comb form.

    Raises SupportViolation at the first off-lattice position above eps; the
    returned comb records its own weight bound.
    """
    return signal_to_comb(sigma, lattice, eps=eps)


@dataclass(frozen=True, eq=False)
class PeriodicReport:
    """Outcome of the periodicity analysis of a signal."""

    period_lattice: Subgroup
    spectrum: WeightedComb
    one_period_dft: np.ndarray
    weight_residual: float
    leakage: float


def periodize_analysis(f: Signal, period, tol: float = 1e-10) -> PeriodicReport:
    """Certify periodicity and factor the spectrum as a weighted comb.

    For per-axis periods p (each dividing its modulus) the checks are:

      1. T_h f = f for the generators p_j e_j of H = pZ; translations
         compose, so generator invariance settles the whole lattice.  The
         tolerance is tol * (1 + max|f|); failure raises NotPeriodic.
      2. The spectrum is supported on annihilator(H) = (N/p)Z; off-lattice
         leakage above tol raises SupportViolation.
      3. The comb weights equal |H| * F(n), where F is the one-period DFT
         F(n) = sum over t in the box [0, p) of f(t) conj(chi_{s(n)}(t)),
         s(n) = (N_j/p_j) n_j, computed by direct summation.  The |H| factor
         is forced by the counting convention.
    """
    from .signals import translate

    group = f.group
    if isinstance(period, (int, np.integer)):
        period = (int(period),) * group.ndim
    steps = tuple(int(p) for p in period)
    H = grid_subgroup(group, steps)
    scale = tol * (1.0 + f.norm_inf)
    for j, p in enumerate(steps):
        if p == group.moduli[j]:
            continue
        coords = [0] * group.ndim
        coords[j] = p
        shift = group.element(coords)
        dev = float(np.max(np.abs(translate(f, shift).values - f.values)))
        if dev > scale:
            raise NotPeriodic(shift, dev)

    perp = annihilator(H)
    fhat = dft(f)
    leakage = float(np.max(np.abs(fhat.values) * ~perp.mask))
    spectrum = signal_to_comb(fhat, perp, eps=tol)

    box = list(itertools.product(*(range(p) for p in steps)))
    box_coords = np.array(box, dtype=np.int64)
    strides = np.array(group._strides, dtype=np.int64)
    box_values = f.values[box_coords @ strides]
    table = np.conj(_character_block(group, perp.coords_array, box_coords))
    one_period = table @ box_values
    weight_residual = float(
        np.max(np.abs(spectrum.weights - H.order * one_period))
    )
    return PeriodicReport(H, spectrum, one_period, weight_residual, leakage)


def default_probes(group: GroupSpec) -> list[Signal]:
    """Gaussian atoms on a coarse time-frequency net, plus every point mass."""
    g0 = finite_gaussian(group)
    step = tuple(max(n // 4, 1) for n in group.moduli)
    net_axes = [range(0, n, s) for n, s in zip(group.moduli, step)]
    probes = [
        tf_shift(g0, t, s)
        for t in itertools.product(*net_axes)
        for s in itertools.product(*net_axes)
    ]
    probes.extend(dirac(group, x) for x in group.elements())
    return probes


def _deviation_pairing(delta: np.ndarray, probes, norms) -> float:
    best = 0.0
    for p, n in zip(probes, norms):
        val = abs(np.sum(delta * p.values)) / (1.0 + n)
        if val > best:
            best = val
    return float(best)


def mild_deviation_pairing(sigma: Signal, sigma0: Signal, probes=None) -> float:
    """max over probes of |pair(sigma - sigma0, f)| / (1 + s0_norm(f))."""
    from .gabor import s0_norm

    if sigma.group != sigma0.group:
        raise GroupMismatchError("signals live on different groups")
    if probes is None:
        probes = default_probes(sigma.group)
    probes = list(probes)
    if not probes:
        raise ValueError("the probe set must be non-empty")
    for p in probes:
        if p.group != sigma.group:
            raise GroupMismatchError("probe lives on a different group")
    norms = [s0_norm(p) for p in probes]
    return _deviation_pairing(sigma.values - sigma0.values, probes, norms)


def mild_deviation_stft(sigma: Signal, sigma0: Signal, window: Signal | None = None) -> float:
    """Largest pointwise STFT deviation; default window is the Gaussian."""
    if sigma.group != sigma0.group:
        raise GroupMismatchError("signals live on different groups")
    if window is None:
        window = finite_gaussian(sigma.group)
    return stft(sigma - sigma0, window).max_modulus


def mild_deviation_coeff(sigma: Signal, sigma0: Signal, system: GaborSystem) -> float:
    """Largest deviation of canonical Gabor coefficients on the system's lattice."""
    if sigma.group != sigma0.group:
        raise GroupMismatchError("signals live on different groups")
    if system.group != sigma.group:
        raise GroupMismatchError("system lives on a different group")
    delta = sigma - sigma0
    coeffs = _lattice_analysis(
        delta.values[None, :], system.canonical_dual, system.lattice
    )[0]
    return float(np.max(np.abs(coeffs)))


@dataclass(frozen=True, eq=False)
class DistributionSequence:
    """A sequence of signals with a designated candidate limit."""

    group: GroupSpec
    members: tuple[Signal, ...]
    limit: Signal

    def __post_init__(self):
        for m in (*self.members, self.limit):
            if m.group != self.group:
                raise GroupMismatchError("sequence member lives on a different group")

    @cached_property
    def uniform_bound(self) -> float:
        """max s0prime_norm over the members (uniform boundedness certificate)."""
        from .gabor import s0prime_norm

        return max((s0prime_norm(m) for m in self.members), default=0.0)

    def __len__(self) -> int:
        return len(self.members)


@dataclass(frozen=True, eq=False)
class ConvergenceReport:
    """Per-member deviation metrics for a sequence against its limit."""

    d_pair: tuple[float, ...]
    d_stft: tuple[float, ...]
    d_coeff: tuple[float, ...]
    equivalence_ratios: dict[str, float]

    def is_monotone(self, metric: str, slack: float | None = None) -> bool:
        """Non-increasing check with a rounding slack for ties at machine precision."""
        series = getattr(self, metric if metric.startswith("d_") else f"d_{metric}")
        if slack is None:
            slack = 1e-10 * (1.0 + (series[0] if series else 0.0))
        return all(b <= a + slack for a, b in zip(series, series[1:]))


def convergence_report(
    sequence: DistributionSequence,
    system: GaborSystem,
    window: Signal | None = None,
    probes=None,
) -> ConvergenceReport:
    """Evaluate all three deviation metrics for every member of a sequence.

    Probe norms are computed once and shared across members.
    """
    from .gabor import s0_norm

    group = sequence.group
    if system.group != group:
        raise GroupMismatchError("system lives on a different group")
    if window is None:
        window = finite_gaussian(group)
    if probes is None:
        probes = default_probes(group)
    probes = list(probes)
    if not probes:
        raise ValueError("the probe set must be non-empty")
    norms = [s0_norm(p) for p in probes]
    dual = system.canonical_dual

    d_pair, d_stft, d_coeff = [], [], []
    for member in sequence.members:
        delta = member - sequence.limit
        d_pair.append(_deviation_pairing(delta.values, probes, norms))
        d_stft.append(stft(delta, window).max_modulus)
        coeffs = _lattice_analysis(delta.values[None, :], dual, system.lattice)[0]
        d_coeff.append(float(np.max(np.abs(coeffs))))

    ratios: dict[str, float] = {}
    for name, series in (("pair", d_pair), ("coeff", d_coeff)):
        vals = [s / t for s, t in zip(series, d_stft) if t > 0]
        if vals:
            ratios[f"{name}_over_stft_max"] = float(max(vals))
            ratios[f"{name}_over_stft_min"] = float(min(vals))
    return ConvergenceReport(tuple(d_pair), tuple(d_stft), tuple(d_coeff), ratios)


def refining_comb_sequence(group: GroupSpec) -> DistributionSequence:
    """Normalized combs on a refining chain of grid lattices.

    Starts at the trivial lattice (a single point mass) and divides one step
    by its smallest prime factor per stage until the full group is reached;
    the candidate limit is the normalized constant, i.e. uniform measure.
    The normalized combs' transforms are unit combs on the shrinking
    annihilator lattices, which is what drives all three metrics down.
    """
    steps = list(group.moduli)
    chain = [tuple(steps)]
    while any(s > 1 for s in steps):
        j = max(range(len(steps)), key=lambda k: steps[k])
        p = min(q for q in range(2, steps[j] + 1) if steps[j] % q == 0)
        steps[j] //= p
        chain.append(tuple(steps))
    members = []
    for st in chain:
        lat = grid_subgroup(group, st)
        members.append(dirac_comb(lat) * (1.0 / lat.order))
    limit = Signal(group, np.full(group.order, 1.0 / group.order, dtype=np.complex128))
    return DistributionSequence(group, tuple(members), limit)
