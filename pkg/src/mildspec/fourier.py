"""Fourier transforms, sampling/periodization duality, and Poisson summation.

Under the default counting convention the forward transform is

    fhat(s) = sum_x f(x) conj(chi_s(x)),

with no prefactor, and the inverse carries 1/|G|.  Consequences used
throughout (all with the counting convention):

  * dft(dirac(x))(s) = conj(chi_s(x)); in particular dft(dirac(0)) = 1.
  * dft(pure_frequency(r)) = |G| dirac(r).
  * dft(dirac_comb(L)) = |L| dirac_comb(annihilator(L)).
  * Plancherel: sum |fhat|^2 = |G| sum |f|^2.
  * Double transform: dft(dft(f))(x) = |G| f(-x).
  * Poisson: sum_{h in H} f(h) = (|H|/|G|) sum_{s in annihilator(H)} fhat(s).

The "unitary" convention divides the forward transform by sqrt(|G|) and
multiplies the inverse likewise, making both isometries.

Sampling is restriction to a subgroup; its adjoint embeds a subgroup signal
back with zeros.  Periodization is the coset-sum (Weil) map onto a quotient.
Transforms on subgroups and quotients are indexed through the dualities
(G/H)^ = annihilator(H) and H^ = G^ / annihilator(H); both are computed by
direct summation with exact integer character phases.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import GroupMismatchError
from .groups import (
    GroupSpec,
    QuotientSpec,
    Subgroup,
    _character_block,
    annihilator,
    quotient as quotient_of,
)
from .signals import (
    QuotientSignal,
    Signal,
    SubgroupSignal,
    WeightedComb,
    dirac_comb,
    signal_to_comb,
)

__all__ = [
    "FourierConvention",
    "COUNTING",
    "UNITARY",
    "dft",
    "idft",
    "mild_ft",
    "pair",
    "restriction",
    "adjoint_restriction",
    "weil_map",
    "dft_subgroup",
    "dft_quotient",
    "poisson_check",
    "PoissonResult",
    "duality_sampling_periodization",
    "DualityResult",
    "comb_ft",
]


@dataclass(frozen=True)
class FourierConvention:
    """Normalization of the transform pair; the forward exponent sign is fixed negative."""

    normalization: str

    def __post_init__(self):
        if self.normalization not in ("counting", "unitary"):
            raise ValueError(f"unknown normalization {self.normalization!r}")


COUNTING = FourierConvention("counting")
UNITARY = FourierConvention("unitary")


def dft(f: Signal, convention: FourierConvention = COUNTING) -> Signal:
    """Forward transform, an FFT along each axis."""
    spec = np.fft.fftn(f.grid())
    if convention.normalization == "unitary":
        spec = spec / math.sqrt(f.group.order)
    return Signal(f.group, spec.reshape(-1))


def idft(f: Signal, convention: FourierConvention = COUNTING) -> Signal:
    """Inverse transform; carries 1/|G| under the counting convention."""
    vals = np.fft.ifftn(f.grid())
    if convention.normalization == "unitary":
        vals = vals * math.sqrt(f.group.order)
    return Signal(f.group, vals.reshape(-1))


def pair(sigma: Signal, f: Signal) -> complex:
    """Bilinear pairing sum_x sigma(x) f(x); no conjugation."""
    if sigma.group != f.group:
        raise GroupMismatchError("pairing needs both signals on the same group")
    return complex(np.sum(sigma.values * f.values))


def mild_ft(sigma: Signal, convention: FourierConvention = COUNTING) -> Signal:
    """Transform of a signal in its role as a functional.

    Characterized by pair(mild_ft(sigma), f) = pair(sigma, dft(f)) for all f,
    which the symmetry chi_s(x) = chi_x(s) turns into the ordinary transform:
    both pairings equal sum_{x,s} sigma(x) f(s) conj(chi_s(x)).
    """
    return dft(sigma, convention)


def restriction(f: Signal, subgroup: Subgroup) -> SubgroupSignal:
    """Sample a signal on a subgroup: (R_H f)(h) = f(h)."""
    if subgroup.parent != f.group:
        raise GroupMismatchError("subgroup belongs to a different group")
    return SubgroupSignal(subgroup, f.values[subgroup.indices])


def adjoint_restriction(mu: SubgroupSignal, group: GroupSpec) -> Signal:
    """Embed a subgroup signal with zeros off the subgroup.

    Adjoint to restriction under the bilinear pairing:
    pair(adjoint_restriction(mu), f) = sum_h mu(h) f(h), exactly.
    """
    if mu.subgroup.parent != group:
        raise GroupMismatchError("subgroup signal does not live inside this group")
    vals = np.zeros(group.order, dtype=np.complex128)
    vals[mu.subgroup.indices] = mu.values
    return Signal(group, vals)


def weil_map(f: Signal, subgroup: Subgroup, onto: QuotientSpec | None = None) -> QuotientSignal:
    """Coset sums: (T_H f)(x + H) = sum_{h in H} f(x + h).

    The sum runs over each coset in canonical order, so the result does not
    depend on which representatives the quotient happens to list.
    """
    if subgroup.parent != f.group:
        raise GroupMismatchError("subgroup belongs to a different group")
    if onto is None:
        onto = quotient_of(f.group, subgroup)
    elif onto.subgroup != subgroup:
        raise GroupMismatchError("quotient was formed from a different subgroup")
    out = np.zeros(onto.size, dtype=np.complex128)
    np.add.at(out, onto.coset_map, f.values)
    return QuotientSignal(onto, out)


def dft_subgroup(mu: SubgroupSignal, onto: QuotientSpec | None = None) -> QuotientSignal:
    """Transform on a subgroup, indexed by the dual identification H^ = G^/H-perp.

    Every character of H is the restriction of a parent character, and two
    parent frequencies restrict equally iff they differ by an annihilator
    element; values are indexed by the quotient's representatives.  Direct
    O(|H|^2) summation with exact phases.
    """
    H = mu.subgroup
    group = H.parent
    if onto is None:
        onto = quotient_of(group, annihilator(H))
    table = np.conj(_character_block(group, onto.rep_coords, H.coords_array))
    return QuotientSignal(onto, table @ mu.values)


def dft_quotient(q: QuotientSignal, onto: Subgroup | None = None) -> SubgroupSignal:
    """Transform on a quotient, indexed by the dual identification (G/H)^ = H-perp.

    A frequency s annihilating H is constant on cosets, so evaluating its
    character at any representative is well defined.  Direct summation.
    """
    H = q.quotient.subgroup
    group = H.parent
    if onto is None:
        onto = annihilator(H)
    table = np.conj(_character_block(group, onto.coords_array, q.quotient.rep_coords))
    return SubgroupSignal(onto, table @ q.values)


class PoissonResult(NamedTuple):
    lhs: complex
    rhs: complex
    residual: float


def poisson_check(f: Signal, subgroup: Subgroup) -> PoissonResult:
    """Poisson summation: sum_{h in H} f(h) = (|H|/|G|) sum_{s in H-perp} fhat(s).

    The constant |H|/|G| = 1/|H-perp| is forced by the counting convention;
    summing character orthogonality over H-perp proves the identity exactly.
    """
    if subgroup.parent != f.group:
        raise GroupMismatchError("subgroup belongs to a different group")
    lhs = complex(np.sum(f.values[subgroup.indices]))
    fhat = dft(f)
    perp = annihilator(subgroup)
    rhs = complex(
        (subgroup.order / f.group.order) * np.sum(fhat.values[perp.indices])
    )
    return PoissonResult(lhs, rhs, abs(lhs - rhs))


class DualityResult(NamedTuple):
    lhs: QuotientSignal
    rhs: QuotientSignal
    residual: float


def duality_sampling_periodization(f: Signal, subgroup: Subgroup) -> DualityResult:
    """Sampling on H against periodization of the spectrum by H-perp.

    Checks T_{H-perp}(dft_G f) = |H-perp| * dft_H(restriction(f, H)) on the
    shared quotient G^/H-perp; returns both sides and the max abs residual.
    """
    perp = annihilator(subgroup)
    onto = quotient_of(f.group, perp)
    lhs = weil_map(dft(f), perp, onto)
    sampled = dft_subgroup(restriction(f, subgroup), onto)
    rhs = QuotientSignal(onto, perp.order * sampled.values)
    residual = float(np.max(np.abs(lhs.values - rhs.values)))
    return DualityResult(lhs, rhs, residual)


def comb_ft(lattice: Subgroup, eps: float = 1e-10) -> WeightedComb:
    """Transform of the unit comb: |L| on the annihilator lattice, zero elsewhere.

    Computed through the FFT and certified by signal_to_comb, so FFT leakage
    beyond eps raises SupportViolation instead of being silently dropped.
    """
    hat = dft(dirac_comb(lattice))
    return signal_to_comb(hat, annihilator(lattice), eps=eps)
