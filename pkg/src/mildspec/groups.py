"""Finite abelian groups and their duality structure.

A group is a product of cyclic factors Z_N1 x ... x Z_Nd.  Elements are
coordinate tuples reduced per axis and ordered lexicographically; the same
order fixes how signals index the group (row-major over the axes).  The dual
group is indexed by the same spec: frequency s acts through the character

    chi_s(x) = exp(2 pi i sum_j s_j x_j / N_j),

so subgroups, annihilators and quotients all live in one coordinate system.
Character phases are computed from integer residues mod lcm(N_j), which keeps
algebraic identities (annihilator membership, biduality, restriction of pure
frequencies) exact rather than float-approximate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import GroupMismatchError

__all__ = [
    "GroupSpec",
    "GroupElement",
    "Subgroup",
    "QuotientSpec",
    "character",
    "character_vector",
    "subgroup_generated",
    "grid_subgroup",
    "trivial_subgroup",
    "full_subgroup",
    "annihilator",
    "quotient",
    "all_subgroups",
]


@dataclass(frozen=True, order=True)
class GroupElement:
    """Point of a finite abelian group: reduced coordinates, one per axis."""

    coords: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(int(c) for c in self.coords))

    def __iter__(self) -> Iterator[int]:
        return iter(self.coords)

    def __getitem__(self, j: int) -> int:
        return self.coords[j]

    def __len__(self) -> int:
        return len(self.coords)

    def __repr__(self) -> str:
        return f"GroupElement{self.coords}"


def _as_coords(value) -> tuple[int, ...]:
    if isinstance(value, GroupElement):
        return value.coords
    if isinstance(value, (int, np.integer)):
        return (int(value),)
    return tuple(int(c) for c in value)


@dataclass(frozen=True)
class GroupSpec:
    """Product of cyclic groups, given by the tuple of axis moduli."""

    moduli: tuple[int, ...]

    def __post_init__(self):
        mod = _as_coords(self.moduli)
        if not mod:
            raise ValueError("a group needs at least one axis")
        if any(n < 1 for n in mod):
            raise ValueError(f"axis moduli must be >= 1, got {mod}")
        object.__setattr__(self, "moduli", mod)

    @cached_property
    def order(self) -> int:
        return math.prod(self.moduli)

    @property
    def ndim(self) -> int:
        return len(self.moduli)

    @cached_property
    def _strides(self) -> tuple[int, ...]:
        # row-major: index = sum_j coords[j] * strides[j]
        strides = []
        acc = 1
        for n in reversed(self.moduli):
            strides.append(acc)
            acc *= n
        return tuple(reversed(strides))

    @cached_property
    def _char_lcm(self) -> int:
        return math.lcm(*self.moduli)

    @cached_property
    def _char_weights(self) -> np.ndarray:
        L = self._char_lcm
        return np.array([L // n for n in self.moduli], dtype=np.int64)

    @cached_property
    def _coords(self) -> np.ndarray:
        """All element coordinates, shape (order, ndim), canonical order."""
        grids = np.indices(self.moduli)
        arr = grids.reshape(self.ndim, -1).T.astype(np.int64)
        arr.setflags(write=False)
        return arr

    def element(self, coords) -> GroupElement:
        """Build an element, reducing each coordinate mod its axis modulus."""
        c = _as_coords(coords)
        if len(c) != self.ndim:
            raise GroupMismatchError(
                f"expected {self.ndim} coordinates, got {len(c)}"
            )
        return GroupElement(tuple(v % n for v, n in zip(c, self.moduli)))

    def zero(self) -> GroupElement:
        return GroupElement((0,) * self.ndim)

    def check(self, x: GroupElement) -> GroupElement:
        """Validate that x is a reduced element of this group."""
        if not isinstance(x, GroupElement):
            return self.element(x)
        if len(x.coords) != self.ndim:
            raise GroupMismatchError(
                f"element has {len(x.coords)} coordinates, group has {self.ndim} axes"
            )
        if any(not 0 <= c < n for c, n in zip(x.coords, self.moduli)):
            return self.element(x.coords)
        return x

    def add(self, x, y) -> GroupElement:
        x, y = self.check(x), self.check(y)
        return GroupElement(
            tuple((a + b) % n for a, b, n in zip(x.coords, y.coords, self.moduli))
        )

    def neg(self, x) -> GroupElement:
        x = self.check(x)
        return GroupElement(tuple((-a) % n for a, n in zip(x.coords, self.moduli)))

    def sub(self, x, y) -> GroupElement:
        return self.add(x, self.neg(y))

    def index(self, x) -> int:
        """Canonical (row-major) index of an element."""
        x = self.check(x)
        return sum(c * s for c, s in zip(x.coords, self._strides))

    def element_at(self, index: int) -> GroupElement:
        if not 0 <= index < self.order:
            raise IndexError(f"index {index} out of range for group of order {self.order}")
        coords = []
        for s in self._strides:
            coords.append(index // s)
            index %= s
        return GroupElement(tuple(coords))

    def elements(self) -> Iterator[GroupElement]:
        """All elements in canonical (lexicographic) order."""
        for row in self._coords:
            yield GroupElement(tuple(int(v) for v in row))

    def negation_permutation(self) -> np.ndarray:
        """Index permutation sending index(x) to index(-x)."""
        mod = np.array(self.moduli, dtype=np.int64)
        neg = (-self._coords) % mod
        return neg @ np.array(self._strides, dtype=np.int64)

    def to_json(self) -> list[int]:
        return list(self.moduli)

    @staticmethod
    def from_json(data) -> "GroupSpec":
        return GroupSpec(tuple(int(n) for n in data))

    def __repr__(self) -> str:
        return "Z" + "xZ".join(str(n) for n in self.moduli)


def character(group: GroupSpec, s, x) -> complex:
    """Value of the character chi_s at x, exp(2 pi i sum s_j x_j / N_j).

    The phase numerator is reduced as an integer mod lcm(N_j) before the
    exponential, so rational phases that are exactly 0, 1/2, etc. evaluate
    without drift.
    """
    s, x = group.check(s), group.check(x)
    L = group._char_lcm
    k = sum(
        sj * xj * w for sj, xj, w in zip(s.coords, x.coords, group._char_weights)
    ) % L
    return complex(np.exp(2j * np.pi * (int(k) / L)))


def _character_block(group: GroupSpec, rows: np.ndarray, cols: np.ndarray) -> np.ndarray:
    """Matrix exp(2 pi i <r, c>) for coordinate arrays rows (m,d), cols (n,d)."""
    L = group._char_lcm
    K = (rows * group._char_weights) @ cols.T % L
    return np.exp((2j * np.pi / L) * K)


def character_vector(group: GroupSpec, s) -> np.ndarray:
    """chi_s sampled over the whole group in canonical order."""
    s = group.check(s)
    row = np.array([s.coords], dtype=np.int64)
    return _character_block(group, row, group._coords)[0]


@dataclass(frozen=True, eq=False)
class Subgroup:
    """Subgroup given by generators and its full sorted element list."""

    parent: GroupSpec
    generators: tuple[GroupElement, ...]
    elements: tuple[GroupElement, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    @cached_property
    def element_set(self) -> frozenset[GroupElement]:
        return frozenset(self.elements)

    def contains(self, x) -> bool:
        return self.parent.check(x) in self.element_set

    @cached_property
    def indices(self) -> np.ndarray:
        """Canonical parent indices of the elements, in element order."""
        idx = np.array([self.parent.index(e) for e in self.elements], dtype=np.intp)
        idx.setflags(write=False)
        return idx

    @cached_property
    def mask(self) -> np.ndarray:
        """Boolean membership mask over the parent's canonical order."""
        m = np.zeros(self.parent.order, dtype=bool)
        m[self.indices] = True
        m.setflags(write=False)
        return m

    @cached_property
    def coords_array(self) -> np.ndarray:
        arr = self.parent._coords[self.indices]
        arr.setflags(write=False)
        return arr

    @cached_property
    def axis_steps(self) -> tuple[int, ...] | None:
        """Per-axis steps (a_1, ..., a_d) if this is the grid a_1 Z x ... x a_d Z.

        Returns None when the subgroup is not a product of per-axis cyclic
        subgroups (a diagonal, say).  Step N_j means the axis is collapsed
        to {0}.
        """
        steps = []
        for j, n in enumerate(self.parent.moduli):
            g = n
            for e in self.elements:
                g = math.gcd(g, e.coords[j])
            steps.append(g if g > 0 else n)
        expected = math.prod(n // a for n, a in zip(self.parent.moduli, steps))
        return tuple(steps) if expected == self.order else None

    def position(self, x) -> int:
        """Position of x inside the sorted element list."""
        x = self.parent.check(x)
        try:
            return self._positions[x]
        except KeyError:
            raise GroupMismatchError(f"{x!r} is not in the subgroup") from None

    @cached_property
    def _positions(self) -> dict[GroupElement, int]:
        return {e: i for i, e in enumerate(self.elements)}

    def to_json(self) -> dict:
        return {
            "group": self.parent.to_json(),
            "generators": [list(g.coords) for g in self.generators],
        }

    @staticmethod
    def from_json(data) -> "Subgroup":
        group = GroupSpec.from_json(data["group"])
        return subgroup_generated(group, data.get("generators", []))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subgroup):
            return NotImplemented
        return self.parent == other.parent and self.elements == other.elements

    def __hash__(self) -> int:
        return hash((self.parent, self.elements))

    def __repr__(self) -> str:
        gens = ",".join(str(tuple(g.coords)) for g in self.generators) or "0"
        return f"Subgroup(<{gens}> of {self.parent!r}, order {self.order})"


def _closure(group: GroupSpec, seed: Iterable[GroupElement], extra: Sequence[GroupElement]) -> set[GroupElement]:
    """Additive closure of seed (already closed or arbitrary) and extra generators."""
    seen = set(seed)
    seen.add(group.zero())
    frontier = list(seen)
    gens = list(extra)
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = group.add(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def _reduced_generators(group: GroupSpec, elements: Sequence[GroupElement]) -> tuple[GroupElement, ...]:
    """Greedy small generating set for a subgroup given as an element list."""
    gens: list[GroupElement] = []
    span: set[GroupElement] = {group.zero()}
    for e in sorted(elements):
        if e not in span:
            gens.append(e)
            span = _closure(group, span, [e])
    return tuple(gens)


def subgroup_generated(group: GroupSpec, generators) -> Subgroup:
    """Smallest subgroup containing the given generators.

    Closure under addition alone suffices: in a finite group every element's
    negation is one of its own multiples.
    """
    gens = tuple(group.element(g) for g in generators)
    elements = tuple(sorted(_closure(group, [group.zero()], gens)))
    if group.order % len(elements) != 0:
        raise AssertionError("closure size does not divide the group order")
    return Subgroup(group, gens, elements)


def grid_subgroup(group: GroupSpec, steps) -> Subgroup:
    """Product of per-axis cyclic subgroups a_1 Z_N1 x ... x a_d Z_Nd.

    A scalar step applies to every axis.  Each step must divide its axis
    modulus; step N_j collapses that axis to {0}.  Factor subgroups such as
    Z_N1 x {0} (the discrete stand-in for a continuous-direction subgroup)
    are the steps (1, N2) case.
    """
    if isinstance(steps, (int, np.integer)):
        steps = (int(steps),) * group.ndim
    steps = tuple(int(a) for a in steps)
    if len(steps) != group.ndim:
        raise GroupMismatchError(
            f"expected {group.ndim} steps, got {len(steps)}"
        )
    for a, n in zip(steps, group.moduli):
        if a < 1 or n % a != 0:
            raise GroupMismatchError(f"step {a} does not divide the axis modulus {n}")
    gens = []
    for j, a in enumerate(steps):
        if a < group.moduli[j]:
            coords = [0] * group.ndim
            coords[j] = a
            gens.append(group.element(coords))
    return subgroup_generated(group, gens)


def trivial_subgroup(group: GroupSpec) -> Subgroup:
    return subgroup_generated(group, [])


def full_subgroup(group: GroupSpec) -> Subgroup:
    gens = []
    for j in range(group.ndim):
        if group.moduli[j] > 1:
            coords = [0] * group.ndim
            coords[j] = 1
            gens.append(group.element(coords))
    return subgroup_generated(group, gens)


def annihilator(subgroup: Subgroup) -> Subgroup:
    """Frequencies whose character is 1 on the whole subgroup.

    Membership is decided in integer arithmetic: s annihilates H iff
    lcm | sum_j s_j h_j (lcm / N_j) for every generator h.  The result
    satisfies |H| * |annihilator(H)| = |G| and annihilator(annihilator(H)) = H.
    """
    group = subgroup.parent
    L = group._char_lcm
    gens = subgroup.generators if subgroup.generators else (group.zero(),)
    gcoords = np.array([g.coords for g in gens], dtype=np.int64)
    phases = (group._coords * group._char_weights) @ gcoords.T % L
    mask = np.all(phases == 0, axis=1)
    elements = tuple(
        GroupElement(tuple(int(v) for v in row)) for row in group._coords[mask]
    )
    gens_out = _reduced_generators(group, elements)
    return Subgroup(group, gens_out, elements)


@dataclass(frozen=True, eq=False)
class QuotientSpec:
    """Quotient G/H with one canonical representative per coset.

    Representatives are the lexicographic minima of their cosets, listed in
    sorted order; ``coset_map`` sends each canonical parent index to the
    position of its coset's representative.
    """

    parent: GroupSpec
    subgroup: Subgroup
    representatives: tuple[GroupElement, ...]
    coset_map: np.ndarray = field(repr=False)

    @property
    def size(self) -> int:
        return len(self.representatives)

    def coset_index(self, x) -> int:
        return int(self.coset_map[self.parent.index(x)])

    def coset_rep(self, x) -> GroupElement:
        return self.representatives[self.coset_index(x)]

    @cached_property
    def rep_coords(self) -> np.ndarray:
        arr = np.array([r.coords for r in self.representatives], dtype=np.int64)
        arr.setflags(write=False)
        return arr

    def __repr__(self) -> str:
        return f"QuotientSpec({self.parent!r} / order-{self.subgroup.order} subgroup, {self.size} cosets)"


def quotient(group: GroupSpec, subgroup: Subgroup) -> QuotientSpec:
    """Quotient of the group by a subgroup, with lex-min coset representatives."""
    if subgroup.parent != group:
        raise GroupMismatchError("subgroup belongs to a different group")
    coset_map = np.full(group.order, -1, dtype=np.intp)
    reps: list[GroupElement] = []
    sub_idx = subgroup.indices
    strides = np.array(group._strides, dtype=np.int64)
    mod = np.array(group.moduli, dtype=np.int64)
    sub_coords = subgroup.coords_array
    for i in range(group.order):
        if coset_map[i] >= 0:
            continue
        # scanning in canonical order, the first untouched element is its coset's minimum
        rep = group.element_at(i)
        pos = len(reps)
        reps.append(rep)
        coset = ((np.array(rep.coords, dtype=np.int64) + sub_coords) % mod) @ strides
        coset_map[coset] = pos
    coset_map.setflags(write=False)
    return QuotientSpec(group, subgroup, tuple(reps), coset_map)


def all_subgroups(group: GroupSpec, max_order: int = 4096) -> list[Subgroup]:
    """Every subgroup, by breadth-first closure over added elements.

    Deliberately brute force; guarded by the desk-scale bound on |G|.
    """
    if group.order > max_order:
        raise ValueError(
            f"group order {group.order} exceeds the enumeration bound {max_order}"
        )
    found: dict[frozenset[GroupElement], set[GroupElement]] = {}
    triv = {group.zero()}
    found[frozenset(triv)] = triv
    queue = [triv]
    all_elems = list(group.elements())
    while queue:
        current = queue.pop()
        for x in all_elems:
            if x in current:
                continue
            bigger = _closure(group, current, [x])
            key = frozenset(bigger)
            if key not in found:
                found[key] = bigger
                queue.append(bigger)
    out = []
    for elems in found.values():
        elements = tuple(sorted(elems))
        out.append(Subgroup(group, _reduced_generators(group, elements), elements))
    out.sort(key=lambda h: (h.order, h.elements))
    return out
