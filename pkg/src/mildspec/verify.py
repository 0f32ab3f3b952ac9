"""Self-check suites behind the ``verify`` command.

Each suite runs a battery of identity checks on one group and returns a
RunReport.  A check records a residual and the threshold it was held to;
informational checks carry a value but no threshold and never fail a run.
Reports serialize deterministically (wall time stays out of the JSON), so a
fixed seed yields byte-identical report files.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from . import reference
from .approx import (
    BUPU_SHAPES,
    SampleArray,
    make_bupu,
    quasi_interpolate,
    sampling_bound,
    semidiscrete_extension,
    tensor_extension,
)
from .errors import NotAFrame, NotPeriodic, SupportViolation
from .fourier import (
    UNITARY,
    comb_ft,
    dft,
    dft_quotient,
    duality_sampling_periodization,
    idft,
    mild_ft,
    pair,
    poisson_check,
    restriction,
    weil_map,
)
from .gabor import GaborSystem, TFLattice, s0_norm, s0prime_norm, stft
from .groups import GroupSpec, all_subgroups, annihilator, character, grid_subgroup, quotient
from .mild import (
    convergence_report,
    periodize_analysis,
    refining_comb_sequence,
    support,
)
from .signals import Signal, dirac, finite_gaussian, random_signal, translate

__all__ = [
    "Check",
    "RunReport",
    "verify_group",
    "verify_fourier",
    "verify_gabor",
    "verify_mild",
    "verify_approx",
    "verify_all",
]


@dataclass(frozen=True)
class Check:
    name: str
    residual: float
    threshold: float | None
    passed: bool

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        if self.threshold is None:
            return f"[INFO] {self.name}: value={self.residual:.6e}"
        return f"[{tag}] {self.name}: residual={self.residual:.6e} threshold={self.threshold:.1e}"


@dataclass
class RunReport:
    command: str
    parameters: dict
    checks: list[Check] = field(default_factory=list)
    wall_time_s: float = 0.0

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json_dict(self) -> dict:
        # wall time is excluded on purpose: reports must be reproducible
        return {
            "command": self.command,
            "parameters": self.parameters,
            "passed": self.passed,
            "checks": [
                {
                    "name": c.name,
                    "residual": c.residual,
                    "threshold": c.threshold,
                    "passed": c.passed,
                }
                for c in self.checks
            ],
        }


def _check(name: str, residual: float, threshold: float, tolerance: float | None) -> Check:
    if tolerance is not None:
        threshold = tolerance
    residual = float(residual)
    return Check(name, residual, threshold, residual <= threshold)


def _info(name: str, value: float) -> Check:
    return Check(name, float(value), None, True)


def _flag(name: str, ok: bool) -> Check:
    return Check(name, 0.0 if ok else 1.0, 0.0, ok)


def _rel(delta: np.ndarray, ref: np.ndarray) -> float:
    scale = float(np.max(np.abs(ref)))
    return float(np.max(np.abs(delta))) / (scale if scale > 0 else 1.0)


def _subgroups_for(G: GroupSpec) -> list:
    subs = all_subgroups(G)
    if len(subs) > 24:
        # keep runtime bounded on groups with rich subgroup lattices
        step = len(subs) // 24 + 1
        keep = subs[::step]
        if subs[-1] not in keep:
            keep.append(subs[-1])
        return keep
    return subs


def verify_group(G: GroupSpec, seed: int = 0, tolerance: float | None = None) -> list[Check]:
    rng = np.random.default_rng(seed)
    checks: list[Check] = []

    n = G.order
    picks = rng.integers(0, n, size=(min(200, n * n), 3))
    worst = 0.0
    for i, j, k in picks:
        x, y, s = G.element_at(int(i)), G.element_at(int(j)), G.element_at(int(k))
        lhs = character(G, s, G.add(x, y))
        rhs = character(G, s, x) * character(G, s, y)
        worst = max(worst, abs(lhs - rhs))
    checks.append(_check("character multiplicativity", worst, 1e-12, tolerance))

    zero = G.zero()
    cancel_ok = all(
        G.add(x, G.neg(x)) == zero
        for x in (G.element_at(int(i)) for i in rng.integers(0, n, size=min(64, n)))
    )
    checks.append(_flag("inverse element cancels", cancel_ok))

    subs = _subgroups_for(G)
    checks.append(_flag(
        "annihilator order duality",
        all(len(H.elements) * len(annihilator(H).elements) == n for H in subs),
    ))
    checks.append(_flag(
        "biduality",
        all(annihilator(annihilator(H)) == H for H in subs),
    ))
    ok = True
    for H in subs:
        Q = quotient(G, H)
        if Q.size * len(H.elements) != n:
            ok = False
        counts = np.bincount(Q.coset_map, minlength=Q.size)
        if not np.all(counts == len(H.elements)):
            ok = False
    checks.append(_flag("quotient partitions the group", ok))
    return checks


def verify_fourier(G: GroupSpec, seed: int = 0, tolerance: float | None = None) -> list[Check]:
    rng = np.random.default_rng(seed)
    checks: list[Check] = []
    f = random_signal(G, rng)
    g = random_signal(G, rng)

    fhat = dft(f)
    checks.append(_check(
        "transform matches defining sum",
        _rel(fhat.values - reference.naive_dft(f).values, fhat.values),
        1e-12, tolerance,
    ))
    checks.append(_check(
        "inverse transform roundtrip",
        _rel(idft(fhat).values - f.values, f.values),
        1e-12, tolerance,
    ))
    fu = dft(f, convention=UNITARY)
    checks.append(_check(
        "unitary roundtrip",
        _rel(idft(fu, convention=UNITARY).values - f.values, f.values),
        1e-12, tolerance,
    ))
    lhs = float(np.sum(np.abs(fhat.values) ** 2))
    rhs = G.order * float(np.sum(np.abs(f.values) ** 2))
    checks.append(_check("energy identity", abs(lhs - rhs) / rhs, 1e-12, tolerance))
    double = dft(dft(f))
    reflected = G.order * f.values[G.negation_permutation()]
    checks.append(_check(
        "double transform reflects",
        _rel(double.values - reflected, reflected),
        1e-12, tolerance,
    ))
    lhs_p = pair(mild_ft(f), g)
    rhs_p = pair(f, dft(g))
    checks.append(_check(
        "transform moves across the pairing",
        abs(lhs_p - rhs_p) / (1.0 + abs(rhs_p)),
        1e-12, tolerance,
    ))

    subs = _subgroups_for(G)
    worst_poisson = 0.0
    worst_duality = 0.0
    worst_weil = 0.0
    comb_ok = True
    for H in subs:
        for _ in range(3):
            h = random_signal(G, rng)
            worst_poisson = max(worst_poisson, poisson_check(h, H).residual)
        worst_duality = max(worst_duality, duality_sampling_periodization(f, H).residual)
        # periodizing along the annihilator then transforming on the quotient
        # must match sampling the transform on H
        Hp = annihilator(H)
        sampled = restriction(fhat, H)
        per = weil_map(f, Hp)
        trans = dft_quotient(per, onto=H)
        worst_weil = max(worst_weil, float(np.max(np.abs(trans.values - sampled.values))))
        try:
            comb = comb_ft(H)
            if comb.lattice != Hp:
                comb_ok = False
            if float(np.max(np.abs(comb.weights - len(H.elements)))) > 1e-9:
                comb_ok = False
        except SupportViolation:
            comb_ok = False
    scale = 1.0 + float(np.max(np.abs(f.values)))
    checks.append(_check("periodization-summation identity", worst_poisson, 1e-10, tolerance))
    checks.append(_check(
        "sampling-periodization duality", worst_duality / scale, 1e-10, tolerance))
    checks.append(_check(
        "periodize-then-transform equals sample-transform", worst_weil / scale, 1e-10, tolerance))
    checks.append(_flag("comb transforms to dual comb", comb_ok))

    g0 = finite_gaussian(G)
    g0hat = dft(g0)
    sqrtn = float(np.prod([m ** 0.5 for m in G.moduli]))
    checks.append(_check(
        "gaussian fixed by unitary transform",
        float(np.max(np.abs(g0hat.values - sqrtn * g0.values))),
        1e-8 * sqrtn, tolerance,
    ))
    return checks


def verify_gabor(
    G: GroupSpec,
    a,
    b,
    seed: int = 0,
    tolerance: float | None = None,
) -> list[Check]:
    rng = np.random.default_rng(seed)
    checks: list[Check] = []
    g0 = finite_gaussian(G)
    lattice = TFLattice(G, a, b)
    checks.append(_info("lattice redundancy", lattice.redundancy))

    f = random_signal(G, rng)
    h = random_signal(G, rng)
    V = stft(f, g0)
    if G.order <= 128:
        direct = reference.stft_direct(f, g0)
        checks.append(_check(
            "short-time transform matches defining sum",
            _rel(V.values - direct, V.values), 1e-11, tolerance))
    energy = float(np.sum(np.abs(V.values) ** 2))
    target = G.order * g0.norm2 ** 2 * f.norm2 ** 2
    checks.append(_check(
        "time-frequency energy identity", abs(energy - target) / target, 1e-10, tolerance))

    normalized_hat = Signal(G, dft(f).values / G.order ** 0.5)
    Vf = stft(normalized_hat, g0)
    neg = G.negation_permutation()
    rotated = np.abs(V.values[neg, :]).T
    checks.append(_check(
        "transform rotates the time-frequency plane",
        float(np.max(np.abs(np.abs(Vf.values) - rotated))),
        1e-9 * (1.0 + float(np.max(np.abs(V.values)))), tolerance))

    system = GaborSystem(g0, lattice)
    if lattice.redundancy < 1.0 + 1e-12:
        try:
            system.canonical_dual
            checks.append(_flag("undersampled lattice rejected", False))
        except NotAFrame:
            checks.append(_flag("undersampled lattice rejected", True))
        return checks

    A, B = system.frame_bounds
    checks.append(_flag("frame bounds positive", A > 0))
    checks.append(_info("frame condition number", B / A if A > 0 else float("inf")))
    if A <= 0:
        return checks

    gd = system.canonical_dual
    Sgd = system.apply_frame(gd)
    checks.append(_check(
        "canonical dual inverts the frame operator",
        float(np.max(np.abs(Sgd.values - g0.values))) / g0.norm2,
        1e-9, tolerance))
    worst = 0.0
    for _ in range(10):
        x = random_signal(G, rng)
        c = system.analyze(x, window=gd)
        back = system.synthesize(c)
        worst = max(worst, _rel(back.values - x.values, x.values))
    checks.append(_check("expansion reconstructs", worst, 1e-9, tolerance))

    if G.order * lattice.size <= 1 << 19:
        c = system.analyze(h, window=gd)
        M = reference.synthesis_matrix(g0, lattice)
        lsq, *_ = np.linalg.lstsq(M, h.values, rcond=None)
        checks.append(_check(
            "canonical coefficients have minimal norm",
            float(np.max(np.abs(c.ravel() - lsq))) / (1.0 + float(np.max(np.abs(lsq)))),
            1e-8, tolerance))

    checks.append(_info("dual window spread (l1/l2)", gd.norm1 / gd.norm2))
    return checks


def verify_mild(
    G: GroupSpec,
    a,
    b,
    seed: int = 0,
    tolerance: float | None = None,
) -> list[Check]:
    rng = np.random.default_rng(seed)
    checks: list[Check] = []
    g0 = finite_gaussian(G)

    zero_sig = Signal(G, np.zeros(G.order, dtype=np.complex128))
    checks.append(_flag(
        "distance vanishes only at coincidence",
        s0prime_norm(zero_sig) == 0.0 and s0prime_norm(dirac(G, G.zero())) > 1e-6,
    ))

    lattice = TFLattice(G, a, b)
    system = GaborSystem(g0, lattice)
    seq = refining_comb_sequence(G)
    report = convergence_report(seq, system)
    for metric in ("pair", "stft", "coeff"):
        vals = getattr(report, f"d_{metric}")
        increments = [vals[i + 1] - vals[i] for i in range(len(vals) - 1)]
        thr = 1e-10 * (1.0 + vals[0])
        checks.append(_check(
            f"comb refinement monotone ({metric})",
            max(increments) if increments else 0.0, thr, tolerance))
        checks.append(_check(
            f"comb refinement collapses ({metric})",
            vals[-1] / (vals[0] if vals[0] > 0 else 1.0), 1e-3, tolerance))
    for key, value in report.equivalence_ratios.items():
        checks.append(_info(f"metric ratio {key}", value))

    # periodic signals: spectrum confined to the annihilator comb
    N0 = G.moduli[0]
    p = next((q for q in (2, 3, 5, 7) if N0 % q == 0 and q < N0), None)
    if p is not None:
        period = (p,) + tuple(G.moduli[1:])
        H = grid_subgroup(G, period)
        base = random_signal(G, rng)
        per = Signal(G, _periodic_from(base, H))
        rep = periodize_analysis(per, period)
        checks.append(_check("periodic spectrum leakage", rep.leakage, 1e-10, tolerance))
        checks.append(_check(
            "comb weights match one-period transform",
            rep.weight_residual, 1e-10, tolerance))
        try:
            periodize_analysis(random_signal(G, rng), period)
            checks.append(_flag("aperiodic input rejected", False))
        except NotPeriodic:
            checks.append(_flag("aperiodic input rejected", True))

    subs = _subgroups_for(G)
    ok = True
    for H in subs:
        comb_hat = dft(Signal(G, _comb_values(G, H)))
        if support(comb_hat) != frozenset(annihilator(H).elements):
            ok = False
    checks.append(_flag("comb spectrum sits on the annihilator", ok))

    checks.append(_info("uniform bound over the sequence", seq.uniform_bound))
    return checks


def _comb_values(G: GroupSpec, H) -> np.ndarray:
    values = np.zeros(G.order, dtype=np.complex128)
    values[H.indices] = 1.0
    return values


def _periodic_from(base: Signal, H) -> np.ndarray:
    out = np.zeros(base.group.order, dtype=np.complex128)
    for t in H.elements:
        out += translate(base, t).values
    return out


def verify_approx(
    G: GroupSpec,
    step,
    seed: int = 0,
    tolerance: float | None = None,
) -> list[Check]:
    rng = np.random.default_rng(seed)
    checks: list[Check] = []
    lattice = grid_subgroup(G, step)

    for shape in BUPU_SHAPES:
        bupu = make_bupu(G, lattice, shape=shape)
        checks.append(_check(
            f"bump family sums to one ({shape})", bupu.partition_residual, 1e-12, tolerance))

    f = random_signal(G, rng)
    samples = SampleArray(lattice, restriction(f, lattice).values)
    tri = make_bupu(G, lattice, shape="triangle")
    ext_direct = semidiscrete_extension(samples, tri.mother, method="direct")
    ext_fft = semidiscrete_extension(samples, tri.mother, method="fft")
    checks.append(_check(
        "translate-sum extension matches convolution form",
        _rel(ext_direct.values - ext_fft.values, ext_direct.values), 1e-12, tolerance))
    back = restriction(ext_direct, lattice)
    checks.append(_flag(
        "extension interpolates the samples",
        bool(np.array_equal(back.values, samples.samples)),
    ))

    g0 = finite_gaussian(G)
    errs = []
    current = lattice
    for _ in range(3):
        errs.append(quasi_interpolate(g0, current, shape="triangle").sup_error)
        steps = current.axis_steps
        if steps is None or all(s % 2 for s in steps):
            break
        current = grid_subgroup(G, tuple(max(1, s // 2) if s % 2 == 0 else s for s in steps))
    increments = [errs[i + 1] - errs[i] for i in range(len(errs) - 1)]
    checks.append(_check(
        "recovery error shrinks as the lattice refines",
        max(increments) if increments else 0.0, 0.0, tolerance))

    if G.ndim == 1:
        other = GroupSpec((G.moduli[0] // 2 if G.moduli[0] % 2 == 0 else G.moduli[0],))
        u = random_signal(G, rng)
        v = random_signal(other, rng)
        tensor = tensor_extension(u, v)
        lhs = dft(tensor).values
        rhs = np.outer(dft(u).values, dft(v).values).ravel()
        checks.append(_check(
            "product signal transform factorizes",
            _rel(lhs - rhs, rhs), 1e-10, tolerance))
        s_t = s0_norm(tensor)
        s_u = s0_norm(u) * s0_norm(v)
        checks.append(_check(
            "product signal norm factorizes", abs(s_t - s_u) / s_u, 1e-10, tolerance))

    bound = sampling_bound(f, lattice)
    checks.append(_info("sampled-l1 to concentration-norm ratio", bound.ratio))
    return checks


def verify_all(
    G: GroupSpec,
    a,
    b,
    step,
    seed: int = 0,
    tolerance: float | None = None,
) -> list[Check]:
    checks: list[Check] = []
    for prefix, found in (
        ("group", verify_group(G, seed, tolerance)),
        ("fourier", verify_fourier(G, seed, tolerance)),
        ("gabor", verify_gabor(G, a, b, seed, tolerance)),
        ("mild", verify_mild(G, a, b, seed, tolerance)),
        ("approx", verify_approx(G, step, seed, tolerance)),
    ):
        for c in found:
            checks.append(Check(f"{prefix}: {c.name}", c.residual, c.threshold, c.passed))
    return checks


def run_suite(
    suite: str,
    G: GroupSpec,
    a,
    b,
    step,
    seed: int = 0,
    tolerance: float | None = None,
) -> RunReport:
    t0 = time.perf_counter()
    if suite == "group":
        checks = verify_group(G, seed, tolerance)
    elif suite == "fourier":
        checks = verify_fourier(G, seed, tolerance)
    elif suite == "gabor":
        checks = verify_gabor(G, a, b, seed, tolerance)
    elif suite == "mild":
        checks = verify_mild(G, a, b, seed, tolerance)
    elif suite == "approx":
        checks = verify_approx(G, step, seed, tolerance)
    elif suite == "all":
        checks = verify_all(G, a, b, step, seed, tolerance)
    else:
        raise ValueError(f"unknown suite {suite!r}")
    params = {
        "suite": suite,
        "group": G.to_json(),
        "seed": seed,
        "a": [int(x) for x in np.atleast_1d(a)] if a is not None else None,
        "b": [int(x) for x in np.atleast_1d(b)] if b is not None else None,
        "lattice": [int(x) for x in np.atleast_1d(step)] if step is not None else None,
        "tolerance": tolerance,
    }
    return RunReport(f"verify {suite}", params, checks, time.perf_counter() - t0)
