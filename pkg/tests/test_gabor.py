import numpy as np
import pytest
from numpy.testing import assert_allclose

from mildspec import (
    CoefficientArray,
    GaborSystem,
    GroupMismatchError,
    GroupSpec,
    NotAFrame,
    Signal,
    TFLattice,
    canonical_dual,
    dft,
    dirac,
    finite_gaussian,
    frame_bounds,
    frame_operator,
    gabor_coefficients,
    gabor_synthesis,
    random_signal,
    s0_norm,
    s0prime_norm,
    stft,
    tf_shift,
    translate,
)
from mildspec import reference


class TestSTFT:
    def test_diagonal_value_is_energy(self, rng):
        G = GroupSpec((16,))
        g = random_signal(G, rng)
        V = stft(g, g)
        assert abs(V.values[0, 0] - g.norm2**2) < 1e-10

    def test_dirac_rows_follow_window(self):
        G = GroupSpec((8,))
        g = finite_gaussian(G)
        V = stft(dirac(G, G.zero()), g)
        # each time row has constant modulus g(-t) = g(t)
        for ti in range(8):
            assert_allclose(np.abs(V.values[ti]), g.values[ti].real, atol=1e-12)

    def test_shift_covariance_in_modulus(self, rng):
        G = GroupSpec((12,))
        g = finite_gaussian(G)
        f = random_signal(G, rng)
        u, w = 3, 5
        shifted = tf_shift(f, G.element(u), G.element(w))
        lhs = np.abs(stft(shifted, g).values)
        rhs = np.roll(np.roll(np.abs(stft(f, g).values), u, axis=0), w, axis=1)
        assert np.max(np.abs(lhs - rhs)) < 1e-10

    def test_matches_direct_oracle(self, rng):
        G = GroupSpec((12,))
        f, g = random_signal(G, rng), random_signal(G, rng)
        fast = stft(f, g).values
        slow = reference.stft_direct(f, g)
        assert np.max(np.abs(fast - slow)) < 1e-11

    def test_energy_identity(self, rng):
        G = GroupSpec((24,))
        f, g = random_signal(G, rng), random_signal(G, rng)
        V = stft(f, g)
        lhs = np.sum(np.abs(V.values) ** 2)
        rhs = G.order * (g.norm2**2) * (f.norm2**2)
        assert abs(lhs - rhs) / rhs < 1e-10

    def test_transform_rotates_grid(self, rng):
        G = GroupSpec((20,))
        g0 = finite_gaussian(G)
        f = random_signal(G, rng)
        V = np.abs(stft(f, g0).values)
        fhat = dft(f) * (1.0 / np.sqrt(G.order))
        Vhat = np.abs(stft(fhat, g0).values)
        neg = G.negation_permutation()
        rotated = np.abs(V[neg, :]).T
        assert np.max(np.abs(Vhat - rotated)) < 1e-9

    def test_group_mismatch(self, rng):
        f = random_signal(GroupSpec((8,)), rng)
        g = finite_gaussian(GroupSpec((12,)))
        with pytest.raises(GroupMismatchError):
            stft(f, g)


class TestConcentrationNorms:
    def test_zero_signal(self):
        G = GroupSpec((16,))
        assert s0_norm(Signal(G, np.zeros(16))) == 0.0

    def test_homogeneous(self, rng):
        G = GroupSpec((16,))
        f = random_signal(G, rng)
        assert abs(s0_norm(f * (-2.5)) - 2.5 * s0_norm(f)) < 1e-10 * s0_norm(f)

    def test_triangle_inequality(self, rng):
        G = GroupSpec((16,))
        f, g = random_signal(G, rng), random_signal(G, rng)
        assert s0_norm(f + g) <= s0_norm(f) + s0_norm(g) + 1e-10

    def test_direct_double_sum(self, rng):
        G = GroupSpec((16,))
        f = random_signal(G, rng)
        g0 = finite_gaussian(G)
        direct = np.sum(np.abs(reference.stft_direct(f, g0))) / g0.norm2**2
        assert abs(s0_norm(f) - direct) / direct < 1e-10

    def test_dual_norm_of_dirac_is_window_peak(self):
        G = GroupSpec((16,))
        peak = finite_gaussian(G).values[0].real
        for xi in range(0, 16, 3):
            got = s0prime_norm(dirac(G, G.element(xi)))
            assert abs(got - peak) < 1e-12

    def test_dual_norm_translation_invariant(self, rng):
        G = GroupSpec((16,))
        f = random_signal(G, rng)
        moved = translate(f, G.element(7))
        assert abs(s0prime_norm(moved) - s0prime_norm(f)) < 1e-10

    def test_dirac_pairs_stay_separated(self):
        # max-STFT of a dirac difference dominates the window gap, so point
        # masses at distinct sites never collapse in the dual norm
        G = GroupSpec((16,))
        g0 = finite_gaussian(G)
        for xi in range(16):
            for yi in range(xi + 1, 16):
                x, y = G.element(xi), G.element(yi)
                sigma = dirac(G, x) - dirac(G, y)
                gap = g0.values[0].real - g0.values[G.index(G.sub(x, y))].real
                assert s0prime_norm(sigma) >= gap - 1e-12


class TestFrameOperator:
    def test_dense_lattice_dirac_window_is_scaled_identity(self, rng):
        G = GroupSpec((4,))
        system = GaborSystem(dirac(G, G.zero()), TFLattice(G, 1, 1))
        f = random_signal(G, rng)
        assert_allclose(frame_operator(system, f).values, 4.0 * f.values, atol=1e-12)

    def test_commutes_with_lattice_shift(self, rng):
        G = GroupSpec((16,))
        system = GaborSystem(finite_gaussian(G), TFLattice(G, 2, 2))
        f = random_signal(G, rng)
        lam_t, lam_s = G.element(2), G.element(2)
        lhs = frame_operator(system, tf_shift(f, lam_t, lam_s)).values
        rhs = tf_shift(frame_operator(system, f), lam_t, lam_s).values
        assert np.max(np.abs(lhs - rhs)) < 1e-10

    def test_positive(self, rng):
        G = GroupSpec((12,))
        system = GaborSystem(finite_gaussian(G), TFLattice(G, 3, 2))
        for _ in range(5):
            f = random_signal(G, rng)
            q = np.vdot(f.values, system.apply_frame(f).values)
            assert abs(q.imag) < 1e-10 * abs(q)
            assert q.real > -1e-12

    def test_matches_atom_sum_oracle(self, rng):
        G = GroupSpec((12,))
        system = GaborSystem(finite_gaussian(G), TFLattice(G, 2, 2))
        f = random_signal(G, rng)
        fast = system.apply_frame(f).values
        slow = reference.frame_apply_direct(system, f).values
        assert np.max(np.abs(fast - slow)) < 1e-10


class TestFrameBounds:
    def test_dense_lattice_is_tight(self):
        G = GroupSpec((8,))
        g = finite_gaussian(G)
        g = g * (1.0 / g.norm2)
        system = GaborSystem(g, TFLattice(G, 1, 1))
        A, B = frame_bounds(system)
        assert abs(A - 8.0) < 1e-10
        assert abs(B - 8.0) < 1e-10

    def test_ordered(self):
        G = GroupSpec((16,))
        A, B = GaborSystem(finite_gaussian(G), TFLattice(G, 4, 2)).frame_bounds
        assert 0 < A <= B

    def test_oversampling_improves_conditioning(self):
        G = GroupSpec((16,))
        g = finite_gaussian(G)
        twice = GaborSystem(g, TFLattice(G, 4, 2)).frame_bounds
        quad = GaborSystem(g, TFLattice(G, 2, 2)).frame_bounds
        assert quad[0] > twice[0]
        assert quad[1] / quad[0] < twice[1] / twice[0]

    def test_gaussian_critical_density_degenerates(self):
        # the finite Gaussian at exactly one atom per sample fails to span,
        # mirroring the classical critical-density obstruction
        G = GroupSpec((16,))
        system = GaborSystem(finite_gaussian(G), TFLattice(G, 4, 4))
        assert not system.is_frame

    def test_is_frame_flags(self):
        G = GroupSpec((16,))
        g = finite_gaussian(G)
        assert GaborSystem(g, TFLattice(G, 2, 2)).is_frame
        assert not GaborSystem(g, TFLattice(G, 8, 8)).is_frame


class TestCanonicalDual:
    def test_dense_lattice_dual_is_rescaled_window(self):
        G = GroupSpec((8,))
        g = finite_gaussian(G)
        g = g * (1.0 / g.norm2)
        dual = canonical_dual(GaborSystem(g, TFLattice(G, 1, 1)))
        assert_allclose(dual.values, g.values / 8.0, atol=1e-12)

    def test_frame_operator_sends_dual_to_window(self):
        G = GroupSpec((16,))
        system = GaborSystem(finite_gaussian(G), TFLattice(G, 2, 2))
        dual = system.canonical_dual
        assert np.max(np.abs(system.apply_frame(dual).values - system.window.values)) < 1e-9

    def test_undersampled_raises(self):
        G = GroupSpec((16,))
        system = GaborSystem(finite_gaussian(G), TFLattice(G, 8, 8))
        assert system.lattice.redundancy < 1
        with pytest.raises(NotAFrame) as info:
            _ = system.canonical_dual
        assert abs(info.value.bound_estimate) < 1e-10

    def test_dual_reconstruction(self, rng):
        G = GroupSpec((16,))
        system = GaborSystem(finite_gaussian(G), TFLattice(G, 2, 2))
        for _ in range(5):
            f = random_signal(G, rng)
            coeffs = system.analyze(f, window=system.canonical_dual)
            back = system.synthesize(coeffs)
            assert np.max(np.abs(back.values - f.values)) / f.norm2 < 1e-9


class TestCoefficients:
    def test_atom_roundtrip(self):
        G = GroupSpec((16,))
        system = GaborSystem(finite_gaussian(G), TFLattice(G, 2, 2))
        sigma = tf_shift(system.window, G.element(4), G.element(6))
        c = gabor_coefficients(sigma, system)
        back = gabor_synthesis(c, system)
        assert np.max(np.abs(back.values - sigma.values)) < 1e-9

    def test_coefficients_follow_lattice_order(self, rng):
        G = GroupSpec((12,))
        system = GaborSystem(finite_gaussian(G), TFLattice(G, 3, 4))
        f = random_signal(G, rng)
        dual = system.canonical_dual
        flat = gabor_coefficients(f, system).ravel()
        for k, (t, s) in enumerate(system.lattice.points()):
            expect = np.vdot(tf_shift(dual, t, s).values, f.values)
            assert abs(flat[k] - expect) < 1e-10

    def test_minimal_l2_norm(self, rng):
        G = GroupSpec((12,))
        system = GaborSystem(finite_gaussian(G), TFLattice(G, 2, 2))
        sigma = random_signal(G, rng)
        c = gabor_coefficients(sigma, system).ravel()
        D = reference.synthesis_matrix(system.window, system.lattice)
        assert np.max(np.abs(D @ c - sigma.values)) < 1e-9
        c_min, *_ = np.linalg.lstsq(D, sigma.values, rcond=None)
        assert np.max(np.abs(c - c_min)) < 1e-8
        # adding any synthesis null vector can only grow the l2 norm
        _, sv, Vh = np.linalg.svd(D)
        null = Vh[len(sv):].conj().T
        for j in range(null.shape[1]):
            h = null[:, j]
            assert np.linalg.norm(c) <= np.linalg.norm(c + h) + 1e-10

    def test_coefficient_array_validates_size(self):
        G = GroupSpec((8,))
        lat = TFLattice(G, 2, 2)
        with pytest.raises(ValueError):
            CoefficientArray(lat, np.zeros(5))


class TestSynthesis:
    def test_unit_coefficient_reproduces_window(self):
        G = GroupSpec((8,))
        system = GaborSystem(finite_gaussian(G), TFLattice(G, 2, 2))
        arr = np.zeros((4, 4), dtype=complex)
        arr[0, 0] = 1.0
        out = gabor_synthesis(CoefficientArray(system.lattice, arr), system)
        assert_allclose(out.values, system.window.values, atol=1e-12)

    def test_linear(self, rng):
        G = GroupSpec((8,))
        system = GaborSystem(finite_gaussian(G), TFLattice(G, 2, 2))
        a = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
        b = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
        lhs = gabor_synthesis(CoefficientArray(system.lattice, a + b), system).values
        rhs = (
            gabor_synthesis(CoefficientArray(system.lattice, a), system).values
            + gabor_synthesis(CoefficientArray(system.lattice, b), system).values
        )
        assert np.max(np.abs(lhs - rhs)) < 1e-12

    def test_reconstruction_corpus(self, rng):
        G = GroupSpec((24,))
        system = GaborSystem(finite_gaussian(G), TFLattice(G, 2, 3))
        for _ in range(20):
            f = random_signal(G, rng)
            back = gabor_synthesis(gabor_coefficients(f, system), system)
            assert np.max(np.abs(back.values - f.values)) / f.norm2 < 1e-9


class TestLattice:
    def test_rejects_non_divisor_steps(self):
        G = GroupSpec((12,))
        with pytest.raises(GroupMismatchError):
            TFLattice(G, 5, 2)
        with pytest.raises(GroupMismatchError):
            TFLattice(G, 2, (3, 3))

    def test_size_and_redundancy(self):
        G = GroupSpec((4, 6))
        lat = TFLattice(G, (2, 3), (2, 2))
        assert lat.size == (2 * 2) * (2 * 3)
        assert lat.redundancy == pytest.approx(lat.size / 24)

    def test_points_order_and_count(self):
        G = GroupSpec((8,))
        lat = TFLattice(G, 4, 4)
        pts = list(lat.points())
        assert len(pts) == lat.size
        assert pts[0][0].coords == (0,) and pts[0][1].coords == (0,)
        # frequency runs fastest
        assert pts[1][0].coords == (0,) and pts[1][1].coords == (4,)
