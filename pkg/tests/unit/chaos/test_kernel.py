"""Tests for second-chaos kernels."""

import numpy as np
import pytest

from vgstein.chaos import (
    Kernel2,
    KernelError,
    SpectralKernel,
    as_kernel,
    exact_symgamma_kernel,
    random_kernel,
)


# ── Kernel2 ───────────────────────────────────────────────────────────────────

class TestKernel2:
    def test_rejects_non_square(self):
        with pytest.raises(KernelError):
            Kernel2([[1.0, 2.0]])
        with pytest.raises(KernelError):
            Kernel2(np.zeros((0, 0)))

    def test_rejects_asymmetric(self):
        with pytest.raises(KernelError, match="not symmetric"):
            Kernel2([[1.0, 2.0], [0.0, 1.0]])

    def test_rejects_non_finite(self):
        with pytest.raises(KernelError):
            Kernel2([[np.inf, 0.0], [0.0, 1.0]])

    def test_entries_read_only(self):
        k = Kernel2.diag([1.0, 2.0])
        with pytest.raises(ValueError):
            k.entries[0, 0] = 5.0

    def test_powers_and_traces(self, random_kernel):
        a = random_kernel.entries
        assert random_kernel.power(3) == pytest.approx(a @ a @ a)
        assert random_kernel.power(8) == pytest.approx(np.linalg.matrix_power(a, 8))
        assert random_kernel.trace_power(2) == pytest.approx(float(np.sum(a * a)))
        with pytest.raises(KernelError):
            random_kernel.power(-1)

    def test_algebra(self):
        a = Kernel2.diag([1.0, 2.0])
        b = Kernel2.diag([0.5, 0.5])
        assert (a + b) == Kernel2.diag([1.5, 2.5])
        assert a.scaled(2.0) == Kernel2.diag([2.0, 4.0])
        with pytest.raises(KernelError, match="dimension mismatch"):
            a + Kernel2.diag([1.0])

    def test_spectral(self, random_kernel):
        spec = random_kernel.spectral()
        assert spec.trace_power(4) == pytest.approx(random_kernel.trace_power(4))

    def test_csv_round_trip(self, tmp_path, random_kernel):
        path = random_kernel.to_csv(tmp_path / "k.csv")
        assert Kernel2.from_csv(path) == random_kernel

    def test_csv_missing(self, tmp_path):
        with pytest.raises(KernelError, match="not found"):
            Kernel2.from_csv(tmp_path / "nope.csv")


# ── Constructeurs ─────────────────────────────────────────────────────────────

class TestConstructors:
    def test_exact_symgamma_spectrum(self):
        k = exact_symgamma_kernel(3, 2.0)
        assert k.eigenvalues == (0.25, 0.25, 0.25, -0.25, -0.25, -0.25)
        assert k.dim == 6

    def test_exact_symgamma_validation(self):
        with pytest.raises(KernelError):
            exact_symgamma_kernel(0, 1.0)
        with pytest.raises(KernelError):
            exact_symgamma_kernel(1, 0.0)

    def test_spectral_validation(self):
        with pytest.raises(KernelError):
            SpectralKernel(())
        with pytest.raises(KernelError):
            SpectralKernel((1.0, np.nan))

    def test_random_kernel_reproducible(self):
        assert random_kernel(5, 3) == random_kernel(5, 3)
        assert random_kernel(5, 3) != random_kernel(5, 4)
        assert random_kernel(5, 3, scale=2.0) == random_kernel(5, 3).scaled(2.0)

    def test_as_kernel(self):
        k = Kernel2.diag([1.0, -1.0])
        assert as_kernel(k) is k
        assert as_kernel(SpectralKernel((1.0, -1.0))) == k
        assert as_kernel(np.diag([1.0, -1.0])) == k
