"""Shared oracles: dense constructions that are independent of the
matrix-free / sector-block code paths they validate."""

import numpy as np
import pytest

from hamfourier.hamiltonians import CouplingSpec, sector_states
from hamfourier.states import StateVector

PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)
IDENTITY = np.eye(2, dtype=complex)


def kron_chain(ops):
    out = ops[0]
    for op in ops[1:]:
        out = np.kron(out, op)
    return out


def dense_hamiltonian(spec: CouplingSpec) -> np.ndarray:
    """Kronecker-product construction of the full 2^n x 2^n matrix.

    Qubit 0 is the leftmost factor, matching the package's MSB convention.
    """
    n = spec.n
    h = np.zeros((2**n, 2**n), dtype=complex)
    for m, j in enumerate(spec.couplings):
        for pauli in (PAULI_X, PAULI_Y, PAULI_Z):
            ops = [IDENTITY] * n
            ops[m] = pauli
            ops[m + 1] = pauli
            h += j * kron_chain(ops)
    return h


def random_spec(n: int, rng: np.random.Generator) -> CouplingSpec:
    """Normalized coupling spec drawn directly (not via sample_couplings),
    so oracle tests do not depend on the sampler under test."""
    raw = rng.uniform(-1.0, 1.0, size=n - 1)
    while np.sum(np.abs(raw)) == 0:
        raw = rng.uniform(-1.0, 1.0, size=n - 1)
    raw /= np.sum(np.abs(raw))
    return CouplingSpec(n=n, couplings=tuple(raw))


def random_sector_state(n: int, magnetization: int,
                        rng: np.random.Generator) -> StateVector:
    """Random complex state supported on one magnetization sector."""
    basis = sector_states(n, magnetization)
    comp = rng.normal(size=basis.dim) + 1j * rng.normal(size=basis.dim)
    comp /= np.linalg.norm(comp)
    amps = np.zeros(2**n, dtype=complex)
    amps[basis.states] = comp
    return StateVector(n=n, amplitudes=amps)


def random_dense_state(n: int, rng: np.random.Generator) -> StateVector:
    amps = rng.normal(size=2**n) + 1j * rng.normal(size=2**n)
    amps /= np.linalg.norm(amps)
    return StateVector(n=n, amplitudes=amps)


@pytest.fixture
def rng():
    return np.random.default_rng(20260811)
