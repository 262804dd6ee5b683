"""Random 1-D Heisenberg chains with open boundaries.

H = sum_{m=0}^{n-2} J_m (X_m X_{m+1} + Y_m Y_{m+1} + Z_m Z_{m+1})

Bit convention (global, used by every module): qubit 0 is the most
significant bit of a basis index, so |b0 b1 ... b_{n-1}> lives at index
int("b0 b1 ... b_{n-1}", 2).  H conserves total magnetization (bitstring
popcount), which lets us diagonalize one sector block at a time instead of
the full 2^n matrix.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

#: Largest sector block we will densely diagonalize (covers n=16 at half
#: filling).  Exceeding it raises ResourceLimitError instead of silently
#: densifying.
SECTOR_DIM_CAP = 20_000


class DimensionError(ValueError):
    """Qubit count / vector length is invalid for the requested operation."""


class ResourceLimitError(RuntimeError):
    """A sector block exceeds the configured dense-diagonalization cap."""


@dataclass(frozen=True)
class CouplingSpec:
    """A Heisenberg chain given by its bond couplings J_0..J_{n-2}.

    Sampled specs are normalized to sum_m |J_m| = 1; unnormalized specs are
    legal (spectral_bound still applies) but the dataset only contains
    normalized ones.
    """

    n: int
    couplings: tuple[float, ...]

    def __post_init__(self) -> None:
        if self.n < 2:
            raise DimensionError(f"need at least 2 qubits, got n={self.n}")
        if len(self.couplings) != self.n - 1:
            raise DimensionError(
                f"expected {self.n - 1} couplings for n={self.n}, "
                f"got {len(self.couplings)}"
            )
        if not all(math.isfinite(j) for j in self.couplings):
            raise ValueError("couplings must be finite")


@dataclass(frozen=True)
class SectorBasis:
    """Canonically ordered basis of one magnetization sector.

    states holds the basis bitstrings as integers, strictly ascending; the
    position of integer s is its row/column in the sector block.
    """

    n: int
    magnetization: int
    states: np.ndarray = field(repr=False)

    @property
    def dim(self) -> int:
        return len(self.states)

    def index_map(self) -> dict[int, int]:
        return {int(s): i for i, s in enumerate(self.states)}


@dataclass(frozen=True)
class SpectralCache:
    """Eigenvalues of one sector block and the weights p_l = |<λ_l|ψ>|² of a
    fixed state ψ on its eigenvectors.  Enough to evaluate any spectral
    function of H against ψ without touching the eigenvectors again."""

    magnetization: int
    eigenvalues: np.ndarray = field(repr=False)
    probabilities: np.ndarray = field(repr=False)


def sample_couplings(n: int, rng: np.random.Generator) -> CouplingSpec:
    """Draw each J_m uniformly from [-1, 1] and normalize to sum |J_m| = 1.

    An all-zero draw (possible in principle with a quantized source) is
    rejected and redrawn so the normalization never divides by zero.
    """
    if n < 2:
        raise DimensionError(f"need at least 2 qubits, got n={n}")
    while True:
        raw = rng.uniform(-1.0, 1.0, size=n - 1)
        total = float(np.sum(np.abs(raw)))
        if total > 0.0:
            break
    return CouplingSpec(n=n, couplings=tuple(float(j) for j in raw / total))


def spectral_bound(spec: CouplingSpec) -> float:
    """Triangle-inequality bound on ||H||: each bond term has norm 3, so
    ||H|| <= 3 sum_m |J_m| (= 3 exactly for normalized specs)."""
    return 3.0 * float(np.sum(np.abs(spec.couplings)))


def _bit_positions(n: int, m: int) -> tuple[int, int]:
    # qubit m <-> bit position n-1-m (qubit 0 is the MSB)
    return n - 1 - m, n - 2 - m


def apply_hamiltonian(spec: CouplingSpec, v) -> np.ndarray:
    """Matrix-free H·v over the full 2^n space.

    Per bond: Z_m Z_{m+1} contributes ±J_m on the diagonal (+ for equal bits)
    and X_m X_{m+1} + Y_m Y_{m+1} swaps |01> <-> |10> with amplitude 2 J_m.
    Components never leave their magnetization sector.
    """
    vec = np.asarray(getattr(v, "amplitudes", v))
    n = spec.n
    if vec.shape != (2**n,):
        raise DimensionError(f"state has shape {vec.shape}, expected ({2**n},)")
    idx = np.arange(2**n)
    out = np.zeros(2**n, dtype=complex)
    for m, j in enumerate(spec.couplings):
        p_hi, p_lo = _bit_positions(n, m)
        differ = ((idx >> p_hi) ^ (idx >> p_lo)) & 1 == 1
        sign = np.where(differ, -1.0, 1.0)
        out += j * sign * vec
        flip = (1 << p_hi) | (1 << p_lo)
        out[idx[differ]] += 2.0 * j * vec[idx[differ] ^ flip]
    return out


def sector_states(n: int, magnetization: int) -> SectorBasis:
    """Ascending integer basis of the popcount-k sector."""
    if not 0 <= magnetization <= n:
        raise DimensionError(
            f"magnetization {magnetization} outside 0..{n}"
        )
    ints = sorted(
        sum(1 << (n - 1 - q) for q in ones)
        for ones in combinations(range(n), magnetization)
    )
    return SectorBasis(n=n, magnetization=magnetization,
                       states=np.array(ints, dtype=np.int64))


def sector_matrix(spec: CouplingSpec, basis: SectorBasis) -> np.ndarray:
    """Dense real-symmetric block of H on one magnetization sector."""
    states = basis.states
    d = basis.dim
    mat = np.zeros((d, d))
    diag = np.zeros(d)
    for m, j in enumerate(spec.couplings):
        p_hi, p_lo = _bit_positions(basis.n, m)
        differ = ((states >> p_hi) ^ (states >> p_lo)) & 1 == 1
        diag += j * np.where(differ, -1.0, 1.0)
        cols = np.nonzero(differ)[0]
        flipped = states[cols] ^ ((1 << p_hi) | (1 << p_lo))
        rows = np.searchsorted(states, flipped)
        mat[rows, cols] += 2.0 * j
    mat[np.diag_indices(d)] += diag
    return mat


def sector_eigensystem(
    spec: CouplingSpec,
    magnetization: int,
    dim_cap: int = SECTOR_DIM_CAP,
) -> tuple[np.ndarray, np.ndarray, SectorBasis]:
    """Eigendecomposition (ascending eigenvalues, orthonormal columns) of the
    sector block, together with its basis."""
    dim = math.comb(spec.n, magnetization)
    if dim > dim_cap:
        raise ResourceLimitError(
            f"sector (n={spec.n}, magnetization={magnetization}) has dimension "
            f"{dim} > cap {dim_cap}"
        )
    basis = sector_states(spec.n, magnetization)
    evals, evecs = np.linalg.eigh(sector_matrix(spec, basis))
    return evals, evecs, basis


class EigenCache:
    """Memo of sector eigensystems, keyed by (spec, magnetization).

    Write-once per key and idempotent, so concurrent readers racing on the
    same key would simply recompute identical entries.
    """

    def __init__(self, dim_cap: int = SECTOR_DIM_CAP):
        self.dim_cap = dim_cap
        self._store: dict[tuple[CouplingSpec, int], tuple] = {}

    def sector(self, spec: CouplingSpec, magnetization: int):
        key = (spec, magnetization)
        if key not in self._store:
            self._store[key] = sector_eigensystem(spec, magnetization,
                                                  self.dim_cap)
        return self._store[key]


def occupied_magnetizations(n: int, vec: np.ndarray) -> list[int]:
    """Sectors carrying exactly nonzero amplitude (exact-zero test, so basis
    and superposition states never trigger spurious large-sector work)."""
    idx = np.nonzero(vec)[0]
    pops = {int(i).bit_count() for i in idx}
    return sorted(pops)


def spectral_weights(
    spec: CouplingSpec,
    v,
    cache: EigenCache | None = None,
) -> list[SpectralCache]:
    """Per-sector (eigenvalues, p_l) records for a state.

    For a normalized state the probabilities across all returned records sum
    to 1; a single record covers single-sector states like the domain wall.
    """
    vec = np.asarray(getattr(v, "amplitudes", v))
    n = spec.n
    if vec.shape != (2**n,):
        raise DimensionError(f"state has shape {vec.shape}, expected ({2**n},)")
    cache = cache if cache is not None else EigenCache()
    records = []
    for k in occupied_magnetizations(n, vec):
        evals, evecs, basis = cache.sector(spec, k)
        comp = vec[basis.states]
        amps = evecs.T @ comp  # <λ_l|ψ>, eigenvectors are real
        records.append(SpectralCache(
            magnetization=k,
            eigenvalues=evals,
            probabilities=np.abs(amps) ** 2,
        ))
    return records


# --- JSONL interchange -------------------------------------------------

def coupling_record(spec: CouplingSpec) -> dict:
    """JSON-ready record; floats are emitted with 17 significant digits by
    the writers, which round-trips every IEEE double bit-exactly."""
    return {"n": spec.n, "couplings": list(spec.couplings)}


def coupling_from_record(record: dict) -> CouplingSpec:
    return CouplingSpec(n=int(record["n"]),
                        couplings=tuple(float(j) for j in record["couplings"]))


def coupling_from_json(line: str) -> CouplingSpec:
    return coupling_from_record(json.loads(line))
