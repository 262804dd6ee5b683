"""End-to-end experiment stages with file-based artifacts.

Stage chain: generate (dataset JSONL with exact labels) -> features
(CSV + provenance sidecar) -> train (model + metrics JSON).  reproduce
chains the stages with the 12-qubit reference protocols; scatter emits
paired exact/estimated values for external plotting.

All floats in emitted files carry 17 significant digits (bit-exact round
trip); every file write is atomic (temp + rename); all randomness flows
through counter-based substreams of the master seed, so equal seeds give
byte-identical artifacts.
"""

from __future__ import annotations

import json
import math
import os
import warnings
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from . import features as ft
from . import labels as lb
from .evolution import TrotterSchedule
from .hamiltonians import (
    CouplingSpec,
    EigenCache,
    coupling_from_record,
    coupling_record,
    sample_couplings,
)
from .regression import (
    DesignMatrix,
    Metrics,
    RegressionModel,
    evaluate,
    fit_constrained,
    fit_ols,
    fit_ridge,
)
from .rng import ROLE_COUPLINGS, ROLE_SPLIT, ROLE_VALID, substream
from .states import StateVector, basis_state, domain_wall, reference_eigenstate

SEED_ENV_VAR = "HAMFOURIER_SEED"

#: alpha grid scanned when method=ridge and no alpha is given
RIDGE_ALPHA_GRID = (1e-8, 1e-6, 1e-4, 1e-2, 1e-1, 1.0, 10.0)

#: reference 12-qubit Trotter step counts for l = 0..11
SCHEDULE_12Q = "1,1,1,1,1,2,2,2,2,3,3,3"

DEFAULT_SEED = 7


class UnknownRowError(ValueError):
    """Requested reproduction row is not a desk-scale target."""


@dataclass(frozen=True)
class ExperimentConfig:
    """Every knob of one experiment; serializes losslessly to/from JSON."""

    n: int = 12
    num: int = 55
    split: float = 0.8
    seed: int = DEFAULT_SEED
    k: int = 11
    c: float = 3.0
    backend: str = "exact"
    shots: int = 0
    schedule: str | None = None
    method: str = "ols"
    w_bound: float | None = None
    alpha: float | None = None
    f_kind: str = "exp"
    beta: float = 1.0
    coeffs: tuple[float, ...] | None = None
    state: str = "domain_wall"

    def __post_init__(self) -> None:
        if not 0.0 < self.split < 1.0:
            raise ValueError(f"split must lie in (0, 1), got {self.split}")
        if self.num < 0:
            raise ValueError(f"num must be >= 0, got {self.num}")
        if self.method not in ("ols", "ridge", "constrained"):
            raise ValueError(f"unknown method {self.method!r}")

    def function_spec(self) -> lb.FunctionSpec:
        if self.f_kind == "exp":
            return lb.exp_neg_beta(self.beta, self.c)
        if self.f_kind == "cos":
            return lb.cosine(self.beta, self.c)
        if self.f_kind == "sin":
            return lb.sine(self.beta, self.c)
        if self.f_kind == "fourier":
            if not self.coeffs:
                raise ValueError("f_kind 'fourier' needs coeffs")
            return lb.fourier_series(self.coeffs, self.c)
        if self.f_kind == "step":
            return lb.step(self.beta, self.c)
        raise ValueError(f"unknown f_kind {self.f_kind!r}")

    def feature_map(self) -> ft.FeatureMapConfig:
        schedule = (TrotterSchedule.parse(self.schedule)
                    if self.schedule else None)
        return ft.FeatureMapConfig(K=self.k, C=self.c, backend=self.backend,
                                   n_shot=self.shots, schedule=schedule,
                                   seed=self.seed)

    def psi(self) -> StateVector:
        if self.state == "domain_wall":
            return domain_wall(self.n)
        return basis_state(self.n, self.state)

    def state_descriptor(self):
        if self.state == "domain_wall":
            return "domain_wall"
        return {"basis": self.state}

    def to_dict(self) -> dict:
        return {
            "n": self.n, "num": self.num, "split": self.split,
            "seed": self.seed, "k": self.k, "c": self.c,
            "backend": self.backend, "shots": self.shots,
            "schedule": self.schedule, "method": self.method,
            "w_bound": self.w_bound, "alpha": self.alpha,
            "f_kind": self.f_kind, "beta": self.beta,
            "coeffs": list(self.coeffs) if self.coeffs is not None else None,
            "state": self.state,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ExperimentConfig":
        d = dict(d)
        if d.get("coeffs") is not None:
            d["coeffs"] = tuple(float(c) for c in d["coeffs"])
        for key in ("split", "c", "beta"):
            if key in d:
                d[key] = float(d[key])
        for key in ("w_bound", "alpha"):
            if d.get(key) is not None:
                d[key] = float(d[key])
        return cls(**d)


def state_from_descriptor(n: int, descriptor) -> StateVector:
    """Inverse of the symbolic state descriptor in dataset records."""
    if descriptor == "domain_wall":
        return domain_wall(n)
    if isinstance(descriptor, dict) and "basis" in descriptor:
        return basis_state(n, descriptor["basis"])
    raise ValueError(f"unknown state descriptor {descriptor!r}")


# --- 17-significant-digit serialization ---------------------------------

def format_float(x: float) -> str:
    if not math.isfinite(x):
        return "null"
    return format(x, ".17g")


def json_17g(obj) -> str:
    """json.dumps with floats at 17 significant digits."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, (str, int)):
        return json.dumps(obj)
    if isinstance(obj, float):
        return format_float(obj)
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(json_17g(v) for v in obj) + "]"
    if isinstance(obj, dict):
        items = (f"{json.dumps(str(k))}: {json_17g(v)}" for k, v in obj.items())
        return "{" + ", ".join(items) + "}"
    raise TypeError(f"cannot serialize {type(obj)}")


def atomic_write(path, text: str) -> None:
    path = Path(path)
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text(text)
    os.replace(tmp, path)


# --- dataset stage -------------------------------------------------------

def cmd_generate(config: ExperimentConfig, out_path) -> Path:
    """Write num JSONL records {"n", "couplings", "state", "y"} with exact
    labels, plus a run-config sidecar <out>.config.json recording f."""
    out_path = Path(out_path)
    fspec = config.function_spec()
    psi = config.psi()
    lines = []
    for i in range(config.num):
        rng = substream(config.seed, ROLE_COUPLINGS, i)
        spec = sample_couplings(config.n, rng)
        y = lb.label(spec, psi, fspec, EigenCache())
        record = coupling_record(spec)
        record["state"] = config.state_descriptor()
        record["y"] = y
        lines.append(json_17g(record))
    if not lines:
        warnings.warn("generated an empty dataset (num = 0)")
    atomic_write(out_path, "".join(line + "\n" for line in lines))
    atomic_write(sidecar_path(out_path), json_17g(config.to_dict()) + "\n")
    return out_path


def sidecar_path(path) -> Path:
    path = Path(path)
    return path.with_name(path.name + ".config.json")


def read_dataset(path) -> list[tuple[CouplingSpec, object, float]]:
    rows = []
    for line in Path(path).read_text().splitlines():
        if not line.strip():
            continue
        rec = json.loads(line)
        rows.append((coupling_from_record(rec), rec["state"], float(rec["y"])))
    return rows


# --- feature stage -------------------------------------------------------

def compute_features(config: ExperimentConfig, spec: CouplingSpec,
                     psi: StateVector, sample_index: int) -> np.ndarray:
    """Backend dispatch for one sample.

    exact without schedule -> spectral features; shots = 0 (any backend,
    or exact with a schedule) -> noiseless overlap reconstruction of the
    scheduled evolution; shot backends with shots >= 1 -> sampled.
    """
    cfg = config.feature_map()
    cache = EigenCache()
    if cfg.backend == "exact" and cfg.schedule is None:
        return ft.exact_features(spec, psi, cfg, cache)
    ref = reference_eigenstate(spec)
    if cfg.backend == "exact" or cfg.n_shot == 0:
        return ft.reconstructed_features(spec, psi, ref, cfg, cache)
    return ft.noisy_features(spec, psi, ref, cfg, sample_index, cache)


def cmd_features(config: ExperimentConfig, dataset_path, out_path) -> Path:
    """Write the feature CSV (header x0..x{2K}) and its provenance sidecar."""
    out_path = Path(out_path)
    rows = read_dataset(dataset_path)
    header = ",".join(f"x{j}" for j in range(2 * config.k + 1))
    lines = [header]
    for i, (spec, descriptor, _) in enumerate(rows):
        psi = state_from_descriptor(spec.n, descriptor)
        x = compute_features(config, spec, psi, i)
        lines.append(",".join(format_float(v) for v in x))
    atomic_write(out_path, "".join(line + "\n" for line in lines))
    cfg = config.feature_map()
    provenance = {
        "K": cfg.K, "C": cfg.C, "backend": cfg.backend, "n_shot": cfg.n_shot,
        "schedule": cfg.schedule.render() if cfg.schedule else None,
        "seed": cfg.seed,
    }
    atomic_write(sidecar_path(out_path), json_17g(provenance) + "\n")
    return out_path


def read_features(path) -> np.ndarray:
    return np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)


# --- training stage ------------------------------------------------------

def split_indices(num: int, split: float, seed: int) -> tuple[np.ndarray, np.ndarray]:
    """One seeded shuffle; the first ceil(split·num) indices train."""
    perm = substream(seed, ROLE_SPLIT).permutation(num)
    n_train = math.ceil(split * num)
    return perm[:n_train], perm[n_train:]


def _select_ridge_alpha(train: DesignMatrix, seed: int) -> float:
    """Pick alpha from the fixed grid by MSE on a held-out fifth of train."""
    perm = substream(seed, ROLE_VALID).permutation(train.n_samples)
    n_fit = max(1, math.ceil(0.8 * train.n_samples))
    fit_idx, val_idx = perm[:n_fit], perm[n_fit:]
    if len(val_idx) == 0:
        return RIDGE_ALPHA_GRID[0]
    fit = DesignMatrix(X=train.X[fit_idx], y=train.y[fit_idx])
    best_alpha, best_mse = None, np.inf
    for alpha in RIDGE_ALPHA_GRID:
        model = fit_ridge(fit, alpha)
        mse = float(np.mean((train.y[val_idx]
                             - model.predict(train.X[val_idx])) ** 2))
        if mse < best_mse:
            best_alpha, best_mse = alpha, mse
    return best_alpha


def fit_model(config: ExperimentConfig, train: DesignMatrix) -> RegressionModel:
    if config.method == "ols":
        return fit_ols(train)
    if config.method == "ridge":
        alpha = config.alpha
        if alpha is None:
            alpha = _select_ridge_alpha(train, config.seed)
        return fit_ridge(train, alpha)
    if config.w_bound is None:
        raise ValueError("method 'constrained' needs w_bound")
    return fit_constrained(train, config.w_bound)


def cmd_train_eval(config: ExperimentConfig, features_path, dataset_path,
                   model_out, metrics_out) -> Metrics:
    """Fit on the seeded split, evaluate on the held-out rows, write the
    model and metrics JSON files."""
    x = read_features(features_path)
    y = np.array([rec[2] for rec in read_dataset(dataset_path)])
    if x.shape[0] != len(y):
        raise ValueError(
            f"row mismatch: {x.shape[0]} feature rows vs {len(y)} labels"
        )
    train_idx, test_idx = split_indices(len(y), config.split, config.seed)
    train = DesignMatrix(X=x[train_idx], y=y[train_idx])
    test = DesignMatrix(X=x[test_idx], y=y[test_idx])
    model = fit_model(config, train)
    metrics = evaluate(model, test, n_train=len(train_idx))
    atomic_write(model_out, json_17g(model.to_dict()) + "\n")
    atomic_write(metrics_out, json_17g(metrics.to_dict()) + "\n")
    return metrics


# --- scatter stage -------------------------------------------------------

def cmd_scatter(exact_path, noisy_path, out_path) -> Path:
    """Pair two same-shape CSV files cell-by-cell into a long-format CSV
    (column, row, exact, estimated) for external plotting."""
    exact = read_features(exact_path)
    noisy = read_features(noisy_path)
    if exact.shape != noisy.shape:
        raise ValueError(
            f"shape mismatch: {exact.shape} vs {noisy.shape}"
        )
    header = Path(exact_path).read_text().splitlines()[0].split(",")
    lines = ["column,row,exact,estimated"]
    for i in range(exact.shape[0]):
        for j in range(exact.shape[1]):
            lines.append(f"{header[j]},{i},{format_float(exact[i, j])},"
                         f"{format_float(noisy[i, j])}")
    atomic_write(out_path, "".join(line + "\n" for line in lines))
    return Path(out_path)


def overlap_scatter(config: ExperimentConfig, dataset_path, out_path) -> Path:
    """Exact vs shot-estimated overlap probabilities for every sample, time
    index, and circuit (the four w's); rows at t = 0 show the degenerate
    peaks w_+ = 1 and w_±i = 1/2."""
    from .features import exact_overlaps, sample_overlaps
    from .rng import ROLE_SHOTS

    if config.shots < 1:
        raise ValueError("overlap scatter needs shots >= 1")
    rows = read_dataset(dataset_path)
    cfg = config.feature_map()
    lines = ["sample,l,circuit,exact,estimated"]
    for i, (spec, descriptor, _) in enumerate(rows):
        psi = state_from_descriptor(spec.n, descriptor)
        ref = reference_eigenstate(spec)
        cache = EigenCache()
        for l, t in enumerate(cfg.times()):
            w = exact_overlaps(spec, psi, ref, t, cache)
            est = sample_overlaps(w, config.shots,
                                  substream(config.seed, ROLE_SHOTS, i, l))
            for name in ("w_plus", "w_minus", "w_plus_i", "w_minus_i"):
                lines.append(
                    f"{i},{l},{name},{format_float(getattr(w, name))},"
                    f"{format_float(getattr(est, name))}"
                )
    atomic_write(out_path, "".join(line + "\n" for line in lines))
    return Path(out_path)


# --- reproduction rows ---------------------------------------------------

_BASE_12Q = ExperimentConfig(n=12, num=55, split=0.8, seed=DEFAULT_SEED,
                             k=11, c=3.0, f_kind="exp", beta=1.0,
                             state="domain_wall", method="ols")

#: each row carries the reference metrics its thresholds were set against
REPRODUCE_ROWS = {
    "exact12": {
        "config": replace(_BASE_12Q, backend="exact", shots=0, schedule=None),
        "reference": {"r2": 1.00, "mse": 1.47e-10},
        "criteria": {"mse_max": 1e-6, "r2_min": 0.999},
    },
    "trotter12": {
        "config": replace(_BASE_12Q, backend="overlap-shots", shots=0,
                          schedule=SCHEDULE_12Q),
        "reference": {"r2": 0.998, "mse": 1.66e-4},
        "criteria": {"mse_max": 1e-3, "r2_min": 0.99},
    },
    "shots12": {
        "config": replace(_BASE_12Q, backend="overlap-shots", shots=10_000,
                          schedule=SCHEDULE_12Q),
        "reference": {"r2": 0.977, "mse": 2.10e-3},
        "criteria": {"r2_min": 0.95},
    },
}

_LARGE_ROWS = {"exact32", "trotter32", "shots32", "mps32", "qpu32",
               "exact40", "trotter40", "shots40", "mps40", "qpu40"}


def cmd_reproduce(row: str, out_dir, seed: int | None = None,
                  echo=print) -> dict:
    """Run one reference protocol end to end by chaining the generate,
    features, and train stages, then check its acceptance thresholds."""
    if row in _LARGE_ROWS:
        raise UnknownRowError(
            f"row {row!r} needs a 32- or 40-qubit register; its half-filling "
            f"sector exceeds the dense-diagonalization cap, so it is not a "
            f"desk-scale target. Supported rows: {sorted(REPRODUCE_ROWS)}"
        )
    if row not in REPRODUCE_ROWS:
        raise UnknownRowError(
            f"unknown row {row!r}; supported rows: {sorted(REPRODUCE_ROWS)}"
        )
    entry = REPRODUCE_ROWS[row]
    config = entry["config"]
    if seed is not None:
        config = replace(config, seed=seed)
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    dataset = out_dir / f"{row}_dataset.jsonl"
    feats = out_dir / f"{row}_features.csv"
    cmd_generate(config, dataset)
    cmd_features(config, dataset, feats)
    metrics = cmd_train_eval(config, feats, dataset,
                             out_dir / f"{row}_model.json",
                             out_dir / f"{row}_metrics.json")
    checks = {}
    crit = entry["criteria"]
    if "mse_max" in crit:
        checks[f"mse <= {crit['mse_max']:g}"] = metrics.mse <= crit["mse_max"]
    if "r2_min" in crit:
        checks[f"r2 >= {crit['r2_min']:g}"] = metrics.r2 >= crit["r2_min"]
    ref = entry["reference"]
    echo(f"row {row}: R2 = {metrics.r2:.6f} (reference {ref['r2']}), "
         f"MSE = {metrics.mse:.3e} (reference {ref['mse']:.3g})")
    for name, ok in checks.items():
        echo(f"  [{'PASS' if ok else 'FAIL'}] {name}")
    return {
        "row": row,
        "metrics": metrics.to_dict(),
        "reference": ref,
        "checks": checks,
        "pass": all(checks.values()),
    }
