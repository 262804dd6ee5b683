"""End-to-end learning of y = Tr[f(H) rho] from Fourier features.

Generates a seeded dataset of random chains with the thermal target
f(x) = e^{-x}, extracts features with three backends, and compares the
fitted models on the held-out split.  An 8-qubit protocol keeps this demo
fast; `hamfourier reproduce --row exact12` runs the full reference row.

Run:  python demos/04_learning_pipeline.py
"""

import tempfile
from dataclasses import replace
from pathlib import Path

from hamfourier.pipeline import (
    ExperimentConfig,
    cmd_features,
    cmd_generate,
    cmd_train_eval,
)

config = ExperimentConfig(n=8, num=60, seed=5, k=8, c=3.0, f_kind="exp",
                          beta=1.0, method="ols")

variants = {
    "exact": config,
    "trotterized (no sampling)": replace(
        config, backend="overlap-shots", shots=0,
        schedule="1,1,1,1,1,2,2,2,3"),
    "overlap shots, N=10^4": replace(
        config, backend="overlap-shots", shots=10_000,
        schedule="1,1,1,1,1,2,2,2,3"),
}

with tempfile.TemporaryDirectory() as tmp:
    tmp = Path(tmp)
    dataset = tmp / "dataset.jsonl"
    cmd_generate(config, dataset)
    print(f"dataset: {config.num} chains at n={config.n}, "
          f"target f(x) = e^(-{config.beta}x), labels from the exact oracle\n")
    print(f"{'backend':>28} {'R2':>10} {'test MSE':>12}")
    for name, variant in variants.items():
        feats = tmp / "features.csv"
        cmd_features(variant, dataset, feats)
        metrics = cmd_train_eval(variant, feats, dataset,
                                 tmp / "model.json", tmp / "metrics.json")
        print(f"{name:>28} {metrics.r2:10.6f} {metrics.mse:12.3e}")

print("\nshot noise costs accuracy; the Trotterized noiseless run sits "
      "between it and the exact backend")
