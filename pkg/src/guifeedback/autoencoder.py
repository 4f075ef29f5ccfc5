"""Stacked autoencoder for layout embeddings: 13500 -> 2048 -> 256 -> 64 and back.

Trained end-to-end with plain backprop, mean-per-element squared error and
Adadelta (rho=0.95, eps=1e-6).  Hidden layers are ReLU; the 64-d embedding
layer and the final reconstruction layer are linear.  Training is
bit-reproducible for a fixed (inputs, config) pair on one platform.
"""

from __future__ import annotations

import json
import math
import struct
import time
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .raster import RASTER_SIZE, flatten_raster

ENCODER_DIMS = (RASTER_SIZE, 2048, 256, 64)
EMBEDDING_DIM = ENCODER_DIMS[-1]

WEIGHTS_MAGIC = b"GCAE"
WEIGHTS_VERSION = 1


class NumericError(Exception):
    """Non-finite value produced during a forward pass."""


class TrainingError(Exception):
    """Training diverged; carries the epoch index."""

    def __init__(self, message: str, epoch: int):
        super().__init__(message)
        self.epoch = epoch


class WeightsFormatError(Exception):
    """Weights container is not a readable GCAE file."""


@dataclass
class TrainConfig:
    max_epochs: int
    batch_size: int = 512
    validation_fraction: float = 0.1
    seed: int = 0
    rho: float = 0.95
    eps: float = 1e-6

    def __post_init__(self):
        if self.max_epochs < 1:
            raise ValueError(f"max_epochs must be >= 1, got {self.max_epochs}")
        if self.batch_size < 1:
            raise ValueError(f"batch_size must be >= 1, got {self.batch_size}")
        if not 0.0 < self.validation_fraction < 1.0:
            raise ValueError(f"validation_fraction must be in (0, 1), got {self.validation_fraction}")


@dataclass
class AutoencoderWeights:
    """Encoder + mirrored decoder parameters, with training metadata.

    ``weights[i]`` has shape (fan_in, fan_out); ``biases[i]`` has length
    fan_out.  The first half of the layers is the encoder.
    """
    weights: list[np.ndarray]
    biases: list[np.ndarray]
    seed: int = 0
    epochs_trained: int = 0
    final_train_loss: float = 0.0
    final_val_loss: float = 0.0

    @property
    def encoder_dims(self) -> tuple[int, ...]:
        half = len(self.weights) // 2
        return tuple([self.weights[0].shape[0]] + [w.shape[1] for w in self.weights[:half]])

    @property
    def embedding_dim(self) -> int:
        return self.encoder_dims[-1]

    def validate_finite(self) -> None:
        for i, (w, b) in enumerate(zip(self.weights, self.biases)):
            if not (np.all(np.isfinite(w)) and np.all(np.isfinite(b))):
                raise NumericError(f"non-finite parameters in layer {i + 1}")


@dataclass
class EpochStats:
    epoch: int
    train_mse: float
    val_mse: float
    seconds: float

    def to_json_line(self) -> str:
        return json.dumps({"epoch": self.epoch, "train_mse": self.train_mse,
                           "val_mse": self.val_mse, "seconds": round(self.seconds, 3)})


@dataclass
class TrainReport:
    epochs: list[EpochStats] = field(default_factory=list)

    def to_jsonl(self) -> str:
        return "\n".join(e.to_json_line() for e in self.epochs)


def init_weights(encoder_dims: tuple[int, ...] = ENCODER_DIMS, seed: int = 0,
                 dtype=np.float32, rng: Optional[np.random.Generator] = None) -> AutoencoderWeights:
    """Glorot-uniform initialization of the encoder and its mirrored decoder."""
    if rng is None:
        rng = np.random.default_rng(seed)
    dims = list(encoder_dims) + list(reversed(encoder_dims))[1:]
    weights, biases = [], []
    for fan_in, fan_out in zip(dims, dims[1:]):
        limit = math.sqrt(6.0 / (fan_in + fan_out))
        weights.append(rng.uniform(-limit, limit, size=(fan_in, fan_out)).astype(dtype))
        biases.append(np.zeros(fan_out, dtype=dtype))
    return AutoencoderWeights(weights=weights, biases=biases, seed=seed)


def _forward_batch(x: np.ndarray, model: AutoencoderWeights,
                   check_finite: bool = False) -> tuple[list[np.ndarray], list[np.ndarray]]:
    """Returns (pre-activations z per layer, activations a per layer).

    a[0] is the input; ReLU everywhere except the embedding layer (end of the
    encoder) and the final layer, which stay linear.
    """
    n_layers = len(model.weights)
    half = n_layers // 2
    zs: list[np.ndarray] = []
    activations = [x]
    a = x
    for i, (w, b) in enumerate(zip(model.weights, model.biases)):
        z = a @ w + b
        if check_finite and not np.all(np.isfinite(z)):
            raise NumericError(f"non-finite activations in layer {i + 1}")
        zs.append(z)
        linear = (i + 1 == half) or (i + 1 == n_layers)
        a = z if linear else np.maximum(z, 0.0)
        activations.append(a)
    return zs, activations


def forward(raster: np.ndarray, model: AutoencoderWeights) -> tuple[np.ndarray, np.ndarray]:
    """Embedding and reconstruction for one raster (or pre-flattened vector)."""
    vec = flatten_raster(raster) if raster.ndim == 3 else np.asarray(raster, dtype=np.float32)
    x = vec.reshape(1, -1)
    _, activations = _forward_batch(x, model, check_finite=True)
    half = len(model.weights) // 2
    return activations[half].reshape(-1), activations[-1].reshape(-1)


def embed(raster: np.ndarray, model: AutoencoderWeights) -> np.ndarray:
    return forward(raster, model)[0]


def embed_many(rasters: list, model: AutoencoderWeights) -> np.ndarray:
    """Embeddings for many rasters in one batched forward pass, shape (n, d)."""
    x = np.stack([flatten_raster(np.asarray(r)) for r in rasters])
    _, activations = _forward_batch(x, model, check_finite=True)
    return activations[len(model.weights) // 2]


def mse_loss(x: np.ndarray, model: AutoencoderWeights) -> float:
    _, activations = _forward_batch(x, model)
    diff = activations[-1] - x
    return float(np.mean(diff * diff))


def loss_and_grads(x: np.ndarray, model: AutoencoderWeights
                   ) -> tuple[float, list[np.ndarray], list[np.ndarray]]:
    """Mean-per-element MSE and its analytic gradients for one minibatch."""
    n_layers = len(model.weights)
    half = n_layers // 2
    zs, activations = _forward_batch(x, model)
    diff = activations[-1] - x
    loss = float(np.mean(diff * diff))

    grads_w = [None] * n_layers
    grads_b = [None] * n_layers
    delta = (2.0 / diff.size) * diff
    for i in range(n_layers - 1, -1, -1):
        grads_w[i] = activations[i].T @ delta
        grads_b[i] = delta.sum(axis=0)
        if i > 0:
            delta = delta @ model.weights[i].T
            linear = (i == half) or (i == n_layers)
            if not linear:
                delta = delta * (zs[i - 1] > 0)
    return loss, grads_w, grads_b


class _Adadelta:
    """Per-parameter Adadelta state (accumulated squared grads and updates).

    The update math runs through preallocated scratch buffers: the production
    net has ~56M parameters, so every avoided temporary saves a quarter
    gigabyte of memory traffic per step.
    """

    def __init__(self, model: AutoencoderWeights, rho: float, eps: float):
        self.rho = rho
        self.eps = eps
        params = list(model.weights) + list(model.biases)
        self.eg = [np.zeros_like(p) for p in params]
        self.ed = [np.zeros_like(p) for p in params]
        self.t1 = [np.empty_like(p) for p in params]
        self.t2 = [np.empty_like(p) for p in params]

    def step(self, model: AutoencoderWeights, grads_w, grads_b) -> None:
        params = list(model.weights) + list(model.biases)
        grads = list(grads_w) + list(grads_b)
        rho, eps = self.rho, self.eps
        for p, g, eg, ed, t1, t2 in zip(params, grads, self.eg, self.ed, self.t1, self.t2):
            np.multiply(eg, rho, out=eg)
            np.multiply(g, g, out=t1)
            np.multiply(t1, 1.0 - rho, out=t1)
            np.add(eg, t1, out=eg)
            # step = sqrt(ed + eps) / sqrt(eg + eps) * g
            np.add(eg, eps, out=t1)
            np.sqrt(t1, out=t1)
            np.add(ed, eps, out=t2)
            np.sqrt(t2, out=t2)
            np.divide(t2, t1, out=t1)
            np.multiply(t1, g, out=t1)
            np.multiply(ed, rho, out=ed)
            np.multiply(t1, t1, out=t2)
            np.multiply(t2, 1.0 - rho, out=t2)
            np.add(ed, t2, out=ed)
            np.subtract(p, t1, out=p)


def train_autoencoder(rasters: list, config: TrainConfig,
                      encoder_dims: tuple[int, ...] = ENCODER_DIMS,
                      on_epoch: Optional[Callable[[EpochStats], None]] = None
                      ) -> tuple[AutoencoderWeights, TrainReport]:
    """End-to-end training over coverage rasters.

    The data is split train/validation by a seeded shuffle, the train set is
    reshuffled every epoch and stepped in minibatches.  Per-epoch losses land
    in the TrainReport (and in ``on_epoch`` as they happen).
    """
    if len(rasters) < 10:
        raise ValueError(f"need at least 10 rasters to train, got {len(rasters)}")
    x_all = np.stack([flatten_raster(np.asarray(r)) for r in rasters])
    if x_all.shape[1] != encoder_dims[0]:
        raise ValueError(f"raster size {x_all.shape[1]} does not match input dim {encoder_dims[0]}")

    rng = np.random.default_rng(config.seed)
    model = init_weights(encoder_dims, seed=config.seed, dtype=np.float32, rng=rng)

    n = len(x_all)
    n_val = max(1, int(round(n * config.validation_fraction)))
    perm = rng.permutation(n)
    train_x = x_all[perm[n_val:]]
    val_x = x_all[perm[:n_val]]

    optimizer = _Adadelta(model, rho=config.rho, eps=config.eps)
    report = TrainReport()
    for epoch in range(1, config.max_epochs + 1):
        t0 = time.perf_counter()
        order = rng.permutation(len(train_x))
        loss_sum = 0.0
        for start in range(0, len(order), config.batch_size):
            batch = train_x[order[start:start + config.batch_size]]
            loss, grads_w, grads_b = loss_and_grads(batch, model)
            if not math.isfinite(loss):
                raise TrainingError(f"loss diverged at epoch {epoch}", epoch)
            optimizer.step(model, grads_w, grads_b)
            loss_sum += loss * len(batch)
        train_mse = loss_sum / len(train_x)
        val_mse = mse_loss(val_x, model)
        if not math.isfinite(val_mse):
            raise TrainingError(f"validation loss diverged at epoch {epoch}", epoch)
        stats = EpochStats(epoch=epoch, train_mse=train_mse, val_mse=val_mse,
                           seconds=time.perf_counter() - t0)
        report.epochs.append(stats)
        if on_epoch is not None:
            on_epoch(stats)

    model.epochs_trained = config.max_epochs
    model.final_train_loss = report.epochs[-1].train_mse
    model.final_val_loss = report.epochs[-1].val_mse
    return model, report


# ---------------------------------------------------------------------------
# GCAE weights container
# ---------------------------------------------------------------------------

def save_weights(model: AutoencoderWeights) -> bytes:
    """Serialize to the versioned GCAE container.

    Layout: magic, version u32, layer count u32, then per layer (rows u32,
    cols u32, row-major float32 LE weights, float32 LE bias), then a trailing
    JSON metadata block (u32 length + bytes).
    """
    parts = [WEIGHTS_MAGIC, struct.pack("<I", WEIGHTS_VERSION),
             struct.pack("<I", len(model.weights))]
    for w, b in zip(model.weights, model.biases):
        rows, cols = w.shape
        parts.append(struct.pack("<II", rows, cols))
        parts.append(np.ascontiguousarray(w, dtype="<f4").tobytes())
        parts.append(np.ascontiguousarray(b, dtype="<f4").tobytes())
    meta = json.dumps({
        "seed": model.seed,
        "epochs_trained": model.epochs_trained,
        "final_train_loss": model.final_train_loss,
        "final_val_loss": model.final_val_loss,
    }).encode("utf-8")
    parts.append(struct.pack("<I", len(meta)))
    parts.append(meta)
    return b"".join(parts)


def load_weights(data: bytes) -> AutoencoderWeights:
    if data[:4] != WEIGHTS_MAGIC:
        raise WeightsFormatError("not a GCAE weights file (bad magic)")
    try:
        (version,) = struct.unpack_from("<I", data, 4)
        if version != WEIGHTS_VERSION:
            raise WeightsFormatError(f"unsupported GCAE version {version}")
        (layer_count,) = struct.unpack_from("<I", data, 8)
        offset = 12
        weights, biases = [], []
        for _ in range(layer_count):
            rows, cols = struct.unpack_from("<II", data, offset)
            offset += 8
            w = np.frombuffer(data, dtype="<f4", count=rows * cols, offset=offset)
            offset += rows * cols * 4
            b = np.frombuffer(data, dtype="<f4", count=cols, offset=offset)
            offset += cols * 4
            weights.append(w.reshape(rows, cols).copy())
            biases.append(b.copy())
        model = AutoencoderWeights(weights=weights, biases=biases)
        if offset + 4 <= len(data):
            (meta_len,) = struct.unpack_from("<I", data, offset)
            meta = json.loads(data[offset + 4:offset + 4 + meta_len].decode("utf-8"))
            model.seed = int(meta.get("seed", 0))
            model.epochs_trained = int(meta.get("epochs_trained", 0))
            model.final_train_loss = float(meta.get("final_train_loss", 0.0))
            model.final_val_loss = float(meta.get("final_val_loss", 0.0))
        return model
    except (struct.error, ValueError) as exc:
        raise WeightsFormatError(f"truncated or corrupt GCAE file: {exc}") from exc


def save_weights_file(model: AutoencoderWeights, path) -> None:
    with open(path, "wb") as f:
        f.write(save_weights(model))


def load_weights_file(path) -> AutoencoderWeights:
    with open(path, "rb") as f:
        return load_weights(f.read())
