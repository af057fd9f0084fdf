"""Model-selection and training-hyperparameter rules for failure predictors.

The rules are fixed lookup trees/tables fitted on a grid of synthetic
datasets (sizes 200..50000, failure percentages 5..50, maximum sequence
lengths 20..1000).  Thresholds compare with ``<=`` exactly as printed.
"""

from __future__ import annotations

import enum
from dataclasses import asdict, dataclass

from .errors import MissingMlsl

__all__ = [
    "ModelConfig",
    "HyperParams",
    "Advice",
    "recommend_configuration",
    "expected_f1",
    "hyperparameters",
    "snap_size",
    "advise",
]

SIZE_LEVELS = (200, 500, 1000, 5000, 10000, 50000)

_BATCH_DEFAULT = dict(zip(SIZE_LEVELS, (10, 15, 20, 30, 150, 300)))
_BATCH_LOW_FAILURE = dict(zip(SIZE_LEVELS, (10, 15, 30, 60, 300, 600)))
_BATCH_LONG = 5
_EPOCHS_DEFAULT = 20
_EPOCHS_LONG = dict(zip(SIZE_LEVELS, (20, 20, 10, 10, 5, 5)))


class ModelConfig(str, enum.Enum):
    CNN_L = "CNN+L"
    CNN_B = "CNN+B"
    BiLSTM_B = "BiLSTM+B"

    def __str__(self):
        return self.value


# (size <= 350 and failure <= 7.5, size <= 350 and failure > 7.5, size > 350)
_CNN_LEAVES = {
    ModelConfig.CNN_L: (0.516, 0.906, 0.985),
    ModelConfig.CNN_B: (0.35, 0.816, 0.977),
}


@dataclass(frozen=True)
class HyperParams:
    batch_size: int
    epochs: int


def _check(size, failure_pct):
    if size < 1:
        raise ValueError(f"dataset size must be >= 1, got {size}")
    if not 0 < failure_pct <= 100:
        raise ValueError(f"failure percentage must be in (0, 100], got {failure_pct}")


def recommend_configuration(dataset_size, failure_pct) -> ModelConfig:
    _check(dataset_size, failure_pct)
    if dataset_size > 3000:
        return ModelConfig.CNN_L
    if failure_pct <= 15:
        return ModelConfig.BiLSTM_B
    if dataset_size <= 350:
        return ModelConfig.CNN_B
    return ModelConfig.CNN_L


def expected_f1(config, dataset_size, failure_pct, mlsl=None) -> float:
    """Average F1 at the regression-tree leaf the inputs fall into."""
    _check(dataset_size, failure_pct)
    config = ModelConfig(config)
    if config is ModelConfig.BiLSTM_B:
        if mlsl is None:
            raise MissingMlsl("BiLSTM+B estimate depends on the maximum sequence length")
        if mlsl > 750:
            return 0.664
        if dataset_size > 350:
            return 0.945
        return 0.355 if failure_pct <= 15 else 0.945
    small_rare, small, large = _CNN_LEAVES[config]
    if dataset_size > 350:
        return large
    return small_rare if failure_pct <= 7.5 else small


def snap_size(dataset_size) -> int:
    """Nearest tabulated dataset size; ties go to the smaller level."""
    return min(SIZE_LEVELS, key=lambda level: (abs(level - dataset_size), level))


def hyperparameters(dataset_size, failure_pct, mlsl) -> HyperParams:
    _check(dataset_size, failure_pct)
    level = snap_size(dataset_size)
    if mlsl >= 500:
        return HyperParams(_BATCH_LONG, _EPOCHS_LONG[level])
    batch = _BATCH_LOW_FAILURE[level] if failure_pct <= 30 else _BATCH_DEFAULT[level]
    return HyperParams(batch, _EPOCHS_DEFAULT)


@dataclass(frozen=True)
class Advice:
    config: ModelConfig
    expected_f1: float
    batch_size: int
    epochs: int
    extrapolated: bool = False

    def to_json(self):
        d = asdict(self)
        d["config"] = self.config.value
        return d


def advise(dataset_size, failure_pct, mlsl) -> Advice:
    """Configuration, its expected F1 and training hyperparameters in one call.

    ``extrapolated`` flags inputs outside the studied characteristic ranges.
    """
    config = recommend_configuration(dataset_size, failure_pct)
    hp = hyperparameters(dataset_size, failure_pct, mlsl)
    extrapolated = not (
        SIZE_LEVELS[0] <= dataset_size <= SIZE_LEVELS[-1] and 5 <= failure_pct <= 50 and 20 <= mlsl <= 1000
    )
    return Advice(config, expected_f1(config, dataset_size, failure_pct, mlsl), hp.batch_size, hp.epochs, extrapolated)
