"""Linear discriminant gesture classifier with a chi-square reject rule."""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np
from scipy.stats import chi2

from .errors import DegenerateTrainingSet
from .features import FeatureRequest, extract_batch, ids_for_set

DEFAULT_FEATURES = tuple(ids_for_set("rubine") + ids_for_set("hbf49"))
REJECT_QUANTILE = 0.99
RIDGE = 1e-6


@dataclass(frozen=True)
class ClassModel:
    label: str
    weights: np.ndarray
    bias: float
    mean: np.ndarray


@dataclass(frozen=True)
class ClassifierModel:
    """Discriminants live in the standardised space of ``features``.

    ``precision`` is the inverse of the ridged pooled covariance, used for
    the Mahalanobis reject distance.
    """

    features: tuple[str, ...]
    classes: tuple[ClassModel, ...]
    std_mean: np.ndarray
    std_sd: np.ndarray
    precision: np.ndarray
    reject_threshold: float

    @property
    def labels(self) -> list[str]:
        return [c.label for c in self.classes]

    def to_json(self) -> bytes:
        obj = {
            "features": list(self.features),
            "classes": [
                {"label": c.label, "weights": c.weights.tolist(), "bias": c.bias, "mean": c.mean.tolist()}
                for c in self.classes
            ],
            "standardizer": {"mean": self.std_mean.tolist(), "sd": self.std_sd.tolist()},
            "precision": self.precision.tolist(),
            "reject_threshold": self.reject_threshold,
        }
        return json.dumps(obj, separators=(",", ":")).encode("utf-8")

    @classmethod
    def from_json(cls, data: bytes) -> "ClassifierModel":
        obj = json.loads(data)
        classes = tuple(
            ClassModel(c["label"], np.array(c["weights"], dtype=float), float(c["bias"]), np.array(c["mean"], dtype=float))
            for c in obj["classes"]
        )
        return cls(
            features=tuple(obj["features"]),
            classes=classes,
            std_mean=np.array(obj["standardizer"]["mean"], dtype=float),
            std_sd=np.array(obj["standardizer"]["sd"], dtype=float),
            precision=np.array(obj["precision"], dtype=float),
            reject_threshold=float(obj["reject_threshold"]),
        )


@dataclass(frozen=True)
class Prediction:
    label: str
    margin: float
    rejected: bool
    distance: float


def _feature_matrix(gestures, ids, params=None) -> np.ndarray:
    """Rows per gesture, columns in the order of ``ids``."""
    vecs = extract_batch(gestures, FeatureRequest(ids=tuple(ids), params=params or {}))
    if not vecs:
        return np.zeros((0, len(ids)))
    cols = [vecs[0].ids.index(f) for f in ids]
    return np.array([v.values[cols] for v in vecs], dtype=float).reshape(len(vecs), len(ids))


def train(samples, feature_ids=DEFAULT_FEATURES, params=None) -> ClassifierModel:
    """Fit per-class linear discriminants on standardised features.

    Constant features are dropped; the pooled within-class covariance gets a
    ridge of ``1e-6 * trace / dim``. Priors are taken as equal.
    """
    samples = list(samples)
    feature_ids = tuple(dict.fromkeys(feature_ids))
    labels = sorted({lab for _, lab in samples})
    if len(labels) < 2:
        raise DegenerateTrainingSet("training needs at least two classes")
    y = np.array([lab for _, lab in samples])
    for lab in labels:
        if np.sum(y == lab) < 2:
            raise DegenerateTrainingSet(f"class {lab!r} has fewer than two samples")

    X = _feature_matrix([g for g, _ in samples], feature_ids, params)
    mean = X.mean(axis=0)
    sd = X.std(axis=0)
    keep = sd > 0
    if not keep.any():
        raise DegenerateTrainingSet("every feature is constant over the training set")
    ids = tuple(f for f, k in zip(feature_ids, keep) if k)
    mean, sd = mean[keep], sd[keep]
    Z = (X[:, keep] - mean) / sd

    means = np.array([Z[y == lab].mean(axis=0) for lab in labels])
    resid = Z - means[[labels.index(v) for v in y]]
    dim = Z.shape[1]
    cov = resid.T @ resid / max(1, Z.shape[0] - len(labels))
    cov += RIDGE * max(np.trace(cov), 1e-300) / dim * np.eye(dim)
    for i in range(len(labels)):
        for j in range(i + 1, len(labels)):
            if np.array_equal(means[i], means[j]):
                raise DegenerateTrainingSet(f"classes {labels[i]!r} and {labels[j]!r} are indistinguishable")
    try:
        precision = np.linalg.inv(cov)
    except np.linalg.LinAlgError as exc:
        raise DegenerateTrainingSet("pooled covariance is singular") from exc
    if not np.all(np.isfinite(precision)):
        raise DegenerateTrainingSet("pooled covariance is singular")

    classes = []
    for lab, mu in zip(labels, means):
        w = precision @ mu
        classes.append(ClassModel(lab, w, float(-0.5 * mu @ w), mu))
    return ClassifierModel(
        features=ids,
        classes=tuple(classes),
        std_mean=mean,
        std_sd=sd,
        precision=precision,
        reject_threshold=float(chi2.ppf(REJECT_QUANTILE, dim)),
    )


def _decide(model: ClassifierModel, z: np.ndarray) -> Prediction:
    W = np.array([c.weights for c in model.classes])
    b = np.array([c.bias for c in model.classes])
    scores = W @ z + b
    # classes are stored in sorted label order, so argmax breaks ties lexicographically
    best = int(np.argmax(scores))
    others = np.delete(scores, best)
    margin = float(scores[best] - others.max()) if others.size else float("inf")
    d = z - model.classes[best].mean
    dist = float(d @ model.precision @ d)
    return Prediction(model.classes[best].label, margin, bool(dist > model.reject_threshold), dist)


def standardize(model: ClassifierModel, X: np.ndarray) -> np.ndarray:
    return (X - model.std_mean) / model.std_sd


def predict(model: ClassifierModel, g, params=None) -> Prediction:
    return predict_batch(model, [g], params)[0]


def predict_batch(model: ClassifierModel, gestures, params=None) -> list[Prediction]:
    gestures = list(gestures)
    if not gestures:
        return []
    Z = standardize(model, _feature_matrix(gestures, model.features, params))
    return [_decide(model, z) for z in Z]
