"""Ordered weighted averaging operators and linguistic-quantifier weights.

Sort convention: OWA sorts its arguments in *descending* order, so ``w[0]``
multiplies the largest argument.  With ``w = (1, 0, ..., 0)`` the OWA is the
maximum, with ``w = (0, ..., 0, 1)`` the minimum.

Ties are broken by a stable sort: equal arguments keep their original index
order.  The aggregated value does not depend on it, but the alignment of
weights to positions (used by OWAWA and by the adaptive losses) does.
"""

from __future__ import annotations

import enum
import logging
import warnings
from dataclasses import dataclass

import numpy as np

logger = logging.getLogger(__name__)

WEIGHT_SUM_TOL = 1e-9
#: Smallest admissible denominator of the quadratic quantifier.
QUADRATIC_DENOMINATOR_FLOOR = 1e-6


class QuantifierSingularityWarning(RuntimeWarning):
    """The quadratic quantifier was evaluated at (or past) its pole."""


class QuantifierSingularityError(ArithmeticError):
    """Raised instead of the warning when ``strict=True``."""


class Family(str, enum.Enum):
    BASIC = "basic"
    QUADRATIC = "quadratic"
    EXPONENTIAL = "exponential"

    @classmethod
    def parse(cls, value: "str | Family") -> "Family":
        if isinstance(value, cls):
            return value
        aliases = {"b": "basic", "q": "quadratic", "e": "exponential", "exp": "exponential"}
        key = str(value).strip().lower()
        return cls(aliases.get(key, key))


@dataclass(frozen=True)
class QuantifierSpec:
    """A RIM linguistic quantifier: a family plus its ``alpha`` parameter."""

    family: Family
    alpha: float

    def __post_init__(self):
        object.__setattr__(self, "family", Family.parse(self.family))
        if not np.isfinite(self.alpha) or self.alpha <= 0:
            raise ValueError(f"alpha must be positive, got {self.alpha!r}")

    def __call__(self, r, strict: bool = False):
        return quantifier_eval(self, r, strict=strict)

    def weights(self, n: int, strict: bool = False) -> np.ndarray:
        return owa_weights(self, n, strict=strict)


def quantifier_eval(spec: QuantifierSpec, r, strict: bool = False):
    """Evaluate the quantifier at ``r`` (scalar or array in [0, 1]).

    * basic: ``r ** alpha``
    * quadratic: ``1 / (1 - alpha * sqrt(r))``; the denominator is floored at
      ``QUADRATIC_DENOMINATOR_FLOOR`` (with a warning) when it gets that small
      or changes sign, or an error is raised if ``strict``.
    * exponential: the antonym ``exp(-alpha * (1 - r))``, which is increasing
      in ``r`` and so yields non-negative weights.
    """
    arr = np.asarray(r, dtype=float)
    if np.any(~np.isfinite(arr)) or np.any(arr < 0.0) or np.any(arr > 1.0):
        raise ValueError(f"quantifier argument outside [0, 1]: {r!r}")
    a = spec.alpha
    if spec.family is Family.BASIC:
        out = arr**a
    elif spec.family is Family.EXPONENTIAL:
        out = np.exp(-a * (1.0 - arr))
    else:
        denom = 1.0 - a * np.sqrt(arr)
        bad = denom < QUADRATIC_DENOMINATOR_FLOOR
        if np.any(bad):
            msg = (
                f"quadratic quantifier with alpha={a} reaches its pole at "
                f"r={1.0 / a**2:.6g}; denominator clamped to {QUADRATIC_DENOMINATOR_FLOOR}"
            )
            if strict:
                raise QuantifierSingularityError(msg)
            logger.warning(msg)
            warnings.warn(msg, QuantifierSingularityWarning, stacklevel=2)
            denom = np.where(bad, QUADRATIC_DENOMINATOR_FLOOR, denom)
        out = 1.0 / denom
    return float(out) if np.ndim(out) == 0 else out


def raw_quantifier_weights(spec: QuantifierSpec, n: int, strict: bool = False) -> np.ndarray:
    """Increments ``Q(c/n) - Q((c-1)/n)`` for ``c = 1..n``, before rescaling."""
    if int(n) != n or n < 1:
        raise ValueError(f"number of positions must be a positive integer, got {n!r}")
    q = quantifier_eval(spec, np.arange(n + 1) / n, strict=strict)
    return np.diff(q)


def owa_weights(spec: QuantifierSpec, n: int, strict: bool = False) -> np.ndarray:
    """OWA weight vector of length ``n`` generated by a quantifier.

    Increments of the quantifier over ``c/n`` are divided by their sum (a
    no-op for the basic family, whose increments already add up to one).

    >>> owa_weights(QuantifierSpec("basic", 2.0), 2)
    array([0.25, 0.75])
    """
    raw = raw_quantifier_weights(spec, n, strict=strict)
    if np.any(raw < 0):
        raise RuntimeError(f"negative quantifier increment for {spec}: {raw}")
    return raw / raw.sum()


def check_weights(w, n: int | None = None, name: str = "weights") -> np.ndarray:
    """Validate a weight vector (entries in [0, 1], summing to one)."""
    w = np.asarray(w, dtype=float)
    if w.ndim != 1 or w.size == 0:
        raise ValueError(f"{name} must be a non-empty 1-d vector")
    if n is not None and w.size != n:
        raise ValueError(f"{name} has length {w.size}, expected {n}")
    if np.any(~np.isfinite(w)) or np.any(w < 0.0) or np.any(w > 1.0):
        raise ValueError(f"{name} entries must lie in [0, 1]")
    if abs(w.sum() - 1.0) > WEIGHT_SUM_TOL:
        raise ValueError(f"{name} must sum to 1 (sum={w.sum()!r})")
    return w


def _pair(w, a, name="weights"):
    a = np.asarray(a, dtype=float)
    if a.ndim != 1:
        raise ValueError("arguments must be a 1-d vector")
    return check_weights(w, a.size, name), a


def descending_order(a) -> np.ndarray:
    """Indices sorting ``a`` from largest to smallest; ties keep index order."""
    return np.argsort(-np.asarray(a, dtype=float), kind="stable")


def owa(w, a) -> float:
    """Ordered weighted average: ``sum(w[c] * b[c])`` with ``b`` = ``a`` sorted descending."""
    w, a = _pair(w, a)
    return float(np.dot(w, a[descending_order(a)]))


def iowa(w, a, u) -> float:
    """Induced OWA: arguments are ordered by descending ``u`` instead of their own value."""
    w, a = _pair(w, a)
    u = np.asarray(u, dtype=float)
    if u.shape != a.shape:
        raise ValueError("order-inducing vector must match the arguments in length")
    return float(np.dot(w, a[descending_order(u)]))


def wa(v, a) -> float:
    """Plain weighted average, no reordering."""
    v, a = _pair(v, a)
    return float(np.dot(v, a))


def owawa_weights(w, v, a, beta: float) -> np.ndarray:
    """Blended weights ``beta * w + (1 - beta) * v``, expressed in sorted position order.

    ``w`` is positional (applies to the sorted arguments); ``v`` belongs to the
    original positions of ``a`` and is carried along with the sort.
    """
    w, a = _pair(w, a)
    v = check_weights(v, a.size, "costs")
    if not 0.0 <= beta <= 1.0:
        raise ValueError(f"beta must lie in [0, 1], got {beta!r}")
    return beta * w + (1.0 - beta) * v[descending_order(a)]


def owawa(w, v, a, beta: float) -> float:
    """OWAWA: convex mix of OWA (``beta = 1``) and WA (``beta = 0``)."""
    a = np.asarray(a, dtype=float)
    vhat = owawa_weights(w, v, a, beta)
    return float(np.dot(vhat, a[descending_order(a)]))
