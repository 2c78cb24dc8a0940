"""Coefficient-space calculus for the scaled Hermite operator H(lam).

A :class:`CoeffVec` holds coefficients against the n-dimensional Hermite
basis Phi_alpha^lam on the truncated simplex |alpha| <= K.  The ladder
operators act as

    A_j(lam)   e_alpha = ((2 alpha_j + 2) lam)^{1/2} e_{alpha + e_j}   (creation)
    A_j*(lam)  e_alpha = (2 alpha_j lam)^{1/2}       e_{alpha - e_j}   (annihilation)
    H(lam)^s   e_alpha = ((2|alpha| + n)|lam|)^s     e_alpha

The ladder constants follow from A_j = -d/dxi_j + lam xi_j and
A_j* = d/dxi_j + lam xi_j; tests re-derive them by finite differences.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .special_fn import check_index, simplex

__all__ = [
    "TruncationError",
    "CoeffVec",
    "kappa_plus",
    "kappa_minus",
    "raise_index",
    "lower_index",
    "h_power",
    "riesz_first",
    "riesz_monomial",
    "factorization_defect",
    "commutator_measure",
    "rotation_norm_equality",
    "random_interior",
]

ANNIHILATE_SIDE = "annihilate-side"
CREATE_SIDE = "create-side"


class TruncationError(ValueError):
    """Input support leaves no room for the raises an operation performs."""


@dataclass(frozen=True)
class CoeffVec:
    n: int
    K: int
    lam: float
    data: dict = field(default_factory=dict)
    # l2 mass discarded by raises that left the simplex, accumulated
    dropped: float = 0.0

    def __post_init__(self):
        if self.n < 1 or self.K < 0:
            raise ValueError("need n >= 1 and K >= 0")
        if self.lam == 0:
            raise ValueError("lam must be nonzero")
        for a in self.data:
            if len(a) != self.n or sum(a) > self.K:
                raise ValueError(f"key {a} outside the simplex n={self.n}, K={self.K}")
        # deterministic iteration order
        object.__setattr__(self, "data", dict(sorted(self.data.items())))

    @classmethod
    def zeros(cls, n, K, lam=1.0):
        return cls(n, K, lam, {})

    @classmethod
    def basis(cls, alpha, K, lam=1.0, value=1.0):
        alpha = check_index(alpha)
        return cls(len(alpha), K, lam, {alpha: complex(value)})

    @classmethod
    def from_array(cls, n, K, lam, values):
        keys = simplex(n, K)
        if len(values) != len(keys):
            raise ValueError("wrong number of coefficients")
        return cls(n, K, lam, {a: complex(v) for a, v in zip(keys, values) if v != 0})

    def _like(self, data, dropped=0.0):
        return CoeffVec(self.n, self.K, self.lam, data, self.dropped + dropped)

    def get(self, alpha) -> complex:
        return self.data.get(tuple(alpha), 0j)

    def norm(self) -> float:
        return math.sqrt(sum(abs(v) ** 2 for v in self.data.values()))

    def vdot(self, other: "CoeffVec") -> complex:
        """<self, other>, conjugate-linear in self."""
        return sum((v.conjugate() * other.get(a) for a, v in self.data.items()), 0j)

    def max_order(self) -> int:
        return max((sum(a) for a in self.data), default=-1)

    def __add__(self, other):
        _compatible(self, other)
        data = dict(self.data)
        for a, v in other.data.items():
            data[a] = data.get(a, 0j) + v
        return self._like(data, other.dropped)

    def __sub__(self, other):
        return self + (-1.0) * other

    def __rmul__(self, scalar):
        return self._like({a: scalar * v for a, v in self.data.items()})

    def to_array(self) -> np.ndarray:
        return np.array([self.get(a) for a in simplex(self.n, self.K)])


def _compatible(c, d):
    if (c.n, c.K) != (d.n, d.K) or c.lam != d.lam:
        raise ValueError("coefficient vectors live in different spaces")


def _axis(c, j):
    if not 1 <= j <= c.n:
        raise ValueError(f"axis {j} outside 1..{c.n}")
    if c.lam <= 0:
        raise ValueError("ladder operators need lam > 0")
    return j - 1


def kappa_plus(a: int, lam: float) -> float:
    return math.sqrt((2 * a + 2) * lam)


def kappa_minus(a: int, lam: float) -> float:
    return math.sqrt(2 * a * lam)


def raise_index(j: int, c: CoeffVec) -> CoeffVec:
    """Creation operator A_j(lam); mass pushed past order K is dropped and tallied."""
    i = _axis(c, j)
    out = {}
    lost = 0.0
    for a, v in c.data.items():
        b = a[:i] + (a[i] + 1,) + a[i + 1:]
        w = kappa_plus(a[i], c.lam) * v
        if sum(b) > c.K:
            lost += abs(w) ** 2
            continue
        out[b] = out.get(b, 0j) + w
    return c._like(out, math.sqrt(lost))


def lower_index(j: int, c: CoeffVec) -> CoeffVec:
    """Annihilation operator A_j*(lam)."""
    i = _axis(c, j)
    out = {}
    for a, v in c.data.items():
        if a[i] == 0:
            continue
        b = a[:i] + (a[i] - 1,) + a[i + 1:]
        out[b] = out.get(b, 0j) + kappa_minus(a[i], c.lam) * v
    return c._like(out)


def h_power(s: float, c: CoeffVec) -> CoeffVec:
    """Diagonal action of H(lam)^s; eigenvalue (2|alpha| + n)|lam|."""
    lam = abs(c.lam)
    return c._like({a: ((2 * sum(a) + c.n) * lam) ** s * v for a, v in c.data.items()})


def riesz_first(j: int, kind: str, c: CoeffVec) -> CoeffVec:
    """First-order Riesz multipliers A_j H^{-1/2} (annihilate-side) or A_j* H^{-1/2} (create-side)."""
    half = h_power(-0.5, c)
    if kind == ANNIHILATE_SIDE:
        return raise_index(j, half)
    if kind == CREATE_SIDE:
        return lower_index(j, half)
    raise ValueError(f"unknown kind {kind!r}")


def _require_room(c: CoeffVec, q: int):
    for a in c.data:
        if sum(a) > c.K - q:
            raise TruncationError(f"index {a} has order {sum(a)} > K - q = {c.K - q}")


def riesz_monomial(p: int, q: int, j: int, k: int, c: CoeffVec) -> CoeffVec:
    """A_k^q A_j*^p H^{-(p+q)/2} applied to c."""
    if c.n < 2:
        raise ValueError("monomial Riesz transforms need n >= 2")
    if j == k:
        raise ValueError("axes must differ")
    if p < 0 or q < 0:
        raise ValueError("degrees must be nonnegative")
    _require_room(c, q)
    out = h_power(-(p + q) / 2.0, c)
    for _ in range(p):
        out = lower_index(j, out)
    for _ in range(q):
        out = raise_index(k, out)
    return out


def _h_ladder_h(c: CoeffVec) -> CoeffVec:
    """H^{-1/2} A_2 A_1* H^{-1/2}."""
    out = h_power(-0.5, c)
    out = raise_index(2, lower_index(1, out))
    return h_power(-0.5, out)


def factorization_defect(p: int, q: int, c: CoeffVec) -> float:
    """Relative gap between A_2^q A_1*^p H^{-(p+q)/2} and the factored form

        A_2^{q-p} H^{-(q-p)/2} (H^{-1/2} A_2 A_1* H^{-1/2})^p
    """
    if not 1 <= p <= q:
        raise ValueError("need 1 <= p <= q")
    if c.n < 2:
        raise ValueError("need n >= 2")
    _require_room(c, q)
    norm = c.norm()
    if norm == 0:
        return 0.0
    lhs = riesz_monomial(p, q, 1, 2, c)
    rhs = c
    for _ in range(p):
        rhs = _h_ladder_h(rhs)
    rhs = h_power(-(q - p) / 2.0, rhs)
    for _ in range(q - p):
        rhs = raise_index(2, rhs)
    return (lhs - rhs).norm() / norm


def commutator_measure(j: int, lam: float, K: int, n: int | None = None) -> dict:
    """Measure the constant c* with [A_j, A_j*] = A_j A_j* - A_j* A_j ~ c* I.

    Runs over interior basis vectors (|alpha| <= K - 1) of dimension n
    (default n = j).  Also measures the shift s in H A_j = A_j H + s A_j.
    Returns c*, the residual max ||[A, A*] e - c* e||, the shift and its
    residual.
    """
    if K < 2:
        raise ValueError("need K >= 2")
    n = j if n is None else n
    diag = []
    off = 0.0
    shifts = []
    shift_off = 0.0
    for alpha in simplex(n, K - 1):
        e = CoeffVec.basis(alpha, K, lam)
        comm = raise_index(j, lower_index(j, e)) - lower_index(j, raise_index(j, e))
        d = comm.get(alpha)
        diag.append(d.real)
        off = max(off, (comm - d * e).norm(), abs(d.imag))
        a_e = raise_index(j, e)
        lhs = h_power(1.0, a_e) - raise_index(j, h_power(1.0, e))
        b = alpha[: j - 1] + (alpha[j - 1] + 1,) + alpha[j:]
        s = lhs.get(b) / a_e.get(b)
        shifts.append(s.real)
        shift_off = max(shift_off, (lhs - s * a_e).norm())
    diag = np.array(diag)
    c_star = 0.5 * (diag.max() + diag.min())
    shifts = np.array(shifts)
    shift = 0.5 * (shifts.max() + shifts.min())
    return {
        "constant": float(c_star),
        "residual": float(max(np.abs(diag - c_star).max(), off)),
        "shift": float(shift),
        "shift_residual": float(max(np.abs(shifts - shift).max(), shift_off)),
    }


def _riesz_vectors(c: CoeffVec):
    create = [riesz_first(j, ANNIHILATE_SIDE, c) for j in range(1, c.n + 1)]
    annihilate = [riesz_first(j, CREATE_SIDE, c) for j in range(1, c.n + 1)]
    return create, annihilate


def _aggregate(vectors, mix) -> float:
    """sqrt(sum_j ||sum_k mix[j, k] v_k||^2)."""
    keys = sorted(set().union(*(v.data for v in vectors)))
    mat = np.array([[v.get(a) for a in keys] for v in vectors])
    return float(np.linalg.norm(mix @ mat)) if keys else 0.0


def rotation_norm_equality(U, c: CoeffVec, tol: float = 1e-12) -> tuple[float, float]:
    """l2-aggregated Riesz norms before and after the substitution A_j -> sum_k U_jk A_k.

    The annihilation side transforms with conj(U).  Unitarity makes the two
    numbers equal; they are returned for comparison.
    """
    U = np.asarray(U, dtype=complex)
    if U.shape != (c.n, c.n):
        raise ValueError(f"U must be {c.n}x{c.n}")
    if np.abs(U.conj().T @ U - np.eye(c.n)).max() > tol:
        raise ValueError("U is not unitary")
    create, annihilate = _riesz_vectors(c)
    eye = np.eye(c.n)
    before = math.hypot(_aggregate(create, eye), _aggregate(annihilate, eye))
    after = math.hypot(_aggregate(create, U), _aggregate(annihilate, U.conj()))
    return before, after


def random_interior(n: int, K: int, lam: float, rng, depth: int = 1) -> CoeffVec:
    """Random complex vector supported in |alpha| <= K - depth."""
    keys = simplex(n, K - depth)
    vals = rng.standard_normal(len(keys)) + 1j * rng.standard_normal(len(keys))
    return CoeffVec(n, K, lam, dict(zip(keys, vals)))
