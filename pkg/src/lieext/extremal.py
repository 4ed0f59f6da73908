"""Extremality and sandwich predicates, and finite-field scans.

An element x is extremal when [x, [x, L]] lies in the line F x; the linear
functional f with [x, [x, m]] = f(m) x is recovered coordinate by
coordinate and cross-checked on every row, so a proportionality accident on
a single coordinate cannot produce a false positive.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import LieAlgebra
from .errors import CapabilityError, DomainError
from .linalg import vec_is_zero

EXHAUSTIVE_LIMIT = 10**7

NOT_EXTREMAL = "not_extremal"
SANDWICH = "sandwich"
EXTREMAL = "extremal_nonsandwich"


@dataclass(frozen=True)
class ExtremalStatus:
    vector: tuple
    kind: str
    functional: "tuple | None"  # f with [x,[x,b_j]] = f_j x; None when not extremal

    @property
    def is_extremal(self) -> bool:
        return self.kind != NOT_EXTREMAL


def classify_element(l: LieAlgebra, x) -> ExtremalStatus:
    """Decide whether x is extremal, and if so recover its functional."""
    x = l.check_vector(x)
    if vec_is_zero(x):
        raise DomainError("the zero vector has no extremal functional")
    f = l.field
    a = l.ad(x)
    a2 = a.mul(a)
    lead = next(i for i, c in enumerate(x) if c)
    inv_lead = f.inv(x[lead])
    functional = []
    for j in range(l.dim):
        w = tuple(a2.data[i][j] for i in range(l.dim))
        c = f.mul(w[lead], inv_lead)
        if any(wi != f.mul(c, xi) for wi, xi in zip(w, x)):
            return ExtremalStatus(x, NOT_EXTREMAL, None)
        functional.append(c)
    kind = SANDWICH if all(not c for c in functional) else EXTREMAL
    return ExtremalStatus(x, kind, tuple(functional))


def apply_functional(f_vec, v, field):
    acc = field.zero
    for c, vi in zip(f_vec, v):
        if c and vi:
            acc = field.add(acc, field.mul(c, vi))
    return acc


def scan_basis(l: LieAlgebra) -> list:
    return [classify_element(l, l.basis_vector(i)) for i in range(l.dim)]


@dataclass(frozen=True)
class ScanResult:
    extremal: tuple
    sandwich: tuple
    counts: dict
    representatives_only: bool


def exhaustive_scan(l: LieAlgebra, representatives_only: bool = False) -> ScanResult:
    """Classify every nonzero vector of a small finite-field algebra.

    Vectors come out in lexicographic coordinate order.  With
    ``representatives_only`` each scalar class appears once, through its
    representative with first nonzero coordinate 1.
    """
    p = l.field.p
    if p == 0:
        raise CapabilityError("exhaustive scan needs a finite field")
    total = p**l.dim
    if total > EXHAUSTIVE_LIMIT:
        raise CapabilityError(f"exhaustive scan limited to p^n <= {EXHAUSTIVE_LIMIT}")
    f = l.field
    extremal = []
    sandwich = []
    counts = {NOT_EXTREMAL: 0, SANDWICH: 0, EXTREMAL: 0}
    for code in range(1, total):
        v = [0] * l.dim
        rest = code
        for i in range(l.dim - 1, -1, -1):
            rest, v[i] = divmod(rest, p)
        v = tuple(f.of(c) for c in v)
        status = classify_element(l, v)
        counts[status.kind] += 1
        if status.kind == NOT_EXTREMAL:
            continue
        if representatives_only:
            lead = next(c for c in v if c)
            if lead != f.one:
                continue
        if status.kind == SANDWICH:
            sandwich.append(v)
        else:
            extremal.append(v)
    return ScanResult(tuple(extremal), tuple(sandwich), counts, representatives_only)
