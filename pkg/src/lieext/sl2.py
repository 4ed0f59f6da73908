"""Witness search, sl2-triple construction, the five-component grading by
the semisimple member, the quadratic-action test, and the characteristic-5
dichotomy.

Error taxonomy matters here: HypothesisError means a documented
precondition failed (caller's problem), ContradictionError means the run
reached a state that is impossible for honest input, so the structure
constants themselves must be corrupt.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import LieAlgebra, quotient_action
from .errors import CapabilityError, ContradictionError, HypothesisError, InvarianceError
from .extremal import EXTREMAL, classify_element
from .linalg import Matrix, Subspace, eigenspace, kernel, solve, vec_add, vec_is_zero, vec_scale, vec_sub

LABELS = (-2, -1, 0, 1, 2)


def require_good_characteristic(l: LieAlgebra):
    if l.field.p in (2, 3):
        raise CapabilityError("this construction needs characteristic different from 2 and 3")


@dataclass(frozen=True)
class Sl2Triple:
    x: tuple
    y: tuple
    h: tuple


@dataclass(frozen=True)
class CompletionCertificate:
    w: tuple
    x1: tuple
    w1: tuple
    y: tuple


def triple_relations_hold(l: LieAlgebra, x, y, h) -> bool:
    f = l.field
    two = f.of(2)
    return (
        l.bracket(x, y) == tuple(h)
        and l.bracket(h, x) == vec_scale(f, two, x)
        and l.bracket(h, y) == vec_scale(f, f.neg(two), y)
    )


def make_triple(l: LieAlgebra, x, y) -> Sl2Triple:
    """Verified triple from a pair; the bracket of the pair is the third member."""
    x, y = l.check_vector(x), l.check_vector(y)
    if vec_is_zero(x) or vec_is_zero(y):
        raise HypothesisError("sl2 pair members must be nonzero")
    h = l.bracket(x, y)
    if not triple_relations_hold(l, x, y, h):
        raise HypothesisError("the defining sl2 relations do not hold for this pair")
    return Sl2Triple(x, y, h)


def find_witness(l: LieAlgebra, x, functional):
    """First basis vector where the functional is nonzero, scaled to -2."""
    f = l.field
    for i, c in enumerate(functional):
        if c:
            scale = f.div(f.of(-2), c)
            return vec_scale(f, scale, l.basis_vector(i))
    raise HypothesisError("sandwich element: the extremal functional vanishes identically")


def restrict_operator(m: Matrix, s: Subspace) -> Matrix:
    """Matrix of an operator on an invariant subspace, in its echelon basis."""
    cols = []
    for row in s.basis:
        image = m.apply(row)
        coords = s.coords(image)
        if coords is None:
            raise InvarianceError("operator does not preserve the subspace")
        cols.append(coords)
    if not cols:
        return Matrix.zeros(m.field, 0, 0)
    return Matrix.from_columns(m.field, cols)


def complete_sl2(l: LieAlgebra, x, w):
    """Complete an extremal x and a witness w with f_x(w) = -2 to a triple.

    Follows the constructive argument: h = [x, w]; the defect
    x1 = [w, h] - 2w lies in the centralizer C of x, where ad_h + 2 is
    invertible; the correction w1 solves (ad_h + 2) w1 = x1 and y = w + w1.
    """
    require_good_characteristic(l)
    x, w = l.check_vector(x), l.check_vector(w)
    f = l.field
    status = classify_element(l, x)
    if not status.is_extremal:
        raise HypothesisError("x is not extremal")
    if l.bracket(x, l.bracket(x, w)) != vec_scale(f, f.of(-2), x):
        raise HypothesisError("witness does not satisfy f_x(w) = -2")
    h = l.bracket(x, w)
    x1 = vec_sub(f, l.bracket(w, h), vec_scale(f, f.of(2), w))
    c = kernel(l.ad(x))
    if not c.contains(x1):
        raise HypothesisError("defect [w, h] - 2w left the centralizer of x")
    shifted = l.ad(h).add_scalar_diag(f.of(2))
    try:
        m = restrict_operator(shifted, c)
    except InvarianceError:
        raise HypothesisError("centralizer of x is not invariant under ad_h") from None
    coords = c.coords(x1)
    sol = solve(m, coords)
    if sol is None:
        raise HypothesisError("(ad_h + 2) is singular on the centralizer of x")
    w1 = l.zero()
    for a, row in zip(sol, c.basis):
        if a:
            w1 = vec_add(f, w1, vec_scale(f, a, row))
    y = vec_add(f, w, w1)
    if not triple_relations_hold(l, x, y, h):
        raise HypothesisError("constructed pair violates the sl2 relations")
    return Sl2Triple(x, y, h), CompletionCertificate(w, x1, w1, y)


@dataclass(frozen=True)
class HGrading:
    """Eigenspace decomposition of -ad_h at the labels -2..2.

    For characteristic p >= 5 the labels are lifted from residues
    (0,1,2,3,4) -> (0,1,2,-2,-1); ``z_graded`` records whether all products
    with integer label sum outside [-2, 2] vanish.
    """

    components: dict
    z_graded: bool

    def dims(self) -> dict:
        return {i: self.components[i].dim for i in LABELS}

    def label_of_residue(self, field, value):
        for i in LABELS:
            if field.of(i) == value:
                return i
        return None


def lift_label(field, i: int, j: int):
    """Label of the component receiving [L_i, L_j], or None."""
    s = field.of(i + j)
    for k in LABELS:
        if field.of(k) == s:
            return k
    return None


def h_grading(l: LieAlgebra, t: Sl2Triple) -> HGrading:
    """Eigenspace decomposition of -ad_h, verified to be a direct sum with
    the line through x at label -2 and the line through y at label 2."""
    require_good_characteristic(l)
    f = l.field
    neg_ad_h = l.ad(t.h).scale(f.neg(f.one))
    components = {i: eigenspace(neg_ad_h, f.of(i)) for i in LABELS}
    total = 0
    stacked = []
    for i in LABELS:
        total += components[i].dim
        stacked.extend(components[i].basis)
    if total != l.dim or Subspace.span(f, l.dim, stacked).dim != l.dim:
        raise HypothesisError(
            "-ad_h is not diagonalizable with eigenvalues 0, +-1, +-2; "
            "the input violates the preconditions")
    a = l.ad(t.h)
    prod = a
    for shift in (-1, 1, -2, 2):
        prod = prod.mul(a.add_scalar_diag(f.of(shift)))
    if not prod.is_zero():
        raise HypothesisError("minimal polynomial of ad_h does not divide t(t^2-1)(t^2-4)")
    for label, vec in ((-2, t.x), (2, t.y)):
        comp = components[label]
        if comp.dim != 1 or not comp.contains(vec):
            raise HypothesisError(f"component at label {label} is not the expected line")
    z_graded = True
    for i in LABELS:
        for j in LABELS:
            if abs(i + j) <= 2:
                continue
            for u in components[i].basis:
                for v in components[j].basis:
                    if not vec_is_zero(l.bracket(u, v)):
                        z_graded = False
    return HGrading(components, z_graded)


def quadraticity_check(l: LieAlgebra, t: Sl2Triple) -> bool:
    """Does the nilnegative member act quadratically on L modulo the triple's span?"""
    s = Subspace.span(l.field, l.dim, [t.x, t.y, t.h])
    m = quotient_action(l, s, [t.y])[0]
    return m.mul(m).is_zero()


@dataclass(frozen=True)
class DichotomyResult:
    branch: str                      # "exceptional" | "regular"
    v: "tuple | None"                # exceptional: [y, [y, v]] = x with v in L_-1
    checks: dict                     # regular: named verification outcomes
    note: str = ""


GRADING_MAP_NOTE = (
    "grading maps verified as [x, L1] = L-1 and [y, L-1] = L1; the reversed "
    "index placement occasionally seen for these equalities is inconsistent "
    "with the grading and is treated as a typo")


def dichotomy(l: LieAlgebra, t: Sl2Triple, g: HGrading) -> DichotomyResult:
    """Either produce v in L_-1 with [y, [y, v]] = x (characteristic 5 only),
    or verify the regular outcome: y extremal, a genuine integer grading,
    and the maps [x, .]: L1 -> L-1, [y, .]: L-1 -> L1 being onto."""
    f = l.field
    lm1 = g.components[-1]
    l1 = g.components[1]
    images = [l.bracket(t.y, l.bracket(t.y, b)) for b in lm1.basis]
    target = Subspace.span(f, l.dim, images)
    if target.dim > 0:
        if f.p != 5:
            raise ContradictionError(
                "[y, [y, L_-1]] is nonzero in characteristic != 5; structure constants corrupt")
        x_line = Subspace.span(f, l.dim, [t.x])
        if target != x_line:
            raise ContradictionError("[y, [y, L_-1]] is not the line through x")
        a = Matrix.from_columns(f, images)
        sol = solve(a, t.x)
        if sol is None:
            raise ContradictionError("x escaped the column space it was just seen in")
        v = l.zero()
        for c, b in zip(sol, lm1.basis):
            if c:
                v = vec_add(f, v, vec_scale(f, c, b))
        if l.bracket(t.y, l.bracket(t.y, v)) != tuple(t.x):
            raise ContradictionError("solver returned a non-solution")
        return DichotomyResult("exceptional", v, {})
    checks = {}
    checks["y_extremal"] = classify_element(l, t.y).kind == EXTREMAL
    x_l1 = Subspace.span(f, l.dim, [l.bracket(t.x, b) for b in l1.basis])
    y_lm1 = Subspace.span(f, l.dim, [l.bracket(t.y, b) for b in lm1.basis])
    checks["x_maps_L1_onto_L-1"] = x_l1 == lm1
    checks["y_maps_L-1_onto_L1"] = y_lm1 == l1
    z_graded = True
    for i in LABELS:
        for j in LABELS:
            if abs(i + j) <= 2:
                continue
            for u in g.components[i].basis:
                for v in g.components[j].basis:
                    if not vec_is_zero(l.bracket(u, v)):
                        z_graded = False
    checks["integer_grading"] = z_graded
    for name, ok in checks.items():
        if not ok:
            raise ContradictionError(f"regular-branch verification failed: {name}")
    return DichotomyResult("regular", None, checks, GRADING_MAP_NOTE)
