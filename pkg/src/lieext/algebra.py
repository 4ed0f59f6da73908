"""Structure-constant Lie algebras over an exact field.

An algebra is a sparse tensor ``[b_i, b_j] = sum_k c * b_k`` stored only for
``i < j``; antisymmetry is structural.  The module also provides the span
machinery built on top of the bracket (subalgebra and ideal closures, center,
derived algebra, simplicity checks, quotients), the builtin test algebras,
and the canonical JSON file format.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .errors import (
    CapabilityError,
    DomainError,
    InvarianceError,
    ParseError,
    ShapeError,
)
from .fields import Field
from .linalg import (
    GrowingSpan,
    Matrix,
    Subspace,
    unit_vec,
    vec_add,
    vec_is_zero,
    vec_scale,
    zero_vec,
)

SIMPLE_SCAN_LIMIT = 10**7


class LieAlgebra:
    """Finite-dimensional algebra given by structure constants.

    ``table`` maps ``(i, j)`` with ``i < j`` to a tuple of ``(k, coeff)``
    terms sorted by ``k``; absent pairs bracket to zero.  Instances are
    immutable; the Jacobi identity is checked by :meth:`validate`, not at
    construction, so that broken tensors can be loaded and reported on.
    """

    __slots__ = ("field", "names", "table")

    def __init__(self, field: Field, names, table):
        self.field = field
        self.names = tuple(str(n) for n in names)
        n = len(self.names)
        if n < 1:
            raise ShapeError("algebra dimension must be at least 1")
        canon = {}
        for (i, j), terms in table.items():
            if not (0 <= i < j < n):
                raise ShapeError(f"bad basis pair ({i}, {j}) for dimension {n}")
            acc = {}
            for k, c in terms:
                if not 0 <= k < n:
                    raise ShapeError(f"bad target index {k} for dimension {n}")
                c = field.of(c)
                acc[k] = field.add(acc.get(k, field.zero), c)
            cleaned = tuple((k, c) for k, c in sorted(acc.items()) if c)
            if cleaned:
                canon[(i, j)] = cleaned
        self.table = canon

    @property
    def dim(self) -> int:
        return len(self.names)

    def __repr__(self):
        return f"LieAlgebra(dim {self.dim} over {self.field!r})"

    def zero(self):
        return zero_vec(self.field, self.dim)

    def basis_vector(self, i: int):
        return unit_vec(self.field, self.dim, i)

    def check_vector(self, v):
        if len(v) != self.dim:
            raise ShapeError(f"vector of length {len(v)} in a {self.dim}-dimensional algebra")
        return tuple(self.field.of(c) for c in v)

    def basis_terms(self, i: int, j: int):
        """Sparse terms of [b_i, b_j] for any index pair."""
        if i == j:
            return ()
        if i < j:
            return self.table.get((i, j), ())
        f = self.field
        return tuple((k, f.neg(c)) for k, c in self.table.get((j, i), ()))

    def bracket(self, u, v):
        """[u, v], bilinear extension of the structure tensor."""
        if len(u) != self.dim or len(v) != self.dim:
            raise ShapeError("bracket operands must match the algebra dimension")
        f = self.field
        out = [f.zero] * self.dim
        for i, ui in enumerate(u):
            if not ui:
                continue
            for j, vj in enumerate(v):
                if not vj:
                    continue
                s = f.mul(ui, vj)
                for k, c in self.basis_terms(i, j):
                    out[k] = f.add(out[k], f.mul(s, c))
        return tuple(out)

    def ad(self, x) -> Matrix:
        """Matrix of ad_x = [x, .] with columns [x, b_j]."""
        x = self.check_vector(x)
        cols = [self.bracket(x, self.basis_vector(j)) for j in range(self.dim)]
        return Matrix.from_columns(self.field, cols)

    def validate(self) -> "ValidationReport":
        """Exhaustive Jacobi check over all basis triples i < j < k."""
        violations = []
        for i in range(self.dim):
            bi = self.basis_vector(i)
            for j in range(i + 1, self.dim):
                bj = self.basis_vector(j)
                bij = self.bracket(bi, bj)
                for k in range(j + 1, self.dim):
                    bk = self.basis_vector(k)
                    acc = self.bracket(bij, bk)
                    acc = vec_add(self.field, acc, self.bracket(self.bracket(bj, bk), bi))
                    acc = vec_add(self.field, acc, self.bracket(self.bracket(bk, bi), bj))
                    if not vec_is_zero(acc):
                        violations.append((i, j, k))
        return ValidationReport(tuple(violations))


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple

    @property
    def ok(self) -> bool:
        return not self.violations


@dataclass(frozen=True)
class SimplicityVerdict:
    simple: bool
    certified: bool
    detail: str
    witness_ideal: "Subspace | None" = None

    @property
    def label(self) -> str:
        if not self.simple:
            return "not simple"
        return "simple" if self.certified else "probably simple"


def subalgebra_closure(l: LieAlgebra, gens) -> Subspace:
    """Smallest subspace containing ``gens`` and closed under the bracket.

    Worklist discipline: every vector ever added is bracketed against all
    earlier ones exactly once, so no pair is recomputed."""
    vecs = [l.check_vector(g) for g in gens]
    span = GrowingSpan(l.field, l.dim)
    pool = [v for v in vecs if span.insert(v)]
    idx = 0
    while idx < len(pool):
        u = pool[idx]
        for v in pool[: idx + 1]:
            w = l.bracket(u, v)
            if span.insert(w):
                pool.append(w)
        idx += 1
    return span.to_subspace()


def ideal_closure(l: LieAlgebra, gens) -> Subspace:
    """Smallest subspace containing ``gens`` with [L, result] inside it."""
    vecs = [l.check_vector(g) for g in gens]
    span = GrowingSpan(l.field, l.dim)
    pool = [v for v in vecs if span.insert(v)]
    idx = 0
    while idx < len(pool):
        u = pool[idx]
        for i in range(l.dim):
            w = l.bracket(l.basis_vector(i), u)
            if span.insert(w):
                pool.append(w)
        idx += 1
    return span.to_subspace()


def center(l: LieAlgebra) -> Subspace:
    """{v : [v, b_i] = 0 for all i}, the kernel of all adjoint actions."""
    from .linalg import kernel

    rows = []
    for i in range(l.dim):
        rows.extend(l.ad(l.basis_vector(i)).data)
    return kernel(Matrix.from_rows(l.field, rows))


def derived(l: LieAlgebra) -> Subspace:
    """Span of all brackets of basis pairs."""
    vecs = [l.bracket(l.basis_vector(i), l.basis_vector(j))
            for i in range(l.dim) for j in range(i + 1, l.dim)]
    return Subspace.span(l.field, l.dim, vecs)


def _projective_representatives(field: Field, n: int):
    """One vector per projective point: first nonzero coordinate equals 1."""
    p = field.p
    for lead in range(n):
        tail = n - lead - 1
        for code in range(p**tail):
            v = [field.zero] * n
            v[lead] = field.one
            rest = code
            for t in range(tail):
                rest, digit = divmod(rest, p)
                v[lead + 1 + t] = field.of(digit)
            yield tuple(v)


def is_simple(l: LieAlgebra, mode: str = "certified", samples: int = 40, seed: int = 0) -> SimplicityVerdict:
    """Simplicity test.

    ``certified`` enumerates one generator per projective point (finite
    fields with p^n <= 10^7 only) and is exact.  ``probabilistic`` tries all
    basis vectors plus seeded random ones; a negative answer is still exact
    (it comes with a witness ideal), a positive one is only "probable".
    """
    if mode not in ("certified", "probabilistic"):
        raise DomainError(f"unknown simplicity mode {mode!r}")
    full = Subspace.full(l.field, l.dim)
    c = center(l)
    if c.dim == l.dim:
        return SimplicityVerdict(False, True, "abelian algebra", None)
    if c.dim > 0:
        return SimplicityVerdict(False, True, "nonzero center", c)
    d = derived(l)
    if d != full:
        return SimplicityVerdict(False, True, "derived algebra is proper", d if d.dim else None)

    if mode == "certified":
        if l.field.p == 0:
            raise CapabilityError("certified simplicity needs a finite field")
        if l.field.p ** l.dim > SIMPLE_SCAN_LIMIT:
            raise CapabilityError(
                f"certified simplicity limited to p^n <= {SIMPLE_SCAN_LIMIT}")
        candidates = _projective_representatives(l.field, l.dim)
        certified = True
    else:
        import random

        rng = random.Random(seed)
        cand = [l.basis_vector(i) for i in range(l.dim)]
        while len(cand) < l.dim + samples:
            v = tuple(l.field.random(rng) for _ in range(l.dim))
            if not vec_is_zero(v):
                cand.append(v)
        candidates = cand
        certified = False

    for v in candidates:
        ideal = ideal_closure(l, [v])
        if ideal != full:
            return SimplicityVerdict(False, True, "proper ideal found", ideal)
    detail = "every projective point generates" if certified else \
        f"all basis vectors and {samples} seeded vectors generate"
    return SimplicityVerdict(True, certified, detail, None)


def _module_closure_rank(field, mats, start, ambient):
    """Dimension of the smallest subspace containing ``start`` invariant
    under all matrices, plus its span for witness extraction."""
    span = GrowingSpan(field, ambient)
    pool = [start] if span.insert(start) else []
    idx = 0
    while idx < len(pool) and span.dim < ambient:
        u = pool[idx]
        for m in mats:
            w = m.apply(u)
            if span.insert(w):
                pool.append(w)
        idx += 1
    return span


def _line_representatives(field, basis):
    """One vector per line of the span of the given independent rows."""
    for coeffs in _projective_representatives(field, len(basis)):
        v = zero_vec(field, len(basis[0]))
        for c, row in zip(coeffs, basis):
            if c:
                v = vec_add(field, v, vec_scale(field, c, row))
        yield v


def meataxe_simple(l: LieAlgebra, seed: int = 0, line_budget: int = 4096) -> SimplicityVerdict:
    """Exact simplicity certificate via invariant-subspace analysis.

    Ideals are exactly the submodules of the adjoint module.  For a singular
    operator t in the enveloping algebra, any proper submodule W either
    meets ker t or its annihilator meets ker t^T (otherwise t would be
    injective on W, forcing W inside im t and the annihilator of im t + W to
    vanish, a contradiction).  So when every line of ker t generates the
    whole module and every line of ker t^T generates the dual, no proper
    nonzero ideal exists.  Negative answers always come with a concrete
    witness ideal.  Much faster than the projective-point enumeration of
    :func:`is_simple`, and used by the classification pipeline; the two are
    cross-checked in the test suite.
    """
    import random

    from .linalg import kernel as _kernel

    if l.field.p == 0:
        raise CapabilityError("simplicity is only certified over finite fields")
    full = Subspace.full(l.field, l.dim)
    c = center(l)
    if c.dim == l.dim:
        return SimplicityVerdict(False, True, "abelian algebra", None)
    if c.dim > 0:
        return SimplicityVerdict(False, True, "nonzero center", c)
    d = derived(l)
    if d != full:
        return SimplicityVerdict(False, True, "derived algebra is proper",
                                 d if d.dim else None)

    f = l.field
    ads = [l.ad(l.basis_vector(i)) for i in range(l.dim)]
    rng = random.Random(seed)
    candidates = [l.basis_vector(i) for i in range(l.dim)]
    for _ in range(24):
        candidates.append(tuple(f.random(rng) for _ in range(l.dim)))

    def lines_of(nullity):
        return (f.p**nullity - 1) // (f.p - 1)

    best = None
    for x in candidates:
        if vec_is_zero(x):
            continue
        theta = l.ad(x)
        ker = _kernel(theta)
        if ker.dim == 0 or lines_of(ker.dim) > line_budget:
            continue
        if best is None or ker.dim < best[1].dim:
            best = (theta, ker)
        if ker.dim == 1:
            break
    if best is None:
        raise CapabilityError(
            "no singular operator with a small enough kernel was found; "
            "fall back to exhaustive or probabilistic checking")
    theta, ker = best
    for v in _line_representatives(f, ker.basis):
        span = _module_closure_rank(f, ads, v, l.dim)
        if span.dim < l.dim:
            witness = span.to_subspace()
            return SimplicityVerdict(False, True, "proper ideal found", witness)
    ads_t = [m.transpose() for m in ads]
    ker_t = _kernel(theta.transpose())
    for fvec in _line_representatives(f, ker_t.basis):
        span = _module_closure_rank(f, ads_t, fvec, l.dim)
        if span.dim < l.dim:
            # The annihilator of the dual submodule is a proper nonzero ideal.
            witness = _kernel(Matrix.from_rows(f, list(span.to_subspace().basis)))
            return SimplicityVerdict(False, True, "proper ideal found", witness)
    return SimplicityVerdict(
        True, True,
        f"kernel lines of a nullity-{ker.dim} operator generate the module and its dual",
        None)


def complement_indices(s: Subspace):
    """Standard basis indices completing ``s`` to the whole space."""
    pivots = set(s.pivots)
    return tuple(i for i in range(s.ambient) if i not in pivots)


def quotient_action(l: LieAlgebra, s: Subspace, actors) -> list:
    """Matrices of the induced actions on L/s.

    The complement basis is fixed as the standard basis vectors outside the
    pivot columns of ``s``, in index order, so results are deterministic.
    Each actor must preserve ``s``.
    """
    if s.ambient != l.dim:
        raise ShapeError("subspace ambient dimension does not match the algebra")
    actors = [l.check_vector(a) for a in actors]
    for a in actors:
        for row in s.basis:
            if not s.contains(l.bracket(a, row)):
                raise InvarianceError("actor does not preserve the subspace")
    comp = complement_indices(s)
    out = []
    for a in actors:
        cols = []
        for j in comp:
            r = s.reduce(l.bracket(a, l.basis_vector(j)))
            cols.append(tuple(r[c] for c in comp))
        if comp:
            out.append(Matrix.from_columns(l.field, cols))
        else:
            out.append(Matrix.zeros(l.field, 0, 0))
    return out


def quotient_algebra(l: LieAlgebra, s: Subspace) -> LieAlgebra:
    """Quotient of ``l`` by an ideal ``s``, on the complement basis."""
    if s.ambient != l.dim:
        raise ShapeError("subspace ambient dimension does not match the algebra")
    for i in range(l.dim):
        for row in s.basis:
            if not s.contains(l.bracket(l.basis_vector(i), row)):
                raise InvarianceError("subspace is not an ideal")
    comp = complement_indices(s)
    pos = {c: a for a, c in enumerate(comp)}
    table = {}
    for a, ca in enumerate(comp):
        for b in range(a + 1, len(comp)):
            r = s.reduce(l.bracket(l.basis_vector(ca), l.basis_vector(comp[b])))
            terms = [(pos[c], r[c]) for c in comp if r[c]]
            if terms:
                table[(a, b)] = terms
    return LieAlgebra(l.field, [l.names[c] for c in comp], table)


# ---------------------------------------------------------------------------
# builtin algebras
# ---------------------------------------------------------------------------

BUILTIN_NAMES = ("sl2", "sl3", "sl4", "witt5", "wittext5", "heisenberg")


def builtin(name: str, p: int) -> LieAlgebra:
    """Construct a builtin algebra over GF(p) (or the rationals for p = 0)."""
    if name not in BUILTIN_NAMES:
        raise CapabilityError(f"unknown builtin {name!r}; know {', '.join(BUILTIN_NAMES)}")
    if p in (2, 3):
        raise CapabilityError("builtin algebras are not provided in characteristic 2 or 3")
    field = Field(p)
    if name in ("witt5", "wittext5"):
        if p != 5:
            raise CapabilityError(f"{name} exists only in characteristic 5")
        return _witt(field, extended=(name == "wittext5"))
    if name == "sl2":
        return LieAlgebra(field, ("e", "f", "h"), {
            (0, 1): [(2, 1)],          # [e, f] = h
            (0, 2): [(0, -2)],         # [e, h] = -2e
            (1, 2): [(1, 2)],          # [f, h] = 2f
        })
    if name == "heisenberg":
        return LieAlgebra(field, ("a", "b", "c"), {(0, 1): [(2, 1)]})
    n = 3 if name == "sl3" else 4
    return _sl(field, n)


def _witt(field: Field, extended: bool) -> LieAlgebra:
    # Derivation basis z^i d/dz; powers outside the allowed exponent set
    # vanish.  The extension adds the exponent 6 and nothing else.
    exps = [0, 1, 2, 3, 4] + ([6] if extended else [])
    pos = {e: i for i, e in enumerate(exps)}
    names = tuple("Dz" if e == 0 else ("z*Dz" if e == 1 else f"z^{e}*Dz") for e in exps)
    table = {}
    for a in range(len(exps)):
        for b in range(a + 1, len(exps)):
            i, j = exps[a], exps[b]
            k = i + j - 1
            if k in pos:
                table[(a, b)] = [(pos[k], j - i)]
    return LieAlgebra(field, names, table)


def _sl(field: Field, n: int) -> LieAlgebra:
    # Basis: E_ij for i<j, then E_ij for i>j (both in lexicographic order),
    # then the Cartan elements H_k = E_kk - E_{k+1,k+1}.
    offdiag = [(i, j) for i in range(n) for j in range(n) if i < j]
    offdiag += [(i, j) for i in range(n) for j in range(n) if i > j]
    names = [f"E{i + 1}{j + 1}" for i, j in offdiag] + [f"H{k + 1}" for k in range(n - 1)]
    dim = len(offdiag) + n - 1

    def as_matrix(idx):
        m = [[0] * n for _ in range(n)]
        if idx < len(offdiag):
            i, j = offdiag[idx]
            m[i][j] = 1
        else:
            k = idx - len(offdiag)
            m[k][k] = 1
            m[k + 1][k + 1] = -1
        return m

    def expand(m):
        # Matrix with zero trace -> coordinates in the basis above.
        coords = [0] * dim
        for a, (i, j) in enumerate(offdiag):
            coords[a] = m[i][j]
        prefix = 0
        for k in range(n - 1):
            prefix += m[k][k]
            coords[len(offdiag) + k] = prefix
        return coords

    def commutator(a, b):
        return [[sum(a[i][k] * b[k][j] - b[i][k] * a[k][j] for k in range(n))
                 for j in range(n)] for i in range(n)]

    mats = [as_matrix(i) for i in range(dim)]
    table = {}
    for a in range(dim):
        for b in range(a + 1, dim):
            coords = expand(commutator(mats[a], mats[b]))
            terms = [(k, c) for k, c in enumerate(coords) if field.of(c)]
            if terms:
                table[(a, b)] = terms
    return LieAlgebra(field, names, table)


# ---------------------------------------------------------------------------
# canonical file format
# ---------------------------------------------------------------------------

def to_json_dict(l: LieAlgebra) -> dict:
    brackets = []
    for (i, j) in sorted(l.table):
        brackets.append({
            "i": i,
            "j": j,
            "terms": [[k, l.field.format(c)] for k, c in l.table[(i, j)]],
        })
    return {
        "characteristic": l.field.p,
        "dim": l.dim,
        "basis": list(l.names),
        "brackets": brackets,
    }


def to_json(l: LieAlgebra) -> str:
    return json.dumps(to_json_dict(l), indent=2) + "\n"


def from_json(text: str) -> LieAlgebra:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid JSON: {e}") from None
    if not isinstance(doc, dict):
        raise ParseError("algebra file must be a JSON object")
    for key in ("characteristic", "dim", "basis", "brackets"):
        if key not in doc:
            raise ParseError(f"missing key {key!r}")
    p = doc["characteristic"]
    if not isinstance(p, int) or isinstance(p, bool):
        raise ParseError("characteristic must be an integer")
    try:
        field = Field(p)
    except DomainError as e:
        raise ParseError(str(e)) from None
    n = doc["dim"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ParseError("dim must be a positive integer")
    basis = doc["basis"]
    if not isinstance(basis, list) or len(basis) != n or not all(isinstance(b, str) for b in basis):
        raise ParseError("basis must be a list of dim strings")
    table = {}
    if not isinstance(doc["brackets"], list):
        raise ParseError("brackets must be a list")
    for entry in doc["brackets"]:
        if not isinstance(entry, dict) or set(entry) != {"i", "j", "terms"}:
            raise ParseError('each bracket needs exactly the keys "i", "j", "terms"')
        i, j = entry["i"], entry["j"]
        if not (isinstance(i, int) and isinstance(j, int)):
            raise ParseError("bracket indices must be integers")
        if i >= j:
            raise ParseError(f"bracket pair ({i}, {j}) must have i < j")
        if not (0 <= i < n and 0 <= j < n):
            raise ParseError(f"bracket pair ({i}, {j}) out of range for dim {n}")
        if (i, j) in table:
            raise ParseError(f"duplicate bracket pair ({i}, {j})")
        if not isinstance(entry["terms"], list) or not entry["terms"]:
            raise ParseError(f"terms of ({i}, {j}) must be a nonempty list")
        terms = []
        seen = set()
        for t in entry["terms"]:
            if not (isinstance(t, list) and len(t) == 2 and isinstance(t[0], int)
                    and isinstance(t[1], str)):
                raise ParseError(f'terms of ({i}, {j}) must be [index, "coeff"] pairs')
            k, coeff = t
            if not 0 <= k < n:
                raise ParseError(f"term index {k} out of range for dim {n}")
            if k in seen:
                raise ParseError(f"duplicate term index {k} in bracket ({i}, {j})")
            seen.add(k)
            c = field.parse(coeff)
            if not c:
                raise ParseError(f"zero coefficient stored in bracket ({i}, {j})")
            terms.append((k, c))
        table[(i, j)] = terms
    return LieAlgebra(field, basis, table)


def parse_coords(field: Field, text: str, dim: int):
    """Comma-separated canonical coefficients -> vector."""
    parts = [s.strip() for s in text.split(",")]
    if len(parts) != dim:
        raise ParseError(f"expected {dim} coordinates, got {len(parts)}")
    return tuple(field.parse(s) for s in parts)


def format_vector(field: Field, v) -> list:
    return [field.format(c) for c in v]
