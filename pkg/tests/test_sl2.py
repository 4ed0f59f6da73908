import random

import pytest

from lieext import (
    CapabilityError,
    ContradictionError,
    HypothesisError,
    LieAlgebra,
    Field,
    builtin,
    classify_element,
    dichotomy,
    find_witness,
    h_grading,
    make_triple,
    quadraticity_check,
    quotient_algebra,
    center,
    complete_sl2,
)
from lieext.linalg import kernel, rref, vec_add, vec_is_zero, vec_scale
from lieext.sl2 import restrict_operator

from conftest import rand_vec

# (builtin, characteristic, index or coords of a designated extremal element)
SIMPLE_CASES = [
    ("sl2", 5, (1, 0, 0)),
    ("sl2", 7, (1, 0, 0)),
    ("sl3", 5, None),
    ("sl3", 7, None),
    ("sl4", 5, None),
    ("sl4", 7, None),
    ("witt5", 5, "witt_x"),
]


def designated(name, p):
    l = builtin(name, p)
    if name == "witt5":
        return l, (0, 0, l.field.of(-1), 0, 0)
    if name == "sl2":
        return l, l.basis_vector(0)
    if name == "sl3":
        return l, l.basis_vector(1)   # E13
    return l, l.basis_vector(2)       # E14 in sl4


def witnesses(l, x, functional, count, seed=991):
    """Seeded admissible witnesses: vectors w with f_x(w) = -2."""
    f = l.field
    rng = random.Random(seed)
    i0 = next(i for i, c in enumerate(functional) if c)
    w0 = vec_scale(f, f.div(f.of(-2), functional[i0]), l.basis_vector(i0))
    out = []
    while len(out) < count:
        off = rand_vec(f, l.dim, rng)
        f_off = f.zero
        for a, b in zip(functional, off):
            f_off = f.add(f_off, f.mul(a, b))
        # w = off + (1 - f(off)/-2) * w0 has functional value exactly -2
        w = vec_add(f, off, vec_scale(f, f.sub(f.one, f.div(f_off, f.of(-2))), w0))
        out.append(w)
    return out


# -- witness search -----------------------------------------------------------

def test_find_witness_witt5(witt5):
    f = witt5.field
    x = (0, 0, f.of(-1), 0, 0)
    st = classify_element(witt5, x)
    w = find_witness(witt5, x, st.functional)
    assert w == witt5.basis_vector(0)  # (-2 / -2) * Dz


def test_find_witness_sl3_lands_on_opposite_root():
    l = builtin("sl3", 7)
    x = l.basis_vector(1)
    st = classify_element(l, x)
    nz = [i for i, c in enumerate(st.functional) if c]
    assert nz == [4]  # only E31 pairs with E13
    w = find_witness(l, x, st.functional)
    assert w == l.basis_vector(4)


def test_find_witness_rejects_sandwich():
    l = builtin("heisenberg", 5)
    st = classify_element(l, l.basis_vector(0))
    with pytest.raises(HypothesisError):
        find_witness(l, l.basis_vector(0), st.functional)


# -- the triple construction ---------------------------------------------------

def test_completion_on_witt5_reproduces_known_triple(witt5):
    f = witt5.field
    x = (0, 0, f.of(-1), 0, 0)
    w = witt5.basis_vector(0)
    triple, cert = complete_sl2(witt5, x, w)
    assert triple.h == (0, 2, 0, 0, 0)          # 2z Dz
    assert triple.y == witt5.basis_vector(0)    # Dz
    assert vec_is_zero(cert.x1) and vec_is_zero(cert.w1)


def test_completion_on_sl3():
    l = builtin("sl3", 7)
    x, w = l.basis_vector(1), l.basis_vector(4)
    triple, cert = complete_sl2(l, x, w)
    assert triple.y == w                         # already a perfect partner
    assert triple.h == (0, 0, 0, 0, 0, 0, 1, 1)  # E11 - E33 = H1 + H2
    assert vec_is_zero(cert.x1)


def test_completion_rejects_bad_witness(witt5):
    f = witt5.field
    x = (0, 0, f.of(-1), 0, 0)
    with pytest.raises(HypothesisError):
        complete_sl2(witt5, x, witt5.basis_vector(1))  # f_x(z*Dz) = 0 != -2


def test_completion_rejects_non_extremal():
    l = builtin("sl2", 5)
    with pytest.raises(HypothesisError):
        complete_sl2(l, l.basis_vector(2), l.basis_vector(0))


def test_completion_characteristic_guard():
    f = Field(3)
    l = LieAlgebra(f, ("a", "b"), {(0, 1): [(0, 1)]})
    with pytest.raises(CapabilityError):
        complete_sl2(l, l.basis_vector(0), l.basis_vector(1))


@pytest.mark.parametrize("name,p,_x", SIMPLE_CASES)
def test_completion_property_suite(name, p, _x):
    """Fifty seeded admissible witnesses per algebra: the construction always
    lands on a verified triple, with (ad_h + 2) invertible on the centralizer
    and ad_h annihilated there by t(t-1)(t-2)."""
    l, x = designated(name, p)
    f = l.field
    st = classify_element(l, x)
    assert st.kind == "extremal_nonsandwich"
    c = kernel(l.ad(x))
    for w in witnesses(l, x, st.functional, 50):
        triple, cert = complete_sl2(l, x, w)
        assert triple.x == x
        assert vec_add(f, cert.w, cert.w1) == triple.y
        # the triple depends on w, the relations never do (checked inside
        # complete_sl2; re-check one relation explicitly)
        assert l.bracket(triple.x, triple.y) == triple.h
        h_on_c = restrict_operator(l.ad(triple.h), c)
        shifted = h_on_c.add_scalar_diag(f.of(2))
        assert rref(shifted)[1] == c.dim
        poly = h_on_c.mul(h_on_c.add_scalar_diag(f.of(-1))).mul(h_on_c.add_scalar_diag(f.of(-2)))
        assert poly.is_zero()


def test_make_triple_checks_relations(witt5):
    f = witt5.field
    x = (0, 0, f.of(-1), 0, 0)
    t = make_triple(witt5, x, witt5.basis_vector(0))
    assert t.h == (0, 2, 0, 0, 0)
    with pytest.raises(HypothesisError):
        make_triple(witt5, x, witt5.basis_vector(1))
    with pytest.raises(HypothesisError):
        make_triple(witt5, x, witt5.zero())


# -- grading --------------------------------------------------------------------

def pipeline_triple(name, p):
    l, x = designated(name, p)
    st = classify_element(l, x)
    w = find_witness(l, x, st.functional)
    triple, _ = complete_sl2(l, x, w)
    return l, triple


def test_grading_witt5_components(witt5):
    l, t = pipeline_triple("witt5", 5)
    g = h_grading(l, t)
    assert g.dims() == {-2: 1, -1: 1, 0: 1, 1: 1, 2: 1}
    assert g.components[2].basis[0] == l.basis_vector(0)    # Dz
    assert g.components[1].basis[0] == l.basis_vector(3)    # z^3 Dz
    assert g.components[0].basis[0] == l.basis_vector(1)    # z Dz
    assert g.components[-1].basis[0] == l.basis_vector(4)   # z^4 Dz
    assert g.components[-2].basis[0] == l.basis_vector(2)   # z^2 Dz
    assert not g.z_graded  # [L1, L2] lands in L_-2 because 3 = -2 mod 5


def test_grading_sl3_dims():
    l, t = pipeline_triple("sl3", 7)
    g = h_grading(l, t)
    assert g.dims() == {-2: 1, -1: 2, 0: 2, 1: 2, 2: 1}
    assert g.z_graded


def test_grading_sl2_dims():
    l, t = pipeline_triple("sl2", 5)
    g = h_grading(l, t)
    assert g.dims() == {-2: 1, -1: 0, 0: 1, 1: 0, 2: 1}


@pytest.mark.parametrize("name,p,_x", SIMPLE_CASES)
def test_grading_suite(name, p, _x):
    """Direct sum, minimal polynomial, kernel stabilization, extreme lines,
    and bracket compatibility with lifted labels."""
    l, t = pipeline_triple(name, p)
    f = l.field
    g = h_grading(l, t)
    assert sum(g.components[i].dim for i in (-2, -1, 0, 1, 2)) == l.dim
    adh = l.ad(t.h)
    poly = adh
    for s in (-1, 1, -2, 2):
        poly = poly.mul(adh.add_scalar_diag(f.of(s)))
    assert poly.is_zero()
    assert kernel(adh.mul(adh)) == kernel(adh)
    assert g.components[-2].dim == 1 and g.components[-2].contains(t.x)
    assert g.components[2].dim == 1 and g.components[2].contains(t.y)
    from lieext.sl2 import lift_label

    for i in (-2, -1, 0, 1, 2):
        for j in (-2, -1, 0, 1, 2):
            target = lift_label(f, i, j)
            for u in g.components[i].basis:
                for v in g.components[j].basis:
                    w = l.bracket(u, v)
                    if target is None:
                        assert vec_is_zero(w)
                    else:
                        assert g.components[target].contains(w)


def test_grading_rejects_non_diagonalizable():
    # Witt structure constants reinterpreted over F7: the eigenvalue -4 of
    # -ad_h is not one of the five labels, so the decomposition cannot fill L.
    f = Field(7)
    table = {}
    for a in range(5):
        for b in range(a + 1, 5):
            k = a + b - 1
            if 0 <= k <= 4:
                table[(a, b)] = [(k, b - a)]
    l = LieAlgebra(f, ["b0", "b1", "b2", "b3", "b4"], table)
    x = (0, 0, f.of(-1), 0, 0)
    st = classify_element(l, x)
    w = find_witness(l, x, st.functional)
    triple, _ = complete_sl2(l, x, w)
    with pytest.raises(HypothesisError):
        h_grading(l, triple)


# -- quadraticity ------------------------------------------------------------------

@pytest.mark.parametrize("name,p,_x", SIMPLE_CASES)
def test_quadraticity_across_builtins(name, p, _x):
    l, t = pipeline_triple(name, p)
    assert quadraticity_check(l, t)


def test_quadraticity_on_central_quotient_of_extension(wittext5):
    q = quotient_algebra(wittext5, center(wittext5))
    f = q.field
    x = (0, 0, f.of(-1), 0, 0)
    st = classify_element(q, x)
    triple, _ = complete_sl2(q, x, find_witness(q, x, st.functional))
    assert quadraticity_check(q, triple)


def test_quadraticity_vacuous_when_algebra_is_the_triple_span():
    l, t = pipeline_triple("sl2", 7)
    assert quadraticity_check(l, t)  # zero-dimensional quotient


# -- dichotomy -----------------------------------------------------------------------

def test_dichotomy_witt5_exceptional(witt5):
    l, t = pipeline_triple("witt5", 5)
    g = h_grading(l, t)
    res = dichotomy(l, t, g)
    assert res.branch == "exceptional"
    assert res.v == (0, 0, 0, 0, 2)  # 2 z^4 Dz
    assert l.bracket(t.y, l.bracket(t.y, res.v)) == t.x


def test_dichotomy_sl3_regular_at_both_characteristics():
    for p in (5, 7):
        l, t = pipeline_triple("sl3", p)
        g = h_grading(l, t)
        res = dichotomy(l, t, g)
        assert res.branch == "regular"
        assert res.checks == {
            "y_extremal": True,
            "x_maps_L1_onto_L-1": True,
            "y_maps_L-1_onto_L1": True,
            "integer_grading": True,
        }
        assert "treated as a typo" in res.note


def test_dichotomy_contradiction_on_corrupt_tensor():
    # A non-Jacobi tensor over F7 engineered so that every earlier stage
    # passes but [y, [y, L_-1]] is nonzero, which is impossible away from
    # characteristic 5.
    f = Field(7)
    l = LieAlgebra(f, ["x", "y", "h", "m", "n"], {
        (0, 1): [(2, 1)],
        (0, 2): [(0, -2)],
        (1, 2): [(1, 2)],
        (1, 3): [(4, 1)],
        (1, 4): [(0, 1)],
        (2, 3): [(3, 1)],
        (2, 4): [(4, -1)],
    })
    assert not l.validate().ok
    x = l.basis_vector(0)
    st = classify_element(l, x)
    triple, _ = complete_sl2(l, x, find_witness(l, x, st.functional))
    g = h_grading(l, triple)
    with pytest.raises(ContradictionError):
        dichotomy(l, triple, g)
