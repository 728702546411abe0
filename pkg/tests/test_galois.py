import pickle

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ebcodes.galois import (
    BinaryField,
    Coordinatizer,
    Embedding,
    FieldElement,
    FieldMismatchError,
    NotInSubfieldError,
    ReducibleModulusError,
    additive_subgroups,
    build_tower,
    field_arith,
    field_create,
    field_from_json,
    find_factor,
    is_irreducible,
    polar_decompose,
    poly_str,
    rel_norm,
    rel_trace,
    roots_of_unity,
    smallest_irreducible,
    subfield_elements,
    unit_circle,
)

import oracles

# smallest odd irreducible of each degree, found by the oracle's trial search
MODULI = {1: 0b11, 2: 0b111, 3: 0b1011, 4: 0b10011, 5: 0b100101, 6: 0b1000011, 7: 0b10000011, 8: 0x11B}


@pytest.mark.parametrize("m", sorted(MODULI))
def test_default_modulus(m):
    assert smallest_irreducible(m) == MODULI[m]
    assert field_create(m).modulus == MODULI[m]
    assert oracles.irreducible_by_search(MODULI[m])


def test_irreducibility_matches_search():
    for f in range(2, 1 << 9):
        assert is_irreducible(f) == oracles.irreducible_by_search(f), f


def test_reducible_modulus_reports_factor():
    with pytest.raises(ReducibleModulusError) as exc:
        field_create(2, 0b101)
    assert exc.value.factor == 0b11
    assert find_factor(0b101) == 0b11
    with pytest.raises(ReducibleModulusError):
        field_create(4, 0b10101)


def test_poly_str():
    assert poly_str(0x11B) == "x^8 + x^4 + x^3 + x + 1"
    assert poly_str(0b11) == "x + 1"


@pytest.mark.parametrize("m", [1, 2, 3, 4, 5, 6])
def test_log_tables_agree_with_polynomial_multiply(m):
    f = field_create(m)
    ref = oracles.NaiveField(m, f.modulus)
    table = f.mul_table()
    for a in range(f.order):
        for b in range(f.order):
            want = ref.mul(a, b)
            assert f.mul(a, b) == want
            assert f.mul_poly(a, b) == want
            assert table[a, b] == want


def test_gf256_nonprimitive_modulus():
    f = field_create(8)
    assert f.primitive == 3
    assert f.mul_order(2) == 51
    a = np.arange(256)
    b = (a * 7 + 3) % 256
    ref = oracles.NaiveField(8, 0x11B)
    assert f.mul_vec(a, b).tolist() == [ref.mul(int(x), int(y)) for x, y in zip(a, b)]


@pytest.mark.parametrize("m", [2, 3, 4, 8])
def test_primitive_generates(m):
    f = field_create(m)
    g = f.primitive
    assert sorted(f.pow(g, i) for i in range(f.order - 1)) == list(range(1, f.order))
    assert all(f.mul_order(x) > 1 for x in range(2, g) if x) or g == 2


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 8), st.data())
def test_field_axioms(m, data):
    f = field_create(m)
    el = st.integers(0, f.order - 1)
    a, b, c = data.draw(el), data.draw(el), data.draw(el)
    assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))
    assert f.mul(a, f.mul(b, c)) == f.mul(f.mul(a, b), c)
    assert f.mul(f.sqrt(a), f.sqrt(a)) == a
    if a:
        assert f.mul(a, f.inv(a)) == 1
        assert f.div(f.mul(a, b), a) == b
        assert f.exp(f.log(a)) == a
        assert f.pow(a, f.order - 1) == 1
        assert f.pow(a, -1) == f.inv(a)


def test_zero_has_no_inverse():
    f = field_create(4)
    with pytest.raises(ZeroDivisionError):
        f.inv(0)
    with pytest.raises(ZeroDivisionError):
        f.div(3, 0)


def test_vector_ops_match_scalar():
    f = field_create(5)
    a = np.arange(32)
    assert f.inv_vec(a[1:]).tolist() == [f.inv(int(x)) for x in a[1:]]
    assert f.pow_vec(a, 7).tolist() == [f.pow(int(x), 7) for x in a]


def test_field_element_operators_and_mismatch():
    f = field_create(4)
    a, b = f.element(5), f.element(9)
    assert int(a + b) == 5 ^ 9
    assert int(a * b) == f.mul(5, 9)
    assert int(a / b) == f.div(5, 9)
    assert int(a ** 3) == f.pow(5, 3)
    assert int(-a) == 5
    assert field_arith(a, b, "mul") == a * b
    assert field_arith(a, None, "sqrt") * field_arith(a, None, "sqrt") == a
    with pytest.raises(FieldMismatchError):
        a + field_create(3).element(1)
    with pytest.raises(ValueError):
        FieldElement(f, 16)


def test_json_and_pickle_roundtrip():
    f = field_create(8)
    assert field_from_json(f.to_json()) == f
    assert pickle.loads(pickle.dumps(f)) == f
    e = f.element(77)
    assert FieldElement.from_json(e.to_json()) == e
    t = build_tower(2, with_top=True)
    assert pickle.loads(pickle.dumps(t)) is t


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_embedding_is_field_homomorphism(m):
    F, K = field_create(m), field_create(2 * m)
    e = Embedding(F, K)
    for a in F.elements():
        assert e.preimage(e(a)) == a
        for b in F.elements():
            assert e(F.mul(a, b)) == K.mul(e(a), e(b))
            assert e(a ^ b) == e(a) ^ e(b)
    image = set(e.image())
    assert image == {x for x in K.elements() if K.pow(x, F.order) == x}
    outside = next(x for x in K.elements() if x not in image)
    with pytest.raises(NotInSubfieldError):
        e.preimage(outside)


def test_embedding_composition():
    t = build_tower(2, with_top=True)
    for a in t.base.elements():
        assert t.embed_F_to_E(a) == t.embed_K_to_E(t.embed_F_to_K(a))


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 3), st.data())
def test_coordinates_roundtrip_any_basis(m, data):
    t = build_tower(m, with_top=True)
    E = t.top
    for x in range(E.order):
        assert t.coord_E.recompose(t.coord_E(x)) == x
    # an alternative F-basis: scale the standard one by a nonzero element
    s = data.draw(st.integers(1, E.order - 1))
    alt = Coordinatizer(t.embed_F_to_E, [E.mul(s, b) for b in t.coord_E.basis])
    xs = np.arange(E.order)
    assert alt.recompose_vec(alt.vec(xs)).tolist() == xs.tolist()


def test_coordinatizer_rejects_dependent_basis():
    t = build_tower(2)
    with pytest.raises(ValueError):
        Coordinatizer(t.embed_F_to_K, (1, t.embed_F_to_K(t.base.primitive)))


def test_unit_circle_q4():
    t = build_tower(2)
    S = unit_circle(t)
    K = t.mid
    assert len(S) == 5
    g = K.primitive
    assert set(S) == {K.pow(g, 3 * i) for i in range(5)}
    assert set(S) == set(roots_of_unity(5, K))
    assert all(rel_norm(u, t) == 1 for u in S)


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_polar_decomposition_roundtrip_and_unique(m):
    t = build_tower(m)
    K = t.mid
    S = set(t.unit_circle)
    pairs = set()
    for x in range(1, K.order):
        lam, u = polar_decompose(x, t)
        assert lam != 0 and u in S
        assert K.mul(t.embed_F_to_K(lam), u) == x
        pairs.add((lam, u))
    # (q-1)(q+1) distinct pairs cover K* once each: uniqueness
    assert len(pairs) == K.order - 1
    with pytest.raises(ValueError):
        polar_decompose(0, t)


@pytest.mark.parametrize("m", [1, 2, 3])
def test_trace_and_norm(m):
    t = build_tower(m, with_top=True)
    F, K, E = t.base, t.mid, t.top
    for x in range(K.order):
        for y in range(0, K.order, 3):
            assert rel_trace(x ^ y, t) == rel_trace(x, t) ^ rel_trace(y, t)
            assert rel_norm(K.mul(x, y), t) == F.mul(rel_norm(x, t), rel_norm(y, t))
    for x in range(E.order):
        inner = rel_norm(x, t, "E/K")
        assert rel_norm(x, t, "E/F") == rel_norm(inner, t, "K/F")
        assert t.embed_K_to_E(rel_trace(x, t, "E/K")) == x ^ E.pow(x, t.q ** 2)
    with pytest.raises(ValueError):
        rel_trace(1, t, "E/Q")


def test_subfields_and_subgroups():
    f = field_create(4)
    assert len(subfield_elements(f, 4)) == 4
    with pytest.raises(Exception):
        subfield_elements(f, 8)
    groups = additive_subgroups(f.elements())
    # Gaussian binomials [4,k]_2 summed over k: 1 + 15 + 35 + 15 + 1
    assert len(groups) == 67
    assert [len(g) for g in groups][:2] == [1, 2]


def test_tower_requires_top():
    t = build_tower(2)
    with pytest.raises(Exception):
        t.coords_E(1)
