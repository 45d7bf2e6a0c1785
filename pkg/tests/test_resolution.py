import itertools
import random
from fractions import Fraction as F

import pytest

from alcove.fusion import LevelRepElt, level_weights, project_to_fusion
from alcove.lie import b_flat, b_sharp, build_lie_data
from alcove.resolution import (
    ChainElt,
    OrbitComplex,
    certificate_json,
    chain_from_json,
    chain_to_json,
    verify_certificate,
)


def all_faces(data):
    nodes = range(data.rank + 1)
    for size in range(1, data.rank + 2):
        yield from itertools.combinations(nodes, size)


# -- bases ---------------------------------------------------------------------

def test_basis_examples():
    oc = OrbitComplex(build_lie_data("A1"), (0, 1))
    assert oc.basis_elements(1, 0) == [((0, 1), (F(1, 4),))]
    assert oc.basis_elements(0, 0) == [((0,), (F(1, 4),)), ((1,), (F(1, 4),))]
    assert oc.basis_elements(2, 4) == []
    assert oc.basis_elements(-1, 4) == []


def test_element_rejects_non_interior():
    oc = OrbitComplex(build_lie_data("A1"), (0, 1))
    with pytest.raises(ValueError):
        oc.element((0,), (F(-1, 4),))


# -- boundary -------------------------------------------------------------------

def test_boundary_examples():
    oc = OrbitComplex(build_lie_data("A1"), (0, 1))
    d = oc.boundary(oc.element((0, 1), (F(1, 4),)))
    assert d.terms == {((1,), (F(1, 4),)): 1, ((0,), (F(1, 4),)): -1}
    d = oc.boundary(oc.element((0, 1), (F(-1, 4),)))
    assert d.terms == {((1,), (F(-1, 4),)): 1, ((0,), (F(1, 4),)): 1}


def test_boundary_squared_zero():
    for name, n in [("A1", 6), ("A2", 4), ("C2", 4), ("A3", 2), ("B3", 2)]:
        data = build_lie_data(name)
        for J in all_faces(data):
            oc = OrbitComplex(data, J)
            for p in range(2, data.rank + 1):
                for key in oc.basis_elements(p, n):
                    c = ChainElt(oc.J, p, {key: 1})
                    assert not oc.boundary(oc.boundary(c))


def test_boundary_degree_zero_rejected():
    oc = OrbitComplex(build_lie_data("A1"), (0, 1))
    with pytest.raises(ValueError):
        oc.boundary(oc.element((0,), (F(1, 4),)))


# -- augmentation -----------------------------------------------------------------

def test_augmentation_values():
    oc = OrbitComplex(build_lie_data("A1"), (0, 1))
    assert oc.augmentation(oc.element((0,), (F(1, 4),))) == 1
    # length 1 point
    assert oc.augmentation(oc.element((0,), (F(3, 4),))) == -1


def test_augmentation_kills_boundaries():
    for name in ["A1", "A2"]:
        data = build_lie_data(name)
        full = tuple(range(data.rank + 1))
        oc = OrbitComplex(data, full)
        for key in oc.basis_elements(1, 4):
            c = ChainElt(oc.J, 1, {key: 1})
            assert oc.augmentation(oc.boundary(c)) == 0


def test_augmentation_zero_map_off_full_face():
    oc = OrbitComplex(build_lie_data("A1"), (0,))
    for key in oc.basis_elements(0, 3):
        assert oc.augmentation(ChainElt(oc.J, 0, {key: 1})) == 0


# -- homotopy and the chain maps ----------------------------------------------------

def test_homotopy_examples():
    oc = OrbitComplex(build_lie_data("A1"), (0, 1))
    x = (F(1, 4),)
    assert oc.homotopy(1, oc.element((0,), x)).terms == {((0, 1), x): -1}
    assert oc.homotopy(0, oc.element((1,), x)).terms == {((0, 1), x): 1}
    assert not oc.homotopy(0, oc.element((0,), x))


def test_homotopy_preserves_lengths():
    data = build_lie_data("A2")
    oc = OrbitComplex(data, (0, 1, 2))
    for key in oc.basis_elements(0, 3):
        h = oc.homotopy(2, ChainElt(oc.J, 0, {key: 1}))
        for _, x in h.terms:
            assert oc.length_of(x) == oc.length_of(key[1])


def test_deform_is_chain_map():
    # A_i d = d A_i on basis elements
    for name, n in [("A2", 4), ("C2", 3)]:
        data = build_lie_data(name)
        for J in [(0,), tuple(range(data.rank + 1))]:
            oc = OrbitComplex(data, J)
            for p in range(1, data.rank + 1):
                for key in oc.basis_elements(p, n):
                    c = ChainElt(oc.J, p, {key: 1})
                    for i in range(data.rank + 1):
                        assert oc.boundary(oc.deform(i, c)) == oc.deform(i, oc.boundary(c))


def test_deform_all_lowers_length_interior():
    for name, n in [("A2", 4), ("C2", 4)]:
        data = build_lie_data(name)
        for J in [(0,), tuple(range(data.rank + 1))]:
            oc = OrbitComplex(data, J)
            for p in range(1, data.rank):
                for key in oc.basis_elements(p, n):
                    c = ChainElt(oc.J, p, {key: 1})
                    out = oc.deform_all(c)
                    bound = oc.length_of(key[1])
                    # strict drop; in particular A kills length-0 elements
                    for (_, x), _coeff in out.terms.items():
                        assert oc.length_of(x) < bound


def test_deform_case_split():
    # i in I with x outside the smaller cone: A_i fixes the element modulo
    # strictly shorter keys
    data = build_lie_data("A2")
    oc = OrbitComplex(data, (0, 1, 2))
    from alcove.affine import cone_position

    checked = 0
    for p in (1, 2):
        for I, x in oc.basis_elements(p, 3):
            for i in I:
                sub = tuple(j for j in I if j != i)
                if not sub:
                    continue
                if cone_position(data, x, sub) == "interior":
                    continue
                c = ChainElt(oc.J, p, {(I, x): 1})
                diff = oc.deform(i, c) - c
                for (_, y), _ in diff.terms.items():
                    assert oc.length_of(y) < oc.length_of(x)
                checked += 1
    assert checked > 0


# -- contraction ------------------------------------------------------------------

def test_contract_zero():
    oc = OrbitComplex(build_lie_data("A2"), (0, 1, 2))
    out = oc.contract_cycle(ChainElt(oc.J, 1))
    assert not out and out.degree == 2


def test_contract_rejects_noncycle():
    oc = OrbitComplex(build_lie_data("A2"), (0, 1, 2))
    key = oc.basis_elements(1, 2)[0]
    with pytest.raises(ValueError):
        oc.contract_cycle(ChainElt(oc.J, 1, {key: 1}))


def test_contract_rejects_bad_degree():
    oc = OrbitComplex(build_lie_data("A1"), (0, 1))
    with pytest.raises(ValueError):
        oc.contract_cycle(ChainElt(oc.J, 1))


def test_contract_boundaries_of_random_chains():
    rng = random.Random(99)
    data = build_lie_data("A2")
    oc = OrbitComplex(data, (0, 1, 2))
    basis2 = oc.basis_elements(2, 3)
    for _ in range(15):
        picks = rng.sample(basis2, min(3, len(basis2)))
        b0 = ChainElt(oc.J, 2, {k: rng.randint(-2, 2) for k in picks})
        c = oc.boundary(b0)
        b = oc.contract_cycle(c)
        assert oc.boundary(b) == c


def test_contract_kernel_cycles():
    rng = random.Random(5)
    for name, J, n in [("A2", (0, 1, 2), 4), ("C2", (0, 2), 3), ("G2", (0, 1, 2), 3)]:
        data = build_lie_data(name)
        oc = OrbitComplex(data, J)
        for _ in range(8):
            c = oc.random_cycle(1, n, rng)
            b = oc.contract_cycle(c)
            assert oc.boundary(b) == c


# -- truncated complex ---------------------------------------------------------------

def test_truncated_matrix_example():
    oc = OrbitComplex(build_lie_data("A1"), (0, 1))
    tc = oc.truncated(0)
    assert tc.matrices[1] == [[-1], [1]]


def test_truncated_basis_sizes_match_enumeration():
    from alcove.affine import cone_position, orbit_up_to_length

    data = build_lie_data("A1")
    oc = OrbitComplex(data, (0, 1))
    tc = oc.truncated(2)
    pts = orbit_up_to_length(data, (0, 1), 2)
    for p in (0, 1):
        expect = 0
        for I in itertools.combinations((0, 1), p + 1):
            expect += sum(
                1 for op in pts if cone_position(data, op.point, I) == "interior"
            )
        assert len(tc.bases[p]) == expect


# -- homology reports ------------------------------------------------------------------

def test_homology_a1_all_faces():
    data = build_lie_data("A1")
    for J in [(0,), (1,), (0, 1)]:
        rep = OrbitComplex(data, J).homology_report(4)
        assert rep["all_ok"], rep
        assert rep["H0"] == ("Z" if J == (0, 1) else "0")


def test_homology_examples():
    rep = OrbitComplex(build_lie_data("A2"), (0,)).homology_report(3)
    assert rep["all_ok"]
    assert [d["verdict"] for d in rep["degrees"]] == ["H0=0", "exact", "injective"]
    rep = OrbitComplex(build_lie_data("A2"), (0, 1, 2)).homology_report(3)
    assert rep["all_ok"]
    assert rep["degrees"][0]["verdict"] == "H0=Z"


def test_homology_requires_positive_bound():
    with pytest.raises(ValueError):
        OrbitComplex(build_lie_data("A1"), (0, 1)).homology_report(0)


# -- unit chain map and the augmentation vs fusion dictionary ---------------------------

def test_augmentation_matches_fusion_projection():
    # over the regular orbit of a rho-shifted level weight, the degree-0
    # augmentation computes the sign of the projection to the fusion ring
    for name, k in [("A1", 2), ("A2", 1)]:
        data = build_lie_data(name)
        m = k + data.dual_coxeter
        full = tuple(range(data.rank + 1))
        for mu in level_weights(data, k):
            shifted = tuple(x + 1 for x in mu)
            base = tuple(x / m for x in b_sharp(data, shifted))
            oc = OrbitComplex(data, full, base=base)
            for I, x in oc.basis_elements(0, 3):
                nu = tuple(m * v for v in b_flat(data, x))
                assert all(v.denominator == 1 for v in nu)
                nu = tuple(int(v) for v in nu)
                phi = LevelRepElt(data, I, k, {tuple(a - 1 for a in nu): 1})
                proj = project_to_fusion(phi)
                sign = (-1) ** oc.length_of(x)
                assert proj.terms == {mu: sign}
                assert oc.augmentation(ChainElt(oc.J, 0, {(I, x): 1})) == sign


# -- certificates --------------------------------------------------------------------

def test_certificate_roundtrip():
    rng = random.Random(7)
    data = build_lie_data("A2")
    oc = OrbitComplex(data, (0, 1, 2))
    c = oc.random_cycle(1, 3, rng)
    b = oc.contract_cycle(c)
    text = certificate_json(oc, c, b)
    result = verify_certificate(text)
    assert result["ok"]


def test_certificate_tamper_detected():
    import json as _json

    rng = random.Random(8)
    data = build_lie_data("A2")
    oc = OrbitComplex(data, (0, 1, 2))
    c = oc.random_cycle(1, 3, rng)
    while not c:
        c = oc.random_cycle(1, 3, rng)
    b = oc.contract_cycle(c)
    doc = _json.loads(certificate_json(oc, c, b))
    doc["bounding"][0]["coeff"] += 1
    with pytest.raises(ValueError):
        verify_certificate(_json.dumps(doc))
    doc = _json.loads(certificate_json(oc, c, b))
    doc["cycle"][0]["x"] = ["1/5", "1/5"]
    with pytest.raises(ValueError):
        verify_certificate(_json.dumps(doc))


def test_chain_json_roundtrip():
    oc = OrbitComplex(build_lie_data("A1"), (0, 1))
    c = oc.element((0, 1), (F(-1, 4),), 3)
    doc = chain_to_json(c)
    back = chain_from_json(oc.J, 1, doc)
    assert back == c


def test_deform_preserves_cycles():
    rng = random.Random(21)
    data = build_lie_data("A2")
    oc = OrbitComplex(data, (0, 1, 2))
    for _ in range(6):
        c = oc.random_cycle(1, 3, rng)
        for i in range(data.rank + 1):
            moved = oc.deform(i, c)
            assert not oc.boundary(moved)
            # on a cycle, A_i c = c - d(h_i c)
            assert moved == c - oc.boundary(oc.homotopy(i, c))


def test_chain_key_normalization():
    oc = OrbitComplex(build_lie_data("A1"), (0, 1))
    x = (F(1, 4),)
    a = ChainElt(oc.J, 1, {((1, 0), x): 2})
    b = ChainElt(oc.J, 1, {((0, 1), x): 2})
    assert a == b
    merged = ChainElt(oc.J, 1, {((1, 0), x): 2, ((0, 1), x): -2})
    assert not merged


def test_homology_independent_of_base_point():
    # any interior point of the face gives the same truncated complex shape
    data = build_lie_data("A2")
    full = (0, 1, 2)
    mu = (1, 0)
    m = 1 + data.dual_coxeter
    base = tuple(x / m for x in b_sharp(data, tuple(a + 1 for a in mu)))
    default = OrbitComplex(data, full).homology_report(3)
    shifted = OrbitComplex(data, full, base=base).homology_report(3)
    assert default["all_ok"] and shifted["all_ok"]
    assert [d["dim"] for d in default["degrees"]] == [
        d["dim"] for d in shifted["degrees"]
    ]
    assert [d["rank_ker"] for d in default["degrees"]] == [
        d["rank_ker"] for d in shifted["degrees"]
    ]


def test_homology_larger_truncations():
    # exactness must not be an artifact of small bounds; the alternating sum
    # of dimensions then equals 1 (full face) or 0 (proper face)
    configs = [
        ("A2", (0, 1, 2), 6, 1),
        ("A2", (1,), 6, 0),
        ("C2", (0, 1, 2), 6, 1),
        ("G2", (0, 1, 2), 4, 1),
        ("G2", (1, 2), 4, 0),
        ("B3", (0, 1, 2, 3), 3, 1),
    ]
    for name, J, n, euler in configs:
        rep = OrbitComplex(build_lie_data(name), J).homology_report(n)
        assert rep["all_ok"], (name, J, rep)
        dims = [d["dim"] for d in rep["degrees"]]
        assert sum((-1) ** i * d for i, d in enumerate(dims)) == euler
