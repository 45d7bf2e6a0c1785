"""The per-orbit chain complex attached to a face J of the alcove.

Fix a face J and let V be the affine Weyl orbit of its distinguished interior
point.  The degree-p chain group has basis beta_I(x) indexed by subsets I of
the nodes with |I| = p+1 and orbit points x interior to the cone of I.  The
boundary map is

    d beta_I(x) = sum_r (-1)^{r + len(u_r)} beta_{I - {i_r}}(u_r x)

where u_r is the unique element of W_{I - {i_r}} moving x into the closed
cone of I - {i_r}; terms landing on a cone wall vanish.  The module also
provides the augmentation, the degree-raising operators h_i, the chain maps
A_i = id - h_i d - d h_i, a certified cycle-contraction routine built from
them, and exact homology of length-truncated subcomplexes via integer Smith
normal form.

All of this is independent of a level: the complex only sees the orbit
combinatorics of V.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .affine import (
    OrbitContext,
    cone_position,
    crossing_length,
    reduce_point_to_alcove,
    reduce_point_to_cone,
)
from .intlinalg import invariant_factors, kernel_basis, rank
from .lie import CartanPoint, FaceIndex, LieData, _check_face_index, _frac_str

ChainKey = tuple[FaceIndex, CartanPoint]


class ChainElt:
    """A finitely supported integer combination of basis pairs (I, x)."""

    __slots__ = ("J", "degree", "terms")

    def __init__(self, J: FaceIndex, degree: int, terms: Mapping[ChainKey, int] | None = None):
        self.J = J
        self.degree = degree
        self.terms = {}
        for (I, x), c in (terms or {}).items():
            I = tuple(sorted(set(I)))
            if len(I) != degree + 1:
                raise ValueError(f"key {I} has wrong size for degree {degree}")
            key = (I, x)
            self.terms[key] = self.terms.get(key, 0) + c
        self.terms = {k: c for k, c in self.terms.items() if c}

    def _check(self, other: "ChainElt"):
        if self.J != other.J or self.degree != other.degree:
            raise ValueError("chain context mismatch")

    def __eq__(self, other):
        return (
            isinstance(other, ChainElt)
            and self.J == other.J
            and self.degree == other.degree
            and self.terms == other.terms
        )

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return ChainElt(self.J, self.degree, out)

    def __neg__(self):
        return ChainElt(self.J, self.degree, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, scalar: int):
        return ChainElt(self.J, self.degree, {k: scalar * c for k, c in self.terms.items()})

    def __repr__(self):
        body = " + ".join(
            f"{c}*b[{list(I)}]({tuple(str(v) for v in x)})"
            for (I, x), c in sorted(self.terms.items())
        )
        return f"ChainElt(J={self.J}, p={self.degree}: {body or '0'})"


@dataclass
class TruncatedComplex:
    """Bases and integer boundary matrices of a length-truncated subcomplex."""

    J: FaceIndex
    N: int
    bases: list[list[ChainKey]]
    matrices: dict[int, list[list[int]]]  # degree p -> matrix of d_p


class OrbitComplex:
    """The chain complex of one face J, with its orbit context."""

    def __init__(self, data: LieData, J: Sequence[int], base: Sequence | None = None):
        self.data = data
        self.J = _check_face_index(data, J)
        self.ctx = OrbitContext(data, self.J, base)
        self.full_face = tuple(range(data.rank + 1))
        self._explored = 0

    # -- lengths ------------------------------------------------------------

    def length_of(self, x: CartanPoint) -> int:
        # the hyperplane-crossing count bounds the search depth exactly
        hint = max(self._explored, crossing_length(self.data, x))
        return self.ctx.length_of(x, hint)

    def _ensure(self, n: int) -> None:
        self._explored = max(self._explored, n)
        self.ctx.ensure_length(self._explored)

    # -- bases ----------------------------------------------------------------

    def basis_elements(self, p: int, n: int) -> list[ChainKey]:
        """Basis pairs (I, x) in degree p with length(x) <= n, ordered by I
        then by coordinates."""
        if n < 0:
            raise ValueError("length bound must be >= 0")
        if p < 0 or p > self.data.rank:
            return []
        self._ensure(n)
        out: list[ChainKey] = []
        for I in combinations(range(self.data.rank + 1), p + 1):
            for op in self.ctx.points_up_to(n):
                if cone_position(self.data, op.point, I) == "interior":
                    out.append((I, op.point))
        out.sort(key=lambda key: (key[0], key[1]))
        return out

    def element(self, I: Sequence[int], x: Sequence, coeff: int = 1) -> ChainElt:
        I = _check_face_index(self.data, I)
        x = tuple(Fraction(v) for v in x)
        if cone_position(self.data, x, I) != "interior":
            raise ValueError(f"{x} is not interior to the cone of {I}")
        return ChainElt(self.J, len(I) - 1, {(I, x): coeff})

    # -- boundary and augmentation ---------------------------------------------

    def boundary(self, c: ChainElt) -> ChainElt:
        if c.degree < 1:
            raise ValueError("boundary needs degree >= 1")
        out: dict[ChainKey, int] = {}
        for (I, x), coeff in c.terms.items():
            for r in range(len(I)):
                sub = I[:r] + I[r + 1 :]
                _, image, parity = reduce_point_to_cone(self.data, x, sub)
                if cone_position(self.data, image, sub) != "interior":
                    continue
                sign = (-1) ** r * parity
                key = (sub, image)
                out[key] = out.get(key, 0) + sign * coeff
        return ChainElt(c.J, c.degree - 1, out)

    def augmentation(self, c: ChainElt) -> int:
        """The degree-0 augmentation: beta_i(x) -> (-1)^length(x) when J is
        the full node set, and the zero map otherwise."""
        if c.degree != 0:
            raise ValueError("augmentation needs degree 0")
        if self.J != self.full_face:
            return 0
        return sum(coeff * (-1) ** self.length_of(x) for (_, x), coeff in c.terms.items())

    # -- homotopy machinery -------------------------------------------------------

    def homotopy(self, i: int, c: ChainElt) -> ChainElt:
        """h_i: raise degree by inserting node i, with the sign of its
        position; kills keys already containing i.  Preserves lengths."""
        if not 0 <= i <= self.data.rank:
            raise ValueError(f"node {i} out of range")
        out: dict[ChainKey, int] = {}
        for (I, x), coeff in c.terms.items():
            if i in I:
                continue
            r = sum(1 for j in I if j < i)
            bigger = tuple(sorted(I + (i,)))
            key = (bigger, x)
            out[key] = out.get(key, 0) + (-1) ** r * coeff
        return ChainElt(c.J, c.degree + 1, out)

    def deform(self, i: int, c: ChainElt) -> ChainElt:
        """The chain map A_i = id - h_i d - d h_i (degree 0 has d = 0)."""
        out = c
        if c.degree >= 1:
            out = out - self.homotopy(i, self.boundary(c))
        hc = self.homotopy(i, c)
        if hc:
            out = out - self.boundary(hc)
        return out

    def deform_all(self, c: ChainElt) -> ChainElt:
        """A = A_0 A_1 ... A_l; strictly lowers key lengths in degrees
        strictly between 0 and the rank."""
        out = c
        for i in range(self.data.rank, -1, -1):
            out = self.deform(i, out)
        return out

    def contract_cycle(self, c: ChainElt) -> ChainElt:
        """Produce b with boundary(b) = c for a cycle c in an interior
        degree, by accumulating the homotopies along c, Ac, A^2 c, ...

        The result is re-checked exactly; failure raises instead of
        returning an uncertified chain.
        """
        if not 0 < c.degree < self.data.rank:
            raise ValueError("contraction needs degree strictly between 0 and rank")
        if self.boundary(c):
            raise ValueError("chain is not a cycle")
        bounding = ChainElt(c.J, c.degree + 1)
        current = c
        passes = 0
        limit = max(
            (crossing_length(self.data, x) for _, x in c.terms), default=0
        ) + 2
        while current:
            if passes > limit:
                raise RuntimeError("contraction failed to terminate")
            for i in range(self.data.rank, -1, -1):
                hc = self.homotopy(i, current)
                bounding = bounding + hc
                if hc:
                    current = current - self.boundary(hc)
            passes += 1
        if self.boundary(bounding) != c:
            raise RuntimeError("contraction certificate failed verification")
        return bounding

    # -- truncated linear algebra ----------------------------------------------------

    def truncated(self, n: int) -> TruncatedComplex:
        """Bases and boundary matrices of the subcomplex of keys with length
        <= n; asserts that consecutive matrices compose to zero."""
        l = self.data.rank
        bases = [self.basis_elements(p, n) for p in range(l + 1)]
        index = [{key: idx for idx, key in enumerate(b)} for b in bases]
        matrices: dict[int, list[list[int]]] = {}
        for p in range(1, l + 1):
            rows, cols = len(bases[p - 1]), len(bases[p])
            M = [[0] * cols for _ in range(rows)]
            for col, (I, x) in enumerate(bases[p]):
                image = self.boundary(ChainElt(self.J, p, {(I, x): 1}))
                for key, coeff in image.terms.items():
                    # the boundary never raises lengths, so keys stay inside
                    M[index[p - 1][key]][col] = coeff
            matrices[p] = M
        for p in range(2, l + 1):
            prod_nonzero = any(
                sum(matrices[p - 1][i][t] * matrices[p][t][j] for t in range(len(bases[p - 1])))
                for i in range(len(bases[p - 2]))
                for j in range(len(bases[p]))
            )
            assert not prod_nonzero, f"d composed with d is nonzero at degree {p}"
        return TruncatedComplex(self.J, n, bases, matrices)

    def random_cycle(self, p: int, n: int, rng, max_terms: int = 4) -> ChainElt:
        """A random integer cycle in degree p of the length-n truncation."""
        tc = self.truncated(n)
        basis = tc.bases[p]
        ker = kernel_basis(tc.matrices[p], len(basis)) if p >= 1 else None
        if ker is None or not ker:
            return ChainElt(self.J, p)
        terms: dict[ChainKey, int] = {}
        for vec in rng.sample(ker, min(max_terms, len(ker))):
            scale = rng.randint(-3, 3)
            if not scale:
                continue
            for idx, v in enumerate(vec):
                if v:
                    key = basis[idx]
                    terms[key] = terms.get(key, 0) + scale * v
        return ChainElt(self.J, p, terms)

    # -- homology -----------------------------------------------------------------------

    def homology_report(self, n: int) -> dict:
        """Exact homology data of the length-n truncation, with verdicts
        against the expected acyclicity pattern: vanishing in degrees > 0,
        injectivity at the top, and H_0 = Z (detected by the augmentation)
        exactly for the full face, H_0 = 0 otherwise."""
        if n < 1:
            raise ValueError("truncation bound must be >= 1")
        l = self.data.rank
        tc = self.truncated(n)
        dims = [len(b) for b in tc.bases]
        ranks = {p: rank(tc.matrices[p], dims[p]) for p in range(1, l + 1)}
        degrees = []
        all_ok = True
        for p in range(l + 1):
            rank_p = ranks.get(p, 0)
            rank_above = ranks.get(p + 1, 0)
            rank_ker = dims[p] - rank_p if p >= 1 else dims[p]
            torsion = (
                [f for f in invariant_factors(tc.matrices[p + 1], dims[p + 1]) if f > 1]
                if p + 1 <= l
                else []
            )
            if p == l:
                ok = rank_ker == 0 if l >= 1 else True
                verdict = "injective" if ok else "kernel"
            elif p == 0:
                if self.J == self.full_face:
                    eps_on_boundaries = all(
                        sum(
                            tc.matrices[1][row][col] * (-1) ** self.length_of(tc.bases[0][row][1])
                            for row in range(dims[0])
                        )
                        == 0
                        for col in range(dims[1])
                    ) if l >= 1 else True
                    ok = (dims[0] - rank_above == 1) and not torsion and eps_on_boundaries
                    verdict = "H0=Z" if ok else "H0!=Z"
                else:
                    ok = dims[0] == rank_above and not torsion
                    verdict = "H0=0" if ok else "H0!=0"
            else:
                ok = rank_ker == rank_above and not torsion
                verdict = "exact" if ok else "homology"
            all_ok = all_ok and ok
            degrees.append(
                {
                    "p": p,
                    "dim": dims[p],
                    "rank_ker": rank_ker,
                    "rank_im_above": rank_above,
                    "torsion": torsion,
                    "verdict": verdict,
                }
            )
        return {
            "group": str(self.data.lie_type),
            "J": list(self.J),
            "N": n,
            "degrees": degrees,
            "H0": "Z" if self.J == self.full_face else "0",
            "all_ok": all_ok,
        }


# ---------------------------------------------------------------------------
# certificates


def chain_to_json(c: ChainElt) -> list[dict]:
    return [
        {"I": list(I), "x": [_frac_str(v) for v in x], "coeff": coeff}
        for (I, x), coeff in sorted(c.terms.items())
    ]


def chain_from_json(J: FaceIndex, degree: int, doc: Iterable[Mapping]) -> ChainElt:
    terms: dict[ChainKey, int] = {}
    for item in doc:
        I = tuple(int(i) for i in item["I"])
        x = tuple(Fraction(v) for v in item["x"])
        terms[(I, x)] = terms.get((I, x), 0) + int(item["coeff"])
    return ChainElt(J, degree, terms)


def certificate_json(complex_: OrbitComplex, cycle: ChainElt, bounding: ChainElt) -> str:
    return json.dumps(
        {
            "group": str(complex_.data.lie_type),
            "J": list(complex_.J),
            "degree": cycle.degree,
            "cycle": chain_to_json(cycle),
            "bounding": chain_to_json(bounding),
        },
        indent=2,
    )


def verify_certificate(text: str) -> dict:
    """Re-check a contraction certificate; raises ValueError on any defect."""
    from .lie import LieType, build_lie_data

    try:
        doc = json.loads(text)
        data = build_lie_data(LieType.parse(doc["group"]))
        J = tuple(int(j) for j in doc["J"])
        degree = int(doc["degree"])
        cycle = chain_from_json(J, degree, doc["cycle"])
        bounding = chain_from_json(J, degree + 1, doc["bounding"])
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"malformed certificate: {exc}") from exc
    complex_ = OrbitComplex(data, J)
    # keys must be genuine basis pairs: interior to their cone and on the orbit
    for c in (cycle, bounding):
        for I, x in c.terms:
            if cone_position(data, x, I) != "interior":
                raise ValueError(f"certificate key {I}, {x} is not a basis pair")
            _, reduced = reduce_point_to_alcove(data, x)
            if reduced != complex_.ctx.base:
                raise ValueError(f"certificate point {x} is not on the orbit of {J}")
    if complex_.boundary(cycle):
        raise ValueError("certificate cycle is not a cycle")
    if complex_.boundary(bounding) != cycle:
        raise ValueError("certificate bounding chain does not bound the cycle")
    return {"group": doc["group"], "J": list(J), "degree": degree, "ok": True}
