"""Sparse integer group-ring elements over the weight lattice, and
anti-invariants for the finite groups W_I under the shifted-level action.

Elements carry their level context m (the shifted level at which
anti-invariance is measured); mixing levels or ranks in a binary operation
is a hard error.  Anti-invariants are stored by their regular cone
representatives, never by full expansion.
"""

from __future__ import annotations

from typing import Mapping, Sequence

from .affine import affine_reflect_weight, dominantize_walls, weight_wall_value
from .lie import (
    LieData,
    Weight,
    _check_face_index,
    apply_weight,
    weyl_elements,
)


class LevelMismatchError(ValueError):
    """Raised when two elements with different level or rank context meet."""


class NotAntiInvariantError(ValueError):
    """Raised when an element fails the anti-invariance check."""

    def __init__(self, generator: int):
        self.generator = generator
        super().__init__(f"element is not anti-invariant: generator {generator} fails")


def _clean(terms: Mapping[Weight, int]) -> dict[Weight, int]:
    return {w: c for w, c in terms.items() if c}


class GroupRingElt:
    """A finitely supported integer map on the weight lattice."""

    __slots__ = ("data", "level", "terms")

    def __init__(self, data: LieData, level: int, terms: Mapping[Weight, int] | None = None):
        self.data = data
        self.level = level
        self.terms = _clean(terms or {})
        for w in self.terms:
            if len(w) != data.rank:
                raise ValueError(f"weight {w} has wrong rank")

    @classmethod
    def delta(cls, data: LieData, level: int, weight: Sequence[int], coeff: int = 1) -> "GroupRingElt":
        return cls(data, level, {tuple(weight): coeff})

    @classmethod
    def unit(cls, data: LieData, level: int) -> "GroupRingElt":
        return cls.delta(data, level, (0,) * data.rank)

    def _check(self, other: "GroupRingElt") -> None:
        if self.data.lie_type != other.data.lie_type or self.level != other.level:
            raise LevelMismatchError(
                f"context mismatch: {self.data.lie_type}@{self.level} vs "
                f"{other.data.lie_type}@{other.level}"
            )

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GroupRingElt)
            and self.data.lie_type == other.data.lie_type
            and self.level == other.level
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.data.lie_type, self.level, frozenset(self.terms.items())))

    def __add__(self, other: "GroupRingElt") -> "GroupRingElt":
        self._check(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, 0) + c
        return GroupRingElt(self.data, self.level, out)

    def __neg__(self) -> "GroupRingElt":
        return GroupRingElt(self.data, self.level, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other: "GroupRingElt") -> "GroupRingElt":
        return self + (-other)

    def __rmul__(self, scalar: int) -> "GroupRingElt":
        if not isinstance(scalar, int):
            return NotImplemented
        return GroupRingElt(self.data, self.level, {w: scalar * c for w, c in self.terms.items()})

    def __mul__(self, other):
        """Convolution product (the group-ring multiplication)."""
        if isinstance(other, int):
            return self.__rmul__(other)
        self._check(other)
        out: dict[Weight, int] = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                key = tuple(a + b for a, b in zip(w1, w2))
                out[key] = out.get(key, 0) + c1 * c2
        return GroupRingElt(self.data, self.level, out)

    def apply(self, elt) -> "GroupRingElt":
        """Push forward along the level-m action of one Weyl element."""
        out: dict[Weight, int] = {}
        for w, c in self.terms.items():
            key = apply_weight(elt, w, self.level)
            out[key] = out.get(key, 0) + c
        return GroupRingElt(self.data, self.level, out)

    def __repr__(self):
        body = " + ".join(f"{c}*e{list(w)}" for w, c in sorted(self.terms.items()))
        return f"GroupRingElt({self.data.lie_type}@{self.level}: {body or '0'})"


def gr_multiply(a: GroupRingElt, b: GroupRingElt) -> GroupRingElt:
    return a * b


def skew_symmetrize(phi: GroupRingElt, I: Sequence[int]) -> GroupRingElt:
    """Alternating sum of phi over W_I at the element's level (Sk over the
    face I).  Requires enumerating W_I, so keep to small groups."""
    I = _check_face_index(phi.data, I)
    out = GroupRingElt(phi.data, phi.level)
    for elt in weyl_elements(phi.data, I):
        moved = phi.apply(elt)
        out = out + (elt.sign * moved)
    return out


class AntiInvariant:
    """A W_I-anti-invariant stored by its regular cone representatives.

    Keys are weights nu in the strict cone (<nu, alpha_i_vee> + m delta_{i,0}
    >= 1 for i outside I); the element it denotes is the sum of coeff *
    Sk_I(nu) over the stored terms.
    """

    __slots__ = ("data", "level", "I", "terms")

    def __init__(self, data: LieData, level: int, I: Sequence[int], terms: Mapping[Weight, int] | None = None):
        self.data = data
        self.level = level
        self.I = _check_face_index(data, I)
        self.terms = _clean(terms or {})
        walls = [i for i in range(data.rank + 1) if i not in self.I]
        for nu in self.terms:
            for i in walls:
                if weight_wall_value(data, nu, i, level) < 1:
                    raise ValueError(f"representative {nu} is not regular for wall {i}")

    def _check(self, other: "AntiInvariant") -> None:
        if (
            self.data.lie_type != other.data.lie_type
            or self.level != other.level
            or self.I != other.I
        ):
            raise LevelMismatchError("anti-invariant context mismatch")

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, AntiInvariant)
            and self.data.lie_type == other.data.lie_type
            and self.level == other.level
            and self.I == other.I
            and self.terms == other.terms
        )

    def __add__(self, other: "AntiInvariant") -> "AntiInvariant":
        self._check(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, 0) + c
        return AntiInvariant(self.data, self.level, self.I, out)

    def __repr__(self):
        body = " + ".join(f"{c}*[{list(w)}]" for w, c in sorted(self.terms.items()))
        return f"AntiInvariant(I={self.I}, m={self.level}: {body or '0'})"


def check_anti_invariant(phi: GroupRingElt, I: Sequence[int]) -> None:
    """Verify that each generator of W_I negates phi under the level action."""
    I = _check_face_index(phi.data, I)
    for i in range(phi.data.rank + 1):
        if i in I:
            continue
        moved: dict[Weight, int] = {}
        for w, c in phi.terms.items():
            key = affine_reflect_weight(phi.data, i, w, phi.level)
            moved[key] = moved.get(key, 0) + c
        if _clean(moved) != _clean({w: -c for w, c in phi.terms.items()}):
            raise NotAntiInvariantError(i)


def to_cone_basis(phi: GroupRingElt, I: Sequence[int]) -> AntiInvariant:
    """Express an anti-invariant element by its cone representatives.

    Inverse of expand(); raises NotAntiInvariantError if phi is not
    anti-invariant over I at its level.
    """
    I = _check_face_index(phi.data, I)
    check_anti_invariant(phi, I)
    walls = [i for i in range(phi.data.rank + 1) if i not in I]
    reps: dict[Weight, int] = {}
    for nu, c in phi.terms.items():
        if all(weight_wall_value(phi.data, nu, i, phi.level) >= 1 for i in walls):
            reps[nu] = c
    return AntiInvariant(phi.data, phi.level, I, reps)


def expand(anti: AntiInvariant) -> GroupRingElt:
    """Expand cone representatives back to the full group-ring element."""
    out = GroupRingElt(anti.data, anti.level)
    for nu, c in anti.terms.items():
        out = out + (c * skew_symmetrize(GroupRingElt.delta(anti.data, anti.level, nu), anti.I))
    return out


def reskew_to(anti: AntiInvariant, J: Sequence[int]) -> AntiInvariant:
    """Re-express a W_I-anti-invariant as a W_J-anti-invariant, J a subset
    of I.

    Works basis-wise: each representative is reduced into the J-cone with a
    sign, and wall-stabilized representatives drop out.  This is integer
    exact; no division by |W_I| is ever performed.
    """
    J = _check_face_index(anti.data, J)
    if not set(J) <= set(anti.I):
        raise ValueError(f"{J} is not a subset of {anti.I}")
    walls = [i for i in range(anti.data.rank + 1) if i not in J]
    out: dict[Weight, int] = {}
    for nu, c in anti.terms.items():
        rep, sign, _ = dominantize_walls(anti.data, nu, anti.level, walls)
        if sign == 0:
            continue
        out[rep] = out.get(rep, 0) + sign * c
    return AntiInvariant(anti.data, anti.level, J, out)


def check_w_invariant(chi: GroupRingElt) -> None:
    """Verify invariance under the classical (linear) Weyl group action."""
    n = chi.data.rank
    for i in range(1, n + 1):
        moved: dict[Weight, int] = {}
        for w, c in chi.terms.items():
            key = affine_reflect_weight(chi.data, i, w, 0)  # linear for i >= 1
            moved[key] = moved.get(key, 0) + c
        if _clean(moved) != chi.terms:
            raise ValueError(f"element is not W-invariant: reflection {i} fails")


def act_invariant(chi: GroupRingElt, anti: AntiInvariant) -> AntiInvariant:
    """Module action of a W-invariant element on an anti-invariant:
    expand, multiply, re-express in the cone basis."""
    if chi.data.lie_type != anti.data.lie_type or chi.level != anti.level:
        raise LevelMismatchError("context mismatch")
    check_w_invariant(chi)
    product = chi * expand(anti)
    return to_cone_basis(product, anti.I)


def groupring_to_json(phi: GroupRingElt) -> dict:
    return {
        "type": str(phi.data.lie_type),
        "level": phi.level,
        "terms": [
            {"weight": list(w), "coeff": c} for w, c in sorted(phi.terms.items())
        ],
    }


def groupring_from_json(data: LieData, doc: dict) -> GroupRingElt:
    terms = {tuple(t["weight"]): int(t["coeff"]) for t in doc["terms"]}
    return GroupRingElt(data, int(doc["level"]), terms)
