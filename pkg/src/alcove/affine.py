"""The affine Weyl group: level-m action on weights, dominantization with
sign, the standard affine action on the Cartan subalgebra, and orbit
enumeration with the length function.

The group is generated by the simple affine reflections indexed by the nodes
0..l of the extended Dynkin diagram.  On weights at level m the reflection is

    nu -> nu - (<nu, alpha_i_vee> + m * delta_{i,0}) * alpha_i

and on Cartan points (standard action on t)

    xi -> xi - (<alpha_i, xi> + delta_{i,0}) * alpha_i_vee.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

from .lie import (
    CartanPoint,
    LieData,
    Weight,
    _check_face_index,
    face_data,
    pairing,
    wall_value,
)


class SignedWeight(NamedTuple):
    """A dominantized weight with the sign and word length of the reduction.

    sign is 0 exactly when the orbit meets a reflection wall (the weight is
    then annihilated by skew-symmetrization); otherwise sign = (-1)^word_length.
    """

    weight: Weight
    sign: int
    word_length: int


class OrbitPoint(NamedTuple):
    point: CartanPoint
    length: int


def weight_wall_value(data: LieData, nu: Sequence[int], i: int, m: int) -> int:
    """<nu, alpha_i_vee> + m * delta_{i,0}; nonnegative for all i on the
    level-m alcove region."""
    value = sum(a * b for a, b in zip(nu, data.node_coroot[i]))
    return value + m if i == 0 else value


def affine_reflect_weight(data: LieData, i: int, nu: Sequence[int], m: int) -> Weight:
    """Simple affine reflection at wall i, acting on a weight at level m."""
    if not 0 <= i <= data.rank:
        raise ValueError(f"wall index {i} out of range")
    c = weight_wall_value(data, nu, i, m)
    root = data.node_root[i]
    return tuple(x - c * r for x, r in zip(nu, root))


def level_action(data: LieData, word: Iterable[int], nu: Sequence[int], m: int) -> Weight:
    """Apply a word of simple affine reflections (leftmost letter last)."""
    out = tuple(nu)
    for i in reversed(tuple(word)):
        out = affine_reflect_weight(data, i, out, m)
    return out


def linear_weyl_action(data: LieData, word: Iterable[int], nu: Sequence) -> tuple:
    """Apply the linear parts only (reflection in alpha_i through the origin
    for every letter, including i = 0)."""
    out = tuple(Fraction(x) for x in nu)
    for i in reversed(tuple(word)):
        c = pairing(out, data.node_coroot[i])
        out = tuple(x - c * r for x, r in zip(out, data.node_root[i]))
    return out


def dominantize_walls(
    data: LieData, nu: Sequence[int], m: int, walls: Sequence[int]
) -> SignedWeight:
    """Reduce a weight into the region where the listed wall values are >= 0,
    by greedy reflection at the lowest violated wall.

    Sign is 0 if the result lies on one of the listed walls, otherwise the
    parity of the number of reflections performed.
    """
    walls = tuple(sorted(walls))
    out = tuple(nu)
    count = 0
    while True:
        violated = None
        for i in walls:
            if weight_wall_value(data, out, i, m) < 0:
                violated = i
                break
        if violated is None:
            break
        out = affine_reflect_weight(data, violated, out, m)
        count += 1
    on_wall = any(weight_wall_value(data, out, i, m) == 0 for i in walls)
    sign = 0 if on_wall else (-1) ** count
    return SignedWeight(out, sign, count)


def dominantize(data: LieData, nu: Sequence[int], m: int) -> SignedWeight:
    """Reduce into the closed level-m alcove region (all walls 0..l)."""
    if m < 1:
        raise ValueError("level must be >= 1")
    return dominantize_walls(data, nu, m, range(data.rank + 1))


# ---------------------------------------------------------------------------
# standard affine action on t, cones, orbit enumeration


def reflect_point(data: LieData, i: int, xi: Sequence) -> CartanPoint:
    """Simple affine reflection at wall i, standard action on t."""
    if not 0 <= i <= data.rank:
        raise ValueError(f"wall index {i} out of range")
    c = wall_value(data, i, xi)
    coroot = data.node_coroot[i]
    return tuple(Fraction(x) - c * g for x, g in zip(xi, coroot))


def cone_position(data: LieData, xi: Sequence, I: Sequence[int]) -> str:
    """Position of a point against the cone cut out by the walls outside I:
    'interior', 'boundary', or 'outside'."""
    I = _check_face_index(data, I)
    on_wall = False
    for i in range(data.rank + 1):
        if i in I:
            continue
        v = wall_value(data, i, xi)
        if v < 0:
            return "outside"
        if v == 0:
            on_wall = True
    return "boundary" if on_wall else "interior"


def reduce_point_to_cone(
    data: LieData, xi: Sequence, I: Sequence[int]
) -> tuple[tuple[int, ...], CartanPoint, int]:
    """Move a point into the closed cone of I by reflections in the walls
    outside I (greedy, lowest index first).

    Returns (word, image, parity); the image is the unique representative of
    the W_I-orbit in the closed cone, and parity = (-1)^len(word).
    """
    I = _check_face_index(data, I)
    walls = [i for i in range(data.rank + 1) if i not in I]
    out = tuple(Fraction(x) for x in xi)
    word: list[int] = []
    while True:
        violated = None
        for i in walls:
            if wall_value(data, i, out) < 0:
                violated = i
                break
        if violated is None:
            break
        out = reflect_point(data, violated, out)
        word.append(violated)
    return tuple(word), out, (-1) ** len(word)


def reduce_point_to_alcove(data: LieData, xi: Sequence) -> tuple[tuple[int, ...], CartanPoint]:
    """Move a point into the closed fundamental alcove by greedy reflection
    at the lowest violated wall; the word length equals the number of
    separating hyperplanes crossed."""
    out = tuple(Fraction(x) for x in xi)
    word: list[int] = []
    while True:
        violated = None
        for i in range(data.rank + 1):
            if wall_value(data, i, out) < 0:
                violated = i
                break
        if violated is None:
            return tuple(word), out
        out = reflect_point(data, violated, out)
        word.append(violated)


class OrbitContext:
    """Breadth-first enumeration of the affine Weyl orbit V of the base point
    of a face, with the word-length function.

    The default base point for face J is nu_J_sharp; any point in the
    relative interior of Delta_J gives the same combinatorics.
    """

    def __init__(self, data: LieData, J: Sequence[int], base: Sequence | None = None):
        self.data = data
        self.J = _check_face_index(data, J)
        if base is None:
            base = face_data(data, self.J).nu_I_sharp
        else:
            base = tuple(Fraction(x) for x in base)
            from .lie import alcove_face_of

            if alcove_face_of(data, base) != self.J:
                raise ValueError("base point is not interior to the face")
        self.base: CartanPoint = tuple(base)
        self._layers: list[list[CartanPoint]] = [[self.base]]
        self._length: dict[CartanPoint, int] = {self.base: 0}

    def ensure_length(self, n: int) -> None:
        while len(self._layers) <= n:
            frontier = self._layers[-1]
            new: list[CartanPoint] = []
            for x in frontier:
                for i in range(self.data.rank + 1):
                    y = reflect_point(self.data, i, x)
                    if y not in self._length:
                        self._length[y] = len(self._layers)
                        new.append(y)
            if not new:
                break
            self._layers.append(sorted(new))

    def points_up_to(self, n: int) -> list[OrbitPoint]:
        self.ensure_length(n)
        out = []
        for length, layer in enumerate(self._layers[: n + 1]):
            out.extend(OrbitPoint(x, length) for x in layer)
        return out

    def length_of(self, point: Sequence, search_up_to: int) -> int:
        point = tuple(Fraction(x) for x in point)
        self.ensure_length(search_up_to)
        try:
            return self._length[point]
        except KeyError:
            raise ValueError(f"{point} not in the orbit within length {search_up_to}")

    def orbit_point(self, point: Sequence, search_up_to: int) -> OrbitPoint:
        point = tuple(Fraction(x) for x in point)
        return OrbitPoint(point, self.length_of(point, search_up_to))

    def reduce_to_cone(
        self, x: OrbitPoint, I: Sequence[int]
    ) -> tuple[tuple[int, ...], OrbitPoint, int]:
        """reduce_point_to_cone on an orbit point, with the image's length.

        The image never has larger length than x, so the search is bounded.
        """
        word, image, parity = reduce_point_to_cone(self.data, x.point, I)
        img = self.orbit_point(image, x.length)
        assert img.length <= x.length
        return word, img, parity


def orbit_up_to_length(data: LieData, J: Sequence[int], n: int) -> list[OrbitPoint]:
    """All orbit points of length <= n, ordered lexicographically by
    coordinates."""
    if n < 0:
        raise ValueError("length bound must be >= 0")
    ctx = OrbitContext(data, J)
    return sorted(ctx.points_up_to(n), key=lambda op: op.point)


def crossing_length(data: LieData, x: Sequence) -> int:
    """Independent length oracle: the number of affine root hyperplanes
    <beta, .> = n (beta positive, n integer) strictly separating x from the
    interior of the fundamental alcove."""
    probe = face_data(data, tuple(range(data.rank + 1))).nu_I_sharp
    total = 0
    for root in data.positive_roots:
        a = pairing(root.weight, probe)
        b = pairing(root.weight, x)
        lo, hi = min(a, b), max(a, b)
        # integers strictly between lo and hi; hyperplanes through x itself
        # are excluded by strictness
        count = math.floor(hi) - math.ceil(lo) + 1
        if hi == math.floor(hi):
            count -= 1
        if lo == math.ceil(lo):
            count -= 1
        total += max(count, 0)
    return total


def orbit_to_json(points: Iterable[OrbitPoint]) -> list[dict]:
    from .lie import _frac_str

    return [
        {"coords": [_frac_str(c) for c in op.point], "length": op.length}
        for op in points
    ]
