"""Finite Cartan data and Weyl group elements on root coordinates.

A Cartan datum is an integer matrix (a_ij) with a_ii = 2, off-diagonal
entries <= 0 and a_ij = 0 iff a_ji = 0.  Every rank-2 subsystem must be
finite, i.e. a_ij * a_ji <= 3, which pins the pairwise orders m_ij to
{2, 3, 4, 6}.

Weyl group elements are stored as integer matrices acting on root
coordinates: writing a vector v = sum_j v_j alpha_j, the simple
reflection s_i sends v to v - (sum_j a_ij v_j) alpha_i.  Equality of
group elements is matrix equality, so no word problem ever arises.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache


class CartanError(ValueError):
    """Raised for invalid Cartan matrices, labels or reflection indices."""


# m_ij as a function of a_ij * a_ji for the finite rank-2 types
ORDER_BY_PRODUCT = {0: 2, 1: 3, 2: 4, 3: 6}


@dataclass(frozen=True)
class CartanData:
    labels: tuple[str, ...]
    matrix: tuple[tuple[int, ...], ...]

    @property
    def rank(self) -> int:
        return len(self.labels)

    def entry(self, i: int, j: int) -> int:
        return self.matrix[i][j]

    def index_of(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise CartanError(f"unknown reflection label {label!r}") from None

    def check_index(self, i: int) -> None:
        if not 0 <= i < self.rank:
            raise CartanError(f"reflection index {i} out of range for rank {self.rank}")


_BUILTIN_MATRICES = {
    "A1": ((2,),),
    "A1xA1": ((2, 0), (0, 2)),
    "A2": ((2, -1), (-1, 2)),
    "B2": ((2, -1), (-2, 2)),
    "G2": ((2, -1), (-3, 2)),
    "A3": ((2, -1, 0), (-1, 2, -1), (0, -1, 2)),
    "B3": ((2, -1, 0), (-1, 2, -2), (0, -1, 2)),
}

_TYPE_ALIASES = {"A1×A1": "A1xA1"}


def cartan_from_matrix(matrix, labels=None) -> CartanData:
    """Validate an explicit Cartan matrix and wrap it in a CartanData."""
    rows = tuple(tuple(int(x) for x in row) for row in matrix)
    n = len(rows)
    if n == 0 or any(len(row) != n for row in rows):
        raise CartanError("Cartan matrix must be square and non-empty")
    if labels is None:
        labels = tuple(str(i + 1) for i in range(n))
    else:
        labels = tuple(str(x) for x in labels)
    if len(labels) != n or len(set(labels)) != n:
        raise CartanError("labels must be distinct and match the matrix size")
    for i in range(n):
        if rows[i][i] != 2:
            raise CartanError(f"diagonal entry a_{i}{i} = {rows[i][i]} != 2")
        for j in range(n):
            if i == j:
                continue
            if rows[i][j] > 0:
                raise CartanError(f"off-diagonal entry a_{i}{j} = {rows[i][j]} > 0")
            if (rows[i][j] == 0) != (rows[j][i] == 0):
                raise CartanError(f"a_{i}{j} and a_{j}{i} must vanish together")
            if rows[i][j] * rows[j][i] > 3:
                raise CartanError(
                    f"a_{i}{j}*a_{j}{i} = {rows[i][j] * rows[j][i]} > 3: rank-2 subsystem not finite"
                )
    return CartanData(labels=labels, matrix=rows)


def cartan_from_type(type_label: str) -> CartanData:
    """Return a built-in Cartan datum (A1, A1xA1, A2, B2, G2, A3, B3)."""
    key = _TYPE_ALIASES.get(type_label, type_label)
    if key not in _BUILTIN_MATRICES:
        known = ", ".join(sorted(_BUILTIN_MATRICES))
        raise CartanError(f"unknown Cartan type {type_label!r} (known: {known})")
    return cartan_from_matrix(_BUILTIN_MATRICES[key])


def cartan_from_json(obj) -> CartanData:
    """Accept either a built-in label string or {"labels": [...], "matrix": [[...]]}. """
    if isinstance(obj, str):
        return cartan_from_type(obj)
    if isinstance(obj, dict) and "matrix" in obj:
        return cartan_from_matrix(obj["matrix"], obj.get("labels"))
    if isinstance(obj, (list, tuple)):
        return cartan_from_matrix(obj)
    raise CartanError("cartan input must be a type label or an object with a 'matrix' field")


def cartan_to_json(c: CartanData) -> dict:
    return {"labels": list(c.labels), "matrix": [list(row) for row in c.matrix]}


@dataclass(frozen=True)
class WeylElement:
    matrix: tuple[tuple[int, ...], ...]

    @property
    def rank(self) -> int:
        return len(self.matrix)

    def is_identity(self) -> bool:
        n = self.rank
        return all(self.matrix[i][j] == (1 if i == j else 0) for i in range(n) for j in range(n))

    def column(self, j: int) -> tuple[int, ...]:
        """Root coordinates of the image of alpha_j."""
        return tuple(self.matrix[k][j] for k in range(self.rank))


def weyl_identity(rank: int) -> WeylElement:
    return WeylElement(tuple(tuple(1 if i == j else 0 for j in range(rank)) for i in range(rank)))


@lru_cache(maxsize=None)
def simple_reflection(c: CartanData, i: int) -> WeylElement:
    c.check_index(i)
    n = c.rank
    # (s_i)_{kj} = delta_kj - delta_ki a_ij
    mat = tuple(
        tuple((1 if k == j else 0) - (c.matrix[i][j] if k == i else 0) for j in range(n))
        for k in range(n)
    )
    return WeylElement(mat)


def weyl_compose(w1: WeylElement, w2: WeylElement) -> WeylElement:
    """Matrix product representing w1 o w2 (w2 applied first)."""
    n = w1.rank
    if w2.rank != n:
        raise CartanError("rank mismatch in Weyl composition")
    a, b = w1.matrix, w2.matrix
    return WeylElement(
        tuple(tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)) for i in range(n))
    )


def weyl_from_word(c: CartanData, word) -> WeylElement:
    """Product of simple reflections, read left to right."""
    w = weyl_identity(c.rank)
    for i in word:
        w = weyl_compose(w, simple_reflection(c, i))
    return w


def m_order(c: CartanData, s: int, t: int) -> int:
    """Order of the product s_s s_t, computed by brute-force matrix powers."""
    c.check_index(s)
    c.check_index(t)
    if s == t:
        raise CartanError("m_order requires two distinct reflections")
    prod = weyl_compose(simple_reflection(c, s), simple_reflection(c, t))
    power = prod
    for k in range(1, 8):
        if power.is_identity():
            return k
        power = weyl_compose(power, prod)
    raise CartanError("reflection product has order > 7; Cartan datum is not finite")


@dataclass(frozen=True)
class BraidWord:
    pair: tuple[int, int]
    word: tuple[int, ...]


def braid_word(c: CartanData, s: int, t: int) -> BraidWord:
    """The alternating word (s, t, s, ...) of length m_st."""
    m = m_order(c, s, t)
    word = tuple(s if k % 2 == 0 else t for k in range(m))
    return BraidWord(pair=(s, t), word=word)
