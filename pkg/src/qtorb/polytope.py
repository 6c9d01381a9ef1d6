"""
Combinatorial simple polytopes.

A polytope is given by its ordered facet names and, for each vertex, the set of the n
facets meeting there. No coordinates are needed: faces are exactly the facet sets
contained in some vertex set, and a face is identified with that set.
"""

import logging
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import FrozenSet, Iterable, List, Sequence, Tuple

from sympy import Poly, symbols

from .exceptions import PolytopeError

log = logging.getLogger("qtorb.polytope")

_t = symbols("t")


@dataclass(frozen=True, order=True)
class Face:
    """
    A face of a simple polytope, given by the indices I(F) of the facets containing it.

    The empty facet set is the polytope itself. Ordering is canonical: by codimension,
    then by the sorted facet indices.

    :param facets: frozenset of facet indices I(F)
    :param dim: dimension n - |I(F)|
    """

    sort_key: Tuple = field(init=False, repr=False, compare=True)
    facets: FrozenSet[int] = field(compare=False)
    dim: int = field(compare=False)

    def __post_init__(self):
        facets = frozenset(self.facets)
        object.__setattr__(self, "facets", facets)
        object.__setattr__(self, "sort_key", (len(facets), tuple(sorted(facets))))

    def __hash__(self):
        return hash(self.sort_key)

    @property
    def codim(self) -> int:
        return len(self.facets)

    @property
    def indices(self) -> Tuple[int, ...]:
        "Facet indices in increasing order"
        return self.sort_key[1]

    @property
    def is_polytope(self) -> bool:
        return not self.facets


@dataclass(frozen=True)
class CombinatorialPolytope:
    """
    Simple n-polytope as vertex-facet incidence.

    :param dim: dimension n >= 1
    :param facets: ordered facet names F_1 ... F_m
    :param vertices: tuple of frozensets of facet indices, each of size n
    """

    dim: int
    facets: Tuple[str, ...]
    vertices: Tuple[FrozenSet[int], ...]

    def __post_init__(self):
        object.__setattr__(self, "facets", tuple(self.facets))
        object.__setattr__(
            self, "vertices", tuple(sorted((frozenset(v) for v in self.vertices), key=sorted))
        )

    @classmethod
    def from_names(cls, dim: int, facets: Sequence[str], vertices: Iterable[Iterable[str]]):
        "Build from vertex lists given by facet names"
        index = {name: i for i, name in enumerate(facets)}
        try:
            verts = [frozenset(index[name] for name in v) for v in vertices]
        except KeyError as e:
            raise PolytopeError("unknown facet name", [f"vertex names unknown facet {e.args[0]}"])
        return cls(dim, tuple(facets), tuple(verts))

    @property
    def m(self) -> int:
        "Number of facets"
        return len(self.facets)

    def facet_index(self, name: str) -> int:
        try:
            return self.facets.index(name)
        except ValueError:
            raise PolytopeError(f"no facet named {name}", [f"unknown facet {name}"])

    def face(self, facets: Iterable[int]) -> Face:
        """
        The face with facet set I(F) = facets.

        :raises PolytopeError: when the facets have no common vertex
        """
        facets = frozenset(facets)
        if facets and not any(facets <= v for v in self.vertices):
            raise PolytopeError(
                "not a face",
                [f"facets {self.describe_facets(facets)} have no common vertex"],
            )
        return Face(facets, self.dim - len(facets))

    def face_by_names(self, names: Iterable[str]) -> Face:
        return self.face(self.facet_index(n) for n in names)

    def describe_facets(self, facets: Iterable[int]) -> str:
        "Human name of a facet set, e.g. F1∩F5 (P for the empty set)"
        facets = sorted(facets)
        if not facets:
            return "P"
        return "∩".join(self.facets[i] for i in facets)

    def describe(self, face: Face) -> str:
        return self.describe_facets(face.facets)

    def vertex_faces(self) -> List[Face]:
        return [Face(v, 0) for v in self.vertices]

    def vertices_of(self, face: Face) -> List[FrozenSet[int]]:
        "Vertices of a face: the vertex sets containing I(F)"
        return [v for v in self.vertices if face.facets <= v]

    @cached_property
    def faces(self) -> Tuple[Face, ...]:
        return tuple(enumerate_faces(self))


def validate(P: CombinatorialPolytope) -> List[str]:
    """
    Check simplicity and well-formedness.

    :return: list of diagnostics, empty iff P is a valid simple polytope
    """
    diagnostics = []
    n, m = P.dim, P.m
    if n < 1:
        diagnostics.append(f"dimension must be at least 1, got {n}")
    if len(set(P.facets)) != m:
        dupes = sorted({f for f in P.facets if P.facets.count(f) > 1})
        diagnostics.append(f"duplicate facet names {', '.join(dupes)}")
    if not P.vertices:
        diagnostics.append("polytope has no vertices")

    seen = set()
    for v in P.vertices:
        label = "{" + ",".join(P.facets[i] if 0 <= i < m else str(i) for i in sorted(v)) + "}"
        if any(not 0 <= i < m for i in v):
            diagnostics.append(f"vertex {label} refers to a facet index out of range")
        if len(v) != n:
            diagnostics.append(f"simplicity violated at vertex {label}: {len(v)} facets instead of {n}")
        if v in seen:
            diagnostics.append(f"vertex {label} listed twice")
        seen.add(v)

    used = set().union(*P.vertices) if P.vertices else set()
    for i, name in enumerate(P.facets):
        if i not in used:
            diagnostics.append(f"facet {name} contains no vertex")

    return diagnostics


def check(P: CombinatorialPolytope) -> CombinatorialPolytope:
    "Raise PolytopeError with all diagnostics unless P is valid"
    diagnostics = validate(P)
    if diagnostics:
        raise PolytopeError("invalid polytope", diagnostics)
    return P


def enumerate_faces(P: CombinatorialPolytope) -> List[Face]:
    """
    All faces of P, P itself included, each exactly once, in canonical order.
    """
    found = set()
    for v in P.vertices:
        for k in range(len(v) + 1):
            found.update(frozenset(s) for s in combinations(sorted(v), k))
    faces = sorted(Face(s, P.dim - len(s)) for s in found)
    log.debug(f"enumerated {len(faces)} faces of a {P.dim}-polytope with {P.m} facets")
    return faces


def f_vector(P: CombinatorialPolytope, face: Face = None) -> Tuple[int, ...]:
    """
    Face counts (f_0, ..., f_d) of a face F of P (of P itself when face is None); f_d = 1.
    """
    face = face or Face(frozenset(), P.dim)
    counts = [0] * (face.dim + 1)
    for G in P.faces:
        if face.facets <= G.facets:
            counts[G.dim] += 1
    return tuple(counts)


def h_vector(P: CombinatorialPolytope, face: Face = None) -> Tuple[int, ...]:
    """
    h-vector (h_0, ..., h_d) of a face, defined by
    sum_i f_i (t-1)^i = sum_i h_i t^(d-i).
    """
    f = f_vector(P, face)
    d = len(f) - 1
    poly = Poly(sum(fi * (_t - 1) ** i for i, fi in enumerate(f)), _t)
    coeffs = [int(c) for c in poly.all_coeffs()]
    # all_coeffs starts at the leading term t^d, which is h_0
    coeffs = [0] * (d + 1 - len(coeffs)) + coeffs
    return tuple(coeffs)


def _new_facet_name(taken: Sequence[str], name: str) -> str:
    if name not in taken:
        return name
    k = 2
    while f"{name}_{k}" in taken:
        k += 1
    return f"{name}_{k}"


def truncate(P: CombinatorialPolytope, face: Face, name: str = "F0") -> CombinatorialPolytope:
    """
    Cut a face F of codimension k >= 2 off P by a new facet F_0 (appended last).

    Vertices of P not on F are kept; each vertex w of F is replaced by the k vertices
    (I(w) - {i}) + {F_0}, i in I(F).

    :param name: name of the new facet; made unique with a _2, _3 ... suffix if taken
    :raises PolytopeError: for P itself, facets, or facet sets that are not faces
    """
    face = P.face(face.facets)
    if face.codim < 2:
        raise PolytopeError(
            "cannot truncate",
            [f"face {P.describe(face)} has codimension {face.codim}; truncation needs at least 2"],
        )

    new = P.m
    vertices = [v for v in P.vertices if not face.facets <= v]
    for w in P.vertices_of(face):
        for i in sorted(face.facets):
            vertices.append((w - {i}) | {new})

    result = CombinatorialPolytope(P.dim, P.facets + (_new_facet_name(P.facets, name),), tuple(vertices))
    log.debug(
        f"truncated {P.describe(face)}: {P.m} -> {result.m} facets, "
        f"{len(P.vertices)} -> {len(result.vertices)} vertices"
    )
    return result


def simplex(n: int, prefix: str = "F") -> CombinatorialPolytope:
    "The n-simplex with facets F1 ... F(n+1); vertex i omits facet i"
    facets = tuple(f"{prefix}{i + 1}" for i in range(n + 1))
    return CombinatorialPolytope(n, facets, tuple(frozenset(c) for c in combinations(range(n + 1), n)))


def polygon(k: int, prefix: str = "F") -> CombinatorialPolytope:
    "The k-gon with facets (edges) F1 ... Fk, consecutive edges meeting"
    facets = tuple(f"{prefix}{i + 1}" for i in range(k))
    return CombinatorialPolytope(2, facets, tuple(frozenset({i, (i + 1) % k}) for i in range(k)))


def product(P: CombinatorialPolytope, Q: CombinatorialPolytope) -> CombinatorialPolytope:
    "Product polytope; facets of Q are renumbered after those of P and renamed when taken"
    vertices = tuple(v | frozenset(P.m + j for j in w) for v in P.vertices for w in Q.vertices)
    facets = P.facets
    for name in Q.facets:
        facets += (_new_facet_name(facets, name),)
    return CombinatorialPolytope(P.dim + Q.dim, facets, vertices)
