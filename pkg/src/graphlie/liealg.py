"""The 2-step nilpotent Lie algebra of a graph and exact vector arithmetic.

Basis order is fixed once and for all: vertex elements v_0..v_{n-1} first
(ascending index), then one element per edge in canonical edge order.  The
bracket of two adjacent vertices is the edge that joins them, taken with a
plus sign from the lower-index vertex; all other basis brackets vanish, so
every bracket lands in the span of the edges.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .graphs import Graph


@dataclass(frozen=True)
class GraphLieAlgebra:
    graph: Graph

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def dim(self) -> int:
        return self.graph.n + self.graph.m

    @cached_property
    def edge_index(self) -> dict[tuple[int, int], int]:
        """Basis index of each edge element (vertices occupy 0..n-1)."""
        return {e: self.n + k for k, e in enumerate(self.graph.edges)}

    @cached_property
    def edge_of_index(self) -> dict[int, tuple[int, int]]:
        return {idx: e for e, idx in self.edge_index.items()}

    def is_vertex(self, idx: int) -> bool:
        return idx < self.n

    def bracket_basis(self, i: int, j: int) -> tuple[int, int] | None:
        """[b_i, b_j] as (sign, basis index), or None when it vanishes."""
        if i >= self.n or j >= self.n or i == j:
            return None
        e = (i, j) if i < j else (j, i)
        idx = self.edge_index.get(e)
        if idx is None:
            return None
        return (1 if i < j else -1, idx)

    def center_indices(self) -> list[int]:
        """Edges together with the isolated vertices, as sorted basis indices."""
        iso = list(self.graph.isolated_vertices())
        return sorted(iso + list(range(self.n, self.dim)))

    def commutator_indices(self) -> list[int]:
        return list(range(self.n, self.dim))

    def is_central_basis(self, idx: int) -> bool:
        return idx >= self.n or not self.graph.adjacency[idx]

    def basis_name(self, idx: int) -> str:
        """1-based display token: v3 or e1,2."""
        if idx < self.n:
            return f"v{idx + 1}"
        i, j = self.edge_of_index[idx]
        return f"e{i + 1},{j + 1}"

    def index_of_name(self, token: str) -> int:
        if token.startswith("v"):
            v = int(token[1:]) - 1
            if not (0 <= v < self.n):
                raise ValueError(f"vertex token {token} out of range")
            return v
        if token.startswith("e"):
            i_s, j_s = token[1:].split(",")
            e = (int(i_s) - 1, int(j_s) - 1)
            if e not in self.edge_index:
                raise ValueError(f"edge token {token} is not an edge of the graph")
            return self.edge_index[e]
        raise ValueError(f"bad basis token {token!r}")


def build_algebra(g: Graph) -> GraphLieAlgebra:
    return GraphLieAlgebra(g)


class LieVector:
    """Sparse exact-rational vector over the algebra basis."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: dict[int, Fraction] | None = None):
        self.coeffs = {k: v for k, v in (coeffs or {}).items() if v != 0}

    @staticmethod
    def basis(idx: int, c=1) -> "LieVector":
        return LieVector({idx: Fraction(c)})

    def __add__(self, other: "LieVector") -> "LieVector":
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, Fraction(0)) + v
        return LieVector(out)

    def __sub__(self, other: "LieVector") -> "LieVector":
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, Fraction(0)) - v
        return LieVector(out)

    def __neg__(self) -> "LieVector":
        return LieVector({k: -v for k, v in self.coeffs.items()})

    def scale(self, c) -> "LieVector":
        c = Fraction(c)
        return LieVector({k: c * v for k, v in self.coeffs.items()})

    def __eq__(self, other) -> bool:
        return isinstance(other, LieVector) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def is_zero(self) -> bool:
        return not self.coeffs

    def support(self) -> list[int]:
        return sorted(self.coeffs)

    def __getitem__(self, idx: int) -> Fraction:
        return self.coeffs.get(idx, Fraction(0))

    def __repr__(self):
        if not self.coeffs:
            return "LieVector(0)"
        inner = " + ".join(f"{v}*b{k}" for k, v in sorted(self.coeffs.items()))
        return f"LieVector({inner})"


ZERO = LieVector()


def bracket(alg: GraphLieAlgebra, x: LieVector, y: LieVector) -> LieVector:
    """Bilinear antisymmetric extension of the structure table."""
    out: dict[int, Fraction] = {}
    for i, xc in x.coeffs.items():
        for j, yc in y.coeffs.items():
            hit = alg.bracket_basis(i, j)
            if hit is None:
                continue
            s, idx = hit
            out[idx] = out.get(idx, Fraction(0)) + s * xc * yc
    return LieVector(out)
