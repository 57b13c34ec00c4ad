"""Alternating forms with rational coefficients and the Chevalley-Eilenberg differential.

Degree is capped at 4 (the differential of a torsion 3-form).  Keys are
strictly increasing tuples of basis indices; evaluation on arbitrary tuples
follows the alternating sign rules.
"""

from __future__ import annotations

from fractions import Fraction

from .liealg import GraphLieAlgebra

MAX_DEGREE = 4


def _sort_with_sign(indices) -> tuple[int, tuple[int, ...]] | None:
    """Sorted tuple and permutation sign; None when an index repeats."""
    idx = list(indices)
    sign = 1
    # insertion sort, counting swaps; tuples here have length <= 4
    for a in range(1, len(idx)):
        b = a
        while b > 0 and idx[b - 1] > idx[b]:
            idx[b - 1], idx[b] = idx[b], idx[b - 1]
            sign = -sign
            b -= 1
    for a in range(1, len(idx)):
        if idx[a - 1] == idx[a]:
            return None
    return sign, tuple(idx)


class AltForm:
    """Alternating k-form, stored as {increasing index tuple: nonzero Fraction}."""

    __slots__ = ("degree", "terms")

    def __init__(self, degree: int, terms: dict[tuple[int, ...], Fraction] | None = None):
        if not (0 <= degree <= MAX_DEGREE):
            raise ValueError(f"degree {degree} outside 0..{MAX_DEGREE}")
        self.degree = degree
        self.terms: dict[tuple[int, ...], Fraction] = {}
        for key, c in (terms or {}).items():
            if c == 0:
                continue
            if len(key) != degree or list(key) != sorted(set(key)):
                raise ValueError(f"key {key} is not a strictly increasing {degree}-tuple")
            self.terms[key] = Fraction(c)

    @staticmethod
    def term(indices, c=1) -> "AltForm":
        """The form c * b^{i1} ^ ... ^ b^{ik} from an arbitrary index tuple."""
        srt = _sort_with_sign(indices)
        if srt is None:
            return AltForm(len(tuple(indices)))
        sign, key = srt
        return AltForm(len(key), {key: Fraction(c) * sign})

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "AltForm") -> "AltForm":
        if self.degree != other.degree:
            raise ValueError("degree mismatch")
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, Fraction(0)) + c
        return AltForm(self.degree, out)

    def __sub__(self, other: "AltForm") -> "AltForm":
        return self + other.scale(-1)

    def scale(self, c) -> "AltForm":
        c = Fraction(c)
        return AltForm(self.degree, {k: c * v for k, v in self.terms.items()})

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, AltForm)
            and self.degree == other.degree
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.degree, frozenset(self.terms.items())))

    def evaluate(self, indices) -> Fraction:
        """Value on a tuple of basis indices (alternating in its arguments)."""
        indices = tuple(indices)
        if len(indices) != self.degree:
            raise ValueError("arity mismatch")
        srt = _sort_with_sign(indices)
        if srt is None:
            return Fraction(0)
        sign, key = srt
        return sign * self.terms.get(key, Fraction(0))

    def __repr__(self):
        if not self.terms:
            return f"AltForm({self.degree}, 0)"
        bits = [f"{c} ^ {' '.join(str(i) for i in k)}" for k, c in sorted(self.terms.items())]
        return f"AltForm({self.degree}, {'; '.join(bits)})"


def wedge(f: AltForm, g: AltForm) -> AltForm:
    """Graded-antisymmetric product; degrees must sum to at most 4."""
    deg = f.degree + g.degree
    if deg > MAX_DEGREE:
        raise ValueError(f"wedge degree {deg} exceeds cap {MAX_DEGREE}")
    out: dict[tuple[int, ...], Fraction] = {}
    for ka, ca in f.terms.items():
        for kb, cb in g.terms.items():
            srt = _sort_with_sign(ka + kb)
            if srt is None:
                continue
            sign, key = srt
            out[key] = out.get(key, Fraction(0)) + sign * ca * cb
    return AltForm(deg, out)


def dual(idx: int) -> AltForm:
    """The 1-form dual to basis element idx."""
    return AltForm(1, {(idx,): Fraction(1)})


def _d_dual(alg: GraphLieAlgebra, idx: int) -> AltForm:
    """d of a dual 1-form: zero on vertex duals, -v^i ^ v^j on the edge (i,j) dual."""
    if alg.is_vertex(idx):
        return AltForm(2)
    i, j = alg.edge_of_index[idx]
    return AltForm(2, {(i, j): Fraction(-1)})


def ce_differential(alg: GraphLieAlgebra, f: AltForm) -> AltForm:
    """Chevalley-Eilenberg differential of a k-form, k in {1,2,3}.

    Extends d on dual 1-forms as an anti-derivation; agrees with the direct
    alternating-sum formula (df)(x_0..x_k) = sum_{p<q} (-1)^{p+q} f([x_p,x_q], ...).
    """
    if f.degree not in (1, 2, 3):
        raise ValueError(f"unsupported degree {f.degree}")
    out = AltForm(f.degree + 1)
    for key, c in f.terms.items():
        for r, idx in enumerate(key):
            dpart = _d_dual(alg, idx)
            if dpart.is_zero():
                continue
            rest = key[:r] + key[r + 1:]
            sign = (-1) ** r
            for dkey, dc in dpart.terms.items():
                srt = _sort_with_sign(dkey + rest)
                if srt is None:
                    continue
                psign, okey = srt
                out.terms[okey] = out.terms.get(okey, Fraction(0)) + sign * psign * c * dc
    return AltForm(out.degree, out.terms)


def dump_altform(f: AltForm, one_based: bool = True) -> str:
    """Golden-test dump: one term per line "coeff ^ i1 i2 ... ik" in key order."""
    shift = 1 if one_based else 0
    lines = []
    for key in sorted(f.terms):
        idxs = " ".join(str(i + shift) for i in key)
        lines.append(f"{f.terms[key]} ^ {idxs}")
    return "\n".join(lines) + ("\n" if lines else "")
