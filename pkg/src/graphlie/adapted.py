"""Adapted complex structures on graph Lie algebras.

An adapted map sends every basis element (vertex or edge) to plus or minus
another basis element, with square -Id.  It is stored as a fixed-point-free
involution `partner` plus a sign array, J(b_i) = sign[i] * b_partner[i], with
sign[i] * sign[partner[i]] = -1.  Exactly one element of each orbit has a
positive image; certificates list that element first ("A -> B" means
J(A) = +B, J(B) = -A).

Every orbit of every map built here is positively oriented where the
mathematics allows; edge orbits created by wedge expansion carry the sign
forced by the extension rule (k strictly between the endpoint indices flips
the sign), which is why a certificate line may lead with the higher edge.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .graphs import Graph
from .liealg import GraphLieAlgebra, LieVector, build_algebra
from .rational import Subspace


class CertificateError(ValueError):
    pass


class WedgeViolation(ValueError):
    """A non-distinguished edge is in no complex wedge: the map is not integrable."""


@dataclass(frozen=True)
class AdaptedMap:
    partner: tuple[int, ...]
    sign: tuple[int, ...]

    def __post_init__(self):
        p, s = self.partner, self.sign
        for i in range(len(p)):
            if p[i] == i or p[p[i]] != i:
                raise ValueError("partner is not a fixed-point-free involution")
            if s[i] * s[p[i]] != -1:
                raise ValueError("orbit signs must multiply to -1 (J^2 = -Id)")

    @property
    def dim(self) -> int:
        return len(self.partner)

    def image(self, idx: int) -> tuple[int, int]:
        """J(b_idx) as (sign, basis index)."""
        return self.sign[idx], self.partner[idx]

    def orbits(self) -> list[tuple[int, int]]:
        """One (A, B) per orbit with J(A) = +B, sorted by A."""
        return sorted((i, self.partner[i]) for i in range(self.dim) if self.sign[i] == 1)

    def orbit_key(self) -> tuple[tuple[int, int], ...]:
        """Canonical comparison key (the certificate tie-breaking order)."""
        return tuple(self.orbits())


def make_adapted(alg: GraphLieAlgebra, pairs) -> AdaptedMap:
    """Build the map with J(b_a) = +b_b for every ordered pair (a, b).

    The pairs must partition all basis indices; an odd-dimensional algebra
    admits no such pairing.
    """
    dim = alg.dim
    if dim % 2:
        raise ValueError(f"odd basis dimension {dim}: no signed pairing exists")
    partner = [-1] * dim
    sign = [0] * dim
    for a, b in pairs:
        if not (0 <= a < dim and 0 <= b < dim) or a == b:
            raise ValueError(f"bad orbit pair ({a},{b})")
        if partner[a] != -1 or partner[b] != -1:
            raise ValueError(f"basis index repeated in orbit list: ({a},{b})")
        partner[a], partner[b] = b, a
        sign[a], sign[b] = 1, -1
    missing = [i for i in range(dim) if partner[i] == -1]
    if missing:
        raise ValueError(f"orbit list does not cover basis indices {missing}")
    return AdaptedMap(tuple(partner), tuple(sign))


# ---------------------------------------------------------------------------
# linear action and the Nijenhuis tensor


def apply_J(alg: GraphLieAlgebra, J: AdaptedMap, x: LieVector) -> LieVector:
    if J.dim != alg.dim:
        raise ValueError("dimension mismatch")
    out: dict[int, Fraction] = {}
    for i, c in x.coeffs.items():
        out[J.partner[i]] = out.get(J.partner[i], Fraction(0)) + J.sign[i] * c
    return LieVector(out)


def _n_basis(alg: GraphLieAlgebra, J: AdaptedMap, i: int, j: int) -> dict[int, int]:
    """N_J(b_i, b_j) as a sparse integer vector."""
    p, s = J.partner, J.sign
    acc: dict[int, int] = {}

    def add(idx: int, c: int):
        acc[idx] = acc.get(idx, 0) + c
        if acc[idx] == 0:
            del acc[idx]

    hit = alg.bracket_basis(i, j)
    if hit:
        add(hit[1], hit[0])
    hit = alg.bracket_basis(p[i], j)
    if hit:  # J([Jb_i, b_j])
        add(p[hit[1]], s[i] * hit[0] * s[hit[1]])
    hit = alg.bracket_basis(i, p[j])
    if hit:  # J([b_i, Jb_j])
        add(p[hit[1]], s[j] * hit[0] * s[hit[1]])
    hit = alg.bracket_basis(p[i], p[j])
    if hit:  # -[Jb_i, Jb_j]
        add(hit[1], -s[i] * s[j] * hit[0])
    return acc


def nijenhuis(alg: GraphLieAlgebra, J: AdaptedMap, i: int, j: int) -> LieVector:
    """N_J on a pair of basis elements, evaluated exactly."""
    return LieVector({k: Fraction(v) for k, v in _n_basis(alg, J, i, j).items()})


def nijenhuis_vec(alg: GraphLieAlgebra, J: AdaptedMap, x: LieVector, y: LieVector) -> LieVector:
    """Bilinear N_J on arbitrary vectors (used by the symmetry test suites)."""
    from .liealg import bracket

    jx, jy = apply_J(alg, J, x), apply_J(alg, J, y)
    inner = bracket(alg, jx, y) + bracket(alg, x, jy)
    return bracket(alg, x, y) + apply_J(alg, J, inner) - bracket(alg, jx, jy)


def is_integrable(alg: GraphLieAlgebra, J: AdaptedMap, full: bool = False):
    """(True, None) when N_J vanishes, else (False, first failing basis pair).

    The fast path checks vertex-vertex pairs only; the symmetries of N_J plus
    centrality of the edge span make that sufficient.  `full` checks every
    basis pair and serves as the oracle for that reduction.
    """
    if J.dim != alg.dim:
        raise ValueError("dimension mismatch")
    top = alg.dim if full else alg.n
    for i in range(top):
        for j in range(i + 1, top):
            if _n_basis(alg, J, i, j):
                return False, (i, j)
    return True, None


def is_abelian(alg: GraphLieAlgebra, J: AdaptedMap) -> bool:
    """True iff [Jx, Jy] = [x, y] on all basis pairs."""
    p, s = J.partner, J.sign
    for i in range(alg.dim):
        for j in range(i + 1, alg.dim):
            lhs = alg.bracket_basis(p[i], p[j])
            if lhs is not None:
                lhs = (lhs[0] * s[i] * s[j], lhs[1])
            rhs = alg.bracket_basis(i, j)
            if lhs != rhs:
                return False
    return True


# ---------------------------------------------------------------------------
# distinguished edges, wedges, basic subgraph


def distinguished_edges(alg: GraphLieAlgebra, J: AdaptedMap) -> list[tuple[int, int]]:
    """Edges joining v and Jv, in canonical order."""
    return [e for e in alg.graph.edges if J.partner[e[0]] == e[1]]


def distinguished_edges_bracket(alg: GraphLieAlgebra, J: AdaptedMap) -> list[tuple[int, int]]:
    """The bracket characterization: edges with [Jv,w] = [v,Jw] = 0.

    Agrees with `distinguished_edges` whenever J is integrable.
    """
    out = []
    for v, w in alg.graph.edges:
        if alg.bracket_basis(J.partner[v], w) is None and alg.bracket_basis(v, J.partner[w]) is None:
            out.append((v, w))
    return out


def jtilde_sign(i: int, j: int, k: int) -> int:
    """Sign of the wedge extension on e_{i,k} -> e_{j,k}: -1 iff k lies between i and j."""
    return -1 if min(i, j) < k < max(i, j) else 1


def complex_wedges(alg: GraphLieAlgebra, J: AdaptedMap) -> list[tuple[int, int, int]]:
    """All complex wedges (center u, v, w) with Jv = +w, sorted.

    Each non-distinguished edge must lie in exactly one wedge, with its
    J-image the adjacent partner edge carrying the forced sign; any failure
    raises WedgeViolation (the map cannot be integrable).
    """
    g = alg.graph
    dist = set(distinguished_edges(alg, J))
    wedges = {}
    for e in g.edges:
        if e in dist:
            continue
        eidx = alg.edge_index[e]
        s, timg = J.image(eidx)
        if alg.is_vertex(timg):
            raise WedgeViolation(f"non-distinguished edge {e} maps to a vertex")
        e2 = alg.edge_of_index[timg]
        if e2 in dist:
            raise WedgeViolation(f"non-distinguished edge {e} maps to distinguished {e2}")
        shared = set(e) & set(e2)
        if len(shared) != 1:
            raise WedgeViolation(f"edge {e} maps to non-adjacent edge {e2}")
        c = shared.pop()
        v = e[0] if e[1] == c else e[1]
        w = e2[0] if e2[1] == c else e2[1]
        if J.partner[v] != w:
            raise WedgeViolation(f"wedge endpoints {v},{w} of {e},{e2} are not J-paired")
        # orient the endpoint pair positively
        if J.sign[v] != 1:
            v, w = w, v
        expected = jtilde_sign(v, w, c)
        vsign, vimg = J.image(alg.edge_index[tuple(sorted((v, c)))])
        if vimg != alg.edge_index[tuple(sorted((w, c)))] or vsign != expected:
            raise WedgeViolation(f"edge pair at center {c} violates the extension sign rule")
        wedges[frozenset((e, e2))] = (c, v, w)
    return sorted(wedges.values())


@dataclass(frozen=True)
class BasicDecomposition:
    """A partition of the vertices into A1 / A2 / A3 copies with explicit labels.

    a1 entries (a, b) mean Ja = +b; a2 entries (x, y, u) mean edge {x,y} with
    Jx = +y and Ju = +e_{x,y} (u the isolated member); a3 entries (x, y, z, w)
    mean edges {x,y}, {z,w} with Jx = +y, Jz = +w, J e_{x,y} = +e_{z,w}.
    """

    a1: tuple[tuple[int, int], ...]
    a2: tuple[tuple[int, int, int], ...]
    a3: tuple[tuple[int, int, int, int], ...]

    @property
    def signature(self) -> tuple[int, int, int]:
        return (len(self.a1), len(self.a2), len(self.a3))

    @property
    def n_vertices(self) -> int:
        return 2 * len(self.a1) + 3 * len(self.a2) + 4 * len(self.a3)

    def vertices(self) -> list[int]:
        out: list[int] = []
        for a, b in self.a1:
            out += [a, b]
        for x, y, u in self.a2:
            out += [x, y, u]
        for x, y, z, w in self.a3:
            out += [x, y, z, w]
        return out

    def edges(self) -> list[tuple[int, int]]:
        out = [tuple(sorted((x, y))) for x, y, _ in self.a2]
        for x, y, z, w in self.a3:
            out += [tuple(sorted((x, y))), tuple(sorted((z, w)))]
        return out

    def validate(self):
        verts = self.vertices()
        n = self.n_vertices
        if sorted(verts) != list(range(n)):
            raise ValueError("copies must partition vertices 0..n-1")
        return self

    def vertex_pairs(self) -> list[tuple[int, int]]:
        """All J-paired vertex pairs usable as wedge endpoints (Ja = +b order)."""
        pairs = list(self.a1)
        pairs += [(x, y) for x, y, _ in self.a2]
        for x, y, z, w in self.a3:
            pairs += [(x, y), (z, w)]
        return pairs

    def to_text(self) -> str:
        lines = [f"B {self.n_vertices}"]
        lines += [f"A1 {a + 1} {b + 1}" for a, b in self.a1]
        lines += [f"A2 {x + 1} {y + 1} {u + 1}" for x, y, u in self.a2]
        lines += [f"A3 {x + 1} {y + 1} {z + 1} {w + 1}" for x, y, z, w in self.a3]
        return "\n".join(lines) + "\n"


def parse_decomposition(text: str) -> BasicDecomposition:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("B "):
        raise CertificateError("decomposition file must start with 'B <n>'")
    a1, a2, a3 = [], [], []
    for ln in lines[1:]:
        parts = ln.split()
        vals = tuple(int(x) - 1 for x in parts[1:])
        if parts[0] == "A1" and len(vals) == 2:
            a1.append(vals)
        elif parts[0] == "A2" and len(vals) == 3:
            a2.append(vals)
        elif parts[0] == "A3" and len(vals) == 4:
            a3.append(vals)
        else:
            raise CertificateError(f"bad decomposition line {ln!r}")
    decomp = BasicDecomposition(tuple(a1), tuple(a2), tuple(a3)).validate()
    if decomp.n_vertices != int(lines[0].split()[1]):
        raise CertificateError("vertex count disagrees with copy list")
    return decomp


def canonical_basic(p1: int, p2: int, p3: int) -> BasicDecomposition:
    """The canonical labeling: A1 pairs first, then A2 blocks (edge on the
    first two, isolated last), then A3 blocks."""
    a1, a2, a3 = [], [], []
    v = 0
    for _ in range(p1):
        a1.append((v, v + 1))
        v += 2
    for _ in range(p2):
        a2.append((v, v + 1, v + 2))
        v += 3
    for _ in range(p3):
        a3.append((v, v + 1, v + 2, v + 3))
        v += 4
    return BasicDecomposition(tuple(a1), tuple(a2), tuple(a3))


def expand(decomp: BasicDecomposition, wedges) -> tuple[Graph, AdaptedMap]:
    """Expand a basic decomposition by complex wedges and extend J by the sign rule.

    `wedges` lists (center u, endpoint v) records; v must have a vertex
    J-image w in the base, u must avoid {v, w}, and the implied edges {u,v},
    {u,w} must be fresh and mutually distinct.  The result is asserted
    integrable.
    """
    decomp.validate()
    n = decomp.n_vertices
    vimage = {}
    for a, b in decomp.vertex_pairs():
        vimage[a] = b
        vimage[b] = a
    base_edges = decomp.edges()
    used = set(base_edges)
    new_orbits: list[tuple[tuple[int, int], tuple[int, int], int]] = []
    for u, v in wedges:
        if v not in vimage:
            raise ValueError(f"wedge endpoint {v} has no vertex J-image")
        w = vimage[v]
        if u == v or u == w:
            raise ValueError(f"wedge center {u} equals an endpoint")
        e1 = tuple(sorted((u, v)))
        e2 = tuple(sorted((u, w)))
        if e1 in used or e2 in used or e1 == e2:
            raise ValueError(f"wedge ({u};{v},{w}) duplicates an edge")
        used.update((e1, e2))
        new_orbits.append((e1, e2, jtilde_sign(v, w, u)))

    g = Graph.build(n, used)
    alg = build_algebra(g)
    pairs: list[tuple[int, int]] = list(decomp.a1)
    for x, y, u in decomp.a2:
        pairs.append((x, y))
        pairs.append((u, alg.edge_index[tuple(sorted((x, y)))]))
    for x, y, z, w in decomp.a3:
        pairs.append((x, y))
        pairs.append((z, w))
        pairs.append((alg.edge_index[tuple(sorted((x, y)))], alg.edge_index[tuple(sorted((z, w)))]))
    for e1, e2, sgn in new_orbits:
        i1, i2 = alg.edge_index[e1], alg.edge_index[e2]
        pairs.append((i1, i2) if sgn == 1 else (i2, i1))
    J = make_adapted(alg, pairs)
    ok, witness = is_integrable(alg, J)
    if not ok:
        raise AssertionError(f"expansion produced a non-integrable map at {witness}")
    return g, J


def basic_subgraph(alg: GraphLieAlgebra, J: AdaptedMap):
    """The unique J-invariant spanning basic subgraph of an integrable adapted map.

    Returns (basic graph, decomposition, restriction of J to it).  The
    decomposition records orbits in their positive direction, so expanding it
    with the recovered wedge plan reproduces (graph, J) exactly whenever J's
    vertex-to-edge orbits are positively oriented from the vertex.
    """
    g = alg.graph
    dist = set(distinguished_edges(alg, J))
    a1, a2, a3 = [], [], []
    for A, B in J.orbits():
        if alg.is_vertex(A) and alg.is_vertex(B):
            if tuple(sorted((A, B))) not in dist:
                a1.append((A, B))
        elif alg.is_vertex(A) != alg.is_vertex(B):
            v = A if alg.is_vertex(A) else B
            eidx = B if alg.is_vertex(A) else A
            x, y = alg.edge_of_index[eidx]
            if tuple(sorted((x, y))) not in dist:
                raise WedgeViolation(f"vertex {v} maps to a non-distinguished edge")
            if J.sign[x] != 1:
                x, y = y, x
            a2.append((x, y, v))
        else:
            e1, e2 = alg.edge_of_index[A], alg.edge_of_index[B]
            if e1 in dist and e2 in dist:
                x, y = e1 if J.sign[e1[0]] == 1 else (e1[1], e1[0])
                z, w = e2 if J.sign[e2[0]] == 1 else (e2[1], e2[0])
                a3.append((x, y, z, w))
            elif (e1 in dist) != (e2 in dist):
                raise WedgeViolation(f"distinguished edge paired with non-distinguished: {e1},{e2}")
    decomp = BasicDecomposition(tuple(a1), tuple(a2), tuple(a3)).validate()
    basic = Graph.build(g.n, dist)
    balg = build_algebra(basic)
    # restriction keeps J's exact signs; orbits stay inside the basic subalgebra
    pairs = []
    for A, B in J.orbits():
        if alg.is_vertex(A) and alg.is_vertex(B):
            pairs.append((A, B))
        elif alg.is_vertex(A) or alg.is_vertex(B):
            v, eidx = (A, B) if alg.is_vertex(A) else (B, A)
            new_e = balg.edge_index[alg.edge_of_index[eidx]]
            pairs.append((v, new_e) if alg.is_vertex(A) else (new_e, v))
        else:
            e1, e2 = alg.edge_of_index[A], alg.edge_of_index[B]
            if e1 in dist and e2 in dist:
                pairs.append((balg.edge_index[e1], balg.edge_index[e2]))
    restricted = make_adapted(balg, pairs)
    return basic, decomp, restricted


def recover_plan(alg: GraphLieAlgebra, J: AdaptedMap):
    """(decomposition, wedge plan) whose expansion rebuilds (graph, J)."""
    _, decomp, _ = basic_subgraph(alg, J)
    plan = [(c, v) for c, v, _ in complex_wedges(alg, J)]
    return decomp, plan


def parse_plan(text: str) -> list[tuple[int, int]]:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("P"):
        raise CertificateError("plan file must start with 'P <count>'")
    out = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise CertificateError(f"bad plan line {ln!r}")
        out.append((int(parts[0]) - 1, int(parts[1]) - 1))
    head = lines[0].split()
    if len(head) == 2 and int(head[1]) != len(out):
        raise CertificateError("plan count disagrees with body")
    return out


def format_plan(plan) -> str:
    lines = [f"P {len(plan)}"]
    lines += [f"{c + 1} {v + 1}" for c, v in plan]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# nilpotency


def nilpotency_step(alg: GraphLieAlgebra, J: AdaptedMap) -> int:
    """2 when J maps the commutator ideal into the center, else 3."""
    for idx in alg.commutator_indices():
        if not alg.is_central_basis(J.partner[idx]):
            return 3
    return 2


def nilpotency_step_graph(alg: GraphLieAlgebra, J: AdaptedMap) -> int:
    """Graph criterion: 3 iff some A2 copy's isolated member is non-isolated."""
    _, decomp, _ = basic_subgraph(alg, J)
    for _, _, u in decomp.a2:
        if alg.graph.degree(u) > 0:
            return 3
    return 2


def ascending_series(alg: GraphLieAlgebra, J: AdaptedMap) -> list[int]:
    """Dimensions of the J-compatible ascending series, up to stabilization."""
    d = alg.dim
    dims = [0]
    current = Subspace(d)
    while True:
        rows: list[list[Fraction]] = []
        for j in range(alg.n):
            # residues of [x, v_j] and [Jx, v_j] modulo the previous term
            direct: list[dict[int, Fraction]] = [dict() for _ in range(d)]
            for i in range(alg.n):
                hit = alg.bracket_basis(i, j)
                if hit:
                    s, t = hit
                    unit = [Fraction(0)] * d
                    unit[t] = Fraction(s)
                    res = current.residue(unit)
                    for r, val in enumerate(res):
                        if val != 0:
                            direct[r][i] = direct[r].get(i, Fraction(0)) + val
            for r in range(d):
                if direct[r]:
                    row = [Fraction(0)] * d
                    for i, val in direct[r].items():
                        row[i] = val
                    rows.append(row)
            jrows: list[dict[int, Fraction]] = [dict() for _ in range(d)]
            for i in range(d):
                pi = J.partner[i]
                if pi >= alg.n:
                    continue
                hit = alg.bracket_basis(pi, j)
                if hit:
                    s, t = hit
                    unit = [Fraction(0)] * d
                    unit[t] = Fraction(s * J.sign[i])
                    res = current.residue(unit)
                    for r, val in enumerate(res):
                        if val != 0:
                            jrows[r][i] = jrows[r].get(i, Fraction(0)) + val
            for r in range(d):
                if jrows[r]:
                    row = [Fraction(0)] * d
                    for i, val in jrows[r].items():
                        row[i] = val
                    rows.append(row)
        nxt = _nullspace_subspace(rows, d)
        dims.append(nxt.rank)
        if nxt.rank == d or nxt.rank == current.rank:
            return dims
        current = nxt


def _nullspace_subspace(rows: list[list[Fraction]], d: int) -> Subspace:
    from .rational import rref

    if not rows:
        space = Subspace(d)
        for i in range(d):
            unit = [Fraction(0)] * d
            unit[i] = Fraction(1)
            space.add(unit)
        return space
    red, pivots = rref(rows)
    free = [c for c in range(d) if c not in pivots]
    space = Subspace(d)
    for f in free:
        vec = [Fraction(0)] * d
        vec[f] = Fraction(1)
        for rowi, p in enumerate(pivots):
            vec[p] = -red[rowi][f]
        space.add(vec)
    return space


def step_from_series(alg: GraphLieAlgebra, dims: list[int]) -> int:
    """Nilpotency step read off the series; edgeless algebras count as 2-step."""
    if alg.graph.m == 0:
        return 2
    for k, dk in enumerate(dims):
        if dk == alg.dim:
            return k
    raise ValueError("series did not reach the full algebra")


# ---------------------------------------------------------------------------
# certificate text format


def format_certificate(alg: GraphLieAlgebra, J: AdaptedMap) -> str:
    g = alg.graph
    lines = [f"J {g.n} {g.m}"]
    lines += [f"{alg.basis_name(a)} -> {alg.basis_name(b)}" for a, b in J.orbits()]
    return "\n".join(lines) + "\n"


def parse_certificate(text: str, g: Graph) -> AdaptedMap:
    alg = build_algebra(g)
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise CertificateError("empty certificate")
    head = lines[0].split()
    if len(head) != 3 or head[0] != "J":
        raise CertificateError(f"bad certificate header {lines[0]!r}")
    if (int(head[1]), int(head[2])) != (g.n, g.m):
        raise CertificateError(
            f"certificate is for a {head[1]}-vertex {head[2]}-edge graph, not {g.n}/{g.m}")
    pairs = []
    for ln in lines[1:]:
        parts = ln.split("->")
        if len(parts) != 2:
            raise CertificateError(f"bad orbit line {ln!r}")
        try:
            a = alg.index_of_name(parts[0].strip())
            b = alg.index_of_name(parts[1].strip())
        except ValueError as exc:
            raise CertificateError(str(exc)) from None
        pairs.append((a, b))
    try:
        return make_adapted(alg, pairs)
    except ValueError as exc:
        raise CertificateError(str(exc)) from None
