"""Toric invariant theory for all-ones settings, plus determinantal evaluation.

With one-dimensional vertex spaces the base-change torus acts on each arrow
coordinate by a character, so invariants and semi-invariants are spanned by
monomials and everything reduces to lattice-point computations: the
invariant ring is the semigroup ring of the kernel of the weight matrix, a
stability structure grades it, and moduli charts are shifted copies of the
degree-zero part.

The Hilbert-basis computation is a Contejean-Devie completion: breadth-first
growth from unit vectors, extending u by e_i only when the defect vectors
M u and M e_i have negative inner product, pruning anything dominated by a
known solution.  This terminates and returns exactly the minimal nonzero
solutions.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .core import (
    Arrow,
    MarkedQuiverSetting,
    Matrix,
    Representation,
    evaluate_path,
)
from .errors import (
    EmptyProjError,
    ShapeError,
    UnsupportedSettingError,
)

Vector = tuple[int, ...]


def _require_all_ones(s: MarkedQuiverSetting) -> None:
    if any(d != 1 for d in s.dims):
        raise UnsupportedSettingError("operation requires an all-ones dimension vector")
    if s.num_marked_loops:
        raise UnsupportedSettingError("operation requires a mark-free setting")


@dataclass(frozen=True)
class WeightSystem:
    """Torus weights of the arrow coordinates: e_head - e_tail per arrow."""

    setting: MarkedQuiverSetting
    arrows: tuple[Arrow, ...]
    weights: tuple[Vector, ...]

    @classmethod
    def of(cls, s: MarkedQuiverSetting) -> "WeightSystem":
        _require_all_ones(s)
        arrows = s.arrow_list()
        weights = []
        for a in arrows:
            w = [0] * s.k
            w[a.head] += 1
            w[a.tail] -= 1
            weights.append(tuple(w))
        return cls(s, arrows, tuple(weights))

    @property
    def num_arrows(self) -> int:
        return len(self.arrows)

    def weight_of(self, exponents: Sequence[int]) -> Vector:
        return tuple(
            sum(self.weights[a][v] * exponents[a] for a in range(len(self.arrows)))
            for v in range(self.setting.k)
        )


@dataclass(frozen=True)
class StabilityVector:
    theta: Vector

    @classmethod
    def of(cls, s: MarkedQuiverSetting, theta: Sequence[int]) -> "StabilityVector":
        t = tuple(int(x) for x in theta)
        if len(t) != s.k:
            raise ValueError(f"theta must have length {s.k}")
        if sum(t[v] * s.dims[v] for v in range(s.k)) != 0:
            raise ValueError("theta . alpha must vanish")
        return cls(t)

    @property
    def is_zero(self) -> bool:
        return all(x == 0 for x in self.theta)


# ---------------------------------------------------------------------------
# Hilbert bases


def _dominates(u: Sequence[int], v: Sequence[int]) -> bool:
    return all(a >= b for a, b in zip(u, v))


def hilbert_basis(matrix: Sequence[Sequence[int]]) -> list[Vector]:
    """Minimal nonzero solutions of M u = 0, u in N^n (Contejean-Devie).

    ``matrix`` is a list of rows of length n.  Always terminates; the result
    is the Hilbert basis of the solution monoid, sorted.
    """
    rows = [tuple(r) for r in matrix]
    n = len(rows[0]) if rows else 0
    if any(len(r) != n for r in rows):
        raise ValueError("ragged matrix")

    def defect(u: Sequence[int]) -> Vector:
        return tuple(sum(r[i] * u[i] for i in range(n)) for r in rows)

    columns = [defect(tuple(1 if j == i else 0 for j in range(n))) for i in range(n)]
    basis: list[Vector] = []
    frontier: dict[Vector, Vector] = {}
    for i in range(n):
        u = tuple(1 if j == i else 0 for j in range(n))
        frontier[u] = columns[i]
    while frontier:
        next_frontier: dict[Vector, Vector] = {}
        for u, du in frontier.items():
            if all(x == 0 for x in du):
                basis.append(u)
                continue
            for i in range(n):
                if sum(a * b for a, b in zip(du, columns[i])) >= 0:
                    continue
                child = tuple(u[j] + (1 if j == i else 0) for j in range(n))
                if child in next_frontier:
                    continue
                if any(_dominates(child, b) for b in basis):
                    continue
                next_frontier[child] = tuple(a + b for a, b in zip(du, columns[i]))
        # prune against solutions found this round
        frontier = {
            u: du
            for u, du in next_frontier.items()
            if not any(_dominates(u, b) for b in basis)
        }
    return sorted(basis)


def _independent_subset(vectors: Sequence[Vector]) -> list[int]:
    """Indices of a maximal linearly independent subset, greedily from the front."""
    chosen: list[list[Fraction]] = []
    idx: list[int] = []
    for i, vec in enumerate(vectors):
        work = [list(map(Fraction, v)) for v in chosen] + [list(map(Fraction, vec))]
        if _lattice_rank([tuple(row) for row in work]) == len(work):
            chosen.append(list(vec))
            idx.append(i)
    return idx


def _solve_coordinates(basis: Sequence[Vector], target: Vector) -> list[Fraction] | None:
    """Rational coordinates of target over a linearly independent basis, or None."""
    n, m = len(basis[0]), len(basis)
    aug = [[Fraction(basis[r][c]) for r in range(m)] + [Fraction(target[c])] for c in range(n)]
    row = 0
    pivots = []
    for col in range(m):
        pivot = next((q for q in range(row, n) if aug[q][col] != 0), None)
        if pivot is None:
            return None
        aug[row], aug[pivot] = aug[pivot], aug[row]
        for q in range(n):
            if q != row and aug[q][col] != 0:
                factor = aug[q][col] / aug[row][col]
                aug[q] = [a - factor * b for a, b in zip(aug[q], aug[row])]
        pivots.append(row)
        row += 1
    sol = [aug[pivots[c]][m] / aug[pivots[c]][c] for c in range(m)]
    for c in range(n):
        if sum(sol[r] * basis[r][c] for r in range(m)) != target[c]:
            return None
    return sol


def _generator_profiles(basis: Sequence[Vector]) -> list[tuple]:
    """Isomorphism-invariant fingerprints of Hilbert-basis elements.

    For every unordered pair of generators the sum lands in some fiber of the
    pair-sum map; a generator's profile is the sorted multiset of
    (fiber size, is-a-square) it participates in.  Monoid isomorphisms
    permute the (unique minimal) generating set compatibly with sums, so
    matched generators must have equal profiles.
    """
    n = len(basis)
    fibers: dict[Vector, list[tuple[int, int]]] = {}
    for i in range(n):
        for j in range(i, n):
            key = tuple(a + b for a, b in zip(basis[i], basis[j]))
            fibers.setdefault(key, []).append((i, j))
    profile: list[list[tuple[int, bool]]] = [[] for _ in range(n)]
    for pairs in fibers.values():
        size = len(pairs)
        for i, j in pairs:
            profile[i].append((size, i == j))
            if i != j:
                profile[j].append((size, i == j))
    return [tuple(sorted(p)) for p in profile]


def semigroup_isomorphism(
    basis1: Sequence[Sequence[int]], basis2: Sequence[Sequence[int]]
) -> dict[int, int] | None:
    """A monoid isomorphism matching two Hilbert bases, or None.

    Searches for a linear map carrying one Hilbert basis bijectively onto the
    other; such a map identifies the (saturated) solution monoids, hence the
    semigroup algebras.  Returns the generator matching as a dict.
    """
    hb1 = [tuple(v) for v in basis1]
    hb2 = [tuple(v) for v in basis2]
    if len(hb1) != len(hb2):
        return None
    prof1, prof2 = _generator_profiles(hb1), _generator_profiles(hb2)
    if sorted(prof1) != sorted(prof2):
        return None
    base_idx = _independent_subset(hb1)
    base = [hb1[i] for i in base_idx]
    coords = [_solve_coordinates(base, v) for v in hb1]
    if any(c is None for c in coords):
        return None
    candidates = [
        [j for j in range(len(hb2)) if prof2[j] == prof1[i]] for i in base_idx
    ]
    target_index = {v: j for j, v in enumerate(hb2)}
    for tgt in itertools.product(*candidates):
        if len(set(tgt)) != len(base_idx):
            continue
        images: dict[int, int] = {}
        seen = set()
        ok = True
        for src, c in enumerate(coords):
            img = tuple(
                sum(c[q] * Fraction(hb2[tgt[q]][col]) for q in range(len(base_idx)))
                for col in range(len(hb2[0]))
            )
            j = target_index.get(img)
            if j is None or j in seen or prof2[j] != prof1[src]:
                ok = False
                break
            images[src] = j
            seen.add(j)
        if ok:
            return images
    return None


def check_hilbert_minimality(basis: Iterable[Sequence[int]]) -> list[Vector]:
    """Return the basis elements that are sums of other basis elements (should be none)."""
    vecs = [tuple(b) for b in basis]
    bad = []
    for i, b in enumerate(vecs):
        others = [v for j, v in enumerate(vecs) if j != i and _dominates(b, v)]

        def representable(target: Vector, pool: list[Vector]) -> bool:
            if all(x == 0 for x in target):
                return True
            if not pool:
                return False
            head, *rest = pool
            max_c = min(
                (t // h for t, h in zip(target, head) if h > 0), default=0
            )
            for c in range(max_c, -1, -1):
                reduced = tuple(t - c * h for t, h in zip(target, head))
                if min(reduced) >= 0 and representable(reduced, rest):
                    return True
            return False

        if others and representable(b, others):
            bad.append(b)
    return bad


# ---------------------------------------------------------------------------
# invariants and semi-invariants


@dataclass(frozen=True)
class GradedGenerator:
    """A monomial generator: arrow exponents plus its weight multiple."""

    exponents: Vector
    degree: int

    def to_json(self) -> dict:
        return {"exponents": list(self.exponents), "degree": self.degree}


@dataclass(frozen=True)
class Relation:
    """A binomial x^lhs = x^rhs between monomials in the generators."""

    lhs: Vector
    rhs: Vector

    def degrees(self) -> tuple[int, int]:
        return (sum(self.lhs), sum(self.rhs))

    def to_json(self) -> dict:
        return {"lhs": list(self.lhs), "rhs": list(self.rhs)}


@dataclass(frozen=True)
class GradedMonomialAlgebra:
    """Semigroup algebra of monomials whose weight is a multiple of theta."""

    weights: WeightSystem
    theta: StabilityVector
    generators: tuple[GradedGenerator, ...]
    relations: tuple[Relation, ...] = field(default_factory=tuple)

    def degree_zero(self) -> tuple[GradedGenerator, ...]:
        return tuple(g for g in self.generators if g.degree == 0)

    def positive_degree(self) -> tuple[GradedGenerator, ...]:
        return tuple(g for g in self.generators if g.degree > 0)

    def with_relations(self, degree_bound: int = 4) -> "GradedMonomialAlgebra":
        rels = toric_relations([g.exponents for g in self.generators], degree_bound)
        return GradedMonomialAlgebra(self.weights, self.theta, self.generators, tuple(rels))


def invariant_generators(s: MarkedQuiverSetting) -> list[Vector]:
    """Hilbert basis of the weight-zero monomials (traces along cycles)."""
    ws = WeightSystem.of(s)
    rows = [[ws.weights[a][v] for a in range(ws.num_arrows)] for v in range(s.k)]
    return hilbert_basis(rows)


def semi_invariant_generators(
    s: MarkedQuiverSetting, theta: Sequence[int]
) -> GradedMonomialAlgebra:
    """Generators of the graded ring of semi-invariants for theta.

    Solves W u = l * theta for (u, l) in N^(arrows+1); the minimal solutions
    are the algebra generators, graded by the multiple l.  theta = 0 returns
    the plain invariant ring in degree zero.
    """
    ws = WeightSystem.of(s)
    tv = StabilityVector.of(s, theta)
    if tv.is_zero:
        gens = tuple(GradedGenerator(u, 0) for u in invariant_generators(s))
        return GradedMonomialAlgebra(ws, tv, gens)
    n = ws.num_arrows
    rows = [
        [ws.weights[a][v] for a in range(n)] + [-tv.theta[v]] for v in range(s.k)
    ]
    basis = hilbert_basis(rows)
    gens = tuple(GradedGenerator(u[:n], u[n]) for u in basis)
    return GradedMonomialAlgebra(ws, tv, tuple(sorted(gens, key=lambda g: (g.degree, g.exponents))))


def toric_relations(
    generators: Sequence[Sequence[int]], degree_bound: int = 4
) -> list[Relation]:
    """Binomial relations among monomial generators up to a degree bound.

    Monomials in the generators (total degree <= degree_bound) are grouped by
    the arrow-exponent vector they evaluate to.  Fibers are visited in order
    of increasing minimal degree; inside a fiber whose monomials are not yet
    all connected by the relations already emitted, every pair of distinct
    connected components contributes one binomial.  Completeness beyond the
    bound is not claimed.
    """
    gens = [tuple(g) for g in generators]
    ng = len(gens)
    if ng == 0:
        return []

    def image(mono: Vector) -> Vector:
        return tuple(
            sum(mono[i] * gens[i][a] for i in range(ng)) for a in range(len(gens[0]))
        )

    fibers: dict[Vector, list[Vector]] = {}
    for total in range(1, degree_bound + 1):
        for combo in itertools.combinations_with_replacement(range(ng), total):
            mono = [0] * ng
            for i in combo:
                mono[i] += 1
            fibers.setdefault(image(tuple(mono)), []).append(tuple(mono))

    relations: list[Relation] = []

    def connected(members: list[Vector]) -> list[list[Vector]]:
        comp: dict[Vector, int] = {}
        for idx, m in enumerate(members):
            comp[m] = idx
        changed = True
        while changed:
            changed = False
            for m in members:
                for rel in relations:
                    for src, dst in ((rel.lhs, rel.rhs), (rel.rhs, rel.lhs)):
                        if _dominates(m, src):
                            m2 = tuple(a - b + c for a, b, c in zip(m, src, dst))
                            if m2 in comp and comp[m2] != comp[m]:
                                old, new = max(comp[m], comp[m2]), min(comp[m], comp[m2])
                                for key in comp:
                                    if comp[key] == old:
                                        comp[key] = new
                                changed = True
        groups: dict[int, list[Vector]] = {}
        for m in members:
            groups.setdefault(comp[m], []).append(m)
        return [sorted(g) for g in groups.values()]

    order = sorted(
        (img for img, members in fibers.items() if len(members) > 1),
        key=lambda img: (min(sum(m) for m in fibers[img]), img),
    )
    for img in order:
        components = connected(fibers[img])
        if len(components) <= 1:
            continue
        reps = sorted(comp[0] for comp in components)
        for a, b in itertools.combinations(reps, 2):
            lhs, rhs = sorted((a, b))
            relations.append(Relation(lhs, rhs))
    return relations


# ---------------------------------------------------------------------------
# stability


@dataclass(frozen=True)
class StabilityVerdict:
    semistable: bool
    stable: bool
    witness: tuple[int, ...] | None

    def to_json(self) -> dict:
        return {
            "semistable": self.semistable,
            "stable": self.stable,
            "witness": list(self.witness) if self.witness is not None else None,
        }


def _support_arrows(
    s: MarkedQuiverSetting, rep_or_support: Representation | Iterable[Arrow]
) -> frozenset[Arrow]:
    if isinstance(rep_or_support, Representation):
        if rep_or_support.setting != s:
            raise ValueError("representation belongs to a different setting")
        return rep_or_support.support()
    return frozenset(rep_or_support)


def is_theta_semistable(
    s: MarkedQuiverSetting,
    rep_or_support: Representation | Iterable[Arrow],
    theta: Sequence[int],
) -> StabilityVerdict:
    """King's test for an all-ones setting, exact and combinatorial.

    Every subrepresentation is a coordinate subspace, i.e. a vertex subset
    closed under the nonzero arrows.  Semistable means theta is >= 0 on every
    proper nonempty closed subset, stable means > 0; the witness is a
    minimizing subset when the verdict is negative.
    """
    _require_all_ones(s)
    tv = StabilityVector.of(s, theta)
    support = _support_arrows(s, rep_or_support)
    verts = range(s.k)
    worst: tuple[int, tuple[int, ...]] | None = None
    for size in range(1, s.k):
        for subset in itertools.combinations(verts, size):
            inside = set(subset)
            if any(a.tail in inside and a.head not in inside for a in support):
                continue
            value = sum(tv.theta[v] for v in subset)
            if worst is None or value < worst[0]:
                worst = (value, subset)
    if worst is None:
        return StabilityVerdict(True, True, None)
    value, subset = worst
    if value < 0:
        return StabilityVerdict(False, False, subset)
    if value == 0:
        return StabilityVerdict(True, False, subset)
    return StabilityVerdict(True, True, None)


def semistable_via_semiinvariants(
    s: MarkedQuiverSetting,
    rep_or_support: Representation | Iterable[Arrow],
    theta: Sequence[int],
    l_bound: int | None = None,
) -> bool:
    """Detect semistability by a nonvanishing positive-weight semi-invariant.

    True when some monomial semi-invariant of weight l, 1 <= l <= l_bound,
    has support inside the nonzero arrows.  The default bound is
    sum(|theta_i|) * k, far above the degrees of the minimal generators for
    the sizes handled here.
    """
    _require_all_ones(s)
    tv = StabilityVector.of(s, theta)
    if tv.is_zero:
        # the constant 1 is a weight-zero semi-invariant vanishing nowhere
        return True
    if l_bound is None:
        l_bound = max(1, sum(abs(t) for t in tv.theta) * s.k)
    support = _support_arrows(s, rep_or_support)
    arrows = s.arrow_list()
    support_idx = {i for i, a in enumerate(arrows) if a in support}
    algebra = semi_invariant_generators(s, theta)
    for gen in algebra.positive_degree():
        if gen.degree > l_bound:
            continue
        if all(e == 0 or i in support_idx for i, e in enumerate(gen.exponents)):
            return True
    return False


# ---------------------------------------------------------------------------
# proj charts and the central fiber


@dataclass(frozen=True)
class ProjChart:
    """Affine chart of proj at a positive-degree generator."""

    pivot: GradedGenerator
    monoid_generators: tuple[Vector, ...]
    smooth: bool
    free_rank: int

    def to_json(self) -> dict:
        return {
            "pivot": self.pivot.to_json(),
            "monoid_generators": [list(g) for g in self.monoid_generators],
            "smooth": self.smooth,
            "free_rank": self.free_rank,
        }


def _lattice_rank(vectors: Sequence[Vector]) -> int:
    """Rank of the lattice spanned by integer vectors (exact elimination)."""
    mat = [list(map(Fraction, v)) for v in vectors]
    rank = 0
    cols = len(mat[0]) if mat else 0
    for col in range(cols):
        pivot_row = None
        for r in range(rank, len(mat)):
            if mat[r][col] != 0:
                pivot_row = r
                break
        if pivot_row is None:
            continue
        mat[rank], mat[pivot_row] = mat[pivot_row], mat[rank]
        pivot = mat[rank][col]
        for r in range(len(mat)):
            if r != rank and mat[r][col] != 0:
                factor = mat[r][col] / pivot
                mat[r] = [a - factor * b for a, b in zip(mat[r], mat[rank])]
        rank += 1
        if rank == len(mat):
            break
    return rank


def _n_combination(target: Vector, pool: list[Vector], grading: Vector | None) -> bool:
    """Whether target is an N-linear combination of pool vectors.

    With a strictly positive grading the search is exact; otherwise the
    coefficient sum is capped (enough for the pointed monoids arising here).
    """
    if grading is not None:
        total = sum(g * t for g, t in zip(grading, target))
        if total <= 0:
            return all(x == 0 for x in target)

    def recurse(remaining: Vector, idx: int, cap: int) -> bool:
        if all(x == 0 for x in remaining):
            return True
        if idx == len(pool) or cap == 0:
            return False
        vec = pool[idx]
        max_c = cap
        if grading is not None:
            value = sum(g * v for g, v in zip(grading, vec))
            budget = sum(g * r for g, r in zip(grading, remaining))
            if value > 0:
                max_c = min(max_c, budget // value)
        for c in range(max_c, -1, -1):
            nxt = tuple(r - c * v for r, v in zip(remaining, vec))
            if recurse(nxt, idx + 1, cap - c):
                return True
        return False

    return recurse(target, 0, 12)


def _positive_grading(vectors: Sequence[Vector]) -> Vector | None:
    """A functional strictly positive on all vectors, if the sum of them works."""
    if not vectors:
        return None
    dim = len(vectors[0])
    lam = tuple(sum(v[i] for v in vectors) for i in range(dim))
    if all(sum(l * x for l, x in zip(lam, v)) > 0 for v in vectors):
        return lam
    return None


def _minimize_monoid_generators(vectors: list[Vector]) -> list[Vector]:
    gens = sorted(set(v for v in vectors if any(v)))
    grading = _positive_grading(gens)
    changed = True
    while changed:
        changed = False
        for g in list(gens):
            rest = [h for h in gens if h != g]
            if rest and _n_combination(g, rest, grading):
                gens.remove(g)
                changed = True
                break
    return gens


def proj_charts(s: MarkedQuiverSetting, theta: Sequence[int]) -> list[ProjChart]:
    """One affine chart per positive-degree generator of the semi-invariant ring.

    The chart at a degree-d generator f is the degree-zero part of the
    localization at f: solutions of W u = m * d * theta shifted by -m times
    the lift of f.  The chart is flagged smooth when its minimized generating
    set is Z-linearly independent (the monoid is then free).
    """
    tv = StabilityVector.of(s, theta)
    if tv.is_zero:
        raise EmptyProjError("theta = 0 has no proj; use invariant_generators")
    algebra = semi_invariant_generators(s, theta)
    pivots = algebra.positive_degree()
    if not pivots:
        raise EmptyProjError("no positive-degree semi-invariants; semistable locus empty")
    ws = algebra.weights
    n = ws.num_arrows
    charts = []
    for pivot in pivots:
        rows = [
            [ws.weights[a][v] for a in range(n)] + [-pivot.degree * tv.theta[v]]
            for v in range(s.k)
        ]
        shifted = []
        for sol in hilbert_basis(rows):
            u, m = sol[:n], sol[n]
            vec = tuple(u[a] - m * pivot.exponents[a] for a in range(n))
            shifted.append(vec)
        gens = _minimize_monoid_generators(shifted)
        rank = _lattice_rank(gens) if gens else 0
        smooth = rank == len(gens)
        charts.append(ProjChart(pivot, tuple(gens), smooth, rank))
    return charts


@dataclass(frozen=True)
class FiberStratum:
    support: tuple[int, ...]
    stable: bool
    orbit_space_dim: int | None
    non_free_action: bool = False

    def to_json(self) -> dict:
        return {
            "support": list(self.support),
            "stable": self.stable,
            "orbit_space_dim": self.orbit_space_dim,
            "non_free_action": self.non_free_action,
        }


def central_fiber(s: MarkedQuiverSetting, theta: Sequence[int]) -> list[FiberStratum]:
    """Semistable strata of the fiber over the origin of the quotient.

    Enumerates arrow-support sets on which every nonconstant invariant
    vanishes (no invariant generator's support fits inside) and keeps the
    theta-semistable ones.  The orbit-space dimension |S| - (k - 1) assumes
    the support spans a connected graph on all vertices; otherwise the
    stratum is flagged non_free_action and no dimension is reported.
    """
    _require_all_ones(s)
    StabilityVector.of(s, theta)
    arrows = s.arrow_list()
    inv_supports = [
        frozenset(i for i, e in enumerate(u) if e) for u in invariant_generators(s)
    ]
    out = []
    for size in range(len(arrows) + 1):
        for idx in itertools.combinations(range(len(arrows)), size):
            chosen = frozenset(idx)
            if any(supp <= chosen for supp in inv_supports):
                continue
            support = frozenset(arrows[i] for i in idx)
            verdict = is_theta_semistable(s, support, theta)
            if not verdict.semistable:
                continue
            touched = set()
            for a in support:
                touched.add(a.tail)
                touched.add(a.head)
            spanning = touched == set(range(s.k)) and _undirected_connected(s, support)
            out.append(
                FiberStratum(
                    support=idx,
                    stable=verdict.stable,
                    orbit_space_dim=(size - (s.k - 1)) if spanning else None,
                    non_free_action=not spanning,
                )
            )
    return out


def _undirected_connected(s: MarkedQuiverSetting, support: frozenset[Arrow]) -> bool:
    if s.k == 0:
        return False
    adj: dict[int, set[int]] = {v: set() for v in range(s.k)}
    for a in support:
        adj[a.tail].add(a.head)
        adj[a.head].add(a.tail)
    seen = {0}
    stack = [0]
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return seen == set(range(s.k))


# ---------------------------------------------------------------------------
# determinantal semi-invariants


PathCombination = tuple[tuple[Fraction, tuple[Arrow, ...]], ...]


@dataclass(frozen=True)
class DeterminantalMatrix:
    """Block-rectangular matrix of path combinations.

    Block row r accepts paths ending at row_vertices[r]; block column c
    accepts paths starting at col_vertices[c].  Evaluation plugs a
    representation into every path and sums with the coefficients; the result
    must be square.
    """

    row_vertices: tuple[int, ...]
    col_vertices: tuple[int, ...]
    entries: tuple[tuple[PathCombination, ...], ...]
    weight: int | None = None

    @classmethod
    def make(
        cls,
        row_vertices: Sequence[int],
        col_vertices: Sequence[int],
        entries: Sequence[Sequence[Iterable[tuple[object, Sequence[Arrow]]]]],
        weight: int | None = None,
    ) -> "DeterminantalMatrix":
        rows = tuple(int(v) for v in row_vertices)
        cols = tuple(int(v) for v in col_vertices)
        norm = []
        if len(entries) != len(rows):
            raise ShapeError("entry grid must have one row per block row")
        for r, row in enumerate(entries):
            if len(row) != len(cols):
                raise ShapeError("entry grid must have one column per block column")
            norm_row = []
            for c, combo in enumerate(row):
                terms = []
                for coef, path in combo:
                    path_t = tuple(path)
                    if not path_t and rows[r] != cols[c]:
                        raise ShapeError(
                            f"entry ({r},{c}): empty path needs equal row and "
                            f"column vertices, got {rows[r]} and {cols[c]}"
                        )
                    start = path_t[0].tail if path_t else cols[c]
                    end = path_t[-1].head if path_t else rows[r]
                    if start != cols[c] or end != rows[r]:
                        raise ShapeError(
                            f"entry ({r},{c}) contains a path from {start} to {end}; "
                            f"expected {cols[c]} to {rows[r]}"
                        )
                    terms.append((Fraction(coef), path_t))
                norm_row.append(tuple(terms))
            norm.append(tuple(norm_row))
        return cls(rows, cols, tuple(norm), weight)


def _determinant(mat: list[list[Fraction]]) -> Fraction:
    n = len(mat)
    if n == 0:
        return Fraction(1)
    det = Fraction(1)
    for col in range(n):
        pivot_row = next((r for r in range(col, n) if mat[r][col] != 0), None)
        if pivot_row is None:
            return Fraction(0)
        if pivot_row != col:
            mat[col], mat[pivot_row] = mat[pivot_row], mat[col]
            det = -det
        pivot = mat[col][col]
        det *= pivot
        for r in range(col + 1, n):
            if mat[r][col] != 0:
                factor = mat[r][col] / pivot
                mat[r] = [a - factor * b for a, b in zip(mat[r], mat[col])]
    return det


def evaluate_determinantal_semi_invariant(
    L: DeterminantalMatrix, rep: Representation
) -> Fraction:
    """Assemble the evaluated block matrix and return its determinant."""
    dims = rep.setting.dims
    row_sizes = [dims[v] for v in L.row_vertices]
    col_sizes = [dims[v] for v in L.col_vertices]
    if sum(row_sizes) != sum(col_sizes):
        raise ShapeError(
            f"evaluated matrix is {sum(row_sizes)} x {sum(col_sizes)}, not square"
        )
    size = sum(row_sizes)
    full = [[Fraction(0)] * size for _ in range(size)]
    row_off = [0]
    for sz in row_sizes:
        row_off.append(row_off[-1] + sz)
    col_off = [0]
    for sz in col_sizes:
        col_off.append(col_off[-1] + sz)
    for r, row in enumerate(L.entries):
        for c, combo in enumerate(row):
            block: Matrix | None = None
            for coef, path in combo:
                val = evaluate_path(rep, path, at=L.col_vertices[c])
                scaled = tuple(tuple(coef * x for x in rw) for rw in val)
                if block is None:
                    block = scaled
                else:
                    block = tuple(
                        tuple(a + b for a, b in zip(ra, rb))
                        for ra, rb in zip(block, scaled)
                    )
            if block is None:
                continue
            for i in range(row_sizes[r]):
                for j in range(col_sizes[c]):
                    full[row_off[r] + i][col_off[c] + j] += block[i][j]
    return _determinant(full)


def block_diagonal(a: DeterminantalMatrix, b: DeterminantalMatrix) -> DeterminantalMatrix:
    """Concatenate two determinantal matrices block-diagonally."""
    rows = a.row_vertices + b.row_vertices
    cols = a.col_vertices + b.col_vertices
    empty: PathCombination = tuple()
    entries = []
    for r, row in enumerate(a.entries):
        entries.append(tuple(row) + tuple(empty for _ in b.col_vertices))
    for r, row in enumerate(b.entries):
        entries.append(tuple(empty for _ in a.col_vertices) + tuple(row))
    weight = None
    if a.weight is not None and b.weight is not None:
        weight = a.weight + b.weight
    return DeterminantalMatrix(rows, cols, tuple(entries), weight)
