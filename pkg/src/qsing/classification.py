"""Smoothness classification and enumeration of singular reduced settings.

The central dimension expected at a defect-zero point is
``1 - chi(alpha, alpha) - #marked loops``; the defect subtracts the actual
dimension from it.  A setting is a smooth point of its quotient exactly when
its reduced form is one of six single-vertex shapes; everything else is
singular, and the singular reduced settings of a given expected dimension
are finitely many and enumerable.
"""

from __future__ import annotations

import enum
import itertools
import time
import warnings
from dataclasses import dataclass

from .core import (
    MarkedQuiverSetting,
    canonical_key,
    euler_form,
    strongly_connected,
)
from .errors import BudgetExhaustedError, HypothesisError
from .local_structure import is_simple_dimvector
from .reduction import ReductionResult, applicable_moves, reduce_setting


class SmoothShape(enum.Enum):
    PLAIN_VERTEX = "plain_vertex"
    ONE_LOOP = "one_loop"
    ONE_MARKED_LOOP = "one_marked_loop"
    TWO_LOOPS_DIM2 = "two_loops_dim2"
    LOOP_PLUS_MARKED_DIM2 = "loop_plus_marked_dim2"
    TWO_MARKED_LOOPS_DIM2 = "two_marked_loops_dim2"


@dataclass(frozen=True)
class SmoothListEntry:
    shape: SmoothShape
    dim: int

    def describe(self) -> str:
        return f"{self.shape.value}(k={self.dim})"


@dataclass(frozen=True)
class SingularityReport:
    setting: MarkedQuiverSetting
    reduced: MarkedQuiverSetting
    z: int
    expected_dim: int
    smooth: bool
    azumaya: bool
    matched_entry: SmoothListEntry | None

    def to_json(self) -> dict:
        return {
            "setting": self.setting.to_json(),
            "reduced": self.reduced.to_json(),
            "z": self.z,
            "expected_dim": self.expected_dim,
            "smooth": self.smooth,
            "azumaya": self.azumaya,
            "matched_entry": self.matched_entry.describe() if self.matched_entry else None,
        }


def _raw_expected_dim(s: MarkedQuiverSetting) -> int:
    return 1 - euler_form(s, s.dims, s.dims) - s.num_marked_loops


def expected_dim(s: MarkedQuiverSetting, *, warn_if_not_simple: bool = True) -> int:
    """Central dimension 1 - chi(alpha, alpha) - #marks at a defect-zero point.

    The formula is the dimension of the quotient only when alpha admits a
    simple representation; otherwise a warning is emitted and the raw value
    returned.
    """
    if warn_if_not_simple and not is_simple_dimvector(s, s.dims):
        warnings.warn(
            "setting admits no simple representation of its full dimension "
            "vector; expected_dim is formal",
            stacklevel=2,
        )
    return _raw_expected_dim(s)


def defect(s: MarkedQuiverSetting, dim_x: int) -> int:
    """1 - chi(alpha, alpha) - #marks - dim_x; >= 0 for settings coming from orders."""
    if dim_x < 0:
        raise ValueError("dim_x must be non-negative")
    return _raw_expected_dim(s) - dim_x


def match_smooth_list(s: MarkedQuiverSetting) -> SmoothListEntry | None:
    """Match a *reduced* setting against the six smooth terminal shapes.

    All six have a single vertex: a bare vertex, one (marked or not) loop at
    any dimension, or exactly two loops in any marked/unmarked combination at
    dimension 2.
    """
    if s.k != 1:
        return None
    dim, loops, marks = s.dims[0], s.arrows[0][0], s.marked_loops[0]
    if (loops, marks) == (0, 0):
        return SmoothListEntry(SmoothShape.PLAIN_VERTEX, dim)
    if (loops, marks) == (1, 0):
        return SmoothListEntry(SmoothShape.ONE_LOOP, dim)
    if (loops, marks) == (0, 1):
        return SmoothListEntry(SmoothShape.ONE_MARKED_LOOP, dim)
    if dim == 2:
        if (loops, marks) == (2, 0):
            return SmoothListEntry(SmoothShape.TWO_LOOPS_DIM2, dim)
        if (loops, marks) == (1, 1):
            return SmoothListEntry(SmoothShape.LOOP_PLUS_MARKED_DIM2, dim)
        if (loops, marks) == (0, 2):
            return SmoothListEntry(SmoothShape.TWO_MARKED_LOOPS_DIM2, dim)
    return None


def is_smooth_setting(s: MarkedQuiverSetting) -> SingularityReport:
    """Reduce the setting and test membership in the smooth terminal list."""
    result: ReductionResult = reduce_setting(s)
    entry = match_smooth_list(result.reduced)
    azumaya = (
        result.reduced.k == 1
        and result.reduced.dims[0] == 1
        and result.reduced.loops_at(0) == 0
    )
    return SingularityReport(
        setting=s,
        reduced=result.reduced,
        z=result.z,
        expected_dim=_raw_expected_dim(s),
        smooth=entry is not None,
        azumaya=azumaya,
        matched_entry=entry,
    )


def _vertex_contribution(dim: int, loops: int, marks: int) -> int:
    total = loops + marks
    if total == 0:
        return dim
    if total == 1:
        if dim <= 1:
            raise HypothesisError("loops at dimension-1 vertices cannot occur in reduced settings")
        return 2 * dim if loops == 1 else 2 * dim - 1
    return (total - 1) * dim * dim + dim - marks


def counting_lower_bound(s: MarkedQuiverSetting) -> int:
    """Lower bound for the quotient dimension of a reduced setting on >= 2 vertices.

    1 plus a contribution per vertex: a bare vertex of dimension a gives a,
    a single loop gives 2a (genuine) or 2a - 1 (marked), and k_m marked plus
    l genuine loops with k_m + l >= 2 give (k_m + l - 1) a^2 + a - k_m.
    """
    if s.k < 2:
        raise HypothesisError("counting bound requires at least 2 vertices")
    if applicable_moves(s):
        raise HypothesisError("counting bound requires a reduced setting")
    return 1 + sum(
        _vertex_contribution(s.dims[v], s.arrows[v][v], s.marked_loops[v])
        for v in range(s.k)
    )


# ---------------------------------------------------------------------------
# enumeration of singular reduced settings by dimension


def _dims_multisets(d: int):
    """Non-increasing dimension tuples compatible with expected dimension d.

    On >= 2 vertices the counting bound forces 1 + sum(dims) <= d; a single
    vertex only needs sum(dims) <= d.
    """
    yield from ((a,) for a in range(1, d + 1))

    def partitions(total: int, parts: int, cap: int):
        if parts == 1:
            if 1 <= total <= cap:
                yield (total,)
            return
        for first in range(min(total - parts + 1, cap), 0, -1):
            for rest in partitions(total - first, parts - 1, first):
                yield (first,) + rest

    for k in range(2, d):
        for total in range(k, d):
            yield from partitions(total, k, total)


def _loop_configs(dims: tuple[int, ...], budget: int, d: int):
    """Per-vertex (loops, marks) choices within the arrow budget.

    Budget units are the expected-dimension contributions: a loop at v costs
    dims[v]^2, a mark dims[v]^2 - 1.  Dimension-1 vertices stay loop-free
    (reduced settings cannot carry them).  For k >= 2 the counting bound
    prunes configurations whose forced contribution already exceeds d.
    """
    k = len(dims)
    per_vertex: list[list[tuple[int, int, int]]] = []
    for v in range(k):
        options = [(0, 0, 0)]
        if dims[v] >= 2:
            w_loop, w_mark = dims[v] ** 2, dims[v] ** 2 - 1
            max_l = budget // w_loop
            for loops in range(max_l + 1):
                rem = budget - loops * w_loop
                for marks in range(0 if loops else 1, rem // w_mark + 1):
                    options.append((loops, marks, loops * w_loop + marks * w_mark))
        per_vertex.append(options)
    for combo in itertools.product(*per_vertex):
        cost = sum(c for _, _, c in combo)
        if cost > budget:
            continue
        if k >= 2:
            try:
                bound = 1 + sum(
                    _vertex_contribution(dims[v], combo[v][0], combo[v][1])
                    for v in range(k)
                )
            except HypothesisError:
                continue
            if bound > d:
                continue
        yield tuple((l, m) for l, m, _ in combo), cost


def _offdiag_matrices(dims: tuple[int, ...], loops: tuple[tuple[int, int], ...], budget: int):
    """Exact-budget distributions of off-diagonal arrows.

    Slot (i, j) costs dims[i] * dims[j] per arrow.  A loop-free vertex must
    end up with weighted in- and out-degree strictly above its dimension or
    it would be removable; rows are pruned as soon as that fails.
    """
    k = len(dims)
    slots = [(i, j) for i in range(k) for j in range(k) if i != j]
    loop_free = [sum(loops[v]) == 0 for v in range(k)]
    min_row_cost = [
        dims[v] * (dims[v] + 1) if loop_free[v] and k >= 2 else 0 for v in range(k)
    ]
    matrix = [[0] * k for _ in range(k)]

    def row_suffix_min(idx: int) -> int:
        row = slots[idx][0] if idx < len(slots) else k
        return sum(min_row_cost[v] for v in range(row, k))

    def recurse(idx: int, remaining: int):
        if idx == len(slots):
            if remaining == 0:
                yield tuple(tuple(r) for r in matrix)
            return
        i, j = slots[idx]
        row_start = j == (0 if i != 0 else 1)
        if row_start and remaining < row_suffix_min(idx):
            return
        w = dims[i] * dims[j]
        last_in_row = idx + 1 == len(slots) or slots[idx + 1][0] != i
        for count in range(remaining // w, -1, -1):
            matrix[i][j] = count
            if last_in_row and loop_free[i] and k >= 2:
                out_weight = sum(matrix[i][t] * dims[t] for t in range(k))
                if out_weight <= dims[i]:
                    matrix[i][j] = 0
                    continue
            yield from recurse(idx + 1, remaining - count * w)
        matrix[i][j] = 0

    yield from recurse(0, budget)


def enumerate_reduced_singular(
    d: int,
    *,
    budget_secs: float | None = None,
    progress=None,
) -> list[MarkedQuiverSetting]:
    """All reduced singular settings of expected dimension d, up to isomorphism.

    Every returned setting is reduced, strongly connected, admits a simple
    representation of its full dimension vector, has expected dimension
    exactly d and does not match the smooth terminal list.  Results are
    deduplicated by canonical key and sorted by it.

    Raises :class:`BudgetExhaustedError` carrying the partial result when the
    wall-clock budget runs out.
    """
    if d < 2:
        raise ValueError("dimension must be >= 2")
    start = time.monotonic()
    found: dict[bytes, MarkedQuiverSetting] = {}

    for dims in _dims_multisets(d):
        if budget_secs is not None and time.monotonic() - start > budget_secs:
            raise BudgetExhaustedError(
                f"enumeration budget exhausted at dims={dims}",
                partial=sorted(found.values(), key=canonical_key),
            )
        if progress is not None:
            progress(dims, len(found))
        k = len(dims)
        budget = d - 1 + sum(a * a for a in dims)
        for loops, loop_cost in _loop_configs(dims, budget, d):
            for arrows in _offdiag_matrices(dims, loops, budget - loop_cost):
                full = [list(row) for row in arrows]
                for v in range(k):
                    full[v][v] = loops[v][0]
                s = MarkedQuiverSetting(
                    dims,
                    tuple(tuple(r) for r in full),
                    tuple(m for _, m in loops),
                )
                if not strongly_connected(s):
                    continue
                if applicable_moves(s):
                    continue
                if not is_simple_dimvector(s, s.dims):
                    continue
                if match_smooth_list(s) is not None:
                    continue
                assert _raw_expected_dim(s) == d
                found.setdefault(canonical_key(s), s)
    return sorted(found.values(), key=canonical_key)


@dataclass(frozen=True)
class SingularTypeClass:
    """A group of enumerated settings with provably isomorphic central rings.

    For all-ones settings the invariant ring is a toric semigroup ring, and
    ring isomorphism is decided exactly by matching Hilbert bases with a
    lattice-linear map.  Settings with higher vertex dimensions or marks have
    non-monomial invariant rings; each stays in its own class with
    ``equivalence_decided=False``.
    """

    representative: MarkedQuiverSetting
    members: tuple[MarkedQuiverSetting, ...]
    equivalence_decided: bool

    def to_json(self) -> dict:
        return {
            "representative": self.representative.to_json(),
            "members": [m.to_json() for m in self.members],
            "equivalence_decided": self.equivalence_decided,
        }


def singular_type_classes(
    settings: list[MarkedQuiverSetting],
) -> list[SingularTypeClass]:
    """Group settings by isomorphism of their central (invariant) rings.

    This is the equivalence under which the classification counts types: two
    non-isomorphic reduced settings can present the same singularity.  Within
    all-ones settings the grouping is decided exactly; a found isomorphism is
    a proof, and distinct Hilbert-basis fingerprints are a disproof.
    """
    from .toric import invariant_generators, semigroup_isomorphism

    all_ones = [s for s in settings if all(d == 1 for d in s.dims)]
    rest = [s for s in settings if any(d != 1 for d in s.dims)]
    bases = {id(s): invariant_generators(s) for s in all_ones}
    classes: list[list[MarkedQuiverSetting]] = []
    for s in all_ones:
        for group in classes:
            if semigroup_isomorphism(bases[id(group[0])], bases[id(s)]) is not None:
                group.append(s)
                break
        else:
            classes.append([s])
    out = [
        SingularTypeClass(group[0], tuple(group), True) for group in classes
    ]
    out.extend(SingularTypeClass(s, (s,), False) for s in rest)
    return sorted(out, key=lambda c: canonical_key(c.representative))


EXPECTED_SINGULAR_COUNTS = {3: 1, 4: 3, 5: 10, 6: 53}
