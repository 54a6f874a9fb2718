"""Independent brute-force verification and minimality search.

Nothing here reuses the construction paths: covers and partitions are
checked by enumerating every vector of every claimed subspace from its
basis, and minimal cover sizes are recomputed from scratch by an exact
branch-and-bound set-cover search over projective points.  The pruning
bound is the plain counting argument ceil(remaining points / points per
subspace).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product

from .bounds import DEFAULT_MAX_SUBSPACES, check_enumeration_size
from .covers import Cover, minimal_cover_count
from .gf import FieldDescriptor
from .linalg import Row, Subspace, span_tuples
from .partitions import Partition


def gaussian_binomial(n: int, d: int, q: int) -> int:
    """Number of d-dimensional subspaces of F_q^n, exact."""
    if not 0 <= d <= n:
        raise ValueError(f"need 0 <= d <= n, got d={d}, n={n}")
    r = 1
    for i in range(1, d + 1):
        r = r * (q ** (n - d + i) - 1) // (q**i - 1)
    return r


@dataclass(frozen=True)
class ProjectivePointSet:
    """Canonical representatives of the lines of F^n: first nonzero
    coordinate scaled to 1, ordered by leading index then suffix."""

    field: FieldDescriptor
    n: int
    points: tuple[Row, ...]


def projective_points(f: FieldDescriptor, n: int) -> ProjectivePointSet:
    q = f.q
    expected = (q**n - 1) // (q - 1)
    check_enumeration_size(expected, f"projective points of GF({q})^{n}")
    pts = []
    for lead in range(n):
        for suffix in product(range(q), repeat=n - lead - 1):
            pts.append((0,) * lead + (1,) + suffix)
    if len(pts) != expected:
        raise AssertionError("projective point count mismatch")
    return ProjectivePointSet(f, n, tuple(pts))


def enumerate_subspaces(f: FieldDescriptor, n: int, d: int,
                        max_count: int = DEFAULT_MAX_SUBSPACES
                        ) -> list[Subspace]:
    """All d-dimensional subspaces of F^n, each exactly once, by direct
    enumeration of RREF matrices (pivot columns, then free entries)."""
    count = gaussian_binomial(n, d, f.q)
    if count > max_count:
        raise ValueError(
            f"{count} subspaces exceed the search bound {max_count}"
        )
    if d == 0:
        return [Subspace(f, n, (), ())]
    out = []
    for pivots in combinations(range(n), d):
        pivot_set = set(pivots)
        cells = [
            (i, c)
            for i in range(d)
            for c in range(pivots[i] + 1, n)
            if c not in pivot_set
        ]
        template = []
        for i in range(d):
            row = [0] * n
            row[pivots[i]] = 1
            template.append(row)
        for values in product(range(f.q), repeat=len(cells)):
            rows = [list(r) for r in template]
            for (i, c), v in zip(cells, values):
                rows[i][c] = v
            out.append(Subspace(f, n, tuple(tuple(r) for r in rows), pivots))
    if len(out) != count:
        raise AssertionError("subspace enumeration count mismatch")
    return out


@dataclass(frozen=True)
class VerificationReport:
    """Exhaustive check result; ``uncovered`` and ``double_covered`` list
    offending vectors as entry tuples."""

    ok: bool
    uncovered: tuple[Row, ...]
    double_covered: tuple[Row, ...]
    checked: int

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "uncovered": [list(v) for v in self.uncovered],
            "double_covered": [list(v) for v in self.double_covered],
            "checked": self.checked,
        }


def _vector_index(entries: Row, q: int) -> int:
    idx = 0
    for e in reversed(entries):
        idx = idx * q + e
    return idx


def _index_vector(idx: int, q: int, n: int) -> Row:
    out = []
    for _ in range(n):
        idx, r = divmod(idx, q)
        out.append(r)
    return tuple(out)


def verify_cover(c: Cover) -> VerificationReport:
    """Check that every nonzero vector of F^n lies in at least one cover
    subspace, by enumerating each subspace from its basis."""
    f, n, q = c.field, c.n, c.field.q
    check_enumeration_size(q**n, f"verifying a cover of GF({q})^{n}")
    covered = bytearray(q**n)
    for s in c.subspaces:
        if s.field != f or s.n != n:
            raise ValueError("cover subspace in wrong ambient space")
        for v in span_tuples(f, s.basis, n):
            covered[_vector_index(v, q)] = 1
    uncovered = tuple(
        _index_vector(i, q, n) for i in range(1, q**n) if not covered[i]
    )
    return VerificationReport(not uncovered, uncovered, (), q**n - 1)


def verify_partition(p: Partition) -> VerificationReport:
    """Check that every nonzero vector lies in exactly one part (which also
    certifies that all pairwise intersections are trivial)."""
    f, n, q = p.field, p.n, p.field.q
    check_enumeration_size(q**n, f"verifying a partition of GF({q})^{n}")
    hits = [0] * (q**n)
    for s in p.parts:
        if s.field != f or s.n != n:
            raise ValueError("partition part in wrong ambient space")
        for v in span_tuples(f, s.basis, n):
            hits[_vector_index(v, q)] += 1
    uncovered = []
    doubled = []
    for i in range(1, q**n):
        if hits[i] == 0:
            uncovered.append(_index_vector(i, q, n))
        elif hits[i] > 1:
            doubled.append(_index_vector(i, q, n))
    ok = not uncovered and not doubled
    return VerificationReport(ok, tuple(uncovered), tuple(doubled), q**n - 1)


def _subspace_point_mask(s: Subspace, point_index: dict[Row, int],
                         q: int) -> int:
    """Bitmask of the projective points lying in the subspace."""
    f = s.field
    mask = 0
    seen = set()
    inv = f.inv
    mul = f.mul
    for v in span_tuples(f, s.basis, s.n):
        lead = next((x for x in v if x), None)
        if lead is None:
            continue
        rep = v if lead == 1 else tuple(mul(inv(lead), x) for x in v)
        if rep not in seen:
            seen.add(rep)
            mask |= 1 << point_index[rep]
    return mask


def _greedy_cover_size(masks: list[int], full: int) -> int:
    covered = 0
    size = 0
    while covered != full:
        best_gain, best_idx = 0, None
        for i, m in enumerate(masks):
            gain = (m & ~covered).bit_count()
            if gain > best_gain:
                best_gain, best_idx = gain, i
        if best_idx is None:
            raise AssertionError("candidate subspaces cannot cover the space")
        covered |= masks[best_idx]
        size += 1
    return size


def min_cover_size(
    f: FieldDescriptor,
    n: int,
    k: int,
    upper_hint: int | None = None,
    threads: int = 1,
    max_subspaces: int = DEFAULT_MAX_SUBSPACES,
) -> int:
    """Exact minimum number of codimension-k subspaces covering F^n.

    Depth-first branch and bound over projective points: branch on the
    uncovered point contained in the fewest candidate subspaces, prune with
    the counting bound ceil(remaining / points_per_subspace).  The search
    admits solutions up to ``upper_hint`` (default: the closed-form count);
    if no cover that small exists it reruns against a greedy upper bound,
    so the result never presupposes the hint is attainable.  ``threads`` is
    accepted for interface stability; the search runs sequentially and its
    result does not depend on it.
    """
    if threads < 1:
        raise ValueError("threads must be >= 1")
    if not 1 <= k < n:
        raise ValueError(f"need 1 <= k < n, got k={k}, n={n}")
    q = f.q
    check_enumeration_size(q**n, f"minimality search over GF({q})^{n}")
    pts = projective_points(f, n)
    point_index = {pt: i for i, pt in enumerate(pts.points)}
    npoints = len(pts.points)
    full = (1 << npoints) - 1
    cands = enumerate_subspaces(f, n, n - k, max_count=max_subspaces)
    masks = [_subspace_point_mask(s, point_index, q) for s in cands]
    pts_per = (q ** (n - k) - 1) // (q - 1)

    # how many candidates cover each point, for the branching choice
    frequency = [0] * npoints
    for m in masks:
        mm = m
        while mm:
            low = mm & -mm
            frequency[low.bit_length() - 1] += 1
            mm ^= low
    covering = [
        [i for i, m in enumerate(masks) if (m >> j) & 1] for j in range(npoints)
    ]

    def search(limit: int) -> int | None:
        best: int | None = None

        def dfs(cov: int, chosen: int) -> None:
            nonlocal best
            if cov == full:
                if best is None or chosen < best:
                    best = chosen
                return
            cap = (best - 1) if best is not None else limit
            remaining = npoints - cov.bit_count()
            if chosen + -(-remaining // pts_per) > cap:
                return
            branch_pt = None
            branch_freq = None
            rem = full & ~cov
            while rem:
                low = rem & -rem
                j = low.bit_length() - 1
                if branch_freq is None or frequency[j] < branch_freq:
                    branch_freq, branch_pt = frequency[j], j
                rem ^= low
            order = sorted(
                covering[branch_pt],
                key=lambda i: (-(masks[i] & ~cov).bit_count(), i),
            )
            for i in order:
                dfs(cov | masks[i], chosen + 1)

        dfs(0, 0)
        return best

    hint = upper_hint if upper_hint is not None else minimal_cover_count(q, n, k)
    best = search(hint)
    if best is None:
        best = search(_greedy_cover_size(masks, full))
    if best is None:
        raise AssertionError("no cover found below the greedy bound")
    return best
