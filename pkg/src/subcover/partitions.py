"""Partitions of F_q^n into subspaces.

Two constructions are provided:

* ``spread_partition``: for d | n, the (q^n - 1)/(q^d - 1) subspaces of
  dimension d that partition F_q^n.  F_q^n is modelled as the extension
  field K = F_{q^n} under a power basis; the parts are the multiplicative
  cosets a * F_{q^d} of the intermediate field, which is located as the
  kernel of the F_q-linear map a -> a^(q^d) - a.

* ``mixed_partition``: for 1 <= d <= n/2, one (n-d)-dimensional subspace
  together with q^(n-d) subspaces of dimension d.  With K = F_{q^(n-d)} and
  B a fixed d-dimensional F_q-subspace of K, the parts are K x {0} and the
  graphs G_a = {(a*b, b) : b in B} of the multiplication maps.  Distinct
  graphs meet only at 0 because (a - a')*b = 0 forces b = 0 in a field.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .bounds import check_enumeration_size
from .gf import FieldDescriptor, field_from_json, field_new, field_to_json
from .linalg import (
    Subspace,
    invert_matrix,
    kernel,
    span_tuples,
    subspace_from_generators,
    subspace_from_json,
    subspace_to_json,
)


@dataclass(frozen=True)
class Partition:
    """A family of subspaces of F^n pairwise meeting only at the origin
    whose union is the whole space."""

    field: FieldDescriptor
    n: int
    d: int
    kind: str  # "spread" | "mixed"
    parts: tuple[Subspace, ...]
    # True iff the parameters sit inside the range stated by the classical
    # partition lemma this construction realizes (mixed: 1 < d < n/2).
    literature_range: bool


class FieldExtension:
    """GF(q^t) modelled as a t-dimensional vector space over GF(q).

    Exposes the big field ``top`` = GF(p^(m*t)), the embedding of the base
    field into it, and exact conversions between power-basis coordinate
    tuples (length t over the base) and top-field encodings.
    """

    def __init__(self, base: FieldDescriptor, degree: int):
        if degree < 1:
            raise ValueError("extension degree must be >= 1")
        self.base = base
        self.degree = degree
        if degree == 1:
            self.top = base
            self._embed = None
            self.power_basis = (1,)
            return
        self.top = field_new(base.p, base.m * degree)
        top, p, m = self.top, base.p, base.m
        big = m * degree
        fp = field_new(p, 1)

        if m == 1:
            # prime subfield: constants embed as themselves
            self._embed = tuple(range(p))
            y_pows = (1,)
        else:
            # locate the copy of the base field inside top: kernel of the
            # F_p-linear map a -> a^(p^m) - a, then the smallest root of the
            # base modulus in it becomes the image of the base generator.
            rows = []
            for i in range(big):
                e = p**i
                rows.append(top.digits(top.sub(top.frobenius(e, m), e)))
            transposed = tuple(zip(*rows))
            subfield = kernel(fp, transposed, big)
            if subfield.dim != m:
                raise AssertionError("subfield location failed")
            candidates = sorted(
                _undigits(dig, p) for dig in span_tuples(fp, subfield.basis, big)
            )
            y_hat = next(a for a in candidates if _eval_poly(top, base.modulus, a) == 0)
            y_pows = tuple(top.pow(y_hat, j) for j in range(m))
            embed = []
            for c in range(base.q):
                acc = 0
                for dj in reversed(base.digits(c)):
                    acc = top.add(top.mul(acc, y_hat), dj)
                embed.append(acc)
            self._embed = tuple(embed)

        g = p  # encoding of the class of x, the top field's generator
        self.power_basis = tuple(top.pow(g, i) for i in range(degree))
        conv_rows = []
        for i in range(degree):
            for j in range(m):
                conv_rows.append(top.digits(top.mul(self.power_basis[i], y_pows[j])))
        self._conv_inv = invert_matrix(fp, tuple(conv_rows))

    def embed(self, c: int) -> int:
        """Image in the top field of a base-field encoding."""
        return c if self._embed is None else self._embed[c]

    def from_coords(self, coords) -> int:
        """Top-field element with the given power-basis coordinates."""
        if self.degree == 1:
            return coords[0]
        top = self.top
        w = 0
        for c, b in zip(coords, self.power_basis, strict=True):
            if c:
                w = top.add(w, top.mul(self.embed(c), b))
        return w

    def to_coords(self, w: int) -> tuple[int, ...]:
        """Power-basis coordinates (base-field encodings) of a top element."""
        if self.degree == 1:
            return (w,)
        p, m = self.base.p, self.base.m
        dig = self.top.digits(w)
        inv = self._conv_inv
        size = len(inv)
        flat = [0] * size
        for l, dl in enumerate(dig):
            if dl:
                row = inv[l]
                for k in range(size):
                    if row[k]:
                        flat[k] = (flat[k] + dl * row[k]) % p
        out = []
        for i in range(self.degree):
            enc = 0
            for j in range(m - 1, -1, -1):
                enc = enc * p + flat[i * m + j]
            out.append(enc)
        return tuple(out)


def _undigits(digits, p: int) -> int:
    e = 0
    for d in reversed(digits):
        e = e * p + d
    return e


def _eval_poly(f: FieldDescriptor, coeffs, a: int) -> int:
    """Horner evaluation; coeffs are base-p constants, valid in any GF(p^k)."""
    acc = 0
    for c in reversed(coeffs):
        acc = f.add(f.mul(acc, a), c)
    return acc


@lru_cache(maxsize=None)
def _extension(base: FieldDescriptor, degree: int) -> FieldExtension:
    return FieldExtension(base, degree)


def spread_partition(f: FieldDescriptor, n: int, d: int) -> Partition:
    """Partition F^n into (q^n - 1)/(q^d - 1) subspaces of dimension d."""
    if n < 1 or d < 1 or d > n:
        raise ValueError(f"need 1 <= d <= n, got d={d}, n={n}")
    if n % d != 0:
        raise ValueError(f"spread requires d | n, got d={d}, n={n}")
    check_enumeration_size(f.q**n, f"spread_partition(q={f.q}, n={n}, d={d})")
    ext = _extension(f, n)
    top, q = ext.top, f.q

    if d == n:
        sub_basis = tuple(
            tuple(1 if j == i else 0 for j in range(n)) for i in range(n)
        )
    else:
        # intermediate field F_{q^d} = kernel of the F_q-linear a -> a^(q^d) - a
        qd = q**d
        rows = []
        for i in range(n):
            gi = ext.power_basis[i]
            rows.append(ext.to_coords(top.sub(top.pow(gi, qd), gi)))
        transposed = tuple(zip(*rows))
        sub_basis = kernel(f, transposed, n).basis
        if len(sub_basis) != d:
            raise AssertionError("intermediate field has wrong dimension")

    sub_elems_top = [ext.from_coords(c) for c in sub_basis]
    field_elems = [
        ext.from_coords(c) for c in span_tuples(f, sub_basis, n)
    ]

    expected = (q**n - 1) // (q**d - 1)
    covered = bytearray(q**n)
    parts = []
    for alpha in range(1, q**n):
        if covered[alpha]:
            continue
        for e in field_elems:
            covered[top.mul(alpha, e)] = 1
        gens = [ext.to_coords(top.mul(alpha, b)) for b in sub_elems_top]
        part = subspace_from_generators(f, n, gens)
        if part.dim != d:
            raise AssertionError("coset has wrong dimension")
        parts.append(part)
        if len(parts) == expected:
            break
    if len(parts) != expected:
        raise AssertionError("spread sweep produced a wrong part count")
    return Partition(f, n, d, "spread", tuple(parts), literature_range=True)


def mixed_partition(f: FieldDescriptor, n: int, d: int) -> Partition:
    """Partition F^n into one (n-d)-dimensional subspace and q^(n-d)
    subspaces of dimension d.

    The distinguished (n-d)-dimensional part is the span of the first n-d
    coordinates and always comes first in ``parts``.  Valid for
    1 <= d <= n/2; the classical statement assumes the strict range
    1 < d < n/2, recorded in ``literature_range``.
    """
    if d < 1 or 2 * d > n:
        raise ValueError(f"need 1 <= d <= n/2, got d={d}, n={n}")
    check_enumeration_size(f.q**n, f"mixed_partition(q={f.q}, n={n}, d={d})")
    ext = _extension(f, n - d)
    top, q = ext.top, f.q
    t = n - d

    distinguished = subspace_from_generators(
        f, n, [tuple(1 if j == i else 0 for j in range(n)) for i in range(t)]
    )
    parts = [distinguished]
    basis_b = ext.power_basis[:d]
    for a in range(q**t):
        gens = []
        for j in range(d):
            left = ext.to_coords(top.mul(a, basis_b[j]))
            right = tuple(1 if c == j else 0 for c in range(d))
            gens.append(left + right)
        graph = subspace_from_generators(f, n, gens)
        if graph.dim != d:
            raise AssertionError("graph part has wrong dimension")
        parts.append(graph)
    return Partition(
        f, n, d, "mixed", tuple(parts),
        literature_range=(d > 1 and 2 * d < n),
    )


def partition_to_json(p: Partition) -> dict:
    return {
        "kind": p.kind,
        "ambient": {"field": field_to_json(p.field), "n": p.n},
        "d": p.d,
        "literature_range": p.literature_range,
        "parts": [subspace_to_json(s) for s in p.parts],
    }


def partition_from_json(doc: dict) -> Partition:
    try:
        kind = doc["kind"]
        f = field_from_json(doc["ambient"]["field"])
        n = doc["ambient"]["n"]
        d = doc["d"]
        lit = doc["literature_range"]
        parts = tuple(subspace_from_json(s) for s in doc["parts"])
    except (TypeError, KeyError) as exc:
        raise ValueError(f"malformed partition document: {doc!r}") from exc
    if kind not in ("spread", "mixed"):
        raise ValueError(f"unknown partition kind {kind!r}")
    for s in parts:
        if s.field != f or s.n != n:
            raise ValueError("partition part has mismatched ambient space")
    return Partition(f, n, d, kind, parts, literature_range=bool(lit))
