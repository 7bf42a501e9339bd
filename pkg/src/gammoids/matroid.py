"""Explicit finite matroids stored by their bases.

The ground set is an ordered tuple of element labels; bases are bit masks
over ground positions.  Bit positions are an internal detail: equality,
duality and the minor operations all speak labels, so representation surgery
can rename or re-order vertices without disturbing element identity.

Bases are the canonical stored form; independence is answered by a
subset-of-some-base query.  This is compact and sufficient for the desk
scale this library targets (|E| <= 16).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, TYPE_CHECKING

from .routing import _routable_ids

if TYPE_CHECKING:  # pragma: no cover
    from .representation import Representation

DEFAULT_ENUMERATION_LIMIT = 16


class EnumerationLimitError(ValueError):
    """Ground set too large for explicit subset enumeration."""


@dataclass(frozen=True, eq=False)
class Matroid:
    ground: tuple[str, ...]
    bases: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "ground", tuple(self.ground))
        object.__setattr__(self, "bases", frozenset(int(b) for b in self.bases))
        if len(set(self.ground)) != len(self.ground):
            raise ValueError("ground set labels must be unique")
        if not self.bases:
            raise ValueError("a matroid needs at least one base")
        full = (1 << len(self.ground)) - 1
        sizes = {b.bit_count() for b in self.bases}
        for b in self.bases:
            if b & ~full:
                raise ValueError("base mask outside the ground set")
        if len(sizes) != 1:
            raise ValueError("bases must be equicardinal")

    # -- queries ----------------------------------------------------------

    @property
    def rank(self) -> int:
        return next(iter(self.bases)).bit_count()

    @property
    def size(self) -> int:
        return len(self.ground)

    @property
    def full_mask(self) -> int:
        return (1 << len(self.ground)) - 1

    @cached_property
    def _position(self) -> dict[str, int]:
        return {lab: i for i, lab in enumerate(self.ground)}

    def mask_of(self, labels: Iterable[str]) -> int:
        pos = self._position
        mask = 0
        for lab in labels:
            if lab not in pos:
                raise ValueError(f"{lab!r} is not a ground set element")
            mask |= 1 << pos[lab]
        return mask

    def labels_of(self, mask: int) -> frozenset[str]:
        return frozenset(self.ground[i] for i in range(len(self.ground)) if mask >> i & 1)

    def independent_mask(self, mask: int) -> bool:
        return any(mask & ~b == 0 for b in self.bases)

    def independent(self, labels: Iterable[str]) -> bool:
        return self.independent_mask(self.mask_of(labels))

    def rank_of_mask(self, mask: int) -> int:
        return max((b & mask).bit_count() for b in self.bases)

    def loops(self) -> frozenset[str]:
        """Elements contained in no base, i.e. never independent."""
        union = 0
        for b in self.bases:
            union |= b
        return self.labels_of(self.full_mask & ~union)

    def bases_label_sets(self) -> frozenset[frozenset[str]]:
        return frozenset(self.labels_of(b) for b in self.bases)

    @cached_property
    def _canonical(self) -> tuple[frozenset[str], frozenset[frozenset[str]]]:
        return (frozenset(self.ground), self.bases_label_sets())

    def __eq__(self, other):
        if not isinstance(other, Matroid):
            return NotImplemented
        return self._canonical == other._canonical

    def __hash__(self):
        return hash(self._canonical)

    def __repr__(self):
        bases = sorted(sorted(self.labels_of(b)) for b in self.bases)
        return f"Matroid(ground={list(self.ground)}, bases={bases})"

    @classmethod
    def from_label_sets(cls, ground: Iterable[str], bases: Iterable[Iterable[str]]) -> "Matroid":
        ground = tuple(ground)
        pos = {lab: i for i, lab in enumerate(ground)}
        masks = set()
        for base in bases:
            mask = 0
            for lab in base:
                if lab not in pos:
                    raise ValueError(f"base element {lab!r} is not in the ground set")
                mask |= 1 << pos[lab]
            masks.add(mask)
        return cls(ground, frozenset(masks))


def equals(m: Matroid, n: Matroid) -> bool:
    """Label-based equality: same ground set and same basis family."""
    return m == n


def validate_matroid(m: Matroid) -> None:
    """Check the basis-exchange axiom; raise ValueError on a violation.

    Non-emptiness and equicardinality are already enforced on construction,
    so together with exchange the stored family is a genuine basis system.
    """
    bases = sorted(m.bases)
    for b1 in bases:
        for b2 in bases:
            out = b1 & ~b2
            cand = b2 & ~b1
            x = out
            while x:
                low = x & -x
                x ^= low
                stripped = b1 ^ low
                y = cand
                ok = False
                while y:
                    ylow = y & -y
                    y ^= ylow
                    if stripped | ylow in m.bases:
                        ok = True
                        break
                if not ok:
                    raise ValueError(
                        f"basis-exchange fails for {sorted(m.labels_of(b1))} / {sorted(m.labels_of(b2))}"
                    )


# -- constructions ---------------------------------------------------------


def uniform(r: int, n: int) -> Matroid:
    """Uniform matroid of rank r on ground set {"1", .., "n"}."""
    if r < 0 or n < 0 or r > n:
        raise ValueError(f"uniform matroid needs 0 <= r <= n, got r={r}, n={n}")
    ground = tuple(str(i) for i in range(1, n + 1))
    masks = frozenset(sum(1 << i for i in combo) for combo in combinations(range(n), r))
    return Matroid(ground, masks)


def dual(m: Matroid) -> Matroid:
    """Bases of the dual are exactly the complements of the bases."""
    full = m.full_mask
    return Matroid(m.ground, frozenset(full & ~b for b in m.bases))


def restrict(m: Matroid, labels: Iterable[str]) -> Matroid:
    """Restriction to `labels`: independent sets are the independent subsets."""
    labels = frozenset(labels)
    mask = m.mask_of(labels)
    rank_x = m.rank_of_mask(mask)
    new_ground = tuple(lab for lab in m.ground if lab in labels)
    pos = {lab: i for i, lab in enumerate(new_ground)}
    new_bases = set()
    for b in m.bases:
        inter = b & mask
        if inter.bit_count() == rank_x:
            new_bases.add(sum(1 << pos[lab] for lab in m.labels_of(inter)))
    return Matroid(new_ground, frozenset(new_bases))


def contract_to(m: Matroid, labels: Iterable[str]) -> Matroid:
    """Contraction of m to `labels` (the complement is contracted away),
    computed as dual(restrict(dual(m), labels))."""
    return dual(restrict(dual(m), labels))


def direct_sum(m: Matroid, n: Matroid) -> Matroid:
    """Direct sum on disjoint ground sets; overlapping labels are rejected
    rather than silently renamed."""
    overlap = set(m.ground) & set(n.ground)
    if overlap:
        raise ValueError(f"direct sum needs disjoint ground sets; both contain {sorted(overlap)}")
    ground = m.ground + n.ground
    shift = len(m.ground)
    bases = frozenset(b | (c << shift) for b in m.bases for c in n.bases)
    return Matroid(ground, bases)


def relabel(m: Matroid, mapping: dict[str, str]) -> Matroid:
    """Rename ground elements through a label mapping (missing keys keep
    their label); the result must again have unique labels."""
    ground = tuple(mapping.get(lab, lab) for lab in m.ground)
    return Matroid(ground, m.bases)


# -- from representations ---------------------------------------------------


def gamma(
    rep: "Representation",
    *,
    max_ground: int = DEFAULT_ENUMERATION_LIMIT,
    validate: bool = False,
) -> Matroid:
    """Materialize the matroid represented by ``(digraph, targets, ground)``:
    a set is independent iff it routes into the targets.

    Subsets are enumerated in rank-bounded order: level k+1 candidates are
    one-element extensions of independent k-sets all of whose k-subsets are
    independent, so the enumeration stops at the rank.  The ground set is
    capped at `max_ground` elements.
    """
    ids = sorted(rep.ground)
    if len(ids) > max_ground:
        raise EnumerationLimitError(
            f"ground set has {len(ids)} elements, enumeration limit is {max_ground}"
        )
    d = rep.digraph
    succ = d.successors
    tset = set(rep.targets)

    prev: set[frozenset[int]] = {frozenset()}
    levels = [prev]
    while True:
        nxt: set[frozenset[int]] = set()
        for indep in prev:
            top = max(indep) if indep else -1
            for e in ids:
                if e <= top:
                    continue
                cand = indep | {e}
                if all(cand - {x} in prev for x in cand):
                    if _routable_ids(succ, tset, cand):
                        nxt.add(cand)
        if not nxt:
            break
        levels.append(nxt)
        prev = nxt

    ground = tuple(d.labels[i] for i in ids)
    pos = {v: i for i, v in enumerate(ids)}
    bases = frozenset(sum(1 << pos[v] for v in b) for b in levels[-1])
    result = Matroid(ground, bases)
    if validate:
        validate_matroid(result)
    return result


# -- JSON -------------------------------------------------------------------


def matroid_to_dict(m: Matroid) -> dict:
    """JSON form: ``{"ground": [...], "bases": [[...], ...]}``."""
    return {
        "ground": list(m.ground),
        "bases": sorted(sorted(m.labels_of(b)) for b in m.bases),
    }


def matroid_from_dict(obj: dict) -> Matroid:
    if not isinstance(obj, dict):
        raise ValueError("matroid object must be a JSON object")
    ground = obj.get("ground")
    bases = obj.get("bases")
    if not isinstance(ground, list) or not all(isinstance(x, str) for x in ground):
        raise ValueError('matroid field "ground" must be a list of strings')
    if not isinstance(bases, list) or not all(isinstance(b, list) for b in bases):
        raise ValueError('matroid field "bases" must be a list of lists')
    return Matroid.from_label_sets(ground, bases)
