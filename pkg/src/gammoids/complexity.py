"""Arc complexity, super-additive widths, and bounded-width class membership.

The arc complexity of a matroid is the least arc count over all standard
representations, a minimum over an unbounded universe of digraphs.  The
search space is made finite by three facts about arc-minimal standard
representations, recorded here because every exhaustiveness claim rests on
them:

* the target set of a standard representation is a base of the represented
  matroid: targets are independent via single-vertex paths, and a routing
  into the targets caps independent sets at the target count, so only bases
  need to be tried;
* an internal vertex (one outside the ground set) with in-degree zero or
  out-degree zero lies on no routing path, so its incident arcs can be
  deleted without changing the represented matroid or standardness; an
  arc-minimal representation therefore has every internal vertex with in-
  and out-degree at least one, which bounds the internal vertex count by the
  arc count;
* a loop can never be traversed, so dropping one also preserves everything.

Iterative deepening on the arc count hence only needs, at level a,
candidates with at most a internal vertices, no loops, and no useless
internal vertex: pruning any standard representation with a arcs yields one
inside this restricted space with at most a arcs, which the current or an
earlier level finds.  Standardness itself fixes the allowed arc shapes:
tails range over non-target ground elements and internal vertices, heads
over internal vertices and targets.

Internal vertices are anonymous, so candidates are enumerated up to
internal-vertex relabeling only; ground elements are labeled and never
permuted.  A candidate digraph represents the matroid iff every base routes
into the targets and no circuit does (downward closure on one side, a
contained circuit on the other).

Widths are exact rationals throughout; no floating point is involved in any
comparison.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, replace
from fractions import Fraction
from itertools import combinations, permutations
from math import comb
from typing import Iterable

from .digraph import Digraph
from .matroid import (
    EnumerationLimitError,
    Matroid,
    contract_to,
    restrict,
    uniform,
)
from .representation import Representation, rep_to_dict
from .routing import _routable_ids


class BudgetExhaustedError(RuntimeError):
    """Search limits were hit before any representation was found."""

    def __init__(self, message: str, levels: tuple["LevelStats", ...] = ()):
        super().__init__(message)
        self.levels = levels


@dataclass(frozen=True)
class SearchLimits:
    """Budgets for the arc-complexity search.  ``max_arcs`` caps the deepening
    level (default: the rank/size upper bound, which is always sufficient for
    a gammoid), ``max_internal`` caps internal vertices per level,
    ``max_candidates`` caps the raw candidates generated per level, and
    ``wall_secs`` is a total wall-clock budget.  A truncated search never
    claims exhaustiveness."""

    max_arcs: int | None = None
    max_internal: int | None = None
    max_candidates: int | None = None
    wall_secs: float | None = None
    workers: int = 1


@dataclass(frozen=True)
class LevelStats:
    arcs: int
    candidates: int
    complete: bool


@dataclass(frozen=True)
class ComplexityCertificate:
    """Result of an arc-complexity search: the value, a standard witness
    representation achieving it, and whether the completed levels prove that
    no smaller standard representation exists."""

    value: int
    witness: Representation
    search_exhaustive: bool
    levels: tuple[LevelStats, ...]
    runtime_secs: float


@dataclass(frozen=True)
class MinorEntry:
    restrict_labels: tuple[str, ...]
    contract_labels: tuple[str, ...]
    arcs: int | None
    exhaustive: bool
    ratio: Fraction | None


@dataclass(frozen=True)
class WidthReport:
    """Maximum of arc-complexity over f over all nested minors.  When some
    inner search was truncated the value is still a certified lower bound on
    the width (it maximizes over the exhaustively solved minors only)."""

    value: Fraction
    argmax: tuple[tuple[str, ...], tuple[str, ...]]
    table: tuple[MinorEntry, ...]
    exhaustive: bool


# -- super-additive functions ------------------------------------------------


@dataclass(frozen=True)
class SuperAdditiveFn:
    """Positive-integer-valued function used as the width denominator.

    Families: the built-in ``max(1, x)``, linear ``c * max(1, x)``, and an
    explicit value table for ``0..len-1``.  Values must be integers >= 1;
    the linear coefficient may be rational as long as every value stays a
    positive integer.
    """

    kind: str
    coeff: Fraction = Fraction(1)
    table: tuple[int, ...] = ()

    @classmethod
    def fhat(cls) -> "SuperAdditiveFn":
        return cls("fhat")

    @classmethod
    def linear(cls, coeff) -> "SuperAdditiveFn":
        return cls("linear", coeff=Fraction(coeff))

    @classmethod
    def from_table(cls, values: Iterable[int]) -> "SuperAdditiveFn":
        return cls("table", table=tuple(int(v) for v in values))

    @classmethod
    def parse(cls, spec: str) -> "SuperAdditiveFn":
        """Parse "fhat" or "linear:<c>" (tables need a file and are handled by
        the CLI)."""
        if spec == "fhat":
            return cls.fhat()
        if spec.startswith("linear:"):
            return cls.linear(Fraction(spec.split(":", 1)[1]))
        raise ValueError(f"unknown function spec {spec!r} (expected fhat or linear:<c>)")

    def __call__(self, x: int) -> int:
        if x < 0:
            raise ValueError("defined on the naturals only")
        if self.kind == "fhat":
            return max(1, x)
        if self.kind == "linear":
            val = self.coeff * max(1, x)
            if val.denominator != 1:
                raise ValueError(f"value at {x} is {val}, not a natural number")
            return int(val)
        if self.kind == "table":
            if x >= len(self.table):
                raise ValueError(f"value table covers 0..{len(self.table) - 1}, asked for {x}")
            return self.table[x]
        raise ValueError(f"unknown function kind {self.kind!r}")

    def describe(self) -> dict:
        if self.kind == "linear":
            return {"kind": "linear", "coeff": str(self.coeff)}
        if self.kind == "table":
            return {"kind": "table", "values": list(self.table)}
        return {"kind": self.kind}


def is_superadditive(f, upto: int) -> bool:
    """Check ``f(n + m) >= f(n) + f(m)`` for all ``1 <= n, m`` with
    ``n + m <= upto`` and that values on ``0..upto`` are integers >= 1."""
    values = []
    for x in range(upto + 1):
        try:
            v = f(x)
        except ValueError:
            return False
        if not isinstance(v, int) or v < 1:
            return False
        values.append(v)
    for n in range(1, upto + 1):
        for m in range(n, upto - n + 1):
            if values[n + m] < values[n] + values[m]:
                return False
    return True


# -- closed-form pieces --------------------------------------------------------


def kw_upper_bound(rank: int, size: int) -> int:
    """Polynomial arc-count bound valid for every gammoid of the given rank
    and ground size (vertex bound squared, after loop removal and
    standardization)."""
    if rank < 0 or size < 0 or rank > size:
        raise ValueError(f"need 0 <= rank <= size, got rank={rank}, size={size}")
    return (
        rank**4 * size**2
        + 2 * rank**3 * size
        + 2 * rank**2 * size**2
        + rank**2
        + 2 * rank * size
        + size**2
    )


def uniform_rep(r: int, n: int) -> Representation:
    """Standard representation of the rank-r uniform matroid on n elements:
    targets "1".."r", sources "r+1".."n", all source-to-target arcs;
    r * (n - r) arcs in total."""
    if r < 0 or n < 0 or r > n:
        raise ValueError(f"need 0 <= r <= n, got r={r}, n={n}")
    labels = tuple(str(i) for i in range(1, n + 1))
    arcs = frozenset((x, t) for x in range(r, n) for t in range(r))
    return Representation(Digraph(labels, arcs), frozenset(range(r)), frozenset(range(n)))


def lower_bound(m: Matroid, base_labels: Iterable[str]) -> int:
    """Arcs any standard representation with target base T needs: every
    non-loop element outside T must reach the targets, so it has an out-arc
    of its own."""
    t_mask = m.mask_of(base_labels)
    if t_mask not in m.bases:
        raise ValueError("lower_bound needs a base as its target set")
    loops_mask = m.mask_of(m.loops())
    return (m.full_mask & ~t_mask & ~loops_mask).bit_count()


def _circuit_ids(m: Matroid) -> list[tuple[int, ...]]:
    """Minimal dependent sets, as tuples of ground positions."""
    g = len(m.ground)
    table = bytearray(1 << g)
    for b in m.bases:
        sub = b
        while True:
            table[sub] = 1
            if sub == 0:
                break
            sub = (sub - 1) & b
    circuits = []
    for x in range(1, 1 << g):
        if table[x]:
            continue
        bits = [i for i in range(g) if x >> i & 1]
        if all(table[x ^ (1 << i)] for i in bits):
            circuits.append(tuple(bits))
    return circuits


# -- the exhaustive search ------------------------------------------------------


def _chunk_pair_count(g: int, rank: int, k: int) -> int:
    """Number of allowed arcs for k internal vertices: tails are sources and
    internals, heads are internals and targets, minus internal self-loops."""
    return (g - rank + k) * (k + rank) - k


def _search_chunk(args) -> tuple[tuple | None, int, bool]:
    """Enumerate the candidates of one (level, target base, internal count)
    chunk in lexicographic order; return the first matching arc set, the
    number of raw candidates generated, and whether the chunk ran to
    completion.  Top-level and picklable so it can run in worker processes.
    """
    (g, t_mask, k, a, bases_ids, circuits_ids, nonloop_ids, loop_ids, deadline) = args
    targets = [i for i in range(g) if t_mask >> i & 1]
    sources = [i for i in range(g) if not t_mask >> i & 1]
    internals = list(range(g, g + k))
    pairs = sorted(
        (u, v)
        for u in sources + internals
        for v in internals + targets
        if u != v
    )
    if len(pairs) < a:
        return None, 0, True

    tset = set(targets)
    full_k = (1 << k) - 1
    perms = list(permutations(range(k)))[1:] if k >= 2 else []
    count = 0
    for combo in combinations(pairs, a):
        count += 1
        if deadline is not None and count % 512 == 0 and time.time() > deadline:
            return None, count, False

        if k:
            din = dout = 0
            for u, v in combo:
                if u >= g:
                    dout |= 1 << (u - g)
                if v >= g:
                    din |= 1 << (v - g)
            if din != full_k or dout != full_k:
                continue

        # reverse reachability: every non-loop element must reach the
        # targets, no matroid loop may
        radj: dict[int, list[int]] = {}
        for u, v in combo:
            radj.setdefault(v, []).append(u)
        reach = set(targets)
        stack = list(targets)
        while stack:
            v = stack.pop()
            for u in radj.get(v, ()):
                if u not in reach:
                    reach.add(u)
                    stack.append(u)
        if any(e not in reach for e in nonloop_ids):
            continue
        if any(e in reach for e in loop_ids):
            continue

        if perms:
            canonical = True
            for perm in perms:
                remap = tuple(
                    sorted(
                        (
                            u if u < g else g + perm[u - g],
                            v if v < g else g + perm[v - g],
                        )
                        for u, v in combo
                    )
                )
                if remap < combo:
                    canonical = False
                    break
            if not canonical:
                continue

        succ: list[list[int]] = [[] for _ in range(g + k)]
        for u, v in combo:
            succ[u].append(v)
        for lst in succ:
            lst.sort()
        if not all(_routable_ids(succ, tset, base) for base in bases_ids):
            continue
        if any(_routable_ids(succ, tset, circ) for circ in circuits_ids):
            continue
        return combo, count, True
    return None, count, True


def _fresh_internal_labels(ground: tuple[str, ...], k: int) -> list[str]:
    taken = set(ground)
    labels = []
    for j in range(k):
        lab = f"i{j}"
        while lab in taken:
            lab += "'"
        taken.add(lab)
        labels.append(lab)
    return labels


def arc_complexity(m: Matroid, limits: SearchLimits | None = None) -> ComplexityCertificate:
    """Exhaustive iterative-deepening search for an arc-minimal standard
    representation of `m`.

    Deepens on the arc count from the source lower bound up to ``max_arcs``
    (default: the closed-form upper bound, sufficient whenever `m` is a
    gammoid).  Raises :class:`BudgetExhaustedError` when the limits stop the
    search before any representation is found; if a level had to be truncated
    earlier, a later success is still returned but flagged non-exhaustive.
    """
    limits = limits or SearchLimits()
    t0 = time.time()
    deadline = t0 + limits.wall_secs if limits.wall_secs is not None else None
    g = len(m.ground)
    if g > 16:
        raise EnumerationLimitError(f"ground set has {g} elements, search limit is 16")

    rank = m.rank
    bases_masks = sorted(m.bases)
    bases_ids = tuple(
        tuple(i for i in range(g) if b >> i & 1) for b in bases_masks
    )
    circuits_ids = tuple(_circuit_ids(m))
    union = 0
    for b in m.bases:
        union |= b
    loop_ids = tuple(i for i in range(g) if not union >> i & 1)
    nonloop_ids = tuple(i for i in range(g) if union >> i & 1)

    lb = len(nonloop_ids) - rank
    cap = limits.max_arcs if limits.max_arcs is not None else kw_upper_bound(rank, g)
    if cap < lb:
        raise BudgetExhaustedError(
            f"max_arcs={cap} is below the lower bound {lb}; nothing to search"
        )

    level_stats: list[LevelStats] = []
    for a in range(lb, cap + 1):
        k_cap = a if limits.max_internal is None else min(a, limits.max_internal)
        chunks = [
            (g, t_mask, k, a, bases_ids, circuits_ids, nonloop_ids, loop_ids, deadline)
            for k in range(k_cap + 1)
            for t_mask in bases_masks
        ]
        level_complete = k_cap == a
        candidates = 0
        witness_combo = None
        witness_k = None
        witness_tmask = None

        # candidate budget enforced on predicted raw counts, so the chunk
        # selection is the same no matter how many workers run
        todo = []
        predicted_total = 0
        for chunk in chunks:
            pair_count = _chunk_pair_count(g, rank, chunk[2])
            predicted = comb(pair_count, a) if pair_count >= a else 0
            if limits.max_candidates is not None and predicted_total + predicted > limits.max_candidates:
                level_complete = False
                break
            predicted_total += predicted
            todo.append(chunk)

        def handle(chunk, result):
            nonlocal candidates, level_complete, witness_combo, witness_k, witness_tmask
            combo, n_cand, complete = result
            candidates += n_cand
            if not complete:
                level_complete = False
            if combo is not None and witness_combo is None:
                witness_combo = combo
                witness_k = chunk[2]
                witness_tmask = chunk[1]

        if limits.workers > 1 and len(todo) > 1:
            from concurrent.futures import ProcessPoolExecutor

            with ProcessPoolExecutor(max_workers=limits.workers) as pool:
                futures = [pool.submit(_search_chunk, chunk) for chunk in todo]
                for chunk, fut in zip(todo, futures):
                    handle(chunk, fut.result())
                    if witness_combo is not None:
                        for other in futures:
                            other.cancel()
                        break
        else:
            for chunk in todo:
                handle(chunk, _search_chunk(chunk))
                if witness_combo is not None:
                    break

        level_stats.append(LevelStats(a, candidates, level_complete))

        if witness_combo is not None:
            internal_labels = _fresh_internal_labels(m.ground, witness_k)
            dig = Digraph(m.ground + tuple(internal_labels), frozenset(witness_combo))
            witness = Representation(
                dig,
                frozenset(i for i in range(g) if witness_tmask >> i & 1),
                frozenset(range(g)),
            )
            exhaustive = all(st.complete for st in level_stats[:-1])
            return ComplexityCertificate(
                value=a,
                witness=witness,
                search_exhaustive=exhaustive,
                levels=tuple(level_stats),
                runtime_secs=time.time() - t0,
            )

        if deadline is not None and time.time() > deadline:
            raise BudgetExhaustedError(
                f"wall-clock budget hit at level {a} with no representation found",
                tuple(level_stats),
            )

    raise BudgetExhaustedError(
        f"no standard representation with at most {cap} arcs found "
        "(not a gammoid, or max_arcs too small)",
        tuple(level_stats),
    )


def verify_uniform_conjecture(r: int, n: int, limits: SearchLimits | None = None) -> bool:
    """True iff the exhaustive search certifies that the rank-r uniform
    matroid on n elements has arc complexity exactly r * (n - r)."""
    cert = arc_complexity(uniform(r, n), limits)
    return cert.search_exhaustive and cert.value == r * (n - r)


# -- widths ---------------------------------------------------------------------


def _canonical_key(m: Matroid):
    return (frozenset(m.ground), m.bases_label_sets())


def f_width(
    m: Matroid,
    f: SuperAdditiveFn,
    limits: SearchLimits | None = None,
    *,
    arc_cache: dict | None = None,
) -> WidthReport:
    """Maximum over all nested ground subsets X within Y of the arc complexity
    of (m contracted to Y) restricted to X, divided by f(|X|); exact rational
    arithmetic throughout.

    `f` is validated super-additive on 1..2|E| first.  `arc_cache` may be
    shared across calls to reuse inner search results.
    """
    g = len(m.ground)
    if not is_superadditive(f, max(2 * g, 2)):
        raise ValueError("the width denominator must be super-additive with values >= 1")
    limits = limits or SearchLimits()
    deadline = time.time() + limits.wall_secs if limits.wall_secs is not None else None
    cache = arc_cache if arc_cache is not None else {}

    best = Fraction(0)
    best_arg: tuple[tuple[str, ...], tuple[str, ...]] = ((), ())
    entries: list[MinorEntry] = []
    exhaustive = True
    for y_mask in range(1 << g):
        y_labels = tuple(sorted(m.labels_of(y_mask)))
        contracted = contract_to(m, y_labels)
        x_mask = y_mask
        x_masks = []
        while True:
            x_masks.append(x_mask)
            if x_mask == 0:
                break
            x_mask = (x_mask - 1) & y_mask
        for x_mask in sorted(x_masks):
            x_labels = tuple(sorted(m.labels_of(x_mask)))
            minor = restrict(contracted, x_labels)
            key = _canonical_key(minor)
            if key in cache:
                value, cert_exhaustive = cache[key]
            else:
                remaining = None
                if deadline is not None:
                    remaining = deadline - time.time()
                    if remaining <= 0:
                        entries.append(MinorEntry(x_labels, y_labels, None, False, None))
                        exhaustive = False
                        continue
                inner = replace(limits, wall_secs=remaining)
                try:
                    cert = arc_complexity(minor, inner)
                    value, cert_exhaustive = cert.value, cert.search_exhaustive
                except BudgetExhaustedError:
                    value, cert_exhaustive = None, False
                cache[key] = (value, cert_exhaustive)
            if value is None or not cert_exhaustive:
                entries.append(MinorEntry(x_labels, y_labels, value, False, None))
                exhaustive = False
                continue
            ratio = Fraction(value, f(x_mask.bit_count()))
            entries.append(MinorEntry(x_labels, y_labels, value, True, ratio))
            if ratio > best:
                best = ratio
                best_arg = (x_labels, y_labels)
    return WidthReport(value=best, argmax=best_arg, table=tuple(entries), exhaustive=exhaustive)


def in_class(
    m: Matroid,
    f: SuperAdditiveFn,
    q: Fraction,
    limits: SearchLimits | None = None,
    *,
    arc_cache: dict | None = None,
) -> bool:
    """Exact membership test for the bounded-width class: width of `m` at most
    `q`.  A truncated width can still certify non-membership (the computed
    value is a lower bound); certifying membership needs the full width."""
    q = Fraction(q)
    report = f_width(m, f, limits, arc_cache=arc_cache)
    if report.exhaustive:
        return report.value <= q
    if report.value > q:
        return False
    raise BudgetExhaustedError(
        f"width search truncated at lower bound {report.value}; cannot certify membership"
    )


# -- JSON -------------------------------------------------------------------------


def certificate_to_dict(cert: ComplexityCertificate) -> dict:
    return {
        "value": cert.value,
        "exhaustive": cert.search_exhaustive,
        "witness": rep_to_dict(cert.witness),
        "levels": [
            {"arcs": st.arcs, "candidates": st.candidates, "complete": st.complete}
            for st in cert.levels
        ],
        "runtime_secs": round(cert.runtime_secs, 3),
    }


def width_report_to_dict(report: WidthReport, f: SuperAdditiveFn | None = None) -> dict:
    out = {
        "value": str(report.value),
        "exhaustive": report.exhaustive,
        "argmax": {"restrict": list(report.argmax[0]), "contract": list(report.argmax[1])},
        "table": [
            {
                "restrict": list(e.restrict_labels),
                "contract": list(e.contract_labels),
                "arcs": e.arcs,
                "exhaustive": e.exhaustive,
                "ratio": None if e.ratio is None else str(e.ratio),
            }
            for e in report.table
        ],
    }
    if f is not None:
        out["f"] = f.describe()
    return out
