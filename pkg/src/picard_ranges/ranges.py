"""Attainable Picard-number sets by dynamic programming over a catalog.

The Picard number of a product of pairwise non-isogenous factors is the
sum of the per-factor values, so the set attainable in dimension g is an
attainable-sum problem: catalog entries with unboundedly many isogeny
classes behave like unbounded knapsack items (one item per power k, and
repeating an item means using another isogeny class), single-class entries
like 0/1 items.  The supersingular block is handled by an outer loop over
its power s, which keeps the at-most-one-supersingular-block constraint
exact; its contribution is 2s^2 - s.

Every attainable value keeps one witness decomposition, chosen
deterministically by preferring the lexicographically smaller formatted
string whenever two assemblies reach the same (dimension, value) cell.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .albert import CHAR_P, CharContext
from .catalog import Catalog, blocks_for_dim, builtin
from .decomp import Block, Decomposition, normalize, supersingular_block

STATUS_CERTIFIED = "certified"
STATUS_UPPER_ONLY = "upper-only"
STATUS_REFUTED = "refuted"
STATUS_UNDETERMINED = "undetermined"


def max_picard(g: int) -> int:
    """The second Betti number 2g^2 - g, the absolute ceiling for rho."""
    return 2 * g * g - g


def ss_rho(s: int) -> int:
    """Picard number of the s-th power of the supersingular elliptic curve."""
    return 2 * s * s - s if s else 0


@dataclass(frozen=True)
class RangeValue:
    rho: int
    status: str
    star: bool
    witness: Decomposition | None


@dataclass(frozen=True)
class RangeResult:
    g: int
    ctx: CharContext
    mode: str
    values: tuple[RangeValue, ...]

    def value_set(self) -> set[int]:
        return {v.rho for v in self.values}

    def star_set(self) -> set[int]:
        return {v.rho for v in self.values if v.star}

    def witness_for(self, rho: int) -> Decomposition | None:
        for v in self.values:
            if v.rho == rho:
                return v.witness
        return None


def _items(g: int, catalog: Catalog, ctx: CharContext, include_uncertain: bool):
    """Non-supersingular (block, value, unbounded?, entry_key) items, and
    whether the supersingular block is available at all."""
    items = []
    has_ss = False
    for m in range(1, g + 1):
        for block, count in blocks_for_dim(catalog, m, ctx, include_uncertain):
            if block.is_supersingular:
                has_ss = True
                continue
            items.append((block, block.rho, count == "unbounded",
                          (block.simple_dim, block.albert)))
    items.sort(key=lambda it: (it[0].block_dim, it[0].sort_key))
    return items, has_ss


def _update(cell: dict, rho: int, blocks: tuple[Block, ...]) -> None:
    fmt = " * ".join(str(b) for b in blocks)
    old = cell.get(rho)
    if old is None or fmt < old[0]:
        cell[rho] = (fmt, blocks)


@lru_cache(maxsize=None)
def _dp_table(g: int, catalog: Catalog, ctx: CharContext, include_uncertain: bool):
    """table[d] maps rho -> (formatted witness, blocks) over supersingular-free
    assemblies of total dimension d, for all 0 <= d <= g."""
    items, _ = _items(g, catalog, ctx, include_uncertain)
    table: list[dict] = [{} for _ in range(g + 1)]
    table[0][0] = ("", ())
    one_groups: dict = {}
    for block, value, unbounded, key in items:
        if not unbounded:
            one_groups.setdefault(key, []).append((block, value))
            continue
        bdim = block.block_dim
        for d in range(bdim, g + 1):
            for rho, (_, blocks) in table[d - bdim].items():
                cand = tuple(sorted(blocks + (block,), key=lambda b: b.sort_key))
                _update(table[d], rho + value, cand)
    for group in one_groups.values():
        base = [dict(cell) for cell in table]
        for block, value in group:
            bdim = block.block_dim
            for d in range(bdim, g + 1):
                for rho, (_, blocks) in base[d - bdim].items():
                    cand = tuple(sorted(blocks + (block,), key=lambda b: b.sort_key))
                    _update(table[d], rho + value, cand)
    return table


def _ss_available(catalog: Catalog, ctx: CharContext) -> bool:
    return ctx.positive and catalog.has_supersingular()


@lru_cache(maxsize=None)
def attainable(
    g: int,
    catalog: Catalog,
    ctx: CharContext = CHAR_P,
    allow_ss: bool = True,
    include_uncertain: bool | None = None,
) -> RangeResult:
    """Exact attainable set of Picard numbers in dimension g over a catalog.

    With ``allow_ss=False`` only supersingularity-free decompositions are
    considered (the star set).  ``include_uncertain`` controls whether
    conditional catalog entries that are not ruled out count as available;
    it defaults to True exactly for the refutation-oriented ``upper`` mode.
    """
    if g < 1:
        raise ValueError("g must be positive")
    if include_uncertain is None:
        include_uncertain = catalog.mode == "upper"
    table = _dp_table(g, catalog, ctx, include_uncertain)
    star_values = set(table[g].keys())
    best: dict[int, tuple[str, tuple[Block, ...]]] = {}
    s_values = [0] + (list(range(1, g + 1)) if allow_ss and _ss_available(catalog, ctx) else [])
    for s in s_values:
        extra = (supersingular_block(s),) if s else ()
        for rho_rest, (_, blocks) in table[g - s].items():
            full = normalize(blocks + extra)
            _update(best, ss_rho(s) + rho_rest, full)
    status = STATUS_UPPER_ONLY if catalog.mode == "upper" else STATUS_CERTIFIED
    values = tuple(
        RangeValue(rho, status, rho in star_values, Decomposition(best[rho][1]))
        for rho in sorted(best)
    )
    return RangeResult(g, ctx, catalog.mode, values)


@lru_cache(maxsize=None)
def attainable_by_ss_index(
    g: int,
    catalog: Catalog,
    ctx: CharContext = CHAR_P,
    include_uncertain: bool | None = None,
) -> dict[int, frozenset]:
    """Map each supersingularity index s to the values attainable with
    exactly that index."""
    if g < 1:
        raise ValueError("g must be positive")
    if include_uncertain is None:
        include_uncertain = catalog.mode == "upper"
    table = _dp_table(g, catalog, ctx, include_uncertain)
    out = {0: frozenset(table[g])}
    if _ss_available(catalog, ctx):
        for s in range(1, g + 1):
            out[s] = frozenset(ss_rho(s) + r for r in table[g - s])
    return out


def star_sets_up_to(g: int, catalog: Catalog, ctx: CharContext = CHAR_P,
                    include_uncertain: bool | None = None) -> list[frozenset]:
    """Supersingularity-free value sets for every dimension 0..g (one DP run)."""
    if include_uncertain is None:
        include_uncertain = catalog.mode == "upper"
    table = _dp_table(g, catalog, ctx, include_uncertain)
    return [frozenset(cell) for cell in table]


@dataclass(frozen=True)
class RangeComparison:
    g: int
    ctx: CharContext
    lower: RangeResult
    upper: RangeResult
    star_lower: RangeResult
    star_upper: RangeResult

    def status_of(self, rho: int) -> str:
        if rho in self.lower.value_set():
            return STATUS_CERTIFIED
        if rho not in self.upper.value_set():
            return STATUS_REFUTED
        return STATUS_UNDETERMINED


def paper_catalog(g: int, ctx: CharContext = CHAR_P) -> Catalog:
    return builtin("paper", g, ctx)


def upper_catalog(g: int, ctx: CharContext = CHAR_P) -> Catalog:
    return builtin("upper", g, ctx)


@lru_cache(maxsize=None)
def range_sets(g: int, ctx: CharContext = CHAR_P) -> RangeComparison:
    """Certified (paper-catalog) and restriction-only (upper-catalog) sets,
    with their supersingularity-free subsets."""
    lower_cat = paper_catalog(g, ctx)
    upper_cat = upper_catalog(g, ctx)
    return RangeComparison(
        g,
        ctx,
        attainable(g, lower_cat, ctx),
        attainable(g, upper_cat, ctx),
        attainable(g, lower_cat, ctx, allow_ss=False),
        attainable(g, upper_cat, ctx, allow_ss=False),
    )


@dataclass(frozen=True)
class Membership:
    rho: int
    g: int
    status: str
    witness: Decomposition | None


def membership(rho: int, g: int, ctx: CharContext = CHAR_P) -> Membership:
    """Certified (with witness), refuted, or undetermined status of one value."""
    if g < 1:
        raise ValueError("g must be positive")
    if not 1 <= rho <= max_picard(g):
        raise ValueError(f"rho must lie in [1, {max_picard(g)}] for g={g}")
    cmp = range_sets(g, ctx)
    status = cmp.status_of(rho)
    witness = cmp.lower.witness_for(rho) if status == STATUS_CERTIFIED else None
    return Membership(rho, g, status, witness)


def length_max_closed_form(r: int, g: int) -> int:
    """Closed form for the largest Picard number among dimension-g classes
    with exactly r isogeny factors: [2(g-r+1)^2 - (g-r+1)] + (r-1)."""
    m = g - r + 1
    return (2 * m * m - m) + (r - 1)


@dataclass(frozen=True)
class LengthMax:
    r: int
    g: int
    enumerated: int
    closed_form: int

    @property
    def matches(self) -> bool:
        return self.enumerated == self.closed_form


@lru_cache(maxsize=None)
def _length_table(g: int, catalog: Catalog, ctx: CharContext):
    """table[d][c] = max value over supersingular-free assemblies of total
    dimension d with exactly c blocks (None when unreachable)."""
    items, _ = _items(g, catalog, ctx, include_uncertain=True)
    table = [[None] * (g + 1) for _ in range(g + 1)]
    table[0][0] = 0
    one_groups: dict = {}
    for block, value, unbounded, key in items:
        if not unbounded:
            one_groups.setdefault(key, []).append((block, value))
            continue
        bdim = block.block_dim
        for d in range(bdim, g + 1):
            for c in range(1, g + 1):
                prev = table[d - bdim][c - 1]
                if prev is not None and (table[d][c] is None or prev + value > table[d][c]):
                    table[d][c] = prev + value
    for group in one_groups.values():
        base = [row[:] for row in table]
        for block, value in group:
            bdim = block.block_dim
            for d in range(bdim, g + 1):
                for c in range(1, g + 1):
                    prev = base[d - bdim][c - 1]
                    if prev is not None and (table[d][c] is None or prev + value > table[d][c]):
                        table[d][c] = prev + value
    return table


def max_by_length(r: int, g: int, ctx: CharContext = CHAR_P) -> LengthMax:
    """Largest Picard number over restriction-only decompositions of
    dimension g with exactly r factors, next to the closed form."""
    if g < 1:
        raise ValueError("g must be positive")
    if not 1 <= r <= g:
        raise ValueError("length r must satisfy 1 <= r <= g")
    catalog = upper_catalog(g, ctx)
    table = _length_table(g, catalog, ctx)
    best = None
    s_values = range(0, g + 1) if _ss_available(catalog, ctx) else [0]
    for s in s_values:
        c = r - (1 if s else 0)
        if c < 0 or g - s < 0:
            continue
        rest = table[g - s][c]
        if rest is not None:
            cand = ss_rho(s) + rest
            if best is None or cand > best:
                best = cand
    if best is None:
        raise ValueError(f"no decomposition of dimension {g} with {r} factors exists")
    return LengthMax(r, g, best, length_max_closed_form(r, g))


def gaps(g: int, ctx: CharContext = CHAR_P) -> list[tuple[int, int]]:
    """Maximal intervals in [1, 2g^2-g] missed even by the restriction-only
    enumeration; values there are refuted."""
    if g < 1:
        raise ValueError("g must be positive")
    present = attainable(g, upper_catalog(g, ctx), ctx).value_set()
    out = []
    lo = None
    for v in range(1, max_picard(g) + 2):
        if v <= max_picard(g) and v not in present:
            if lo is None:
                lo = v
        elif lo is not None:
            out.append((lo, v - 1))
            lo = None
    return out


def structure_witnesses(
    g: int,
    rho: int,
    ctx: CharContext = CHAR_P,
    mode: str = "paper",
) -> list[Decomposition]:
    """Every certified-catalog decomposition of dimension g with the given
    Picard number, in canonical order.

    The certified catalog is used so that the answer reflects constructions
    known to exist; switch ``mode`` to ``"upper"`` for the restriction-only
    universe.
    """
    if g < 1:
        raise ValueError("g must be positive")
    catalog = builtin(mode, g, ctx)
    include_uncertain = mode == "upper"
    items, has_ss = _items(g, catalog, ctx, include_uncertain)
    ss_ok = has_ss and ctx.positive
    found = []

    def max_rest(dim_left: int, ss_free: bool) -> int:
        if dim_left == 0:
            return 0
        return ss_rho(dim_left) if ss_free else dim_left * dim_left

    def rec(idx: int, dim_left: int, val_left: int, acc: list, ss_free: bool):
        if dim_left == 0:
            if val_left == 0 and acc:
                found.append(Decomposition.from_blocks(acc))
            return
        if val_left < 1 or val_left > max_rest(dim_left, ss_free):
            return
        if ss_free and val_left == ss_rho(dim_left):
            found.append(Decomposition.from_blocks(acc + [supersingular_block(dim_left)]))
        for i in range(idx, len(items)):
            block, value, unbounded, _ = items[i]
            if block.block_dim <= dim_left and value <= val_left:
                acc.append(block)
                rec(i if unbounded else i + 1, dim_left - block.block_dim,
                    val_left - value, acc, ss_free)
                acc.pop()

    rec(0, g, rho, [], ss_ok)
    uniq = sorted(set(found), key=str)
    return uniq


def translated_range(g: int, n: int, ctx: CharContext = CHAR_P, mode: str = "paper") -> set[int]:
    """The star set of dimension n shifted by 2(g-n)^2 - (g-n): values of
    products of a dimension-n supersingularity-free part with a power of
    the supersingular elliptic curve filling the remaining g - n."""
    if not 1 <= n <= g:
        raise ValueError("need 1 <= n <= g")
    offset = ss_rho(g - n)
    star = attainable(n, builtin(mode, n, ctx), ctx, allow_ss=False).value_set()
    return {offset + x for x in star}


def parity_filter(result: RangeResult) -> list[int]:
    """Values sharing the parity of the second Betti number 2g^2 - g; over
    finite fields the Picard number must have this parity."""
    b2 = max_picard(result.g)
    return [v.rho for v in result.values if (v.rho - b2) % 2 == 0]
