"""Exact probability measures on history spaces and the classical causality checks.

Every check works in scaled-integer arithmetic: weights are stored as integer
numerators over one common denominator, and each conditional-independence
equation is tested in cross-multiplied product form, so no division (and no
rounding) happens anywhere on a check path.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, replace
from fractions import Fraction
from functools import lru_cache
from math import lcm, prod

from .events import (
    config_indices,
    dom,
    event_ref,
    full_specifications,
    history_digits,
    n_configs,
    n_histories,
    omega,
)
from .order import CausalSite, iter_bits, submasks
from .report import (
    HOLDS,
    VACUOUS,
    VIOLATED,
    CheckReport,
    Counterexample,
    format_rational,
)

# |Omega| bound up to which searches range over the whole power set of events.
EXHAUSTIVE_EVENT_LIMIT = 20
# |Omega| bound up to which partition searches enumerate all set partitions.
SET_PARTITION_LIMIT = 8
# Bound on the number of mutual-past cells for common-correlate searches.
_PAST_CELL_LIMIT = 12


class MeasureError(ValueError):
    """Raised when weights do not form a probability measure."""


class PreconditionError(ValueError):
    """Raised when a search's correlation precondition fails.

    The command-line front end renders this as a vacuous outcome rather
    than a failure: there was nothing to search for.
    """


class SelectorError(ValueError):
    """Raised when a conditioning-region selector produces an inadmissible region."""


class StochasticModel:
    """An exact probability measure on the histories of a causal site.

    ``weights[h]`` is the probability of history index ``h``; weights must be
    nonnegative rationals summing to exactly 1.
    """

    __slots__ = ("site", "weights", "_nums", "_den")

    def __init__(self, site: CausalSite, weights) -> None:
        n = n_histories(site)
        ws = tuple(Fraction(w) for w in weights)
        if len(ws) != n:
            raise MeasureError(
                f"measure error: dimension mismatch: got {len(ws)} weights "
                f"for a history space of size {n}"
            )
        for h, w in enumerate(ws):
            if w < 0:
                raise MeasureError(f"measure error: negative weight {w} at history {h}")
        total = sum(ws)
        if total != 1:
            raise MeasureError(f"measure error: normalization: weights sum to {total}, not 1")
        den = lcm(*(w.denominator for w in ws))
        self.site = site
        self.weights = ws
        self._den = den
        self._nums = tuple(int(w * den) for w in ws)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, StochasticModel):
            return NotImplemented
        return self.site == other.site and self.weights == other.weights

    def __hash__(self) -> int:
        return hash((self.site, self.weights))

    def __repr__(self) -> str:
        return f"StochasticModel(site={self.site!r}, n_histories={len(self.weights)})"

    def _w(self, event: int) -> int:
        """Scaled weight of an event: mu(event) * common denominator."""
        nums = self._nums
        return sum(nums[h] for h in iter_bits(event))

    def mu(self, event: int) -> Fraction:
        """Measure of an event (bitmask over history indices)."""
        return Fraction(self._w(event), self._den)

    def conditional(self, event: int, given: int) -> Fraction:
        """mu(event | given); the conditioning event must have positive measure."""
        wg = self._w(given)
        if wg == 0:
            raise MeasureError("measure error: conditioning on an event of measure zero")
        return Fraction(self._w(event & given), wg)

    def support(self) -> int:
        """Bitmask of histories with positive weight."""
        mask = 0
        for h, w in enumerate(self._nums):
            if w:
                mask |= 1 << h
        return mask


def correlated(model: StochasticModel, a: int, b: int) -> bool:
    """True iff mu(a & b) differs from mu(a) * mu(b), exactly."""
    return model._w(a & b) * model._den != model._w(a) * model._w(b)


# --- cell tables -------------------------------------------------------------
#
# For pairwise-disjoint regions, every conditional-independence equation in
# this module reduces to integer identities between joint-configuration cell
# weights.  The flat cell index treats the first region as most significant,
# so ascending flat order scans the first region's configurations outermost.


def _cell_weights(model: StochasticModel, regions: tuple[int, ...]):
    """Scaled weights of the joint configuration cells of disjoint regions."""
    site = model.site
    sizes = tuple(n_configs(site, r) for r in regions)
    index_maps = [config_indices(site, r) for r in regions]
    table = [0] * prod(sizes)
    for h, w in enumerate(model._nums):
        if w:
            flat = 0
            for ci, size in zip(index_maps, sizes):
                flat = flat * size + ci[h]
            table[flat] += w
    return sizes, table


@lru_cache(maxsize=None)
def _atom_coords(sizes: tuple[int, ...]) -> tuple[tuple[int, ...], ...]:
    return tuple(itertools.product(*(range(s) for s in sizes)))


@dataclass(frozen=True)
class _Failure:
    """First cell where a conditional product rule breaks, in scaled integers."""

    past_index: int
    atom_indexes: tuple[int, ...]
    w_past: int
    w_joint: int
    w_margins: tuple[int, ...]


def _factorization_failure(model: StochasticModel, event_regions: tuple[int, ...], past: int):
    """Scan atoms of the event regions against full specifications of `past`.

    Checks mu(atoms jointly | C) = product of mu(atom_i | C) for every
    conditioning cell C with positive weight, in cross-multiplied form
    W(joint) * W(C)^(k-1) == prod W(atom_i within C).  Returns
    (failure-or-None, conditions_checked, null_conditions_skipped).
    """
    sizes, table = _cell_weights(model, (past, *event_regions))
    n_past, atom_counts = sizes[0], sizes[1:]
    block = prod(atom_counts)
    coords = _atom_coords(atom_counts)
    k = len(atom_counts)
    checked = 0
    skipped = 0
    for p in range(n_past):
        base = p * block
        w_past = sum(table[base : base + block])
        if w_past == 0:
            skipped += 1
            continue
        margins = [[0] * count for count in atom_counts]
        for flat in range(block):
            w = table[base + flat]
            if w:
                cs = coords[flat]
                for i in range(k):
                    margins[i][cs[i]] += w
        scale = w_past ** (k - 1)
        for flat in range(block):
            checked += 1
            cs = coords[flat]
            lhs = table[base + flat] * scale
            rhs = 1
            for i in range(k):
                rhs *= margins[i][cs[i]]
            if lhs != rhs:
                margin_ws = tuple(margins[i][cs[i]] for i in range(k))
                failure = _Failure(p, cs, w_past, table[base + flat], margin_ws)
                return failure, checked, skipped
    return None, checked, skipped


def _conditional_counterexample(
    model: StochasticModel,
    event_regions: tuple[int, ...],
    names: tuple[str, ...],
    past: int,
    fail: _Failure,
    note: str,
) -> Counterexample:
    site = model.site
    regions = tuple(
        (name, site.region_ids(r)) for name, r in zip(names, event_regions)
    ) + (("past", site.region_ids(past)),)
    events = []
    for name, r, atom in zip(names, event_regions, fail.atom_indexes):
        events.append((name, event_ref(site, full_specifications(site, r)[atom], r, atom)))
    cond = full_specifications(site, past)[fail.past_index]
    events.append(("C", event_ref(site, cond, past, fail.past_index)))
    joint = Fraction(fail.w_joint, fail.w_past)
    margins = [Fraction(w, fail.w_past) for w in fail.w_margins]
    label = "&".join(names)
    values = [("mu(C)", format_rational(Fraction(fail.w_past, model._den)))]
    values.append((f"mu({label}|C)", format_rational(joint)))
    for name, m in zip(names, margins):
        values.append((f"mu({name}|C)", format_rational(m)))
    values.append(("product", format_rational(prod(margins, start=Fraction(1)))))
    return Counterexample(
        regions=regions, events=tuple(events), values=tuple(values), note=note
    )


@lru_cache(maxsize=None)
def _spacelike_pairs(site: CausalSite) -> tuple[tuple[int, int], ...]:
    """All ordered pairs of disjoint nonempty spacelike regions, ascending."""
    pairs = []
    full = site.full_mask
    for a in range(1, full + 1):
        for b in submasks(full & ~a):
            if b and site.spacelike(a, b):
                pairs.append((a, b))
    return tuple(pairs)


def _pairwise_screening(
    model: StochasticModel,
    condition: str,
    past_of,
    eligible=None,
    extra_stats: dict | None = None,
    vacuous_reason: str = "no spacelike pairs of disjoint nonempty regions",
) -> CheckReport:
    pairs = 0
    checked = 0
    skipped = 0
    for ra, rb in _spacelike_pairs(model.site):
        if eligible is not None and not eligible(ra, rb):
            continue
        pairs += 1
        fail, c, s = _factorization_failure(model, (ra, rb), past_of(ra, rb))
        checked += c
        skipped += s
        if fail is not None:
            note = "conditional product rule fails for this atom pair given C"
            cx = _conditional_counterexample(
                model, (ra, rb), ("A", "B"), past_of(ra, rb), fail, note
            )
            stats = {
                "region_pairs": pairs,
                "atom_checks": checked,
                "null_conditions_skipped": skipped,
            }
            stats.update(extra_stats or {})
            return CheckReport(condition, VIOLATED, counterexample=cx, stats=stats)
    stats = {
        "region_pairs": pairs,
        "atom_checks": checked,
        "null_conditions_skipped": skipped,
    }
    stats.update(extra_stats or {})
    if pairs == 0:
        return CheckReport(condition, VACUOUS, reason=vacuous_reason, stats=stats)
    return CheckReport(condition, HOLDS, stats=stats)


def check_so1(model: StochasticModel) -> CheckReport:
    """Conditional independence of spacelike atoms given the mutual past.

    For every ordered pair of disjoint nonempty spacelike regions, every pair
    of full-specification atoms factorizes conditionally on each positive-
    measure full specification of the intersection of the regions' pasts.
    """
    site = model.site
    return _pairwise_screening(model, "so1", site.mutual_past)


def check_so2(model: StochasticModel) -> CheckReport:
    """As check_so1, but conditioning on the joint past of the pair."""
    site = model.site
    return _pairwise_screening(model, "so2", site.joint_past)


def check_so2w(model: StochasticModel) -> CheckReport:
    """As check_so2, restricted to region pairs clear of the initial elements."""
    site = model.site
    init = site.initial_elements()
    return _pairwise_screening(
        model,
        "so2w",
        site.joint_past,
        eligible=lambda a, b: not ((a | b) & init),
        vacuous_reason="no spacelike region pairs clear of the initial elements",
    )


_SELECTOR_NAMES = ("mutual", "joint", "bell", "all")


def _admissible_or_raise(site: CausalSite, past: int, ra: int, rb: int) -> None:
    p1 = site.mutual_past(ra, rb)
    if p1 & ~past:
        raise SelectorError(
            f"selector error: region {site.region_ids(past)} for pair "
            f"({site.region_ids(ra)}, {site.region_ids(rb)}) does not contain "
            "the mutual past"
        )
    banned = site.future(ra) | site.future(rb)
    if past & banned:
        raise SelectorError(
            f"selector error: region {site.region_ids(past)} for pair "
            f"({site.region_ids(ra)}, {site.region_ids(rb)}) intersects the "
            "future of the pair"
        )


def check_generalized_so(model: StochasticModel, selector="mutual") -> CheckReport:
    """Screening with a pluggable conditioning region per region pair.

    `selector` is one of the built-in names — "mutual", "joint", "bell"
    (the past of the first region minus the region itself), "all" (every
    region that contains the mutual past and avoids both futures) — or a
    callable (site, region_a, region_b) -> region.  Every selected region
    is validated against those two constraints.
    """
    site = model.site
    if isinstance(selector, str):
        if selector not in _SELECTOR_NAMES:
            raise SelectorError(
                f"selector error: unknown selector {selector!r}; "
                f"expected one of {', '.join(_SELECTOR_NAMES)}"
            )
        label = selector
    else:
        label = getattr(selector, "__name__", "custom")
    condition = f"gen-so[{label}]"

    pairs = 0
    pasts = 0
    checked = 0
    skipped = 0
    for ra, rb in _spacelike_pairs(site):
        pairs += 1
        p1 = site.mutual_past(ra, rb)
        if selector == "mutual":
            candidates = [p1]
        elif selector == "joint":
            candidates = [site.joint_past(ra, rb)]
        elif selector == "bell":
            candidates = [site.past(ra) & ~ra]
        elif selector == "all":
            free = site.full_mask & ~(site.future(ra) | site.future(rb)) & ~p1
            candidates = [p1 | extra for extra in submasks(free)]
        else:
            candidates = [site.check_region(selector(site, ra, rb))]
        if selector != "all":
            for past in candidates:
                _admissible_or_raise(site, past, ra, rb)
        for past in candidates:
            pasts += 1
            fail, c, s = _factorization_failure(model, (ra, rb), past)
            checked += c
            skipped += s
            if fail is not None:
                note = (
                    "conditional product rule fails for this atom pair given C "
                    f"(selector {label})"
                )
                cx = _conditional_counterexample(model, (ra, rb), ("A", "B"), past, fail, note)
                stats = {
                    "selector": label,
                    "region_pairs": pairs,
                    "conditioning_regions": pasts,
                    "atom_checks": checked,
                    "null_conditions_skipped": skipped,
                }
                return CheckReport(condition, VIOLATED, counterexample=cx, stats=stats)
    stats = {
        "selector": label,
        "region_pairs": pairs,
        "conditioning_regions": pasts,
        "atom_checks": checked,
        "null_conditions_skipped": skipped,
    }
    if pairs == 0:
        return CheckReport(
            condition,
            VACUOUS,
            reason="no spacelike pairs of disjoint nonempty regions",
            stats=stats,
        )
    return CheckReport(condition, HOLDS, stats=stats)


@lru_cache(maxsize=None)
def _spacelike_tuples(site: CausalSite, n: int) -> tuple[tuple[int, ...], ...]:
    """All ascending n-tuples of pairwise-disjoint pairwise-spacelike regions."""
    full = site.full_mask
    out: list[tuple[int, ...]] = []

    def extend(start: int, chosen: tuple[int, ...], used: int) -> None:
        for r in range(start, full + 1):
            if r & used:
                continue
            if not all(site.spacelike(r, c) for c in chosen):
                continue
            grown = chosen + (r,)
            if len(grown) == n:
                out.append(grown)
            else:
                extend(r + 1, grown, used | r)

    extend(1, (), 0)
    return tuple(out)


def check_multi_so(model: StochasticModel, n: int) -> CheckReport:
    """Joint conditional factorization for n-tuples of spacelike regions.

    For every n-tuple of pairwise-spacelike disjoint regions and every tuple
    of atoms, the joint conditional measure must equal the product of the
    atom conditionals, given any positive-measure full specification of the
    tuple's joint past.  The factorization is checked directly, so no
    pairwise-correlation precondition is needed.
    """
    if n < 2:
        raise ValueError("check_multi_so requires n >= 2")
    site = model.site
    condition = f"multi-so[n={n}]"
    names = tuple(f"A{i + 1}" for i in range(n))
    tuples = 0
    checked = 0
    skipped = 0
    for regions in _spacelike_tuples(site, n):
        tuples += 1
        past = site.multi_joint_past(list(regions))
        fail, c, s = _factorization_failure(model, regions, past)
        checked += c
        skipped += s
        if fail is not None:
            note = "joint conditional factorization fails for this atom tuple given C"
            cx = _conditional_counterexample(model, regions, names, past, fail, note)
            stats = {
                "n": n,
                "region_tuples": tuples,
                "atom_checks": checked,
                "null_conditions_skipped": skipped,
            }
            return CheckReport(condition, VIOLATED, counterexample=cx, stats=stats)
    stats = {
        "n": n,
        "region_tuples": tuples,
        "atom_checks": checked,
        "null_conditions_skipped": skipped,
    }
    if tuples == 0:
        return CheckReport(
            condition,
            VACUOUS,
            reason=f"no {n}-tuples of pairwise-spacelike disjoint regions",
            stats=stats,
        )
    return CheckReport(condition, HOLDS, stats=stats)


# --- weak relativistic causality ---------------------------------------------


def check_wrc(model: StochasticModel, conditioned: bool = False) -> CheckReport:
    """Every correlated spacelike atom pair has a common correlate in the mutual past.

    With ``conditioned=True`` the same must hold for correlations measured
    relative to every positive-measure conditioning event decidable in the
    mutual past (the strengthening that survives Simpson-style reversals).
    """
    site = model.site
    condition = "wrc-cond" if conditioned else "wrc"
    pairs = 0
    conditioning_events = 0
    correlated_pairs = 0
    for ra, rb in _spacelike_pairs(site):
        pairs += 1
        past = site.mutual_past(ra, rb)
        (n_past, na, nb), table = _cell_weights(model, (past, ra, rb))
        if n_past > _PAST_CELL_LIMIT:
            raise ValueError(
                f"common-correlate search needs 2^{n_past} candidate events for the "
                f"mutual past of ({site.region_ids(ra)}, {site.region_ids(rb)}); "
                f"model too large (limit 2^{_PAST_CELL_LIMIT})"
            )
        block = na * nb
        # Per-past-cell marginals, then cumulative sums over sets of past cells:
        # every event decidable in the mutual past is a union of its cells.
        n_masks = 1 << n_past
        w_c = [0] * n_masks
        wa_c = [[0] * na for _ in range(n_masks)]
        wb_c = [[0] * nb for _ in range(n_masks)]
        wab_c = [[0] * block for _ in range(n_masks)]
        for cm in range(1, n_masks):
            low = cm & -cm
            p = low.bit_length() - 1
            rest = cm ^ low
            base = p * block
            wa_row = wa_c[cm]
            wb_row = wb_c[cm]
            wab_row = wab_c[cm]
            wa_prev = wa_c[rest]
            wb_prev = wb_c[rest]
            wab_prev = wab_c[rest]
            total = 0
            for a in range(na):
                row = base + a * nb
                for b in range(nb):
                    w = table[row + b]
                    flat = a * nb + b
                    wab_row[flat] = wab_prev[flat] + w
                    total += w
                    wa_row[a] += w
                    wb_row[b] += w
            for a in range(na):
                wa_row[a] += wa_prev[a]
            for b in range(nb):
                wb_row[b] += wb_prev[b]
            w_c[cm] = w_c[rest] + total
        full_cm = n_masks - 1
        if conditioned:
            cond_masks = [cm for cm in range(1, n_masks) if w_c[cm] > 0]
        else:
            cond_masks = [full_cm] if w_c[full_cm] > 0 else []
        for cm_e in cond_masks:
            conditioning_events += 1
            we = w_c[cm_e]
            for a in range(na):
                wae = wa_c[cm_e][a]
                for b in range(nb):
                    wbe = wb_c[cm_e][b]
                    wabe = wab_c[cm_e][a * nb + b]
                    if wabe * we == wae * wbe:
                        continue
                    correlated_pairs += 1
                    found = False
                    for cm_c in range(1, n_masks):
                        cme = cm_c & cm_e
                        wce = w_c[cme]
                        wace = wa_c[cme][a]
                        if wace * we == wae * wce:
                            continue
                        wbce = wb_c[cme][b]
                        if wbce * we == wbe * wce:
                            continue
                        found = True
                        break
                    if not found:
                        cells = full_specifications(site, past)
                        e_mask = 0
                        for p in iter_bits(cm_e):
                            e_mask |= cells[p]
                        atom_a = full_specifications(site, ra)[a]
                        atom_b = full_specifications(site, rb)[b]
                        cx = Counterexample(
                            regions=(
                                ("A", site.region_ids(ra)),
                                ("B", site.region_ids(rb)),
                                ("past", site.region_ids(past)),
                            ),
                            events=(
                                ("A", event_ref(site, atom_a, ra, a)),
                                ("B", event_ref(site, atom_b, rb, b)),
                                ("E", event_ref(site, e_mask)),
                            ),
                            values=(
                                ("mu(E)", format_rational(Fraction(we, model._den))),
                                ("mu(A&B|E)", format_rational(Fraction(wabe, we))),
                                ("mu(A|E)", format_rational(Fraction(wae, we))),
                                ("mu(B|E)", format_rational(Fraction(wbe, we))),
                                (
                                    "product",
                                    format_rational(Fraction(wae * wbe, we * we)),
                                ),
                            ),
                            note=(
                                "correlated atom pair with no common correlate "
                                f"decidable in the mutual past ({n_masks - 1} "
                                "candidate events searched)"
                            ),
                        )
                        stats = {
                            "region_pairs": pairs,
                            "conditioning_events": conditioning_events,
                            "correlated_atom_pairs": correlated_pairs,
                        }
                        return CheckReport(condition, VIOLATED, counterexample=cx, stats=stats)
    stats = {
        "region_pairs": pairs,
        "conditioning_events": conditioning_events,
        "correlated_atom_pairs": correlated_pairs,
    }
    if pairs == 0:
        return CheckReport(
            condition,
            VACUOUS,
            reason="no spacelike pairs of disjoint nonempty regions",
            stats=stats,
        )
    return CheckReport(condition, HOLDS, stats=stats)


# --- common-cause searches over explicit event pairs -------------------------


def _gray_event_sums(model: StochasticModel, parts: tuple[int, ...]):
    """Yield (mask, sums) for every nonempty event mask, one bit-flip at a time.

    ``sums[i]`` tracks the scaled weight of ``mask & parts[i]``.  The yielded
    list is reused between steps; callers must copy anything they keep.
    """
    n = n_histories(model.site)
    nums = model._nums
    touches = []
    for h in range(n):
        touches.append(tuple(i for i, p in enumerate(parts) if (p >> h) & 1))
    sums = [0] * len(parts)
    cur = 0
    for g in range(1, 1 << n):
        h = (g & -g).bit_length() - 1
        bit = 1 << h
        cur ^= bit
        w = nums[h]
        if w:
            if cur & bit:
                for i in touches[h]:
                    sums[i] += w
            else:
                for i in touches[h]:
                    sums[i] -= w
        yield cur, sums


@lru_cache(maxsize=None)
def _past_region_cells(site: CausalSite) -> tuple[int, ...]:
    """Full-specification cells of every past-closed region, deduplicated."""
    seen: dict[int, None] = {}
    for r in sorted(site.past_sets()):
        for cell in full_specifications(site, r):
            seen.setdefault(cell, None)
    return tuple(seen)


def _event_pair_vacuous(model: StochasticModel, condition: str, a: int, b: int, positive: bool):
    """Shared precondition screen for the explicit-pair checks; None if satisfied."""
    site = model.site
    da, db = dom(site, a), dom(site, b)
    if not site.spacelike(da, db):
        return CheckReport(
            condition,
            VACUOUS,
            reason="event domains are not spacelike",
            stats={"dom_a": site.region_ids(da), "dom_b": site.region_ids(db)},
        )
    wa, wb, wab = model._w(a), model._w(b), model._w(a & b)
    if positive:
        if not wab * model._den > wa * wb:
            return CheckReport(
                condition,
                VACUOUS,
                reason="events are not positively correlated",
                stats={
                    "mu(A)": format_rational(Fraction(wa, model._den)),
                    "mu(B)": format_rational(Fraction(wb, model._den)),
                    "mu(A&B)": format_rational(Fraction(wab, model._den)),
                },
            )
    elif wab * model._den == wa * wb:
        return CheckReport(
            condition,
            VACUOUS,
            reason="events are not correlated",
            stats={
                "mu(A)": format_rational(Fraction(wa, model._den)),
                "mu(B)": format_rational(Fraction(wb, model._den)),
                "mu(A&B)": format_rational(Fraction(wab, model._den)),
            },
        )
    return None


def _no_witness_counterexample(model: StochasticModel, a: int, b: int, note: str) -> Counterexample:
    site = model.site
    L = model._den
    return Counterexample(
        regions=(
            ("A", site.region_ids(dom(site, a))),
            ("B", site.region_ids(dom(site, b))),
        ),
        events=(("A", event_ref(site, a)), ("B", event_ref(site, b))),
        values=(
            ("mu(A)", format_rational(Fraction(model._w(a), L))),
            ("mu(B)", format_rational(Fraction(model._w(b), L))),
            ("mu(A&B)", format_rational(Fraction(model._w(a & b), L))),
            (
                "product",
                format_rational(Fraction(model._w(a) * model._w(b), L * L)),
            ),
        ),
        note=note,
    )


def _screening_like_check(
    model: StochasticModel,
    condition: str,
    a: int,
    b: int,
    exhaustive_limit: int,
    want_inequalities: bool,
) -> CheckReport:
    """Shared engine for the single-event common-cause checks.

    A witness C must have measure strictly between 0 and 1 and screen the pair
    under both C and its complement; with ``want_inequalities`` it must also
    strictly raise the conditional measure of each event (the "cause" reading).
    """
    site = model.site
    vac = _event_pair_vacuous(model, condition, a, b, positive=want_inequalities)
    if vac is not None:
        return vac
    L = model._den
    wa, wb, wab = model._w(a), model._w(b), model._w(a & b)

    def satisfies(wc: int, wac: int, wbc: int, wabc: int) -> bool:
        if wc == 0 or wc == L:
            return False
        if wabc * wc != wac * wbc:
            return False
        wcc = L - wc
        wacc = wa - wac
        wbcc = wb - wbc
        if (wab - wabc) * wcc != wacc * wbcc:
            return False
        if want_inequalities:
            if wac * wcc <= wacc * wc:
                return False
            if wbc * wcc <= wbcc * wc:
                return False
        return True

    examined = 0
    if n_histories(site) <= exhaustive_limit:
        mode = "exhaustive"
        for mask, sums in _gray_event_sums(model, (omega(site), a, b, a & b)):
            examined += 1
            if satisfies(*sums):
                stats = {
                    "mode": mode,
                    "candidates_examined": examined,
                    "witness": event_ref(site, mask).to_json(),
                }
                return CheckReport(condition, HOLDS, stats=stats)
    else:
        mode = "past-region-cells"
        for mask in _past_region_cells(site):
            examined += 1
            if satisfies(model._w(mask), model._w(a & mask), model._w(b & mask), model._w(a & b & mask)):
                stats = {
                    "mode": mode,
                    "candidates_examined": examined,
                    "witness": event_ref(site, mask).to_json(),
                }
                return CheckReport(condition, HOLDS, stats=stats)
    wanted = "screening and likelihood-raising conditions" if want_inequalities else "two-sided screening condition"
    cx = _no_witness_counterexample(
        model, a, b, f"no candidate event satisfies the {wanted} ({mode} search, {examined} examined)"
    )
    return CheckReport(
        condition,
        VIOLATED,
        counterexample=cx,
        stats={"mode": mode, "candidates_examined": examined},
    )


def check_pcc_original(
    model: StochasticModel, a: int, b: int, exhaustive_limit: int = EXHAUSTIVE_EVENT_LIMIT
) -> CheckReport:
    """The historical common-cause demand for positively correlated spacelike events.

    Seeks one event that screens the pair off on both sides of its complement
    and makes each event strictly more likely than its complement does.
    """
    return _screening_like_check(
        model, "pcc-original", a, b, exhaustive_limit, want_inequalities=True
    )


def check_pcc_rev1(
    model: StochasticModel, a: int, b: int, exhaustive_limit: int = EXHAUSTIVE_EVENT_LIMIT
) -> CheckReport:
    """First weakening: two-sided screening only, any correlation sign."""
    return _screening_like_check(
        model, "pcc-rev1", a, b, exhaustive_limit, want_inequalities=False
    )


def _iter_set_partitions(n: int, max_cells: int):
    """All set partitions of {0..n-1} with at most max_cells cells, as cell masks.

    Enumerated by restricted growth strings, lexicographically.
    """
    assign = [0] * n

    def rec(i: int, used: int):
        if i == n:
            cells = [0] * used
            for h, c in enumerate(assign):
                cells[c] |= 1 << h
            yield tuple(cells)
            return
        for c in range(min(used + 1, max_cells)):
            assign[i] = c
            yield from rec(i + 1, used + (1 if c == used else 0))

    if n:
        yield from rec(0, 0)


def check_pcc_rev2(
    model: StochasticModel, a: int, b: int, max_partition_size: int | None = None
) -> CheckReport:
    """Second weakening: some whole partition of the history space screens.

    Every positive-measure cell of the witness partition must screen the pair.
    Set partitions are enumerated outright for history spaces of at most
    8 points; larger spaces fall back to the partitions induced by regions
    (cells = full specifications), and the report names the mode used.
    """
    condition = "pcc-rev2"
    site = model.site
    vac = _event_pair_vacuous(model, condition, a, b, positive=False)
    if vac is not None:
        return vac
    L = model._den

    def screens(cells) -> bool:
        for cell in cells:
            wc = model._w(cell)
            if wc == 0:
                continue
            if model._w(a & b & cell) * wc != model._w(a & cell) * model._w(b & cell):
                return False
        return True

    n = n_histories(site)
    examined = 0
    if n <= SET_PARTITION_LIMIT:
        mode = "set-partitions"
        cap = max_partition_size if max_partition_size is not None else n
        for cells in _iter_set_partitions(n, cap):
            examined += 1
            if screens(cells):
                stats = {
                    "mode": mode,
                    "partitions_examined": examined,
                    "witness_partition": [event_ref(site, c).to_json() for c in cells],
                }
                return CheckReport(condition, HOLDS, stats=stats)
    else:
        mode = "region-partitions"
        seen = set()
        for r in site.regions():
            cells = full_specifications(site, r)
            if max_partition_size is not None and len(cells) > max_partition_size:
                continue
            key = frozenset(cells)
            if key in seen:
                continue
            seen.add(key)
            examined += 1
            if screens(cells):
                stats = {
                    "mode": mode,
                    "partitions_examined": examined,
                    "witness_partition": [
                        event_ref(site, c, r, i).to_json() for i, c in enumerate(cells)
                    ],
                }
                return CheckReport(condition, HOLDS, stats=stats)
    cx = _no_witness_counterexample(
        model,
        a,
        b,
        f"no partition screens the pair in every positive-measure cell "
        f"({mode} search, {examined} examined)",
    )
    return CheckReport(
        condition,
        VIOLATED,
        counterexample=cx,
        stats={"mode": mode, "partitions_examined": examined},
    )


def find_screening_events(
    model: StochasticModel, a: int, b: int, exhaustive_limit: int = EXHAUSTIVE_EVENT_LIMIT
) -> list[int]:
    """All events of measure strictly between 0 and 1 that screen the pair off.

    The pair must be correlated; the search is exhaustive over every event
    when the history space has at most `exhaustive_limit` points, otherwise
    it is restricted to full-specification cells of past-closed regions.
    """
    if not correlated(model, a, b):
        raise PreconditionError(
            "precondition error: the events are not correlated; "
            "screening events are sought for correlated pairs"
        )
    return _collect_conditioners(model, a, b, exhaustive_limit, simpson=False)


def find_simpson_events(
    model: StochasticModel, a: int, b: int, exhaustive_limit: int = EXHAUSTIVE_EVENT_LIMIT
) -> list[int]:
    """All events that break the independence of an uncorrelated pair."""
    if correlated(model, a, b):
        raise PreconditionError(
            "precondition error: the events are correlated; "
            "independence-breaking events are sought for uncorrelated pairs"
        )
    return _collect_conditioners(model, a, b, exhaustive_limit, simpson=True)


def _collect_conditioners(
    model: StochasticModel, a: int, b: int, exhaustive_limit: int, simpson: bool
) -> list[int]:
    site = model.site
    L = model._den
    out = []
    if n_histories(site) <= exhaustive_limit:
        for mask, sums in _gray_event_sums(model, (omega(site), a, b, a & b)):
            wc, wac, wbc, wabc = sums
            if wc == 0 or wc == L:
                continue
            if (wabc * wc != wac * wbc) == simpson:
                out.append(mask)
    else:
        for mask in _past_region_cells(site):
            wc = model._w(mask)
            if wc == 0 or wc == L:
                continue
            screens = model._w(a & b & mask) * wc == model._w(a & mask) * model._w(b & mask)
            if screens != simpson:
                out.append(mask)
    out.sort()
    return out


# --- conjecture probe: dissections of the joint past -------------------------


def check_penrose_percival(model: StochasticModel) -> CheckReport:
    """Screening over every dissection of the joint past of each spacelike pair.

    This condition is strictly stronger than conditioning on the mutual past
    and is probed, not asserted: the report carries the plain mutual-past
    verdict alongside, so the two can be compared.
    """
    site = model.site
    so1 = check_so1(model)
    condition = "penrose-percival"
    pairs = 0
    dissections = 0
    checked = 0
    skipped = 0
    for ra, rb in _spacelike_pairs(site):
        pairs += 1
        for pd, _sides in site.enumerate_dissections(ra, rb):
            dissections += 1
            fail, c, s = _factorization_failure(model, (ra, rb), pd)
            checked += c
            skipped += s
            if fail is not None:
                note = (
                    "conjecture probe: conditioning on a full specification of a "
                    "dissection of the joint past fails to screen this atom pair"
                )
                cx = _conditional_counterexample(model, (ra, rb), ("A", "B"), pd, fail, note)
                stats = {
                    "region_pairs": pairs,
                    "dissections": dissections,
                    "atom_checks": checked,
                    "null_conditions_skipped": skipped,
                    "so1_verdict": so1.verdict,
                }
                return CheckReport(condition, VIOLATED, counterexample=cx, stats=stats)
    stats = {
        "region_pairs": pairs,
        "dissections": dissections,
        "atom_checks": checked,
        "null_conditions_skipped": skipped,
        "so1_verdict": so1.verdict,
    }
    if pairs == 0:
        return CheckReport(
            condition,
            VACUOUS,
            reason="no spacelike pairs of disjoint nonempty regions",
            stats=stats,
        )
    return CheckReport(condition, HOLDS, stats=stats)


# --- deterministic Einstein-local dynamics -----------------------------------


def deterministic_local_model(model_site: CausalSite, initial_dists, rules) -> StochasticModel:
    """Measure of a deterministic dynamics driven by independent initial choices.

    `initial_dists` maps each initial element id to its value distribution;
    every other element's value is `rules[id](past_config)` where
    `past_config` maps the ids strictly below that element to their values.
    Histories breaking a rule get weight zero; the rest carry the product of
    their initial-value weights.
    """
    site = model_site
    init = site.initial_elements()
    dists = {}
    for e in iter_bits(init):
        sid = site.elements[e]
        d = [Fraction(x) for x in initial_dists[sid]]
        if len(d) != site.alphabets[e]:
            raise MeasureError(
                f"measure error: initial distribution for {sid!r} has {len(d)} "
                f"entries; alphabet size is {site.alphabets[e]}"
            )
        dists[e] = d
    weights = []
    for h in range(n_histories(site)):
        digs = history_digits(site, h)
        w = Fraction(1)
        for e in range(site.n):
            bit = 1 << e
            if init & bit:
                w *= dists[e][digs[e]]
            else:
                past_config = {
                    site.elements[x]: digs[x] for x in iter_bits(site.past(bit) & ~bit)
                }
                value = rules[site.elements[e]](past_config)
                if not 0 <= value < site.alphabets[e]:
                    raise MeasureError(
                        f"measure error: rule for {site.elements[e]!r} returned "
                        f"{value!r}, outside its alphabet"
                    )
                if value != digs[e]:
                    w = Fraction(0)
                    break
        weights.append(w)
    return StochasticModel(site, weights)


def deterministic_local_satisfies_so1(
    seed: int, count: int, n_sites: int = 4, max_alphabet: int = 2
) -> CheckReport:
    """Generate deterministic locally-driven models and check each against so1."""
    from .corpus import random_deterministic_local

    condition = "deterministic-local-so1"
    for i in range(count):
        model = random_deterministic_local(seed + i, n_sites=n_sites, max_alphabet=max_alphabet)
        report = check_so1(model)
        if report.violated:
            cx = replace(
                report.counterexample,
                note=report.counterexample.note + f" (model generated from seed {seed + i})",
            )
            return CheckReport(
                condition,
                VIOLATED,
                counterexample=cx,
                stats={"models": count, "failed_at": i, "seed": seed},
            )
    return CheckReport(condition, HOLDS, stats={"models": count, "seed": seed})
