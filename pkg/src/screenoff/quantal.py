"""Decoherence matrices, quantal measures, and the quantal screening checks.

The interference data of a process is a Hermitian, positive, normalized
matrix over history pairs.  Screening is phrased on pseudo-events — ordered
products of plain events — whose complex-valued measure is read straight off
the matrix.  As in the classical module, every equation is tested in
cross-multiplied product form over a common denominator, so the checks never
divide and never round.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .events import (
    config_indices,
    dom,
    event_ref,
    full_specifications,
    n_configs,
    n_histories,
    omega,
)
from .order import CausalSite, iter_bits
from .report import (
    HOLDS,
    VACUOUS,
    VIOLATED,
    CheckReport,
    Counterexample,
    EventRef,
    InternalCheckError,
    format_complex,
)
from .stochastic import StochasticModel, _spacelike_pairs, check_so1

# |Omega| bound up to which positivity is checked by exhausting all events.
POSITIVITY_ENUMERATION_LIMIT = 16


class QuantalError(ValueError):
    """Raised for malformed or uncertifiable interference matrices."""


@dataclass(frozen=True)
class ComplexFraction:
    """A complex number with exact rational real and imaginary parts."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    @staticmethod
    def of(value) -> "ComplexFraction":
        if isinstance(value, ComplexFraction):
            return value
        if isinstance(value, tuple):
            re, im = value
            return ComplexFraction(Fraction(re), Fraction(im))
        return ComplexFraction(Fraction(value), Fraction(0))

    def __add__(self, other) -> "ComplexFraction":
        o = ComplexFraction.of(other)
        return ComplexFraction(self.re + o.re, self.im + o.im)

    def __sub__(self, other) -> "ComplexFraction":
        o = ComplexFraction.of(other)
        return ComplexFraction(self.re - o.re, self.im - o.im)

    def __mul__(self, other) -> "ComplexFraction":
        o = ComplexFraction.of(other)
        return ComplexFraction(
            self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re
        )

    __radd__ = __add__
    __rmul__ = __mul__

    def __truediv__(self, other) -> "ComplexFraction":
        o = ComplexFraction.of(other)
        norm = o.re * o.re + o.im * o.im
        if norm == 0:
            raise ZeroDivisionError("complex division by zero")
        return ComplexFraction(
            (self.re * o.re + self.im * o.im) / norm,
            (self.im * o.re - self.re * o.im) / norm,
        )

    def conjugate(self) -> "ComplexFraction":
        return ComplexFraction(self.re, -self.im)

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def __str__(self) -> str:
        return format_complex(self.re, self.im)


CF_ZERO = ComplexFraction()
CF_ONE = ComplexFraction(Fraction(1), Fraction(0))


@dataclass(frozen=True)
class PseudoEvent:
    """An ordered product of two plain events — a rectangle in Omega x Omega."""

    left: int
    right: int

    def __and__(self, other: "PseudoEvent") -> "PseudoEvent":
        return PseudoEvent(self.left & other.left, self.right & other.right)


class QuantalModel:
    """An interference matrix over the histories of a causal site.

    ``entries[h][g]`` is the complex weight attached to the ordered history
    pair (h, g).  An optional ``positivity_witness`` — a sequence of
    (weight, amplitude-vector) pairs whose weighted outer products sum to
    the matrix — certifies positivity without enumeration.
    """

    __slots__ = ("site", "entries", "positivity_witness", "_den", "_ints", "_validation")

    def __init__(self, site: CausalSite, entries, positivity_witness=None) -> None:
        n = n_histories(site)
        rows = tuple(tuple(ComplexFraction.of(x) for x in row) for row in entries)
        if len(rows) != n or any(len(row) != n for row in rows):
            shape = f"{len(rows)}x{len(rows[0]) if rows else 0}"
            raise QuantalError(
                f"quantal error: dimension mismatch: matrix is {shape} "
                f"for a history space of size {n}"
            )
        self.site = site
        self.entries = rows
        if positivity_witness is not None:
            positivity_witness = tuple(
                (Fraction(w), tuple(ComplexFraction.of(a) for a in vec))
                for w, vec in positivity_witness
            )
        self.positivity_witness = positivity_witness
        den = 1
        for row in rows:
            for x in row:
                den = lcm(den, x.re.denominator, x.im.denominator)
        self._den = den
        self._ints = tuple(
            tuple((int(x.re * den), int(x.im * den)) for x in row) for row in rows
        )
        self._validation = None

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, QuantalModel):
            return NotImplemented
        return self.site == other.site and self.entries == other.entries

    def __hash__(self) -> int:
        return hash((self.site, self.entries))

    def __repr__(self) -> str:
        return f"QuantalModel(site={self.site!r}, n_histories={len(self.entries)})"

    # -- measures ----------------------------------------------------------

    def d_value(self, left: int, right: int) -> ComplexFraction:
        """The matrix summed over an ordered pair of events."""
        total = CF_ZERO
        for h in iter_bits(left):
            row = self.entries[h]
            for g in iter_bits(right):
                total = total + row[g]
        return total

    def mu_hat(self, p: PseudoEvent) -> ComplexFraction:
        """The complex measure of a pseudo-event."""
        return self.d_value(p.left, p.right)

    def mu_q(self, a: int) -> Fraction:
        """The real quantal measure of a plain event."""
        self._require_valid()
        v = self.d_value(a, a)
        if v.im != 0:
            raise InternalCheckError("internal error: diagonal value not real on a valid model")
        return v.re

    # -- validation --------------------------------------------------------

    def _require_valid(self) -> None:
        report = validate_quantal(self)
        if not report.holds:
            raise QuantalError(f"quantal error: invalid model: {report.counterexample.note}")

    def _validate(self) -> CheckReport:
        condition = "quantal-axioms"
        n = len(self.entries)
        for h in range(n):
            for g in range(h, n):
                if self.entries[h][g] != self.entries[g][h].conjugate():
                    cx = Counterexample(
                        values=(
                            ("axiom", "hermiticity"),
                            ("entry", f"({h}, {g})"),
                            (f"D[{h}][{g}]", str(self.entries[h][g])),
                            (f"conj(D[{g}][{h}])", str(self.entries[g][h].conjugate())),
                        ),
                        note=f"hermiticity fails at history pair ({h}, {g})",
                    )
                    return CheckReport(condition, VIOLATED, counterexample=cx)
        total = self.d_value(omega(self.site), omega(self.site))
        if total != CF_ONE:
            cx = Counterexample(
                values=(("axiom", "normalization"), ("total", str(total))),
                note=f"matrix sums to {total}, not 1",
            )
            return CheckReport(condition, VIOLATED, counterexample=cx)
        bad = self._positivity_failure()
        if bad is not None:
            event, value = bad
            cx = Counterexample(
                events=(("A", event_ref(self.site, event)),),
                values=(("axiom", "positivity"), ("mu_q(A)", str(value))),
                note=f"event {event:#x} has negative measure {value}",
            )
            return CheckReport(condition, VIOLATED, counterexample=cx, stats={"positivity": "enumerated"})
        mode = "witness" if self.positivity_witness is not None else "enumerated"
        return CheckReport(condition, HOLDS, stats={"positivity": mode})

    def _positivity_failure(self):
        """None if every event has nonnegative measure, else (event, value)."""
        if self.positivity_witness is not None:
            self._check_witness()
            return None
        n = len(self.entries)
        if all(
            not self.entries[h][g] for h in range(n) for g in range(n) if h != g
        ):
            # fully decohered: additivity reduces every event to its singletons
            for h in range(n):
                if self.entries[h][h].re < 0:
                    return 1 << h, self.entries[h][h].re
            return None
        if n > POSITIVITY_ENUMERATION_LIMIT:
            raise QuantalError(
                f"quantal error: positivity is uncertifiable: {n} histories exceed "
                f"the enumeration limit ({POSITIVITY_ENUMERATION_LIMIT}) and no "
                "positivity witness was given"
            )
        ints = self._ints
        # incremental double sum over one-bit-flip subset steps
        col = [(0, 0)] * n
        s_re = 0
        s_im = 0
        cur = 0
        for g in range(1, 1 << n):
            h = (g & -g).bit_length() - 1
            bit = 1 << h
            d_re, d_im = ints[h][h]
            if cur & bit:  # removing h
                cur ^= bit
                for x in range(n):
                    cr, ci = col[x]
                    er, ei = ints[h][x]
                    col[x] = (cr - er, ci - ei)
                s_re -= d_re + 2 * col[h][0]
                s_im -= d_im
            else:  # adding h
                cur ^= bit
                s_re += d_re + 2 * col[h][0]
                s_im += d_im
                for x in range(n):
                    cr, ci = col[x]
                    er, ei = ints[h][x]
                    col[x] = (cr + er, ci + ei)
            if s_im:
                raise InternalCheckError("internal error: event measure not real")
            if s_re < 0:
                return cur, Fraction(s_re, self._den)
        return None

    def _check_witness(self) -> None:
        n = len(self.entries)
        for w, vec in self.positivity_witness:
            if w <= 0:
                raise QuantalError(f"quantal error: witness weight {w} is not positive")
            if len(vec) != n:
                raise QuantalError(
                    f"quantal error: witness vector has {len(vec)} amplitudes "
                    f"for {n} histories"
                )
        for h in range(n):
            for g in range(n):
                acc = CF_ZERO
                for w, vec in self.positivity_witness:
                    acc = acc + vec[h] * vec[g].conjugate() * w
                if acc != self.entries[h][g]:
                    raise QuantalError(
                        "quantal error: positivity witness does not reproduce "
                        f"the matrix at entry ({h}, {g}): {acc} != {self.entries[h][g]}"
                    )


def validate_quantal(q: QuantalModel) -> CheckReport:
    """Check hermiticity, normalization, and positivity; report the first failure."""
    if q._validation is None:
        q._validation = q._validate()
    return q._validation


def pdom(q: QuantalModel, p: PseudoEvent) -> int:
    """The least region deciding both components of a pseudo-event."""
    return dom(q.site, p.left) | dom(q.site, p.right)


def pseudo_full_specifications(q: QuantalModel, region: int) -> tuple[PseudoEvent, ...]:
    """All ordered products of full specifications of the region.

    These partition the space of history pairs; there are |Phi(region)|^2
    of them, enumerated with the left component outermost.
    """
    cells = full_specifications(q.site, region)
    return tuple(PseudoEvent(f, g) for f in cells for g in cells)


# -- the quantal screening conditions ----------------------------------------


def _cmul(a: tuple[int, int], b: tuple[int, int]) -> tuple[int, int]:
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def _pair_matrix(q: QuantalModel, regions: tuple[int, ...]):
    """Matrix of d-values between joint configuration cells of the regions."""
    site = q.site
    sizes = tuple(n_configs(site, r) for r in regions)
    index_maps = [config_indices(site, r) for r in regions]
    n_cells = 1
    for s in sizes:
        n_cells *= s
    n = n_histories(site)
    flat_of = [0] * n
    for h in range(n):
        flat = 0
        for ci, size in zip(index_maps, sizes):
            flat = flat * size + ci[h]
        flat_of[h] = flat
    ints = q._ints
    m = [[(0, 0)] * n_cells for _ in range(n_cells)]
    for h in range(n):
        row_cell = flat_of[h]
        mrow = m[row_cell]
        irow = ints[h]
        for g in range(n):
            u = flat_of[g]
            ar, ai = mrow[u]
            br, bi = irow[g]
            mrow[u] = (ar + br, ai + bi)
    return sizes, m


def _quantal_screening_failure(q: QuantalModel, ra: int, rb: int, past: int):
    """First pseudo-atom triple breaking the product rule, or None.

    Scans ordered pairs of conditioning cells outermost, then left/right
    atoms of the first region, then of the second — so the first failure on
    a fully decohered matrix lands on the same atoms as the classical scan.
    """
    (np_, na, nb), m = _pair_matrix(q, (past, ra, rb))
    block = na * nb
    checked = 0
    for c1 in range(np_):
        for c2 in range(np_):
            # marginal d-values with one or both event regions summed out
            base1 = c1 * block
            base2 = c2 * block
            ma_tab = [[(0, 0)] * na for _ in range(na)]
            mb_tab = [[(0, 0)] * nb for _ in range(nb)]
            mp = (0, 0)
            for f1 in range(block):
                row = m[base1 + f1]
                a1, b1 = divmod(f1, nb)
                for f2 in range(block):
                    er, ei = row[base2 + f2]
                    a2, b2 = divmod(f2, nb)
                    mp = (mp[0] + er, mp[1] + ei)
                    xr, xi = ma_tab[a1][a2]
                    ma_tab[a1][a2] = (xr + er, xi + ei)
                    xr, xi = mb_tab[b1][b2]
                    mb_tab[b1][b2] = (xr + er, xi + ei)
            for a1 in range(na):
                for a2 in range(na):
                    ma = ma_tab[a1][a2]
                    for b1 in range(nb):
                        for b2 in range(nb):
                            mb = mb_tab[b1][b2]
                            joint = m[base1 + a1 * nb + b1][base2 + a2 * nb + b2]
                            checked += 1
                            if _cmul(joint, mp) != _cmul(ma, mb):
                                return (
                                    (c1, c2, a1, a2, b1, b2),
                                    (joint, mp, ma, mb),
                                ), checked
    return None, checked


def _quantal_counterexample(
    q: QuantalModel, ra: int, rb: int, past: int, where, values
) -> Counterexample:
    site = q.site
    c1, c2, a1, a2, b1, b2 = where
    joint, mp, ma, mb = values
    den2 = Fraction(q._den) * q._den

    def fmt(v: tuple[int, int]) -> str:
        return format_complex(v[0] / Fraction(q._den), v[1] / Fraction(q._den))

    def fmt2(v: tuple[int, int]) -> str:
        return format_complex(v[0] / den2, v[1] / den2)

    lhs = _cmul(joint, mp)
    rhs = _cmul(ma, mb)
    pa = full_specifications(site, ra)
    pb = full_specifications(site, rb)
    pc = full_specifications(site, past)
    return Counterexample(
        regions=(
            ("A", site.region_ids(ra)),
            ("B", site.region_ids(rb)),
            ("past", site.region_ids(past)),
        ),
        events=(
            ("A1", event_ref(site, pa[a1], ra, a1)),
            ("A2", event_ref(site, pa[a2], ra, a2)),
            ("B1", event_ref(site, pb[b1], rb, b1)),
            ("B2", event_ref(site, pb[b2], rb, b2)),
            ("C1", event_ref(site, pc[c1], past, c1)),
            ("C2", event_ref(site, pc[c2], past, c2)),
        ),
        values=(
            ("muhat(A&B&C)", fmt(joint)),
            ("muhat(C)", fmt(mp)),
            ("muhat(A&C)", fmt(ma)),
            ("muhat(B&C)", fmt(mb)),
            ("muhat(A&B&C)*muhat(C)", fmt2(lhs)),
            ("muhat(A&C)*muhat(B&C)", fmt2(rhs)),
        ),
        note="complex product rule fails for this pseudo-atom triple",
    )


def _quantal_pairwise_check(q: QuantalModel, condition: str, past_of) -> CheckReport:
    q._require_valid()
    site = q.site
    pairs = 0
    checked = 0
    for ra, rb in _spacelike_pairs(site):
        pairs += 1
        past = past_of(ra, rb)
        failure, c = _quantal_screening_failure(q, ra, rb, past)
        checked += c
        if failure is not None:
            where, values = failure
            cx = _quantal_counterexample(q, ra, rb, past, where, values)
            stats = {"region_pairs": pairs, "equations_checked": checked}
            return CheckReport(condition, VIOLATED, counterexample=cx, stats=stats)
    stats = {"region_pairs": pairs, "equations_checked": checked}
    if pairs == 0:
        return CheckReport(
            condition,
            VACUOUS,
            reason="no spacelike pairs of disjoint nonempty regions",
            stats=stats,
        )
    return CheckReport(condition, HOLDS, stats=stats)


def check_qso1(q: QuantalModel) -> CheckReport:
    """Complex product rule over pseudo-atoms, conditioned on the mutual past.

    For every ordered pair of disjoint nonempty spacelike regions, every
    ordered product of that pair's atoms, and every pseudo-cell C of the
    mutual past: the complex measure satisfies
    muhat(A&B&C) * muhat(C) == muhat(A&C) * muhat(B&C).
    """
    site = q.site
    return _quantal_pairwise_check(q, "qso1", site.mutual_past)


def check_qso2(q: QuantalModel) -> CheckReport:
    """As check_qso1, conditioning on the joint past of the pair."""
    site = q.site
    return _quantal_pairwise_check(q, "qso2", site.joint_past)


# -- reduction to the classical check ----------------------------------------


def diagonal_reduction(q: QuantalModel) -> CheckReport:
    """On a fully decohered matrix, the quantal check must mirror the classical one.

    Builds the probability measure from the diagonal and verifies that the
    quantal and classical screening verdicts coincide — and, when both are
    violations, that they indict the same regions, atoms, and conditioning
    cell.  A nonzero off-diagonal entry is an error.
    """
    site = q.site
    n = len(q.entries)
    for h in range(n):
        for g in range(n):
            if h != g and q.entries[h][g] != CF_ZERO:
                raise QuantalError(
                    f"quantal error: off-diagonal entry at ({h}, {g}); "
                    "diagonal reduction needs a fully decohered matrix"
                )
    weights = []
    for h in range(n):
        d = q.entries[h][h]
        if d.im != 0:
            raise QuantalError(f"quantal error: diagonal entry {h} is not real")
        weights.append(d.re)
    induced = StochasticModel(site, weights)
    so = check_so1(induced)
    qso = check_qso1(q)
    stats = {"so1_verdict": so.verdict, "qso1_verdict": qso.verdict}
    condition = "diag-reduce"
    if so.verdict != qso.verdict:
        cx = Counterexample(
            values=(("so1", so.verdict), ("qso1", qso.verdict)),
            note="quantal and classical verdicts disagree on a decohered matrix",
        )
        return CheckReport(condition, VIOLATED, counterexample=cx, stats=stats)
    if so.violated:
        sc = so.counterexample
        qc = qso.counterexample
        matched = (
            sc.regions == qc.regions
            and sc.event("A").mask == qc.event("A1").mask == qc.event("A2").mask
            and sc.event("B").mask == qc.event("B1").mask == qc.event("B2").mask
            and sc.event("C").mask == qc.event("C1").mask == qc.event("C2").mask
        )
        stats["counterexamples_matched"] = matched
        if not matched:
            cx = Counterexample(
                values=(
                    ("classical A", sc.event("A").describe()),
                    ("quantal A1", qc.event("A1").describe()),
                    ("classical C", sc.event("C").describe()),
                    ("quantal C1", qc.event("C1").describe()),
                ),
                note="matching verdicts but different first counterexamples",
            )
            return CheckReport(condition, VIOLATED, counterexample=cx, stats=stats)
    return CheckReport(condition, HOLDS, stats=stats)


# -- the pseudo-event lemma toolbox, run as executable properties -------------


def verify_quantal_lemmas(q: QuantalModel, samples: int = 200, seed: int = 7) -> CheckReport:
    """Exercise the supporting lemmas behind the quantal equivalence proof.

    Three families: domains of intersections of pseudo-events with disjoint
    domains stay inside the union; pseudo-cells of a union of disjoint
    regions factor into componentwise intersections of the parts' cells;
    and the pure complex-rational identity that carries the equivalence
    argument, instantiated on random exact values satisfying its hypotheses.
    """
    site = q.site
    rng = random.Random(seed)
    n = n_histories(site)
    condition = "quantal-lemmas"

    # intersection domains stay inside the union of disjoint domains;
    # sample events decidable on disjoint regions so the hypothesis is live
    def cell_union(region: int) -> int:
        cells = full_specifications(site, region)
        return sum(c for c in cells if rng.random() < 0.5)

    pdom_checks = 0
    for _ in range(samples):
        r1 = rng.randrange(site.full_mask + 1)
        r2 = rng.randrange(site.full_mask + 1) & ~r1
        x = PseudoEvent(cell_union(r1), cell_union(r1))
        y = PseudoEvent(cell_union(r2), cell_union(r2))
        if pdom(q, x) & pdom(q, y):
            raise InternalCheckError("internal error: sampler produced overlapping domains")
        pdom_checks += 1
        inside = pdom(q, x & y)
        outside = inside & ~(pdom(q, x) | pdom(q, y))
        if outside:
            cx = Counterexample(
                events=(
                    ("X1", event_ref(site, x.left)),
                    ("X2", event_ref(site, x.right)),
                    ("Y1", event_ref(site, y.left)),
                    ("Y2", event_ref(site, y.right)),
                ),
                values=(("property", "intersection-domain"),),
                note=(
                    "domain of the intersection reaches "
                    f"{site.region_ids(outside)}, outside both factors' domains"
                ),
            )
            return CheckReport(condition, VIOLATED, counterexample=cx)

    # pseudo-cells of a disjoint union factor componentwise
    factev = 0
    full = site.full_mask
    for ra in range(1, full + 1):
        for rb in range(1, full + 1):
            if ra & rb:
                continue
            cis_a = config_indices(site, ra)
            cis_b = config_indices(site, rb)
            cells_a = full_specifications(site, ra)
            cells_b = full_specifications(site, rb)
            for f in pseudo_full_specifications(q, ra | rb):
                h1 = next(iter_bits(f.left))
                h2 = next(iter_bits(f.right))
                ga = PseudoEvent(cells_a[cis_a[h1]], cells_a[cis_a[h2]])
                gb = PseudoEvent(cells_b[cis_b[h1]], cells_b[cis_b[h2]])
                factev += 1
                if ga & gb != f:
                    cx = Counterexample(
                        events=(
                            ("F1", event_ref(site, f.left)),
                            ("F2", event_ref(site, f.right)),
                        ),
                        values=(("property", "cell-factorization"),),
                        note=(
                            f"pseudo-cell of {site.region_ids(ra | rb)} is not the "
                            "intersection of its component cells"
                        ),
                    )
                    return CheckReport(condition, VIOLATED, counterexample=cx)

    # the complex-rational identity: four product hypotheses force the fifth
    def draw() -> ComplexFraction:
        return ComplexFraction(
            Fraction(rng.randrange(-3, 4), rng.randrange(1, 4)),
            Fraction(rng.randrange(-3, 4), rng.randrange(1, 4)),
        )

    identity_checks = 0
    for _ in range(samples):
        m_p = draw()
        while not m_p:
            m_p = draw()
        m_ay = draw()
        m_bx = draw()
        m_x = draw()
        m_y = draw()
        m_abxy = m_ay * m_bx / m_p
        m_axy = m_ay * m_x / m_p
        m_bxy = m_y * m_bx / m_p
        m_xy = m_y * m_x / m_p
        identity_checks += 1
        if m_axy * m_bxy != m_abxy * m_xy:
            cx = Counterexample(
                values=(
                    ("property", "product-identity"),
                    ("base", str(m_p)),
                ),
                note="the composite product identity failed on exact values",
            )
            return CheckReport(condition, VIOLATED, counterexample=cx)

    stats = {
        "intersection_domain_samples": pdom_checks,
        "cell_factorizations": factev,
        "identity_samples": identity_checks,
    }
    return CheckReport(condition, HOLDS, stats=stats)
