"""Exact integer arithmetic on plane Cremona types.

A type (d; m_1, ..., m_r) pairs an integer degree with virtual
multiplicities attached to base points by position.  This module classifies
types against the equations of condition, doubles sub-homaloidal types,
applies arithmetic quadratic transformations, runs Hudson's properness
test, and evaluates the closed-form invariants available for 3-uniform
sub-homaloidal types.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

INT_BOUND = 2 ** 63  # inputs at or beyond this are rejected, never wrapped

PROPER = "proper"
IMPROPER = "improper"
NONTERMINATING = "nonterminating"

_MAX_ARITY = 10 ** 6


class TypeLiteralError(ValueError):
    """Malformed type literal; carries the offending character position."""

    def __init__(self, message, position):
        super().__init__(f"{message} (position {position})")
        self.position = position


def _check_int(name, value):
    if not isinstance(value, int) or isinstance(value, bool):
        raise ValueError(f"{name} must be an integer, got {value!r}")
    if abs(value) >= INT_BOUND:
        raise ValueError(f"{name} {value} exceeds the 64-bit input range")
    return value


@dataclass(frozen=True)
class MultiplicityType:
    """A degree with positional virtual multiplicities (not auto-sorted).

    Construction rejects negative multiplicities: negatives only arise as
    quadratic-transform output, which is built through a private path so the
    values stay representable without weakening input validation.
    """

    degree: int
    mults: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "mults", tuple(self.mults))
        _check_int("degree", self.degree)
        if len(self.mults) < 1:
            raise ValueError("a type needs at least one multiplicity")
        if len(self.mults) > _MAX_ARITY:
            raise ValueError(f"arity {len(self.mults)} is unreasonably large")
        for i, m in enumerate(self.mults):
            _check_int(f"multiplicity {i}", m)
            if m < 0:
                raise ValueError(
                    f"negative multiplicity {m} at position {i}; negatives only "
                    "arise inside quadratic-transform output"
                )
        if sum(m * m for m in self.mults) >= INT_BOUND:
            raise ValueError("multiplicity square sum exceeds the 64-bit range")

    @property
    def arity(self):
        return len(self.mults)

    def sorted_mults(self):
        """Multiplicities in non-increasing order, trailing zeros retained."""
        return tuple(sorted(self.mults, reverse=True))

    def sorted_type(self):
        return _raw_type(self.degree, self.sorted_mults())

    def __str__(self):
        return format_type_literal(self)


def _raw_type(degree, mults):
    # Bypasses the non-negativity check so transform output (which may
    # legitimately carry negative entries) stays representable.
    t = object.__new__(MultiplicityType)
    object.__setattr__(t, "degree", degree)
    object.__setattr__(t, "mults", tuple(mults))
    return t


def _require_nonnegative(t):
    for i, m in enumerate(t.mults):
        if m < 0:
            raise ValueError(f"negative multiplicity {m} at position {i}")


def _scan_int(text, pos, what):
    start = pos
    if pos < len(text) and text[pos] in "+-":
        pos += 1
    digits = pos
    while pos < len(text) and text[pos].isdigit():
        pos += 1
    if pos == digits:
        raise TypeLiteralError(f"expected {what}", start)
    return int(text[start:pos]), pos


def parse_type_literal(text):
    """Parse ``d;m1[^e1],m2[^e2],...`` into a MultiplicityType.

    ``^e`` repeats an entry, e.g. ``13;8,4^6,2^2``.  Entries must be
    non-negative integers.
    """
    stripped = text.strip()
    base = text.find(stripped) if stripped else 0
    if not stripped:
        raise TypeLiteralError("empty type literal", 0)
    try:
        degree, pos = _scan_int(stripped, 0, "a degree")
        if pos >= len(stripped) or stripped[pos] != ";":
            raise TypeLiteralError("expected ';' after the degree", pos)
        pos += 1
        mults = []
        while True:
            value, pos = _scan_int(stripped, pos, "a multiplicity")
            count = 1
            if pos < len(stripped) and stripped[pos] == "^":
                mark = pos
                count, pos = _scan_int(stripped, pos + 1, "a repetition count")
                if count < 1:
                    raise TypeLiteralError("repetition count must be positive", mark + 1)
            if len(mults) + count > _MAX_ARITY:
                raise TypeLiteralError("too many multiplicities", pos)
            mults.extend([value] * count)
            if pos == len(stripped):
                break
            if stripped[pos] != ",":
                raise TypeLiteralError("expected ',' between entries", pos)
            pos += 1
    except TypeLiteralError as err:
        raise TypeLiteralError(str(err).rsplit(" (position", 1)[0], base + err.position) from None
    return MultiplicityType(degree, tuple(mults))


def format_type_literal(t, canonical=True):
    """Render a type as ``d;m1[^e1],...``.

    Canonical form sorts multiplicities non-increasing; runs are compressed
    either way.  Negative entries (from transform output) print as-is.
    """
    entries = t.sorted_mults() if canonical else t.mults
    parts = []
    i = 0
    while i < len(entries):
        j = i
        while j < len(entries) and entries[j] == entries[i]:
            j += 1
        run = j - i
        parts.append(str(entries[i]) if run == 1 else f"{entries[i]}^{run}")
        i = j
    return f"{t.degree};" + ",".join(parts)


@dataclass(frozen=True)
class TypeClassification:
    is_homaloidal: bool
    subhomaloidal_degree: int | None
    noether: bool
    three_uniform: bool | None
    bordiga: bool | None


def classify(t):
    """Test a type against the equations of condition.

    Homaloidal means sum(m) = 3(d-1) and sum(m^2) = d^2 - 1 for the type's
    own degree d.  Sub-homaloidal in degree s means sum(m) = 3(s-1) and
    sum(m^2) = s(s-1); s is pinned by the first relation alone, so it is
    recovered from the multiplicities and need not equal the stored degree.
    The Noether flag compares the three highest multiplicities against the
    stored degree; 3-uniform and Bordiga flags are defined only on the
    sub-homaloidal branch.
    """
    _require_nonnegative(t)
    total = sum(t.mults)
    square = sum(m * m for m in t.mults)
    d = t.degree
    is_hom = total == 3 * (d - 1) and square == d * d - 1
    s = None
    if total % 3 == 0:
        cand = total // 3 + 1
        if square == cand * (cand - 1):
            s = cand
    m1, m2, m3 = (t.sorted_mults() + (0, 0, 0))[:3]
    three_uniform = None
    bordiga = None
    if s is not None:
        # both relations force (s-1)(s-3) even, so s is odd here
        three_uniform = m1 == m2 == m3 == (s - 1) // 2
        bordiga = 2 * (m1 + m2 + m3) == 3 * (s - 1)
    return TypeClassification(is_hom, s, m1 + m2 + m3 > d, three_uniform, bordiga)


def double(t):
    """Double a sub-homaloidal type into its homaloidal companion (2s-1; 2m)."""
    c = classify(t)
    if c.subhomaloidal_degree is None:
        total = sum(t.mults)
        if total % 3 != 0:
            raise ValueError(
                f"not sub-homaloidal: multiplicity sum {total} is not 3(s-1) for any integer s"
            )
        s = total // 3 + 1
        square = sum(m * m for m in t.mults)
        raise ValueError(
            f"not sub-homaloidal: square sum {square} differs from s(s-1) = {s * (s - 1)} for s = {s}"
        )
    s = c.subhomaloidal_degree
    return MultiplicityType(2 * s - 1, tuple(2 * m for m in t.mults))


def quad_transform(t, j, k, l):
    """Arithmetic quadratic transformation based at positions j, k, l (0-based).

    The new degree is 2d - m_j - m_k - m_l and each chosen multiplicity
    becomes d minus the other two chosen; everything else is unchanged.
    Types with fewer than three multiplicities are zero-padded first.
    Output entries may be negative.
    """
    if len({j, k, l}) != 3:
        raise ValueError(f"need three distinct positions, got {(j, k, l)}")
    mults = t.mults if t.arity >= 3 else t.mults + (0,) * (3 - t.arity)
    for idx in (j, k, l):
        if not 0 <= idx < len(mults):
            raise ValueError(f"position {idx} out of range for arity {len(mults)}")
    d = t.degree
    nj, nk, nl = mults[j], mults[k], mults[l]
    out = list(mults)
    out[j] = d - nk - nl
    out[k] = d - nj - nl
    out[l] = d - nj - nk
    return _raw_type(2 * d - nj - nk - nl, tuple(out))


@dataclass(frozen=True)
class HudsonStep:
    input_type: MultiplicityType
    chosen_indices: tuple[int, int, int]
    output_type: MultiplicityType


@dataclass(frozen=True)
class HudsonTrace:
    start: MultiplicityType
    steps: tuple[HudsonStep, ...]
    verdict: str  # PROPER | IMPROPER | NONTERMINATING
    witness_index: int | None = None  # lowest position of a negative multiplicity
    step_limit: int | None = None  # set when the verdict is NONTERMINATING

    @property
    def final(self):
        return self.steps[-1].output_type if self.steps else self.start


def hudson_test(t, step_limit=None):
    """Iterate quadratic transformations at the three highest multiplicities.

    The three positions are taken from the sorted view with ties broken by
    the lowest position.  Stops at the first negative multiplicity
    (improper, witnessing the lowest offending position), at the terminal
    type (1;0^r) (proper), or at the step limit, default 10*degree
    (nonterminating).
    """
    if not classify(t).is_homaloidal:
        raise ValueError(f"hudson_test needs a homaloidal type; {t} fails the equations of condition")
    if step_limit is None:
        step_limit = 10 * t.degree
    current = t if t.arity >= 3 else _raw_type(t.degree, t.mults + (0,) * (3 - t.arity))
    steps = []
    while True:
        negatives = [i for i, m in enumerate(current.mults) if m < 0]
        if negatives:
            return HudsonTrace(t, tuple(steps), IMPROPER, witness_index=negatives[0])
        if current.degree == 1 and all(m == 0 for m in current.mults):
            return HudsonTrace(t, tuple(steps), PROPER)
        if len(steps) >= step_limit:
            return HudsonTrace(t, tuple(steps), NONTERMINATING, step_limit=step_limit)
        order = sorted(range(current.arity), key=lambda i: (-current.mults[i], i))
        chosen = tuple(order[:3])
        after = quad_transform(current, *chosen)
        steps.append(HudsonStep(current, chosen, after))
        current = after


def expected_dim(t, deg):
    """Conditions-count lower bound max(0, C(deg+2,2) - sum C(m_i+1,2))."""
    if deg < 0:
        raise ValueError("degree must be non-negative")
    _require_nonnegative(t)
    return max(0, comb(deg + 2, 2) - sum(comb(m + 1, 2) for m in t.mults))


def scheme_degree(t):
    """Total number of conditions sum m_i(m_i+1)/2 imposed by the fat scheme."""
    _require_nonnegative(t)
    return sum(comb(m + 1, 2) for m in t.mults)


def plus_minus(t):
    """The pair of types with the first multiplicity lowered and raised by one.

    The first positional multiplicity must be a maximal one; point indexing
    is preserved.
    """
    _require_nonnegative(t)
    first = t.mults[0]
    if first != max(t.mults):
        raise ValueError("the first multiplicity must be a maximal one")
    if first < 1:
        raise ValueError("cannot lower a zero first multiplicity")
    minus = MultiplicityType(t.degree, (first - 1,) + t.mults[1:])
    plus = MultiplicityType(t.degree, (first + 1,) + t.mults[1:])
    return minus, plus


@dataclass(frozen=True)
class ResolutionPrediction:
    generator_count: int
    generator_degree: int
    syzygy_counts: dict[int, int]  # degree -> count; zero rows kept explicit
    regularity: int
    image_degree: int
    image_hilbert: tuple[Fraction, Fraction, Fraction]  # quadratic coefficients in n
    transformed_type: MultiplicityType
    transformed_indeg: int
    second_symbolic_indeg: int
    second_symbolic_dim: int

    def image_hilbert_at(self, n):
        a2, a1, a0 = self.image_hilbert
        value = a2 * n * n + a1 * n + a0
        if value.denominator != 1:
            raise ValueError(f"non-integral value at n = {n}")
        return int(value)


def predict_invariants(t):
    """Closed-form resolution data for a 3-uniform sub-homaloidal type.

    Valid only when the three highest multiplicities all equal (s-1)/2 with
    s at least 3; other regimes have no proved closed forms and are
    rejected.  For degree s the ideal has (s+5)/2 generators in degree s,
    three syzygies in degree s+1 and (s-3)/2 in degree s+2; the transformed
    type lives in degree (s+3)/2 with the three chosen multiplicities
    replaced by ones.
    """
    c = classify(t)
    if c.subhomaloidal_degree is None or not c.three_uniform:
        raise ValueError("predict_invariants needs a 3-uniform sub-homaloidal type")
    s = c.subhomaloidal_degree
    if s < 3:
        raise ValueError("no closed forms below degree 3")
    tail = t.sorted_mults()[3:]
    return ResolutionPrediction(
        generator_count=(s + 5) // 2,
        generator_degree=s,
        syzygy_counts={s + 1: 3, s + 2: (s - 3) // 2},
        # top resolution twist is s+2 unless that block is empty (s = 3)
        regularity=s + 1 if s >= 5 else s,
        image_degree=s,
        image_hilbert=(Fraction(s, 2), Fraction(3, 2), Fraction(1)),
        transformed_type=MultiplicityType((s + 3) // 2, tail + (1, 1, 1)),
        transformed_indeg=(s + 3) // 2,
        second_symbolic_indeg=s + 2,
        second_symbolic_dim=s,
    )


def dumnicki_check(t, deg):
    """Sufficiency test that the generic dimension at ``deg`` is the expected one.

    On the sorted view m_1 >= m_2 >= ..., requires deg >= m_1 + m_2 and
    C(deg+2,2) - sum C(m_i+1,2) >= (3 m_4^2 - 7 m_4 + 4) / 2.  Needs at
    least four multiplicities.
    """
    _require_nonnegative(t)
    if t.arity < 4:
        raise ValueError("the test needs at least four multiplicities")
    m = t.sorted_mults()
    if deg < m[0] + m[1]:
        return False
    virtual = comb(deg + 2, 2) - sum(comb(x + 1, 2) for x in m)
    return 2 * virtual >= 3 * m[3] * m[3] - 7 * m[3] + 4
