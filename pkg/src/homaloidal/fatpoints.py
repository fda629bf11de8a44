"""Fat point ideals instantiated at random points over a prime field.

Everything reduces to ranks of interpolation and multiplication matrices:
Hilbert values with semicontinuity certification, initial degrees,
multiplication-map ranks, generator and syzygy counts, ordinary and
symbolic power dimensions, and the quadratic substitution map between a
system and its transform.
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, combinations_with_replacement
from math import comb

import numpy as np

from .ffla import FieldConfig, FMatrix, kernel_basis, rank
from .typecalc import MultiplicityType, expected_dim

_PRODUCT_GUARD = 100_000


class CertificationError(RuntimeError):
    """An engine result could not be certified against its expected value."""


def derive_seed(seed, label):
    """Deterministic 64-bit stream seed for a labelled sub-computation."""
    digest = hashlib.sha256(f"{seed}:{label}".encode()).digest()
    return int.from_bytes(digest[:8], "big")


@lru_cache(maxsize=None)
def monomials(t):
    """Exponent triples of degree t, graded lex with x > y > z."""
    return tuple((a, b, t - a - b) for a in range(t, -1, -1) for b in range(t - a, -1, -1))


@lru_cache(maxsize=None)
def _monomial_index(t):
    return {m: i for i, m in enumerate(monomials(t))}


@dataclass(frozen=True)
class Provenance:
    seed: int | None  # None for hand-built sets, which are never resampled
    frame: bool
    attempts: int = 1


_COORDINATE_POINTS = ((1, 0, 0), (0, 1, 0), (0, 0, 1))


def _canonical_point(pt, p):
    coords = tuple(int(c) % p for c in pt)
    if len(coords) != 3:
        raise ValueError(f"a projective point needs three coordinates, got {pt!r}")
    if coords == (0, 0, 0):
        raise ValueError("a projective point cannot be (0,0,0)")
    last = next(c for c in reversed(coords) if c != 0)
    inv = pow(last, p - 2, p)
    return tuple(c * inv % p for c in coords)


def _det3(a, b, c, p):
    return (
        a[0] * (b[1] * c[2] - b[2] * c[1])
        - a[1] * (b[0] * c[2] - b[2] * c[0])
        + a[2] * (b[0] * c[1] - b[1] * c[0])
    ) % p


@dataclass(frozen=True, eq=False)
class PointSet:
    """Projectively distinct points, no three collinear, canonical residues."""

    points: tuple[tuple[int, int, int], ...]
    field: FieldConfig
    provenance: Provenance

    def __post_init__(self):
        p = self.field.modulus
        pts = tuple(_canonical_point(pt, p) for pt in self.points)
        object.__setattr__(self, "points", pts)
        if len(set(pts)) != len(pts):
            raise ValueError("points must be projectively distinct")
        for i, j, k in combinations(range(len(pts)), 3):
            if _det3(pts[i], pts[j], pts[k], p) == 0:
                raise ValueError(f"points {i}, {j}, {k} are collinear")
        if self.provenance.frame:
            expect = _COORDINATE_POINTS[: min(3, len(pts))]
            if pts[: len(expect)] != expect:
                raise ValueError("frame-normalized sets must start with the coordinate points")

    def __len__(self):
        return len(self.points)


def _inv3(m, p):
    a, b, c = m[0]
    d, e, f = m[1]
    g, h, i = m[2]
    det = (a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)) % p
    if det == 0:
        raise ValueError("singular frame matrix")
    x = pow(det, p - 2, p)
    return (
        ((e * i - f * h) * x % p, (c * h - b * i) * x % p, (b * f - c * e) * x % p),
        ((f * g - d * i) * x % p, (a * i - c * g) * x % p, (c * d - a * f) * x % p),
        ((d * h - e * g) * x % p, (b * g - a * h) * x % p, (a * e - b * d) * x % p),
    )


def _apply3(m, pt, p):
    return tuple(sum(m[i][j] * pt[j] for j in range(3)) % p for i in range(3))


def _to_standard_frame(ps):
    """Projective change of coordinates sending the first four points to
    the coordinate points and (1:1:1)."""
    p = ps.field.modulus
    p1, p2, p3, p4 = ps.points[:4]
    columns = tuple(tuple(pt[i] for pt in (p1, p2, p3)) for i in range(3))
    ainv = _inv3(columns, p)
    v = _apply3(ainv, p4, p)
    if 0 in v:
        raise ValueError("fourth point lies on a line through two frame points")
    mat = tuple(
        tuple(ainv[i][j] * pow(v[i], p - 2, p) % p for j in range(3)) for i in range(3)
    )
    moved = tuple(_apply3(mat, pt, p) for pt in ps.points)
    return PointSet(moved, ps.field, Provenance(ps.provenance.seed, True, ps.provenance.attempts))


def sample_points(r, field, frame=False):
    """Sample r points satisfying the PointSet invariants, deterministically.

    Points come from the affine chart z = 1; with frame=True the first three
    are moved onto the coordinate points and the fourth onto (1:1:1) by a
    projective change of coordinates.  Resamples on an invariant violation,
    up to 100 attempts.
    """
    if r < 1:
        raise ValueError("need at least one point")
    if field.modulus < 2 ** 30:
        raise ValueError("point sampling needs a modulus of at least 2^30")
    if frame and r <= 3:
        return PointSet(_COORDINATE_POINTS[:r], field, Provenance(field.seed, True, 0))
    p = field.modulus
    for attempt in range(1, 101):
        rng = random.Random(derive_seed(field.seed, f"points:{r}:{int(frame)}:{attempt}"))
        pts = tuple((rng.randrange(p), rng.randrange(p), 1) for _ in range(r))
        try:
            raw = PointSet(pts, field, Provenance(field.seed, False, attempt))
            return _to_standard_frame(raw) if frame else raw
        except ValueError:
            continue
    raise ValueError("could not sample a valid configuration in 100 attempts")


@dataclass(frozen=True, eq=False)
class FatIdealSpec:
    """A point configuration with positional multiplicities."""

    points: PointSet
    mults: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "mults", tuple(self.mults))
        if len(self.mults) != len(self.points):
            raise ValueError(
                f"{len(self.mults)} multiplicities for {len(self.points)} points"
            )
        for i, m in enumerate(self.mults):
            if not isinstance(m, int) or m < 0:
                raise ValueError(f"multiplicity at position {i} must be a non-negative integer")

    def multiplicity_type(self, degree):
        return MultiplicityType(degree, self.mults)


@dataclass(frozen=True, eq=False)
class LinearSystem:
    """A degree with a row basis of the forms of that degree in the ideal."""

    degree: int
    basis: FMatrix

    def __post_init__(self):
        if self.basis.cols != comb(self.degree + 2, 2):
            raise ValueError(
                f"basis width {self.basis.cols} does not match degree {self.degree}"
            )

    @property
    def dimension(self):
        return self.basis.rows


def _chart_vars(point):
    # differentiate in the two variables other than one with nonzero
    # coordinate, so the derivative conditions encode the multiplicity on
    # every chart (pure x,y-derivatives are not enough at points with z = 0)
    if point[2] != 0:
        return 0, 1
    if point[1] != 0:
        return 0, 2
    return 1, 2


def conditions_matrix(spec, t):
    """Interpolation matrix whose kernel is the degree-t part of the ideal.

    One row per derivative condition: at each point every partial derivative
    of order below the multiplicity vanishes.  Row count is the scheme
    degree sum C(m_i+1, 2).  Needs modulus > t and > max multiplicity so
    the falling-factorial coefficients are invertible.
    """
    if t < 0:
        raise ValueError("degree must be non-negative")
    p = spec.points.field.modulus
    top = max(spec.mults, default=0)
    if p <= t or p <= top:
        raise ValueError(
            f"modulus {p} too small for degree {t} and multiplicities up to {top}"
        )
    monos = monomials(t)
    falling = [[0] * (t + 1) for _ in range(t + 1)]
    for n in range(t + 1):
        falling[n][0] = 1
        for a in range(1, n + 1):
            falling[n][a] = falling[n][a - 1] * (n - a + 1) % p
    rows = []
    for point, mu in zip(spec.points.points, spec.mults):
        if mu == 0:
            continue
        u, v = _chart_vars(point)
        powers = [[pow(c, e, p) for e in range(t + 1)] for c in point]
        for order in range(mu):
            for a in range(order, -1, -1):
                b = order - a
                row = [0] * len(monos)
                for ci, exps in enumerate(monos):
                    if exps[u] < a or exps[v] < b:
                        continue
                    shifted = list(exps)
                    shifted[u] -= a
                    shifted[v] -= b
                    val = falling[exps[u]][a] * falling[exps[v]][b] % p
                    for coord in range(3):
                        val = val * powers[coord][shifted[coord]] % p
                    row[ci] = val
                rows.append(row)
    return FMatrix.from_rows(rows, p, cols=len(monos))


def linear_system(spec, t):
    """Basis of the degree-t part, computed as the interpolation kernel."""
    return LinearSystem(t, kernel_basis(conditions_matrix(spec, t)))


@dataclass(frozen=True)
class HilbertReport:
    degree: int
    sampled_dim: int
    expected: int
    certified: bool
    samples_used: int


def _resampled(spec, label, attempt):
    prov = spec.points.provenance
    if prov.seed is None:
        return None
    field = FieldConfig(
        spec.points.field.modulus, derive_seed(prov.seed, f"{label}:{attempt}")
    )
    pts = sample_points(len(spec.points), field, frame=prov.frame)
    return FatIdealSpec(pts, spec.mults)


def hilbert_value(spec, t, retries=5):
    """Dimension of the degree-t part with a semicontinuity certificate.

    Specialization can only raise the dimension above its generic value, so
    a sampled dimension equal to the conditions-count bound certifies the
    generic value.  Otherwise the points are resampled (when they carry a
    seed) up to ``retries`` total samples and the minimum observed dimension
    is reported uncertified.
    """
    if retries < 1:
        raise ValueError("retries must be at least 1")
    exp = expected_dim(MultiplicityType(t, spec.mults), t)
    best = linear_system(spec, t).dimension
    used = 1
    while best != exp and used < retries:
        fresh = _resampled(spec, f"hilbert:{t}", used)
        if fresh is None:
            break
        best = min(best, linear_system(fresh, t).dimension)
        used += 1
    return HilbertReport(t, best, exp, best == exp, used)


def initial_degree(spec, t_max):
    """Least degree with a nonzero form in the ideal, or None past t_max."""
    for t in range(0, t_max + 1):
        if linear_system(spec, t).dimension > 0:
            return t
    return None


@dataclass(frozen=True)
class MultMapReport:
    source_dim: int
    image_rank: int
    target_dim: int
    kernel_dim: int
    surjective: bool
    certified: bool


def _shift_by_monomials(basis, t, k):
    """Products of every degree-t basis row with every degree-k monomial."""
    src = monomials(t)
    shifts = monomials(k)
    dst = _monomial_index(t + k)
    out = np.zeros((len(shifts) * basis.rows, len(dst)), dtype=np.int64)
    for ri in range(basis.rows):
        row = basis.entries[ri]
        support = np.nonzero(row)[0]
        for si, (da, db, dc) in enumerate(shifts):
            target = out[ri * len(shifts) + si]
            for ci in support:
                a, b, c = src[ci]
                target[dst[(a + da, b + db, c + dc)]] = row[ci]
    return FMatrix(out.shape[0], out.shape[1], basis.modulus, out)


def mult_map(sys, spec, t_plus_one):
    """Rank data of multiplication by the linear forms into the next degree.

    kernel_dim = 3*source - image_rank counts the linear syzygies among the
    source basis.  Surjectivity is certified only when both endpoint
    dimensions match their conditions-count bounds: rank is lower
    semicontinuous, so full rank at a sample bounds the generic rank from
    below.
    """
    if t_plus_one != sys.degree + 1:
        raise ValueError(
            f"target degree {t_plus_one} does not follow source degree {sys.degree}"
        )
    target = linear_system(spec, t_plus_one)
    image_rank = rank(_shift_by_monomials(sys.basis, sys.degree, 1))
    kernel_dim = 3 * sys.dimension - image_rank
    surjective = image_rank == target.dimension
    src_exp = expected_dim(MultiplicityType(sys.degree, spec.mults), sys.degree)
    tgt_exp = expected_dim(MultiplicityType(t_plus_one, spec.mults), t_plus_one)
    certified = surjective and sys.dimension == src_exp and target.dimension == tgt_exp
    return MultMapReport(
        sys.dimension, image_rank, target.dimension, kernel_dim, surjective, certified
    )


def _row_poly(basis, ri, t):
    monos = monomials(t)
    row = basis.entries[ri]
    return {monos[ci]: int(row[ci]) for ci in np.nonzero(row)[0]}


def _poly_mul(f, g, p):
    out = {}
    for (a1, b1, c1), x in f.items():
        for (a2, b2, c2), y in g.items():
            key = (a1 + a2, b1 + b2, c1 + c2)
            out[key] = (out.get(key, 0) + x * y) % p
    return {k: v for k, v in out.items() if v}


def power_dim(spec, n):
    """Dimension of the span of all n-fold products of an initial-degree basis.

    Products run over multisets of basis rows; duplicates are harmless since
    only the rank is taken.  Guarded against combinatorial blowup.
    """
    if n < 1:
        raise ValueError("the power must be at least 1")
    t0 = initial_degree(spec, t_max=sum(spec.mults) + 1)
    if t0 is None:
        raise CertificationError("found no forms up to the degree bound")
    base = linear_system(spec, t0)
    m = base.dimension
    count = comb(m + n - 1, n)
    if count > _PRODUCT_GUARD:
        raise ValueError(f"{count} products exceed the guard of {_PRODUCT_GUARD}")
    p = spec.points.field.modulus
    polys = [_row_poly(base.basis, i, t0) for i in range(m)]
    dst = _monomial_index(n * t0)
    out = np.zeros((count, len(dst)), dtype=np.int64)
    for ri, combo in enumerate(combinations_with_replacement(range(m), n)):
        prod = polys[combo[0]]
        for idx in combo[1:]:
            prod = _poly_mul(prod, polys[idx], p)
        for mono, coef in prod.items():
            out[ri, dst[mono]] = coef
    return rank(FMatrix(count, len(dst), p, out))


def symbolic_dim(spec, n, t, retries=5):
    """Hilbert report of the n-th symbolic power: multiplicities scaled by n."""
    if n < 1:
        raise ValueError("the power must be at least 1")
    scaled = FatIdealSpec(spec.points, tuple(n * m for m in spec.mults))
    return hilbert_value(scaled, t, retries)


@dataclass(frozen=True)
class BettiTable:
    generators: dict[int, int]  # degree -> minimal generator count
    syzygies: dict[int, int]  # degree -> first syzygy count
    hilbert: dict[int, int]  # the certified dimensions backing the table

    @property
    def generator_degrees(self):
        return sorted(self.generators)


def betti_table(spec, gen_degree_window=2):
    """Generator and first-syzygy counts of the (codimension-two) fat ideal.

    Generator counts are multiplication-map cokernel dimensions; syzygy
    counts come from the third difference of the Hilbert function.  Every
    Hilbert value touched must be certified on the given configuration, and
    the resolution must close inside the window: one fewer syzygy than
    generators.
    """
    if gen_degree_window < 1:
        raise ValueError("the window must span at least one degree")
    t0 = initial_degree(spec, t_max=sum(spec.mults) + 1)
    if t0 is None:
        raise CertificationError("found no forms up to the degree bound")
    hs = {}
    for t in range(max(t0 - 3, 0), t0 + gen_degree_window + 1):
        rep = hilbert_value(spec, t, retries=1)  # the table needs one configuration
        if not rep.certified:
            raise CertificationError(
                f"dimension at degree {t} is {rep.sampled_dim}, expected {rep.expected}; "
                "refusing to build a table from an uncertified value"
            )
        hs[t] = rep.sampled_dim

    def h(t):
        return hs.get(t, 0)

    systems = {t: linear_system(spec, t) for t in range(t0, t0 + gen_degree_window + 1)}
    gens = {t0: hs[t0]}
    for t in range(t0 + 1, t0 + gen_degree_window + 1):
        gens[t] = hs[t] - mult_map(systems[t - 1], spec, t).image_rank
    syz = {}
    for i in range(t0 + 1, t0 + gen_degree_window + 1):
        third = h(i) - 3 * h(i - 1) + 3 * h(i - 2) - h(i - 3)
        u = gens.get(i, 0) - third
        if u < 0:
            raise CertificationError(f"negative syzygy count {u} at degree {i}")
        if u:
            syz[i] = u
    gens = {t: n for t, n in gens.items() if n}
    if sum(syz.values()) != sum(gens.values()) - 1:
        raise CertificationError(
            f"window [{t0}, {t0 + gen_degree_window}] does not close the resolution: "
            f"{sum(gens.values())} generators vs {sum(syz.values())} syzygies; widen the window"
        )
    return BettiTable(gens, syz, hs)


def eta_transform(sys, nu1, nu2, nu3):
    """Substitute (x,y,z) -> (yz,xz,xy) and divide by x^nu1 y^nu2 z^nu3.

    On a fixed degree the substitution sends distinct monomials to distinct
    monomials, so divisibility is checked monomial by monomial and the
    dimension is preserved.  The target degree is 2t - nu1 - nu2 - nu3.
    A failed divisibility check signals a system that does not vanish to
    the claimed orders at the coordinate points.
    """
    for v in (nu1, nu2, nu3):
        if not isinstance(v, int) or v < 0:
            raise ValueError("divisor exponents must be non-negative integers")
    t = sys.degree
    new_t = 2 * t - nu1 - nu2 - nu3
    if new_t < 0:
        raise ValueError(f"target degree {new_t} is negative")
    src = monomials(t)
    dst = _monomial_index(new_t)
    entries = sys.basis.entries
    out = np.zeros((sys.basis.rows, len(dst)), dtype=np.int64)
    support = np.nonzero(entries.any(axis=0))[0] if sys.basis.rows else []
    for ci in support:
        a, b, c = src[ci]
        image = (b + c - nu1, a + c - nu2, a + b - nu3)
        if min(image) < 0:
            raise ValueError(
                f"monomial x^{a}y^{b}z^{c} is not divisible by the divisor after "
                "substitution; the system is not in the standard frame"
            )
        out[:, dst[image]] = entries[:, ci]
    return LinearSystem(new_t, FMatrix(sys.basis.rows, len(dst), sys.basis.modulus, out))


def quad_transform_points(ps, j=0, k=1, l=2):
    """Image of a frame-normalized point set under (x:y:z) -> (yz:xz:xy).

    The three base positions must hold the coordinate points and stay
    fixed; every other point must avoid the coordinate lines, where the
    quadratic map is undefined or collapses.
    """
    base = {j, k, l}
    if len(base) != 3:
        raise ValueError(f"need three distinct positions, got {(j, k, l)}")
    for idx in base:
        if not 0 <= idx < len(ps):
            raise ValueError(f"position {idx} out of range for {len(ps)} points")
    if {ps.points[i] for i in base} != set(_COORDINATE_POINTS):
        raise ValueError(f"positions {sorted(base)} must hold the three coordinate points")
    p = ps.field.modulus
    moved = []
    for i, (x, y, z) in enumerate(ps.points):
        if i in base:
            moved.append((x, y, z))
        elif 0 in (x, y, z):
            raise ValueError(f"point {i} lies on a coordinate line; the map is undefined there")
        else:
            moved.append((y * z % p, x * z % p, x * y % p))
    prov = ps.provenance
    frame = prov.frame and base == {0, 1, 2}
    return PointSet(tuple(moved), ps.field, Provenance(prov.seed, frame, prov.attempts))
