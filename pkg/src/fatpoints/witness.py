"""Executable witnesses: the B3 and Fermat configurations, the closed-form
quartics attached to them, their dual forms, and the projection /
parametrization package for the quartic surface with a triple point.

Everything here is checked exactly: dual "triple point" claims are verified
as identically-zero residue polynomials, never by sampling, and the
parametrization identities are polynomial identities over Q.

The printed basis for the rational parametrization contains one ambiguous
coefficient ("c3d") and one coefficient whose parameter-degree breaks the
pattern of its neighbours.  Both candidate readings are implemented; the
shipped default is the unique reading under which the pullback and
projection identities hold (see VALIDATED_READING and the validation test).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .exact import (
    EISENSTEIN,
    RATIONAL,
    Eisenstein,
    Rng,
    as_scalar,
    is_zero,
    random_point,
)
from .linalg import ExactMatrix, kernel_basis, oracle_rank, rank
from .mpoly import MultiPoly, Ring, monomial_basis
from .systems import (
    FatPoint,
    FatPointConfig,
    ambient_ring,
    conditions_matrix,
    format_point,
    projectively_equal,
)


@dataclass(frozen=True)
class NamedConfig:
    config: FatPointConfig
    note: str

    def __len__(self):
        return len(self.config)


def infer_field(values):
    return EISENSTEIN if any(isinstance(v, Eisenstein) for v in values) else RATIONAL


# --- the nine dual points of the B3 line arrangement -------------------------


def b3_points():
    return [
        (1, 0, 0),
        (0, 1, 0),
        (0, 0, 1),
        (1, 1, 0),
        (1, -1, 0),
        (1, 0, 1),
        (1, 0, -1),
        (0, 1, 1),
        (0, 1, -1),
    ]


def b3_config():
    """Nine points in P^2 dual to the B3 arrangement of nine lines."""
    pts = tuple(FatPoint(tuple(Fraction(c) for c in p), 1) for p in b3_points())
    cfg = FatPointConfig(2, RATIONAL, pts, label="B3")
    return NamedConfig(cfg, "points dual to the lines of the B3 arrangement")


# --- the Fermat-type configuration of 31 points in P^3 ----------------------


def fermat_w_config():
    """27 points (1 : w^i : w^j : w^k) plus the 4 coordinate points of P^3."""
    eps = Eisenstein.omega()
    pts = []
    for i, j, k in itertools.product(range(1, 4), repeat=3):
        pts.append((Eisenstein(1), eps**i, eps**j, eps**k))
    for c in range(4):
        coords = [Eisenstein(0)] * 4
        coords[c] = Eisenstein(1)
        pts.append(tuple(coords))
    cfg = FatPointConfig(
        3,
        EISENSTEIN,
        tuple(FatPoint(tuple(p), 1) for p in pts),
        label="FermatW",
    )
    return NamedConfig(
        cfg, "zero locus of the Fermat cube differences plus the coordinate points"
    )


def fermat_generators(ring):
    """x^3-y^3, y^3-z^3, z^3-w^3 in the given P^3 ring."""
    x, y, z, w = ring.variables()
    return [x**3 - y**3, y**3 - z**3, z**3 - w**3]


def quartic_binomials(ring):
    """The eight degree-4 binomials cutting out the 31-point configuration."""
    x, y, z, w = ring.variables()
    return [
        x * (y**3 - z**3),
        x * (z**3 - w**3),
        y * (x**3 - z**3),
        y * (z**3 - w**3),
        z * (x**3 - y**3),
        z * (y**3 - w**3),
        w * (x**3 - y**3),
        w * (y**3 - z**3),
    ]


# --- closed-form quartics ----------------------------------------------------
#
# The builders below are written once over "things that multiply": the
# parameters may be exact scalars (numeric instance) or ring variables
# (bihomogeneous form in a product ring).


def _plane_quartic_expr(a, b, c, x, y, z):
    return (
        3 * a * (b**2 - c**2) * (x**2 * y * z)
        + 3 * b * (c**2 - a**2) * (x * y**2 * z)
        + 3 * c * (a**2 - b**2) * (x * y * z**2)
        + a**3 * (y**3 * z)
        - a**3 * (y * z**3)
        + b**3 * (x * z**3)
        - b**3 * (x**3 * z)
        + c**3 * (x**3 * y)
        - c**3 * (x * y**3)
    )


def _plane_cubic_dual_expr(a, b, c, x, y, z):
    return (
        y * z * (y**2 - z**2) * a**3
        + x * z * (z**2 - x**2) * b**3
        + x * y * (x**2 - y**2) * c**3
        + 3 * (x**2 * y * z) * (a * b**2)
        - 3 * (x * y**2 * z) * (a**2 * b)
        + 3 * (x * y * z**2) * (a**2 * c)
        - 3 * (x**2 * y * z) * (a * c**2)
        + 3 * (x * y**2 * z) * (b * c**2)
        - 3 * (x * y * z**2) * (b**2 * c)
    )


def _space_quartic_expr(a, b, c, d, x, y, z, w):
    return (
        b**2 * (c**3 - d**3) * (x**3 * y)
        + a**2 * (d**3 - c**3) * (x * y**3)
        + c**2 * (d**3 - b**3) * (x**3 * z)
        + c**2 * (a**3 - d**3) * (y**3 * z)
        + a**2 * (b**3 - d**3) * (x * z**3)
        + b**2 * (d**3 - a**3) * (y * z**3)
        + d**2 * (b**3 - c**3) * (x**3 * w)
        + d**2 * (c**3 - a**3) * (y**3 * w)
        + d**2 * (a**3 - b**3) * (z**3 * w)
        + a**2 * (c**3 - b**3) * (x * w**3)
        + b**2 * (a**3 - c**3) * (y * w**3)
        + c**2 * (b**3 - a**3) * (z * w**3)
    )


def _space_quintic_dual_expr(a, b, c, d, x, y, z, w):
    return (
        y * (w**3 - z**3) * (a**3 * b**2)
        + x * (z**3 - w**3) * (a**2 * b**3)
        + z * (y**3 - w**3) * (a**3 * c**2)
        + z * (w**3 - x**3) * (b**3 * c**2)
        + x * (w**3 - y**3) * (a**2 * c**3)
        + y * (x**3 - w**3) * (b**2 * c**3)
        + w * (z**3 - y**3) * (a**3 * d**2)
        + w * (x**3 - z**3) * (b**3 * d**2)
        + w * (y**3 - x**3) * (c**3 * d**2)
        + x * (y**3 - z**3) * (a**2 * d**3)
        + y * (z**3 - x**3) * (b**2 * d**3)
        + z * (x**3 - y**3) * (c**2 * d**3)
    )


def _require_point(coords, n):
    if len(coords) != n:
        raise ValueError(f"expected {n} coordinates")
    fieldtag = infer_field(coords)
    coords = [as_scalar(c, fieldtag) for c in coords]
    if all(is_zero(c) for c in coords):
        raise ValueError("point cannot be all zero")
    return coords, fieldtag


def plane_quartic(R):
    """The quartic through the nine B3-dual points with a triple point at R."""
    (a, b, c), fieldtag = _require_point(R, 3)
    ring = ambient_ring(2, fieldtag)
    x, y, z = ring.variables()
    return _plane_quartic_expr(a, b, c, x, y, z)


def space_quartic(R):
    """The quartic through the 31-point configuration, triple point at R."""
    (a, b, c, d), fieldtag = _require_point(R, 4)
    ring = ambient_ring(3, fieldtag)
    x, y, z, w = ring.variables()
    return _space_quartic_expr(a, b, c, d, x, y, z, w)


def extra_singularities(R):
    """The four double points attached to the space quartic at R.

    When a coordinate of R is zero the corresponding point coincides with R
    projectively; the flag marks which entries are genuinely new points.
    """
    (a, b, c, d), _ = _require_point(R, 4)
    pts = [
        (-2 * a, b, c, d),
        (a, -2 * b, c, d),
        (a, b, -2 * c, d),
        (a, b, c, -2 * d),
    ]
    distinct = [not is_zero(coord) for coord in (a, b, c, d)]
    return pts, distinct


# --- duality checks (all symbolic) -------------------------------------------

PLANE_PRODUCT_RING = Ring(("x", "y", "z", "a", "b", "c"), RATIONAL)
SPACE_PRODUCT_RING = Ring(("x", "y", "z", "w", "a", "b", "c", "d"), RATIONAL)


def plane_bihomogeneous():
    """The quartic/cubic as one bidegree-(4,3) form in x,y,z,a,b,c."""
    x, y, z, a, b, c = PLANE_PRODUCT_RING.variables()
    return _plane_quartic_expr(a, b, c, x, y, z)


def plane_bihomogeneous_dual():
    x, y, z, a, b, c = PLANE_PRODUCT_RING.variables()
    return _plane_cubic_dual_expr(a, b, c, x, y, z)


def space_bihomogeneous():
    """The space quartic as one bidegree-(4,5) form in x..w, a..d."""
    x, y, z, w, a, b, c, d = SPACE_PRODUCT_RING.variables()
    return _space_quartic_expr(a, b, c, d, x, y, z, w)


def space_bihomogeneous_dual():
    x, y, z, w, a, b, c, d = SPACE_PRODUCT_RING.variables()
    return _space_quintic_dual_expr(a, b, c, d, x, y, z, w)


@dataclass
class DualFormCheck:
    """Residues of parameter-block partials after the diagonal substitution."""

    which: str
    first_order_residues: dict
    second_order_residues: dict

    @property
    def passed(self):
        return all(p.is_zero() for p in self.first_order_residues.values()) and all(
            p.is_zero() for p in self.second_order_residues.values()
        )


def dual_triple_point_check(which):
    """Verify, symbolically, the dual form's triple point on the diagonal.

    Every partial of order <= 2 with respect to the parameter block, with
    the parameters then substituted by the coordinates, must be the zero
    polynomial.
    """
    if which == "plane_cubic":
        form = plane_bihomogeneous()
        ncoords = 3
    elif which == "space_quintic":
        form = space_bihomogeneous()
        ncoords = 4
    else:
        raise ValueError("which must be 'plane_cubic' or 'space_quintic'")

    target = ambient_ring(ncoords - 1, RATIONAL)
    coords = target.variables()
    images = coords + coords  # parameters go to the matching coordinates

    def residue(p):
        return p.substitute(images)

    first = {}
    second = {}
    block_offset = ncoords
    for order, store in ((1, first), (2, second)):
        for alpha in monomial_basis(ncoords, order):
            p = form
            for i, e in enumerate(alpha):
                for _ in range(e):
                    p = p.partial(block_offset + i)
            store[alpha] = residue(p)
    return DualFormCheck(which, first, second)


@dataclass
class DegenerationReport:
    vanishing_points: list
    vanishing_ok: bool
    nonzero_samples: list
    nonzero_ok: bool

    @property
    def passed(self):
        return self.vanishing_ok and self.nonzero_ok


def dual_degenerations(rng=None, samples=5):
    """The dual cubic collapses exactly at the nine special parameter values.

    Substituting each of the nine points for the coordinates kills the form
    identically; at random other parameter values it stays a nonzero cubic
    with a triple point there.
    """
    rng = rng or Rng(2024)
    form = plane_bihomogeneous()
    nine = [tuple(Fraction(c) for c in p) for p in b3_points()]
    vanish = []
    for pt in nine:
        cubic = form.partial_evaluate([0, 1, 2], pt)
        vanish.append((pt, cubic.is_zero()))
    nonzero = []
    while len(nonzero) < samples:
        S = random_point(rng, 2, RATIONAL)
        if any(projectively_equal(S, p) for p in nine):
            continue
        cubic = form.partial_evaluate([0, 1, 2], S)
        ok = (not cubic.is_zero()) and cubic.vanishes_to_order(S, 3)
        nonzero.append((tuple(S), ok))
    return DegenerationReport(
        vanishing_points=vanish,
        vanishing_ok=all(ok for _, ok in vanish),
        nonzero_samples=nonzero,
        nonzero_ok=all(ok for _, ok in nonzero),
    )


@dataclass
class BaseLocusReport:
    probes: list  # (point, witness S or None)

    @property
    def passed(self):
        return all(w is not None for _, w in self.probes)


def base_locus_probe(trials=100, rng=None, attempts=60):
    """No point of the plane is a base point of the dual cubic family.

    For each probe point T a parameter value S with form(S)(T) != 0 is
    searched by sampling; finding one certifies T is outside the base locus.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = rng or Rng(11)
    form = plane_bihomogeneous()
    probes = []
    fixed = [
        (Fraction(1), Fraction(1), Fraction(1)),
        (Fraction(1), Fraction(0), Fraction(0)),
    ]
    targets = fixed + [tuple(random_point(rng, 2, RATIONAL)) for _ in range(trials)]
    for T in targets:
        witness = None
        for _ in range(attempts):
            S = random_point(rng, 2, RATIONAL)
            value = form.evaluate(list(S) + list(T))
            if not is_zero(value):
                witness = tuple(S)
                break
        probes.append((T, witness))
    return BaseLocusReport(probes)


# --- the eight binomials span the degree-4 piece ------------------------------


@dataclass
class BinomialSpanReport:
    binomials_vanish: bool
    coefficient_rank: int
    evaluation_rank: int
    evaluation_rank_oracle: int
    kernel_dim: int
    spans: bool

    @property
    def passed(self):
        return (
            self.binomials_vanish
            and self.coefficient_rank == 8
            and self.evaluation_rank == 27
            and self.evaluation_rank == self.evaluation_rank_oracle
            and self.kernel_dim == 8
            and self.spans
        )


def lemma1_check():
    """The eight binomials vanish on all 31 points and span the quartics there."""
    named = fermat_w_config()
    cfg = named.config
    ring = cfg.ring()
    binomials = quartic_binomials(ring)
    vanish = all(
        is_zero(b.evaluate(pt.coords)) for b in binomials for pt in cfg.points
    )

    basis = monomial_basis(4, 4)
    coeff_rows = [b.coefficient_vector(basis) for b in binomials]
    coeff_matrix = ExactMatrix.from_rows(coeff_rows, EISENSTEIN)
    coeff_rank = rank(coeff_matrix)

    eval_matrix = conditions_matrix(cfg, 4)
    eval_rank = rank(eval_matrix)
    eval_rank_oracle = oracle_rank(eval_matrix)
    kernel = kernel_basis(eval_matrix)

    # span equality: stacking the kernel basis onto the binomial rows must
    # not grow the rank past 8
    stacked = coeff_matrix.stack(kernel.as_matrix())
    spans = rank(stacked) == coeff_rank == len(kernel)

    return BinomialSpanReport(
        binomials_vanish=vanish,
        coefficient_rank=coeff_rank,
        evaluation_rank=eval_rank,
        evaluation_rank_oracle=eval_rank_oracle,
        kernel_dim=len(kernel),
        spans=spans,
    )


# --- projection and rational parametrization ---------------------------------

PLANE_IMAGE_RING = Ring(("p", "q", "r"), RATIONAL)

# readings of the ambiguous printed coefficients in the basis g0..g3:
# each entry maps to (coefficient of f1 in g2, coefficient of f1 in g3)
BASIS_READINGS = {
    "cubed": lambda a, b, c, d: (-(c**3) * d * (a**3 - b**3), -(c**2) * d**2),
    "times3": lambda a, b, c, d: (-3 * c * d * (a**3 - b**3), -(c**2) * d**2),
    "homogenized": lambda a, b, c, d: (
        -(c**3) * d * (a**3 - b**3),
        -(c**2) * d**2 * (a**3 - b**3),
    ),
}

# fixed after validation: the unique reading under which the pullback of the
# quartic vanishes and the projection inverts the parametrization
VALIDATED_READING = "homogenized"


class DegenerateParameterError(ValueError):
    """Raised for parameter points the closed formulas do not cover."""


def _gamma_expr(a, b, c, d, p, q, r):
    return (
        b * c**2 * d * (a**3 - b**3) * (p**2 * q)
        + c**2 * d**2 * (a**3 - b**3) * (p * q**2)
        + a**2 * b * d * (c**3 - b**3) * (p**2 * r)
        + 2 * a**2 * d**2 * (c**3 - b**3) * (p * q * r)
        + a**2 * b**2 * (c**3 - d**3) * (q**2 * r)
        + a * c * d**2 * (c**3 - b**3) * (p * r**2)
        + a * b**2 * c * (c**3 - d**3) * (q * r**2)
    )


def _delta_expr(a, b, c, d, p, q, r):
    return (
        a**2 * b * c**2 * (a**3 - b**3) * (c**3 - d**3) * (p * q**2 * r)
        + a**2 * c**2 * d * (a**3 - b**3) * (c**3 - d**3) * (q**3 * r)
        - a * b**2 * d**2 * (a**3 - c**3) * (b**3 - c**3) * (p**2 * r**2)
        + b**3 * c * d * (a**3 - c**3) * (c**3 - d**3) * (q * r**3)
        + a * d * (c**3 - d**3) * (a**3 * b**3 + a**3 * c**3 - 2 * b**3 * c**3) * (q**2 * r**2)
        - b * c * d**3 * (a**3 - c**3) * (b**3 - c**3) * (p * r**3)
        - a * b * (
            b**3 * c**6
            - a**3 * c**6
            + 2 * a**3 * b**3 * d**3
            - a**3 * c**3 * d**3
            - 3 * b**3 * c**3 * d**3
            + 2 * c**6 * d**3
        ) * (p * q * r**2)
    )


@dataclass
class ParametrizationBundle:
    R: tuple
    reading: str
    plane_ring: Ring
    space_ring: Ring
    gamma: MultiPoly
    delta: MultiPoly
    f: list
    g: list
    B: list
    F: list
    singular_points: list  # R1..R4
    pi_forms: list
    quartic: MultiPoly

    def phi(self, point):
        """Evaluate the parametrization; None where all four forms vanish."""
        v = [gi.evaluate(point) for gi in self.g]
        if all(is_zero(x) for x in v):
            return None
        return v

    def project(self, point):
        """Evaluate the projection; None at the center."""
        v = [f.evaluate(point) for f in self.pi_forms]
        if all(is_zero(x) for x in v):
            return None
        return v


def build_parametrization(R, reading=VALIDATED_READING):
    """Instantiate the projection/parametrization package at a parameter R.

    R must have all coordinates nonzero and pairwise distinct: the closed
    formulas degenerate when a coordinate vanishes or two cubes coincide.
    """
    if reading not in BASIS_READINGS:
        raise ValueError(f"unknown reading {reading!r}")
    (a, b, c, d), fieldtag = _require_point(R, 4)
    if fieldtag != RATIONAL:
        raise DegenerateParameterError("parametrization is built over Q")
    coords = (a, b, c, d)
    if any(is_zero(t) for t in coords):
        raise DegenerateParameterError(
            f"degenerate parameter {format_point(coords)}: zero coordinate"
        )
    for i in range(4):
        for j in range(i + 1, 4):
            if coords[i] ** 3 == coords[j] ** 3:
                raise DegenerateParameterError(
                    f"degenerate parameter {format_point(coords)}: equal cubes"
                )

    p, q, r = PLANE_IMAGE_RING.variables()
    gamma = _gamma_expr(a, b, c, d, p, q, r)
    delta = _delta_expr(a, b, c, d, p, q, r)
    f = [p * gamma, q * gamma, r * gamma, delta]

    kappa, tau = BASIS_READINGS[reading](a, b, c, d)
    g0 = (
        a * b * c**2 * (a**3 - b**3) * f[0]
        + 2 * a * c**2 * d * (a**3 - b**3) * f[1]
        + d * (a**3 * b**3 + 2 * a**3 * c**3 - 3 * b**3 * c**3) * f[2]
        - a * b**2 * f[3]
    )
    g1 = (
        b**2 * c**2 * (a**3 - b**3) * f[0]
        + 2 * b * c**2 * d * (a**3 - b**3) * f[1]
        + a**2 * b * d * (b**3 - c**3) * f[2]
        - b**3 * f[3]
    )
    g2 = (
        b * c**3 * (a**3 - b**3) * f[0]
        + kappa * f[1]
        + a**2 * c * d * (b**3 - c**3) * f[2]
        - b**2 * c * f[3]
    )
    g3 = (
        -2 * b * c**2 * d * (a**3 - b**3) * f[0]
        + tau * f[1]
        + a**2 * d**2 * (b**3 - c**3) * f[2]
        - b**2 * d * f[3]
    )

    B = [
        (d * c, -c * b, a * b),
        (d * c, Fraction(0), -a * b),
        (
            a**2 * b**2 * (c**3 - d**3),
            a**2 * d**2 * (b**3 - c**3),
            c**2 * d**2 * (a**3 - b**3),
        ),
        (Fraction(0), Fraction(1), Fraction(0)),
    ]
    F = [
        (Fraction(0), Fraction(0), Fraction(1)),
        (Fraction(0), -c, a),
        (-d, b, Fraction(0)),
        (Fraction(1), Fraction(0), Fraction(0)),
    ]
    singular, _ = extra_singularities(coords)

    space_ring = ambient_ring(3, RATIONAL)
    x, y, z, w = space_ring.variables()
    pi_forms = [d * z - c * w, c * y - b * z, b * x - a * y]

    return ParametrizationBundle(
        R=tuple(coords),
        reading=reading,
        plane_ring=PLANE_IMAGE_RING,
        space_ring=space_ring,
        gamma=gamma,
        delta=delta,
        f=f,
        g=[g0, g1, g2, g3],
        B=B,
        F=F,
        singular_points=singular,
        pi_forms=pi_forms,
        quartic=space_quartic(coords),
    )


def _gradient_rank_at(polys, point, fieldtag):
    rows = [[g.evaluate(point) for g in poly.gradient()] for poly in polys]
    nonzero = [any(not is_zero(x) for x in row) for row in rows]
    return rank(ExactMatrix.from_rows(rows, fieldtag)), nonzero


def chord_points_on_cubic(cubic, known, want=5, forbid=None):
    """Rational points on a plane cubic by the chord construction.

    A line through two known rational points meets the cubic in a third
    rational point; chords over all pairs (including freshly found points)
    are tried until `want` points avoiding `forbid` are collected.
    """
    line_ring = Ring(("s", "t"), cubic.ring.field)
    s, t = line_ring.variables()
    forbid = forbid or (lambda pt: False)
    pool = [tuple(pt) for pt in known]
    found = []
    tried = set()
    max_rounds = 4
    for _ in range(max_rounds):
        for i, j in itertools.combinations(range(len(pool)), 2):
            if (i, j) in tried:
                continue
            tried.add((i, j))
            P, Q = pool[i], pool[j]
            images = [s * P[k] + t * Q[k] for k in range(3)]
            h = cubic.substitute(images)
            c21 = h.coefficient((2, 1))
            c12 = h.coefficient((1, 2))
            if not (is_zero(h.coefficient((3, 0))) and is_zero(h.coefficient((0, 3)))):
                continue  # an endpoint is off the cubic; caller picked badly
            if is_zero(c21) and is_zero(c12):
                continue  # the whole chord lies on the cubic
            T = tuple(c12 * P[k] - c21 * Q[k] for k in range(3))
            if all(is_zero(x) for x in T):
                continue
            if forbid(T):
                continue
            if any(projectively_equal(T, u) for u in pool + found):
                continue
            found.append(T)
            if len(found) >= want:
                return found
        pool = pool + found
    return found


@dataclass
class ParamReport:
    reading: str
    R: tuple
    base_points_on_curves: bool
    tangent_ranks_at_F: list
    tangency_ok: bool
    gradient_nonzero_at_F: list  # reported, not asserted
    b_point_ranks: list  # reported, not asserted
    bezout_length: int
    pullback_zero: bool
    projection_identity_samples: int
    projection_identity_ok: bool
    projection_identity_symbolic: bool
    cubic_contraction_points: int
    cubic_contraction_ok: bool
    contracted_lines_ok: bool
    failures: list = dc_field(default_factory=list)

    @property
    def passed(self):
        return not self.failures


def verify_parametrization(bundle, rng=None, samples=10):
    """Run the exact checks of the parametrization package and report."""
    rng = rng or Rng(7)
    fails = []

    # (1) all eight assigned base points lie on both curves
    base_ok = True
    for pt in bundle.B + bundle.F:
        if not (is_zero(bundle.gamma.evaluate(pt)) and is_zero(bundle.delta.evaluate(pt))):
            base_ok = False
    if not base_ok:
        fails.append("base points on curves")

    # (2) rank-1 Jacobian at the contracted-line images: the curves meet
    # non-transversally there (at two of the four points the quartic is in
    # fact singular, so its gradient row is zero; the rank test covers both
    # shapes).  Transversality at the B points is reported, not asserted.
    tangent_ranks = []
    gradient_pattern = []
    tangency_ok = True
    for pt in bundle.F:
        rk, nonzero = _gradient_rank_at([bundle.gamma, bundle.delta], pt, RATIONAL)
        tangent_ranks.append(rk)
        gradient_pattern.append(tuple(nonzero))
        if rk != 1:
            tangency_ok = False
    if not tangency_ok:
        fails.append("tangency at contracted points")
    b_ranks = [
        _gradient_rank_at([bundle.gamma, bundle.delta], pt, RATIONAL)[0]
        for pt in bundle.B
    ]

    # (3) Bezout bookkeeping for the length-12 intersection
    bezout = bundle.gamma.degree() * bundle.delta.degree()
    if bezout != 12:
        fails.append("intersection length bookkeeping")

    # (4) the quartic pulls back to the zero polynomial
    pullback = bundle.quartic.substitute(bundle.g)
    if not pullback.is_zero():
        fails.append("quartic pullback")

    # (5) the projection inverts the parametrization: sampled...
    ok_samples = 0
    attempts = 0
    while ok_samples < samples and attempts < samples * 20:
        attempts += 1
        pt = random_point(rng, 2, RATIONAL)
        image = bundle.phi(pt)
        if image is None:
            continue
        back = bundle.project(image)
        if back is None:
            continue
        if not projectively_equal(back, pt):
            fails.append("projection identity (sampled)")
            break
        ok_samples += 1
    sampled_ok = ok_samples == samples
    if not sampled_ok and "projection identity (sampled)" not in fails:
        fails.append("projection identity (sampled)")

    # ...and symbolically: each composed coordinate is one common cubic
    # multiple of the matching plane coordinate
    comp = [form.substitute(bundle.g) for form in bundle.pi_forms]
    pqr = bundle.plane_ring.variables()
    symbolic_ok = True
    expected = [v * bundle.gamma for v in pqr]
    ratios = []
    for h, e in zip(comp, expected):
        ratio = _scalar_ratio(h, e)
        ratios.append(ratio)
    symbolic_ok = (
        all(r is not None for r in ratios)
        and len({str(r) for r in ratios}) == 1
        and not is_zero(ratios[0])
    )
    if not symbolic_ok:
        fails.append("projection identity (symbolic)")

    # (6) the cubic contracts to R: chord-sampled points map there
    eight = [tuple(pt) for pt in bundle.B + bundle.F]
    samples_on_gamma = chord_points_on_cubic(
        bundle.gamma,
        eight,
        want=5,
        forbid=lambda T: is_zero(bundle.delta.evaluate(T)),
    )
    contraction_ok = len(samples_on_gamma) >= 3
    for T in samples_on_gamma:
        if not is_zero(bundle.gamma.evaluate(T)):
            contraction_ok = False
            break
        image = bundle.phi(T)
        if image is None or not projectively_equal(image, list(bundle.R)):
            contraction_ok = False
            break
    if not contraction_ok:
        fails.append("cubic contraction to R")

    # the four lines through R are contracted onto the F points
    lines_ok = True
    for i, Ri in enumerate(bundle.singular_points):
        img = [f.evaluate(Ri) for f in bundle.pi_forms]
        if not projectively_equal(img, list(bundle.F[i])):
            lines_ok = False
        for lam, mu in ((1, 1), (2, -1)):
            pt = [lam * u + mu * v for u, v in zip(bundle.R, Ri)]
            img = [f.evaluate(pt) for f in bundle.pi_forms]
            if not projectively_equal(img, list(bundle.F[i])):
                lines_ok = False
    center_image = [f.evaluate(list(bundle.R)) for f in bundle.pi_forms]
    if any(not is_zero(x) for x in center_image):
        lines_ok = False  # the projection must be undefined exactly at R
    if not lines_ok:
        fails.append("contracted lines")

    return ParamReport(
        reading=bundle.reading,
        R=bundle.R,
        base_points_on_curves=base_ok,
        tangent_ranks_at_F=tangent_ranks,
        tangency_ok=tangency_ok,
        gradient_nonzero_at_F=gradient_pattern,
        b_point_ranks=b_ranks,
        bezout_length=bezout,
        pullback_zero=pullback.is_zero(),
        projection_identity_samples=ok_samples,
        projection_identity_ok=sampled_ok,
        projection_identity_symbolic=symbolic_ok,
        cubic_contraction_points=len(samples_on_gamma),
        cubic_contraction_ok=contraction_ok,
        contracted_lines_ok=lines_ok,
        failures=fails,
    )


def _scalar_ratio(pa, pb):
    """Scalar s with pa == s*pb, or None; pb must be nonzero."""
    if pb.is_zero():
        return None
    if pa.is_zero():
        return as_scalar(0, pa.ring.field)
    exps, coeff = next(iter(pb.sorted_terms()))
    lead = pa.coefficient(exps)
    if is_zero(lead):
        return None
    s = lead / coeff
    return s if (pa - pb.scale(s)).is_zero() else None


def validate_basis_reading(R_values):
    """Try every candidate reading at each parameter; map reading -> all-pass."""
    outcome = {}
    for reading in BASIS_READINGS:
        ok = True
        for R in R_values:
            bundle = build_parametrization(R, reading=reading)
            report = verify_parametrization(bundle, rng=Rng(5))
            if not report.passed:
                ok = False
                break
        outcome[reading] = ok
    return outcome
