"""Fat-point linear systems: conditions matrices, dimensions, speciality.

A configuration is a list of projective points with multiplicities.  For a
degree d the conditions matrix has one row per point per partial-derivative
multi-index of order < multiplicity and one column per degree-d monomial;
its kernel is the space of forms with the prescribed vanishing.  The actual
(vector-space) dimension is compared against the naive count

    expected = C(N+d, N) - sum_i C(N+m_i-1, N)

and a system is *special/unexpected* when it beats that count.  "General"
points are realized by seeded random specialization; every generic claim is
accepted only when independent seeds agree, since a special draw can only
lower the rank.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field

from .exact import (
    FIELDS,
    RATIONAL,
    Rng,
    as_scalar,
    format_scalar,
    is_zero,
    random_point,
    zero as field_zero,
)
from .linalg import ExactMatrix, KernelBasis, kernel_basis, oracle_rank, rank
from .mpoly import Ring, from_basis_vector, monomial_basis

SPACE_VARS = ("x", "y", "z", "w")


def ambient_ring(ambient_dim, field=RATIONAL):
    """Standard coordinate ring for P^N: x,y,z,w then x4,x5,... beyond."""
    if ambient_dim < 1:
        raise ValueError("ambient_dim must be >= 1")
    if ambient_dim + 1 <= len(SPACE_VARS):
        names = SPACE_VARS[: ambient_dim + 1]
    else:
        names = SPACE_VARS + tuple(f"x{i}" for i in range(4, ambient_dim + 1))
    return Ring(names, field)


# --- projective point helpers ----------------------------------------------


def normalize_point(coords, field):
    coords = [as_scalar(c, field) for c in coords]
    if all(is_zero(c) for c in coords):
        raise ValueError("projective point cannot be all zero")
    return coords


def projectively_equal(u, v):
    """True iff u and v are proportional nonzero coordinate tuples."""
    if len(u) != len(v):
        return False
    if all(is_zero(x) for x in u) or all(is_zero(x) for x in v):
        return False
    n = len(u)
    for i in range(n):
        for j in range(i + 1, n):
            if not is_zero(u[i] * v[j] - u[j] * v[i]):
                return False
    return True


def format_point(coords):
    return "(" + ":".join(format_scalar(c) for c in coords) + ")"


# --- configurations -----------------------------------------------------------


@dataclass(frozen=True)
class FatPoint:
    coords: tuple
    mult: int = 1

    def __post_init__(self):
        if self.mult < 1:
            raise ValueError("multiplicity must be >= 1")


@dataclass(frozen=True)
class FatPointConfig:
    ambient_dim: int
    field: str
    points: tuple
    label: str = ""

    def __post_init__(self):
        if self.field not in FIELDS:
            raise ValueError(f"unknown field tag {self.field!r}")
        pts = []
        for p in self.points:
            coords = tuple(normalize_point(p.coords, self.field))
            if len(coords) != self.ambient_dim + 1:
                raise ValueError(
                    f"point {format_point(coords)} has wrong coordinate count"
                )
            pts.append(FatPoint(coords, p.mult))
        for i in range(len(pts)):
            for j in range(i + 1, len(pts)):
                if projectively_equal(pts[i].coords, pts[j].coords):
                    raise ValueError(
                        f"duplicate projective point {format_point(pts[i].coords)}"
                    )
        object.__setattr__(self, "points", tuple(pts))

    def __len__(self):
        return len(self.points)

    def multiplicities(self):
        return [p.mult for p in self.points]

    def with_point(self, coords, mult, label_suffix=""):
        """New configuration with one extra fat point appended."""
        extra = FatPoint(tuple(coords), mult)
        return FatPointConfig(
            self.ambient_dim,
            self.field,
            self.points + (extra,),
            self.label + label_suffix,
        )

    def ring(self):
        return ambient_ring(self.ambient_dim, self.field)


def simple_points_config(ambient_dim, coords_list, field=RATIONAL, label=""):
    pts = tuple(FatPoint(tuple(c), 1) for c in coords_list)
    return FatPointConfig(ambient_dim, field, pts, label)


# --- conditions matrices and dimensions ------------------------------------


def point_conditions_count(ambient_dim, mult):
    """Number of linear conditions a mult-fold point imposes: C(N+m-1, N)."""
    return math.comb(ambient_dim + mult - 1, ambient_dim)


def expected_dim(ambient_dim, degree, mults):
    """Naive projective expected dimension, floored at -1."""
    count = math.comb(ambient_dim + degree, ambient_dim)
    conditions = sum(point_conditions_count(ambient_dim, m) for m in mults)
    return max(-1, count - conditions - 1)


def _derivative_rows(nvars, mult):
    """Multi-indices of order <= mult-1, enumerated by order then graded lex."""
    rows = []
    for order in range(mult):
        rows.extend(monomial_basis(nvars, order))
    return rows


def _partial_of_monomial_at(exps, alpha, point, fieldtag):
    """d^alpha (x^exps) evaluated at point, exactly."""
    coeff = 1
    for e, a in zip(exps, alpha):
        if a > e:
            return field_zero(fieldtag)
        for k in range(a):
            coeff *= e - k
    value = as_scalar(coeff, fieldtag)
    for p, e, a in zip(point, exps, alpha):
        if e - a:
            value = value * p ** (e - a)
    return value


def conditions_matrix(cfg, degree):
    """Evaluation matrix of all vanishing conditions on degree-d monomials.

    Rows: for each point, all derivative multi-indices of order < mult.
    Columns: the degree-d monomial basis in graded lex order.
    """
    nvars = cfg.ambient_dim + 1
    basis = monomial_basis(nvars, degree)
    rows = []
    for pt in cfg.points:
        for alpha in _derivative_rows(nvars, pt.mult):
            rows.append(
                [
                    _partial_of_monomial_at(exps, alpha, pt.coords, cfg.field)
                    for exps in basis
                ]
            )
    return ExactMatrix(len(rows), len(basis), rows, cfg.field)


@dataclass
class LinearSystemResult:
    degree: int
    monomial_count: int
    conditions_rank: int
    vdim_actual: int
    pdim_actual: int
    edim: int
    special: bool
    kernel: KernelBasis

    def kernel_polys(self, ring):
        basis = monomial_basis(ring.nvars, self.degree)
        return [from_basis_vector(ring, basis, v) for v in self.kernel]

    def summary(self):
        return {
            "degree": self.degree,
            "monomial_count": self.monomial_count,
            "conditions_rank": self.conditions_rank,
            "vdim_actual": self.vdim_actual,
            "pdim_actual": self.pdim_actual,
            "edim": self.edim,
            "special": self.special,
        }


def linear_system(cfg, degree, check_kernel=True):
    """Dimensions and kernel basis of degree-d forms through the fat points.

    Both the projective dimension (compared against the naive expectation)
    and the vector-space dimension are reported.  Before returning, every
    kernel polynomial is re-checked to vanish to the required order at every
    configured point.
    """
    matrix = conditions_matrix(cfg, degree)
    r = rank(matrix)
    kernel = kernel_basis(matrix)
    if len(kernel) != matrix.cols - r:
        raise RuntimeError("rank/kernel disagreement; elimination bug")
    vdim = matrix.cols - r
    edim = expected_dim(cfg.ambient_dim, degree, cfg.multiplicities())
    result = LinearSystemResult(
        degree=degree,
        monomial_count=matrix.cols,
        conditions_rank=r,
        vdim_actual=vdim,
        pdim_actual=vdim - 1,
        edim=edim,
        special=(vdim - 1) > edim,
        kernel=kernel,
    )
    if check_kernel:
        ring = cfg.ring()
        for poly in result.kernel_polys(ring):
            for pt in cfg.points:
                if not poly.vanishes_to_order(pt.coords, pt.mult):
                    raise RuntimeError(
                        "kernel self-check failed at point "
                        + format_point(pt.coords)
                    )
    return result


# --- generic values via seeded specialization -------------------------------


class SpecializationUnstable(RuntimeError):
    """Independent seeds disagreed on a generic dimension."""

    def __init__(self, message, trials):
        super().__init__(message)
        self.trials = trials


@dataclass
class GenericDimension:
    """Consensus of several random specializations of the general point(s)."""

    vdim: int
    stable: bool
    trial_vdims: list
    seeds: list
    diagnostic: str | None = None


def _generic_system(base_cfg, degree, extra_mult, trials, rng, keep_result=False):
    """Generic vdim of the system through base_cfg plus one general fat point.

    extra_mult == 0 means no extra point.  Rank is lower-semicontinuous in
    the specialization, so the generic vdim is the *minimum* over trials;
    the consensus is flagged unstable when seeds disagree.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if extra_mult == 0:
        # no general point, nothing to specialize
        res = linear_system(base_cfg, degree)
        gen = GenericDimension(res.vdim_actual, True, [res.vdim_actual], [])
        return (gen, res) if keep_result else gen
    vdims = []
    seeds = []
    results = []
    for _ in range(trials):
        child = rng.split()
        seeds.append(child.seed)
        if extra_mult > 0:
            pt = random_point(child, base_cfg.ambient_dim, base_cfg.field)
            cfg = base_cfg.with_point(pt, extra_mult)
        else:
            cfg = base_cfg
        res = linear_system(cfg, degree)
        vdims.append(res.vdim_actual)
        results.append(res)
    vmin = min(vdims)
    stable = all(v == vmin for v in vdims)
    diag = None
    if not stable:
        diag = (
            f"specialization unstable: vdims {vdims} across seeds {seeds}; "
            "reporting the maximal-rank (minimal vdim) trial"
        )
    gen = GenericDimension(vmin, stable, vdims, seeds, diag)
    if keep_result:
        best = results[vdims.index(vmin)]
        return gen, best
    return gen


@dataclass
class ProbeResult:
    """Outcome of the unexpectedness probe for one (degree, mult) pair."""

    degree: int
    mult: int
    edim: int
    vdim_actual: int
    pdim_actual: int
    unexpected: bool
    stable: bool
    trial_vdims: list
    seeds: list
    diagnostic: str | None
    system: LinearSystemResult

    def verdict(self):
        return "UNEXPECTED" if self.unexpected else "NOT UNEXPECTED"

    def summary(self):
        return {
            "degree": self.degree,
            "mult": self.mult,
            "edim": self.edim,
            "vdim_actual": self.vdim_actual,
            "pdim_actual": self.pdim_actual,
            "verdict": self.verdict(),
            "stable": self.stable,
            "trial_vdims": self.trial_vdims,
            "seeds": self.seeds,
            "diagnostic": self.diagnostic,
        }


def unexpectedness_probe(cfg, degree, mult, trials=3, rng=None):
    """Append a general mult-fold point and test for an unexpected form.

    The expectation counts the configured points naively together with the
    general fat point; the verdict is UNEXPECTED when the consensus actual
    projective dimension exceeds it.
    """
    if mult < 2:
        raise ValueError("probe multiplicity must be >= 2")
    rng = rng or Rng(1)
    gen, best = _generic_system(cfg, degree, mult, trials, rng, keep_result=True)
    edim = expected_dim(
        cfg.ambient_dim, degree, cfg.multiplicities() + [mult]
    )
    pdim = gen.vdim - 1
    return ProbeResult(
        degree=degree,
        mult=mult,
        edim=edim,
        vdim_actual=gen.vdim,
        pdim_actual=pdim,
        unexpected=pdim > edim,
        stable=gen.stable,
        trial_vdims=gen.trial_vdims,
        seeds=gen.seeds,
        diagnostic=gen.diagnostic,
        system=best,
    )


# --- multiplicity and speciality indices ---------------------------------------


@dataclass
class IndexEntry:
    j: int
    degree: int
    vdim: int
    independent_count_raw: int
    independent_count_clamped: int
    stable: bool
    trial_vdims: list = dc_field(default_factory=list)


@dataclass
class IndexReport:
    """Sweep of j-fold general points against degree-(j+1) forms.

    ``m_index`` is the least j whose system is nonempty.  ``u_index_raw``
    demands the actual dimension equal the signed independent-conditions
    count; ``u_index_clamped`` clamps that count at zero first.  Both
    conventions are reported because the raw count is negative for small j.
    """

    label: str
    jmax: int
    trials: int
    m_index: int | None
    u_index_raw: int | None
    u_index_clamped: int | None
    entries: list
    seeds: list
    stable: bool

    def summary(self):
        return {
            "label": self.label,
            "jmax": self.jmax,
            "trials": self.trials,
            "multiplicity_index": self.m_index,
            "speciality_index_raw": self.u_index_raw,
            "speciality_index_clamped": self.u_index_clamped,
            "stable": self.stable,
            "seeds": self.seeds,
            "table": [
                {
                    "j": e.j,
                    "degree": e.degree,
                    "vdim": e.vdim,
                    "independent_count_raw": e.independent_count_raw,
                    "independent_count_clamped": e.independent_count_clamped,
                    "stable": e.stable,
                }
                for e in self.entries
            ],
        }


def _independent_count(ambient_dim, j, npoints):
    n = ambient_dim
    return (
        math.comb(j + 1 + n, n)
        - math.comb(n - 1 + j, n)
        - npoints
    )


def index_sweep(cfg, jmax, trials=3, rng=None):
    """Compute both indices for a reduced configuration in one j-sweep.

    For each j in 0..jmax the generic vector-space dimension of the
    degree-(j+1) forms through the configuration plus a j-fold general point
    is measured across `trials` seeds.
    """
    if jmax < 1:
        raise ValueError("jmax must be >= 1")
    if any(p.mult != 1 for p in cfg.points):
        raise ValueError("index sweep expects a reduced configuration")
    rng = rng or Rng(1)
    entries = []
    seeds = []
    m_index = None
    u_raw = None
    u_clamped = None
    all_stable = True
    for j in range(jmax + 1):
        gen = _generic_system(cfg, j + 1, j, trials, rng)
        seeds.extend(gen.seeds)
        raw = _independent_count(cfg.ambient_dim, j, len(cfg))
        entry = IndexEntry(
            j=j,
            degree=j + 1,
            vdim=gen.vdim,
            independent_count_raw=raw,
            independent_count_clamped=max(0, raw),
            stable=gen.stable,
            trial_vdims=gen.trial_vdims,
        )
        entries.append(entry)
        all_stable = all_stable and gen.stable
        if m_index is None and gen.vdim > 0:
            m_index = j
        if u_raw is None and gen.vdim == raw:
            u_raw = j
        if u_clamped is None and gen.vdim == max(0, raw):
            u_clamped = j
    return IndexReport(
        label=cfg.label,
        jmax=jmax,
        trials=trials,
        m_index=m_index,
        u_index_raw=u_raw,
        u_index_clamped=u_clamped,
        entries=entries,
        seeds=seeds,
        stable=all_stable,
    )


def multiplicity_index(cfg, jmax, trials=3, rng=None):
    """Least j with a nonzero degree-(j+1) system; None if not found <= jmax."""
    return index_sweep(cfg, jmax, trials, rng).m_index


def speciality_index(cfg, jmax, trials=3, rng=None):
    """Least j at which the conditions count is met, both conventions."""
    report = index_sweep(cfg, jmax, trials, rng)
    return report.u_index_raw, report.u_index_clamped


def check_conditions_consistency(cfg, degree):
    """Cross-validate the primary rank against the oracle; True on agreement."""
    m = conditions_matrix(cfg, degree)
    return rank(m) == oracle_rank(m)
