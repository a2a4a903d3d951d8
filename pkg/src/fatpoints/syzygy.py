"""Graded syzygies of Jacobian-plus-plane ideals, and the plane map built
from a least-degree syzygy pair.

For a reduced point set Z in P^3, f is the product of the planes dual to the
points.  Relations  s0*f_x + s1*f_y + s2*f_z + s3*f_w + s4*l = 0  in a fixed
graded degree form the kernel of one exact multiplication matrix, so the
whole computation stays inside the linear algebra layer; no Groebner engine
is involved.  Koszul relations are not quotiented away, but membership in
the Koszul subspace is detected and reported.

The harness wires the pieces together: it picks a random plane l, finds a
least-degree pair, builds the self-maps and the plane map Q -> span(Q,
sigma(Q), sigma'(Q)), samples the advertised incidences exactly, and
interpolates the image of the restriction to l.  It tests; it proves
nothing, and its report says which is which.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field

from .exact import RATIONAL, Rng, as_scalar, is_zero, zero as field_zero
from .linalg import ExactMatrix, kernel_basis, rank
from .mpoly import Ring, from_basis_vector, monomial_basis
from .systems import (
    expected_dim,
    index_sweep,
    linear_system,
    projectively_equal,
    simple_points_config,
)


def dual_form(ring, coords):
    """Linear form with the point's coordinates as coefficients."""
    return ring.linear_form(list(coords))


def dual_plane_product(cfg):
    """Product of the hyperplanes dual to a reduced configuration's points."""
    if any(p.mult != 1 for p in cfg.points):
        raise ValueError("dual product expects simple points")
    ring = cfg.ring()
    f = ring.one()
    for p in cfg.points:
        f = f * dual_form(ring, p.coords)
    return f


@dataclass
class GeneratorList:
    generators: list

    def __post_init__(self):
        if not self.generators:
            raise ValueError("need at least one generator")
        ring = self.generators[0].ring
        for g in self.generators:
            if g.ring != ring:
                raise ValueError("generators must share one ring")
            if g.is_zero() or not g.is_homogeneous():
                raise ValueError("generators must be nonzero homogeneous")
        self.ring = ring
        self.degrees = [g.degree() for g in self.generators]

    def __len__(self):
        return len(self.generators)


def jacobian(f):
    """The partial derivatives of a homogeneous form, as a generator list."""
    if not f.is_homogeneous() or f.is_zero():
        raise ValueError("need a nonzero homogeneous form")
    return GeneratorList([f.partial(i) for i in range(f.ring.nvars)])


def jacobian_plus_plane(f, plane):
    """Generators (f_x, ..., f_w, l)."""
    gens = jacobian(f).generators + [plane]
    return GeneratorList(gens)


@dataclass
class SyzygyVector:
    components: list
    graded_degree: int

    def __post_init__(self):
        self.ring = self.components[0].ring

    def check(self, gens):
        total = self.ring.zero()
        for s, g in zip(self.components, gens.generators):
            total = total + s * g
        return total.is_zero()

    def first_block(self, n=4):
        return self.components[:n]


def _domain_layout(gens, t):
    """Column layout of the degree-t multiplication map: (gen index, monomial)."""
    layout = []
    for i, d in enumerate(gens.degrees):
        s_deg = t - d
        if s_deg < 0:
            layout.append([])
        else:
            layout.append(monomial_basis(gens.ring.nvars, s_deg))
    return layout


def _syzygy_matrix(gens, t):
    ring = gens.ring
    layout = _domain_layout(gens, t)
    target = monomial_basis(ring.nvars, t)
    target_index = {m: k for k, m in enumerate(target)}
    columns = []
    for i, monos in enumerate(layout):
        g = gens.generators[i]
        for m in monos:
            col = [field_zero(ring.field)] * len(target)
            for exps, coeff in g.terms.items():
                prod = tuple(a + b for a, b in zip(exps, m))
                col[target_index[prod]] = coeff
            columns.append(col)
    rows = [[col[k] for col in columns] for k in range(len(target))]
    matrix = ExactMatrix(len(target), len(columns), rows, ring.field)
    return matrix, layout


def _vector_to_syzygy(gens, t, vector, layout):
    comps = []
    pos = 0
    for i, monos in enumerate(layout):
        n = len(monos)
        comps.append(from_basis_vector(gens.ring, monos, vector[pos : pos + n])
                     if n else gens.ring.zero())
        pos += n
    return SyzygyVector(comps, t)


def syzygies_in_degree(gens, t):
    """Basis of the degree-t relations among the generators.

    Each returned vector satisfies sum_i s_i g_i = 0 exactly, with s_i
    homogeneous of degree t - deg(g_i) (or zero).  Koszul relations are
    included.
    """
    if t < max(gens.degrees):
        raise ValueError("degree below every two-term relation")
    matrix, layout = _syzygy_matrix(gens, t)
    kernel = kernel_basis(matrix)
    out = []
    for v in kernel:
        syz = _vector_to_syzygy(gens, t, list(v), layout)
        if not syz.check(gens):
            raise RuntimeError("syzygy self-check failed")
        out.append(syz)
    return out


def _koszul_rows(gens, t, layout):
    """Coordinates (in the degree-t domain layout) of all Koszul multiples."""
    ring = gens.ring
    offsets = []
    pos = 0
    index_of = []
    for monos in layout:
        offsets.append(pos)
        index_of.append({m: k for k, m in enumerate(monos)})
        pos += len(monos)
    width = pos
    rows = []
    for i, j in itertools.combinations(range(len(gens)), 2):
        base = gens.degrees[i] + gens.degrees[j]
        if t < base:
            continue
        for m in monomial_basis(ring.nvars, t - base):
            row = [field_zero(ring.field)] * width
            mult_i = ring.monomial(m) * gens.generators[j]
            mult_j = ring.monomial(m) * gens.generators[i]
            for exps, coeff in mult_i.terms.items():
                row[offsets[i] + index_of[i][exps]] = coeff
            for exps, coeff in mult_j.terms.items():
                row[offsets[j] + index_of[j][exps]] = -coeff
            rows.append(row)
    return rows, width


def koszul_data(gens, t):
    """(koszul subspace matrix, its rank) in the degree-t domain coordinates."""
    layout = _domain_layout(gens, t)
    rows, width = _koszul_rows(gens, t, layout)
    if not rows:
        return None, 0
    matrix = ExactMatrix(len(rows), width, rows, gens.ring.field)
    return matrix, rank(matrix)


def _syzygy_coordinates(syz, layout):
    coords = []
    for comp, monos in zip(syz.components, layout):
        coords.extend(comp.coefficient_vector(monos))
    return coords


def is_koszul_combination(gens, syz):
    """True iff the relation lies in the span of the two-term Koszul relations."""
    layout = _domain_layout(gens, syz.graded_degree)
    matrix, base_rank = koszul_data(gens, syz.graded_degree)
    if matrix is None:
        return False
    augmented = matrix.stack(
        ExactMatrix.from_rows([_syzygy_coordinates(syz, layout)], gens.ring.field)
    )
    return rank(augmented) == base_rank


@dataclass
class SyzygyPairOutcome:
    """Result of the least-degree sweep: found / single / not_found."""

    status: str
    t: int | None
    pair: tuple | None
    dimension_by_degree: dict
    space_dimension: int = 0
    single: SyzygyVector | None = None

    @property
    def found(self):
        return self.status == "found"


def least_degree_syzygy_pair(gens, tmax):
    """Sweep degrees upward for the first two-dimensional syzygy space.

    Returns a found outcome with two basis vectors at the least degree whose
    space has dimension >= 2; a single outcome when the first nonzero space
    is one-dimensional; not_found when everything below tmax is zero.
    """
    dims = {}
    start = max(gens.degrees)
    for t in range(start, tmax + 1):
        syz = syzygies_in_degree(gens, t)
        dims[t] = len(syz)
        if len(syz) >= 2:
            return SyzygyPairOutcome("found", t, (syz[0], syz[1]), dims, len(syz))
        if len(syz) == 1:
            return SyzygyPairOutcome("single", t, None, dims, 1, single=syz[0])
    return SyzygyPairOutcome("not_found", None, None, dims)


def least_degree_non_koszul_pair(gens, tmax):
    """First degree carrying two vectors independent modulo the Koszul span."""
    start = max(gens.degrees)
    for t in range(start, tmax + 1):
        syzygies = syzygies_in_degree(gens, t)
        if not syzygies:
            continue
        matrix, base_rank = koszul_data(gens, t)
        layout = _domain_layout(gens, t)
        chosen = []
        current = matrix
        current_rank = base_rank
        for syz in syzygies:
            row = ExactMatrix.from_rows(
                [_syzygy_coordinates(syz, layout)], gens.ring.field
            )
            candidate = current.stack(row) if current is not None else row
            r = rank(candidate)
            if r > current_rank:
                chosen.append(syz)
                current, current_rank = candidate, r
            if len(chosen) == 2:
                return t, tuple(chosen)
    return None, None


# --- the rational maps ---------------------------------------------------------


class SigmaMap:
    """Self-map of P^3 defined by the first four syzygy components."""

    def __init__(self, syzygy):
        comps = syzygy.first_block()
        if all(c.is_zero() for c in comps):
            raise ValueError("all four map components vanish identically")
        self.components = comps
        self.syzygy = syzygy

    def __call__(self, point):
        """Image coordinates, or None where the map is undefined."""
        v = [c.evaluate(point) for c in self.components]
        if all(is_zero(x) for x in v):
            return None
        return v


def _det3(m):
    return (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    )


def phi_plane(q, sq, sq2):
    """Coefficients of the plane through three points of P^3.

    Computed as the four signed 3x3 minors of the stacked coordinate matrix;
    returns None when the points are collinear (all minors vanish), which is
    exactly the degeneracy the conjecture's proof plan must exclude.
    """
    pts = [list(q), list(sq), list(sq2)]
    if any(len(p) != 4 for p in pts):
        raise ValueError("need three points of P^3")
    coeffs = []
    for k in range(4):
        minor = [[row[c] for c in range(4) if c != k] for row in pts]
        sign = 1 if k % 2 == 0 else -1
        coeffs.append(sign * _det3(minor))
    if all(is_zero(c) for c in coeffs):
        return None
    return coeffs


def plane_basis(coeffs, fieldtag=RATIONAL):
    """Three independent points spanning the plane with these coefficients."""
    matrix = ExactMatrix.from_rows([list(coeffs)], fieldtag)
    basis = kernel_basis(matrix)
    return [list(v) for v in basis]


def line_basis(coeffs_a, coeffs_b, fieldtag=RATIONAL):
    """Two independent points spanning the intersection of two planes."""
    matrix = ExactMatrix.from_rows([list(coeffs_a), list(coeffs_b)], fieldtag)
    basis = kernel_basis(matrix)
    if len(basis) != 2:
        raise ValueError("planes do not meet in a line")
    return [list(v) for v in basis]


def _combine(points, weights, fieldtag=RATIONAL):
    out = [field_zero(fieldtag)] * len(points[0])
    for pt, wgt in zip(points, weights):
        w = as_scalar(wgt, fieldtag)
        for k, c in enumerate(pt):
            out[k] = out[k] + w * c
    return out


def restrict_to_plane(poly, span):
    """Restriction of a form to a plane, as a form in the span parameters."""
    params = Ring(tuple(f"u{i}" for i in range(len(span))), poly.ring.field)
    uvars = params.variables()
    images = []
    for k in range(poly.ring.nvars):
        acc = params.zero()
        for u, pt in zip(uvars, span):
            acc = acc + u * pt[k]
        images.append(acc)
    return poly.substitute(images)


# --- the conjecture harness --------------------------------------------------


@dataclass
class RemarkLineSample:
    point_index: int
    samples_defined: int
    samples_skipped: int
    sigma_on_dual_plane: bool
    plane_equals_dual_point: bool
    degenerate_samples: int


@dataclass
class PairProbe:
    """Exact incidence probes for one syzygy pair on one random plane."""

    degree: int
    koszul_flags: tuple
    independent_mod_koszul: bool
    remark1: list
    remark1_ok: bool
    condition_b_samples: list
    remark2_checked: int
    remark2_ok: bool
    image_points: list

    def summary(self):
        return {
            "degree": self.degree,
            "koszul_flags": list(self.koszul_flags),
            "independent_mod_koszul": self.independent_mod_koszul,
            "remark1": [s.__dict__ for s in self.remark1],
            "remark1_ok": self.remark1_ok,
            "condition_b": self.condition_b_samples,
            "remark2_checked": self.remark2_checked,
            "remark2_ok": self.remark2_ok,
            "image_samples": len(self.image_points),
        }


@dataclass
class HarnessReport:
    label: str
    seed: int
    plane_coeffs: list
    pair_status: str
    syzygy_degree: int | None
    syzygy_space_dimension: int
    dimension_by_degree: dict
    least_degree_probe: PairProbe | None
    effective_probe: PairProbe | None
    effective_degree: int | None
    image_degree: int | None
    image_vdim: int | None
    image_through_duals: list
    image_multiplicity_at_plane_point: int | None
    image_expected_dim: int | None
    indices: dict
    notes: list = dc_field(default_factory=list)

    def exact_identities_hold(self):
        probes = [p for p in (self.least_degree_probe, self.effective_probe) if p]
        return all(p.remark1_ok and p.remark2_ok for p in probes)

    def summary(self):
        return {
            "label": self.label,
            "seed": self.seed,
            "plane": self.plane_coeffs,
            "pair_status": self.pair_status,
            "syzygy_degree": self.syzygy_degree,
            "syzygy_space_dimension": self.syzygy_space_dimension,
            "dimension_by_degree": {
                str(k): v for k, v in self.dimension_by_degree.items()
            },
            "least_degree_probe": (
                self.least_degree_probe.summary() if self.least_degree_probe else None
            ),
            "effective_probe": (
                self.effective_probe.summary() if self.effective_probe else None
            ),
            "effective_degree": self.effective_degree,
            "image_degree": self.image_degree,
            "image_vdim": self.image_vdim,
            "image_through_duals": self.image_through_duals,
            "image_multiplicity_at_plane_point": self.image_multiplicity_at_plane_point,
            "image_expected_dim": self.image_expected_dim,
            "indices": self.indices,
            "notes": self.notes,
        }


def _random_plane(rng, cfg):
    ring = cfg.ring()
    while True:
        coeffs = [as_scalar(rng.randint(-9, 9), cfg.field) for _ in range(4)]
        if all(is_zero(c) for c in coeffs):
            continue
        if any(projectively_equal(coeffs, list(p.coords)) for p in cfg.points):
            continue
        return coeffs, dual_form(ring, coeffs)


def _probe_pair(cfg, gens, pair, plane_coeffs, span, rng, samples):
    """Sample every advertised incidence for one pair; everything exact."""
    sigma = SigmaMap(pair[0])
    sigma2 = SigmaMap(pair[1])
    ring = cfg.ring()

    remark1 = []
    remark1_ok = True
    for idx, pt in enumerate(cfg.points):
        dual_coeffs = list(pt.coords)
        basis = line_basis(plane_coeffs, dual_coeffs, cfg.field)
        li_form = dual_form(ring, dual_coeffs)
        defined = skipped = degenerate = 0
        on_plane = equals_dual = True
        seen = []
        attempts = 0
        while defined < 3 and attempts < 40:
            attempts += 1
            wgt = [rng.randint(-30, 30), rng.randint(-30, 30)]
            if all(w == 0 for w in wgt):
                continue
            q = _combine(basis, wgt, cfg.field)
            if all(is_zero(x) for x in q):
                continue
            if any(projectively_equal(q, s) for s in seen):
                continue
            sq, sq2 = sigma(q), sigma2(q)
            if sq is None or sq2 is None:
                skipped += 1
                continue
            seen.append(q)
            defined += 1
            if not (is_zero(li_form.evaluate(sq)) and is_zero(li_form.evaluate(sq2))):
                on_plane = False
            phi = phi_plane(q, sq, sq2)
            if phi is None:
                degenerate += 1
            elif not projectively_equal(phi, dual_coeffs):
                equals_dual = False
        remark1.append(
            RemarkLineSample(
                point_index=idx,
                samples_defined=defined,
                samples_skipped=skipped,
                sigma_on_dual_plane=on_plane,
                plane_equals_dual_point=equals_dual,
                degenerate_samples=degenerate,
            )
        )
        if not (on_plane and equals_dual):
            remark1_ok = False

    plane_form = dual_form(ring, plane_coeffs)
    condition_b = []
    remark2_checked = 0
    remark2_ok = True
    image_points = []
    for _ in range(samples):
        wgt = [rng.randint(-30, 30) for _ in range(3)]
        if all(w == 0 for w in wgt):
            continue
        q = _combine(span, wgt, cfg.field)
        if all(is_zero(x) for x in q):
            continue
        sq, sq2 = sigma(q), sigma2(q)
        if sq is None or sq2 is None:
            condition_b.append("undefined")
            continue
        condition_b.append(
            "proportional" if projectively_equal(sq, sq2) else "independent"
        )
        phi = phi_plane(q, sq, sq2)
        if phi is None:
            continue
        if is_zero(plane_form.evaluate(sq)) and is_zero(plane_form.evaluate(sq2)):
            remark2_checked += 1
            if not projectively_equal(phi, plane_coeffs):
                remark2_ok = False
        if not any(projectively_equal(phi, u) for u in image_points):
            image_points.append(phi)

    koszul_flags = tuple(is_koszul_combination(gens, s) for s in pair)
    t = pair[0].graded_degree
    layout = _domain_layout(gens, t)
    matrix, base_rank = koszul_data(gens, t)
    rows = ExactMatrix.from_rows(
        [_syzygy_coordinates(s, layout) for s in pair], gens.ring.field
    )
    stacked = matrix.stack(rows) if matrix is not None else rows
    independent = rank(stacked) >= base_rank + 2

    return PairProbe(
        degree=t,
        koszul_flags=koszul_flags,
        independent_mod_koszul=independent,
        remark1=remark1,
        remark1_ok=remark1_ok,
        condition_b_samples=condition_b,
        remark2_checked=remark2_checked,
        remark2_ok=remark2_ok,
        image_points=image_points,
    )


def conjecture_harness(cfg, tmax=8, samples=25, rng=None, jmax=4, index_trials=3):
    """Assemble the syzygy construction for a configuration and test it.

    The least-degree pair is always probed.  When its plane map degenerates
    along the chosen plane (which is forced whenever the syzygy space at the
    least degree is one-dimensional modulo the Koszul relations), the least
    pair that is independent modulo Koszul is probed as well, clearly
    labeled.  All incidence statements are checked exactly at sample points;
    the image interpolation is descriptive.
    """
    if cfg.ambient_dim != 3:
        raise ValueError("the construction lives in P^3")
    if any(p.mult != 1 for p in cfg.points):
        raise ValueError("needs a reduced configuration")
    rng = rng or Rng(1)
    seed = rng.seed
    notes = []

    f = dual_plane_product(cfg)
    plane_coeffs, plane = _random_plane(rng, cfg)
    gens = jacobian_plus_plane(f, plane)

    outcome = least_degree_syzygy_pair(gens, tmax)
    indices = index_sweep(cfg, jmax, trials=index_trials, rng=rng.split()).summary()

    report = HarnessReport(
        label=cfg.label,
        seed=seed,
        plane_coeffs=[str(c) for c in plane_coeffs],
        pair_status=outcome.status,
        syzygy_degree=outcome.t,
        syzygy_space_dimension=outcome.space_dimension,
        dimension_by_degree=outcome.dimension_by_degree,
        least_degree_probe=None,
        effective_probe=None,
        effective_degree=None,
        image_degree=None,
        image_vdim=None,
        image_through_duals=[],
        image_multiplicity_at_plane_point=None,
        image_expected_dim=None,
        indices=indices,
        notes=notes,
    )
    if not outcome.found:
        notes.append("no syzygy pair at or below the degree bound")
        return report

    span = plane_basis(plane_coeffs, cfg.field)
    probe = _probe_pair(cfg, gens, outcome.pair, plane_coeffs, span, rng, samples)
    report.least_degree_probe = probe
    image_points = probe.image_points

    if not image_points:
        notes.append(
            "plane map of the least-degree pair is degenerate along the plane"
        )
        t_nk, nk_pair = least_degree_non_koszul_pair(gens, tmax)
        same = t_nk == outcome.t and probe.independent_mod_koszul
        if nk_pair is not None and not same:
            effective = _probe_pair(
                cfg, gens, nk_pair, plane_coeffs, span, rng, samples
            )
            report.effective_probe = effective
            report.effective_degree = t_nk
            image_points = effective.image_points
        else:
            notes.append("no pair independent modulo Koszul below the bound")

    if len(image_points) >= 5:
        dual_cfg = simple_points_config(
            3, [tuple(p) for p in image_points], cfg.field, label="phi-image-sample"
        )
        for e in range(1, 7):
            res = linear_system(dual_cfg, e, check_kernel=False)
            if res.vdim_actual > 0:
                report.image_degree = e
                report.image_vdim = res.vdim_actual
                if res.vdim_actual == 1:
                    ring = dual_cfg.ring()
                    surface = res.kernel_polys(ring)[0]
                    report.image_through_duals = [
                        is_zero(surface.evaluate(list(p.coords)))
                        for p in cfg.points
                    ]
                    m = 0
                    while surface.vanishes_to_order(plane_coeffs, m + 1):
                        m += 1
                    report.image_multiplicity_at_plane_point = m
                    if m > 0:
                        report.image_expected_dim = expected_dim(
                            3, e, [1] * len(cfg.points) + [m]
                        )
                break
    else:
        notes.append("too few distinct image samples for interpolation")

    return report
