"""Randomized instance generation and the theorem-verification harness.

Instances are towers over GF(32003) in at most three variables with
generator degrees at most three and at most two extension steps.  Every
instance is reproducible from one integer seed, and failure summaries
embed the command that regenerates the failing instance.

Families:
  * complete-intersection bases (accepted only when the local dimension
    check confirms the expected codimension), optionally Koszul-extended:
    local-CM towers for the amplitude/dimension-drop verifications;
  * smooth-at-the-point complete intersections with full Jacobian rank,
    carrying a stock of rational points that lie on the locus by
    construction (coefficient vectors are sampled from the kernel of the
    evaluation matrix): sequence-regular instances for the residue-field,
    derived-quotient, localization-sampling, and Nakayama verifications;
  * trivial-extension and singular-quotient towers mixed in for the
    central-equivalence profile.

Every corpus run re-executes the engine self-consistency checks (two-sided
basis membership, syzygy soundness and a completeness spot-check,
square-zero differentials, order-independence of dimension).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from itertools import permutations

from .dgring import DGRingSpec, KoszulStep, TrivExtStep, realize
from .errors import BudgetExceeded, ToolkitError
from .fields import PrimeField
from .groebner import (
    GREVLEX,
    Ideal,
    LEX,
    check_groebner_two_sided,
    check_syzygies_complete,
)
from .modules import rref_pivots
from .points import find_points_on_locus, jacobian_rank_at
from .poly import Poly, PolyRing
from .regularity import (
    VerifyRecord,
    is_sequence_regular,
    nakayama_check,
    regularity_report,
    residue_dg_field,
    seq_regular_at_points,
    verify_derived_quotient,
    verify_double_cm,
    verify_gl_invariance,
    verify_kos_amp,
    verify_main,
    verify_sop,
)

__all__ = [
    "CORPUS_FIELD",
    "PROFILES",
    "CorpusInstance",
    "generate_instance",
    "run_verifier_on_instance",
    "run_corpus",
    "instance_document",
    "derive_seed",
    "engine_self_checks",
]

CORPUS_FIELD = PrimeField(32003)

PROFILES = (
    "kos-amp",
    "sop",
    "double-cm",
    "gl",
    "main",
    "derived-quotient",
    "redka",
    "nakayama",
    "serre-points",
)

_SEQREG_PROFILES = {"derived-quotient", "redka", "nakayama", "serre-points"}
_CM_PROFILES = {"kos-amp", "sop", "double-cm"}


def derive_seed(seed: int, index: int) -> int:
    return (seed * 1_000_003 + index * 7919 + 1) & 0x7FFFFFFF


@dataclass
class CorpusInstance:
    spec: DGRingSpec
    seed: int
    kind: str
    elements: tuple = ()
    points: tuple = ()
    matrix: tuple | None = None
    module_elements: tuple = ()


# ---------------------------------------------------------------------------
# random polynomial machinery
# ---------------------------------------------------------------------------


def _monomials_of_degree_at_most(n: int, d: int):
    out = []

    def rec(prefix, remaining, budget):
        if remaining == 0:
            out.append(tuple(prefix))
            return
        for e in range(budget + 1):
            rec(prefix + [e], remaining - 1, budget - e)

    rec([], n, d)
    return [m for m in sorted(out) if sum(m) >= 1]


def random_vanishing_poly(ring: PolyRing, rng: random.Random, maxdeg: int = 3,
                          curve=None) -> Poly:
    """A random polynomial with zero constant term; with ``curve`` given,
    one vanishing identically along that parametrized curve.

    The curve is a pair (a, b) of coordinate vectors for t -> a*t + b*t^2,
    which passes through the origin; vanishing along it is a small set of
    linear conditions on the coefficient vector (one per power of t), so a
    random kernel element is exactly on the locus by construction."""
    fld = ring.field
    monos = _monomials_of_degree_at_most(ring.n, maxdeg)
    if curve is None:
        while True:
            terms = {}
            for m in monos:
                if rng.random() < 0.45:
                    c = fld.random(rng)
                    if not fld.is_zero(c):
                        terms[m] = c
            p = Poly(ring, terms)
            if not p.is_zero():
                return p
    a, b = curve
    max_t = 2 * maxdeg
    rows = [[fld.zero] * len(monos) for _ in range(max_t)]
    for col, m in enumerate(monos):
        # m(a t + b t^2) as a polynomial in t
        tpoly = [fld.one]
        for i, e in enumerate(m):
            for _ in range(e):
                nxt = [fld.zero] * (len(tpoly) + 2)
                for d, c in enumerate(tpoly):
                    nxt[d + 1] = fld.add(nxt[d + 1], fld.mul(c, a[i]))
                    nxt[d + 2] = fld.add(nxt[d + 2], fld.mul(c, b[i]))
                tpoly = nxt
        for d, c in enumerate(tpoly):
            if d == 0:
                continue
            if d - 1 < max_t:
                rows[d - 1][col] = fld.add(rows[d - 1][col], c)
    kernel = _nullspace(rows, len(monos), fld)
    if not kernel:
        raise ToolkitError("no nonzero polynomial vanishes along the curve")
    while True:
        coeffs = [fld.zero] * len(monos)
        for vec in kernel:
            c = fld.random(rng)
            coeffs = [fld.add(u, fld.mul(c, v)) for u, v in zip(coeffs, vec)]
        terms = {m: c for m, c in zip(monos, coeffs) if not fld.is_zero(c)}
        p = Poly(ring, terms)
        if not p.is_zero():
            return p


def _nullspace(rows, ncols: int, fld):
    """Basis of the right kernel of a small dense matrix."""
    mat = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, len(mat)):
            if not fld.is_zero(mat[i][c]):
                pr = i
                break
        if pr is None:
            continue
        mat[r], mat[pr] = mat[pr], mat[r]
        inv = fld.inv(mat[r][c])
        mat[r] = [fld.mul(v, inv) for v in mat[r]]
        for i in range(len(mat)):
            if i != r and not fld.is_zero(mat[i][c]):
                f = mat[i][c]
                mat[i] = [fld.sub(v, fld.mul(f, w)) for v, w in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for fcol in free:
        vec = [fld.zero] * ncols
        vec[fcol] = fld.one
        for i, pcol in enumerate(pivots):
            vec[pcol] = fld.neg(mat[i][fcol])
        basis.append(vec)
    return basis


def random_gl_matrix(ring: PolyRing, rng: random.Random, n: int):
    """A random matrix over the ring whose determinant is a local unit:
    permutation times unipotent triangulars times a unit diagonal."""
    fld = ring.field
    zero, one = ring.zero(), ring.one()

    def random_entry():
        if rng.random() < 0.5:
            return ring.const(fld.random(rng))
        return random_vanishing_poly(ring, rng, maxdeg=2)

    lower = [[one if i == j else zero for j in range(n)] for i in range(n)]
    upper = [[one if i == j else zero for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(n):
            if i > j and rng.random() < 0.6:
                lower[i][j] = random_entry()
            if i < j and rng.random() < 0.6:
                upper[i][j] = random_entry()
    diag = [
        ring.const(fld.random_nonzero(rng)) + random_vanishing_poly(ring, rng, 2)
        if rng.random() < 0.5
        else ring.const(fld.random_nonzero(rng))
        for _ in range(n)
    ]
    perm = list(range(n))
    rng.shuffle(perm)

    def matmul(a, b):
        return [
            [
                sum((a[i][k] * b[k][j] for k in range(n)), zero)
                for j in range(n)
            ]
            for i in range(n)
        ]

    d_mat = [[diag[i] if i == j else zero for j in range(n)] for i in range(n)]
    p_mat = [[one if perm[i] == j else zero for j in range(n)] for i in range(n)]
    return matmul(p_mat, matmul(lower, matmul(upper, d_mat)))


# ---------------------------------------------------------------------------
# instance generation
# ---------------------------------------------------------------------------


def _var_names(n: int):
    return ("x", "y", "z")[:n]


def _random_points(ring, rng, count):
    fld = ring.field
    pts = set()
    while len(pts) < count:
        pt = tuple(fld.random(rng) for _ in range(ring.n))
        if any(not fld.is_zero(c) for c in pt):
            pts.add(pt)
    return sorted(pts)


def _ci_base(ring, rng, codim, through=(), attempts=60):
    """Generators cutting the local dimension to n - codim exactly."""
    for _ in range(attempts):
        gens = tuple(
            random_vanishing_poly(ring, rng, maxdeg=3, through=through)
            for _ in range(codim)
        )
        if codim == 0:
            return gens
        ideal = Ideal(ring, gens)
        if ideal.dim_local_at_origin() == ring.n - codim:
            return gens
    raise ToolkitError("could not sample a complete-intersection base")


def _random_curve(ring, rng):
    """A parametrized curve t -> a t + b t^2 through the origin with a
    nonzero direction; b is often zero (a straight line)."""
    fld = ring.field
    while True:
        a = [fld.random(rng) for _ in range(ring.n)]
        if any(not fld.is_zero(c) for c in a):
            break
    if rng.random() < 0.5:
        b = [fld.zero] * ring.n
    else:
        b = [fld.random(rng) for _ in range(ring.n)]
    return a, b


def _curve_points(ring, rng, curve, count):
    fld = ring.field
    a, b = curve
    pts = set()
    guard = 0
    while len(pts) < count and guard < 50 * count:
        guard += 1
        t = fld.random_nonzero(rng)
        t2 = fld.mul(t, t)
        pt = tuple(
            fld.add(fld.mul(a[i], t), fld.mul(b[i], t2)) for i in range(ring.n)
        )
        if any(not fld.is_zero(c) for c in pt):
            pts.add(pt)
    return sorted(pts)


def _smooth_ci_tower(ring, rng, npoints, attempts=200):
    """A Koszul tower over a complete-intersection base whose locus
    contains a parametrized curve, smooth (full Jacobian rank) at the
    origin and at sampled curve points.  The Jacobian criterion is the
    independent route that guarantees sequence-regularity at those points
    before the engine ever runs."""
    n = ring.n
    for _ in range(attempts):
        curve = _random_curve(ring, rng)
        points = _curve_points(ring, rng, curve, npoints)
        if len(points) < npoints:
            continue
        codim_base = rng.randint(0, n - 1)
        k = rng.randint(0, min(2, (n - 1) - codim_base))
        total = codim_base + k
        gens = tuple(
            random_vanishing_poly(ring, rng, maxdeg=3, curve=curve)
            for _ in range(total)
        )
        base, elems = gens[:codim_base], gens[codim_base:]
        all_gens = list(gens)
        if total:
            ideal = Ideal(ring, tuple(all_gens))
            if ideal.dim_local_at_origin() != n - total:
                continue
            if codim_base:
                if Ideal(ring, base).dim_local_at_origin() != n - codim_base:
                    continue
            ok = jacobian_rank_at(all_gens, (ring.field.zero,) * n) == total
            if ok:
                for pt in points:
                    if jacobian_rank_at(all_gens, pt) != total:
                        ok = False
                        break
            if not ok:
                continue
        steps = (KoszulStep(elems),) if elems else ()
        return DGRingSpec(ring, base, steps), tuple(points)
    raise ToolkitError("could not sample a smooth tower along a curve")


def generate_instance(profile: str, seed: int) -> CorpusInstance:
    """Deterministically generate one instance for a verification profile."""
    if profile not in PROFILES:
        raise ValueError(f"unknown profile {profile!r}; choose from {PROFILES}")
    rng = random.Random(seed)
    fld = CORPUS_FIELD
    # a nonzero low-degree polynomial through ten points needs room: the
    # point-carrying profiles work in at least two variables
    n = rng.randint(2, 3) if profile in _SEQREG_PROFILES else rng.randint(1, 3)
    ring = PolyRing(fld, _var_names(n))

    if profile in _SEQREG_PROFILES:
        spec, points = _smooth_ci_tower(ring, rng, 10)
        real = realize(spec)
        mingens = real.minimal_generators()
        elements = _choose_quotient_elements(ring, rng, mingens)
        module_elements = _choose_module_elements(ring, rng)
        return CorpusInstance(
            spec=spec,
            seed=seed,
            kind=profile,
            elements=elements,
            points=points,
            module_elements=module_elements,
        )

    if profile in _CM_PROFILES or profile == "gl":
        codim = rng.randint(0, max(0, n - 1))
        base = _ci_base(ring, rng, codim)
        steps = ()
        if rng.random() < 0.5 and n - codim >= 1:
            k = rng.randint(1, min(2, n - codim))
            elems = tuple(
                random_vanishing_poly(ring, rng, maxdeg=2) for _ in range(k)
            )
            steps = (KoszulStep(elems),)
        spec = DGRingSpec(ring, base, steps)
        count = rng.randint(1, max(1, min(2, n)))
        elements = tuple(
            random_vanishing_poly(ring, rng, maxdeg=2) for _ in range(count)
        )
        matrix = None
        if profile == "gl":
            matrix = tuple(
                tuple(row) for row in random_gl_matrix(ring, rng, count)
            )
        return CorpusInstance(
            spec=spec, seed=seed, kind=profile, elements=elements, matrix=matrix
        )

    # "main": broad mix of shapes
    shape = rng.random()
    if shape < 0.45:
        codim = rng.randint(0, max(0, n - 1))
        base = _ci_base(ring, rng, codim)
        steps = ()
        if rng.random() < 0.6 and n - codim >= 1:
            k = rng.randint(1, min(2, n - codim))
            steps = (
                KoszulStep(
                    tuple(
                        random_vanishing_poly(ring, rng, maxdeg=2)
                        for _ in range(k)
                    )
                ),
            )
        spec = DGRingSpec(ring, base, steps)
    elif shape < 0.75:
        # singular quotients: products and powers
        a = random_vanishing_poly(ring, rng, maxdeg=1)
        b = random_vanishing_poly(ring, rng, maxdeg=2)
        base = (a * b,)
        steps = ()
        if rng.random() < 0.5:
            steps = (KoszulStep((random_vanishing_poly(ring, rng, maxdeg=2),)),)
        spec = DGRingSpec(ring, base, steps)
    else:
        # trivial extensions over a (possibly trivial) quotient base
        codim = rng.randint(0, max(0, n - 1))
        base = _ci_base(ring, rng, codim)
        shift = rng.randint(1, 2)
        rels = tuple((ring.var(i),) for i in range(n))
        steps = (TrivExtStep(1, rels, shift),)
        if rng.random() < 0.3:
            steps = steps + (
                KoszulStep((random_vanishing_poly(ring, rng, maxdeg=2),)),
            )
        spec = DGRingSpec(ring, base, steps)
    return CorpusInstance(spec=spec, seed=seed, kind="main")


def _choose_quotient_elements(ring, rng, mingens):
    """Elements for the derived-quotient verification: subsets of the
    minimal generators, small transforms of them, or fresh random elements
    (which usually leave the quotient singular)."""
    fld = ring.field
    pool = list(mingens)
    pick = rng.random()
    if pool and pick < 0.5:
        count = rng.randint(1, len(pool))
        chosen = rng.sample(pool, count)
        out = []
        for g in chosen:
            extra = (
                random_vanishing_poly(ring, rng, 2).scale(fld.random(rng))
                if rng.random() < 0.4
                else ring.zero()
            )
            out.append(g + g * extra if rng.random() < 0.3 else g + extra * g)
        return tuple(p for p in out if not p.is_zero()) or (pool[0],)
    if pool and pick < 0.8:
        g = rng.choice(pool)
        return (g * g,) if rng.random() < 0.5 else (g + g * g,)
    return (random_vanishing_poly(ring, rng, 2),)


def _choose_module_elements(ring, rng):
    fld = ring.field
    count = rng.randint(1, 2)
    out = []
    for _ in range(count):
        p = random_vanishing_poly(ring, rng, 2)
        if rng.random() < 0.35:
            p = p + ring.const(fld.random_nonzero(rng))  # a local unit
        out.append(p)
    return tuple(out)


# ---------------------------------------------------------------------------
# dispatch and self-checks
# ---------------------------------------------------------------------------


def engine_self_checks(real, rng: random.Random) -> dict:
    """Per-instance engine consistency: two-sided basis membership,
    dimension order-independence, and a syzygy completeness spot-check on
    the relation columns of the bottom cohomology."""
    out = {}
    j_a = real.j_a
    out["groebner_two_sided"] = check_groebner_two_sided(j_a)
    out["dim_order_independent"] = (
        j_a.dim_global(GREVLEX) == j_a.dim_global(LEX)
    )
    bottom = real.bottom_cohomology()
    vectors = [list(c) for c in bottom.relations][:4]
    if len(vectors) >= 2:
        perm = list(range(len(vectors)))
        rng.shuffle(perm)
        out["syzygies_complete"] = check_syzygies_complete(
            vectors, bottom.gens, real.ring, tuple(perm)
        )
    else:
        out["syzygies_complete"] = True
    return out


def run_verifier_on_instance(name: str, inst: CorpusInstance, trials: int,
                             rng: random.Random) -> VerifyRecord:
    spec = inst.spec
    real = realize(spec)
    if name == "kos-amp":
        return verify_kos_amp(real, inst.elements, trials, rng)
    if name == "sop":
        return verify_sop(real, inst.elements, trials, rng)
    if name == "double-cm":
        return verify_double_cm(real, inst.elements, trials, rng)
    if name == "gl":
        elements = inst.elements or real.minimal_generators()
        matrix = inst.matrix
        if matrix is None:
            matrix = tuple(
                tuple(row) for row in random_gl_matrix(real.ring, rng, len(elements))
            )
        return verify_gl_invariance(real, elements, matrix)
    if name == "main":
        return verify_main(real, inst.points, trials, rng, spec=spec)
    if name == "derived-quotient":
        try:
            return verify_derived_quotient(real, inst.elements, trials, rng)
        except ToolkitError:
            return VerifyRecord(
                name=name, ok=None, taint="certified",
                details={"precondition": "hypotheses not satisfied"},
            )
    if name == "redka":
        seqreg = is_sequence_regular(real)
        if not seqreg.value:
            return VerifyRecord(
                name=name, ok=None, taint="certified",
                details={"precondition": "tower is not sequence-regular"},
            )
        kappa = residue_dg_field(real, seqreg)
        return VerifyRecord(
            name=name,
            ok=kappa.consistent and kappa.flat_dim == real.local_dim(),
            taint="certified",
            details=kappa.to_dict(),
        )
    if name == "nakayama":
        seqreg = is_sequence_regular(real)
        if not seqreg.value:
            return VerifyRecord(
                name=name, ok=None, taint="certified",
                details={"precondition": "tower is not sequence-regular"},
            )
        return nakayama_check(real, inst.module_elements, seqreg)
    if name == "serre-points":
        seqreg = is_sequence_regular(real)
        if not seqreg.value:
            return VerifyRecord(
                name=name, ok=None, taint="certified",
                details={"precondition": "tower is not sequence-regular"},
            )
        verdicts = seq_regular_at_points(spec, inst.points)
        failures = [
            [str(c) for c in pt] for pt, value in verdicts if not value
        ]
        return VerifyRecord(
            name=name,
            ok=not failures,
            taint="certified",
            details={
                "points_checked": len(verdicts),
                "failures": failures,
            },
        )
    raise ValueError(f"unknown verifier {name!r}")


def instance_document(inst: CorpusInstance) -> str:
    """DSL text regenerating the instance (for reproduction by hand)."""
    spec = inst.spec
    ring = spec.ring
    fld = ring.field
    lines = [
        f"field {fld.p if isinstance(fld, PrimeField) else 'QQ'}",
        f"vars {' '.join(ring.names)}",
        f"quotient [{', '.join(str(g) for g in spec.base)}]",
    ]
    for step in spec.steps:
        if isinstance(step, KoszulStep):
            lines.append(f"koszul [{', '.join(str(e) for e in step.elements)}]")
        else:
            cols = ", ".join(
                "[" + ", ".join(str(p) for p in col) + "]"
                for col in step.relations
            )
            lines.append(
                f"trivext shift={step.shift} gens={step.gens} rels=[{cols}]"
            )
    if inst.elements:
        lines.append(f"elements [{', '.join(str(e) for e in inst.elements)}]")
    if inst.module_elements:
        lines.append(
            f"module [{', '.join(str(e) for e in inst.module_elements)}]"
        )
    if inst.points:
        pts = ", ".join(
            "(" + ", ".join(str(c) for c in pt) + ")" for pt in inst.points
        )
        lines.append(f"points [{pts}]")
    lines.append(f"label corpus-{inst.kind}-{inst.seed}")
    return "\n".join(lines) + "\n"


def run_corpus(profile: str, count: int, seed: int, trials: int = 32,
               self_check: bool = True) -> dict:
    """Generate ``count`` instances of a profile and aggregate verdicts.

    Instances whose hypotheses fail are regenerated (bounded retries) for
    the hypothesis-bound profiles, so the requested count of applicable
    instances is reached; failures carry reproduction commands.
    """
    passes = 0
    not_applicable = 0
    counterexamples = []
    exhausted = []
    budget_hits = []
    self_check_failures = []
    index = 0
    produced = 0
    max_index = count * 30
    while produced < count and index < max_index:
        child = derive_seed(seed, index)
        index += 1
        rng = random.Random(child ^ 0x5EED)
        try:
            inst = generate_instance(profile, child)
        except ToolkitError:
            continue
        try:
            record = run_verifier_on_instance(profile, inst, trials, rng)
        except BudgetExceeded as exc:
            budget_hits.append(
                {"seed": child, "what": str(exc), "repro": _repro(profile, child)}
            )
            produced += 1
            continue
        if record.ok is None:
            not_applicable += 1
            continue  # regenerate: hypotheses did not hold
        produced += 1
        if self_check:
            checks = engine_self_checks(realize(inst.spec), rng)
            if not all(checks.values()):
                self_check_failures.append(
                    {"seed": child, "checks": checks, "repro": _repro(profile, child)}
                )
        if record.exhausted:
            exhausted.append({"seed": child, "repro": _repro(profile, child)})
        elif record.ok:
            passes += 1
        else:
            counterexamples.append(
                {
                    "seed": child,
                    "details": record.details,
                    "repro": _repro(profile, child),
                }
            )
    return {
        "profile": profile,
        "requested": count,
        "produced": produced,
        "passes": passes,
        "not_applicable_regenerated": not_applicable,
        "counterexamples": counterexamples,
        "exhausted": exhausted,
        "budget_exceeded": budget_hits,
        "self_check_failures": self_check_failures,
        "seed": seed,
        "trials": trials,
    }


def _repro(profile: str, child_seed: int) -> str:
    return f"dgtower verify {profile} --random --seed {child_seed}"
