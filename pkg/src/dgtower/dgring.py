"""DG-ring towers and their realizations.

A tower is a quotient base S/J localized at a rational point (moved to the
origin by translation), followed by extension steps: a Koszul extension by
elements of the maximal ideal of the current degree-zero cohomology, or a
trivial (square-zero) extension by a module placed in a strictly negative
degree.  Realizing a tower produces the underlying explicit complex, the
accumulated degree-zero quotient ideal, cached cohomology, and the
amplitude profile measured locally at the point.

Koszul sign convention for the total complex:
    d(e_I . m) = sum_j (-1)^(j+1) a_(i_j) e_(I\\i_j) . m + (-1)^|I| e_I . d(m)
The square of the assembled differential vanishes identically as a matrix
of polynomials, which is asserted at construction; cohomology does not
depend on the convention.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import combinations

from .errors import ArityMismatch, InvalidTower, ToolkitError
from .groebner import EMPTY_SPECTRUM, Ideal
from .modules import ComplexOfModules, ModuleMap, PresentedModule, rref_pivots
from .poly import GREVLEX, Poly, PolyRing

__all__ = [
    "KoszulStep",
    "TrivExtStep",
    "DGRingSpec",
    "AmplitudeProfile",
    "DGRingRealization",
    "realize",
    "koszul",
    "localize_at_point",
    "has_constant_amplitude",
]


@dataclass(frozen=True)
class KoszulStep:
    """Extension by the Koszul pattern on polynomial lifts of elements of
    the maximal ideal of the current degree-zero cohomology."""

    elements: tuple

    def __init__(self, elements):
        object.__setattr__(self, "elements", tuple(elements))


@dataclass(frozen=True)
class TrivExtStep:
    """Square-zero extension by a module in degree -shift (shift >= 1).

    The module is given by a generator count and relation columns over the
    current degree-zero cohomology ring; the current quotient ideal is
    adjoined to the relations when the step is realized.
    """

    gens: int
    relations: tuple
    shift: int

    def __init__(self, gens: int, relations, shift: int):
        object.__setattr__(self, "gens", gens)
        object.__setattr__(self, "relations", tuple(tuple(c) for c in relations))
        object.__setattr__(self, "shift", shift)


@dataclass(frozen=True)
class DGRingSpec:
    """A tower: base quotient ideal, ordered extension steps, and an
    optional rational base point (default: the origin)."""

    ring: PolyRing
    base: tuple
    steps: tuple = ()
    point: tuple | None = None
    label: str = ""

    def __init__(self, ring, base, steps=(), point=None, label=""):
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "base", tuple(base))
        object.__setattr__(self, "steps", tuple(steps))
        if point is not None:
            point = tuple(ring.field.of(c) for c in point)
            if len(point) != ring.n:
                raise ArityMismatch("base point length must match variable count")
        object.__setattr__(self, "point", point)
        object.__setattr__(self, "label", label)

    def translated(self, point) -> "DGRingSpec":
        """The same tower with every defining polynomial translated so that
        ``point`` becomes the origin."""
        pt = tuple(self.ring.field.of(c) for c in point)
        base = tuple(g.translate(pt) for g in self.base)
        steps = []
        for step in self.steps:
            if isinstance(step, KoszulStep):
                steps.append(KoszulStep(tuple(e.translate(pt) for e in step.elements)))
            else:
                rels = tuple(
                    tuple(p.translate(pt) for p in col) for col in step.relations
                )
                steps.append(TrivExtStep(step.gens, rels, step.shift))
        return DGRingSpec(self.ring, base, tuple(steps), None, self.label)

    def with_extra_koszul(self, elements) -> "DGRingSpec":
        return DGRingSpec(
            self.ring,
            self.base,
            self.steps + (KoszulStep(tuple(elements)),),
            self.point,
            self.label,
        )

    def koszul_element_count(self) -> int:
        return sum(
            len(s.elements) for s in self.steps if isinstance(s, KoszulStep)
        )


@dataclass(frozen=True)
class AmplitudeProfile:
    """inf/sup/amp of the realized tower, counted locally at the base
    point: a degree contributes only when its cohomology does not localize
    to zero there."""

    inf: int
    sup: int
    amp: int


def koszul(spec: DGRingSpec, elements) -> DGRingSpec:
    """Append a Koszul step to a tower."""
    return spec.with_extra_koszul(elements)


def localize_at_point(spec: DGRingSpec, point) -> DGRingSpec:
    """Localize at a rational maximal ideal by coordinate translation."""
    f = spec.ring.field
    pt = tuple(f.of(c) for c in point)
    if all(f.is_zero(c) for c in pt):
        return spec
    return spec.translated(pt)


# ---------------------------------------------------------------------------
# realization
# ---------------------------------------------------------------------------


class DGRingRealization:
    """The explicit complex underlying a tower, with cached cohomology.

    ``j_a`` is the accumulated degree-zero quotient ideal (the base ideal
    plus every Koszul element); homology at zero is cross-checked against
    S/j_a at fingerprint level the first time ``h0`` is requested.
    """

    def __init__(self, spec: DGRingSpec, ring: PolyRing, complex_: ComplexOfModules,
                 j_a_gens, koszul_elements):
        self.spec = spec
        self.ring = ring
        self.complex = complex_
        self.j_a = Ideal(ring, j_a_gens)
        self.koszul_elements = tuple(koszul_elements)
        self._cohomology: dict = {}
        self._profile = None
        self._h0_checked = False
        self._linear_data = None

    # -- cohomology ---------------------------------------------------------

    def cohomology(self, i: int) -> PresentedModule:
        mod = self._cohomology.get(i)
        if mod is None:
            mod = self.complex.homology_at(i)
            self._cohomology[i] = mod
        return mod

    def h0(self) -> Ideal:
        """The degree-zero cohomology presentation S/J_A, cross-checked
        against homology at degree zero."""
        if not self._h0_checked:
            computed = self.cohomology(0)
            reference = PresentedModule.cyclic(self.ring, self.j_a.gens)
            if computed.fingerprint() != reference.fingerprint():
                raise ToolkitError(
                    "internal error: homology at degree 0 disagrees with S/J_A"
                )
            self._h0_checked = True
        return self.j_a

    def amplitude_profile(self) -> AmplitudeProfile:
        if self._profile is not None:
            return self._profile
        degrees = [d for d in self.complex.degrees()]
        alive = [
            d for d in degrees if not self.cohomology(d).is_locally_zero()
        ]
        if not alive or 0 not in alive:
            raise InvalidTower(
                "the tower localizes to the zero DG-ring at the base point"
            )
        profile = AmplitudeProfile(inf=min(alive), sup=max(alive),
                                   amp=max(alive) - min(alive))
        self._profile = profile
        return profile

    def bottom_cohomology(self) -> PresentedModule:
        return self.cohomology(self.amplitude_profile().inf)

    def local_dim(self) -> int:
        """Krull dimension of the degree-zero cohomology at the point."""
        return self.j_a.dim_local_at_origin()

    # -- maximal-ideal linear data -------------------------------------------

    def _linear(self):
        """Row-reduced linear parts of the quotient generators: embedding
        dimension and a minimal generating sequence for the maximal ideal."""
        if self._linear_data is None:
            ring = self.ring
            fld = ring.field
            rows = []
            for g in self.j_a.gens:
                lin = g.linear_part()
                if not lin.is_zero():
                    row = [fld.zero] * ring.n
                    for m, c in lin.terms.items():
                        row[m.index(1)] = c
                    rows.append(row)
            rank, pivots = rref_pivots(rows, ring.n, fld)
            mingens = [ring.var(i) for i in range(ring.n) if i not in set(pivots)]
            self._linear_data = (ring.n - rank, tuple(mingens))
        return self._linear_data

    def embdim(self) -> int:
        return self._linear()[0]

    def minimal_generators(self):
        """Images of the coordinate variables column-reduced against the
        linear parts of the quotient generators: a minimal generating
        sequence of the maximal ideal."""
        return self._linear()[1]

    # -- extension ----------------------------------------------------------------

    def koszul_extension(self, elements, allow_units: bool = False) -> "DGRingRealization":
        """The realized Koszul extension by polynomial lifts.

        With ``allow_units`` the result is treated as a DG-module tower
        (elements need not lie in the maximal ideal), as needed for derived
        Nakayama and small-support computations.
        """
        elements = tuple(elements)
        fld = self.ring.field
        if not allow_units:
            for e in elements:
                if not fld.is_zero(e.constant_term()):
                    raise InvalidTower(
                        f"Koszul element {e} is not in the maximal ideal"
                    )
        new_complex = _koszul_total_complex(self.complex, elements)
        new_spec = self.spec.with_extra_koszul(elements)
        return DGRingRealization(
            new_spec,
            self.ring,
            new_complex,
            self.j_a.gens + elements,
            self.koszul_elements + elements,
        )

    def all_cohomology_locally_zero(self) -> bool:
        """Vanishing of the whole localized tower (a DG-module statement:
        meaningful for extensions built with allow_units)."""
        return all(
            self.cohomology(d).is_locally_zero() for d in self.complex.degrees()
        )

    def basis_hashes(self) -> dict:
        """Hashes of the cached standard/Groebner bases, for report audits."""
        import hashlib

        out = {}
        for key, basis in sorted(self.j_a._cache.items(), key=lambda kv: str(kv[0])):
            blob = ";".join(str(g) for g in basis).encode()
            out[f"J_A:{key}"] = hashlib.sha256(blob).hexdigest()[:16]
        return out

    def __repr__(self):
        return f"DGRingRealization(degrees={self.complex.degrees()})"


def _koszul_total_complex(cplx: ComplexOfModules, elements) -> ComplexOfModules:
    """Total complex of the Koszul pattern on ``elements`` tensored over
    the base ring with ``cplx``; see the module docstring for the sign
    convention."""
    ring = cplx.ring
    zero = ring.zero()
    k = len(elements)
    subsets = []
    for size in range(k + 1):
        subsets.extend(combinations(range(k), size))

    old_degrees = cplx.degrees()
    # block layout per new degree: list of (subset, old_degree, offset)
    layout: dict = {}
    new_terms: dict = {}
    for d_old in old_degrees:
        for I in subsets:
            d_new = d_old - len(I)
            layout.setdefault(d_new, []).append((I, d_old))
    for d_new in layout:
        layout[d_new].sort(key=lambda b: (len(b[0]), b[0], -b[1]))

    offsets: dict = {}
    for d_new, blocks in layout.items():
        parts = []
        off = 0
        offsets[d_new] = {}
        for I, d_old in blocks:
            offsets[d_new][(I, d_old)] = off
            term = cplx.terms[d_old]
            parts.append(term)
            off += term.gens
        new_terms[d_new] = PresentedModule.direct_sum(parts)

    new_diffs: dict = {}
    for d_new, blocks in layout.items():
        if d_new + 1 not in layout:
            continue
        src_gens = new_terms[d_new].gens
        tgt_gens = new_terms[d_new + 1].gens
        cols = [[zero] * tgt_gens for _ in range(src_gens)]
        tgt_offsets = offsets[d_new + 1]
        for I, d_old in blocks:
            src_off = offsets[d_new][(I, d_old)]
            g_count = cplx.terms[d_old].gens
            # contraction against each Koszul generator in the subset
            for j, idx in enumerate(sorted(I)):
                J = tuple(x for x in sorted(I) if x != idx)
                key = (J, d_old)
                if key not in tgt_offsets:
                    continue
                tgt_off = tgt_offsets[key]
                sign_elt = elements[idx] if j % 2 == 0 else -elements[idx]
                for g in range(g_count):
                    cols[src_off + g][tgt_off + g] = (
                        cols[src_off + g][tgt_off + g] + sign_elt
                    )
            # inherited differential of the base complex, with parity sign
            d_base = cplx.diffs.get(d_old)
            if d_base is not None:
                key = (I, d_old + 1)
                if key in tgt_offsets:
                    tgt_off = tgt_offsets[key]
                    parity = len(I) % 2
                    for g in range(g_count):
                        for r, entry in enumerate(d_base[g]):
                            if entry.is_zero():
                                continue
                            signed = -entry if parity else entry
                            cols[src_off + g][tgt_off + r] = (
                                cols[src_off + g][tgt_off + r] + signed
                            )
        new_diffs[d_new] = tuple(tuple(col) for col in cols)

    out = ComplexOfModules(ring, cplx.quotient, new_terms, new_diffs, check=False)
    _assert_square_zero(out)
    return out


def _assert_square_zero(cplx: ComplexOfModules):
    """The assembled Koszul differential squares to zero identically."""
    for i, d in cplx.diffs.items():
        upper = cplx.diffs.get(i + 1)
        if upper is None:
            continue
        src = cplx.terms[i]
        mid = cplx.terms[i + 1]
        top = cplx.terms[i + 2]
        dmap = ModuleMap(src, mid, d, check=False)
        umap = ModuleMap(mid, top, upper, check=False)
        if not umap.compose(dmap).is_zero_matrix():
            raise ToolkitError("internal error: Koszul differential square is nonzero")


def realize(spec: DGRingSpec) -> DGRingRealization:
    """Build the explicit complex of a tower.

    Translation to the base point is applied first; quotient generators
    must then lie in the maximal ideal at the origin (otherwise the local
    ring is zero and the input is rejected), and every Koszul element must
    reduce into the maximal ideal of the current degree-zero cohomology.
    """
    working = spec if spec.point is None else spec.translated(spec.point)
    ring = working.ring
    fld = ring.field

    for g in working.base:
        if not fld.is_zero(g.constant_term()):
            raise InvalidTower(
                f"quotient generator {g} does not vanish at the base point; "
                "the local ring there is zero"
            )

    j_gens = tuple(g for g in working.base if not g.is_zero())
    base_term = PresentedModule.cyclic(ring, j_gens)
    cplx = ComplexOfModules(ring, j_gens, {0: base_term}, {}, check=False)
    j_a = list(j_gens)
    koszul_elements: list = []

    for step in working.steps:
        if isinstance(step, KoszulStep):
            for e in step.elements:
                if not fld.is_zero(e.constant_term()):
                    raise InvalidTower(
                        f"Koszul element {e} is not in the maximal ideal"
                    )
            cplx = _koszul_total_complex(cplx, step.elements)
            j_a.extend(step.elements)
            koszul_elements.extend(step.elements)
            cplx = ComplexOfModules(ring, tuple(j_a), cplx.terms, cplx.diffs,
                                    check=False)
        elif isinstance(step, TrivExtStep):
            if step.shift < 1:
                raise InvalidTower("trivial extension shift must be >= 1")
            module = PresentedModule(ring, tuple(j_a), step.gens, step.relations)
            degree = -step.shift
            terms = dict(cplx.terms)
            if degree in terms:
                terms[degree] = PresentedModule.direct_sum([terms[degree], module])
                # incoming/outgoing differentials into the enlarged term keep
                # zero columns/rows on the new block
                diffs = {}
                for i, d in cplx.diffs.items():
                    if i == degree:
                        pad = [ring.zero()] * cplx.terms[i + 1].gens
                        diffs[i] = tuple(list(d) + [tuple(pad)] * module.gens)
                    elif i + 1 == degree:
                        diffs[i] = tuple(
                            tuple(list(col) + [ring.zero()] * module.gens)
                            for col in d
                        )
                    else:
                        diffs[i] = d
            else:
                terms[degree] = module
                diffs = dict(cplx.diffs)
            cplx = ComplexOfModules(ring, tuple(j_a), terms, diffs, check=False)
        else:
            raise InvalidTower(f"unknown tower step {step!r}")

    real = DGRingRealization(working, ring, cplx, tuple(j_a), koszul_elements)
    real.amplitude_profile()  # validates that the localized tower is nonzero
    return real


def has_constant_amplitude(real: DGRingRealization) -> bool:
    """Support of the bottom cohomology equals the whole spectrum of the
    degree-zero cohomology: every annihilator generator of H^inf lies in
    the radical of the quotient ideal."""
    bottom = real.bottom_cohomology()
    ann = bottom.annihilator()
    j_a = real.j_a
    return all(j_a.radical_contains(g) for g in ann.groebner(GREVLEX))
