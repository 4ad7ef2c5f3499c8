"""Builders for the surface tower and the two functorial constructions.

Two generic constructions act on declared lattice models:

* ``blow_up`` replaces declared points by exceptional classes e_i with
  e_i^2 = -1, orthogonal to every pulled-back class; registered curves
  reappear as strict transforms (pullback minus declared multiplicities
  times exceptionals).
* ``double_cover`` passes to the index-two sublattice pulled back from the
  base; pairings of pulled-back classes scale by the cover degree 2.

The specific tower this package verifies starts from the product of an
elliptic curve with itself.  Writing F and G for the two fiber classes and
Gamma_n for the kernel curve of (x, y) |-> nx + 2y (n odd, so the kernel is
a connected smooth elliptic curve), the declared intersection numbers are

    F^2 = G^2 = Gamma_n^2 = 0,   F.G = 1,   F.Gamma_n = 4,   G.Gamma_n = n^2.

F meets Gamma_n transversely in four points; three of them get blown up on
the base, and the corresponding three chosen preimages on the double cover
(branched away from those points, along a smooth member of |2(F+G)|) get
blown up upstairs.  ``build_tower`` assembles all four models plus the
named classes the verifier and the CLI work with.

Multiplicities of curves at blown-up points are *declared inputs* carried
by :class:`PointSpec` (a lattice model cannot compute geometric
multiplicity): transverse crossings contribute 1, ordinary nodes 2.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import (
    ArityMismatch,
    InvalidParameter,
    MismatchedModel,
    NotABlowup,
    UnknownCurve,
)
from .lattice import DivisorClass, RegisteredCurve, SurfaceModel


@dataclass(frozen=True)
class MorphismMap:
    """Pullback data for a blow-up or a cyclic cover.

    ``source_model`` is the constructed surface (the domain of the
    morphism), ``target_model`` the base it maps onto.  ``pullback_matrix``
    sends target-basis classes to source-model coefficient vectors; its
    shape is (source size) x (target size).  Pairings of pulled-back
    classes scale by ``pairing_scale`` (1 for blow-ups, the degree for
    covers).  Blow-ups carry their exceptional labels and basis positions;
    covers retain the half-branch class for later section splitting.
    """

    kind: str  # "blowup" | "cover"
    source_model: str
    target_model: str
    pullback_matrix: tuple[tuple[int, ...], ...]
    pairing_scale: int
    exceptional_labels: tuple[str, ...] = ()
    exceptional_positions: tuple[int, ...] = ()
    branch_half: DivisorClass | None = None

    def __post_init__(self):
        object.__setattr__(
            self, "pullback_matrix", tuple(tuple(row) for row in self.pullback_matrix)
        )
        object.__setattr__(self, "exceptional_labels", tuple(self.exceptional_labels))
        object.__setattr__(self, "exceptional_positions", tuple(self.exceptional_positions))
        if self.kind not in ("blowup", "cover"):
            raise InvalidParameter(f"unknown morphism kind {self.kind!r}")
        if self.pairing_scale < 1:
            raise InvalidParameter("pairing_scale must be a positive integer")

    @property
    def source_size(self) -> int:
        return len(self.pullback_matrix)

    @property
    def target_size(self) -> int:
        return len(self.pullback_matrix[0]) if self.pullback_matrix else 0


@dataclass(frozen=True)
class PointSpec:
    """A point to blow up, with declared curve multiplicities.

    ``declared_multiplicities`` maps registered-curve labels to the
    multiplicity of that curve at the point (1 for a transverse branch,
    2 for an ordinary node).  Values are declared geometric inputs, never
    computed.  Absent labels mean multiplicity 0.
    """

    label: str
    declared_multiplicities: tuple[tuple[str, int], ...] = ()

    def __post_init__(self):
        items = self.declared_multiplicities
        if hasattr(items, "items"):  # accept a mapping
            items = tuple(sorted(items.items()))
        else:
            items = tuple((str(k), int(v)) for k, v in items)
        for label, mult in items:
            if mult < 0:
                raise InvalidParameter(
                    f"multiplicity of {label!r} at {self.label!r} must be >= 0, got {mult}"
                )
        object.__setattr__(self, "declared_multiplicities", items)

    def multiplicity(self, curve_label: str) -> int:
        for label, mult in self.declared_multiplicities:
            if label == curve_label:
                return mult
        return 0


def pullback(morphism: MorphismMap, d: DivisorClass) -> DivisorClass:
    """Apply the pullback matrix to a class on the base model."""
    if d.model_id != morphism.target_model:
        raise MismatchedModel(
            f"pullback along {morphism.source_model!r} -> {morphism.target_model!r} "
            f"needs a class on {morphism.target_model!r}, got {d.model_id!r}"
        )
    if len(d.coeffs) != morphism.target_size:
        raise MismatchedModel("coefficient vector does not match the base basis size")
    coeffs = tuple(
        sum(row[j] * c for j, c in enumerate(d.coeffs) if c)
        for row in morphism.pullback_matrix
    )
    return DivisorClass(morphism.source_model, coeffs)


def blow_up(
    model: SurfaceModel,
    points: list[PointSpec] | tuple[PointSpec, ...],
    exceptional_labels: tuple[str, ...] | None = None,
) -> tuple[SurfaceModel, MorphismMap]:
    """Blow up declared points of ``model``.

    The new basis is the pullback of the old basis (same labels) followed
    by one exceptional label per point.  The Gram matrix extends by
    e_i^2 = -1, e_i.e_j = 0 and e_i orthogonal to all pullbacks, so
    pullbacks pair exactly as they did downstairs.  Every registered curve
    C reappears as its strict transform C' = pullback(C) - sum of declared
    multiplicities times exceptionals, re-registered under the primed label
    and declared irreducible with a provenance note.
    """
    points = tuple(points)
    if not points:
        raise InvalidParameter("blow_up needs at least one point")
    for p in points:
        for label, _ in p.declared_multiplicities:
            if not model.has_curve(label):
                raise UnknownCurve(
                    f"point {p.label!r} declares a multiplicity for {label!r}, "
                    f"which is not a registered curve of {model.model_id!r}"
                )
    k = len(points)
    if exceptional_labels is None:
        exceptional_labels = tuple(f"e_{i + 1}" for i in range(k))
    else:
        exceptional_labels = tuple(exceptional_labels)
    if len(exceptional_labels) != k:
        raise ArityMismatch(f"need {k} exceptional labels, got {len(exceptional_labels)}")
    for label in exceptional_labels:
        if label in model.basis:
            raise InvalidParameter(
                f"exceptional label {label!r} collides with an existing basis label"
            )

    old_n = model.size
    new_id = f"blowup({model.model_id};{','.join(exceptional_labels)})"
    new_basis = model.basis + exceptional_labels
    new_gram = tuple(
        tuple(model.gram[i]) + (0,) * k for i in range(old_n)
    ) + tuple(
        tuple(0 for _ in range(old_n)) + tuple(-1 if i == j else 0 for j in range(k))
        for i in range(k)
    )

    morphism = MorphismMap(
        kind="blowup",
        source_model=new_id,
        target_model=model.model_id,
        pullback_matrix=tuple(
            tuple(1 if i == j else 0 for j in range(old_n)) for i in range(old_n)
        )
        + tuple((0,) * old_n for _ in range(k)),
        pairing_scale=1,
        exceptional_labels=exceptional_labels,
        exceptional_positions=tuple(range(old_n, old_n + k)),
    )

    curves = []
    for curve in model.curves:
        mults = tuple(p.multiplicity(curve.label) for p in points)
        coeffs = list(curve.cls.coeffs) + [-m for m in mults]
        where = ", ".join(
            f"{m} at {p.label}" for p, m in zip(points, mults) if m
        ) or "missing every blown-up point"
        curves.append(
            RegisteredCurve(
                label=curve.label + "'",
                cls=DivisorClass(new_id, tuple(coeffs)),
                note=(
                    f"strict transform of {curve.label} (declared multiplicities: "
                    f"{where}); declared irreducible"
                ),
            )
        )

    new_model = SurfaceModel(
        model_id=new_id,
        basis=new_basis,
        gram=new_gram,
        curves=tuple(curves),
        kind="blowup",
        provenance=model.provenance
        + (
            f"blow-up of {model.model_id} at points "
            f"{', '.join(p.label for p in points)}; exceptional classes "
            f"{', '.join(exceptional_labels)} with e^2 = -1, mutually orthogonal "
            f"and orthogonal to pullbacks",
        ),
        exceptional_labels=model.exceptional_labels + exceptional_labels,
    )
    return new_model, morphism


def strict_transform(
    morphism: MorphismMap, d: DivisorClass, mults: list[int] | tuple[int, ...]
) -> DivisorClass:
    """Pullback of ``d`` minus declared multiplicities times exceptionals."""
    if morphism.kind != "blowup":
        raise NotABlowup("strict_transform needs a blow-up morphism")
    mults = tuple(mults)
    if len(mults) != len(morphism.exceptional_positions):
        raise ArityMismatch(
            f"need {len(morphism.exceptional_positions)} multiplicities, got {len(mults)}"
        )
    up = pullback(morphism, d)
    coeffs = list(up.coeffs)
    for pos, m in zip(morphism.exceptional_positions, mults):
        coeffs[pos] -= m
    return DivisorClass(morphism.source_model, tuple(coeffs))


def double_cover(
    model: SurfaceModel, branch_half: DivisorClass
) -> tuple[SurfaceModel, MorphismMap]:
    """Degree-2 cyclic cover branched along a smooth member of |2 R|,
    where R = ``branch_half``.

    The new model represents the pullback sublattice: same basis labels,
    Gram matrix doubled.  Registered curves carry over as declared
    pullback curves.  The morphism retains R, because the pushforward of
    the cover's structure sheaf splits as O + O(-R) and section counting
    later needs the second summand.
    """
    model._check_owned(branch_half)
    new_id = f"double_cover({model.model_id})"
    new_gram = tuple(tuple(2 * x for x in row) for row in model.gram)
    curves = tuple(
        RegisteredCurve(
            label=c.label,
            cls=DivisorClass(new_id, c.cls.coeffs),
            note=f"pullback of {c.label} under the degree-2 cover (declared curve)",
        )
        for c in model.curves
    )
    new_model = SurfaceModel(
        model_id=new_id,
        basis=model.basis,
        gram=new_gram,
        curves=curves,
        kind="cover",
        provenance=model.provenance
        + (
            f"double cover of {model.model_id} branched along a smooth member of "
            f"|2R|; only the pullback sublattice is represented, with pairings "
            f"scaled by the degree 2",
        ),
        exceptional_labels=model.exceptional_labels,
    )
    morphism = MorphismMap(
        kind="cover",
        source_model=new_id,
        target_model=model.model_id,
        pullback_matrix=tuple(
            tuple(1 if i == j else 0 for j in range(model.size)) for i in range(model.size)
        ),
        pairing_scale=2,
        branch_half=branch_half,
    )
    return new_model, morphism


# -- the verified tower ----------------------------------------------------


def build_abelian_product(n: int) -> SurfaceModel:
    """Model of the self-product of an elliptic curve, for odd n >= 3.

    Basis (F, G, Gamma_n): the two fiber classes and the kernel curve of
    (x, y) |-> nx + 2y.  Gram matrix::

        [[0, 1,   4 ],
         [1, 0,  n^2],
         [4, n^2, 0 ]]

    All three classes are smooth elliptic curves, registered as such.
    """
    if not isinstance(n, int) or isinstance(n, bool):
        raise InvalidParameter(f"n must be an integer, got {n!r}")
    if n < 3 or n % 2 == 0:
        raise InvalidParameter(f"n must be an odd integer >= 3, got {n}")
    model_id = f"abelian_product(n={n})"
    gram = (
        (0, 1, 4),
        (1, 0, n * n),
        (4, n * n, 0),
    )
    mk = lambda *coeffs: DivisorClass(model_id, coeffs)
    curves = (
        RegisteredCurve("F", mk(1, 0, 0), "first fiber class; smooth elliptic, F^2 = 0"),
        RegisteredCurve("G", mk(0, 1, 0), "second fiber class; smooth elliptic, G^2 = 0"),
        RegisteredCurve(
            "Gamma_n",
            mk(0, 0, 1),
            f"kernel curve of (x, y) |-> {n}x + 2y; connected smooth elliptic "
            f"(gcd({n}, 2) = 1), Gamma_n^2 = 0 by adjunction",
        ),
    )
    provenance = (
        f"declared intersection numbers on the product of an elliptic curve with "
        f"itself (n = {n}):",
        "F^2 = G^2 = 0: distinct fibers of a projection are disjoint",
        "F.G = 1: the two fibers cross exactly once, transversely "
        "(supplied value: forced by the product structure, stated nowhere upstream)",
        "F.Gamma_n = 4: F meets the kernel curve in the four 2-torsion points "
        "of a fiber (multiplication by 2 is etale)",
        f"G.Gamma_n = {n * n} = n^2: G meets the kernel curve in the n^2 "
        f"n-torsion points of a fiber (multiplication by n is etale)",
        "Gamma_n^2 = 0: adjunction for a smooth elliptic curve on an abelian surface",
    )
    return SurfaceModel(
        model_id=model_id,
        basis=("F", "G", "Gamma_n"),
        gram=gram,
        curves=curves,
        kind="abelian",
        provenance=provenance,
    )


@dataclass(frozen=True)
class Tower:
    """The four models and three morphisms the verifier works with, plus
    the named classes bound by reports and the CLI expression grammar:

    ============  =============================  ======================
    name          class                          lives on
    ============  =============================  ======================
    F, G, G_n     fiber / fiber / kernel curve   base
    R             F + G (half the branch class)  base
    A             F + G_n                        base
    L             strict transform of A          base blow-up
    D             strict transform of the        cover blow-up
                  nodal member pulled upstairs
    ============  =============================  ======================
    """

    n: int
    base: SurfaceModel
    base_blowup: SurfaceModel
    cover: SurfaceModel
    cover_blowup: SurfaceModel
    base_blowup_map: MorphismMap
    cover_map: MorphismMap
    cover_blowup_map: MorphismMap
    classes: dict[str, DivisorClass] = field(compare=False)

    @property
    def models(self) -> tuple[SurfaceModel, ...]:
        return (self.base, self.base_blowup, self.cover, self.cover_blowup)

    def model_of(self, d: DivisorClass) -> SurfaceModel:
        for m in self.models:
            if m.model_id == d.model_id:
                return m
        raise MismatchedModel(f"{d.model_id!r} is not a model of this tower")


def build_tower(n: int) -> Tower:
    """Build the full tower for one odd n: the abelian product, its
    blow-up at three of the four transverse F-meets-Gamma_n points, the
    double cover branched away from them, and the cover's blow-up at the
    three chosen nodal preimages."""
    base = build_abelian_product(n)
    f_cls = base.basis_class("F")
    g_cls = base.basis_class("G")
    kernel_cls = base.basis_class("Gamma_n")
    ample_half = f_cls + g_cls  # R = F + G, half the branch class
    member = f_cls + kernel_cls  # A = F + Gamma_n, the verified class downstairs

    transverse_points = tuple(
        PointSpec(
            f"p_{i}",
            {"F": 1, "Gamma_n": 1},
        )
        for i in (1, 2, 3)
    )
    base_blowup, base_blowup_map = blow_up(base, transverse_points)
    one_dim_cls = strict_transform(base_blowup_map, member, (2, 2, 2))  # L

    cover, cover_map = double_cover(base, ample_half)
    cover = cover.with_curve(
        "A_n",
        pullback(cover_map, member),
        note=(
            "pullback of the member F + Gamma_n; the cover is etale over the "
            "three chosen transverse points, so this curve has an ordinary node "
            "(declared multiplicity 2) at each chosen preimage"
        ),
    )
    nodal_points = tuple(
        PointSpec(
            f"q_{i}",
            {"F": 1, "Gamma_n": 1, "A_n": 2},
        )
        for i in (1, 2, 3)
    )
    cover_blowup, cover_blowup_map = blow_up(
        cover, nodal_points, exceptional_labels=("E_1", "E_2", "E_3")
    )
    headline_cls = strict_transform(
        cover_blowup_map, pullback(cover_map, member), (2, 2, 2)
    )  # D

    classes = {
        "F": f_cls,
        "G": g_cls,
        "G_n": kernel_cls,
        "R": ample_half,
        "A": member,
        "L": one_dim_cls,
        "D": headline_cls,
    }
    return Tower(
        n=n,
        base=base,
        base_blowup=base_blowup,
        cover=cover,
        cover_blowup=cover_blowup,
        base_blowup_map=base_blowup_map,
        cover_map=cover_map,
        cover_blowup_map=cover_blowup_map,
        classes=classes,
    )


# -- model files -------------------------------------------------------------


def model_to_dict(model: SurfaceModel) -> dict:
    return {
        "schema": "surface-model",
        "schema_version": 1,
        "model_id": model.model_id,
        "basis": list(model.basis),
        "gram": [list(row) for row in model.gram],
        "kind": model.kind,
        "curves": [
            {"label": c.label, "coeffs": list(c.cls.coeffs), "note": c.note}
            for c in model.curves
        ],
        "provenance": list(model.provenance),
        "exceptional_labels": list(model.exceptional_labels),
    }


def model_from_dict(data: dict) -> SurfaceModel:
    model_id = data["model_id"]
    return SurfaceModel(
        model_id=model_id,
        basis=tuple(data["basis"]),
        gram=tuple(tuple(int(x) for x in row) for row in data["gram"]),
        curves=tuple(
            RegisteredCurve(
                label=c["label"],
                cls=DivisorClass(model_id, tuple(int(x) for x in c["coeffs"])),
                note=c.get("note", ""),
            )
            for c in data["curves"]
        ),
        kind=data["kind"],
        provenance=tuple(data.get("provenance", ())),
        exceptional_labels=tuple(data.get("exceptional_labels", ())),
    )


def save_model(model: SurfaceModel, path) -> None:
    import json

    with open(path, "w", encoding="utf-8") as fh:
        json.dump(model_to_dict(model), fh, indent=2, sort_keys=True)
        fh.write("\n")


def load_model(path) -> SurfaceModel:
    import json

    with open(path, "r", encoding="utf-8") as fh:
        return model_from_dict(json.load(fh))
