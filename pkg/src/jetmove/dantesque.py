"""Descriptors of singular surfaces built from weighted blow-ups.

A descriptor names a smooth compact base (sphere, torus, or klein) and an
ordered list of blow-up records.  Each record is centered either at a
curvilinear jet on the base (parent ``"base"``) or on the exceptional
locus created by an earlier record (parent = that record's index), and
carries the weight ``order`` of the blow-up.  A weight ``e >= 2`` leaves
a cone singularity on the blown-up surface; weight 1 is an ordinary
blow-up and stays smooth.

Three homeomorphism invariants classify these surfaces: the Euler
characteristic, the topological type of the minimal resolution, and the
multiset of singularity types.  ``descriptor_normalize`` rewrites any
descriptor into a flat one (all records based at mutually distant
standard positions on the sphere, or the bare torus) with identical
invariants, and ``isomorphism_decide`` compares two descriptors whenever
their singularities have pairwise distinct types.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import CyclicReference, DuplicateCenter, PreconditionFailed
from .surfaces import Jet, jet_from_json, jet_to_json, standard_config

SPHERE = "sphere"
TORUS = "torus"
KLEIN = "klein"
BASES = (SPHERE, TORUS, KLEIN)

BASE = "base"

# Verdicts of isomorphism_decide.
ISOMORPHIC = "isomorphic"
NOT_ISOMORPHIC = "not-isomorphic"
HYPOTHESIS_NOT_MET = "hypothesis-not-met"

_EULER_OF_BASE = {SPHERE: 2, TORUS: 0, KLEIN: 0}


@dataclass(frozen=True)
class BlowupRecord:
    """One weighted blow-up: where it is centered and its weight."""

    parent: str | int
    order: int
    center: Jet | None = None

    def __post_init__(self):
        if not (self.parent == BASE or isinstance(self.parent, int)):
            raise PreconditionFailed("parent must be 'base' or a record index")
        if isinstance(self.parent, bool):
            raise PreconditionFailed("parent must be 'base' or a record index")
        if not isinstance(self.order, int) or self.order < 1:
            raise PreconditionFailed("blow-up order must be an integer >= 1")


@dataclass(frozen=True)
class SurfaceDescriptor:
    """Base surface plus the ordered list of blow-up records."""

    base: str
    records: tuple[BlowupRecord, ...] = ()

    def __post_init__(self):
        if self.base not in BASES:
            raise PreconditionFailed(f"unknown base surface {self.base!r}")
        object.__setattr__(self, "records", tuple(self.records))
        for rec in self.records:
            if rec.center is not None and rec.center.surface != self.base:
                raise PreconditionFailed("record center lives on a different surface")


@dataclass(frozen=True)
class BlowupForest:
    """Ancestry structure of the records of one descriptor.

    Nodes are record indices.  A node is a root when its record sits on
    the base; otherwise its single edge points at the earlier record
    whose exceptional locus carries it.  ``below(i, j)`` holds when
    record j appears on the ancestry chain of record i.
    """

    parents: tuple[str | int, ...]
    roots: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]

    @property
    def s(self) -> int:
        return len(self.edges)

    @property
    def trees(self) -> int:
        return len(self.roots)

    def below(self, i: int, j: int) -> bool:
        node: str | int = i
        while node != BASE:
            if node == j:
                return True
            node = self.parents[node]
        return False


def forest_build(d: SurfaceDescriptor) -> BlowupForest:
    """Check ancestry well-foundedness and return the record forest.

    Raises CyclicReference when a parent index does not point at a
    strictly earlier record, DuplicateCenter when two base records carry
    the same explicit center point.
    """
    roots, edges = [], []
    for i, rec in enumerate(d.records):
        if rec.parent == BASE:
            roots.append(i)
        else:
            if not 0 <= rec.parent < i:
                raise CyclicReference(
                    f"record {i} refers to {rec.parent}, not an earlier record")
            edges.append((i, rec.parent))
    seen = []
    for i in roots:
        c = d.records[i].center
        if c is None:
            continue
        if any(c.center == p for p in seen):
            raise DuplicateCenter("two base records share a center point")
        seen.append(c.center)
    forest = BlowupForest(tuple(r.parent for r in d.records),
                          tuple(roots), tuple(edges))
    assert forest.s == len(d.records) - forest.trees
    return forest


@dataclass(frozen=True)
class HomeoInvariants:
    """Exactly the data that determines the homeomorphism type.

    ``genus`` is the orientable genus of the minimal resolution when
    ``orientable`` is set, its nonorientable genus (crosscap count)
    otherwise.  ``singularities`` lists the orders e of the cone points,
    largest first; the cone of order e has type A(e-1)-minus.
    """

    euler: int
    orientable: bool
    genus: int
    singularities: tuple[int, ...]


def singularity_name(order: int) -> str:
    return f"A{order - 1}-"


def descriptor_invariants(d: SurfaceDescriptor) -> HomeoInvariants:
    """Euler characteristic, resolution type, and singularity multiset.

    Every record drops the Euler characteristic by exactly 1, whatever
    its order.  The resolution of a descriptor with records is always
    nonorientable; its crosscap count is the sum of the orders, shifted
    by 2 for a torus or klein base.
    """
    orders = [rec.order for rec in d.records]
    euler = _EULER_OF_BASE[d.base] - len(orders)
    if not orders:
        orientable = d.base != KLEIN
        genus = {SPHERE: 0, TORUS: 1, KLEIN: 2}[d.base]
    else:
        orientable = False
        genus = (0 if d.base == SPHERE else 2) + sum(orders)
    sings = tuple(sorted((e for e in orders if e >= 2), reverse=True))
    return HomeoInvariants(euler, orientable, genus, sings)


def _is_flat(d: SurfaceDescriptor) -> bool:
    if any(rec.parent != BASE for rec in d.records):
        return False
    if d.base == SPHERE:
        return True
    return d.base == TORUS and not d.records


def _flat_sphere(orders: list[int]) -> SurfaceDescriptor:
    jets = standard_config(SPHERE, orders).jets if orders else ()
    recs = tuple(BlowupRecord(BASE, e, jet) for e, jet in zip(orders, jets))
    return SurfaceDescriptor(SPHERE, recs)


def descriptor_normalize(d: SurfaceDescriptor) -> SurfaceDescriptor:
    """Flat descriptor with the same invariants.

    Flat descriptors come back unchanged.  A bare klein base becomes the
    sphere blown up at two standard points; any other descriptor becomes
    a sphere descriptor whose records sit at standard positions, keeping
    the orders >= 2 and adding as many order-1 records as the resolution
    genus requires.
    """
    forest_build(d)
    if _is_flat(d):
        return d
    inv = descriptor_invariants(d)
    keep = sorted((rec.order for rec in d.records if rec.order >= 2), reverse=True)
    ones = inv.genus - sum(keep)
    assert ones >= 0
    flat = _flat_sphere(keep + [1] * ones)
    assert descriptor_invariants(flat) == inv
    return flat


def isomorphism_decide(d1: SurfaceDescriptor, d2: SurfaceDescriptor) -> str:
    """Compare two descriptors up to isomorphism.

    Applicable only when each surface carries at most one singularity of
    each type; a repeated type on either side yields the verdict
    ``hypothesis-not-met``.  Within scope, the surfaces are isomorphic
    exactly when their invariants coincide.
    """
    for d in (d1, d2):
        sings = descriptor_invariants(d).singularities
        if len(set(sings)) < len(sings):
            return HYPOTHESIS_NOT_MET
    if descriptor_invariants(d1) == descriptor_invariants(d2):
        return ISOMORPHIC
    return NOT_ISOMORPHIC


def descriptor_to_json(d: SurfaceDescriptor) -> dict:
    recs = []
    for rec in d.records:
        item: dict = {"parent": rec.parent, "order": rec.order}
        if rec.center is not None:
            item["center"] = jet_to_json(rec.center)
        recs.append(item)
    return {"base": d.base, "records": recs}


def descriptor_from_json(data: dict) -> SurfaceDescriptor:
    recs = []
    for item in data["records"]:
        center = jet_from_json(item["center"]) if "center" in item else None
        recs.append(BlowupRecord(item["parent"], item["order"], center))
    d = SurfaceDescriptor(data["base"], tuple(recs))
    forest_build(d)
    return d
