"""add(M) membership and two independent n-cluster-tilting tests.

``check_via_list`` compares add(M) with both Ext-orthogonal subcategories on
a complete list of indecomposables.  ``check_via_endo`` asks whether End(M)
has global and dominant dimension n + 1.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .endomorphism import basic_presentation, endo_algebra, presentation_to_algebra
from .errors import DuplicateListEntry, GenCogenFailed, ListEntryDecomposable
from .homology import DEFAULT_CAP, dominant_dimension, ext_dim, global_dimension
from .quiver_algebra import BoundQuiverAlgebra
from .representations import (
    Representation,
    decompose,
    direct_sum,
    dual_regular_module,
    find_isomorphism,
    regular_module,
)
from .representations.decompose import _iso_local, local_info


@dataclass
class ClusterVerdict:
    result: bool
    mode: str  # "list" | "endo"
    n: int
    evidence: dict = dc_field(default_factory=dict)

    def __bool__(self):
        return self.result

    def __str__(self):
        word = "certified" if self.result else "rejected"
        if self.mode == "endo":
            ev = self.evidence
            return f"{self.n}-cluster tilting via End(M): {word} (gldim {ev.get('gldim')}, domdim {ev.get('domdim')})"
        return f"{self.n}-cluster tilting via list: {word}"

    def to_json(self) -> dict:
        return {"result": self.result, "mode": self.mode, "n": self.n, "evidence": self.evidence}


def _summand_classes(m: Representation) -> list[Representation]:
    return [s.module for s in decompose(m).summands]


def _in_classes(x: Representation, classes: list[Representation]) -> bool:
    info = local_info(x)
    for y in classes:
        if y.dims != x.dims:
            continue
        if info is not None:
            if _iso_local(x, y, info) is not None:
                return True
        elif find_isomorphism(x, y) is not None:
            return True
    return False


def add_membership(m: Representation, x: Representation) -> bool:
    """True iff every indecomposable summand of x is isomorphic to a summand of m."""
    classes = _summand_classes(m)
    return all(_in_classes(s.module, classes) for s in decompose(x).summands)


def basic_part(m: Representation) -> Representation:
    """One copy of each indecomposable summand of m."""
    mods = _summand_classes(m)
    return direct_sum(mods)[0].renamed(f"basic {m.name}".strip()) if mods else m


def _label(x: Representation, k: int) -> str:
    return x.name or f"X{k + 1}"


def check_via_list(a: BoundQuiverAlgebra, m: Representation, n: int, indec_list) -> ClusterVerdict:
    """Compare add(m) with {X : Ext^i(m, X) = 0} and {X : Ext^i(X, m) = 0}, 1 <= i <= n-1.

    ``indec_list`` must be a complete list of indecomposables up to isomorphism;
    each entry is checked to be indecomposable and the entries pairwise
    non-isomorphic, but completeness is the caller's responsibility.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    mods = list(indec_list)
    infos = []
    for k, x in enumerate(mods):
        info = local_info(x)
        if info is None:
            raise ListEntryDecomposable(f"list entry {_label(x, k)} is not indecomposable")
        for j in range(k):
            if mods[j].dims == x.dims and _iso_local(x, mods[j], info) is not None:
                raise DuplicateListEntry(f"list entries {_label(mods[j], j)} and {_label(x, k)} are isomorphic")
        infos.append(info)
    labels = [_label(x, k) for k, x in enumerate(mods)]
    summands = _summand_classes(m)
    s_set, unlisted = set(), []
    for y in summands:
        hit = next((k for k, x in enumerate(mods) if x.dims == y.dims and _iso_local(x, y, infos[k]) is not None), None)
        if hit is None:
            unlisted.append(list(y.dims))
        else:
            s_set.add(hit)
    ext_from, ext_to = {}, {}
    l_set, r_set = set(), set()
    for k, x in enumerate(mods):
        ext_from[labels[k]] = [ext_dim(i, m, x) for i in range(1, n)]
        ext_to[labels[k]] = [ext_dim(i, x, m) for i in range(1, n)]
        if not any(ext_from[labels[k]]):
            l_set.add(k)
        if not any(ext_to[labels[k]]):
            r_set.add(k)
    ok = l_set == r_set == s_set and not unlisted
    evidence = {
        "left": sorted(labels[k] for k in l_set),
        "right": sorted(labels[k] for k in r_set),
        "summands": sorted(labels[k] for k in s_set),
        "ext_from_m": ext_from,
        "ext_to_m": ext_to,
    }
    if unlisted:
        evidence["unlisted_summands"] = unlisted
    if not ok:
        for k in range(len(mods)):
            in_s = k in s_set
            if (k in l_set) != in_s or (k in r_set) != in_s:
                evidence["offender"] = labels[k]
                bad = [i + 1 for i, d in enumerate(ext_from[labels[k]]) if d]
                bad += [i + 1 for i, d in enumerate(ext_to[labels[k]]) if d]
                evidence["failed_ext_index"] = min(bad) if bad else None
                break
    return ClusterVerdict(ok, "list", n, evidence)


def is_generator_cogenerator(a: BoundQuiverAlgebra, m: Representation) -> tuple[bool, bool]:
    classes = _summand_classes(m)
    gen = all(_in_classes(s.module, classes) for s in decompose(regular_module(a)).summands)
    cogen = all(_in_classes(s.module, classes) for s in decompose(dual_regular_module(a)).summands)
    return gen, cogen


def check_via_endo(a: BoundQuiverAlgebra, m: Representation, n: int, cap: int = DEFAULT_CAP) -> ClusterVerdict:
    """n-cluster tilting iff End(m) has gldim = domdim = n + 1 (m a generator-cogenerator)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    gen, cogen = is_generator_cogenerator(a, m)
    if not (gen and cogen):
        missing = [w for w, ok in (("A", gen), ("D(A)", cogen)) if not ok]
        raise GenCogenFailed(f"{' and '.join(missing)} not in add(M)")
    b = endo_algebra(basic_part(m))
    pres = basic_presentation(b)
    alg = presentation_to_algebra(pres, len_cap=max(20, pres.nilpotency + 1))
    gl = global_dimension(alg, cap)
    dd = dominant_dimension(alg, cap)
    ok = gl.is_finite and dd.is_finite and gl.value == n + 1 and dd.value == n + 1
    evidence = {
        "gldim": str(gl),
        "domdim": str(dd),
        "endo_dimension": b.dim,
        "quiver_vertices": pres.quiver.vertex_count,
        "quiver_arrows": len(pres.quiver.arrows),
        "summands": list(pres.correspondence),
    }
    return ClusterVerdict(ok, "endo", n, evidence)
