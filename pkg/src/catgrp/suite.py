"""The generated acceptance suite behind ``catgrp suite``.

Each criterion returns a :class:`SuiteResult`; ``run_suite`` runs them all in
a fixed order.
"""

from __future__ import annotations

import contextlib
import io
import itertools
import os
import tempfile
from dataclasses import dataclass
from typing import Callable, Iterator

import numpy as np

from .core.catalog import catalog, make_cyclic, sign
from .core.groups import FiniteGroup, GroupAction, Hom, normal_subgroups
from .core.iso import homomorphisms
from .core.products import direct_product, split_epi_decompose
from .crossed_modules import (
    CrossedModule,
    check_crossed_module,
    identity_crossed_module,
    image_normal_check,
    inclusion_crossed_module,
    kernel_abelian_check,
    trivial_boundary_crossed_module,
)
from .dsl import SpecDocument, parse_spec, serialize_spec
from .equivalence import roundtrip_internal, roundtrip_xmod, xmod_to_internal
from .group_objects import (
    CogroupCandidate,
    FinSetMap,
    GroupObjectCandidate,
    check_cogroup_object,
    check_group_object,
    check_interchange,
    eckmann_hilton,
)
from .internal_categories import (
    check_cat_group_structure,
    check_internal_category,
    is_internal_groupoid,
)

INTERNAL_LEGS = ("source_target", "associativity", "identity", "interchange")


@dataclass(frozen=True)
class SuiteResult:
    name: str
    passed: bool
    detail: str

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'}  {self.name}: {self.detail}"


def _brute_abelian(G: FiniteGroup) -> bool:
    return all(G.mul(a, b) == G.mul(b, a) for a in G.elements() for b in G.elements())


def a3_in_s3() -> CrossedModule:
    S3 = catalog()["S3"]
    N = next(N for N in normal_subgroups(S3) if N.order == 3)
    return inclusion_crossed_module(N, "A3_S3")


def a3_in_s3_trivial_action() -> CrossedModule:
    xm = a3_in_s3()
    return CrossedModule(xm.C, xm.G, xm.boundary, GroupAction.trivial(xm.G, xm.C), "A3_S3_trivial")


def suite_crossed_modules() -> Iterator[tuple[str, CrossedModule]]:
    """Inclusions of every normal subgroup, identities, and trivial-boundary instances."""
    groups = catalog()
    for gname, G in groups.items():
        for N in normal_subgroups(G):
            yield f"{gname}>{N.members}", inclusion_crossed_module(N, f"incl_{gname}_{N.order}")
    for gname, G in groups.items():
        yield f"id_{gname}", identity_crossed_module(G)
    trivial = groups["Z1"]
    for gname, C in groups.items():
        if _brute_abelian(C):
            yield f"triv_{gname}", trivial_boundary_crossed_module(C, trivial)
    yield "triv_Z2_S3", trivial_boundary_crossed_module(groups["Z2"], groups["S3"])
    yield "triv_Z3_D4", trivial_boundary_crossed_module(groups["Z3"], groups["D4"])


def criterion_eckmann_hilton() -> SuiteResult:
    bad = []
    for name, G in catalog().items():
        cand = GroupObjectCandidate.from_group(G, "FinGrp")
        ok = check_group_object(cand).passed
        if ok != _brute_abelian(G):
            bad.append(f"{name}: group object {ok}")
        elif ok and not eckmann_hilton(cand).passed:
            bad.append(f"{name}: m differs from native product")
    return SuiteResult("1 eckmann-hilton", not bad, "; ".join(bad) or f"{len(catalog())} catalog groups agree")


def criterion_crossed_modules() -> SuiteResult:
    bad = []
    count = 0
    for gname, G in catalog().items():
        for N in normal_subgroups(G):
            xm = inclusion_crossed_module(N)
            count += 1
            for report in (check_crossed_module(xm), kernel_abelian_check(xm), image_normal_check(xm)):
                if not report.passed:
                    bad.append(f"{gname}>{N.members}: {report.detail}")
    xm = a3_in_s3_trivial_action()
    report = check_crossed_module(xm)
    equi = report.part("equivariance")
    G = xm.G
    if equi.passed:
        bad.append("trivial-action A3<S3 passed equivariance")
    else:
        g, c = equi.witness
        if not (G.element_orders()[g] == 2 and xm.C.element_orders()[c] == 3):
            bad.append(f"trivial-action witness {equi.witness} is not (transposition, 3-cycle)")
    return SuiteResult("2 crossed modules", not bad, "; ".join(bad) or f"{count} inclusion crossed modules valid; trivial action fails equivariance at {equi.witness}")


def criterion_construction() -> SuiteResult:
    bad = []
    count = 0
    for label, xm in suite_crossed_modules():
        ic = xmod_to_internal(xm)
        count += 1
        cat = check_internal_category(ic)
        if not (cat.passed and [p.check_name for p in cat.parts] == list(INTERNAL_LEGS)):
            bad.append(f"{label}: {cat.detail}")
            continue
        for report in (check_cat_group_structure(ic), is_internal_groupoid(ic)):
            if not report.passed:
                bad.append(f"{label}: {report.detail}")
        if ic.pairs.order != xm.C.order ** 2 * xm.G.order:
            bad.append(f"{label}: pullback order {ic.pairs.order}")
    return SuiteResult("3 construction soundness", not bad, "; ".join(bad) or f"{count} internal categories sound")


def criterion_roundtrips() -> SuiteResult:
    bad = []
    count = 0
    for label, xm in suite_crossed_modules():
        _, rx = roundtrip_xmod(xm)
        _, ri = roundtrip_internal(xmod_to_internal(xm))
        count += 1
        for report in (rx, ri):
            if not report.passed or report.data.get("fallback"):
                bad.append(f"{label}: {report.check_name}: {report.detail}")
    return SuiteResult("4 round trips", not bad, "; ".join(bad) or f"{count} crossed modules and internal categories round-trip canonically")


def split_epimorphisms(max_order: int = 12) -> Iterator[tuple[str, Hom, Hom]]:
    """Split epimorphisms with chosen splittings among catalog groups."""
    groups = catalog()
    for (n1, G), (n2, H) in itertools.product(list(groups.items())[:8], repeat=2):
        if G.order * H.order <= max_order:
            P = direct_product(G, H)
            yield f"proj {n1}x{n2}", P.right_projection, P.right_injection
    sgn = sign(3)
    transposition = int(np.flatnonzero(sgn.map == 1)[0])
    yield "sign S3", sgn, Hom(make_cyclic(2), sgn.source, [0, transposition], "e")
    for (na, A), (no, O) in itertools.product(groups.items(), repeat=2):
        if A.order > max_order or O.order >= A.order or A.order % O.order:
            continue
        for s in homomorphisms(A, O):
            if not s.is_surjective():
                continue
            e = next((e for e in homomorphisms(O, A) if (s.map[e.map] == np.arange(O.order)).all()), None)
            if e is not None:
                yield f"{na}->{no} {tuple(s.map)}", s, e


def criterion_split_epi() -> SuiteResult:
    bad = []
    count = 0
    for label, s, e in split_epimorphisms():
        dec = split_epi_decompose(s, e)
        count += 1
        if not (dec.report.passed and dec.phi.verified and dec.phi.is_bijective()):
            bad.append(f"{label}: {dec.report.detail}")
    return SuiteResult("5 split epimorphisms", not bad, "; ".join(bad) or f"{count} decompositions verified")


def criterion_interchange() -> SuiteResult:
    bad = []
    for name, G in catalog().items():
        op = FinSetMap(G.order ** 2, G.order, G.table.reshape(-1))
        report = check_interchange(G, op, op)
        if report.passed != _brute_abelian(G):
            bad.append(name)
    S3 = catalog()["S3"]
    op = FinSetMap(36, 6, S3.table.reshape(-1))
    r = check_interchange(S3, op, op)
    if r.passed:
        bad.append("S3 gave no witness")
    else:
        x, y, z, w = r.witness
        t = S3.table
        if t[t[x, y], t[z, w]] == t[t[x, z], t[y, w]]:
            bad.append(f"S3 witness {r.witness} does not reproduce")
    return SuiteResult("6 interchange", not bad, "; ".join(bad) or f"abelian iff interchange; S3 witness {r.witness}")


def _all_w(n: int):
    return itertools.product([(tag, x) for tag in (0, 1) for x in range(n)], repeat=n)


def criterion_cogroup(seed: int = 0) -> SuiteResult:
    bad = []
    if not check_cogroup_object(CogroupCandidate(0, (), eta=())).passed:
        bad.append("empty carrier rejected")
    rng = np.random.default_rng(seed)
    checked = 0
    for n in range(1, 5):
        if n <= 2:
            ws = list(_all_w(n))
        else:
            ws = [tuple((int(rng.integers(2)), int(rng.integers(n))) for _ in range(n)) for _ in range(100)]
        for w in ws:
            r = check_cogroup_object(CogroupCandidate(n, w))
            checked += 1
            counit = r.part("counit")
            if r.passed or counit.passed or "initial object" not in counit.detail:
                bad.append(f"size {n} w={w}: counit leg not rejected")
    return SuiteResult("7 cogroup degeneracy", not bad, "; ".join(bad) or f"empty carrier passes; {checked} nonempty candidates fail the counit leg")


def criterion_fault_injection(seed: int = 0, count: int = 10) -> SuiteResult:
    ic = xmod_to_internal(a3_in_s3())
    rng = np.random.default_rng(seed)
    positions = rng.choice(ic.pairs.order, size=count, replace=False)
    bad = []
    legs = []
    for pos in positions:
        comp = ic.comp.copy()
        comp[pos] = (comp[pos] + int(rng.integers(1, ic.A.order))) % ic.A.order
        r = check_internal_category(ic.with_comp(comp))
        if r.passed or r.failed_leg not in INTERNAL_LEGS or r.witness is None:
            bad.append(f"position {pos} undetected")
        else:
            legs.append(r.failed_leg)
    return SuiteResult("8 fault injection", not bad, "; ".join(bad) or f"{count} corruptions detected ({', '.join(legs)})")


def a3_s3_document(trivial_action: bool = False) -> SpecDocument:
    xm = a3_in_s3_trivial_action() if trivial_action else a3_in_s3()
    doc = SpecDocument()
    doc.add_group("S3", xm.G)
    doc.add_group("A3", xm.C)
    doc.add_hom("incl", xm.boundary, "A3", "S3")
    doc.add_action("act", xm.action, "S3", "A3")
    doc.add_xmod("X", xm, "A3", "S3", "incl", "act")
    return doc


def _run_cli(argv) -> tuple[int, str]:
    from .cli import main
    out = io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(io.StringIO()):
        code = main(argv)
    return code, out.getvalue()


def criterion_parser_cli() -> SuiteResult:
    bad = []
    good = serialize_spec(a3_s3_document())
    if serialize_spec(parse_spec(good)) != good:
        bad.append("canonical text does not round-trip")
    broken = serialize_spec(a3_s3_document(trivial_action=True))
    with tempfile.TemporaryDirectory() as tmp:
        paths = {}
        for label, text in (("good", good), ("bad", broken), ("syntax", "group G order 2\n0 1\n1\n")):
            paths[label] = os.path.join(tmp, f"{label}.cg")
            with open(paths[label], "w", encoding="utf-8") as fh:
                fh.write(text)
        for label, expected in (("good", 0), ("bad", 1), ("syntax", 2)):
            code, _ = _run_cli(["check", paths[label]])
            if code != expected:
                bad.append(f"{label}: exit {code}, expected {expected}")
        first = _run_cli(["check", paths["good"], "--json"])[1]
        second = _run_cli(["check", paths["good"], "--json"])[1]
        if first != second:
            bad.append("JSON output differs between runs")
    return SuiteResult("9 parser/cli", not bad, "; ".join(bad) or "round trip, exit codes 0/1/2 and stable JSON")


CRITERIA: list[Callable[[], SuiteResult]] = [
    criterion_eckmann_hilton,
    criterion_crossed_modules,
    criterion_construction,
    criterion_roundtrips,
    criterion_split_epi,
    criterion_interchange,
    criterion_cogroup,
    criterion_fault_injection,
    criterion_parser_cli,
]


def run_suite() -> list[SuiteResult]:
    return [criterion() for criterion in CRITERIA]
