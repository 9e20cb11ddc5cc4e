"""Analysis reports and the invariant suite used by ``parakod verify``."""
from __future__ import annotations

import json
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction

from . import acx as acx_mod
from . import kod, lie, norden
from .catalog import CatalogEntry
from .gaussian import format_gaussian
from .relations import operator_relation_checks


@dataclass
class AnalysisReport:
    name: str
    n: int
    unimodular: bool
    integrable: bool
    alpha: list
    alpha_form: str
    beta: str
    canonical_trivial: bool
    plurigenera: list
    kodaira: kod.KodairaVerdict
    norden: dict | None
    timing: float | None = None

    def as_dict(self) -> dict:
        d = {
            "algebra": self.name,
            "n": self.n,
            "unimodular": self.unimodular,
            "integrable": self.integrable,
            "alpha": self.alpha,
            "alpha_form": self.alpha_form,
            "beta": self.beta,
            "canonical_trivial": self.canonical_trivial,
            "plurigenera": [v.as_dict() for v in self.plurigenera],
            "kodaira": self.kodaira.as_dict(),
            "norden": self.norden if self.norden is not None else {"skipped": "needs n >= 2"},
        }
        if self.timing is not None:
            d["timing_seconds"] = round(self.timing, 3)
        return d

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), sort_keys=True, indent=2)

    def to_text(self) -> str:
        lines = [
            f"algebra: {self.name} (n = {self.n})",
            f"unimodular: {str(self.unimodular).lower()}",
            f"integrable: {str(self.integrable).lower()}",
            f"alpha: {self.alpha_form}",
            f"alpha components: {', '.join(self.alpha)}",
            f"beta: {self.beta}",
            f"canonical_trivial: {str(self.canonical_trivial).lower()}",
            "plurigenera:",
        ]
        for v in self.plurigenera:
            extra = f" [{v.note}]" if v.note and v.status is kod.Plurigenus.UNKNOWN else ""
            lines.append(f"  m={v.m}: {v.status.value} ({v.justification}){extra}")
        lines.append(f"kodaira: {self.kodaira.status.value}")
        lines.append(f"  {self.kodaira.explanation}")
        if self.norden is None:
            lines.append("norden: skipped (needs n >= 2)")
        else:
            nd = self.norden
            lines.append(f"norden: norden={str(nd['norden']).lower()} "
                         f"lc_torsion_free={str(nd['levi_civita_torsion_free']).lower()} "
                         f"lc_metric={str(nd['levi_civita_metric']).lower()} "
                         f"satoh_agreement={str(nd['satoh_agreement']).lower()}")
            defects = " ".join(f"{k}:{v}" for k, v in nd["kurose_defect_max_abs"].items())
            lines.append(f"  kurose defect max |D| per eta: {defects}")
        if self.timing is not None:
            lines.append(f"timing: {self.timing:.3f}s")
        return "\n".join(lines)


def analyze(name: str, sc: lie.StructureConstants, m_max: int = 10, timing: bool = False) -> AnalysisReport:
    t0 = time.perf_counter()
    structure = acx_mod.build(sc)
    lam = acx_mod.lambda_from_structure(sc)
    a = acx_mod.alpha(lam)
    b = acx_mod.beta(lam, a)
    table = kod.plurigenera_table(a, b, m_max)
    nd = norden.norden_summary(sc).as_dict() if sc.dim >= 2 else None
    rep = AnalysisReport(
        name=name,
        n=sc.dim,
        unimodular=lie.is_unimodular(sc),
        integrable=acx_mod.is_integrable(structure),
        alpha=[format_gaussian(c) for c in a.components],
        alpha_form=str(a.form),
        beta=format_gaussian(b.value),
        canonical_trivial=acx_mod.canonical_trivial(structure),
        plurigenera=table,
        kodaira=kod.kodaira_verdict(a, table),
        norden=nd,
    )
    if timing:
        rep.timing = time.perf_counter() - t0
    return rep


def pde_tables(sc: lie.StructureConstants, m: int) -> dict:
    lam = acx_mod.lambda_from_structure(sc)
    a = acx_mod.alpha(lam)
    b = acx_mod.beta(lam, a)
    return {
        "alpha": [format_gaussian(c) for c in a.components],
        "beta": format_gaussian(b.value),
        "real_system": kod.real_system(a, m).as_dict(),
        "elliptic_operator": kod.elliptic_operator(a, lam, m, b).as_dict(),
        "decouples": kod.decouples(b),
    }


def pde_text(sc: lie.StructureConstants, m: int) -> str:
    t = pde_tables(sc, m)
    op = t["elliptic_operator"]
    lines = [f"real system (n = {t['real_system']['n']}, m = {m}):"]
    for e in t["real_system"]["equations"]:
        lines.append(f"  [k={e['k']}.{e['family']}] {e['text']}")
    lines.append("elliptic operator:")
    lines.append(f"  L_m = {op['second_order']} + first-order terms")
    for slot, c in op["first_order"].items():
        lines.append(f"    c_{slot} = {c}")
    lines.append(f"  s = {op['s']}, t = {op['t']}")
    for eq in op["system"]:
        lines.append(f"  {eq}")
    lines.append(f"decouples: {str(t['decouples']).lower()}")
    return "\n".join(lines)


# invariant suite ---------------------------------------------------------

@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class SuiteResult:
    algebra: str
    checks: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def first_failure(self):
        return next((c for c in self.checks if not c.passed), None)

    def as_dict(self) -> dict:
        return {
            "algebra": self.algebra,
            "passed": self.passed,
            "checks": [{"name": c.name, "passed": c.passed, "detail": c.detail} for c in self.checks],
        }


def format_jacobi_defect(defect: dict) -> str:
    (i, j, k, l) = min(defect)
    return f"jacobi_defect nonzero at (i;j,k,l)=({i};{j},{k},{l}) value {defect[(i, j, k, l)]}"


def random_basis_change(n: int, rng: random.Random) -> lie.BasisChange:
    while True:
        m = [[Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(n)] for _ in range(n)]
        try:
            return lie.BasisChange(m)
        except Exception:
            continue


def _checks(entry: CatalogEntry, seed: int, basis_changes: int, exhaustive: bool) -> list:
    sc = entry.sc
    n = sc.dim
    structure = acx_mod.build(sc)
    lam = acx_mod.lambda_from_structure(sc)
    a = acx_mod.alpha(lam)
    b = acx_mod.beta(lam, a)

    def extraction():
        if entry.basis is None:
            return True, "no matrix generators"
        return lie.structure_constants_from_matrices(entry.basis) == sc, "exact closure"

    def equivalence():
        flags = (a.is_zero(), acx_mod.canonical_trivial(structure), lie.is_unimodular(sc))
        extra = (acx_mod.alpha_closed_form(sc).is_zero(), acx_mod.canonical_sum_condition(sc),
                 lie.unimodular_sum_condition(sc))
        return len(set(flags + extra)) == 1, f"alpha=0, canonical trivial, unimodular: {flags}"

    def lam_check():
        return acx_mod.lambda_from_forms(structure) == lam, "(1,1) part of d phi"

    def dbar_psi():
        return acx_mod.dbar_psi(structure).matches, "delbar psi = alpha ^ psi"

    def relations():
        rep = operator_relation_checks(structure, None if exhaustive else min(2 * n, 4))
        bad = [c for c in rep.identities if not c.holds]
        if bad:
            return False, f"{bad[0].name} fails at monomial {bad[0].first_failure}"
        if not rep.all_hold:
            return False, "psi / alpha identities fail"
        return True, f"every monomial up to degree {rep.max_degree}"

    def product_terms():
        return lam.diagonal_vanishes() and b.value.is_zero() and kod.decouples(b), \
            "lambda diagonal = 0, beta = 0"

    def real_system():
        sysm = kod.real_system(a, 1)
        ok = len(sysm.equations) == 2 * n and kod.same_equations_up_to_sign(sysm, kod.rotate_unknowns(sysm))
        return ok, "2n equations, (u, v) -> (-v, u) symmetry"

    def basis_change():
        rng = random.Random(seed)
        for _ in range(basis_changes):
            if not acx_mod.alpha_basis_change_invariance(structure, random_basis_change(n, rng)):
                return False, "alpha changed under a basis change"
        return True, f"{basis_changes} random basis changes"

    def verdicts():
        table = kod.plurigenera_table(a, b, 10)
        verdict = kod.kodaira_verdict(a, table)
        ok = (verdict.status is kod.Kodaira.ZERO) == a.is_zero()
        if a.is_zero():
            ok = ok and all(v.status is kod.Plurigenus.KNOWN_ONE for v in table)
        return ok, verdict.status.value

    def norden_suite():
        if n < 2:
            return True, "skipped (n = 1)"
        s = norden.norden_summary(sc)
        return s.ok, "Levi-Civita, 2n quasi-statistical connections, duals, Satoh"

    return [
        ("matrix extraction", extraction),
        ("three-way equivalence", equivalence),
        ("lambda cross-check", lam_check),
        ("delbar psi", dbar_psi),
        ("operator identities", relations),
        ("product lambda terms", product_terms),
        ("real system", real_system),
        ("alpha basis-change invariance", basis_change),
        ("plurigenera / kodaira", verdicts),
        ("norden suite", norden_suite),
    ]


def run_suite(entry: CatalogEntry, seed: int = 0, basis_changes: int = 3,
              exhaustive: bool = True, stop_on_failure: bool = True) -> SuiteResult:
    """Run every invariant on one algebra; Jacobi is checked first."""
    out = SuiteResult(entry.name)
    defect = lie.jacobi_defect(entry.sc)
    if defect:
        out.checks.append(CheckResult("jacobi", False, format_jacobi_defect(defect)))
        return out
    out.checks.append(CheckResult("jacobi", True, "jacobi_defect = 0"))
    for name, fn in _checks(entry, seed, basis_changes, exhaustive):
        try:
            ok, detail = fn()
        except Exception as exc:  # an invariant crashing is a failure, not a bug report
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        out.checks.append(CheckResult(name, bool(ok), detail))
        if not ok and stop_on_failure:
            break
    return out
