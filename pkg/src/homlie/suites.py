"""Named check suites run over lists of action pairs or algebras.

Every suite returns ``SuiteRecord`` objects with a verdict of ``pass``,
``fail`` or ``skipped``.  Skips carry the unmet precondition.
"""

from __future__ import annotations

from dataclasses import dataclass

from .actions import ActionPair, check_compatible, induced_subspace, self_pair
from .algebra import HomLieAlgebra, alpha_props, restrict_algebra
from .errors import HomLieError, HypothesisFailure
from .series import derived_sequence, engel_class, is_k_engel, nilpotency_class
from . import tensor as tz
from . import uce as uc

SUITES = ("kernel-centrality", "corollary", "battery", "bounds", "epimorphism", "omega")


@dataclass(frozen=True)
class SuiteRecord:
    check: str
    verdict: str  # pass | fail | skipped
    detail: str = ""

    @property
    def failed(self) -> bool:
        return self.verdict == "fail"


def _v(ok: bool) -> str:
    return "pass" if ok else "fail"


def document_pairs(doc) -> list:
    """Self pairs of every algebra, then every pair of mutual actions in the document."""
    out = [(f"{n}*{n}", self_pair(L)) for n, L in doc.algebras.items()]
    seen = set()
    for (a, b) in doc.actions:
        if a == b or (b, a) not in doc.actions or (b, a) in seen:
            continue
        seen.add((a, b))
        out.append((f"{a}*{b}", check_compatible(doc.actions[(a, b)], doc.actions[(b, a)])))
    return out


def _tensor(pair: ActionPair):
    from .catalog import swapped_tensor_of, tensor_of

    return tensor_of(pair), swapped_tensor_of(pair)


def battery_suite(pairs, only=None) -> list:
    """Invariant battery for each compatible pair; ``only`` filters check ids by prefix."""
    out = []
    for label, pair in pairs:
        if not pair.compatible:
            out.append(SuiteRecord(f"{label}", "skipped", "incompatible actions"))
            continue
        T, Ts = _tensor(pair)
        for cid, ok in tz.invariant_battery(T, Ts):
            if only is None or cid.startswith(only):
                out.append(SuiteRecord(f"{label}.{cid}", _v(ok)))
    return out


def _induced(act) -> HomLieAlgebra:
    return restrict_algebra(act.target, induced_subspace(act).space)


def _solvability_gate(M: HomLieAlgebra, N: HomLieAlgebra) -> bool:
    pm, pn = alpha_props(M), alpha_props(N)
    return (pm.surjective and pn.surjective) or (pm.weak_alpha_identity and pn.weak_alpha_identity)


def bounds_suite(pairs, engel_bound: int | None = None) -> list:
    """k <= class(M * N) <= k + 1 for nilpotency and solvability, with k read off
    ^N M and ^M N; ^N M k-Engel forces M * N to be (k+1)-Engel."""
    out = []
    for label, pair in pairs:
        if not pair.compatible:
            out.append(SuiteRecord(f"{label}", "skipped", "incompatible actions"))
            continue
        T, _ = _tensor(pair)
        P = T.product
        ncl_T = nilpotency_class(P)
        scl_T = derived_sequence(P).class_verdict
        gate = _solvability_gate(pair.M, pair.N)
        for side, act in (("NM", pair.backward), ("MN", pair.forward)):
            sub = _induced(act)
            k = nilpotency_class(sub)
            cid = f"{label}.nilpotency.{side}"
            if not k.known:
                out.append(SuiteRecord(cid, "skipped", f"induced subalgebra {k}"))
            else:
                ok = ncl_T.known and k.value <= ncl_T.value <= k.value + 1
                out.append(SuiteRecord(cid, _v(ok), f"k={k} ncl={ncl_T}"))
            cid = f"{label}.solvability.{side}"
            s = derived_sequence(sub).class_verdict
            if not gate:
                out.append(SuiteRecord(cid, "skipped", "twist neither surjective nor weak alpha-identity"))
            elif not s.known:
                out.append(SuiteRecord(cid, "skipped", f"induced subalgebra {s}"))
            else:
                ok = scl_T.known and s.value <= scl_T.value <= s.value + 1
                out.append(SuiteRecord(cid, _v(ok), f"k={s} scl={scl_T}"))
            cid = f"{label}.engel.{side}"
            e = engel_class(sub, engel_bound)
            if e.engel_class is None:
                out.append(SuiteRecord(cid, "skipped", f"induced subalgebra {e.verdict}"))
            else:
                out.append(SuiteRecord(cid, _v(is_k_engel(P, e.engel_class + 1)), f"k={e.engel_class}"))
    return out


def epimorphism_suite(algebras) -> list:
    """Q * Q^[i] -> Q^[i+1] is onto for every i up to the stabilization index."""
    out = []
    for name, Q in algebras:
        ncl = nilpotency_class(Q)
        top = ncl.value if ncl.known else Q.dim
        for i in range(max(top, 1)):
            e = tz.lcs_quotient_epimorphism(Q, i)
            out.append(SuiteRecord(f"{name}.lcs_epimorphism.{i}",
                                   _v(e.homomorphism and e.surjective), f"{e.source.dim}->{e.target.dim}"))
    return out


def omega_suite(algebras) -> list:
    """eta_h exactness and the omega square for perfect algebras with surjective twist."""
    out = []
    for name, G in algebras:
        try:
            eh = uc.eta_h_sequence(G)
        except HypothesisFailure as exc:
            out.append(SuiteRecord(f"{name}.omega", "skipped", type(exc).__name__))
            continue
        r = uc.omega(G)
        out.append(SuiteRecord(f"{name}.eta_h_exact", _v(eh.exact)))
        out.append(SuiteRecord(f"{name}.eta_h_central", _v(eh.central)))
        out.append(SuiteRecord(f"{name}.omega_surjective", _v(r.surjective)))
        out.append(SuiteRecord(f"{name}.omega_square", _v(r.square_commutes)))
        out.append(SuiteRecord(f"{name}.omega_iso", _v(r.iso_flag and r.bijective)))
    return out


def run_suite(suite: str, pairs, algebras, engel_bound: int | None = None) -> list:
    if suite == "kernel-centrality":
        return battery_suite(pairs, only="kernel_")
    if suite == "corollary":
        return battery_suite(pairs, only="corollary_")
    if suite == "battery":
        return battery_suite(pairs)
    if suite == "bounds":
        return bounds_suite(pairs, engel_bound)
    if suite == "epimorphism":
        return epimorphism_suite(algebras)
    if suite == "omega":
        return omega_suite(algebras)
    raise KeyError(suite)
