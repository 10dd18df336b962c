"""Command-line front end.

Commands read one or more sources.  A source is a path to a definition file
or the name of a built-in fixture (``F.heis3``, ``F.ab(2)``).  Reports are
``key = value`` lines (``--format machine``) or an aligned table
(``--format human``).  Lines starting with ``#`` form a metadata header and
are ignored by ``--compare``.

Exit codes: 0 all verdicts pass, 1 ``--compare`` mismatch, 2 a PAPER-tagged
claim failed, 3 hypothesis failure, 4 input error, 5 internal invariant
violation, 6 a DERIVED or TRIVIAL claim failed.
"""

from __future__ import annotations

import argparse
import datetime
import difflib
import sys
from dataclasses import dataclass, field

from . import __version__
from . import linalg as la
from .actions import bracket_pair, check_compatible, self_pair, trivial_pair, validate_action
from .algebra import alpha_props, center, classify, validate
from .catalog import catalog_get, catalog_list, fmt_span, fmt_vector, run_fixture, tensor_of, swapped_tensor_of
from .errors import (
    HomLieError,
    HypothesisFailure,
    IncompatibleActions,
    InvariantViolation,
    ParseError,
    UnknownFixture,
)
from .series import derived_sequence, engel_class, lower_central_series
from .suites import SUITES, document_pairs, run_suite
from .textfmt import DefinitionDocument, parse, serialize
from . import tensor as tz
from . import uce as uc

EXIT_OK, EXIT_COMPARE, EXIT_PAPER, EXIT_HYPOTHESIS, EXIT_INPUT, EXIT_INVARIANT, EXIT_ORACLE = range(7)


@dataclass
class Report:
    command: str
    lines: list = field(default_factory=list)
    status: int = EXIT_OK

    def add(self, key: str, value) -> None:
        self.lines.append((key, str(value)))

    def worsen(self, code: int) -> None:
        # the first nonzero code wins, except that invariant violations dominate
        if code == EXIT_INVARIANT or self.status == EXIT_OK:
            self.status = code

    def body(self, fmt: str = "machine") -> str:
        if fmt == "machine":
            return "".join(f"{k} = {v}\n" for k, v in self.lines)
        width = max((len(k) for k, _ in self.lines), default=0)
        return "".join(f"{k.ljust(width)}  {v}\n" for k, v in self.lines)

    def header(self) -> str:
        stamp = datetime.datetime.now(datetime.timezone.utc).replace(microsecond=0).isoformat()
        return f"# homlie {__version__}\n# command = {self.command}\n# generated = {stamp}\n"

    def render(self, fmt: str) -> str:
        return self.header() + self.body(fmt)


def comparable(text: str) -> list:
    return [ln for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]


# --------------------------------------------------------------------------
# sources


def load_sources(sources) -> DefinitionDocument:
    algebras, actions, subspaces = {}, {}, {}
    for src in sources:
        if src.startswith("F."):
            doc = catalog_get(src).document
        else:
            try:
                with open(src, encoding="utf-8") as fh:
                    doc = parse(fh.read())
            except OSError as exc:
                raise ParseError(f"cannot read {src}: {exc.strerror}") from None
        for table, part in ((algebras, doc.algebras), (actions, doc.actions), (subspaces, doc.subspaces)):
            for k, v in part.items():
                if k in table:
                    raise ParseError(f"name {k!r} defined in more than one source")
                table[k] = v
    return DefinitionDocument(algebras, actions, subspaces)


def _resolve(doc: DefinitionDocument, name: str):
    """An algebra by name, or (ambient algebra, HomSubspace) for a subspace name."""
    if name in doc.algebras:
        return doc.algebras[name], None
    if name in doc.subspaces:
        alg, S = doc.subspaces[name]
        L = doc.algebras[alg]
        return L, classify(L, S)
    raise ParseError(f"unknown algebra or subspace {name!r}")


def resolve_pair(doc: DefinitionDocument, m: str, n: str, trivial: bool = False):
    LM, SM = _resolve(doc, m)
    LN, SN = _resolve(doc, n)
    if SM is not None or SN is not None:
        if LM is not LN:
            raise ParseError("subspace operands must lie in one algebra")
        SM = SM or classify(LM, la.Subspace.full(LM.dim))
        SN = SN or classify(LN, la.Subspace.full(LN.dim))
        return bracket_pair(LM, SM, SN, m, n)
    if trivial:
        return trivial_pair(LM, LN)
    if (m, n) in doc.actions and (n, m) in doc.actions:
        return check_compatible(doc.actions[(m, n)], doc.actions[(n, m)])
    if m == n:
        return self_pair(LM)
    raise ParseError(f"no actions {m} -> {n} and {n} -> {m}; pass --trivial for trivial actions")


# --------------------------------------------------------------------------
# commands


def _matrix_rows(A) -> str:
    if A.nrows == 0 or A.ncols == 0:
        return "[]"
    return "[" + "; ".join(" ".join(la.format_rational(x) for x in r) for r in A.rows) + "]"


def cmd_validate(doc: DefinitionDocument, rep: Report, args) -> None:
    for name, L in doc.algebras.items():
        r = validate(L)
        rep.add(f"algebra.{name}.validate", r.verdict)
        for f in r.failures[:5]:
            rep.add(f"algebra.{name}.failure", f.describe())
        if not r.passed:
            rep.worsen(EXIT_INPUT)
    for (a, b), act in doc.actions.items():
        r = validate_action(act)
        rep.add(f"action.{a}->{b}.validate", r.verdict)
        for f in r.failures[:5]:
            rep.add(f"action.{a}->{b}.failure", f.describe())
        if not r.passed:
            rep.worsen(EXIT_INPUT)
    seen = set()
    for (a, b) in doc.actions:
        if (b, a) in doc.actions and (b, a) not in seen and a != b:
            seen.add((a, b))
            p = check_compatible(doc.actions[(a, b)], doc.actions[(b, a)])
            rep.add(f"pair.{a},{b}.compatible", "true" if p.compatible else "false")
            for w in p.witnesses[:3]:
                rep.add(f"pair.{a},{b}.witness", f"{w.identity} {w.indices}")
    for name, (alg, S) in doc.subspaces.items():
        rep.add(f"subspace.{name}.kind", classify(doc.algebras[alg], S).kind)


def cmd_info(doc: DefinitionDocument, rep: Report, args) -> None:
    L, S = _resolve(doc, args.algebra)
    if S is not None:
        L = S.algebra(args.algebra)
    p = alpha_props(L)
    rep.add("dim", L.dim)
    rep.add("alpha", _matrix_rows(L.alpha))
    rep.add("alpha.surjective", str(p.surjective).lower())
    rep.add("alpha.alpha_identity", str(p.alpha_identity).lower())
    rep.add("alpha.weak_alpha_identity", str(p.weak_alpha_identity).lower())
    rep.add("validate", validate(L).verdict)
    rep.add("center", fmt_span(center(L).space))
    ds = derived_sequence(L, args.max_iter)
    for i, t in enumerate(ds.chain):
        rep.add(f"derived.{i}", f"{fmt_span(t.space)} ideal={'true' if t.is_hom_ideal else 'false'}")
    lcs = lower_central_series(L, args.max_iter)
    for i, t in enumerate(lcs.chain):
        rep.add(f"lcs.{i}", f"{fmt_span(t.space)} ideal={'true' if t.is_hom_ideal else 'false'}")
    rep.add("derived_class", ds.class_verdict)
    gated = p.surjective or p.weak_alpha_identity
    rep.add("solvability_class", ds.class_verdict if gated else "indeterminate")
    rep.add("nilpotency_class", lcs.class_verdict)
    rep.add("engel_class", engel_class(L, args.engel_bound).verdict)
    rep.add("perfect", str(uc.is_perfect(L)).lower())


def _star_label(T, k: int) -> str:
    c = T.quotient.free_cols[k]
    return f"e{c // T.N.dim + 1}*f{c % T.N.dim + 1}"


def cmd_tensor(doc: DefinitionDocument, rep: Report, args) -> None:
    pair = resolve_pair(doc, args.M, args.N, args.trivial)
    if not pair.compatible:
        w = pair.witnesses[0]
        raise IncompatibleActions(f"actions are not compatible: {w.identity} {w.indices}")
    T = tensor_of(pair)
    rep.add("ambient_dim", T.ambient_dim)
    rep.add("relations_rank", T.relations.rank)
    rep.add("dim", T.dim)
    for k in range(T.dim):
        rep.add(f"basis.t{k + 1}", _star_label(T, k))
    P = T.product
    nonzero = 0
    for i in range(P.dim):
        for j in range(i + 1, P.dim):
            v = P.structure[i][j]
            if not la.is_zero(v):
                nonzero += 1
                rep.add(f"bracket(t{i + 1},t{j + 1})", fmt_vector(v, "t"))
    rep.add("bracket.nonzero", nonzero)
    rep.add("twist", _matrix_rows(P.alpha))
    rep.add("psi_M", _matrix_rows(T.psiM))
    rep.add("psi_N", _matrix_rows(T.psiN))
    rep.add("ker_psi_M.rank", T.psiM.kernel().rank)
    rep.add("ker_psi_N.rank", T.psiN.kernel().rank)
    for cid, ok in tz.invariant_battery(T, swapped_tensor_of(pair)):
        rep.add(f"battery.{cid}", "pass" if ok else "fail")
        if not ok:
            rep.worsen(EXIT_INVARIANT)


def cmd_uce(doc: DefinitionDocument, rep: Report, args) -> None:
    L, S = _resolve(doc, args.algebra)
    if S is not None:
        L = S.algebra(args.algebra)
    U = uc.uce(L)
    ext = uc.check_extension(U.u, U.algebra, L)
    rep.add("perfect", "true")
    rep.add("uce.dim", U.algebra.dim)
    rep.add("h2.dim", U.h2.rank)
    rep.add("cover.surjective", str(ext.surjective).lower())
    rep.add("cover.central", str(ext.central).lower())
    rep.add("cover.isomorphism", str(U.h2.rank == 0).lower())
    rep.add("uce.perfect", str(uc.is_perfect(U.algebra)).lower())


def cmd_check(doc: DefinitionDocument, rep: Report, args) -> None:
    if len(args.sources) == 1 and args.sources[0].startswith("F."):
        pairs = catalog_get(args.sources[0]).tensor_pairs()
    else:
        pairs = document_pairs(doc)
    algebras = list(doc.algebras.items())
    suites = SUITES if args.suite == "all" else (args.suite,)
    for s in suites:
        for r in run_suite(s, pairs, algebras, args.engel_bound):
            value = r.verdict if not r.detail else f"{r.verdict} ({r.detail})"
            rep.add(f"{s}.{r.check}", value)
            if r.failed:
                rep.worsen(EXIT_INVARIANT)


def cmd_catalog(rep: Report, args) -> None:
    if args.action == "list":
        for name in catalog_list():
            rep.add(name, catalog_get(name).summary)
        return
    if args.name is None:
        raise ParseError(f"catalog {args.action} needs a fixture name")
    if args.action == "show":
        fx = catalog_get(args.name)
        rep.add("name", fx.name)
        rep.add("summary", fx.summary)
        for i, ln in enumerate(serialize(fx.document).splitlines()):
            rep.add(f"source.{i + 1:03d}", ln)
        for c in fx.claims:
            rep.add(f"claim.{c.id}", f"{c.expected} [{c.tag}; {c.locus}]")
        return
    names = catalog_list() if args.name == "all" else [args.name]
    counts = {"pass": 0, "PAPER": 0, "DERIVED": 0, "TRIVIAL": 0}
    for name in names:
        for r in run_fixture(name):
            key = f"{catalog_get(name).name}/{r.claim.id}"
            verdict = "pass" if r.passed else "fail"
            rep.add(f"{key}.computed", r.computed)
            rep.add(f"{key}.expected", r.claim.expected)
            rep.add(f"{key}.tag", r.claim.tag)
            rep.add(f"{key}.verdict", verdict)
            if r.passed:
                counts["pass"] += 1
            else:
                counts[r.claim.tag] += 1
                rep.worsen(EXIT_PAPER if r.claim.tag == "PAPER" else EXIT_ORACLE)
    rep.add("summary.pass", counts["pass"])
    for tag in ("PAPER", "DERIVED", "TRIVIAL"):
        rep.add(f"summary.fail.{tag}", counts[tag])


# --------------------------------------------------------------------------
# entry point


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--report", metavar="PATH", help="also write the machine report to PATH")
    common.add_argument("--format", choices=("human", "machine"), default="human")
    common.add_argument("--max-iter", type=int, default=None, metavar="INT",
                        help="cap on series iterations")
    common.add_argument("--engel-bound", type=int, default=None, metavar="INT",
                        help="largest k tested for k-Engel (default dim + 1)")
    common.add_argument("--compare", metavar="GOLDEN",
                        help="compare the machine report body with a golden file")

    ap = argparse.ArgumentParser(prog="homlie", description="Exact Hom-Lie algebra computations.")
    ap.add_argument("--version", action="version", version=f"homlie {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="validate algebras, actions and subspaces")
    p.add_argument("sources", nargs="+")
    p = sub.add_parser("info", parents=[common], help="center, twist properties, series and classes")
    p.add_argument("sources", nargs="+")
    p.add_argument("-a", "--algebra", required=True)
    p = sub.add_parser("tensor", parents=[common], help="non-abelian tensor product M * N")
    p.add_argument("sources", nargs="+")
    p.add_argument("-M", required=True, help="left algebra or subspace")
    p.add_argument("-N", required=True, help="right algebra or subspace")
    p.add_argument("--trivial", action="store_true", help="use trivial mutual actions")
    p = sub.add_parser("uce", parents=[common], help="universal central extension of a perfect algebra")
    p.add_argument("sources", nargs="+")
    p.add_argument("-a", "--algebra", required=True)
    p = sub.add_parser("check", parents=[common], help="run named check suites")
    p.add_argument("sources", nargs="+")
    p.add_argument("-s", "--suite", choices=SUITES + ("all",), default="all")
    p = sub.add_parser("catalog", parents=[common], help="list, show or run built-in fixtures")
    p.add_argument("action", choices=("list", "show", "run"))
    p.add_argument("name", nargs="?", help="fixture name, or 'all' for run")
    return ap


_COMMANDS = {"validate": cmd_validate, "info": cmd_info, "tensor": cmd_tensor,
             "uce": cmd_uce, "check": cmd_check}


def execute(args, argv=()) -> Report:
    rep = Report(" ".join(argv) or args.command)
    try:
        if args.command == "catalog":
            cmd_catalog(rep, args)
        else:
            _COMMANDS[args.command](load_sources(args.sources), rep, args)
    except InvariantViolation as exc:
        rep.add("error", f"InvariantViolation: {exc}")
        rep.worsen(EXIT_INVARIANT)
    except (HypothesisFailure, IncompatibleActions) as exc:
        rep.add("error", f"{type(exc).__name__}: {exc}")
        rep.worsen(EXIT_HYPOTHESIS)
    except (ParseError, UnknownFixture) as exc:
        rep.add("error", f"{type(exc).__name__}: {exc}")
        rep.worsen(EXIT_INPUT)
    except HomLieError as exc:
        rep.add("error", f"{type(exc).__name__}: {exc}")
        rep.worsen(EXIT_INPUT)
    rep.add("exit", rep.status)
    return rep


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    args = build_parser().parse_args(argv)
    rep = execute(args, argv)
    sys.stdout.write(rep.render(args.format))
    if args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            fh.write(rep.render("machine"))
    if args.compare:
        try:
            with open(args.compare, encoding="utf-8") as fh:
                golden = comparable(fh.read())
        except OSError as exc:
            sys.stderr.write(f"cannot read {args.compare}: {exc.strerror}\n")
            return EXIT_INPUT
        mine = comparable(rep.body("machine"))
        if mine != golden:
            sys.stderr.writelines(ln + "\n" for ln in difflib.unified_diff(
                golden, mine, args.compare, "report", lineterm=""))
            return EXIT_COMPARE
    return rep.status


if __name__ == "__main__":
    sys.exit(main())
