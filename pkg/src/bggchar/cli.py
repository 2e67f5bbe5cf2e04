"""Command-line interface.

Exit codes: 0 success, 1 negative verdict or failed verification,
2 invalid input (a JSON error object is printed), 3 missing restricted
characters (the missing weights are listed).
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .charring import (
    VOLUME_CAP,
    Character,
    TruncationWindow,
    baby_verma_character,
    check_volume,
    q_minus,
    steinberg_character,
    verma_character,
    weyl_character,
)
from .errors import (
    CapExceededError,
    ConfigurationError,
    InsufficientDepthError,
    MissingRestrictedWeight,
    WindowMismatchError,
)
from .linkage import strongly_linked
from .rootsys import RootDatum, parse_type
from .sl2 import Sl2Regime, sl2_composition_factors, sl2_reciprocity_check
from .steinberg import (
    RecordingProvider,
    RestrictedCharProvider,
    load_provider,
    simple_char_modular,
    simple_char_quantum,
    sl2_provider,
    steinberg_only_provider,
    weyl_provider,
)
from . import verify

PROVIDER_ENV = "BGGCHAR_PROVIDER"


class UsageError(ValueError):
    pass


class ProviderGaps(Exception):
    def __init__(self, missing):
        self.missing = sorted(missing)
        super().__init__("restricted characters missing")


def _weight(text: str, rd: RootDatum) -> tuple[int, ...]:
    try:
        w = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"cannot parse weight {text!r}") from None
    if len(w) != rd.rank:
        raise UsageError(f"weight {text!r} needs {rd.rank} coordinates for {rd.label}")
    return w


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % d for d in range(2, int(n**0.5) + 1))


def _check_moduli(args, rd: RootDatum) -> None:
    if args.p is not None and not _is_prime(args.p):
        raise ConfigurationError(f"p={args.p} is not prime")
    if args.ell is not None:
        if args.ell <= 1 or args.ell % 2 == 0:
            raise ConfigurationError("ell must be odd and greater than 1")
        if rd.type_label == "G" and args.ell % 3 == 0:
            raise ConfigurationError("ell must not be divisible by 3 in type G2")
    if args.depth is not None:
        if args.depth < 1:
            raise UsageError("depth must be at least 1")
        check_volume(TruncationWindow(rd.zero, args.depth), rd)


def _require(args, name: str):
    val = getattr(args, name)
    if val is None:
        raise UsageError(f"--{name} is required here")
    return val


def _provider_files(args) -> list[str]:
    paths = list(args.provider or [])
    env = os.environ.get(PROVIDER_ENV)
    if env and not paths:
        paths = [x for x in env.split(os.pathsep) if x]
    return paths


def _provider(args, rd: RootDatum, modulus: int) -> RestrictedCharProvider:
    """Restricted table at ``modulus``: a loaded file, then built-ins."""
    for path in _provider_files(args):
        prov = load_provider(path)
        if prov.modulus == modulus and prov.rd == rd:
            return prov
    if args.weyl_provider:
        return weyl_provider(rd, modulus)
    if rd.label == "A1":
        return sl2_provider(modulus)
    return steinberg_only_provider(rd, modulus)


def _emit(args, obj, pretty: str | None = None) -> None:
    if args.output == "pretty" and pretty is not None:
        print(pretty)
    else:
        print(json.dumps(obj))


def _pretty_char(ch: Character) -> str:
    lines = [
        f"type {ch.rd.label}  top {list(ch.window.top)}  depth {ch.window.depth}"
        + ("  (exact)" if ch.exact_outside else "")
    ]
    for mu, v in sorted(ch.terms.items(), reverse=True):
        lines.append(f"  {v:>6} e^{list(mu)}")
    if ch.exact_outside:
        lines.append(f"dimension {ch.dimension()}")
    return "\n".join(lines)


# -- subcommands ---------------------------------------------------------------


def cmd_char(args) -> int:
    rd = parse_type(args.type)
    _check_moduli(args, rd)
    kind = args.kind
    lam = _weight(args.lam, rd) if args.lam is not None else None
    if kind in ("verma", "simple", "weyl", "baby") and lam is None:
        raise UsageError("--lambda is required here")
    if kind == "verma":
        ch = verma_character(lam, rd, _require(args, "depth"))
    elif kind == "qminus":
        ch = q_minus(rd, _require(args, "depth"))
    elif kind == "weyl":
        ch = weyl_character(lam, rd)
    elif kind == "steinberg":
        ch = steinberg_character(args.ell or _require(args, "p"), rd)
    elif kind == "baby":
        ch = baby_verma_character(lam, args.ell or _require(args, "p"), rd)
    else:
        depth = _require(args, "depth")
        p = _require(args, "p")
        pp = RecordingProvider(_provider(args, rd, p))
        if args.ell is not None:
            qp = RecordingProvider(_provider(args, rd, args.ell))
            ch = simple_char_quantum(lam, qp, pp, depth)
            missing = {(args.ell, w) for w in qp.missing} | {(p, w) for w in pp.missing}
        else:
            ch = simple_char_modular(lam, pp, depth)
            missing = {(p, w) for w in pp.missing}
        if missing:
            raise ProviderGaps(missing)
        if ch.exact_outside:
            ch = ch.restrict(TruncationWindow(lam, depth)) if args.truncate else ch
    out = {"kind": kind, "character": ch.to_json(), "dimension": ch.dimension()}
    _emit(args, out, _pretty_char(ch))
    return 0


def cmd_linkage(args) -> int:
    rd = parse_type(args.type)
    _check_moduli(args, rd)
    k = args.ell or _require(args, "p")
    mu = _weight(_require(args, "mu"), rd)
    lam = _weight(_require(args, "lam"), rd)
    res = strongly_linked(mu, lam, k, rd)
    out = res.to_json()
    out["chain_length"] = len(res.chain)
    pretty = f"{list(mu)} {'is' if res.linked else 'is not'} strongly linked to {list(lam)} at modulus {k}"
    for w, r in res.chain:
        pretty += f"\n  {list(w)} --s({list(r.beta)}, {r.m})-->"
    _emit(args, out, pretty)
    return 0 if res.linked else 1


def _regime(args) -> Sl2Regime:
    p = _require(args, "p")
    if args.ell is not None:
        return Sl2Regime.quantum(args.ell, p)
    return Sl2Regime.modular(p)


def _sl2_int(args, name: str) -> int:
    rd = parse_type("A1")
    return _weight(_require(args, name), rd)[0]


def cmd_verify(args) -> int:
    rd = parse_type(args.type)
    _check_moduli(args, rd)
    suites = ["verma-identity", "steinberg-consistency", "sl2-ledger", "reciprocity"]
    chosen = suites if args.suite == "all" else [args.suite]
    reports = []
    for suite in chosen:
        if suite == "verma-identity":
            reports.append(verify.verma_identity(rd, args.depth or 6, seed=args.seed))
        elif suite == "steinberg-consistency":
            reports.append(verify.steinberg_consistency(rd, args.p or 3, args.depth or 12, seed=args.seed))
        elif suite == "sl2-ledger":
            regime = Sl2Regime.quantum(args.ell, args.p or 3) if args.ell else Sl2Regime.modular(args.p or 3)
            cutoff = args.cutoff if args.cutoff is not None else -54
            reports.append(verify.sl2_ledger(regime, cutoff))
        else:
            regime = Sl2Regime.quantum(args.ell, args.p or 3) if args.ell else Sl2Regime.modular(args.p or 3)
            reports.append(verify.reciprocity(regime))
    body = [rep.to_json() for rep in reports]
    passed = all(r.passed for r in reports)
    out = {"passed": passed, "reports": body}
    pretty = "\n".join(
        f"{r['suite']:<24} {'PASS' if r['passed'] else 'FAIL'}  {r['checks']} checks, {r['failed']} failed"
        + (f"  factors {r['factors']}" if "factors" in r else "")
        for r in body
    )
    _emit(args, out, pretty)
    return 0 if passed else 1


def cmd_ledger(args) -> int:
    regime = _regime(args)
    n = _sl2_int(args, "lam")
    cutoff = args.cutoff if args.cutoff is not None else n - 2 * (args.depth or 20)
    ledger = sl2_composition_factors(n, regime, cutoff)
    out = ledger.to_json()
    pretty = "factors: " + ", ".join(
        f"L({w})" + (f" x{m}" if m > 1 else "") for w, m in sorted(ledger.factors.items(), reverse=True)
    )
    for q in ledger.remainder:
        pretty += f"\nremainder: L({q.restricted_part}) (x) Delta({q.verma_part})^({q.twist})"
    _emit(args, out, pretty)
    return 0


def cmd_reciprocity(args) -> int:
    regime = _regime(args)
    lam = _sl2_int(args, "lam")
    mu = _sl2_int(args, "mu")
    lhs, rhs, ok = sl2_reciprocity_check(lam, mu, regime)
    out = {"lambda": lam, "mu": mu, "regime": regime.to_json(), "lhs": lhs, "rhs": rhs, "equal": ok}
    _emit(args, out, f"lhs={lhs} rhs={rhs} {'equal' if ok else 'DIFFERENT'}")
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bggchar", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--type", default="A1", help="root datum, e.g. A2 or G2")
    common.add_argument("--lambda", dest="lam", help="comma-separated fundamental-weight coordinates")
    common.add_argument("--mu")
    common.add_argument("--p", type=int)
    common.add_argument("--ell", type=int)
    common.add_argument("--depth", type=int)
    common.add_argument("--cutoff", type=int)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--output", choices=["json", "pretty"], default="json")
    common.add_argument("--provider", action="append", help=f"restricted table file (or ${PROVIDER_ENV})")
    common.add_argument(
        "--weyl-provider",
        action="store_true",
        help="use Weyl characters as restricted input (generic q / large p only)",
    )
    common.add_argument("--truncate", action="store_true", help="cut exact results to the depth window")
    sub = parser.add_subparsers(dest="command", required=True)
    p_char = sub.add_parser("char", parents=[common])
    p_char.add_argument("kind", choices=["verma", "simple", "baby", "weyl", "steinberg", "qminus"])
    p_char.set_defaults(func=cmd_char)
    sub.add_parser("linkage", parents=[common]).set_defaults(func=cmd_linkage)
    p_ver = sub.add_parser("verify", parents=[common])
    p_ver.add_argument(
        "suite", choices=["verma-identity", "steinberg-consistency", "sl2-ledger", "reciprocity", "all"]
    )
    p_ver.set_defaults(func=cmd_verify)
    sub.add_parser("ledger", parents=[common]).set_defaults(func=cmd_ledger)
    sub.add_parser("reciprocity", parents=[common]).set_defaults(func=cmd_reciprocity)
    return parser


def _error(kind: str, message: str, **extra) -> dict:
    return {"error": {"type": kind, "message": message, **extra}}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ProviderGaps as exc:
        missing = [{"modulus": m, "weight": list(w)} for m, w in exc.missing]
        print(json.dumps(_error("missing_restricted_weights", str(exc), missing=missing)))
        return 3
    except MissingRestrictedWeight as exc:
        missing = [{"modulus": exc.modulus, "weight": list(exc.weight)}]
        print(json.dumps(_error("missing_restricted_weights", str(exc), missing=missing)))
        return 3
    except CapExceededError as exc:
        print(json.dumps(_error("cap_exceeded", str(exc), cap=VOLUME_CAP)))
        return 2
    except (
        UsageError,
        ConfigurationError,
        InsufficientDepthError,
        WindowMismatchError,
        ValueError,
        OSError,
        KeyError,
    ) as exc:
        print(json.dumps(_error(type(exc).__name__, str(exc))))
        return 2


if __name__ == "__main__":
    sys.exit(main())
