"""Command-line front end: ``rlcelab <command> ...``.

Exit codes: 0 success, 1 usage or file errors, 2 parameters outside the
distinguishable range, 3 attack or verification failure.
"""

from __future__ import annotations

import argparse
import csv
import io as _io
import json
import sys
import time

from . import io
from .attack import REPAIR, full_attack, verify_equivalence
from .codes import LinearCode
from .distinguisher import interval, interval_bounds, is_rlce_like
from .errors import (
    AttackFailed,
    BudgetExceeded,
    DecryptFailure,
    DegeneratePair,
    InconsistentPair,
    InvalidParams,
    KeyFileError,
    NotDistinguishable,
    NotGRS,
    RepairFailed,
    RlceLabError,
)
from .rlce import PRESETS, RlceParams, decrypt, encrypt, keygen, random_message, rng_from_seed

EXIT_OK, EXIT_USAGE, EXIT_NOT_DISTINGUISHABLE, EXIT_ATTACK_FAILED = 0, 1, 2, 3
ATTACK_ERRORS = (AttackFailed, BudgetExceeded, DegeneratePair, InconsistentPair, NotGRS, RepairFailed)


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage, which is taken here
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _hex_seed(text: str) -> bytes:
    s = text[2:] if text.lower().startswith("0x") else text
    try:
        return bytes.fromhex(s if len(s) % 2 == 0 else "0" + s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"seed must be hex, got {text!r}") from None


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--seed", type=_hex_seed, default=b"", help="hex seed (default: empty)")
    p.add_argument("--format", choices=("text", "csv", "json"), default="text")
    p.add_argument("--threads", type=int, default=1, help="worker threads for independent trials")
    return p


def _param_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--preset", choices=sorted(PRESETS))
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--w", type=int)
    p.add_argument("--t", type=int)
    p.add_argument("--m", type=int, default=10)
    p.add_argument("--poly", type=lambda s: int(s, 16), help="reduction polynomial in hex")


def _params(args) -> RlceParams:
    if args.preset:
        return PRESETS[args.preset]
    if None in (args.n, args.k, args.w):
        raise InvalidParams("give --preset or all of --n --k --w")
    return RlceParams(args.n, args.k, args.w, args.t, args.m, args.poly)


def _emit_rows(rows: list[dict], fmt: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps(rows, sort_keys=True) + "\n")
        return
    if not rows:
        return
    keys = list(rows[0])
    if fmt == "csv":
        buf = _io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=keys, lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
        out.write(buf.getvalue())
        return
    widths = {k: max(len(k), *(len(str(r[k])) for r in rows)) for k in keys}
    out.write("  ".join(k.rjust(widths[k]) for k in keys) + "\n")
    for r in rows:
        out.write("  ".join(str(r[k]).rjust(widths[k]) for k in keys) + "\n")


def _interval_text(params: RlceParams) -> str:
    lo, hi = interval_bounds(params)
    return f"{lo} {hi}" if lo <= hi else "not distinguishable"


# commands -------------------------------------------------------------------


def cmd_keygen(args, out) -> int:
    params = _params(args)
    force = {}
    for spec in args.degenerate or ():
        s, which = spec.split(":")
        force[int(s)] = which
    pk, sk = keygen(params, args.seed, force_zero=force)
    io.save_public_key(args.pub, pk)
    io.save_secret_key(args.sec, sk)
    summary = {**io.params_to_dict(params), "public_shape": list(pk.G.shape), "interval": _interval_text(params)}
    if args.format == "text":
        out.write(
            f"n={params.n} k={params.k} w={params.w} t={params.t} m={params.m} "
            f"poly={hex(params.reduction_poly)}\n"
            f"public matrix {pk.G.shape[0]}x{pk.G.shape[1]}\n"
            f"interval {summary['interval']}\n"
        )
    else:
        _emit_rows([summary], args.format, out)
    return EXIT_OK


def cmd_encrypt(args, out) -> int:
    pk = io.load_public_key(args.pub)
    if args.msg:
        p, msg = io.vector_from_dict(io.read_json(args.msg), io.MESSAGE)
        if p != pk.params:
            raise KeyFileError("message and public key parameters differ")
    else:
        msg = random_message(pk.params, rng_from_seed(args.seed, "message"))
        if args.msg_out:
            io.write_json(args.msg_out, io.vector_to_dict(io.MESSAGE, pk.params, msg))
    c = encrypt(pk, msg, seed=args.seed)
    io.write_json(args.out, io.vector_to_dict(io.CIPHERTEXT, pk.params, c))
    return EXIT_OK


def cmd_decrypt(args, out) -> int:
    sk = io.load_secret_key(args.sec)
    p, c = io.vector_from_dict(io.read_json(args.input), io.CIPHERTEXT)
    if p != sk.params:
        raise KeyFileError("ciphertext and secret key parameters differ")
    msg = decrypt(sk, c)
    doc = io.vector_to_dict(io.MESSAGE, p, msg)
    if args.out:
        io.write_json(args.out, doc)
    else:
        out.write(io.dumps(doc))
    return EXIT_OK


def cmd_distinguish(args, out) -> int:
    pk = io.load_public_key(args.pub)
    C = LinearCode(pk.field, pk.G)
    verdict = is_rlce_like(C, pk.params, args.trials, args.seed, args.size, args.threads)
    rows = [{"trial": i, **r.as_row()} for i, r in enumerate(verdict.reports)]
    _emit_rows(rows, args.format, out)
    if args.format == "text":
        label = "rlce-like" if verdict.rlce_like else "random"
        out.write(f"verdict {label} ({verdict.votes}/{len(rows)})\n")
    return EXIT_OK


def cmd_attack(args, out) -> int:
    pk = io.load_public_key(args.pub)
    interval(pk.params)  # refuse before any work
    trace: list = []
    t0 = time.perf_counter()
    try:
        rk = full_attack(pk, args.seed, args.max_shortenings, args.size, trace)
    finally:
        if args.trace:
            with open(args.trace, "w") as fh:
                for event in trace:
                    fh.write(json.dumps(event, sort_keys=True) + "\n")
    io.save_secret_key(args.out, rk.secret_key)
    repaired = sum(src == REPAIR for src in rk.pairing.discovered_by)
    row = {
        "pairs": len(rk.pairing.pairs),
        "repaired": repaired,
        "grs_positions": len(rk.grs_positions),
        "seconds": round(time.perf_counter() - t0, 3),
    }
    _emit_rows([row], args.format, out)
    return EXIT_OK


def cmd_verify(args, out) -> int:
    pk = io.load_public_key(args.pub)
    sk = io.load_secret_key(args.sec)
    if sk.params != pk.params:
        raise KeyFileError("public and secret key parameters differ")
    report = verify_equivalence(pk, sk, args.trials, args.seed)
    _emit_rows([report.as_dict()], args.format, out)
    return EXIT_OK if report.passed else EXIT_ATTACK_FAILED


def cmd_params(args, out) -> int:
    if args.preset or args.n is not None:
        params = _params(args)
        lo, hi = interval_bounds(params)
        if args.format == "text":
            out.write(_interval_text(params) + "\n")
        else:
            _emit_rows([{"ell_min": lo, "ell_max": hi, "distinguishable": lo <= hi}], args.format, out)
        return EXIT_OK if lo <= hi else EXIT_NOT_DISTINGUISHABLE
    rows = []
    for name in sorted(PRESETS):
        p = PRESETS[name]
        lo, hi = interval_bounds(p)
        rows.append({"preset": name, "n": p.n, "k": p.k, "w": p.w, "t": p.t, "m": p.m,
                     "ell_min": lo, "ell_max": hi, "distinguishable": lo <= hi})
    _emit_rows(rows, args.format, out)
    return EXIT_OK


# entry point ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = _Parser(prog="rlcelab", description="RLCE keys and the square-code key recovery")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("keygen", parents=[common], help="generate a key pair")
    _param_args(p)
    p.add_argument("--pub", required=True)
    p.add_argument("--sec", required=True)
    p.add_argument("--degenerate", action="append", metavar="S:c|d",
                   help="force mixer entry c or d of pair S to zero (repeatable)")
    p.set_defaults(func=cmd_keygen)

    p = sub.add_parser("encrypt", parents=[common], help="encrypt a message file or a seeded random message")
    p.add_argument("--pub", required=True)
    p.add_argument("--msg")
    p.add_argument("--msg-out")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_encrypt)

    p = sub.add_parser("decrypt", parents=[common], help="decrypt with a secret key")
    p.add_argument("--sec", required=True)
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_decrypt)

    p = sub.add_parser("distinguish", parents=[common], help="square-code distinguisher table")
    p.add_argument("--pub", required=True)
    p.add_argument("--trials", type=int, default=5)
    p.add_argument("--size", type=int, help="shortening size (default: middle of the interval)")
    p.set_defaults(func=cmd_distinguish)

    p = sub.add_parser("attack", parents=[common], help="recover an equivalent secret key")
    p.add_argument("--pub", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--trace", help="write JSON-lines trace here")
    p.add_argument("--max-shortenings", type=int, default=16)
    p.add_argument("--size", type=int)
    p.set_defaults(func=cmd_attack)

    p = sub.add_parser("verify", parents=[common], help="round-trip a secret key against a public key")
    p.add_argument("--pub", required=True)
    p.add_argument("--sec", required=True)
    p.add_argument("--trials", type=int, default=100)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("params", parents=[common], help="shortening interval per preset")
    _param_args(p)
    p.set_defaults(func=cmd_params)
    return parser


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except NotDistinguishable as exc:
        print(f"not distinguishable: {exc}", file=sys.stderr)
        return EXIT_NOT_DISTINGUISHABLE
    except ATTACK_ERRORS as exc:
        print(f"attack failed: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ATTACK_FAILED
    except DecryptFailure as exc:
        print(f"decryption failed: {exc}", file=sys.stderr)
        return EXIT_ATTACK_FAILED
    except (RlceLabError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
