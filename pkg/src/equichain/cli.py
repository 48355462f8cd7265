"""Command-line front end: ``equichain <command> --input SPEC [options]``."""

import argparse
import json
import sys

from .asymptotics import asymptotic_profile, special_path_profile
from .birational import BiRational
from .chains import ChainSpec, materialize, stability_index
from .engine import cross_check, equivariant_hilbert, shape_bounds
from .errors import EquichainError, ParseError
from .groebner import (
    basis_to_json,
    equivariant_gb_truncation,
    initial_chain,
    poly_spec_from_json,
)
from .hilbert import hilbert_quotient
from .ideals import MonomialIdeal

COMMANDS = (
    "materialize",
    "stability",
    "hilbert-n",
    "equiv-hilbert",
    "asymptotics",
    "initial-chain",
    "equivariant-gb",
)


def _window(text):
    try:
        a, b = (int(x) for x in text.split(".."))
    except ValueError:
        raise argparse.ArgumentTypeError(f"window must look like A..B, got {text!r}")
    if a < 1 or b < a:
        raise argparse.ArgumentTypeError("window bounds must be positive and ordered")
    return a, b


def build_parser():
    p = argparse.ArgumentParser(prog="equichain", description="Equivariant Hilbert series of Inc-invariant chains.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--input", default="-", help="JSON file, inline JSON, or - for stdin")
    p.add_argument("--n", type=int, help="width (materialize, hilbert-n) or largest width (stability, equivariant-gb)")
    p.add_argument("--window", type=_window, help="width range A..B")
    p.add_argument("--format", choices=("json", "pretty"), default="json")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--verify-up-to", type=int, help="oracle cross-check up to this width (default r+5)")
    p.add_argument("--no-verify", action="store_true", help="skip the oracle cross-check")
    return p


def load_input(arg):
    if arg == "-":
        text = sys.stdin.read()
    elif arg.lstrip().startswith(("{", "[")):
        text = arg
    else:
        try:
            with open(arg) as fh:
                text = fh.read()
        except OSError as exc:
            raise ParseError(f"cannot read input: {exc}")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"input is not valid JSON: {exc}")


def _chain(obj):
    try:
        return ChainSpec.from_json(obj)
    except (KeyError, TypeError) as exc:
        raise ParseError(f"not a chain spec: missing or malformed {exc}")


def _need(value, flag):
    if value is None:
        raise ParseError(f"{flag} is required for this command")
    return value


def run(args, obj):
    """Dispatch a parsed command; returns (json_payload, pretty_text)."""
    cmd = args.command
    if cmd == "materialize":
        chain = _chain(obj)
        J = materialize(chain, _need(args.n, "--n"))
        return J.to_json(), str(J)

    if cmd == "stability":
        if "chain" in obj:
            members = [MonomialIdeal.from_json(m) for m in obj["chain"]]
            i = obj.get("i", 0)
            n_max = args.n or len(members)
        else:
            spec = _chain(obj)
            i = spec.i
            top = args.n or spec.r + 4
            members = [materialize(spec, n) for n in range(1, top + 1)]
            n_max = top
        cert = stability_index(members, i, n_max)
        if cert is None:
            return {"index": None, "window": [1, len(members)]}, "not found within the window"
        return cert.to_json(), f"stability index {cert.index} (i = {i}, checked widths {cert.window[0]}..{cert.window[1]})"

    if cmd == "hilbert-n":
        if "seed" in obj:
            J = materialize(_chain(obj), _need(args.n, "--n"))
        else:
            J = MonomialIdeal.from_json(obj)
        h = hilbert_quotient(J)
        return {"series": h.to_json(), "dim": h.dim, "degree": h.degree}, f"{h}   dim {h.dim}, degree {h.degree}"

    if cmd == "equiv-hilbert":
        chain = _chain(obj)
        H = equivariant_hilbert(chain, threads=args.threads)
        payload = {"series": H.to_json(), "text": str(H)}
        lines = [f"H(s,t) = {H}"]
        if args.no_verify:
            payload["verification"] = {"status": "skipped"}
            lines.append("oracle cross-check skipped")
        else:
            up_to = args.verify_up_to or chain.r + 5
            cross_check(chain, H, up_to)
            payload["verification"] = {"status": "ok", "checked_up_to": up_to}
            lines.append(f"oracle cross-check ok for n <= {up_to}")
        bounds = shape_bounds(chain, H)
        payload["bounds"] = {k: {"value": v, "bound": b, "ok": ok} for k, (v, b, ok) in bounds.items()}
        lines += [f"  {k}: {v} vs {b} {'ok' if ok else 'VIOLATED'}" for k, (v, b, ok) in bounds.items()]
        return payload, "\n".join(lines)

    if cmd == "asymptotics":
        if "num" in obj:
            H = BiRational.from_json(obj)
            window = args.window
        else:
            chain = _chain(obj)
            H = equivariant_hilbert(chain, threads=args.threads)
            window = args.window or (chain.r + 2, chain.r + 10)
        prof = special_path_profile(H, window)
        path = "closed-form"
        if prof is None:
            prof = asymptotic_profile(H, window)
            path = "partial-fractions"
        payload = prof.to_json()
        payload["path"] = path
        text = (
            f"A={prof.A} B={prof.B} M={prof.M} L={prof.L} "
            f"limit={prof.limit.numerator}/{prof.limit.denominator} (onset {prof.onset}, {path})"
        )
        return payload, text

    c, i, r, polys = _poly_spec(obj)
    if cmd == "initial-chain":
        window = args.window or (r, r + 3)
        spec, cert, pidx = initial_chain(polys, c, i, r, window)
        payload = {"chain": spec.to_json(), "certificate": cert.to_json(), "polynomial_index": pidx}
        text = f"initial chain seed at width {spec.r}: {spec.seed}\ncertificate: {cert.to_json()}\npolynomial chain index: {pidx}"
        return payload, text

    if cmd == "equivariant-gb":
        basis, w, status = equivariant_gb_truncation(polys, c, i, r, args.n or r + 3)
        payload = {"basis": basis_to_json(basis), "orbits": len(basis), "status": status}
        text = "\n".join([f"{len(basis)} Inc^{i}-orbit(s), certified at width {w}:"] + [f"  {g}" for g in basis])
        return payload, text

    raise ParseError(f"unknown command {cmd}")


def _poly_spec(obj):
    try:
        return poly_spec_from_json(obj)
    except (KeyError, TypeError) as exc:
        raise ParseError(f"not a polynomial spec: missing or malformed {exc}")


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        obj = load_input(args.input)
        payload, text = run(args, obj)
    except EquichainError as exc:
        print(json.dumps(exc.to_json(), default=str))
        return 1
    except (ValueError, KeyError, TypeError) as exc:
        print(json.dumps({"error": "invalid-argument", "message": str(exc)}))
        return 2
    if args.format == "json":
        print(json.dumps(payload, indent=2, default=str))
    else:
        print(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
