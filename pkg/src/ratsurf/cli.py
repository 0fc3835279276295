"""JSON front end.

Request mode reads ``{"command": ..., "payload": ...}`` from ``--in`` (or
stdin) and writes a JSON response.  Giving the command on the command line
reads only the payload, except for ``regulous-eval``, which can also be
driven entirely by flags::

    ratsurf --in request.json
    ratsurf verify --in payload.json
    ratsurf regulous-eval --fn cartan_canopy --point "0,0" --k 1

Exit status: 0 on success, 2 when a verification answers negatively
(maps differ, a function is not continuous), 3 on malformed input or a
domain error; the latter prints ``{"error": code, "detail": message}``.
All numbers are printed as exact strings such as ``"-3/2"``.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import catalog
from .errors import GrammarError, RatSurfError
from .exactfield import decode_value, encode_value
from .polyrat import Equal, RationalMap, compose, evaluate, identity, maps_equal
from .regulous import (
    DEFAULT_PENCIL,
    FailAt,
    NotContinuous,
    Undetermined,
    Value,
    eval_regulous,
    k_regulous_check,
    resolve_function,
)
from .twist import (
    TwistingMap,
    dehn_twist_map,
    interpolate_circle,
    solution_certificates,
    transitivity_solve,
    winding_number,
)

COMMANDS = ("catalog", "apply", "compose", "invert-twist", "verify", "solve",
            "interp-circle", "dehn", "regulous-eval")

EXIT_OK, EXIT_NEGATIVE, EXIT_ERROR = 0, 2, 3


class InputError(RatSurfError, ValueError):
    code = "InvalidInput"


def _split_args(text: str):
    """Split ``a,b`` at the top-level comma (ignoring commas inside brackets)."""
    depth = 0
    for i, ch in enumerate(text):
        if ch in "([{":
            depth += 1
        elif ch in ")]}":
            depth -= 1
        elif ch == "," and depth == 0:
            return text[:i], text[i + 1:]
    raise GrammarError(f"compose needs two arguments: {text!r}")


def parse_map_expr(expr) -> RationalMap:
    """``NAME | compose(expr, expr) | id:Surface | inline JSON map`` (compose applies its second argument first)."""
    if isinstance(expr, dict):
        return RationalMap.from_json(expr)
    if not isinstance(expr, str):
        raise GrammarError(f"map expression must be a string or object, got {type(expr).__name__}")
    text = expr.strip()
    if text.startswith("{"):
        try:
            return RationalMap.from_json(json.loads(text))
        except json.JSONDecodeError as exc:
            raise GrammarError(f"inline map is not valid JSON: {exc}") from None
    if text.startswith("compose("):
        if not text.endswith(")"):
            raise GrammarError(f"unbalanced parentheses in {text!r}")
        g, f = _split_args(text[len("compose("):-1])
        return compose(parse_map_expr(g), parse_map_expr(f))
    if text.startswith("id:"):
        return identity(text[3:].strip())
    if text.startswith("monomial:"):
        return catalog.lookup(text)
    if not text or any(ch in text for ch in "(),"):
        raise GrammarError(f"cannot parse map expression {text!r}")
    return catalog.lookup(text)


def _point(obj):
    if not isinstance(obj, (list, tuple)):
        raise InputError(f"a point is a list of numbers, got {obj!r}")
    return tuple(decode_value(c) for c in obj)


def _enc_point(p):
    return [encode_value(c) for c in p]


def _require(payload, *keys):
    if not isinstance(payload, dict):
        raise InputError("payload must be a JSON object")
    missing = [k for k in keys if k not in payload]
    if missing:
        raise InputError(f"payload is missing {missing}")


def _twist_from(payload) -> TwistingMap:
    obj = payload.get("twist", payload)
    if "profile" not in obj:
        raise InputError("a twist needs a 'profile' (and optionally an 'axis' rotation)")
    return TwistingMap.from_json(obj)


def cmd_catalog(payload, opts):
    name = (payload or {}).get("name")
    if name is None:
        return EXIT_OK, {"names": catalog.names()}
    return EXIT_OK, {"name": name, "map": parse_map_expr(name).to_json()}


def cmd_apply(payload, opts):
    _require(payload, "point")
    p = _point(payload["point"])
    if "twist" in payload or "profile" in payload:
        return EXIT_OK, {"point": _enc_point(_twist_from(payload)(p))}
    _require(payload, "map")
    f = parse_map_expr(payload["map"])
    check = bool(payload.get("check", False))
    return EXIT_OK, {"point": _enc_point(evaluate(f, p, check=check))}


def cmd_compose(payload, opts):
    _require(payload, "g", "f")
    h = compose(parse_map_expr(payload["g"]), parse_map_expr(payload["f"]))
    return EXIT_OK, {"map": h.to_json()}


def cmd_invert_twist(payload, opts):
    t = _twist_from(payload)
    inv = t.inverse()
    cert = t.certify_inverse()
    return EXIT_OK, {"twist": inv.to_json(), "certificate": {"equal": isinstance(cert, Equal)}}


def cmd_verify(payload, opts):
    _require(payload, "lhs", "rhs")
    lhs, rhs = parse_map_expr(payload["lhs"]), parse_map_expr(payload["rhs"])
    res = maps_equal(lhs, rhs, seed=opts.seed)
    if isinstance(res, Equal):
        return EXIT_OK, {"equal": True, "factor": res.factor_text()}
    out = {"equal": False, "witness": None}
    if res.witness is not None:
        out["witness"] = _enc_point(res.witness)
        out["lhs_value"] = _enc_point(res.lhs_value)
        out["rhs_value"] = _enc_point(res.rhs_value)
    return EXIT_NEGATIVE, out


def cmd_solve(payload, opts):
    _require(payload, "P", "Q")
    P = [_point(p) for p in payload["P"]]
    Q = [_point(q) for q in payload["Q"]]
    twists = transitivity_solve(P, Q, height_cap=opts.height_cap)
    certs = solution_certificates(P, Q, twists)
    stages = [t.to_json() for t in twists]
    code = EXIT_OK if all(certs.values()) else EXIT_NEGATIVE
    return code, {"stages": stages, "certificates": certs}


def cmd_interp_circle(payload, opts):
    _require(payload, "nodes")
    nodes = []
    for node in payload["nodes"]:
        if not isinstance(node, dict) or "z" not in node or "rho" not in node:
            raise InputError("each node is {\"z\": level, \"rho\": [c, s]}")
        nodes.append((decode_value(node["z"]), _point(node["rho"])))
    f = interpolate_circle(nodes)
    hits = all(f(z) == tuple(rho) for z, rho in nodes)
    return EXIT_OK, {"profile": f.to_json(), "certificates": {
        "hits": hits, "on_circle": f.on_circle_identically(), "pole_free": f.pole_free()}}


def cmd_dehn(payload, opts):
    _require(payload, "eps", "tol")
    levels = [decode_value(z) for z in payload.get("fixed_levels", [])]
    t = dehn_twist_map(levels, decode_value(payload["eps"]), decode_value(payload["tol"]))
    return EXIT_OK, {"twist": t.to_json(), "degree": t.profile.degree,
                     "winding_number": winding_number(t.profile)}


def _enc_limit(v):
    return "infinite" if v is None else encode_value(v)


def cmd_regulous_eval(payload, opts):
    _require(payload, "fn", "point")
    f = resolve_function(payload["fn"])
    pt = payload["point"]
    if isinstance(pt, str):
        pt = [c.strip() for c in pt.split(",")]
    p = _point(pt)
    pencil = int(payload.get("pencil", opts.pencil))
    res = eval_regulous(f, p, pencil)
    code = EXIT_OK
    if isinstance(res, Value):
        out = {"result": "value", "value": encode_value(res.value), "certified": res.how,
               "witness": None}
    elif isinstance(res, NotContinuous):
        out = {"result": "not-continuous", "value": None, "witness": {
            "dir1": _enc_point(res.dir1), "value1": _enc_limit(res.value1),
            "dir2": None if res.dir2 is None else _enc_point(res.dir2),
            "value2": None if res.dir2 is None else _enc_limit(res.value2)}}
        code = EXIT_NEGATIVE
    else:
        out = {"result": "undetermined", "value": None, "witness": None}
    k = payload.get("k")
    if k is not None:
        chk = k_regulous_check(f, p, int(k), pencil)
        if isinstance(chk, FailAt):
            out["k_regulous"] = {"pass": False, "fail_order": chk.order,
                                 "direction": _enc_point(chk.direction)}
            code = EXIT_NEGATIVE
        elif isinstance(chk, Undetermined):
            out["k_regulous"] = {"pass": None}
        else:
            out["k_regulous"] = {"pass": True, "up_to": chk.k}
    return code, out


HANDLERS = {
    "catalog": cmd_catalog,
    "apply": cmd_apply,
    "compose": cmd_compose,
    "invert-twist": cmd_invert_twist,
    "verify": cmd_verify,
    "solve": cmd_solve,
    "interp-circle": cmd_interp_circle,
    "dehn": cmd_dehn,
    "regulous-eval": cmd_regulous_eval,
}


def run(request: dict, opts=None):
    """Execute one request; returns ``(exit_code, response)``."""
    opts = opts or build_parser().parse_args([])
    try:
        if not isinstance(request, dict) or "command" not in request:
            raise InputError("request must be an object with 'command' and 'payload'")
        command = request["command"]
        if command not in HANDLERS:
            raise InputError(f"unknown command {command!r}; expected one of {list(COMMANDS)}")
        return HANDLERS[command](request.get("payload") or {}, opts)
    except RatSurfError as exc:
        return EXIT_ERROR, {"error": exc.code, "detail": str(exc)}
    except (ValueError, KeyError, TypeError, ZeroDivisionError) as exc:
        return EXIT_ERROR, {"error": "InvalidInput", "detail": str(exc)}


def build_parser():
    ap = argparse.ArgumentParser(prog="ratsurf", description="Exact computations with rational surface maps.")
    ap.add_argument("command", nargs="?", choices=COMMANDS,
                    help="run this command on a payload instead of reading a full request")
    ap.add_argument("--in", dest="infile", default="-", help="input JSON file, '-' for stdin")
    ap.add_argument("--out", dest="outfile", default="-", help="output file, '-' for stdout")
    ap.add_argument("--seed", type=int, default=0, help="seed for witness sampling")
    ap.add_argument("--pencil", type=int, default=DEFAULT_PENCIL, help="number of pencil lines")
    ap.add_argument("--height-cap", type=int, default=64, help="axis search height bound")
    ap.add_argument("--fn", help="regulous-eval: builtin name or JSON function")
    ap.add_argument("--point", help='regulous-eval: point such as "0,0,1"')
    ap.add_argument("--k", type=int, help="regulous-eval: also check k-regulousness")
    return ap


def _read(path):
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _write(path, text):
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def main(argv=None) -> int:
    opts = build_parser().parse_args(argv)
    if opts.command == "regulous-eval" and opts.fn is not None:
        payload = {"fn": opts.fn, "point": opts.point or ""}
        if opts.k is not None:
            payload["k"] = opts.k
        request = {"command": "regulous-eval", "payload": payload}
        code, response = run(request, opts)
    else:
        try:
            doc = json.loads(_read(opts.infile))
        except (OSError, json.JSONDecodeError, UnicodeDecodeError) as exc:
            code, response = EXIT_ERROR, {"error": "ParseError", "detail": str(exc)}
        else:
            request = doc if opts.command is None else {"command": opts.command, "payload": doc}
            code, response = run(request, opts)
    _write(opts.outfile, json.dumps(response, sort_keys=True, ensure_ascii=False) + "\n")
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
