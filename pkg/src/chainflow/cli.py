"""Command-line client for the solvers.

Verbs run in process by default; ``--server URL`` sends the same payload to
a running service instead.  Results go to standard output as JSON, all
diagnostics to standard error.  Exit codes: 0 success, 1 malformed input,
2 violated feasibility conditions, 3 blown resource caps.
"""

from __future__ import annotations

import argparse
import sys

from . import dispatch
from .errors import ConditionsViolated, InputError, ResourceLimitExceeded
from .problem import ConditionReport
from .serialize import EMPTY_KEY, condition_report_json, dumps, loads

EXIT_OK = 0
EXIT_BAD_INPUT = 1
EXIT_CONDITIONS = 2
EXIT_RESOURCE = 3

POSET_VERBS = ("poset-solve", "poset-verify")
GAME_VERBS = ("game-solve", "game-verify", "game-critical", "game-quantities", "pure-ne")

ENDPOINTS = {
    "poset-solve": "/poset/solve",
    "poset-verify": "/poset/verify",
    "game-solve": "/game/solve",
    "game-verify": "/game/verify",
    "game-critical": "/game/critical",
    "game-quantities": "/game/quantities",
    "pure-ne": "/game/pure-ne",
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="chainflow", description=__doc__)
    sub = parser.add_subparsers(dest="verb", required=True)

    def add_common(p: argparse.ArgumentParser) -> None:
        p.add_argument("input", nargs="?", default="-", help="input JSON file, or - for stdin")
        p.add_argument("--format", choices=("json", "pretty"), default="json")
        p.add_argument("--empty-key", default=EMPTY_KEY, help="key used for the empty subset")
        p.add_argument("--server", help="base URL of a running chainflow service")

    for verb in POSET_VERBS:
        p = sub.add_parser(verb)
        add_common(p)
        p.add_argument("--chain-cap", type=int, default=None, help="maximal-chain enumeration cap")
        if verb == "poset-solve":
            p.add_argument("--affine", action="store_true", help="require the affine solver")
            p.add_argument("--trace", action="store_true", help="include the per-iteration trace")
            p.add_argument("--oracle", action="store_true", help="cross-check against the brute-force optimum")

    for verb in GAME_VERBS:
        p = sub.add_parser(verb)
        add_common(p)
        if verb == "game-solve":
            p.add_argument("--oracle", action="store_true", help="verify the equilibrium with best-response oracles")

    serve = sub.add_parser("serve", help="run the HTTP service")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8080)
    return parser


def _read_input(path: str):
    if path == "-":
        return loads(sys.stdin.read())
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return loads(handle.read())
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def _run_local(args, data) -> dict:
    pretty = args.format == "pretty"
    verb = args.verb
    if verb == "poset-solve":
        return dispatch.poset_solve(
            data,
            force_affine=args.affine,
            trace=args.trace,
            oracle=args.oracle,
            chain_cap=args.chain_cap,
            pretty=pretty,
            empty_key=args.empty_key,
        )
    if verb == "poset-verify":
        return dispatch.poset_verify(data, chain_cap=args.chain_cap, pretty=pretty)
    if verb == "game-solve":
        return dispatch.game_solve(data, oracle=args.oracle, pretty=pretty, empty_key=args.empty_key)
    if verb == "game-verify":
        return dispatch.game_verify(data, pretty=pretty, empty_key=args.empty_key)
    if verb == "game-critical":
        return dispatch.game_critical(data, pretty=pretty)
    if verb == "game-quantities":
        return dispatch.game_quantities(data, pretty=pretty)
    if verb == "pure-ne":
        return dispatch.pure_ne(data, pretty=pretty, empty_key=args.empty_key)
    raise AssertionError(verb)


def _run_remote(args, data) -> tuple[int, dict]:
    import httpx

    options = {
        "pretty": args.format == "pretty",
        "empty_key": args.empty_key,
        "affine": getattr(args, "affine", False),
        "trace": getattr(args, "trace", False),
        "oracle": getattr(args, "oracle", False),
        "chain_cap": getattr(args, "chain_cap", None),
    }
    if args.verb in POSET_VERBS:
        body = {"problem": data, "options": options}
    elif args.verb == "game-verify":
        if not isinstance(data, dict) or "network" not in data:
            raise InputError('game-verify input needs a "network" field')
        body = {
            "network": data["network"],
            "equilibrium": data.get("equilibrium", data),
            "options": options,
        }
    else:
        body = {"network": data, "options": options}
    url = args.server.rstrip("/") + ENDPOINTS[args.verb]
    response = httpx.post(url, json=_jsonable(body), timeout=600)
    payload = response.json()
    if response.status_code == 200:
        return EXIT_OK, payload
    detail = payload.get("detail", payload)
    status_to_exit = {400: EXIT_BAD_INPUT, 422: EXIT_CONDITIONS, 413: EXIT_RESOURCE}
    return status_to_exit.get(response.status_code, EXIT_BAD_INPUT), detail


def _jsonable(value):
    from fractions import Fraction

    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, list):
        return [_jsonable(v) for v in value]
    return value


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.verb == "serve":
        import uvicorn

        from .service import app

        uvicorn.run(app, host=args.host, port=args.port)
        return EXIT_OK

    try:
        data = _read_input(args.input)
        if args.server:
            code, result = _run_remote(args, data)
            sys.stdout.write(dumps(result))
            return code
        result = _run_local(args, data)
    except ConditionsViolated as exc:
        if isinstance(exc.report, ConditionReport):
            sys.stdout.write(dumps(condition_report_json(exc.report, pretty=args.format == "pretty")))
        else:
            sys.stdout.write(dumps({"error": "conditions-violated", "message": str(exc)}))
        print("feasibility conditions violated", file=sys.stderr)
        return EXIT_CONDITIONS
    except ResourceLimitExceeded as exc:
        print(f"resource cap exceeded: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except InputError as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT

    sys.stdout.write(dumps(result))
    if args.verb == "poset-verify" and not (result["necessary_ok"] and result["conservation_ok"]):
        print("feasibility conditions violated", file=sys.stderr)
        return EXIT_CONDITIONS
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
