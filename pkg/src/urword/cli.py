"""Command-line client for the verification service.

Every command builds a request, sends it through the HTTP layer (an
in-process ASGI transport by default, or a remote server via --server) and
writes the response.  Exit codes: 0 pass/warn, 1 check failure, 2 config
error, 3 resource cap.
"""

from __future__ import annotations

import argparse
import asyncio
import json
import sys
from pathlib import Path

import httpx

from .errors import FamilyConfigError

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_CONFIG = 2
EXIT_RESOURCE = 3

WRAP_COLUMNS = 120


def _call(server: str | None, method: str, path: str, payload: dict) -> httpx.Response:
    if server:
        with httpx.Client(base_url=server, timeout=None) as client:
            return client.request(method, path, json=payload)

    from .service.app import create_app

    async def go() -> httpx.Response:
        transport = httpx.ASGITransport(app=create_app())
        async with httpx.AsyncClient(
            transport=transport, base_url="http://urword.internal", timeout=None
        ) as client:
            return await client.request(method, path, json=payload)

    return asyncio.run(go())


def _family_payload(spec: str) -> dict:
    """--family accepts 'paper' or a path to a JSON family file."""
    if spec in ("paper", "paper_star"):
        return {"kind": "paper_star"}
    path = Path(spec)
    if not path.exists():
        raise FamilyConfigError(f"family file not found: {spec}")
    try:
        obj = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise FamilyConfigError(f"{spec}: not valid JSON ({exc})") from None
    if not isinstance(obj, dict):
        raise FamilyConfigError(f"{spec}: family file must hold a JSON object")
    return obj


def _fail_for_status(resp: httpx.Response) -> int | None:
    """Map an error response to an exit code, printing the diagnostic."""
    if resp.status_code in (400, 422):
        print(f"config error: {_detail(resp)}", file=sys.stderr)
        return EXIT_CONFIG
    if resp.status_code == 413:
        print(f"resource limit: {_detail(resp)}", file=sys.stderr)
        return EXIT_RESOURCE
    if resp.status_code != 200:
        print(f"request failed ({resp.status_code}): {resp.text}", file=sys.stderr)
        return EXIT_FAIL
    return None


def _detail(resp: httpx.Response) -> str:
    try:
        return json.dumps(resp.json())
    except ValueError:
        return resp.text


def _stable_dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=True) + "\n"


def _write_out(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


# -- subcommands ---------------------------------------------------------------


def cmd_verify(args) -> int:
    payload: dict = {}
    if args.config:
        try:
            payload = json.loads(Path(args.config).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            print(f"config error: {exc}", file=sys.stderr)
            return EXIT_CONFIG
        if not isinstance(payload, dict):
            print("config error: suite config must be a JSON object", file=sys.stderr)
            return EXIT_CONFIG
        if isinstance(payload.get("family"), str):
            payload["family"] = _family_payload(payload["family"])
    if args.family:
        payload["family"] = _family_payload(args.family)
    params = dict(payload.get("params") or {})
    if args.max_rank is not None:
        params["max_rank"] = args.max_rank
    if args.max_n is not None:
        params["oracle_max_n"] = args.max_n
    if args.prefix_len is not None:
        params["oracle_prefix"] = args.prefix_len
    if params:
        payload["params"] = params
    if args.checks:
        payload["checks"] = [c.strip() for c in args.checks.split(",") if c.strip()]

    resp = _call(args.server, "POST", "/verify", payload)
    code = _fail_for_status(resp)
    if code is not None:
        return code
    report = resp.json()
    _write_out(_stable_dumps(report), args.out)
    counts = report["counts"]
    warn = counts["unsaturated"] + counts["skipped"]
    if warn:
        print(
            f"warnings: {counts['unsaturated']} unsaturated, "
            f"{counts['skipped']} skipped",
            file=sys.stderr,
        )
    return EXIT_OK if report["ok"] else EXIT_FAIL


def cmd_gen(args) -> int:
    try:
        family = _family_payload(args.family)
    except FamilyConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    payload = {
        "family": family,
        "which": args.which,
        "level": args.level,
        "rank": args.rank,
        "length": args.length,
    }
    resp = _call(args.server, "POST", "/generate", payload)
    code = _fail_for_status(resp)
    if code is not None:
        return code
    body = resp.json()
    word = body["word01"]
    lines = [word[i : i + WRAP_COLUMNS] for i in range(0, len(word), WRAP_COLUMNS)]
    out_path = Path(args.out)
    out_path.write_text("\n".join(lines) + ("\n" if lines else ""), encoding="utf-8")
    sidecar = {
        "family": family,
        "which": body["which"],
        "level": body["level"],
        "rank": body["rank"],
        "length": body["length"],
        "parikh": body["parikh"],
    }
    Path(str(out_path) + ".json").write_text(
        _stable_dumps(sidecar), encoding="utf-8"
    )
    return EXIT_OK


def cmd_report(args) -> int:
    try:
        family = _family_payload(args.family)
    except FamilyConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    payload = {
        "family": family,
        "kind": args.kind,
        "n_max": args.max_n,
        "rank_max": args.max_rank,
        "oracle_prefix": args.prefix_len,
        "check_budget": args.check_budget,
    }
    resp = _call(args.server, "POST", "/report", payload)
    code = _fail_for_status(resp)
    if code is not None:
        return code
    _write_out(resp.text, args.out)
    return EXIT_OK


def cmd_serve(args) -> int:
    import uvicorn

    from .service.app import create_app

    uvicorn.run(create_app(), host=args.host, port=args.port)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="urword",
        description="Exact verification of a binary substitution-tower word.",
    )
    parser.add_argument(
        "--server",
        default=None,
        help="base URL of a running service; default runs in-process",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_verify = sub.add_parser("verify", help="run a verification suite")
    p_verify.add_argument("--config", help="suite config JSON (family, checks, params)")
    p_verify.add_argument("--family", help="'paper' or a family JSON file")
    p_verify.add_argument("--checks", help="comma-separated check names")
    p_verify.add_argument("--max-rank", type=int, default=None)
    p_verify.add_argument("--max-n", type=int, default=None)
    p_verify.add_argument("--prefix-len", type=int, default=None)
    p_verify.add_argument("--out", help="write the JSON report here")
    p_verify.add_argument(
        "--format", choices=["json"], default="json", help="report format"
    )
    p_verify.set_defaults(func=cmd_verify)

    p_gen = sub.add_parser("gen", help="materialize a tower word or prefix")
    p_gen.add_argument("--family", required=True)
    p_gen.add_argument("--which", choices=["u", "v", "prefix"], required=True)
    p_gen.add_argument("--rank", type=int, default=None)
    p_gen.add_argument("--length", type=int, default=None)
    p_gen.add_argument("--level", type=int, default=0)
    p_gen.add_argument("--out", required=True, help="word file (sidecar: <out>.json)")
    p_gen.set_defaults(func=cmd_gen)

    p_report = sub.add_parser("report", help="emit a CSV report")
    p_report.add_argument("--family", required=True)
    p_report.add_argument(
        "--kind",
        choices=["complexity", "bispecial", "frequency", "recurrence"],
        required=True,
    )
    p_report.add_argument("--max-n", type=int, default=200)
    p_report.add_argument("--max-rank", type=int, default=8)
    p_report.add_argument("--prefix-len", type=int, default=None)
    p_report.add_argument("--check-budget", type=int, default=1 << 22)
    p_report.add_argument("--out", help="write the CSV here (default stdout)")
    p_report.add_argument(
        "--format", choices=["csv"], default="csv", help="report format"
    )
    p_report.set_defaults(func=cmd_report)

    p_serve = sub.add_parser("serve", help="run the HTTP service")
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=8642)
    p_serve.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except FamilyConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except httpx.HTTPError as exc:
        print(f"transport error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
