"""Command-line client of the compute service.

Every subcommand builds a request model, sends it to the service (an
in-process transport by default, or a remote base URL via --server), and
renders the JSON response.  File I/O -- profile CSVs, config files, report
output -- stays on the client side so the service remains stateless.

Exit codes: 0 ok, 1 failed verification claim, 2 configuration error,
3 numerical failure.
"""

from __future__ import annotations

import csv
import io
import json
import sys
from pathlib import Path

import click
import httpx
from click.core import ParameterSource

EXIT_CLAIM_FAILURE = 1
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3


# ---------------------------------------------------------------------------
# transport
# ---------------------------------------------------------------------------


class _InProcessTransport(httpx.BaseTransport):
    """Drive the ASGI app from a synchronous client without a socket."""

    def __init__(self, app):
        self._asgi = httpx.ASGITransport(app=app, raise_app_exceptions=False)

    def handle_request(self, request: httpx.Request) -> httpx.Response:
        import asyncio

        async def call() -> httpx.Response:
            response = await self._asgi.handle_async_request(request)
            body = b"".join([chunk async for chunk in response.stream])
            return httpx.Response(
                status_code=response.status_code,
                headers=response.headers,
                content=body,
            )

        return asyncio.run(call())


def in_process_client() -> httpx.Client:
    """Client bound to an in-process service instance (no network)."""
    from .service import app

    return httpx.Client(
        transport=_InProcessTransport(app),
        base_url="http://fwberry.local",
        timeout=600.0,
    )


def _client(server: str | None) -> httpx.Client:
    if server:
        return httpx.Client(base_url=server, timeout=600.0)
    return in_process_client()


def _request(ctx, method: str, path: str, payload: dict | None = None) -> dict:
    try:
        with _client(ctx.obj.get("server")) as client:
            if method == "GET":
                resp = client.get(path)
            else:
                resp = client.post(path, json=payload)
    except httpx.HTTPError as exc:
        click.echo(f"error: cannot reach service: {exc}", err=True)
        sys.exit(EXIT_NUMERICAL)
    if resp.status_code in (400, 422):
        click.echo(f"error: invalid configuration: {resp.json()['detail']}", err=True)
        sys.exit(EXIT_CONFIG)
    if resp.status_code >= 500:
        try:
            detail = resp.json().get("detail")
        except Exception:
            detail = resp.text
        click.echo(f"error: numerical failure: {detail}", err=True)
        sys.exit(EXIT_NUMERICAL)
    return resp.json()


# ---------------------------------------------------------------------------
# formatting
# ---------------------------------------------------------------------------


def _round12(obj):
    """Round every float to 12 significant digits, recursively."""
    if isinstance(obj, float):
        return float(f"{obj:.12g}")
    if isinstance(obj, dict):
        return {k: _round12(v) for k, v in obj.items()}
    if isinstance(obj, list):
        return [_round12(v) for v in obj]
    return obj


def _flatten(obj, prefix="", out=None):
    out = {} if out is None else out
    if isinstance(obj, dict):
        for k, v in obj.items():
            _flatten(v, f"{prefix}{k}.", out)
    elif isinstance(obj, list):
        for n, v in enumerate(obj):
            _flatten(v, f"{prefix}{n}.", out)
    else:
        out[prefix.rstrip(".")] = obj
    return out


def _to_csv(report: dict) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    rows = report.get("rows")
    if isinstance(rows, list) and rows and isinstance(rows[0], dict):
        header = list(rows[0].keys())
        writer.writerow(header)
        for row in rows:
            writer.writerow([f"{v:.12g}" if isinstance(v, float) else v
                             for v in (row[h] for h in header)])
    else:
        writer.writerow(["key", "value"])
        for key, value in _flatten(report).items():
            if isinstance(value, float):
                value = f"{value:.12g}"
            writer.writerow([key, value])
    return buf.getvalue()


def _emit(ctx, report: dict) -> None:
    fmt = ctx.obj.get("format", "json")
    report = _round12(report)
    text = (
        json.dumps(report, indent=2, sort_keys=True)
        if fmt == "json"
        else _to_csv(report)
    )
    out = ctx.obj.get("out")
    if out:
        Path(out).write_text(text + ("\n" if not text.endswith("\n") else ""))
    else:
        click.echo(text)


# ---------------------------------------------------------------------------
# option parsing helpers
# ---------------------------------------------------------------------------


def _parse_k(text: str) -> list[float]:
    try:
        return [float(part) for part in text.split(",")]
    except ValueError:
        click.echo(f"error: malformed momentum {text!r}", err=True)
        sys.exit(EXIT_CONFIG)


def _parse_domain(text: str) -> dict:
    if text in ("full", "half", "positive"):
        return {"kind": text}
    if text.startswith("custom:"):
        parts = text.split(":")
        if len(parts) != 3:
            click.echo("error: custom domain syntax is custom:lo:hi", err=True)
            sys.exit(EXIT_CONFIG)
        try:
            lo = float(parts[1])
            hi = float(parts[2])
        except ValueError:
            click.echo("error: custom domain endpoints must be numbers", err=True)
            sys.exit(EXIT_CONFIG)
        return {"kind": "custom", "lo": lo, "hi": hi}
    click.echo(f"error: unknown domain {text!r}", err=True)
    sys.exit(EXIT_CONFIG)


def _read_profile(path: str) -> dict:
    try:
        rows = []
        for line in Path(path).read_text().splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            x, y = line.split(",")
            rows.append((float(x), float(y)))
    except (OSError, ValueError) as exc:
        click.echo(f"error: unreadable profile {path!r}: {exc}", err=True)
        sys.exit(EXIT_CONFIG)
    if len(rows) < 2:
        click.echo(f"error: profile {path!r} needs at least two samples", err=True)
        sys.exit(EXIT_CONFIG)
    return {"rows": rows}


def _load_config(path: str | None) -> dict[str, str]:
    if not path:
        return {}
    cfg = {}
    try:
        for line in Path(path).read_text().splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ValueError(f"bad line {line!r}")
            key, _, value = line.partition("=")
            cfg[key.strip()] = value.strip()
    except (OSError, ValueError) as exc:
        click.echo(f"error: unreadable config {path!r}: {exc}", err=True)
        sys.exit(EXIT_CONFIG)
    return cfg


def _with_config(ctx, name: str, value, cast=str):
    """Flag > config file > built-in default."""
    cfg = ctx.obj.get("config", {})
    if ctx.get_parameter_source(name) == ParameterSource.DEFAULT and name in cfg:
        try:
            return cast(cfg[name])
        except ValueError:
            click.echo(f"error: bad config value for {name!r}", err=True)
            sys.exit(EXIT_CONFIG)
    return value


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def _shared_options(fn):
    fn = click.option("--config", default=None, help="Flat key=value config file.")(fn)
    fn = click.option(
        "--format", "fmt", type=click.Choice(["json", "csv"]), default="json"
    )(fn)
    fn = click.option("--out", default=None, help="Write the report to this path.")(fn)
    return fn


def _setup(ctx, config, fmt, out):
    cfg = _load_config(config)
    ctx.obj["config"] = cfg
    if ctx.get_parameter_source("fmt") == ParameterSource.DEFAULT and "format" in cfg:
        fmt = cfg["format"]
        if fmt not in ("json", "csv"):
            click.echo(f"error: bad config value for format: {fmt!r}", err=True)
            sys.exit(EXIT_CONFIG)
    if ctx.get_parameter_source("out") == ParameterSource.DEFAULT and "out" in cfg:
        out = cfg["out"]
    ctx.obj["format"] = fmt
    ctx.obj["out"] = out


@click.group()
@click.option("--server", default=None, help="Base URL of a running service; "
              "defaults to an in-process instance.")
@click.version_option()
@click.pass_context
def main(ctx, server):
    """Berry gauge fields and Chern numbers of continuum Dirac Hamiltonians."""
    ctx.ensure_object(dict)
    ctx.obj["server"] = server


@main.command()
@click.option("--model", default="dirac2p1", show_default=True)
@click.option("--m", default=1.0, show_default=True)
@click.option("--k", default=None, help="Comma-separated momentum components.")
@click.option(
    "--method",
    type=click.Choice(["closed_form", "analytic_diff", "finite_diff"]),
    default="closed_form",
    show_default=True,
)
@click.option("--step", type=float, default=None, help="Finite-difference step.")
@_shared_options
@click.pass_context
def curvature(ctx, model, m, k, method, step, config, fmt, out):
    """Berry curvature components at one momentum point."""
    _setup(ctx, config, fmt, out)
    model = _with_config(ctx, "model", model)
    m = _with_config(ctx, "m", m, float)
    k = _with_config(ctx, "k", k)
    if k is None:
        click.echo("error: --k is required", err=True)
        sys.exit(EXIT_CONFIG)
    payload = {"model": model, "m": m, "k": _parse_k(k), "method": method}
    if step is not None:
        payload["step"] = step
    _emit(ctx, _request(ctx, "POST", "/curvature", payload))


@main.command()
@click.option("--model", default="dirac2p1", show_default=True)
@click.option("--m", default=1.0, show_default=True)
@click.option("--k", default=None, help="Comma-separated momentum components.")
@_shared_options
@click.pass_context
def connection(ctx, model, m, k, config, fmt, out):
    """Projected Berry connection at one momentum point."""
    _setup(ctx, config, fmt, out)
    model = _with_config(ctx, "model", model)
    m = _with_config(ctx, "m", m, float)
    k = _with_config(ctx, "k", k)
    if k is None:
        click.echo("error: --k is required", err=True)
        sys.exit(EXIT_CONFIG)
    payload = {"model": model, "m": m, "k": _parse_k(k)}
    _emit(ctx, _request(ctx, "POST", "/connection", payload))


@main.command()
@click.option("--model", default="dirac2p1", show_default=True)
@click.option("--m", default=1.0, show_default=True)
@click.option("--domain", default=None,
              help="full | half | positive | custom:lo:hi "
              "(default half; quadrature always integrates the positive band)")
@click.option("--band", type=click.Choice(["positive"]), default="positive")
@click.option(
    "--method",
    type=click.Choice(["antiderivative", "quadrature", "both"]),
    default="antiderivative",
    show_default=True,
)
@click.option("--tol", default=1e-8, show_default=True)
@click.option(
    "--report",
    type=click.Choice(["value", "delta", "spin_table"]),
    default="value",
    show_default=True,
)
@click.option("--max-subdivisions", default=200, show_default=True)
@_shared_options
@click.pass_context
def chern(ctx, model, m, domain, band, method, tol, report, max_subdivisions,
          config, fmt, out):
    """Chern numbers over a filling domain (antiderivative and/or quadrature)."""
    _setup(ctx, config, fmt, out)
    model = _with_config(ctx, "model", model)
    m = _with_config(ctx, "m", m, float)
    domain = _with_config(ctx, "domain", domain)
    method = _with_config(ctx, "method", method)
    tol = _with_config(ctx, "tol", tol, float)
    payload = {
        "model": model,
        "m": m,
        "band": band,
        "method": method,
        "tol": tol,
        "report": report,
        "max_subdivisions": max_subdivisions,
    }
    if domain is not None:
        payload["domain"] = _parse_domain(domain)
    _emit(ctx, _request(ctx, "POST", "/chern", payload))


@main.command()
@click.option(
    "--quantity",
    type=click.Choice(
        [
            "g_theta",
            "p",
            "p3",
            "gw",
            "sigma_h",
            "sigma_sh_3p1",
            "sigma_sh_graphene",
            "skyrmion",
            "pumped",
        ]
    ),
    required=True,
)
@click.option("--n1", type=float, default=None)
@click.option("--n2", type=float, default=None)
@click.option("--dn1", type=float, default=None)
@click.option("--m", default=1.0, show_default=True)
@click.option("--theta", type=float, default=None)
@click.option("--phi3", type=float, default=None)
@click.option("--dtheta", type=float, default=None)
@click.option("--grid", type=int, default=400, show_default=True)
@click.option("--profile", default=None, help="Two-column CSV (coordinate, value).")
@_shared_options
@click.pass_context
def reduce(ctx, quantity, n1, n2, dn1, m, theta, phi3, dtheta, grid, profile,
           config, fmt, out):
    """Dimensional-reduction observables (polarizations, conductivities, charges)."""
    _setup(ctx, config, fmt, out)
    m = _with_config(ctx, "m", m, float)
    profile = _with_config(ctx, "profile", profile)
    payload = {
        "quantity": quantity,
        "n1": n1,
        "n2": n2,
        "dn1": dn1,
        "m": m,
        "theta": theta,
        "phi3": phi3,
        "dtheta": dtheta,
        "grid": grid,
    }
    if profile is not None:
        payload["profile"] = _read_profile(profile)
    _emit(ctx, _request(ctx, "POST", "/reduce", payload))


@main.command()
@_shared_options
@click.pass_context
def models(ctx, config, fmt, out):
    """List the model catalog."""
    _setup(ctx, config, fmt, out)
    _emit(ctx, _request(ctx, "GET", "/models"))


@main.command()
@click.option("--json", "as_json", is_flag=True, help="Machine-readable claim list.")
@click.option("--inject-sign-bug", is_flag=True, hidden=True,
              help="Fault-injection hook for testing the verifier.")
@_shared_options
@click.pass_context
def verify(ctx, as_json, inject_sign_bug, config, fmt, out):
    """Run the complete claim suite; nonzero exit when any claim fails."""
    _setup(ctx, config, fmt, out)
    report = _request(
        ctx, "POST", "/verify", {"inject_sign_bug": inject_sign_bug}
    )
    if as_json or ctx.obj.get("out"):
        _emit(ctx, report)
    else:
        for claim in report["claims"]:
            status = "PASS" if claim["passed"] else "FAIL"
            click.echo(
                f"[{status}] c{claim['criterion']:02d} {claim['id']:26s} "
                f"value={claim['value']:+.12g} expected={claim['expected']:+.12g} "
                f"tol={claim['tol']:.1e} ({claim['elapsed_ms']:.1f} ms)"
            )
        click.echo(
            f"{report['n_passed']} passed, {report['n_failed']} failed "
            f"({report['elapsed_ms'] / 1e3:.1f} s)"
        )
    if not report["all_passed"]:
        sys.exit(EXIT_CLAIM_FAILURE)


@main.command()
@click.option(
    "--quantity",
    type=click.Choice(["chern1", "chern2", "delta_km", "p", "p3"]),
    required=True,
)
@click.option("--param", type=click.Choice(["m", "theta", "phi3"]), required=True)
@click.option("--lo", type=float, required=True)
@click.option("--hi", type=float, required=True)
@click.option("--steps", type=int, default=11, show_default=True)
@click.option("--model", default="dirac2p1", show_default=True)
@click.option("--domain", default="half", show_default=True)
@click.option(
    "--method",
    type=click.Choice(["antiderivative", "quadrature"]),
    default="antiderivative",
    show_default=True,
)
@click.option("--tol", default=1e-8, show_default=True)
@click.option("--n1", type=float, default=None)
@click.option("--n2", type=float, default=None)
@_shared_options
@click.pass_context
def sweep(ctx, quantity, param, lo, hi, steps, model, domain, method, tol, n1, n2,
          config, fmt, out):
    """Sweep a parameter and tabulate one quantity per point."""
    _setup(ctx, config, fmt, out)
    model = _with_config(ctx, "model", model)
    domain = _with_config(ctx, "domain", domain)
    payload = {
        "quantity": quantity,
        "param": param,
        "lo": lo,
        "hi": hi,
        "steps": steps,
        "model": model,
        "domain": _parse_domain(domain),
        "method": method,
        "tol": tol,
        "n1": n1,
        "n2": n2,
    }
    _emit(ctx, _request(ctx, "POST", "/sweep", payload))


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8000, show_default=True)
def serve(host, port):
    """Run the compute service."""
    import uvicorn

    uvicorn.run("fwberry.service:app", host=host, port=port)


if __name__ == "__main__":
    main()
