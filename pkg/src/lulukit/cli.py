"""Command-line front end.

A thin client: every command builds a request model, calls the HTTP service
in-process through an ASGI transport, and handles file input/output locally.

Exit codes: 0 success (laws hold), 1 law violation, 2 usage error,
3 unreadable or unparsable input.
"""

from __future__ import annotations

import json
import sys

import asyncio

import click
import httpx

from . import io as lio
from .laws import LAW_NAMES
from .service import app as service_app

_IO_ERROR_EXIT = 3


async def _post_async(path: str, payload: dict) -> httpx.Response:
    transport = httpx.ASGITransport(app=service_app)
    async with httpx.AsyncClient(transport=transport, base_url="http://lulukit") as client:
        return await client.post(path, json=payload)


def _post(path: str, payload: dict) -> dict:
    resp = asyncio.run(_post_async(path, payload))
    if resp.status_code >= 400:
        try:
            detail = resp.json().get("detail", resp.text)
        except ValueError:
            detail = resp.text
        raise click.UsageError(str(detail))
    return resp.json()


def _infer_format(path: str, fmt: str | None) -> str:
    if fmt:
        return fmt
    if path.endswith(".json"):
        return "json"
    if path.endswith(".csv"):
        return "csv"
    raise click.UsageError(f"cannot infer format of {path}; pass --format")


def _read_function_payload(path: str) -> dict:
    try:
        f = lio.load_function(path)
    except lio.ParseError as e:
        click.echo(f"error: {e}", err=True)
        sys.exit(_IO_ERROR_EXIT)
    return lio.function_to_json(f)


def _read_signal_payload(path: str) -> dict:
    try:
        s = lio.load_signal(path)
    except lio.ParseError as e:
        click.echo(f"error: {e}", err=True)
        sys.exit(_IO_ERROR_EXIT)
    return {
        "values": [float(v) for v in s.values],
        "spacing": s.spacing,
        "origin": s.origin,
    }


@click.group()
def main() -> None:
    """Exact LULU smoothing of piecewise-linear functions and sequences."""


@main.command()
@click.argument("input_path", type=click.Path())
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default=None,
              help="Input format; inferred from the extension by default.")
@click.option("--expr", required=True, help="Operator word over L and U, outermost first.")
@click.option("--delta", type=float, default=None, help="Smoothing width for functions.")
@click.option("--discrete-n", type=int, default=None,
              help="Window half-width for sequences (switches to discrete operators).")
@click.option("--output", "-o", "output_path", type=click.Path(), required=True)
def smooth(input_path, fmt, expr, delta, discrete_n, output_path):
    """Apply an operator pipeline and write the smoothed result."""
    fmt = _infer_format(input_path, fmt)
    if fmt == "json":
        if delta is None:
            raise click.UsageError("--delta is required for function input")
        payload = {"function": _read_function_payload(input_path),
                   "expr": expr, "delta": delta}
    else:
        if discrete_n is None:
            raise click.UsageError("--discrete-n is required for csv input")
        payload = {"signal": _read_signal_payload(input_path),
                   "expr": expr, "discrete_n": discrete_n}
    out = _post("/smooth", payload)
    if fmt == "json":
        f = lio.function_from_json(out["function"])
        lio.dump_function(f, output_path)
    else:
        from .core import DiscreteSignal

        sig = out["signal"]
        lio.dump_signal(
            DiscreteSignal(sig["values"], spacing=sig.get("spacing"),
                           origin=sig.get("origin")),
            output_path,
        )
    click.echo(f"sup distance input vs output: {out['sup_distance']:.12g}")


@main.command()
@click.argument("input_path", type=click.Path())
@click.option("--expr", required=True)
@click.option("--delta", type=float, required=True)
@click.option("--report", "-o", "report_path", type=click.Path(), required=True)
def decompose(input_path, expr, delta, report_path):
    """Split f into a smoothed part and residual, reporting total variations."""
    payload = {"function": _read_function_payload(input_path),
               "expr": expr, "delta": delta}
    out = _post("/decompose", payload)
    with open(report_path, "w", encoding="utf-8") as fh:
        json.dump(out, fh, indent=2)
        fh.write("\n")
    rep = out["report"]
    click.echo(
        "tv_f={tv_f:.12g} tv_smooth={tv_smooth:.12g} "
        "tv_residual={tv_residual:.12g} defect={defect:.3g}".format(**rep)
    )


@main.command()
@click.argument("input_path", type=click.Path())
@click.option("--delta", type=float, required=True)
@click.option("--laws", default=None,
              help=f"Comma-separated subset of: {', '.join(LAW_NAMES)}.")
@click.option("--eps", type=float, default=1e-9, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True,
              help="Seed for the randomized auxiliary width.")
@click.option("--output", "-o", "output_path", type=click.Path(), default=None,
              help="Write the JSON verdict here as well as printing it.")
def verify(input_path, delta, laws, eps, seed, output_path):
    """Check the smoother laws on the given function; exit 1 on violation."""
    selected = None
    if laws:
        selected = [w.strip() for w in laws.split(",") if w.strip()]
        unknown = set(selected) - set(LAW_NAMES)
        if unknown:
            raise click.UsageError(f"unknown laws: {', '.join(sorted(unknown))}")
    payload = {"function": _read_function_payload(input_path), "delta": delta,
               "laws": selected, "eps": eps, "seed": seed}
    out = _post("/verify", payload)
    text = json.dumps(out, indent=2)
    click.echo(text)
    if output_path:
        with open(output_path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    if not out["ok"]:
        sys.exit(1)


@main.command()
@click.argument("input_path", type=click.Path())
@click.option("--expr", required=True)
@click.option("--delta", type=float, required=True)
@click.option("--svg", "-o", "svg_path", type=click.Path(), required=True)
@click.option("--csv", "csv_path", type=click.Path(), default=None,
              help="Curve samples; defaults to the SVG path with .csv.")
@click.option("--samples", type=int, default=1000, show_default=True)
def plot(input_path, expr, delta, svg_path, csv_path, samples):
    """Emit an SVG overlaying the input (dotted) and the output (solid)."""
    payload = {"function": _read_function_payload(input_path),
               "expr": expr, "delta": delta, "samples": samples}
    out = _post("/plot", payload)
    with open(svg_path, "w", encoding="utf-8") as fh:
        fh.write(out["svg"])
    if csv_path is None:
        csv_path = svg_path.rsplit(".", 1)[0] + ".csv"
    with open(csv_path, "w", encoding="utf-8") as fh:
        fh.write(out["csv"])
    click.echo(f"wrote {svg_path} and {csv_path}")


if __name__ == "__main__":
    main()
