"""Command-line front end: a thin client for the verification service.

Every subcommand builds a request, sends it to the service (an in-process
instance by default, or a remote one via --server), writes the canonical
JSON report, and exits 0 exactly when every check passed.  Wall-clock time
is printed to stderr, never written into the report, so identical
configurations produce byte-identical report files.

Exit codes: 0 all checks passed, 1 a check failed, 2 usage error.
"""

from __future__ import annotations

import json
import sys
import warnings

import click

from .reporting import canonical_json


def _post(server: str | None, path: str, payload: dict) -> dict:
    if server:
        import httpx

        resp = httpx.post(server.rstrip("/") + path, json=payload, timeout=3600.0)
    else:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            from fastapi.testclient import TestClient

            from .service.app import app

            client = TestClient(app)
            resp = client.post(path, json=payload)
    if resp.status_code == 422:
        raise click.UsageError(f"invalid request: {resp.json().get('detail')}")
    if resp.status_code != 200:
        raise click.ClickException(f"service error {resp.status_code}: {resp.text}")
    return resp.json()


def _emit(data: dict, out: str | None, csv: str | None) -> int:
    report = data["report"]
    csv_text = report.pop("csv", None)
    text = canonical_json(report) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if csv and csv_text is not None:
        with open(csv, "w") as fh:
            fh.write(csv_text)
    click.echo(
        f"[{report.get('suite', '?')}] passed={report.get('passed')}"
        f" wall_clock={data['wall_clock_seconds']:.2f}s",
        err=True,
    )
    return 0 if report.get("passed") else 1


def _common(fn):
    fn = click.option("--server", default=None, help="Remote service URL")(fn)
    fn = click.option("--out", default=None, help="Report path (default stdout)")(fn)
    fn = click.option("--csv", default=None, help="CSV side-table path")(fn)
    return fn


@click.group()
def main() -> None:
    """Verification toolkit for spectral gaps of mapping class group
    actions on rank-one measured foliation spaces."""


@main.command()
@_common
@click.option("--base", default="0/1", help="Base slope p/q")
@click.option("--radius", default=6, type=int)
def orbit(server, out, csv, base, radius):
    """Enumerate a slope orbit ball."""
    sys.exit(_emit(_post(server, "/v1/orbit", {"base": base, "radius": radius}), out, csv))


@main.command(name="schottky-verify")
@_common
@click.option("--default", "use_default", is_flag=True, default=True,
              help="Verify the shipped pair (default)")
@click.option("--pair-file", default=None, help="JSON file with a custom pair")
@click.option("--scan-len", default=12, type=int)
def schottky_verify(server, out, csv, use_default, pair_file, scan_len):
    """Certify a Schottky pair by exact ping-pong."""
    payload: dict = {"scan_len": scan_len}
    if pair_file:
        with open(pair_file) as fh:
            payload["pair"] = json.load(fh)
    sys.exit(_emit(_post(server, "/v1/schottky-verify", payload), out, csv))


@main.command(name="limit-set")
@_common
@click.option("--depth", default=10, type=int)
def limit_set(server, out, csv, depth):
    """Interval covers of the limit set and their decay."""
    sys.exit(_emit(_post(server, "/v1/limit-set", {"depth": depth}), out, csv))


@main.command(name="gap-test")
@_common
@click.option("--orbit-base", default="0/1", help="Base slope p/q")
@click.option("--samples", default=1000, type=int)
@click.option("--seed", default=42, type=int)
@click.option("--radius", default=8, type=int)
@click.option("--punctured", is_flag=True, default=False,
              help="Draw supports away from the base slope")
def gap_test(server, out, csv, orbit_base, samples, seed, radius, punctured):
    """Random plus adversarial displacement-ratio certification."""
    payload = {
        "orbit_base": orbit_base,
        "samples": samples,
        "seed": seed,
        "radius": radius,
        "punctured": punctured,
    }
    sys.exit(_emit(_post(server, "/v1/gap-test", payload), out, csv))


@main.command(name="spectral-radius")
@_common
@click.option("--radius", default=12, type=int)
def spectral_radius(server, out, csv, radius):
    """Averaged-adjacency norms on tree balls (the Kesten cross-check)."""
    sys.exit(_emit(_post(server, "/v1/spectral-radius", {"radius": radius}), out, csv))


@main.command(name="l2-tail")
@_common
@click.option("--points", "n_points", default=20, type=int)
@click.option("--seed", default=11, type=int)
@click.option("--depth", "max_depth", default=40, type=int)
def l2_tail(server, out, csv, n_points, seed, max_depth):
    """Partial sums of the squared curve weights with certified tails."""
    payload = {"n_points": n_points, "seed": seed, "max_depth": max_depth}
    sys.exit(_emit(_post(server, "/v1/l2-tail", payload), out, csv))


@main.command()
@_common
@click.option("--point", default=None, help="Trace triple x,y,z")
@click.option("--sample", "n_points", default=100, type=int)
@click.option("--seed", default=17, type=int)
@click.option("--depth", default=12, type=int)
@click.option("--phis", "phis_file", default=None,
              help="JSON file: list of matrices [[a,b],[c,d]] as decimal strings")
def cor43(server, out, csv, point, n_points, seed, depth, phis_file):
    """Length-sum inequality check over trace points."""
    payload: dict = {"n_points": n_points, "seed": seed, "depth": depth}
    if phis_file:
        with open(phis_file) as fh:
            payload["phis"] = json.load(fh)
    if point:
        try:
            x, y, z = (float(v) for v in point.split(","))
        except ValueError as exc:
            raise click.UsageError(f"--point wants x,y,z, got {point!r}") from exc
        payload.update(
            {
                "n_points": 0,
                "include_near_degenerate": False,
                "explicit_points": [[x, y, z]],
            }
        )
    sys.exit(_emit(_post(server, "/v1/cor43", payload), out, csv))


@main.command(name="cover-build")
@_common
@click.option("--regions", "n_regions", default=50, type=int)
@click.option("--seed", default=23, type=int)
@click.option("--max-len", default=3, type=int)
def cover_build(server, out, csv, n_regions, seed, max_len):
    """Greedy disjoint covers by word-translates of wandering cells."""
    payload = {"n_regions": n_regions, "seed": seed, "max_len": max_len}
    sys.exit(_emit(_post(server, "/v1/cover-build", payload), out, csv))


@main.command(name="cont-gap")
@_common
@click.option("--samples", default=200, type=int)
@click.option("--seed", default=29, type=int)
def cont_gap(server, out, csv, samples, seed):
    """Displacement bound for step functions, exact polygon arithmetic."""
    payload = {"samples": samples, "seed": seed}
    sys.exit(_emit(_post(server, "/v1/cont-gap", payload), out, csv))


@main.command()
@_common
@click.option("--radius", default=6, type=int)
@click.option("--samples", default=500, type=int)
@click.option("--seed", default=31, type=int)
def decompose(server, out, csv, radius, samples, seed):
    """Parity decomposition checks on the coset ball."""
    payload = {"radius": radius, "samples": samples, "seed": seed}
    sys.exit(_emit(_post(server, "/v1/decompose", payload), out, csv))


@main.command()
@_common
@click.option("--seed", default=42, type=int)
@click.option("--scale", default="full", type=click.Choice(["full", "smoke"]))
def all(server, out, csv, seed, scale):
    """Run every suite from one master seed; deterministic composite report."""
    sys.exit(_emit(_post(server, "/v1/all", {"seed": seed, "scale": scale}), out, csv))


@main.command()
@click.option("--host", default="127.0.0.1")
@click.option("--port", default=8000, type=int)
def serve(host, port):
    """Run the verification service."""
    import uvicorn

    from .service.app import app

    uvicorn.run(app, host=host, port=port)


if __name__ == "__main__":
    main()
