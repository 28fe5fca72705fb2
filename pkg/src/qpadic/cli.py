"""Command-line clients for the verification service.

Every command talks to the FastAPI app through httpx: in-process by default
(no server needed), or against a remote instance via --server / QPADIC_SERVER.
"""

from __future__ import annotations

import json
import sys

import click
import httpx


def _client(server: str | None) -> httpx.Client:
    if server:
        return httpx.Client(base_url=server, timeout=600.0)
    # in-process: drive the ASGI app through starlette's sync test client
    import warnings

    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        from fastapi.testclient import TestClient

    from .service.app import app

    return TestClient(app)


def _post(server, path, payload):
    with _client(server) as client:
        resp = client.post(path, json=payload)
    if resp.status_code != 200:
        try:
            detail = resp.json().get("detail", resp.text)
        except ValueError:
            detail = resp.text
        click.echo(f"error: {detail}", err=True)
        sys.exit(2)
    return resp.json()


def server_option(fn):
    return click.option(
        "--server",
        envvar="QPADIC_SERVER",
        default=None,
        help="base URL of a running service; defaults to in-process execution",
    )(fn)


def _echo_report(report: dict) -> None:
    for failure in report["failures"]:
        click.echo(f"FAIL {json.dumps(failure)}")
    status = "PASS" if report["passed"] else "FAIL"
    click.echo(
        f"{status} campaign={report['campaign']} cases={report['n_cases']} "
        f"failures={report['n_fail']} elapsed={report['elapsed_s']}s"
    )


def _exit_report(report: dict) -> None:
    _echo_report(report)
    sys.exit(0 if report["passed"] else 1)


# ---------------------------------------------------------------- qcalc ----

@click.group()
def qcalc():
    """q-analog arithmetic: beta values and Pochhammer valuations."""


@qcalc.command("beta")
@click.option("-p", type=int, required=True)
@click.option("-n", type=int, required=True)
@click.option("--check-bound", is_flag=True, help="certify the lower bound and report slack")
@server_option
def qcalc_beta(p, n, check_bound, server):
    """beta_p(n), optionally with the certified lower-bound check (TSV output)."""
    data = _post(server, "/qcalc/beta", {"p": p, "n": n, "check_bound": check_bound})
    click.echo("n\tbeta\tbound\tslack\tverdict")
    for row in data["rows"]:
        bound = "" if row["bound"] is None else f"{row['bound']:.6f}"
        slack = "" if row["slack"] is None else f"{row['slack']:.6f}"
        verdict = "" if row["verdict"] is None else str(row["verdict"]).lower()
        click.echo(f"{row['n']}\t{row['beta']}\t{bound}\t{slack}\t{verdict}")
    if check_bound and not all(r["verdict"] for r in data["rows"]):
        sys.exit(1)


@qcalc.command("poch-val")
@click.option("-p", type=int, required=True)
@click.option("-N", "--n-level", "n_level", type=int, required=True, metavar="N",
              help="root-of-unity level N (zeta of order p^N)")
@click.option("--verify-exact", is_flag=True, default=False,
              help="cross-check the formula against the honest field product")
@click.option("--precision", type=int, default=32)
@server_option
def qcalc_poch_val(p, n_level, verify_exact, precision, server):
    """Valuation table of (zeta; zeta)_n for 1 <= n < p^N."""
    data = _post(
        server,
        "/qcalc/poch-val",
        {"p": p, "N": n_level, "verify_exact": verify_exact, "precision": precision},
    )
    click.echo("n\tformula\tdirect\tok")
    for row in data["rows"]:
        click.echo(
            f"{row['n']}\t{row['formula']}\t{row['direct'] or ''}\t"
            f"{'' if row['ok'] is None else str(row['ok']).lower()}"
        )
    sys.exit(0 if data["all_ok"] else 1)


# ---------------------------------------------------------------- mahler ----

@click.group()
def mahler():
    """q-Mahler coefficient computation."""


@mahler.command("qexpand")
@click.option("--p", "p", type=int, required=True)
@click.option("-N", "--N", "n_level", type=int, required=True, metavar="N")
@click.option("--q", "q_expr", required=True, help="element expression, e.g. 'zeta+pi^2'")
@click.option("--f", "f_expr", default="zeta^x", help="exponential model '<expr>^x'")
@click.option("-k", "-K", "k_max", type=int, default=32, metavar="K")
@click.option("--precision", type=int, default=64)
@click.option("--json", "as_json", is_flag=True, help="dump full element JSON")
@server_option
def mahler_qexpand(p, n_level, q_expr, f_expr, k_max, precision, as_json, server):
    """q-Mahler coefficients of an exponential via the twisted-difference chain."""
    data = _post(
        server,
        "/mahler/qexpand",
        {"p": p, "N": n_level, "q": q_expr, "f": f_expr, "K": k_max,
         "precision": precision},
    )
    if as_json:
        click.echo(json.dumps(data, indent=2))
        return
    click.echo("k\tvaluation")
    for coeff in data["coefficients"]:
        click.echo(f"{coeff['k']}\t{coeff['valuation']}")
    if data["tail_rule"]:
        click.echo(f"# tail: {data['tail_rule']}")


# ---------------------------------------------------------------- fourier ----

@click.command()
@click.option("--p", "p", type=int, default=2)
@click.option("--demo", type=click.Choice(["phi-n"]), default="phi-n")
@click.option("--n-max", type=int, default=6)
@click.option("--level", type=int, default=8, help="root-of-unity level of the working field")
@click.option("--precision", type=int, default=48)
@server_option
def fourier(p, demo, n_max, level, precision, server):
    """Fourier-transform demos; phi-n tabulates F(1_{p^-n Z_p}) sup norms."""
    data = _post(
        server,
        "/schwartz/fourier-demo",
        {"p": p, "n_max": n_max, "level": level, "precision": precision},
    )
    click.echo("n\t||phi_n||\t-log_p||F(phi_n)||\texpected\tok")
    for row in data["rows"]:
        click.echo(
            f"{row['n']}\t{row['input_sup_val']}\t{row['output_sup_val']}\t"
            f"{row['expected']}\t{str(row['ok']).lower()}"
        )
    sys.exit(0 if data["all_ok"] else 1)


# -------------------------------------------------------------- heisenberg ----

@click.group()
def heisenberg():
    """Schrödinger-representation checks."""


@heisenberg.command("check-intertwine")
@click.option("--g", "g_text", default="0,1;-1,0", help="symplectic matrix rows 'a,b;c,d'")
@click.option("--trials", type=int, default=50)
@click.option("--seed", type=int, default=7)
@click.option("--p", "p", type=int, default=2)
@click.option("--level", type=int, default=8)
@click.option("--precision", type=int, default=48)
@server_option
def heisenberg_check(g_text, trials, seed, p, level, precision, server):
    """Exact intertwining identity on seeded random (f, h) pairs."""
    report = _post(
        server,
        "/schwartz/check-intertwine",
        {"p": p, "g": g_text, "trials": trials, "seed": seed, "level": level,
         "precision": precision},
    )
    _exit_report(report)


# ---------------------------------------------------------------- norms ----

@click.group()
def norms():
    """Growth-modulus analysis of norm profiles."""


def _load_profile(path: str) -> dict:
    with open(path) as fh:
        return json.load(fh)


@norms.command("growth")
@click.option("--profile", "profile_path", required=True, type=click.Path(exists=True))
@click.option("--log-r", "log_r", required=True, help="exact rational, e.g. '-1/16'")
@server_option
def norms_growth(profile_path, log_r, server):
    """G(r) in log scale with tail certification and regularity classification."""
    data = _post(
        server, "/norms/growth", {"profile": _load_profile(profile_path), "log_r": log_r}
    )
    click.echo(f"G(log_r={log_r}) = {data['value']}")
    click.echo(f"certified: {str(data['certified']).lower()}")
    click.echo(f"classification: {data['classification']}"
               + (f" (witness n={data['witness']})" if data["witness"] is not None else "")
               + (f" ties={data['ties']}" if data["ties"] else ""))
    if data["required_length"] is not None:
        click.echo(f"# tail inconclusive; profile length >= {data['required_length']} needed")
        sys.exit(1)


@norms.command("critical")
@click.option("--profile", "profile_path", required=True, type=click.Path(exists=True))
@server_option
def norms_critical(profile_path, server):
    """All certified critical radii of the profile."""
    data = _post(server, "/norms/critical", {"profile": _load_profile(profile_path)})
    click.echo("log_r\tties")
    for point in data["critical"]:
        click.echo(f"{point['log_r']}\t{','.join(map(str, point['ties']))}")
    for t in data["inconclusive"]:
        click.echo(f"# inconclusive at {t} (tail bound reaches the maximum)")


# ---------------------------------------------------------------- verify ----

@click.group()
def verify():
    """Verification campaigns and main-inequality certificates."""


@verify.command("main-inequality")
@click.option("--mode", type=click.Choice(["exact", "asymptotic"]), default="exact")
@click.option("-p", type=int, required=True)
@click.option("-N", "--n-level", "n_level", type=int, required=True, metavar="N")
@click.option("--vh", required=True, help="valuation of h, e.g. '1/16'")
@click.option("--mlog", "--Mlog", "m_log", default=None, help="log_p M, e.g. '1/8'")
@click.option("--profile", "profile_path", type=click.Path(exists=True), default=None)
@click.option("--ell", "ells", multiple=True,
              help="profile entries l_1, l_2, ... when no profile file is given")
@click.option("--k-cutoff", type=int, default=16)
@click.option("--precision", type=int, default=64)
@click.option("--seed", type=int, default=7)
@click.option("-o", "--output", "output", type=click.Path(), default=None)
@server_option
def verify_main_inequality(mode, p, n_level, vh, m_log, profile_path, ells, k_cutoff,
                           precision, seed, output, server):
    """Produce the main-inequality certificate and print its records."""
    if profile_path:
        profile = _load_profile(profile_path)
        if m_log and m_log != profile["M_log"]:
            click.echo("error: --Mlog disagrees with the profile file", err=True)
            sys.exit(2)
    else:
        if not m_log:
            click.echo("error: need --profile or --Mlog (with optional --ell)", err=True)
            sys.exit(2)
        profile = {"p": p, "M_log": m_log, "ells": ["0", *ells]}
    payload = {
        "mode": mode, "p": p, "N": n_level, "v_h": vh, "profile": profile,
        "k_cutoff": k_cutoff, "precision": precision, "seed": seed,
    }
    cert = _post(server, "/verify/main-inequality", payload)["certificate"]
    if output:
        with open(output, "w") as fh:
            json.dump(cert, fh, indent=2)
        click.echo(f"# certificate written to {output}")
    click.echo(f"mode={cert['mode']} lambda={cert['lambda']} G(s)={cert['g_log']}")
    for rec in cert["k_records"]:
        status = "pass" if rec["verdict"] else "FAIL"
        if "v_coeff" in rec:
            click.echo(f"k={rec['k']}\tv={rec['v_coeff']}\tU={rec['upper_log']}\t{status}")
        elif "value_log" in rec:
            click.echo(f"k={rec['k']}\tvalue={rec['value_log']}\t{status}")
        else:
            click.echo(f"k={rec['k']}\tU={rec['upper_log']}\t{status}")
    if cert["mode"] == "exact":
        tail = cert["tail"]
        click.echo(
            f"tail k>{tail['cutoff']}: U<={tail['upper_log_at_cutoff']} "
            f"({'pass' if tail['verdict'] else 'FAIL'}) [{tail['rule']}]"
        )
    else:
        for name in ("part1", "middle", "large"):
            section = cert[name]
            click.echo(f"{name}: {'pass' if section['verdict'] else 'FAIL'}")
    click.echo("all records pass" if cert["all_pass"] else "CERTIFICATE FAILED")
    sys.exit(0 if cert["all_pass"] else 1)


@verify.command("certificate")
@click.argument("cert_path", type=click.Path(exists=True))
@server_option
def verify_cert(cert_path, server):
    """Revalidate a certificate from its stored exact rationals."""
    with open(cert_path) as fh:
        cert = json.load(fh)
    data = _post(server, "/verify/certificate", {"certificate": cert})
    for failure in data["failures"]:
        click.echo(f"FAIL {failure}")
    click.echo("certificate OK" if data["ok"] else "certificate INVALID")
    sys.exit(0 if data["ok"] else 1)


def _campaign_command(name, params):
    def run(server, **kwargs):
        config = {k: v for k, v in kwargs.items() if v is not None and v != ()}
        report = _post(server, f"/verify/campaign/{name}", {"config": config})
        _exit_report(report)

    run.__name__ = name.replace("-", "_")
    cmd = verify.command(name)(server_option(run))
    for args, kw in reversed(params):
        cmd = click.option(*args, **kw)(cmd)
    return cmd


_campaign_command(
    "beta-formula",
    [
        (("-p", "ps"), {"type": int, "multiple": True}),
        (("-N", "--n-max-exp", "n_max_exp"), {"type": int, "default": None, "metavar": "N"}),
    ],
)
_campaign_command(
    "beta-bound",
    [
        (("-p", "ps"), {"type": int, "multiple": True}),
        (("--n-max", "n_max"), {"type": int, "default": None}),
    ],
)
_campaign_command(
    "cor-bound",
    [
        (("-p", "p"), {"type": int, "default": None}),
        (("--samples", "samples"), {"type": int, "default": None}),
        (("--seed", "seed"), {"type": int, "default": None}),
    ],
)
_campaign_command(
    "qmahler-closed-form",
    [
        (("-k", "--k-max", "k_max"), {"type": int, "default": None}),
        (("--precision", "precision"), {"type": int, "default": None}),
    ],
)
_campaign_command(
    "fourier-suite",
    [
        (("-p", "p"), {"type": int, "default": None}),
        (("--trials", "trials"), {"type": int, "default": None}),
        (("--seed", "seed"), {"type": int, "default": None}),
    ],
)
_campaign_command(
    "intertwine-suite",
    [
        (("-p", "p"), {"type": int, "default": None}),
        (("--trials", "trials"), {"type": int, "default": None}),
        (("--seed", "seed"), {"type": int, "default": None}),
        (("--g", "g"), {"default": None}),
    ],
)
_campaign_command(
    "norm-growth",
    [
        (("-p", "p"), {"type": int, "default": None}),
        (("--n-max", "n_max"), {"type": int, "default": None}),
    ],
)
_campaign_command(
    "norm-growth-properties",
    [
        (("--profiles", "profiles"), {"type": int, "default": None}),
        (("--seed", "seed"), {"type": int, "default": None}),
    ],
)
_campaign_command(
    "decay-example",
    [
        (("--trials", "trials"), {"type": int, "default": None}),
        (("--seed", "seed"), {"type": int, "default": None}),
    ],
)


# ---------------------------------------------------------------- serve ----

@click.command()
@click.option("--host", default="127.0.0.1")
@click.option("--port", type=int, default=8000)
def serve(host, port):
    """Run the verification service with uvicorn."""
    import uvicorn

    uvicorn.run("qpadic.service.app:app", host=host, port=port)


if __name__ == "__main__":  # pragma: no cover
    click.echo("use the installed entry points: qcalc, mahler, fourier, heisenberg, norms, verify")
