"""FastAPI service exposing the exact-arithmetic verification campaigns.

All endpoints are synchronous compute calls; campaign runs are bounded (the
heaviest acceptance campaign stays within a couple of minutes).  The CLI is a
thin client of this app, either in-process or over HTTP.
"""

from __future__ import annotations

from fractions import Fraction

from fastapi import FastAPI, HTTPException

from .. import __version__
from ..errors import QPadicError
from ..harness import (
    CAMPAIGNS,
    MainIneqConfig,
    PreconditionError,
    main_inequality_asymptotic,
    main_inequality_exact,
    run_campaign,
    verify_certificate,
)
from ..mahler import DecayTail, ZERO_TAIL, exponential, q_mahler_coeffs
from ..norms import NormProfile, classify, critical_values, growth_modulus
from ..padic.element import CycloElement, parse_element
from ..padic.field import make_field
from ..qcalc import beta, check_beta_lower_bound, poch_valuation_formula
from ..schwartz import AdditiveCharacter, SchwartzFunction, fourier
from . import models

app = FastAPI(
    title="qpadic",
    description="Exact cyclotomic p-adic arithmetic and certificate-style verification",
    version=__version__,
)


def _bad_request(exc: Exception):
    raise HTTPException(status_code=422, detail=str(exc))


@app.get("/health", response_model=models.HealthResponse)
def health():
    return models.HealthResponse(
        status="ok", version=__version__, campaigns=sorted(CAMPAIGNS)
    )


@app.post("/qcalc/beta", response_model=models.BetaResponse)
def qcalc_beta(req: models.BetaRequest):
    if req.check_bound:
        res = check_beta_lower_bound(req.p, req.n)
        row = models.BetaRow(
            n=req.n, beta=res.beta, bound=res.bound_upper, slack=res.slack,
            verdict=res.verdict,
        )
    else:
        row = models.BetaRow(n=req.n, beta=beta(req.p, req.n).value)
    return models.BetaResponse(p=req.p, rows=[row])


@app.post("/qcalc/poch-val", response_model=models.PochValResponse)
def qcalc_poch_val(req: models.PochValRequest):
    try:
        report = run_campaign(
            "poch-val", {"p": req.p, "n_level": req.N, "precision": req.precision}
        ) if req.verify_exact else None
    except QPadicError as exc:
        _bad_request(exc)
    rows = []
    if report is not None:
        for case in report["cases"]:
            rows.append(
                models.PochValRow(
                    n=case["n"], formula=case["formula"], direct=case["direct"],
                    ok=case["ok"],
                )
            )
        all_ok = report["passed"]
    else:
        for n in range(1, req.p**req.N):
            rows.append(
                models.PochValRow(n=n, formula=str(poch_valuation_formula(req.p, req.N, n)))
            )
        all_ok = True
    return models.PochValResponse(p=req.p, N=req.N, rows=rows, all_ok=all_ok)


@app.post("/mahler/qexpand", response_model=models.QExpandResponse)
def mahler_qexpand(req: models.QExpandRequest):
    try:
        fld = make_field(req.p, req.N, req.precision)
        q = parse_element(fld, req.q)
        f_text = req.f.strip()
        if not f_text.endswith("^x"):
            raise ValueError("the function model must be an exponential '<expr>^x'")
        base = parse_element(fld, f_text[:-2])
        series = q_mahler_coeffs(exponential(base), q, req.K)
    except (QPadicError, ValueError) as exc:
        return _bad_request(exc)
    coeffs = [
        models.CoefficientOut(
            k=k, valuation=str(c.valuation()), element=c.to_json()
        )
        for k, c in enumerate(series.coeffs)
    ]
    if series.tail == ZERO_TAIL:
        tail = "zero"
    elif isinstance(series.tail, DecayTail):
        tail = (
            f"v(a_k) >= floor(k / p^{series.tail.level}) * {series.tail.step}"
            f" + {series.tail.shift}"
        )
    else:
        tail = None
    return models.QExpandResponse(
        p=req.p, N=req.N, q=req.q, coefficients=coeffs, tail_rule=tail
    )


@app.post("/schwartz/fourier-demo", response_model=models.FourierDemoResponse)
def fourier_demo(req: models.FourierDemoRequest):
    try:
        fld = make_field(req.p, req.level, req.precision)
        psi = AdditiveCharacter(fld)
    except QPadicError as exc:
        return _bad_request(exc)
    rows = []
    for n in range(1, req.n_max + 1):
        phi_n = SchwartzFunction.indicator(fld, 1, -n)
        image = fourier(phi_n, psi)
        want = SchwartzFunction.indicator(fld, 1, n).scale_values(
            CycloElement.from_int(fld, req.p**n)
        )
        rows.append(
            models.FourierDemoRow(
                n=n,
                input_sup_val=str(phi_n.sup_norm_valuation()),
                output_sup_val=str(image.sup_norm_valuation()),
                expected=str(n),
                ok=image.equals(want) and image.sup_norm_valuation() == n,
            )
        )
    return models.FourierDemoResponse(p=req.p, rows=rows, all_ok=all(r.ok for r in rows))


@app.post("/schwartz/check-intertwine", response_model=models.CampaignResponse)
def check_intertwine(req: models.IntertwineRequest):
    try:
        report = run_campaign(
            "intertwine-suite",
            {"p": req.p, "trials": req.trials, "seed": req.seed, "level": req.level,
             "precision": req.precision, "g": req.g},
        )
    except (QPadicError, ValueError) as exc:
        return _bad_request(exc)
    return models.CampaignResponse(**report)


def _profile(model: models.ProfileModel) -> NormProfile:
    return NormProfile.from_json(model.model_dump())


@app.post("/norms/growth", response_model=models.GrowthResponse)
def norms_growth(req: models.GrowthRequest):
    try:
        profile = _profile(req.profile)
        log_r = Fraction(req.log_r)
        g = growth_modulus(profile, log_r)
        verdict = classify(profile, log_r) if log_r < 0 else None
    except (QPadicError, ValueError, ZeroDivisionError) as exc:
        return _bad_request(exc)
    return models.GrowthResponse(
        value=str(g.value),
        certified=g.certified,
        argmax=list(g.argmax),
        classification=verdict.kind if verdict else "n/a",
        witness=verdict.witness if verdict else None,
        ties=list(verdict.ties) if verdict else [],
        required_length=g.required_length,
    )


@app.post("/norms/critical", response_model=models.CriticalResponse)
def norms_critical(req: models.CriticalRequest):
    try:
        profile = _profile(req.profile)
        crit, inconclusive = critical_values(profile)
    except (QPadicError, ValueError) as exc:
        return _bad_request(exc)
    return models.CriticalResponse(
        critical=[models.CriticalPoint(log_r=str(t), ties=list(ties)) for t, ties in crit],
        inconclusive=[str(t) for t in inconclusive],
    )


@app.post("/verify/campaign/{name}", response_model=models.CampaignResponse)
def verify_campaign(name: str, req: models.CampaignRequest):
    try:
        report = run_campaign(name, req.config)
    except (QPadicError, TypeError, ValueError) as exc:
        return _bad_request(exc)
    return models.CampaignResponse(**report)


@app.post("/verify/main-inequality", response_model=models.CertificateResponse)
def verify_main_inequality(req: models.MainInequalityRequest):
    try:
        cfg = MainIneqConfig(
            p=req.p,
            N=req.N,
            v_h=Fraction(req.v_h),
            profile=_profile(req.profile),
            mode=req.mode,
            k_cutoff=req.k_cutoff,
            precision=req.precision,
            seed=req.seed,
            sample_count=req.sample_count,
            exhaustive_limit=req.exhaustive_limit,
        )
        cert = (
            main_inequality_exact(cfg)
            if req.mode == "exact"
            else main_inequality_asymptotic(cfg)
        )
    except (PreconditionError, QPadicError, ValueError) as exc:
        return _bad_request(exc)
    return models.CertificateResponse(certificate=cert)


@app.post("/verify/certificate", response_model=models.VerifyCertificateResponse)
def verify_certificate_endpoint(req: models.VerifyCertificateRequest):
    result = verify_certificate(req.certificate)
    return models.VerifyCertificateResponse(ok=result.ok, failures=result.failures)
