"""Certificates for the main valuation-inequality chain.

Exact mode proves, at small N with honest extension arithmetic, that the
k = 1 term of the deformed-basis expansion of zeta^x strictly dominates every
other term; the tail is closed by the monotone non-decrease of the coefficient
valuations.  Asymptotic mode checks the sufficient large-N conditions by
formula (no extension arithmetic), with exhaustive index sweeps when the range
is small and structured sampling beyond.

Certificates are self-contained: every comparison can be revalidated from the
stored exact rationals alone.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from ..norms import NormProfile, classify, growth_modulus
from ..padic.element import CycloElement
from ..padic.field import make_field
from ..padic.scalar import vp_int
from ..qcalc import beta, log_p_bounds

SCHEMA = "qpadic.certificate/1"
EXACT_RAMIFICATION_CAP = 1 << 11

MONOTONE_RULE = (
    "each factor zeta - q^k is integral, so v(<zeta,q>_k) is non-decreasing in k"
)


@dataclass
class MainIneqConfig:
    p: int
    N: int
    v_h: Fraction
    profile: NormProfile
    mode: str = "exact"  # "exact" | "asymptotic"
    k_cutoff: int = 16
    precision: int = 64
    seed: int = 7
    sample_count: int = 64
    exhaustive_limit: int = 1_000_000

    @property
    def e(self) -> int:
        return self.p ** (self.N - 1) * (self.p - 1)

    @property
    def lam(self) -> Fraction:
        return Fraction(1, self.e)

    @property
    def m_log(self) -> Fraction:
        return self.profile.m_log


class PreconditionError(ValueError):
    pass


def _frac(x) -> str:
    return str(Fraction(x))


def _preconditions(cfg: MainIneqConfig):
    lam, v_h = cfg.lam, cfg.v_h
    records = [
        {"name": "s >= p^(-1/(p-1))", "lhs": _frac(v_h), "op": "<=",
         "rhs": _frac(Fraction(1, cfg.p - 1)), "verdict": v_h <= Fraction(1, cfg.p - 1)},
        {"name": "|1 - zeta| > s (lambda < v_h)", "lhs": _frac(lam), "op": "<",
         "rhs": _frac(v_h), "verdict": lam < v_h},
        {"name": "profile normalized at 1", "lhs": _frac(cfg.profile.ells[0]), "op": "==",
         "rhs": "0", "verdict": cfg.profile.ells[0] == 0},
    ]
    verdict = classify(cfg.profile, -v_h)
    g = growth_modulus(cfg.profile, -v_h)
    records.append(
        {"name": "s is a regular value", "lhs": verdict.kind, "op": "==",
         "rhs": "regular", "verdict": verdict.is_regular}
    )
    records.append(
        {"name": "G(s) > 1", "lhs": _frac(g.value), "op": ">", "rhs": "0",
         "verdict": g.certified and g.value > 0}
    )
    if not all(r["verdict"] for r in records):
        bad = [r["name"] for r in records if not r["verdict"]]
        raise PreconditionError(f"main-inequality preconditions failed: {bad}")
    return records, g, verdict


def main_inequality_exact(cfg: MainIneqConfig) -> dict:
    if cfg.mode != "exact":
        raise ValueError("config is not in exact mode")
    if cfg.e > EXACT_RAMIFICATION_CAP:
        raise PreconditionError(
            f"e = {cfg.e} exceeds the exact-mode cap {EXACT_RAMIFICATION_CAP}"
        )
    w = cfg.v_h * cfg.e
    if w.denominator != 1 or w < 1:
        raise PreconditionError("exact mode realizes h = pi^(v_h * e); v_h * e must be a positive integer")
    pre, g, verdict = _preconditions(cfg)
    g_log = g.value

    fld = make_field(cfg.p, cfg.N, cfg.precision)
    one = CycloElement.from_int(fld, 1)
    zeta = CycloElement.zeta(fld)
    h = CycloElement.pi(fld) ** int(w)
    q = zeta + h
    v_q_minus_1 = (q - one).valuation().expect_finite()

    records = [{"k": 0, "upper_log": "0", "verdict": Fraction(0) < g_log}]
    records.append(
        {
            "k": 1,
            "v_zeta_minus_1": _frac(cfg.lam),
            "v_q_minus_1": _frac(v_q_minus_1),
            "value_log": _frac(g_log),
            "verdict": v_q_minus_1 == cfg.lam,
        }
    )
    acc = zeta - one  # <zeta, q>_1
    qpow = q
    v_prev = acc.valuation().expect_finite()
    factors_integral = True
    monotone = True
    for k in range(2, cfg.k_cutoff + 1):
        factor = zeta - qpow
        if factor.valuation().expect_finite() < 0:
            factors_integral = False
        acc = acc * factor
        qpow = qpow * q
        v_k = acc.valuation().expect_finite()
        if v_k < v_prev:
            monotone = False
        v_prev = v_k
        upper = cfg.m_log - v_k
        records.append(
            {"k": k, "v_coeff": _frac(v_k), "upper_log": _frac(upper),
             "verdict": upper < g_log}
        )
    tail_upper = cfg.m_log - v_prev
    tail = {
        "cutoff": cfg.k_cutoff,
        "rule": MONOTONE_RULE,
        "factors_integral": factors_integral,
        "monotone_over_computed_range": monotone,
        "upper_log_at_cutoff": _frac(tail_upper),
        "verdict": factors_integral and monotone and tail_upper < g_log,
    }
    cert = {
        "schema": SCHEMA,
        "mode": "exact",
        "config": {
            "p": cfg.p,
            "N": cfg.N,
            "v_h": _frac(cfg.v_h),
            "M_log": _frac(cfg.m_log),
            "profile": cfg.profile.to_json(),
            "k_cutoff": cfg.k_cutoff,
            "precision": cfg.precision,
        },
        "lambda": _frac(cfg.lam),
        "g_log": _frac(g_log),
        "regular_witness": verdict.witness,
        "preconditions": pre,
        "k_records": records,
        "tail": tail,
    }
    cert["all_pass"] = _all_verdicts(cert)
    return cert


def main_inequality_asymptotic(cfg: MainIneqConfig) -> dict:
    if cfg.mode != "asymptotic":
        raise ValueError("config is not in asymptotic mode")
    pre, g, verdict = _preconditions(cfg)
    g_log = g.value
    p, lam, v_h = cfg.p, cfg.lam, cfg.v_h
    alpha = v_h / (4 * lam)  # (1 / 2 lambda) log_p(1 / sqrt(s))
    conditions = [
        {"name": "alpha > p^8", "lhs": _frac(alpha), "op": ">", "rhs": str(p**8),
         "verdict": alpha > p**8}
    ]
    # condition 3: (lambda/4) alpha log_p(alpha) >= M_log + v_h/2, log rounded down
    log_alpha_lo, log_alpha_hi = _log_p_fraction_bounds(alpha, p)
    lhs_lo = (lam / 4) * alpha * log_alpha_lo
    rhs = cfg.m_log + v_h / 2
    conditions.append(
        {"name": "(lambda/4) alpha log_p(alpha) >= log_p(M/sqrt(s))",
         "lhs_lower": _frac(lhs_lo), "log_alpha_lower": _frac(log_alpha_lo),
         "log_alpha_upper": _frac(log_alpha_hi),
         "op": ">=", "rhs": _frac(rhs), "verdict": lhs_lo >= rhs}
    )
    if not all(c["verdict"] for c in conditions):
        bad = [c["name"] for c in conditions if not c["verdict"]]
        raise PreconditionError(f"asymptotic conditions failed: {bad}")

    two_alpha = 2 * alpha
    range_hi = int(two_alpha) if two_alpha == int(two_alpha) else math.floor(two_alpha)
    if range_hi >= p**cfg.N:
        raise PreconditionError("index range 2 alpha must stay below p^N")
    rng = random.Random(cfg.seed)
    indices, exhaustive = _index_plan(range_hi, p, cfg.exhaustive_limit, cfg.sample_count, rng)
    part1 = _sweep_small_valuations(indices, p, lam, v_h / 2)
    part1.update({"name": "|1 - q^i| >= sqrt(s) for i <= 2 alpha",
                  "range_hi": str(range_hi), "exhaustive": exhaustive})
    middle = _sweep_middle_ratio(indices, p, lam, v_h)
    middle.update({"name": "|<zeta,q>_k| <= sqrt(s) |(q;q)_k| for middle k",
                   "range_hi": str(range_hi), "exhaustive": exhaustive})

    m = math.ceil(alpha)
    beta_m = beta(p, m).value
    log_m_lo, _ = _log_p_fraction_bounds(Fraction(m), p)
    corollary_ok = Fraction(beta_m) >= Fraction(m) * log_m_lo / 4  # supporting check
    closing = lam * beta_m >= cfg.m_log + v_h / 2
    large = {
        "name": "large-k bound via m-trick",
        "m": str(m),
        "m_in_window": bool(alpha <= m < two_alpha),
        "m_above_p8": bool(m > p**8),
        "beta_p_m": str(beta_m),
        "lambda_beta": _frac(lam * beta_m),
        "needed": _frac(cfg.m_log + v_h / 2),
        "corollary_supporting": bool(corollary_ok),
        "monotone_rule": MONOTONE_RULE,
        "upper_log_beyond": _frac(cfg.m_log - (v_h / 2 + lam * beta_m)),
        "verdict": bool(closing and alpha <= m < two_alpha and m > p**8),
    }
    sampled = []
    for k in _large_k_samples(range_hi, p, cfg.N, cfg.sample_count // 4, rng):
        sampled.append(
            {"k": str(k), "v_bound": _frac(v_h / 2 + lam * beta_m),
             "upper_log": _frac(cfg.m_log - (v_h / 2 + lam * beta_m)),
             "verdict": bool(closing)}
        )
    cert = {
        "schema": SCHEMA,
        "mode": "asymptotic",
        "config": {
            "p": p,
            "N": cfg.N,
            "v_h": _frac(v_h),
            "M_log": _frac(cfg.m_log),
            "profile": cfg.profile.to_json(),
            "seed": cfg.seed,
            "sample_count": cfg.sample_count,
            "exhaustive_limit": cfg.exhaustive_limit,
        },
        "lambda": _frac(lam),
        "alpha": _frac(alpha),
        "g_log": _frac(g_log),
        "regular_witness": verdict.witness,
        "preconditions": pre,
        "conditions": conditions,
        "part1": part1,
        "middle": middle,
        "large": large,
        "sampled_large_k": sampled,
        "k_records": [
            {"k": 0, "upper_log": "0", "verdict": Fraction(0) < g_log},
            {"k": 1, "value_log": _frac(g_log), "v_q_minus_1": _frac(lam),
             "verdict": lam < v_h},
        ],
    }
    cert["all_pass"] = _all_verdicts(cert)
    return cert


def _index_plan(range_hi, p, limit, sample_count, rng):
    if range_hi <= limit:
        return list(range(1, range_hi + 1)), True
    indices = {1, range_hi}
    pj = p
    while pj <= range_hi:
        indices.update({pj, pj - 1})
        if pj + 1 <= range_hi:
            indices.add(pj + 1)
        pj *= p
    indices.add(pj // p)  # the adversarial maximal p-power in range
    while len(indices) < sample_count:
        indices.add(rng.randint(1, range_hi))
    return sorted(indices), False


def _sweep_small_valuations(indices, p, lam, bound):
    """check lambda * p^(v_p(i)) <= bound for every index."""
    worst = None
    failures = []
    for i in indices:
        val = lam * p ** vp_int(i, p)
        if val > bound:
            failures.append(i)
        if worst is None or val > worst[1]:
            worst = (i, val)
    return {
        "checked": len(indices),
        "bound": _frac(bound),
        "worst_index": str(worst[0]),
        "worst_value": _frac(worst[1]),
        "failures": [str(i) for i in failures],
        "verdict": not failures,
    }


def _sweep_middle_ratio(indices, p, lam, v_h):
    """ratio valuation lambda + v_h - v(1-q^(k-1)) - v(1-q^k) >= v_h / 2."""
    worst = None
    failures = []
    for k in indices:
        if k < 2:
            continue
        ratio = lam + v_h - lam * (p ** vp_int(k - 1, p) + p ** vp_int(k, p))
        if ratio < v_h / 2:
            failures.append(k)
        if worst is None or ratio < worst[1]:
            worst = (k, ratio)
    return {
        "checked": len([k for k in indices if k >= 2]),
        "bound": _frac(v_h / 2),
        "worst_index": str(worst[0]) if worst else "",
        "worst_value": _frac(worst[1]) if worst else "",
        "failures": [str(k) for k in failures],
        "verdict": not failures,
    }


def _large_k_samples(range_hi, p, N, count, rng):
    hi = min(p**N - 1, max(range_hi * p, 1 << 20))
    if hi <= range_hi + 1:
        return []
    out = {range_hi + 1, hi}
    pj = 1
    while pj <= hi:
        if pj > range_hi:
            out.add(pj)
        pj *= p
    while len(out) < max(4, count):
        out.add(rng.randint(range_hi + 1, hi))
    return sorted(out)


def _log_p_fraction_bounds(x: Fraction, p: int, denom: int = 64):
    """Exact rational bounds on log_p of a positive rational."""
    lo_n, hi_n = log_p_bounds(x.numerator, p, denom)
    lo_d, hi_d = log_p_bounds(x.denominator, p, denom)
    return lo_n - hi_d, hi_n - lo_d


def _all_verdicts(node) -> bool:
    """Every 'verdict' field in the nested structure is True."""
    if isinstance(node, dict):
        ok = True
        for key, value in node.items():
            if key == "verdict":
                ok = ok and bool(value)
            else:
                ok = ok and _all_verdicts(value)
        return ok
    if isinstance(node, list):
        return all(_all_verdicts(item) for item in node)
    return True


# -- revalidation ------------------------------------------------------------------

@dataclass
class VerifyResult:
    ok: bool
    failures: list = dc_field(default_factory=list)

    def fail(self, message: str):
        self.ok = False
        self.failures.append(message)


def verify_certificate(cert: dict) -> VerifyResult:
    """Recompute every comparison from the stored exact rationals.

    Uses only rational arithmetic (and integer powering for the directed
    log bounds); no extension-field arithmetic is touched.
    """
    res = VerifyResult(True)
    if cert.get("schema") != SCHEMA:
        res.fail(f"unknown schema {cert.get('schema')!r}")
        return res
    try:
        config = cert["config"]
        p = int(config["p"])
        n_level = int(config["N"])
        v_h = Fraction(config["v_h"])
        m_log = Fraction(config["M_log"])
        profile = NormProfile.from_json(config["profile"])
        lam = Fraction(1, p ** (n_level - 1) * (p - 1))
    except (KeyError, ValueError) as exc:
        res.fail(f"malformed config: {exc}")
        return res
    if Fraction(cert["lambda"]) != lam:
        res.fail("stored lambda disagrees with p, N")
    if m_log != profile.m_log:
        res.fail("config M_log disagrees with the profile")
    g = growth_modulus(profile, -v_h)
    if not g.certified:
        res.fail("growth modulus at -v_h is not certified by the profile tail bound")
    if Fraction(cert["g_log"]) != g.value:
        res.fail("stored G(s) disagrees with the profile")
    verdict = classify(profile, -v_h)
    if not verdict.is_regular or verdict.witness != cert.get("regular_witness"):
        res.fail("regularity witness does not revalidate")
    if not (v_h <= Fraction(1, p - 1) and lam < v_h):
        res.fail("radius preconditions fail")
    g_log = g.value

    if cert["mode"] == "exact":
        _verify_exact_records(cert, res, lam, m_log, g_log)
    elif cert["mode"] == "asymptotic":
        _verify_asymptotic_records(cert, res, p, lam, v_h, m_log, g_log)
    else:
        res.fail(f"unknown mode {cert['mode']!r}")
    if bool(cert.get("all_pass")) != _all_verdicts(cert):
        res.fail("all_pass flag disagrees with the stored verdicts")
    return res


def _verify_exact_records(cert, res, lam, m_log, g_log):
    records = cert["k_records"]
    ks = [r["k"] for r in records]
    cutoff = int(cert["config"]["k_cutoff"])
    if ks != list(range(cutoff + 1)):
        res.fail(f"k coverage {ks} is not 0..{cutoff}")
        return
    if not (Fraction(records[0]["upper_log"]) == 0 and records[0]["verdict"] == (0 < g_log)):
        res.fail("k = 0 record does not revalidate")
    r1 = records[1]
    if Fraction(r1["v_q_minus_1"]) != lam or Fraction(r1["value_log"]) != g_log:
        res.fail("k = 1 record does not revalidate")
    prev_v = None
    for r in records[2:]:
        v_k = Fraction(r["v_coeff"])
        upper = Fraction(r["upper_log"])
        if upper != m_log - v_k:
            res.fail(f"k = {r['k']}: upper_log is not M_log - v_coeff")
        if bool(r["verdict"]) != (upper < g_log):
            res.fail(f"k = {r['k']}: verdict does not match the comparison")
        if prev_v is not None and v_k < prev_v:
            res.fail(f"k = {r['k']}: coefficient valuations are not monotone")
        prev_v = v_k
    tail = cert["tail"]
    if prev_v is None:
        res.fail("no k >= 2 records to close the tail")
        return
    if Fraction(tail["upper_log_at_cutoff"]) != m_log - prev_v:
        res.fail("tail upper bound is not M_log - v_coeff(cutoff)")
    want = (
        bool(tail["factors_integral"])
        and bool(tail["monotone_over_computed_range"])
        and Fraction(tail["upper_log_at_cutoff"]) < g_log
    )
    if bool(tail["verdict"]) != want:
        res.fail("tail verdict does not revalidate")


def _verify_asymptotic_records(cert, res, p, lam, v_h, m_log, g_log):
    alpha = Fraction(cert["alpha"])
    if alpha != v_h / (4 * lam):
        res.fail("stored alpha disagrees with v_h / (4 lambda)")
    conds = {c["name"]: c for c in cert["conditions"]}
    c2 = conds.get("alpha > p^8")
    if c2 is None or bool(c2["verdict"]) != (alpha > p**8):
        res.fail("condition 2 does not revalidate")
    c3 = next((c for c in cert["conditions"] if "log_p(M/sqrt(s))" in c["name"]), None)
    if c3 is None:
        res.fail("condition 3 record missing")
    else:
        lo, hi = _log_p_fraction_bounds(alpha, p)
        stored_lo = Fraction(c3["log_alpha_lower"])
        if not (lo <= stored_lo <= hi):
            res.fail("stored log_p(alpha) lower bound is outside the certified bracket")
        want = (lam / 4) * alpha * stored_lo >= m_log + v_h / 2
        if bool(c3["verdict"]) != want:
            res.fail("condition 3 verdict does not revalidate")
    for part, checker in (("part1", _recheck_part1), ("middle", _recheck_middle)):
        data = cert.get(part)
        if data is None:
            res.fail(f"{part} sweep missing")
            continue
        checker(data, res, p, lam, v_h)
    large = cert["large"]
    m = int(large["m"])
    beta_m = int(large["beta_p_m"])
    if beta(p, m).value != beta_m:
        res.fail("stored beta_p(m) is wrong")
    closing = lam * beta_m >= m_log + v_h / 2
    want = closing and alpha <= m < 2 * alpha and m > p**8
    if bool(large["verdict"]) != want:
        res.fail("large-k record does not revalidate")
    for rec in cert["sampled_large_k"]:
        if bool(rec["verdict"]) != closing:
            res.fail(f"sampled large k = {rec['k']} verdict does not revalidate")


def _recheck_part1(data, res, p, lam, v_h):
    worst = Fraction(data["worst_value"])
    i = int(data["worst_index"])
    if lam * p ** vp_int(i, p) != worst:
        res.fail("part 1 worst-case value is not reproducible")
    if bool(data["verdict"]) != (not data["failures"] and worst <= Fraction(data["bound"])):
        res.fail("part 1 verdict does not revalidate")


def _recheck_middle(data, res, p, lam, v_h):
    if not data.get("worst_index"):
        return
    k = int(data["worst_index"])
    worst = Fraction(data["worst_value"])
    if lam + v_h - lam * (p ** vp_int(k - 1, p) + p ** vp_int(k, p)) != worst:
        res.fail("middle-range worst-case value is not reproducible")
    if bool(data["verdict"]) != (not data["failures"] and worst >= Fraction(data["bound"])):
        res.fail("middle-range verdict does not revalidate")
