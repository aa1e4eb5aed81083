"""Command-line front end: curve files in, exact reports out.

Curve input is one JSON file per curve (coefficients as little-endian
arrays, q a prime power with p >= 5).  ``verify`` runs the full pipeline and
writes a machine-readable report in which every number is an integer or an
exact {num, den} pair - floats never appear.  ``local`` prints the reduction
data and the local special-value check at one place.

Exit codes: 0 all checks pass; 2 unsupported curve class or bad input;
3 an internal exact cross-check failed (which means a bug, not bad input).

Trace sums are cached per (curve content hash, n) under --cache-dir or
$FFBSD_CACHE; cache writes go through a lock file plus an atomic rename, and
--validate-cache rechecks a random 1% of the fibers of every hit.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import re
import sys
import tempfile

import numpy as np

from . import bsd, counting, localred, lseries
from .bsd import InputError
from .curve import Curve, KPoint, MWInput, UnsupportedCurveError
from .ff import COUNT_TABLE_LIMIT, Fq, FieldSpec
from .funcfield import (
    Place,
    Poly,
    RationalFunction,
    enumerate_places,
    format_poly,
)
from .localred import InternalCheckError

REPORT_SCHEMA_VERSION = 1
CACHE_SCHEMA_VERSION = 1


# ---------------------------------------------------------------------------
# curve files


def _decode_coeff(fq: Fq, c) -> int:
    if isinstance(c, int):
        return fq.from_int(c)
    if isinstance(c, list):
        if len(c) != fq.e:
            raise InputError(f"coefficient vector {c} has wrong length (e = {fq.e})")
        return fq.pack(c)
    raise InputError(f"bad coefficient entry {c!r}")


def _decode_poly(fq: Fq, arr) -> Poly:
    if not isinstance(arr, list):
        raise InputError("polynomial must be a little-endian coefficient array")
    return Poly(fq, (_decode_coeff(fq, c) for c in arr))


def _decode_rational(fq: Fq, obj) -> RationalFunction:
    if isinstance(obj, list):
        return RationalFunction(_decode_poly(fq, obj))
    num = _decode_poly(fq, obj["num"])
    den = _decode_poly(fq, obj.get("den", [1]))
    return RationalFunction(num, den)


def _decode_point(fq: Fq, obj) -> KPoint:
    if obj == "identity":
        return KPoint.IDENTITY
    return KPoint.affine(
        _decode_rational(fq, obj["x"]), _decode_rational(fq, obj["y"])
    )


def load_curve_file(path: str):
    """Parse a curve spec file into (curve, mw, options)."""
    with open(path) as fh:
        doc = json.load(fh)
    if "q" not in doc:
        raise InputError("curve file needs a field size q")
    spec = FieldSpec.from_q(int(doc["q"]))
    fq = Fq.from_spec(spec)
    curve = Curve(_decode_poly(fq, doc["a"]), _decode_poly(fq, doc["b"]))
    mw = None
    if "mw" in doc:
        blk = doc["mw"]
        mw = MWInput(
            generators=[_decode_point(fq, p) for p in blk.get("generators", [])],
            torsion_points=[
                _decode_point(fq, p) for p in blk.get("torsion_points", [])
            ],
            claimed_torsion_order=int(blk.get("torsion_order", 1)),
        )
    norm = doc.get("height_normalization", "A")
    # the calibration switch is also accepted as the scale factor it applies
    norm = {"1": "A", 1: "A", "2^r": "B"}.get(norm, norm)
    known_sha = doc.get("known_sha")
    if known_sha is not None and (not isinstance(known_sha, int) or known_sha < 1):
        raise InputError("known_sha must be a positive integer")
    options = {
        "known_sha": known_sha,
        "normalization": norm,
    }
    return curve, mw, options


def curve_hash(curve: Curve) -> str:
    payload = json.dumps(curve.content_key(), sort_keys=True)
    return hashlib.sha256(payload.encode()).hexdigest()[:24]


# ---------------------------------------------------------------------------
# trace-sum cache


class CountCache:
    """Content-addressed store of per-fiber trace arrays, one file per level."""

    def __init__(self, directory: str, validate: bool = False):
        self.directory = directory
        self.validate = validate
        os.makedirs(directory, exist_ok=True)

    def _path(self, curve: Curve, n: int) -> str:
        return os.path.join(self.directory, f"{curve_hash(curve)}_n{n}.json")

    def get(self, curve: Curve, n: int):
        path = self._path(curve, n)
        try:
            with open(path) as fh:
                doc = json.load(fh)
            per_fiber = np.array(doc["per_fiber"], dtype=np.int64)
            payload = json.dumps(doc["per_fiber"]).encode()
            if doc.get("schema") != CACHE_SCHEMA_VERSION:
                raise ValueError("schema mismatch")
            if hashlib.sha256(payload).hexdigest() != doc["checksum"]:
                raise ValueError("checksum mismatch")
            if int(doc["total"]) != int(per_fiber.sum()):
                raise ValueError("total mismatch")
        except FileNotFoundError:
            return None
        except (ValueError, KeyError, json.JSONDecodeError) as exc:
            print(
                f"warning: discarding corrupt cache entry {path}: {exc}",
                file=sys.stderr,
            )
            try:
                os.unlink(path)
            except OSError:
                pass
            return None
        if self.validate and not self._spot_check(curve, n, per_fiber):
            print(
                f"warning: cache entry {path} failed fiber validation; recomputing",
                file=sys.stderr,
            )
            try:
                os.unlink(path)
            except OSError:
                pass
            return None
        return per_fiber

    def _spot_check(self, curve: Curve, n: int, per_fiber) -> bool:
        total = per_fiber.shape[0]
        seed = int(curve_hash(curve)[:8], 16) ^ n
        rng = np.random.default_rng(seed)
        k = max(1, total // 100)
        sample = rng.choice(total, size=min(k, total), replace=False)
        fresh = lseries.fiber_traces(curve, n, sample)
        return bool((fresh == per_fiber[sample]).all())

    def put(self, curve: Curve, n: int, per_fiber):
        path = self._path(curve, n)
        data = [int(x) for x in per_fiber]
        payload = json.dumps(data).encode()
        doc = {
            "schema": CACHE_SCHEMA_VERSION,
            "curve": curve_hash(curve),
            "n": n,
            "total": int(per_fiber.sum()),
            "per_fiber": data,
            "checksum": hashlib.sha256(payload).hexdigest(),
        }
        lock = path + ".lock"
        try:
            fd = os.open(lock, os.O_CREAT | os.O_EXCL | os.O_WRONLY)
        except FileExistsError:
            return  # another writer owns this entry; content is deterministic
        try:
            tmp_fd, tmp = tempfile.mkstemp(dir=self.directory)
            with os.fdopen(tmp_fd, "w") as fh:
                json.dump(doc, fh)
            os.replace(tmp, path)
        finally:
            os.close(fd)
            os.unlink(lock)


# ---------------------------------------------------------------------------
# report encoding (exact numbers only)


def _enc_fraction(x) -> dict | None:
    if x is None:
        return None
    return {"num": x.numerator, "den": x.denominator}


def _enc_poly(f: Poly) -> list:
    if f.ctx.e == 1:
        return list(f.coeffs)
    return [f.ctx.digits(c) for c in f.coeffs]


def _enc_rational_function(f: RationalFunction) -> dict:
    return {"num": _enc_poly(f.num), "den": _enc_poly(f.den)}


def _enc_point(P: KPoint):
    if P.is_identity:
        return "identity"
    return {"x": _enc_rational_function(P.x), "y": _enc_rational_function(P.y)}


def _place_label(v: Place) -> str:
    return "inf" if v.is_infinite else format_poly(v.pi)


def build_report(curve, lser, inv, local, report, checks, trace_sums) -> dict:
    out = {
        "schema_version": REPORT_SCHEMA_VERSION,
        "field": {"p": curve.spec.p, "e": curve.spec.e, "q": curve.q},
        "curve": {
            "a": _enc_poly(curve.a),
            "b": _enc_poly(curve.b),
            "hash": curve_hash(curve),
        },
        "conductor_degree": inv.conductor_degree,
        "invariants": {
            "deg_omega": inv.deg_omega,
            "chi_lie": inv.chi_lie,
            "tamagawa": inv.tamagawa,
        },
        "lseries": {
            "D": lser.D,
            "coefficients": list(lser.coeffs),
            "epsilon": lser.epsilon,
            "analytic_rank": lser.r_an,
            "leading": _enc_fraction(lser.leading),
            # value in the (s-1)^r normalization = leading * (log q)^r
            "leading_log_q_exponent": lser.r_an,
            "trace_sums": {str(n): a for n, a in trace_sums.items()},
        },
        "local_data": [
            {
                "place": _place_label(v),
                "degree": v.degree,
                "kodaira": ld.kodaira,
                "f": ld.f,
                "c": ld.c,
                "v_delta_min": ld.v_delta_min,
                "v_omega": ld.v_omega,
                "split": ld.mult_split,
                "rescale_k": ld.rescale_k,
                # good places need a count; skip ones beyond counting scale
                "euler_factor": list(localred.euler_factor(ld, curve))
                if not ld.is_good or v.norm() <= COUNT_TABLE_LIMIT
                else None,
            }
            for v, ld in sorted(
                local.items(), key=lambda kv: (kv[0].degree, _place_label(kv[0]))
            )
        ],
        "mordell_weil": {
            "r_alg": report.r_alg,
            # the regulator basis is always user-supplied, echoed here
            "generators": [
                _enc_point(P)
                for P in (report.height_matrix.basis if report.height_matrix else [])
            ],
            "torsion_order": report.torsion_order,
            "torsion_bound": report.torsion_bound,
            "torsion_verified": report.torsion_verified,
            "regulator": _enc_fraction(report.regulator),
            "regulator_raw": _enc_fraction(report.regulator_raw),
            "normalization": report.normalization,
            "height_matrix": [
                [_enc_fraction(x) for x in row]
                for row in (report.height_matrix.entries if report.height_matrix else [])
            ],
        },
        "sha_analytic": _enc_fraction(report.sha_analytic),
        "sha_status": report.sha_status,
        "chi_weil_etale_inv": _enc_fraction(report.chi_weil_etale_inv),
        "known_sha": report.known_sha,
        "flags": report.flags,
        "checks": checks,
    }
    return out


def dump_report(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def _assert_exact(node, path="$"):
    """No floats anywhere in a report."""
    if isinstance(node, float):
        raise InternalCheckError(f"float leaked into report at {path}")
    if isinstance(node, dict):
        for k, v in node.items():
            _assert_exact(v, f"{path}.{k}")
    elif isinstance(node, list):
        for i, v in enumerate(node):
            _assert_exact(v, f"{path}[{i}]")


# ---------------------------------------------------------------------------
# place parsing


_TERM_RE = re.compile(r"^([0-9]+)?(?:\*?t(?:\^([0-9]+))?)?$")


def parse_place(text: str, spec: FieldSpec) -> Place:
    """Parse 'inf' or a monic irreducible like 't^2+3*t+4'."""
    text = text.strip().replace(" ", "")
    if text in ("inf", "infinity", "oo"):
        return Place.infinity(spec)
    fq = Fq.from_spec(spec)
    if fq.e != 1:
        raise InputError("textual places support prime fields only; use e = 1")
    coeffs: dict[int, int] = {}
    for signed in re.findall(r"[+-]?[^+-]+", text):
        sign = -1 if signed.startswith("-") else 1
        term = signed.lstrip("+-")
        m = _TERM_RE.match(term)
        if not m or not term:
            raise InputError(f"cannot parse place term {term!r}")
        coef = int(m.group(1)) if m.group(1) else 1
        if "t" in term:
            k = int(m.group(2)) if m.group(2) else 1
        else:
            k = 0
        coeffs[k] = (coeffs.get(k, 0) + sign * coef) % spec.p
    deg = max(coeffs)
    arr = [coeffs.get(i, 0) for i in range(deg + 1)]
    pi = Poly(fq, arr)
    if not pi.is_monic() or pi.degree < 1:
        raise InputError(f"place polynomial {text!r} is not monic of degree >= 1")
    from .funcfield import is_irreducible

    if not is_irreducible(pi):
        raise InputError(f"place polynomial {text!r} is not irreducible")
    return Place.finite(pi)


# ---------------------------------------------------------------------------
# commands


def cmd_verify(args) -> int:
    try:
        curve, mw, options = load_curve_file(args.curve_file)
    except (OSError, json.JSONDecodeError, InputError, UnsupportedCurveError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.threads:
        counting.set_threads(args.threads)
    normalization = args.normalization or options["normalization"]
    known_sha = args.known_sha if args.known_sha is not None else options["known_sha"]
    cache = None
    cache_dir = args.cache_dir or os.environ.get("FFBSD_CACHE")
    if cache_dir and not args.no_cache:
        cache = CountCache(cache_dir, validate=args.validate_cache)
    try:
        if curve.is_isotrivial():
            raise UnsupportedCurveError(
                "isotrivial curve (constant j-invariant) unsupported"
            )
        local = localred.all_local_data(curve)
        inv = bsd.global_invariants(curve, local)
        localred.conductor_degree(curve)

        # exact special-value identity at every scan place plus small good ones
        sv_places = list(local.keys()) + [
            v for v in enumerate_places(curve.spec, 2) if v not in local
        ]
        sv_skipped = []
        sv_ok = True
        for v in sv_places:
            if v.norm() > COUNT_TABLE_LIMIT:
                sv_skipped.append(_place_label(v))
                continue
            if not localred.verify_special_value(curve, v).ok:
                sv_ok = False
        if not sv_ok:
            raise InternalCheckError("local special-value identity failed")

        lser = lseries.compute_lseries(curve, cache)
        max_n = max(lser.D, args.max_n or 0)
        traces = {
            n: lseries.trace_sum(curve, n, cache).total
            for n in range(1, max_n + 1)
        }

        rr = bsd.riemann_roch_check(inv)
        if not rr.ok:
            raise InternalCheckError("Riemann-Roch cross-check failed")
        goods = [v for v in enumerate_places(curve.spec, 1) if v not in local][:3]
        mit = bsd.measure_identity_trace(curve, inv, local)
        mit_enlarged = bsd.measure_identity_trace(curve, inv, local, tuple(goods))
        if not (mit.ok and mit_enlarged.ok):
            raise InternalCheckError("measure identity trace failed")

        report = bsd.assemble_report(
            curve, lser, inv, local, mw,
            normalization=normalization, known_sha=known_sha,
        )
    except (UnsupportedCurveError, InputError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except InternalCheckError as exc:
        print(f"internal cross-check failure: {exc}", file=sys.stderr)
        return 3

    checks = {
        "special_values_ok": sv_ok,
        "special_values_skipped": sorted(sv_skipped),
        "dual_method_ok": True,  # compute_lseries raises otherwise
        "functional_equation_ok": True,
        "riemann_roch_ok": rr.ok,
        "measure_identities": {
            "local_measure": mit.local_measure_ok,
            "lattice_volume": mit.lattice_volume_ok,
            "global_quotient": mit.global_quotient_ok,
            "volume_euler": mit.volume_euler_ok,
            "invariant_under_enlarging": mit_enlarged.ok,
        },
        "restated_special_value_ok": report.special_value_restated_ok,
    }
    doc = build_report(curve, lser, inv, local, report, checks, traces)
    _assert_exact(doc)
    text = dump_report(doc)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    _human_summary(doc, file=sys.stderr)
    if report.special_value_restated_ok is False:
        # only reachable with a user-supplied Sha order that the formula rejects
        print("known Sha order contradicts the special-value formula",
              file=sys.stderr)
        return 3
    return 0


def _human_summary(doc: dict, file):
    ls = doc["lseries"]
    inv = doc["invariants"]
    sha = doc["sha_analytic"]
    sha_txt = f"{sha['num']}/{sha['den']}" if sha else doc["sha_status"]
    lines = [
        f"conductor degree {doc['conductor_degree']}, D = {ls['D']}, "
        f"epsilon = {ls['epsilon']:+d}, analytic rank = {ls['analytic_rank']}",
        f"L coefficients: {ls['coefficients']}",
        f"deg(omega) = {inv['deg_omega']}, chi(Lie) = {inv['chi_lie']}, "
        f"c(A) = {inv['tamagawa']}",
        "local data: "
        + ", ".join(
            f"{d['place']}:{d['kodaira']}(c={d['c']})"
            for d in doc["local_data"]
        ),
        f"Sha_an = {sha_txt}; flags: "
        + ", ".join(k for k, v in doc["flags"].items() if v),
    ]
    for ln in lines:
        print(ln, file=file)


def cmd_local(args) -> int:
    try:
        curve, _, _ = load_curve_file(args.curve_file)
        place = parse_place(args.place, curve.spec)
    except (OSError, json.JSONDecodeError, InputError, UnsupportedCurveError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.threads:
        counting.set_threads(args.threads)
    try:
        data = localred.local_data(curve, place)
        check = localred.verify_special_value(curve, place)
        fac = localred.euler_factor(data, curve)
    except (UnsupportedCurveError, InputError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except InternalCheckError as exc:
        print(f"internal cross-check failure: {exc}", file=sys.stderr)
        return 3
    doc = {
        "place": _place_label(place),
        "degree": place.degree,
        "norm": place.norm(),
        "kodaira": data.kodaira,
        "f": data.f,
        "c": data.c,
        "v_delta_min": data.v_delta_min,
        "v_omega": data.v_omega,
        "split": data.mult_split,
        "euler_factor": list(fac),
        "special_value": {
            "euler": _enc_fraction(check.euler_value),
            "count_over_norm": _enc_fraction(check.count_ratio),
            "ok": check.ok,
        },
    }
    _assert_exact(doc)
    sys.stdout.write(dump_report(doc))
    return 0 if check.ok else 3


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(
        prog="ffbsd",
        description="Exact Birch-Swinnerton-Dyer data for elliptic curves "
        "over F_q(t)",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    pv = sub.add_parser("verify", help="run the full pipeline on a curve file")
    pv.add_argument("curve_file")
    pv.add_argument("--out", help="write the JSON report here instead of stdout")
    pv.add_argument("--cache-dir", help="trace-sum cache directory")
    pv.add_argument("--no-cache", action="store_true")
    pv.add_argument("--validate-cache", action="store_true",
                    help="recheck a random 1%% of fibers on every cache hit")
    pv.add_argument("--threads", type=int)
    pv.add_argument("--normalization", choices=["A", "B"],
                    help="height pairing calibration (B halves the pairing)")
    pv.add_argument("--known-sha", type=int,
                    help="independently known Sha order to check against")
    pv.add_argument("--max-n", type=int,
                    help="also report trace sums up to this level")
    pv.set_defaults(func=cmd_verify)

    pl = sub.add_parser("local", help="reduction data at one place")
    pl.add_argument("curve_file")
    pl.add_argument("place", help="monic polynomial in t, or 'inf'")
    pl.add_argument("--threads", type=int)
    pl.set_defaults(func=cmd_local)

    args = ap.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
