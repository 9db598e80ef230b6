"""Command-line front end: ``gwconics <subcommand> ...``.

Single queries print JSON, grid sweeps print TSV unless ``--format`` says
otherwise.  Every rational is printed exactly as ``"p/q"``.  Errors from the
library go to stderr as JSON and the exit code is nonzero.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path

from . import covmoduli as cm
from . import cubics, dcover, grassmann, linegeom, vsc
from .exactpoly import MPoly, NumberField, coeff_from_json, rat, rat_str

CACHE_VERSION = "gwconics-vsc-1"
CACHE_FILE = "vsc.json"

EXIT_USAGE = 2
EXIT_ERROR = 3
EXIT_CHECK_FAILED = 4


class CheckFailed(Exception):
    """A verification subcommand found a mismatch."""


# ---------------------------------------------------------------------------
# VSC cache

def cache_dir(args) -> Path:
    if getattr(args, "cache_dir", None):
        return Path(args.cache_dir)
    return Path(os.environ.get("GWCONICS_CACHE", ".cache"))


def _row_json(row) -> list[str]:
    return [rat_str(x) for x in row]


class VSCCache:
    """Rows of virtual structure constants keyed ``"N:k:d"``.

    The whole file is dropped when its version tag does not match.
    """

    def __init__(self, directory: Path | None):
        self.directory = directory
        self.rows: dict[str, list[str]] = {}
        self.dirty = False
        if directory is None:
            return
        path = directory / CACHE_FILE
        if path.exists():
            try:
                data = json.loads(path.read_text())
            except (OSError, json.JSONDecodeError):
                data = {}
            if data.get("version") == CACHE_VERSION:
                self.rows = dict(data.get("rows", {}))

    def table(self, N: int, k: int, d_max: int, allow_out_of_range: bool = False) -> vsc.VSCTable:
        keys = [f"{N}:{k}:{d}" for d in range(1, d_max + 1)]
        if all(key in self.rows for key in keys):
            entries = {}
            for d, key in enumerate(keys, start=1):
                for m, val in enumerate(self.rows[key]):
                    entries[(d, m)] = rat(val)
            return vsc.VSCTable(N, k, entries)
        table = vsc.build_table(N, k, d_max, allow_out_of_range)
        for d, key in enumerate(keys, start=1):
            self.rows[key] = _row_json(table.row(d))
        self.dirty = True
        return table

    def verify(self) -> list[str]:
        """Recompute every cached row; return the keys whose bytes differ."""
        bad = []
        for key, row in sorted(self.rows.items()):
            N, k, d = (int(x) for x in key.split(":"))
            fresh = vsc.build_table(N, k, d, allow_out_of_range=True).row(d)
            if json.dumps(_row_json(fresh)) != json.dumps(row):
                bad.append(key)
        return bad

    def save(self) -> None:
        if self.directory is None or not self.dirty:
            return
        self.directory.mkdir(parents=True, exist_ok=True)
        payload = {"version": CACHE_VERSION, "rows": dict(sorted(self.rows.items()))}
        tmp = self.directory / (CACHE_FILE + ".tmp")
        tmp.write_text(json.dumps(payload, indent=1, sort_keys=True))
        tmp.replace(self.directory / CACHE_FILE)
        self.dirty = False


# ---------------------------------------------------------------------------
# argument parsing helpers

def parse_rat_list(text: str, n: int | None = None) -> list[Fraction]:
    parts = [p.strip() for p in text.split(",") if p.strip()]
    vals = [rat(p) for p in parts]
    if n is not None and len(vals) != n:
        raise argparse.ArgumentTypeError(f"expected {n} comma-separated rationals, got {text!r}")
    return vals


def triple(text: str) -> list[Fraction]:
    return parse_rat_list(text, 3)


def int_triple(text: str) -> tuple[int, int, int]:
    vals = parse_rat_list(text, 3)
    if any(v.denominator != 1 for v in vals):
        raise argparse.ArgumentTypeError("--abc takes integers")
    return tuple(int(v) for v in vals)  # type: ignore[return-value]


def emit(args, payload, rows: list[list] | None = None, header: list[str] | None = None) -> None:
    fmt = args.format or ("tsv" if rows is not None and getattr(args, "_sweep", False) else "json")
    if fmt == "tsv" and rows is not None:
        out = sys.stdout
        if header:
            out.write("\t".join(header) + "\n")
        for r in rows:
            out.write("\t".join(str(x) for x in r) + "\n")
    else:
        print(json.dumps(payload, indent=2, sort_keys=False))


def _check_range(args, N: int, k: int) -> None:
    vsc.check_range(N, k, getattr(args, "allow_out_of_range", False))


# ---------------------------------------------------------------------------
# subcommands

def cmd_lines(args, cache):
    _check_range(args, args.N, args.k)
    count = grassmann.line_count(args.N, args.k)
    dim = 2 * args.N - args.k - 5
    payload = {"N": args.N, "k": args.k, "lines": rat_str(count), "dim_G": dim}
    emit(args, payload, [[args.N, args.k, rat_str(count), dim]], ["N", "k", "lines", "dim_G"])


def cmd_vsc(args, cache):
    _check_range(args, args.N, args.k)
    table = cache.table(args.N, args.k, args.d, args.allow_out_of_range)
    rows = {str(d): _row_json(table.row(d)) for d in range(1, args.d + 1)}
    payload = {"N": args.N, "k": args.k, "d_max": args.d, "L": rows,
               "lengths": {d: len(r) for d, r in rows.items()},
               "provenance": {"note": "L(d, m) vanishes outside 0 <= m <= N-1+(k-N)d"}}
    tsv = [[d, m, v] for d, r in rows.items() for m, v in enumerate(r)]
    emit(args, payload, tsv, ["d", "m", "L"])


def cmd_gw2(args, cache):
    _check_range(args, args.N, args.k)
    table = cache.table(args.N, args.k, 2, args.allow_out_of_range)
    ms = [args.m] if args.m is not None else list(vsc.gw2_range(args.N, args.k))
    results = []
    for m in ms:
        g = vsc.gw2_3pt(args.N, args.k, m, table, allow_out_of_range=True)
        results.append({"m": m, "insertions": list(vsc.gw2_insertions(args.N, args.k, m)),
                        "gw": rat_str(g)})
    payload = {"N": args.N, "k": args.k, "results": results,
               "provenance": {"gw_source": "mirror",
                              "formula_note": "right-hand index of the degree-2 formula read as m"}}
    tsv = [[args.N, args.k, r["m"], ",".join(map(str, r["insertions"])), r["gw"]] for r in results]
    emit(args, payload, tsv, ["N", "k", "m", "abc", "gw"])


def _decompose_job(job):
    N, k, abc, table = job
    return dcover.decompose2(N, k, *abc, table=table).to_json()


def _grid_pairs(n_lo: int = 5, n_hi: int = 9):
    for N in range(n_lo, n_hi + 1):
        for k in range(N, 2 * N - 4):
            yield N, k


def cmd_decompose2(args, cache):
    if args.abc is not None and not args.grid:
        _check_range(args, args.N, args.k)
        gw = rat(args.gw) if args.gw is not None else None
        table = None
        if gw is None:
            table = cache.table(args.N, args.k, 2, args.allow_out_of_range)
        rep = dcover.decompose2(args.N, args.k, *args.abc, gw=gw, table=table)
        emit(args, rep.to_json())
        return
    # sweep: either one (N, k) or the whole grid
    args._sweep = True
    if args.grid:
        pairs = list(_grid_pairs())
    else:
        if args.N is None or args.k is None:
            raise vsc.RangeError("need --N and --k, or --grid")
        _check_range(args, args.N, args.k)
        pairs = [(args.N, args.k)]
    jobs = []
    for N, k in pairs:
        table = cache.table(N, k, 2, True)
        for abc in dcover.divisor_triples(N, k):
            jobs.append((N, k, abc, table))
    if args.jobs and args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            reports = list(pool.map(_decompose_job, jobs))  # map keeps input order
    else:
        reports = [_decompose_job(j) for j in jobs]
    tsv = [[r["N"], r["k"], ",".join(map(str, r["abc"])), r["gw"], r["dcover"], r["conics"]]
           for r in reports]
    emit(args, {"reports": reports}, tsv, ["N", "k", "abc", "gw", "dcover", "conics"])


def cmd_dcover_class(args, cache):
    _check_range(args, args.N, args.k)
    cls = dcover.contribution_class(args.N, args.k)
    payload = {"N": args.N, "k": args.k, "codim": max(cls.codim, 0), "class": cls.value.to_json()}
    emit(args, payload)


def cmd_proof_form_check(args, cache):
    if args.N is not None and args.k is not None:
        pairs = [(args.N, args.k)]
    else:
        pairs = [(N, k) for N in range(4, 10) for k in range(N, 2 * N - 4)]
    results = []
    for N, k in pairs:
        ok = dcover.contribution_class(N, k).value == dcover.proof_form_class(N, k)
        results.append({"N": N, "k": k, "equal": ok})
    payload = {"pairs": len(results), "ok": all(r["equal"] for r in results), "results": results}
    emit(args, payload, [[r["N"], r["k"], r["equal"]] for r in results], ["N", "k", "equal"])
    if not payload["ok"]:
        raise CheckFailed("contribution class and proof form disagree")


def _example_line(name: str) -> linegeom.LineData:
    if name == "m87":
        return linegeom.m87_standard_line()
    if name == "m87-eps":
        return linegeom.m87_eps_line()
    quintic = linegeom.quintic_examples()
    if name in quintic:
        return quintic[name]
    raise ValueError(f"unknown example {name!r}; choose from m87, m87-eps, {', '.join(quintic)}")


def _load_line(args) -> tuple[linegeom.LineData, dict]:
    if getattr(args, "line_json", None):
        data = json.loads(Path(args.line_json).read_text())
        return linegeom.LineData.from_json(data), {"source": args.line_json}
    if getattr(args, "example", None):
        return _example_line(args.example), {"example": args.example}
    if args.N is not None and args.k is not None:
        _check_range(args, args.N, args.k)
        return linegeom.random_line(args.N, args.k, args.seed), {"seed": args.seed}
    raise ValueError("give --example, --line-json, or --N/--k with --seed")


def cmd_splitting(args, cache):
    line, prov = _load_line(args)
    h0 = linegeom.profile(line)
    sp = linegeom.splitting_type(line, h0)
    payload = {"N": line.N, "k": line.k, "splitting": list(sp.degrees), "str": str(sp),
               "h0_profile": {str(m): v for m, v in sorted(h0.items())}, "provenance": prov}
    emit(args, payload)


def cmd_adapt_line(args, cache):
    if args.example == "m87-eps":
        line = linegeom.m87_eps_line()
    elif args.example == "m87" or args.poly_json is None:
        line = linegeom.m87_standard_line()
    else:
        data = json.loads(Path(args.poly_json).read_text())
        field = NumberField(data["field"]["modulus"]) if isinstance(data.get("field"), dict) else None
        terms = [(e, coeff_from_json(c, field)) for e, c in data["terms"]]
        F = MPoly(int(data["nvars"]), terms)
        p = [coeff_from_json(c, field) for c in data["p"]]
        q = [coeff_from_json(c, field) for c in data["q"]]
        line = linegeom.adapt_line(F, (p, q), data.get("k"))
    emit(args, line.to_json())


def cmd_cover_cohomology(args, cache):
    if not (args.line_json or args.N is not None):
        args.example = args.example or "m87"
    line, prov = _load_line(args)
    pencil = cm.QuadraticPencil.from_triples(args.phi1, args.phi2)
    res = linegeom.cover_cohomology(line, pencil.phi1, pencil.phi2)
    payload = {"h0": res.h0, "h1": res.h1, "chain_geometry": res.chain_geometry,
               "kernel": [[g.to_json() for g in vec] for vec in res.kernel_basis],
               "pencil": pencil.to_json(), "provenance": prov}
    emit(args, payload)


def cmd_stability(args, cache):
    pencil = cm.QuadraticPencil.from_triples(args.phi1, args.phi2)
    cls = cm.classify(pencil)
    D = cm.discriminants(pencil)
    emit(args, {"class": cls.value, "D": D.to_json()})


def cmd_boundary(args, cache):
    D = cm.DiscriminantPoint(*args.D)
    on = cm.boundary_check(D)
    emit(args, {"D": D.to_json(), "value": rat_str(cm.boundary_value(D)), "on_boundary": on})


def cmd_half_twist(args, cache):
    lam, nu = rat(args.lam), rat(args.nu)
    if args.squared:
        ok = cm.half_twist_squared(lam, nu)
        emit(args, {"lambda": rat_str(lam), "nu": rat_str(nu), "squared_identity": ok})
    else:
        r = cm.half_twist(lam, nu)
        ok = r.holds
        emit(args, {"lambda": rat_str(lam), "nu": rat_str(nu), "p": rat_str(r.p),
                    "q": rat_str(r.q), "identity": ok})
    if not ok:
        raise CheckFailed("half-twist identity failed")


def cmd_cubic_class(args, cache):
    c = cubics.cubic_contribution_class(args.k)
    emit(args, {"k": c.k, "N": c.N, "class": c.value.to_json(),
                "provenance": {"note": "conjectural class for k - N = 1"}})


def cmd_cubic_decompose(args, cache):
    if args.gw3 is None:
        raise ValueError("--gw3 is required: the degree-3 invariant is never computed here")
    rep = cubics.decompose3(args.N, args.k, *args.abc, rat(args.gw3))
    emit(args, rep.to_json())


def cmd_am_check(args, cache):
    res = cubics.am_weight_check()
    emit(args, res)
    if not res["ok"]:
        raise CheckFailed("Aspinwall-Morrison weights do not collapse to 9/4 and 3/2")


def selftest_results() -> list[tuple[str, bool]]:
    out = []
    out.append(("lines(4,3) = 27", grassmann.line_count(4, 3) == 27))
    out.append(("lines(5,5) = 2875", grassmann.line_count(5, 5) == 2875))
    rep = dcover.decompose2(5, 5, 1, 1, 1)
    out.append(("quintic degree 2", (rep.gw, rep.dcover_term, rep.conic_count)
                == (4876875, 2875, 4874000)))
    out.append(("contribution class = proof form (N=6,k=7)",
                dcover.contribution_class(6, 7).value == dcover.proof_form_class(6, 7)))
    sp = {name: linegeom.splitting_type(line).degrees
          for name, line in linegeom.quintic_examples().items()}
    out.append(("quintic splittings", sp == {"O(1)+O(-3)": (1, -3), "O+O(-2)": (0, -2),
                                             "O(-1)+O(-1)": (-1, -1)}))
    out.append(("stability (s^2, s^2) unstable",
                cm.classify(cm.QuadraticPencil.from_triples((1, 0, 0), (1, 0, 0)))
                is cm.StabilityClass.UNSTABLE))
    out.append(("half-twist (3, 2)", cm.half_twist_identity(3, 2)))
    out.append(("AM weights", cubics.am_weight_check()["ok"]))
    return out


def cmd_selftest(args, cache):
    results = selftest_results()
    emit(args, {"checks": [{"name": n, "ok": ok} for n, ok in results],
                "ok": all(ok for _, ok in results)},
         [[n, "PASS" if ok else "FAIL"] for n, ok in results], ["check", "status"])
    if not all(ok for _, ok in results):
        raise CheckFailed("selftest failed")


def cmd_verify_cache(args, cache):
    bad = cache.verify()
    emit(args, {"entries": len(cache.rows), "mismatched": bad, "ok": not bad})
    if bad:
        raise CheckFailed(f"cache mismatch for {', '.join(bad)}")


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "tsv"), default=None)
    common.add_argument("--seed", type=int, default=0, help="RNG seed (u64)")
    common.add_argument("--cache-dir", default=None,
                        help="VSC cache directory (overrides $GWCONICS_CACHE, default .cache)")
    common.add_argument("--no-cache", action="store_true")
    common.add_argument("--allow-out-of-range", action="store_true")

    parser = argparse.ArgumentParser(prog="gwconics", parents=[common],
                                     description="Lines, conics and multiple covers on hypersurfaces.")
    parser.add_argument("--verify-cache", action="store_true",
                        help="recompute every cached VSC row and compare byte for byte")
    sub = parser.add_subparsers(dest="command")

    def add(name, func, help_):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.set_defaults(func=func)
        return p

    def nk(p, required=True):
        p.add_argument("--N", type=int, required=required)
        p.add_argument("--k", type=int, required=required)

    p = add("lines", cmd_lines, "number of lines and expected dim of the Fano scheme")
    nk(p)
    p = add("vsc", cmd_vsc, "virtual structure constants up to degree d")
    nk(p)
    p.add_argument("--d", type=int, default=2)
    p = add("gw2", cmd_gw2, "degree-2 three-point invariants from the mirror recursion")
    nk(p)
    p.add_argument("--m", type=int, default=None)
    p = add("decompose2", cmd_decompose2, "split degree-2 invariants into conics + double covers")
    nk(p, required=False)
    p.add_argument("--abc", type=int_triple, default=None)
    p.add_argument("--gw", default=None, help="user-supplied invariant (needed without a divisor)")
    p.add_argument("--grid", action="store_true", help="sweep 5 <= N <= 9, N <= k <= 2N-5")
    p.add_argument("--jobs", type=int, default=1)
    p = add("dcover-class", cmd_dcover_class, "the double-cover contribution class")
    nk(p)
    p = add("proof-form-check", cmd_proof_form_check, "compare the two derivations of the class")
    nk(p, required=False)

    for name, func in (("splitting", cmd_splitting), ("cover-cohomology", cmd_cover_cohomology)):
        p = add(name, func, f"{name} of a line")
        nk(p, required=False)
        p.add_argument("--example", default=None,
                       help="m87, m87-eps, O(1)+O(-3), O+O(-2), O(-1)+O(-1)")
        p.add_argument("--line-json", default=None)
        if name == "cover-cohomology":
            p.add_argument("--phi1", type=triple, default=[Fraction(0), Fraction(2), Fraction(0)])
            p.add_argument("--phi2", type=triple, default=[Fraction(1), Fraction(0), Fraction(1)])

    p = add("adapt-line", cmd_adapt_line, "normal forms of a line on a hypersurface")
    p.add_argument("--example", default=None, choices=("m87", "m87-eps"))
    p.add_argument("--poly-json", default=None,
                   help='{"nvars", "terms": [[exps, coeff]], "p", "q", "k"?, "field"?}')

    p = add("stability", cmd_stability, "GIT class of a pencil (triples a,b,c mean as^2+bst+ct^2)")
    p.add_argument("--phi1", type=triple, required=True)
    p.add_argument("--phi2", type=triple, required=True)
    p = add("boundary", cmd_boundary, "is (D0:D1:D2) on the boundary conic")
    p.add_argument("--D", type=triple, required=True)
    p = add("half-twist", cmd_half_twist, "the transition identity for the half-twist sheaf")
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--nu", required=True)
    p.add_argument("--squared", action="store_true")
    p = add("cubic-class", cmd_cubic_class, "conjectural triple-cover class for k = N + 1")
    p.add_argument("--k", type=int, required=True)
    p = add("cubic-decompose", cmd_cubic_decompose, "split a supplied degree-3 invariant")
    nk(p)
    p.add_argument("--abc", type=int_triple, required=True)
    p.add_argument("--gw3", default=None)
    add("am-check", cmd_am_check, "Aspinwall-Morrison weight bookkeeping")
    add("selftest", cmd_selftest, "quick anchor checks")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command is None and not args.verify_cache:
        parser.print_help(sys.stderr)
        return EXIT_USAGE
    cache = VSCCache(None if args.no_cache else cache_dir(args))
    try:
        if args.verify_cache and args.command is None:
            cmd_verify_cache(args, cache)
        else:
            args.func(args, cache)
            if args.verify_cache:
                bad = cache.verify()
                if bad:
                    raise CheckFailed(f"cache mismatch for {', '.join(bad)}")
        cache.save()
    except CheckFailed as exc:
        print(json.dumps({"error": "check_failed", "message": str(exc)}), file=sys.stderr)
        return EXIT_CHECK_FAILED
    except (ValueError, ArithmeticError, OSError, KeyError) as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}), file=sys.stderr)
        return EXIT_ERROR
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
