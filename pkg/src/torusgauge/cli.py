"""Batch verification front-end.

Scenario configs are JSON documents; expressions use the package grammar
(see expr).  Reports are JSON ("schema": 1) with one entry per check,
residues rendered exactly (rational multiples of pi) on the exact tier and
as floats with tolerances otherwise.  Runs are deterministic byte for byte
for fixed seed and config.

Exit codes: 0 all checks pass, 1 a check failed, 2 the config could not be
read or parsed, 3 a flux quantization violation.
"""

from __future__ import annotations

import argparse
import csv
import itertools
import json
import sys
from fractions import Fraction

from .cohomology import GroupCochain, is_cocycle
from .errors import QuantizationError, TorusGaugeError
from .expr import parse_expr
from .forms import Form, PLPath
from .gerbes import (
    GerbeData,
    associator,
    associator_cocycle_check,
    check_gerbe_cocycle,
    check_gerbe_connection,
    check_section_constraint,
    composition_phase,
    flux_class,
    gerbe_translation_section,
    pentagon_check,
)
from .hilbert import is_unitary, translation_matrix, verify_operator_cocycle
from .magnetic import (
    LineData,
    PathSymmetry,
    check_line_cocycle,
    check_connection,
    check_section_membership,
    lift_equivalence_check,
    lift_product,
    translation_section,
    two_cocycle,
    verify_projective_relation,
)
from .polytrig import constant_mod_free
from .reports import CheckReport
from .sampling import (
    rand_based_path,
    rand_periodic_gauge,
    rand_vector,
    rng,
    stokes_defect,
    stokes_sample,
)
from .scalar import DEFAULT_TOL
from .vectors import basis_vec

DEFAULT_COHOMOLOGY_SAMPLES = 100
DEFAULT_ASSOCIATIVITY_SAMPLES = 50

COMMANDS = (
    "check-cocycle",
    "check-connection",
    "section",
    "twist2",
    "twist3",
    "pentagon",
    "flux",
    "sym-product",
    "cohomology",
    "operators",
    "stokes-selftest",
)


class ConfigError(TorusGaugeError):
    pass


class Scenario:
    def __init__(self, name, kind, data, params):
        self.name = name
        self.kind = kind
        self.data = data
        self.params = params


def _parse_axis(key):
    try:
        return int(key)
    except ValueError as exc:
        raise ConfigError(f"bad axis key {key!r}") from exc


def _parse_pair(key):
    parts = key.split(",")
    if len(parts) != 2:
        raise ConfigError(f"bad pair key {key!r}")
    return (_parse_axis(parts[0]), _parse_axis(parts[1]))


def _parse_form(d, comps, degree):
    out = {}
    for key, text in comps.items():
        idx = tuple(_parse_axis(p) for p in key.split(","))
        if len(idx) != degree:
            raise ConfigError(f"component {key!r} has wrong degree (want {degree})")
        out[idx] = parse_expr(text, d)
    if degree == 1:
        return Form.one_form(d, {i[0]: f for i, f in out.items()})
    return Form.two_form(d, out)


def load_scenario(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    try:
        if doc.get("schema", 1) != 1:
            raise ConfigError(f"unsupported config schema {doc.get('schema')!r}")
        d = int(doc["dimension"])
        kind = doc["kind"]
        name = doc.get("name", "scenario")
        params = doc.get("params", {})
        if kind == "line":
            gens = {_parse_axis(k): parse_expr(v, d) for k, v in doc.get("cocycle", {}).items()}
            conn = None
            if "connection" in doc:
                conn = _parse_form(d, doc["connection"], 1)
            data = LineData(d, gens, conn)
        elif kind == "gerbe":
            pair_exps = {
                _parse_pair(k): parse_expr(v, d) for k, v in doc.get("cocycle", {}).items()
            }
            gen_conns = {
                _parse_axis(k): _parse_form(d, comps, 1)
                for k, comps in doc.get("connection", {}).items()
            }
            curving = _parse_form(d, doc.get("curving", {}), 2)
            data = GerbeData(d, pair_exps, gen_conns, curving)
        else:
            raise ConfigError(f"unknown scenario kind {kind!r}")
    except (KeyError, ValueError, TypeError) as exc:
        raise ConfigError(f"malformed config {path}: {exc}") from exc
    return Scenario(name, kind, data, params)


def _vectors(scn, default):
    vecs = scn.params.get("vectors")
    if not vecs:
        return default
    try:
        out = [tuple(Fraction(x) for x in v) for v in vecs]
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise ConfigError(f"bad vector in params: {exc}") from exc
    d = scn.data.d
    for v in out:
        if len(v) != d:
            raise ConfigError(f"vector {v} has wrong dimension (want {d})")
    return out


def _vec_str(v):
    return "(" + ",".join(str(x) for x in v) + ")"


def _sample_vectors(rnd, d, count, dens=(1, 2, 3, 4)):
    return [rand_vector(rnd, d, num=3, dens=dens) for _ in range(count)]


def _need_kind(scn, kind, command):
    if scn is None:
        raise ConfigError(f"{command} needs --config")
    if scn.kind != kind:
        raise ConfigError(f"{command} needs a {kind!r} scenario, got {scn.kind!r}")


# -- command handlers --------------------------------------------------------


def cmd_check_cocycle(scn, rnd, tol, values):
    if scn is None:
        raise ConfigError("check-cocycle needs --config")
    d = scn.data.d
    if scn.kind == "line":
        r = scn.params.get("range", 2)
        span = [v for v in itertools.product(range(-r, r + 1), repeat=d)]
        pairs = list(itertools.product(span, repeat=2))
        cap = scn.params.get("samples", 400)
        if len(pairs) > cap:
            pairs = rnd.sample(pairs, cap)
        return [check_line_cocycle(scn.data, pairs, tol)]
    span = [v for v in itertools.product((-1, 0, 1), repeat=d)]
    cap = scn.params.get("samples", 200)
    triples = list(itertools.product(span, repeat=3))
    if len(triples) > cap:
        triples = rnd.sample(triples, cap)
    return [check_gerbe_cocycle(scn.data, triples, tol)]


def cmd_check_connection(scn, rnd, tol, values):
    if scn is None:
        raise ConfigError("check-connection needs --config")
    if scn.kind == "line":
        rep, B = check_connection(scn.data, tol)
        values["curvature"] = repr(B)
        return [rep]
    rep, H = check_gerbe_connection(scn.data, tol=tol)
    values["curvature"] = repr(H)
    return [rep]


def cmd_section(scn, rnd, tol, values):
    if scn is None:
        raise ConfigError("section needs --config")
    d = scn.data.d
    vecs = _vectors(scn, _sample_vectors(rnd, d, 3))
    reports = []
    sections = {}
    for v in vecs:
        if scn.kind == "line":
            sections[_vec_str(v)] = str(translation_section(scn.data, v).exponent)
            reports.append(check_section_membership(scn.data, v, tol))
        else:
            sec = gerbe_translation_section(scn.data, v)
            sections[_vec_str(v)] = {
                f"e{a}": str(g.exponent) for a, g in sorted(sec.g.items())
            }
            reports.append(check_section_constraint(scn.data, v, tol=tol))
    values["sections"] = sections
    return reports


def cmd_twist2(scn, rnd, tol, values):
    if scn is None:
        raise ConfigError("twist2 needs --config")
    d = scn.data.d
    vecs = _vectors(scn, _sample_vectors(rnd, d, 4))
    phases = {}
    reports = []
    for v, vp in itertools.combinations(vecs, 2):
        key = _vec_str(v) + ";" + _vec_str(vp)
        if scn.kind == "line":
            c = two_cocycle(scn.data, v, vp)
            phases[key] = str(c.exponent)
            rep, _c = verify_projective_relation(scn.data, v, vp, tol)
            reports.append(rep)
        else:
            phases[key] = str(composition_phase(scn.data, v, vp).exponent)
    values["twist2"] = phases
    if scn.kind == "gerbe" and not reports:
        rep = CheckReport("composition_phase")
        rep.add("computed", True, note=f"{len(phases)} phases")
        reports.append(rep)
    return reports


def cmd_twist3(scn, rnd, tol, values):
    _need_kind(scn, "gerbe", "twist3")
    d = scn.data.d
    vecs = _vectors(scn, _sample_vectors(rnd, d, 3))
    phases = {}
    gens = [basis_vec(d, a) for a in range(1, min(d, 3) + 1)]
    tuples = [tuple(gens[:3])] if len(gens) >= 3 else []
    for i in range(len(vecs) - 2):
        tuples.append((vecs[i], vecs[i + 1], vecs[i + 2]))
    for u, v, w in tuples:
        key = ";".join(map(_vec_str, (u, v, w)))
        phases[key] = str(associator(scn.data, u, v, w).exponent)
    values["twist3"] = phases
    rep = CheckReport("associator_descends")
    for (key, _s), (u, v, w) in zip(sorted(phases.items()), tuples):
        om = associator(scn.data, u, v, w)
        ok = all(
            (om.translate(tuple(-x for x in basis_vec(d, a))) / om).is_one(tol)
            for a in range(1, d + 1)
        )
        rep.add(key, ok)
    return [rep]


def cmd_pentagon(scn, rnd, tol, values):
    _need_kind(scn, "gerbe", "pentagon")
    d = scn.data.d
    reports = []
    if d >= 3:
        e1, e2, e3 = (basis_vec(d, a) for a in (1, 2, 3))
        om = associator(scn.data, e1, e2, e3)
        res = constant_mod_free(om.exponent, tol)
        values["associator_e1_e2_e3"] = str(om.exponent) if res is None else str(res)
        reports.append(pentagon_check(scn.data, e1, e2, e3, tol))
    n = scn.params.get("samples", DEFAULT_ASSOCIATIVITY_SAMPLES)
    agg = CheckReport("pentagon_relation")
    for _ in range(n):
        u, v, w = (rand_vector(rnd, d, num=3, dens=(1, 2, 3, 4)) for _ in range(3))
        rep = pentagon_check(scn.data, u, v, w, tol)
        agg.items.extend(rep.items)
    reports.append(agg)
    return reports


def cmd_flux(scn, rnd, tol, values):
    _need_kind(scn, "gerbe", "flux")
    classes = flux_class(scn.data, tol)
    values["flux"] = {"(" + ",".join(map(str, k)) + ")": n for k, n in sorted(classes.items())}
    rep = CheckReport("flux_quantization")
    for k, n in sorted(classes.items()):
        rep.add("face (" + ",".join(map(str, k)) + ")", True, residue=str(n))
    return [rep]


def cmd_sym_product(scn, rnd, tol, values):
    _need_kind(scn, "line", "sym-product")
    d = scn.data.d
    n = scn.params.get("samples", DEFAULT_ASSOCIATIVITY_SAMPLES)
    rep = CheckReport("lift_associativity")
    for i in range(n):
        elems = [
            PathSymmetry(rand_based_path(rnd, d), rand_periodic_gauge(rnd, d))
            for _ in range(3)
        ]
        lhs = lift_product(lift_product(elems[0], elems[1], scn.data), elems[2], scn.data)
        rhs = lift_product(elems[0], lift_product(elems[1], elems[2], scn.data), scn.data)
        ok = (
            lhs.path.vertices == rhs.path.vertices
            and (lhs.gauge / rhs.gauge).is_one(tol)
        )
        rep.add(f"triple {i}", ok)
    unit = PathSymmetry.unit(d)
    a = PathSymmetry(rand_based_path(rnd, d), rand_periodic_gauge(rnd, d))
    rep.add(
        "unit law",
        (lift_product(a, unit, scn.data).gauge / a.gauge).is_one(tol)
        and (lift_product(unit, a, scn.data).gauge / a.gauge).is_one(tol),
    )
    reports = [rep]
    m = scn.params.get("equivalence_samples", 25)
    eq = CheckReport("lift_equivalence")
    for i in range(m):
        end = rand_vector(rnd, d, num=2, dens=(1, 2))
        gamma = PLPath([tuple(Fraction(0) for _ in range(d)), end])
        mid = rand_vector(rnd, d, num=2, dens=(1, 2))
        alpha = PLPath([tuple(Fraction(0) for _ in range(d)), mid, end])
        sub = lift_equivalence_check(
            scn.data, gamma, alpha, rand_periodic_gauge(rnd, d),
            PathSymmetry(rand_based_path(rnd, d), rand_periodic_gauge(rnd, d)), tol,
        )
        eq.add(f"pair {i}", sub.passed)
    reports.append(eq)
    return reports


def cmd_cohomology(scn, rnd, tol, values):
    if scn is None:
        raise ConfigError("cohomology needs --config")
    d = scn.data.d
    n = scn.params.get("samples", DEFAULT_COHOMOLOGY_SAMPLES)
    if scn.kind == "line":
        data = scn.data

        def ev(args):
            v, vp = args
            return two_cocycle(data, v, vp)

        cochain = GroupCochain(2, d, ev)
        samples = [tuple(rand_vector(rnd, d, 2, (1, 2, 3)) for _ in range(3)) for _ in range(n)]
        return [is_cocycle(cochain, samples, tol, identity="twist_cocycle")]
    samples = [tuple(rand_vector(rnd, d, 2, (1, 2, 3)) for _ in range(4)) for _ in range(n)]
    return [associator_cocycle_check(scn.data, samples, tol)]


def cmd_operators(scn, rnd, tol, values):
    _need_kind(scn, "line", "operators")
    flux_list = scn.params.get("flux_list", [1, 2, 3, 4])
    rep = CheckReport("operator_cocycle")
    worst = 0.0
    for N in flux_list:
        fracs = [Fraction(a, N) for a in range(N)]
        lattice = list(itertools.product(fracs, repeat=2))
        bad = 0
        for v in lattice:
            if not is_unitary(translation_matrix(N, v)):
                bad += 1
        rep.add(f"unitarity N={N}", bad == 0)
        defect_max = 0.0
        ok_all = True
        for v, vp in itertools.product(lattice, repeat=2):
            ok, defect = verify_operator_cocycle(N, v, vp)
            defect_max = max(defect_max, defect)
            ok_all = ok_all and ok
        worst = max(worst, defect_max)
        rep.add(f"twisted algebra N={N}", ok_all, residue=f"{defect_max:.3e}")
    values["worst_defect"] = f"{worst:.3e}"
    return [rep]


def cmd_stokes_selftest(scn, rnd, tol, values):
    count = 50 if scn is None else scn.params.get("samples", 50)
    rep = CheckReport("stokes")
    for d in (2, 3):
        for k in (1, 2, 3):
            bad = 0
            for _ in range(count):
                omega, simplex = stokes_sample(rnd, d, k)
                if not stokes_defect(omega, simplex).is_zero():
                    bad += 1
            rep.add(f"d={d} k={k} ({count} samples)", bad == 0)
    return [rep]


HANDLERS = {
    "check-cocycle": cmd_check_cocycle,
    "check-connection": cmd_check_connection,
    "section": cmd_section,
    "twist2": cmd_twist2,
    "twist3": cmd_twist3,
    "pentagon": cmd_pentagon,
    "flux": cmd_flux,
    "sym-product": cmd_sym_product,
    "cohomology": cmd_cohomology,
    "operators": cmd_operators,
    "stokes-selftest": cmd_stokes_selftest,
}


def build_parser():
    p = argparse.ArgumentParser(
        prog="torusgauge",
        description="verification suites for torus gauge cocycle data",
    )
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--config", help="scenario config (JSON)")
    p.add_argument("--seed", type=int, default=0, help="seed for sampled checks")
    p.add_argument("--json", dest="json_path", help="write the report to this path")
    p.add_argument("--csv", dest="csv_path", help="write a phase table to this path")
    p.add_argument("--tolerance", type=float, default=DEFAULT_TOL)
    return p


def write_csv(path, reports):
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(["identity", "item", "status", "residue"])
        for rep in reports:
            for it in sorted(rep.items, key=lambda i: i.label):
                w.writerow(
                    [rep.identity, it.label, "pass" if it.passed else "fail", it.residue or ""]
                )


def run(argv=None):
    args = build_parser().parse_args(argv)
    scn = None
    try:
        if args.config:
            scn = load_scenario(args.config)
        handler = HANDLERS[args.command]
    except (ConfigError, TorusGaugeError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2

    report = {
        "schema": 1,
        "command": args.command,
        "scenario": scn.name if scn else None,
        "seed": args.seed,
        "tolerance": args.tolerance,
    }
    values = {}
    try:
        reports = handler(scn, rng(args.seed), args.tolerance, values)
        status_code = 0 if all(r.passed for r in reports) else 1
    except QuantizationError as exc:
        report["status"] = "error"
        report["error"] = str(exc)
        report["checks"] = []
        report["values"] = values
        _emit(report, args, [])
        return 3
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2

    report["status"] = "pass" if status_code == 0 else "fail"
    report["checks"] = [r.to_dict() for r in reports]
    report["values"] = values
    _emit(report, args, reports)
    return status_code


def _emit(report, args, reports):
    text = json.dumps(report, indent=2, sort_keys=True)
    if args.json_path:
        with open(args.json_path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    print(text)
    if args.csv_path:
        write_csv(args.csv_path, reports)


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
