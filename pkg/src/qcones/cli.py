"""Command-line front end: spectra, moments, mates, searches and probes.

Every run prints a single JSON document on stdout with the fields
{command, input, params, result, status}; diagnostics go to stderr.
Exit codes: 0 success, 2 input error, 3 verification mismatch or probe
failure, 4 inapplicable construction, 5 scale limit.
"""

from __future__ import annotations

import argparse
import json
import re
import sys

from .errors import (
    FormatError,
    InapplicableError,
    ParameterError,
    QConesError,
    ScaleError,
)
from .graphs import ConeSpec, MultiGraph, realize
from .graph6 import decode_graph6, encode_graph6
from .eigen import (
    GROUP_TOL,
    QSpectrum,
    adjacency_matrix,
    q_spectrum,
    spectrum_compare,
    sym_eigenvalues,
)
from .cones import closed_spectrum_F, closed_spectrum_G, even_cycle_split_candidate, triangle_star_mate
from .moments import delta_moments, moments_from_counts, moments_from_spectrum
from .search import (
    COSPECTRAL_TOL,
    recognize_cone,
    run_probe,
    search_exhaustive,
    search_family,
)

_STATUS_BY_CODE = {0: "ok", 2: "error", 3: "mismatch", 4: "inapplicable", 5: "scale"}


# ---------------------------------------------------------------------------
# spec text grammar
# ---------------------------------------------------------------------------

_PREFIX = re.compile(r"^\s*K1\s+[vV](\s+|\s*$)")
_TERM_PATTERNS = (
    (re.compile(r"^C(\d+)$"), "cycle"),
    (re.compile(r"^P(\d+)$"), "path"),
    (re.compile(r"^(\d*)K2$"), "k2"),
    (re.compile(r"^(\d*)K1$"), "k1"),
    (re.compile(r"^K13$"), "star"),
)


def _parse_term(term: str, pos: int) -> tuple[str, int]:
    for pattern, kind in _TERM_PATTERNS:
        m = pattern.match(term)
        if not m:
            continue
        if kind == "star":
            return kind, 1
        raw = m.group(1)
        if kind in ("k2", "k1"):
            count = int(raw) if raw else 1
            if count < 1:
                raise FormatError(f"count must be >= 1 in {term!r} at position {pos}")
            return kind, count
        size = int(raw)
        if kind == "cycle" and size < 2:
            raise FormatError(f"cycle length must be >= 2 in {term!r} at position {pos}")
        if kind == "path" and size < 1:
            raise FormatError(f"path order must be >= 1 in {term!r} at position {pos}")
        return kind, size
    raise FormatError(f"unknown term {term!r} at position {pos}")


def parse_spec_text(text: str) -> ConeSpec:
    """Parse the compact cone grammar, e.g. "K1 v C3 + C5 + 2K2 + 1K1".

    The leading "K1 v" is optional.  Terms are '+'-separated: Ck (cycle,
    2 = digon), Pl (path), qK2, sK1 and K13.  Errors carry the 1-based
    character position of the offending term.
    """
    offset = 0
    m = _PREFIX.match(text)
    if m:
        offset = m.end()
    body = text[offset:]
    if not body.strip():
        raise FormatError(f"empty cone description at position {offset + 1}")
    cycles: list[int] = []
    paths: list[int] = []
    stars = 0
    pos = offset
    for chunk in body.split("+"):
        term = chunk.strip()
        term_pos = pos + (len(chunk) - len(chunk.lstrip())) + 1
        pos += len(chunk) + 1
        if not term:
            raise FormatError(f"empty term at position {term_pos}")
        kind, value = _parse_term(term, term_pos)
        if kind == "cycle":
            cycles.append(value)
        elif kind == "path":
            paths.append(value)
        elif kind == "k2":
            paths.extend([2] * value)
        elif kind == "k1":
            paths.extend([1] * value)
        else:
            stars += 1
    return ConeSpec(cycles=tuple(cycles), paths=tuple(paths), stars13=stars)


def format_spec_text(spec: ConeSpec) -> str:
    """Canonical text for a spec: stars, cycles, long paths, then qK2 + sK1."""
    terms = ["K13"] * spec.stars13
    terms += [f"C{k}" for k in spec.cycles]
    terms += [f"P{l}" for l in spec.paths if l >= 3]
    k2 = sum(1 for l in spec.paths if l == 2)
    if k2:
        terms.append(f"{k2}K2")
    if spec.s:
        terms.append(f"{spec.s}K1")
    return "K1 v " + " + ".join(terms)


def _read_input(text: str) -> tuple[MultiGraph, ConeSpec | None]:
    """Interpret the input as spec text, falling back to graph6."""
    try:
        spec = parse_spec_text(text)
        return realize(spec), spec
    except (FormatError, ParameterError) as spec_err:
        try:
            graph = decode_graph6(text)
        except (FormatError, ParameterError) as g6_err:
            raise FormatError(
                f"input is neither a cone spec ({spec_err}) nor graph6 ({g6_err})"
            ) from None
        return graph, recognize_cone(graph)


def _require_spec(spec: ConeSpec | None, purpose: str) -> ConeSpec:
    if spec is None:
        raise FormatError(f"{purpose} needs a cone over cycles, paths and stars")
    return spec


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------

def _f(x) -> float:
    """Floats carry 12 significant digits in every payload."""
    return float(f"{float(x):.12g}")


def _spectrum_payload(spec: QSpectrum) -> dict:
    payload: dict = {"values": [_f(v) for v in spec.values]}
    if spec.sources is not None:
        payload["sources"] = list(spec.sources)
    payload["groups"] = [
        {
            "value": _f(g.value),
            "multiplicity": g.multiplicity,
            **({"sources": list(g.sources)} if g.sources else {}),
        }
        for g in spec.groups
    ]
    return payload


def _moment_payload(mom) -> dict:
    out = {}
    for name, value in zip(("t1", "t2", "t3", "t4", "s4"), mom):
        if value is None:
            out[name] = None
        elif isinstance(value, int):
            out[name] = value
        else:
            out[name] = _f(value)
    return out


def _emit(doc: dict) -> None:
    json.dump(doc, sys.stdout, indent=2)
    sys.stdout.write("\n")


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def _spectrum_mode(args) -> str:
    chosen = [m for m in ("numeric", "closed", "both") if getattr(args, m)]
    return chosen[0] if chosen else "both"


def _closed_spectrum(spec: ConeSpec, group_tol: float) -> QSpectrum:
    if spec.is_g_family():
        return closed_spectrum_G(spec, group_tol=group_tol)
    if spec.is_f_family():
        return closed_spectrum_F(spec, group_tol=group_tol)
    raise InapplicableError(
        "closed form covers cones over cycles+K2+K1 with or without one star"
    )


def cmd_spectrum(args) -> tuple[dict, int]:
    mode = _spectrum_mode(args)
    graph, spec = _read_input(args.input)
    result: dict = {
        "n": graph.n,
        "spec": None if spec is None else format_spec_text(spec),
    }
    code = 0
    if mode in ("closed", "both"):
        # a spec-less or out-of-family input cannot take the closed route
        if spec is None:
            raise FormatError("closed form needs a cone spec input")
        try:
            closed = _closed_spectrum(spec, args.group_tol)
        except InapplicableError as exc:
            raise FormatError(str(exc)) from None
        result["closed"] = _spectrum_payload(closed)
    if mode in ("numeric", "both"):
        numeric = q_spectrum(graph, group_tol=args.group_tol)
        result["numeric"] = _spectrum_payload(numeric)
    if mode == "both":
        distance = spectrum_compare(closed, numeric)
        result["distance"] = _f(distance)
        result["tolerance"] = _f(args.tol)
        if distance > args.tol:
            code = 3
    return result, code


def cmd_moments(args) -> tuple[dict, int]:
    graph, spec = _read_input(args.input)
    if not graph.is_simple():
        raise ParameterError("moment identities are defined for simple graphs only")
    result: dict = {
        "n": graph.n,
        "spec": None if spec is None else format_spec_text(spec),
        "from": args.source,
    }
    counted = None
    if args.source in ("counts", "both"):
        counted = moments_from_counts(graph)
        result["counts_moments"] = _moment_payload(counted)
    if args.source in ("spectrum", "both"):
        spectral = moments_from_spectrum(
            q_spectrum(graph),
            adjacency_spec=sym_eigenvalues(adjacency_matrix(graph)),
        )
        result["spectrum_moments"] = _moment_payload(spectral)
    if args.source == "both":
        gaps = [abs(a - b) / max(1.0, abs(a)) for a, b in zip(counted, spectral)]
        result["relative_discrepancy"] = _f(max(gaps))
    return result, 0


def cmd_mate(args) -> tuple[dict, int]:
    if args.theorem not in ("11", "13"):
        raise ParameterError(f"unknown theorem id {args.theorem!r}; expected 11 or 13")
    _, spec = _read_input(args.input)
    spec = _require_spec(spec, "mate construction")
    target_graph = realize(spec)
    target_spec = q_spectrum(target_graph)
    result: dict = {
        "target": format_spec_text(spec),
        "theorem": args.theorem,
        "tolerance": _f(args.tol),
    }
    if args.theorem == "13":
        mate = triangle_star_mate(spec)
        mate_spec = q_spectrum(realize(mate))
        distance = spectrum_compare(target_spec, mate_spec)
        tm = moments_from_counts(target_graph)
        mm = moments_from_counts(realize(mate))
        result.update(
            {
                "mate": format_spec_text(mate),
                "distance": _f(distance),
                "cospectral_within_tolerance": bool(distance <= args.tol),
                "moment_delta": {
                    k: a - b
                    for k, a, b in zip(("t1", "t2", "t3", "t4", "s4"), tm, mm)
                },
                "spectra": {
                    "target": _spectrum_payload(target_spec),
                    "mate": _spectrum_payload(mate_spec),
                },
            }
        )
        return result, 0
    candidate, distance = even_cycle_split_candidate(spec)
    ds4, dt4 = delta_moments(spec, candidate)
    result.update(
        {
            "candidate": format_spec_text(candidate),
            "delta_s4": ds4,
            "delta_t4": dt4,
            "distance": _f(distance),
            "cospectral_within_tolerance": bool(distance <= args.tol),
            "spectra": {
                "target": _spectrum_payload(target_spec),
                "candidate": _spectrum_payload(q_spectrum(realize(candidate))),
            },
        }
    )
    return result, 0


def cmd_search(args) -> tuple[dict, int]:
    graph, spec = _read_input(args.input)
    if args.jobs < 1:
        raise ParameterError("--jobs must be >= 1")
    if args.family:
        target = _require_spec(spec, "family search")
        report = search_family(target, tol=args.tol)
        hits = [
            {
                "spec": format_spec_text(h.candidate),
                "distance": _f(h.distance),
                "isomorphic": h.isomorphic,
            }
            for h in report.hits
        ]
    else:
        report = search_exhaustive(graph, tol=args.tol, jobs=args.jobs)
        hits = [
            {
                "graph6": encode_graph6(h.candidate),
                "degree_sequence": sorted(int(d) for d in h.candidate.degrees()),
                "distance": _f(h.distance),
                "isomorphic": h.isomorphic,
            }
            for h in report.hits
        ]
    result = {
        "mode": "family" if args.family else "exhaustive",
        "target": None if spec is None else format_spec_text(spec),
        "tolerance": _f(report.tolerance),
        "cardinality": report.cardinality,
        "exhaustive": report.exhaustive,
        "classes": len(hits),
        "hits": hits,
    }
    return result, 0


def cmd_probe(args) -> tuple[dict, int]:
    graph, _ = _read_input(args.input)
    outcome = run_probe(graph, args.lemma)
    result = {
        "probe": outcome.probe,
        "status": outcome.status,
        "witness": outcome.witness,
        "message": outcome.message,
    }
    return result, 3 if outcome.status == "fail" else 0


_HANDLERS = {
    "spectrum": cmd_spectrum,
    "moments": cmd_moments,
    "mate": cmd_mate,
    "search": cmd_search,
    "probe": cmd_probe,
}


# ---------------------------------------------------------------------------
# CSV rendering (spectra and moment tables only)
# ---------------------------------------------------------------------------

def _csv_cell(value) -> str:
    if isinstance(value, float):
        return f"{value:.12g}"
    return "" if value is None else str(value)


def _csv_spectrum(result: dict, mode: str) -> str:
    lines = []
    if mode == "both":
        closed = result["closed"]
        numeric = result["numeric"]
        sources = closed.get("sources") or [""] * len(closed["values"])
        lines.append("index,closed,numeric,source")
        rows = zip(closed["values"], numeric["values"], sources)
        for i, (c, x, s) in enumerate(rows, start=1):
            lines.append(f"{i},{_csv_cell(c)},{_csv_cell(x)},{s}")
    else:
        key = "closed" if mode == "closed" else "numeric"
        payload = result[key]
        sources = payload.get("sources") or [""] * len(payload["values"])
        lines.append("index,value,source")
        for i, (v, s) in enumerate(zip(payload["values"], sources), start=1):
            lines.append(f"{i},{_csv_cell(v)},{s}")
    return "\n".join(lines) + "\n"


def _csv_moments(result: dict) -> str:
    names = ("t1", "t2", "t3", "t4", "s4")
    if result["from"] == "both":
        lines = ["name,counts,spectrum"]
        for name in names:
            a = result["counts_moments"][name]
            b = result["spectrum_moments"][name]
            lines.append(f"{name},{_csv_cell(a)},{_csv_cell(b)}")
    else:
        key = "counts_moments" if result["from"] == "counts" else "spectrum_moments"
        lines = ["name,value"]
        for name in names:
            lines.append(f"{name},{_csv_cell(result[key][name])}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qcones",
        description=(
            "Signless-Laplacian spectra, moments, cospectral mates and "
            "searches for cone graphs."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("spectrum", help="eigenvalues of a cone spec or graph6 input")
    sp.add_argument("input", help="cone spec text or graph6 string")
    mode = sp.add_mutually_exclusive_group()
    mode.add_argument("--numeric", action="store_true", help="numeric route only")
    mode.add_argument("--closed", action="store_true", help="closed form only")
    mode.add_argument("--both", action="store_true", help="both routes plus distance (default)")
    sp.add_argument("--tol", type=float, default=COSPECTRAL_TOL, help="comparison tolerance")
    sp.add_argument("--group-tol", type=float, default=GROUP_TOL, dest="group_tol")
    sp.add_argument("--format", choices=("json", "csv"), default="json")

    mo = sub.add_parser("moments", help="spectral moments of a simple graph")
    mo.add_argument("input", help="cone spec text or graph6 string")
    mo.add_argument("--from", dest="source", choices=("counts", "spectrum", "both"), default="counts")
    mo.add_argument("--format", choices=("json", "csv"), default="json")

    ma = sub.add_parser("mate", help="cospectral mate or rewiring candidate")
    ma.add_argument("input", help="cone spec text or graph6 string")
    ma.add_argument("--theorem", required=True, help="construction id: 11 or 13")
    ma.add_argument("--tol", type=float, default=COSPECTRAL_TOL)

    se = sub.add_parser("search", help="cospectral-mate search")
    se.add_argument("input", help="cone spec text or graph6 string")
    which = se.add_mutually_exclusive_group(required=True)
    which.add_argument("--family", action="store_true", help="structured family scan")
    which.add_argument("--exhaustive", action="store_true", help="all simple graphs, n <= 8")
    se.add_argument("--tol", type=float, default=COSPECTRAL_TOL)
    se.add_argument("--jobs", type=int, default=1, help="worker processes (exhaustive)")

    pr = sub.add_parser("probe", help="structural fact checks")
    pr.add_argument("input", help="cone spec text or graph6 string")
    pr.add_argument("--lemma", required=True, help="probe id, e.g. 2.4")

    return parser


def _params_for(args) -> dict:
    if args.command == "spectrum":
        return {
            "mode": _spectrum_mode(args),
            "tol": _f(args.tol),
            "group_tol": _f(args.group_tol),
            "format": args.format,
        }
    if args.command == "moments":
        return {"from": args.source, "format": args.format}
    if args.command == "mate":
        return {"theorem": args.theorem, "tol": _f(args.tol)}
    if args.command == "search":
        return {
            "mode": "family" if args.family else "exhaustive",
            "tol": _f(args.tol),
        }
    return {"lemma": args.lemma}


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    doc = {
        "command": args.command,
        "input": args.input,
        "params": _params_for(args),
        "result": None,
        "status": "ok",
    }
    try:
        result, code = _HANDLERS[args.command](args)
    except QConesError as exc:
        if isinstance(exc, ScaleError):
            code = 5
        elif isinstance(exc, InapplicableError):
            code = 4
        else:
            code = 2
        doc["status"] = _STATUS_BY_CODE[code]
        doc["error"] = str(exc)
        print(f"qcones: {exc}", file=sys.stderr)
        _emit(doc)
        return code
    doc["result"] = result
    doc["status"] = _STATUS_BY_CODE[code]
    if getattr(args, "format", "json") == "csv":
        if args.command == "spectrum":
            sys.stdout.write(_csv_spectrum(result, _spectrum_mode(args)))
        else:
            sys.stdout.write(_csv_moments(result))
    else:
        _emit(doc)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
