"""Full pipeline for one model file, report rendering, and corpus runs."""

import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from .bridges import complex_bridge, symplectic_bridge
from .cohomology import cohomology_report, theorem_failures
from .errors import GcxError, ParseError, StructureError, TheoremViolation
from .gcs_engine import build_gcs
from .model_parser import parse_model_file, validate
from .spectral import spectral_data

__all__ = ["RunConfig", "ModelResult", "analyze", "run_model", "run_corpus", "render_text", "render_json"]

EXIT_OK = 0


@dataclass(frozen=True)
class RunConfig:
    fmt: str = "text"
    max_page: int = None
    oracle: bool = False
    jobs: int = 1
    color: bool = False

    def __post_init__(self):
        if self.max_page is not None and self.max_page < 1:
            raise ValueError("max page must be at least 1")
        if self.fmt not in ("text", "json"):
            raise ValueError(f"unknown format {self.fmt!r}")


@dataclass
class ModelResult:
    path: str
    name: str
    exit_code: int
    report: object = None
    error: str = ""
    violations: list = field(default_factory=list)


def _bridge_violations(bridge):
    if not bridge:
        return []
    if bridge["kind"] == "complex":
        keys = ("diagonal_sums_match", "lemma_flags_agree", "conjugation_dualities")
        bad = [k for k in keys if not bridge[k]]
        if not all(bridge["inequality"].values()):
            bad.append("complex_inequality")
        return ["bridge." + k for k in bad]
    keys = ("lemma_flags_agree", "corollary_inequality", "corollary_equivalence", "bc_equals_a")
    return ["bridge." + k for k in keys if not bridge[k]]


def analyze(model, spec, name="", config=RunConfig()):
    """Validate, build, and compute everything.  Returns ``(report, violations)``."""
    v = validate(model)
    if not v:
        raise StructureError("d^2 != 0: " + v.detail)
    gcs = build_gcs(model, spec)
    rep = cohomology_report(gcs, name=name, oracle=config.oracle)
    sd = spectral_data(gcs, max_page=config.max_page)
    rep.spectral = {
        "pages": {str(r): [p[k] for k in gcs.ks] for r, p in sd.pages.items()},
        "first_live_page": sd.first_live_page,
        "decomposition_pieces": [sd.decomposition_pieces[k] for k in gcs.ks],
    }
    for row in rep.per_k:
        row["e1"] = sd.e1[row["k"]]
        row["e_inf"] = sd.e_inf[row["k"]]
    lemma = rep.verdicts["lemma"]
    rep.verdicts["degeneration"] = sd.degenerate
    rep.verdicts["decomposition"] = sd.decomposition
    rep.verdicts["e1_matches_dolbeault"] = all(r["e1"] == r["gh_delbar"] for r in rep.per_k)
    rep.verdicts["spectral_equivalence"] = sd.criterion == lemma
    if spec.kind == "complex_endomorphism":
        rep.bridge = complex_bridge(gcs, oracle=config.oracle)
    elif spec.kind == "symplectic_form":
        rep.bridge = symplectic_bridge(gcs, oracle=config.oracle)
    violations = theorem_failures(rep)
    for key in ("e1_matches_dolbeault", "spectral_equivalence"):
        if not rep.verdicts[key]:
            violations.append(key)
    violations += _bridge_violations(rep.bridge)
    return rep, violations


def run_model(path, config=RunConfig()):
    """Parse and analyze one file; never raises for expected failure modes."""
    path = str(path)
    name = Path(path).stem
    try:
        model, spec = parse_model_file(path)
        rep, violations = analyze(model, spec, name, config)
    except OSError as exc:
        return ModelResult(path, name, ParseError.exit_code, error=f"cannot read file: {exc.strerror}")
    except GcxError as exc:
        return ModelResult(path, name, exc.exit_code, error=str(exc))
    except AssertionError as exc:
        return ModelResult(path, name, TheoremViolation.exit_code, error=f"internal assertion: {exc}")
    code = TheoremViolation.exit_code if violations else EXIT_OK
    return ModelResult(path, name, code, rep, violations=violations)


def _run_one(args):
    return run_model(*args)


def run_corpus(paths, config=RunConfig()):
    """Run every ``.gcx`` file under the given files/directories in sorted order."""
    files = []
    for p in paths:
        p = Path(p)
        if p.is_dir():
            files.extend(sorted(str(f) for f in p.glob("*.gcx")))
        else:
            files.append(str(p))
    if config.jobs > 1 and len(files) > 1:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            results = list(pool.map(_run_one, [(f, config) for f in files]))
    else:
        results = [run_model(f, config) for f in files]
    code = max((r.exit_code for r in results), default=EXIT_OK)
    return results, code


# ---------------------------------------------------------------------------
# rendering


def _result_dict(res):
    if res.report is None:
        return {"model": res.name, "path": res.path, "exit": res.exit_code, "error": res.error}
    rep = res.report
    keys = ("k", "dim_uk", "gh_del", "gh_delbar", "gh_bc", "gh_a", "lemma", "varouchas",
            "e1", "e_inf", "harmonic", "psi_plus_rank", "psi_minus_rank", "inequality")
    return {
        "model": rep.model,
        "n": rep.n,
        "per_k": [{key: row[key] for key in keys} for row in rep.per_k],
        "betti": list(rep.betti),
        "verdicts": rep.verdicts,
        "spectral": rep.spectral,
        "bridge": _jsonable(rep.bridge),
        "exit": res.exit_code,
        "violations": res.violations,
    }


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj


def render_json(results):
    out = [_result_dict(r) for r in results]
    return json.dumps(out[0] if len(out) == 1 else out, indent=2, sort_keys=False) + "\n"


def _paint(text, ok, color):
    if not color:
        return text
    return ("\033[32m" if ok else "\033[31m") + text + "\033[0m"


def _flag(ok, color):
    return _paint("yes" if ok else "no", ok, color)


def render_text(results, color=False):
    lines = []
    for res in results:
        if res.report is None:
            lines.append(f"{res.name}: error (exit {res.exit_code}): {res.error}")
            lines.append("")
            continue
        rep = res.report
        lines.append(f"model {rep.model}  n = {rep.n}")
        head = f"{'k':>3} {'U^k':>4} {'del':>4} {'dbar':>4} {'BC':>4} {'A':>4}  lemma  a b c d e f  {'E1':>3} {'Einf':>4}"
        lines.append(head)
        for row in rep.per_k:
            v = row["varouchas"]
            abc = " ".join(str(v[x]) for x in "abcdef")
            lines.append(
                f"{row['k']:>3} {row['dim_uk']:>4} {row['gh_del']:>4} {row['gh_delbar']:>4} "
                f"{row['gh_bc']:>4} {row['gh_a']:>4}  {'yes' if row['lemma'] else 'no':>5}  {abc}  "
                f"{row['e1']:>3} {row['e_inf']:>4}"
            )
        lines.append("betti " + " ".join(map(str, rep.betti)))
        ver = rep.verdicts
        lines.append(
            "lemma holds" if ver["lemma"] else "lemma fails"
        )
        lines.append("  ".join(f"{k} {_flag(bool(x), color)}" for k, x in ver.items()))
        live = rep.spectral.get("first_live_page")
        lines.append("spectral: degenerates at E1" if live is None else f"spectral: d_{live} is the first nonzero differential")
        if rep.bridge:
            b = rep.bridge
            if b["kind"] == "symplectic":
                lines.append(f"symplectic bridge: H_BC {b['h_bc']}  H_A {b['h_a']}  ddLambda-lemma {_flag(b['ddLambda_lemma'], color)}")
            else:
                lines.append(
                    f"complex bridge: diagonal sums {_flag(b['diagonal_sums_match'], color)}  "
                    f"classical lemma {_flag(b['classical_lemma'], color)}  "
                    f"conjugation {_flag(b['conjugation_dualities'], color)}"
                )
        if res.violations:
            lines.append(_paint("violated: " + ", ".join(res.violations), False, color))
        lines.append("")
    if len(results) > 1 or not results:
        lines.append("summary")
        for res in results:
            status = "ok" if res.exit_code == 0 else f"exit {res.exit_code}"
            lines.append(f"  {res.name:<20} {status}")
    return "\n".join(lines).rstrip("\n") + "\n"


def use_color(stream=None):
    """ANSI only on a terminal, and never when GCX_COLOR is 0, no, never or off."""
    if os.environ.get("GCX_COLOR", "").lower() in ("0", "no", "never", "off", "false"):
        return False
    stream = stream or sys.stdout
    return hasattr(stream, "isatty") and stream.isatty()
