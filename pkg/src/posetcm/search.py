"""Randomized and catalog sweeps for two open questions.

``mobius_nowhere_zero``: is the Möbius function of ``P`` with bounds added
nowhere zero whenever ``P`` is edgewise 2-CM? ``geometric_strongECM``: is
the proper part of every geometric lattice edgewise strongly CM?

Each violation is written as a standalone certificate document that
:func:`replay_certificate` re-checks without the CLI. No violations means
"no counterexample found", never a proof.
"""

from __future__ import annotations

import json
import platform
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from importlib.metadata import PackageNotFoundError, version
from pathlib import Path
from typing import Any, Sequence

from .catalog import generate
from .cm import is_edgewise_k_cm
from .homology import FieldSpec, QQ
from .io import doc_to_poset, fingerprint, poset_to_doc
from .lattice import lattice_classes, lattice_structure, mobius_function
from .poset import add_bounds, proper_part
from .sampling import random_graded_poset, rng_for

QUESTIONS = ("mobius_nowhere_zero", "geometric_strongECM")
MAX_RANDOM_ELEMENTS = 12
DEFAULT_LATTICES = (
    "boolean:2", "boolean:3", "boolean:4",
    "partition:3", "partition:4",
    "uniform_matroid:2,3", "uniform_matroid:2,4", "uniform_matroid:3,4", "uniform_matroid:3,5",
)


@dataclass
class SearchOutcome:
    manifest: dict[str, Any]
    certificates: list[dict[str, Any]]

    @property
    def violations(self) -> int:
        return len(self.certificates)


def _package_version() -> str:
    try:
        return version("artifact")
    except PackageNotFoundError:
        return "unknown"


def parse_lattice_spec(spec: str) -> tuple[str, list[int]]:
    """``"name"`` or ``"name:1,2"`` -> ``(name, [1, 2])``."""
    name, _, params = spec.partition(":")
    return name, [int(x) for x in params.split(",") if x.strip()]


def _mobius_trial(args: tuple[int, int, int, float, int]) -> dict[str, Any]:
    seed, trial, max_elements, p, field_p = args
    field = FieldSpec(field_p)
    P, params = random_graded_poset(rng_for(seed, trial), max_elements, p=p)
    row: dict[str, Any] = {"trial": trial, "sampler": params, "edgewise_2cm": False}
    if not is_edgewise_k_cm(P, 2, field).holds:
        return row
    row["edgewise_2cm"] = True
    H = add_bounds(P)
    mu = mobius_function(H)
    if not mu.nowhere_zero:
        x, y = next(pair for pair, v in sorted(mu.values.items()) if v == 0)
        row["certificate"] = {
            "question": "mobius_nowhere_zero",
            "field": str(field),
            "field_p": field.p,
            "poset": poset_to_doc(P, f"trial-{trial}"),
            "fingerprint": fingerprint(P),
            "pair": [H.labels[x], H.labels[y]],
            "mobius": 0,
        }
    return row


def _geometric_case(spec: str, field: FieldSpec) -> dict[str, Any]:
    name, params = parse_lattice_spec(spec)
    L = generate(name, params)
    flags = lattice_classes(L) if lattice_structure(L).is_lattice else {}
    P = proper_part(L)
    verdict = is_edgewise_k_cm(P, "strong", field)
    row: dict[str, Any] = {
        "lattice": spec,
        "geometric": bool(flags.get("geometric", False)),
        "holds": verdict.holds,
    }
    if not verdict.holds:
        row["certificate"] = {
            "question": "geometric_strongECM",
            "field": str(field),
            "field_p": field.p,
            "lattice": spec,
            "geometric": row["geometric"],
            "poset": poset_to_doc(P, f"proper({spec})"),
            "fingerprint": fingerprint(P),
            "witness": verdict.witness,
        }
    return row


def search_counterexamples(
    question: str,
    trials: int,
    max_elements: int,
    seed: int,
    out_dir: str | Path | None = None,
    field: FieldSpec = QQ,
    p: float = 0.5,
    lattices: Sequence[str] | None = None,
    jobs: int = 1,
    argv: Sequence[str] | None = None,
) -> SearchOutcome:
    """Run one sweep; with ``out_dir``, also write its files.

    The directory receives ``manifest.json`` plus one ``cert-*.json`` per
    violation. Outputs depend only on the arguments, never on ``jobs``.
    """
    if question not in QUESTIONS:
        raise ValueError(f"unknown question {question!r}; expected one of {QUESTIONS}")
    certificates: list[dict[str, Any]] = []
    manifest: dict[str, Any] = {
        "argv": list(argv) if argv is not None else None,
        "question": question,
        "seed": seed,
        "field": str(field),
        "versions": {"posetcm": _package_version(), "python": platform.python_version()},
    }
    if question == "mobius_nowhere_zero":
        if max_elements > MAX_RANDOM_ELEMENTS:
            raise ValueError(f"max_elements is capped at {MAX_RANDOM_ELEMENTS}")
        tasks = [(seed, t, max_elements, p, field.p) for t in range(trials)]
        if jobs > 1:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                rows = list(pool.map(_mobius_trial, tasks, chunksize=8))
        else:
            rows = [_mobius_trial(t) for t in tasks]
        rows.sort(key=lambda r: r["trial"])
        for r in rows:
            if "certificate" in r:
                certificates.append(r["certificate"])
        manifest["sampler"] = {"kind": "graded_levels", "p": p, "max_elements": max_elements}
        manifest["trials"] = trials
        manifest["draws"] = [r["sampler"] for r in rows]
        manifest["counts"] = {
            "trials": trials,
            "edgewise_2cm": sum(r["edgewise_2cm"] for r in rows),
            "violations": len(certificates),
        }
        total = trials
    else:
        specs = list(lattices) if lattices else list(DEFAULT_LATTICES)
        rows = [_geometric_case(s, field) for s in specs]
        certificates = [r["certificate"] for r in rows if "certificate" in r]
        manifest["lattices"] = [
            {"lattice": r["lattice"], "geometric": r["geometric"], "holds": r["holds"]} for r in rows
        ]
        manifest["counts"] = {"cases": len(rows), "violations": len(certificates)}
        total = len(rows)

    names = [f"cert-{i:04d}.json" for i in range(len(certificates))]
    manifest["certificates"] = names
    if certificates:
        manifest["summary"] = f"{len(certificates)} violation(s) found in {total} cases"
    else:
        unit = "trials" if question == "mobius_nowhere_zero" else "cases"
        manifest["summary"] = f"no counterexample found in {total} {unit}"

    if out_dir is not None:
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        for fname, cert in zip(names, certificates):
            (out / fname).write_text(_dump(cert), encoding="utf-8")
        (out / "manifest.json").write_text(_dump(manifest), encoding="utf-8")
    return SearchOutcome(manifest, certificates)


def _dump(doc: Any) -> str:
    return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def replay_certificate(cert: dict[str, Any] | str | Path) -> bool:
    """``True`` when the certificate's violation reproduces through the library."""
    if not isinstance(cert, dict):
        cert = json.loads(Path(cert).read_text(encoding="utf-8"))
    P, _ = doc_to_poset(cert["poset"])
    field = FieldSpec(cert.get("field_p", 0))
    if cert["question"] == "mobius_nowhere_zero":
        if not is_edgewise_k_cm(P, 2, field).holds:
            return False
        H = add_bounds(P)
        x, y = (H.index(s) for s in cert["pair"])
        return mobius_function(H).values.get((x, y)) == 0
    if cert["question"] == "geometric_strongECM":
        verdict = is_edgewise_k_cm(P, "strong", field)
        return not verdict.holds and verdict.witness == cert["witness"]
    raise ValueError(f"unknown question {cert['question']!r}")
