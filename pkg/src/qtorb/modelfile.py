"""
Model files: UTF-8 JSON descriptions of a characteristic model.

.. code:: json

    {
      "dimension": 2,
      "facets": [
        {"charvec": [1, 0], "name": "F1", "normal": ["1", "0"]},
        ...
      ],
      "format_version": "1",
      "vertices": [
        ["F1", "F2"],
        ...
      ]
    }

Rationals are written as "p/q" strings so that files stay exact. The writer is canonical:
one facet or vertex per line, keys sorted, vertices in increasing facet-index order.
"""

import json
import logging
import os
from fractions import Fraction
from pathlib import Path
from typing import List, Union

from .exceptions import ModelError
from .model import CharacteristicModel, validate_model
from .polytope import CombinatorialPolytope
from .settings import Settings

log = logging.getLogger("qtorb.modelfile")

PathLike = Union[str, os.PathLike]


def parse_rational(text) -> Fraction:
    "Parse a 'p/q' string (or an integer) exactly"
    if isinstance(text, bool) or isinstance(text, float):
        raise ValueError(f"rational must be written as a 'p/q' string, got {text!r}")
    return Fraction(text)


def format_rational(q: Fraction) -> str:
    return str(Fraction(q))


def model_from_dict(data: dict, validate: bool = True) -> CharacteristicModel:
    """
    Build a model from decoded JSON.

    :raises ModelError: on schema problems, and (with validate) on invalid models
    """
    problems: List[str] = []
    if not isinstance(data, dict):
        raise ModelError("model file must hold a JSON object")
    for key in ("dimension", "facets", "vertices"):
        if key not in data:
            problems.append(f"missing key {key}")
    if problems:
        raise ModelError("malformed model file", problems)

    dim = data["dimension"]
    if not isinstance(dim, int) or isinstance(dim, bool):
        problems.append("dimension must be an integer")
    if not isinstance(data["facets"], list):
        problems.append("facets must be a list of facet records")
    if not isinstance(data["vertices"], list):
        problems.append("vertices must be a list of facet-name lists")
    if problems:
        raise ModelError("malformed model file", problems)

    names, charvecs, normals = [], [], []
    for k, rec in enumerate(data["facets"]):
        if not isinstance(rec, dict) or "name" not in rec or "charvec" not in rec:
            problems.append(f"facet record {k} needs 'name' and 'charvec'")
            continue
        names.append(str(rec["name"]))
        charvec = rec["charvec"]
        if not isinstance(charvec, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in charvec):
            problems.append(f"charvec of {rec['name']} must be a list of integers")
            continue
        charvecs.append(tuple(charvec))
        if "normal" in rec:
            if not isinstance(rec["normal"], list):
                problems.append(f"normal of {rec['name']} must be a list of 'p/q' strings")
                continue
            try:
                normals.append(tuple(parse_rational(x) for x in rec["normal"]))
            except (TypeError, ValueError, ZeroDivisionError) as e:
                problems.append(f"normal of {rec['name']}: {e}")
    if normals and len(normals) != len(charvecs):
        problems.append("either every facet or no facet must carry a normal")
    if problems:
        raise ModelError("malformed model file", problems)

    index = {name: i for i, name in enumerate(names)}
    vertices = []
    for k, vertex in enumerate(data["vertices"]):
        if not isinstance(vertex, list) or not all(isinstance(name, str) for name in vertex):
            problems.append(f"vertex record {k} must be a list of facet names")
            continue
        unknown = [name for name in vertex if name not in index]
        if unknown:
            problems.append(f"vertex {vertex} names unknown facets {unknown}")
            continue
        vertices.append(frozenset(index[name] for name in vertex))
    if problems:
        raise ModelError("malformed model file", problems)

    polytope = CombinatorialPolytope(dim, tuple(names), tuple(vertices))
    model = CharacteristicModel(polytope, tuple(charvecs), tuple(normals) if normals else None)
    if validate:
        diagnostics = validate_model(model)
        if diagnostics:
            raise ModelError("invalid characteristic model", diagnostics)
    return model


def load_model(path: PathLike, validate: bool = True) -> CharacteristicModel:
    "Read a model file"
    path = Path(path)
    try:
        with open(path, "r", encoding="utf-8") as fp:
            data = json.load(fp)
    except json.JSONDecodeError as e:
        raise ModelError(f"{path.name} is not valid JSON", [str(e)])
    log.debug(f"loaded model file {path}")
    return model_from_dict(data, validate)


def model_to_dict(M: CharacteristicModel) -> dict:
    facets = []
    for i, name in enumerate(M.facets):
        rec = {"name": name, "charvec": list(M.charvecs[i])}
        if M.normals is not None:
            rec["normal"] = [format_rational(x) for x in M.normals[i]]
        facets.append(rec)
    vertices = [[M.facets[i] for i in sorted(v)] for v in sorted(M.polytope.vertices, key=sorted)]
    return {
        "dimension": M.n,
        "facets": facets,
        "format_version": Settings.compute["format_version"],
        "vertices": vertices,
    }


def dumps_model(M: CharacteristicModel) -> str:
    "Canonical text of a model file"
    data = model_to_dict(M)
    lines = ["{", f'  "dimension": {data["dimension"]},', '  "facets": [']
    items = [json.dumps(rec, sort_keys=True, ensure_ascii=False) for rec in data["facets"]]
    lines.extend(f"    {item}," for item in items[:-1])
    lines.append(f"    {items[-1]}")
    lines.append("  ],")
    lines.append(f'  "format_version": {json.dumps(data["format_version"])},')
    lines.append('  "vertices": [')
    items = [json.dumps(v, ensure_ascii=False) for v in data["vertices"]]
    lines.extend(f"    {item}," for item in items[:-1])
    lines.append(f"    {items[-1]}")
    lines.append("  ]")
    lines.append("}")
    return "\n".join(lines) + "\n"


def save_model(M: CharacteristicModel, path: PathLike):
    with open(path, "w", encoding="utf-8", newline="\n") as fp:
        fp.write(dumps_model(M))
    log.info(f"wrote model file {path}")


def fixtures_dir() -> Path:
    "Directory of the shipped fixtures, overridden by the QTORB_FIXTURES environment variable"
    override = os.environ.get(Settings.FIXTURES_ENV)
    if override:
        return Path(override)
    return Path(__file__).resolve().parent.joinpath("fixtures")


def fixture_path(name: str) -> Path:
    "Path of a fixture by bare name (e.g. 'simplex4') or file name"
    if not name.endswith(".json"):
        name = f"{name}.json"
    return fixtures_dir().joinpath(name)


def load_fixture(name: str) -> CharacteristicModel:
    return load_model(fixture_path(name))


def list_fixtures() -> List[str]:
    return sorted(p.stem for p in fixtures_dir().glob("*.json"))
