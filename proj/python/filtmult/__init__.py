"""Multiplicities of filtrations of monomial ideals and divisorial models.

Inputs are plain dicts in the same JSON layout the command-line tool reads;
reports come back as dicts.
"""

import json

from . import _core
from ._core import FiltmultError

__all__ = [
    "FiltmultError",
    "run",
    "render",
    "multiplicity",
    "mixed_multiplicities",
    "minkowski",
    "trsk",
    "gamma",
    "body",
    "closure",
    "brunn_minkowski",
    "example_c7",
    "exact_multiplicity",
    "colength",
    "adic",
]


def run(command, data=None, **caps):
    text = "" if data is None else json.dumps(data)
    return json.loads(_core.run(command, text, **caps))


def render(command, report, fmt="table", digits=12):
    return _core.render(command, json.dumps(report), fmt, digits)


def adic(gens):
    return {"kind": "adic", "gens": [list(g) for g in gens]}


def multiplicity(filtration, **caps):
    return run("mult", filtration, **caps)


def mixed_multiplicities(f1, f2, **caps):
    return run("mixed", {"f1": f1, "f2": f2}, **caps)


def minkowski(f1, f2, **caps):
    return run("minkowski", {"f1": f1, "f2": f2}, **caps)


def trsk(f1, f2, **caps):
    return run("trsk", {"f1": f1, "f2": f2}, **caps)


def gamma(filtration, valuations=None, **caps):
    data = {"filtration": filtration}
    if valuations is not None:
        data["valuations"] = [list(v) for v in valuations]
    return run("gamma", data, **caps)


def body(filtration, **caps):
    return run("body", filtration, **caps)


def closure(filtration, **caps):
    return run("closure", filtration, **caps)


def brunn_minkowski(k, l, t="1/2"):
    return run("bm", {"K": k, "L": l, "t": t})


def example_c7(fmt="table"):
    report = run("example-c7")
    return report if fmt == "dict" else render("example-c7", report, fmt)


def exact_multiplicity(filtration):
    return _core.exact_multiplicity(json.dumps(filtration))


def colength(filtration, n):
    return _core.colength(json.dumps(filtration), n)
