"""Instance files: one JSON document carrying (division ring, semigroup,
twist data), plus witness files for gauges and semigroup automorphisms.

Parse errors are collected as (json-pointer, message) pairs so a bad file
reports every problem with its location instead of failing at the first.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .cochain import TwoCochain, cochain_from_json, cochain_to_json
from .errors import InstanceFileInvalid, SemigroupInvalid
from .gauge import Gauge, IsoWitness, gauge_from_json, gauge_to_json
from .scalars import RingAuto, ScalarDomain, domain_from_json, domain_to_json
from .semigroup import (
    SquareFreeSemigroup, auto_from_json as sg_auto_from_json,
    auto_to_json as sg_auto_to_json, semigroup_to_json,
)


@dataclass(frozen=True)
class Instance:
    domain: ScalarDomain
    sg: SquareFreeSemigroup
    cocycle: TwoCochain


@dataclass(frozen=True)
class RunConfig:
    seed: int = 0
    max_idempotents: int = 8
    jobs: int = 1
    output: str = "text"  # "json" | "text"


def parse_instance(data, max_idempotents=8):
    """Build an Instance from a decoded JSON document."""
    issues = []
    if not isinstance(data, dict):
        raise InstanceFileInvalid([("", "instance must be a JSON object")])

    domain = None
    if "division_ring" not in data:
        issues.append(("/division_ring", "missing section"))
    else:
        try:
            domain = domain_from_json(data["division_ring"])
        except (ValueError, KeyError, TypeError) as exc:
            issues.append(("/division_ring", str(exc)))

    sg = None
    sgdata = data.get("semigroup")
    if not isinstance(sgdata, dict):
        issues.append(("/semigroup", "missing or non-object section"))
    else:
        idempotents = sgdata.get("idempotents")
        if not isinstance(idempotents, list) or not idempotents:
            issues.append(("/semigroup/idempotents", "must be a nonempty list"))
        else:
            if len(idempotents) > max_idempotents:
                issues.append(("/semigroup/idempotents",
                               f"{len(idempotents)} idempotents exceed the cap "
                               f"{max_idempotents}"))
            arrows = []
            eset = set(idempotents)
            for i, el in enumerate(sgdata.get("elements", [])):
                ptr = f"/semigroup/elements/{i}"
                if not isinstance(el, dict):
                    issues.append((ptr, "element entries are objects"))
                    continue
                missing = [k for k in ("name", "src", "tgt") if k not in el]
                if missing:
                    issues.append((ptr, f"missing keys {missing}"))
                    continue
                if el["name"] in eset:
                    if el["src"] != el["name"] or el["tgt"] != el["name"]:
                        issues.append((ptr, "idempotent entries must have "
                                            "src = tgt = name"))
                    continue
                arrows.append((el["name"], el["src"], el["tgt"]))
            products = []
            for i, pr in enumerate(sgdata.get("products", [])):
                ptr = f"/semigroup/products/{i}"
                if not isinstance(pr, dict) or "left" not in pr or "right" not in pr:
                    issues.append((ptr, "product entries carry left/right"))
                    continue
                products.append(((pr["left"], pr["right"]), pr.get("result", "theta")))
            if not issues:
                try:
                    sg = SquareFreeSemigroup.validate(idempotents, arrows, products)
                except SemigroupInvalid as exc:
                    for v in exc.violations:
                        issues.append(("/semigroup", f"{v.kind}{v.members}: {v.message}"))

    cocycle = None
    if domain is not None and sg is not None:
        try:
            cocycle = cochain_from_json(sg, domain, data.get("cocycle"))
        except (ValueError, KeyError, TypeError) as exc:
            issues.append(("/cocycle", str(exc)))

    if issues:
        raise InstanceFileInvalid(issues)
    return Instance(domain, sg, cocycle)


def instance_to_json(inst):
    return {
        "division_ring": domain_to_json(inst.domain),
        "semigroup": semigroup_to_json(inst.sg),
        "cocycle": cochain_to_json(inst.cocycle),
    }


def load_instance(path, max_idempotents=8):
    with open(path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InstanceFileInvalid(
                [("", f"not valid JSON: {exc.msg} at line {exc.lineno}, "
                      f"column {exc.colno}")]) from None
    return parse_instance(data, max_idempotents=max_idempotents)


def save_instance(path, inst):
    with open(path, "w") as fh:
        json.dump(instance_to_json(inst), fh, indent=2, sort_keys=True)
        fh.write("\n")


# ---------------------------------------------------------------------------
# witness files: {"gauge": {...}, "phi": {"map": {...}}}, both parts optional


def parse_witness(inst, data):
    issues = []
    gauge = None
    phi = None
    if "gauge" in data:
        try:
            gauge = gauge_from_json(inst.sg, inst.domain, data["gauge"])
        except (ValueError, KeyError, TypeError) as exc:
            issues.append(("/gauge", str(exc)))
    if "phi" in data:
        try:
            phi = sg_auto_from_json(inst.sg, data["phi"])
        except Exception as exc:
            issues.append(("/phi", str(exc)))
    if issues:
        raise InstanceFileInvalid(issues)
    return IsoWitness(gauge if gauge is not None else Gauge.identity(inst.sg, inst.domain),
                      phi)


def witness_to_json(witness):
    out = {"gauge": gauge_to_json(witness.gauge)}
    if witness.phi is not None:
        out["phi"] = sg_auto_to_json(witness.phi)
    return out


# ---------------------------------------------------------------------------
# the bundled demo instance: GF(4) over the diamond with a Frobenius twist
# on the top-right arrow


def diamond_demo_instance():
    domain = ScalarDomain.finite_field(2, 2)
    sg = SquareFreeSemigroup.validate(
        ["e1", "e2", "e3", "e4"],
        [("s12", "e1", "e2"), ("s13", "e1", "e3"),
         ("s24", "e2", "e4"), ("s34", "e3", "e4")],
        {},
    )
    cocycle = TwoCochain(sg, domain, alpha={"s34": RingAuto.frobenius(domain, 1)})
    return Instance(domain, sg, cocycle)
