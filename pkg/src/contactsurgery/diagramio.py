"""Versioned JSON schemas for diagram and converted-presentation files.

Coefficients are serialized as strings ("p/q" or "inf") so no float can
sneak in; unknown fields are rejected everywhere and output is
canonical (sorted keys, fixed indentation), so a fixed input always
produces byte-identical files.
"""

from __future__ import annotations

import json
from fractions import Fraction

from . import surgery
from .errors import ContactSurgeryError, ParseError
from .exact import INF, IntMat2, format_rational, parse_rational
from .fronts import FrontWord, OrientedFront
from .surgery import (
    ChainConversion,
    ContactDiagram,
    ConversionCertificate,
    DiagramComponent,
    KnotData,
    PmOneDiagram,
    PmOneInstruction,
)

SCHEMA_VERSION = 1


def dumps_canonical(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _load_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    except OSError as exc:
        raise ParseError(f"{path}: {exc}") from None


def _check_keys(obj, where, required, optional=()):
    if not isinstance(obj, dict):
        raise ParseError(f"{where}: expected an object, got {type(obj).__name__}")
    missing = [k for k in required if k not in obj]
    unknown = [k for k in obj if k not in required and k not in optional]
    if missing:
        raise ParseError(f"{where}: missing field(s) {missing}")
    if unknown:
        raise ParseError(f"{where}: unknown field(s) {unknown}")


def _check_version(obj, where):
    if obj.get("version") != SCHEMA_VERSION:
        raise ParseError(
            f"{where}: unsupported version {obj.get('version')!r}, expected {SCHEMA_VERSION}"
        )


def _coefficient(value, where):
    if not isinstance(value, str):
        raise ParseError(f"{where}: coefficient must be a string like '-5/3' or 'inf'")
    return parse_rational(value)


def _int(value, where):
    if not isinstance(value, int) or isinstance(value, bool):
        raise ParseError(f"{where}: expected an integer, got {value!r}")
    return value


def _knot(obj, where):
    _check_keys(obj, where, required=(), optional=("front", "tb", "rot", "type"))
    if "front" in obj:
        if len(obj) != 1:
            raise ParseError(f"{where}: front knots take no other fields")
        if not isinstance(obj["front"], list):
            raise ParseError(f"{where}: front must be a token list")
        return OrientedFront(FrontWord.from_tokens(obj["front"]))
    if "tb" not in obj or "rot" not in obj:
        raise ParseError(f"{where}: knot needs either a front or tb and rot")
    kind = obj.get("type", "unknot")
    if not isinstance(kind, str):
        raise ParseError(f"{where}: knot type must be a string")
    return KnotData(_int(obj["tb"], where), _int(obj["rot"], where), kind)


def obj_to_diagram(obj, where="diagram") -> tuple[ContactDiagram, dict]:
    _check_keys(obj, where, required=("version", "components"), optional=("options",))
    _check_version(obj, where)
    if not isinstance(obj["components"], list):
        raise ParseError(f"{where}: components must be a list")
    components = []
    for i, comp in enumerate(obj["components"]):
        cwhere = f"{where}.components[{i}]"
        _check_keys(comp, cwhere, required=("id", "coefficient", "knot"), optional=("linking",))
        cid = comp["id"]
        if not isinstance(cid, str) or not cid:
            raise ParseError(f"{cwhere}: id must be a nonempty string")
        linking = comp.get("linking", {})
        if not isinstance(linking, dict):
            raise ParseError(f"{cwhere}: linking must be a map id -> integer")
        linking = {k: _int(v, f"{cwhere}.linking[{k}]") for k, v in linking.items()}
        try:
            components.append(
                DiagramComponent(
                    id=cid,
                    coefficient=_coefficient(comp["coefficient"], cwhere),
                    knot=_knot(comp["knot"], f"{cwhere}.knot"),
                    linking=linking,
                )
            )
        except ContactSurgeryError as exc:
            raise type(exc)(f"component {cid}: {exc}") from None
    options = obj.get("options", {})
    _check_keys(options, f"{where}.options", required=(), optional=("policy", "enumerate"))
    if "enumerate" in options and not isinstance(options["enumerate"], bool):
        raise ParseError(f"{where}.options: enumerate must be a boolean")
    if "policy" in options and not isinstance(options["policy"], str):
        raise ParseError(f"{where}.options: policy must be a string")
    return ContactDiagram(components), dict(options)


def load_diagram(path) -> tuple[ContactDiagram, dict]:
    return obj_to_diagram(_load_json(path), where=str(path))


def diagram_to_obj(diagram: ContactDiagram, options: dict | None = None) -> dict:
    components = []
    for comp in diagram.components:
        if isinstance(comp.knot, KnotData):
            knot = {"tb": comp.knot.tb, "rot": comp.knot.rot, "type": comp.knot.kind}
        else:
            knot = {"front": comp.knot.word.to_tokens()}
        entry = {
            "id": comp.id,
            "coefficient": format_rational(comp.coefficient),
            "knot": knot,
        }
        if comp.linking:
            entry["linking"] = {k: int(v) for k, v in sorted(comp.linking.items())}
        components.append(entry)
    obj = {"version": SCHEMA_VERSION, "components": components}
    if options:
        obj["options"] = options
    return obj


def converted_to_obj(pmdiag: PmOneDiagram) -> dict:
    converted = []
    for conv in pmdiag.conversions:
        cert = None
        if conv.certificate is not None:
            c = conv.certificate
            cert = {
                "cf": list(c.cf),
                "matrix": c.product.rows(),
                "slope": format_rational(c.slope),
                "twists": c.twists,
                "checks": dict(sorted((c.checks or {}).items())),
            }
        converted.append(
            {
                "parent": conv.parent,
                "coefficient": None
                if conv.coefficient is None
                else format_rational(conv.coefficient),
                "instructions": [
                    {
                        "coefficient": ins.coefficient,
                        "level": ins.level,
                        "tb_local": ins.tb_local,
                        "rot": ins.rot_choice,
                        "tag": ins.tag,
                    }
                    for ins in conv.instructions
                ],
                "certificate": cert,
            }
        )
    return {
        "version": SCHEMA_VERSION,
        "policy": pmdiag.policy,
        "dropped": list(pmdiag.dropped),
        "converted": converted,
    }


def obj_to_converted(obj, where="converted") -> PmOneDiagram:
    _check_keys(obj, where, required=("version", "policy", "dropped", "converted"))
    _check_version(obj, where)
    if not isinstance(obj["policy"], str):
        raise ParseError(f"{where}: policy must be a string")
    dropped = obj["dropped"]
    if not isinstance(dropped, list) or not all(isinstance(d, str) for d in dropped):
        raise ParseError(f"{where}: dropped must be a list of ids")
    if not isinstance(obj["converted"], list):
        raise ParseError(f"{where}: converted must be a list")
    conversions = []
    for i, conv in enumerate(obj["converted"]):
        cwhere = f"{where}.converted[{i}]"
        _check_keys(
            conv, cwhere, required=("parent", "coefficient", "instructions", "certificate")
        )
        if not isinstance(conv["parent"], str) or not conv["parent"]:
            raise ParseError(f"{cwhere}: parent must be a nonempty string")
        if conv["coefficient"] is None:
            coefficient = None
        else:
            coefficient = _coefficient(conv["coefficient"], cwhere)
            if coefficient is INF:
                raise ParseError(f"{cwhere}: converted coefficient cannot be 'inf'")
        if not isinstance(conv["instructions"], list):
            raise ParseError(f"{cwhere}: instructions must be a list")
        instructions = []
        for j, ins in enumerate(conv["instructions"]):
            iwhere = f"{cwhere}.instructions[{j}]"
            _check_keys(
                ins, iwhere, required=("coefficient", "level", "tb_local", "rot", "tag")
            )
            if ins["tag"] is not None and not isinstance(ins["tag"], str):
                raise ParseError(f"{iwhere}: tag must be a string or null")
            try:
                instructions.append(
                    PmOneInstruction(
                        parent=conv["parent"],
                        level=_int(ins["level"], iwhere),
                        coefficient=_int(ins["coefficient"], iwhere),
                        tb_local=_int(ins["tb_local"], iwhere),
                        rot_choice=_int(ins["rot"], iwhere),
                        tag=ins["tag"],
                    )
                )
            except ContactSurgeryError as exc:
                raise ParseError(f"{iwhere}: {exc}") from None
        certificate = None
        if conv["certificate"] is not None:
            cobj = conv["certificate"]
            _check_keys(
                cobj, f"{cwhere}.certificate",
                required=("cf", "matrix", "slope", "twists", "checks"),
            )
            cf = cobj["cf"]
            if not isinstance(cf, list) or not cf:
                raise ParseError(f"{cwhere}.certificate: cf must be a nonempty list")
            rows = cobj["matrix"]
            try:
                product = IntMat2.from_rows(rows)
            except (TypeError, ValueError):
                raise ParseError(f"{cwhere}.certificate: matrix must be 2x2") from None
            slope = _coefficient(cobj["slope"], f"{cwhere}.certificate")
            if slope is INF:
                raise ParseError(f"{cwhere}.certificate: slope cannot be 'inf'")
            checks = cobj["checks"]
            if not isinstance(checks, dict) or not all(
                isinstance(v, bool) for v in checks.values()
            ):
                raise ParseError(f"{cwhere}.certificate: checks must map names to booleans")
            certificate = ConversionCertificate(
                cf=tuple(_int(a, f"{cwhere}.certificate.cf") for a in cf),
                product=product,
                slope=Fraction(slope),
                twists=_int(cobj["twists"], f"{cwhere}.certificate"),
                checks=dict(checks),
            )
        conversions.append(
            ChainConversion(
                parent=conv["parent"],
                coefficient=None if coefficient is None else Fraction(coefficient),
                instructions=tuple(instructions),
                certificate=certificate,
            )
        )
    return PmOneDiagram(tuple(conversions), tuple(dropped), obj["policy"])


def load_converted(path) -> PmOneDiagram:
    return obj_to_converted(_load_json(path), where=str(path))


def report_to_obj(report: surgery.VerificationReport) -> dict:
    return {
        "passed": report.passed,
        "chains": [
            {
                "parent": chain.parent,
                "passed": chain.passed,
                "clauses": [
                    {
                        "name": clause.name,
                        "passed": clause.passed,
                        "assumed": clause.assumed,
                        "detail": clause.detail,
                    }
                    for clause in chain.clauses
                ],
            }
            for chain in report.chains
        ],
    }
