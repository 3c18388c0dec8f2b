"""JSON documents: pair/polynomial input and analysis reports.

Every integer in a report is written as a decimal string so that consumers
limited to 53-bit floats read it exactly.  Input integers may be JSON numbers
or decimal strings.
"""

import dataclasses
import json
from fractions import Fraction

from . import __version__
from .applications import cellular_basis, picard_report
from .errors import NoSmoothVertex
from .lattice import lattice_index, snf
from .pair import CharacteristicPair, even_cohomology_check, normalize_smooth
from .wsr import SRPolynomial, wsr2_basis


class DocumentError(ValueError):
    """Input document is not well formed."""


def jsonable(obj):
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, SRPolynomial):
        return jsonable(polynomial_terms(obj))
    if dataclasses.is_dataclass(obj):
        return {f.name: jsonable(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj):
    return json.dumps(jsonable(obj), indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def parse_int(x):
    if isinstance(x, bool):
        raise DocumentError(f"expected an integer, got {x!r}")
    if isinstance(x, int):
        return x
    if isinstance(x, str):
        s = x.strip()
        body = s[1:] if s[:1] in "+-" else s
        if body.isdigit():
            return int(s)
    raise DocumentError(f"expected an integer or decimal string, got {x!r}")


def parse_pair_document(doc):
    """Raw ``[(a, b), ...]`` from a ``{"lambda": [[a, b], ...]}`` document."""
    if not isinstance(doc, dict) or "lambda" not in doc:
        raise DocumentError('expected an object with a "lambda" key')
    rows = doc["lambda"]
    if not isinstance(rows, list):
        raise DocumentError('"lambda" must be a list of [a, b] pairs')
    out = []
    for k, row in enumerate(rows, start=1):
        if not isinstance(row, list) or len(row) != 2:
            raise DocumentError(f"entry {k} is not an [a, b] pair: {row!r}")
        out.append((parse_int(row[0]), parse_int(row[1])))
    return out


def parse_polynomial_document(doc, m):
    """``{"linear": [...]}`` or ``{"terms": [{"coeff": k, "exp": [...]}, ...]}``."""
    if not isinstance(doc, dict):
        raise DocumentError("polynomial document must be an object")
    if "linear" in doc:
        coeffs = [parse_int(c) for c in doc["linear"]]
        if len(coeffs) != m:
            raise DocumentError(f"linear form has {len(coeffs)} coefficients, expected {m}")
        return SRPolynomial.linear(coeffs)
    if "terms" in doc:
        terms = {}
        for t in doc["terms"]:
            exp = tuple(parse_int(e) for e in t["exp"])
            if len(exp) != m or any(e < 0 for e in exp):
                raise DocumentError(f"bad exponent vector {t['exp']!r}")
            terms[exp] = terms.get(exp, 0) + parse_int(t["coeff"])
        return SRPolynomial(terms, m)
    raise DocumentError('polynomial document needs "linear" or "terms"')


def polynomial_terms(f):
    return [{"coeff": c, "exp": list(e)} for e, c in f.sorted_terms()]


def load_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"{path}: invalid JSON ({exc})") from exc


# ---------------------------------------------------------------------------
# report sections


def tool_section():
    return {"name": "toricwsr", "version": __version__}


def topology_section(pair):
    return even_cohomology_check(pair)


def basis_section(pair):
    basis = wsr2_basis(pair)
    lat = basis.lattice()
    return {
        "a": basis.a_form,
        "b": basis.b_form,
        "kernel": basis.kernel,
        "phi_images": basis.phi_images,
        "basis": basis.vectors,
        "hnf": lat.basis,
        "index": lattice_index(lat),
        "even_cohomology": basis.even_cohomology,
        "snf_diagonal": snf(pair.matrix).diagonal,
    }


def cellular_section(pair):
    """Cellular basis, normalizing to a smooth vertex first if needed.

    Raises :class:`NoSmoothVertex` when no normalization exists.
    """
    if pair.in_standard_position():
        norm = {"g": ((1, 0), (0, 1)), "rotation": 0, "lambda": pair.lambdas, "applied": False}
        target = pair
    else:
        res = normalize_smooth(pair)
        target = res.pair
        norm = {"g": res.g, "rotation": res.rotation, "lambda": target.lambdas, "applied": True}
    cb = cellular_basis(target)
    return {"normalization": norm, "u": cb.u, "v": cb.v, "xi": cb.xi, "phi_xi": cb.phi_xi}


def analysis_report(pair):
    try:
        cellular = cellular_section(pair)
    except NoSmoothVertex as exc:
        cellular = {"available": False, "reason": f"NoSmoothVertex: {exc}"}
    return {
        "tool": tool_section(),
        "input": {"lambda": pair.lambdas},
        "validation": {"valid": True, "violations": []},
        "topology": topology_section(pair),
        "wsr2": basis_section(pair),
        "picard": picard_report(pair),
        "cellular": cellular,
    }


def invalid_report(raw, violations):
    return {
        "tool": tool_section(),
        "input": {"lambda": raw},
        "validation": {"valid": False, "violations": violations},
    }


def pair_from_report(report):
    return CharacteristicPair(tuple(parse_pair_document(report["input"])))
