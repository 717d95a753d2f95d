"""JSON, text and LaTeX encodings of combinations, identities and reports."""

from __future__ import annotations

import json
from fractions import Fraction

from .identities import Identity
from .lincomb import LinComb, PiRational, TensorTerm
from .words import ParseError, Word, ZetaComposition


def term_to_string(key) -> tuple[str, str]:
    if isinstance(key, Word):
        return "word", str(key)
    if isinstance(key, ZetaComposition):
        return "zeta", str(key)
    if isinstance(key, TensorTerm):
        return "tensor", f"{key.left}(x){key.right}@{key.grade}"
    raise TypeError(f"unknown term type {type(key).__name__}")


def term_from_string(kind: str, text: str):
    if kind == "word":
        return Word.parse(text)
    if kind == "zeta":
        return ZetaComposition.parse(text)
    if kind == "tensor":
        body, _, grade = text.rpartition("@")
        left, _, right = body.partition("(x)")
        return TensorTerm(Word.parse(left), Word.parse(right), int(grade))
    raise ParseError(f"unknown term kind {kind!r}", 0)


def lincomb_to_json(c: LinComb) -> list[dict]:
    out = []
    for key, coeff in sorted(c.items(), key=lambda kv: str(kv[0])):
        kind, text = term_to_string(key)
        out.append(
            {
                "term_kind": kind,
                "term": text,
                "coeff_num": str(coeff.coeff.numerator),
                "coeff_den": str(coeff.coeff.denominator),
                "pi_exp": coeff.pi_exp,
            }
        )
    return out


def lincomb_from_json(items: list[dict]) -> LinComb:
    out = LinComb.zero()
    for item in items:
        key = term_from_string(item["term_kind"], item["term"])
        coeff = PiRational(
            Fraction(int(item["coeff_num"]), int(item["coeff_den"])),
            int(item.get("pi_exp", 0)),
        )
        out = out + LinComb.term(key, coeff)
    return out


UNKNOWN_RHS = "unknown-zeta-multiple"


def identity_to_json(ident: Identity) -> dict:
    if ident.rhs is None:
        rhs = UNKNOWN_RHS
    else:
        rhs = {
            "num": str(ident.rhs.coeff.numerator),
            "den": str(ident.rhs.coeff.denominator),
            "pi_exp": ident.rhs.pi_exp,
        }
    return {
        "family": ident.family,
        "params": {k: _plain(v) for k, v in ident.params.items()},
        "weight": ident.weight,
        "lhs": lincomb_to_json(ident.lhs),
        "rhs": rhs,
    }


def _plain(v):
    if isinstance(v, tuple):
        return [_plain(x) for x in v]
    return v


def identity_from_json(data: dict) -> Identity:
    rhs = data["rhs"]
    if rhs == UNKNOWN_RHS:
        rhs_val = None
    else:
        rhs_val = PiRational(
            Fraction(int(rhs["num"]), int(rhs["den"])), int(rhs["pi_exp"])
        )
    params = {
        k: tuple(v) if isinstance(v, list) else v for k, v in data["params"].items()
    }
    return Identity(
        family=data["family"],
        params=params,
        weight=int(data["weight"]),
        lhs=lincomb_from_json(data["lhs"]),
        rhs=rhs_val,
    )


def residue_to_json(residue: LinComb) -> list[dict]:
    out = []
    for key, coeff in sorted(residue.items(), key=lambda kv: str(kv[0])):
        if not isinstance(key, TensorTerm):
            raise TypeError("residues consist of tensor terms")
        out.append(
            {
                "grade": key.grade,
                "left_word": str(key.left),
                "right_word": str(key.right),
                "coeff": str(coeff.coeff),
            }
        )
    return out


# --------------------------------------------------------------------------
# LaTeX emitters


def coeff_to_latex(c: PiRational) -> str:
    q = c.coeff
    if c.pi_exp == 0:
        return _frac_latex(q)
    base = "" if abs(q) == 1 else _frac_latex(abs(q))
    sign = "-" if q < 0 else ""
    return f"{sign}{base}\\pi^{{{c.pi_exp}}}"


def _frac_latex(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    sign = "-" if q < 0 else ""
    return f"{sign}\\frac{{{abs(q.numerator)}}}{{{q.denominator}}}"


def term_to_latex(key) -> str:
    if isinstance(key, ZetaComposition):
        if not key.args:
            return "1"
        return "\\zeta(" + ",".join(str(a) for a in key.args) + ")"
    if isinstance(key, Word):
        inner = ",".join(str(x) for x in key.interior)
        return f"I({key.letters[0]}; {inner}; {key.letters[-1]})"
    if isinstance(key, TensorTerm):
        return (
            f"I^{{\\mathfrak{{L}}}}({_word_args(key.left)}) \\otimes "
            f"I^{{\\mathfrak{{m}}}}({_word_args(key.right)})"
        )
    raise TypeError(f"unknown term type {type(key).__name__}")


def _word_args(w: Word) -> str:
    inner = ",".join(str(x) for x in w.interior)
    return f"{w.letters[0]}; {inner}; {w.letters[-1]}"


def lincomb_to_latex(c: LinComb) -> str:
    if c.is_zero:
        return "0"
    parts = []
    for key, coeff in sorted(c.items(), key=lambda kv: str(kv[0])):
        term = term_to_latex(key)
        q = coeff.coeff
        if coeff.pi_exp == 0 and abs(q) == 1:
            lead = "-" if q < 0 else "+"
            parts.append(f"{lead} {term}")
        else:
            cl = coeff_to_latex(coeff)
            if not cl.startswith("-"):
                cl = "+" + cl
            parts.append(f"{cl[0]} {cl[1:]} {term}")
    text = " ".join(parts)
    return text[2:] if text.startswith("+ ") else text


def identity_to_latex(ident: Identity) -> str:
    lhs = lincomb_to_latex(ident.lhs)
    if ident.rhs is None:
        rhs = f"q\\,\\zeta({ident.weight}), \\ q \\in \\mathbb{{Q}}"
    elif ident.rhs.is_zero:
        rhs = "0"
    else:
        rhs = coeff_to_latex(ident.rhs)
    return f"{lhs} \\doteq {rhs}"


def report_to_json(report) -> dict:
    return {
        "identity": report.identity,
        "status": report.status,
        "digits_matched": report.digits_matched,
        "target_digits": report.target_digits,
        "residual": report.residual.to_decimal(min(report.target_digits + 5, 60)),
        "elapsed_seconds": round(report.elapsed, 4),
        "note": report.note,
    }


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True)
