"""Reading and writing the line-oriented HDG text format.

    genus 2
    alpha 1: c d
    alpha 2: e f
    beta 1: c:+:1 d:+:0 f:+:-1
    beta 2: e:+:0
    matching: c e

``t`` in ``id:sign:t`` is the turning, in half turns, of the beta arc leaving
that crossing toward the next one.  ``#`` starts a comment.  Without a
matching line a matching is chosen by :func:`find_matching`.
"""

from __future__ import annotations

import re

from .diagram import BetaEntry, Diagram, euler_check, find_matching
from .errors import ParseError
from .planar import PlanarModel

_TOKEN = re.compile(r"^[A-Za-z0-9_]+$")
_HEADER = re.compile(r"^(alpha|beta)\s+(\d+)\s*:(.*)$")


def parse_hdg(text: str, check_layout: bool = True) -> Diagram:
    genus = None
    alpha, beta = {}, {}
    matching = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("genus"):
            parts = line.split()
            if len(parts) != 2 or not parts[1].isdigit() or genus is not None:
                raise ParseError("expected 'genus <g>' once", lineno)
            genus = int(parts[1])
            continue
        if line.startswith("matching"):
            head, _, rest = line.partition(":")
            if head.strip() != "matching" or matching is not None:
                raise ParseError("expected 'matching: <ids>' once", lineno)
            matching = rest.split()
            for tok in matching:
                if not _TOKEN.match(tok):
                    raise ParseError(f"bad crossing id {tok!r}", lineno)
            continue
        m = _HEADER.match(line)
        if not m:
            raise ParseError(f"unrecognised line {raw.strip()!r}", lineno)
        family, index, rest = m.group(1), int(m.group(2)), m.group(3).split()
        target = alpha if family == "alpha" else beta
        if index in target:
            raise ParseError(f"{family} {index} given twice", lineno)
        if family == "alpha":
            for tok in rest:
                if not _TOKEN.match(tok):
                    raise ParseError(f"bad crossing id {tok!r}", lineno)
            target[index] = tuple(rest)
        else:
            target[index] = tuple(_beta_entry(tok, lineno) for tok in rest)
    if genus is None:
        raise ParseError("missing 'genus' line")
    for name, table in (("alpha", alpha), ("beta", beta)):
        if sorted(table) != list(range(1, genus + 1)):
            raise ParseError(f"{name} curves must be numbered 1..{genus}")
    D = Diagram(
        genus,
        tuple(alpha[i] for i in range(1, genus + 1)),
        tuple(beta[j] for j in range(1, genus + 1)),
    )
    D = D.with_matching(matching if matching is not None else find_matching(D))
    euler_check(D)
    if check_layout:
        PlanarModel(D).validate()
    return D


def _beta_entry(tok: str, lineno: int) -> BetaEntry:
    parts = tok.split(":")
    if len(parts) != 3 or not _TOKEN.match(parts[0]) or parts[1] not in ("+", "-"):
        raise ParseError(f"bad beta entry {tok!r}, expected id:+|-:t", lineno)
    try:
        turn = int(parts[2])
    except ValueError:
        raise ParseError(f"bad turning in {tok!r}", lineno) from None
    return BetaEntry(parts[0], 1 if parts[1] == "+" else -1, turn)


def format_hdg(D: Diagram) -> str:
    lines = [f"genus {D.genus}"]
    for i, curve in enumerate(D.alpha, start=1):
        lines.append(f"alpha {i}: " + " ".join(curve))
    for j, curve in enumerate(D.beta, start=1):
        entries = (f"{e.crossing}:{'+' if e.sign > 0 else '-'}:{e.turn}" for e in curve)
        lines.append(f"beta {j}: " + " ".join(entries))
    if D.matching is not None:
        lines.append("matching: " + " ".join(D.matching))
    return "\n".join(lines) + "\n"
