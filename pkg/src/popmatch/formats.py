"""Text formats for instances and matchings.

Instance file::

    popmatch v1
    # comment
    x1 4 : A B
    x2 1 : ( A B ) C

A bare id is a singleton group, ``( ... )`` a tie group; groups are listed
best first.  Jobs are declared by use.

Matching file: a verdict line (``POPULAR`` or ``NONE``) followed by one
``<applicant> <job>`` line per applicant, ``-`` marking the last resort.
"""

from __future__ import annotations

import re
from collections.abc import Iterable

from popmatch.core import Instance, InstanceError, Matching

HEADER = "popmatch v1"
LAST_RESORT = "-"
_TOKEN = re.compile(r"[():]|[^\s():]+")


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def _content_lines(text: str) -> Iterable[tuple[int, str]]:
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield no, line


def _parse_groups(tokens: list[str], no: int) -> list[list[str]]:
    groups: list[list[str]] = []
    open_group: list[str] | None = None
    for tok in tokens:
        if tok == "(":
            if open_group is not None:
                raise ParseError("nested '('", no)
            open_group = []
        elif tok == ")":
            if open_group is None:
                raise ParseError("')' without '('", no)
            if not open_group:
                raise ParseError("empty tie group", no)
            groups.append(open_group)
            open_group = None
        elif tok == ":":
            raise ParseError("unexpected ':'", no)
        elif open_group is not None:
            open_group.append(tok)
        else:
            groups.append([tok])
    if open_group is not None:
        raise ParseError("unclosed '('", no)
    return groups


def parse(text: str) -> Instance:
    """Instance from its text form; raises :class:`ParseError` with a line number."""
    lines = iter(_content_lines(text))
    first = next(lines, None)
    if first is None or first[1] != HEADER:
        raise ParseError(f"expected header {HEADER!r}", first[0] if first else 1)
    weights: dict[str, int] = {}
    prefs: dict[str, list[list[str]]] = {}
    for no, line in lines:
        tokens = _TOKEN.findall(line)
        if len(tokens) < 3 or tokens[2] != ":":
            raise ParseError("expected '<applicant> <weight> : <groups>'", no)
        name, weight = tokens[0], tokens[1]
        if name in "():" or name == LAST_RESORT:
            raise ParseError(f"bad applicant id {name!r}", no)
        if name in weights:
            raise ParseError(f"duplicate applicant {name!r}", no)
        try:
            w = int(weight)
        except ValueError:
            raise ParseError(f"weight {weight!r} is not an integer", no) from None
        if w < 1:
            raise ParseError(f"weight must be >= 1, got {w}", no)
        groups = _parse_groups(tokens[3:], no)
        seen: set[str] = set()
        for g in groups:
            for job in g:
                if job == LAST_RESORT:
                    raise ParseError("'-' is reserved for the last resort", no)
                if job in seen:
                    raise ParseError(f"job {job!r} listed twice", no)
                seen.add(job)
        weights[name] = w
        prefs[name] = groups
    try:
        return Instance.build(weights, prefs)
    except InstanceError as exc:
        raise ParseError(str(exc)) from exc


def render(instance: Instance) -> str:
    """Text form of a raw or augmented instance; last resorts are left out."""
    n_real = instance.n_real_jobs
    out = [HEADER]
    for name, w, groups in zip(instance.applicants, instance.weights, instance.prefs):
        parts = []
        for g in groups:
            ids = [instance.jobs[p] for p in g if p < n_real]
            if len(ids) == 1:
                parts.append(ids[0])
            elif ids:
                parts.append("( " + " ".join(ids) + " )")
        out.append(" ".join([name, str(w), ":", *parts]))
    return "\n".join(out) + "\n"


def render_assignment(instance: Instance, matching: Matching) -> list[str]:
    """``<applicant> <job>`` lines sorted by applicant id."""
    pairs = matching.pairs(instance)
    return [f"{a} {LAST_RESORT if pairs[a] is None else pairs[a]}" for a in sorted(pairs)]


def render_matching(instance: Instance, matching: Matching | None) -> str:
    """``NONE`` alone, or ``POPULAR`` followed by the assignment lines."""
    if matching is None:
        return "NONE\n"
    return "\n".join(["POPULAR", *render_assignment(instance, matching)]) + "\n"


def parse_matching(text: str, instance: Instance) -> Matching:
    """Matching from assignment lines; a leading verdict line is accepted and ignored.

    Applicants that do not appear are taken to hold their last resort.
    """
    pairs: dict[str, str | None] = {}
    for no, line in _content_lines(text):
        tokens = line.split()
        if len(tokens) == 1 and tokens[0] in ("POPULAR", "NONE") and not pairs:
            if tokens[0] == "NONE":
                raise ParseError("matching file holds a NONE verdict", no)
            continue
        if len(tokens) != 2:
            raise ParseError("expected '<applicant> <job>'", no)
        a, job = tokens
        if a in pairs:
            raise ParseError(f"applicant {a!r} assigned twice", no)
        pairs[a] = None if job == LAST_RESORT else job
    try:
        return Matching.from_pairs(instance, pairs)
    except (InstanceError, KeyError) as exc:
        raise ParseError(f"invalid matching: {exc}") from exc
