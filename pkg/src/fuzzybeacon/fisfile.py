"""Read and write fuzzy-system definition files.

The format is line-oriented plain text. ``#`` starts a comment and blank
lines are ignored. A file declares header settings, then the variables with
their terms, then the rules:

    version 1
    and min
    or max
    defuzzifier centroid
    resolution 4096

    input speed unit m/s range 0.0 27.78
      term Resident tri 0.0 0.0 8.3
      term Fast trap 13.0 17.92 27.78 27.78

    output idle_time unit s range 0.0 87.1
      term Bad tri 0.0 0.0 32.8

    rule Resident Medium Medium => Bad

Rule lines list one antecedent term per input variable, in declaration
order. Term shapes are ``tri a b c``, ``trap a b c d`` and ``ramp lo hi``.
"""

from __future__ import annotations

from pathlib import Path

from .fis import FisDefinition, LinguisticVariable, Rule, Term
from .membership import make_mf


class FisFileError(ValueError):
    """Raised on malformed definition files, with a line number in the message."""


def loads(text: str, source: str = "<string>") -> FisDefinition:
    header: dict[str, str] = {}
    variables: list[dict] = []
    rules: list[tuple[int, list[str]]] = []
    current: dict | None = None

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        kw = tokens[0]

        def fail(msg: str):
            raise FisFileError(f"{source}:{lineno}: {msg}")

        if kw in ("version", "and", "or", "defuzzifier", "resolution"):
            if len(tokens) != 2:
                fail(f"'{kw}' takes exactly one value")
            header[kw] = tokens[1]
        elif kw in ("input", "output"):
            if len(tokens) != 7 or tokens[2] != "unit" or tokens[4] != "range":
                fail(f"expected '{kw} <name> unit <unit> range <lo> <hi>'")
            try:
                lo, hi = float(tokens[5]), float(tokens[6])
            except ValueError:
                fail("universe bounds must be numbers")
            current = {"role": kw, "name": tokens[1], "unit": tokens[3],
                       "lo": lo, "hi": hi, "terms": [], "line": lineno}
            variables.append(current)
        elif kw == "term":
            if current is None:
                fail("'term' must follow an input/output declaration")
            if len(tokens) < 4:
                fail("expected 'term <label> <shape> <thresholds...>'")
            label, shape = tokens[1], tokens[2]
            try:
                params = tuple(float(t) for t in tokens[3:])
            except ValueError:
                fail("term thresholds must be numbers")
            try:
                mf = make_mf(shape, params)
            except ValueError as exc:
                fail(str(exc))
            current["terms"].append(Term(label, mf))
        elif kw == "rule":
            if "=>" not in tokens:
                fail("expected 'rule <terms...> => <consequent>'")
            arrow = tokens.index("=>")
            if arrow == 1 or arrow != len(tokens) - 2:
                fail("rule needs antecedent terms before '=>' and exactly one consequent")
            rules.append((lineno, tokens[1:]))
        else:
            fail(f"unknown keyword {kw!r}")

    if header.get("version", "1") != "1":
        raise FisFileError(f"{source}: unsupported version {header.get('version')!r}")

    built: list[LinguisticVariable] = []
    for spec in variables:
        try:
            built.append(LinguisticVariable(
                name=spec["name"], unit=spec["unit"],
                lo=spec["lo"], hi=spec["hi"], terms=tuple(spec["terms"]),
            ))
        except ValueError as exc:
            raise FisFileError(f"{source}:{spec['line']}: {exc}") from None

    inputs = tuple(v for v, spec in zip(built, variables) if spec["role"] == "input")
    outputs = [v for v, spec in zip(built, variables) if spec["role"] == "output"]
    if len(outputs) != 1:
        raise FisFileError(f"{source}: exactly one output variable is required, found {len(outputs)}")

    rule_objs = []
    for lineno, tokens in rules:
        arrow = tokens.index("=>")
        antecedent, consequent = tokens[:arrow], tokens[arrow + 1]
        if len(antecedent) != len(inputs):
            raise FisFileError(
                f"{source}:{lineno}: rule lists {len(antecedent)} antecedent terms, "
                f"expected one per input ({len(inputs)})"
            )
        rule_objs.append(Rule(tuple(antecedent), consequent))

    try:
        resolution = int(header.get("resolution", "4096"))
    except ValueError:
        raise FisFileError(f"{source}: resolution must be an integer") from None

    try:
        return FisDefinition(
            inputs=inputs,
            output=outputs[0],
            rules=tuple(rule_objs),
            and_method=header.get("and", "min"),
            or_method=header.get("or", "max"),
            defuzzifier=header.get("defuzzifier", "centroid"),
            resolution=resolution,
        )
    except (ValueError, KeyError) as exc:
        raise FisFileError(f"{source}: {exc}") from None


def load(path: str | Path) -> FisDefinition:
    p = Path(path)
    return loads(p.read_text(encoding="utf-8"), source=str(p))


def _fmt(x: float) -> str:
    return repr(float(x))


def dumps(fis: FisDefinition, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines.extend(f"# {c}" for c in comment.splitlines())
    lines += [
        "version 1",
        f"and {fis.and_method}",
        f"or {fis.or_method}",
        f"defuzzifier {fis.defuzzifier}",
        f"resolution {fis.resolution}",
    ]
    for var in (*fis.inputs, fis.output):
        role = "output" if var is fis.output else "input"
        lines.append("")
        lines.append(f"{role} {var.name} unit {var.unit} range {_fmt(var.lo)} {_fmt(var.hi)}")
        for t in var.terms:
            params = " ".join(_fmt(p) for p in t.mf.params)
            lines.append(f"  term {t.label} {t.mf.shape} {params}")
    lines.append("")
    for r in fis.rules:
        lines.append(f"rule {' '.join(r.antecedent)} => {r.consequent}")
    return "\n".join(lines) + "\n"


def dump(fis: FisDefinition, path: str | Path, comment: str | None = None) -> None:
    Path(path).write_text(dumps(fis, comment), encoding="utf-8")


def format_rule(rule: Rule) -> str:
    """One rule in file syntax, suitable for pasting into a definition."""
    return f"rule {' '.join(rule.antecedent)} => {rule.consequent}"
