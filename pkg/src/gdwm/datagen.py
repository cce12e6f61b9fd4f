"""Seeded generator of occupancy-style person records with duplicates.

Each entity gets a template (name, street address, city/state/zip, SSN,
phone). Every emitted duplicate is a copy of the template passed through
``inject_errors``. Names and streets are synthesized from syllables so the
vocabulary scales with the corpus instead of saturating a fixed list.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

# per-field corruption probability, and the most fields one record may lose to errors
QUALITY_RATES = {"good": 0.05, "moderate": 0.15, "poor": 0.35}
MAX_EDITS = {"good": 2, "moderate": 4, "poor": 7}

_ONSETS = ["B", "C", "D", "F", "G", "H", "J", "K", "L", "M", "N", "P", "R", "S", "T", "V", "W", "Z",
           "BR", "CH", "DR", "GR", "KR", "PR", "SH", "ST", "TR", "TH"]
_VOWELS = ["A", "E", "I", "O", "U", "AI", "EA", "OU", "Y"]
_CODAS = ["", "", "", "N", "R", "L", "S", "M", "T", "X", "NE", "RD", "LL", "ND"]
_SUFFIXES = ["ST", "AVE", "DR", "RD", "LN", "CT", "BLVD", "WAY", "PL", "CIR"]
_STATES = ["NC", "SC", "VA", "GA", "TN", "AR", "TX", "OK", "KY", "AL"]

_NAME_FIELDS = ("first", "middle", "last")
_GROUPS = (("first", "middle", "last"), ("house", "street", "suffix"),
           ("city", "state", "zip"), ("ssn",), ("phone",))


@dataclass(frozen=True)
class CorpusSpec:
    n_entities: int
    dup_mean: float = 3.0
    dup_law: str = "fixed"          # "fixed" or "geometric"
    quality: str = "good"
    layout: str = "standard"        # "standard" or "mixed"
    seed: int = 0
    error_rate: Optional[float] = None  # overrides the quality tier's rate
    household_rate: float = 0.25    # chance an entity moves in with an earlier one

    def __post_init__(self):
        if self.n_entities < 0:
            raise ValueError("n_entities must be >= 0")
        if self.dup_mean < 1:
            raise ValueError("dup_mean must be >= 1")
        if self.dup_law not in ("fixed", "geometric"):
            raise ValueError(f"unknown dup_law {self.dup_law!r}")
        if self.quality not in QUALITY_RATES:
            raise ValueError(f"unknown quality {self.quality!r}")
        if not 0.0 <= self.household_rate <= 1.0:
            raise ValueError("household_rate must lie in [0, 1]")
        if self.layout not in ("standard", "mixed"):
            raise ValueError(f"unknown layout {self.layout!r}")

    @property
    def rate(self) -> float:
        return QUALITY_RATES[self.quality] if self.error_rate is None else self.error_rate


def _word(rng: random.Random, syllables: int) -> str:
    w = "".join(rng.choice(_ONSETS) + rng.choice(_VOWELS) for _ in range(syllables))
    return w + rng.choice(_CODAS)


def _digits(rng: random.Random, n: int, lead_nonzero: bool = True) -> str:
    first = str(rng.randint(1, 9)) if lead_nonzero else str(rng.randint(0, 9))
    return first + "".join(str(rng.randint(0, 9)) for _ in range(n - 1))


def _places(rng: random.Random, n_entities: int) -> list[tuple[str, str, list[str]]]:
    n_cities = max(3, n_entities // 25)
    out = []
    for _ in range(n_cities):
        name = _word(rng, 2) if rng.random() < 0.7 else f"{_word(rng, 2)} {_word(rng, 1)}"
        out.append((name, rng.choice(_STATES), [_digits(rng, 5) for _ in range(2)]))
    return out


def make_template(rng: random.Random, places) -> dict[str, str]:
    city, state, zips = rng.choice(places)
    return {
        "first": _word(rng, rng.randint(1, 2)),
        "middle": _word(rng, rng.randint(1, 2)) if rng.random() < 0.6 else "",
        "last": _word(rng, rng.randint(2, 3)),
        "house": str(rng.randint(1, 9999)),
        "street": _word(rng, 2),
        "suffix": rng.choice(_SUFFIXES),
        "city": city,
        "state": state,
        "zip": rng.choice(zips),
        "ssn": f"{_digits(rng, 3)} {_digits(rng, 2, False)} {_digits(rng, 4, False)}",
        "phone": f"{_digits(rng, 3)} {_digits(rng, 3)} {_digits(rng, 4, False)}",
    }


_SHARED_WITH_HOUSEHOLD = ("house", "street", "suffix", "city", "state", "zip", "phone")


def join_household(template: dict[str, str], host: dict[str, str], rng: random.Random) -> dict[str, str]:
    """Give ``template`` the address and phone of ``host``, and usually its last name."""
    out = dict(template)
    for f in _SHARED_WITH_HOUSEHOLD:
        out[f] = host[f]
    if rng.random() < 0.7:
        out["last"] = host["last"]
    return out


def _char_edit(value: str, rng: random.Random) -> str:
    if not value:
        return value
    pool = "0123456789" if value.isdigit() else "ABCDEFGHIJKLMNOPQRSTUVWXYZ"
    i = rng.randrange(len(value))
    op = rng.choice(("sub", "del", "ins", "swap") if len(value) > 1 else ("sub", "ins"))
    if op == "sub":
        return value[:i] + rng.choice([c for c in pool if c != value[i]]) + value[i + 1:]
    if op == "del":
        return value[:i] + value[i + 1:]
    if op == "ins":
        return value[:i] + rng.choice(pool) + value[i:]
    j = min(i + 1, len(value) - 1)
    if j == i:
        i, j = i - 1, i
    return value[:i] + value[j] + value[i] + value[j + 1:]


def _corrupt_one(name: str, value: str, rng: random.Random) -> str:
    if name in ("ssn", "phone"):
        op = rng.choice(("regroup", "char", "drop"))
        if op == "regroup":
            parts = value.split()
            if len(parts) > 1:
                return "".join(parts)
            return f"{value[:3]} {value[3:5]} {value[5:]}" if name == "ssn" else f"{value[:3]} {value[3:6]} {value[6:]}"
        if op == "drop":
            return ""
        parts = value.split()
        k = rng.randrange(len(parts))
        parts[k] = _char_edit(parts[k], rng)
        return " ".join(parts)
    if name in _NAME_FIELDS:
        op = rng.choice(("char", "char", "initial", "drop"))
        if op == "initial":
            return value[:1]
        if op == "drop":
            return ""
        return _char_edit(value, rng)
    op = rng.choice(("char", "char", "drop"))
    if op == "drop":
        return ""
    words = value.split()
    k = rng.randrange(len(words))
    words[k] = _char_edit(words[k], rng)
    return " ".join(words)


def corrupt_fields(fields: dict[str, str], rate: float, max_edits: int,
                   rng: random.Random) -> tuple[dict[str, str], int]:
    """Return (corrupted copy, number of fields changed); at most ``max_edits`` fields change."""
    out = dict(fields)
    edits = 0
    for name in fields:
        if edits >= max_edits:
            break
        if not fields[name] or rng.random() >= rate:
            continue
        new = _corrupt_one(name, fields[name], rng)
        if new != fields[name]:
            out[name] = new
            edits += 1
    return out, edits


def inject_errors(fields: dict[str, str], quality: str, rng: random.Random,
                  layout: str = "standard", rate: Optional[float] = None) -> str:
    rate = QUALITY_RATES[quality] if rate is None else rate
    corrupted, _ = corrupt_fields(fields, rate, MAX_EDITS[quality], rng)
    groups = list(_GROUPS)
    if layout == "mixed":
        rng.shuffle(groups)
    return " ".join(v for g in groups for v in (corrupted[f] for f in g) if v)


def _dup_count(spec: CorpusSpec, rng: random.Random) -> int:
    if spec.dup_law == "fixed":
        return max(1, round(spec.dup_mean))
    p = 1.0 / spec.dup_mean
    k = 1
    while rng.random() >= p:
        k += 1
    return k


def generate_corpus(spec: CorpusSpec) -> tuple[list[tuple[str, str]], list[tuple[str, str]]]:
    """Return (records as (id, body), truth as (id, entity label)), in file order."""
    rng = random.Random(spec.seed)
    places = _places(rng, spec.n_entities)
    rows = []
    templates: list[dict[str, str]] = []
    for e in range(spec.n_entities):
        template = make_template(rng, places)
        if templates and rng.random() < spec.household_rate:
            template = join_household(template, rng.choice(templates), rng)
        templates.append(template)
        label = f"E{e:06d}"
        for _ in range(_dup_count(spec, rng)):
            rows.append((inject_errors(template, spec.quality, rng, spec.layout, spec.rate), label))
    ids = rng.sample(range(100000, 1000000), len(rows))
    order = list(range(len(rows)))
    rng.shuffle(order)
    records = [(f"A{ids[i]}", rows[i][0]) for i in order]
    truth = [(f"A{ids[i]}", rows[i][1]) for i in order]
    return records, truth


def write_corpus(spec: CorpusSpec, records_path: str | Path, truth_path: str | Path) -> int:
    records, truth = generate_corpus(spec)
    Path(records_path).write_text("".join(f"{i},{b}\n" for i, b in records), encoding="utf-8")
    Path(truth_path).write_text("".join(f"{i},{t}\n" for i, t in truth), encoding="utf-8")
    return len(records)
