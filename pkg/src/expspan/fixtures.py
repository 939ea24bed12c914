"""Built-in frequency sequences and the JSON sequence-file format.

Named generators make "infinite" sequences usable: a generator plus a term
count materialises a finite prefix.  For paired constructions (two
frequencies per formula index) the term count is the number of formula
indices, so ``fixture("example_iii", 12)`` yields 24 entries.

Entries with near-coincident frequencies (gaps like e^(-n^2) or e^(-n^4))
are materialised at elevated precision so the gap survives in the stored
values regardless of the caller's working precision.

Sequence spec files are JSON:

    {"kind": "explicit", "entries": [[re, im, mu], ...]}
    {"kind": "generator", "name": "example_v", "params": {...}, "terms": 8}

re/im may be numbers or decimal strings; strings preserve full precision.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Callable

import mpmath as mp

from .core import MultiplicitySequence
from .errors import ConfigError

# extra decimal digits kept when materialising generator entries
_GEN_GUARD = 30


def _pair_entries(n_terms: int, gap_log: Callable[[int], mp.mpf]) -> list:
    """lambda_{2n-1} = n^2 and lambda_{2n} = n^2 + exp(gap_log(n)), mu = 1.

    gap_log(n) is the (negative) natural log of the near-duplicate offset;
    precision is raised per entry so the offset is not absorbed.
    """
    out = []
    for n in range(1, n_terms + 1):
        need = int(-gap_log(n) / mp.log(10)) + _GEN_GUARD
        with mp.workdps(max(mp.mp.dps, need)):
            base = mp.mpf(n) ** 2
            out.append((mp.mpc(base), 1))
            out.append((mp.mpc(base + mp.exp(gap_log(n))), 1))
    return out


def _gen_power(n_terms: int, params: dict) -> list:
    p = mp.mpmathify(params.get("exponent", 2))
    mu = int(params.get("mu", 1))
    return [(mp.mpc(mp.mpf(n) ** p), mu) for n in range(1, n_terms + 1)]


def _gen_example_i(n_terms: int, params: dict) -> list:
    # separated positive reals with a convergent reciprocal sum
    return _gen_power(n_terms, {"exponent": 2, "mu": 1})


def _gen_example_ii(n_terms: int, params: dict) -> list:
    return _pair_entries(n_terms, lambda n: -mp.mpf(n))


def _gen_example_iii(n_terms: int, params: dict) -> list:
    return _pair_entries(n_terms, lambda n: -mp.mpf(n) ** 2)


def _gen_example_iv(n_terms: int, params: dict) -> list:
    mu = int(params.get("mu", 2))
    return [(mp.mpc(mp.mpf(n) ** 2), mu) for n in range(1, n_terms + 1)]


def _gen_example_v(n_terms: int, params: dict) -> list:
    base = int(params.get("base", 3))
    mu_base = int(params.get("mu_base", 2))
    return [(mp.mpc(mp.mpf(base) ** n), mu_base ** n) for n in range(1, n_terms + 1)]


def _gen_example_vi(n_terms: int, params: dict) -> list:
    return [(mp.mpc(mp.mpf(n) ** 2 * mp.mpf(10) ** n), 10 ** n)
            for n in range(1, n_terms + 1)]


def _gen_counterexample(n_terms: int, params: dict) -> list:
    return _pair_entries(n_terms, lambda n: -mp.mpf(n) ** 4)


@dataclass(frozen=True)
class FixtureInfo:
    name: str
    description: str
    paired: bool = False


_GENERATORS: dict[str, tuple[Callable, FixtureInfo]] = {
    "power": (_gen_power, FixtureInfo(
        "power", "lambda_n = n^exponent with constant mu (params: exponent, mu)")),
    "squares": (_gen_example_i, FixtureInfo(
        "squares", "lambda_n = n^2, mu = 1 (alias of example_i)")),
    "example_i": (_gen_example_i, FixtureInfo(
        "example_i", "separated reals lambda_n = n^2, mu = 1")),
    "example_ii": (_gen_example_ii, FixtureInfo(
        "example_ii", "pairs n^2 and n^2 + e^(-n), mu = 1", paired=True)),
    "example_iii": (_gen_example_iii, FixtureInfo(
        "example_iii", "pairs n^2 and n^2 + e^(-n^2), mu = 1", paired=True)),
    "example_iv": (_gen_example_iv, FixtureInfo(
        "example_iv", "lambda_n = n^2 with constant mu (params: mu, default 2)")),
    "example_v": (_gen_example_v, FixtureInfo(
        "example_v", "lambda_n = 3^n, mu_n = 2^n (params: base, mu_base)")),
    "example_vi": (_gen_example_vi, FixtureInfo(
        "example_vi", "lambda_n = n^2 10^n, mu_n = 10^n")),
    "carleson_counterexample": (_gen_counterexample, FixtureInfo(
        "carleson_counterexample", "pairs n^2 and n^2 + e^(-n^4), mu = 1", paired=True)),
}


def list_fixtures() -> list[FixtureInfo]:
    return [info for _, info in _GENERATORS.values()]


def fixture(name: str, n_terms: int, **params) -> MultiplicitySequence:
    """Materialise a named generator; n_terms counts formula indices."""
    if name not in _GENERATORS:
        raise ConfigError(f"unknown fixture {name!r}; known: {sorted(_GENERATORS)}")
    if n_terms < 1:
        raise ConfigError("n_terms must be >= 1")
    gen, _ = _GENERATORS[name]
    return MultiplicitySequence(entries=tuple(gen(n_terms, params)),
                                provenance=f"{name}({n_terms})")


def sequence_from_spec(spec: dict, default_terms: int | None = None) -> MultiplicitySequence:
    """Build a sequence from a parsed JSON spec object."""
    if not isinstance(spec, dict) or "kind" not in spec:
        raise ConfigError("sequence spec must be an object with a 'kind' field")
    kind = spec["kind"]
    if kind == "explicit":
        entries = spec.get("entries")
        if not isinstance(entries, list) or not entries:
            raise ConfigError("explicit spec needs a non-empty 'entries' list")
        try:
            rows = [(mp.mpmathify(str(e[0])), mp.mpmathify(str(e[1])), int(e[2]))
                    for e in entries]
        except (IndexError, TypeError, ValueError) as exc:
            raise ConfigError(f"bad entry in sequence spec: {exc}") from exc
        return MultiplicitySequence.from_pairs(rows,
                                               provenance=spec.get("provenance", "explicit"))
    if kind == "generator":
        name = spec.get("name")
        terms = spec.get("terms", default_terms)
        if name is None or terms is None:
            raise ConfigError("generator spec needs 'name' and 'terms'")
        return fixture(str(name), int(terms), **spec.get("params", {}))
    raise ConfigError(f"unknown sequence spec kind {kind!r}")


def load_sequence(path: str, default_terms: int | None = None) -> MultiplicitySequence:
    try:
        with open(path) as fh:
            spec = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read sequence file {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"sequence file {path} is not valid JSON: {exc}") from exc
    return sequence_from_spec(spec, default_terms=default_terms)
