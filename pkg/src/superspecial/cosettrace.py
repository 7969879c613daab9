"""Finite-model trace formula on double cosets Gamma \\ G / K.

The model: a finite group G, subgroups Gamma (the "rational" points) and K
(the level subgroup), and an element pi normalizing K.  The Hecke translation
is [x] -> [x pi] on the double-coset space.  Counting measure is normalized so
that vol(K) = 1 on G and vol(G_gamma ∩ K) = 1 on every centralizer G_gamma;
with those normalizations the two sides of the trace formula are exact
rational identities:

  kernel side    tr R(pi) = #{Gamma x K : Gamma x pi K = Gamma x K}

  orbital side   tr R(pi) = sum over Gamma-conjugacy classes gamma of
                     a(G_gamma) * O_gamma,  where
                     a(G_gamma) = |G_gamma| / (|Gamma_gamma| |G_gamma ∩ K|)
                     O_gamma    = |G_gamma ∩ K| / (|G_gamma| |K|)
                                  * #{x in G : x^{-1} gamma x in pi K}.

The orbital integral is additionally re-evaluated in its coset-decomposed
form  O_gamma = sum over G_gamma \\ E_gamma / K  of
vol(G_gamma ∩ a K a^{-1})^{-1}, and the two evaluations are required to
agree; any mismatch is an implementation bug and raises InvariantViolation.

Delta sets:  delta_K = classes of Gamma meeting some conjugate of pi K,
delta_f = classes of Gamma that are G-conjugate to pi; always
delta_f ⊆ delta_K, with equality once K is small enough (K trivial in
particular).  When delta_K = delta_f, every orbital term belongs to the
G-conjugacy class of pi and the sum may collapse to the factored form

    |delta_f| * a(G_pi) * O_pi.

The collapse replaces every class term by the pi-term, which is valid
exactly when all classes in delta_f have the same rational-centralizer size
|C_Gamma(gamma)| as pi (automatic in the arithmetic situation the model
shadows, where conjugations carry rational centralizers to rational
centralizers; NOT automatic for an arbitrary finite model).  Outside that
regime the factored value is reported as absent with a diagnostic naming the
obstruction, so a defined factored value always equals the kernel trace.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .finitegroup import Group, GroupConstructionError, group_from_kind


class InvariantViolation(Exception):
    """An exact identity of the model failed; indicates a bug or bad input."""


class ModelSpecError(ValueError):
    """A model specification could not be parsed or validated."""


@dataclass(frozen=True)
class FiniteGroupModel:
    group: Group
    gamma: tuple[int, ...]  # sorted subgroup of "rational" elements
    k: tuple[int, ...]  # sorted level subgroup
    pi: int


def build_model(group: Group, gamma_gens, k_gens, pi: int) -> FiniteGroupModel:
    """Close the generating sets and verify that pi normalizes K."""
    n = group.n
    for idx in (*gamma_gens, *k_gens, pi):
        if not 0 <= idx < n:
            raise ModelSpecError(f"element index {idx} outside group of order {n}")
    gamma = group.subgroup(gamma_gens)
    k = group.subgroup(k_gens)
    conj = np.unique(group.table[group.table[pi, k], group.inv[pi]])
    if not np.array_equal(conj, k):
        bad = next(int(x) for x in group.table[group.table[pi, k], group.inv[pi]]
                   if int(x) not in set(map(int, k)))
        raise ModelSpecError(
            f"pi does not normalize K: conjugate element {bad} escapes K"
        )
    return FiniteGroupModel(group=group,
                            gamma=tuple(map(int, gamma)),
                            k=tuple(map(int, k)),
                            pi=pi)


@dataclass(frozen=True)
class DoubleCosetSpace:
    representatives: tuple[int, ...]  # canonical: smallest element of each coset
    rep_of: np.ndarray  # element index -> its coset representative
    hecke_action: dict[int, int]  # rep -> rep, [x] -> [x pi]


def double_cosets(model: FiniteGroupModel) -> DoubleCosetSpace:
    G = model.group
    gam = np.array(model.gamma)
    k = np.array(model.k)
    rep_of = np.full(G.n, -1, dtype=np.int64)
    reps = []
    for x in range(G.n):
        if rep_of[x] >= 0:
            continue
        coset = np.unique(G.table[np.ix_(gam, G.table[x, k])])
        rep_of[coset] = x  # x is minimal: smaller indices already covered
        reps.append(x)
    hecke = {r: int(rep_of[G.table[r, model.pi]]) for r in reps}
    if sorted(hecke.values()) != sorted(reps):
        raise InvariantViolation("Hecke translation is not a bijection on cosets")
    return DoubleCosetSpace(tuple(reps), rep_of, hecke)


def kernel_trace(model: FiniteGroupModel) -> int:
    """Fixed points of [x] -> [x pi] on Gamma \\ G / K (the kernel side)."""
    space = double_cosets(model)
    return sum(1 for r, s in space.hecke_action.items() if r == s)


@dataclass(frozen=True)
class OrbitalTerm:
    gamma_rep: int
    a_value: Fraction
    orbital_integral: Fraction


@dataclass(frozen=True)
class TraceReport:
    kernel_trace: int
    orbital_terms: tuple[OrbitalTerm, ...]
    orbital_trace: Fraction
    delta_K: tuple[int, ...]
    delta_f: tuple[int, ...]
    factored_value: Fraction | None
    factored_diagnostic: str = ""


def _gamma_classes(model: FiniteGroupModel) -> list[np.ndarray]:
    return model.group.conjugacy_partition(np.array(model.gamma))


def _orbital_for_class(model: FiniteGroupModel, rep: int) -> tuple[Fraction, Fraction, int]:
    """(a(G_gamma), O_gamma, raw conjugation count) for one class representative."""
    G = model.group
    gam = np.array(model.gamma)
    k = np.array(model.k)
    pik = np.sort(G.table[model.pi, k])

    cent = G.centralizer(rep)
    cent_gamma = G.centralizer(rep, within=gam)
    cent_k = np.intersect1d(cent, k, assume_unique=True)
    y = G.conj_vector(rep)  # y[x] = x^{-1} rep x
    hits = np.isin(y, pik)
    count = int(hits.sum())

    a_val = Fraction(len(cent), len(cent_gamma) * len(cent_k))
    o_direct = Fraction(len(cent_k), len(cent) * len(k)) * count

    # Independent re-evaluation: decompose the support E into G_gamma\E/K
    # double cosets and sum vol(G_gamma ∩ aKa^{-1})^{-1}.
    support = np.nonzero(hits)[0]
    o_cosets = Fraction(0)
    remaining = set(map(int, support))
    while remaining:
        a = min(remaining)
        coset = np.unique(G.table[np.ix_(cent, G.table[a, k])])
        remaining.difference_update(map(int, coset))
        aka = np.unique(G.table[G.table[a, k], G.inv[a]])
        o_cosets += Fraction(len(cent_k), len(np.intersect1d(cent, aka, assume_unique=True)))
    if o_cosets != o_direct:
        raise InvariantViolation(
            f"orbital integral mismatch at class {rep}: {o_direct} vs {o_cosets}"
        )
    return a_val, o_direct, count


def delta_sets(model: FiniteGroupModel) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """(delta_K, delta_f) as sorted tuples of Gamma-class representatives."""
    G = model.group
    k = np.array(model.k)
    pik = np.sort(G.table[model.pi, k])
    pi_class = set(map(int, G.conj_class(model.pi)))
    d_k, d_f = [], []
    for cls in _gamma_classes(model):
        rep = int(cls[0])
        y = G.conj_vector(rep)
        if np.isin(y, pik).any():
            d_k.append(rep)
        if rep in pi_class:
            d_f.append(rep)
    return tuple(sorted(d_k)), tuple(sorted(d_f))


def orbital_trace(model: FiniteGroupModel) -> TraceReport:
    """Evaluate the orbital side, check it against the kernel side, and report."""
    terms = []
    total = Fraction(0)
    for cls in _gamma_classes(model):
        rep = int(cls[0])
        a_val, o_val, _ = _orbital_for_class(model, rep)
        if o_val != 0:
            terms.append(OrbitalTerm(rep, a_val, o_val))
        total += a_val * o_val
    kernel = kernel_trace(model)
    if total != kernel:
        raise InvariantViolation(
            f"trace formula failed: orbital {total} != kernel {kernel}"
        )
    d_k, d_f = delta_sets(model)
    value, diagnostic = _factored(model, d_k, d_f, kernel)
    return TraceReport(kernel_trace=kernel,
                       orbital_terms=tuple(terms),
                       orbital_trace=total,
                       delta_K=d_k,
                       delta_f=d_f,
                       factored_value=value,
                       factored_diagnostic=diagnostic)


def _factored(model, d_k, d_f, kernel) -> tuple[Fraction | None, str]:
    if set(d_k) != set(d_f):
        extra = sorted(set(d_k) - set(d_f))
        return None, (f"level subgroup not small enough: delta_K has classes {extra} "
                      "outside delta_f")
    G = model.group
    gam = np.array(model.gamma)
    k = np.array(model.k)
    cent_pi = G.centralizer(model.pi)
    cent_pi_gamma = G.centralizer(model.pi, within=gam)
    cent_pi_k = np.intersect1d(cent_pi, k, assume_unique=True)
    pik = np.sort(G.table[model.pi, k])
    n_pi = int(np.isin(G.conj_vector(model.pi), pik).sum())
    a_pi = Fraction(len(cent_pi), len(cent_pi_gamma) * len(cent_pi_k))
    o_pi = Fraction(len(cent_pi_k), len(cent_pi) * len(k)) * n_pi
    value = len(d_f) * a_pi * o_pi
    if value != kernel:
        sizes = {rep: len(G.centralizer(rep, within=gam)) for rep in d_f}
        return None, (
            "term collapse invalid for this model: rational-centralizer sizes "
            f"{sizes} across delta_f are not all equal to |C_Gamma(pi)| = "
            f"{len(cent_pi_gamma)}, so the common-term factorization does not apply"
        )
    return value, ""


def factored_trace(model: FiniteGroupModel) -> tuple[Fraction | None, str]:
    """The factored form |delta_f| * a(G_pi) * O_pi, or (None, why-not).

    Defined exactly when delta_K = delta_f and the per-class terms collapse
    to the pi-term; a returned value always equals the kernel trace.
    """
    kernel = kernel_trace(model)
    d_k, d_f = delta_sets(model)
    return _factored(model, d_k, d_f, kernel)


def volume_identity_check(model: FiniteGroupModel, gamma: int, a: int) -> bool:
    """Check vol(G_gamma \\ G_gamma a K) = vol(K) / vol(G_gamma ∩ a K a^{-1}).

    Left side from the quotient-measure definition: count the G_gamma-cosets
    inside the set G_gamma a K and weight each by vol(G_gamma ∩ K)/vol(K).
    Right side from the subgroup volumes directly.  Both sides are exact
    rationals under the model's normalizations.
    """
    G = model.group
    k = np.array(model.k)
    cent = G.centralizer(gamma)
    cent_k = np.intersect1d(cent, k, assume_unique=True)

    orbit = np.unique(G.table[np.ix_(cent, G.table[a, k])])
    n_cosets = len(orbit) // len(cent)
    lhs = Fraction(n_cosets) * Fraction(len(cent_k), len(k))

    aka = np.unique(G.table[G.table[a, k], G.inv[a]])
    rhs = Fraction(len(cent_k), len(np.intersect1d(cent, aka, assume_unique=True)))
    return lhs == rhs


def involution_census(points, inv) -> tuple[int, int, int]:
    """Counts (H, F, T) = (points, fixed points, orbits) of an involution.

    Verifies inv is genuinely an involution, and the Burnside-style identity
    F = 2T - H before returning.
    """
    pts = list(points)
    h = len(pts)
    fixed = 0
    seen = set()
    orbits = 0
    for x in pts:
        y = inv(x)
        if inv(y) != x:
            raise ValueError(f"map is not an involution at {x!r}")
        if x == y:
            fixed += 1
        if x in seen:
            continue
        seen.add(x)
        seen.add(y)
        orbits += 1
    if fixed != 2 * orbits - h:
        raise InvariantViolation("involution census failed F = 2T - H")
    return h, fixed, orbits


# ---------------------------------------------------------------------------
# Model specifications (JSON) and report serialization
# ---------------------------------------------------------------------------


def parse_model_spec(text: str) -> FiniteGroupModel:
    """Parse a JSON model spec:

    {"group": "sym:3", "gamma": [<element literals>],
     "k": [<element literals>], "pi": <element literal>}

    Permutations are image lists, matrix entries row lists, cyclic elements
    plain integers.
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModelSpecError(
            f"model spec is not valid JSON (line {exc.lineno}, column {exc.colno}): {exc.msg}"
        ) from exc
    if not isinstance(data, dict):
        raise ModelSpecError("model spec must be a JSON object")
    missing = {"group", "gamma", "k", "pi"} - set(data)
    if missing:
        raise ModelSpecError(f"model spec missing keys: {sorted(missing)}")
    try:
        group = group_from_kind(data["group"])
    except GroupConstructionError as exc:
        raise ModelSpecError(str(exc)) from exc
    try:
        gamma_gens = [group.index_of_literal(lit) for lit in data["gamma"]]
        k_gens = [group.index_of_literal(lit) for lit in data["k"]]
        pi = group.index_of_literal(data["pi"])
    except (GroupConstructionError, TypeError) as exc:
        raise ModelSpecError(str(exc)) from exc
    return build_model(group, gamma_gens, k_gens, pi)


def _frac_dict(q: Fraction) -> dict:
    return {"num": str(q.numerator), "den": str(q.denominator)}


def report_to_dict(model: FiniteGroupModel, report: TraceReport) -> dict:
    G = model.group
    return {
        "group": G.kind,
        "order": G.n,
        "gamma_order": len(model.gamma),
        "k_order": len(model.k),
        "pi": G.literal(model.pi),
        "kernel_trace": report.kernel_trace,
        "orbital_trace": _frac_dict(report.orbital_trace),
        "orbital_terms": [
            {
                "gamma": G.literal(t.gamma_rep),
                "a": _frac_dict(t.a_value),
                "orbital_integral": _frac_dict(t.orbital_integral),
            }
            for t in report.orbital_terms
        ],
        "delta_K": [G.literal(r) for r in report.delta_K],
        "delta_f": [G.literal(r) for r in report.delta_f],
        "factored_value": None if report.factored_value is None
        else _frac_dict(report.factored_value),
        "factored_diagnostic": report.factored_diagnostic,
    }


# ---------------------------------------------------------------------------
# Randomized model harness (seeded, deterministic)
# ---------------------------------------------------------------------------

TRIAL_FAMILIES = tuple(
    [f"cyclic:{n}" for n in range(2, 25)]
    + [f"sym:{n}" for n in range(2, 7)]
    + [f"gl2:{n}" for n in range(2, 6)]
)


def random_model(rng, families=TRIAL_FAMILIES) -> FiniteGroupModel:
    """Draw a random model: random subgroups and a K-normalizing pi.

    pi is taken from Gamma ∩ N_G(K) half the time (mirroring the arithmetic
    situation, where the translating element is rational) and from the full
    normalizer otherwise.
    """
    group = group_from_kind(rng.choice(families))
    gamma_gens = [rng.randrange(group.n) for _ in range(rng.choice((1, 2)))]
    if rng.random() < 0.25:
        k_gens = []
    else:
        k_gens = [rng.randrange(group.n) for _ in range(rng.choice((1, 2)))]
    k = group.subgroup(k_gens)
    normalizer = group.normalizer_of(k)
    gamma = group.subgroup(gamma_gens)
    if rng.random() < 0.5:
        pool = np.intersect1d(normalizer, gamma, assume_unique=True)
    else:
        pool = normalizer
    pi = int(pool[rng.randrange(len(pool))])
    return build_model(group, gamma_gens, k_gens, pi)


def with_trivial_k(model: FiniteGroupModel) -> FiniteGroupModel:
    """The same model with its level subgroup shrunk to the identity."""
    return build_model(model.group, model.gamma, [], model.pi)
