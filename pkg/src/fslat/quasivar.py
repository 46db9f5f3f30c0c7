"""Terms, quasi-identities, and the quasivariety-level decision procedures.

A term is a nonempty set of (group element, variable) pairs and denotes the
meet of the translated variables; this normal form is closed under meet
(set union) and translation, and set semantics absorbs idempotence.  A
quasi-identity is a Horn formula: finitely many equational premises and one
equational conclusion, checked by exhaustive valuation over finite carriers.

The decision procedures implemented here: the free-minimality test (every
nonzero element must generate an isomorphic copy), the stabilizer map from
minimal algebras to subgroups with its inverse built from coset fans, and
the splitting of a free-minimal algebra into a subgroup K and a K-algebra
whose twisted multiple reconstructs it.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass

from .algebras import (
    FSemilattice,
    Homomorphism,
    NotGeneratedError,
    act,
    congruences,
    element_action,
    generates,
    is_homomorphism,
    is_isomorphic_1gen,
    perm_compose,
    perm_identity,
    perm_inverse,
    perm_order,
    quotient,
    subalgebra_generated,
    zero,
)
from .constructions import VerificationError, maroti, twisted_multiple, twisted_spec
from .groups import (
    Element,
    GroupSpec,
    InfiniteGroupError,
    Subgroup,
    format_element,
    identity,
    mul,
    presentation,
    reduce_element,
    subgroup_from_elements,
    subgroups,
)


@dataclass(frozen=True)
class Term:
    pairs: frozenset[tuple[Element, str]]

    def __post_init__(self):
        object.__setattr__(self, "pairs", frozenset(self.pairs))
        if not self.pairs:
            raise ValueError("a term is a meet over a nonempty set of translated variables")

    @property
    def variables(self) -> tuple[str, ...]:
        return tuple(sorted({v for _, v in self.pairs}))


def var(name: str, group: GroupSpec) -> Term:
    return Term(frozenset({(identity(group), name)}))


def translate_term(group: GroupSpec, g: Element, term: Term) -> Term:
    return Term(frozenset((mul(group, g, h), v) for h, v in term.pairs))


def meet_terms(one: Term, two: Term) -> Term:
    return Term(one.pairs | two.pairs)


@dataclass(frozen=True)
class QuasiIdentity:
    premises: tuple[tuple[Term, Term], ...]
    conclusion: tuple[Term, Term]
    variables: tuple[str, ...]


def make_quasi_identity(premises, conclusion) -> QuasiIdentity:
    premises = tuple((s, t) for s, t in premises)
    names: set[str] = set()
    for s, t in premises + (conclusion,):
        names.update(s.variables)
        names.update(t.variables)
    return QuasiIdentity(premises, tuple(conclusion), tuple(sorted(names)))


def eval_term(algebra: FSemilattice, term: Term, valuation: dict[str, int]) -> int:
    value = None
    for g, v in sorted(term.pairs):
        if v not in valuation:
            raise ValueError(f"unbound variable {v!r}")
        translated = act(algebra, g, valuation[v])
        value = translated if value is None else algebra.meet[value][translated]
    return value


def holds_quasi_identity(
    algebra: FSemilattice, qi: QuasiIdentity
) -> tuple[bool, dict[str, int] | None]:
    """Exhaustive check; on failure, the first failing valuation in canonical
    order (variables sorted by name, carrier indices counted lexicographically)."""
    names = qi.variables
    for combo in itertools.product(range(algebra.size), repeat=len(names)):
        valuation = dict(zip(names, combo))
        if any(
            eval_term(algebra, s, valuation) != eval_term(algebra, t, valuation)
            for s, t in qi.premises
        ):
            continue
        s, t = qi.conclusion
        if eval_term(algebra, s, valuation) != eval_term(algebra, t, valuation):
            return False, valuation
    return True, None


def _image_elements(algebra: FSemilattice) -> list[Element]:
    """Group elements enumerating the action image: full factor ranges when
    finite, permutation-order ranges on infinite factors."""
    ranges = []
    for k, p in zip(algebra.group.orders, algebra.action):
        ranges.append(range(k if k >= 1 else perm_order(p)))
    return [tuple(c) for c in itertools.product(*ranges)]


def separating_quasi_identity(algebra: FSemilattice, a: int) -> QuasiIdentity:
    """The canonically first unary-term pair disagreeing at the generator,
    packaged as (s(x) = t(x)) -> (x = x ^ y).

    For a free-minimal algebra the result holds in the algebra and fails in
    the two-element algebra with trivial action, which is what separates the
    generated quasivariety from the trivially-acted one.
    """
    if algebra.size == 1:
        raise ValueError("the one-element algebra admits no separating quasi-identity")
    if not generates(algebra, a):
        raise NotGeneratedError(f"{algebra.label(a)!r} does not generate the algebra")
    group = algebra.group
    candidates = [Term(frozenset({(g, "x")})) for g in _image_elements(algebra)]
    for j in range(1, len(candidates)):
        for i in range(j):
            s, t = candidates[i], candidates[j]
            if eval_term(algebra, s, {"x": a}) != eval_term(algebra, t, {"x": a}):
                x = var("x", group)
                y = var("y", group)
                return make_quasi_identity([(s, t)], (x, meet_terms(x, y)))
    raise ValueError("no separating term pair found; the algebra is trivially acted on")


@dataclass(frozen=True)
class MinimalityVerdict:
    minimal: bool
    counterexample: int | None
    checked: int


def is_minimal_free(algebra: FSemilattice, a: int) -> MinimalityVerdict:
    """Decide whether the generated quasivariety is minimal: every nonzero
    element must generate a subalgebra isomorphic to the whole algebra via
    the canonical generator-to-generator map."""
    if algebra.size == 1:
        raise ValueError("minimality test needs a nontrivial algebra")
    if not generates(algebra, a):
        raise NotGeneratedError(f"{algebra.label(a)!r} does not generate the algebra")
    bottom = zero(algebra)
    checked = 0
    for b in range(algebra.size):
        if b == bottom:
            continue
        checked += 1
        sub, embedding = subalgebra_generated(algebra, b)
        if sub.size != algebra.size:
            return MinimalityVerdict(False, b, checked)
        ok, _ = is_isomorphic_1gen(algebra, a, sub, embedding.index(b))
        if not ok:
            return MinimalityVerdict(False, b, checked)
    return MinimalityVerdict(True, None, checked)


def stabilizer(algebra: FSemilattice, a: int) -> Subgroup:
    """The subgroup of group elements fixing ``a`` (finite groups only)."""
    group = algebra.group
    if not group.is_finite:
        raise InfiniteGroupError("use stabilizer_image over infinite factors")
    fixing = [g for g in group.elements() if act(algebra, g, a) == a]
    return subgroup_from_elements(group, fixing)


@dataclass(frozen=True)
class StabilizerImage:
    """Stabilizer computed inside the finite group generated by the action
    permutations; it is the image of the true stabilizer."""

    image: tuple[tuple[int, ...], ...]
    stabilizer: tuple[tuple[int, ...], ...]

    @property
    def image_size(self) -> int:
        return len(self.image)

    @property
    def stabilizer_size(self) -> int:
        return len(self.stabilizer)


def stabilizer_image(algebra: FSemilattice, a: int) -> StabilizerImage:
    n = algebra.size
    gens = [tuple(p) for p in algebra.action]
    gens += [perm_inverse(p) for p in gens]
    image = {perm_identity(n)}
    queue = list(image)
    while queue:
        p = queue.pop()
        for g in gens:
            q = perm_compose(g, p)
            if q not in image:
                image.add(q)
                queue.append(q)
    fixing = tuple(sorted(p for p in image if p[a] == a))
    return StabilizerImage(tuple(sorted(image)), fixing)


@dataclass(frozen=True)
class BijectionEntry:
    subgroup: Subgroup
    algebra_size: int
    is_proper: bool
    minimal: bool | None
    stabilizer_ok: bool

    @property
    def ok(self) -> bool:
        return self.stabilizer_ok and self.minimal is not False


@dataclass(frozen=True)
class BijectionReport:
    group: GroupSpec
    entries: tuple[BijectionEntry, ...]
    pairwise_distinct: bool

    @property
    def subgroup_count(self) -> int:
        return len(self.entries)

    @property
    def ok(self) -> bool:
        return self.pairwise_distinct and all(e.ok for e in self.entries)

    def to_dict(self) -> dict:
        return {
            "orders": list(self.group.orders),
            "subgroup_count": self.subgroup_count,
            "representative_count": self.subgroup_count,
            "pairwise_distinct": self.pairwise_distinct,
            "ok": self.ok,
            "entries": [
                {
                    "subgroup": [list(e) for e in entry.subgroup.elements],
                    "algebra_size": entry.algebra_size,
                    "proper": entry.is_proper,
                    "minimal": entry.minimal,
                    "stabilizer_roundtrip": entry.stabilizer_ok,
                }
                for entry in self.entries
            ],
        }


def verify_bijection(group: GroupSpec) -> BijectionReport:
    """Check, for one finite group, that subgroups and minimal quasivarieties
    correspond: each coset fan over a proper subgroup is free-minimal, the
    stabilizer of its identity-coset atom recovers the subgroup, and fans
    over distinct subgroups are non-isomorphic."""
    subs = subgroups(group)
    fans = []
    entries = []
    for sub in subs:
        fan = maroti(group, sub)
        fans.append(fan)
        minimal = None
        if sub.is_proper:
            minimal = is_minimal_free(fan, 0).minimal
        stab = stabilizer(fan, 0)
        entries.append(
            BijectionEntry(
                subgroup=sub,
                algebra_size=fan.size,
                is_proper=sub.is_proper,
                minimal=minimal,
                stabilizer_ok=stab.elements == sub.elements,
            )
        )
    distinct = True
    for i in range(len(subs)):
        for j in range(i + 1, len(subs)):
            if fans[i].size != fans[j].size:
                continue
            iso, _ = is_isomorphic_1gen(fans[i], 0, fans[j], 0)
            if iso:
                distinct = False
    return BijectionReport(group, tuple(entries), distinct)


@dataclass(frozen=True)
class DecompositionResult:
    subgroup: Subgroup
    factor: FSemilattice
    factor_generators: tuple[Element, ...]
    reconstruction: FSemilattice
    iso: Homomorphism


def decompose_ku(
    algebra: FSemilattice, a: int, max_translates: int = 3
) -> DecompositionResult:
    """Split a free-minimal algebra at its generator.

    K collects the group elements g with a ^ g(a) above zero; the factor is
    the K-closure of the generator.  The twisted multiple over (K, factor) is
    rebuilt and the explicit isomorphism (u, t) -> t(u) is verified.  The
    block condition -- a meet of translates is nonzero exactly when all the
    translating elements share a K-coset -- is checked on meets of up to
    ``max_translates`` translates.
    """
    group = algebra.group
    if not group.is_finite:
        raise InfiniteGroupError("decomposition is implemented for finite groups")
    if algebra.size == 1:
        raise ValueError("decomposition needs a nontrivial algebra")
    verdict = is_minimal_free(algebra, a)
    if not verdict.minimal:
        raise ValueError(
            f"decomposition needs a free-minimal algebra; counterexample "
            f"{algebra.label(verdict.counterexample)!r}"
        )
    bottom = zero(algebra)
    elements = group.elements()
    k_elems = [g for g in elements if algebra.meet[a][act(algebra, g, a)] != bottom]
    sub = subgroup_from_elements(group, k_elems)  # failure here would be a bug
    coset_id = {}
    for g in elements:
        coset_id[g] = tuple(sorted(mul(group, g, h) for h in sub.elements))[0]
    for size in range(1, max_translates + 1):
        for combo in itertools.combinations_with_replacement(elements, size):
            value = None
            for g in combo:
                translated = act(algebra, g, a)
                value = translated if value is None else algebra.meet[value][translated]
            same_coset = len({coset_id[g] for g in combo}) == 1
            if (value != bottom) != same_coset:
                raise VerificationError(
                    f"block condition fails for translates {[format_element(g) for g in combo]}"
                )
    pres = presentation(group, sub)
    members = {a}
    queue = [a]
    gen_perms = []
    for g in pres.generators:
        p = element_action(algebra, g)
        gen_perms += [p, perm_inverse(p)]
    while queue:
        x = queue.pop()
        for p in gen_perms:
            y = p[x]
            if y not in members:
                members.add(y)
                queue.append(y)
        for y in list(members):
            m = algebra.meet[x][y]
            if m not in members:
                members.add(m)
                queue.append(m)
    closure = tuple(sorted(members))
    pos = {v: i for i, v in enumerate(closure)}
    factor = FSemilattice(
        group=pres.spec,
        carrier=tuple(algebra.carrier[v] for v in closure),
        meet=tuple(tuple(pos[algebra.meet[u][v]] for v in closure) for u in closure),
        action=tuple(
            tuple(pos[element_action(algebra, g)[v]] for v in closure)
            for g in pres.generators
        ),
    )
    spec = twisted_spec(group, sub, factor, factor_generators=pres.generators)
    rebuilt = twisted_multiple(spec)
    u_size = factor.size
    mapping = []
    for i in range(rebuilt.size - 1):
        t_pos, u = divmod(i, u_size)
        t = spec.transversal.reps[t_pos]
        mapping.append(act(algebra, t, closure[u]))
    mapping.append(bottom)
    iso = Homomorphism(rebuilt, algebra, tuple(mapping))
    if not (iso.is_bijective and is_homomorphism(iso)):
        raise VerificationError("reconstruction map failed verification")
    return DecompositionResult(sub, factor, pres.generators, rebuilt, iso)


def delta_map(
    group: GroupSpec,
    sub: Subgroup,
    factor: FSemilattice | None = None,
    factor_generators: tuple[Element, ...] | None = None,
    factor_generator_element: int = 0,
) -> FSemilattice:
    """Free-algebra representative of the (subgroup, factor) pair: the twisted
    multiple, with its free-minimality verified before returning.

    The generating element is the pair (factor generator, identity
    representative), which sits at carrier index ``factor_generator_element``
    because the identity's coset comes first in the normalized transversal.
    """
    order = group.order()
    if order is not None and len(sub.elements) == order:
        raise ValueError("the subgroup must be proper")
    spec = twisted_spec(group, sub, factor, factor_generators=factor_generators)
    built = twisted_multiple(spec)
    verdict = is_minimal_free(built, factor_generator_element)
    if not verdict.minimal:
        raise VerificationError(
            f"twisted multiple is not free-minimal; counterexample "
            f"{built.label(verdict.counterexample)!r}"
        )
    return built


@dataclass(frozen=True)
class QuotientExclusion:
    blocks: tuple[tuple[int, ...], ...]
    excluded: bool
    witness: dict[str, int] | None


@dataclass(frozen=True)
class SimplicityReport:
    congruence_count: int
    simple: bool
    qi: QuasiIdentity
    exclusions: tuple[QuotientExclusion, ...]

    @property
    def ok(self) -> bool:
        return all(e.excluded for e in self.exclusions)


def simplicity_and_quotient_report(
    algebra: FSemilattice, a: int, limit: int = 24
) -> SimplicityReport:
    """Enumerate congruences; every proper nontrivial quotient must fail the
    separating quasi-identity of the algebra, which is what keeps quotients
    out of the generated quasivariety.  Reports "simple" when no such
    congruence exists."""
    verdict = is_minimal_free(algebra, a)
    if not verdict.minimal:
        raise ValueError("report requires a free-minimal algebra")
    qi = separating_quasi_identity(algebra, a)
    congs = congruences(algebra, limit=limit)
    exclusions = []
    for cong in congs:
        if cong.is_identity or cong.is_total:
            continue
        holds, witness = holds_quasi_identity(quotient(algebra, cong), qi)
        exclusions.append(QuotientExclusion(cong.blocks, not holds, witness))
    report = SimplicityReport(len(congs), len(congs) == 2, qi, tuple(exclusions))
    if not report.ok:
        raise VerificationError("a proper quotient satisfied the separating quasi-identity")
    return report


# Textual quasi-identity grammar: variables are lowercase identifiers,
# generator application is gK(t) with optional power gK^N(t), meet is the
# infix ^, premises are joined by & before ->, and zero premises are written
# with a leading ->.

_TOKEN_RE = re.compile(r"->|&|=|\^|\(|\)|g\d+|-?\d+|[a-z_][a-z0-9_]*")


class QuasiIdentitySyntaxError(ValueError):
    pass


class _TermParser:
    def __init__(self, text: str, group: GroupSpec):
        self.tokens = _TOKEN_RE.findall(text)
        if "".join(self.tokens).replace(" ", "") != text.replace(" ", ""):
            raise QuasiIdentitySyntaxError(f"unrecognized characters in {text!r}")
        self.pos = 0
        self.group = group

    def peek(self, ahead: int = 0) -> str | None:
        i = self.pos + ahead
        return self.tokens[i] if i < len(self.tokens) else None

    def take(self, expected: str | None = None) -> str:
        tok = self.peek()
        if tok is None or (expected is not None and tok != expected):
            raise QuasiIdentitySyntaxError(
                f"expected {expected or 'a token'}, got {tok!r}"
            )
        self.pos += 1
        return tok

    def parse_term(self) -> Term:
        term = self.parse_factor()
        while self.peek() == "^":
            self.take("^")
            term = meet_terms(term, self.parse_factor())
        return term

    def parse_factor(self) -> Term:
        tok = self.peek()
        if tok is None:
            raise QuasiIdentitySyntaxError("unexpected end of term")
        if tok == "(":
            self.take("(")
            term = self.parse_term()
            self.take(")")
            return term
        if re.fullmatch(r"g\d+", tok):
            self.take()
            power = 1
            if self.peek() == "^" and self.peek(1) is not None and re.fullmatch(
                r"-?\d+", self.peek(1)
            ) and self.peek(2) == "(":
                self.take("^")
                power = int(self.take())
            index = int(tok[1:])
            if index >= self.group.rank:
                raise QuasiIdentitySyntaxError(
                    f"generator g{index} out of range for rank {self.group.rank}"
                )
            self.take("(")
            inner = self.parse_term()
            self.take(")")
            g = reduce_element(
                self.group, tuple(power if i == index else 0 for i in range(self.group.rank))
            )
            return translate_term(self.group, g, inner)
        if re.fullmatch(r"[a-z_][a-z0-9_]*", tok):
            self.take()
            return var(tok, self.group)
        raise QuasiIdentitySyntaxError(f"unexpected token {tok!r}")

    def parse_equation(self) -> tuple[Term, Term]:
        left = self.parse_term()
        self.take("=")
        right = self.parse_term()
        return left, right

    def at_end(self) -> bool:
        return self.pos == len(self.tokens)


def parse_quasi_identity(text: str, group: GroupSpec) -> QuasiIdentity:
    if "->" not in text:
        raise QuasiIdentitySyntaxError("a quasi-identity needs '->'")
    head, _, tail = text.partition("->")
    premises = []
    head = head.strip()
    if head:
        for part in head.split("&"):
            parser = _TermParser(part.strip(), group)
            premises.append(parser.parse_equation())
            if not parser.at_end():
                raise QuasiIdentitySyntaxError(f"trailing tokens in {part!r}")
    parser = _TermParser(tail.strip(), group)
    conclusion = parser.parse_equation()
    if not parser.at_end():
        raise QuasiIdentitySyntaxError(f"trailing tokens in {tail!r}")
    return make_quasi_identity(premises, conclusion)


def format_term(term: Term) -> str:
    def one(pair: tuple[Element, str]) -> str:
        g, v = pair
        out = v
        for i in reversed(range(len(g))):
            c = g[i]
            if c == 0:
                continue
            out = f"g{i}({out})" if c == 1 else f"g{i}^{c}({out})"
        return out

    return " ^ ".join(one(p) for p in sorted(term.pairs))


def format_quasi_identity(qi: QuasiIdentity) -> str:
    head = " & ".join(f"{format_term(s)} = {format_term(t)}" for s, t in qi.premises)
    s, t = qi.conclusion
    return f"{head} -> {format_term(s)} = {format_term(t)}".strip()
