"""Presentations of CDGAs: polynomial strings over named generators,
degree-bounded expansion to explicit structure constants, TOML input.

Grammar for polynomials: identifiers (letters, digits, _, trailing '),
integer rationals p/q, the operators + - * ^ and parentheses.  '^' takes a
nonnegative integer exponent, '/' only divides integer literals.

Expansion is exact: the free graded-commutative algebra on the generators
is enumerated up to the declared top degree plus one generator-width of
margin, the relation ideal is spanned degree by degree, and the quotient
must vanish on the margin window.  That vanishing *proves* (inductively)
that the true quotient vanishes above the top degree, so the bounded
structure-constant table is faithful, not a silent truncation.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .algebra import CDGA, assert_valid, koszul, verify_cdga
from .duality import verify_pd
from .errors import AxiomError, ParseError
from .graded import Element, GradedSpace, el_accumulate, el_is_zero
from .operations import quotient_cdga
from .scalars import Q, ZERO, ONE

try:
    import tomllib as _toml
except ImportError:  # Python 3.10
    import tomli as _toml


# -- polynomial parsing -------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*'*)"
                    r"|(?P<op>[-+*^/()]))")
_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*'*")


def tokenize(text: str):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            raise ParseError(f"unexpected character {stripped[0]!r} at position {pos}")
        if m.group("num") is not None:
            out.append(("num", int(m.group("num")), pos))
        elif m.group("name") is not None:
            out.append(("name", m.group("name"), pos))
        else:
            out.append(("op", m.group("op"), pos))
        pos = m.end()
    out.append(("end", None, len(text)))
    return out


class _Parser:
    """Recursive descent: sum -> term (('+'|'-') term)*, term -> power ('*'|'/' power)*,
    power -> atom ('^' exponent)?, atom -> number | name | '(' sum ')' | '-' atom."""

    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_op(self, op: str):
        kind, value, pos = self.take()
        if kind != "op" or value != op:
            raise ParseError(f"expected {op!r} at position {pos} in {self.text!r}")

    def parse(self):
        node = self.sum()
        kind, _, pos = self.peek()
        if kind != "end":
            raise ParseError(f"trailing input at position {pos} in {self.text!r}")
        return node

    def sum(self):
        node = self.term()
        while True:
            kind, value, _ = self.peek()
            if kind == "op" and value in "+-":
                self.take()
                rhs = self.term()
                node = (value, node, rhs)
            else:
                return node

    def term(self):
        node = self.power()
        while True:
            kind, value, _ = self.peek()
            if kind == "op" and value in "*/":
                self.take()
                rhs = self.power()
                node = (value, node, rhs)
            else:
                return node

    def power(self):
        node = self.atom()
        kind, value, _ = self.peek()
        if kind == "op" and value == "^":
            self.take()
            kind, exp, pos = self.take()
            if kind != "num":
                raise ParseError(f"exponent must be a nonnegative integer at position {pos}")
            node = ("^", node, exp)
        return node

    def atom(self):
        kind, value, pos = self.take()
        if kind == "num":
            return ("num", value)
        if kind == "name":
            return ("var", value)
        if kind == "op" and value == "(":
            node = self.sum()
            self.expect_op(")")
            return node
        if kind == "op" and value == "-":
            return ("neg", self.atom())
        raise ParseError(f"unexpected token at position {pos} in {self.text!r}")


def parse_polynomial(text: str):
    return _Parser(text).parse()


class _Value:
    """Evaluation value: a scalar, an element, or both mixed via the unit."""

    __slots__ = ("scalar", "element")

    def __init__(self, scalar=ZERO, element=None):
        self.scalar = scalar
        self.element = element or {}


def evaluate(ast, lookup, mul, unit_element):
    """Evaluate a parsed polynomial.

    ``lookup(name)`` returns the Element a generator name stands for, ``mul``
    multiplies Elements, ``unit_element`` represents 1.  Returns an Element.
    """

    def as_element(v: _Value) -> Element:
        out = dict(v.element)
        if v.scalar != 0:
            el_accumulate(out, unit_element, v.scalar)
        return out

    def run(node) -> _Value:
        head = node[0]
        if head == "num":
            return _Value(scalar=Q(node[1]))
        if head == "var":
            return _Value(element=lookup(node[1]))
        if head == "neg":
            v = run(node[1])
            return _Value(scalar=-v.scalar, element={k: -c for k, c in v.element.items()})
        if head in "+-":
            a, b = run(node[1]), run(node[2])
            sign = ONE if head == "+" else -ONE
            out = dict(a.element)
            el_accumulate(out, b.element, sign)
            return _Value(scalar=a.scalar + sign * b.scalar, element=out)
        if head == "*":
            a, b = run(node[1]), run(node[2])
            out = mul(a.element, b.element)
            el_accumulate(out, b.element, a.scalar)
            el_accumulate(out, a.element, b.scalar)
            return _Value(scalar=a.scalar * b.scalar, element=out)
        if head == "/":
            a, b = run(node[1]), run(node[2])
            if a.element or b.element or b.scalar == 0:
                raise ParseError("'/' only divides integer literals")
            return _Value(scalar=a.scalar / b.scalar)
        if head == "^":
            base, exp = run(node[1]), node[2]
            acc = _Value(scalar=ONE)
            for _ in range(exp):
                acc = _Value(element=mul(as_element(acc), as_element(base)))
            return acc
        raise ParseError(f"cannot evaluate node {head!r}")

    return as_element(run(ast))


# -- free graded-commutative algebras ----------------------------------------

@dataclass
class FreeCGA:
    """Monomial basis of Λ(generators) up to a hard degree bound.

    Monomials are exponent tuples in declaration order; odd generators
    square to zero.  Names like 'x^2*y' are stable and re-parseable.
    """

    generators: list           # [(name, degree)]
    bound: int
    space: GradedSpace = field(init=False)
    by_name: dict = field(init=False)

    def __post_init__(self):
        names = [g for g, _ in self.generators]
        if len(set(names)) != len(names):
            raise ParseError("duplicate generator names")
        for g, d in self.generators:
            if not _IDENT.fullmatch(g):
                raise ParseError(f"generator name {g!r} is not an identifier")
            if d <= 0:
                raise ParseError(f"generator {g!r} must have positive degree")
        def degree(e):
            return sum(ei * d for ei, (_, d) in zip(e, self.generators))
        stack = [tuple([0] * len(self.generators))]
        seen = set(stack)
        while stack:
            e = stack.pop()
            for i, (g, d) in enumerate(self.generators):
                if e[i] >= 1 and d % 2 == 1:
                    continue
                e2 = tuple(v + (1 if j == i else 0) for j, v in enumerate(e))
                if degree(e2) > self.bound or e2 in seen:
                    continue
                seen.add(e2)
                stack.append(e2)
        degrees = {}
        for e in seen:
            degrees.setdefault(degree(e), []).append(e)
        spaces = {}
        self._expts_of = {}
        for d, es in degrees.items():
            es.sort(reverse=True)  # lexicographic, earlier generators dominant
            spaces[d] = [self.monomial_name(e) for e in es]
            for e in es:
                self._expts_of[self.monomial_name(e)] = e
        self.space = GradedSpace(spaces)
        self.by_name = self._expts_of

    def monomial_name(self, expts) -> str:
        parts = []
        for (g, _), e in zip(self.generators, expts):
            if e == 1:
                parts.append(g)
            elif e > 1:
                parts.append(f"{g}^{e}")
        return "*".join(parts) if parts else "1"

    def degree_of(self, expts) -> int:
        return sum(e * d for e, (_, d) in zip(expts, self.generators))

    def mul_monomials(self, e1, e2):
        """(sign, exponents) or (0, None) when an odd generator squares or
        the product leaves the bound."""
        odd_positions_1 = [i for i, ((_, d), e) in enumerate(zip(self.generators, e1))
                           if d % 2 == 1 and e == 1]
        odd_positions_2 = [i for i, ((_, d), e) in enumerate(zip(self.generators, e2))
                           if d % 2 == 1 and e == 1]
        if set(odd_positions_1) & set(odd_positions_2):
            return ZERO, None
        out = tuple(a + b for a, b in zip(e1, e2))
        if self.degree_of(out) > self.bound:
            return ZERO, None
        inversions = sum(1 for i in odd_positions_1 for j in odd_positions_2 if i > j)
        return (-ONE if inversions % 2 else ONE), out

    def mul(self, x: Element, y: Element) -> Element:
        out: Element = {}
        for m1, c1 in x.items():
            e1 = self.by_name[m1]
            for m2, c2 in y.items():
                sign, e = self.mul_monomials(e1, self.by_name[m2])
                if e is not None:
                    el_accumulate(out, {self.monomial_name(e): ONE}, sign * c1 * c2)
        return out

    def unit_element(self) -> Element:
        return {"1": ONE}

    def lookup(self, name: str) -> Element:
        for i, (g, d) in enumerate(self.generators):
            if g == name:
                e = tuple(1 if j == i else 0 for j in range(len(self.generators)))
                if d > self.bound:
                    return {}
                return {self.monomial_name(e): ONE}
        raise ParseError(f"unknown generator {name!r}")

    def eval_poly(self, text: str) -> Element:
        return evaluate(parse_polynomial(text), self.lookup, self.mul, self.unit_element())

    def differential_tables(self, gen_diffs: dict) -> dict:
        """Extend d from generators (given as Elements) to all monomials by
        the Leibniz rule; raises if any d(g) is inhomogeneous or off-degree."""
        gdeg = dict(self.generators)
        for g, dg in gen_diffs.items():
            deg = self.space.element_degree(dg)
            if deg is not None and deg != gdeg[g] + 1:
                raise ParseError(f"d({g}) must be homogeneous of degree {gdeg[g] + 1}")
        diff = {}

        def d_of(expts) -> Element:
            # d(g1^{e1}···gk^{ek}) = Σ_i ±e_i · (g1^{e1}···g_i^{e_i-1}) dg_i (rest)
            out: Element = {}
            prefix_degree = 0
            for i, (g, d) in enumerate(self.generators):
                e = expts[i]
                if e:
                    dg = gen_diffs.get(g, {})
                    if dg:
                        sign = koszul(prefix_degree, 1)
                        left = [0] * len(expts)
                        left[i] = e - 1
                        for j in range(i):
                            left[j] = expts[j]
                        right = [0] * len(expts)
                        for j in range(i + 1, len(expts)):
                            right[j] = expts[j]
                        term = self.mul({self.monomial_name(tuple(left)): ONE}, dg)
                        term = self.mul(term, {self.monomial_name(tuple(right)): ONE})
                        el_accumulate(out, term, Q(e) * sign)
                prefix_degree += e * d
            return out

        for nm, expts in self.by_name.items():
            img = d_of(expts)
            if img:
                diff[nm] = img
        return diff

    def as_cdga(self, gen_diffs: dict, name: str = "") -> CDGA:
        products = {}
        for m1, e1 in self.by_name.items():
            for m2, e2 in self.by_name.items():
                sign, e = self.mul_monomials(e1, e2)
                if e is not None:
                    products[(m1, m2)] = {self.monomial_name(e): sign}
        return CDGA(self.space, "1", products, self.differential_tables(gen_diffs),
                    name=name or "Λ(gens)", fill=False)


# -- presentations ------------------------------------------------------------

@dataclass
class Presentation:
    name: str
    generators: list                     # [(name, degree)]
    relations: list = field(default_factory=list)       # polynomial strings
    differentials: dict = field(default_factory=dict)   # gen -> polynomial string
    dimension_bound: "int | None" = None
    orientation: "tuple | None" = None   # (degree, polynomial string)


@dataclass
class LoadedAlgebra:
    presentation: Presentation
    cdga: CDGA
    pd: "PDAlgebra | None"
    bound: int
    free: "FreeCGA | None" = None
    projection: object = None      # DGMorphism free CDGA -> cdga

    def eval_poly(self, text: str) -> Element:
        """Evaluate a polynomial in the generators inside the quotient."""
        return self.projection(self.free.eval_poly(text))


def _max_gen_degree(pres: Presentation) -> int:
    return max((d for _, d in pres.generators), default=1)


def expansion_bound(pres: Presentation, max_degree: "int | None" = None) -> int:
    if max_degree is not None:
        return max_degree
    if pres.orientation is not None:
        n = pres.orientation[0]
        return max(pres.dimension_bound or 0, 2 * n + 1)
    if pres.dimension_bound is None:
        raise ParseError(
            f"presentation {pres.name!r} needs dimension_bound or an orientation")
    return pres.dimension_bound


def load_presentation(pres: Presentation, max_degree: "int | None" = None) -> LoadedAlgebra:
    """Expand a presentation to an explicit CDGA (and PDAlgebra when an
    orientation is declared); see the module docstring for the exactness
    argument behind the margin check."""
    top = expansion_bound(pres, max_degree)
    margin = _max_gen_degree(pres)
    free = FreeCGA(pres.generators, top + margin)

    gen_diffs = {}
    for g, poly in pres.differentials.items():
        if g not in dict(pres.generators):
            raise ParseError(f"differential given for unknown generator {g!r}")
        gen_diffs[g] = free.eval_poly(poly)
    free_cdga = free.as_cdga(gen_diffs, name=pres.name)
    bad = [v for v in verify_cdga(free_cdga, full=False) if v.axiom == "d^2 = 0"]
    if bad:
        raise AxiomError(f"d² != 0 in presentation {pres.name!r}: {bad[0]}")

    relation_elements = []
    for poly in pres.relations:
        rel = free.eval_poly(poly)
        try:
            free.space.element_degree(rel)
        except AxiomError as exc:
            raise ParseError(f"inhomogeneous relation {poly!r}: {exc}") from exc
        if rel:
            relation_elements.append(rel)

    ideal = []
    for rel in relation_elements:
        rel_degree = free.space.element_degree(rel)
        for d in free.space.support():
            if rel_degree + d > free.bound:
                continue
            for nm in free.space.basis(d):
                prod = free.mul({nm: ONE}, rel)
                if prod:
                    ideal.append(prod)
    # d(relations) must stay in the ideal for the quotient differential to
    # descend; quotient_cdga re-checks numerically and raises otherwise
    quotient, projection = quotient_cdga(free_cdga, ideal, name=pres.name)

    grown = [d for d in quotient.space.support() if d > top]
    if grown:
        if pres.orientation is None:
            raise ParseError(
                f"presentation {pres.name!r}: dimension still growing at the bound "
                f"(nonzero in degrees {grown}); declare an orientation or raise "
                "dimension_bound")
    assert_valid(verify_cdga(quotient, full=True), f"presentation {pres.name!r}")

    pd = None
    if pres.orientation is not None:
        n, cls_poly = pres.orientation
        if quotient.space.max_degree() is not None and quotient.space.max_degree() > n:
            raise AxiomError(
                f"presentation {pres.name!r}: classes above the formal dimension {n} "
                f"(degrees {[d for d in quotient.space.support() if d > n]})")
        projected = projection(free.eval_poly(cls_poly))
        if el_is_zero(projected):
            raise AxiomError(f"orientation class {cls_poly!r} dies in the quotient")
        if quotient.space.element_degree(projected) != n:
            raise AxiomError(f"orientation class must have degree {n}")
        names = quotient.space.basis(n)
        if len(names) != 1:
            raise AxiomError(f"degree {n} is not one-dimensional")
        # ε is dual to the declared class: ε(class) = 1
        coeff = projected[names[0]]
        pd = verify_pd(quotient, n, {names[0]: ONE / coeff})
    return LoadedAlgebra(presentation=pres, cdga=quotient, pd=pd, bound=top,
                         free=free, projection=projection)


# -- TOML ----------------------------------------------------------------------

def presentation_from_dict(data: dict, name: str = "") -> Presentation:
    try:
        generators = [(g["name"], int(g["degree"])) for g in data.get("generators", [])]
    except (KeyError, TypeError) as exc:
        raise ParseError(f"each generator needs a name and a degree: {exc}") from exc
    relations = list(data.get("relations", []))
    differentials = dict(data.get("differentials", {}))
    orientation = None
    if "orientation" in data:
        o = data["orientation"]
        try:
            orientation = (int(o["degree"]), o["class"])
        except (KeyError, TypeError) as exc:
            raise ParseError("orientation needs degree and class") from exc
    bound = data.get("dimension_bound")
    return Presentation(name=data.get("name", name), generators=generators,
                        relations=relations, differentials=differentials,
                        dimension_bound=int(bound) if bound is not None else None,
                        orientation=orientation)


def read_presentation(path) -> Presentation:
    try:
        with open(path, "rb") as fh:
            data = _toml.load(fh)
    except FileNotFoundError as exc:
        raise ParseError(f"no such file: {path}") from exc
    except _toml.TOMLDecodeError as exc:
        raise ParseError(f"TOML error in {path}: {exc}") from exc
    return presentation_from_dict(data, name=str(path))


def serialize_presentation(pres: Presentation) -> str:
    """Emit the restricted TOML schema we read (strings, ints, tables)."""
    def quote(s: str) -> str:
        return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'

    lines = [f"name = {quote(pres.name)}"]
    if pres.dimension_bound is not None:
        lines.append(f"dimension_bound = {pres.dimension_bound}")
    if pres.relations:
        lines.append("relations = [" + ", ".join(quote(r) for r in pres.relations) + "]")
    for g, d in pres.generators:
        lines.append("")
        lines.append("[[generators]]")
        lines.append(f"name = {quote(g)}")
        lines.append(f"degree = {d}")
    if pres.differentials:
        lines.append("")
        lines.append("[differentials]")
        for g, poly in pres.differentials.items():
            lines.append(f"{quote(g)} = {quote(poly)}")
    if pres.orientation is not None:
        lines.append("")
        lines.append("[orientation]")
        lines.append(f"degree = {pres.orientation[0]}")
        lines.append(f"class = {quote(pres.orientation[1])}")
    return "\n".join(lines) + "\n"
