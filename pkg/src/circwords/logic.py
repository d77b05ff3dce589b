"""First-order predicate DSL over natural-number variables and automatic
sequences, compiled to multi-track automata.

Grammar (definitions end with ';', '#' starts a comment):

    def    := name '(' [var (',' var)*] ')' ':=' expr
    expr   := 'E' vars expr | 'A' vars expr | expr op expr | '~' expr
              | atom | '(' expr ')'        with op in  &  |  =>  <=>
    atom   := term rel term | SEQ '[' term ']' ('=' | '!=') (SEQ '[' term ']' | num)
              | name '(' term (',' term)* ')'
    term   := item ('+' item)*             item := num | var | num var

Quantifier bodies extend as far right as possible.  There is no
subtraction: predicates are written with fresh variables instead
(E d (d + n = j + p & ...)).  'E' and 'A' are reserved.
"""

from __future__ import annotations

import re
import time
from dataclasses import dataclass, field

from circwords.automata import MINIMIZE_THRESHOLD, TrackDfa, default_state_cap
from circwords.errors import StateCapError
from circwords.sequences import Dfao

_RELS = ("=", "!=", "<", "<=", ">", ">=")


class DslSyntaxError(ValueError):
    def __init__(self, msg: str, line: int, col: int):
        self.line, self.col = line, col
        super().__init__(f"{msg} (line {line}, column {col})")


class CompileError(ValueError):
    pass


# ---------------------------------------------------------------------------
# terms and formulas


@dataclass(frozen=True)
class Term:
    """A linear combination of variables plus a natural constant."""

    coeffs: tuple[tuple[str, int], ...]
    const: int

    @classmethod
    def variable(cls, name: str) -> "Term":
        return cls(((name, 1),), 0)

    @classmethod
    def constant(cls, c: int) -> "Term":
        return cls((), c)

    def plus(self, other: "Term") -> "Term":
        acc = dict(self.coeffs)
        for v, c in other.coeffs:
            acc[v] = acc.get(v, 0) + c
        coeffs = tuple(sorted((v, c) for v, c in acc.items() if c))
        return Term(coeffs, self.const + other.const)

    def scaled(self, factor: int) -> "Term":
        return Term(tuple((v, c * factor) for v, c in self.coeffs), self.const * factor)

    def substitute(self, mapping: dict[str, "Term"]) -> "Term":
        out = Term.constant(self.const)
        for v, c in self.coeffs:
            t = mapping.get(v)
            out = out.plus(t.scaled(c) if t is not None else Term(((v, c),), 0))
        return out

    def free_vars(self) -> frozenset[str]:
        return frozenset(v for v, _ in self.coeffs)

    def single_var(self) -> str | None:
        if self.const == 0 and len(self.coeffs) == 1 and self.coeffs[0][1] == 1:
            return self.coeffs[0][0]
        return None

    def __str__(self) -> str:
        parts = [f"{c}{v}" if c != 1 else v for v, c in self.coeffs]
        if self.const or not parts:
            parts.append(str(self.const))
        return "+".join(parts)


@dataclass(frozen=True)
class Compare:
    lhs: Term
    op: str
    rhs: Term


@dataclass(frozen=True)
class SeqTest:
    """S[idx1] = rhs (or !=), where rhs is another sequence read or a constant."""

    seq1: str
    idx1: Term
    equal: bool
    seq2: str | None = None
    idx2: Term | None = None
    const: int | None = None


@dataclass(frozen=True)
class Call:
    name: str
    args: tuple[Term, ...]


@dataclass(frozen=True)
class Not:
    body: "Formula"


@dataclass(frozen=True)
class Bin:
    op: str  # & | => <=>
    lhs: "Formula"
    rhs: "Formula"


@dataclass(frozen=True)
class Quant:
    kind: str  # E or A
    names: tuple[str, ...]
    body: "Formula"


Formula = Compare | SeqTest | Call | Not | Bin | Quant


def free_vars(f: Formula) -> frozenset[str]:
    if isinstance(f, Compare):
        return f.lhs.free_vars() | f.rhs.free_vars()
    if isinstance(f, SeqTest):
        out = f.idx1.free_vars()
        if f.idx2 is not None:
            out |= f.idx2.free_vars()
        return out
    if isinstance(f, Call):
        out: frozenset[str] = frozenset()
        for t in f.args:
            out |= t.free_vars()
        return out
    if isinstance(f, Not):
        return free_vars(f.body)
    if isinstance(f, Bin):
        return free_vars(f.lhs) | free_vars(f.rhs)
    if isinstance(f, Quant):
        return free_vars(f.body) - frozenset(f.names)
    raise TypeError(type(f))


# ---------------------------------------------------------------------------
# tokenizer / parser

_TOKEN_RE = re.compile(
    r"(?P<ws>\s+)|(?P<comment>#[^\n]*)|(?P<num>\d+)|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<op><=>|=>|!=|<=|>=|:=|[()\[\],;&|~+=<>])"
)


@dataclass(frozen=True)
class _Tok:
    kind: str
    text: str
    line: int
    col: int


def _tokenize(text: str) -> list[_Tok]:
    toks: list[_Tok] = []
    line, col = 1, 1
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise DslSyntaxError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        s = m.group()
        if kind not in ("ws", "comment"):
            toks.append(_Tok(kind, s, line, col))
        nl = s.count("\n")
        if nl:
            line += nl
            col = len(s) - s.rfind("\n")
        else:
            col += len(s)
        pos = m.end()
    toks.append(_Tok("eof", "", line, col))
    return toks


class _Parser:
    def __init__(self, toks: list[_Tok]):
        self.toks = toks
        self.i = 0

    @property
    def cur(self) -> _Tok:
        return self.toks[self.i]

    def _fail(self, msg: str):
        raise DslSyntaxError(msg, self.cur.line, self.cur.col)

    def eat(self, kind: str, text: str | None = None) -> _Tok:
        t = self.cur
        if t.kind != kind or (text is not None and t.text != text):
            want = text or kind
            self._fail(f"expected {want!r}, found {t.text or t.kind!r}")
        self.i += 1
        return t

    def at_op(self, text: str) -> bool:
        return self.cur.kind == "op" and self.cur.text == text

    def parse_expr(self) -> Formula:
        return self._iff()

    def _iff(self) -> Formula:
        f = self._imp()
        while self.at_op("<=>"):
            self.i += 1
            f = Bin("<=>", f, self._imp())
        return f

    def _imp(self) -> Formula:
        f = self._or()
        if self.at_op("=>"):
            self.i += 1
            return Bin("=>", f, self._imp())
        return f

    def _or(self) -> Formula:
        f = self._and()
        while self.at_op("|"):
            self.i += 1
            f = Bin("|", f, self._and())
        return f

    def _and(self) -> Formula:
        f = self._unary()
        while self.at_op("&"):
            self.i += 1
            f = Bin("&", f, self._unary())
        return f

    def _unary(self) -> Formula:
        if self.at_op("~"):
            self.i += 1
            return Not(self._unary())
        if self.cur.kind == "ident" and self.cur.text in ("E", "A"):
            kind = self.eat("ident").text
            names = [self._varname()]
            while self.at_op(","):
                self.i += 1
                names.append(self._varname())
            return Quant(kind, tuple(names), self.parse_expr())
        return self._primary()

    def _varname(self) -> str:
        t = self.eat("ident")
        if t.text in ("E", "A"):
            raise DslSyntaxError("'E' and 'A' are reserved quantifier symbols", t.line, t.col)
        return t.text

    def _primary(self) -> Formula:
        if self.at_op("("):
            self.i += 1
            f = self.parse_expr()
            self.eat("op", ")")
            return f
        return self._atom()

    def _atom(self) -> Formula:
        if self.cur.kind == "ident":
            name = self.cur.text
            nxt = self.toks[self.i + 1]
            if nxt.kind == "op" and nxt.text == "[":
                return self._seq_atom()
            if nxt.kind == "op" and nxt.text == "(":
                self.i += 2
                args = [self._term()]
                while self.at_op(","):
                    self.i += 1
                    args.append(self._term())
                self.eat("op", ")")
                return Call(name, tuple(args))
        lhs = self._term()
        op = self._rel()
        rhs = self._term()
        return Compare(lhs, op, rhs)

    def _seq_atom(self) -> Formula:
        seq1 = self.eat("ident").text
        self.eat("op", "[")
        idx1 = self._term()
        self.eat("op", "]")
        if self.at_op("="):
            equal = True
            self.i += 1
        elif self.at_op("!="):
            equal = False
            self.i += 1
        else:
            self._fail("expected '=' or '!=' after sequence read")
        if self.cur.kind == "num":
            c = int(self.eat("num").text)
            return SeqTest(seq1, idx1, equal, const=c)
        seq2 = self.eat("ident").text
        self.eat("op", "[")
        idx2 = self._term()
        self.eat("op", "]")
        return SeqTest(seq1, idx1, equal, seq2=seq2, idx2=idx2)

    def _rel(self) -> str:
        if self.cur.kind == "op" and self.cur.text in _RELS:
            return self.eat("op").text
        self._fail("expected a comparison operator")

    def _term(self) -> Term:
        t = self._item()
        while self.at_op("+"):
            self.i += 1
            t = t.plus(self._item())
        return t

    def _item(self) -> Term:
        if self.cur.kind == "num":
            c = int(self.eat("num").text)
            if self.cur.kind == "ident" and self.cur.text not in ("E", "A"):
                return Term.variable(self.eat("ident").text).scaled(c)
            return Term.constant(c)
        name = self._varname()
        return Term.variable(name)


def parse(text: str) -> Formula:
    """Parse a single expression."""
    p = _Parser(_tokenize(text))
    f = p.parse_expr()
    if p.cur.kind != "eof":
        p._fail("trailing input after expression")
    return f


@dataclass(frozen=True)
class Definition:
    name: str
    params: tuple[str, ...]
    body: Formula
    tags: frozenset[str] = frozenset()
    source: str = "<string>"


def parse_definitions(text: str, source: str = "<string>") -> list[Definition]:
    """Parse a DSL file of `name(params) := expr;` definitions."""
    tags, sequences = _file_metadata(text)
    p = _Parser(_tokenize(text))
    defs: list[Definition] = []
    while p.cur.kind != "eof":
        name_tok = p.eat("ident")
        p.eat("op", "(")
        params: list[str] = []
        if not p.at_op(")"):
            params.append(p._varname())
            while p.at_op(","):
                p.i += 1
                params.append(p._varname())
        p.eat("op", ")")
        p.eat("op", ":=")
        body = p.parse_expr()
        p.eat("op", ";")
        unbound = free_vars(body) - frozenset(params)
        if unbound:
            raise DslSyntaxError(
                f"unbound variable(s) {sorted(unbound)} in definition of {name_tok.text}",
                name_tok.line,
                name_tok.col,
            )
        if len(set(params)) != len(params):
            raise DslSyntaxError(f"duplicate parameter in {name_tok.text}", name_tok.line, name_tok.col)
        defs.append(Definition(name_tok.text, tuple(params), body, tags, source))
    return defs


def _file_metadata(text: str) -> tuple[frozenset[str], tuple[str, ...]]:
    tags: set[str] = set()
    seqs: list[str] = []
    for line in text.splitlines():
        line = line.strip()
        if line.startswith("#:"):
            fields = line[2:].split()
            if fields and fields[0] == "tag":
                tags.update(fields[1:])
            elif fields and fields[0] == "sequences":
                seqs.extend(fields[1:])
    return frozenset(tags), tuple(seqs)


# ---------------------------------------------------------------------------
# environment and macro expansion


class PredicateEnv:
    """Named sequence DFAOs plus named predicate definitions (macros)."""

    def __init__(self):
        self.defs: dict[str, Definition] = {}
        self.sequences: dict[str, Dfao] = {}
        self._expansion_cache: dict[tuple[str, tuple[Term, ...]], Formula] = {}
        self._fresh = 0

    def add_definitions(self, defs: list[Definition]):
        for d in defs:
            if d.name in self.defs:
                raise ValueError(f"predicate {d.name!r} defined twice")
            self.defs[d.name] = d

    def add_file(self, text: str, source: str = "<string>"):
        self.add_definitions(parse_definitions(text, source))

    def add_sequence(self, name: str, dfao: Dfao):
        if dfao.base != 2:
            raise ValueError("the decision procedure reads base-2 representations only")
        self.sequences[name] = dfao

    def fresh_name(self, base: str) -> str:
        self._fresh += 1
        return f"{base}.{self._fresh}"

    def expand(self, f: Formula, _stack: frozenset[str] = frozenset()) -> Formula:
        """Expand macro calls by substitution with capture-avoiding renaming."""
        if isinstance(f, (Compare, SeqTest)):
            return f
        if isinstance(f, Not):
            return Not(self.expand(f.body, _stack))
        if isinstance(f, Bin):
            return Bin(f.op, self.expand(f.lhs, _stack), self.expand(f.rhs, _stack))
        if isinstance(f, Quant):
            return Quant(f.kind, f.names, self.expand(f.body, _stack))
        if isinstance(f, Call):
            key = (f.name, f.args)
            hit = self._expansion_cache.get(key)
            if hit is not None:
                return hit
            d = self.defs.get(f.name)
            if d is None:
                raise CompileError(f"unknown predicate {f.name!r}")
            if f.name in _stack:
                raise CompileError(f"recursive predicate {f.name!r}")
            if len(f.args) != len(d.params):
                raise CompileError(
                    f"{f.name} expects {len(d.params)} argument(s), got {len(f.args)}"
                )
            body = self.expand(d.body, _stack | {f.name})
            body = _rename_bound(body, self)
            expanded = _substitute(body, dict(zip(d.params, f.args)))
            self._expansion_cache[key] = expanded
            return expanded
        raise TypeError(type(f))


def _rename_bound(f: Formula, env: PredicateEnv) -> Formula:
    if isinstance(f, (Compare, SeqTest, Call)):
        return f
    if isinstance(f, Not):
        return Not(_rename_bound(f.body, env))
    if isinstance(f, Bin):
        return Bin(f.op, _rename_bound(f.lhs, env), _rename_bound(f.rhs, env))
    if isinstance(f, Quant):
        body = _rename_bound(f.body, env)
        fresh = tuple(env.fresh_name(v) for v in f.names)
        mapping = {v: Term.variable(nv) for v, nv in zip(f.names, fresh)}
        return Quant(f.kind, fresh, _substitute(body, mapping))
    raise TypeError(type(f))


def _substitute(f: Formula, mapping: dict[str, Term]) -> Formula:
    if not mapping:
        return f
    if isinstance(f, Compare):
        return Compare(f.lhs.substitute(mapping), f.op, f.rhs.substitute(mapping))
    if isinstance(f, SeqTest):
        return SeqTest(
            f.seq1,
            f.idx1.substitute(mapping),
            f.equal,
            f.seq2,
            f.idx2.substitute(mapping) if f.idx2 is not None else None,
            f.const,
        )
    if isinstance(f, Call):
        return Call(f.name, tuple(t.substitute(mapping) for t in f.args))
    if isinstance(f, Not):
        return Not(_substitute(f.body, mapping))
    if isinstance(f, Bin):
        return Bin(f.op, _substitute(f.lhs, mapping), _substitute(f.rhs, mapping))
    if isinstance(f, Quant):
        inner = {v: t for v, t in mapping.items() if v not in f.names}
        return Quant(f.kind, f.names, _substitute(f.body, inner))
    raise TypeError(type(f))


# ---------------------------------------------------------------------------
# compilation

_BIN_OPS = {"&": "and", "|": "or", "=>": "implies", "<=>": "iff"}


class Compiler:
    """Compiles formulas to TrackDfas; records per-step stats for reports."""

    def __init__(self, env: PredicateEnv, state_cap: int | None = None, collect_stats: bool = False):
        self.env = env
        self.cap = default_state_cap() if state_cap is None else state_cap
        self.stats: list[tuple[str, int, float]] = [] if collect_stats else None
        self._memo: dict[str, TrackDfa] = {}

    def compile(self, f: Formula | str) -> TrackDfa:
        if isinstance(f, str):
            f = parse(f)
        return self._compile(self.env.expand(f))

    # internal ---------------------------------------------------------------

    def _note(self, desc: str, a: TrackDfa, t0: float):
        if self.stats is not None:
            self.stats.append((desc, a.n_states, time.perf_counter() - t0))

    def _compile(self, f: Formula) -> TrackDfa:
        key = repr(f)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        t0 = time.perf_counter()
        try:
            if isinstance(f, Compare):
                a = self._linear(f)
            elif isinstance(f, SeqTest):
                a = self._seq(f)
            elif isinstance(f, Not):
                a = self._compile(f.body).negate()
            elif isinstance(f, Bin):
                lhs = self._compile(f.lhs)
                rhs = self._compile(f.rhs)
                a = lhs.combine(rhs, _BIN_OPS[f.op], cap=self.cap)
                if a.n_states > MINIMIZE_THRESHOLD:
                    a = a.minimize()
            elif isinstance(f, Quant):
                if f.kind == "E":
                    a = self._exists(f.names, f.body)
                else:
                    a = self._exists(f.names, Not(f.body)).negate()
            elif isinstance(f, Call):
                raise CompileError(f"unexpanded call {f.name!r}")
            else:
                raise TypeError(type(f))
        except StateCapError as e:
            raise StateCapError(e.limit, f"in subformula {_summary(f)}") from e
        self._note(_summary(f), a, t0)
        self._memo[key] = a
        return a

    def _exists(self, names: tuple[str, ...], body: Formula) -> TrackDfa:
        a = self._compile(body)
        for v in names:
            if v in a.tracks:
                a = a.minimize().project(v, cap=self.cap).minimize()
        return a

    def _linear(self, f: Compare) -> TrackDfa:
        diff = f.lhs.plus(f.rhs.scaled(-1))
        coeffs = dict(diff.coeffs)
        c0 = diff.const
        rel = f.op
        if not coeffs:
            return TrackDfa.constant((), _rel_holds(rel, c0))
        tracks = tuple(sorted(coeffs))
        clamp = sum(abs(c) for c in coeffs.values()) + abs(c0) + 1
        width = len(tracks)
        incs = []
        for letter in range(1 << width):
            inc = 0
            for j, t in enumerate(tracks):
                if (letter >> (width - 1 - j)) & 1:
                    inc += coeffs[t]
            incs.append(inc)
        ids: dict[int, int] = {0: 0}
        order = [0]
        rows: list[list[int]] = []
        pos = 0
        while pos < len(order):
            s = order[pos]
            row = []
            for inc in incs:
                s2 = 2 * s + inc
                s2 = max(-clamp, min(clamp, s2))
                nxt = ids.get(s2)
                if nxt is None:
                    nxt = len(order)
                    ids[s2] = nxt
                    order.append(s2)
                row.append(nxt)
            rows.append(row)
            pos += 1
        accept = [_rel_holds(rel, s + c0) for s in order]
        return TrackDfa(tracks, rows, accept, 0).minimize()

    def _seq(self, f: SeqTest) -> TrackDfa:
        d1 = self._dfao(f.seq1)
        c1 = _term_const(f.idx1)
        if f.const is not None:
            if c1 is not None:
                return TrackDfa.constant((), (d1.eval(c1) == f.const) == f.equal)
            v = f.idx1.single_var()
            if v is not None:
                return self._seq_const_dfa(d1, v, f.const, f.equal)
            return self._lowered(f, (f.idx1,))
        # sequence-vs-sequence
        d2 = self._dfao(f.seq2)
        c2 = _term_const(f.idx2)
        if c1 is not None:
            return self._compile(SeqTest(f.seq2, f.idx2, f.equal, const=d1.eval(c1)))
        if c2 is not None:
            return self._compile(SeqTest(f.seq1, f.idx1, f.equal, const=d2.eval(c2)))
        v1, v2 = f.idx1.single_var(), f.idx2.single_var()
        if v1 is not None and v2 is not None:
            return self._seq_pair_dfa(d1, v1, d2, v2, f.equal)
        lower = [t for t, v in ((f.idx1, v1), (f.idx2, v2)) if v is None]
        return self._lowered(f, tuple(lower))

    def _lowered(self, f: SeqTest, terms: tuple[Term, ...]) -> TrackDfa:
        """Rewrite compound index terms via fresh existential variables."""
        names = [self.env.fresh_name("ix") for _ in terms]
        mapping = dict(zip((repr(t) for t in terms), names))

        def replace(t: Term) -> Term:
            nv = mapping.get(repr(t))
            return Term.variable(nv) if nv is not None else t

        inner = SeqTest(
            f.seq1,
            replace(f.idx1),
            f.equal,
            f.seq2,
            replace(f.idx2) if f.idx2 is not None else None,
            f.const,
        )
        conj: Formula = inner
        for t, nv in zip(terms, names):
            conj = Bin("&", Compare(Term.variable(nv), "=", t), conj)
        return self._compile(Quant("E", tuple(names), conj))

    def _dfao(self, name: str) -> Dfao:
        d = self.env.sequences.get(name)
        if d is None:
            raise CompileError(f"unknown sequence {name!r}")
        if d.base != 2:
            raise CompileError(f"sequence {name!r} is not base-2")
        return d

    def _seq_const_dfa(self, d: Dfao, var: str, const: int, equal: bool) -> TrackDfa:
        delta = [[row[0], row[1]] for row in d.delta]
        accept = [(o == const) == equal for o in d.out]
        return TrackDfa((var,), delta, accept, d.initial).minimize()

    def _seq_pair_dfa(self, d1: Dfao, v1: str, d2: Dfao, v2: str, equal: bool) -> TrackDfa:
        if v1 == v2:
            delta = []
            n2 = d2.n_states
            for q1 in range(d1.n_states):
                for q2 in range(n2):
                    delta.append([d1.delta[q1][b] * n2 + d2.delta[q2][b] for b in (0, 1)])
            accept = [
                (d1.out[q1] == d2.out[q2]) == equal
                for q1 in range(d1.n_states)
                for q2 in range(n2)
            ]
            init = d1.initial * n2 + d2.initial
            return TrackDfa((v1,), delta, accept, init).minimize()
        tracks = tuple(sorted((v1, v2)))
        first_is_1 = tracks[0] == v1
        n2 = d2.n_states
        delta = []
        for q1 in range(d1.n_states):
            for q2 in range(n2):
                row = []
                for letter in range(4):
                    b_hi, b_lo = (letter >> 1) & 1, letter & 1
                    b1, b2 = (b_hi, b_lo) if first_is_1 else (b_lo, b_hi)
                    row.append(d1.delta[q1][b1] * n2 + d2.delta[q2][b2])
                delta.append(row)
        accept = [
            (d1.out[q1] == d2.out[q2]) == equal
            for q1 in range(d1.n_states)
            for q2 in range(n2)
        ]
        init = d1.initial * n2 + d2.initial
        return TrackDfa(tracks, delta, accept, init).minimize()


def _term_const(t: Term) -> int | None:
    return t.const if not t.coeffs else None


def _rel_holds(rel: str, value: int) -> bool:
    if rel == "=":
        return value == 0
    if rel == "!=":
        return value != 0
    if rel == "<":
        return value < 0
    if rel == "<=":
        return value <= 0
    if rel == ">":
        return value > 0
    return value >= 0


def _summary(f: Formula, limit: int = 60) -> str:
    s = format_formula(f)
    return s if len(s) <= limit else s[: limit - 3] + "..."


def format_formula(f: Formula) -> str:
    if isinstance(f, Compare):
        return f"{f.lhs}{f.op}{f.rhs}"
    if isinstance(f, SeqTest):
        rel = "=" if f.equal else "!="
        rhs = str(f.const) if f.const is not None else f"{f.seq2}[{f.idx2}]"
        return f"{f.seq1}[{f.idx1}]{rel}{rhs}"
    if isinstance(f, Call):
        return f"{f.name}({', '.join(map(str, f.args))})"
    if isinstance(f, Not):
        return f"~({format_formula(f.body)})"
    if isinstance(f, Bin):
        return f"({format_formula(f.lhs)} {f.op} {format_formula(f.rhs)})"
    if isinstance(f, Quant):
        return f"{f.kind} {', '.join(f.names)} ({format_formula(f.body)})"
    raise TypeError(type(f))


def compile_formula(f: Formula | str, env: PredicateEnv, state_cap: int | None = None) -> TrackDfa:
    """Compile a formula; the result's tracks are exactly its free variables."""
    return Compiler(env, state_cap).compile(f)


def compile_predicate(env: PredicateEnv, name: str, state_cap: int | None = None) -> TrackDfa:
    """Compile a named definition, cylindrified onto its declared parameters."""
    d = env.defs.get(name)
    if d is None:
        raise CompileError(f"unknown predicate {name!r}")
    a = Compiler(env, state_cap).compile(Call(name, tuple(Term.variable(p) for p in d.params)))
    return a.cylindrify(d.params).minimize()


def decide_sentence(f: Formula | str, env: PredicateEnv, state_cap: int | None = None) -> bool:
    """Truth of a closed formula (compile, then check acceptance of the empty word)."""
    if isinstance(f, str):
        f = parse(f)
    fv = free_vars(env.expand(f))
    if fv:
        raise CompileError(f"sentence has free variables {sorted(fv)}")
    a = compile_formula(f, env, state_cap)
    return bool(a.accept[a.initial])


# ---------------------------------------------------------------------------
# independent bounded-domain evaluator (the oracle side of compile)


def eval_formula(
    f: Formula,
    seq_values: dict[str, "callable"],
    assignment: dict[str, int],
    bound: int | None = None,
    env: PredicateEnv | None = None,
) -> bool:
    """Evaluate formula semantics directly over sequence prefixes.

    Quantifiers range over [0, bound]; the default bound is generous for
    guard-bounded predicates (every corpus quantifier is bounded by a linear
    function of the free variables with small coefficients).
    """
    if env is not None:
        f = env.expand(f)
    if bound is None:
        bound = 4 * (sum(assignment.values()) + 1) + 64

    def term(t: Term, env_vals: dict[str, int]) -> int:
        return t.const + sum(c * env_vals[v] for v, c in t.coeffs)

    def rec(g: Formula, vals: dict[str, int]) -> bool:
        if isinstance(g, Compare):
            return _rel_holds(g.op, term(g.lhs, vals) - term(g.rhs, vals))
        if isinstance(g, SeqTest):
            a = seq_values[g.seq1](term(g.idx1, vals))
            b = g.const if g.const is not None else seq_values[g.seq2](term(g.idx2, vals))
            return (a == b) == g.equal
        if isinstance(g, Not):
            return not rec(g.body, vals)
        if isinstance(g, Bin):
            if g.op == "&":
                return rec(g.lhs, vals) and rec(g.rhs, vals)
            if g.op == "|":
                return rec(g.lhs, vals) or rec(g.rhs, vals)
            if g.op == "=>":
                return (not rec(g.lhs, vals)) or rec(g.rhs, vals)
            return rec(g.lhs, vals) == rec(g.rhs, vals)
        if isinstance(g, Quant):
            names = list(g.names)

            def q(i: int, vals2: dict[str, int]) -> bool:
                if i == len(names):
                    return rec(g.body, vals2)
                gen = (q(i + 1, {**vals2, names[i]: x}) for x in range(bound + 1))
                return any(gen) if g.kind == "E" else all(gen)

            return q(0, vals)
        if isinstance(g, Call):
            raise CompileError("eval_formula requires expanded formulas (pass env=)")
        raise TypeError(type(g))

    return rec(f, dict(assignment))


# ---------------------------------------------------------------------------
# shipped corpus


def corpus_dir():
    from importlib import resources

    return resources.files("circwords") / "corpus"


def load_corpus(env: PredicateEnv | None = None) -> PredicateEnv:
    """Load every shipped .pred file into a PredicateEnv."""
    env = env or PredicateEnv()
    root = corpus_dir()
    for entry in sorted(root.iterdir(), key=lambda e: e.name):
        if entry.name.endswith(".pred"):
            env.add_file(entry.read_text(), source=entry.name)
    return env


def bind_standard_sequences(env: PredicateEnv) -> PredicateEnv:
    from circwords.sequences import ternary_tm_dfao, tm_dfao

    if "T" not in env.sequences:
        env.add_sequence("T", tm_dfao())
    if "C" not in env.sequences:
        env.add_sequence("C", ternary_tm_dfao())
    return env
