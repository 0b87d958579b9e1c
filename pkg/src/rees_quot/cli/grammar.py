"""Script grammar.

::

    ring R = zmod(16);
    ring S = quotient(GF(2), vars=[x, y], order=degrevlex, mod=[x*y]);
    ring T = quotient(QQ, vars=[u, v], mod=[u*v], reduced=true, minprimes=[[u], [v]]);
    ideal I = span(S, [y]);
    rab A = rab(S, I, a=x, b=y^2);
    rab B = idealization(R, [2]);
    roots A with alpha=y+x;
    roots A with alpha=y, gamma=1 over prime=[x];
    query fiber A over prime=[x];
    query localization A over prime=[x];
    query is_reduced A;   # also is_domain, minimal_primes, recognize
    check oracle A;
    search locq n_max=12, pairs=50, seed=3;
    set cap = 5000;

Statements end with ``;``.  ``#`` starts a comment.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..expr import Expr, ParseError, TokenStream, parse_expr, render, tokenize

__all__ = [
    "DefineRing",
    "DefineIdeal",
    "DefineRab",
    "AttachRoots",
    "Query",
    "OracleCheck",
    "Search",
    "SetConfig",
    "Command",
    "QUERY_KINDS",
    "parse_script",
    "render_command",
]

QUERY_KINDS = ("is_reduced", "is_domain", "fiber", "minimal_primes", "localization", "recognize")
_NEEDS_PRIME = ("fiber", "localization")


@dataclass(frozen=True)
class DefineRing:
    name: str
    kind: str  # zmod | quotient
    modulus: int | None = None
    field: tuple | None = None  # ("GF", p) or ("QQ", 0)
    variables: tuple = ()
    order: str = "degrevlex"
    relations: tuple = ()
    reduced: bool | None = None
    domain: bool | None = None
    minprimes: tuple | None = None  # tuple of tuples of Expr


@dataclass(frozen=True)
class DefineIdeal:
    name: str
    ring: str
    gens: tuple


@dataclass(frozen=True)
class DefineRab:
    name: str
    kind: str  # rab | idealization | duplication
    ring: str
    ideal: str | tuple  # a bound name or an inline generator list
    a: Expr | None = None
    b: Expr | None = None


@dataclass(frozen=True)
class AttachRoots:
    target: str
    alpha: Expr
    beta: Expr | None = None
    gamma: Expr | None = None
    prime: tuple | None = None


@dataclass(frozen=True)
class Query:
    kind: str
    target: str
    prime: tuple | None = None


@dataclass(frozen=True)
class OracleCheck:
    target: str


@dataclass(frozen=True)
class Search:
    params: tuple = ()  # ((key, int), ...)


@dataclass(frozen=True)
class SetConfig:
    key: str
    value: int | str


Command = DefineRing | DefineIdeal | DefineRab | AttachRoots | Query | OracleCheck | Search | SetConfig


# ---------------------------------------------------------------------------
# parsing


def _name(ts: TokenStream, what: str = "a name") -> str:
    return ts.expect_kind("NAME", what).text


def _int(ts: TokenStream) -> int:
    neg = ts.accept("-")
    v = int(ts.expect_kind("INT", "an integer").text)
    return -v if neg else v


def _bool(ts: TokenStream) -> bool:
    tok = ts.peek()
    if ts.accept("true"):
        return True
    if ts.accept("false"):
        return False
    raise ParseError(tok.line, tok.col, "true or false", tok.text or "end of input")


def _list(ts: TokenStream, item) -> tuple:
    ts.expect("[")
    out = []
    if not ts.at("]"):
        out.append(item(ts))
        while ts.accept(","):
            out.append(item(ts))
    ts.expect("]")
    return tuple(out)


def _exprs(ts: TokenStream) -> tuple:
    return _list(ts, parse_expr)


def _keyword_args(ts: TokenStream, handlers: dict) -> dict:
    """``key=value`` pairs separated by commas, each key at most once."""
    out = {}
    while True:
        tok = ts.peek()
        key = _name(ts, "a keyword")
        if key not in handlers:
            raise ParseError(tok.line, tok.col, " or ".join(handlers), key)
        if key in out:
            raise ParseError(tok.line, tok.col, "a new keyword", key)
        ts.expect("=")
        out[key] = handlers[key](ts)
        if not ts.accept(","):
            return out


def _field(ts: TokenStream) -> tuple:
    tok = ts.peek()
    if ts.accept("QQ"):
        return ("QQ", 0)
    if ts.accept("GF"):
        ts.expect("(")
        p = _int(ts)
        ts.expect(")")
        return ("GF", p)
    raise ParseError(tok.line, tok.col, "GF(p) or QQ", tok.text or "end of input")


def _ring(ts: TokenStream, name: str) -> DefineRing:
    tok = ts.peek()
    if ts.accept("zmod"):
        ts.expect("(")
        n = _int(ts)
        ts.expect(")")
        return DefineRing(name, "zmod", modulus=n)
    if ts.accept("quotient"):
        ts.expect("(")
        fld = _field(ts)
        ts.expect(",")
        kw = _keyword_args(
            ts,
            {
                "vars": lambda t: _list(t, _name),
                "order": _name,
                "mod": _exprs,
                "reduced": _bool,
                "domain": _bool,
                "minprimes": lambda t: _list(t, _exprs),
            },
        )
        ts.expect(")")
        if "vars" not in kw:
            raise ParseError(tok.line, tok.col, "vars=[...]")
        return DefineRing(
            name,
            "quotient",
            field=fld,
            variables=kw["vars"],
            order=kw.get("order", "degrevlex"),
            relations=kw.get("mod", ()),
            reduced=kw.get("reduced"),
            domain=kw.get("domain"),
            minprimes=kw.get("minprimes"),
        )
    raise ParseError(tok.line, tok.col, "zmod or quotient", tok.text or "end of input")


def _ideal_ref(ts: TokenStream):
    if ts.at("["):
        return _exprs(ts)
    return _name(ts, "an ideal name or [generators]")


def _rab(ts: TokenStream, name: str) -> DefineRab:
    tok = ts.peek()
    kind = _name(ts, "rab, idealization or duplication")
    if kind not in ("rab", "idealization", "duplication"):
        raise ParseError(tok.line, tok.col, "rab, idealization or duplication", kind)
    ts.expect("(")
    ring = _name(ts, "a ring name")
    ts.expect(",")
    ideal = _ideal_ref(ts)
    a = b = None
    if kind == "rab":
        ts.expect(",")
        kw = _keyword_args(ts, {"a": parse_expr, "b": parse_expr})
        if set(kw) != {"a", "b"}:
            t = ts.peek()
            raise ParseError(t.line, t.col, "both a= and b=")
        a, b = kw["a"], kw["b"]
    ts.expect(")")
    return DefineRab(name, kind, ring, ideal, a, b)


def _over_prime(ts: TokenStream):
    ts.expect("over")
    ts.expect("prime")
    ts.expect("=")
    return _exprs(ts)


def _statement(ts: TokenStream) -> Command:
    tok = ts.peek()
    if ts.accept("ring"):
        name = _name(ts)
        ts.expect("=")
        return _ring(ts, name)
    if ts.accept("ideal"):
        name = _name(ts)
        ts.expect("=")
        ts.expect("span")
        ts.expect("(")
        ring = _name(ts, "a ring name")
        ts.expect(",")
        gens = _exprs(ts)
        ts.expect(")")
        return DefineIdeal(name, ring, gens)
    if ts.accept("rab"):
        name = _name(ts)
        ts.expect("=")
        return _rab(ts, name)
    if ts.accept("roots"):
        target = _name(ts)
        ts.expect("with")
        kw = _keyword_args(ts, {"alpha": parse_expr, "beta": parse_expr, "gamma": parse_expr})
        if "alpha" not in kw:
            t = ts.peek()
            raise ParseError(t.line, t.col, "alpha=")
        prime = _over_prime(ts) if ts.at("over") else None
        return AttachRoots(target, kw["alpha"], kw.get("beta"), kw.get("gamma"), prime)
    if ts.accept("query"):
        kt = ts.peek()
        kind = _name(ts, "a query kind")
        if kind not in QUERY_KINDS:
            raise ParseError(kt.line, kt.col, "one of " + ", ".join(QUERY_KINDS), kind)
        target = _name(ts)
        prime = _over_prime(ts) if kind in _NEEDS_PRIME else None
        return Query(kind, target, prime)
    if ts.accept("check"):
        ts.expect("oracle")
        return OracleCheck(_name(ts))
    if ts.accept("search"):
        ts.expect("locq")
        params = ()
        if ts.peek().kind == "NAME":
            kw = _keyword_args(ts, {k: _int for k in ("n_min", "n_max", "pairs", "seed")})
            params = tuple(sorted(kw.items()))
        return Search(params)
    if ts.accept("set"):
        key = _name(ts, "a setting")
        ts.expect("=")
        value = _int(ts) if ts.peek().kind in ("INT",) or ts.at("-") else _name(ts, "a value")
        return SetConfig(key, value)
    raise ParseError(tok.line, tok.col, "a statement", tok.text or "end of input")


def parse_script(text: str) -> list[Command]:
    ts = TokenStream(tokenize(text))
    out = []
    while ts.peek().kind != "EOF":
        if ts.accept(";"):
            continue
        out.append(_statement(ts))
        ts.expect(";")
    return out


# ---------------------------------------------------------------------------
# rendering


def _rl(items) -> str:
    return "[" + ", ".join(render(e) for e in items) + "]"


def _bool_text(v: bool) -> str:
    return "true" if v else "false"


def render_command(c: Command) -> str:
    """Script text for a command; ``parse_script`` returns an equal command."""
    if isinstance(c, DefineRing):
        if c.kind == "zmod":
            return f"ring {c.name} = zmod({c.modulus});"
        fld = "QQ" if c.field[0] == "QQ" else f"GF({c.field[1]})"
        parts = [fld, f"vars=[{', '.join(c.variables)}]", f"order={c.order}"]
        if c.relations:
            parts.append(f"mod={_rl(c.relations)}")
        if c.reduced is not None:
            parts.append(f"reduced={_bool_text(c.reduced)}")
        if c.domain is not None:
            parts.append(f"domain={_bool_text(c.domain)}")
        if c.minprimes is not None:
            parts.append("minprimes=[" + ", ".join(_rl(g) for g in c.minprimes) + "]")
        return f"ring {c.name} = quotient({', '.join(parts)});"
    if isinstance(c, DefineIdeal):
        return f"ideal {c.name} = span({c.ring}, {_rl(c.gens)});"
    if isinstance(c, DefineRab):
        ideal = c.ideal if isinstance(c.ideal, str) else _rl(c.ideal)
        if c.kind == "rab":
            return f"rab {c.name} = rab({c.ring}, {ideal}, a={render(c.a)}, b={render(c.b)});"
        return f"rab {c.name} = {c.kind}({c.ring}, {ideal});"
    if isinstance(c, AttachRoots):
        kw = [f"alpha={render(c.alpha)}"]
        if c.beta is not None:
            kw.append(f"beta={render(c.beta)}")
        if c.gamma is not None:
            kw.append(f"gamma={render(c.gamma)}")
        over = f" over prime={_rl(c.prime)}" if c.prime is not None else ""
        return f"roots {c.target} with {', '.join(kw)}{over};"
    if isinstance(c, Query):
        over = f" over prime={_rl(c.prime)}" if c.prime is not None else ""
        return f"query {c.kind} {c.target}{over};"
    if isinstance(c, OracleCheck):
        return f"check oracle {c.target};"
    if isinstance(c, Search):
        args = ", ".join(f"{k}={v}" for k, v in c.params)
        return f"search locq {args};" if args else "search locq;"
    if isinstance(c, SetConfig):
        return f"set {c.key} = {c.value};"
    raise TypeError(f"not a command: {c!r}")
