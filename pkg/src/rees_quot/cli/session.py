"""Command execution and JSON-line reporting."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .. import spectool
from ..finoracle import OracleMismatch, SearchBounds, crosscheck, search_localization_question
from ..finoracle.model import default_cap
from ..polyalg import GF, QQ
from ..reesfam import RabElement, RabRing, RootData, duplication, idealization, make_rab, verify_factorization
from ..ringcore import IdealHandle, RingElement, RingHandle, TriState, Unknown, define_quotient_ring, define_zmod
from .grammar import (
    AttachRoots,
    Command,
    DefineIdeal,
    DefineRab,
    DefineRing,
    OracleCheck,
    Query,
    Search,
    SetConfig,
    render_command,
)

__all__ = ["Session", "execute", "jsonable"]


class SessionNameError(NameError):
    pass


@dataclass
class Session:
    symbols: dict = field(default_factory=dict)
    config: dict = field(default_factory=dict)
    relative_roots: dict = field(default_factory=dict)  # (rab name, prime) -> RootData

    def __post_init__(self):
        self.config.setdefault("cap", default_cap())
        self.config.setdefault("seed", 0)

    def bind(self, name: str, value):
        if name in self.symbols:
            raise SessionNameError(f"{name!r} is already defined")
        self.symbols[name] = value

    def lookup(self, name: str, kind=None):
        if name not in self.symbols:
            raise SessionNameError(f"{name!r} is not defined")
        value = self.symbols[name]
        if kind is not None and not isinstance(value, kind):
            raise TypeError(f"{name!r} is a {type(value).__name__}, expected {kind.__name__}")
        return value


def jsonable(x):
    """Plain JSON data for results and witnesses."""
    if x is None or isinstance(x, (bool, int, float, str)):
        return x
    if isinstance(x, (RingElement, RabElement, IdealHandle, RingHandle, RabRing)):
        return str(x)
    if isinstance(x, TriState):
        return {"value": str(x), "provenance": x.provenance, "reason": x.reason}
    if isinstance(x, Unknown):
        return {"value": "unknown", "reason": x.reason}
    if isinstance(x, RootData):
        return {k: jsonable(getattr(x, k)) for k in ("alpha", "beta", "gamma", "p_corr", "modulus")}
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    return str(x)


def _status(ts) -> str:
    return "unknown" if isinstance(ts, Unknown) or (isinstance(ts, TriState) and ts.is_unknown) else "ok"


# ---------------------------------------------------------------------------
# command handlers: each returns (status, result, witness)


def _define_ring(s: Session, c: DefineRing):
    if c.kind == "zmod":
        R = define_zmod(c.modulus)
    else:
        fld = QQ if c.field[0] == "QQ" else GF(c.field[1])
        asserted = {k: v for k, v in (("reduced", c.reduced), ("domain", c.domain)) if v is not None}
        R = define_quotient_ring(fld, list(c.variables), c.order, c.relations, asserted=asserted)
        if c.minprimes is not None:
            R._minprime_gens = [[R(g) for g in gens] for gens in c.minprimes]
    s.bind(c.name, R)
    return "ok", {"defined": c.name, "value": str(R), "size": R.size}, None


def _ideal(s: Session, R: RingHandle, ref) -> IdealHandle:
    if isinstance(ref, str):
        I = s.lookup(ref, IdealHandle)
        if I.owner != R:
            raise TypeError(f"{ref!r} is an ideal of a different ring")
        return I
    return R.ideal([R(g) for g in ref])


def _define_ideal(s: Session, c: DefineIdeal):
    R = s.lookup(c.ring, RingHandle)
    I = _ideal(s, R, c.gens)
    s.bind(c.name, I)
    return "ok", {"defined": c.name, "value": str(I)}, None


def _define_rab(s: Session, c: DefineRab):
    R = s.lookup(c.ring, RingHandle)
    I = _ideal(s, R, c.ideal)
    if c.kind == "idealization":
        rr = idealization(R, I)
    elif c.kind == "duplication":
        rr = duplication(R, I)
    else:
        rr = make_rab(R, I, R(c.a), R(c.b))
    s.bind(c.name, rr)
    return "ok", {"defined": c.name, "value": str(rr), "size": rr.size}, None


def _prime(rr: RabRing, gens) -> IdealHandle:
    R = rr.base
    return R.ideal([R(g) for g in gens])


def _attach_roots(s: Session, c: AttachRoots):
    rr = s.lookup(c.target, RabRing)
    R = rr.base
    alpha = R(c.alpha)
    beta = None if c.beta is None else R(c.beta)
    gamma = None if c.gamma is None else R(c.gamma)
    if c.prime is None:
        roots = RootData.make(rr.a, rr.b, alpha, beta, gamma)
        verify_factorization(rr, roots)
        return "ok", {"roots": jsonable(roots), "scope": "R[t]"}, None
    P = _prime(rr, c.prime)
    roots = RootData.make(rr.a, rr.b, alpha, beta, gamma, modulus=P)
    verify_factorization(rr, roots)
    s.relative_roots[(c.target, P.gens)] = roots
    return "ok", {"roots": jsonable(roots), "scope": f"mod {P}"}, None


def _fiber_json(fib: spectool.FiberResult) -> dict:
    return {
        "prime": str(fib.base_prime),
        "case": "reducible" if fib.reducible else "irreducible",
        "merged": fib.merged,
        "primes": [d.describe() for d in fib.primes],
        "roots": jsonable(fib.roots),
    }


def _query(s: Session, c: Query):
    rr = s.lookup(c.target, RabRing)
    if c.kind == "is_reduced":
        ts = spectool.is_reduced_rab(rr)
        w = ts.witness
        witness = None if w is None else {"element": str(w), "square": str(w * w)}
        return _status(ts), {"reduced": jsonable(ts)}, witness
    if c.kind == "is_domain":
        ts = spectool.is_domain_rab(rr)
        return _status(ts), {"domain": jsonable(ts)}, jsonable(ts.witness)
    if c.kind == "minimal_primes":
        mins = spectool.minimal_primes_rab(rr)
        if isinstance(mins, Unknown):
            return "unknown", {"minimal_primes": jsonable(mins)}, None
        return "ok", {"count": len(mins), "minimal_primes": [d.describe() for d in mins]}, None
    if c.kind == "recognize":
        if rr.roots is None or not rr.roots.is_global:
            found = spectool.find_global_roots(rr)
            if found is not None:
                rr.attach_roots(found)
        rep = spectool.recognize_special(rr)
        result = {
            "idealization": jsonable(rep.idealization),
            "duplication": jsonable(rep.duplication),
            "idealization_target": jsonable(rep.idealization_target),
            "duplication_target": jsonable(rep.duplication_target),
            "notes": rep.notes,
        }
        beta, diff = rr.roots.beta, rr.roots.alpha - rr.roots.beta
        witness = {}
        if rep.idealization_map is not None:
            literal = bool(rep.notes)
            witness["idealization_map"] = "r + it -> r + it" if literal else f"r + it -> (r + ({beta})i) + it"
        if rep.duplication_map is not None:
            witness["duplication_map"] = f"r + it -> (r + ({beta})i) + ({diff})it"
        status = "unknown" if rep.idealization.is_unknown and rep.duplication.is_unknown else "ok"
        return status, result, witness or None
    P = _prime(rr, c.prime)
    roots = s.relative_roots.get((c.target, P.gens))
    if c.kind == "fiber":
        fib = spectool.fiber_over_prime(rr, P, roots)
        return "ok", _fiber_json(fib), jsonable(fib.merged_witness)
    rep = spectool.localization_class(rr, P, roots)
    result = {"case": rep.case, "lambda": jsonable(rep.lam), "p_corr_ok": rep.p_corr_ok, "notes": rep.notes}
    return "ok", result, jsonable(rep.roots)


def _oracle(s: Session, c: OracleCheck):
    rr = s.lookup(c.target, RabRing)
    rep = crosscheck(rr, s.config["cap"])
    return "ok", rep.as_dict(), None


def _search(s: Session, c: Search, emit):
    params = dict(c.params)
    params.setdefault("seed", s.config["seed"])
    bounds = SearchBounds.from_dict(params)
    stats = {}

    def sink(line):
        emit({"cmd": "search locq candidate", "status": "ok", "result": json.loads(line), "witness": None})

    found = search_localization_question(bounds, sink, stats)
    counter = [r for r in found if r["counterexample"]]
    result = {"stats": stats, "candidates": len(found), "counterexamples": len(counter)}
    result["verdict"] = "counterexample found" if counter else "no counterexample"
    return "ok", result, counter[0] if counter else None


def _set(s: Session, c: SetConfig):
    if c.key not in ("cap", "seed"):
        raise KeyError(f"unknown setting {c.key!r}")
    if not isinstance(c.value, int):
        raise TypeError(f"{c.key} takes an integer")
    s.config[c.key] = c.value
    return "ok", {c.key: c.value}, None


_HANDLERS = {
    DefineRing: _define_ring,
    DefineIdeal: _define_ideal,
    DefineRab: _define_rab,
    AttachRoots: _attach_roots,
    Query: _query,
    OracleCheck: _oracle,
    SetConfig: _set,
}


def _text(line: dict) -> str:
    head = f"[{line['status']}] {line['cmd']}"
    res = line["result"]
    if line["status"] == "error":
        return f"{head}: {res['error']}: {res['message']}"
    body = json.dumps(res, sort_keys=True, ensure_ascii=False)
    if line["witness"] is not None:
        body += f"\n    witness: {json.dumps(line['witness'], sort_keys=True, ensure_ascii=False)}"
    return f"{head}\n    {body}"


def execute(session: Session, commands: list[Command], json_sink=None, text_sink=None) -> int:
    """Run commands in order; returns 0, or 1 if any command reported an error."""
    failed = False

    def emit(line):
        if json_sink is not None:
            json_sink(json.dumps(line, sort_keys=True, ensure_ascii=False))
        if text_sink is not None:
            text_sink(_text(line))

    for c in commands:
        cmd = render_command(c)
        try:
            if isinstance(c, Search):
                status, result, witness = _search(session, c, emit)
            else:
                status, result, witness = _HANDLERS[type(c)](session, c)
            line = {"cmd": cmd, "status": status, "result": jsonable(result), "witness": jsonable(witness)}
        except Exception as exc:  # every backend refusal becomes an error line
            failed = True
            tag = type(exc).__name__
            if isinstance(exc, SessionNameError):
                tag = "NameError"
            witness = jsonable(exc.witness) if isinstance(exc, OracleMismatch) else None
            line = {"cmd": cmd, "status": "error", "result": {"error": tag, "message": str(exc)}, "witness": witness}
        emit(line)
    return 1 if failed else 0
