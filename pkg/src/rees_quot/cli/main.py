"""``rees-quot`` entry point."""

from __future__ import annotations

import argparse
import os
import sys

from ..expr import ParseError
from .grammar import parse_script
from .session import Session, execute

EXIT_OK, EXIT_ERROR, EXIT_PARSE = 0, 1, 2


def _session(args) -> Session:
    config = {"seed": args.seed}
    if args.cap is not None:
        config["cap"] = args.cap
    return Session(config=config)


def _sinks(json_only: bool):
    def out(line):
        print(line, flush=True)

    def err(text):
        print(text, file=sys.stderr, flush=True)

    return out, (None if json_only else err)


def run(args) -> int:
    try:
        with open(args.script, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        print(f"rees-quot: {exc}", file=sys.stderr)
        return EXIT_ERROR
    try:
        commands = parse_script(text)
    except ParseError as exc:
        print(f"{args.script}:{exc.line}:{exc.col}: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    json_sink, text_sink = _sinks(args.json_only)
    return execute(_session(args), commands, json_sink, text_sink)


def repl(args) -> int:
    session = _session(args)
    json_sink, text_sink = _sinks(args.json_only)
    interactive = sys.stdin.isatty()
    buf, status = "", EXIT_OK
    while True:
        if interactive:
            sys.stderr.write("... " if buf.strip() else "rq> ")
            sys.stderr.flush()
        line = sys.stdin.readline()
        if not line:
            break
        buf += line
        if ";" not in line:
            continue
        try:
            commands = parse_script(buf)
        except ParseError as exc:
            # the statement may continue on the next line
            if exc.found == "end of input":
                continue
            print(f"parse error: {exc}", file=sys.stderr)
            buf, status = "", EXIT_PARSE
            continue
        buf = ""
        if execute(session, commands, json_sink, text_sink) and status == EXIT_OK:
            status = EXIT_ERROR
    return status


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="rees-quot", description="Primes, reducedness and recognition for R(I)_{a,b}.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json-only", action="store_true", help="suppress the text rendering on stderr")
    common.add_argument("--cap", type=int, default=None, help="element cap for finite models (env REES_QUOT_CAP)")
    common.add_argument("--seed", type=int, default=0, help="seed for sampled sweeps")
    sub = p.add_subparsers(dest="command", required=True)
    r = sub.add_parser("run", parents=[common], help="execute a script")
    r.add_argument("script")
    r.set_defaults(func=run)
    q = sub.add_parser("repl", parents=[common], help="read statements from stdin")
    q.set_defaults(func=repl)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.cap is None and "REES_QUOT_CAP" in os.environ:
        args.cap = int(os.environ["REES_QUOT_CAP"])
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
