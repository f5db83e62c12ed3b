"""Command-line front end: identity verification, series expansion, and
exhaustive enumeration, with machine-readable output for scripting.

Exit codes are stable: 0 success (identities equal, oracles matched),
1 an identity or oracle check failed, 2 parse error, 3 size guard.
Configuration precedence is flags > TREECALC_* environment variables >
an optional JSON config file passed with --config.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import identities
from .arith import QPoly
from .combinat import (
    BinaryTree,
    PlaneTree,
    binary_trees,
    mary_trees,
    packed_words,
    permutations,
    plane_trees,
)
from .errors import ParseError, SizeGuardError, TreecalcError
from .fqsym import tree_term
from .series import TruncatedSeries, fixed_point_binary, fixed_point_mary, integrate

DEFAULT_MAX_DEGREE = 7
DEFAULT_ORDER = 8


@dataclass
class CliConfig:
    max_degree: int = DEFAULT_MAX_DEGREE
    truncation_order: int = DEFAULT_ORDER
    output_format: str = "text"
    unsafe_large: bool = False


def load_config(args: argparse.Namespace) -> CliConfig:
    config = CliConfig()
    try:
        if getattr(args, "config", None):
            with open(args.config, "r", encoding="utf-8") as handle:
                data = json.load(handle)
            config.max_degree = int(data.get("max_degree", config.max_degree))
            config.truncation_order = int(
                data.get("truncation_order", config.truncation_order)
            )
            config.output_format = data.get("output_format", config.output_format)
            config.unsafe_large = bool(data.get("unsafe_large", config.unsafe_large))
        if "TREECALC_MAX_DEGREE" in os.environ:
            config.max_degree = int(os.environ["TREECALC_MAX_DEGREE"])
        if "TREECALC_ORDER" in os.environ:
            config.truncation_order = int(os.environ["TREECALC_ORDER"])
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"bad configuration: {exc}") from exc
    if getattr(args, "format", None):
        config.output_format = args.format
    if getattr(args, "unsafe_large", False):
        config.unsafe_large = True
    return config


def _print_payload(payload: dict, config: CliConfig, text_lines) -> None:
    if config.output_format == "json":
        print(json.dumps(payload, indent=2))
    elif config.output_format == "csv":
        rows = payload.get("per_tree") or payload.get("items") or []
        if rows and isinstance(rows[0], dict):
            header = list(rows[0])
            print(",".join(header))
            for row in rows:
                print(",".join(str(row[h]) for h in header))
        else:
            for row in rows:
                print(row)
    else:
        for line in text_lines:
            print(line)


# ---------------------------------------------------------------------------
# hook
# ---------------------------------------------------------------------------


def cmd_hook(args: argparse.Namespace, config: CliConfig) -> int:
    tree = BinaryTree.from_text(args.tree)
    if tree.is_empty:
        raise ParseError("the empty tree has no hook data")
    statistic = args.q
    if statistic == "none":
        value = identities.hook_count(tree)
    elif statistic == "imaj":
        value = identities.qhook_imaj(tree)
    else:
        value = identities.qhook_inv(tree)

    payload: dict = {
        "tree": tree.text,
        "nodes": tree.node_count,
        "statistic": None if statistic == "none" else statistic,
        "value": str(value),
    }
    lines = [str(value)]
    exit_code = 0

    if args.oracle:
        if tree.node_count > config.max_degree and not config.unsafe_large:
            raise SizeGuardError(
                f"oracle over S_{tree.node_count} exceeds max degree "
                f"{config.max_degree}; pass --unsafe-large to force"
            )
        fiber = identities.hook_fiber(tree, unsafe_large=True)
        if statistic == "none":
            oracle_value = Fraction(len(fiber))
        else:
            stat = (lambda p: p.imaj()) if statistic == "imaj" else (
                lambda p: p.inversions()
            )
            oracle_value = QPoly.zero()
            for p in fiber:
                oracle_value = oracle_value + QPoly.monomial(stat(p))
        match = oracle_value == value
        payload["oracle"] = {"value": str(oracle_value), "match": match}
        lines.append(f"oracle: {oracle_value} ({'match' if match else 'MISMATCH'})")
        if not match:
            exit_code = 1

    if args.dump:
        if tree.node_count > config.max_degree and not config.unsafe_large:
            raise SizeGuardError(
                f"element dump of a {tree.node_count}-node tree exceeds max "
                f"degree {config.max_degree}; pass --unsafe-large to force"
            )
        element = tree_term(tree)
        payload["element"] = element.to_json()
        lines.append(json.dumps(element.to_json()))

    _print_payload(payload, config, lines)
    return exit_code


# ---------------------------------------------------------------------------
# identity
# ---------------------------------------------------------------------------


def cmd_identity(args: argparse.Namespace, config: CliConfig) -> int:
    name = args.name
    if name == "postnikov":
        if args.n is None:
            raise ParseError("identity postnikov needs --n")
        report = identities.postnikov_check(args.n)
    elif name == "eisenstein":
        order = args.order if args.order is not None else config.truncation_order
        report = identities.eisenstein_check(order)
    elif name == "duliu":
        if args.n is None:
            raise ParseError("identity duliu needs --n")
        report = identities.duliu_check(args.variant, args.n, args.m)
    elif name == "lagrange":
        order = args.order if args.order is not None else config.truncation_order
        report = identities.lagrange_fixed_point_check(args.m, order)
    elif name == "ft":
        if not args.tree:
            raise ParseError("identity ft needs --tree")
        tree = PlaneTree.from_text(args.tree)
        formula = identities.ft_coefficients(tree)
        oracle = identities.ft_brute_force(tree, unsafe_large=config.unsafe_large)
        report = identities.IdentityReport(
            name="ft",
            parameters={"tree": tree.text},
            lhs=json.dumps({str(k): v for k, v in formula.items()}),
            rhs=json.dumps({str(k): v for k, v in oracle.items()}),
            equal=formula == oracle,
        )
    else:
        raise ParseError(f"unknown identity {name!r}")

    payload = report.to_json(include_per_tree=args.per_tree)
    lines = [
        f"identity={report.name} equal={'true' if report.equal else 'false'}",
        f"lhs={report.lhs}",
        f"rhs={report.rhs}",
    ]
    _print_payload(payload, config, lines)
    return 0 if report.equal else 1


# ---------------------------------------------------------------------------
# expand
# ---------------------------------------------------------------------------


def _inverse_linear_operator(x: TruncatedSeries, y: TruncatedSeries) -> TruncatedSeries:
    return integrate(x * y)


def cmd_expand(args: argparse.Namespace, config: CliConfig) -> int:
    order = args.order if args.order is not None else config.truncation_order
    equation = args.equation
    if equation == "inverse-linear":
        one = TruncatedSeries.constant(Fraction(1), order)
        expansion = fixed_point_binary(_inverse_linear_operator, one, order)
    elif equation == "postnikov":
        one = TruncatedSeries.constant(Fraction(1), order)
        expansion = fixed_point_binary(identities.postnikov_operator, one, order)
    elif equation == "duliu":
        expansion = fixed_point_mary(identities.lagrange_operator(args.m), args.m, order)
    elif equation == "plane-q":
        expansion = identities.plane_q_expansion(order)
    else:
        raise ParseError(f"unknown equation {equation!r}")

    total = expansion.total
    payload: dict = {
        "equation": equation,
        "order": order,
        "series": total.to_json(),
    }
    lines = [str(total)]
    if args.per_tree:
        payload["per_tree"] = [
            {"tree": tree.text, "term": json.dumps(
                term.to_json() if hasattr(term, "to_json") else str(term))}
            for tree, term in expansion.terms
        ]
        for tree, term in expansion.terms:
            lines.append(f"{tree.text}: {term}")
    _print_payload(payload, config, lines)
    return 0


# ---------------------------------------------------------------------------
# enumerate
# ---------------------------------------------------------------------------


def cmd_enumerate(args: argparse.Namespace, config: CliConfig) -> int:
    n = args.n
    unsafe = config.unsafe_large
    family = args.family
    if family == "binary-trees":
        stream = binary_trees(n, unsafe_large=unsafe)
    elif family == "mary-trees":
        stream = mary_trees(args.m, n, unsafe_large=unsafe)
    elif family == "plane-trees":
        stream = plane_trees(n, unsafe_large=unsafe)
    elif family == "permutations":
        stream = permutations(n, unsafe_large=unsafe)
    elif family == "packed-words":
        stream = packed_words(n, unsafe_large=unsafe)
    else:
        raise ParseError(f"unknown family {family!r}")

    if args.count_only:
        count = sum(1 for _ in stream)
        _print_payload(
            {"family": family, "n": n, "count": count}, config, [str(count)]
        )
        return 0

    items = [str(item) for item in stream]
    _print_payload(
        {"family": family, "n": n, "items": items}, config, items
    )
    return 0


# ---------------------------------------------------------------------------
# parser and entry point
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="treecalc",
        description="Exact tree-expansion calculus and hook-length identity checks.",
    )
    parser.add_argument("--format", choices=("text", "json", "csv"), default=None)
    parser.add_argument("--config", default=None, help="path to a JSON config file")
    parser.add_argument(
        "--unsafe-large",
        action="store_true",
        help="override the enumeration size guards",
    )

    # the global flags are also accepted after the subcommand; SUPPRESS
    # keeps an absent flag from clobbering the top-level value
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--format", choices=("text", "json", "csv"), default=argparse.SUPPRESS
    )
    common.add_argument("--config", default=argparse.SUPPRESS)
    common.add_argument(
        "--unsafe-large", action="store_true", default=argparse.SUPPRESS
    )

    sub = parser.add_subparsers(dest="command", required=True)

    p_hook = sub.add_parser(
        "hook", parents=[common], help="hook-length values of a binary tree"
    )
    p_hook.add_argument("tree", help="tree in the (left,right) grammar, '_' empty")
    p_hook.add_argument("--q", choices=("imaj", "inv", "none"), default="none")
    p_hook.add_argument("--oracle", action="store_true")
    p_hook.add_argument("--dump", action="store_true",
                        help="dump the fiber element as JSON")
    p_hook.set_defaults(func=cmd_hook)

    p_id = sub.add_parser(
        "identity", parents=[common], help="verify an identity from the suite"
    )
    p_id.add_argument(
        "name", choices=("postnikov", "eisenstein", "duliu", "lagrange", "ft")
    )
    p_id.add_argument("--n", type=int, default=None)
    p_id.add_argument("--m", type=int, default=1)
    p_id.add_argument("--order", type=int, default=None)
    p_id.add_argument("--variant", choices=("las1", "las2", "las3"), default="las2")
    p_id.add_argument("--tree", default=None)
    p_id.add_argument("--per-tree", action="store_true", dest="per_tree")
    p_id.set_defaults(func=cmd_identity)

    p_exp = sub.add_parser(
        "expand", parents=[common], help="tree-expand a fixed-point equation"
    )
    p_exp.add_argument(
        "equation", choices=("inverse-linear", "postnikov", "duliu", "plane-q")
    )
    p_exp.add_argument("--order", type=int, default=None)
    p_exp.add_argument("--m", type=int, default=1)
    p_exp.add_argument("--per-tree", action="store_true", dest="per_tree")
    p_exp.set_defaults(func=cmd_expand)

    p_enum = sub.add_parser(
        "enumerate", parents=[common], help="stream a combinatorial family"
    )
    p_enum.add_argument(
        "family",
        choices=(
            "binary-trees",
            "mary-trees",
            "plane-trees",
            "permutations",
            "packed-words",
        ),
    )
    p_enum.add_argument("--n", type=int, required=True)
    p_enum.add_argument("--m", type=int, default=1)
    p_enum.add_argument("--count-only", action="store_true", dest="count_only")
    p_enum.set_defaults(func=cmd_enumerate)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = load_config(args)
        return args.func(args, config)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except SizeGuardError as exc:
        print(f"size guard: {exc}", file=sys.stderr)
        return 3
    except TreecalcError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
