"""Command line front end.

Subcommands cover validation (check), dimension and representative
reports (cohomology, cocycles2, scan), the product structure (cupring),
comparison maps between flavors (compare), the four-term sequence
(sequence), extension of scalars (basechange), and discrete Morse
reduction (morse).

Exit codes: 0 on success, 1 when the computation could not be carried
out (bad input, size caps), 2 when a validation or consistency check
failed on an otherwise well-formed input.
"""

from __future__ import annotations

import argparse
import contextlib
import json
import sys
from pathlib import Path

from .algebra import (
    AxiomError,
    PresentationError,
    abelian,
    adjoint_module,
    dim2,
    dual_module,
    heisenberg,
    import_algebra,
    import_module,
    trivial_module,
    zassenhaus_e,
    zassenhaus_f,
)
from .cochain import DegreeCapError, degree_cap_override
from .cohomology import (
    NotACocycleError,
    base_change,
    central_extension,
    cohomology,
    comparison_comm_to_leibniz,
    comparison_lie_to_comm,
    exact_sequence_check,
    split_central_extension,
)
from .cup import ring_table
from .field import FieldError, make_field
from .linalg import SizeCapError, entry_cap_override
from .morse import (
    MorseError,
    complex_from_cochains,
    greedy_matching,
    heisenberg_matching,
    morse_complex,
)

FLAVORS = {
    "comm": "symmetric",
    "symmetric": "symmetric",
    "alt": "alternating",
    "alternating": "alternating",
    "leibniz": "tensor",
    "tensor": "tensor",
}


def parse_algebra(text: str, field_degree: int):
    """A builder name like heisenberg:2 or zassenhaus-e:3, or a JSON file path."""
    path = Path(text)
    if path.exists() or path.suffix == ".json":
        return import_algebra(path)
    name, _, raw = text.partition(":")
    params = [int(p) for p in raw.split(",") if p != ""]
    fld = make_field(field_degree)
    if name == "dim2" and not params:
        return dim2(fld)
    if name == "abelian" and len(params) == 1:
        return abelian(params[0], fld)
    if name == "heisenberg" and len(params) == 1:
        return heisenberg(params[0], fld)
    if name in ("zassenhaus-e", "zassenhaus_e") and len(params) == 1:
        return zassenhaus_e(params[0], fld)
    if name in ("zassenhaus-f", "zassenhaus_f") and len(params) == 1:
        if field_degree != 1:
            raise ValueError("zassenhaus-f fixes its own field; drop --field-degree")
        return zassenhaus_f(params[0])
    raise ValueError(
        f"unknown algebra {text!r}; expected dim2, abelian:d, heisenberg:l, "
        "zassenhaus-e:n, zassenhaus-f:n, or a JSON file path"
    )


def parse_module(text: str, algebra):
    if text == "trivial":
        return trivial_module(algebra)
    if text == "adjoint":
        return adjoint_module(algebra)
    if text == "dual":
        return dual_module(algebra)
    return import_module(algebra, text)


def _flavor(args) -> str:
    return FLAVORS[args.flavor]


def _setup(args):
    algebra = parse_algebra(args.algebra, args.field_degree)
    module = parse_module(args.module, algebra)
    return algebra, module


def _need_lie(algebra, flavor: str) -> None:
    if flavor == "alternating" and not algebra.is_lie():
        raise ValueError(
            "the alternating complex needs an ordinary Lie algebra; "
            "this input has nonzero squares or Jacobi failures"
        )


def _degree_block(algebra, module, flavor, n, with_reps):
    res = cohomology(algebra, module, n, flavor)
    block = {
        "degree": n,
        "dimC": res.space.dim,
        "dimZ": res.dim_Z,
        "dimB": res.dim_B,
        "dimH": res.dim_H,
    }
    if with_reps:
        block["representatives"] = [rep.to_json() for rep in res.representatives]
    return block


# -- command handlers (each returns payload, exit code) ---------------------------------


def cmd_check(args):
    algebra = parse_algebra(args.algebra, args.field_degree)
    jacobi = algebra.jacobi_violations()
    names = algebra.basis_names
    payload = {
        "algebra": {
            "dim": algebra.dim,
            "field_degree": algebra.field.degree,
            "basis": list(names),
        },
        "jacobi_ok": not jacobi,
        "jacobi_violations": [
            {"triple": [names[i], names[j], names[k]]} for i, j, k, _ in jacobi
        ],
        "is_lie": algebra.is_lie(),
    }
    bad = bool(jacobi)
    if not jacobi:
        payload["square_ideal_dim"] = algebra.square_ideal().dim
    if args.module != "trivial":
        module = parse_module(args.module, algebra)
        mviol = module.axiom_violations()
        payload["module"] = {
            "dim": module.dim,
            "ok": not mviol,
            "violations": [
                {"pair": [names[i], names[j]]} for i, j, _ in mviol
            ],
        }
        bad = bad or bool(mviol)
    return payload, 2 if bad else 0


def cmd_cohomology(args):
    algebra, module = _setup(args)
    flavor = _flavor(args)
    _need_lie(algebra, flavor)
    blocks = [
        _degree_block(algebra, module, flavor, n, args.reps)
        for n in range(args.max_degree + 1)
    ]
    payload = {
        "algebra": args.algebra,
        "module": args.module,
        "flavor": flavor,
        "degrees": blocks,
    }
    return payload, 0


def cmd_cocycles2(args):
    algebra, module = _setup(args)
    flavor = _flavor(args)
    _need_lie(algebra, flavor)
    res = cohomology(algebra, module, 2, flavor)
    payload = {
        "algebra": args.algebra,
        "module": args.module,
        "flavor": flavor,
        "dimZ": res.dim_Z,
        "dimB": res.dim_B,
        "dimH": res.dim_H,
        "representatives": [rep.to_json() for rep in res.representatives],
    }
    if flavor == "symmetric" and module.dim == 1 and args.module == "trivial":
        extensions = []
        for rep in res.representatives:
            ext = central_extension(algebra, rep)
            extensions.append(
                {
                    "dim": ext.dim,
                    "splits": split_central_extension(algebra, rep) is not None,
                }
            )
        payload["central_extensions"] = extensions
    return payload, 0


def cmd_cupring(args):
    algebra, _ = _setup(args)
    table = ring_table(algebra, args.max_degree)
    return table.to_json(), 2 if table.defects else 0


def cmd_morse(args):
    flavor = _flavor(args)
    name, _, raw = args.algebra.partition(":")
    if name == "heisenberg" and flavor == "symmetric" and args.module == "trivial":
        ell = int(raw)
        cx, matching = heisenberg_matching(ell, args.max_degree)
    else:
        algebra, module = _setup(args)
        _need_lie(algebra, flavor)
        cx = complex_from_cochains(algebra, module, flavor, args.max_degree)
        matching = greedy_matching(cx)
    red = morse_complex(cx, matching)
    payload = red.to_json()
    payload["original_cohomology_dims"] = cx.cohomology_dims()
    agrees = payload["cohomology_dims"] == payload["original_cohomology_dims"]
    payload["agrees"] = agrees
    if not args.reps:
        del payload["matching"]
        del payload["unmatched_labels"]
    return payload, 0 if agrees else 2


def cmd_sequence(args):
    algebra = parse_algebra(args.algebra, args.field_degree)
    report = exact_sequence_check(algebra)
    return report.to_json(), 2 if report.defects else 0


def cmd_compare(args):
    algebra, module = _setup(args)
    rows = []
    for n in range(args.max_degree + 1):
        entry = {
            "degree": n,
            "comm_to_leibniz": comparison_comm_to_leibniz(algebra, module, n).to_json(),
        }
        if algebra.is_lie():
            entry["alt_to_comm"] = comparison_lie_to_comm(algebra, module, n).to_json()
        rows.append(entry)
    return {"algebra": args.algebra, "module": args.module, "degrees": rows}, 0


def cmd_basechange(args):
    if args.field_degree < 2:
        raise ValueError("basechange needs --field-degree 2 or more")
    algebra = parse_algebra(args.algebra, 1)
    module = parse_module(args.module, algebra)
    flavor = _flavor(args)
    _need_lie(algebra, flavor)
    big_algebra, big_module = base_change(algebra, module, args.field_degree)
    rows = []
    all_match = True
    for n in range(args.max_degree + 1):
        small = cohomology(algebra, module, n, flavor)
        big = cohomology(big_algebra, big_module, n, flavor)
        match = (small.dim_Z, small.dim_B) == (big.dim_Z, big.dim_B)
        all_match = all_match and match
        rows.append(
            {
                "degree": n,
                "base": {"dimZ": small.dim_Z, "dimB": small.dim_B, "dimH": small.dim_H},
                "extended": {"dimZ": big.dim_Z, "dimB": big.dim_B, "dimH": big.dim_H},
                "match": match,
            }
        )
    payload = {
        "algebra": args.algebra,
        "field_degree": args.field_degree,
        "flavor": flavor,
        "degrees": rows,
        "all_match": all_match,
    }
    return payload, 0 if all_match else 2


def cmd_scan(args):
    algebra, module = _setup(args)
    lie = algebra.is_lie()
    rows = []
    for n in range(args.max_degree + 1):
        row = {"degree": n}
        for flavor in ("symmetric", "tensor") + (("alternating",) if lie else ()):
            res = cohomology(algebra, module, n, flavor)
            row[flavor] = {
                "dimC": res.space.dim,
                "dimZ": res.dim_Z,
                "dimB": res.dim_B,
                "dimH": res.dim_H,
            }
        rows.append(row)
    payload = {
        "algebra": args.algebra,
        "module": args.module,
        "is_lie": lie,
        "degrees": rows,
    }
    return payload, 0


# -- rendering ---------------------------------------------------------------------------


def _scalar(v) -> bool:
    return not isinstance(v, (dict, list))


def _fmt(v) -> str:
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, list):
        return "[" + ", ".join(_fmt(x) for x in v) + "]"
    if isinstance(v, dict) and not v:
        return "{}"
    return str(v)


def render_text(obj, indent: int = 0) -> list[str]:
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for key, val in obj.items():
            if _scalar(val) or (isinstance(val, list) and all(_scalar(x) for x in val)):
                lines.append(f"{pad}{key}: {_fmt(val)}")
            elif isinstance(val, dict) and all(_scalar(x) for x in val.values()):
                inner = ", ".join(f"{k}={_fmt(x)}" for k, x in val.items()) or "{}"
                lines.append(f"{pad}{key}: {inner}")
            else:
                lines.append(f"{pad}{key}:")
                lines.extend(render_text(val, indent + 1))
    elif isinstance(obj, list):
        for item in obj:
            if _scalar(item):
                lines.append(f"{pad}- {_fmt(item)}")
            elif isinstance(item, dict) and all(_scalar(x) for x in item.values()):
                inner = ", ".join(f"{k}={_fmt(x)}" for k, x in item.items()) or "{}"
                lines.append(f"{pad}- {inner}")
            else:
                lines.append(f"{pad}-")
                lines.extend(render_text(item, indent + 1))
    return lines


# -- entry point --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--algebra",
        default="dim2",
        help="builder name (dim2, abelian:d, heisenberg:l, zassenhaus-e:n, "
        "zassenhaus-f:n) or JSON file path",
    )
    common.add_argument(
        "--module",
        default="trivial",
        help="trivial, adjoint, dual, or a JSON file path",
    )
    common.add_argument(
        "--flavor",
        default="comm",
        choices=sorted(FLAVORS),
        help="cochain flavor; comm = symmetric, alt = alternating, leibniz = tensor",
    )
    common.add_argument("--max-degree", type=int, default=3)
    common.add_argument("--field-degree", type=int, default=1, help="work over GF(2^k)")
    common.add_argument("--cap", type=int, help="override the matrix entry cap")
    common.add_argument("--degree-cap", type=int, help="override the cochain degree cap")
    common.add_argument("--reps", action="store_true", help="include representative cochains")
    common.add_argument("--out", help="also write the JSON payload to this file")
    common.add_argument("--format", default="text", choices=["text", "json"])

    parser = argparse.ArgumentParser(
        prog="commcoh",
        description="cohomology of commutative Lie algebras in characteristic 2",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    commands = [
        ("check", cmd_check, "validate an algebra or module presentation"),
        ("cohomology", cmd_cohomology, "dimensions and representatives by degree"),
        ("cocycles2", cmd_cocycles2, "degree-2 classes and their central extensions"),
        ("cupring", cmd_cupring, "multiplication table of classes under cup product"),
        ("morse", cmd_morse, "discrete Morse reduction of the cochain complex"),
        ("sequence", cmd_sequence, "the four-term low-degree sequence"),
        ("compare", cmd_compare, "comparison maps between cochain flavors"),
        ("basechange", cmd_basechange, "dimensions before and after extending scalars"),
        ("scan", cmd_scan, "dimension table across all applicable flavors"),
    ]
    for name, handler, help_text in commands:
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(handler=handler)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    stack = contextlib.ExitStack()
    if args.cap is not None:
        stack.enter_context(entry_cap_override(args.cap))
    if args.degree_cap is not None:
        stack.enter_context(degree_cap_override(args.degree_cap))
    try:
        with stack:
            payload, code = args.handler(args)
    except (AxiomError, MorseError, NotACocycleError) as exc:
        print(f"validation failed: {exc}", file=sys.stderr)
        return 2
    except (
        FieldError,
        PresentationError,
        SizeCapError,
        DegreeCapError,
        ValueError,
        KeyError,
        OSError,
        json.JSONDecodeError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if args.out:
        Path(args.out).write_text(json.dumps(payload, indent=2) + "\n")
    if args.format == "json":
        print(json.dumps(payload, indent=2))
    else:
        print("\n".join(render_text(payload)))
    return code


if __name__ == "__main__":
    sys.exit(main())
