"""Command line front end.

Exit codes: 0 on success, 1 when a verification-style command fails its
tolerance, 2 on usage errors, unreadable input, or a singular solve.
Complex scalars are written "re,im" everywhere; momenta and lattice
dimensions are comma-separated integers.
"""

from __future__ import annotations

import argparse
import io
import sys

import numpy as np

from .blades import MASK_BY_NAME, NUM_BLADES, blade_name
from .calculus import (d_c, delta_c, dk_apply, dk_residual, hestenes_apply,
                       hestenes_residual)
from .fields import (Equation, EquationParams, FieldFormatError,
                     atomic_write_text, constant_field, dumps_field,
                     load_field, max_abs, plane_wave, random_field, rms,
                     save_field)
from .lattice import LatticeDims
from .spectral import (all_momenta, build_symbol, eigen_solve, format_complex,
                       propagator_solve, write_spectrum_csv)
from .transfer import (decompose, hestenes_quadruple,
                       verify_quadruple_independence)
from .verify import run_checks

_EQUATIONS = {
    "dk": Equation.DIRAC_KAHLER,
    "hestenes": Equation.HESTENES,
    "hestenes-flipped": Equation.HESTENES_FLIPPED,
}

_OPERATORS = {
    "d": d_c,
    "delta": delta_c,
    "dk": dk_apply,
    "hestenes": hestenes_apply,
}

_VERIFY_CHOICES = ("1", "2", "3", "4", "5", "clifford", "nilpotency",
                   "componentwise", "matrix", "spectral", "propagator", "all")


def _parse_complex(text: str) -> complex:
    parts = text.split(",")
    if len(parts) != 2:
        raise ValueError(f"expected re,im, got {text!r}")
    return complex(float(parts[0]), float(parts[1]))


def _parse_momentum(text: str) -> tuple:
    parts = text.split(",")
    if len(parts) != 4:
        raise ValueError(f"expected p0,p1,p2,p3, got {text!r}")
    return tuple(int(part) for part in parts)


def _blade_mask(name: str) -> int:
    key = name.strip().lower()
    if key in MASK_BY_NAME:
        return MASK_BY_NAME[key]
    try:
        mask = int(key)
    except ValueError:
        raise ValueError(f"unknown blade {name!r}") from None
    if not 0 <= mask < NUM_BLADES:
        raise ValueError(f"blade mask {mask} outside 0..{NUM_BLADES - 1}")
    return mask


def _amplitude_vector(entries) -> np.ndarray:
    amp = np.zeros(NUM_BLADES, dtype=np.complex128)
    seen = set()
    for entry in entries:
        name, sep, value = entry.partition("=")
        if not sep:
            raise ValueError(f"amplitude {entry!r} must look like BLADE=re,im")
        mask = _blade_mask(name)
        if mask in seen:
            raise ValueError(f"duplicate amplitude for blade {blade_name(mask)}")
        seen.add(mask)
        amp[mask] = _parse_complex(value)
    return amp


def _emit(path, text: str) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        atomic_write_text(path, text)


def _cmd_gen(args) -> int:
    dims = args.dims
    if args.kind == "random":
        if args.amp or args.p is not None or args.eigen is not None:
            raise ValueError("random fields take only --dims and --seed")
        omega = random_field(dims, args.seed)
    elif args.kind == "constant":
        if args.p is not None or args.eigen is not None:
            raise ValueError("constant fields take only --dims and --amp")
        omega = constant_field(dims, _amplitude_vector(args.amp))
    else:
        if args.p is None:
            raise ValueError("plane-wave needs --p")
        if (args.eigen is None) == (not args.amp):
            raise ValueError("plane-wave needs exactly one of --amp or --eigen")
        if args.eigen is not None:
            pairs = eigen_solve(build_symbol(args.p, dims))
            if not 0 <= args.eigen < len(pairs):
                raise ValueError(f"--eigen must be in 0..{len(pairs) - 1}")
            pair = pairs[args.eigen]
            omega = plane_wave(dims, args.p, pair.amplitude)
            print(f"mass={format_complex(pair.eigenvalue)}")
        else:
            omega = plane_wave(dims, args.p, _amplitude_vector(args.amp))
    _emit(args.output, dumps_field(omega) + "\n")
    return 0


def _cmd_apply(args) -> int:
    omega = load_field(args.input)
    result = _OPERATORS[args.op](omega)
    save_field(result, args.output)
    print(f"max_abs={max_abs(result):.9g}")
    return 0


def _cmd_residual(args) -> int:
    omega = load_field(args.input)
    params = EquationParams(args.mass, _EQUATIONS[args.eq])
    if params.equation is Equation.DIRAC_KAHLER:
        residual = dk_residual(omega, params)
    else:
        residual = hestenes_residual(omega, params)
    dev = max_abs(residual)
    scale = max_abs(omega) * max(1.0, abs(params.mass))
    rel = dev / scale if scale > 0 else (0.0 if dev == 0.0 else float("inf"))
    print(f"max_abs={dev:.9g}")
    print(f"rms={rms(residual):.9g}")
    print(f"scale={scale:.9g}")
    print(f"rel={rel:.9g}")
    ok = rel <= args.tol
    print(f"status={'pass' if ok else 'fail'}")
    return 0 if ok else 1


def _cmd_spectrum(args) -> int:
    if args.all == bool(args.p):
        raise ValueError("spectrum needs exactly one of --p or --all")
    momenta = list(all_momenta(args.dims)) if args.all else args.p
    buffer = io.StringIO()
    write_spectrum_csv(buffer, args.dims, momenta)
    _emit(args.output, buffer.getvalue())
    return 0


def _cmd_verify(args) -> int:
    report = run_checks(args.prop, args.dims, trials=args.trials, seed=args.seed)
    if args.tol_scale != 1.0:
        report = report.scaled(args.tol_scale)
    for line in report.lines():
        print(line)
    return 0 if report.passed else 1


def _cmd_decompose(args) -> int:
    omega = load_field(args.input)
    result = decompose(omega)
    for tag, part in result.parts():
        suffix = tag.replace("+", "p").replace("-", "m")
        save_field(part, f"{args.out_prefix}.{suffix}.json")
    dev = max_abs(result.total() - omega)
    scale = max_abs(omega)
    rel = dev / scale if scale > 0 else (0.0 if dev == 0.0 else float("inf"))
    print(f"reconstruction_rel={rel:.9g}")
    ok = rel <= args.tol
    print(f"status={'pass' if ok else 'fail'}")
    return 0 if ok else 1


def _cmd_quadruple(args) -> int:
    omega = load_field(args.input)
    quad = hestenes_quadruple(omega, rel_tol=float("inf"))
    for i, member in enumerate(quad.fields(), start=1):
        save_field(member, f"{args.out_prefix}.q{i}.json")
    scale = max_abs(omega)
    route_rel = (quad.route_deviation / scale if scale > 0
                 else (0.0 if quad.route_deviation == 0.0 else float("inf")))
    print(f"route_rel={route_rel:.9g}")
    independence = verify_quadruple_independence(quad)
    for line in independence.lines():
        print(line)
    ok = route_rel <= 1e-14
    if args.mass.imag == 0.0:
        params = EquationParams(args.mass, Equation.HESTENES)
        res_scale = max(scale, 1.0) * max(1.0, abs(args.mass))
        for i, member in enumerate(quad.fields(), start=1):
            rel = max_abs(hestenes_residual(member, params)) / res_scale
            print(f"residual_q{i}={rel:.9g}")
            ok = ok and rel <= args.tol
    else:
        # Individual members only satisfy the componentwise equations for
        # real mass; for complex mass just the construction is checked.
        print("mass_real=false")
    print(f"status={'pass' if ok else 'fail'}")
    return 0 if ok else 1


def _cmd_solve(args) -> int:
    source = load_field(args.input)
    solution = propagator_solve(source, args.mass)
    save_field(solution, args.output)
    dev = max_abs(dk_residual(solution, EquationParams(args.mass)) - source)
    scale = max_abs(source)
    rel = dev / scale if scale > 0 else (0.0 if dev == 0.0 else float("inf"))
    print(f"residual_rel={rel:.9g}")
    ok = rel <= args.tol
    print(f"status={'pass' if ok else 'fail'}")
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dklattice",
        description="Discrete Dirac-Kahler calculus on a periodic lattice.")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate a field file")
    gen.add_argument("kind", choices=("random", "constant", "plane-wave"))
    gen.add_argument("--dims", type=LatticeDims.parse, default=LatticeDims(3, 3, 3, 3),
                     help="lattice extents n0,n1,n2,n3 (default 3,3,3,3)")
    gen.add_argument("--seed", type=int, default=0, help="random seed")
    gen.add_argument("--amp", action="append", default=[], metavar="BLADE=RE,IM",
                     help="blade amplitude, repeatable (e.g. e01=1,0)")
    gen.add_argument("--p", type=_parse_momentum, default=None, metavar="P0,P1,P2,P3",
                     help="integer momentum for plane waves")
    gen.add_argument("--eigen", type=int, default=None, metavar="INDEX",
                     help="use eigenvector INDEX of the momentum matrix "
                          "as the amplitude and print its mass")
    gen.add_argument("-o", "--output", default=None,
                     help="output path (default stdout)")
    gen.set_defaults(func=_cmd_gen)

    apply_p = sub.add_parser("apply", help="apply an operator to a field file")
    apply_p.add_argument("op", choices=sorted(_OPERATORS))
    apply_p.add_argument("-i", "--input", required=True)
    apply_p.add_argument("-o", "--output", required=True)
    apply_p.set_defaults(func=_cmd_apply)

    residual = sub.add_parser("residual", help="evaluate an equation residual")
    residual.add_argument("eq", choices=sorted(_EQUATIONS))
    residual.add_argument("-i", "--input", required=True)
    residual.add_argument("--mass", type=_parse_complex, default=0j, metavar="RE,IM")
    residual.add_argument("--tol", type=float, default=1e-12,
                          help="relative tolerance on max_abs (default 1e-12)")
    residual.set_defaults(func=_cmd_residual)

    spectrum = sub.add_parser("spectrum", help="eigenvalues per momentum as CSV")
    spectrum.add_argument("--dims", type=LatticeDims.parse,
                          default=LatticeDims(3, 3, 3, 3))
    spectrum.add_argument("--p", type=_parse_momentum, action="append", default=[],
                          metavar="P0,P1,P2,P3", help="momentum, repeatable")
    spectrum.add_argument("--all", action="store_true", help="every momentum")
    spectrum.add_argument("-o", "--output", default=None,
                          help="output path (default stdout)")
    spectrum.set_defaults(func=_cmd_spectrum)

    verify = sub.add_parser("verify", help="run numerical identity checks")
    verify.add_argument("prop", choices=_VERIFY_CHOICES)
    verify.add_argument("--dims", type=LatticeDims.parse,
                        default=LatticeDims(3, 3, 3, 3))
    verify.add_argument("--trials", type=int, default=50)
    verify.add_argument("--seed", type=int, default=0)
    verify.add_argument("--tol-scale", type=float, default=1.0,
                        help="multiply every bound by this factor")
    verify.set_defaults(func=_cmd_verify)

    dec = sub.add_parser("decompose", help="split a field into projector parts")
    dec.add_argument("-i", "--input", required=True)
    dec.add_argument("--out-prefix", required=True,
                     help="writes PREFIX.pp/.mp/.pm/.mm.json")
    dec.add_argument("--tol", type=float, default=1e-12,
                     help="relative reconstruction tolerance")
    dec.set_defaults(func=_cmd_decompose)

    quad = sub.add_parser("quadruple",
                          help="build the four even real companion fields")
    quad.add_argument("-i", "--input", required=True)
    quad.add_argument("--mass", type=_parse_complex, default=0j, metavar="RE,IM")
    quad.add_argument("--out-prefix", required=True,
                      help="writes PREFIX.q1.json .. PREFIX.q4.json")
    quad.add_argument("--tol", type=float, default=1e-12,
                      help="relative residual tolerance at real mass")
    quad.set_defaults(func=_cmd_quadruple)

    solve = sub.add_parser("solve", help="invert (i(d+delta) - m) against a source")
    solve.add_argument("-i", "--input", required=True, help="source field file")
    solve.add_argument("--mass", type=_parse_complex, default=0j, metavar="RE,IM")
    solve.add_argument("-o", "--output", required=True)
    solve.add_argument("--tol", type=float, default=1e-11,
                       help="relative residual tolerance")
    solve.set_defaults(func=_cmd_solve)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except FieldFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
