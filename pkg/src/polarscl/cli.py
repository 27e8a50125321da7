"""Command-line surface: code construction, frame decoding, Monte-Carlo sweeps,
the hardware cost table and sorting-network inspection.

Exit codes: 0 success, 1 usage error, 2 data error, 3 reference-table mismatch.
All randomness flows from --seed, which defaults to a fixed value so repeated
runs are reproducible bit for bit.
"""

import argparse
import json
import sys

from ._version import __version__
from . import costmodel, simulation, sortnet
from .code import construct_frozen_set, read_frozen_mask, write_frozen_mask
from .fixedpoint import QuantSpec
from .oracle import llr_to_pair, scl_decode_lik
from .scl import scl_decode

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_REFERENCE = 3


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on bad flags; this toolkit reserves 2 for
    # data errors, so usage problems are remapped to 1.
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _parse_snr_sweep(text: str):
    """start:step:stop (inclusive) or a comma-separated list of points."""
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise ValueError(f"bad SNR sweep {text!r}; expected start:step:stop")
        start, step, stop = (float(p) for p in parts)
        if step <= 0 or stop < start:
            raise ValueError(f"bad SNR sweep {text!r}; need step > 0 and stop >= start")
        count = int((stop - start) / step + 1e-9) + 1
        return tuple(start + i * step for i in range(count))
    return tuple(float(p) for p in text.split(","))


def _read_llr_csv(path, n: int):
    """One frame per line, n comma-separated LLRs."""
    frames = []
    with open(path) as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                values = [float(v) for v in line.split(",")]
            except ValueError as exc:
                raise ValueError(f"{path}:{lineno}: {exc}") from None
            if len(values) != n:
                raise ValueError(f"{path}:{lineno}: expected {n} values, got {len(values)}")
            frames.append(values)
    if not frames:
        raise ValueError(f"{path}: no frames found")
    return frames


def cmd_construct(args) -> int:
    spec = construct_frozen_set(args.n, args.k, args.z0)
    write_frozen_mask(spec, args.out)
    print(f"wrote {args.out} (n={spec.n}, k={spec.k})")
    return EXIT_OK


def cmd_decode(args) -> int:
    spec = read_frozen_mask(args.mask)
    frames = _read_llr_csv(args.llrs, spec.n)
    quant = QuantSpec(args.q, args.scale) if args.q else None
    for llrs in frames:
        res = scl_decode(spec, llrs, args.list, mode=args.mode, kernel=args.kernel, quant=quant)
        line = (
            f"message={''.join(map(str, res.message))} "
            f"u={''.join(map(str, res.u_estimate))} metric={res.metric!r}"
        )
        if args.oracle_check:
            ref = scl_decode_lik(spec, [llr_to_pair(x) for x in llrs], args.list)
            verdict = "agree" if ref.u_estimate == res.u_estimate else "disagree"
            line += f" oracle={verdict}"
        print(line)
    return EXIT_OK


def cmd_simulate(args) -> int:
    config = simulation.SimConfig(
        n=args.n,
        k=args.k,
        L=args.list,
        snr_points_db=_parse_snr_sweep(args.snr),
        max_frames=args.frames,
        min_errors=args.min_errors,
        seed=args.seed,
        mode=args.mode,
        kernel=args.kernel,
        q=args.q,
        scale=args.scale,
        all_zero=args.all_zero,
    )
    result = simulation.run_monte_carlo(config, chunk_size=args.chunk)
    csv_text = result.to_csv()
    if args.out is None:
        sys.stdout.write(csv_text)
        return EXIT_OK
    csv_path = f"{args.out}.csv"
    json_path = f"{args.out}.json"
    outputs = [csv_path, json_path]
    if args.plot:
        outputs.append(args.plot)
    result.write_csv(csv_path)
    simulation.write_manifest(json_path, config, command=" ".join(sys.argv), outputs=outputs)
    if args.plot:
        from . import plotting

        rows = plotting.load_sweep_csv(csv_path)
        plotting.plot_sweeps([(f"n={args.n} k={args.k} L={args.list}", rows)], args.plot)
    print("wrote " + ", ".join(outputs))
    return EXIT_OK


def cmd_costmodel(args) -> int:
    report = costmodel.compare(args.n, args.list, args.q)
    if args.json:
        print(json.dumps(costmodel.report_json(report), indent=2, sort_keys=True))
    else:
        print(costmodel.format_report(report))
    if args.paper_check:
        mismatches = costmodel.reference_check(args.n, args.list, args.q)
        if mismatches:
            for m in mismatches:
                print(f"reference mismatch: {m}", file=sys.stderr)
            return EXIT_REFERENCE
        print("reference check passed")
    return EXIT_OK


def cmd_sortnet(args) -> int:
    net = sortnet.build_batcher(args.size)
    print(sortnet.format_network(net))
    return EXIT_OK


def cmd_plot(args) -> int:
    from . import plotting

    labels = args.labels.split(",") if args.labels else [str(p) for p in args.csv]
    if len(labels) != len(args.csv):
        raise ValueError(f"{len(args.csv)} files but {len(labels)} labels")
    sweeps = [(label, plotting.load_sweep_csv(path)) for label, path in zip(labels, args.csv)]
    plotting.plot_sweeps(sweeps, args.out, show_ber=args.ber, title=args.title)
    print(f"wrote {args.out}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="polarscl", description=__doc__)
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("construct", help="build a code and write its frozen-mask file")
    p.add_argument("--n", type=int, required=True, help="block length (power of two)")
    p.add_argument("--k", type=int, required=True, help="number of free (message) bits")
    p.add_argument("--z0", type=float, default=0.5, help="design erasure proxy in (0,1)")
    p.add_argument("--out", required=True, help="output mask file path")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("decode", help="list-decode LLR frames from a CSV file")
    p.add_argument("--mask", required=True, help="frozen-mask file from 'construct'")
    p.add_argument("--llrs", required=True, help="CSV of channel LLRs, one frame per line")
    p.add_argument("--list", type=int, default=1, help="list size L")
    p.add_argument("--mode", choices=("approx", "exact"), default="approx")
    p.add_argument("--kernel", choices=("minsum", "exact"), default="minsum")
    p.add_argument("--q", type=int, default=0, help="fixed-point width; 0 = floating point")
    p.add_argument("--scale", type=float, default=None,
                   help="LLR value of one fixed-point step (default: clamp range / max code)")
    p.add_argument(
        "--oracle-check",
        action="store_true",
        help="also run the likelihood-domain reference decoder and report agree/disagree",
    )
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("simulate", help="seeded Monte-Carlo FER/BER sweep")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--list", type=int, default=4, help="list size L")
    p.add_argument("--snr", required=True, help="Eb/N0 sweep start:step:stop (dB) or comma list")
    p.add_argument("--frames", type=int, default=10000, help="max frames per SNR point")
    p.add_argument("--min-errors", type=int, default=0, help="early stop after this many frame errors")
    p.add_argument("--seed", type=int, default=simulation.DEFAULT_SEED)
    p.add_argument("--mode", choices=("approx", "exact"), default="approx")
    p.add_argument("--kernel", choices=("minsum", "exact"), default="minsum")
    p.add_argument("--q", type=int, default=0, help="fixed-point width; 0 = floating point")
    p.add_argument("--scale", type=float, default=None,
                   help="LLR value of one fixed-point step (default: clamp range / max code)")
    p.add_argument("--all-zero", action="store_true", help="send the all-zero codeword")
    p.add_argument("--chunk", type=int, default=2048, help="frames decoded per batch")
    p.add_argument("--out", help="output prefix; writes <out>.csv and <out>.json")
    p.add_argument("--plot", help="also render the sweep to this image file")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("costmodel", help="hardware cost comparison table")
    p.add_argument("--n", type=int, default=1024)
    p.add_argument("--list", type=int, default=4, help="list size L (power of two)")
    p.add_argument("--q", type=int, default=6, help="datapath width in bits")
    p.add_argument("--json", action="store_true", help="emit JSON instead of the text table")
    p.add_argument(
        "--paper-check",
        action="store_true",
        help="verify the published reference values for (n=1024, L=4); exit 3 on mismatch",
    )
    p.set_defaults(func=cmd_costmodel)

    p = sub.add_parser("sortnet", help="print a Batcher sorting network")
    p.add_argument("--size", type=int, required=True, help="input count (power of two)")
    p.set_defaults(func=cmd_sortnet)

    p = sub.add_parser("plot", help="render simulation CSVs to an image file")
    p.add_argument("csv", nargs="+", help="CSV files written by 'simulate'")
    p.add_argument("--labels", help="comma-separated curve labels (default: file names)")
    p.add_argument("--out", required=True, help="image file (extension picks the format)")
    p.add_argument("--ber", action="store_true", help="also draw BER curves")
    p.add_argument("--title")
    p.set_defaults(func=cmd_plot)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"polarscl: error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
