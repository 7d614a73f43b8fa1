"""Command-line interface.

Machine-readable results go to stdout (or ``--out`` files); diagnostics and
warnings go to stderr, so output can be piped safely. Every subcommand is
deterministic given its flags and seeds.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import sys
from pathlib import Path

from . import datasets, evaluation, ilp, metrics, weights
from .dismantle import DismantleQuery, best_removal

logger = logging.getLogger(__name__)


def _resolve_weights(spec: str, clamp: bool) -> metrics.WeightVector:
    policy = metrics.EXTENSION_CLAMP if clamp else metrics.EXTENSION_ERROR
    if spec == "default":
        return weights.default_weights().with_policy(policy)
    return metrics.load_weights(spec, policy)


def _metric_list(value: str) -> list[str]:
    names = [name.strip() for name in value.split(",") if name.strip()]
    for name in names:
        if name not in metrics.METRIC_IDS:
            raise argparse.ArgumentTypeError(
                f"unknown metric {name!r}; choose from "
                f"{', '.join(metrics.METRIC_IDS)}"
            )
    if not names:
        raise argparse.ArgumentTypeError("empty metric list")
    return names


def _write_or_print(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def cmd_gen(args: argparse.Namespace) -> int:
    spec = datasets.GeneratorSpec(
        model=args.model, n=args.n, p=args.p, m=args.m,
        seed=args.seed, count=args.count,
    )
    paths = datasets.write_suite(spec, args.out, stem=args.stem)
    logger.info("wrote %d graph(s) to %s", len(paths), args.out)
    return 0


def cmd_strength(args: argparse.Namespace) -> int:
    graph = datasets.load_edge_list(args.graph)
    selected = list(metrics.METRIC_IDS) if args.all_metrics else args.metrics
    weight_vector = None
    if "proposed" in selected:
        weight_vector = _resolve_weights(args.weights, args.clamp_weights)
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(["metric", "raw", "normalized"])
    for metric in selected:
        value = metrics.compute_metric(graph, metric, weight_vector)
        writer.writerow([metric, repr(value.raw), repr(value.normalized)])
    return 0


def cmd_fit_weights(args: argparse.Namespace) -> int:
    dataset = weights.load_survey_csv(args.survey, args.graphs)
    system = weights.build_system(dataset)
    result = weights.fit_weights(system, ridge=args.ridge)
    if args.out_weights:
        metrics.save_weights(result.weights, args.out_weights)
    else:
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(["size", "weight"])
        for size, value in enumerate(result.weights.weights, start=1):
            writer.writerow([size, repr(value)])
    report_line = json.dumps({
        "residual_norm": result.residual_norm,
        "rank": result.rank,
        "lambda": result.regularization,
        "graphs": len(system.graph_ids),
        "size_limit": system.size_limit,
    }, sort_keys=True)
    if args.report:
        Path(args.report).write_text(report_line + "\n", encoding="utf-8")
    elif args.out_weights:
        sys.stdout.write(report_line + "\n")
    logger.info(
        "fit %d weights from %d graphs (residual %.6g, rank %d)",
        system.size_limit, len(system.graph_ids),
        result.residual_norm, result.rank,
    )
    return 0


def cmd_dismantle(args: argparse.Namespace) -> int:
    graph = datasets.load_edge_list(args.graph)
    weight_vector = None
    if args.objective == "proposed" or args.emit_lp:
        weight_vector = _resolve_weights(args.weights, args.clamp_weights)
    if args.emit_lp:
        Path(args.emit_lp).write_text(
            ilp.emit_ilp(graph, args.k, weight_vector), encoding="utf-8"
        )
        logger.info("wrote model to %s", args.emit_lp)
    query = DismantleQuery(
        graph=graph,
        k=args.k,
        objective=args.objective,
        weights=weight_vector if args.objective == "proposed" else None,
        allow_fewer=not args.exact_size,
        max_subsets=args.budget,
    )
    result = best_removal(query)
    _write_or_print(
        json.dumps(result.to_json_dict(), sort_keys=True) + "\n", args.out
    )
    return 0


def cmd_eval(args: argparse.Namespace) -> int:
    if args.mode == "match":
        preds = evaluation.load_predictions_csv(args.pred)
        gt = evaluation.load_ranked_gt_csv(args.gt)
        report = evaluation.match_stats(preds, gt)
        if args.out:
            Path(args.out).write_text(report.detail_csv(), encoding="utf-8")
        if args.summary_out:
            Path(args.summary_out).write_text(
                report.summary_csv(), encoding="utf-8"
            )
        if args.csv:
            sys.stdout.write(report.detail_csv())
            sys.stdout.write(report.summary_csv())
        else:
            print(report.format_table())
        return 0
    # strength mode: RMSE of normalized predictions vs normalized estimates
    if not args.graphs:
        raise ValueError("--graphs is required in strength mode")
    preds = evaluation.load_strength_values_csv(args.pred)
    gt = evaluation.load_strength_gt_csv(args.gt)
    pred_values = []
    gt_values = []
    for graph_id in sorted(preds):
        if graph_id not in gt:
            raise ValueError(f"prediction for unknown graph id {graph_id!r}")
        graph = datasets.load_edge_list(Path(args.graphs) / f"{graph_id}.edges")
        pred_values.append(preds[graph_id])
        gt_values.append(gt[graph_id] / graph.n)
    value = evaluation.rmse(pred_values, gt_values)
    sys.stdout.write(f"statistic,value\nrmse,{value!r}\n")
    return 0


def cmd_compare(args: argparse.Namespace) -> int:
    gt = evaluation.load_strength_gt_csv(args.gt)
    graphs = []
    for graph_id in sorted(gt):
        path = Path(args.graphs) / f"{graph_id}.edges"
        if not path.exists():
            raise ValueError(f"no edge list for graph id {graph_id!r}: {path}")
        graphs.append((graph_id, datasets.load_edge_list(path)))
    weight_vector = None
    if "proposed" in args.metrics:
        weight_vector = _resolve_weights(args.weights, args.clamp_weights)
    result = evaluation.compare_suite(graphs, gt, args.metrics, weight_vector)
    _write_or_print(result.to_csv(), args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="netstrength",
        description=(
            "Measure graph strength with perception-calibrated component "
            "weights, fit the weights from survey estimates, find optimal "
            "node removals, and score agreement with survey ground truth."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate seeded random graph suites")
    gen.add_argument("--model", choices=(datasets.GNP, datasets.GNM),
                     required=True)
    gen.add_argument("--n", type=int, required=True, help="nodes per graph")
    gen.add_argument("--p", type=float, help="edge probability (gnp)")
    gen.add_argument("--m", type=int, help="exact edge count (gnm)")
    gen.add_argument("--count", type=int, default=1)
    gen.add_argument("--seed", type=int, required=True)
    gen.add_argument("--out", required=True, help="output directory")
    gen.add_argument("--stem", default="graph")
    gen.set_defaults(func=cmd_gen)

    strength = sub.add_parser("strength", help="score one graph")
    strength.add_argument("graph", help="edge-list file")
    strength.add_argument("--weights", default="default",
                          help="weight CSV path or 'default'")
    strength.add_argument("--metrics", type=_metric_list,
                          default=["proposed"],
                          help="comma-separated metric ids")
    strength.add_argument("--all-metrics", action="store_true")
    strength.add_argument("--clamp-weights", action="store_true",
                          help="reuse the last weight beyond its length")
    strength.set_defaults(func=cmd_strength)

    fit = sub.add_parser("fit-weights",
                         help="fit weights from survey estimates")
    fit.add_argument("--survey", required=True,
                     help="CSV: graph_id,participant_id,estimate")
    fit.add_argument("--graphs", required=True,
                     help="directory of <graph_id>.edges files")
    fit.add_argument("--lambda", dest="ridge", type=float, default=0.0,
                     help="ridge regularization strength")
    fit.add_argument("--out-weights", help="weight CSV output path")
    fit.add_argument("--report", help="JSON-lines fit report path")
    fit.set_defaults(func=cmd_fit_weights)

    dis = sub.add_parser("dismantle", help="find the best removal set")
    dis.add_argument("graph", help="edge-list file")
    dis.add_argument("--k", type=int, required=True, help="removal budget")
    dis.add_argument("--objective", choices=metrics.METRIC_IDS,
                     default="proposed")
    dis.add_argument("--weights", default="default")
    dis.add_argument("--clamp-weights", action="store_true")
    dis.add_argument("--exact-size", action="store_true",
                     help="require exactly k removals instead of at most k")
    dis.add_argument("--budget", type=int,
                     help="override the candidate-set budget")
    dis.add_argument("--emit-lp", metavar="PATH",
                     help="also write the integer-program model as LP text")
    dis.add_argument("--out", help="write result JSON here instead of stdout")
    dis.set_defaults(func=cmd_dismantle)

    ev = sub.add_parser("eval", help="score predictions against ground truth")
    ev.add_argument("--mode", choices=("strength", "match"), required=True)
    ev.add_argument("--pred", required=True, help="predictions CSV")
    ev.add_argument("--gt", required=True, help="ground-truth CSV")
    ev.add_argument("--graphs",
                    help="edge-list directory (strength mode)")
    ev.add_argument("--out", help="detail CSV path (match mode)")
    ev.add_argument("--summary-out", help="summary CSV path (match mode)")
    ev.add_argument("--csv", action="store_true",
                    help="print CSV to stdout instead of a table")
    ev.set_defaults(func=cmd_eval)

    cmp_parser = sub.add_parser(
        "compare", help="normalized metric-vs-truth table with RMSE rows"
    )
    cmp_parser.add_argument("--graphs", required=True)
    cmp_parser.add_argument("--gt", required=True,
                            help="CSV: graph_id,mean_estimate")
    cmp_parser.add_argument("--weights", default="default")
    cmp_parser.add_argument("--clamp-weights", action="store_true")
    cmp_parser.add_argument("--metrics", type=_metric_list,
                            default=list(metrics.METRIC_IDS))
    cmp_parser.add_argument("--out", help="output CSV path")
    cmp_parser.set_defaults(func=cmd_compare)
    return parser


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(
        stream=sys.stderr, level=logging.INFO,
        format="%(levelname)s %(message)s", force=True,
    )
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
