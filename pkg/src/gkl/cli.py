"""Command-line surface: fetch datasets, compute kernel matrices, run the
classification pipeline, and benchmark kernel computation times.

Exit codes: 0 success, 1 fetch/IO failure, 2 invalid spec or input,
3 numerical failure.
"""

from __future__ import annotations

import argparse
import statistics
import sys
import time
import warnings
from dataclasses import dataclass, field

import numpy as np

from . import pipeline
from .datasets import (
    DEFAULT_BASE_URL,
    DatasetBundle,
    dataset_cached,
    fetch_dataset,
    load_dataset,
)
from .errors import (
    CorruptDataset,
    Divergent,
    EmptyCollection,
    FetchError,
    GklError,
    IncompatibleInput,
    InvalidGraph,
    InvalidShape,
    InvalidSpec,
    NotFitted,
    NumericalError,
    ParseError,
    SizeLimit,
)
from .kernels import KERNEL_NAMES, KernelMatrix, KernelSpec, make_kernel
from .matrix_io import write_matrix

# Divergent counts as an input problem: the requested decay conflicts with
# the collection, and the fix is a parameter change.
_INPUT_ERRORS = (
    InvalidSpec,
    IncompatibleInput,
    InvalidGraph,
    EmptyCollection,
    InvalidShape,
    SizeLimit,
    NotFitted,
    Divergent,
)
_IO_ERRORS = (FetchError, CorruptDataset, ParseError, OSError)


@dataclass
class RunReport:
    """What a command did: spec echo, wall-clock phases, shapes, warnings."""

    lines: list[str] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)

    def add(self, line: str) -> None:
        self.lines.append(line)

    def phase(self, name: str, seconds: float) -> None:
        self.lines.append(f"phase {name}: {seconds:.3f} s")

    def emit(self) -> None:
        for line in self.lines:
            print(line)
        for msg in self.warnings:
            print(f"warning: {msg}")


def _parse_params(pairs: list[str] | None) -> dict[str, str]:
    params: dict[str, str] = {}
    for pair in pairs or []:
        if "=" not in pair:
            raise InvalidSpec(f"--param expects name=value, got {pair!r}")
        key, value = pair.split("=", 1)
        params[key.strip()] = value.strip()
    return params


def _spec_from_args(args) -> KernelSpec:
    return KernelSpec(
        kernel_name=args.kernel,
        params=_parse_params(getattr(args, "param", None)),
        normalize=getattr(args, "normalize", False),
        nystrom_components=getattr(args, "nystrom", None),
        seed=getattr(args, "seed", 0),
    )


def _spec_echo(spec: KernelSpec) -> str:
    params = " ".join(f"{k}={v}" for k, v in sorted(spec.params.items()))
    nystrom = spec.nystrom_components if spec.nystrom_components is not None else "none"
    parts = [f"kernel: {spec.kernel_name}"]
    if params:
        parts.append(params)
    parts.append(f"normalize={str(spec.normalize).lower()}")
    parts.append(f"nystrom={nystrom}")
    parts.append(f"seed={spec.seed}")
    return " ".join(parts)


def _load(args, report: RunReport) -> DatasetBundle:
    start = time.perf_counter()
    bundle = load_dataset(args.dataset, base_url=args.base_url, cache_dir=args.cache_dir)
    report.phase("load", time.perf_counter() - start)
    report.add(
        f"dataset: {bundle.name} graphs={len(bundle)} classes={len(bundle.classes)}"
    )
    return bundle


def cmd_fetch(args) -> int:
    cached = dataset_cached(args.name, args.cache_dir)
    path = fetch_dataset(args.name, base_url=args.base_url, cache_dir=args.cache_dir)
    marker = " (cached)" if cached else ""
    print(f"{path}{marker}")
    return 0


def cmd_compute(args) -> int:
    report = RunReport()
    spec = _spec_from_args(args)
    kernel = make_kernel(spec, max_workers=args.threads)
    bundle = _load(args, report)
    report.add(_spec_echo(spec))
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        start = time.perf_counter()
        values = kernel.fit_transform(list(bundle.graphs))
        report.phase("fit_transform", time.perf_counter() - start)
    report.warnings.extend(str(w.message) for w in caught)
    out = args.out or f"{args.dataset}_{spec.kernel_name}.csv"
    matrix = KernelMatrix(values=values, role="fit_square")
    write_matrix(out, matrix, spec)
    report.add(f"matrix: {matrix.rows}x{matrix.cols} {matrix.role} -> {out}")
    report.emit()
    return 0


def cmd_classify(args) -> int:
    report = RunReport()
    spec = _spec_from_args(args)
    kernel = make_kernel(spec, max_workers=args.threads)
    bundle = _load(args, report)
    report.add(_spec_echo(spec))
    y = np.asarray(bundle.targets)
    train_idx, test_idx = pipeline.train_test_split(len(bundle), args.test_fraction, args.seed)
    report.add(f"split: train={len(train_idx)} test={len(test_idx)} seed={args.seed}")
    graphs_train = [bundle.graphs[i] for i in train_idx]
    graphs_test = [bundle.graphs[i] for i in test_idx]
    y_train, y_test = y[train_idx], y[test_idx]

    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        start = time.perf_counter()
        k_train = kernel.fit_transform(graphs_train)
        report.phase("fit_transform", time.perf_counter() - start)
        start = time.perf_counter()
        k_test = kernel.transform(graphs_test)
        report.phase("transform", time.perf_counter() - start)
    report.warnings.extend(str(w.message) for w in caught)

    start = time.perf_counter()
    classes = sorted(set(y_train.tolist()))
    if len(classes) == 2:
        encoded = np.where(y_train == classes[0], -1.0, 1.0)
        model = pipeline.svm_train(k_train, encoded, args.C)
        pred_pm = pipeline.svm_predict(model, k_test)
        predictions = np.where(pred_pm < 0, classes[0], classes[1])
    else:
        ensemble = pipeline.one_vs_one(k_train, y_train, args.C)
        predictions = pipeline.one_vs_one_predict(ensemble, k_test)
    report.phase("svm", time.perf_counter() - start)
    acc = pipeline.accuracy(y_test, predictions)
    report.emit()
    print(f"accuracy: {100.0 * acc:.2f} %")
    return 0


def cmd_benchmark(args) -> int:
    kernels = KERNEL_NAMES if args.kernels == "all" else tuple(
        k.strip() for k in args.kernels.split(",") if k.strip()
    )
    for k in kernels:
        if k not in KERNEL_NAMES:
            raise InvalidSpec(f"unknown kernel '{k}' in --kernels")
    rows: list[tuple[str, str, str]] = []
    notes: list[str] = []
    succeeded = 0
    for name in args.datasets:
        try:
            bundle = load_dataset(name, base_url=args.base_url, cache_dir=args.cache_dir)
        except GklError as e:
            for kernel_name in kernels:
                rows.append((name, kernel_name, "NA"))
            notes.append(f"{name}: load failed: {e}")
            continue
        graphs = list(bundle.graphs)
        if args.max_graphs is not None:
            graphs = graphs[: args.max_graphs]
        for kernel_name in kernels:
            spec = KernelSpec(kernel_name=kernel_name, seed=args.seed)
            try:
                times = []
                for _ in range(args.repeats):
                    kernel = make_kernel(spec, max_workers=args.threads)
                    start = time.perf_counter()
                    kernel.fit_transform(graphs)
                    times.append(time.perf_counter() - start)
                rows.append((name, kernel_name, f"{statistics.median(times):.6f}"))
                succeeded += 1
            except GklError as e:
                rows.append((name, kernel_name, "NA"))
                notes.append(f"{name}/{kernel_name}: {e}")
    with open(args.out, "w") as fh:
        fh.write("dataset,kernel,seconds\n")
        for row in rows:
            fh.write(",".join(row) + "\n")
    print(f"wrote {args.out} ({len(rows)} cells, {succeeded} succeeded)")
    for note in notes:
        print(f"note: {note}")
    return 0 if succeeded else 1


def _add_common(parser: argparse.ArgumentParser, with_kernel: bool = True) -> None:
    parser.add_argument("--base-url", default=DEFAULT_BASE_URL, help="dataset repository URL")
    parser.add_argument("--cache-dir", default=None, help="dataset cache directory")
    parser.add_argument("--seed", type=int, default=0, help="seed for all randomness")
    parser.add_argument("--threads", type=int, default=1, help="worker cap for pairwise kernels")
    if with_kernel:
        parser.add_argument("--kernel", required=True, choices=KERNEL_NAMES)
        parser.add_argument(
            "--param",
            action="append",
            metavar="NAME=VALUE",
            help="kernel parameter (repeatable); framework-side extras go to the base kernel",
        )
        parser.add_argument("--normalize", action="store_true", help="cosine-normalize the matrix")
        parser.add_argument("--nystrom", type=int, default=None, metavar="Q", help="Nystrom components")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gkl", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_fetch = sub.add_parser("fetch", help="download a dataset into the cache")
    p_fetch.add_argument("name")
    p_fetch.add_argument("--base-url", default=DEFAULT_BASE_URL)
    p_fetch.add_argument("--cache-dir", default=None)
    p_fetch.set_defaults(func=cmd_fetch)

    p_compute = sub.add_parser("compute", help="compute a kernel matrix and write CSV")
    p_compute.add_argument("dataset")
    _add_common(p_compute)
    p_compute.add_argument("--out", default=None, help="output CSV path")
    p_compute.set_defaults(func=cmd_compute)

    p_classify = sub.add_parser("classify", help="train/test split, SVM, accuracy")
    p_classify.add_argument("dataset")
    _add_common(p_classify)
    p_classify.add_argument("--test-fraction", type=float, default=0.1)
    p_classify.add_argument("--C", dest="C", type=float, default=1.0, help="SVM box constraint")
    p_classify.set_defaults(func=cmd_classify)

    p_bench = sub.add_parser("benchmark", help="time fit_transform per dataset and kernel")
    p_bench.add_argument("datasets", nargs="+")
    p_bench.add_argument("--kernels", default="all", help="comma-separated kernel names or 'all'")
    p_bench.add_argument("--repeats", type=int, default=1)
    p_bench.add_argument("--out", default="timings.csv")
    p_bench.add_argument("--max-graphs", type=int, default=None, help="use only the first N graphs")
    p_bench.add_argument("--base-url", default=DEFAULT_BASE_URL)
    p_bench.add_argument("--cache-dir", default=None)
    p_bench.add_argument("--seed", type=int, default=0)
    p_bench.add_argument("--threads", type=int, default=1)
    p_bench.set_defaults(func=cmd_benchmark)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _IO_ERRORS as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except _INPUT_ERRORS as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except NumericalError as e:
        print(f"error: {e}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
