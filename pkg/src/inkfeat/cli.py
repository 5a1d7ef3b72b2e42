"""Command line front end.

Exit codes: 0 success, 1 invalid input or request, 2 I/O failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import features as F
from .errors import DegenerateTrainingSet, InkError, MissingRole, UnknownFeatureId
from .inkio import InkDocument, read_document, table_from_vectors, write_document, write_feature_table
from .recognizer import DEFAULT_FEATURES, ClassifierModel, predict_batch, train
from .semantic import ClockAnnotation, clock_features, score_cdt
from .synth import SYMBOL_CLASSES, synthesize

EXIT_OK, EXIT_INVALID, EXIT_IO = 0, 1, 2


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _read_bytes(path: str) -> bytes:
    try:
        with open(path, "rb") as fh:
            return fh.read()
    except OSError as exc:
        raise CliError(EXIT_IO, f"{path}: {exc.strerror or exc}") from exc


def _load(path: str) -> InkDocument:
    data = _read_bytes(path)
    try:
        return read_document(data)
    except InkError as exc:
        raise CliError(EXIT_INVALID, f"{path}: {exc}") from exc


def _emit(data: bytes | str, out: str | None) -> None:
    if isinstance(data, str):
        data = data.encode("utf-8")
    if out is None:
        sys.stdout.write(data.decode("utf-8"))
        sys.stdout.flush()
        return
    try:
        with open(out, "wb") as fh:
            fh.write(data)
    except OSError as exc:
        raise CliError(EXIT_IO, f"{out}: {exc.strerror or exc}") from exc


def _row_id(path: str, gid: str) -> str:
    return f"{os.path.basename(path)}#{gid}"


def _split(values) -> list[str]:
    out = []
    for v in values or []:
        out.extend(x for x in v.split(",") if x)
    return out


def _request(args, default=()) -> F.FeatureRequest:
    sets, ids = _split(args.set), _split(args.features)
    if not sets and not ids:
        ids = list(default)
    req = F.FeatureRequest(sets=tuple(sets), ids=tuple(ids))
    try:
        req.resolve()
    except UnknownFeatureId as exc:
        raise CliError(EXIT_INVALID, str(exc)) from exc
    return req


# ---------------------------------------------------------------------------
# commands


def cmd_validate(args) -> int:
    code = EXIT_OK
    for path in args.paths:
        try:
            _load(path)
        except CliError as exc:
            print(exc, file=sys.stderr)
            code = max(code, exc.code)
    return code


def cmd_extract(args) -> int:
    req = _request(args)
    named = []
    for path in args.paths:
        doc = _load(path)
        named.extend((_row_id(path, dg.id), dg.gesture) for dg in doc.gestures)
    if not named:
        raise CliError(EXIT_INVALID, "no gestures to extract")
    vectors = F.extract_batch([g for _, g in named], req, threads=args.threads)
    table = table_from_vectors(zip((rid for rid, _ in named), vectors))
    _emit(write_feature_table(table, args.format), args.out)
    return EXIT_OK


def cmd_catalog(args) -> int:
    if args.category is not None and args.category not in F.CATEGORIES:
        raise CliError(EXIT_INVALID, f"unknown category {args.category!r}; choose from {', '.join(F.CATEGORIES)}")
    lines = [
        f"{d.id}\t{d.set}\t{d.category}\t{d.flags}"
        for d in F.catalog()
        if args.category is None or d.category == args.category
    ]
    _emit("".join(line + "\n" for line in lines), args.out)
    return EXIT_OK


def cmd_train(args) -> int:
    req = _request(args, DEFAULT_FEATURES)
    samples = []
    for path in args.paths:
        doc = _load(path)
        samples.extend((dg.gesture, doc.labels[dg.id]) for dg in doc.gestures if dg.id in doc.labels)
    try:
        model = train(samples, tuple(req.resolve()))
    except DegenerateTrainingSet as exc:
        raise CliError(EXIT_INVALID, f"cannot train: {exc}") from exc
    _emit(model.to_json(), args.model)
    return EXIT_OK


def cmd_predict(args) -> int:
    try:
        model = ClassifierModel.from_json(_read_bytes(args.model))
    except (ValueError, KeyError) as exc:
        raise CliError(EXIT_INVALID, f"{args.model}: not a model file ({exc})") from exc
    named = []
    for path in args.paths:
        doc = _load(path)
        named.extend((_row_id(path, dg.id), dg.gesture) for dg in doc.gestures)
    preds = predict_batch(model, [g for _, g in named])
    report = {
        rid: {"label": p.label, "margin": p.margin, "rejected": p.rejected}
        for (rid, _), p in zip(named, preds)
    }
    _emit(json.dumps(report, indent=1) + "\n", args.out)
    return EXIT_OK


def cmd_cdt(args) -> int:
    doc = _load(args.path)
    if args.annotations:
        try:
            ann = ClockAnnotation.from_obj(json.loads(_read_bytes(args.annotations)))
        except (ValueError, AttributeError) as exc:
            raise CliError(EXIT_INVALID, f"{args.annotations}: bad annotation file ({exc})") from exc
    else:
        ann = ClockAnnotation.from_labels(doc.labels)
    try:
        feats = clock_features(doc, ann)
    except (MissingRole, InkError) as exc:
        raise CliError(EXIT_INVALID, f"{args.path}: {exc}") from exc
    score, findings = score_cdt(feats)
    report = {"score": score, "findings": findings, "features": feats.as_dict()}
    if args.figure:
        from .plotting import plot_clock

        plot_clock(doc, feats, args.figure, score)
    _emit(json.dumps(report, indent=1) + "\n", args.out)
    return EXIT_OK


def cmd_synth(args) -> int:
    classes = _split([args.cls])
    for c in classes:
        if c not in SYMBOL_CLASSES:
            raise CliError(EXIT_INVALID, f"unknown class {c!r}; choose from {', '.join(SYMBOL_CLASSES)}")
    if not 0.0 <= args.jitter <= 0.2:
        raise CliError(EXIT_INVALID, "--jitter must lie in [0, 0.2]")
    from .inkio import DocGesture

    doc = InkDocument(version=1, test="symbols")
    for c in classes:
        for i in range(args.n):
            gid = f"{c}-{i:04d}"
            doc.gestures.append(DocGesture(gid, None, synthesize(c, args.seed * 100003 + i, args.jitter)))
            doc.labels[gid] = c
    _emit(write_document(doc), args.out)
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="inkfeat", description="Digital ink feature extraction toolkit.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", help="parse and validate ink documents")
    s.add_argument("paths", nargs="+")
    s.set_defaults(func=cmd_validate)

    def feature_args(s):
        s.add_argument("--set", action="append", help="feature set(s): sonntag, rubine, willems, hbf49 or all")
        s.add_argument("--features", action="append", help="comma separated feature ids")

    s = sub.add_parser("extract", help="compute a feature table")
    s.add_argument("paths", nargs="+")
    feature_args(s)
    s.add_argument("--format", choices=("csv", "json"), default="csv")
    s.add_argument("--out")
    s.add_argument("--threads", type=int, default=None, help="worker threads (default: INKFEAT_THREADS or 1)")
    s.set_defaults(func=cmd_extract)

    s = sub.add_parser("catalog", help="list features with category and invariance flags")
    s.add_argument("--category")
    s.add_argument("--out")
    s.set_defaults(func=cmd_catalog)

    s = sub.add_parser("train", help="train a linear classifier on labelled gestures")
    s.add_argument("paths", nargs="+")
    s.add_argument("--model", required=True, help="output model file")
    feature_args(s)
    s.set_defaults(func=cmd_train)

    s = sub.add_parser("predict", help="classify gestures with a trained model")
    s.add_argument("paths", nargs="+")
    s.add_argument("--model", required=True)
    s.add_argument("--out")
    s.set_defaults(func=cmd_predict)

    s = sub.add_parser("cdt", help="score a clock drawing")
    s.add_argument("path")
    s.add_argument("--annotations", help="JSON role map; defaults to the document labels")
    s.add_argument("--figure", help="also render the annotated drawing to this image file")
    s.add_argument("--out")
    s.set_defaults(func=cmd_cdt)

    s = sub.add_parser("synth", help="generate synthetic symbol gestures")
    s.add_argument("--class", dest="cls", required=True, help="symbol class (comma separated for several)")
    s.add_argument("--n", type=int, default=1)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--jitter", type=float, default=0.0)
    s.add_argument("--out")
    s.set_defaults(func=cmd_synth)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"inkfeat {args.command}: {exc}", file=sys.stderr)
        return exc.code


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
