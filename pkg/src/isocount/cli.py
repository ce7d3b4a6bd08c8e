"""Command line: run the counting engines, checkpoint, export CSV and SVG, fit growth rates.

    isocount census --n 2 --x 1e6 --out c.csv
    isocount fit --in c.csv
    isocount table1 --xmax 1e6
"""

import argparse
import csv
import math
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from . import analytic, counting, families
from .families import UnsupportedLevel

EXIT_OK, EXIT_USAGE, EXIT_IO, EXIT_LEVEL = 0, 2, 3, 4
CKPT_VERSION = "isogeny-census-ckpt v1"
CSV_HEADER = ["N", "X", "count", "engine"]


class UsageError(Exception):
    pass


# -- CSV ------------------------------------------------------------------------------

def _row_key(r):
    return (r.N, r.X, r.engine)


def csv_text(rows):
    lines = [",".join(CSV_HEADER)]
    for r in sorted(rows, key=_row_key):
        lines.append("%d,%d,%d,%s" % (r.N, r.X, r.count, r.engine))
    return "\n".join(lines) + "\n"


def write_csv(rows, path):
    """Header ``N,X,count,engine`` then rows sorted by (N, X), LF line endings."""
    rows = list(rows)
    if not rows:
        raise ValueError("no rows to write")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(csv_text(rows))


def read_csv(path):
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames != CSV_HEADER:
            raise UsageError("%s: expected header %s" % (path, ",".join(CSV_HEADER)))
        return [counting.CensusResult(int(r["N"]), int(r["X"]), int(r["count"]), r["engine"])
                for r in reader]


# -- checkpoints ------------------------------------------------------------------------

@dataclass
class Checkpoint:
    """Completed partitions per job; a job is (engine, N, X)."""

    version: str = CKPT_VERSION
    jobs: dict = field(default_factory=dict)

    def done(self, engine, N, X):
        parts = self.jobs.get((engine, N, X), {})
        return {pid: c for pid, (c, ok) in parts.items() if ok}

    def record(self, engine, N, X, pid, count):
        self.jobs.setdefault((engine, N, X), {})[pid] = (count, True)


def save_checkpoint(ckpt, path):
    lines = [ckpt.version]
    for (engine, N, X) in sorted(ckpt.jobs):
        for pid in sorted(ckpt.jobs[(engine, N, X)]):
            count, ok = ckpt.jobs[(engine, N, X)][pid]
            lines.append("%s %d %d %d %d %d" % (engine, N, X, pid, count, int(ok)))
    tmp = path + ".tmp"
    with open(tmp, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")
    os.replace(tmp, path)


def load_checkpoint(path):
    with open(path, encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    if not lines or lines[0].strip() != CKPT_VERSION:
        raise UsageError("%s: not a %r checkpoint" % (path, CKPT_VERSION))
    ckpt = Checkpoint()
    for i, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        parts = line.split()
        if len(parts) != 6:
            raise UsageError("%s:%d: malformed checkpoint line" % (path, i))
        engine = parts[0]
        try:
            N, X, pid, count, ok = (int(v) for v in parts[1:])
        except ValueError:
            raise UsageError("%s:%d: malformed checkpoint line" % (path, i))
        ckpt.jobs.setdefault((engine, N, X), {})[pid] = (count, bool(ok))
    return ckpt


def checkpoint_roundtrip(ckpt, path):
    save_checkpoint(ckpt, path)
    return load_checkpoint(path)


# -- SVG ------------------------------------------------------------------------------------

_COLORS = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b",
           "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"]


def render_plot(rows, path, width=640, height=440):
    """Static log-log SVG with one polyline per (N, engine) series."""
    series = {}
    for r in rows:
        if r.count > 0 and r.X > 0:
            series.setdefault((r.N, r.engine), []).append((r.X, r.count))
    series = {k: sorted(v) for k, v in series.items() if len(v) >= 2}
    if not series:
        raise ValueError("need a series with at least 2 positive points")
    pts = [p for v in series.values() for p in v]
    lx = [math.log10(x) for x, _ in pts]
    ly = [math.log10(y) for _, y in pts]
    x0, x1 = math.floor(min(lx)), math.ceil(max(lx))
    y0, y1 = math.floor(min(ly)), math.ceil(max(ly))
    x1, y1 = max(x1, x0 + 1), max(y1, y0 + 1)
    left, right, top, bottom = 60, 150, 20, 50

    def sx(v):
        return left + (math.log10(v) - x0) / (x1 - x0) * (width - left - right)

    def sy(v):
        return height - bottom - (math.log10(v) - y0) / (y1 - y0) * (height - top - bottom)

    out = ['<svg xmlns="http://www.w3.org/2000/svg" width="%d" height="%d" font-family="sans-serif" font-size="11">'
           % (width, height),
           '<rect width="100%" height="100%" fill="white"/>']
    for e in range(x0, x1 + 1):
        x = sx(10.0 ** e)
        out.append('<line x1="%.1f" y1="%d" x2="%.1f" y2="%d" stroke="#ddd"/>' % (x, top, x, height - bottom))
        out.append('<text x="%.1f" y="%d" text-anchor="middle">1e%d</text>' % (x, height - bottom + 16, e))
    for e in range(y0, y1 + 1):
        y = sy(10.0 ** e)
        out.append('<line x1="%d" y1="%.1f" x2="%d" y2="%.1f" stroke="#ddd"/>' % (left, y, width - right, y))
        out.append('<text x="%d" y="%.1f" text-anchor="end">1e%d</text>' % (left - 6, y + 4, e))
    out.append('<text x="%d" y="%d" text-anchor="middle">height bound X</text>'
               % ((left + width - right) // 2, height - 12))
    out.append('<text x="14" y="%d" transform="rotate(-90 14 %d)" text-anchor="middle">count</text>'
               % (height // 2, height // 2))
    for i, ((N, engine), v) in enumerate(sorted(series.items())):
        color = _COLORS[i % len(_COLORS)]
        coords = " ".join("%.1f,%.1f" % (sx(x), sy(y)) for x, y in v)
        out.append('<polyline fill="none" stroke="%s" stroke-width="1.5" points="%s"/>' % (color, coords))
        ly_ = top + 14 + 16 * i
        out.append('<line x1="%d" y1="%d" x2="%d" y2="%d" stroke="%s" stroke-width="2"/>'
                   % (width - right + 10, ly_ - 4, width - right + 30, ly_ - 4, color))
        out.append('<text x="%d" y="%d">N=%d %s</text>' % (width - right + 34, ly_, N, engine))
    out.append("</svg>")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(out) + "\n")


# -- config and argument parsing ------------------------------------------------------------

def parse_height(text):
    """Accept integers and scientific forms such as 1e6."""
    text = text.strip()
    try:
        return int(text)
    except ValueError:
        pass
    try:
        v = float(text)
    except ValueError:
        raise UsageError("malformed height %r" % text)
    if not math.isfinite(v) or v != int(v):
        raise UsageError("height %r is not an integer" % text)
    mant, _, exp = text.lower().partition("e")
    if exp and "." not in mant:
        return int(mant) * 10 ** int(exp)
    return int(v)


def parse_grid(text):
    grid = [parse_height(t) for t in text.split(",") if t.strip()]
    if not grid:
        raise UsageError("empty height grid")
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise UsageError("height grid must be strictly increasing")
    if grid[0] < 1:
        raise UsageError("heights must be positive")
    return grid


def parse_levels(text):
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError("malformed level list %r" % text)


def load_config(path):
    """Flat ``key=value`` lines; ``#`` starts a comment."""
    out = {}
    with open(path, encoding="utf-8") as fh:
        for i, line in enumerate(fh, start=1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError("%s:%d: expected key=value" % (path, i))
            k, v = line.split("=", 1)
            out[k.strip().replace("-", "_")] = v.strip()
    return out


def _parser():
    p = argparse.ArgumentParser(prog="isocount", description="Count elliptic curves with a rational N-isogeny.")
    sub = p.add_subparsers(dest="command", required=True)

    def engine_args(sp, levels=True):
        if levels:
            sp.add_argument("--n", help="level or comma-separated levels")
        sp.add_argument("--x", help="height bound, e.g. 1e6")
        sp.add_argument("--x-grid", dest="x_grid", help="comma-separated increasing height bounds")
        sp.add_argument("--out", help="CSV output path (default: stdout)")
        sp.add_argument("--plot", help="also write a log-log SVG here")
        sp.add_argument("--threads", type=int, help="worker processes")
        sp.add_argument("--partitions", type=int, help="outer-loop partitions per job (default 16)")
        sp.add_argument("--checkpoint", help="checkpoint file")
        sp.add_argument("--resume", action="store_true", help="skip partitions already in the checkpoint")
        sp.add_argument("--config", help="key=value config file; flags override it")

    for name in ("census", "param", "stack"):
        engine_args(sub.add_parser(name, help="run the %s engine" % name))
    engine_args(sub.add_parser("quadric5", help="count points on the level-5 quadric"), levels=False)

    sp = sub.add_parser("summatory", help="sum of B(n^4) for n <= T")
    sp.add_argument("--x", help="T, or comma-separated values")
    sp.add_argument("--out")

    sp = sub.add_parser("fit", help="fit c X^alpha (log X)^beta to CSV rows")
    sp.add_argument("--in", dest="inp", required=True)

    sp = sub.add_parser("table1", help="fitted growth exponents for every level")
    sp.add_argument("--xmax", default="1e6", help="top height for the dense levels 2, 3, 4")
    sp.add_argument("--param-xmax", dest="param_xmax",
                    help="top height for the sparse levels (default max(xmax, 1e12))")
    sp.add_argument("--out", help="CSV of the underlying counts")
    sp.add_argument("--plot")
    sp.add_argument("--threads", type=int)

    sp = sub.add_parser("dump", help="write the frozen family registry")
    sp.add_argument("--out")
    return p


def _settings(args):
    cfg = load_config(args.config) if getattr(args, "config", None) else {}
    get = lambda name, default=None: (getattr(args, name, None) if getattr(args, name, None) is not None
                                      else cfg.get(name, default))
    s = {}
    n = get("n") if args.command != "quadric5" else "5"
    if n is None:
        n = cfg.get("n_list")
    if n is None:
        raise UsageError("--n is required")
    s["levels"] = parse_levels(str(n))
    x, grid = get("x"), get("x_grid")
    if x is not None and grid is not None:
        raise UsageError("give --x or --x-grid, not both")
    if x is None and grid is None:
        raise UsageError("--x or --x-grid is required")
    s["grid"] = parse_grid(str(grid if grid is not None else x))
    s["threads"] = int(get("threads", 1))
    s["partitions"] = int(get("partitions", 16))
    if s["threads"] < 1 or s["partitions"] < 1:
        raise UsageError("threads and partitions must be positive")
    s["out"] = get("out") or get("out_path")
    s["checkpoint"] = get("checkpoint") or get("checkpoint_path")
    s["resume"] = bool(getattr(args, "resume", False)) or str(cfg.get("resume", "")).lower() in ("1", "true", "yes")
    s["plot"] = get("plot")
    return s


def _check_engine_level(engine, N):
    if engine == "census":
        families.check_level(N)
    elif engine == "param":
        families.check_level(N, families.FAMILY_LEVELS)
    elif engine == "stack":
        families.check_level(N, (2, 3, 4, 6, 8, 9))


def run_jobs(engine, levels, grid, threads=1, parts=16, checkpoint=None, resume=False, stop_after=None):
    """Run every (N, X) job; ``stop_after`` aborts after that many fresh partitions (testing hook)."""
    for N in levels:
        _check_engine_level(engine, N)
    ckpt = Checkpoint()
    if checkpoint and resume and os.path.exists(checkpoint):
        ckpt = load_checkpoint(checkpoint)
    fresh = [0]

    def note(N, X):
        def cb(pid, count):
            ckpt.record(engine, N, X, pid, count)
            if checkpoint:
                save_checkpoint(ckpt, checkpoint)
            fresh[0] += 1
            if stop_after is not None and fresh[0] >= stop_after:
                raise KeyboardInterrupt("stopped after %d partitions" % fresh[0])
        return cb

    rows = []
    for N in levels:
        for X in grid:
            done = ckpt.done(engine, N, X)
            if any(pid >= parts for pid in done):
                raise UsageError("checkpoint was written with more partitions than --partitions")
            rows.append(counting.run_engine(engine, N, X, parts, threads, done, note(N, X)))
    return rows


def _emit(rows, out):
    if out:
        write_csv(rows, out)
    else:
        sys.stdout.write(csv_text(rows))


def _fit_rows(rows):
    series = {}
    for r in rows:
        series.setdefault((r.N, r.engine), []).append((r.X, r.count))
    out = []
    for key in sorted(series):
        out.append((key, analytic.fit_growth(sorted(series[key]))))
    return out


def _decades(top, span=6):
    top = int(math.floor(math.log10(top) + 1e-9))
    return [10 ** k for k in range(max(3, top - span + 1), top + 1)]


def table1_jobs(xmax, param_xmax=None):
    """Engine and height grid used for each level by the table1 command.

    Levels growing like X^(1/6) are sparse (N = 12, 16, 18 have no curves
    below 10^6) but their engines only loop to about X^(1/12), so they
    sample decades up to ``param_xmax`` (default max(xmax, 1e12)).  The dense
    levels 2, 3, 4 sample decades up to ``xmax``.
    """
    if param_xmax is None:
        param_xmax = max(xmax, 10 ** 12)
    jobs = []
    for N in sorted(analytic.TABLE1):
        grid = _decades(param_xmax if analytic.TABLE1[N][0] < Fraction(1, 3) else xmax)
        if N == 5:
            jobs.append(("quadric5", N, grid))
        elif N in families.FAMILY_LEVELS:
            jobs.append(("param", N, grid))
        else:
            jobs.append(("census", N, grid))
    return jobs


def run_command(argv):
    try:
        args = _parser().parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE
    try:
        return _dispatch(args)
    except UnsupportedLevel as e:
        print("error: %s" % e, file=sys.stderr)
        return EXIT_LEVEL
    except (UsageError, ValueError) as e:
        print("error: %s" % e, file=sys.stderr)
        return EXIT_USAGE
    except OSError as e:
        print("error: %s" % e, file=sys.stderr)
        return EXIT_IO


def _dispatch(args):
    cmd = args.command
    if cmd in ("census", "param", "stack", "quadric5"):
        s = _settings(args)
        rows = run_jobs(cmd, s["levels"], s["grid"], s["threads"], s["partitions"],
                        s["checkpoint"], s["resume"])
        _emit(rows, s["out"])
        if s["plot"]:
            render_plot(rows, s["plot"])
        return EXIT_OK
    if cmd == "summatory":
        if args.x is None:
            raise UsageError("--x is required")
        lines = ["T,sum,ratio"]
        for T in parse_grid(args.x):
            v = analytic.summatory_b4(T)
            ratio = v / (T * math.log(T) ** 2) if T > 1 else float("nan")
            lines.append("%d,%d,%.6f" % (T, v, ratio))
        text = "\n".join(lines) + "\n"
        if args.out:
            with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
        return EXIT_OK
    if cmd == "fit":
        rows = read_csv(args.inp)
        if not rows:
            raise UsageError("need ≥ 4 samples")
        fits = _fit_rows(rows)
        print("N,engine,alpha,beta,c,residual")
        for (N, engine), fit in fits:
            print("%d,%s,%.4f,%d,%.4g,%.3g" % (N, engine, fit.alpha, fit.beta, fit.c, fit.residual))
        return EXIT_OK
    if cmd == "table1":
        xmax = parse_height(args.xmax)
        if xmax < 10 ** 6:
            raise UsageError("--xmax must be at least 1e6 for a three-decade fit")
        pmax = parse_height(args.param_xmax) if args.param_xmax else None
        rows = []
        for engine, N, grid in table1_jobs(xmax, pmax):
            rows.extend(run_jobs(engine, [N], grid, args.threads or 1))
        fits = _fit_rows([r for r in rows if r.count > 0])
        print("N,engine,alpha,beta,expected_alpha,expected_beta")
        for (N, engine), fit in fits:
            ea, eb = analytic.TABLE1[N]
            print("%d,%s,%.4f,%d,%.4f,%d" % (N, engine, fit.alpha, fit.beta, float(ea), eb))
        if args.out:
            write_csv(rows, args.out)
        if args.plot:
            render_plot(rows, args.plot)
        return EXIT_OK
    if cmd == "dump":
        text = families.dump(args.out)
        if not args.out:
            sys.stdout.write(text)
        return EXIT_OK
    raise UsageError("unknown command %r" % cmd)


def main(argv=None):
    sys.exit(run_command(sys.argv[1:] if argv is None else argv))
