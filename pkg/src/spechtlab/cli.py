"""Command line front end: predictions, lattices, tables and verification reports."""

from __future__ import annotations

import csv
import json
import sys
from pathlib import Path

import click

from . import lattice_engine as le
from . import specht_builder as sb
from . import two_part_oracle as oracle
from .partition_kit import Partition, PartitionError, as_partition, binomial, dim_specht

EXIT_OK, EXIT_USAGE, EXIT_TRUNCATED, EXIT_MISMATCH = 0, 2, 3, 4


def _partition(text: str) -> Partition:
    try:
        return Partition.parse(text)
    except PartitionError as exc:
        raise click.BadParameter(str(exc)) from exc


def _emit(obj, out: str | None = None) -> None:
    text = json.dumps(obj, indent=2, sort_keys=False)
    if out:
        Path(out).write_text(text + "\n")
    else:
        click.echo(text)


def _int_list(text: str) -> list[int]:
    out = []
    for tok in text.split(","):
        tok = tok.strip()
        if "-" in tok:
            a, b = tok.split("-")
            out.extend(range(int(a), int(b) + 1))
        elif tok:
            out.append(int(tok))
    return out


@click.group()
@click.option("--threads", type=int, default=None, help="Worker threads for numeric kernels.")
@click.option("--cache", "cache", type=click.Path(file_okay=False), default=None,
              help="Directory for cached module matrices.")
@click.pass_context
def main(ctx, threads, cache):
    """Specht modules of symmetric groups over GF(2)."""
    ctx.ensure_object(dict)
    ctx.obj["cache"] = cache
    if threads:
        import numba

        numba.set_num_threads(max(1, min(threads, numba.config.NUMBA_NUM_THREADS)))


def predict_report(lam: Partition, p: int = 2) -> dict:
    prof = oracle.profile(lam, p)
    out = prof.to_json()
    if p == 2:
        if lam.part(2):
            out["socle"] = oracle.socle_2part(lam).to_json()
        else:
            out["socle"] = {"d": 0, "nu": list(lam.parts)}
        verdict = oracle.uniserial_2part(lam)
        out["uniserial"] = bool(verdict)
        out["uniserial_witness"] = list(verdict.witness) if verdict.witness else None
    return out


@main.command()
@click.argument("lam")
@click.option("--p", "p", type=int, default=2, show_default=True)
@click.option("--json", "out", type=click.Path(dir_okay=False), default=None)
def predict(lam, p, out):
    """Composition factors, containment order, socle and uniseriality of S^LAM."""
    lam = _partition(lam)
    if not lam.is_two_part:
        click.echo(f"{lam} is not a two-part partition; try `spechtlab hooks` for hooks", err=True)
        sys.exit(EXIT_USAGE)
    try:
        _emit(predict_report(lam, p), out)
    except oracle.OracleError as exc:
        click.echo(str(exc), err=True)
        sys.exit(EXIT_USAGE)


def _hook_label(n: int, r: int) -> Partition:
    try:
        return Partition.hook(n, r)
    except PartitionError as exc:
        raise click.BadParameter(str(exc)) from exc


@main.command()
@click.argument("lam", required=False)
@click.option("--hook", nargs=2, type=int, default=None, metavar="N R")
@click.option("--dot", is_flag=True, help="Print the lattice as DOT.")
@click.option("--tikz", is_flag=True, help="Print the lattice as TikZ.")
@click.option("--json", "out", type=click.Path(dir_okay=False), default=None,
              help="Write the lattice JSON here.")
@click.option("--with-basis", is_flag=True, help="Include node bases in the JSON.")
@click.option("--guard", type=int, default=le.DEFAULT_GUARD, show_default=True)
@click.option("--verify", is_flag=True, help="Recheck invariance, coverings and dimensions.")
@click.pass_context
def lattice(ctx, lam, hook, dot, tikz, out, with_basis, guard, verify):
    """Full submodule lattice of S^LAM (or of a hook via --hook N R)."""
    if (lam is None) == (hook is None):
        raise click.UsageError("give either a partition or --hook N R")
    lam = _hook_label(*hook) if hook else _partition(lam)
    if not (lam.is_two_part or lam.is_hook):
        raise click.UsageError(f"{lam}: only two-part and hook shapes have a factor oracle")
    M = sb.rep_matrices(lam, ctx.obj.get("cache"))
    L = le.submodule_lattice(M, factors=le.factor_multiset(lam), guard=guard)
    if out:
        Path(out).write_text(L.dumps(with_basis=with_basis) + "\n")
    if dot:
        click.echo(L.to_dot())
    elif tikz:
        click.echo(L.to_tikz())
    elif not out:
        click.echo(L.dumps())
    code = EXIT_OK
    report: dict = {"module": str(lam), "nodes": len(L), "truncated": L.truncated}
    if L.truncated:
        code = EXIT_TRUNCATED
    else:
        report["uniserial"] = L.is_uniserial()
        report["distributive"] = L.is_distributive()
        if verify:
            problems = le.check_lattice(M, L)
            report["problems"] = problems
            if problems:
                code = EXIT_MISMATCH
        if lam.is_two_part:
            cmp = le.compare_with_prediction(L, oracle.profile(lam))
            report["prediction"] = cmp.to_json()
            if not cmp.ok:
                code = EXIT_MISMATCH
    click.echo(json.dumps(report), err=True)
    sys.exit(code)


def filtration_witness_for(n: int, r: int) -> int | None:
    """Smallest s = r mod 2, s <= r, with S^(n-s,s) not uniserial."""
    for s in range(r % 2, r + 1, 2):
        if not oracle.uniserial_2part(Partition((n - s, s))):
            return s
    return None


HOOK_COLUMNS = ["n", "r", "uniserial", "unique_min", "unique_min_case", "simple_socle",
                "decomposition", "witness_s"]


def hook_row(n: int, r: int) -> dict:
    um = oracle.hook_unique_min(n, r)
    factors = oracle.hook_factors(n, r)
    return {
        "n": n,
        "r": r,
        "uniserial": int(oracle.hook_uniserial(n, r)),
        "unique_min": int(um.holds),
        "unique_min_case": um.case or "",
        # a unique minimal submodule is the same as a simple socle
        "simple_socle": int(um.holds),
        "decomposition": " ".join(f"{n - j},{j}:{m}" for j, m in sorted(factors.items())),
        "witness_s": filtration_witness_for(n, r) if r else "",
    }


@main.command()
@click.option("--n", "ns", default="2-16", show_default=True, help="Values of n, e.g. 8-16 or 9,11.")
@click.option("--r", "rs", default=None, help="Values of r (default all with r <= n - r).")
@click.option("--verify", is_flag=True, help="Recompute uniseriality from matrix lattices.")
@click.option("--verify-max-dim", type=int, default=1500, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None, help="CSV destination.")
@click.option("--diff", "diff_out", type=click.Path(dir_okay=False), default="hooks-diff.csv",
              show_default=True, help="Where disagreements are written under --verify.")
def hooks(ns, rs, verify, verify_max_dim, out, diff_out):
    """CSV atlas of hook Specht modules (n-r, 1^r) with r <= n - r."""
    cols = list(HOOK_COLUMNS) + (["lattice_uniserial", "lattice_simple_socle", "agree"] if verify else [])
    rows, bad = [], []
    wanted_r = set(_int_list(rs)) if rs else None
    for n in _int_list(ns):
        for r in range(0, n // 2 + 1):
            if n - r < r or (wanted_r is not None and r not in wanted_r):
                continue
            row = hook_row(n, r)
            if verify:
                if binomial(n - 1, r) <= verify_max_dim:
                    L = le.lattice_of(Partition.hook(n, r))
                    lu = int(L.is_uniserial())
                    ls = int(sum(1 for a, _, _ in L.edges if a == L.bottom) == 1)
                    row["lattice_uniserial"], row["lattice_simple_socle"] = lu, ls
                    row["agree"] = int(lu == row["uniserial"] and ls == row["simple_socle"])
                    if not row["agree"]:
                        bad.append(row)
                else:
                    row["lattice_uniserial"] = row["lattice_simple_socle"] = row["agree"] = ""
            rows.append(row)
    fh = open(out, "w", newline="") if out else sys.stdout
    try:
        w = csv.DictWriter(fh, fieldnames=cols)
        w.writeheader()
        w.writerows(rows)
    finally:
        if out:
            fh.close()
    if bad:
        with open(diff_out, "w", newline="") as fh:
            w = csv.DictWriter(fh, fieldnames=cols)
            w.writeheader()
            w.writerows(bad)
        click.echo(f"{len(bad)} disagreements written to {diff_out}", err=True)
        sys.exit(EXIT_MISMATCH)


def filtration_report(n: int, r: int) -> dict:
    F = sb.hook_filtration(n, r) if n - r >= r else sb.second_filtration(n, r)
    return {
        "module": str(Partition.hook(n, r)),
        "kind": "hook" if n - r >= r else "second",
        "dims": F.dims,
        "quotient_dims": F.quotient_dims,
        "expected": F.expected,
        "ok": F.ok(),
        "generators": [
            {"label": lab, "first_columns": [list(c) for c in cols]}
            for lab, cols in zip(F.labels, F.column_sets)
        ],
    }


@main.command()
@click.argument("n", type=int)
@click.argument("r", type=int)
@click.option("--json", "out", type=click.Path(dir_okay=False), default=None)
def filtration(n, r, out):
    """Filtration of S^(N-R,1^R) by two-part Specht modules, with its generators."""
    try:
        rep = filtration_report(n, r)
    except sb.BuildError as exc:
        click.echo(str(exc), err=True)
        sys.exit(EXIT_USAGE)
    _emit(rep, out)
    sys.exit(EXIT_OK if rep["ok"] else EXIT_MISMATCH)


def exactseq_report(n: int) -> dict:
    if n % 2:
        raise sb.BuildError("the sequence is built for even n only")
    k = n // 2
    thetas = [sb.theta_hat(i, n) for i in range(k)]
    ranks = [t.rank for t in thetas] + [0]
    junctions = []
    for i in range(k):
        target = (n - i - 1, i + 1)
        zero = True if i + 1 == k else (thetas[i + 1] @ thetas[i]).is_zero()
        junctions.append({
            "module": f"{target[0]},{target[1]}",
            "incoming": i,
            "composite_zero": zero,
            "rank_in": ranks[i],
            "rank_out": ranks[i + 1],
            "dim": dim_specht(target),
            "ok": zero and ranks[i] + ranks[i + 1] == dim_specht(target),
        })
    injective = ranks[0] == 1
    return {"n": n, "injective_start": injective, "junctions": junctions,
            "ok": injective and all(j["ok"] for j in junctions)}


@main.command()
@click.argument("n", type=int)
@click.option("--json", "out", type=click.Path(dir_okay=False), default=None)
def exactseq(n, out):
    """Check im = ker along 0 -> S^(n) -> S^(n-1,1) -> ... -> S^(n/2,n/2) -> 0."""
    try:
        rep = exactseq_report(n)
    except sb.BuildError as exc:
        click.echo(str(exc), err=True)
        sys.exit(EXIT_USAGE)
    _emit(rep, out)
    sys.exit(EXIT_OK if rep["ok"] else EXIT_MISMATCH)


def dual_report(n: int, r: int) -> dict:
    f = sb.duality_map(n, r)
    iso = f.rank == binomial(n - 1, r)
    A = le.lattice_of(Partition.hook(n, r))
    B = le.lattice_of(Partition.hook(n, n - r - 1))
    return {
        "n": n,
        "r": r,
        "rank": f.rank,
        "isomorphism": iso,
        "equivariant": f.is_equivariant(),
        "lattice_nodes": len(A),
        "self_reverse": A.isomorphic(A.reversed()) is not None,
        "matches_partner": A.isomorphic(B) is not None,
        "ok": iso and A.isomorphic(A.reversed()) is not None and A.isomorphic(B) is not None,
    }


@main.command()
@click.argument("n", type=int)
@click.argument("r", type=int)
@click.option("--json", "out", type=click.Path(dir_okay=False), default=None)
def dual(n, r, out):
    """Odd-n self-duality of S^(N-R,1^R): explicit isomorphism and lattice comparison."""
    try:
        rep = dual_report(n, r)
    except sb.BuildError as exc:
        click.echo(str(exc), err=True)
        sys.exit(EXIT_USAGE)
    _emit(rep, out)
    sys.exit(EXIT_OK if rep["ok"] else EXIT_MISMATCH)


def hook_period_report(r: int, ns: list[int]) -> dict:
    lats = {n: le.lattice_of(Partition.hook(n, r)) for n in ns}
    base = ns[0]
    comparisons = []
    for n in ns[1:]:
        mapping = {f"{base - j},{j}" if j else str(base): f"{n - j},{j}" if j else str(n)
                   for j in range(base // 2 + 1)}
        iso = lats[base].isomorphic(lats[n], label_map=mapping, match_dims=False)
        comparisons.append({"n": n, "reference": base, "isomorphic": iso is not None})
    return {
        "r": r,
        "lattices": {str(n): {"nodes": len(L), "dims": sorted(L.dims)} for n, L in lats.items()},
        "comparisons": comparisons,
    }


def distributivity_sweep(n_max: int, max_dim: int = 600) -> list[dict]:
    out = []
    for n in range(2, n_max + 1):
        shapes = [Partition((n - b, b)) for b in range(n // 2 + 1)]
        shapes += [Partition.hook(n, r) for r in range(2, n - 1)]
        for lam in shapes:
            if dim_specht(lam) > max_dim:
                continue
            L = le.lattice_of(lam)
            mult_free = all(v == 1 for v in L.factor_multiset().values())
            out.append({"module": str(lam), "nodes": len(L), "distributive": L.is_distributive(),
                        "multiplicity_free": mult_free})
    return out


@main.command()
@click.option("--hook-period", "hook_period", default=None,
              help="r=R n=N1,N2,... : compare hook lattices with n congruent mod 2^L(r).")
@click.option("--distributive", "dist_n", type=int, default=None,
              help="Sweep two-part and hook lattices up to this n.")
@click.option("--max-dim", type=int, default=600, show_default=True)
@click.option("--json", "out", type=click.Path(dir_okay=False), default=None)
def conjectures(hook_period, dist_n, max_dim, out):
    """Experiments: hook-lattice periodicity and distributivity. Observations only."""
    rep: dict = {}
    if hook_period:
        fields = dict(tok.split("=", 1) for tok in hook_period.split())
        rep["hook_period"] = hook_period_report(int(fields["r"]), _int_list(fields["n"]))
    if dist_n:
        rep["distributivity"] = distributivity_sweep(dist_n, max_dim)
    if not rep:
        raise click.UsageError("choose --hook-period and/or --distributive")
    _emit(rep, out)


@main.command()
@click.argument("which", type=click.Choice(["witness", "unique-min", "filtration-witness", "remaining"]))
@click.option("--parity", type=click.Choice(["even", "odd"]), default=None)
def tables(which, parity):
    """Regenerate the classification tables for hooks."""
    w = csv.writer(sys.stdout)
    if which == "witness":
        for par in [parity] if parity else ["even", "odd"]:
            w.writerow([f"n mod 32 ({par})", "s"])
            w.writerows(oracle.witness_table(par))
    elif which == "unique-min":
        w.writerow(["n mod 2^L(r)", "r"])
        w.writerows(oracle.unique_min_table())
    elif which == "filtration-witness":
        w.writerow(["n mod 2^L(r)", "r", "s"])
        w.writerows(oracle.filtration_witness_table())
    else:
        w.writerow(["n mod 2^L(r)", "r"])
        w.writerows(oracle.remaining_cases_table())


if __name__ == "__main__":
    main()
