"""Command-line front end for the samplers, annealers, and experiments."""

from __future__ import annotations

import sys

import click
import numpy as np

from .annealing import (AH_TYPE, COMBINED_MIN, KALAI_VEMPALA, AnnealerConfig,
                        TemperatureSchedule, anneal_heuristic, anneal_kv)
from .ellipsoid import ellipsoid_minimize, make_copositive_cap_separator, \
    make_dnn_separator
from .entropic import theta_profile
from .experiments import (ExperimentTable, covariance_experiment,
                          gap_experiment, gen_objective, mean_experiment,
                          separation_experiment)
from .fixtures import gen_extremal_dnn, load_fixtures
from .oracles import copositive_cap_oracle, dnn_oracle

FULL_REF_WALK = 50_000
DESK_REF_WALK = 5_000


def _emit(table: ExperimentTable, out: str | None,
          include_timing: bool = False) -> None:
    if out is None:
        click.echo(table.to_csv(include_timing=include_timing), nl=False)
    else:
        table.to_csv(out, include_timing=include_timing)
        stem = out[:-4] if out.endswith(".csv") else out
        table.to_long_csv(stem + "_long.csv", include_timing=include_timing)
        click.echo(f"wrote {out} and {stem}_long.csv")


def _parse_config(path: str) -> dict:
    """key = value lines; '#' comments and blank lines ignored."""
    out = {}
    with open(path, encoding="utf-8") as fh:
        for raw in fh:
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise click.ClickException(f"bad config line: {raw.rstrip()}")
            key, val = (s.strip() for s in line.split("=", 1))
            out[key] = val
    return out


@click.group()
def main():
    """Simulated annealing over membership oracles: samplers, annealers,
    ellipsoid baseline, and the experiment suites."""


@main.command("theta-ball")
@click.option("--n", type=int, default=3, show_default=True)
@click.option("--s-max", type=float, default=1e3, show_default=True)
@click.option("--samples", type=int, default=200, show_default=True,
              help="grid size")
@click.option("--out", type=click.Path(), default=None)
def theta_ball(n, s_max, samples, out):
    """Directional-variance profile of the unit ball."""
    prof = theta_profile(n, s_max=s_max, grid_size=samples)
    table = ExperimentTable(("n", "s", "value"))
    for row in prof.rows():
        table.add(*row)
    _emit(table, out)
    click.echo(f"sup estimate: {prof.sup_estimate:.6f} "
               f"(bound {(n + 1) / 2:.1f})", err=True)


@main.command("covlab")
@click.option("--body", type=click.Choice(["cube", "dnn"]), default="dnn",
              show_default=True)
@click.option("--m", type=int, default=5, show_default=True,
              help="matrix order for the dnn body")
@click.option("--n", type=int, default=15, show_default=True,
              help="dimension for the cube body")
@click.option("--ell", type=int, multiple=True, default=(100, 1000),
              show_default=True)
@click.option("--samples", type=int, multiple=True, default=(1000, 10000),
              show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--out", type=click.Path(), default=None)
@click.option("--paper-scale", is_flag=True,
              help="use the full-length reference walk")
def covlab(body, m, n, ell, samples, seed, out, paper_scale):
    """Empirical-covariance quality grid."""
    size = n if body == "cube" else m
    ref_walk = FULL_REF_WALK if paper_scale else DESK_REF_WALK
    table = covariance_experiment(body, size, list(ell), list(samples), seed,
                                  ref_walk=ref_walk)
    _emit(table, out)


@main.command("meanlab")
@click.option("--m", type=int, default=5, show_default=True)
@click.option("--ell", type=int, multiple=True, default=(100, 1000),
              show_default=True)
@click.option("--samples", type=int, multiple=True, default=(1000, 10000),
              show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--out", type=click.Path(), default=None)
@click.option("--paper-scale", is_flag=True)
def meanlab(m, ell, samples, seed, out, paper_scale):
    """Empirical-mean quality grid on the doubly-nonnegative body."""
    ref_walk = FULL_REF_WALK if paper_scale else DESK_REF_WALK
    table = mean_experiment(m, list(ell), list(samples), seed,
                            ref_walk=ref_walk)
    _emit(table, out)


@main.command("gap")
@click.option("--m", type=int, default=5, show_default=True)
@click.option("--algorithm", type=click.Choice(["alg2", "alg3"]),
              default="alg3", show_default=True)
@click.option("--ell", type=int, multiple=True, default=(59,),
              show_default=True)
@click.option("--samples", type=int, multiple=True, default=(59,),
              show_default=True)
@click.option("--eps-bar", type=float, default=1e-3, show_default=True)
@click.option("--p", type=float, default=0.1, show_default=True)
@click.option("--alpha", type=float, default=4.0, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--out", type=click.Path(), default=None)
def gap(m, algorithm, ell, samples, eps_bar, p, alpha, seed, out):
    """Final optimality gap of an annealer on a random objective."""
    table = gap_experiment(m, algorithm, list(ell), list(samples), seed,
                           eps_bar=eps_bar, p=p, alpha=alpha)
    _emit(table, out)


@main.command("separate")
@click.option("--method", type=click.Choice(["alg3", "ellipsoid"]),
              default="ellipsoid", show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--eps-bar", type=float, default=1e-3, show_default=True)
@click.option("--p", type=float, default=0.1, show_default=True)
@click.option("--alpha", type=float, default=4.0, show_default=True)
@click.option("--out", type=click.Path(), default=None)
def separate(method, seed, eps_bar, p, alpha, out):
    """Separation objectives over the shipped extremal instances."""
    table = separation_experiment(load_fixtures(), method, seed,
                                  eps_bar=eps_bar, p=p, alpha=alpha)
    _emit(table, out)


@main.command("anneal")
@click.option("--config", "config_path", type=click.Path(exists=True),
              default=None, help="key = value file overriding the flags")
@click.option("--body", type=click.Choice(["dnn", "cap"]), default="dnn",
              show_default=True)
@click.option("--m", type=int, default=5, show_default=True)
@click.option("--algorithm", type=click.Choice(["alg2", "alg3"]),
              default="alg3", show_default=True)
@click.option("--ell", type=int, default=0, help="0 selects the default")
@click.option("--samples", type=int, default=0, help="0 selects the default")
@click.option("--phases", type=int, default=20, show_default=True,
              help="phase count for alg2")
@click.option("--alpha", type=float, default=4.0, show_default=True)
@click.option("--vartheta", type=float, default=0.0,
              help="0 selects the dimension")
@click.option("--eps-bar", type=float, default=1e-3, show_default=True)
@click.option("--p", type=float, default=0.1, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--out", type=click.Path(), default=None,
              help="write the JSON run report here")
def anneal(config_path, body, m, algorithm, ell, samples, phases, alpha,
           vartheta, eps_bar, p, seed, out):
    """Run an annealer on a seeded random objective and report the run."""
    if config_path is not None:
        cfgmap = _parse_config(config_path)
        body = cfgmap.get("body", body)
        m = int(cfgmap.get("m", m))
        algorithm = cfgmap.get("algorithm", algorithm)
        ell = int(cfgmap.get("ell", ell))
        samples = int(cfgmap.get("samples", samples))
        phases = int(cfgmap.get("phases", phases))
        alpha = float(cfgmap.get("alpha", alpha))
        vartheta = float(cfgmap.get("vartheta", vartheta))
        eps_bar = float(cfgmap.get("eps_bar", eps_bar))
        p = float(cfgmap.get("p", p))
        seed = int(cfgmap.get("seed", seed))
    oracle = dnn_oracle(m) if body == "dnn" else copositive_cap_oracle(m)
    n = oracle.dim
    c = gen_objective(m, seed).c
    kind = AH_TYPE if algorithm == "alg2" else COMBINED_MIN
    schedule = TemperatureSchedule(kind, n=n,
                                   vartheta=vartheta if vartheta > 0 else n,
                                   alpha=alpha, T0=1.0)
    cfg = AnnealerConfig(c=c, oracle=oracle, schedule=schedule,
                         epsilon_bar=eps_bar, p=p, ell=ell, N=samples,
                         seed=seed, phases=phases)
    report = anneal_kv(cfg) if algorithm == "alg2" else anneal_heuristic(cfg)
    text = report.to_json()
    if out is None:
        click.echo(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
        click.echo(f"wrote {out}")
    click.echo(f"final objective: {report.final_objective:.6e} "
               f"({report.total_oracle_calls} oracle calls)", err=True)


@main.command("ellipsoid")
@click.option("--body", type=click.Choice(["dnn", "cap"]), default="dnn",
              show_default=True)
@click.option("--m", type=int, default=5, show_default=True)
@click.option("--tol", type=float, default=1e-4, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--trace", is_flag=True, help="emit the per-iteration trace")
@click.option("--out", type=click.Path(), default=None)
def ellipsoid(body, m, tol, seed, trace, out):
    """Ellipsoid baseline on a seeded random objective."""
    c = gen_objective(m, seed).c
    sep = make_dnn_separator(m) if body == "dnn" \
        else make_copositive_cap_separator(m)
    outcome = ellipsoid_minimize(c, sep, R=1.0, tol=tol, keep_trace=trace)
    if trace:
        table = ExperimentTable(("iteration", "cut", "best_value"))
        for row in outcome.trace:
            table.add(*row)
        _emit(table, out)
    click.echo(f"value: {outcome.value:.6e}  gap bound: "
               f"{outcome.certified_gap:.2e}  iterations: "
               f"{outcome.iterations}  oracle calls: {outcome.oracle_calls}")


@main.command("gen-instance")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--out", type=click.Path(), default=None)
def gen_instance(seed, out):
    """Generate a random 6x6 extremal doubly-nonnegative instance."""
    inst = gen_extremal_dnn(seed)
    lines = [" ".join(format(v, "g") for v in row) for row in inst.matrix]
    text = "\n".join(lines) + "\n"
    if out is None:
        click.echo(text, nl=False)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
        click.echo(f"wrote {out}")
    click.echo(f"attempts: {inst.attempts}  cp_screened: {inst.cp_screened}",
               err=True)


if __name__ == "__main__":
    sys.exit(main())
