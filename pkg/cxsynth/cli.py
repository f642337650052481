import json
import logging
import sys
from pathlib import Path

import click
from marshmallow import ValidationError

from config.settings import Config
from cxsynth.errors import CxSynthError, SpecError
from cxsynth.generators.lnn import KINDS, GeneratorSpec, expected_metrics
from cxsynth.labels import LabelState
from cxsynth.metrics import metrics as circuit_metrics
from cxsynth.noise import NoiseParams, best_design, crossover_exponent, fidelity_from_counts, process_fidelity
from cxsynth.schemas import AnglesSchema, CircuitSchema, GraphSchema, ProblemSchema
from cxsynth.sweeps import check_asymptote as asymptote_report, sweep, to_csv
from cxsynth.synthesis import synthesize
from cxsynth.topology import parse_graph_spec
from cxsynth.utils import qasm
from cxsynth.verification import connectivity_check, generator_check, target_labels

logger = logging.getLogger(__name__)

FAMILIES = ("lnn", "ladder", "grid", "heavy-hex", "all-to-all")


class CxGroup(click.Group):
    """Exit 0 on success, 1 on usage or domain errors, 2 on failed certification."""

    def main(self, args=None, prog_name=None, complete_var=None, standalone_mode=True, **extra):
        try:
            rv = super().main(args, prog_name, complete_var, standalone_mode=False, **extra)
        except click.ClickException as e:
            e.show()
            sys.exit(1)
        except click.Abort:
            click.echo("Aborted!", err=True)
            sys.exit(1)
        except ValidationError as e:
            click.echo(f"Error: invalid input: {json.dumps(e.messages, sort_keys=True)}", err=True)
            sys.exit(1)
        except CxSynthError as e:
            click.echo(f"Error: {e.message}", err=True)
            for line in e.detail or ():
                click.echo(f"  {line}", err=True)
            sys.exit(e.exit_code)
        sys.exit(rv if isinstance(rv, int) else 0)


def _dump(body):
    click.echo(json.dumps(body, indent=2, sort_keys=True))


def _read_json(path):
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as e:
        raise SpecError(f"{path}: not valid JSON ({e.msg} at line {e.lineno})")


def _load_graph(text):
    if text.startswith("custom:"):
        return GraphSchema().load(_read_json(text.partition(":")[2]))
    return parse_graph_spec(text)


def _load_circuit(path):
    if str(path).endswith(".qasm"):
        return qasm.parse(Path(path).read_text())
    return CircuitSchema().load(_read_json(path))


def _write_circuit(circuit, path, fmt):
    text = qasm.emit(circuit) if fmt == "qasm" else json.dumps(circuit.to_dict(), indent=2) + "\n"
    Path(path).write_text(text)


@click.group(name="cxsynth", cls=CxGroup)
@click.option("--verbose", "-v", is_flag=True, help="Log at DEBUG level.")
def cli(verbose):
    """Connectivity-aware CNOT and rotation circuit synthesis."""
    logging.basicConfig(level=logging.DEBUG if verbose else Config.LOG_LEVEL)


@cli.command()
@click.option("--algo", type=click.Choice(["gen", "qft", "qft-approx", "qaoa", "trotter"]), required=True)
@click.option("--graph", "graph_spec", required=True, help="lnn:N, ladder:N, grid:RxC, heavy-hex:CELLS, all-to-all:N or custom:FILE")
@click.option("--k", type=int, default=2, show_default=True, help="Body order for --algo gen.")
@click.option("--p", type=int, default=None, help="QAOA cycles; must match the angle file.")
@click.option("--angles", "angles_file", type=click.Path(exists=True, dir_okay=False), help='JSON {"beta": [...], "alpha": [...]}')
@click.option("--problem", "problem_file", type=click.Path(exists=True, dir_okay=False), help="Problem JSON.")
@click.option("--threshold", type=float, default=0.0, show_default=True)
@click.option("--tau", type=float, default=0.1, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None, help="Circuit output file.")
@click.option("--format", "fmt", type=click.Choice(["json", "qasm"]), default="json", show_default=True)
@click.option("--f-2q", type=float, default=None, help="Two-qubit gate fidelity for a noise score.")
@click.option("--f-idle", type=float, default=None, help="Idle fidelity for a noise score.")
@click.option("--allow-uncertified", is_flag=True, help="Emit the report even if certification fails.")
@click.option("--no-dense", is_flag=True, help="Skip the dense unitary check of application circuits.")
def synth(algo, graph_spec, k, p, angles_file, problem_file, threshold, tau, out, fmt, f_2q, f_idle,
          allow_uncertified, no_dense):
    """Synthesize a circuit, certify it and print its report."""
    graph = _load_graph(graph_spec)
    options = {
        "algo": algo, "k": k if algo == "gen" else None, "p": p, "threshold": threshold if algo == "qft-approx" else None,
        "tau": tau if algo == "trotter" else None, "f_2q": f_2q, "f_idle": f_idle,
        "allow_uncertified": allow_uncertified, "dense": not no_dense,
    }
    if algo in ("qaoa", "trotter"):
        if not problem_file:
            raise click.UsageError(f"--algo {algo} needs --problem")
        options["problem"] = ProblemSchema().load(_read_json(problem_file))
    if algo == "qaoa":
        if not angles_file:
            raise click.UsageError("--algo qaoa needs --angles")
        options["angles"] = AnglesSchema().load(_read_json(angles_file))
    report = synthesize(graph, options)
    body = report.to_dict()
    if out:
        _write_circuit(report.circuit, out, fmt)
        body["exports"] = [str(out)]
    elif fmt == "qasm":
        body["qasm"] = qasm.emit(report.circuit)
    else:
        body["circuit"] = report.circuit.to_dict()
    _dump(body)
    if not report.certified:
        return 2


@cli.command()
@click.argument("circuit_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--target", default="k-body:2", show_default=True, help="k-body:K, up-to:K or special:K")
@click.option("--graph", "graph_spec", default=None)
def verify(circuit_file, target, graph_spec):
    """Certify a circuit file (JSON or .qasm) against a label target."""
    circuit = _load_circuit(circuit_file)
    certificate = generator_check(circuit, LabelState.single_body(circuit.n), target_labels(target, circuit.n))
    if graph_spec:
        certificate = certificate.merge(connectivity_check(circuit, _load_graph(graph_spec)))
    _dump(certificate.to_dict())
    if not certificate.ok:
        return 2


@cli.command()
@click.argument("circuit_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--target", default="k-body:2", show_default=True)
def metrics(circuit_file, target):
    """Count, depth, effective depth and per-label averages of a circuit file."""
    circuit = _load_circuit(circuit_file)
    _dump(circuit_metrics(circuit, len(target_labels(target, circuit.n))).to_dict())


@cli.command()
@click.option("--kind", type=click.Choice(KINDS), required=True)
@click.option("--n", type=int, required=True)
@click.option("--k", type=int, default=None)
def expected(kind, n, k):
    """Closed-form size and depth of an LNN construction."""
    _dump(expected_metrics(GeneratorSpec(kind, n, k)).to_dict())


@cli.command()
@click.option("--family", "families", type=click.Choice(FAMILIES), multiple=True, default=("lnn",))
@click.option("--k", type=int, default=2, show_default=True)
@click.option("--n-min", type=int, default=None)
@click.option("--n-max", type=int, default=16, show_default=True)
@click.option("--check-asymptote", is_flag=True, help="Compare mu_n with its recorded limit.")
@click.option("--out", type=click.Path(dir_okay=False), default=None)
def table(families, k, n_min, n_max, check_asymptote, out):
    """CSV sweep family,k,n,count,depth,mu,nu."""
    n_min = k if n_min is None else n_min
    if n_max < n_min:
        raise click.UsageError("--n-max must be >= --n-min")
    rows = []
    for family in families:
        rows += sweep(family, k, range(n_min, n_max + 1))
    text = to_csv(rows)
    if out:
        Path(out).write_text(text)
    else:
        click.echo(text, nl=False)
    if check_asymptote:
        for family in families:
            family_rows = [r for r in rows if r.family == family.replace("-", "_")]
            for entry in asymptote_report(family_rows):
                flag = "" if entry["monotone"] else "  non-monotone"
                click.echo(f"# {family} n={entry['n']} mu={entry['mu']:.4f} target={entry['mu_target']:.4f}{flag}", err=True)


@cli.command()
@click.argument("source", type=click.Path(exists=True, dir_okay=False))
@click.argument("dest", type=click.Path(dir_okay=False))
def export(source, dest):
    """Convert a circuit between JSON and QASM (by file extension)."""
    circuit = _load_circuit(source)
    _write_circuit(circuit, dest, "qasm" if str(dest).endswith(".qasm") else "json")
    click.echo(f"wrote {dest}")


@cli.group()
def noise():
    """Analytical fidelity model."""


@noise.command("fidelity")
@click.option("--n", type=int, required=True)
@click.option("--count", type=int, required=True)
@click.option("--depth", type=float, required=True)
@click.option("--f-2q", type=float, required=True)
@click.option("--f-idle", type=float, default=None)
@click.option("--t1", type=float, default=None)
@click.option("--t2", type=float, default=None)
@click.option("--tg", type=float, default=None)
def noise_fidelity(n, count, depth, f_2q, f_idle, t1, t2, tg):
    if f_idle is None:
        if None in (t1, t2, tg):
            raise click.UsageError("give --f-idle or all of --t1 --t2 --tg")
        params = NoiseParams.from_times(f_2q, t1, t2, tg)
    else:
        params = NoiseParams(f_2q, f_idle)
    _dump({"fidelity": fidelity_from_counts(count, depth, n, params), "params": params.to_dict()})


@noise.command("best-design")
@click.option("--n", type=int, required=True)
@click.option("--f-2q", type=float, required=True)
@click.option("--f-idle", type=float, required=True)
def noise_best_design(n, f_2q, f_idle):
    ranking = best_design(n, NoiseParams(f_2q, f_idle))
    body = ranking.to_dict()
    body["ladder/grid limit"] = str(crossover_exponent(None, "ladder", "grid"))
    _dump(body)


@noise.command("process-fidelity")
@click.argument("probs", type=float, nargs=-1, required=True)
def noise_process_fidelity(probs):
    _dump({"process_fidelity": process_fidelity(probs)})
