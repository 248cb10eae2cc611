"""Command-line interface.

Each subcommand reads one YAML input file, runs the corresponding
pipeline, and emits a report: human-readable lines followed by a
deterministic JSON block introduced by a `--- structured ---` marker.
Identical inputs and seeds produce byte-identical reports.

Exit codes: 1 for input and parse errors, 2 for hypothesis violations
(e.g. a disconnected graph), 3 for size-limit refusals.
"""

from __future__ import annotations

import json
import sys

import click

from . import __version__
from .cosmo import (
    coefficient_family,
    cosmo_euler_disc,
    cosmo_pad,
    cosmo_pattern,
    energy_vars,
    facet_forms,
    wavefunction,
)
from .discriminant import degree_check, euler_disc, pad_sparse
from .errors import HypothesisError, InputError, SizeLimitError
from .formats import (
    document_kind,
    ingest_cosmo,
    ingest_family,
    ingest_matrix,
    ingest_pattern,
    load_document,
)
from .graphs import star_violation
from .lattice import edge_config, f_vector, lattice_normalize, normalized_volume
from .matroid import signed_euler_char


def _emit(human_lines, structured, output):
    payload = json.dumps(structured, indent=2, sort_keys=True)
    text = "\n".join(human_lines) + "\n--- structured ---\n" + payload + "\n"
    if output:
        with open(output, "w") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)


def _load(path, expected_kinds):
    doc = load_document(path)
    kind = document_kind(doc)
    if kind not in expected_kinds:
        raise InputError(
            f"{path}: expected a {' or '.join(expected_kinds)} document, got {kind}"
        )
    return doc, kind


def _run(body):
    try:
        body()
    except InputError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(1)
    except HypothesisError as exc:
        click.echo(f"hypothesis violation: {exc}", err=True)
        sys.exit(2)
    except SizeLimitError as exc:
        click.echo(f"size limit: {exc}", err=True)
        sys.exit(3)


def _pattern_diagnose(g):
    """Raise with a named precondition when the pattern is unusable."""
    from .graphs import is_connected

    if not is_connected(g):
        raise HypothesisError(
            "precondition violated: pattern graph must be connected"
        )


def _disc_human(rep):
    return str(rep).splitlines()


@click.group()
@click.version_option(version=__version__, prog_name="eulerdisc")
def main():
    """Principal A-determinants and Euler discriminants of sparse
    hyperplane arrangements."""


@main.command()
@click.argument("input_path", metavar="INPUT")
@click.option("--check-degree", is_flag=True, help="Verify the degree identity against the edge polytope volume.")
@click.option("-o", "--output", default=None, help="Write the report to a file instead of stdout.")
def pad(input_path, check_degree, output):
    """Principal A-determinant of a bipartite pattern (or energy graph)."""

    def body():
        doc, kind = _load(input_path, ("pattern", "cosmo"))
        if kind == "pattern":
            g = ingest_pattern(doc)
        else:
            g = cosmo_pattern(ingest_cosmo(doc))
        _pattern_diagnose(g)
        e = pad_sparse(g)
        lines = ["principal A-determinant", f"E_A = {e}",
                 f"degree = {e.total_degree()}", f"factors = {len(e.factors)}"]
        structured = {
            "command": "pad",
            "degree": e.total_degree(),
            "factors": [{"poly": p, "exponent": k} for p, k in e.as_pairs()],
        }
        if check_degree:
            ok = degree_check(e, edge_config(g))
            lines.append(f"degree identity: {'ok' if ok else 'MISMATCH'}")
            structured["degree_identity"] = ok
        _emit(lines, structured, output)

    _run(body)


@main.command("euler-disc")
@click.argument("input_path", metavar="INPUT")
@click.option("--seed", default=0, show_default=True, help="Random seed for sampling and witness search.")
@click.option("--no-witness", is_flag=True, help="Skip the witness search; exponents report unknown.")
@click.option("-o", "--output", default=None, help="Write the report to a file instead of stdout.")
def euler_disc_cmd(input_path, seed, no_witness, output):
    """Euler discriminant of a parametrized family, with multiplicities."""

    def body():
        doc, _ = _load(input_path, ("family",))
        fam = ingest_family(doc)
        rep = euler_disc(fam, seed=seed, find_witnesses=not no_witness)
        structured = {"command": "euler-disc", "seed": seed}
        structured.update(rep.to_dict())
        _emit(_disc_human(rep), structured, output)

    _run(body)


@main.command("beta")
@click.argument("input_path", metavar="INPUT")
@click.option("-o", "--output", default=None, help="Write the report to a file instead of stdout.")
def beta_cmd(input_path, output):
    """Signed Euler characteristic of the arrangement complement whose
    coefficient block is the given matrix (the Crapo beta invariant of
    the matrix prefixed with an identity block)."""

    def body():
        doc, _ = _load(input_path, ("matrix",))
        rows = ingest_matrix(doc)
        value = signed_euler_char(rows)
        _emit(
            [f"beta = {value}"],
            {"command": "beta", "beta": value},
            output,
        )

    _run(body)


@main.command()
@click.argument("input_path", metavar="INPUT")
@click.option("--max-points", default=None, type=int, help="Override the point-count bound for face enumeration.")
@click.option("-o", "--output", default=None, help="Write the report to a file instead of stdout.")
def polytope(input_path, max_points, output):
    """Dimension, normalized volume, and f-vector of an edge polytope."""

    def body():
        doc, kind = _load(input_path, ("pattern", "cosmo"))
        if kind == "pattern":
            g = ingest_pattern(doc)
        else:
            g = cosmo_pattern(ingest_cosmo(doc))
        _pattern_diagnose(g)
        c = edge_config(g)
        d, _ = lattice_normalize(c)
        vol = normalized_volume(c)
        fv = f_vector(c, max_points=max_points)
        lines = [f"dimension = {d}", f"volume = {vol}",
                 f"f-vector = {tuple(fv)}"]
        _emit(
            lines,
            {"command": "polytope", "dimension": d, "volume": vol,
             "f_vector": list(fv)},
            output,
        )

    _run(body)


@main.command("cosmo-psi")
@click.argument("input_path", metavar="INPUT")
@click.option("-o", "--output", default=None, help="Write the report to a file instead of stdout.")
def cosmo_psi(input_path, output):
    """Flat-space wavefunction coefficient of a tree."""

    def body():
        doc, _ = _load(input_path, ("cosmo",))
        g = ingest_cosmo(doc)
        psi = wavefunction(g)
        den = str(psi.den)
        if psi.den_const != 1:
            den = f"{psi.den_const} * {den}"
        lines = ["wavefunction coefficient",
                 f"numerator = {psi.num}", f"denominator = {den}"]
        _emit(
            lines,
            {
                "command": "cosmo-psi",
                "numerator": str(psi.num),
                "denominator_constant": psi.den_const,
                "denominator_factors": [
                    {"poly": p, "exponent": e} for p, e in psi.den.as_pairs()
                ],
            },
            output,
        )

    _run(body)


@main.command("cosmo-facets")
@click.argument("input_path", metavar="INPUT")
@click.option("--max-vertices", default=8, show_default=True, help="Vertex bound for subgraph enumeration.")
@click.option("-o", "--output", default=None, help="Write the report to a file instead of stdout.")
def cosmo_facets(input_path, max_vertices, output):
    """Facet hyperplanes of the polytope attached to an energy graph."""

    def body():
        doc, _ = _load(input_path, ("cosmo",))
        g = ingest_cosmo(doc)
        forms = facet_forms(g, max_vertices=max_vertices)
        lines = [f"facets = {len(forms)}"]
        for f in forms:
            lines.append(f"  {f.constant}  alpha={''.join(map(str, f.alpha))}")
        _emit(
            lines,
            {
                "command": "cosmo-facets",
                "facets": [
                    {"constant": str(f.constant), "alpha": list(f.alpha)}
                    for f in forms
                ],
            },
            output,
        )

    _run(body)


@main.command("cosmo-disc")
@click.argument("input_path", metavar="INPUT")
@click.option("--seed", default=0, show_default=True, help="Random seed for sampling and witness search.")
@click.option("--no-witness", is_flag=True, help="Skip the witness search; exponents report unknown.")
@click.option("-o", "--output", default=None, help="Write the report to a file instead of stdout.")
def cosmo_disc(input_path, seed, no_witness, output):
    """Euler discriminant of the physical coefficient family of an
    energy graph."""

    def body():
        doc, _ = _load(input_path, ("cosmo",))
        g = ingest_cosmo(doc)
        if no_witness:
            fam = coefficient_family(g)
            y_names = [f"Y{eid}" for _, _, eid in g.edges]
            rep = euler_disc(fam, seed=seed, numerator_vars=y_names,
                             find_witnesses=False)
        else:
            rep = cosmo_euler_disc(g, seed=seed)
        structured = {"command": "cosmo-disc", "seed": seed}
        structured.update(rep.to_dict())
        _emit(_disc_human(rep), structured, output)

    _run(body)


if __name__ == "__main__":
    main()
