"""
app.py
Finiteness of automaton semigroups of bounded S-activity.
Command-line entry point.

Usage:
    python app.py finite data/automata/adding_machine.aut --S "{e}"
    python app.py sub-finite combined --gens z
    python app.py buchi adding_machine --dot buchi.dot -v
    python app.py orbit adding_machine --word 00 --R "e*" --dot product.dot --nfra-dot nfra.dot
"""

import argparse
import logging
import os
import sys
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

# Allow imports from project root
sys.path.insert(0, os.path.dirname(__file__))

from data.corpus import BUNDLED, bundled_path
from models.activity import active_counts, activity_profile, automaton_active_acceptor, growth_class
from models.automaton import act, dual, dual_act, minimize
from models.buchi import buchi_nonempty, buchi_summary
from models.expansion import build_nfra
from models.nerode import NerodeDFA, nerode_image
from models.orbits import find_expander, orbit_growth, orbital_transducer, product_with_R
from models.semigroup import ExceedsCap, SaturatedAutomaton, discover_closed_subsets, saturate
from utils.config import LIMITS, SCHEMA, configure_logging
from utils.decision import (
    check_preconditions,
    decide_finiteness,
    decide_r_finiteness,
    decide_subsemigroup_finiteness,
    dual_torsion_checks,
    orbit_acceptor,
)
from utils.errors import EXIT_OK, AutomatonError, InputError, ResourceLimitError
from utils.reports import activity_report, error_report, render_json, render_text, torsion_report, verdict_report, witness_dict
from utils.textformat import ProblemInstance, parse_instance, parse_word, parse_word_list, resolve_r, serialize_automaton
from utils.visualization import (
    activity_chart,
    automaton_to_dot,
    buchi_to_dot,
    nfra_to_dot,
    orbit_growth_chart,
    orbital_to_dot,
    product_to_dot,
)

logger = logging.getLogger(__name__)

COMMANDS = (
    "activity", "orbit", "finite", "sub-finite", "torsion", "buchi", "witness",
    "act", "minimize", "dual", "subsets", "expands",
)


# ── Argument parsing ────────────────────────────────────────────────────────────
def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="app.py",
        description="Decide finiteness questions for automaton semigroups of bounded S-activity.",
    )
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("automaton", help="automaton file or the name of a bundled automaton")
    parser.add_argument("--S", dest="S", help="closed subset, e.g. '{e,z}' or 'Q'")
    parser.add_argument("--R", dest="R", help="'Q*', a regular expression over states or '@file.dfa'")
    parser.add_argument("--gens", help="comma-separated generator state words for sub-finite")
    parser.add_argument("--word", default="", help="letter word (orbit, expands, act)")
    parser.add_argument("--loop", help="loop word for the orbit growth table")
    parser.add_argument("--state-word", default="", help="state word for act")
    parser.add_argument("--max-len", type=int, default=3, help="longest extension tried by expands")
    parser.add_argument("--n-max", type=int, default=8, help="longest length in the activity counts")
    parser.add_argument("--k-max", type=int, default=4, help="loop repetitions in orbit growth tables")
    parser.add_argument("--cap", type=int, default=LIMITS["subsemigroup_cap"])
    parser.add_argument("--n-jobs", type=int, default=LIMITS["n_jobs"])
    parser.add_argument("--buchi-limit", type=int, default=LIMITS["buchi_state_limit"])
    parser.add_argument("--dot", help="write a DOT rendering of the main structure here (orbit: the R-product)")
    parser.add_argument("--transducer-dot", help="orbit: write the orbital transducer as DOT here")
    parser.add_argument("--nfra-dot", help="orbit: write the expansion acceptor A_w as DOT here")
    parser.add_argument("--html", help="write a Plotly chart here (orbit growth or active-word counts)")
    parser.add_argument("--format", choices=("json", "text"), default="json")
    parser.add_argument("-v", "--verbose", action="count", default=0)
    return parser


def load_instance(args: argparse.Namespace) -> ProblemInstance:
    """Read the automaton file (or bundled automaton) named on the command line."""
    path = Path(args.automaton)
    options = {
        "S": args.S,
        "R": args.R,
        "gens": args.gens,
        "word": args.word,
        "loop": args.loop,
        "state_word": args.state_word,
        "max_len": args.max_len,
        "n_max": args.n_max,
        "k_max": args.k_max,
        "cap": args.cap,
        "n_jobs": args.n_jobs,
        "buchi_limit": args.buchi_limit,
        "dot": args.dot,
        "transducer_dot": args.transducer_dot,
        "nfra_dot": args.nfra_dot,
        "html": args.html,
        "format": args.format,
    }
    if not path.is_file() and args.automaton in BUNDLED:
        path = bundled_path(args.automaton)
        if options["S"] is None:
            options["S"] = ",".join(BUNDLED[args.automaton]["S"])
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {args.automaton}: {exc.strerror}") from exc
    return parse_instance(text, path=str(path), options=options)


# ── Command helpers ─────────────────────────────────────────────────────────────
def _saturated(instance: ProblemInstance) -> SaturatedAutomaton:
    if instance.subset is None:
        raise InputError("this command needs a closed subset (--S or an 'S = …' line)")
    return saturate(instance.automaton, instance.subset, int(instance.options.get("cap", LIMITS["subsemigroup_cap"])))


def _r_over(instance: ProblemInstance, SA: Optional[SaturatedAutomaton] = None) -> NerodeDFA:
    """R over the original states, or carried to the states of SA."""
    D = resolve_r(instance.r_spec, instance.automaton.states)
    if SA is None:
        return D
    return nerode_image(D, SA.origin_map, SA.automaton.states)


def _write(path: Optional[str], text: str) -> None:
    if path:
        Path(path).write_text(text, encoding="utf-8")
        logger.info("wrote %s", path)


def _letters(instance: ProblemInstance, key: str) -> Tuple[str, ...]:
    return parse_word(str(instance.options.get(key) or ""), instance.automaton.alphabet)


def _report(command: str, **fields) -> Dict:
    out: Dict = {"schema": SCHEMA, "command": command}
    out.update(fields)
    return out


# ── Dispatch ────────────────────────────────────────────────────────────────────
def run_command(instance: ProblemInstance, command: str) -> Tuple[Dict, int]:
    """
    Run one command on a parsed instance.

    Returns:
        Tuple of (report dictionary, exit code).

    Raises:
        AutomatonError / ResourceLimitError: propagated to `main`, which maps
        them to exit codes.
    """
    T = instance.automaton
    opts = instance.options
    n_jobs = int(opts.get("n_jobs", LIMITS["n_jobs"]))
    cap = int(opts.get("cap", LIMITS["subsemigroup_cap"]))
    limit = int(opts.get("buchi_limit", LIMITS["buchi_state_limit"]))

    if command == "activity":
        SA = _saturated(instance)
        N = automaton_active_acceptor(SA)
        n_max = int(opts.get("n_max", 8))
        counts = active_counts(N, n_max)
        if opts.get("html"):
            activity_chart(activity_profile(SA, n_max)).write_html(opts["html"])
        return activity_report(growth_class(N), instance.subset, counts), EXIT_OK

    if command == "orbit":
        w = _letters(instance, "word")
        D = _r_over(instance)
        O = orbital_transducer(T, w)
        P = product_with_R(O, D)
        orbit = sorted(P.orbit())
        _write(opts.get("dot"), product_to_dot(P))
        _write(opts.get("transducer_dot"), orbital_to_dot(O))
        if opts.get("nfra_dot"):
            SA = _saturated(instance)
            D_sat = _r_over(instance, SA)
            bound = check_preconditions(SA, D_sat, require_suffix_closed=False)
            A, _ = build_nfra(SA, w, D_sat, bound)
            _write(opts["nfra_dot"], nfra_to_dot(A))
        report = _report("orbit", word=" ".join(w), size=len(orbit), orbit=[" ".join(u) for u in orbit])
        if opts.get("loop"):
            table = orbit_growth(T, w, _letters(instance, "loop"), D, int(opts.get("k_max", 4)))
            report["growth"] = table["orbit_size"].tolist()
            if opts.get("html"):
                orbit_growth_chart(table).write_html(opts["html"])
        return report, EXIT_OK

    if command == "finite":
        SA = _saturated(instance)
        if instance.r_spec is None or instance.r_spec.strip() == "Q*":
            verdict = decide_finiteness(SA, cap=cap, n_jobs=n_jobs, state_limit=limit)
        else:
            verdict = decide_r_finiteness(SA, _r_over(instance, SA), n_jobs=n_jobs, state_limit=limit)
        return verdict_report(verdict, command), EXIT_OK

    if command == "sub-finite":
        if not opts.get("gens"):
            raise InputError("sub-finite needs --gens")
        if instance.subset is None:
            raise InputError("sub-finite needs a closed subset (--S)")
        gens = parse_word_list(str(opts["gens"]), T.states)
        verdict = decide_subsemigroup_finiteness(
            T, instance.subset, gens, cap=cap, n_jobs=n_jobs, state_limit=limit
        )
        return verdict_report(verdict, command), EXIT_OK

    if command == "torsion":
        return torsion_report(dual_torsion_checks(_saturated(instance), n_jobs=n_jobs, state_limit=limit)), EXIT_OK

    if command in ("buchi", "witness"):
        SA = _saturated(instance)
        B = orbit_acceptor(SA, _r_over(instance, SA), n_jobs=n_jobs, state_limit=limit)
        if command == "buchi":
            _write(opts.get("dot"), buchi_to_dot(B))
            return _report("buchi", **buchi_summary(B)), EXIT_OK
        witness = buchi_nonempty(B)
        if witness is None:
            return _report("witness", witness=None), EXIT_OK
        table = orbit_growth(T, witness.stem, witness.loop, _r_over(instance), int(opts.get("k_max", 4)))
        return _report("witness", witness=witness_dict(witness), growth=table["orbit_size"].tolist()), EXIT_OK

    if command == "act":
        p = parse_word(str(opts.get("state_word") or ""), T.states)
        u = _letters(instance, "word")
        return _report("act", output=" ".join(act(T, p, u)), dual=" ".join(dual_act(T, p, u))), EXIT_OK

    if command == "minimize":
        M, image = minimize(T)
        _write(opts.get("dot"), automaton_to_dot(M))
        return _report("minimize", automaton=serialize_automaton(M), image=image), EXIT_OK

    if command == "dual":
        return _report("dual", automaton=serialize_automaton(dual(T))), EXIT_OK

    if command == "subsets":
        rows: List[Dict] = []
        for subset, result in discover_closed_subsets(T, cap=cap):
            order = None if isinstance(result, ExceedsCap) else result.order
            rows.append({"S": list(subset), "order": order})
        return _report("subsets", subsets=rows), EXIT_OK

    if command == "expands":
        w = _letters(instance, "word")
        x = find_expander(T, w, _r_over(instance), int(opts.get("max_len", 3)))
        return _report("expands", word=" ".join(w), expander=None if x is None else " ".join(x)), EXIT_OK

    raise InputError(f"unknown command '{command}'")


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(args.verbose)
    render = render_text if args.format == "text" else render_json
    try:
        instance = load_instance(args)
        report, code = run_command(instance, args.command)
    except (AutomatonError, ResourceLimitError) as exc:
        code = exc.exit_code
        logger.info("%s failed: %s", args.command, exc)
        report = error_report(exc, code)
    if args.format == "text" and "automaton" in report:
        sys.stdout.write(report["automaton"])
    else:
        sys.stdout.write(render(report))
    return code


if __name__ == "__main__":
    sys.exit(main())
