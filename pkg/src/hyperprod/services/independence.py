"""Independence check service: is the well-nested shuffle of a program's components sound?"""

from typing import Dict, List, Mapping, Optional

from hyperprod.concurrency.annotations import load_annotation
from hyperprod.concurrency.independence import IndependenceSpec, wn_shuffle_soundness_report
from hyperprod.core.logging import logger
from hyperprod.frontend.compile import entry_of, to_vpa
from hyperprod.frontend.parser import parse_file
from hyperprod.models.verification import IndependenceReport
from hyperprod.vpl.vpa import Vpa


def compile_components(source: str, entries: Mapping[int, str]) -> Dict[int, Vpa]:
    """One automaton per component; component i runs ``entries[i]`` (the first procedure by default)."""
    program = parse_file(source)
    if not entries:
        entries = {1: entry_of(program)}
    components = {}
    for i in sorted(entries):
        components[i] = to_vpa(program, entry_of(program, entries[i]), component=i)
    logger.info(f"Compiled {len(components)} component(s) from {source}")
    return components


def check_independence(source: str, annotation: Optional[str], entries: Mapping[int, str]) -> IndependenceReport:
    components = compile_components(source, entries)
    if annotation is None:
        spec = IndependenceSpec({i: frozenset() for i in components})
    else:
        spec = load_annotation(annotation, components)
    automata: List[Vpa] = [components[i] for i in sorted(components)]
    return wn_shuffle_soundness_report(automata, spec)
