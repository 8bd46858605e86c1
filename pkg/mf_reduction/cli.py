# -*- coding: utf-8 -*-
import logging
from argparse import ArgumentParser
from pathlib import Path

from mf_reduction.diagram import emit_universal_diagram, gamma_counts, gamma_shape, render_dot
from mf_reduction.divisibility import DEFAULT_LENGTH_CAP, DEFAULT_SIZE_CAP, GcdMonoid, left_lcm, right_lcm
from mf_reduction.errors import EXIT_OK, EXIT_UNDECIDED, InvalidCap, MultifractionError, PresentationSyntaxError, ThreeOreViolation
from mf_reduction.multifraction import Multifraction
from mf_reduction.ore import DEFAULT_SUBSET_CAP, FcClass, check_3ore, check_fc_direct, classify_fc
from mf_reduction.presentation import DEFAULT_CLASS_CAP
from mf_reduction.presets import is_artin_tits, load_presentation
from mf_reduction.reduction import DEFAULT_NODE_CAP, Decision, Reducer
from mf_reduction.statistics import depth_statistics, get_depth_metrics, log_wandb, sample_signed_words

logger = logging.getLogger(__name__)

GAMMA_PREFIX = "gamma:"
LOG_LEVELS = ["DEBUG", "INFO", "WARNING", "ERROR"]


def str2bool(x):
    return str(x).lower() == 'true'


class Config:
    '''Argument parser for the multifraction reduction toolkit.'''
    def __init__(self, args):
        self.parser = ArgumentParser(description='Multifraction reduction over gcd-monoids with length-preserving relations.')
        common = ArgumentParser(add_help=False)
        common.add_argument('source', type=str, help="Presentation preset (free:2, braid:3, raag:ab,bc, affine-A2, artin:ab=3, dihedral:4) or path to a presentation file.")

        # Caps
        common.add_argument('--class_cap', type=int, default=DEFAULT_CLASS_CAP, help="Maximum size of an equivalence class of words.")
        common.add_argument('--basics_cap', type=int, default=DEFAULT_SIZE_CAP, help="Maximum number of basic elements.")
        common.add_argument('--length_cap', type=int, default=DEFAULT_LENGTH_CAP, help="Maximum length of a basic element.")
        common.add_argument('--node_cap', type=int, default=DEFAULT_NODE_CAP, help="Maximum number of multifractions explored by the exhaustive oracle.")
        common.add_argument('--subset_cap', type=int, default=DEFAULT_SUBSET_CAP, help="Maximum number of atoms for the subset-based FC check.")

        # Output
        common.add_argument('--format', type=str, default="text", choices=["text", "keyvalue"], help="Report format.")
        common.add_argument('--output', type=str, default="", help="File receiving the diagram text.")

        # Engine
        common.add_argument('--assert_3ore', type=str2bool, nargs='?', const=True, default=False, help="Trust the 3-Ore condition instead of checking it.")
        common.add_argument('--use_reversing', type=str2bool, nargs='?', const=True, default=False, help="Try word reversing before the lcm search.")
        common.add_argument('--all', type=str2bool, nargs='?', const=True, default=False, help="Use the exhaustive oracle and list every irreducible reduct.")
        common.add_argument('--jobs', type=int, default=1, help="Worker threads for the checker and the oracle.")
        common.add_argument('--seed', type=int, default=0, help='Random seed.')
        common.add_argument('--samples', type=int, default=100, help="Number of random words for stats.")
        common.add_argument('--max_length', type=int, default=12, help="Maximum length of the random words for stats.")
        common.add_argument('--stats_path', type=str, default="", help="CSV file receiving the per-word statistics.")
        common.add_argument('--wandb_project', type=str, default="", help="Weights & Biases project for the stats metrics.")
        common.add_argument('--log_level', type=str, default="WARNING", choices=LOG_LEVELS, help="Logging level.")
        common.add_argument('--progress', type=str2bool, nargs='?', const=True, default=False, help="Show progress bars.")

        commands = self.parser.add_subparsers(dest='command', required=True)
        commands.add_parser('solve', parents=[common], help="Decide whether a signed word represents 1.").add_argument('word', type=str)
        commands.add_parser('nf', parents=[common], help="Normal form, depth and denominator of a signed word.").add_argument('word', type=str)
        equal = commands.add_parser('equal', parents=[common], help="Decide whether two signed words are equal in the group.")
        equal.add_argument('word', type=str)
        equal.add_argument('other', type=str)
        commands.add_parser('reduce', parents=[common], help="Reduce a multifraction such as a/aba/b.").add_argument('multifraction', type=str)
        commands.add_parser('check', parents=[common], help="3-Ore, 2-Ore and FC report.")
        commands.add_parser('basics', parents=[common], help="Right and left basic elements.")
        commands.add_parser('class', parents=[common], help="Equivalence class of a positive word.").add_argument('word', type=str)
        for name, text in (('lcm', "Right and left lcm of two positive words."), ('gcd', "Right and left gcd of two positive words.")):
            sub = commands.add_parser(name, parents=[common], help=text)
            sub.add_argument('word', type=str)
            sub.add_argument('other', type=str)
        commands.add_parser('diagram', parents=[common], help="DOT text of a reduction diagram, or of gamma:<n>.").add_argument('target', type=str)
        commands.add_parser('stats', parents=[common], help="Depth statistics of random words.")

        self.args = args
        args_parsed = self.parser.parse_args(args)
        for arg_name in vars(args_parsed):
            self.__dict__[arg_name] = getattr(args_parsed, arg_name)

        self.output = Path(self.output).resolve() if self.output else None
        self.stats_path = Path(self.stats_path.strip()).resolve() if self.stats_path.strip() else None

    def validate(self):
        for name in ('class_cap', 'basics_cap', 'length_cap', 'node_cap', 'subset_cap', 'jobs'):
            if getattr(self, name) <= 0:
                raise InvalidCap("--%s must be positive, got %d" % (name, getattr(self, name)))


#~~~~~~~~~ context ~~~~~~~~~

def build_reducer(config) -> Reducer:
    presentation = load_presentation(config.source, class_cap=config.class_cap)
    monoid = GcdMonoid(presentation, size_cap=config.basics_cap, length_cap=config.length_cap,
                       use_reversing=config.use_reversing)
    return Reducer(monoid, assume_3ore=config.assert_3ore, node_cap=config.node_cap, jobs=config.jobs,
                   progress=config.progress)


def yes_no(flag):
    return "yes" if flag else "no"


def pass_fail(flag):
    return "pass" if flag else "fail"


def format_elements(elements):
    return " ".join(str(e) for e in elements) if elements else "none"


#~~~~~~~~~ commands: each returns (exit status, report pairs, extra lines) ~~~~~~~~~

def cmd_solve(config):
    reducer = build_reducer(config)
    w = reducer.presentation.parse_signed_text(config.word)
    decision, method = reducer.decide_identity(w, exhaustive=config.all)
    status = EXIT_UNDECIDED if decision is Decision.UNDECIDED else EXIT_OK
    return status, [("identity", decision.value), ("method", method)], []


def cmd_nf(config):
    reducer = build_reducer(config)
    nf = reducer.normal_form(reducer.presentation.parse_signed_text(config.word))
    denominator = "none" if nf.mf.is_empty else str(nf.denominator)
    return EXIT_OK, [("normal_form", str(nf)), ("depth", nf.depth), ("denominator", denominator)], []


def cmd_equal(config):
    reducer = build_reducer(config)
    parse = reducer.presentation.parse_signed_text
    equal = reducer.group_equal(parse(config.word), parse(config.other))
    return EXIT_OK, [("equal", str(equal).lower())], []


def cmd_reduce(config):
    reducer = build_reducer(config)
    a = Multifraction.parse(config.multifraction, reducer.presentation)
    if config.all:
        leaves = sorted(reducer.naive_reduce(a), key=str)
        report = [("initial", str(a)), ("reducts", " ".join(str(b) for b in leaves)),
                  ("confluent", yes_no(len(leaves) == 1))]
        return EXIT_OK, report, []
    nf, trace = reducer.reduce_hat(a)
    report = [("initial", str(a)), ("final", str(nf)), ("steps", len(trace.steps))]
    return EXIT_OK, report, trace.lines()


def cmd_check(config):
    reducer = build_reducer(config)
    monoid = reducer.monoid
    report = check_3ore(monoid, jobs=config.jobs, progress=config.progress)
    fc = "n/a"
    if is_artin_tits(monoid.presentation):
        fc_class = classify_fc(monoid, report)
        direct = check_fc_direct(monoid, subset_cap=config.subset_cap)
        if direct.fc_class is not fc_class:
            logger.warning("subset check disagrees: %s vs %s", direct.fc_class.value, fc_class.value)
        fc = yes_no(fc_class is FcClass.FC)
    lines = [
        ("right_3ore", pass_fail(report.satisfies_right_3ore)),
        ("left_3ore", pass_fail(report.satisfies_left_3ore)),
        ("3ore", pass_fail(report.satisfies_3ore)),
        ("2ore", pass_fail(report.satisfies_2ore)),
        ("witness", format_elements(report.witness)),
        ("fc", fc),
        ("conditional", yes_no(report.conditional)),
    ]
    return EXIT_OK, lines, []


def cmd_basics(config):
    monoid = build_reducer(config).monoid
    table = monoid.table
    by_length = lambda basics: sorted(basics, key=lambda e: e.sort_key())
    report = [
        ("right_basics", format_elements(by_length(table.right_basics))),
        ("left_basics", format_elements(by_length(table.left_basics))),
        ("count", len(table.right_basics | table.left_basics)),
        ("c", table.C),
    ]
    return EXIT_OK, report, []


def cmd_class(config):
    presentation = load_presentation(config.source, class_cap=config.class_cap)
    word = presentation.parse_word(config.word)
    members = sorted(presentation.equivalence_class(word))
    report = [("canonical", presentation.format_word(members[0])), ("size", len(members)),
              ("class", " ".join(presentation.format_word(w) for w in members))]
    return EXIT_OK, report, []


def cmd_lcm(config):
    monoid = build_reducer(config).monoid
    a, b = monoid.element(config.word), monoid.element(config.other)
    right, left = right_lcm(monoid, a, b), left_lcm(monoid, a, b)
    report = [("right_lcm", "none" if right is None else str(right.lcm))]
    if right is not None:
        report.append(("right_lcm_factors", "%s*%s = %s*%s" % (a, right.right_complement, b, right.left_complement)))
    report.append(("left_lcm", "none" if left is None else str(left.lcm)))
    if left is not None:
        report.append(("left_lcm_factors", "%s*%s = %s*%s" % (left.right_complement, a, left.left_complement, b)))
    return EXIT_OK, report, []


def cmd_gcd(config):
    monoid = build_reducer(config).monoid
    a, b = monoid.element(config.word), monoid.element(config.other)
    return EXIT_OK, [("right_gcd", str(monoid.right_gcd(a, b))), ("left_gcd", str(monoid.left_gcd(a, b)))], []


def cmd_diagram(config):
    if config.target.startswith(GAMMA_PREFIX):
        try:
            n = int(config.target[len(GAMMA_PREFIX):])
        except ValueError:
            raise PresentationSyntaxError("expected gamma:<even n>, got %r" % config.target)
        diagram = gamma_shape(n)
        summary = [(key, value) for key, value in gamma_counts(diagram).items()]
    else:
        reducer = build_reducer(config)
        a = Multifraction.parse(config.target, reducer.presentation)
        _, trace = reducer.reduce_universal(a)
        diagram = emit_universal_diagram(reducer.monoid, trace)
        summary = [("tiles", len(diagram.tiles))]
    if config.output is None:
        return EXIT_OK, [], render_dot(diagram).splitlines()
    diagram.write(config.output)
    return EXIT_OK, summary + [("nodes", diagram.g.number_of_nodes()), ("written", str(config.output))], []


def cmd_stats(config):
    reducer = build_reducer(config)
    words = sample_signed_words(reducer.presentation, config.samples, config.max_length, config.seed)
    df = depth_statistics(reducer, words, progress=config.progress)
    metrics = get_depth_metrics(df)
    if config.stats_path is not None:
        df.to_csv(config.stats_path, index=False)
    if config.wandb_project:
        import wandb
        wb = wandb.init(project=config.wandb_project)
        log_wandb(wb, metrics)
    return EXIT_OK, list(metrics.items()), []


COMMANDS = {
    'solve': cmd_solve,
    'nf': cmd_nf,
    'equal': cmd_equal,
    'reduce': cmd_reduce,
    'check': cmd_check,
    'basics': cmd_basics,
    'class': cmd_class,
    'lcm': cmd_lcm,
    'gcd': cmd_gcd,
    'diagram': cmd_diagram,
    'stats': cmd_stats,
}


def render(report, fmt):
    if fmt == "keyvalue" or not report:
        return ["%s: %s" % (key, value) for key, value in report]
    width = max(len(key) for key, _ in report) + 1
    return ["%s %s" % ((key + ":").ljust(width), value) for key, value in report]


def main(argv=None):
    try:
        config = Config(argv)
    except SystemExit as e:
        return e.code
    logging.basicConfig(level=config.log_level, format="%(levelname)s %(name)s: %(message)s")

    try:
        config.validate()
        status, report, body = COMMANDS[config.command](config)
    except ThreeOreViolation as e:
        print("error: %s" % e)
        if e.witness:
            print("witness: %s" % " ".join(str(x) for x in e.witness))
        return e.exit_status
    except MultifractionError as e:
        print("error: %s" % e)
        return e.exit_status

    for line in render(report, config.format) + body:
        print(line)
    return status
