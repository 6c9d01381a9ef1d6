import argparse
import json
import logging
import os
import sys
from pathlib import Path

from .cli import QtorbApp
from .settings import Settings

log = logging.getLogger("qtorb.main")


def setup_logging(args):
    if args.debug:
        logging.basicConfig(
            level=logging.NOTSET,
            format="%(asctime)s %(name)-12s %(levelname)-8s %(message)s",
            datefmt="%m-%d %H:%M",
            filename=args.logfile,
            filemode="a" if args.filemode else "w",
            encoding="utf-8",
        )
    else:
        logging.basicConfig(
            level=logging.NOTSET,
            format="%(asctime)s %(name)-12s: %(message)s",
            datefmt="%m-%d %H:%M",
            handlers=[logging.NullHandler()],
        )


def load_config(args):
    """
    Read the JSON configuration named by --config, or qtorb.cfg in the current directory.

    :raises ValueError: when the file is not valid JSON
    """
    cfg = Path(args.config) if args.config else Path(Settings.CONFIG_FILE)
    if args.config and not cfg.is_file():
        raise ValueError(f"configuration file {cfg} not found")
    if not os.path.exists(cfg):
        return None
    with open(cfg, "r", encoding="utf8", errors="ignore") as fp:
        try:
            return json.load(fp)
        except json.JSONDecodeError as e:
            raise ValueError(f"configuration file {cfg} is not valid JSON: {e}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qtorb", description=f"qtorb: {Settings.__appdesc__}")
    parser.add_argument("--version", action="version", version=f"%(prog)s {Settings.__version__}")
    parser.add_argument(
        "-d",
        "--debug",
        dest="debug",
        action="store_true",
        default=False,
        help="Enable debug mode. Logs everything at NOTSET level. Disabled by default.",
    )
    parser.add_argument(
        "-l",
        "--logfile",
        dest="logfile",
        metavar="logfile",
        default="qtorb.log",
        help="Log filename in debug mode. Default is qtorb.log in the current directory.",
    )
    parser.add_argument(
        "-a",
        "--appendmode",
        dest="filemode",
        action="store_true",
        default=False,
        help="Append to the log file instead of overwriting it.",
    )
    parser.add_argument(
        "-c",
        "--config",
        dest="config",
        metavar="config",
        default=None,
        help="JSON configuration file. Default is qtorb.cfg in the current directory, if present.",
    )

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=False, help="Write a machine-readable JSON report.")

    with_model = argparse.ArgumentParser(add_help=False, parents=[common])
    with_model.add_argument("model", help="Model file, or the name of a shipped fixture (e.g. simplex4).")

    with_face = argparse.ArgumentParser(add_help=False)
    with_face.add_argument("--face", required=True, help="Comma-separated facet names, e.g. F1,F5.")

    with_lambda0 = argparse.ArgumentParser(add_help=False)
    with_lambda0.add_argument(
        "--lambda0", required=True, help="Comma-separated integers; write --lambda0=-1,-2 for negative entries."
    )

    with_out = argparse.ArgumentParser(add_help=False)
    with_out.add_argument("-o", "--out", default=None, help="Write the resulting model file here.")

    subparsers = parser.add_subparsers(dest="command", metavar="command")
    subparsers.required = True

    def add(name, parents, help, aliases=()):
        return subparsers.add_parser(name, parents=parents, help=help, aliases=list(aliases))

    add("validate", [with_model], "Check a model file and list every violation.")
    add("info", [with_model], "Vertex group orders and signs, f- and h-vectors, manifold flag.")
    add("sectors", [with_model], "Twisted sectors with lattice points and ages.")
    add("betti", [with_model], "Chen-Ruan Betti table.")
    add("euler", [with_model], "CR Euler characteristic by sectors and by vertices.", ["chi"])
    add("quasi-sl", [with_model], "Whether every twisted sector has integral age.", ["qsl"])
    add("crepant-candidates", [with_model, with_face], "Crepant choices of lambda0 over a face.", ["candidates"])

    par = add("product", [with_model], "Chen-Ruan product skeleton of two sectors, or the full table.")
    par.add_argument("--s1", default=None, help="First sector as FACE:POINT, e.g. F1,F5:1,1,1,1 (P for untwisted).")
    par.add_argument("--s2", default=None, help="Second sector, same form as --s1.")

    par = add("reorient", [with_model, with_out], "Reverse the characteristic vectors of some facets.")
    par.add_argument("--facets", required=True, help="Comma-separated facet names.")

    add("fixtures", [common], "List the shipped fixture models.")

    par = add("blowup", [with_model, with_face, with_lambda0, with_out], "Blow up a face.")
    par.add_argument("--name", default=None, help="Name of the new facet (default from settings, F0).")
    add("mckay", [with_model, with_face, with_lambda0], "Compare CR invariants before and after a blowup.")
    add("resolve", [with_model, with_out], "Blow up until the model is a manifold.")
    return parser


def main(argv=None) -> int:
    """
    Command line entry point.

    :param argv: argument list, default sys.argv[1:]
    :return: exit code, 0 success, 1 validation failure, 2 usage error, 3 invariant violation
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 2

    setup_logging(args)
    try:
        cfg_data = load_config(args)
    except ValueError as e:
        parser.print_usage(sys.stderr)
        print(f"qtorb: error: {e}", file=sys.stderr)
        return 2

    with Settings.scoped():
        app = QtorbApp(cfg_data)
        status = app.run(args)
    log.debug(f"{args.command} exited with {status}")
    return status


if __name__ == "__main__":
    raise SystemExit(main())
