"""CLI core module - defines the QtorbApp class dispatching subcommands to their handlers"""

import logging
import sys
from pathlib import Path
from typing import List, Sequence

from ..exceptions import (
    BlowupError,
    InvariantViolation,
    ModelError,
    ModelMismatchError,
    PolytopeError,
    SectorError,
    UnsupportedOperation,
    UsageError,
)
from ..extras import DotDict
from ..model import CharacteristicModel, TwistedSector, find_box_element, untwisted_sector
from ..modelfile import fixture_path, load_model, model_to_dict, save_model
from ..polytope import Face
from ..settings import Settings
from .display import CliDisplay
from .handlers import CommandHandlers
from .handlers_blowup import BlowupCommandHandlers


class QtorbApp(CliDisplay, CommandHandlers, BlowupCommandHandlers):
    """
    Runs one subcommand on one model file and writes its report.

    :param cfg_data: configuration read from a qtorb.cfg file, merged into Settings
    :param stdout: stream for reports, default sys.stdout
    :param stderr: stream for status messages and diagnostics, default sys.stderr
    """

    _sys_commands = (
        "validate",
        "info",
        "sectors",
        "betti",
        "euler",
        "quasi-sl",
        "crepant-candidates",
        "product",
        "reorient",
        "fixtures",
        "blowup",
        "mckay",
        "resolve",
    )

    _commands_alias = {
        "qsl": "quasi-sl",
        "candidates": "crepant-candidates",
        "chi": "euler",
    }

    def __init__(self, cfg_data=None, stdout=None, stderr=None):
        self.stdout = stdout or sys.stdout
        self.stderr = stderr or sys.stderr
        if cfg_data:
            Settings.update(cfg_data)

        self.log = logging.getLogger("qtorb.cli")
        self.human = True
        self.input_name = None

        self._cmds_handler = dict()
        for cmd in self._sys_commands:
            handler = getattr(self, f"handle_{cmd.replace('-', '_')}", None)
            self._cmds_handler[cmd] = handler

    def command_name(self, name: str) -> str:
        return self._commands_alias.get(name, name)

    def run(self, args) -> int:
        """
        Execute the subcommand named by args.command.

        :return: exit code, 0 success, 1 validation failure, 2 usage error, 3 invariant violation
        """
        command = self.command_name(args.command)
        handler = self._cmds_handler.get(command)
        if handler is None:
            self.error(f"unknown command {args.command}")
            return 2

        self.human = not getattr(args, "json", False)
        self.input_name = None
        self.log.info(f"running {command} on {getattr(args, 'model', None)}")
        try:
            report = handler(args)
        except (ModelError, PolytopeError) as e:
            return self.fail(command, e.args[0], e.diagnostics, 1)
        except (BlowupError, UnsupportedOperation, ModelMismatchError, SectorError) as e:
            return self.fail(command, str(e), [str(e)], 1)
        except UsageError as e:
            return self.fail(command, str(e), [], 2)
        except InvariantViolation as e:
            self.log.exception(f"invariant violation in {command}")
            return self.fail(command, "internal invariant violation", [str(e)], 3)

        if report.status:
            self.error(report.message or Settings.text["invalid"])
            self.diagnostics(report.diagnostics)
        if not self.human:
            self.dumpJson(self.envelope(command, report.result, report.diagnostics))
        return report.status

    def envelope(self, command: str, result, diagnostics: Sequence[str]) -> dict:
        return {
            "command": command,
            "input": self.input_name,
            "result": result,
            "diagnostics": list(diagnostics),
        }

    def fail(self, command: str, message: str, diagnostics: List[str], status: int) -> int:
        self.error(message)
        self.diagnostics(diagnostics)
        if not self.human:
            self.dumpJson(self.envelope(command, None, diagnostics or [message]))
        return status

    def report(self, result, diagnostics=(), status=0, message=None) -> DotDict:
        return DotDict(result=result, diagnostics=list(diagnostics), status=status, message=message)

    def locateModel(self, name: str) -> Path:
        """A model file path, or the bare name of a shipped fixture"""
        path = Path(name)
        if path.is_file():
            return path
        candidate = fixture_path(name)
        if candidate.is_file():
            return candidate
        raise UsageError(f"no model file or fixture named {name}")

    def loadModel(self, args, validate: bool = True) -> CharacteristicModel:
        path = self.locateModel(args.model)
        self.input_name = path.name
        return load_model(path, validate)

    def writeModel(self, M: CharacteristicModel, args) -> dict:
        """Write M to --out when given; the model data goes into JSON reports either way"""
        out = getattr(args, "out", None)
        if out:
            try:
                save_model(M, out)
            except OSError as e:
                raise UsageError(f"cannot write model file {out}: {e.strerror or e}")
            self.info(Settings.text["written"].format(out))
        return model_to_dict(M)

    # argument parsing helpers shared by the handlers

    def parseNames(self, text: str) -> List[str]:
        names = [s.strip() for s in text.split(",") if s.strip()]
        if not names:
            raise UsageError(f"expected comma-separated facet names, got '{text}'")
        return names

    def parseInts(self, text: str, length: int = None) -> tuple:
        try:
            values = tuple(int(s) for s in text.split(","))
        except ValueError:
            raise UsageError(f"expected comma-separated integers, got '{text}'")
        if length is not None and len(values) != length:
            raise UsageError(f"expected {length} integers, got {len(values)} in '{text}'")
        return values

    def parseFace(self, M: CharacteristicModel, text: str) -> Face:
        if text.strip() in ("", "P"):
            return M.top
        try:
            return M.face_by_names(self.parseNames(text))
        except PolytopeError as e:
            raise UsageError(str(e))

    def parseSector(self, M: CharacteristicModel, text: str) -> TwistedSector:
        """
        A sector written face:lattice-point, e.g. F1,F5:1,2,2,2; P (or P:0,...,0) is the
        untwisted sector.
        """
        face_text, _, point_text = text.partition(":")
        face = self.parseFace(M, face_text)
        if face.is_polytope:
            if point_text and any(self.parseInts(point_text, M.n)):
                raise UsageError("the untwisted sector has lattice point 0")
            return untwisted_sector(M)
        if not point_text:
            raise UsageError(f"sector '{text}' needs a lattice point after ':'")
        g = find_box_element(M, face, self.parseInts(point_text, M.n))
        if not g.interior:
            raise ModelMismatchError(f"{list(g.lattice_point)} is not in the interior box of {M.describe(face)}")
        return TwistedSector(face, g)

    # result fragments shared by the handlers

    def faceNames(self, M: CharacteristicModel, face) -> List[str]:
        facets = face.facets if isinstance(face, Face) else face
        return [M.facets[i] for i in sorted(facets)]

    def sectorData(self, M: CharacteristicModel, s: TwistedSector) -> dict:
        return {
            "face": self.faceNames(M, s.face),
            "dimension": s.face.dim,
            "lattice_point": list(s.element.lattice_point),
            "coefficients": list(s.element.coeffs),
            "age": s.age,
        }
