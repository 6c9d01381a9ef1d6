"""
qtorb Settings File
Used to store the configuration, constants and report texts of the library and its CLI
"""

from contextlib import contextmanager


class Settings:
    "Global object for saving qtorb configuration"

    # The following content defines APP constants, please do not modify
    __appname__ = "QTORB"
    "APP name, default QTORB"
    __appdesc__ = "exact invariants and blowups of quasitoric orbifolds"
    "APP brief description"
    __version__ = "0.3.0"
    "APP current version"
    __release__ = "2026-10-17"
    "APP current version release date"

    FIXTURES_ENV = "QTORB_FIXTURES"
    "Environment variable overriding the fixture directory"

    CONFIG_FILE = "qtorb.cfg"
    "Name of the optional JSON configuration file searched in the current directory"

    client = {
        "json_indent": 2,  # Indentation of --json reports
        "color": "auto",  # Styled stderr messages: auto, always, never
        "highlight_json": True,  # Colourise --json output on a terminal
        "table_margin": 2,  # Spaces between columns of human tables
    }
    "Client (CLI output) default configuration"

    compute = {
        "resolve_max_steps": None,  # None = bounded by blowup.step_bound of the input model
        "new_facet_name": "F0",  # Name given to the facet created by a blowup
        "format_version": "1",  # Model file format version written by this release
    }
    "Computation default configuration"

    text = {
        "valid": "model is valid",
        "invalid": "model is invalid",
        "no_sectors": "no twisted sectors",
        "quasi_sl": "quasi-SL: every twisted sector has integral age",
        "not_quasi_sl": "not quasi-SL: sectors with non-integral age",
        "manifold": "quasitoric manifold (all local groups trivial)",
        "orbifold": "quasitoric orbifold with nontrivial local groups",
        "out_of_scope": "out of theorem scope",
        "sector_count": "sector-count invariant (not an Euler characteristic: model is not quasi-SL)",
        "written": "model written to {0}",
        "sectors_listed": "{0} twisted sectors",
    }
    "Report texts"

    styles = {
        "info": "fg:ansigreen",
        "warning": "fg:ansiyellow",
        "error": "fg:ansired bold",
    }
    "prompt_toolkit styles of stderr messages"

    INFO_STYLE = "\x1b[48;5;22m\x1b[38;5;252m"
    CLR_STYLE = "\x1b[0m"

    _sections = ("client", "compute", "text", "styles")

    @classmethod
    def update(cls, cfg_data):
        """
        Merge alternative configuration read from a `qtorb.cfg` file.

        Every section is updated with `dict.update`, so only the keys to be replaced need to be given.
        Unknown sections are ignored.
        """
        if cfg_data and isinstance(cfg_data, dict):
            for key in cfg_data.keys():
                if key in cls._sections:
                    getattr(cls, key).update(cfg_data[key])

    @classmethod
    @contextmanager
    def scoped(cls):
        """
        Context in which configuration changes last: every section is put back on exit.

        The sections are restored in place, so references to them stay valid.
        """
        saved = {key: dict(getattr(cls, key)) for key in cls._sections}
        try:
            yield cls
        finally:
            for key, values in saved.items():
                section = getattr(cls, key)
                section.clear()
                section.update(values)
