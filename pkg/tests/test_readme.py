"""Every example in README.md is executed."""

import doctest
import re
import shlex

import pytest

from linrel.cli import main

from conftest import ROOT

README = (ROOT / "README.md").read_text()
BLOCK = re.compile(r"```(console|pycon)\n(.*?)```", re.S)


def _console_sessions():
    for lang, body in BLOCK.findall(README):
        if lang != "console":
            continue
        cmd, out = None, []
        for line in body.splitlines():
            if line.startswith("$ "):
                if cmd is not None:
                    yield cmd, out
                cmd, out = line[2:], []
            else:
                out.append(line)
        if cmd is not None:
            yield cmd, out


SESSIONS = list(_console_sessions())


def test_readme_has_examples():
    assert len(SESSIONS) >= 5


@pytest.mark.parametrize("cmd,expected", SESSIONS, ids=[c for c, _ in SESSIONS])
def test_console_example(cmd, expected, monkeypatch, tmp_path, capsys):
    (tmp_path / "fixtures").symlink_to(ROOT / "fixtures")
    monkeypatch.chdir(tmp_path)
    argv = shlex.split(cmd)
    assert argv[0] == "linrel"
    assert main(argv[1:]) == 0
    out = capsys.readouterr().out
    if expected:
        assert out == "\n".join(expected) + "\n"
    else:
        assert out == ""
        written = argv[argv.index("--output") + 1]
        assert (tmp_path / written).read_text()


def test_python_example():
    text = "\n".join(body for lang, body in BLOCK.findall(README) if lang == "pycon")
    parser = doctest.DocTestParser()
    test = parser.get_doctest(text, {}, "README", "README.md", 0)
    runner = doctest.DocTestRunner(optionflags=doctest.ELLIPSIS)
    runner.run(test)
    assert runner.failures == 0 and runner.tries > 0
